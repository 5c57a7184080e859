"""Exact symbolic machinery for star products on flat symplectic space.

Layers, bottom up:

- ``scalars``: Gaussian rationals and formal series in lambda.
- ``observables``: polynomial functions on R^{2n}, Poisson bracket.
- ``star``: Weyl-Moyal products, commutators, scaling equivalences.
- ``hopf``: the rescaled enveloping algebra with PBW normal form.
- ``momaps``: classical/quantum momentum maps and the inner action.
- ``conv``: the convolution algebra Hom(H, A) and its groups.
- ``bimod``: equivalence bimodules, lifted/twisted actions.
- ``eqcoh``: polynomial Cartan-model equivariant calculus.
- ``cli``: JSON problem specs, verification subcommands, reports.
"""

from .scalars import GaussianRational, LambdaSeries
from .observables import PolyObservable, SymplecticVectorSpace, poisson_bracket
from .star import ScalingMap, StarProductSpec, scaling_equivalence, star_commutator, weyl_moyal
from .hopf import LieAlgebraData, TensorElement, UEAElement, abelian, heisenberg, sl2

__all__ = [
    "GaussianRational",
    "LambdaSeries",
    "PolyObservable",
    "SymplecticVectorSpace",
    "poisson_bracket",
    "StarProductSpec",
    "ScalingMap",
    "weyl_moyal",
    "star_commutator",
    "scaling_equivalence",
    "LieAlgebraData",
    "UEAElement",
    "TensorElement",
    "heisenberg",
    "sl2",
    "abelian",
]

__version__ = "0.1.0"
