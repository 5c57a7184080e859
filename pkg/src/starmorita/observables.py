"""Polynomial observables on flat symplectic R^{2n} and their Poisson bracket.

Coordinates are x1..x2n; on the standard space the first n are positions and
the last n momenta, so for n = 1 we write q = x1, p = x2. Coefficients are
:class:`~starmorita.scalars.LambdaSeries`, all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionError, SingularOmega
from .scalars import GR_ONE, GaussianRational, LambdaSeries, series_residual

Exponent = tuple[int, ...]


def _invert_matrix(rows: tuple[tuple[Fraction, ...], ...]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact Gauss-Jordan inverse; raises SingularOmega if not invertible."""
    n = len(rows)
    aug = [list(rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularOmega("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


class SymplecticVectorSpace:
    """R^{2n} with an exact-rational symplectic form.

    ``omega_lower`` holds the coefficients omega_ij of the form, ``omega_upper``
    its inverse matrix. The standard form has omega_{i,n+i} = 1.
    """

    __slots__ = ("n", "omega_lower", "omega_upper", "_upper_entries")

    def __init__(self, n: int, omega_lower=None):
        if n < 1:
            raise DimensionError("need n >= 1")
        object.__setattr__(self, "n", n)
        dim = 2 * n
        if omega_lower is None:
            lower = [[Fraction(0)] * dim for _ in range(dim)]
            for i in range(n):
                lower[i][n + i] = Fraction(1)
                lower[n + i][i] = Fraction(-1)
        else:
            lower = [[Fraction(v) for v in row] for row in omega_lower]
        if len(lower) != dim or any(len(row) != dim for row in lower):
            raise DimensionError(f"omega must be {dim}x{dim}")
        for i in range(dim):
            for j in range(dim):
                if lower[i][j] != -lower[j][i]:
                    raise ValueError("omega must be antisymmetric")
        lower_t = tuple(tuple(row) for row in lower)
        upper = _invert_matrix(lower_t)
        object.__setattr__(self, "omega_lower", lower_t)
        object.__setattr__(self, "omega_upper", upper)
        entries = tuple(
            (i, j, upper[i][j])
            for i in range(dim)
            for j in range(dim)
            if upper[i][j] != 0
        )
        object.__setattr__(self, "_upper_entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("SymplecticVectorSpace is immutable")

    @property
    def dim(self) -> int:
        return 2 * self.n

    def upper_entries(self):
        """Nonzero (i, j, omega^{ij}) triples, used by the star product."""
        return self._upper_entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymplecticVectorSpace):
            return NotImplemented
        return self.n == other.n and self.omega_lower == other.omega_lower

    def __hash__(self) -> int:
        return hash((self.n, self.omega_lower))

    def __repr__(self) -> str:
        return f"SymplecticVectorSpace(n={self.n})"

    def coordinate(self, i: int, order: int | None = None) -> "PolyObservable":
        """The coordinate function x_{i+1} (0-based index)."""
        if not 0 <= i < self.dim:
            raise DimensionError(f"coordinate index {i} out of range")
        exp = tuple(int(k == i) for k in range(self.dim))
        return PolyObservable(self, {exp: LambdaSeries.one(order)})


class PolyObservable:
    """Finite sum of monomials x^a with LambdaSeries coefficients."""

    __slots__ = ("space", "terms")

    def __init__(self, space: SymplecticVectorSpace, terms: Mapping[Exponent, LambdaSeries] | None = None):
        clean: dict[Exponent, LambdaSeries] = {}
        if terms:
            for exp, coeff in terms.items():
                if len(exp) != space.dim:
                    raise DimensionError(
                        f"exponent {exp} has length {len(exp)}, expected {space.dim}"
                    )
                if not coeff.is_zero():
                    clean[tuple(exp)] = coeff
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PolyObservable is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def constant(space: SymplecticVectorSpace, value, order: int | None = None) -> "PolyObservable":
        if isinstance(value, LambdaSeries):
            series = value
        else:
            series = LambdaSeries.constant(value, order)
        return PolyObservable(space, {(0,) * space.dim: series})

    @staticmethod
    def zero(space: SymplecticVectorSpace) -> "PolyObservable":
        return PolyObservable(space, {})

    @staticmethod
    def one(space: SymplecticVectorSpace, order: int | None = None) -> "PolyObservable":
        return PolyObservable.constant(space, 1, order)

    # -- structure ----------------------------------------------------------

    def _check_space(self, other: "PolyObservable") -> None:
        if self.space != other.space:
            raise DimensionError("observables live on different spaces")

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total x-degree; -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def lambda_degree(self) -> int:
        return max((c.degree() for c in self.terms.values()), default=-1)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_series(self) -> LambdaSeries:
        """The coefficient of x^0 (useful for central elements)."""
        zero_exp = (0,) * self.space.dim
        return self.terms.get(zero_exp, LambdaSeries.zero())

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "PolyObservable") -> "PolyObservable":
        self._check_space(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            cur = out.get(exp)
            out[exp] = coeff if cur is None else cur + coeff
        return PolyObservable(self.space, out)

    def __sub__(self, other: "PolyObservable") -> "PolyObservable":
        return self + (-other)

    def __neg__(self) -> "PolyObservable":
        return PolyObservable(self.space, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other) -> "PolyObservable":
        """Pointwise (commutative, undeformed) product or scalar multiple."""
        if isinstance(other, (int, Fraction, GaussianRational, LambdaSeries)):
            return self.scale(other)
        self._check_space(other)
        out: dict[Exponent, LambdaSeries] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                cur = out.get(exp)
                out[exp] = prod if cur is None else cur + prod
        return PolyObservable(self.space, out)

    __rmul__ = __mul__

    def scale(self, c) -> "PolyObservable":
        if not isinstance(c, LambdaSeries):
            return PolyObservable(self.space, {e: v * c for e, v in self.terms.items()})
        return PolyObservable(self.space, {e: v * c for e, v in self.terms.items()})

    def partial_derivative(self, i: int) -> "PolyObservable":
        out: dict[Exponent, LambdaSeries] = {}
        for exp, coeff in self.terms.items():
            if exp[i] == 0:
                continue
            new = list(exp)
            new[i] -= 1
            key = tuple(new)
            term = coeff * exp[i]
            cur = out.get(key)
            out[key] = term if cur is None else cur + term
        return PolyObservable(self.space, out)

    def euler_apply(self) -> "PolyObservable":
        """Euler operator x^i d_i: scales each monomial by its x-degree."""
        return PolyObservable(
            self.space, {e: c * sum(e) for e, c in self.terms.items()}
        )

    def conjugate(self) -> "PolyObservable":
        """Complex conjugation: coefficients conjugated, x and lambda fixed."""
        return PolyObservable(
            self.space, {e: c.conjugate() for e, c in self.terms.items()}
        )

    def truncated(self, order: int) -> "PolyObservable":
        return PolyObservable(
            self.space, {e: c.truncated(order) for e, c in self.terms.items()}
        )

    def lambda_shift(self, k: int) -> "PolyObservable":
        return PolyObservable(self.space, {e: c.shift(k) for e, c in self.terms.items()})

    def map_coefficients(self, fn) -> "PolyObservable":
        return PolyObservable(self.space, {e: fn(c) for e, c in self.terms.items()})

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyObservable):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.space, frozenset(self.terms.items())))

    def residual(self, other: "PolyObservable") -> "PolyObservable":
        """self - other compared on commonly known lambda orders."""
        self._check_space(other)
        out: dict[Exponent, LambdaSeries] = {}
        for exp in set(self.terms) | set(other.terms):
            a = self.terms.get(exp, LambdaSeries.zero())
            b = other.terms.get(exp, LambdaSeries.zero())
            diff = series_residual(a, b)
            if not diff.is_zero():
                out[exp] = diff
        return PolyObservable(self.space, out)

    # -- printing ----------------------------------------------------------

    def sorted_items(self) -> list[tuple[Exponent, LambdaSeries]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __str__(self) -> str:
        from .exprs import format_observable

        return format_observable(self)

    def __repr__(self) -> str:
        return f"PolyObservable<{self}>"


def make_poly(space: SymplecticVectorSpace, entries: Iterable[tuple[Exponent, object]]) -> PolyObservable:
    """Build an observable from (exponent, coefficient) pairs.

    Coefficients may be ints, Fractions, GaussianRationals, or LambdaSeries.
    """
    terms: dict[Exponent, LambdaSeries] = {}
    for exp, coeff in entries:
        if not isinstance(coeff, LambdaSeries):
            coeff = LambdaSeries.constant(coeff)
        key = tuple(exp)
        cur = terms.get(key)
        terms[key] = coeff if cur is None else cur + coeff
    return PolyObservable(space, terms)


def monomial_basis(space: SymplecticVectorSpace, max_degree: int) -> list[Exponent]:
    """All exponent tuples of total degree <= max_degree, lexicographic order."""
    from itertools import combinations_with_replacement

    seen: set[Exponent] = set()
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(space.dim), d):
            exp = [0] * space.dim
            for i in combo:
                exp[i] += 1
            seen.add(tuple(exp))
    return sorted(seen)


def poisson_bracket(f: PolyObservable, g: PolyObservable) -> PolyObservable:
    """{f, g} = -omega^{kl} d_k f d_l g, normalized so {q, p} = 1.

    The sign is the unique one matching the first-order antisymmetric part
    of the Weyl-Moyal product, [f, g] = i*lambda*{f, g} + O(lambda^3).
    """
    f._check_space(g)
    space = f.space
    out = PolyObservable.zero(space)
    partials_f = {}
    partials_g = {}
    for k, l, w in space.upper_entries():
        df = partials_f.get(k)
        if df is None:
            df = partials_f[k] = f.partial_derivative(k)
        if df.is_zero():
            continue
        dg = partials_g.get(l)
        if dg is None:
            dg = partials_g[l] = g.partial_derivative(l)
        if dg.is_zero():
            continue
        out = out + (df * dg).scale(GaussianRational(-w))
    return out
