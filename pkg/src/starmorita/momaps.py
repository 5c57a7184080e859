"""Classical and quantum momentum maps, their checks, and the inner action.

A candidate assigns an observable to every basis element of the Lie algebra.
The verification operations certify, on bounded monomial bases,

- the classical bracket identity {J0(xi), J0(eta)} = J0([xi, eta]),
- the quantum-Hamiltonian property (1/(i lambda)) ad_star(J(xi)) = rho(xi),
- the quantum-momentum-map identity i lambda J([xi, eta]) = [J(xi), J(eta)],

plus Hermiticity where requested. A verified map extends to a unital algebra
homomorphism on the rescaled enveloping algebra and induces the inner action
h acts a = J(h_(1)) star a star J(S(h_(2))).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .conv import ConvElement, ConvHost
from .errors import NotAMomentumMap
from .hopf import LieAlgebraData, UEAElement
from .observables import PolyObservable, monomial_basis
from .reporting import CheckReport
from .scalars import GR_I, GaussianRational, LambdaSeries
from .star import StarProductSpec, commutator_over_i_lambda


def times_i_lambda(f: PolyObservable) -> PolyObservable:
    """Multiply by i*lambda without leaving the coefficient mode."""
    return f.lambda_shift(1).map_coefficients(lambda s: s * GR_I)


class ActionSpec:
    """A Lie algebra action by Poisson derivations, plus its host star product.

    Each generator acts either as {h, .} for a Hamiltonian h or as -Lie_X for
    an explicit polynomial vector field X; both conventions give left
    representations. The extension to the rescaled enveloping algebra is
    xi acts f = i lambda rho(xi) f, multiplied out along PBW words.
    """

    __slots__ = ("star", "generators")

    def __init__(self, star: StarProductSpec, generators: Sequence[tuple]):
        gens = tuple(generators)
        for kind, _ in gens:
            if kind not in ("hamiltonian", "vector_field"):
                raise ValueError(f"unknown generator kind {kind!r}")
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "generators", gens)

    def __setattr__(self, name, value):
        raise AttributeError("ActionSpec is immutable")

    @staticmethod
    def from_hamiltonians(star: StarProductSpec, hams: Iterable[PolyObservable]) -> "ActionSpec":
        return ActionSpec(star, [("hamiltonian", h) for h in hams])

    @staticmethod
    def from_vector_fields(star: StarProductSpec, fields: Iterable[Sequence[PolyObservable]]) -> "ActionSpec":
        return ActionSpec(star, [("vector_field", tuple(x)) for x in fields])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ActionSpec):
            return NotImplemented
        return self.star == other.star and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.star, self.generators))

    def rho(self, index: int, f: PolyObservable) -> PolyObservable:
        from .observables import poisson_bracket

        kind, data = self.generators[index]
        f = self.star.prepare(f)
        if kind == "hamiltonian":
            return poisson_bracket(self.star.prepare(data), f)
        out = PolyObservable.zero(f.space)
        for i, comp in enumerate(data):
            out = out - self.star.prepare(comp) * f.partial_derivative(i)
        return out

    def morphism_report(self, algebra: LieAlgebraData, test_degree: int = 2) -> CheckReport:
        """rho([xi, eta]) = [rho(xi), rho(eta)] on monomials of bounded degree."""
        report = CheckReport("action-lie-morphism", bounds={"degree": test_degree})
        space = self.star.space
        tests = [
            PolyObservable(space, {e: LambdaSeries.one()})
            for e in monomial_basis(space, test_degree)
        ]
        m = len(self.generators)
        for i in range(m):
            for j in range(i + 1, m):
                coeffs = algebra.bracket_coeffs(i, j)
                for f in tests:
                    lhs = PolyObservable.zero(space)
                    for k, c in enumerate(coeffs):
                        if c != 0:
                            lhs = lhs + self.rho(k, f).scale(GaussianRational(c))
                    rhs = self.rho(i, self.rho(j, f)) - self.rho(j, self.rho(i, f))
                    res = lhs.residual(rhs)
                    if not res.is_zero():
                        report.fail(
                            f"pair ({algebra.basis[i]}, {algebra.basis[j]}) on {f}",
                            residual=str(res),
                        )
                        return report
        return report

    def apply(self, u: UEAElement, f: PolyObservable) -> PolyObservable:
        """The induced U_lambda action: words act by iterated i*lambda*rho."""
        star = self.star
        out = PolyObservable.zero(star.space)
        for word, coeff in u.terms.items():
            cur = star.prepare(f)
            for letter in reversed(word):
                cur = times_i_lambda(self.rho(letter, cur))
            out = out + cur.scale(star.coerce_series(coeff))
        return out


class MomentumMapCandidate:
    """Basis values of a (candidate) momentum map, with optional Hermiticity."""

    __slots__ = ("algebra", "values", "hermitian_required", "_memo")

    def __init__(self, algebra: LieAlgebraData, values: Sequence[PolyObservable], hermitian_required: bool = False):
        vals = tuple(values)
        if len(vals) != algebra.dim:
            raise ValueError(
                f"need {algebra.dim} values for basis {algebra.basis}, got {len(vals)}"
            )
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "hermitian_required", hermitian_required)
        object.__setattr__(self, "_memo", {})

    def __setattr__(self, name, value):
        raise AttributeError("MomentumMapCandidate is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MomentumMapCandidate):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.values == other.values
            and self.hermitian_required == other.hermitian_required
        )

    def __hash__(self) -> int:
        return hash((self.algebra, self.values, self.hermitian_required))

    def value(self, index: int) -> PolyObservable:
        return self.values[index]

    def of_vector(self, coeffs: Iterable[Fraction]) -> PolyObservable:
        """J extended linearly to a Lie algebra vector with rational coefficients."""
        out = PolyObservable.zero(self.values[0].space)
        for c, v in zip(coeffs, self.values):
            if c != 0:
                out = out + v.scale(GaussianRational(c))
        return out

    def classical_values(self) -> tuple[PolyObservable, ...]:
        """The lambda^0 parts J0(xi)."""
        return tuple(
            v.map_coefficients(lambda s: LambdaSeries.constant(s[0])) for v in self.values
        )

    def plus_part_values(self) -> tuple[PolyObservable, ...]:
        return tuple(
            v.map_coefficients(lambda s: s - LambdaSeries.constant(s[0], s.order))
            for v in self.values
        )

    def default_action(self, star: StarProductSpec) -> ActionSpec:
        """rho(xi) = {J0(xi), .}, the Poisson action of the classical part."""
        return ActionSpec.from_hamiltonians(star, self.classical_values())

    # -- evaluation on the enveloping algebra --------------------------------

    def evaluate(self, star: StarProductSpec, u: UEAElement) -> PolyObservable:
        """J(u) with J(word) the left-to-right star product of basis values."""
        key = ("word-values", star)
        cache = self._memo.get(key)
        if cache is None:
            cache = self._memo[key] = {}
        out = PolyObservable.zero(star.space)
        for word, coeff in u.terms.items():
            value = cache.get(word)
            if value is None:
                value = star.one()
                for letter in word:
                    value = star.mul(value, self.values[letter])
                cache[word] = value
            out = out + value.scale(star.coerce_series(coeff))
        return out

    def as_conv_element(self, host: ConvHost, degree: int | None = None, inverse: bool = False) -> ConvElement:
        """Tabulate J (or J^{-1} = J o S) as a convolution element."""
        alg = host.algebra
        if alg != self.algebra:
            raise NotAMomentumMap("momentum map belongs to a different Lie algebra")
        degree = host.degree if degree is None else degree
        table = {}
        for word in alg.pbw_monomials(degree):
            u = UEAElement.monomial(alg, word)
            if inverse:
                u = u.antipode()
            table[word] = self.evaluate(host.star, u)
        return ConvElement(host, table, degree)


# -- verification -----------------------------------------------------------


def check_classical_momentum(J: MomentumMapCandidate) -> CheckReport:
    """{J0(xi), J0(eta)} = J0([xi, eta]) for every basis pair."""
    from .observables import poisson_bracket

    report = CheckReport("classical-momentum-map", bounds={})
    alg = J.algebra
    classical = J.classical_values()
    classical_map = MomentumMapCandidate(alg, classical)
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            lhs = poisson_bracket(classical[i], classical[j])
            rhs = classical_map.of_vector(alg.bracket_coeffs(i, j))
            res = lhs.residual(rhs)
            if not res.is_zero():
                report.fail(
                    f"pair ({alg.basis[i]}, {alg.basis[j]})", residual=str(res)
                )
    return report


def check_quantum_hamiltonian(
    J: MomentumMapCandidate, action: ActionSpec, test_degree: int = 4
) -> CheckReport:
    """(1/(i lambda)) [J(xi), f] = rho(xi) f on monomials of degree <= test_degree."""
    report = CheckReport("quantum-hamiltonian", bounds={"obs_degree": test_degree})
    star = action.star
    alg = J.algebra
    tests = [
        PolyObservable(star.space, {e: LambdaSeries.one(star.order)})
        for e in monomial_basis(star.space, test_degree)
    ]
    for i in range(alg.dim):
        jv = star.prepare(J.value(i))
        for f in tests:
            lhs = commutator_over_i_lambda(star, jv, f)
            rhs = action.rho(i, f)
            res = lhs.residual(rhs)
            if not res.is_zero():
                report.fail(f"({alg.basis[i]}, {f})", residual=str(res))
                return report
    return report


def check_quantum_momentum_map(J: MomentumMapCandidate, star: StarProductSpec) -> CheckReport:
    """i lambda J([xi, eta]) = [J(xi), J(eta)]_star, plus Hermiticity if required."""
    report = CheckReport(
        "quantum-momentum-map", bounds={"hermitian": J.hermitian_required}
    )
    alg = J.algebra
    for i in range(alg.dim):
        for j in range(i + 1, alg.dim):
            expected = times_i_lambda(star.prepare(J.of_vector(alg.bracket_coeffs(i, j))))
            bracket = star.commutator(J.value(i), J.value(j))
            res = bracket.residual(expected)
            if not res.is_zero():
                report.fail(
                    f"pair ({alg.basis[i]}, {alg.basis[j]})", residual=str(res)
                )
    if J.hermitian_required:
        for i in range(alg.dim):
            res = J.value(i).conjugate().residual(J.value(i))
            if not res.is_zero():
                report.fail(f"hermiticity at {alg.basis[i]}", residual=str(res))
    return report


def verify_momentum_map(J: MomentumMapCandidate, star: StarProductSpec) -> None:
    """Raise NotAMomentumMap unless the quantum check passes (memoized)."""
    key = ("verified", star)
    if J._memo.get(key):
        return
    report = check_quantum_momentum_map(J, star)
    if not report.passed:
        raise NotAMomentumMap(str(report))
    J._memo[key] = True


def extend_to_uea(J: MomentumMapCandidate, star: StarProductSpec, u: UEAElement) -> PolyObservable:
    """The unital homomorphism U_lambda(g) -> (A, star) on a verified map."""
    verify_momentum_map(J, star)
    return J.evaluate(star, u)


class InnerAction:
    """h acts a = J(h_(1)) star a star J(S(h_(2))) for a verified momentum map."""

    __slots__ = ("J", "star")

    def __init__(self, J: MomentumMapCandidate, star: StarProductSpec):
        verify_momentum_map(J, star)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "star", star)

    def __setattr__(self, name, value):
        raise AttributeError("InnerAction is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, InnerAction):
            return NotImplemented
        return self.J == other.J and self.star == other.star

    def __hash__(self) -> int:
        return hash((self.J, self.star))

    def apply(self, u: UEAElement, a: PolyObservable) -> PolyObservable:
        star = self.star
        out = PolyObservable.zero(star.space)
        a = star.prepare(a)
        for word, coeff in u.terms.items():
            total = PolyObservable.zero(star.space)
            for left, right, c in UEAElement.monomial(self.J.algebra, word).coproduct().legs():
                jl = self.J.evaluate(star, UEAElement.monomial(self.J.algebra, left))
                jr = self.J.evaluate(
                    star, UEAElement.monomial(self.J.algebra, right).antipode()
                )
                total = total + star.mul(star.mul(jl, a), jr).scale(star.coerce_series(c))
            out = out + total.scale(star.coerce_series(coeff))
        return out


def inner_action(
    J: MomentumMapCandidate, star: StarProductSpec, h: UEAElement, a: PolyObservable
) -> PolyObservable:
    return InnerAction(J, star).apply(h, a)


def conv_host_for(
    J: MomentumMapCandidate, star: StarProductSpec, degree: int = 3, obs_degree: int = 4
) -> ConvHost:
    """Host whose action is the inner action of the given momentum map."""
    return ConvHost(J.algebra, star, InnerAction(J, star), degree, obs_degree)


# -- the character action on momentum maps -----------------------------------


def momentum_twist(
    J: MomentumMapCandidate, star: StarProductSpec, z: ConvElement
) -> MomentumMapCandidate:
    """J * z for a central character z; again a momentum map for the action."""
    from .errors import NotACharacter

    verify_momentum_map(J, star)
    if not z.is_character():
        raise NotACharacter("twist requires a central-valued character")
    alg = J.algebra
    values = []
    hermitian = J.hermitian_required
    for i in range(alg.dim):
        zval = z.table[(i,)].constant_series()
        if zval.conjugate() != zval:
            hermitian = False
        values.append(J.value(i) + PolyObservable.constant(star.space, zval))
    return MomentumMapCandidate(alg, values, hermitian)


def momentum_difference(
    J: MomentumMapCandidate,
    J2: MomentumMapCandidate,
    star: StarProductSpec,
    degree: int = 3,
    host: ConvHost | None = None,
) -> ConvElement:
    """z = J^{-1} * J2 with J^{-1}(g) = J(S(g)); central for genuine momentum maps."""
    verify_momentum_map(J, star)
    verify_momentum_map(J2, star)
    host = host if host is not None else conv_host_for(J, star, degree)
    alg = J.algebra
    table = {}
    for word in alg.pbw_monomials(degree):
        total = PolyObservable.zero(star.space)
        for left, right, c in UEAElement.monomial(alg, word).coproduct().legs():
            jl = J.evaluate(star, UEAElement.monomial(alg, left).antipode())
            jr = J2.evaluate(star, UEAElement.monomial(alg, right))
            total = total + star.mul(jl, jr).scale(star.coerce_series(c))
        table[word] = total
    return ConvElement(host, table, degree)


def character_functional_basis(algebra: LieAlgebraData) -> list[tuple[Fraction, ...]]:
    """Basis of the linear functionals on g vanishing on all brackets.

    These are exactly the generator-value vectors of unital characters of
    U_lambda(g); an empty list means the counit is the only character.
    """
    m = algebra.dim
    rows = []
    for i in range(m):
        for j in range(i + 1, m):
            vec = algebra.bracket_coeffs(i, j)
            if any(vec):
                rows.append([Fraction(v) for v in vec])
    # full RREF of the bracket span, then the standard null-space basis
    mat = [r[:] for r in rows]
    pivots: list[int] = []
    rank = 0
    for col in range(m):
        pr = next((k for k in range(rank, len(mat)) if mat[k][col] != 0), None)
        if pr is None:
            continue
        mat[rank], mat[pr] = mat[pr], mat[rank]
        inv = 1 / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for k in range(len(mat)):
            if k != rank and mat[k][col] != 0:
                factor = mat[k][col]
                mat[k] = [a - factor * b for a, b in zip(mat[k], mat[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(mat):
            break
    basis = []
    free = [k for k in range(m) if k not in pivots]
    for f in free:
        vec = [Fraction(0)] * m
        vec[f] = Fraction(1)
        for row_idx, pcol in enumerate(pivots):
            vec[pcol] = -mat[row_idx][f]
        basis.append(tuple(vec))
    return basis


def center_constant_check(star: StarProductSpec, max_degree: int = 4) -> CheckReport:
    """The center of the polynomial star algebra is the constant series.

    Certified by showing every non-constant monomial of degree <= max_degree
    fails to commute with some coordinate.
    """
    report = CheckReport("center-is-constants", bounds={"obs_degree": max_degree})
    space = star.space
    coords = [space.coordinate(i, star.order) for i in range(space.dim)]
    for exp in monomial_basis(space, max_degree):
        if sum(exp) == 0:
            continue
        f = PolyObservable(space, {exp: LambdaSeries.one(star.order)})
        if all(star.commutator(f, x).is_zero() for x in coords):
            report.fail(f"non-constant central element {f}")
    return report
