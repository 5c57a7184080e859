"""The convolution algebra Hom(H, A) restricted to a bounded PBW table.

H is infinite-dimensional, so an element is stored as its values on all PBW
words of degree <= D together with the host data (star product and H-action)
needed by the group operations. Every check certifies identities only on the
stated filtration level and says so in its bounds.
"""

from __future__ import annotations

from typing import Mapping

from .errors import HostMismatch, NonUnit, NotACharacter, NotAMember
from .hopf import LieAlgebraData, UEAElement, Word
from .observables import PolyObservable, monomial_basis
from .reporting import CheckReport
from .scalars import LambdaSeries
from .star import StarProductSpec


class ConvHost:
    """Shared context for convolution elements: algebra, star product, action.

    ``action`` is any object with ``apply(u: UEAElement, a: PolyObservable)``
    implementing a left H-module-algebra action on the star algebra;
    ``degree`` is the default table bound D and ``obs_degree`` the observable
    degree bound used when a condition quantifies over the algebra.
    """

    __slots__ = ("algebra", "star", "action", "degree", "obs_degree")

    def __init__(self, algebra: LieAlgebraData, star: StarProductSpec, action, degree: int = 3, obs_degree: int = 4):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "obs_degree", obs_degree)

    def __setattr__(self, name, value):
        raise AttributeError("ConvHost is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, ConvHost):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.star == other.star
            and self.action == other.action
            and self.degree == other.degree
        )

    def __hash__(self) -> int:
        return hash((self.algebra, self.star, self.degree))

    def act(self, u: UEAElement, a: PolyObservable) -> PolyObservable:
        return self.action.apply(u, a)

    def words(self, degree: int | None = None) -> list[Word]:
        return self.algebra.pbw_monomials(self.degree if degree is None else degree)


class ConvElement:
    """A map H -> A tabulated on PBW words of degree <= D."""

    __slots__ = ("host", "table", "degree")

    def __init__(self, host: ConvHost, table: Mapping[Word, PolyObservable], degree: int | None = None):
        degree = host.degree if degree is None else degree
        full: dict[Word, PolyObservable] = {}
        zero = PolyObservable.zero(host.star.space)
        for word in host.algebra.pbw_monomials(degree):
            full[word] = host.star.prepare(table.get(word, zero))
        if () not in full:
            raise ValueError("table must cover the unit word")
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "table", full)
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("ConvElement is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def unit(host: ConvHost, degree: int | None = None) -> "ConvElement":
        one = PolyObservable.one(host.star.space, host.star.order)
        return ConvElement(host, {(): one}, degree)

    @staticmethod
    def character(host: ConvHost, values: Mapping[int, LambdaSeries], degree: int | None = None) -> "ConvElement":
        """Unital character from generator values; must kill all brackets."""
        alg = host.algebra
        vals = [values.get(k, LambdaSeries.zero()) for k in range(alg.dim)]
        for i in range(alg.dim):
            for j in range(i + 1, alg.dim):
                acc = LambdaSeries.zero()
                for k, f in enumerate(alg.bracket_coeffs(i, j)):
                    if f != 0:
                        acc = acc + vals[k] * f
                if not acc.is_zero():
                    raise NotACharacter(
                        f"values do not vanish on [{alg.basis[i]}, {alg.basis[j]}]"
                    )
        degree = host.degree if degree is None else degree
        space = host.star.space
        table: dict[Word, PolyObservable] = {}
        for word in alg.pbw_monomials(degree):
            coeff = LambdaSeries.one()
            for letter in word:
                coeff = coeff * vals[letter]
            table[word] = PolyObservable.constant(space, coeff)
        return ConvElement(host, table, degree)

    # -- evaluation ---------------------------------------------------------

    def _check_host(self, other: "ConvElement") -> None:
        if self.host != other.host:
            raise HostMismatch("convolution operands have different hosts")

    def evaluate(self, u: UEAElement) -> PolyObservable:
        """Linear extension to any element within the tabulated degree."""
        out = PolyObservable.zero(self.host.star.space)
        for word, coeff in u.terms.items():
            value = self.table.get(word)
            if value is None:
                raise HostMismatch(
                    f"word of degree {len(word)} beyond certified degree {self.degree}"
                )
            out = out + value.scale(self.host.star.coerce_series(coeff))
        return out

    def __call__(self, u: UEAElement) -> PolyObservable:
        return self.evaluate(u)

    # -- algebra -------------------------------------------------------------

    def convolve(self, other: "ConvElement") -> "ConvElement":
        """(a * b)(h) = a(h_(1)) star b(h_(2)); the coproduct preserves degree."""
        self._check_host(other)
        host = self.host
        star = host.star
        degree = min(self.degree, other.degree)
        table: dict[Word, PolyObservable] = {}
        for word in host.algebra.pbw_monomials(degree):
            total = PolyObservable.zero(star.space)
            for u, v, c in UEAElement.monomial(host.algebra, word).coproduct().legs():
                term = star.mul(self.table[u], other.table[v])
                total = total + term.scale(star.coerce_series(c))
            table[word] = total
        return ConvElement(host, table, degree)

    def involution(self) -> "ConvElement":
        """a*(g) = a(S(g)*)* -- anti-multiplicative for the convolution."""
        host = self.host
        alg = host.algebra
        table: dict[Word, PolyObservable] = {}
        for word in alg.pbw_monomials(self.degree):
            arg = UEAElement.monomial(alg, word).antipode().involution()
            table[word] = self.evaluate(arg).conjugate()
        return ConvElement(host, table, self.degree)

    def antipode_inverse(self) -> "ConvElement":
        """a^{-1}(g) = g_(1) acts on a(S(g_(2))): two-sided inverse on Gl members."""
        host = self.host
        alg = host.algebra
        table: dict[Word, PolyObservable] = {}
        for word in alg.pbw_monomials(self.degree):
            total = PolyObservable.zero(host.star.space)
            for u, v, c in UEAElement.monomial(alg, word).coproduct().legs():
                inner = self.evaluate(UEAElement.monomial(alg, v).antipode())
                term = host.act(UEAElement.monomial(alg, u), inner)
                total = total + term.scale(host.star.coerce_series(c))
            table[word] = total
        return ConvElement(host, table, self.degree)

    # -- comparison -----------------------------------------------------------

    def residual(self, other: "ConvElement") -> dict[Word, PolyObservable]:
        self._check_host(other)
        out = {}
        for word in self.host.algebra.pbw_monomials(min(self.degree, other.degree)):
            res = self.table[word].residual(other.table[word])
            if not res.is_zero():
                out[word] = res
        return out

    def equals(self, other: "ConvElement") -> bool:
        return not self.residual(other)

    def is_central_valued(self) -> bool:
        """All values constant series (the center of the polynomial star algebra)."""
        return all(v.is_constant() for v in self.table.values())

    def is_character(self) -> bool:
        """Central-valued, unital, and multiplicative on the tabulated level."""
        if not self.is_central_valued():
            return False
        one = PolyObservable.one(self.host.star.space, self.host.star.order)
        if not self.table[()].residual(one).is_zero():
            return False
        alg = self.host.algebra
        for word in alg.pbw_monomials(self.degree):
            if not word:
                continue
            prod = self.table[(word[0],)]
            for letter in word[1:]:
                prod = prod * self.table[(letter,)]
            if not self.table[word].residual(prod).is_zero():
                return False
        return True

    def __str__(self) -> str:
        alg = self.host.algebra
        rows = [
            f"{alg.word_name(w)} -> {v}"
            for w, v in sorted(self.table.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]
        return "ConvElement{" + "; ".join(rows) + "}"


def convolve(a: ConvElement, b: ConvElement) -> ConvElement:
    return a.convolve(b)


def conv_unit(host: ConvHost, degree: int | None = None) -> ConvElement:
    return ConvElement.unit(host, degree)


def membership_check(a: ConvElement, group: str = "Gl", obs_degree: int | None = None) -> CheckReport:
    """Convolution-group membership, conditions (i)-(iv).

    (i), (iii), (iv) are certified on words of degree <= D; (ii) consumes
    degree through the product g h, so it is certified on pairs with
    deg g + deg h <= D. Observable arguments range over monomials of degree
    <= obs_degree; each condition is linear in every slot, so basis checking
    is exact within these bounds.
    """
    if group not in ("Gl", "U"):
        raise ValueError("group must be 'Gl' or 'U'")
    host = a.host
    alg = host.algebra
    star = host.star
    obs_degree = host.obs_degree if obs_degree is None else obs_degree
    report = CheckReport(
        f"membership-{group}",
        bounds={"degree": a.degree, "obs_degree": obs_degree},
    )

    one = PolyObservable.one(star.space, star.order)
    res = a.table[()].residual(one)
    if not res.is_zero():
        report.fail("(i) a(1) = 1", residual=str(res))

    words = alg.pbw_monomials(a.degree)
    # (ii) a(gh) = a(g_(1)) star (g_(2) acts a(h)), deg g + deg h <= D
    done = False
    for g in words:
        for h in words:
            if not g or not h:
                continue  # trivially satisfied when either is the unit
            if len(g) + len(h) > a.degree:
                continue
            lhs = a.evaluate(UEAElement.monomial(alg, g) * UEAElement.monomial(alg, h))
            rhs = PolyObservable.zero(star.space)
            for u, v, c in UEAElement.monomial(alg, g).coproduct().legs():
                acted = host.act(UEAElement.monomial(alg, v), a.table[h])
                rhs = rhs + star.mul(a.table[u], acted).scale(star.coerce_series(c))
            res = lhs.residual(rhs)
            if not res.is_zero():
                report.fail(
                    f"(ii) at ({alg.word_name(g)}, {alg.word_name(h)})",
                    residual=str(res),
                )
                done = True
                break
        if done:
            break

    obs = [
        PolyObservable(star.space, {e: LambdaSeries.one(star.order)})
        for e in monomial_basis(star.space, obs_degree)
    ]
    done = False
    for h in words:
        if not h:
            continue
        hsplit = list(UEAElement.monomial(alg, h).coproduct().legs())
        for b in obs:
            lhs = PolyObservable.zero(star.space)
            rhs = PolyObservable.zero(star.space)
            for u, v, c in hsplit:
                cc = star.coerce_series(c)
                lhs = lhs + star.mul(host.act(UEAElement.monomial(alg, u), b), a.table[v]).scale(cc)
                rhs = rhs + star.mul(a.table[u], host.act(UEAElement.monomial(alg, v), b)).scale(cc)
            res = lhs.residual(rhs)
            if not res.is_zero():
                report.fail(
                    f"(iii) at ({alg.word_name(h)}, {b})",
                    residual=str(res),
                )
                done = True
                break
        if done:
            break

    if group == "U":
        for h in words:
            total = PolyObservable.zero(star.space)
            for u, v, c in UEAElement.monomial(alg, h).coproduct().legs():
                arg = UEAElement.monomial(alg, v).antipode().involution()
                term = star.mul(a.table[u], a.evaluate(arg).conjugate())
                total = total + term.scale(star.coerce_series(c))
            eps = UEAElement.monomial(alg, h).counit()
            res = total.residual(one.scale(star.coerce_series(eps)))
            if not res.is_zero():
                report.fail(f"(iv) unitarity at {alg.word_name(h)}", residual=str(res))
                break

    return report


def conjugate_by_momentum(a: ConvElement, momentum) -> ConvElement:
    """a_J = J^{-1} * a * J; lands in central-valued characters for members.

    ``momentum`` must expose ``as_conv_element(host, degree)`` and pass its
    own verification; a must be a Gl member for its host.
    """
    report = membership_check(a, "Gl")
    if not report.passed:
        raise NotAMember(f"not a Gl member:\n{report}")
    host = a.host
    j = momentum.as_conv_element(host, a.degree)
    j_inv = momentum.as_conv_element(host, a.degree, inverse=True)
    return j_inv.convolve(a).convolve(j)


def hat_map(c: PolyObservable, host: ConvHost, degree: int | None = None) -> ConvElement:
    """c-hat(h) = c star (h acts c^{-1}) for a central (constant series) unit c."""
    if not c.is_constant():
        raise NonUnit("hat map needs a central element, i.e. a constant series")
    series = c.constant_series()
    if series[0].is_zero():
        raise NonUnit("constant term vanishes; not a unit")
    star = host.star
    if series.degree() <= 0:
        inv_series = LambdaSeries.constant(series[0] ** -1, star.order)
    else:
        if star.order is None:
            raise NonUnit("lambda-dependent unit needs a truncated host")
        inv_series = series.truncated(star.order).invert()
    c_inv = PolyObservable.constant(star.space, inv_series)
    alg = host.algebra
    table: dict[Word, PolyObservable] = {}
    for word in alg.pbw_monomials(host.degree if degree is None else degree):
        acted = host.act(UEAElement.monomial(alg, word), c_inv)
        table[word] = star.mul(star.prepare(c), acted)
    return ConvElement(host, table, degree)
