"""Weyl-Moyal star products, star commutators, and scaling equivalences.

``StarProductSpec`` fixes the symplectic space, the scale c in lambda*C[[lambda]]
(c = 0 gives the plain Weyl-Moyal product), and an optional truncation order.
The product of two monomials is computed once per spec and cached: for
polynomial inputs the bidifferential series terminates, so with c = 0 the
result is exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionError, NeedsTruncation, NotFormallySmall
from .observables import Exponent, PolyObservable, SymplecticVectorSpace, poisson_bracket
from .reporting import CheckReport
from .scalars import GR_I, GaussianRational, LambdaSeries

_MINUS_I_HALF = GaussianRational(0, Fraction(-1, 2))


class StarProductSpec:
    """A Weyl-Moyal product with bivector omega^{..}/(1+c).

    c = 0 and no order: exact mode. Any nonzero c needs a truncation order,
    because 1/(1+c) is an infinite series.
    """

    __slots__ = ("space", "c", "order", "_lam_unit", "_cache")

    def __init__(self, space: SymplecticVectorSpace, c: LambdaSeries | None = None, order: int | None = None):
        c = c if c is not None else LambdaSeries.zero()
        if not c[0].is_zero():
            raise NotFormallySmall("scale c must lie in lambda*C[[lambda]]")
        if not c.is_zero() and order is None:
            raise NeedsTruncation("nonzero scale c requires a truncation order")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "order", order)
        if order is None:
            lam_unit = LambdaSeries.lam()
        else:
            one_plus_c = LambdaSeries.one(order) + c.truncated(order)
            lam_unit = LambdaSeries.lam(order=order) * one_plus_c.invert()
        object.__setattr__(self, "_lam_unit", lam_unit)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("StarProductSpec is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, StarProductSpec):
            return NotImplemented
        return (
            self.space == other.space
            and self.c == other.c
            and self.order == other.order
        )

    def __hash__(self) -> int:
        return hash((self.space, self.c, self.order))

    def __repr__(self) -> str:
        return f"StarProductSpec(space={self.space!r}, c={self.c!s}, order={self.order})"

    # -- product -----------------------------------------------------------

    def prepare(self, f: PolyObservable) -> PolyObservable:
        """Cast an observable into this spec's coefficient mode."""
        if f.space != self.space:
            raise DimensionError("observable lives on a different space")
        if self.order is None:
            return f
        return f.truncated(self.order)

    def one(self) -> PolyObservable:
        return PolyObservable.one(self.space, self.order)

    def coerce_series(self, s: LambdaSeries) -> LambdaSeries:
        """Cast a scalar series into this spec's coefficient mode."""
        if self.order is None:
            return s.assert_exact()
        return s.truncated(self.order) if s.order != self.order else s

    def mul(self, f: PolyObservable, g: PolyObservable) -> PolyObservable:
        f = self.prepare(f)
        g = self.prepare(g)
        out: dict[Exponent, LambdaSeries] = {}
        for ea, ca in f.terms.items():
            for eb, cb in g.terms.items():
                scale = ca * cb
                if scale.is_zero():
                    continue
                for exp, series in self._monomial_star(ea, eb).items():
                    term = series * scale
                    cur = out.get(exp)
                    out[exp] = term if cur is None else cur + term
        return PolyObservable(self.space, out)

    def commutator(self, f: PolyObservable, g: PolyObservable) -> PolyObservable:
        return self.mul(f, g) - self.mul(g, f)

    def _monomial_star(self, a: Exponent, b: Exponent) -> dict[Exponent, LambdaSeries]:
        cached = self._cache.get((a, b))
        if cached is not None:
            return cached
        # Accumulate Fraction weights per (result exponent, derivative count r):
        # weight = prod omega^gamma / gamma! * falling(a, rows) * falling(b, cols),
        # gamma running over matrices supported on the nonzero entries of
        # omega_upper with |gamma| = r.
        entries = self.space.upper_entries()
        rmax = min(sum(a), sum(b))
        if self.order is not None:
            rmax = min(rmax, self.order)
        weights: dict[tuple[Exponent, int], Fraction] = {}

        def descend(idx: int, a_rem: list[int], b_rem: list[int], r: int, w: Fraction):
            if idx == len(entries):
                key = (tuple(x + y for x, y in zip(a_rem, b_rem)), r)
                weights[key] = weights.get(key, Fraction(0)) + w
                return
            i, j, om = entries[idx]
            descend(idx + 1, a_rem, b_rem, r, w)  # gamma = 0 at this entry
            cur = w
            m = 1
            while r + m <= rmax and a_rem[i] > 0 and b_rem[j] > 0:
                cur = cur * om * a_rem[i] * b_rem[j] / m
                a_rem[i] -= 1
                b_rem[j] -= 1
                descend(idx + 1, a_rem, b_rem, r + m, cur)
                m += 1
            used = m - 1
            a_rem[i] += used
            b_rem[j] += used

        descend(0, list(a), list(b), 0, Fraction(1))

        lam_powers = [LambdaSeries.one(self.order)]
        for _ in range(rmax):
            lam_powers.append(lam_powers[-1] * self._lam_unit)
        out: dict[Exponent, LambdaSeries] = {}
        for (exp, r), w in weights.items():
            if w == 0:
                continue
            series = lam_powers[r] * (_MINUS_I_HALF**r * w)
            cur = out.get(exp)
            out[exp] = series if cur is None else cur + series
        out = {e: s for e, s in out.items() if not s.is_zero()}
        self._cache[(a, b)] = out
        return out


def weyl_moyal(spec: StarProductSpec, f: PolyObservable, g: PolyObservable) -> PolyObservable:
    return spec.mul(f, g)


def star_commutator(spec: StarProductSpec, f: PolyObservable, g: PolyObservable) -> PolyObservable:
    return spec.commutator(f, g)


def commutator_over_i_lambda(spec: StarProductSpec, f: PolyObservable, g: PolyObservable) -> PolyObservable:
    """(1/(i lambda)) [f, g]; the star commutator is always divisible by lambda."""
    comm = spec.commutator(f, g)
    return comm.lambda_shift(-1).map_coefficients(lambda s: s * (-GR_I))


def hermitian_check(spec: StarProductSpec, samples) -> CheckReport:
    """conj(f * g) == conj(g) * conj(f) on every sample pair."""
    report = CheckReport(
        "hermitian",
        bounds={"order": "exact" if spec.order is None else spec.order},
    )
    for f, g in samples:
        lhs = spec.mul(f, g).conjugate()
        rhs = spec.mul(g.conjugate(), f.conjugate())
        res = lhs.residual(rhs)
        if not res.is_zero():
            report.fail(f"({f}, {g})", residual=str(res))
            break
    return report


class ScalingMap:
    """T_c = exp(log(s) E) with s = (1+c)^(-1/2) and E the Euler operator.

    Multiplies each x-degree-d monomial by s^d; an algebra isomorphism
    (A, star_{c omega}) -> (A, star_0) modulo lambda^(N+1). ``backward``
    is the inverse map.
    """

    __slots__ = ("c", "order", "_s", "_s_inv")

    def __init__(self, c: LambdaSeries, order: int):
        if not c[0].is_zero():
            raise NotFormallySmall("scale c must lie in lambda*C[[lambda]]")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "order", order)
        one_plus_c = LambdaSeries.one(order) + c.truncated(order)
        s = one_plus_c.sqrt_inverse(order)
        object.__setattr__(self, "_s", s)
        object.__setattr__(self, "_s_inv", s.invert())

    def __setattr__(self, name, value):
        raise AttributeError("ScalingMap is immutable")

    def _apply(self, f: PolyObservable, s: LambdaSeries) -> PolyObservable:
        f = f.truncated(self.order)
        powers = {0: LambdaSeries.one(self.order)}
        out = {}
        for exp, coeff in f.terms.items():
            d = sum(exp)
            if d not in powers:
                powers[d] = s**d
            out[exp] = coeff * powers[d]
        return PolyObservable(f.space, out)

    def forward(self, f: PolyObservable) -> PolyObservable:
        return self._apply(f, self._s)

    def backward(self, f: PolyObservable) -> PolyObservable:
        return self._apply(f, self._s_inv)


def scaling_equivalence(c: LambdaSeries, f: PolyObservable, order: int) -> PolyObservable:
    """T_c f, the Euler-exponential equivalence onto the unscaled product."""
    return ScalingMap(c, order).forward(f)


def first_order_bracket(spec: StarProductSpec, f: PolyObservable, g: PolyObservable) -> PolyObservable:
    """lambda^1 coefficient of [f, g] as a lambda-free observable."""
    comm = spec.commutator(f, g)
    out = {}
    for exp, series in comm.terms.items():
        c1 = series[1]
        if not c1.is_zero():
            out[exp] = LambdaSeries.constant(c1)
    return PolyObservable(spec.space, out)


def poisson_sign_residual(spec: StarProductSpec, f: PolyObservable, g: PolyObservable) -> PolyObservable:
    """first_order_bracket(f, g) - i {f, g}; zero pins the bracket sign.

    Meaningful for observables with lambda-free coefficients.
    """
    expected = poisson_bracket(f, g).scale(GR_I)
    return first_order_bracket(spec, f, g).residual(expected)
