"""Exact scalar arithmetic: Gaussian rationals and formal series in lambda.

Everything here is immutable and hashable. A :class:`LambdaSeries` is either
an exact polynomial in the formal parameter (``order is None``) or a jet
truncated at a fixed order N (all data beyond lambda^N discarded). Mixing the
two modes in arithmetic is a checked error; conversions are always explicit
via :meth:`LambdaSeries.truncated`.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Union

from .errors import ModeMismatch, NeedsTruncation, NonUnit, NotFormallySmall, NotUnital

RationalLike = Union[int, Fraction]


class GaussianRational:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- ring structure -------------------------------------------------

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussianRational":
        return _coerce(other) - self

    def __mul__(self, other) -> "GaussianRational":
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        other = _coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other) -> "GaussianRational":
        return _coerce(other) / self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, n: int) -> "GaussianRational":
        if n < 0:
            return GR_ONE / self.__pow__(-n)
        out = GR_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{_imag_str(abs(self.im))})"


def _imag_str(b: Fraction) -> str:
    if b == 1:
        return "i"
    if b == -1:
        return "-i"
    return f"{b}*i"


def _coerce(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    raise TypeError(f"cannot treat {value!r} as a GaussianRational")


GR_ZERO = GaussianRational(0)
GR_ONE = GaussianRational(1)
GR_I = GaussianRational(0, 1)


class LambdaSeries:
    """Polynomial or truncated power series in the formal parameter.

    ``coeffs[k]`` is the coefficient of lambda^k. ``order is None`` means an
    exact polynomial; ``order = N`` means all arithmetic is carried out
    modulo lambda^(N+1). Trailing zeros are trimmed so equal values compare
    equal; equality also compares the mode.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        cs = [_coerce(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("truncation order must be non-negative")
            cs = cs[: order + 1]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("LambdaSeries is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def constant(value, order: int | None = None) -> "LambdaSeries":
        return LambdaSeries([_coerce(value)], order)

    @staticmethod
    def zero(order: int | None = None) -> "LambdaSeries":
        return LambdaSeries((), order)

    @staticmethod
    def one(order: int | None = None) -> "LambdaSeries":
        return LambdaSeries([GR_ONE], order)

    @staticmethod
    def lam(power: int = 1, coefficient=1, order: int | None = None) -> "LambdaSeries":
        return LambdaSeries([GR_ZERO] * power + [_coerce(coefficient)], order)

    # -- mode handling ---------------------------------------------------

    def truncated(self, order: int) -> "LambdaSeries":
        """Explicit cast into truncated mode at the given order."""
        if self.order is not None and self.order < order:
            raise ModeMismatch(
                f"cannot re-truncate order-{self.order} data at higher order {order}"
            )
        return LambdaSeries(self.coeffs, order)

    def assert_exact(self) -> "LambdaSeries":
        if self.order is not None:
            raise ModeMismatch("expected an exact polynomial, got a truncated series")
        return self

    def _merge_order(self, other: "LambdaSeries") -> int | None:
        if self.order != other.order:
            raise ModeMismatch(
                f"mode mismatch: {_mode(self.order)} vs {_mode(other.order)}"
            )
        return self.order

    # -- coefficient access ----------------------------------------------

    def __getitem__(self, k: int) -> GaussianRational:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GR_ZERO

    def degree(self) -> int:
        """Highest stored lambda power; -1 for the zero series."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == GR_ONE

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LambdaSeries") -> "LambdaSeries":
        order = self._merge_order(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return LambdaSeries([self[k] + other[k] for k in range(n)], order)

    def __sub__(self, other: "LambdaSeries") -> "LambdaSeries":
        order = self._merge_order(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return LambdaSeries([self[k] - other[k] for k in range(n)], order)

    def __neg__(self) -> "LambdaSeries":
        return LambdaSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other) -> "LambdaSeries":
        if isinstance(other, (int, Fraction, GaussianRational)):
            c = _coerce(other)
            return LambdaSeries([a * c for a in self.coeffs], self.order)
        order = self._merge_order(other)
        if not self.coeffs or not other.coeffs:
            return LambdaSeries((), order)
        hi = len(self.coeffs) + len(other.coeffs) - 2
        if order is not None:
            hi = min(hi, order)
        out = [GR_ZERO] * (hi + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if i + j > hi:
                    break
                out[i + j] = out[i + j] + a * b
        return LambdaSeries(out, order)

    __rmul__ = __mul__

    def scale(self, c) -> "LambdaSeries":
        return self * _coerce(c)

    def conjugate(self) -> "LambdaSeries":
        """Coefficient-wise complex conjugation; lambda itself stays fixed."""
        return LambdaSeries([c.conjugate() for c in self.coeffs], self.order)

    def shift(self, k: int) -> "LambdaSeries":
        """Multiply by lambda^k (k may be negative if divisible)."""
        if k >= 0:
            return LambdaSeries((GR_ZERO,) * k + self.coeffs, self.order)
        if any(not c.is_zero() for c in self.coeffs[:-k]):
            raise ValueError(f"series not divisible by lambda^{-k}")
        order = self.order if self.order is None else self.order + k
        return LambdaSeries(self.coeffs[-k:], order)

    def invert(self) -> "LambdaSeries":
        """Multiplicative inverse modulo lambda^(N+1); truncated mode only."""
        if self.order is None:
            raise NeedsTruncation("series inversion requires truncated mode")
        c0 = self[0]
        if c0.is_zero():
            raise NonUnit("constant term vanishes; series is not invertible")
        n = self.order
        inv0 = GR_ONE / c0
        out = [inv0] + [GR_ZERO] * n
        for k in range(1, n + 1):
            acc = GR_ZERO
            for j in range(1, k + 1):
                acc = acc + self[j] * out[k - j]
            out[k] = -inv0 * acc
        return LambdaSeries(out, n)

    def __pow__(self, n: int) -> "LambdaSeries":
        if n < 0:
            return self.invert() ** (-n)
        out = LambdaSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- transcendental expansions ----------------------------------------

    def exp(self, n: int) -> "LambdaSeries":
        """Formal exponential truncated at order n; needs zero constant term."""
        if not self[0].is_zero():
            raise NotFormallySmall("exp needs a series with zero constant term")
        x = self.truncated(n) if self.order is None else self._retrunc(n)
        out = LambdaSeries.one(n)
        term = LambdaSeries.one(n)
        for k in range(1, n + 1):
            term = term * x * Fraction(1, k)
            out = out + term
        return out

    def log(self, n: int) -> "LambdaSeries":
        """Formal logarithm truncated at order n; needs constant term one."""
        if self[0] != GR_ONE:
            raise NotUnital("log needs a series with constant term one")
        x = (self - LambdaSeries.one(self.order))
        x = x.truncated(n) if x.order is None else x._retrunc(n)
        out = LambdaSeries.zero(n)
        term = LambdaSeries.one(n)
        for k in range(1, n + 1):
            term = term * x
            out = out + term * Fraction((-1) ** (k + 1), k)
        return out

    def sqrt_inverse(self, n: int) -> "LambdaSeries":
        """(self)^(-1/2) truncated at order n; needs constant term one."""
        if self[0] != GR_ONE:
            raise NotUnital("inverse square root needs constant term one")
        x = (self - LambdaSeries.one(self.order))
        x = x.truncated(n) if x.order is None else x._retrunc(n)
        out = LambdaSeries.zero(n)
        xk = LambdaSeries.one(n)
        for k in range(0, n + 1):
            # binomial(-1/2, k) = (-1)^k * C(2k, k) / 4^k
            coeff = Fraction((-1) ** k * factorial(2 * k), factorial(k) ** 2 * 4**k)
            out = out + xk * coeff
            xk = xk * x
        return out

    def _retrunc(self, n: int) -> "LambdaSeries":
        if self.order is None or self.order < n:
            raise ModeMismatch(f"series only known to order {self.order}, need {n}")
        return LambdaSeries(self.coeffs, n)

    # -- equality / hashing ------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LambdaSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.order == other.order

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order))

    def __repr__(self) -> str:
        return f"LambdaSeries({list(self.coeffs)!r}, order={self.order!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(str(c))
            else:
                lam = "L" if k == 1 else f"L^{k}"
                if c == GR_ONE:
                    parts.append(lam)
                elif c == -GR_ONE:
                    parts.append(f"-{lam}")
                else:
                    parts.append(f"{c}*{lam}")
        return " + ".join(parts).replace("+ -", "- ")


def _mode(order: int | None) -> str:
    return "exact" if order is None else f"truncated({order})"


def series_residual(a: LambdaSeries, b: LambdaSeries) -> LambdaSeries:
    """a - b compared on the orders both sides actually know.

    Exact vs exact subtracts exactly; anything involving a truncated operand
    is compared modulo lambda^(N+1) with N the smaller truncation order.
    """
    if a.order is None and b.order is None:
        return a - b
    orders = [o for o in (a.order, b.order) if o is not None]
    n = min(orders)
    aa = a if a.order == n else LambdaSeries(a.coeffs, n)
    bb = b if b.order == n else LambdaSeries(b.coeffs, n)
    return aa - bb
