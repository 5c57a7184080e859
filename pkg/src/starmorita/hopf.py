"""The rescaled enveloping algebra U_lambda(g) and its classical companion.

Elements are kept in PBW normal form: words over the ordered basis with
non-decreasing letters. A descent x_a x_b (a > b after the basis order) is
rewritten as x_b x_a + kappa [x_a, x_b], with kappa = i*lambda in the
rescaled flavor and kappa = 1 in the classical one. Rewriting terminates by
the usual (degree, inversion count) descent; confluence is covered by the
associativity tests.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

from .errors import AlgebraMismatch
from .reporting import CheckReport
from .scalars import GR_I, GR_ONE, GaussianRational, LambdaSeries

Word = tuple[int, ...]  # non-decreasing basis positions; () is the unit


class LieAlgebraData:
    """Ordered basis plus structure constants, with the Jacobi identity checked.

    ``brackets[(i, j)]`` for i < j holds [xi_i, xi_j] as a coefficient tuple
    over the basis; antisymmetry fills in the rest.
    """

    __slots__ = ("basis", "brackets", "flavor", "_order_cache", "_coprod_cache")

    def __init__(
        self,
        basis: Iterable[str],
        brackets: Mapping[tuple[int, int], Mapping[int, Fraction]],
        flavor: str = "rescaled",
    ):
        names = tuple(basis)
        if flavor not in ("rescaled", "classical"):
            raise ValueError(f"unknown flavor {flavor!r}")
        m = len(names)
        table: dict[tuple[int, int], tuple[Fraction, ...]] = {}
        for (i, j), comps in brackets.items():
            if not 0 <= i < m and 0 <= j < m:
                raise ValueError(f"bracket index {(i, j)} out of range")
            if i == j:
                raise ValueError("brackets [x, x] must be omitted (they vanish)")
            vec = [Fraction(0)] * m
            for k, val in comps.items():
                vec[k] = Fraction(val)
            if i > j:
                i, j = j, i
                vec = [-v for v in vec]
            if (i, j) in table and tuple(vec) != table[(i, j)]:
                raise ValueError(f"conflicting structure constants for {(i, j)}")
            table[(i, j)] = tuple(vec)
        object.__setattr__(self, "basis", names)
        object.__setattr__(self, "brackets", table)
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "_order_cache", {})
        object.__setattr__(self, "_coprod_cache", {})
        self._check_jacobi()

    def __setattr__(self, name, value):
        raise AttributeError("LieAlgebraData is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebraData):
            return NotImplemented
        return (
            self.basis == other.basis
            and self.brackets == other.brackets
            and self.flavor == other.flavor
        )

    def __hash__(self) -> int:
        return hash((self.basis, tuple(sorted(self.brackets.items())), self.flavor))

    def __repr__(self) -> str:
        return f"LieAlgebraData({self.basis!r}, flavor={self.flavor!r})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_coeffs(self, i: int, j: int) -> tuple[Fraction, ...]:
        """[xi_i, xi_j] as a coefficient vector over the basis."""
        if i == j:
            return (Fraction(0),) * self.dim
        if i < j:
            return self.brackets.get((i, j), (Fraction(0),) * self.dim)
        return tuple(-v for v in self.bracket_coeffs(j, i))

    def bracket_vectors(self, u: Iterable[Fraction], v: Iterable[Fraction]) -> tuple[Fraction, ...]:
        u = list(u)
        v = list(v)
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                for k, f in enumerate(self.bracket_coeffs(i, j)):
                    out[k] += a * b * f
        return tuple(out)

    def _check_jacobi(self) -> None:
        m = self.dim
        basis_vecs = [
            tuple(Fraction(int(t == s)) for t in range(m)) for s in range(m)
        ]
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(j + 1, m):
                    total = [Fraction(0)] * m
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket_coeffs(b, c)
                        outer = self.bracket_vectors(basis_vecs[a], inner)
                        total = [t + o for t, o in zip(total, outer)]
                    if any(total):
                        raise ValueError(
                            f"Jacobi identity fails on basis triple ({i}, {j}, {k})"
                        )

    # -- rewriting ----------------------------------------------------------

    def _kappa(self) -> LambdaSeries:
        if self.flavor == "rescaled":
            return LambdaSeries.lam(coefficient=GR_I)
        return LambdaSeries.one()

    def normal_order(self, word: Word) -> dict[Word, LambdaSeries]:
        """PBW normal form of an arbitrary word, as word -> coefficient."""
        cached = self._order_cache.get(word)
        if cached is not None:
            return cached
        descent = next(
            (t for t in range(len(word) - 1) if word[t] > word[t + 1]), None
        )
        if descent is None:
            result = {word: LambdaSeries.one()}
        else:
            a, b = word[descent], word[descent + 1]
            swapped = word[:descent] + (b, a) + word[descent + 2 :]
            result = dict(self.normal_order(swapped))
            kappa = self._kappa()
            for k, f in enumerate(self.bracket_coeffs(a, b)):
                if f == 0:
                    continue
                reduced = word[:descent] + (k,) + word[descent + 2 :]
                coeff = kappa * GaussianRational(f)
                for w, c in self.normal_order(reduced).items():
                    cur = result.get(w)
                    total = c * coeff if cur is None else cur + c * coeff
                    result[w] = total
            result = {w: c for w, c in result.items() if not c.is_zero()}
        self._order_cache[word] = result
        return result

    def coproduct_legs(self, word: Word) -> tuple[tuple[Word, Word, int], ...]:
        """Sweedler legs of a PBW word: all multiset splits, with multiplicity.

        Both legs of a split of a sorted word are already sorted, so no
        rewriting is needed; the integer gives the number of subsets
        producing that split.
        """
        cached = self._coprod_cache.get(word)
        if cached is not None:
            return cached
        legs: dict[tuple[Word, Word], int] = {((), ()): 1}
        for letter in word:
            nxt: dict[tuple[Word, Word], int] = {}
            for (u, v), mult in legs.items():
                left = (u + (letter,), v)
                nxt[left] = nxt.get(left, 0) + mult
                right = (u, v + (letter,))
                nxt[right] = nxt.get(right, 0) + mult
            legs = nxt
        result = tuple((u, v, mult) for (u, v), mult in legs.items())
        self._coprod_cache[word] = result
        return result

    def pbw_monomials(self, max_degree: int) -> list[Word]:
        """All PBW basis words of degree <= max_degree, unit first."""
        out: list[Word] = []
        for d in range(max_degree + 1):
            out.extend(combinations_with_replacement(range(self.dim), d))
        return out

    def word_name(self, word: Word) -> str:
        return "1" if not word else "".join(self.basis[t] for t in word)


def heisenberg(flavor: str = "rescaled") -> LieAlgebraData:
    """h3 with basis (Q, P, Z) and [Q, P] = Z."""
    return LieAlgebraData(("Q", "P", "Z"), {(0, 1): {2: 1}}, flavor)


def sl2(flavor: str = "rescaled") -> LieAlgebraData:
    """sl2 with basis (H, E, F): [H,E] = 2E, [H,F] = -2F, [E,F] = H."""
    return LieAlgebraData(
        ("H", "E", "F"),
        {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
        flavor,
    )


def abelian(dim: int, flavor: str = "rescaled", prefix: str = "T") -> LieAlgebraData:
    return LieAlgebraData(
        tuple(f"{prefix}{k + 1}" for k in range(dim)), {}, flavor
    )


class UEAElement:
    """Linear combination of PBW words with LambdaSeries coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebraData, terms: Mapping[Word, LambdaSeries] | None = None):
        clean: dict[Word, LambdaSeries] = {}
        if terms:
            for word, coeff in terms.items():
                if any(word[t] > word[t + 1] for t in range(len(word) - 1)):
                    raise ValueError(f"word {word} is not in PBW normal form")
                if not coeff.is_zero():
                    clean[tuple(word)] = coeff
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("UEAElement is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def unit(algebra: LieAlgebraData) -> "UEAElement":
        return UEAElement(algebra, {(): LambdaSeries.one()})

    @staticmethod
    def generator(algebra: LieAlgebraData, index: int) -> "UEAElement":
        return UEAElement(algebra, {(index,): LambdaSeries.one()})

    @staticmethod
    def monomial(algebra: LieAlgebraData, word: Word, coeff=None) -> "UEAElement":
        coeff = coeff if coeff is not None else LambdaSeries.one()
        if not isinstance(coeff, LambdaSeries):
            coeff = LambdaSeries.constant(coeff)
        return UEAElement(algebra, {tuple(word): coeff})

    # -- structure -------------------------------------------------------------

    def _check_algebra(self, other: "UEAElement") -> None:
        if self.algebra != other.algebra:
            raise AlgebraMismatch("operands belong to different Lie algebras")

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    # -- linear structure ---------------------------------------------------

    def __add__(self, other: "UEAElement") -> "UEAElement":
        self._check_algebra(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            cur = out.get(w)
            out[w] = c if cur is None else cur + c
        return UEAElement(self.algebra, out)

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        return self + (-other)

    def __neg__(self) -> "UEAElement":
        return UEAElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "UEAElement":
        if not isinstance(c, LambdaSeries):
            c = LambdaSeries.constant(c)
        return UEAElement(self.algebra, {w: v * c for w, v in self.terms.items()})

    # -- multiplication -------------------------------------------------------

    def __mul__(self, other: "UEAElement") -> "UEAElement":
        self._check_algebra(other)
        alg = self.algebra
        out: dict[Word, LambdaSeries] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                scale = c1 * c2
                for w, c in alg.normal_order(w1 + w2).items():
                    term = c * scale
                    cur = out.get(w)
                    out[w] = term if cur is None else cur + term
        return UEAElement(alg, out)

    # -- Hopf structure ----------------------------------------------------

    def counit(self) -> LambdaSeries:
        return self.terms.get((), LambdaSeries.zero())

    def antipode(self) -> "UEAElement":
        alg = self.algebra
        out = UEAElement(alg, {})
        for w, c in self.terms.items():
            sign = c if len(w) % 2 == 0 else -c
            for nw, nc in alg.normal_order(tuple(reversed(w))).items():
                out = out + UEAElement(alg, {nw: nc * sign})
        return out

    def involution(self) -> "UEAElement":
        """Anti-linear anti-automorphism; generator rule depends on flavor."""
        alg = self.algebra
        out = UEAElement(alg, {})
        for w, c in self.terms.items():
            coeff = c.conjugate()
            if alg.flavor == "classical" and len(w) % 2 == 1:
                coeff = -coeff
            for nw, nc in alg.normal_order(tuple(reversed(w))).items():
                out = out + UEAElement(alg, {nw: nc * coeff})
        return out

    def coproduct(self) -> "TensorElement":
        alg = self.algebra
        total = TensorElement(alg, {})
        for w, c in self.terms.items():
            legs: dict[tuple[Word, Word], LambdaSeries] = {((), ()): c}
            for letter in w:
                nxt: dict[tuple[Word, Word], LambdaSeries] = {}
                for (u, v), coeff in legs.items():
                    for uw, uc in alg.normal_order(u + (letter,)).items():
                        key = (uw, v)
                        term = coeff * uc
                        cur = nxt.get(key)
                        nxt[key] = term if cur is None else cur + term
                    for vw, vc in alg.normal_order(v + (letter,)).items():
                        key = (u, vw)
                        term = coeff * vc
                        cur = nxt.get(key)
                        nxt[key] = term if cur is None else cur + term
                legs = nxt
            for key, coeff in legs.items():
                total = total + TensorElement(alg, {key: coeff})
        return total

    # -- comparison / printing -------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.algebra, frozenset(self.terms.items())))

    def sorted_items(self) -> list[tuple[Word, LambdaSeries]]:
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_items():
            name = self.algebra.word_name(w)
            cs = str(c)
            if c.is_one():
                parts.append(name)
            elif name == "1":
                parts.append(f"({cs})" if " " in cs else cs)
            else:
                parts.append(f"({cs})*{name}" if (" " in cs or "+" in cs) else f"{cs}*{name}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UEAElement<{self}>"


class TensorElement:
    """Element of the tensor square, legs kept in PBW normal form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebraData, terms: Mapping[tuple[Word, Word], LambdaSeries] | None = None):
        clean: dict[tuple[Word, Word], LambdaSeries] = {}
        if terms:
            for key, coeff in terms.items():
                if not coeff.is_zero():
                    clean[key] = coeff
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TensorElement is immutable")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for key, c in other.terms.items():
            cur = out.get(key)
            out[key] = c if cur is None else cur + c
        return TensorElement(self.algebra, out)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        alg = self.algebra
        out: dict[tuple[Word, Word], LambdaSeries] = {}
        for (u1, v1), c1 in self.terms.items():
            for (u2, v2), c2 in other.terms.items():
                scale = c1 * c2
                for uw, uc in alg.normal_order(u1 + u2).items():
                    for vw, vc in alg.normal_order(v1 + v2).items():
                        key = (uw, vw)
                        term = uc * vc * scale
                        cur = out.get(key)
                        out[key] = term if cur is None else cur + term
        return TensorElement(alg, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def legs(self):
        """Iterate (left word, right word, coefficient)."""
        for (u, v), c in self.terms.items():
            yield u, v, c

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        alg = self.algebra
        parts = []
        for (u, v), c in sorted(self.terms.items()):
            body = f"{alg.word_name(u)}(x){alg.word_name(v)}"
            parts.append(body if c.is_one() else f"({c})*{body}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TensorElement<{self}>"


def uea_multiply(u: UEAElement, v: UEAElement) -> UEAElement:
    return u * v


def coproduct(u: UEAElement) -> TensorElement:
    return u.coproduct()


def antipode(u: UEAElement) -> UEAElement:
    return u.antipode()


def counit(u: UEAElement) -> LambdaSeries:
    return u.counit()


def involution(u: UEAElement) -> UEAElement:
    return u.involution()


def _triple(first_split: TensorElement, split_left: bool, alg: LieAlgebraData):
    """Expand one more coproduct on a chosen leg into word triples."""
    out: dict[tuple[Word, Word, Word], LambdaSeries] = {}
    for u, v, c in first_split.legs():
        target = u if split_left else v
        inner = UEAElement.monomial(alg, target).coproduct()
        for a, b, c2 in inner.legs():
            key = (a, b, v) if split_left else (u, a, b)
            term = c * c2
            cur = out.get(key)
            out[key] = term if cur is None else cur + term
    return {k: c for k, c in out.items() if not c.is_zero()}


def hopf_axiom_suite(algebra: LieAlgebraData, max_degree: int) -> CheckReport:
    """Verify the Hopf *-algebra axioms on every PBW word of bounded degree."""
    report = CheckReport(
        "hopf-axioms",
        bounds={"degree": max_degree, "flavor": algebra.flavor},
    )
    unit = UEAElement.unit(algebra)
    for word in algebra.pbw_monomials(max_degree):
        name = algebra.word_name(word)
        h = UEAElement.monomial(algebra, word)
        delta = h.coproduct()

        left = _triple(delta, True, algebra)
        right = _triple(delta, False, algebra)
        if left != right:
            report.fail(f"coassociativity at {name}")
            continue

        from_eps_left = UEAElement(algebra, {})
        from_eps_right = UEAElement(algebra, {})
        anti_left = UEAElement(algebra, {})
        anti_right = UEAElement(algebra, {})
        for u, v, c in delta.legs():
            ue = UEAElement.monomial(algebra, u, c)
            ve = UEAElement.monomial(algebra, v, c)
            from_eps_left = from_eps_left + ve.scale(UEAElement.monomial(algebra, u).counit())
            from_eps_right = from_eps_right + ue.scale(UEAElement.monomial(algebra, v).counit())
            anti_left = anti_left + UEAElement.monomial(algebra, u).antipode() * ve
            anti_right = anti_right + ue * UEAElement.monomial(algebra, v).antipode()
        if from_eps_left != h or from_eps_right != h:
            report.fail(f"counit law at {name}")
            continue
        eps_h = unit.scale(h.counit())
        if anti_left != eps_h:
            report.fail(f"antipode law (S x id) at {name}", residual=str(anti_left - eps_h))
            continue
        if anti_right != eps_h:
            report.fail(f"antipode law (id x S) at {name}", residual=str(anti_right - eps_h))
            continue

        star_h = h.involution()
        delta_star = star_h.coproduct()
        starred_delta = TensorElement(algebra, {})
        for u, v, c in delta.legs():
            ue = UEAElement.monomial(algebra, u).involution()
            ve = UEAElement.monomial(algebra, v).involution()
            for uw, uc in ue.terms.items():
                for vw, vc in ve.terms.items():
                    starred_delta = starred_delta + TensorElement(
                        algebra, {(uw, vw): uc * vc * c.conjugate()}
                    )
        if delta_star != starred_delta:
            report.fail(f"coproduct *-homomorphism at {name}")
            continue
        if star_h.counit() != h.counit().conjugate():
            report.fail(f"counit *-homomorphism at {name}")
            continue
        if star_h.antipode().involution().antipode() != h:
            report.fail(f"S(S(h*)*) = h at {name}")
    return report
