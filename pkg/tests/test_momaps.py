import random
from fractions import Fraction

import pytest

from starmorita.errors import NotACharacter, NotAMomentumMap
from starmorita.hopf import UEAElement, abelian, heisenberg, sl2
from starmorita.momaps import (
    ActionSpec,
    InnerAction,
    MomentumMapCandidate,
    center_constant_check,
    character_functional_basis,
    check_classical_momentum,
    check_quantum_hamiltonian,
    check_quantum_momentum_map,
    conv_host_for,
    extend_to_uea,
    inner_action,
    momentum_difference,
    momentum_twist,
    times_i_lambda,
)
from starmorita.conv import ConvElement
from starmorita.observables import PolyObservable, SymplecticVectorSpace
from starmorita.scalars import GR_I, GaussianRational, LambdaSeries
from starmorita.star import StarProductSpec

from conftest import random_poly


@pytest.fixture
def moyal(plane):
    return StarProductSpec(plane)


@pytest.fixture
def j_sp(plane, qp):
    q, p = qp
    return MomentumMapCandidate(
        sl2(),
        [q * p, (p * p).scale(Fraction(1, 2)), -(q * q).scale(Fraction(1, 2))],
        hermitian_required=True,
    )


@pytest.fixture
def j_heis(plane, qp):
    q, p = qp
    return MomentumMapCandidate(
        heisenberg(),
        [q, p, PolyObservable.one(plane)],
        hermitian_required=True,
    )


@pytest.fixture
def j_trans(plane, qp):
    # translations a -> -x^T omega a on R^2: J(e1) = p, J(e2) = -q
    q, p = qp
    return MomentumMapCandidate(abelian(2), [p, -q], hermitian_required=True)


def ilam_obs(plane, k=1):
    return PolyObservable.constant(plane, LambdaSeries.lam(coefficient=GR_I)).scale(k)


class TestClassical:
    def test_j_sp_passes(self, j_sp):
        assert check_classical_momentum(j_sp).passed

    def test_j_heis_passes(self, j_heis):
        assert check_classical_momentum(j_heis).passed

    def test_translations_fail_with_unit_residual(self, j_trans):
        report = check_classical_momentum(j_trans)
        assert not report.passed
        assert report.failures[0]["residual"] == "1"

    def test_zero_map_on_abelian(self, plane):
        zero = PolyObservable.zero(plane)
        J = MomentumMapCandidate(abelian(2), [zero, zero])
        assert check_classical_momentum(J).passed


class TestQuantumHamiltonian:
    def test_j_sp_any_degree(self, j_sp, moyal):
        action = j_sp.default_action(moyal)
        assert check_quantum_hamiltonian(j_sp, action, 5).passed

    def test_scaled_pair(self, plane, j_sp):
        for c_coeffs in ([0, 1], [0, 0, 1], [0, 1, 1]):
            c = LambdaSeries(c_coeffs)
            star = StarProductSpec(plane, c, order=6)
            factor = LambdaSeries.one(6) + c.truncated(6)
            scaled = MomentumMapCandidate(
                sl2(),
                [v.truncated(6).scale(factor) for v in j_sp.values],
                hermitian_required=True,
            )
            action = j_sp.default_action(star)
            assert check_quantum_hamiltonian(scaled, action, 4).passed

    def test_translations_pass(self, j_trans, moyal):
        action = j_trans.default_action(moyal)
        assert check_quantum_hamiltonian(j_trans, action, 4).passed


class TestQuantumMomentumMap:
    def test_heisenberg_passes(self, j_heis, moyal):
        assert check_quantum_momentum_map(j_heis, moyal).passed

    def test_j_sp_passes(self, j_sp, moyal):
        assert check_quantum_momentum_map(j_sp, moyal).passed

    def test_translations_fail_i_lambda(self, plane, j_trans, moyal):
        report = check_quantum_momentum_map(j_trans, moyal)
        assert not report.passed
        assert report.failures[0]["residual"] == "i*L"  # [p, -q] - 0 = i lambda omega(e1, e2)

    def test_hermitian_enforced(self, plane, qp, moyal):
        q, p = qp
        J = MomentumMapCandidate(
            heisenberg(),
            [q + ilam_obs(plane), p, PolyObservable.one(plane)],
            hermitian_required=True,
        )
        report = check_quantum_momentum_map(J, moyal)
        assert not report.passed
        assert any("hermiticity" in f["where"] for f in report.failures)


class TestExtension:
    def test_unit(self, j_heis, moyal, plane):
        assert extend_to_uea(j_heis, moyal, UEAElement.unit(heisenberg())) == PolyObservable.one(plane)

    def test_qp_value(self, j_heis, moyal, plane, qp):
        q, p = qp
        u = UEAElement.generator(heisenberg(), 0) * UEAElement.generator(heisenberg(), 1)
        expected = q * p + PolyObservable.constant(
            plane, LambdaSeries.lam(coefficient=GaussianRational(0, Fraction(1, 2)))
        )
        assert extend_to_uea(j_heis, moyal, u) == expected

    def test_consistent_on_pbw_classes(self, j_heis, moyal, qp):
        # P.Q normal-orders to QP - i lambda Z; both evaluations agree
        q, p = qp
        h3 = heisenberg()
        u = UEAElement.generator(h3, 1) * UEAElement.generator(h3, 0)
        assert extend_to_uea(j_heis, moyal, u) == moyal.mul(p, q)

    @pytest.mark.parametrize("maker", ["heis", "sl2"])
    def test_homomorphism_all_pairs(self, maker, j_heis, j_sp, moyal):
        J = j_heis if maker == "heis" else j_sp
        alg = J.algebra
        words = alg.pbw_monomials(3)
        for w1 in words:
            for w2 in words:
                if len(w1) + len(w2) > 3:
                    continue
                u, v = UEAElement.monomial(alg, w1), UEAElement.monomial(alg, w2)
                lhs = extend_to_uea(J, moyal, u * v)
                rhs = moyal.mul(
                    extend_to_uea(J, moyal, u), extend_to_uea(J, moyal, v)
                )
                assert lhs == rhs, (w1, w2)

    def test_rejects_non_momentum_map(self, j_trans, moyal, plane):
        with pytest.raises(NotAMomentumMap):
            extend_to_uea(j_trans, moyal, UEAElement.unit(abelian(2)))


class TestInnerAction:
    def test_primitive_is_commutator(self, j_heis, moyal, plane, qp):
        q, p = qp
        h3 = heisenberg()
        got = inner_action(j_heis, moyal, UEAElement.generator(h3, 0), p)
        assert got == ilam_obs(plane)

    def test_unit_acts_trivially(self, j_heis, moyal, plane):
        rng = random.Random(2)
        act = InnerAction(j_heis, moyal)
        for _ in range(10):
            a = random_poly(plane, rng)
            assert act.apply(UEAElement.unit(heisenberg()), a) == a

    def test_matches_rho_action(self, j_heis, j_sp, moyal, plane):
        # xi acts f = i lambda rho(xi) f when J is a quantum momentum map for rho
        rng = random.Random(3)
        for J in (j_heis, j_sp):
            action = J.default_action(moyal)
            inner = InnerAction(J, moyal)
            for i in range(J.algebra.dim):
                for _ in range(6):
                    f = random_poly(plane, rng, 3)
                    xi = UEAElement.generator(J.algebra, i)
                    assert inner.apply(xi, f) == times_i_lambda(action.rho(i, f))

    def test_composition_property(self, j_heis, moyal, plane):
        rng = random.Random(4)
        act = InnerAction(j_heis, moyal)
        h3 = heisenberg()
        words = h3.pbw_monomials(2)
        for _ in range(12):
            g = UEAElement.monomial(h3, rng.choice(words))
            h = UEAElement.monomial(h3, rng.choice(words))
            a = random_poly(plane, rng, 2)
            assert act.apply(g * h, a) == act.apply(g, act.apply(h, a))

    def test_module_algebra_law(self, j_heis, moyal, plane):
        rng = random.Random(5)
        act = InnerAction(j_heis, moyal)
        h3 = heisenberg()
        for w in h3.pbw_monomials(3):
            h = UEAElement.monomial(h3, w)
            a = random_poly(plane, rng, 2)
            b = random_poly(plane, rng, 2)
            lhs = act.apply(h, moyal.mul(a, b))
            rhs = PolyObservable.zero(plane)
            for u, v, c in h.coproduct().legs():
                term = moyal.mul(
                    act.apply(UEAElement.monomial(h3, u), a),
                    act.apply(UEAElement.monomial(h3, v), b),
                )
                rhs = rhs + term.scale(c)
            assert lhs == rhs

    def test_star_action_law(self, j_heis, moyal, plane):
        # (h acts a)* = S(h)* acts a*
        rng = random.Random(6)
        act = InnerAction(j_heis, moyal)
        h3 = heisenberg()
        for w in h3.pbw_monomials(3):
            h = UEAElement.monomial(h3, w)
            a = random_poly(plane, rng, 2, lambda_free=False)
            lhs = act.apply(h, a).conjugate()
            rhs = PolyObservable.zero(plane)
            sh = h.antipode().involution()
            for word, coeff in sh.terms.items():
                rhs = rhs + act.apply(UEAElement.monomial(h3, word), a.conjugate()).scale(coeff)
            assert lhs == rhs


class TestTwistAndDifference:
    def test_twist_shifts_primitives(self, j_heis, moyal, plane, qp):
        q, p = qp
        host = conv_host_for(j_heis, moyal)
        z = ConvElement.character(
            host, {0: LambdaSeries.constant(Fraction(1, 2)), 1: LambdaSeries.constant(-1)}
        )
        J2 = momentum_twist(j_heis, moyal, z)
        assert J2.value(0) == q + PolyObservable.constant(plane, Fraction(1, 2))
        assert J2.value(1) == p - PolyObservable.one(plane)
        assert J2.value(2) == PolyObservable.one(plane)
        assert check_quantum_momentum_map(J2, moyal).passed

    def test_difference_recovers_character(self, j_heis, moyal):
        host = conv_host_for(j_heis, moyal)
        z = ConvElement.character(
            host, {0: LambdaSeries.constant(2), 1: LambdaSeries.lam()}
        )
        J2 = momentum_twist(j_heis, moyal, z)
        diff = momentum_difference(j_heis, J2, moyal, host=host)
        assert diff.equals(z)

    def test_difference_of_equal_maps_is_unit(self, j_heis, moyal):
        host = conv_host_for(j_heis, moyal)
        diff = momentum_difference(j_heis, j_heis, moyal, host=host)
        assert diff.equals(ConvElement.unit(host))

    def test_character_constraint_on_z(self, j_heis, moyal):
        host = conv_host_for(j_heis, moyal)
        with pytest.raises(NotACharacter):
            ConvElement.character(host, {2: LambdaSeries.one()})  # z(Z) != 0

    def test_sl2_has_no_characters(self):
        assert character_functional_basis(sl2()) == []

    def test_heisenberg_characters_two_dimensional(self):
        basis = character_functional_basis(heisenberg())
        assert len(basis) == 2
        for vec in basis:
            assert vec[2] == 0


def test_center_is_constants(plane, moyal):
    assert center_constant_check(moyal, 4).passed


def test_action_morphism_reports(plane, moyal, j_sp, j_trans):
    assert j_sp.default_action(moyal).morphism_report(sl2(), 3).passed
    assert j_trans.default_action(moyal).morphism_report(abelian(2), 3).passed
