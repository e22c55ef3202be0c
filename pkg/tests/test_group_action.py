from fractions import Fraction

import pytest

from rotweb.ckt_core import CktError
from rotweb.group_action import (INFINITY, GroupElement, Mat2, apply, apply_quartic,
                                 axis_action, compose, covariance_residual, from_gl2,
                                 inverse, substitution_action, to_gl2)
from rotweb.quartic_class import BinaryQuartic, invariants, root_structure
from rotweb.rotational import RotParams, singular_polynomial

from conftest import rand_fraction


def random_element(rng, allow_discrete=True):
    while True:
        a2 = rand_fraction(rng, -5, 5)
        a3 = rand_fraction(rng, -5, 5)
        if a2 and a3:
            return GroupElement.make(rand_fraction(rng, -3, 3), rand_fraction(rng, -3, 3),
                                     a2, a3, rand_fraction(rng, -3, 3),
                                     allow_discrete and rng.random() < 0.5)


def random_params(rng):
    return RotParams.make(*(rand_fraction(rng) for _ in range(6)))


class TestApply:
    def test_identity(self, rng):
        p = random_params(rng)
        assert apply(GroupElement.identity(), p) == p

    def test_dilation_on_ones(self):
        g = GroupElement.make(0, 0, 2, 1, 0, False)
        assert apply_quartic(g, (1, 1, 1, 1, 1)) == (Fraction(1, 4), Fraction(1, 2), 1, 2, 4)

    def test_discrete_swaps_cylindrical_to_tangent(self):
        g = GroupElement.make(0, 0, 1, 1, 0, True)
        p = RotParams.make(0, 0, 0, -1, 0, 1)
        moved = apply(g, p)
        assert moved.quartic_tuple() == (1, 0, 0, 0, 0)
        assert moved.c33 == -1  # C33 is untouched by the discrete inversion

    def test_invalid_element(self):
        with pytest.raises(CktError):
            GroupElement.make(0, 0, 0, 1, 0, False)
        with pytest.raises(CktError):
            GroupElement.make(0, 0, 1, 0, 0, False)


class TestGroupLaws:
    def test_compose_against_sequential_apply(self, rng):
        for _ in range(200):
            g1, g2 = random_element(rng), random_element(rng)
            p = random_params(rng)
            assert apply(compose(g1, g2), p) == apply(g1, apply(g2, p))

    def test_inverse_round_trip(self, rng):
        for _ in range(100):
            g = random_element(rng)
            p = random_params(rng)
            assert apply(inverse(g), apply(g, p)) == p

    def test_double_discrete_is_identity(self, rng):
        disc = GroupElement.make(0, 0, 1, 1, 0, True)
        assert compose(disc, disc) == GroupElement.identity()

    def test_continuous_inversion_is_conjugated_translation(self, rng):
        # phi_0(t) = I o phi_1(t) o I on the parameters.
        for _ in range(20):
            t = rand_fraction(rng)
            disc = GroupElement.make(0, 0, 1, 1, 0, True)
            translation = GroupElement.make(0, t, 1, 1, 0, False)
            candidate = compose(disc, compose(translation, disc))
            expected = GroupElement.make(t, 0, 1, 1, 0, False)
            p = random_params(rng)
            assert apply(candidate, p) == apply(expected, p)


class TestGl2Bridge:
    def test_identity(self):
        m = to_gl2(GroupElement.identity())
        assert (m.alpha, m.beta, m.gamma, m.delta) == (1.0, 0.0, -0.0, 1.0)
        assert from_gl2(Mat2(Fraction(1), Fraction(0), Fraction(0), Fraction(1))) \
            == GroupElement.identity()

    def test_swap_matrix(self):
        element = from_gl2(Mat2(Fraction(0), Fraction(1), Fraction(1), Fraction(0)))
        assert element.discrete and element.a0 == 0 and element.a1 == 0
        m = to_gl2(GroupElement.make(0, 0, 1, 1, 0, True))
        assert (m.alpha, m.beta, m.gamma, m.delta) == (-0.0, 1.0, 1.0, 0.0)

    def test_substitution_equals_apply_from_gl2(self, rng):
        for _ in range(100):
            while True:
                m = Mat2(*(Fraction(rng.randint(-4, 4)) for _ in range(4)))
                if m.det() != 0:
                    break
            q = tuple(rand_fraction(rng) for _ in range(5))
            assert substitution_action(m, q) == apply_quartic(from_gl2(m), q)

    def test_to_gl2_reproduces_apply_numerically(self, rng):
        for _ in range(50):
            g = random_element(rng)
            g = GroupElement.make(g.a0, g.a1, g.a2, abs(g.a3), 0, g.discrete)
            q = tuple(rand_fraction(rng) for _ in range(5))
            got = substitution_action(to_gl2(g), tuple(float(c) for c in q))
            want = tuple(float(c) for c in apply_quartic(g, q))
            scale = max(1.0, max(abs(w) for w in want))
            assert max(abs(a - b) for a, b in zip(got, want)) < 1e-12 * scale

    def test_round_trip_on_positive_subgroup(self, rng):
        # The discrete flag is a gauge (a flagged element with a0 != 0 equals
        # an unflagged one), so the round trip is checked at action level.
        for _ in range(25):
            g = random_element(rng)
            a3 = g.a3 * g.a3  # ensure a3 > 0
            g = GroupElement.make(g.a0, g.a1, g.a2, a3, 0, g.discrete)
            m = to_gl2(g)
            back = from_gl2(Mat2(*(Fraction(v) for v in (m.alpha, m.beta, m.gamma, m.delta))))
            q = tuple(rand_fraction(rng) for _ in range(5))
            got = tuple(float(c) for c in apply_quartic(back, q))
            want = tuple(float(c) for c in apply_quartic(g, q))
            scale = max(1.0, max(abs(w) for w in want))
            assert max(abs(a - b) for a, b in zip(got, want)) < 1e-9 * scale

    def test_to_gl2_requires_positive_scaling(self):
        with pytest.raises(CktError):
            to_gl2(GroupElement.make(0, 0, 1, -1, 0, False))

    def test_from_gl2_rejects_singular(self):
        with pytest.raises(CktError):
            from_gl2(Mat2(Fraction(1), Fraction(2), Fraction(2), Fraction(4)))


class TestAxisAction:
    def test_identity(self):
        assert axis_action(GroupElement.identity(), Fraction(3, 2)) == Fraction(3, 2)

    def test_translation(self):
        g = GroupElement.make(0, 3, 1, 1, 0, False)
        assert axis_action(g, 2) == 5

    def test_discrete_inversion(self):
        g = GroupElement.make(0, 0, 1, 1, 0, True)
        assert axis_action(g, 0) is INFINITY
        assert axis_action(g, INFINITY) == 0

    def test_pole_maps_to_infinity(self):
        g = GroupElement.make(1, 0, 1, 1, 0, False)
        assert axis_action(g, -1) is INFINITY

    def test_roots_move_with_axis_action(self, rng):
        # Rational-root fixture: the root multiset moves by the axis map.
        p = RotParams.make(Fraction(-1, 4), 0, Fraction(5, 4), 0, 0, -1)  # roots +-1, +-2
        for _ in range(25):
            g = random_element(rng)
            moved = singular_polynomial(apply(g, p))
            images = set()
            for root in (1, -1, 2, -2):
                image = axis_action(g, Fraction(root))
                images.add(image)
                if image is not INFINITY:
                    assert moved.eval(image) == 0
            if INFINITY not in images:
                assert moved.degree == 4


class TestCovariance:
    def test_exact_for_random_data(self, rng):
        checked = 0
        while checked < 200:
            g = random_element(rng)
            p = random_params(rng)
            z = rand_fraction(rng)
            den = (z + g.a0) if g.discrete else (g.a0 * z + 1)
            if den == 0:
                continue
            checked += 1
            assert covariance_residual(g, p, z) == 0

    def test_identity_trivial(self, rng):
        assert covariance_residual(GroupElement.identity(), random_params(rng), 7) == 0

    def test_pole_rejected(self):
        g = GroupElement.make(1, 0, 1, 1, 0, False)
        with pytest.raises(CktError):
            covariance_residual(g, RotParams.make(h=1), -1)


class TestInvariantLaws:
    def test_ij_scaling(self, rng):
        for _ in range(200):
            g = random_element(rng)
            q = BinaryQuartic.make(*(rand_fraction(rng) for _ in range(5)))
            before = invariants(q)
            after = invariants(BinaryQuartic.make(*apply_quartic(g, q.as_tuple())))
            assert after.i == g.a3 ** 2 * before.i
            assert after.j == g.a3 ** 3 * before.j
            if before.j != 0:
                assert after.f == before.f

    def test_discrete_fixes_ij(self, rng):
        disc = GroupElement.make(0, 0, 1, 1, 0, True)
        for _ in range(50):
            q = BinaryQuartic.make(*(rand_fraction(rng) for _ in range(5)))
            before = invariants(q)
            after = invariants(BinaryQuartic.make(*apply_quartic(disc, q.as_tuple())))
            assert (after.i, after.j) == (before.i, before.j)

    def test_root_partition_invariant(self, rng):
        checked = 0
        while checked < 100:
            g = random_element(rng)
            q = BinaryQuartic.make(*(rand_fraction(rng) for _ in range(5)))
            if q.is_zero:
                continue
            checked += 1
            moved = BinaryQuartic.make(*apply_quartic(g, q.as_tuple()))
            a, b = root_structure(q), root_structure(moved)
            assert a.real_multiplicities == b.real_multiplicities
            assert a.cc_pair_multiplicities == b.cc_pair_multiplicities

    def test_c33_never_influences_quartic(self, rng):
        for _ in range(20):
            g = random_element(rng)
            p = random_params(rng)
            bumped = RotParams.make(p.m33, p.l3, p.h, p.c33 + 3, p.d3, p.a33)
            assert apply(g, p).quartic_tuple() == apply(g, bumped).quartic_tuple()
