import pytest

from twoadic.errors import InvalidParameter, ModulusTooLarge, NotInvariant
from twoadic.maps import affine, dsl
from twoadic.vanderput import INDETERMINATE, vdp_b
from twoadic.verdicts import VerdictKind
from twoadic.ergodic import oracle_is_transitive
from twoadic.spheres import (
    SphereSpec,
    check_invariance,
    conjugate,
    oracle_sphere_ergodic,
    sphere_ergodicity_criterion,
    sphere_orbit_is_transitive,
    sphere_points_mod,
)

SAMPLE_MAPS = [
    ("x", dsl("x")),
    ("x + 1", dsl("x + 1")),
    ("x + 4", dsl("x + 4")),
    ("5x", affine(0, 5)),
    ("1 + 5x", affine(1, 5)),
    ("x**5", dsl("x**5")),
    ("x**3", dsl("x**3")),
    ("x xor 5", dsl("x xor 5")),
    ("x**5 + 4", dsl("x**5 + 4")),
]


class TestSphereSpec:
    def test_center_normalized(self):
        s = SphereSpec(2, 13)
        assert s.a == 1
        assert s.base_point == 5

    def test_radius_exponent_positive(self):
        with pytest.raises(InvalidParameter):
            SphereSpec(0, 0)


class TestPoints:
    def test_examples(self):
        assert sphere_points_mod(SphereSpec(1, 0), 1) == {2, 6}
        assert sphere_points_mod(SphereSpec(1, 1), 1) == {3, 7}
        assert sphere_points_mod(SphereSpec(2, 1), 0) == {5}

    def test_cardinality(self):
        for r in range(1, 4):
            for a in range(1 << r):
                for t in range(0, 5):
                    assert len(sphere_points_mod(SphereSpec(r, a), t)) == 1 << t

    def test_equals_ball_enumeration(self):
        # the sphere is exactly the ball of half the radius around a + 2^r
        for r in range(1, 5):
            for a in range(1 << r):
                s = SphereSpec(r, a)
                for t in range(0, 6):
                    exponent = r + 1 + t
                    mod = 1 << exponent
                    ball = {x for x in range(mod)
                            if (x - s.base_point) % (1 << (r + 1)) == 0}
                    assert sphere_points_mod(s, t) == ball

    def test_modulus_cap(self):
        with pytest.raises(ModulusTooLarge):
            sphere_points_mod(SphereSpec(1, 0), 20)


class TestInvariance:
    def test_examples(self):
        assert check_invariance(dsl("x + 4"), SphereSpec(1, 0)) is True
        assert check_invariance(dsl("x + 2"), SphereSpec(1, 0)) is False
        for r in range(1, 4):
            for a in range(1 << r):
                assert check_invariance(dsl("x"), SphereSpec(r, a)) is True


class TestConjugate:
    def test_increment_by_four(self):
        g = conjugate(dsl("x + 4"), SphereSpec(1, 0))
        for x in range(32):
            assert g(x, 5) == (x + 1) % 32

    def test_times_five(self):
        g = conjugate(affine(0, 5), SphereSpec(1, 1))
        for x in range(32):
            assert g(x, 5) == (3 + 5 * x) % 32

    def test_identity(self):
        g = conjugate(dsl("x"), SphereSpec(2, 3))
        for x in range(16):
            assert g(x, 4) == x

    def test_not_invariant_rejected(self):
        with pytest.raises(NotInvariant):
            conjugate(dsl("x + 2"), SphereSpec(1, 0))

    def test_conjugate_is_compatible(self):
        g = conjugate(dsl("x**5 + 4"), SphereSpec(1, 1))
        for k in range(1, 6):
            for x in range(1 << k):
                ref = g(x, k)
                for t in range(1 << (6 - k)):
                    assert g(x + (t << k), k) == ref


class TestCriterion:
    def test_increment_by_four_verified(self):
        f = dsl("x + 4")
        s = SphereSpec(1, 0)
        v = sphere_ergodicity_criterion(f, s, 8)
        assert v.kind is VerdictKind.VERIFIED_UP_TO_LEVEL
        # spot values from the definition of the conditions
        assert f(2, 3) == 6
        assert vdp_b(f, 6, 10).residue % 4 == 1
        assert (vdp_b(f, 10, 10).residue + vdp_b(f, 14, 10).residue) % 4 == 2

    def test_identity_rejected_at_condition_1(self):
        v = sphere_ergodicity_criterion(dsl("x"), SphereSpec(1, 0), 6)
        assert v.kind is VerdictKind.DECIDED_NOT_ERGODIC
        assert v.witness["condition"] == 1
        assert v.witness["image"] == 2 and v.witness["expected"] == 6

    def test_unperturbed_fifth_power_rejected(self):
        v = sphere_ergodicity_criterion(dsl("x**5"), SphereSpec(1, 1), 6)
        assert v.kind is VerdictKind.DECIDED_NOT_ERGODIC
        assert v.witness["condition"] == 1

    def test_not_invariant_verdict(self):
        v = sphere_ergodicity_criterion(dsl("x + 2"), SphereSpec(1, 0), 6)
        assert v.kind is VerdictKind.NOT_INVARIANT


class TestSphereOracle:
    def test_increment_by_four_ergodic(self):
        v = oracle_sphere_ergodic(dsl("x + 4"), SphereSpec(1, 0), 10)
        assert v.kind is VerdictKind.VERIFIED_UP_TO_LEVEL

    def test_times_five_ergodic(self):
        v = oracle_sphere_ergodic(affine(0, 5), SphereSpec(1, 1), 10)
        assert v.kind is VerdictKind.VERIFIED_UP_TO_LEVEL

    def test_fifth_power_not_ergodic(self):
        v = oracle_sphere_ergodic(dsl("x**5"), SphereSpec(1, 1), 4)
        assert v.kind is VerdictKind.DECIDED_NOT_ERGODIC

    def test_not_invariant(self):
        v = oracle_sphere_ergodic(dsl("x + 2"), SphereSpec(1, 0), 4)
        assert v.kind is VerdictKind.NOT_INVARIANT

    def test_direct_walk_agrees_with_conjugate(self):
        # the orbit of the base point among sphere residues and the
        # transitivity of the conjugated map are the same notion
        for _, f in SAMPLE_MAPS:
            for r in range(1, 4):
                for a in range(1 << r):
                    s = SphereSpec(r, a)
                    if not check_invariance(f, s):
                        continue
                    g = conjugate(f, s)
                    for t in range(1, 9):
                        assert sphere_orbit_is_transitive(f, s, t) == \
                            oracle_is_transitive(g, t)


class TestCoefficientTransfer:
    def test_conjugate_coefficients_match_sphere_indices(self):
        for _, f in SAMPLE_MAPS:
            for r in range(1, 4):
                for a in range(1 << r):
                    s = SphereSpec(r, a)
                    if not check_invariance(f, s):
                        continue
                    g = conjugate(f, s)
                    Kg = 16
                    Kf = Kg + r + 1
                    step = 1 << (r + 1)
                    for m in range(2, 1 << 6):
                        bg = vdp_b(g, m, Kg)
                        bf = vdp_b(f, s.base_point + m * step, Kf)
                        if bg is INDETERMINATE or bf is INDETERMINATE:
                            assert bg is bf
                            continue
                        assert bg == bf
                    # difference of the first two conjugate values transfers too
                    b0 = vdp_b(g, 0, Kg).residue
                    b1 = vdp_b(g, 1, Kg).residue
                    bf1 = vdp_b(f, s.base_point + step, Kf)
                    assert bf1 is not INDETERMINATE
                    assert (b1 - b0) % (1 << bf1.precision) == bf1.residue
