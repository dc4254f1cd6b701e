import pytest

from twoadic.errors import ModulusTooLarge, PreconditionViolated, WrongProvenance
from twoadic.maps import affine, dsl, polynomial, table_map
from twoadic.verdicts import Method, VerdictKind
from twoadic.ergodic import (
    check_measure_preserving,
    criterion_difference_form,
    cycle_structure,
    ergodicity_criterion,
    larin_decision,
    oracle_ergodic,
    oracle_is_bijective,
    oracle_is_transitive,
)


class TestCycleStructure:
    def test_identity(self):
        cs = cycle_structure(dsl("x"), 2)
        assert cs.cycles == ((1, 0), (1, 1), (1, 2), (1, 3))

    def test_full_cycle_affine(self):
        cs = cycle_structure(affine(1, 5), 3)
        assert cs.cycles == ((8, 0),)
        assert cs.is_transitive

    def test_non_bijective_square(self):
        cs = cycle_structure(dsl("x**2"), 2)
        assert not cs.is_bijective
        a, b = cs.non_bijective_witness
        f = dsl("x**2")
        assert a != b and f(a, 2) == f(b, 2)

    def test_lengths_sum_to_modulus(self):
        for source in ("x", "x + 1", "x xor 5", "5 * x + 3"):
            for k in range(1, 8):
                cs = cycle_structure(dsl(source), k)
                assert sum(length for length, _ in cs.cycles) == 1 << k

    def test_modulus_cap(self):
        with pytest.raises(ModulusTooLarge):
            cycle_structure(dsl("x"), 21)


class TestOracles:
    def test_increment_transitive(self):
        f = dsl("x + 1")
        for k in range(1, 15):
            assert oracle_is_transitive(f, k)

    def test_identity_bijective_not_transitive(self):
        f = dsl("x")
        assert oracle_is_bijective(f, 1)
        assert not oracle_is_transitive(f, 1)

    def test_affine_two_cycle(self):
        assert not oracle_is_transitive(affine(1, 3), 2)

    def test_transitive_implies_bijective(self):
        for source in ("x + 1", "5 * x + 1", "x xor 5", "x**2"):
            f = dsl(source)
            for k in range(1, 9):
                if oracle_is_transitive(f, k):
                    assert oracle_is_bijective(f, k)

    def test_oracle_verdicts(self):
        assert oracle_ergodic(dsl("x + 1"), 12).kind is VerdictKind.VERIFIED_UP_TO_LEVEL
        v = oracle_ergodic(dsl("x"), 12)
        assert v.kind is VerdictKind.DECIDED_NOT_ERGODIC
        assert v.witness["modulus_exponent"] == 1


class TestCriterion:
    def test_increment_verified(self):
        v = ergodicity_criterion(dsl("x + 1"), 10)
        assert v.kind is VerdictKind.VERIFIED_UP_TO_LEVEL
        assert v.level == 10

    def test_identity_rejected_at_condition_1(self):
        v = ergodicity_criterion(dsl("x"))
        assert v.kind is VerdictKind.DECIDED_NOT_ERGODIC
        assert v.witness["condition"] == 1
        assert v.witness["b0"] == 0

    def test_affine_1_3_rejected_at_condition_2(self):
        v = ergodicity_criterion(affine(1, 3))
        assert v.kind is VerdictKind.DECIDED_NOT_ERGODIC
        assert v.witness["condition"] == 2
        # b_0 = 1, b_1 = f(1) = 4: sum 5, not 3 mod 4
        assert (v.witness["b0"] + v.witness["b1"]) % 4 == 1

    def test_witnesses_are_deterministic(self):
        v1 = ergodicity_criterion(polynomial([3, 2, 4]), 8)
        v2 = ergodicity_criterion(polynomial([3, 2, 4]), 8)
        assert v1 == v2

    def test_noncompatible_map_flagged(self):
        good = table_map([(x + 1) % 32 for x in range(32)])
        v = ergodicity_criterion(good, 2, precision=5)
        assert v.kind is VerdictKind.VERIFIED_UP_TO_LEVEL
        bad = table_map([1, 2, 2, 1, 3, 0, 0, 3,
                         1, 2, 2, 1, 3, 0, 0, 3,
                         1, 2, 2, 1, 3, 0, 0, 3,
                         1, 2, 2, 1, 3, 0, 0, 3])
        v = ergodicity_criterion(bad, 2, precision=5)
        assert v.kind is VerdictKind.NOT_ONE_LIPSCHITZ

    def test_inconclusive_on_indeterminate_coefficient(self):
        # b_0 = 1 odd, b_0 + b_1 = 3 mod 4, but B_2 = 0 exactly
        f = dsl("1 + (x and 1)")
        v = ergodicity_criterion(f, 4)
        assert v.kind is VerdictKind.INCONCLUSIVE


class TestDifferenceForm:
    def test_examples(self):
        assert criterion_difference_form(dsl("x + 1")) is True
        assert criterion_difference_form(affine(1, 5)) is True
        assert criterion_difference_form(affine(1, 3)) is False

    def test_requires_odd_b0(self):
        with pytest.raises(PreconditionViolated):
            criterion_difference_form(dsl("x"))

    def test_agrees_with_sum_form_when_b0_odd(self):
        for c0 in range(1, 16, 2):
            for c1 in range(8):
                f = affine(c0, c1)
                b0 = f(0, 4)
                b1 = f(1, 4)
                assert criterion_difference_form(f) == ((b0 + b1) % 4 == 3)


class TestLarin:
    def test_examples(self):
        assert larin_decision(affine(1, 5)).kind is VerdictKind.DECIDED_ERGODIC
        assert larin_decision(polynomial([0, 0, 1])).kind is VerdictKind.DECIDED_NOT_ERGODIC
        assert larin_decision(affine(2, 1)).kind is VerdictKind.DECIDED_NOT_ERGODIC

    def test_method_tag(self):
        assert larin_decision(affine(1, 5)).method is Method.LARIN

    def test_wrong_provenance(self):
        with pytest.raises(WrongProvenance):
            larin_decision(dsl("x + 1"))

    def test_matches_deep_oracle_on_small_grid(self):
        for c0 in range(8):
            for c1 in range(8):
                f = affine(c0, c1)
                deep = all(oracle_is_transitive(f, k) for k in range(1, 11))
                assert (larin_decision(f).kind is VerdictKind.DECIDED_ERGODIC) == deep


class TestMeasurePreserving:
    def test_identity(self):
        v = check_measure_preserving(dsl("x"), 12)
        assert v.kind is VerdictKind.VERIFIED_UP_TO_LEVEL

    def test_square_rejected_with_witness(self):
        v = check_measure_preserving(dsl("x**2"), 2)
        assert v.kind is VerdictKind.DECIDED_NOT_MEASURE_PRESERVING
        a, b = v.witness["collision"]
        f = dsl("x**2")
        k = v.witness["modulus_exponent"]
        assert f(a, k) == f(b, k)

    def test_xor_involution(self):
        v = check_measure_preserving(dsl("x xor 5"), 12)
        assert v.kind is VerdictKind.VERIFIED_UP_TO_LEVEL
