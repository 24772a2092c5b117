import itertools
import random

import pytest

from sumsetlab.errors import (
    DegenerateInputError,
    MalformedInputError,
    NotNormalizedError,
)
from sumsetlab.groups import CyclicGroup
from sumsetlab.intsets import IntSet
from sumsetlab.structure import (
    check_additive_implication,
    closure,
    closure_step,
    detect_structured_up_to_isomorphism,
    is_structured,
    recover_affine_witness,
    structure_certificate,
)


def brute_closure_step(x, a):
    """Oracle: (X+X-X) ∩ A by direct enumeration."""
    reach = {p + q - r for p in x for q in x for r in x}
    return tuple(sorted(reach & set(a)))


class TestClosureStep:
    def test_basic(self):
        out = closure_step(IntSet([0, 1]), IntSet([0, 1, 2, 4]))
        assert out.elements == (0, 1, 2)

    def test_full_set_is_fixed(self):
        a = IntSet([0, 3, 7, 11])
        assert closure_step(a, a) == a

    def test_mod3_set_stalls(self):
        out = closure_step(IntSet([0, 1]), IntSet([0, 1, 3, 4, 6]))
        assert out.elements == (0, 1)

    def test_seed_outside_ambient_rejected(self):
        with pytest.raises(MalformedInputError):
            closure_step(IntSet([0, 5]), IntSet([0, 1, 2]))

    def test_against_oracle(self):
        rng = random.Random(31)
        for _ in range(300):
            a = sorted(rng.sample(range(-10, 20), rng.randrange(2, 8)))
            x = rng.sample(a, rng.randrange(1, len(a) + 1))
            got = closure_step(IntSet(x), IntSet(a))
            assert got.elements == brute_closure_step(x, a)


class TestClosure:
    def test_two_step_fill(self):
        tr = closure(IntSet([0, 1]), IntSet([0, 1, 2, 4]))
        assert tr.steps == 2
        assert [it.elements for it in tr.iterates] == [(0, 1, 2), (0, 1, 2, 4)]
        assert tr.fixed_point.elements == (0, 1, 2, 4)

    def test_immediate_fixed_point(self):
        tr = closure(IntSet([0, 1]), IntSet([0, 1]))
        assert tr.steps == 1 and tr.fixed_point.elements == (0, 1)

    def test_stalled_seed(self):
        tr = closure(IntSet([3, 4]), IntSet([0, 1, 3, 4, 6]))
        assert tr.fixed_point.elements == (3, 4)

    def test_translation_covariance(self):
        rng = random.Random(8)
        for _ in range(200):
            a = sorted(rng.sample(range(0, 15), rng.randrange(2, 8)))
            x = rng.sample(a, 2)
            t = rng.randrange(-50, 50)
            base = closure(IntSet(x), IntSet(a))
            shifted = closure(IntSet(x).translate(t), IntSet(a).translate(t))
            assert shifted.fixed_point == base.fixed_point.translate(t)

    def test_property_suite_exhaustive_small(self):
        # extensive, bounded, stabilizing within |A| steps; monotone in the
        # seed against every one-element enlargement
        for n in range(1, 2**7):
            a_elems = tuple(i for i in range(7) if n >> i & 1)
            if len(a_elems) < 2:
                continue
            a = IntSet(a_elems)
            for seed in itertools.combinations(a_elems, 2):
                x = IntSet(seed)
                step = closure_step(x, a)
                assert x <= step and step <= a
                tr = closure(x, a)
                assert tr.steps <= len(a)
                assert closure_step(tr.fixed_point, a) == tr.fixed_point
                for extra in a_elems:
                    if extra in seed:
                        continue
                    bigger = IntSet(seed + (extra,))
                    assert step <= closure_step(bigger, a)


class TestIsStructured:
    def test_interval(self):
        for n in (2, 5, 9):
            cert = is_structured(IntSet(range(n)))
            assert cert.structured and cert.seed == (0, 1)

    def test_mod3_set_not_structured(self):
        cert = is_structured(IntSet([0, 1, 3, 4, 6]))
        assert not cert.structured
        # every candidate seed must stall strictly below A
        assert cert.failed_seeds
        for _, fixed in cert.failed_seeds:
            assert len(fixed) < 5

    def test_gap_set_structured(self):
        cert = is_structured(IntSet([0, 1, 2, 4]))
        assert cert.structured and cert.seed == (0, 1)

    def test_requires_normalization(self):
        with pytest.raises(NotNormalizedError):
            is_structured(IntSet([1, 2, 3]))

    def test_wrapper_normalizes(self):
        cert, nmap = detect_structured_up_to_isomorphism(IntSet([10, 12, 14]))
        assert cert.structured and (nmap.shift, nmap.scale) == (10, 2)

    def test_literal_detection_ignores_gcd(self):
        # no pair at difference 1 exists, so the literal answer is "no"
        cert = structure_certificate(IntSet([0, 2, 4]))
        assert not cert.structured

    def test_deterministic_first_seed(self):
        cert = structure_certificate(IntSet([3, 4, 5]))
        assert cert.seed == (3, 4)

    def test_too_small_rejected(self):
        with pytest.raises(DegenerateInputError):
            structure_certificate(IntSet([7]))


class TestAdditiveImplication:
    c5 = CyclicGroup(5)

    def test_affine_points_pass(self):
        ok, quad = check_additive_implication(self.c5, [(0, 0), (1, 1), (2, 2)])
        assert ok and quad is None

    def test_violation_found(self):
        ok, quad = check_additive_implication(self.c5, [(0, 0), (1, 0), (2, 1)])
        assert not ok and quad is not None

    def test_constant_second_coordinate(self):
        ok, _ = check_additive_implication(self.c5, [(0, 3), (1, 3), (4, 3)])
        assert ok

    def test_duplicate_firsts_rejected(self):
        with pytest.raises(MalformedInputError):
            check_additive_implication(self.c5, [(0, 0), (0, 1)])


class TestAffineWitness:
    def test_consecutive_pair_solve(self):
        c5 = CyclicGroup(5)
        cert = recover_affine_witness(c5, [(0, 2), (1, 3), (2, 4)])
        assert cert.structured and (cert.witness_x, cert.witness_y) == (1, 2)

    def test_non_structured_projection_reported(self):
        c7 = CyclicGroup(7)
        cert = recover_affine_witness(c7, [(0, 1), (1, 4), (3, 3)])
        assert not cert.structured
        assert "not structured" in cert.reason

    def test_constant_case(self):
        c5 = CyclicGroup(5)
        cert = recover_affine_witness(c5, [(0, 0), (1, 0), (2, 0)])
        assert cert.structured and cert.witness_x == 0 and cert.witness_y == 0

    def test_round_trip_random(self):
        # synthetic structured instances {(a, a*x+y)} must reproduce exactly
        rng = random.Random(12345)
        structured_sets = []
        for n in range(1, 2**9):
            elems = tuple(i for i in range(10) if n >> i & 1)
            if len(elems) >= 2 and elems[0] == 0:
                if structure_certificate(IntSet(elems)).structured:
                    structured_sets.append(elems)
        assert structured_sets
        for _ in range(10_000):
            elems = rng.choice(structured_sets)
            m = rng.randrange(2, 12)
            spec = CyclicGroup(m)
            x, y = rng.randrange(m), rng.randrange(m)
            pts = [(a, (a * x + y) % m) for a in elems]
            cert = recover_affine_witness(spec, pts)
            assert cert.structured
            for a, v in pts:
                assert v == spec.op(spec.power(cert.witness_x, a), cert.witness_y)
