"""Prime-power structure checks and the constructive prime progression."""

import math

import pytest

from midylab import arith
from midylab.errors import BoundedSearchError, PreconditionError
from midylab.midy import midy_check_ppl2
from midylab.order import order_mod
from midylab.progression import (
    midy_prime_v1_check,
    prime_power_midy_structure,
    prime_power_structure,
    prime_progression,
    smallest_midy_witness,
)


class TestStructureCheck:
    @pytest.mark.parametrize(
        "b,n,q,v,want",
        [(10, 13, 3, 1, True), (10, 21, 3, 1, True), (10, 7 * 13, 3, 1, True)],
    )
    def test_examples(self, b, n, q, v, want):
        assert prime_power_midy_structure(b, n, q, v) is want

    def test_order_too_small(self):
        with pytest.raises(PreconditionError):
            prime_power_midy_structure(10, 9, 3, 1)

    def test_pure_prime_power_routed(self):
        # N = 27: order of 10 is 3, so v = 1 applies; 27 carries 3 cubed
        assert order_mod(10, 27) == 3
        assert prime_power_midy_structure(10, 27, 3, 1) is False
        assert midy_check_ppl2(10, 27, 3).holds is False

    def test_structure_record(self):
        s = prime_power_structure(10, 21, 3, 1)
        assert s.q_exponent == 1
        assert s.others == ((7, 1),)
        assert s.m == 2  # 10**1 - 1 = 9 = 3**2
        assert s.order_valuations == (1,)  # |10| mod 7 = 6

    def test_matches_general_decider(self):
        for b in (2, 10):
            for q in (2, 3, 5):
                for v in (1, 2):
                    d = q**v
                    for n in range(2, 500):
                        if math.gcd(b, n) != 1:
                            continue
                        if order_mod(b, n) % d != 0:
                            continue
                        assert (
                            prime_power_midy_structure(b, n, q, v)
                            == midy_check_ppl2(b, n, d).holds
                        ), (b, n, q, v)


class TestPrimeV1Check:
    @pytest.mark.parametrize(
        "b,n,q,want",
        [(10, 13, 3, True), (8, 75, 5, False), (10, 21, 3, True)],
    )
    def test_examples(self, b, n, q, want):
        assert midy_prime_v1_check(b, n, q) is want

    def test_square_divisor_rejects(self):
        # 9 divides 63 and 3 divides the order of 10 mod 63
        assert order_mod(10, 63) % 3 == 0
        assert midy_prime_v1_check(10, 63, 3) is False
        assert midy_check_ppl2(10, 63, 3).holds is False

    def test_order_precondition(self):
        with pytest.raises(PreconditionError):
            midy_prime_v1_check(10, 11, 3)  # order 2, no factor 3

    def test_matches_general_decider(self):
        for b in (2, 10):
            for q in (2, 3, 5):
                for n in range(2, 500):
                    if math.gcd(b, n) != 1:
                        continue
                    if order_mod(b, n) % q != 0:
                        continue
                    assert (
                        midy_prime_v1_check(b, n, q)
                        == midy_check_ppl2(b, n, q).holds
                    ), (b, n, q)


class TestSmallestWitness:
    @pytest.mark.parametrize(
        "b,q,v,want", [(10, 3, 1, 7), (10, 2, 1, 7), (2, 3, 1, 7)]
    )
    def test_examples(self, b, q, v, want):
        assert smallest_midy_witness(b, q, v) == want

    def test_witness_is_prime_congruent_one(self):
        for b in (2, 10):
            for q in (2, 3, 5, 7):
                for v in (1, 2):
                    w = smallest_midy_witness(b, q, v)
                    assert arith.is_prime(w)
                    assert w % q**v == 1

    def test_no_smaller_candidate(self):
        # everything below the witness either lacks the order factor or
        # fails the decider
        w = smallest_midy_witness(10, 3, 2)
        d = 9
        for n in range(2, w):
            if math.gcd(n, 10) != 1:
                continue
            ok = order_mod(10, n) % d == 0 and midy_check_ppl2(10, n, d).holds
            assert not ok, n

    def test_bound_exhaustion(self):
        with pytest.raises(BoundedSearchError) as info:
            smallest_midy_witness(10, 3, 4, bound=50)
        assert info.value.bound == 50


class TestProgression:
    def test_examples(self):
        assert prime_progression(10, 3, 1, 2).primes == (7, 19)
        assert prime_progression(10, 2, 1, 2).primes == (7, 17)

    def test_single_step_is_witness(self):
        t = prime_progression(10, 5, 1, 1)
        assert t.primes == (smallest_midy_witness(10, 5, 1),)
        assert t.moduli == (5,)

    def test_trace_invariants(self):
        for b, q, v in [(10, 3, 1), (2, 2, 1), (10, 2, 2), (2, 5, 1)]:
            trace = prime_progression(b, q, v, 5)
            primes = trace.primes
            moduli = trace.moduli
            assert len(primes) == 5
            assert list(primes) == sorted(set(primes))
            assert all(arith.is_prime(p) for p in primes)
            assert all(p % q**v == 1 for p in primes)
            assert all(p % m == 1 for m, p in trace.steps)
            assert list(moduli) == sorted(set(moduli))
            # each step modulus is the least q-power of q**v above the
            # previous prime
            for i in range(1, 5):
                assert moduli[i] > primes[i - 1]
                assert moduli[i] // q**v <= primes[i - 1]
            # every found prime genuinely carries the property
            for m, p in trace.steps:
                assert order_mod(b, p) % m == 0
                assert midy_check_ppl2(b, p, m).holds

    def test_minimality_of_each_step(self):
        trace = prime_progression(10, 3, 1, 3)
        for m, p in trace.steps[1:]:
            for candidate in range(m + 1, p, m):
                if math.gcd(candidate, 10) != 1 or not arith.is_prime(candidate):
                    continue
                ok = (
                    order_mod(10, candidate) % m == 0
                    and midy_check_ppl2(10, candidate, m).holds
                )
                assert not ok, (m, candidate)

    def test_count_validation(self):
        with pytest.raises(PreconditionError):
            prime_progression(10, 3, 1, 0)
