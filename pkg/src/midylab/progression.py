"""Prime-power block counts and the constructive progression of primes.

For a prime q and exponent v, membership of q**v in the property set of N
is decided from the shape of N alone: the exponent of q in N, the lift
valuation m of the base at q, and the q-adic valuations of the base's
orders at the remaining primes of N.  The smallest N admitting q**v is
always a prime congruent to 1 mod q**v, which yields an endless supply of
such primes: each found prime forces a larger q-power modulus, which
forces a larger prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import arith
from .errors import BoundedSearchError, PreconditionError
from .midy import midy_check_ppl2
from .order import lift_valuation, order_mod, _order_mod_prime

__all__ = [
    "DEFAULT_SEARCH_BOUND",
    "PrimePowerStructure",
    "ProgressionTrace",
    "midy_prime_v1_check",
    "prime_power_midy_structure",
    "prime_power_structure",
    "prime_progression",
    "smallest_midy_witness",
]

# Maximum number of candidates any single bounded search will examine.
DEFAULT_SEARCH_BOUND = 10**7


@dataclass(frozen=True)
class PrimePowerStructure:
    """Shape data of N relative to q: N = q**q_exponent * prod p_i**h_i.

    m is the lift valuation of the base at q (None when q does not divide
    N, where it is never consulted); order_valuations holds the q-adic
    valuation of the base's order at each p_i.
    """

    base: int
    q: int
    v: int
    modulus: int
    q_exponent: int
    others: tuple[tuple[int, int], ...]
    m: int | None
    order_valuations: tuple[int, ...]


@dataclass(frozen=True)
class ProgressionTrace:
    """Strictly increasing primes, each 1 mod its step modulus.

    steps holds (modulus, prime) pairs; every prime is congruent to 1
    modulo q**v, and from the second step on each modulus exceeds the
    previous prime.
    """

    base: int
    q: int
    v: int
    steps: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for _, p in self.steps)

    @property
    def moduli(self) -> tuple[int, ...]:
        return tuple(m for m, _ in self.steps)


def _check_prime_power_args(b: int, N: int, q: int, v: int) -> int:
    if not arith.is_prime(q):
        raise PreconditionError(f"{q} is not prime")
    if v < 1:
        raise PreconditionError("v must be >= 1")
    if math.gcd(b, N) != 1:
        raise PreconditionError(f"gcd({b}, {N}) != 1")
    L = order_mod(b, N)
    if L % q**v != 0:
        raise PreconditionError(f"{q}**{v} does not divide the order {L}")
    return L


def prime_power_structure(b: int, N: int, q: int, v: int) -> PrimePowerStructure:
    """Collect the shape data needed by the structural membership test."""
    _check_prime_power_args(b, N, q, v)
    n = 0
    others = []
    for p, h in arith.factor(N):
        if p == q:
            n = h
        else:
            others.append((p, h))
    m = lift_valuation(b, q) if n > 0 else None
    vals = tuple(
        arith.valuation(q, _order_mod_prime(b % p, p)) for p, _ in others
    )
    return PrimePowerStructure(
        base=b,
        q=q,
        v=v,
        modulus=N,
        q_exponent=n,
        others=tuple(others),
        m=m,
        order_valuations=vals,
    )


def prime_power_midy_structure(b: int, N: int, q: int, v: int) -> bool:
    """Structural membership test for block count q**v.

    Requires q**v to divide the order of b mod N.  N must carry q to at
    most the v-th power, every other prime of N must have an order whose
    q-valuation is positive, and the largest of those valuations (or the
    excess q-exponent over the lift valuation, when positive) may beat the
    smallest by less than v.  Pure powers of q carry no other primes and
    are decided by the valuation decider directly.
    """
    s = prime_power_structure(b, N, q, v)
    if not s.others:
        return midy_check_ppl2(b, N, q**v).holds
    if s.q_exponent > v:
        return False
    if any(a == 0 for a in s.order_valuations):
        return False
    peak = max(s.order_valuations)
    if s.m is not None and s.q_exponent > s.m:
        peak = max(peak, s.q_exponent - s.m)
    return peak - v < min(s.order_valuations)


def midy_prime_v1_check(b: int, N: int, q: int) -> bool:
    """Single-prime block count test (the v = 1 case).

    When q does not divide N: the base's order at every prime of N must
    carry the full q-valuation of the global order.  When q divides N:
    additionally q**2 must not divide N, and the equality is required of
    every prime of N other than q.
    """
    if not arith.is_prime(q):
        raise PreconditionError(f"{q} is not prime")
    if math.gcd(b, N) != 1:
        raise PreconditionError(f"gcd({b}, {N}) != 1")
    L = order_mod(b, N)
    if L % q != 0:
        raise PreconditionError(f"{q} does not divide the order {L}")
    nu_L = arith.valuation(q, L)
    n_factors = arith.factor(N)
    if N % q == 0 and n_factors.valuation(q) > 1:
        return False
    return all(
        p == q or arith.valuation(q, _order_mod_prime(b % p, p)) == nu_L
        for p, _ in n_factors
    )


def smallest_midy_witness(
    b: int, q: int, v: int, *, bound: int = DEFAULT_SEARCH_BOUND
) -> int:
    """Smallest N >= 2 coprime to b whose property set contains q**v.

    Linear scan over N <= bound.  The result is always a prime congruent
    to 1 mod q**v; that is asserted, and its failure would falsify the
    theory, not the input.
    """
    if b < 2:
        raise PreconditionError("base must be >= 2")
    if not arith.is_prime(q):
        raise PreconditionError(f"{q} is not prime")
    if v < 1:
        raise PreconditionError("v must be >= 1")
    d = q**v
    for N in range(2, bound + 1):
        if math.gcd(N, b) != 1:
            continue
        if order_mod(b, N) % d != 0:
            continue
        if midy_check_ppl2(b, N, d).holds:
            assert arith.is_prime(N) and N % d == 1, (
                f"witness {N} for base {b}, modulus {d} is not a prime "
                f"congruent to 1"
            )
            return N
    raise BoundedSearchError(
        f"no witness for q**v = {d} in base {b} below bound {bound}", bound
    )


def _next_prime_in_progression(b: int, modulus: int, bound: int) -> int:
    """Smallest prime P == 1 (mod modulus) whose property set has modulus.

    Scans P = j * modulus + 1 for j = 1..bound.
    """
    for j in range(1, bound + 1):
        P = j * modulus + 1
        if math.gcd(P, b) != 1 or not arith.is_prime(P):
            continue
        if order_mod(b, P) % modulus != 0:
            continue
        if midy_check_ppl2(b, P, modulus).holds:
            return P
    raise BoundedSearchError(
        f"no prime congruent to 1 mod {modulus} with the property for base {b} "
        f"within {bound} candidates",
        bound,
    )


def prime_progression(
    b: int, q: int, v: int, count: int, *, bound: int = DEFAULT_SEARCH_BOUND
) -> ProgressionTrace:
    """Generate count primes congruent to 1 mod q**v, strictly increasing.

    The first is the smallest witness for q**v; each later step takes the
    least power q**(t*v) exceeding the previous prime and finds the
    smallest prime congruent to 1 modulo it that keeps the property.
    """
    if count < 1:
        raise PreconditionError("count must be >= 1")
    first = smallest_midy_witness(b, q, v, bound=bound)
    steps = [(q**v, first)]
    step = q**v
    while len(steps) < count:
        prev = steps[-1][1]
        modulus = step
        while modulus <= prev:
            modulus *= step
        prime = _next_prime_in_progression(b, modulus, bound)
        steps.append((modulus, prime))
    return ProgressionTrace(base=b, q=q, v=v, steps=tuple(steps))
