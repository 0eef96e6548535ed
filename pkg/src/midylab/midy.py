"""Structural deciders for the block-sum property and set enumeration.

Two independent characterizations are implemented: the valuation test on
the primes shared by N and b**k - 1 (the production decider) and the
order-valuation existence test (the cross-check).  Both are validated
against the digit-level oracle in expansion.py by the test suite; they
never factor b**k - 1 itself.

At the even prime the naive valuation bound nu_2(N) <= nu_2(d) is too
strict: squaring b**k gains nu_2(b**k + 1) - 1 extra factors of two, so
even moduli get the wider allowance computed in _allowance.  Without it
the deciders would wrongly reject, e.g., base 3 with N = 4 and d = 2,
where both one-digit block sums equal b - 1 exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import arith, expansion
from .arith import Factorization
from .errors import HypothesisNotApplicableError, PreconditionError
from .order import order_mod, _order_mod_prime

__all__ = [
    "GcdCertificate",
    "MidySet",
    "MidyVerdict",
    "OracleCertificate",
    "PrimeCertificate",
    "guel_triple",
    "midy_check_direct",
    "midy_check_ppl2",
    "midy_check_ppl3",
    "midy_set",
]


@dataclass(frozen=True)
class PrimeCertificate:
    """Prime divisor of N witnessing a failed or unmatched valuation test."""

    p: int
    nu_n: int
    nu_d: int


@dataclass(frozen=True)
class OracleCertificate:
    """Smallest numerator whose block sum misses divisibility."""

    x: int


@dataclass(frozen=True)
class GcdCertificate:
    """A gcd(b**k - 1, N) value greater than 1."""

    g: int


Certificate = PrimeCertificate | OracleCertificate | GcdCertificate


@dataclass(frozen=True)
class MidyVerdict:
    holds: bool
    method: str
    certificate: Certificate | None = None


@dataclass(frozen=True)
class MidySet:
    """All block counts d > 1 dividing the order for which the property holds.

    members is ascending and upward closed under divisibility within the
    divisors of the order.
    """

    base: int
    modulus: int
    order: int
    members: tuple[int, ...]


def _check_args(b: int, N: int, d: int, L: int) -> int:
    if math.gcd(b, N) != 1:
        raise PreconditionError(f"gcd({b}, {N}) != 1")
    if d <= 1:
        raise PreconditionError("block count d must be > 1")
    if L % d != 0:
        raise PreconditionError(f"d = {d} does not divide the order {L}")
    return L // d


def _allowance(p: int, b: int, k: int, d: int) -> int:
    """Largest exponent of p that N may carry without breaking membership.

    Membership demands nu_p(N) + nu_p(b**k - 1) <= nu_p(b**(kd) - 1) at
    every prime p of gcd(b**k - 1, N).  For odd p the power lifts by
    exactly nu_p(d).  At p = 2 (b odd) the square step contributes
    nu_2(b**k + 1) - 1 extra whenever d is even, and nothing when d is
    odd, so the stated valuation bound nu_2(d) is exact only for even k.
    """
    if p != 2:
        return arith.valuation(p, d)
    if d % 2 != 0:
        return 0
    extra = arith.valuation(2, b + 1) - 1 if k % 2 else 0
    return arith.valuation(2, d) + extra


def midy_check_ppl2(
    b: int, N: int, d: int, *, n_factors: Factorization | None = None
) -> MidyVerdict:
    """Valuation test over the primes of N dividing b**k - 1.

    Holds iff every prime p of N with b**k == 1 (mod p) has its exponent
    in N within the membership allowance: the exponent of p in d, plus at
    p = 2 the extra 2-adic room of the square step (see _allowance).  A
    false verdict carries the violating prime with both exponents.
    n_factors may supply a precomputed factorization of N.
    """
    L = order_mod(b, N, n_factors=n_factors)
    k = _check_args(b, N, d, L)
    if n_factors is None:
        n_factors = arith.factor(N)
    for p, nu_n in n_factors:
        if pow(b, k, p) == 1 and nu_n > _allowance(p, b, k, d):
            return MidyVerdict(
                holds=False,
                method="ppl2",
                certificate=PrimeCertificate(
                    p=p, nu_n=nu_n, nu_d=arith.valuation(p, d)
                ),
            )
    return MidyVerdict(holds=True, method="ppl2")


def midy_check_ppl3(
    b: int, N: int, d: int, *, n_factors: Factorization | None = None
) -> MidyVerdict:
    """Order-valuation existence test.

    Holds iff each odd prime p of N exceeding its exponent in d admits a
    prime q of the order with nu_q(|b| mod p) > nu_q(order) - nu_q(d),
    i.e. the order of b at p does not divide k.  The even prime has no
    such escape (|b| mod 2 is 1) and is held to the same 2-adic allowance
    as midy_check_ppl2, with which this decider agrees on every valid
    input.
    """
    L = order_mod(b, N, n_factors=n_factors)
    k = _check_args(b, N, d, L)
    if n_factors is None:
        n_factors = arith.factor(N)
    order_primes = arith.factor(L).primes()
    for p, nu_n in n_factors:
        nu_d = arith.valuation(p, d)
        if p == 2:
            if nu_n > _allowance(2, b, k, d):
                return MidyVerdict(
                    holds=False,
                    method="ppl3",
                    certificate=PrimeCertificate(p=p, nu_n=nu_n, nu_d=nu_d),
                )
            continue
        if nu_n <= nu_d:
            continue
        ord_p = _order_mod_prime(b % p, p)
        if not any(
            arith.valuation(q, ord_p) > arith.valuation(q, L) - arith.valuation(q, d)
            for q in order_primes
        ):
            return MidyVerdict(
                holds=False,
                method="ppl3",
                certificate=PrimeCertificate(p=p, nu_n=nu_n, nu_d=nu_d),
            )
    return MidyVerdict(holds=True, method="ppl3")


def midy_check_direct(b: int, N: int, d: int) -> MidyVerdict:
    """Digit-level oracle verdict with its smallest counterexample."""
    x = expansion.smallest_failing_x(b, N, d)
    if x is None:
        return MidyVerdict(holds=True, method="direct")
    return MidyVerdict(holds=False, method="direct", certificate=OracleCertificate(x=x))


def midy_set(
    b: int, N: int, *, n_factors: Factorization | None = None
) -> MidySet:
    """Enumerate every block count d > 1 of the order with the property."""
    if math.gcd(b, N) != 1:
        raise PreconditionError(f"gcd({b}, {N}) != 1")
    L = order_mod(b, N, n_factors=n_factors)
    if n_factors is None:
        n_factors = arith.factor(N)
    members = tuple(
        d
        for d in arith.factor(L).divisors()
        if d > 1 and midy_check_ppl2(b, N, d, n_factors=n_factors).holds
    )
    return MidySet(base=b, modulus=N, order=L, members=members)


def guel_triple(b: int, N: int, d: int) -> tuple[bool, bool, bool]:
    """Evaluate the three statements of the all-primes-exceed case.

    Applicable only when every prime of N has a strictly larger exponent in
    N than in d; otherwise HypothesisNotApplicableError.  Returns the truth
    values of (gcd(b**k - 1, N) == 1, membership, per-prime existence test).
    For odd N the three provably coincide; even N can split them at the
    even prime, where membership outlives a nontrivial gcd (base 3, N = 4,
    d = 2 returns (False, True, False)).
    """
    L = order_mod(b, N)
    k = _check_args(b, N, d, L)
    n_factors = arith.factor(N)
    for p, nu_n in n_factors:
        if nu_n <= arith.valuation(p, d):
            raise HypothesisNotApplicableError(
                f"prime {p} has exponent {nu_n} in {N}, "
                f"not exceeding its exponent in {d}"
            )
    stmt_gcd = arith.gcd_pow_minus_one(b, k, N) == 1
    stmt_member = midy_check_ppl2(b, N, d, n_factors=n_factors).holds
    d_primes = arith.factor(d).primes()
    stmt_exists = all(
        any(
            arith.valuation(q, _order_mod_prime(b % p, p))
            > arith.valuation(q, L) - arith.valuation(q, d)
            for q in d_primes
        )
        for p, _ in n_factors
    )
    return stmt_gcd, stmt_member, stmt_exists
