"""Multiplicative orders: |b| mod N via per-prime-power lifting and lcm.

The order modulo an odd prime power p**t is derived from the order modulo
p: it stays equal to it while t <= m, where m is the p-adic valuation of
b**ord - 1, and picks up a factor p**(t-m) beyond that.  Orders modulo
powers of 2 do not follow that rule and are computed by a direct doubling
scan instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import arith
from .errors import DomainError, PreconditionError

__all__ = [
    "OrderRecord",
    "lift_valuation",
    "order_mod",
    "order_mod_naive",
    "order_prime_power",
    "order_record",
]


@dataclass(frozen=True)
class OrderRecord:
    """Order of base modulo modulus together with its per-prime-power parts.

    per_prime lists (p, t, order mod p**t, m) for each p**t in the
    factorization of the modulus, where m is the p-adic valuation of
    base**(order mod p) - 1 (0 recorded for the degenerate base 1).
    """

    base: int
    modulus: int
    order: int
    per_prime: tuple[tuple[int, int, int, int], ...]


@lru_cache(maxsize=1 << 16)
def _order_mod_prime(b: int, p: int) -> int:
    # b already reduced mod p, p prime, b != 0.  Start from the group
    # exponent p - 1 and strip prime factors while the power stays 1.
    order = p - 1
    for q, _ in arith.factor(p - 1):
        while order % q == 0 and pow(b, order // q, p) == 1:
            order //= q
    return order


@lru_cache(maxsize=1 << 16)
def lift_valuation(b: int, p: int) -> int:
    """m = valuation_p(b**|b|_p - 1) for prime p, p not dividing b, b >= 2.

    Computed without materializing the power: b must not be reduced mod p
    first, since the valuation lives above the first power of p.
    """
    if b < 2:
        raise DomainError("lift valuation undefined for base < 2")
    if not arith.is_prime(p):
        raise DomainError(f"{p} is not prime")
    if b % p == 0:
        raise PreconditionError(f"base {b} is divisible by {p}")
    op = _order_mod_prime(b % p, p)
    e = 1
    while pow(b, op, p ** (e + 1)) == 1:
        e += 1
    return e


def _order_mod_two_power(b: int, t: int) -> int:
    # Orders mod 2**t are powers of two; scan by repeated squaring.
    mod = 1 << t
    r = b % mod
    order = 1
    for _ in range(t + 1):
        if r == 1:
            return order
        r = r * r % mod
        order *= 2
    raise PreconditionError("base must be odd for orders modulo powers of 2")


def order_prime_power(b: int, p: int, t: int) -> int:
    """Order of b modulo p**t for prime p not dividing b.

    Odd p uses the lifting rule from the order modulo p; p = 2 is routed
    to the direct doubling scan.
    """
    if t < 1:
        raise DomainError("exponent t must be >= 1")
    if not arith.is_prime(p):
        raise DomainError(f"{p} is not prime")
    if b % p == 0:
        raise PreconditionError(f"base {b} is divisible by {p}")
    if p == 2:
        return _order_mod_two_power(b, t)
    op = _order_mod_prime(b % p, p)
    if t == 1 or pow(b, op, p**t) == 1:
        return op
    # t > m; find the exact m < t by raising the power of p.
    m = 1
    while pow(b, op, p ** (m + 1)) == 1:
        m += 1
    return p ** (t - m) * op


def order_record(b: int, N: int) -> OrderRecord:
    """Order of b in the multiplicative group mod N, with per-prime parts."""
    if N < 1:
        raise DomainError("modulus must be >= 1")
    if math.gcd(b, N) != 1:
        raise PreconditionError(f"gcd({b}, {N}) != 1; order undefined")
    per_prime = []
    order = 1
    for p, t in arith.factor(N):
        opt = order_prime_power(b, p, t)
        m = lift_valuation(b, p) if b > 1 else 0
        per_prime.append((p, t, opt, m))
        order = order * opt // math.gcd(order, opt)
    return OrderRecord(base=b, modulus=N, order=order, per_prime=tuple(per_prime))


def order_mod(
    b: int,
    N: int,
    *,
    n_factors: arith.Factorization | None = None,
    debug_check: bool = False,
) -> int:
    """Least L >= 1 with b**L == 1 (mod N); requires gcd(b, N) == 1.

    n_factors may supply a precomputed factorization of N.  debug_check
    cross-validates the result against the successive-powers scan (slow;
    for diagnostics only).
    """
    if N < 1:
        raise DomainError("modulus must be >= 1")
    if N == 1:
        return 1
    if math.gcd(b, N) != 1:
        raise PreconditionError(f"gcd({b}, {N}) != 1; order undefined")
    order = 1
    for p, t in n_factors if n_factors is not None else arith.factor(N):
        opt = order_prime_power(b, p, t)
        order = order * opt // math.gcd(order, opt)
    if debug_check:
        naive = order_mod_naive(b, N)
        if naive != order:
            raise AssertionError(
                f"order_mod({b}, {N}) = {order} disagrees with naive scan {naive}"
            )
    return order


def order_mod_naive(b: int, N: int) -> int:
    """Order by successive powers; cross-validation fallback."""
    if N < 1:
        raise DomainError("modulus must be >= 1")
    if N == 1:
        return 1
    if math.gcd(b, N) != 1:
        raise PreconditionError(f"gcd({b}, {N}) != 1; order undefined")
    r = b % N
    order = 1
    while r != 1:
        r = r * b % N
        order += 1
    return order
