"""Exact integer kernel: gcd, modular power, valuations, factoring, primality.

Everything operates on plain Python ints (arbitrary precision, never
negative here).  All functions are pure; nothing in this module keeps
state between calls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "Factorization",
    "factor",
    "gcd",
    "gcd_pow_minus_one",
    "is_prime",
    "is_prime_proven",
    "MILLER_RABIN_PROVEN_BOUND",
    "pow_mod",
    "valuation",
]


def gcd(a: int, b: int) -> int:
    """Greatest common divisor; gcd(0, n) == n."""
    if a < 0 or b < 0:
        raise DomainError("gcd arguments must be non-negative")
    return math.gcd(a, b)


def pow_mod(base: int, exp: int, modulus: int) -> int:
    """base**exp mod modulus, computed without materializing base**exp.

    modulus must be >= 1; exp == 0 yields 1 % modulus.
    """
    if modulus == 0:
        raise DomainError("pow_mod modulus must be >= 1")
    if modulus < 0 or base < 0 or exp < 0:
        raise DomainError("pow_mod arguments must be non-negative")
    return pow(base, exp, modulus)


def gcd_pow_minus_one(base: int, exp: int, modulus: int) -> int:
    """gcd(base**exp - 1, modulus) without materializing base**exp.

    The first argument of the gcd is reduced to
    (base**exp - 1) mod modulus == (pow_mod(base, exp, modulus) + modulus - 1) % modulus,
    which has the same gcd with modulus.
    """
    if modulus < 1:
        raise DomainError("modulus must be >= 1")
    reduced = (pow_mod(base, exp, modulus) + modulus - 1) % modulus
    return math.gcd(reduced, modulus)


def valuation(p: int, n: int) -> int:
    """Largest e with p**e dividing n.  Requires n >= 1 and p >= 2."""
    if n == 0:
        raise DomainError("valuation of 0 is undefined")
    if n < 0:
        raise DomainError("valuation requires n >= 1")
    if p < 2:
        raise DomainError("valuation base must be >= 2")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


# ---------------------------------------------------------------------------
# Primality
# ---------------------------------------------------------------------------

# Below this bound the 12-base Miller-Rabin test is a proven deterministic
# primality test; above it the same bases give an extremely strong
# probable-prime test but no proof.  Query is_prime_proven() for the caveat.
MILLER_RABIN_PROVEN_BOUND = 3_317_044_064_679_887_385_961_981

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_EXTRA_BASES = (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

_SMALL_PRIME_LIMIT = 1000


def _sieve(limit: int) -> list[int]:
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit - 1) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i in range(limit) if flags[i]]


_SMALL_PRIMES = _sieve(_SMALL_PRIME_LIMIT)
_SMALL_PRIME_SET = frozenset(_SMALL_PRIMES)


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Exact primality verdict for n < MILLER_RABIN_PROVEN_BOUND.

    Above that bound the verdict comes from a fixed-base strong
    probable-prime test: false positives are not known to exist but are
    not excluded by proof.  is_prime_proven(n) reports which regime n
    falls in.
    """
    if n < 2:
        return False
    if n < _SMALL_PRIME_LIMIT:
        return n in _SMALL_PRIME_SET
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return False
    if n < MILLER_RABIN_PROVEN_BOUND:
        return _miller_rabin(n, _MR_BASES)
    return _miller_rabin(n, _MR_BASES + _EXTRA_BASES)


def is_prime_proven(n: int) -> bool:
    """True when is_prime(n) is backed by a deterministic witness set."""
    return n < MILLER_RABIN_PROVEN_BOUND


# ---------------------------------------------------------------------------
# Factoring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """Canonical factorization: ((p1, e1), (p2, e2), ...) with p1 < p2 < ...

    The empty tuple represents 1.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = 1
        for p, e in self.factors:
            if p <= prev:
                raise DomainError("factorization primes must be strictly increasing")
            if e < 1:
                raise DomainError("factorization exponents must be >= 1")
            prev = p

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def value(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p**e
        return n

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def divisors(self) -> list[int]:
        """All positive divisors, ascending."""
        divs = [1]
        for p, e in self.factors:
            pk = 1
            block = []
            for _ in range(e):
                pk *= p
                block.extend(d * pk for d in divs)
            divs.extend(block)
        divs.sort()
        return divs

    def verify(self, n: int) -> bool:
        """Check product identity and primality of every listed base."""
        return self.value == n and all(is_prime(p) for p, _ in self.factors)


def _rho_brent(n: int) -> int:
    """Find a nontrivial factor of odd composite n.  Deterministic: the
    polynomial increment is stepped through a fixed sequence."""
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        y, m = 2, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise DomainError(f"rho factorization failed for {n}")  # pragma: no cover


def _factor_into(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _rho_brent(n)
    _factor_into(d, out)
    _factor_into(n // d, out)


def factor(n: int) -> Factorization:
    """Canonical factorization of n >= 1, deterministic for a given n.

    Trial division by primes below 1000, then Brent's cycle method with a
    deterministic parameter schedule on whatever composite remains.
    """
    if n < 1:
        raise DomainError("factor requires n >= 1")
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            n //= p
            found[p] = found.get(p, 0) + 1
    if n > 1:
        if n < _SMALL_PRIME_LIMIT * _SMALL_PRIME_LIMIT or is_prime(n):
            found[n] = found.get(n, 0) + 1
        else:
            _factor_into(n, found)
    return Factorization(tuple(sorted(found.items())))
