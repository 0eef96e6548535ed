"""Product criterion: when does the property transfer from primes to N.

Given distinct primes p_1..p_t that each have the property for block
count d, and arbitrary positive exponents h_i, the criterion decides
whether N = prod p_i**h_i keeps it.  Two routes are provided: the
lcm-quotient test on the d-smooth exponent vectors of the lifted
cofactors, and the direct gcd evaluation.  The verdict is independent of
the h_i (the lifted prime power p_i**(h_i - m_i) contributes nothing to
any prime of d), which the test suite asserts.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import arith
from .errors import PreconditionError
from .midy import midy_check_ppl2
from .order import lift_valuation, order_mod

__all__ = [
    "JenkinsDecomposition",
    "JenkinsInstance",
    "jenkins_check",
    "jenkins_check_gcd",
    "jenkins_decomposition",
    "jenkins_instance",
]


@dataclass(frozen=True)
class JenkinsInstance:
    """A product instance: base, block count and the (prime, exponent) list.

    orders, block_lengths and lift_valuations hold |b| mod p_i,
    k_i = |b| mod p_i / d, and m_i for each prime, in listed order.
    """

    base: int
    d: int
    prime_powers: tuple[tuple[int, int], ...]
    orders: tuple[int, ...]
    block_lengths: tuple[int, ...]
    lift_valuations: tuple[int, ...]

    @property
    def modulus(self) -> int:
        n = 1
        for p, h in self.prime_powers:
            n *= p**h
        return n


@dataclass(frozen=True)
class JenkinsDecomposition:
    """d-smooth decomposition of the lifted cofactors z_j = p_j**max(h_j-m_j,0) * k_j.

    d_primes lists (q_i, r_i) with d = prod q_i**r_i.  For each j,
    z_j = d**c_j * prod q_i**alpha_j[i] * y_j with y_j coprime to every q_i
    and the alpha vector containing no further full copy of d.
    """

    d_primes: tuple[tuple[int, int], ...]
    c: tuple[int, ...]
    alpha: tuple[tuple[int, ...], ...]
    cofactors: tuple[int, ...]


def jenkins_instance(b: int, d: int, prime_powers) -> JenkinsInstance:
    """Build and validate an instance; every prime must have the property for d."""
    if d <= 1:
        raise PreconditionError("block count d must be > 1")
    pairs = tuple((int(p), int(h)) for p, h in prime_powers)
    if not pairs:
        raise PreconditionError("at least one (prime, exponent) pair required")
    seen = set()
    for p, h in pairs:
        if not arith.is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        if h < 1:
            raise PreconditionError(f"exponent of {p} must be >= 1")
        if p in seen:
            raise PreconditionError(f"prime {p} repeated")
        seen.add(p)
    orders = []
    for p, _ in pairs:
        op = order_mod(b, p)
        if op % d != 0 or not midy_check_ppl2(b, p, d).holds:
            raise PreconditionError(
                f"prime {p} does not have the property for d = {d} in base {b}"
            )
        orders.append(op)
    block_lengths = tuple(op // d for op in orders)
    lifts = tuple(lift_valuation(b, p) for p, _ in pairs)
    return JenkinsInstance(
        base=b,
        d=d,
        prime_powers=pairs,
        orders=tuple(orders),
        block_lengths=block_lengths,
        lift_valuations=lifts,
    )


def _lifted_cofactors(inst: JenkinsInstance) -> list[int]:
    # Exponents h <= m contribute no power of p, mirroring the order
    # lifting rule, so the exponent is clamped at zero.
    return [
        p ** max(h - m, 0) * k
        for (p, h), m, k in zip(
            inst.prime_powers, inst.lift_valuations, inst.block_lengths
        )
    ]


def jenkins_decomposition(inst: JenkinsInstance) -> JenkinsDecomposition:
    """Split each lifted cofactor into d-power, residual d-primes and cofactor."""
    d_primes = tuple(arith.factor(inst.d).factors)
    cs = []
    alphas = []
    ys = []
    for z in _lifted_cofactors(inst):
        exps = [arith.valuation(q, z) for q, _ in d_primes]
        c = min(e // r for e, (_, r) in zip(exps, d_primes))
        alpha = tuple(e - c * r for e, (_, r) in zip(exps, d_primes))
        y = z
        for (q, _), e in zip(d_primes, exps):
            y //= q**e
        cs.append(c)
        alphas.append(alpha)
        ys.append(y)
    return JenkinsDecomposition(
        d_primes=d_primes, c=tuple(cs), alpha=tuple(alphas), cofactors=tuple(ys)
    )


def jenkins_check(inst: JenkinsInstance) -> bool:
    """lcm-quotient route, evaluated on d-smooth exponent vectors.

    The property holds for the product iff for every j the quotient of the
    lcm of the d-smooth parts by the j-th d-smooth part is not divisible
    by d, i.e. falls short of d in at least one prime.
    """
    d_primes = tuple(arith.factor(inst.d).factors)
    vectors = [
        [arith.valuation(q, z) for q, _ in d_primes] for z in _lifted_cofactors(inst)
    ]
    peak = [max(col) for col in zip(*vectors)]
    return all(
        any(mx - e < r for mx, e, (_, r) in zip(peak, vec, d_primes))
        for vec in vectors
    )


def jenkins_check_gcd(inst: JenkinsInstance) -> bool:
    """Direct route: gcd(b**k - 1, N) == 1 with k = order of b mod N over d."""
    N = inst.modulus
    L = order_mod(inst.base, N)
    k = L // inst.d
    return arith.gcd_pow_minus_one(inst.base, k, N) == 1
