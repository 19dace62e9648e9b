"""Exact integer helpers for order finding and factoring."""
from fractions import Fraction
from typing import List, Optional, Tuple

from sympy import integer_nthroot, n_order
from sympy.ntheory.continued_fraction import continued_fraction_convergents as _convergents
from sympy.ntheory.continued_fraction import continued_fraction_periodic

from core.errors import DomainError


def mod_exp(a: int, x: int, N: int) -> int:
    """a^x mod N by binary square-and-multiply."""
    if N < 1:
        raise DomainError(f"modulus must be >= 1, got {N}")
    result, base = 1 % N, a % N
    while x > 0:
        if x & 1:
            result = (result * base) % N
        base = (base * base) % N
        x >>= 1
    return result


def gcd(a: int, b: int) -> int:
    """Euclid's algorithm."""
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def multiplicative_order(a: int, N: int) -> int:
    if gcd(a, N) != 1:
        raise DomainError(f"{a} is not invertible modulo {N}")
    return int(n_order(a, N))


def continued_fraction(q: int, Q: int) -> List[int]:
    if not 0 <= q < Q:
        raise DomainError(f"need 0 <= q < Q, got q={q}, Q={Q}")
    return [int(t) for t in continued_fraction_periodic(q, Q)]


def continued_fraction_convergents(q: int, Q: int) -> List[Fraction]:
    terms = continued_fraction(q, Q)
    return [Fraction(int(c.p), int(c.q)) for c in _convergents(terms)]


def best_convergent(q: int, Q: int, N: int) -> Optional[Fraction]:
    """The convergent with denominator < N lying within 1/(2Q) of q/Q, when there is one."""
    target = Fraction(q, Q)
    found = None
    for c in continued_fraction_convergents(q, Q):
        if c.denominator < N and abs(c - target) <= Fraction(1, 2 * Q):
            found = c
    return found


def prime_power_factor(N: int) -> Optional[Tuple[int, int]]:
    """(p, k) with p^k = N for some k >= 2, probing the integers around N^(1/k)."""
    if N < 4:
        return None
    for k in range(2, N.bit_length() + 1):
        root, _ = integer_nthroot(N, k)
        for candidate in (root, root + 1):
            if candidate > 1 and candidate ** k == N:
                return candidate, k
    return None


def is_prime_power(N: int) -> bool:
    return prime_power_factor(N) is not None


def shor_register_size(N: int) -> int:
    """K with N^2 < 2^K < 2 N^2."""
    if N < 2:
        raise DomainError(f"N must be >= 2, got {N}")
    K = (N * N).bit_length()
    if 2 ** K == 2 * N * N:
        raise DomainError(f"no power of two strictly between N^2 and 2N^2 for N={N}")
    return K


