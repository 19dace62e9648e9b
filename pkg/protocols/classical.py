"""One-time pad and textbook RSA, plus the order-finding attack on small RSA moduli."""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

import numpy as np
from sympy import isprime, totient

from algorithms.number_theory import gcd
from algorithms.shor import factor
from core.errors import DomainError

ALPHABET = " abcdefghijklmnopqrstuvwxyz"
TEXT_BASE = len(ALPHABET)

Digits = Union[str, Sequence[int]]


def text_to_digits(text: str) -> List[int]:
    """Blank is 0, a..z are 1..26."""
    try:
        return [ALPHABET.index(ch) for ch in text.lower()]
    except ValueError:
        raise DomainError(f"text may only contain blanks and letters, got {text!r}")


def digits_to_text(digits: Sequence[int]) -> str:
    if any(not 0 <= d < TEXT_BASE for d in digits):
        raise DomainError("text digits must lie in 0..26")
    return "".join(ALPHABET[d] for d in digits)


def text_to_number_string(text: str) -> str:
    """Two decimal digits per symbol: 'hi' -> '0809'."""
    return "".join(f"{d:02d}" for d in text_to_digits(text))


def _as_ints(values: Digits, base: int) -> List[int]:
    out = [int(ch, base) for ch in values] if isinstance(values, str) else [int(v) for v in values]
    if any(not 0 <= v < base for v in out):
        raise DomainError(f"digits must lie in 0..{base - 1}")
    return out


def _like(template: Digits, values: List[int], base: int) -> Digits:
    if isinstance(template, str):
        return "".join(np.base_repr(v, base).lower() for v in values)
    return values


def vernam_encrypt(plain: Digits, key: Digits, base: int = 2) -> Digits:
    """c_j = p_j + k_j mod base."""
    p, k = _as_ints(plain, base), _as_ints(key, base)
    if len(k) < len(p):
        raise DomainError(f"key of length {len(k)} cannot cover a text of length {len(p)}")
    return _like(plain, [(a + b) % base for a, b in zip(p, k)], base)


def vernam_decrypt(cipher: Digits, key: Digits, base: int = 2) -> Digits:
    c, k = _as_ints(cipher, base), _as_ints(key, base)
    if len(k) < len(c):
        raise DomainError(f"key of length {len(k)} cannot cover a text of length {len(c)}")
    return _like(cipher, [(a - b) % base for a, b in zip(c, k)], base)


def vernam_key_reuse_leak(c1: Digits, c2: Digits, base: int = 2) -> Digits:
    """c - c' mod base: two ciphertexts under one key give p - p', with the key gone."""
    a, b = _as_ints(c1, base), _as_ints(c2, base)
    return _like(c1, [(x - y) % base for x, y in zip(a, b)], base)


@dataclass(frozen=True)
class RsaKeyPair:
    N: int
    c: int
    d: int
    phi: int = field(repr=False)

    def __post_init__(self):
        if (self.c * self.d) % self.phi != 1 % self.phi:
            raise DomainError(f"exponents {self.c}, {self.d} are not inverse modulo phi(N)")
        if gcd(self.c, self.phi) != 1:
            raise DomainError("public exponent must be coprime to phi(N)")

    @property
    def public(self) -> Tuple[int, int]:
        return self.N, self.c

    def to_dict(self):
        return {"N": self.N, "c": self.c}


def _inverse_mod(x: int, m: int) -> int:
    """Extended Euclid."""
    r0, r1, s0, s1 = m, x % m, 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise DomainError(f"{x} has no inverse modulo {m}")
    return s0 % m


def rsa_private_from_euler(c: int, phi: int) -> int:
    """d = c^(phi(phi) - 1) mod phi, from Euler's theorem."""
    if gcd(c, phi) != 1:
        raise DomainError(f"{c} is not invertible modulo {phi}")
    return pow(c, int(totient(phi)) - 1, phi)


def rsa_keygen(p1: int, p2: int, d: int) -> RsaKeyPair:
    """Fix the private exponent d first, then solve c d = 1 mod phi(N) for the public one."""
    if p1 == p2 or not (isprime(p1) and isprime(p2)):
        raise DomainError(f"RSA needs two distinct primes, got {p1} and {p2}")
    phi = (p1 - 1) * (p2 - 1)
    if not 0 < d < phi or gcd(d, phi) != 1:
        raise DomainError(f"private exponent {d} must be coprime to phi(N)={phi}")
    c = _inverse_mod(d, phi)
    if c == 1:
        logging.warning("public exponent is 1: encryption is the identity")
    return RsaKeyPair(p1 * p2, c, d, phi)


def _check_block(B: int, N: int):
    if not 0 <= B < N:
        raise DomainError(f"block {B} must lie in [0, {N})")


def rsa_encrypt(B: int, key: RsaKeyPair) -> int:
    _check_block(B, key.N)
    return pow(B, key.c, key.N)


def rsa_decrypt(C: int, key: RsaKeyPair) -> int:
    _check_block(C, key.N)
    return pow(C, key.d, key.N)


def split_blocks(number_string: str, N: int) -> List[int]:
    """Cut a decimal string into the longest equal-width blocks that stay below N."""
    width = len(str(N)) - 1
    if width < 1:
        raise DomainError(f"modulus {N} too small to carry decimal blocks")
    padded = number_string + "0" * (-len(number_string) % width)
    return [int(padded[i:i + width]) for i in range(0, len(padded), width)]


@dataclass(frozen=True)
class RsaBreak:
    N: int
    c: int
    factors: Tuple[int, int]
    phi: int
    d: int

    def to_dict(self):
        return {"N": self.N, "c": self.c, "factors": list(self.factors), "phi": self.phi, "d": self.d}


def rsa_break(N: int, c: int, backend=None, rng=None) -> RsaBreak:
    """Recover the private exponent from the public key by factoring N through order finding."""
    result = factor(N, rng=rng, backend=backend)
    if not result.succeeded:
        raise DomainError(f"could not factor {N}")
    p1, p2 = result.factors
    phi = (p1 - 1) * (p2 - 1)
    d = _inverse_mod(c, phi)
    logging.info(f"broke N={N}: factors {p1}x{p2}, d={d}")
    return RsaBreak(N, c, (p1, p2), phi, d)
