"""Exact integer and modular arithmetic primitives.

Everything here is a pure function of its arguments. Moduli are capped at
``MAX_MODULUS`` so that every intermediate product fits in twice the native
word width; the cap is enforced, not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import compress

from .errors import CapExceeded, InvalidInput, NotCubeFree, RangeTooLarge

MAX_MODULUS = 1 << 64
MAX_SIEVE_SPAN = 10**8
MAX_SIEVE_HI = 1 << 63
# Above this the base primes for a segment get too expensive to sieve and we
# fall back to Miller-Rabin per odd candidate.
MAX_BASE_SIEVE = 10**7

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = _MR_WITNESSES


@dataclass(frozen=True)
class PrimeRange:
    lo: int
    hi: int
    primes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)


@dataclass(frozen=True)
class CubeFreeDecomposition:
    m: int
    h: int
    k: int


def check_modulus(modulus: int) -> None:
    if modulus < 1:
        raise InvalidInput(f"modulus must be >= 1, got {modulus}")
    if modulus > MAX_MODULUS:
        raise CapExceeded(f"modulus {modulus} exceeds cap 2^64")


@lru_cache(maxsize=32)
def _base_primes(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for q in range(2, math.isqrt(limit) + 1):
        if flags[q]:
            flags[q * q :: q] = bytes(len(range(q * q, limit + 1, q)))
    return tuple(compress(range(limit + 1), flags))


def sieve_primes(lo: int, hi: int) -> PrimeRange:
    """All primes in ``[lo, hi)`` via a segmented sieve of Eratosthenes."""
    if not 2 <= lo < hi <= MAX_SIEVE_HI:
        raise InvalidInput(f"need 2 <= lo < hi <= 2^63, got lo={lo}, hi={hi}")
    span = hi - lo
    if span > MAX_SIEVE_SPAN:
        raise RangeTooLarge(f"sieve span {span} exceeds budget {MAX_SIEVE_SPAN}; partition the scan")
    root = math.isqrt(hi - 1)
    if root > MAX_BASE_SIEVE:
        start = lo | 1 if lo > 2 else 3
        found = [2] if lo <= 2 else []
        found.extend(n for n in range(start, hi, 2) if is_prime(n))
        return PrimeRange(lo, hi, tuple(found))

    seg = bytearray(b"\x01") * span
    for q in _base_primes(root):
        start = max(q * q, -(-lo // q) * q)
        if start >= hi:
            continue
        seg[start - lo :: q] = bytes(len(range(start - lo, span, q)))
    return PrimeRange(lo, hi, tuple(compress(range(lo, hi), seg)))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3 * 10^24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(n: int, name: str = "p") -> None:
    if not is_prime(n):
        raise InvalidInput(f"{name}={n} is not prime")


def pow_mod(base: int, exp: int, modulus: int) -> int:
    if exp < 0:
        raise InvalidInput(f"exponent must be >= 0, got {exp}")
    check_modulus(modulus)
    return pow(base, exp, modulus)


def exact_cube_root(n: int) -> int | None:
    """Signed integer cube root of ``n`` if ``n`` is a perfect cube, else None.

    Pure integer bisection; floats misjudge near-cubes around 2^60.
    """
    a = -n if n < 0 else n
    lo, hi = 0, 1 << (a.bit_length() // 3 + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid * mid * mid < a:
            lo = mid + 1
        else:
            hi = mid
    if lo * lo * lo != a:
        return None
    return -lo if n < 0 else lo


def cube_free_decompose(m: int) -> CubeFreeDecomposition:
    """Write cube-free ``m`` as ``h * k**2`` with ``h * k`` square-free.

    Trial division runs only up to the cube root of ``m``; whatever cofactor
    is left has at most two prime factors, each above the cube root, so it
    is either square-free or the square of a prime.
    """
    if m < 2:
        raise InvalidInput(f"m must be >= 2, got {m}")
    h = k = 1
    rest = m
    d = 2
    while d * d * d <= rest:
        e = 0
        while rest % d == 0:
            rest //= d
            e += 1
        if e >= 3:
            raise NotCubeFree(f"{m} is divisible by {d}^3")
        if e == 1:
            h *= d
        elif e == 2:
            k *= d
        d += 1 if d == 2 else 2
    if rest > 1:
        r = math.isqrt(rest)
        if r * r == rest:
            k *= r
        else:
            h *= rest
    return CubeFreeDecomposition(m, h, k)


def nth_power_residue(a: int, n: int, p: int) -> bool:
    """True iff ``a`` is an n-th power in the field with ``p`` elements."""
    if n < 2:
        raise InvalidInput(f"n must be >= 2, got {n}")
    if a % p == 0:
        raise InvalidInput(f"{a} is not a unit mod {p}")
    g = math.gcd(n, p - 1)
    return pow_mod(a, (p - 1) // g, p) == 1


def count_roots_cubic(c: int, p: int) -> int:
    """Number of t mod p with t^3 = c, for a prime p >= 5 not dividing c."""
    if p < 5:
        raise InvalidInput(f"p must be a prime >= 5, got {p}")
    if p % 3 == 2:
        return 1
    return 3 if nth_power_residue(c, 3, p) else 0
