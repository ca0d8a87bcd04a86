"""Eisenstein-shift certificates for ``t^n - p`` and Hensel-type
non-monogenicity probes for cyclic and Kummer fields.

A certificate is one-sided: when ``monogenic_certificate`` returns None the
criterion is inconclusive, which says nothing about non-monogenicity.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import asdict, dataclass

from .arith import check_modulus, nth_power_residue, pow_mod, require_prime, sieve_primes
from .errors import CapExceeded, ImplementationFault, InvalidInput

MAX_POWER2_EXPONENT = 20


@dataclass(frozen=True)
class EisensteinChecks:
    middle_divisible: bool
    constant_divisible: bool
    constant_not_divisible_sq: bool

    @property
    def eisenstein(self) -> bool:
        return self.middle_divisible and self.constant_divisible and self.constant_not_divisible_sq


@dataclass(frozen=True)
class EisensteinCertificate:
    n: int
    p: int
    shift: int
    ell: int
    checks: EisensteinChecks

    def verify(self) -> bool:
        """Re-run the shifted check at ``ell`` and the unshifted one at ``p``."""
        shifted = eisenstein_shift_check(self.n, self.p, self.shift, self.ell)
        base = eisenstein_shift_check(self.n, self.p, 0, self.p)
        return shifted == self.checks and shifted.eisenstein and base.eisenstein

    def to_record(self) -> dict:
        return {"n": self.n, "p": self.p, "shift": self.shift, "ell": self.ell, "checks": asdict(self.checks)}


@dataclass(frozen=True)
class WieferichHit:
    base: int
    q: int
    residue: int


class Family(enum.Enum):
    KL = "KL"
    KNL = "KNL"
    KUMMER = "Kummer"


@dataclass(frozen=True)
class CyclicFieldProbe:
    family: Family
    params: tuple[int, ...]
    degree: int
    split_witness: int | None
    non_monogenic: bool
    reason: str


def _binom_mod_prime(n: int, k: int, ell: int) -> int:
    """C(n, k) mod ell by Lucas' theorem."""
    if ell == 2:
        return 1 if k & ~n == 0 else 0
    out = 1
    while n or k:
        ni, ki = n % ell, k % ell
        if ki > ni:
            return 0
        out = out * math.comb(ni, ki) % ell
        n //= ell
        k //= ell
    return out


def wieferich_test(p: int, q: int) -> int:
    """``p^(q-1) mod q^2``."""
    if p == q:
        raise InvalidInput(f"p and q must differ, got {p}")
    return pow_mod(p, q - 1, q * q)


def eisenstein_shift_check(n: int, p: int, i: int, ell: int) -> EisensteinChecks:
    """Eisenstein conditions at ``ell`` for ``(t + i)^n - p``.

    Only residues are computed: binomials mod ``ell`` and the constant term
    ``i^n - p`` mod ``ell^2``.
    """
    if n < 2:
        raise InvalidInput(f"degree must be >= 2, got {n}")
    check_modulus(ell * ell)
    if i % ell == 0:
        middle = True
    else:
        middle = all(
            _binom_mod_prime(n, j, ell) * pow(i, n - j, ell) % ell == 0 for j in range(1, n)
        )
    sq = ell * ell
    const = (pow(i, n, sq) - p) % sq
    return EisensteinChecks(middle, const % ell == 0, const != 0)


def monogenic_certificate(p: int, q: int) -> EisensteinCertificate | None:
    """Certificate that ``t^q - p`` is monogenic, or None if inconclusive.

    When ``p^(q-1) != 1 (mod q^2)``, ``(t + p)^q - p`` is Eisenstein at ``q``
    and ``t^q - p`` itself is Eisenstein at ``p``, so neither prime divides
    the index.
    """
    require_prime(p)
    require_prime(q, "q")
    if q < 3:
        raise InvalidInput(f"q must be >= 3, got {q}")
    if wieferich_test(p, q) == 1:
        return None
    cert = EisensteinCertificate(q, p, p, q, eisenstein_shift_check(q, p, p, q))
    if not cert.verify():
        raise ImplementationFault(f"certificate for (p={p}, q={q}) failed to verify")
    return cert


def power2_certificate(k: int, p: int) -> EisensteinCertificate:
    """Certificate for ``t^(2^k) - p`` with ``p = 3 (mod 4)``, shift 1 at 2."""
    if k < 2:
        raise InvalidInput(f"k must be >= 2, got {k}")
    if k > MAX_POWER2_EXPONENT:
        raise CapExceeded(f"degree 2^{k} exceeds cap 2^{MAX_POWER2_EXPONENT}")
    require_prime(p)
    if p % 4 != 3:
        raise InvalidInput(f"p={p} is not 3 mod 4")
    n = 1 << k
    cert = EisensteinCertificate(n, p, 1, 2, eisenstein_shift_check(n, p, 1, 2))
    if not cert.verify():
        raise ImplementationFault(f"power-of-two certificate for (k={k}, p={p}) failed")
    return cert


def wieferich_scan(base: int, qmax: int) -> list[WieferichHit]:
    require_prime(base, "base")
    check_modulus(qmax * qmax)
    if qmax < 2:
        return []
    hits = []
    for q in sieve_primes(2, qmax + 1):
        if q == base:
            continue
        r = pow(base, q - 1, q * q)
        if r == 1:
            hits.append(WieferichHit(base, q, r))
    return hits


def wieferich_csv(hits: list[WieferichHit]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["base", "q", "residue"])
    for h in hits:
        w.writerow([h.base, h.q, h.residue])
    return buf.getvalue()


def kl_split_test(p: int, l: int) -> bool:
    """Whether ``p`` splits completely in the degree-``l`` subfield of Q(zeta_{l^2})."""
    return wieferich_test(p, l) == 1


def kl_nonmonogenic_witness(l: int) -> int | None:
    """Least prime ``p < l`` splitting completely in ``K_l``; its existence
    makes ``K_l`` non-monogenic."""
    require_prime(l, "l")
    check_modulus(l * l)
    if l < 3:
        return None
    for p in sieve_primes(2, l):
        if kl_split_test(p, l):
            return p
    return None


def _check_knl(n: int, l: int) -> None:
    if n < 3:
        raise InvalidInput(f"n must be >= 3, got {n}")
    require_prime(l, "l")
    if l % n != 1:
        raise InvalidInput(f"l={l} is not 1 mod {n}")


def knl_split_test(p: int, n: int, l: int) -> bool:
    """``p^((l-1)/n) = 1 (mod l)``: complete splitting in the C_n subfield of Q(zeta_l)."""
    _check_knl(n, l)
    require_prime(p)
    if p == l:
        raise InvalidInput("p must differ from l")
    return nth_power_residue(p % l, n, l)


def knl_nonmonogenic(n: int, l: int) -> bool:
    """True when 2 splits completely in ``K_n(l)``. The residue field F_2
    has only two monic linear polynomials, fewer than the degree ``n >= 3``.
    False is inconclusive."""
    return knl_split_test(2, n, l)


def kummer_split_test(p: int, n: int) -> bool:
    if n < 2:
        raise InvalidInput(f"n must be >= 2, got {n}")
    if (2 * n) % p == 0:
        raise InvalidInput(f"p={p} divides 2n={2 * n}")
    return p % n == 1 and nth_power_residue(2, n, p)


def split_test_K9(p: int) -> bool:
    """Complete splitting of ``p`` in Q(zeta_9, 9^(1/3))."""
    if p % 3 == 0:
        raise InvalidInput(f"p={p} is divisible by 3")
    return p % 9 == 1 and pow_mod(9, (p - 1) // 3, p) == 1


def phi(n: int) -> int:
    if n < 1:
        raise InvalidInput(f"n must be >= 1, got {n}")
    out, m, d = n, n, 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            out -= out // d
        d += 1
    if m > 1:
        out -= out // m
    return out


def probe_kl(l: int) -> CyclicFieldProbe:
    w = kl_nonmonogenic_witness(l)
    if w is None:
        return CyclicFieldProbe(Family.KL, (l,), l, None, False, "no prime below l splits completely")
    return CyclicFieldProbe(Family.KL, (l,), l, w, True, f"{w}^{l - 1} = 1 mod {l}^2 and {w} < {l}")


def probe_knl(n: int, l: int) -> CyclicFieldProbe:
    if knl_nonmonogenic(n, l):
        return CyclicFieldProbe(Family.KNL, (n, l), n, 2, True, f"2^(({l}-1)/{n}) = 1 mod {l} and 2 < {n}")
    return CyclicFieldProbe(Family.KNL, (n, l), n, None, False, f"2^(({l}-1)/{n}) != 1 mod {l}")


def probe_kummer(n: int) -> CyclicFieldProbe:
    """Search Q(zeta_n, 2^(1/n)) for a completely split prime below its degree.

    Restricted to odd ``n``, where the degree is exactly ``n * phi(n)``.
    """
    if n < 3 or n % 2 == 0:
        raise InvalidInput(f"n must be odd and >= 3, got {n}")
    degree = n * phi(n)
    for s in sieve_primes(2, degree):
        if (2 * n) % s and kummer_split_test(s, n):
            return CyclicFieldProbe(Family.KUMMER, (n,), degree, s, True, f"{s} splits completely and {s} < {degree}")
    return CyclicFieldProbe(Family.KUMMER, (n,), degree, None, False, f"no prime below {degree} splits completely")

