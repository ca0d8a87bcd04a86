"""Monogenicity of pure cubic fields Q(m^(1/3)).

The prime case reduces to the Thue equation ``p*x^3 + y^3 = 9`` for
``p = +-1 (mod 9)``. That equation is only ever settled here by a bounded
search (a hit proves monogenicity) or by the local obstruction "9 is not a
cube mod p" (which proves the opposite). Anything else is reported as
unknown at the search bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import (
    cube_free_decompose,
    exact_cube_root,
    is_prime,
    nth_power_residue,
    require_prime,
)
from .errors import ImplementationFault, InvalidInput

DEFAULT_THUE_BOUND = 10**4

# Cubes are sparse modulo these, so 9 - p*x^3 is rarely a cube residue for
# all of them at once; only survivors get the exact cube-root test.
_SIEVE_MODULI = (7, 9, 13, 19, 37)
_CUBE_TABLES = {}
for _mod in _SIEVE_MODULI:
    _t = np.zeros(_mod, dtype=bool)
    _t[[(r * r * r) % _mod for r in range(_mod)]] = True
    _CUBE_TABLES[_mod] = _t
_INT64_SAFE = 1 << 62


class FieldCase(enum.Enum):
    WILD = "WildRamified"
    TAME = "TameCase"


@dataclass(frozen=True)
class PureCubicField:
    m: int
    h: int
    k: int
    case: FieldCase
    sign: int  # +-1 when tame (m = sign mod 9), 0 when wild
    disc: int
    basis_denominator: int

    def integral_basis(self) -> tuple[tuple[tuple[int, int, int], int], ...]:
        """Basis as ``((c0, c1, c2), d)`` meaning ``(c0 + c1*t + c2*t^2) / d``."""
        last = (0, 0, 1) if self.case is FieldCase.WILD else (self.k**2, self.sign * self.k**2, 1)
        return (((1, 0, 0), 1), ((0, 1, 0), 1), (last, self.basis_denominator))

    def describe_basis(self) -> list[str]:
        out = []
        for (c0, c1, c2), d in self.integral_basis():
            terms = [t for t in (_term(c0, ""), _term(c1, "t"), _term(c2, "t^2")) if t]
            num = " + ".join(terms).replace("+ -", "- ")
            if d != 1:
                num = f"({num})/{d}" if len(terms) > 1 else f"{num}/{d}"
            out.append(num)
        return out


def _term(coef: int, var: str) -> str:
    if coef == 0:
        return ""
    if not var:
        return str(coef)
    return var if coef == 1 else ("-" + var if coef == -1 else f"{coef}{var}")


class ThueStatus(enum.Enum):
    SOLVED = "Solved"
    LOCALLY_OBSTRUCTED = "LocallyObstructed"
    UNKNOWN_AT_BOUND = "UnknownAtBound"


@dataclass(frozen=True)
class ThueOutcome:
    status: ThueStatus
    x: int | None = None
    y: int | None = None
    obstruction: str | None = None
    bound: int | None = None


class Verdict(enum.Enum):
    MONOGENIC = "Monogenic"
    NON_MONOGENIC = "NonMonogenic"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class CubicVerdict:
    m: int
    verdict: Verdict
    witness: tuple[int, int] | None = None
    obstruction: str | None = None
    bound: int | None = None

    def to_record(self, key: str = "p") -> dict:
        rec = {key: self.m, "residue_mod_9": self.m % 9, "verdict": self.verdict.value}
        if self.witness is not None:
            rec["witness"] = list(self.witness)
        if self.obstruction is not None:
            rec["obstruction"] = self.obstruction
        rec["bound"] = self.bound
        return rec


def classify_pure_cubic_field(m: int) -> PureCubicField:
    d = cube_free_decompose(m)
    r = m % 9
    if r in (1, 8):
        sign = 1 if r == 1 else -1
        return PureCubicField(m, d.h, d.k, FieldCase.TAME, sign, -3 * (d.h * d.k) ** 2, 3 * d.k)
    return PureCubicField(m, d.h, d.k, FieldCase.WILD, 0, -27 * (d.h * d.k) ** 2, d.k)


def _check_sign(p: int, sign: int) -> None:
    if sign not in (1, -1):
        raise InvalidInput(f"sign must be +1 or -1, got {sign}")
    if (p - sign) % 9:
        raise InvalidInput(f"sign mismatch: {p} is not {sign:+d} mod 9")


def _signed_index(p: int, sign: int, b: int, c: int) -> int:
    return 3 * b**3 + sign * 3 * b * b * c + b * c * c + (sign - p) // 9 * c**3


def index_form_value(p: int, sign: int, b: int, c: int) -> int:
    """Index of ``a + b*t + c*(1 + sign*t + t^2)/3`` in Q(p^(1/3))."""
    require_prime(p)
    _check_sign(p, sign)
    return abs(_signed_index(p, sign, b, c))


def index_identity_check(p: int, sign: int, b: int, c: int) -> bool:
    _check_sign(p, sign)
    return 9 * _signed_index(p, sign, b, c) == (3 * b + sign * c) ** 3 - p * c**3


def local_obstruction_9cube(p: int) -> bool:
    """True when ``p = 1 (mod 9)`` and 9 is not a cube mod ``p``."""
    return p % 9 == 1 and not nth_power_residue(9, 3, p)


def _x_order(bound: int) -> list[int]:
    out = []
    for v in range(1, bound + 1):
        out.extend((v, -v))
    return out


def _first_cube_hit(p: int, bound: int) -> tuple[int, int] | None:
    if p * bound**3 + 9 < _INT64_SAFE:
        xs = np.array(_x_order(bound), dtype=np.int64)
        vals = 9 - p * xs * xs * xs
        mask = np.ones(len(xs), dtype=bool)
        for mod, table in _CUBE_TABLES.items():
            mask &= table[vals % mod]
        candidates = xs[mask].tolist()
    else:
        candidates = _x_order(bound)
    for x in candidates:
        y = exact_cube_root(9 - p * x**3)
        if y is not None:
            return x, y
    return None


def thue_search(p: int, bound: int = DEFAULT_THUE_BOUND) -> ThueOutcome:
    """Look for ``p*x^3 + y^3 = 9`` with ``0 < |x| <= bound``.

    The first hit in the order 1, -1, 2, -2, ... is returned. When the local
    obstruction holds the search is skipped: no solution can exist, so the
    outcome is the same either way.
    """
    if bound < 1:
        raise InvalidInput(f"bound must be >= 1, got {bound}")
    require_prime(p)
    if p % 9 not in (1, 8):
        raise InvalidInput(f"p={p} is not +-1 mod 9")
    if local_obstruction_9cube(p):
        return ThueOutcome(ThueStatus.LOCALLY_OBSTRUCTED, obstruction=f"9 is not a cube mod {p}", bound=bound)
    hit = _first_cube_hit(p, bound)
    if hit is not None:
        return ThueOutcome(ThueStatus.SOLVED, x=hit[0], y=hit[1], bound=bound)
    return ThueOutcome(ThueStatus.UNKNOWN_AT_BOUND, bound=bound)


def classify_cbrt_p(p: int, bound: int = DEFAULT_THUE_BOUND) -> CubicVerdict:
    if p == 3:
        raise InvalidInput("p = 3 is outside the family")
    require_prime(p)
    if bound < 1:
        raise InvalidInput(f"bound must be >= 1, got {bound}")
    if p % 9 not in (1, 8):
        # Wild case: {1, t, t^2} is already an integral basis.
        return CubicVerdict(p, Verdict.MONOGENIC, bound=bound)
    out = thue_search(p, bound)
    if out.status is ThueStatus.SOLVED:
        return CubicVerdict(p, Verdict.MONOGENIC, witness=(out.x, out.y), bound=bound)
    if out.status is ThueStatus.LOCALLY_OBSTRUCTED:
        return CubicVerdict(p, Verdict.NON_MONOGENIC, obstruction=out.obstruction, bound=bound)
    return CubicVerdict(p, Verdict.UNKNOWN, bound=bound)


def _solvable_mod(h: int, k: int, target: int, modulus: int) -> bool:
    cubes = {r**3 % modulus for r in range(modulus)}
    return any((h * u + k * v - target) % modulus == 0 for u in cubes for v in cubes)


def classify_general_pure_cubic(m: int, bound: int = DEFAULT_THUE_BOUND) -> CubicVerdict:
    """Search ``h*x^3 + k*y^3 = T`` for cube-free ``m = h*k^2``.

    ``T`` is 1 unless ``h^2 = k^2 (mod 9)``, in which case it is 9. Witnesses
    are ``(x, y)`` with ``y`` tried in the order 0, 1, -1, 2, -2, ...
    """
    if bound < 1:
        raise InvalidInput(f"bound must be >= 1, got {bound}")
    d = cube_free_decompose(m)
    h, k = d.h, d.k
    target = 9 if (h * h - k * k) % 9 == 0 else 1
    for y in [0] + _x_order(bound):
        num = target - k * y**3
        if num % h:
            continue
        x = exact_cube_root(num // h)
        if x is not None:
            return CubicVerdict(m, Verdict.MONOGENIC, witness=(x, y), bound=bound)
    if not _solvable_mod(h, k, target, 9):
        return CubicVerdict(m, Verdict.NON_MONOGENIC, obstruction=f"{h}x^3 + {k}y^3 = {target} has no solution mod 9", bound=bound)
    if k == 1 and is_prime(m) and target == 9 and local_obstruction_9cube(m):
        return CubicVerdict(m, Verdict.NON_MONOGENIC, obstruction=f"9 is not a cube mod {m}", bound=bound)
    return CubicVerdict(m, Verdict.UNKNOWN, bound=bound)


# exact linear algebra for the discriminant route


def _charpoly(mat: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(t*I - mat)`` (Faddeev-LeVerrier)."""
    n = len(mat)
    coeffs = [Fraction(1)]
    m_k = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A*M_{k-1} + c_{k-1}*I
        prod = [[sum(mat[i][t] * m_k[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[-1]
        m_k = prod
        am = [[sum(mat[i][t] * m_k[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        coeffs.append(-sum(am[i][i] for i in range(n)) / k)
    return coeffs


def _cubic_discriminant(coeffs: list[Fraction]) -> Fraction:
    one, b, c, d = coeffs
    if one != 1:
        raise ImplementationFault("characteristic polynomial is not monic")
    return b * b * c * c - 4 * c**3 - 4 * b**3 * d - 27 * d * d + 18 * b * c * d


def index_via_discriminant(p: int, a: int, b: int, c: int) -> int:
    """Index of ``a + b*t + c*(1 + sign*t + t^2)/3`` computed from discriminants.

    Independent of :func:`index_form_value`: builds the multiplication
    matrix of the element on ``{1, t, t^2}``, takes its exact characteristic
    polynomial and divides that polynomial's discriminant by ``-3*p^2``.
    """
    require_prime(p)
    if p % 9 not in (1, 8):
        raise InvalidInput(f"p={p} is not +-1 mod 9")
    if b == 0 and c == 0:
        raise InvalidInput("(b, c) = (0, 0) does not generate the field")
    sign = 1 if p % 9 == 1 else -1
    third = Fraction(c, 3)
    u0, u1, u2 = a + third, b + sign * third, third
    # columns: alpha*1, alpha*t, alpha*t^2 with t^3 = p
    cols = [(u0, u1, u2), (p * u2, u0, u1), (p * u1, p * u2, u0)]
    mat = [[cols[j][i] for j in range(3)] for i in range(3)]
    disc_alpha = _cubic_discriminant(_charpoly(mat))
    ratio = disc_alpha / (-3 * p * p)
    if ratio.denominator != 1:
        raise ImplementationFault(f"Disc(alpha)/Disc(K) = {ratio} is not integral")
    n = ratio.numerator
    r = math.isqrt(n) if n >= 0 else -1
    if r < 0 or r * r != n:
        raise ImplementationFault(f"Disc(alpha)/Disc(K) = {n} is not a square")
    return r
