"""Positive definite integral binary quadratic forms.

Forms are ``a*x^2 + b*x*y + c*y^2``. A substitution matrix ``M`` acts on the
column vector of variables, so ``transform(f, M)(x, y) = f(m11*x + m12*y,
m21*x + m22*y)`` and ``transform(transform(f, M), N) == transform(f, M @ N)``.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass

from .arith import is_prime
from .errors import InvalidInput

# Largest coefficient magnitude allowed anywhere in a form (signed 64-bit).
COEFF_CAP = (1 << 63) - 1


def _guard(*values: int) -> None:
    for v in values:
        if abs(v) > COEFF_CAP:
            raise OverflowError(f"coefficient {v} exceeds 64-bit cap")


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        _guard(self.a, self.b, self.c)
        if self.a <= 0 or self.disc >= 0:
            raise InvalidInput(f"{self.as_tuple()} is not positive definite")

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"{self.a}x^2 {'+' if self.b >= 0 else '-'} {abs(self.b)}xy + {self.c}y^2"


@dataclass(frozen=True)
class Unimodular:
    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        if self.det not in (1, -1):
            raise InvalidInput(f"determinant {self.det} is not +-1")

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    def __matmul__(self, other: Unimodular) -> Unimodular:
        return Unimodular(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    @classmethod
    def identity(cls) -> Unimodular:
        return cls(1, 0, 0, 1)


IDENTITY = Unimodular.identity()
_SWAP = Unimodular(0, -1, 1, 0)
_FLIP_Y = Unimodular(1, 0, 0, -1)


@dataclass(frozen=True)
class RepWitness:
    x: int
    y: int
    value: int


class Trichotomy(enum.Enum):
    INERT = "Inert"
    FORM_A = "FormA"
    FORM_B = "FormB"


FORM_A = QuadForm(7, 3, 9)
FORM_B = QuadForm(1, 1, 61)


def evaluate(f: QuadForm, x: int, y: int) -> int:
    v = f.a * x * x + f.b * x * y + f.c * y * y
    _guard(v)
    return v


def transform(f: QuadForm, m: Unimodular) -> QuadForm:
    a = evaluate(f, m.m11, m.m21)
    c = evaluate(f, m.m12, m.m22)
    b = 2 * f.a * m.m11 * m.m12 + f.b * (m.m11 * m.m22 + m.m12 * m.m21) + 2 * f.c * m.m21 * m.m22
    return QuadForm(a, b, c)


def is_reduced(f: QuadForm) -> bool:
    a, b, c = f.a, f.b, f.c
    if not abs(b) <= a <= c:
        return False
    if abs(b) == a and b != a:
        return False
    if a == c and b < 0:
        return False
    return True


def _translate(a: int, b: int, c: int, r: int) -> tuple[int, int, int]:
    # x -> x + r*y
    return a, b + 2 * a * r, a * r * r + b * r + c


def reduce(f: QuadForm) -> tuple[QuadForm, Unimodular]:
    """Reduced representative of the proper class of ``f`` and the determinant
    +1 matrix carrying ``f`` onto it.

    Translate ``b`` into ``(-a, a]``, swap when ``a > c`` (or ``a == c`` with
    ``b < 0``), repeat. ``a`` strictly decreases on every swap, so this stops.
    """
    a, b, c = f.as_tuple()
    m = IDENTITY
    while True:
        r = (a - b) // (2 * a)
        if r:
            a, b, c = _translate(a, b, c, r)
            m = m @ Unimodular(1, r, 0, 1)
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            m = m @ _SWAP
            continue
        break
    return QuadForm(a, b, c), m


def equivalent_gl2(f: QuadForm, g: QuadForm) -> bool:
    if f.disc != g.disc:
        return False
    rf = reduce(f)[0]
    return rf == reduce(g)[0] or rf == reduce(transform(g, _FLIP_Y))[0]


def reduced_forms_of_disc(disc: int, primitive: bool = True) -> list[QuadForm]:
    """Reduced forms of discriminant ``disc``, sorted by ``(a, b, c)``.

    With ``primitive=True`` (the default) forms whose coefficients share a
    factor are dropped, so the list length is the class number.
    """
    if disc >= 0 or disc % 4 not in (0, 1):
        raise InvalidInput(f"invalid negative discriminant {disc}")
    out = []
    for a in range(1, math.isqrt(-disc // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b - disc) % 2:
                continue
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if primitive and math.gcd(a, b, c) != 1:
                continue
            out.append(QuadForm(a, b, c))
    out.sort()
    return out


def forms_csv(disc: int, forms: list[QuadForm]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["D", "a", "b", "c"])
    for f in forms:
        w.writerow([disc, f.a, f.b, f.c])
    return buf.getvalue()


def _sort_key(v: int) -> tuple[int, int]:
    return abs(v), 0 if v >= 0 else 1


def represents(f: QuadForm, n: int) -> RepWitness | None:
    """A solution of ``f(x, y) == n`` or None.

    Every ``y`` with ``y^2 <= 4*a*n/|D|`` is tried and the matching ``x`` are
    read off the quadratic formula, which covers the whole ellipse. The
    witness returned minimises ``|y|`` (positive first), then ``|x|``
    (positive first).
    """
    if n <= 0:
        raise InvalidInput(f"n must be positive, got {n}")
    a, b, c = f.as_tuple()
    d = -f.disc
    ymax = math.isqrt(4 * a * n // d)
    ys = sorted(range(-ymax, ymax + 1), key=_sort_key)
    for y in ys:
        # a x^2 + (b y) x + (c y^2 - n) = 0
        delta = b * b * y * y - 4 * a * (c * y * y - n)
        if delta < 0:
            continue
        s = math.isqrt(delta)
        if s * s != delta:
            continue
        xs = []
        for num in (-b * y + s, -b * y - s):
            if num % (2 * a) == 0:
                xs.append(num // (2 * a))
        if xs:
            x = min(xs, key=_sort_key)
            return RepWitness(x, y, n)
    return None


def trichotomy_disc243(p: int) -> Trichotomy:
    """Which of the three cases governs the roots of t^3 - 3 mod ``p``."""
    if p < 5 or not is_prime(p):
        raise InvalidInput(f"p must be a prime >= 5, got {p}")
    if p % 3 == 2:
        return Trichotomy.INERT
    hit_a = represents(FORM_A, p) is not None
    hit_b = represents(FORM_B, p) is not None
    if hit_a == hit_b:
        raise AssertionError(f"p={p}: FormA={hit_a}, FormB={hit_b}; expected exactly one")
    return Trichotomy.FORM_A if hit_a else Trichotomy.FORM_B
