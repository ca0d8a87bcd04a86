"""Prime scans measuring empirical densities against their asymptotic values.

Scans are split into contiguous partitions of ``[2, x]``. Each partition
returns exact integer counts and the merge is a plain sum, so the report
does not depend on how many partitions or workers were used.
"""

from __future__ import annotations

import csv
import enum
import io
import math
import os
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import count_roots_cubic, is_prime, sieve_primes
from .cubic import DEFAULT_THUE_BOUND, Verdict, classify_cbrt_p, local_obstruction_9cube
from .eisenstein import knl_nonmonogenic, phi, split_test_K9, wieferich_test
from .errors import CapExceeded, InvalidInput, MonogenError
from .quadforms import Trichotomy, trichotomy_disc243

MAX_X = 10**9
MAX_CENSUS_X = 10**7
SEGMENT = 10**7
SCHEMA = "1"
CSV_COLUMNS = ["spec_id", "params", "x", "primes", "hits", "empirical", "theoretical", "is_lower_bound", "deviation"]


class DensityBoundViolation(MonogenError):
    pass


class TrichotomyMismatch(MonogenError):
    def __init__(self, p: int, roots: int, cls: Trichotomy):
        super().__init__(f"p={p}: t^3 - 3 has {roots} roots but class is {cls.value}")
        self.p = p


class PredicateKind(enum.Enum):
    WIEFERICH_NEQ1 = "WIEFERICH_NEQ1"
    NINE_NONCUBE_1MOD9 = "NINE_NONCUBE_1MOD9"
    SPLIT_K9 = "SPLIT_K9"
    RESIDUE_CLASS = "RESIDUE_CLASS"
    TRICHOTOMY_CENSUS = "TRICHOTOMY_CENSUS"
    KNL_NONMONO = "KNL_NONMONO"


_ARITY = {
    PredicateKind.WIEFERICH_NEQ1: 1,
    PredicateKind.NINE_NONCUBE_1MOD9: 0,
    PredicateKind.SPLIT_K9: 0,
    PredicateKind.RESIDUE_CLASS: 2,
    PredicateKind.TRICHOTOMY_CENSUS: 0,
    PredicateKind.KNL_NONMONO: 1,
}
_PARAM_NAMES = {
    PredicateKind.WIEFERICH_NEQ1: ("q",),
    PredicateKind.RESIDUE_CLASS: ("a", "m"),
    PredicateKind.KNL_NONMONO: ("n",),
}


def _prime_divisors(n: int) -> tuple[int, ...]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@dataclass(frozen=True)
class PredicateSpec:
    """A family of primes to count, with its parameters.

    ``TRICHOTOMY_CENSUS`` counts the primes where t^3 - 3 has three roots
    (the x^2 + xy + 61y^2 class).
    """

    kind: PredicateKind
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.params) != _ARITY[self.kind]:
            raise InvalidInput(f"{self.kind.value} takes {_ARITY[self.kind]} parameter(s), got {self.params}")
        if self.kind is PredicateKind.WIEFERICH_NEQ1:
            (q,) = self.params
            if q < 3 or not is_prime(q):
                raise InvalidInput(f"q must be a prime >= 3, got {q}")
        elif self.kind is PredicateKind.RESIDUE_CLASS:
            a, m = self.params
            if m < 2 or math.gcd(a, m) != 1:
                raise InvalidInput(f"need m >= 2 and gcd(a, m) = 1, got a={a}, m={m}")
        elif self.kind is PredicateKind.KNL_NONMONO:
            (n,) = self.params
            if n < 3:
                raise InvalidInput(f"n must be >= 3, got {n}")

    @classmethod
    def parse(cls, text: str) -> PredicateSpec:
        """Parse ``"WIEFERICH_NEQ1(3)"``, ``"RESIDUE_CLASS(1,9)"``, ``"SPLIT_K9"``."""
        m = re.fullmatch(r"\s*([A-Z0-9_]+)\s*(?:\(([^)]*)\))?\s*", text)
        if not m:
            raise InvalidInput(f"cannot parse predicate spec {text!r}")
        try:
            kind = PredicateKind(m.group(1))
        except ValueError:
            raise InvalidInput(f"unknown predicate {m.group(1)!r}") from None
        params = tuple(int(v) for v in m.group(2).split(",") if v.strip()) if m.group(2) else ()
        return cls(kind, params)

    @property
    def spec_id(self) -> str:
        return self.kind.value

    @property
    def params_str(self) -> str:
        names = _PARAM_NAMES.get(self.kind, ())
        return ";".join(f"{k}={v}" for k, v in zip(names, self.params))

    def __str__(self) -> str:
        if not self.params:
            return self.spec_id
        return f"{self.spec_id}({','.join(map(str, self.params))})"

    def excluded_divisors(self) -> tuple[int, ...]:
        k = self.kind
        if k is PredicateKind.WIEFERICH_NEQ1:
            return (self.params[0],)
        if k in (PredicateKind.NINE_NONCUBE_1MOD9, PredicateKind.SPLIT_K9):
            return (3,)
        if k is PredicateKind.RESIDUE_CLASS:
            return _prime_divisors(self.params[1])
        if k is PredicateKind.TRICHOTOMY_CENSUS:
            return (2, 3)
        return _prime_divisors(2 * self.params[0])

    def theoretical(self) -> tuple[Fraction, bool]:
        """Asymptotic density and whether it is only a lower bound."""
        k = self.kind
        if k is PredicateKind.WIEFERICH_NEQ1:
            q = self.params[0]
            return Fraction(q - 1, q), True
        if k is PredicateKind.NINE_NONCUBE_1MOD9:
            return Fraction(1, 9), True
        if k is PredicateKind.SPLIT_K9:
            return Fraction(1, 18), False
        if k is PredicateKind.RESIDUE_CLASS:
            return Fraction(1, phi(self.params[1])), False
        if k is PredicateKind.TRICHOTOMY_CENSUS:
            return Fraction(1, 6), False
        n = self.params[0]
        return Fraction(1, n * phi(n)), True

    def holds(self, p: int) -> bool:
        k = self.kind
        if k is PredicateKind.WIEFERICH_NEQ1:
            return wieferich_test(p, self.params[0]) != 1
        if k is PredicateKind.NINE_NONCUBE_1MOD9:
            return local_obstruction_9cube(p)
        if k is PredicateKind.SPLIT_K9:
            return split_test_K9(p)
        if k is PredicateKind.RESIDUE_CLASS:
            a, m = self.params
            return (p - a) % m == 0
        if k is PredicateKind.TRICHOTOMY_CENSUS:
            return count_roots_cubic(3, p) == 3
        n = self.params[0]
        return p % n == 1 and knl_nonmonogenic(n, p)


@dataclass(frozen=True)
class DensityReport:
    spec: PredicateSpec
    x: int
    primes_scanned: int
    hits: int
    empirical: Fraction
    theoretical: Fraction
    is_lower_bound: bool
    deviation: Fraction
    excluded: tuple[int, ...]

    def to_record(self) -> dict:
        return {
            "schema": SCHEMA,
            "spec_id": self.spec.spec_id,
            "params": list(self.spec.params),
            "x": self.x,
            "primes": self.primes_scanned,
            "hits": self.hits,
            "empirical": str(self.empirical),
            "empirical_decimal": f"{float(self.empirical):.6f}",
            "theoretical": str(self.theoretical),
            "theoretical_decimal": f"{float(self.theoretical):.6f}",
            "is_lower_bound": self.is_lower_bound,
            "deviation": str(self.deviation),
            "deviation_decimal": f"{float(self.deviation):.6f}",
            "excluded": list(self.excluded),
        }

    def csv_row(self) -> list:
        return [
            self.spec.spec_id,
            self.spec.params_str,
            self.x,
            self.primes_scanned,
            self.hits,
            f"{float(self.empirical):.6f}",
            f"{float(self.theoretical):.6f}",
            str(self.is_lower_bound).lower(),
            f"{float(self.deviation):.6f}",
        ]


def reports_csv(reports: list[DensityReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def _partition(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split ``[lo, hi)`` into ``parts`` contiguous non-empty pieces."""
    parts = max(1, min(parts, hi - lo))
    step, extra = divmod(hi - lo, parts)
    out, start = [], lo
    for i in range(parts):
        end = start + step + (1 if i < extra else 0)
        out.append((start, end))
        start = end
    return out


def _count_range(spec: PredicateSpec, lo: int, hi: int) -> tuple[int, int, tuple[int, ...]]:
    skip = set(spec.excluded_divisors())
    primes = hits = 0
    excluded = []
    for s_lo in range(lo, hi, SEGMENT):
        for p in sieve_primes(s_lo, min(hi, s_lo + SEGMENT)):
            if p in skip:
                excluded.append(p)
                continue
            primes += 1
            if spec.holds(p):
                hits += 1
    return primes, hits, tuple(excluded)


def _count_range_args(args):
    return _count_range(*args)


def default_workers() -> int:
    return os.cpu_count() or 1


def run_density(spec: PredicateSpec, x: int, partitions: int = 1, workers: int | None = None) -> DensityReport:
    """Count primes ``p <= x`` satisfying ``spec``.

    ``partitions`` fixes how ``[2, x]`` is cut; ``workers`` caps the process
    pool (defaults to the CPU count, never more than ``partitions``).
    """
    if x < 2:
        raise InvalidInput(f"x must be >= 2, got {x}")
    if x > MAX_X:
        raise CapExceeded(f"x={x} exceeds cap {MAX_X}")
    if partitions < 1:
        raise InvalidInput(f"partitions must be >= 1, got {partitions}")
    chunks = _partition(2, x + 1, partitions)
    workers = min(len(chunks), workers or default_workers())
    jobs = [(spec, lo, hi) for lo, hi in chunks]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_count_range_args, jobs))
    else:
        parts = [_count_range(*j) for j in jobs]

    primes = sum(p for p, _, _ in parts)
    hits = sum(h for _, h, _ in parts)
    excluded = tuple(sorted(e for _, _, ex in parts for e in ex))
    empirical = Fraction(hits, primes) if primes else Fraction(0)
    theo, lower = spec.theoretical()
    return DensityReport(spec, x, primes, hits, empirical, theo, lower, abs(empirical - theo), excluded)


@dataclass
class VerdictCensus:
    x: int
    thue_bound: int
    by_residue: dict[int, Counter] = field(default_factory=dict)
    non_monogenic: list[int] = field(default_factory=list)
    unknown: list[int] = field(default_factory=list)
    witnesses: dict[int, tuple[int, int]] = field(default_factory=dict)

    def total(self, verdict: Verdict | None = None) -> int:
        if verdict is None:
            return sum(sum(c.values()) for c in self.by_residue.values())
        return sum(c[verdict] for c in self.by_residue.values())

    def share(self, verdict: Verdict) -> Fraction:
        n = self.total()
        return Fraction(self.total(verdict), n) if n else Fraction(0)

    def to_record(self) -> dict:
        return {
            "schema": SCHEMA,
            "x": self.x,
            "thue_bound": self.thue_bound,
            "primes": self.total(),
            "counts": {v.value: self.total(v) for v in Verdict},
            "shares": {v.value: f"{float(self.share(v)):.6f}" for v in Verdict},
            "by_residue_mod_9": {
                str(r): {v.value: c[v] for v in Verdict} for r, c in sorted(self.by_residue.items())
            },
        }


def census_tolerance(x: int) -> float:
    return 0.01 if x >= 10**6 else 0.02


def verdict_census(x: int, thue_bound: int = DEFAULT_THUE_BOUND) -> VerdictCensus:
    """Classify Q(p^(1/3)) for every prime ``p <= x`` other than 3.

    From ``x = 10^5`` on, the Monogenic share must reach 2/3 and the
    NonMonogenic share 1/9, each up to the pinned tolerance; a shortfall
    raises :class:`DensityBoundViolation`.
    """
    if x < 2:
        raise InvalidInput(f"x must be >= 2, got {x}")
    if x > MAX_CENSUS_X:
        raise CapExceeded(f"x={x} exceeds census cap {MAX_CENSUS_X}")
    out = VerdictCensus(x, thue_bound)
    for p in sieve_primes(2, x + 1):
        if p == 3:
            continue
        v = classify_cbrt_p(p, thue_bound)
        out.by_residue.setdefault(p % 9, Counter())[v.verdict] += 1
        if v.verdict is Verdict.NON_MONOGENIC:
            out.non_monogenic.append(p)
        elif v.verdict is Verdict.UNKNOWN:
            out.unknown.append(p)
        if v.witness is not None:
            out.witnesses[p] = v.witness
    if x >= 10**5:
        tol = census_tolerance(x)
        mono = float(out.share(Verdict.MONOGENIC))
        non = float(out.share(Verdict.NON_MONOGENIC))
        if mono < 2 / 3 - tol or non < 1 / 9 - tol:
            raise DensityBoundViolation(f"x={x}: Monogenic share {mono:.4f}, NonMonogenic share {non:.4f}")
    return out


_EXPECTED_ROOTS = {Trichotomy.INERT: 1, Trichotomy.FORM_A: 0, Trichotomy.FORM_B: 3}


@dataclass(frozen=True)
class TrichotomyCensus:
    x: int
    primes: int
    counts: dict[Trichotomy, int]
    mismatches: int = 0

    def share(self, cls: Trichotomy) -> Fraction:
        return Fraction(self.counts[cls], self.primes)

    def to_record(self) -> dict:
        return {
            "schema": SCHEMA,
            "x": self.x,
            "primes": self.primes,
            "counts": {c.value: n for c, n in self.counts.items()},
            "shares": {c.value: f"{float(self.share(c)):.6f}" for c in Trichotomy},
            "mismatches": self.mismatches,
        }


def trichotomy_census(x: int) -> TrichotomyCensus:
    """Root counts of t^3 - 3 against the disc -243 class, for primes 5..x."""
    if not 5 <= x <= MAX_CENSUS_X:
        raise InvalidInput(f"need 5 <= x <= {MAX_CENSUS_X}, got {x}")
    counts = {c: 0 for c in Trichotomy}
    n = 0
    for p in sieve_primes(5, x + 1):
        roots = count_roots_cubic(3, p)
        cls = trichotomy_disc243(p)
        if roots != _EXPECTED_ROOTS[cls]:
            raise TrichotomyMismatch(p, roots, cls)
        counts[cls] += 1
        n += 1
    return TrichotomyCensus(x, n, counts)
