"""Exit criteria. Each test carries an ``acceptance`` label; the terminal
summary prints one PASS/FAIL line per label."""

import json
import random
import time

import numpy as np
import pytest

from monogen.cli import main
from monogen.cubic import (
    local_obstruction_9cube,
    Verdict,
    index_form_value,
    index_identity_check,
    index_via_discriminant,
)
from monogen.density import PredicateSpec, run_density, trichotomy_census, verdict_census
from monogen.eisenstein import monogenic_certificate, split_test_K9, wieferich_scan
from monogen.arith import count_roots_cubic, sieve_primes
from monogen.quadforms import (
    FORM_A,
    FORM_B,
    QuadForm,
    Trichotomy,
    equivalent_gl2,
    reduce,
    reduced_forms_of_disc,
    represents,
    trichotomy_disc243,
)
from oracles import numpy_sieve, orbit_canonical, represented_values, root_count, sl2_matrices

TOL_1E6 = 0.01
TOL_1E5 = 0.02


def _pow_mod_vec(base: np.ndarray, e: int, mod: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % mod
    while e:
        if e & 1:
            out = out * b % mod
        b = b * b % mod
        e >>= 1
    return out


@pytest.mark.acceptance("1. Wieferich ground truth")
def test_wieferich_ground_truth():
    t0 = time.perf_counter()
    hits = wieferich_scan(2, 4000)
    elapsed = time.perf_counter() - t0
    assert {h.q for h in hits} == {1093, 3511}
    assert elapsed < 1.0


@pytest.mark.acceptance("2. Class number of -243")
def test_class_number_243():
    t0 = time.perf_counter()
    forms = reduced_forms_of_disc(-243)
    elapsed = time.perf_counter() - t0
    assert set(forms) == {QuadForm(1, 1, 61), QuadForm(7, 3, 9), QuadForm(7, -3, 9)}
    assert len(forms) == 3
    assert elapsed < 0.1


@pytest.mark.acceptance("3. Density (q-1)/q of non-Wieferich primes")
def test_wieferich_density():
    x = 10**6
    primes = numpy_sieve(x + 1).astype(np.int64)
    for q in (3, 5, 7):
        spec = PredicateSpec.parse(f"WIEFERICH_NEQ1({q})")
        t0 = time.perf_counter()
        rep = run_density(spec, x, partitions=1, workers=1)
        elapsed = time.perf_counter() - t0
        assert elapsed < 30

        ps = primes[primes != q]
        oracle_hits = int(np.count_nonzero(_pow_mod_vec(ps, q - 1, q * q) != 1))
        assert (rep.primes_scanned, rep.hits) == (len(ps), oracle_hits)
        assert abs(float(rep.empirical) - (q - 1) / q) <= TOL_1E6

        certified = sum(1 for p in ps.tolist() if monogenic_certificate(p, q) is not None)
        assert certified >= rep.hits
        assert certified == rep.hits


@pytest.mark.acceptance("4. Density 1/9 and the 1/6 - 1/18 split")
def test_nine_noncube_density():
    x = 10**6
    rep = run_density(PredicateSpec.parse("NINE_NONCUBE_1MOD9"), x)
    assert abs(float(rep.empirical) - 1 / 9) <= TOL_1E6

    ps = numpy_sieve(x + 1).astype(np.int64)
    ps = ps[ps != 3]
    one = ps % 9 == 1
    e = np.where(one, (ps - 1) // 3, 0)
    # 9^((p-1)/3) mod p per prime, vectorized square-and-multiply with per-element exponent
    acc = np.ones_like(ps)
    b = np.full_like(ps, 9) % ps
    while e.any():
        acc = np.where(e & 1, acc * b % ps, acc)
        b = b * b % ps
        e >>= 1
    noncube_oracle = one & (acc != 1)
    assert rep.hits == int(np.count_nonzero(noncube_oracle))

    # additivity for every x: it holds prime by prime, so it holds for every prefix
    cum_one = cum_split = cum_non = 0
    for p in ps.tolist():
        cum_one += p % 9 == 1
        cum_split += split_test_K9(p)
        cum_non += local_obstruction_9cube(p)
        assert cum_one == cum_split + cum_non
    specs = [PredicateSpec.parse(s) for s in ("RESIDUE_CLASS(1,9)", "SPLIT_K9", "NINE_NONCUBE_1MOD9")]
    for xx in (10, 19, 100, 1000, 10**4, 10**5, 10**6):
        h1, hs, hn = (run_density(s, xx).hits for s in specs)
        assert h1 == hs + hn


@pytest.mark.acceptance("5. Trichotomy zero mismatches up to 1e5")
def test_trichotomy_zero_mismatch():
    t0 = time.perf_counter()
    census = trichotomy_census(10**5)
    assert census.mismatches == 0
    expected_roots = {Trichotomy.INERT: 1, Trichotomy.FORM_A: 0, Trichotomy.FORM_B: 3}
    mismatches = []
    for p in sieve_primes(5, 10**5 + 1):
        formula = count_roots_cubic(3, p)
        brute = root_count(3, p)
        if formula != brute or expected_roots[trichotomy_disc243(p)] != brute:
            mismatches.append(p)
    elapsed = time.perf_counter() - t0
    assert mismatches == []
    assert elapsed < 60


@pytest.mark.acceptance("6. Verdict census up to 1e5")
def test_verdict_census():
    census = verdict_census(10**5, 10**4)
    assert float(census.share(Verdict.MONOGENIC)) >= 0.66
    assert float(census.share(Verdict.NON_MONOGENIC)) >= 0.10
    form_a_values = represented_values(7, 3, 9, 10**5)
    for p in census.non_monogenic:
        assert p % 9 == 1
        assert p in form_a_values
    for p, (x, y) in census.witnesses.items():
        assert p * x**3 + y**3 == 9


@pytest.mark.acceptance("7. Index form vs discriminant route")
def test_index_oracle_equivalence():
    rng = random.Random(20241015)
    for p, sign in ((17, -1), (19, 1), (37, 1), (53, -1), (71, -1), (73, 1)):
        done = 0
        while done < 1000:
            a, b, c = (rng.randint(-50, 50) for _ in range(3))
            if b == c == 0:
                continue
            assert index_via_discriminant(p, a, b, c) == index_form_value(p, sign, b, c)
            assert index_identity_check(p, sign, b, c)
            done += 1


@pytest.mark.acceptance("8. Reduction vs brute-force orbits; GL2 equivalence")
def test_reduction_oracle():
    mats = sl2_matrices(12)
    checked = 0
    for a in range(1, 41):
        for b in range(-40, 41):
            for c in range(1, 41):
                d = b * b - 4 * a * c
                if d >= 0 or -d > 200:
                    continue
                got = reduce(QuadForm(a, b, c))[0].as_tuple()
                assert got == orbit_canonical(a, b, c, mats), (a, b, c)
                checked += 1
    assert checked > 1000

    assert equivalent_gl2(FORM_A, QuadForm(7, -3, 9))
    plus = represented_values(7, 3, 9, 10**4)
    minus = represented_values(7, -3, 9, 10**4)
    form_b_values = represented_values(1, 1, 61, 10**4)
    counterexamples = []
    for p in sieve_primes(2, 10**4 + 1):
        by_plus, by_minus = p in plus, p in minus
        if by_plus != by_minus or by_plus != (represents(FORM_A, p) is not None):
            counterexamples.append(p)
        if p >= 5 and (p in form_b_values) != (represents(FORM_B, p) is not None):
            counterexamples.append(p)
    assert counterexamples == []


@pytest.mark.acceptance("9. Determinism across partitions")
def test_determinism(capsys):
    for spec in ("WIEFERICH_NEQ1(3)", "SPLIT_K9", "KNL_NONMONO(3)"):
        outputs = []
        for parts in (1, 4, 16):
            assert main(["density", "--spec", spec, "--x", "1e6", "--partitions", str(parts)]) == 0
            outputs.append(capsys.readouterr().out.encode())
        assert outputs[0] == outputs[1] == outputs[2]
        json.loads(outputs[0])
        reports = [run_density(PredicateSpec.parse(spec), 10**5, k) for k in (1, 4, 16)]
        assert reports[0] == reports[1] == reports[2]
