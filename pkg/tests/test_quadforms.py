import random

import pytest
from hypothesis import given, settings, strategies as st

from monogen.arith import count_roots_cubic, sieve_primes
from monogen.errors import InvalidInput
from monogen.quadforms import (
    FORM_A,
    FORM_B,
    IDENTITY,
    QuadForm,
    Trichotomy,
    Unimodular,
    equivalent_gl2,
    evaluate,
    forms_csv,
    is_reduced,
    reduce,
    reduced_forms_of_disc,
    represents,
    transform,
    trichotomy_disc243,
)
from oracles import represented_values, sl2_matrices, orbit_canonical


@pytest.mark.parametrize(
    "f, x, y, expected",
    [((7, 3, 9), 1, 1, 19), ((1, 1, 61), 0, 1, 61), ((1, 1, 61), 2, 1, 67)],
)
def test_evaluate(f, x, y, expected):
    assert evaluate(QuadForm(*f), x, y) == expected


def test_quadform_rejects_indefinite():
    with pytest.raises(InvalidInput):
        QuadForm(1, 3, 1)
    with pytest.raises(InvalidInput):
        QuadForm(-1, 0, -1)


def test_unimodular_rejects_bad_det():
    with pytest.raises(InvalidInput):
        Unimodular(2, 0, 0, 1)


def test_transform_example():
    assert transform(QuadForm(1, 1, 61), Unimodular(1, 0, 1, 1)) == QuadForm(63, 123, 61)
    assert transform(FORM_A, IDENTITY) == FORM_A


def _random_form(rng, lim=50):
    while True:
        a, b, c = rng.randint(1, lim), rng.randint(-lim, lim), rng.randint(1, lim)
        if b * b - 4 * a * c < 0:
            return QuadForm(a, b, c)


def _random_unimodular(rng, lim=50, det=None):
    while True:
        m = [rng.randint(-lim, lim) for _ in range(4)]
        d = m[0] * m[3] - m[1] * m[2]
        if d in ((det,) if det else (1, -1)):
            return Unimodular(*m)


def _random_sl2(rng, steps=6):
    m = IDENTITY
    gens = [Unimodular(1, 1, 0, 1), Unimodular(1, -1, 0, 1), Unimodular(0, -1, 1, 0), Unimodular(1, 0, 1, 1)]
    for _ in range(steps):
        m = m @ rng.choice(gens)
    return m


def test_discriminant_invariance():
    rng = random.Random(1)
    for _ in range(1000):
        f = _random_form(rng)
        m = _random_unimodular(rng, lim=6) if rng.random() < 0.9 else _random_sl2(rng)
        assert transform(f, m).disc == f.disc


def test_transform_functoriality():
    rng = random.Random(2)
    for _ in range(300):
        f = _random_form(rng, 20)
        m, n = _random_sl2(rng, 4), _random_sl2(rng, 4)
        assert transform(transform(f, m), n) == transform(f, m @ n)


@pytest.mark.parametrize(
    "f, expected",
    [((63, 123, 61), (1, 1, 61)), ((7, 3, 9), (7, 3, 9)), ((9, -3, 7), (7, 3, 9))],
)
def test_reduce_examples(f, expected):
    g, m = reduce(QuadForm(*f))
    assert g.as_tuple() == expected
    assert m.det == 1
    assert transform(QuadForm(*f), m) == g


def test_reduce_already_reduced_is_identity():
    assert reduce(FORM_A) == (FORM_A, IDENTITY)


def test_reduce_9_m3_7_against_small_matrix_search():
    mats = sl2_matrices(3)
    assert orbit_canonical(9, -3, 7, mats) == (7, 3, 9)


def test_reduction_soundness_and_canonicality():
    rng = random.Random(3)
    n = 0
    while n < 1000:
        f = _random_form(rng, 100)
        if -f.disc > 10**4:
            continue
        n += 1
        g, m = reduce(f)
        assert transform(f, m) == g
        assert m.det == 1 and is_reduced(g)
        h = transform(f, _random_sl2(rng, rng.randint(1, 10)))
        assert reduce(h)[0] == g


@settings(max_examples=300, deadline=None)
@given(
    st.integers(1, 60),
    st.integers(-60, 60),
    st.integers(1, 60),
    st.lists(st.sampled_from([(1, 1, 0, 1), (1, -1, 0, 1), (0, -1, 1, 0)]), max_size=12),
)
def test_reduce_is_class_invariant(a, b, c, word):
    if b * b - 4 * a * c >= 0:
        return
    f = QuadForm(a, b, c)
    m = IDENTITY
    for w in word:
        m = m @ Unimodular(*w)
    assert reduce(transform(f, m))[0] == reduce(f)[0]


@pytest.mark.parametrize(
    "f, g, expected",
    [((7, 3, 9), (7, -3, 9), True), ((7, 3, 9), (1, 1, 61), False), ((7, 3, 9), (7, 3, 9), True)],
)
def test_equivalent_gl2_examples(f, g, expected):
    assert equivalent_gl2(QuadForm(*f), QuadForm(*g)) is expected


def test_proper_classes_of_7_pm3_9_differ():
    assert reduce(QuadForm(7, 3, 9))[0] != reduce(QuadForm(7, -3, 9))[0]


@pytest.mark.parametrize(
    "disc, expected",
    [
        (-243, [(1, 1, 61), (7, -3, 9), (7, 3, 9)]),
        (-3, [(1, 1, 1)]),
        (-4, [(1, 0, 1)]),
        (-23, [(1, 1, 6), (2, -1, 3), (2, 1, 3)]),
        (-20, [(1, 0, 5), (2, 2, 3)]),
    ],
)
def test_reduced_forms_of_disc(disc, expected):
    assert [f.as_tuple() for f in reduced_forms_of_disc(disc)] == expected


def test_reduced_forms_including_imprimitive():
    got = [f.as_tuple() for f in reduced_forms_of_disc(-243, primitive=False)]
    assert got == [(1, 1, 61), (3, 3, 21), (7, -3, 9), (7, 3, 9), (9, 9, 9)]


def test_reduced_forms_brute_force_window():
    for disc in range(-3, -400, -1):
        if disc % 4 not in (0, 1):
            continue
        lim = 200
        brute = sorted(
            (a, b, c)
            for a in range(1, 12)
            for b in range(-a + 1, a + 1)
            for c in range(a, lim)
            if b * b - 4 * a * c == disc and is_reduced(QuadForm(a, b, c))
        )
        got = [f.as_tuple() for f in reduced_forms_of_disc(disc, primitive=False)]
        assert got == brute, disc


@pytest.mark.parametrize("disc", [0, 5, -1, -2, -5])
def test_reduced_forms_invalid_disc(disc):
    with pytest.raises(InvalidInput):
        reduced_forms_of_disc(disc)


def test_forms_csv_stable():
    assert forms_csv(-243, reduced_forms_of_disc(-243)) == "D,a,b,c\n-243,1,1,61\n-243,7,-3,9\n-243,7,3,9\n"


@pytest.mark.parametrize(
    "f, n, expected",
    [((7, 3, 9), 19, (1, 1)), ((7, 3, 9), 37, (-1, 2)), ((1, 1, 61), 5, None)],
)
def test_represents_examples(f, n, expected):
    w = represents(QuadForm(*f), n)
    if expected is None:
        assert w is None
    else:
        assert (w.x, w.y, w.value) == (*expected, n)


def test_represents_complete_against_ellipse_enumeration():
    for f in [QuadForm(7, 3, 9), QuadForm(1, 1, 61), QuadForm(2, 1, 3), QuadForm(5, -4, 7)]:
        values = represented_values(f.a, f.b, f.c, 3000)
        for n in range(1, 3001):
            w = represents(f, n)
            assert (w is not None) == (n in values), (f, n)
            if w is not None:
                assert evaluate(f, w.x, w.y) == n


@pytest.mark.parametrize("p, expected", [(5, Trichotomy.INERT), (19, Trichotomy.FORM_A), (61, Trichotomy.FORM_B)])
def test_trichotomy_examples(p, expected):
    assert trichotomy_disc243(p) is expected


def test_trichotomy_rejects_small_and_composite():
    for p in (2, 3, 49):
        with pytest.raises(InvalidInput):
            trichotomy_disc243(p)


def test_trichotomy_completeness_to_1e5():
    for p in sieve_primes(5, 10**5 + 1):
        if p % 3 != 1:
            assert trichotomy_disc243(p) is Trichotomy.INERT
            continue
        a = represents(FORM_A, p) is not None
        b = represents(FORM_B, p) is not None
        assert a != b, p
        roots = count_roots_cubic(3, p)
        assert (roots == 0) == a and (roots == 3) == b, p
