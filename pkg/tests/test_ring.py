import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_lde, cq_add, cq_mul, cq_value, dyadics, gauss_ints, small_gauss
from gausspres.errors import EvenArgument, NotAUnit, OddArgument
from gausspres.ring import (
    GAMMA,
    I_POWERS,
    DyadicGauss,
    GaussInt,
    di_add,
    di_canonical,
    di_conj,
    di_from_dyadic,
    di_mul,
    di_neg,
    gamma_divides,
    gi_div_gamma,
    gi_is_odd,
    lde,
    lde_vec,
    phase_exponent,
    residue_exponent_gamma3,
    row_exponent,
)


@pytest.mark.parametrize(
    "z, odd",
    [(GaussInt(2, 3), True), (GaussInt(5, 2), True), (GaussInt(2, 4), False), (GaussInt(1, 3), False), (GaussInt(0, 0), False)],
)
def test_parity_examples(z, odd):
    assert gi_is_odd(z) is odd


@pytest.mark.parametrize(
    "z, expected",
    [(GaussInt(1, 1), GaussInt(1, 0)), (GaussInt(2, 0), GaussInt(1, -1)), (GaussInt(1, 3), GaussInt(2, 1))],
)
def test_div_gamma_examples(z, expected):
    assert gi_div_gamma(z) == expected
    assert expected * GAMMA == z


def test_div_gamma_rejects_odd():
    with pytest.raises(OddArgument):
        gi_div_gamma(GaussInt(2, 3))


@pytest.mark.parametrize(
    "num, k, expected",
    [
        (GaussInt(2, 0), 2, DyadicGauss(GaussInt(0, -1), 0)),
        (GaussInt(2, 0), 3, DyadicGauss(GaussInt(0, -1), 1)),
        (GaussInt(0, 1), 0, DyadicGauss(GaussInt(0, 1), 0)),
        (GaussInt(1, 1), 1, DyadicGauss(GaussInt(1, 0), 0)),
    ],
)
def test_canonical_examples(num, k, expected):
    assert di_canonical(num, k) == expected


def test_arithmetic_examples():
    inv_gamma = di_canonical(GaussInt(1, 0), 1)
    assert di_add(inv_gamma, inv_gamma) == DyadicGauss(GaussInt(1, -1), 0)
    i = di_canonical(GaussInt(0, 1))
    assert di_mul(i, i) == DyadicGauss(GaussInt(-1, 0), 0)


def test_conj_example():
    x = di_canonical(GaussInt(1, 2), 3)
    c = di_conj(x)
    assert c == DyadicGauss(GaussInt(-2, -1), 3)
    re, im = cq_value(x)
    assert cq_value(c) == (re, -im)
    assert di_conj(c) == x


def test_lde_examples():
    assert lde(di_from_dyadic(1, 0, 1)) == 2
    assert di_from_dyadic(1, 0, 1) == DyadicGauss(GaussInt(0, 1), 2)
    assert lde(di_canonical(GaussInt(0, 0), 5)) == 0
    assert lde(di_from_dyadic(1, -1, 1)) == 1
    assert lde_vec([di_from_dyadic(1, 0, 1), di_canonical(GaussInt(3, 0))]) == 2
    assert lde_vec([]) == 0


@pytest.mark.parametrize("z, e", [(GaussInt(1, 0), 0), (GaussInt(3, 0), 2), (GaussInt(-1, 2), 0)])
def test_residue_exponent_examples(z, e):
    assert residue_exponent_gamma3(z) == e


def test_residue_exponent_rejects_even():
    with pytest.raises(EvenArgument):
        residue_exponent_gamma3(GaussInt(1, 1))


@pytest.mark.parametrize(
    "wj, wl, q",
    [(GaussInt(1, 0), GaussInt(1, 0), 0), (GaussInt(1, 0), GaussInt(-1, 0), 0), (GaussInt(1, 0), GaussInt(0, 1), 1)],
)
def test_row_exponent_examples(wj, wl, q):
    assert row_exponent(wj, wl) == q


def test_row_exponent_rejects_even():
    with pytest.raises(EvenArgument):
        row_exponent(GaussInt(1, 0), GaussInt(2, 0))


@pytest.mark.parametrize("z, e", [(GaussInt(1, 0), 0), (GaussInt(0, 1), 3), (GaussInt(-1, 0), 2), (GaussInt(0, -1), 1)])
def test_phase_exponent_examples(z, e):
    assert phase_exponent(z) == e


def test_phase_exponent_rejects_non_units():
    with pytest.raises(NotAUnit):
        phase_exponent(GaussInt(1, 1))


@given(gauss_ints)
def test_parity_matches_norm(z):
    assert gi_is_odd(z) == bool(z.norm() % 2)
    assert z.norm() >= 0
    assert (z.norm() == 0) == (z == GaussInt(0, 0))


@given(small_gauss.filter(gi_is_odd))
def test_residue_refines_mod_gamma_squared(z):
    e = residue_exponent_gamma3(z)
    assert gamma_divides(z - I_POWERS[e], 3)
    assert gamma_divides(z - I_POWERS[e % 2], 2)
    assert [gamma_divides(z - u, 3) for u in I_POWERS].count(True) == 1


@given(small_gauss.filter(gi_is_odd), small_gauss.filter(gi_is_odd))
def test_row_exponent_property(wj, wl):
    q = row_exponent(wj, wl)
    assert gamma_divides(wj - wl.times_i_pow(q), 2)


@given(small_gauss, st.integers(0, 12))
def test_canonical_matches_brute_force_lde(num, k):
    t = di_canonical(num, k)
    assert lde(t) == brute_lde(cq_value(DyadicGauss(num, k)))
    assert cq_value(t) == cq_value(DyadicGauss(num, k))
    assert t.k == 0 or gi_is_odd(t.num)


@given(dyadics, dyadics)
def test_arithmetic_commutes_with_embedding(x, y):
    assert cq_value(di_add(x, y)) == cq_add(cq_value(x), cq_value(y))
    assert cq_value(di_mul(x, y)) == cq_mul(cq_value(x), cq_value(y))
    re, im = cq_value(x)
    assert cq_value(di_conj(x)) == (re, -im)
    assert cq_value(di_neg(x)) == (-re, -im)
    assert di_add(x, di_neg(x)) == di_canonical(GaussInt(0, 0))


@given(dyadics)
def test_conj_preserves_norm_and_is_involution(x):
    assert di_conj(di_conj(x)) == x
    n = di_mul(x, di_conj(x))
    assert cq_value(n)[1] == 0


@given(st.integers(-100, 100), st.integers(-100, 100), st.integers(0, 8))
def test_from_dyadic(a, b, m):
    from fractions import Fraction

    assert cq_value(di_from_dyadic(a, b, m)) == (Fraction(a, 2**m), Fraction(b, 2**m))


def test_residue_tables():
    # Enumerate residues of a box of Gaussian integers modulo gamma, gamma^2, gamma^3.
    def classes(m):
        reps = []
        for a in range(-4, 5):
            for b in range(-4, 5):
                z = GaussInt(a, b)
                if not any(gamma_divides(z - r, m) for r in reps):
                    reps.append(z)
        return reps

    assert len(classes(1)) == 2
    assert len(classes(2)) == 4
    assert len(classes(3)) == 8


def test_large_numerators_stay_exact():
    rng = random.Random(5)
    x = di_canonical(GaussInt(rng.getrandbits(200) | 1, rng.getrandbits(200)), 150)
    assert brute_lde(cq_value(x)) == x.k
