import cmath
import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from kurepa import special as sf
from kurepa.errors import BranchError, DomainError, PoleError

finite = st.floats(-6, 6, allow_nan=False)


def cplx(re=finite, im=finite):
    return st.builds(complex, re, im)


def off_integers(z, d=1e-3):
    return abs(z - round(z.real)) > d


# ---- gamma family -------------------------------------------------------

@pytest.mark.parametrize("z, expected", [(1, 1), (5, 24), (0.5, math.sqrt(math.pi))])
def test_gamma_examples(z, expected):
    assert abs(sf.gamma(z) - expected) <= 1e-13 * expected


@pytest.mark.parametrize("z", [0, -1, -7, -3 + 1e-14j])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        sf.gamma(z)


def test_gamma_against_mpmath_grid():
    worst = 0.0
    for x in range(-40, 41, 3):
        for y in (-9.0, -2.5, 0.0, 0.7, 4.0, 12.0):
            z = complex(x / 4 + 0.13, y)
            ref = complex(mpmath.gamma(z))
            worst = max(worst, abs(sf.gamma(z) - ref) / abs(ref))
    assert worst <= 1e-13


@given(cplx().filter(off_integers))
def test_gamma_recurrence(z):
    assert abs(sf.gamma(z + 1) - z * sf.gamma(z)) <= 1e-12 * (1 + abs(z * sf.gamma(z)))


@given(cplx().filter(off_integers))
def test_gamma_reflection(z):
    lhs = sf.gamma(z) * sf.gamma(1 - z)
    rhs = math.pi / sf.sin_pi(z)
    assert abs(lhs - rhs) <= 1e-11 * abs(rhs)


@given(cplx(im=st.floats(-3, 3)).filter(off_integers))
def test_loggamma_exponentiates_to_gamma(z):
    g = sf.gamma(z)
    assert abs(cmath.exp(sf.loggamma(z)) - g) <= 1e-11 * abs(g)


def test_rgamma_zero_at_poles():
    assert sf.rgamma(-3) == 0
    assert abs(sf.rgamma(4) - 1 / 6) < 1e-15


@pytest.mark.parametrize("z, expected", [
    (1, -sf.EULER_GAMMA),
    (2, 1 - sf.EULER_GAMMA),
    (0.5, -sf.EULER_GAMMA - 2 * math.log(2)),
])
def test_digamma_examples(z, expected):
    assert abs(sf.digamma(z) - expected) <= 1e-14


def test_digamma_against_mpmath():
    for z in (0.3 + 2j, -2.5 + 0.1j, 17.2 - 3j, -0.75):
        assert abs(sf.digamma(z) - complex(mpmath.digamma(z))) <= 1e-13 * (1 + abs(sf.digamma(z)))


@given(cplx().filter(off_integers))
def test_digamma_recurrence(z):
    assert abs(sf.digamma(z + 1) - sf.digamma(z) - 1 / z) <= 1e-11 * (1 + abs(1 / z))


def test_harmonic():
    assert sf.harmonic(0) == 0
    assert sf.harmonic(4) == pytest.approx(25 / 12, abs=1e-15)


# ---- cot, branches ------------------------------------------------------

@pytest.mark.parametrize("z, expected", [(0.5, 0), (0.25, 1), (0.5 + 30j, -1j), (0.5 - 30j, 1j)])
def test_cot_pi_examples(z, expected):
    assert abs(sf.cot_pi(z) - expected) <= 1e-15


@given(cplx().filter(off_integers), st.integers(-20, 20))
def test_cot_pi_periodic(z, k):
    assert abs(sf.cot_pi(z + k) - sf.cot_pi(z)) <= 1e-9 * (1 + abs(sf.cot_pi(z)))


def test_cot_pi_pole():
    with pytest.raises(PoleError):
        sf.cot_pi(3)


def test_branch_log_on_cut():
    assert sf.branch_log(-1) == complex(0, math.pi)
    assert abs(sf.minus_one_pow(0.5) - 1j) < 1e-16
    with pytest.raises(BranchError):
        sf.branch_log(-2.0, branch="lower")
    with pytest.raises(DomainError):
        sf.branch_pow(0, -1)


# ---- exponential integral -----------------------------------------------

def test_ei_examples():
    assert abs(sf.ei(1) - 1.8951178163559368) <= 1e-15
    assert abs(sf.ei(0.001) - float(mpmath.ei(0.001))) <= 1e-14
    # leading behaviour gamma + ln x + x
    assert abs(sf.ei(0.001) - (sf.EULER_GAMMA + math.log(0.001) + 0.001)) <= 1e-6


@pytest.mark.parametrize("x", [1e-8, 0.3, 2.0, 12.5, 30.0, 31.0, 39.9, 40.5, 60.0, 200.0])
def test_ei_against_mpmath(x):
    ref = float(mpmath.ei(x))
    assert abs(sf.ei(x) - ref) <= 1e-14 * abs(ref)


def test_ei_domain():
    with pytest.raises(DomainError):
        sf.ei(0)


# ---- Pochhammer, 1F1 ----------------------------------------------------

@pytest.mark.parametrize("x, n, expected", [(3, 0, 1), (2, 3, 24), (-1, 3, 0)])
def test_pochhammer(x, n, expected):
    assert sf.pochhammer(x, n) == expected


def test_kummer_examples():
    assert abs(sf.kummer_1f1(1, 1, -1) - math.exp(-1)) <= 1e-15
    assert sf.kummer_1f1(0.3, 2.1 + 1j, 0) == 1


@pytest.mark.parametrize("a, b, x", [(1, 0.5, -1), (1, 1.5 - 2j, -1), (0.5, -2.5, 3.0), (2 + 1j, 4, -6)])
def test_kummer_against_mpmath(a, b, x):
    ref = complex(mpmath.hyp1f1(a, b, x))
    assert abs(sf.kummer_1f1(a, b, x) - ref) <= 1e-12 * max(1, abs(ref))


def test_kummer_pole():
    with pytest.raises(PoleError):
        sf.kummer_1f1(1, -2, 0.5)


# ---- incomplete gamma ---------------------------------------------------

def test_incomplete_gamma_examples():
    assert abs(sf.upper_incomplete_gamma(1, 2) - math.exp(-2)) <= 1e-15
    assert abs(sf.upper_incomplete_gamma(3, 0) - 2) <= 1e-14
    assert abs(sf.lower_incomplete_gamma(1, 1) - (1 - math.exp(-1))) <= 1e-15
    assert sf.lower_incomplete_gamma(2, 0) == 0
    assert abs(sf.lower_incomplete_gamma(0.5, 1) - math.sqrt(math.pi) * math.erf(1)) <= 1e-14
    with pytest.raises(DomainError):
        sf.upper_incomplete_gamma(-0.5, 0)


def test_upper_incomplete_gamma_at_minus_one_is_complex():
    v = sf.upper_incomplete_gamma(0.5, -1)
    assert abs(v.imag) > 0.1
    assert abs(v - complex(mpmath.gammainc(0.5, mpmath.mpc(-1, 0)))) <= 1e-13


@pytest.mark.parametrize("a, x", [
    (0.5, -1), (-0.5, -1), (-2.25 + 1j, -1), (3.5, 7.0), (1.5 - 2j, 12 + 1j),
    (0.2, 0.1), (-3, -1), (0, 2.5), (-4, 0.5 + 0.5j), (2.5 + 0.5j, -1), (-5.5, -1),
])
def test_upper_incomplete_gamma_against_mpmath(a, x):
    ref = complex(mpmath.gammainc(a, mpmath.mpc(x)))
    assert abs(sf.upper_incomplete_gamma(a, x) - ref) <= 1e-13 * (1 + abs(ref))


@given(st.floats(-5, 5).filter(lambda a: abs(a - round(a)) > 1e-3), st.floats(0.1, 3))
def test_incomplete_gamma_recurrence_on_negative_axis(a, r):
    x = complex(-r, 0)
    lhs = sf.upper_incomplete_gamma(a + 1, x)
    rhs = a * sf.upper_incomplete_gamma(a, x) + sf.branch_pow(x, a) * cmath.exp(-x)
    assert abs(lhs - rhs) <= 1e-11 * (1 + abs(lhs))


@given(cplx(st.floats(0.1, 5), st.floats(-3, 3)), cplx(st.floats(-4, 4), st.floats(-4, 4)))
def test_incomplete_gamma_complement(a, x):
    total = sf.upper_incomplete_gamma(a, x) + sf.lower_incomplete_gamma(a, x)
    g = sf.gamma(a)
    assert abs(total - g) <= 1e-10 * (abs(g) + abs(sf.lower_incomplete_gamma(a, x)) + 1)


# ---- principal value of Gamma -------------------------------------------

@pytest.mark.parametrize("n, expected", [
    (0, -0.5772156649015329), (1, -(1 - 0.5772156649015329)), (2, (1.5 - 0.5772156649015329) / 2),
])
def test_pv_gamma(n, expected):
    assert abs(sf.pv_gamma_at_negative_integer(n) - expected) <= 1e-15


def test_pv_gamma_is_symmetric_limit():
    for n in range(0, 6):
        eps = 1e-6
        avg = 0.5 * (sf.gamma(-n + eps) + sf.gamma(-n - eps))
        assert abs(avg - sf.pv_gamma_at_negative_integer(n)) <= 1e-4


def test_constants():
    assert sf.CONSTANTS.ei_one == sf.EI_ONE
    assert abs(sf.EULER_GAMMA - float(mpmath.euler)) < 1e-16
