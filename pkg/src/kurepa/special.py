"""Complex special functions used by every Kurepa representation.

All functions take and return Python ``complex`` (real-only functions take and
return ``float``).  Multivalued expressions put the cut on the negative real
axis and evaluate *on* it from the upper half-plane, i.e. ``arg(-1) = +pi``
and ``(-1)**z == exp(i*pi*z)``.
"""
import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from ._backend import kernels
from ._kernels_py import LANCZOS_COEF, LANCZOS_G
from .errors import BranchError, ConvergenceError, DomainError, PoleError

POLE_TOL = 1e-12
EULER_GAMMA = 0.5772156649015329
ARG_OF_MINUS_ONE = math.pi

_EPS = 2.220446049250313e-16
_MAX_ITER = 2000

# Even Bernoulli numbers B_2 .. B_20 for the digamma asymptotic expansion.
_BERNOULLI = (
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510),
    Fraction(43867, 798), Fraction(-174611, 330),
)
_DIGAMMA_COEF = tuple(float(b) / (2 * (k + 1)) for k, b in enumerate(_BERNOULLI))


@dataclass(frozen=True)
class BranchConfig:
    arg_of_minus_one: float = ARG_OF_MINUS_ONE


def _near_nonpositive_integer(z):
    n = round(z.real)
    return n <= 0 and abs(z - n) <= POLE_TOL


def _nearest_integer_distance(z):
    return abs(z - round(z.real))


def _check_gamma_pole(z, name="gamma"):
    if _near_nonpositive_integer(z):
        raise PoleError(f"{name} has a pole at z = {round(z.real)}", round(z.real))


def branch_log(x, branch="upper"):
    """log(x) with arg in (-pi, pi] and the negative real axis at arg = +pi."""
    x = complex(x)
    if x.imag == 0.0 and x.real < 0.0:
        if branch != "upper":
            raise BranchError("only arg(x) = +pi is supported on the negative real axis")
        return complex(math.log(-x.real), ARG_OF_MINUS_ONE)
    if branch not in ("upper", "lower"):
        raise ValueError(f"unknown branch {branch!r}")
    return cmath.log(x)


def branch_pow(x, a, branch="upper"):
    """x**a on the arg(x) = +pi branch."""
    x = complex(x)
    if x == 0:
        if complex(a).real > 0:
            return 0j
        raise DomainError("0**a needs Re a > 0")
    return cmath.exp(complex(a) * branch_log(x, branch))


def minus_one_pow(z):
    """(-1)**z, always computed as exp(i*pi*z)."""
    return cmath.exp(1j * ARG_OF_MINUS_ONE * complex(z))


def gamma(z):
    """Gamma function via a 15-term Lanczos sum, reflected for Re z < 1/2."""
    z = complex(z)
    _check_gamma_pole(z)
    return kernels.gamma_lanczos(z)


def loggamma(z):
    """A logarithm of Gamma(z): ``exp(loggamma(z)) == gamma(z)``.

    Not the principal-branch log-gamma; only the modulus (real part) is
    branch independent.
    """
    z = complex(z)
    _check_gamma_pole(z, "loggamma")
    if z.real < 0.5:
        return cmath.log(math.pi) - cmath.log(kernels.sin_pi(z)) - loggamma(1.0 - z)
    w = z - 1.0
    x = LANCZOS_COEF[0]
    for i in range(1, len(LANCZOS_COEF)):
        x += LANCZOS_COEF[i] / (w + i)
    t = w + LANCZOS_G + 0.5
    return 0.5 * math.log(2.0 * math.pi) + (w + 0.5) * cmath.log(t) - t + cmath.log(x)


def rgamma(z):
    """1/Gamma(z); zero at the non-positive integers."""
    z = complex(z)
    if _near_nonpositive_integer(z):
        return 0j
    return 1.0 / kernels.gamma_lanczos(z)


def sin_pi(z):
    return kernels.sin_pi(complex(z))


def cot_pi(z):
    """cot(pi*z) evaluated on the reduced argument z - round(Re z).

    For |Im z| > 20 the value is -i*sign(Im z) to double precision.
    """
    z = complex(z)
    w = z - round(z.real)
    if abs(w) <= POLE_TOL:
        raise PoleError(f"cot(pi z) has a pole at z = {round(z.real)}", round(z.real))
    if w.imag > 20.0:
        return -1j
    if w.imag < -20.0:
        return 1j
    return cmath.cos(math.pi * w) / cmath.sin(math.pi * w)


def digamma(z):
    """psi(z) = Gamma'(z)/Gamma(z)."""
    z = complex(z)
    _check_gamma_pole(z, "digamma")
    if z.real < 0.5:
        return digamma(1.0 - z) - math.pi * cot_pi(z)
    acc = 0j
    while abs(z) < 12.0 or z.real < 8.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    s = 0j
    p = inv2
    for c in _DIGAMMA_COEF:
        s += c * p
        p *= inv2
    return acc + cmath.log(z) - 0.5 / z - s


def harmonic(n):
    """H_n = 1 + 1/2 + ... + 1/n as a float (H_0 = 0)."""
    return math.fsum(1.0 / k for k in range(1, n + 1))


def ei(x):
    """Exponential integral Ei(x) for real x > 0."""
    x = float(x)
    if x <= 0.0:
        raise DomainError("ei is implemented for x > 0 only")
    if x <= 40.0:
        terms = []
        term = 1.0
        for k in range(1, 500):
            term *= x / k
            t = term / k
            terms.append(t)
            if t < 1e-17 * abs(terms[0]) and k > x:
                break
        return math.fsum([EULER_GAMMA, math.log(x)] + terms)
    # asymptotic series, truncated at its smallest term
    s = 1.0
    term = 1.0
    for k in range(1, int(x)):
        new = term * k / x
        if new > term:
            break
        term = new
        s += term
        if term < 1e-17:
            break
    return math.exp(x) / x * s


def pochhammer(x, n):
    """Rising factorial (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = complex(x)
    p = 1.0 + 0j
    for k in range(n):
        p *= x + k
    return p


def kummer_1f1(a, b, x, tol=1e-17):
    """Confluent hypergeometric series sum_k (a)_k/(b)_k x^k/k!."""
    a, b, x = complex(a), complex(b), complex(x)
    if _near_nonpositive_integer(b):
        raise PoleError(f"1F1 undefined for b = {round(b.real)}", b)
    term = 1.0 + 0j
    s = term
    for k in range(_MAX_ITER):
        term = term * (a + k) / (b + k) * x / (k + 1)
        s += term
        if term == 0 or (abs(term) <= tol * abs(s) and abs((a + k) * x) < abs((b + k) * (k + 1))):
            return s
    raise ConvergenceError("1F1 series did not converge")


def _lower_gamma_series(a, x, logx):
    """gamma(a, x) = x^a e^{-x} sum_k x^k / (a)_{k+1}; entire in x."""
    term = 1.0 / a
    s = term
    for k in range(1, _MAX_ITER):
        term = term * x / (a + k)
        s += term
        if abs(term) <= 1e-17 * abs(s) and abs(x) < abs(a + k):
            return cmath.exp(a * logx - x) * s
    raise ConvergenceError("incomplete gamma series did not converge")


def _upper_gamma_cf(a, x, logx):
    """Legendre continued fraction for Gamma(a, x) (modified Lentz)."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b if b != 0 else 1.0 / tiny
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return cmath.exp(a * logx - x) * h
    raise ConvergenceError("incomplete gamma continued fraction did not converge")


def _expint_e1(x, logx):
    """Gamma(0, x) = E1(x) on the principal branch (arg x = +pi on the cut)."""
    if x.real > 0 and abs(x) >= 2.0:
        return _upper_gamma_cf(0j, x, logx)
    term = 1.0 + 0j
    s = 0j
    for k in range(1, _MAX_ITER):
        term = term * (-x) / k
        s += term / k
        if abs(term) <= 1e-17 * max(abs(s), 1e-300) and k > abs(x):
            return -EULER_GAMMA - logx - s
    raise ConvergenceError("E1 series did not converge")


def upper_incomplete_gamma(a, x, branch="upper"):
    """Gamma(a, x) = int_x^inf e^{-t} t^(a-1) dt, continued in a.

    Series (Gamma(a) - gamma(a, x)) for |x| < |a| + 1 or x off the right
    half-plane, continued fraction otherwise.  Non-positive integer ``a`` is
    reached from Gamma(0, x) by the recurrence
    Gamma(a, x) = (Gamma(a+1, x) - x^a e^{-x}) / a.
    """
    a, x = complex(a), complex(x)
    logx = None if x == 0 else branch_log(x, branch)
    if x == 0:
        if a.real > 0:
            return gamma(a)
        raise DomainError("Gamma(a, 0) diverges for Re a <= 0")
    if _near_nonpositive_integer(a):
        n = -round(a.real)
        g = _expint_e1(x, logx)
        for j in range(0, n):
            # step from order -j to -(j+1)
            g = (g - cmath.exp(-(j + 1) * logx - x)) / (-(j + 1))
        return g
    if x.real > 0 and abs(x) >= abs(a) + 1.0:
        return _upper_gamma_cf(a, x, logx)
    return kernels.gamma_lanczos(a) - _lower_gamma_series(a, x, logx)


def lower_incomplete_gamma(a, x, branch="upper"):
    """gamma(a, x) = int_0^x e^{-t} t^(a-1) dt by its power series."""
    a, x = complex(a), complex(x)
    if _near_nonpositive_integer(a):
        raise PoleError(f"gamma(a, x) has a pole at a = {round(a.real)}", a)
    if x == 0:
        if a.real > 0:
            return 0j
        raise DomainError("gamma(a, 0) needs Re a > 0")
    return _lower_gamma_series(a, x, branch_log(x, branch))


def pv_gamma_at_negative_integer(n):
    """Principal value of Gamma at z = -n: (-1)^n (-gamma + H_n) / n!."""
    if n < 0:
        raise ValueError("n must be non-negative")
    sign = -1.0 if n % 2 else 1.0
    return sign * (harmonic(n) - EULER_GAMMA) / math.factorial(n)


EI_ONE = ei(1.0)


@dataclass(frozen=True)
class Constants:
    euler_gamma: float = EULER_GAMMA
    e: float = math.e
    pi: float = math.pi
    ei_one: float = EI_ONE


CONSTANTS = Constants()
