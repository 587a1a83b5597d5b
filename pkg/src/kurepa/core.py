"""Evaluators for Kurepa's function K(z) and the companion solution K1(z).

K is the analytic continuation of the left factorial !n = 0! + ... + (n-1)!;
K1(z) = sum_{n>=0} Gamma(z - n).  Both satisfy F(z) - F(z-1) = Gamma(z).

Several independent representations are provided so that they can be checked
against one another (see :mod:`kurepa.xval`):

* ``Integral``   int_0^inf e^{-t} (t^z - 1)/(t - 1) dt, Re z > 0
* ``Recurrence`` integral at a shifted point plus a finite Gamma sum
* ``Slavic``     Ei(1)/e - (pi/e) cot(pi z) + K1(z)
* ``IncGamma``   (Ei(1) + i pi)/e + (-1)^z Gamma(1+z) Gamma(-z, -1)/e
"""
import decimal
import heapq
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ._backend import kernels
from . import special as sf
from .errors import ConvergenceError, DomainError, PoleError

POLE_TOL = sf.POLE_TOL
NEAR_POLE = 1e-3
REMOVABLE_DELTA = 1e-2
E = math.e
_EPS = 2.220446049250313e-16


class Method(str, Enum):
    INTEGRAL = "Integral"
    RECURRENCE = "Recurrence"
    SERIES = "Series"
    SLAVIC = "Slavic"
    INCGAMMA = "IncGamma"
    AUTO = "Auto"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        for m in cls:
            if m.value.lower() == str(text).lower():
                return m
        raise ValueError(f"unknown method {text!r}; choose from {[m.value for m in cls]}")


class Flag(str, Enum):
    NEAR_POLE = "NearPole"
    PRINCIPAL_VALUE_USED = "PrincipalValueUsed"
    REMOVABLE_SINGULARITY = "RemovableSingularity"


@dataclass(frozen=True)
class EvalResult:
    value: complex
    method: Method
    abs_error_estimate: float
    flags: frozenset = field(default_factory=frozenset)

    def to_dict(self):
        return {
            "value": [self.value.real, self.value.imag],
            "method": self.method.value,
            "abs_error_estimate": self.abs_error_estimate,
            "flags": sorted(f.value for f in self.flags),
        }


@dataclass(frozen=True)
class TailBoundParams:
    x: float
    y: float
    m: int
    case: str  # "D1" when Re z is not an integer, "D2" otherwise

    @property
    def min_terms(self):
        if self.case == "D1":
            return max(self.m + 2, 0)
        return max(self.m + 1, 0)


# --------------------------------------------------------------------------
# exact integers


def left_factorial_exact(n):
    """!n = sum_{i<n} i!, exactly; !0 = 0."""
    if n < 0:
        raise ValueError("n must be non-negative")
    total, fact = 0, 1
    for i in range(n):
        total += fact
        fact *= i + 1
    return total


def left_factorial_sequence(n_max):
    """[!0, !1, ..., !n_max]."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    out = [0]
    fact = 1
    for i in range(n_max):
        out.append(out[-1] + fact)
        fact *= i + 1
    return out


def left_factorial_decimal_strings(n_max):
    """Decimal digits of !0 .. !n_max.

    Built in ``decimal`` arithmetic (exact below its precision), since
    converting large Python ints to text is quadratic in the digit count.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    prec = int(math.lgamma(n_max + 1) / math.log(10)) + 20
    ctx = decimal.Context(prec=prec, Emax=decimal.MAX_EMAX,
                          traps=[decimal.Inexact, decimal.Overflow])
    total, fact = decimal.Decimal(0), decimal.Decimal(1)
    out = ["0"]
    for i in range(n_max):
        total = ctx.add(total, fact)
        out.append(str(total))
        fact = ctx.multiply(fact, i + 1)
    return out


# --------------------------------------------------------------------------
# pole bookkeeping


def _dist_to_int(z):
    return abs(z - round(z.real))


def kurepa_pole_distance(z):
    """Distance from z to the poles of K: -1, -3, -4, -5, ..."""
    z = complex(z)
    n = round(z.real)
    cands = [n - 1, n, n + 1]
    d = [abs(z - c) for c in cands if c == -1 or c <= -3]
    # the nearest admissible pole may lie beyond the neighbours when Re z >= 0
    d.append(abs(z + 1))
    return min(d)


def _is_kurepa_pole(z):
    n = round(z.real)
    return (n == -1 or n <= -3) and abs(z - n) <= POLE_TOL


def _finish(value, method, err, flags, dist):
    flags = set(flags)
    if dist < NEAR_POLE:
        flags.add(Flag.NEAR_POLE)
        err = err / max(dist, POLE_TOL)
    return EvalResult(complex(value), method, float(err), frozenset(flags))


# --------------------------------------------------------------------------
# K(z): integral


def _tanh_sinh_left(z, b, target):
    h = 0.5
    raw, rabs = kernels.kurepa_tanh_sinh(z, b, h, False)
    est = h * raw
    diff = math.inf
    for level in range(1, 9):
        h *= 0.5
        r2, a2 = kernels.kurepa_tanh_sinh(z, b, h, True)
        raw += r2
        rabs += a2
        new = h * raw
        diff = abs(new - est)
        est = new
        if level >= 3 and diff <= target:
            break
    else:
        if diff > 1e3 * target:
            raise ConvergenceError(f"tanh-sinh stalled at {diff:.3g} for z = {z}")
    return est, diff, h * rabs


def _adaptive_gk(z, a, b, target, max_panels=4000):
    edges = [a]
    x = 1.5
    while x < b:
        if x > a:
            edges.append(x)
        x *= 2.0
    edges.append(b)
    heap = []
    total_err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err, rabs = kernels.kurepa_gk15(z, lo, hi, REMOVABLE_DELTA)
        heapq.heappush(heap, (-err, lo, hi, val, rabs))
        total_err += err
    floor = 0.0
    while total_err > max(target, floor):
        if len(heap) > max_panels:
            raise ConvergenceError(f"adaptive quadrature exceeded {max_panels} panels")
        neg, lo, hi, _, _ = heapq.heappop(heap)
        total_err += neg
        mid = 0.5 * (lo + hi)
        for p, q in ((lo, mid), (mid, hi)):
            val, err, rabs = kernels.kurepa_gk15(z, p, q, REMOVABLE_DELTA)
            heapq.heappush(heap, (-err, p, q, val, rabs))
            total_err += err
        floor = 64 * _EPS * sum(item[4] for item in heap)
    value = sum(item[3] for item in heap)
    absint = sum(item[4] for item in heap)
    return value, total_err, absint


def kurepa_integral(z, tol=1e-12):
    """K(z) for Re z > 0 by direct quadrature of e^{-t}(t^z - 1)/(t - 1).

    [0, 1-d] uses tanh-sinh (absorbs the t^z branch point at 0),
    [1-d, 1+d] a Gauss-Kronrod panel on the binomial series of the removable
    point, [1+d, T] adaptive Gauss-Kronrod, and the tail beyond
    T = 40 + 2|z| is bounded analytically.
    """
    z = complex(z)
    if z.real <= 0:
        raise DomainError(f"integral representation needs Re z > 0, got {z}")
    d = REMOVABLE_DELTA
    T = 40.0 + 2.0 * abs(z)
    # split the budget between the three pieces
    left, e_left, a_left = _tanh_sinh_left(z, 1.0 - d, tol / 3)
    mid, e_mid, a_mid = kernels.kurepa_gk15(z, 1.0 - d, 1.0 + d, d)
    right, e_right, a_right = _adaptive_gk(z, 1.0 + d, T, tol / 3)
    tail = 2.0 * math.exp(-T) * (T ** z.real + 1.0) / (T - 1.0)
    value = left + mid + right
    err = e_left + e_mid + e_right + tail + 16 * _EPS * (a_left + a_mid + a_right)
    return _finish(value, Method.INTEGRAL, err, {Flag.REMOVABLE_SINGULARITY},
                   kurepa_pole_distance(z))


# --------------------------------------------------------------------------
# K(z): recurrence continuation


def _kurepa_recurrence(z, tol):
    k = math.floor(1.5 - z.real)
    base = kurepa_integral(z + k, tol)
    if k > 0:
        terms = [sf.gamma(z + j) for j in range(1, k + 1)]
        value = base.value - sum(terms)
    elif k < 0:
        terms = [sf.gamma(z - j) for j in range(0, -k)]
        value = base.value + sum(terms)
    else:
        terms = []
        value = base.value
    scale = abs(base.value) + sum(abs(t) for t in terms)
    err = base.abs_error_estimate + 8 * _EPS * (abs(k) + 1) * scale
    return value, err


def kurepa(z, method=Method.AUTO, tol=1e-12):
    """Evaluate Kurepa's function K(z).

    Auto picks Slavic when |Im z| > 8, Integral when Re z > 0 and Recurrence
    otherwise.  K has simple poles at z = -1 and z = -3, -4, ...; z = -2 is a
    removable point where K(-2) = 1.
    """
    z = complex(z)
    method = Method.parse(method) if not isinstance(method, Method) else method
    if _is_kurepa_pole(z):
        n = round(z.real)
        raise PoleError(
            f"K has a simple pole at z = {n}; use residue_kurepa({-n}) or pv_kurepa({n})", n)
    if abs(z + 2) <= POLE_TOL:
        resolved = Method.RECURRENCE if method is Method.AUTO else method
        return EvalResult(1.0 + 0j, resolved, 0.0, frozenset({Flag.REMOVABLE_SINGULARITY}))
    if method is Method.AUTO:
        if abs(z.imag) > 8.0 and _dist_to_int(z) > POLE_TOL:
            method = Method.SLAVIC
        elif z.real > 0:
            method = Method.INTEGRAL
        else:
            method = Method.RECURRENCE
    if method is Method.INTEGRAL:
        return kurepa_integral(z, tol)
    if method is Method.RECURRENCE:
        value, err = _kurepa_recurrence(z, tol)
        return _finish(value, Method.RECURRENCE, err, {Flag.REMOVABLE_SINGULARITY},
                       kurepa_pole_distance(z))
    if method in (Method.SLAVIC, Method.SERIES):
        return kurepa_slavic(z, tol)
    if method is Method.INCGAMMA:
        return kurepa_incgamma(z)
    raise ValueError(f"unsupported method {method}")


# --------------------------------------------------------------------------
# K1(z): the Gamma series and its tail bound


def tail_bound_params(z):
    z = complex(z)
    x, y = z.real, z.imag
    if x == math.floor(x):
        if y == 0.0:
            raise PoleError(f"K1 has a pole at z = {int(x)}", int(x))
        return TailBoundParams(x, y, int(x), "D2")
    return TailBoundParams(x, y, math.floor(x), "D1")


def _inv_factorial(j):
    return math.exp(-math.lgamma(j + 1.0))


def k1_tail_bound(z, N):
    """Upper bound on |sum_{n>=N} Gamma(z - n)|.

    Re z not an integer:  pi/|sin(pi x)| * 2/(N-m-1)!, with m = floor(Re z).
    Re z integer m, Im z = y != 0:  sqrt(pi/(y sinh(pi y))) * 2/(N-m)!.
    The factor 2 bounds the reciprocal-factorial tail sum_{j>=J} 1/j! <= 2/J!.
    """
    p = tail_bound_params(z)
    if N < p.min_terms:
        raise DomainError(f"tail bound needs N >= {p.min_terms} for z = {complex(z)}")
    if p.case == "D1":
        s = abs(math.sin(math.pi * (p.x - round(p.x))))
        return math.pi / s * 2.0 * _inv_factorial(N - p.m - 1)
    y = abs(p.y)
    if math.pi * y > 700:
        pref = math.sqrt(2.0 * math.pi / y) * math.exp(-0.5 * math.pi * y)
    else:
        pref = math.sqrt(math.pi / (y * math.sinh(math.pi * y)))
    return pref * 2.0 * _inv_factorial(N - p.m)


def k1_terms_needed(z, tol):
    p = tail_bound_params(z)
    N = p.min_terms
    while k1_tail_bound(z, N) > tol:
        N += 1
        if N > 100000:
            raise ConvergenceError("K1 series would need more than 1e5 terms")
    return N


def k1_series(z, tol=1e-15):
    """K1(z) = sum_{n>=0} Gamma(z - n), truncated where the tail bound <= tol."""
    z = complex(z)
    if _dist_to_int(z) <= POLE_TOL:
        n = round(z.real)
        raise PoleError(f"K1 has a pole at z = {n}; use pv_k1({n}) or residue_k1({n})", n)
    N = k1_terms_needed(z, tol)
    total, mag = kernels.k1_partial_sum(z, sf.gamma(z), N)
    err = k1_tail_bound(z, N) + _EPS * (N + 2) * mag
    return _finish(total, Method.SERIES, err, (), _dist_to_int(z))


def _integer_guard(z, name):
    """Both non-integral forms of K break down at every integer, poles or not."""
    if _dist_to_int(z) > POLE_TOL:
        return
    n = round(z.real)
    if _is_kurepa_pole(z):
        raise PoleError(f"K has a simple pole at z = {n}; use residue_kurepa({-n}) or pv_kurepa({n})", n)
    raise DomainError(f"the {name} form is undefined at integer z = {n}; use Auto, Integral or Recurrence")


def kurepa_slavic(z, tol=1e-13):
    """K(z) = Ei(1)/e - (pi/e) cot(pi z) + K1(z) for non-integer z."""
    z = complex(z)
    _integer_guard(z, "Slavic")
    k1 = k1_series(z, tol)
    cot_term = (math.pi / E) * sf.cot_pi(z)
    const = sf.EI_ONE / E
    value = const - cot_term + k1.value
    err = k1.abs_error_estimate + 8 * _EPS * (const + abs(cot_term) + abs(k1.value))
    return _finish(value, Method.SLAVIC, err, (), kurepa_pole_distance(z))


# --------------------------------------------------------------------------
# incomplete-gamma representations


def _incgamma_block(z):
    """(-1)^z Gamma(1+z) Gamma(-z, -1) / e and a rounding scale for it."""
    if _dist_to_int(z) <= POLE_TOL:
        n = round(z.real)
        raise PoleError(f"incomplete-gamma form is singular at integer z = {n}", n)
    p = sf.minus_one_pow(z)
    g1 = sf.gamma(1.0 + z)
    ug = sf.upper_incomplete_gamma(-z, -1.0 + 0j)
    # Gamma(-z, -1) = Gamma(-z) - gamma(-z, -1): both pieces set the rounding scale
    scale = abs(p) * abs(g1) * (abs(sf.gamma(-z)) + abs(ug)) / E
    return p * g1 * ug / E, p, scale


def kurepa_incgamma(z):
    """K(z) = (Ei(1) + i pi)/e + (-1)^z Gamma(1+z) Gamma(-z, -1)/e."""
    z = complex(z)
    _integer_guard(z, "incomplete-gamma")
    block, _, scale = _incgamma_block(z)
    const = complex(sf.EI_ONE, math.pi) / E
    value = const + block
    err = 64 * _EPS * (abs(const) + scale)
    return _finish(value, Method.INCGAMMA, err, (), kurepa_pole_distance(z))


def k1_incgamma(z):
    """K1(z) = (-1)^z pi/(e sin(pi z)) + (-1)^z Gamma(1+z) Gamma(-z, -1)/e."""
    z = complex(z)
    block, p, scale = _incgamma_block(z)
    first = p * math.pi / (E * sf.sin_pi(z))
    value = first + block
    err = 64 * _EPS * (abs(first) + scale)
    return _finish(value, Method.INCGAMMA, err, (), _dist_to_int(z))


def k1(z, method=Method.AUTO, tol=1e-15):
    """Evaluate K1(z) by the chosen representation.

    Series (the default) sums the Gamma series, IncGamma uses the
    incomplete-gamma form and every other method evaluates K by that method
    and converts with K1 = K - Ei(1)/e + (pi/e) cot(pi z).
    """
    z = complex(z)
    method = Method.parse(method) if not isinstance(method, Method) else method
    if _dist_to_int(z) <= POLE_TOL:
        n = round(z.real)
        raise PoleError(f"K1 has a pole at z = {n}; use pv_k1({n}) or residue_k1({n})", n)
    if method in (Method.AUTO, Method.SERIES):
        return k1_series(z, tol)
    if method is Method.INCGAMMA:
        return k1_incgamma(z)
    if method is Method.SLAVIC:
        kres = kurepa(z, Method.AUTO, max(tol, 1e-12))
    else:
        kres = kurepa(z, method, max(tol, 1e-12))
    shift = (math.pi / E) * sf.cot_pi(z) - sf.EI_ONE / E
    value = kres.value + shift
    err = kres.abs_error_estimate + 8 * _EPS * (abs(shift) + abs(kres.value))
    return _finish(value, method, err, kres.flags - {Flag.NEAR_POLE}, _dist_to_int(z))


# --------------------------------------------------------------------------
# principal values, residues, L1


def _l1_terms():
    terms = []
    for n in range(0, 200):
        t = -sf.pv_gamma_at_negative_integer(n)
        terms.append(t)
        if abs(t) < 1e-16:
            break
    return terms


_L1 = math.fsum(_l1_terms())


def l1_constant():
    """L1 = sum_{n>=0} (-1)^{n+1} (-gamma + H_n)/n!  (~ 0.697174883)."""
    return _L1


def l1_partial_sum(N):
    """sum_{n=0}^{N-1} of the L1 series."""
    return math.fsum(-sf.pv_gamma_at_negative_integer(n) for n in range(N))


def pv_kurepa(m):
    """Principal value of K at the integer point m.

    For m = -n <= -1 this is -sum_{i<n} p.v. Gamma(-i); regular points return
    the ordinary value K(m) (and K(-2) = 1 exactly).
    """
    m = int(m)
    if m >= 0:
        return float(left_factorial_exact(m))
    if m == -2:
        return 1.0
    return math.fsum(-sf.pv_gamma_at_negative_integer(i) for i in range(-m))


def pv_k1(n):
    """Principal value of K1 at the integer point n: p.v. K(n) - L1."""
    return pv_kurepa(n) - l1_constant()


def residue_kurepa(n):
    """Residue of K at z = -n (n >= 1); zero at the removable point n = 2."""
    n = int(n)
    if n < 1:
        raise ValueError("K is regular at z = -n for n < 1")
    if n == 1:
        return -1.0
    s = sum((Fraction((-1) ** (k - 1), math.factorial(k)) for k in range(2, n)), Fraction(0))
    return float(s)


def residue_k1(m):
    """Residue of K1 at the integer m: 1/e + res_{z=m} K(z)."""
    m = int(m)
    res_k = residue_kurepa(-m) if (m <= -1 and m != -2) else 0.0
    return 1.0 / E + res_k


def numerical_residue(f, m, eps=(1e-4, 5e-5, 2.5e-5)):
    """Richardson-extrapolated lim eps*f(m + eps) at a simple pole m."""
    m = complex(m)
    g = []
    for e in eps:
        zp = m + e
        g.append((zp - m) * complex(f(zp)))  # the offset actually represented
    r = eps[0] / eps[1]
    first = [(r * g[i + 1] - g[i]) / (r - 1.0) for i in range(len(g) - 1)]
    r2 = r * r
    second = (r2 * first[1] - first[0]) / (r2 - 1.0)
    if abs(second - first[-1]) > 1e-3:
        raise ConvergenceError(f"residue extrapolants disagree at {m}")
    return second


def symmetric_limit(f, a, eps=(1e-3, 1e-4, 1e-5)):
    """Extrapolated lim (f(a - eps) + f(a + eps))/2, the p.v. at a simple pole.

    a +- eps are generally not symmetric in floating point, and near the pole
    f' ~ 1/eps^2 turns that rounding into O(1e-6) errors at eps = 1e-5.  The
    represented offsets e+, e- are therefore used in the weighted average
    (e+ f(a+e+) + e- f(a-e-))/(e+ + e-), which cancels the residue exactly
    and reduces to the plain average when e+ == e-.
    """
    a = complex(a)
    g = []
    for e in eps:
        zp, zm = a + e, a - e
        ep, em = zp - a, a - zm
        g.append((ep * complex(f(zp)) + em * complex(f(zm))) / (ep + em))
    r = (eps[0] / eps[1]) ** 2
    first = [(r * g[i + 1] - g[i]) / (r - 1.0) for i in range(len(g) - 1)]
    r2 = r * r
    return (r2 * first[1] - first[0]) / (r2 - 1.0)
