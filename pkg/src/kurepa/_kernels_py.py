"""Pure-Python implementations of the numerical hot loops.

This module is the fallback twin of the compiled ``_kernels`` extension and
must keep exactly the same function signatures and semantics.  No argument
validation happens here; callers in :mod:`kurepa.special` and
:mod:`kurepa.core` check poles and domains first.
"""
import cmath
import math

# Godfrey's coefficients, g = 607/128, 15 terms.
LANCZOS_G = 607.0 / 128.0
LANCZOS_COEF = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# 15-point Kronrod nodes (positive half) and weights, with embedded 7-point Gauss.
GK15_NODES = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)
GK15_WK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)
# Gauss weights for nodes 1, 3, 5 and the centre.
GK15_WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)

TS_UMAX = 4.0


def sin_pi(z):
    """sin(pi*z) with the real part reduced to [-1/2, 1/2] first."""
    k = round(z.real)
    s = cmath.sin(math.pi * (z - k))
    return -s if k % 2 else s


def gamma_lanczos(z):
    z = complex(z)
    if z.real < 0.5:
        return math.pi / (sin_pi(z) * gamma_lanczos(1.0 - z))
    z -= 1.0
    x = LANCZOS_COEF[0]
    for i in range(1, len(LANCZOS_COEF)):
        x += LANCZOS_COEF[i] / (z + i)
    t = z + LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def k1_partial_sum(z, gz, n_terms):
    """Sum Gamma(z - n) for n < n_terms by downward recurrence from gz = Gamma(z).

    Returns ``(sum, sum of magnitudes)``.
    """
    z = complex(z)
    term = complex(gz)
    total = 0j
    mag = 0.0
    for n in range(n_terms):
        total += term
        mag += abs(term)
        term = term / (z - n - 1)
    return total, mag


def kurepa_integrand(z, t, delta):
    """e^{-t} (t^z - 1)/(t - 1), with a binomial series for |t - 1| < delta."""
    u = t - 1.0
    if abs(u) < delta:
        # (t^z - 1)/u = sum_{k>=1} binom(z, k) u^(k-1)
        term = complex(z)
        s = term
        for k in range(1, 80):
            term = term * (z - k) / (k + 1) * u
            s += term
            if abs(term) <= 1e-17 * abs(s):
                break
        return math.exp(-t) * s
    if t <= 0.0:
        return 1.0 + 0j
    lt = math.log(t)
    mag = math.exp(z.real * lt - t)
    ang = z.imag * lt
    tz = complex(mag * math.cos(ang), mag * math.sin(ang))
    return (tz - math.exp(-t)) / u


def kurepa_gk15(z, a, b, delta):
    """Gauss-Kronrod 15-point rule for the Kurepa integrand on [a, b].

    Returns ``(kronrod estimate, |kronrod - gauss|, integral of |f|)``.
    """
    z = complex(z)
    c = 0.5 * (a + b)
    hl = 0.5 * (b - a)
    fc = kurepa_integrand(z, c, delta)
    rk = fc * GK15_WK[7]
    rg = fc * GK15_WG[3]
    rabs = abs(fc) * GK15_WK[7]
    for j in range(7):
        dx = hl * GK15_NODES[j]
        f1 = kurepa_integrand(z, c - dx, delta)
        f2 = kurepa_integrand(z, c + dx, delta)
        rk += (f1 + f2) * GK15_WK[j]
        rabs += (abs(f1) + abs(f2)) * GK15_WK[j]
        if j % 2 == 1:
            rg += (f1 + f2) * GK15_WG[j // 2]
    return rk * hl, abs((rk - rg) * hl), rabs * abs(hl)


def kurepa_tanh_sinh(z, b, h, odd_only):
    """Raw tanh-sinh node sum for the Kurepa integrand on [0, b].

    Nodes are u = k*h for |u| <= TS_UMAX; with ``odd_only`` only odd k are
    visited (the refinement nodes of a halved step).  The caller multiplies
    the returned sums by h.  Returns ``(sum w*f, sum w*|f|)``.
    """
    z = complex(z)
    total = 0j
    absum = 0.0
    if odd_only:
        k = 1
    else:
        w0 = 0.5 * b * (0.5 * math.pi)
        f0 = kurepa_integrand(z, 0.5 * b, 0.0)
        total = w0 * f0
        absum = w0 * abs(f0)
        k = 1
    step = 2 if odd_only else 1
    while True:
        u = k * h
        if u > TS_UMAX:
            break
        s = 0.5 * math.pi * math.sinh(u)
        e = math.exp(-2.0 * s)
        d = b * e / (1.0 + e)
        w = 0.5 * b * (0.5 * math.pi) * math.cosh(u) * 4.0 * e / ((1.0 + e) * (1.0 + e))
        f1 = kurepa_integrand(z, d, 0.0)
        f2 = kurepa_integrand(z, b - d, 0.0)
        total += w * (f1 + f2)
        absum += w * (abs(f1) + abs(f2))
        k += step
    return total, absum
