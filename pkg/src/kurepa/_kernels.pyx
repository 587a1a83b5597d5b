# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; mirrors :mod:`kurepa._kernels_py` function for function."""
from libc.math cimport exp, log, cos, sin, sinh, cosh, fabs, sqrt, M_PI, round as cround
from libc.complex cimport cexp, clog, csin, cabs

cdef double LANCZOS_G = 607.0 / 128.0
cdef double LANCZOS_COEF[15]
LANCZOS_COEF[:] = [
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
]

cdef double GK15_NODES[8]
GK15_NODES[:] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
]
cdef double GK15_WK[8]
GK15_WK[:] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
]
cdef double GK15_WG[4]
GK15_WG[:] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
]

cdef double TS_UMAX = 4.0


cdef double complex _sin_pi(double complex z) noexcept nogil:
    cdef double k = cround(z.real)
    cdef double complex s = csin(M_PI * (z - k))
    if <long long>k % 2 != 0:
        return -s
    return s


cdef double complex _gamma(double complex z) noexcept nogil:
    cdef double complex x, t
    cdef int i
    if z.real < 0.5:
        return M_PI / (_sin_pi(z) * _gamma(1.0 - z))
    z = z - 1.0
    x = LANCZOS_COEF[0]
    for i in range(1, 15):
        x = x + LANCZOS_COEF[i] / (z + i)
    t = z + LANCZOS_G + 0.5
    return sqrt(2.0 * M_PI) * cexp((z + 0.5) * clog(t) - t) * x


cdef double complex _integrand(double complex z, double t, double delta) noexcept nogil:
    cdef double u = t - 1.0
    cdef double complex term, s
    cdef double lt, mag, ang
    cdef int k
    if fabs(u) < delta:
        term = z
        s = term
        for k in range(1, 80):
            term = term * (z - k) / (k + 1) * u
            s = s + term
            if cabs(term) <= 1e-17 * cabs(s):
                break
        return exp(-t) * s
    if t <= 0.0:
        return 1.0
    lt = log(t)
    mag = exp(z.real * lt - t)
    ang = z.imag * lt
    return ((mag * cos(ang) - exp(-t)) + 1j * (mag * sin(ang))) / u


def sin_pi(z):
    return _sin_pi(complex(z))


def gamma_lanczos(z):
    return _gamma(complex(z))


def kurepa_integrand(z, double t, double delta):
    return _integrand(complex(z), t, delta)


def k1_partial_sum(z, gz, long n_terms):
    cdef double complex zz = complex(z)
    cdef double complex term = complex(gz)
    cdef double complex total = 0
    cdef double mag = 0.0
    cdef long n
    with nogil:
        for n in range(n_terms):
            total = total + term
            mag += cabs(term)
            term = term / (zz - n - 1)
    return complex(total), mag


def kurepa_gk15(z, double a, double b, double delta):
    cdef double complex zz = complex(z)
    cdef double c = 0.5 * (a + b)
    cdef double hl = 0.5 * (b - a)
    cdef double complex fc, f1, f2, rk, rg
    cdef double rabs, dx
    cdef int j
    with nogil:
        fc = _integrand(zz, c, delta)
        rk = fc * GK15_WK[7]
        rg = fc * GK15_WG[3]
        rabs = cabs(fc) * GK15_WK[7]
        for j in range(7):
            dx = hl * GK15_NODES[j]
            f1 = _integrand(zz, c - dx, delta)
            f2 = _integrand(zz, c + dx, delta)
            rk = rk + (f1 + f2) * GK15_WK[j]
            rabs += (cabs(f1) + cabs(f2)) * GK15_WK[j]
            if j % 2 == 1:
                rg = rg + (f1 + f2) * GK15_WG[j // 2]
    return complex(rk * hl), cabs((rk - rg) * hl), rabs * fabs(hl)


def kurepa_tanh_sinh(z, double b, double h, bint odd_only):
    cdef double complex zz = complex(z)
    cdef double complex total = 0, f0, f1, f2
    cdef double absum = 0.0, w0, u, s, e, d, w
    cdef long k, step
    with nogil:
        if odd_only:
            step = 2
        else:
            step = 1
            w0 = 0.5 * b * (0.5 * M_PI)
            f0 = _integrand(zz, 0.5 * b, 0.0)
            total = w0 * f0
            absum = w0 * cabs(f0)
        k = 1
        while True:
            u = k * h
            if u > TS_UMAX:
                break
            s = 0.5 * M_PI * sinh(u)
            e = exp(-2.0 * s)
            d = b * e / (1.0 + e)
            w = 0.5 * b * (0.5 * M_PI) * cosh(u) * 4.0 * e / ((1.0 + e) * (1.0 + e))
            f1 = _integrand(zz, d, 0.0)
            f2 = _integrand(zz, b - d, 0.0)
            total = total + w * (f1 + f2)
            absum += w * (cabs(f1) + cabs(f2))
            k += step
    return complex(total), absum
