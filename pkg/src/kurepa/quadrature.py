"""Generic double-exponential quadrature for Python callables.

The Kurepa integrand has its own compiled kernels; this module serves the
slower oracles (principal-value integrals in :mod:`kurepa.xval`).
"""
import math

from .errors import ConvergenceError

_UMAX = 4.0


def _level_sum(f, a, b, h, odd_only):
    width = b - a
    total = 0j
    absum = 0.0
    if not odd_only:
        w0 = 0.5 * width * 0.5 * math.pi
        f0 = complex(f(a + 0.5 * width))
        total += w0 * f0
        absum += w0 * abs(f0)
    k = 1
    step = 2 if odd_only else 1
    while k * h <= _UMAX:
        u = k * h
        s = 0.5 * math.pi * math.sinh(u)
        e = math.exp(-2.0 * s)
        d = width * e / (1.0 + e)
        if d == 0.0:
            break
        w = 0.5 * width * 0.5 * math.pi * math.cosh(u) * 4.0 * e / (1.0 + e) ** 2
        f1 = complex(f(a + d))
        f2 = complex(f(b - d))
        total += w * (f1 + f2)
        absum += w * (abs(f1) + abs(f2))
        k += step
    return total, absum


def tanh_sinh(f, a, b, tol=1e-14, max_level=9):
    """Integrate f over [a, b]; tolerates integrable endpoint singularities.

    Nodes are placed by their distance from the nearer endpoint, so f is
    never evaluated at the endpoints themselves.  Returns ``(value, error)``
    where the error is the change from the previous halving of the step.
    """
    h = 0.5
    raw, absum = _level_sum(f, a, b, h, False)
    est = h * raw
    diff = math.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        r2, a2 = _level_sum(f, a, b, h, True)
        raw += r2
        absum += a2
        new = h * raw
        diff = abs(new - est)
        est = new
        if level >= 3 and diff <= max(tol, 1e-15 * h * absum):
            return est, diff
    if diff > 1e-8 * (1.0 + abs(est)):
        raise ConvergenceError(f"tanh-sinh did not converge (last change {diff:.3g})")
    return est, diff
