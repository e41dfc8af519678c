"""Independent oracles: brute-force quadratures and series expansions.

Nothing here touches the package's quadrature or Bessel machinery; these are
the reference routes the implementation is checked against.
"""

import math

import numpy as np


def simpson(f, a, b, n=4096):
    """Composite Simpson rule with n (even) intervals."""
    if n % 2:
        n += 1
    x = np.linspace(a, b, n + 1)
    y = np.asarray(f(x), dtype=float)
    h = (b - a) / n
    return h / 3.0 * (y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2])
                      + 2.0 * np.sum(y[2:-1:2]))


def i0e_series(x, terms=30):
    """e^{-x} sum_k (x/2)^{2k}/(k!)^2, accurate for small x."""
    total = 0.0
    for k in range(terms):
        total += (x / 2.0) ** (2 * k) / math.factorial(k) ** 2
    return math.exp(-x) * total


def i1e_series(x, terms=30):
    """e^{-x} sum_k (x/2)^{2k+1}/(k! (k+1)!), accurate for small x."""
    total = 0.0
    for k in range(terms):
        total += (x / 2.0) ** (2 * k + 1) / (math.factorial(k)
                                             * math.factorial(k + 1))
    return math.exp(-x) * total


def i0e_asymptotic(x):
    """Three-term large-x expansion 1/sqrt(2 pi x) (1 + 1/8x + 9/128x^2).

    Truncation is ~(225/3072) x^{-3}/sqrt(2 pi x): about 3.4e-8 at x = 50,
    2.6e-10 at x = 200.
    """
    return (1.0 + 1.0 / (8.0 * x) + 9.0 / (128.0 * x * x)) / math.sqrt(
        2.0 * math.pi * x)


def _gl(n):
    return np.polynomial.legendre.leggauss(n)


def heat2d_direct(f, t, r, theta_nodes=256, rho_panels=96):
    """Direct polar quadrature of the 2D Gaussian convolution:
    int_0^inf int_0^2pi (4 pi t)^{-1} e^{-(r^2+rho^2-2 r rho cos th)/4t}
    f(rho) rho dth drho."""
    xs, ws = _gl(theta_nodes)
    theta = math.pi * (xs + 1.0)          # map to (0, 2pi)/2 then double
    wt = math.pi * ws                     # half-circle, doubled below
    hi = r + 14.0 * math.sqrt(t)
    xs_r, ws_r = _gl(32)
    edges = np.linspace(0.0, hi, rho_panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        rho = c + h * xs_r
        frho = np.asarray(f(rho), dtype=float)
        # exploit cos symmetry: integrate theta over (0, pi), doubled
        expo = -(r * r + rho[:, None] ** 2
                 - 2.0 * r * rho[:, None] * np.cos(theta)[None, :]) / (4.0 * t)
        inner = (np.exp(expo) @ wt)
        total += h * float(np.dot(ws_r, frho * rho * inner))
    return total / (4.0 * math.pi * t)


def heat4d_direct(g, t, r, theta_nodes=256, rho_panels=96):
    """Direct reduced quadrature of the 4D Gaussian convolution:
    int_0^inf int_0^pi g(rho) (4 pi t)^{-2} e^{-(r^2+rho^2-2 r rho cos th)/4t}
    4 pi rho^3 sin^2 th dth drho."""
    xs, ws = _gl(theta_nodes)
    theta = 0.5 * math.pi * (xs + 1.0)
    wt = 0.5 * math.pi * ws
    sin2 = np.sin(theta) ** 2
    hi = r + 14.0 * math.sqrt(t)
    xs_r, ws_r = _gl(32)
    edges = np.linspace(0.0, hi, rho_panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        rho = c + h * xs_r
        grho = np.asarray(g(rho), dtype=float)
        expo = -(r * r + rho[:, None] ** 2
                 - 2.0 * r * rho[:, None] * np.cos(theta)[None, :]) / (4.0 * t)
        inner = np.exp(expo) @ (wt * sin2)
        total += h * float(np.dot(ws_r, grho * rho ** 3 * inner))
    return total * 4.0 * math.pi / (4.0 * math.pi * t) ** 2


def heat2d_origin_piecewise(pieces, t, n=20001):
    """Origin value of the 2D heat evolution of a piecewise profile given as
    (rho_lo, rho_hi, value_fn) pieces: Simpson per piece, clipped to the
    kernel window."""
    hi_window = 14.0 * math.sqrt(t)
    total = 0.0
    for lo, hi, fn in pieces:
        a= max(0.0, lo)
        b = min(hi, hi_window)
        if b <= a:
            continue
        def integrand(rho, fn=fn):
            return fn(rho) * (rho / (2.0 * t)) * np.exp(-rho * rho / (4.0 * t))
        total += simpson(integrand, a, b, n)
    return total
