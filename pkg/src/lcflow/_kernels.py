"""Hot numeric kernels: Bessel-weighted heat-kernel panel sums and the
Crank-Nicolson stepper.

Two implementations of the panel sums exist: a scalar @njit version working on
lowered profile descriptors (used when numba is active and the profile is a
closed form, table, or staircase) and a vectorized numpy version (fallback
backend, and always used for callable profiles). Both accumulate panels in
ascending order; per-panel sums differ only in float associativity.
"""

import math

import numpy as np

from ._backend import USING_NUMBA, njit
from .profiles import (KIND_CONST, KIND_GAUSS2, KIND_RHO_GAUSS2,
                       KIND_STAIR_LOG, KIND_TABLE, KIND_TANH, POST_FMAP)
from .quadrature import gauss_legendre_rule
from .special import bessel_i0e, bessel_i1e, bessel_i1e_over_x
from .special import i0e_scalar, i1e_over_x_scalar, i1e_scalar


@njit
def _profile_scalar(rho, kind, fp, xs, ys, post, post_c):
    if kind == KIND_CONST:
        v = fp[0]
    elif kind == KIND_GAUSS2:
        v = (fp[0] + fp[1] * math.exp(-(rho / fp[2]) ** 2)
             + fp[3] * math.exp(-(rho / fp[4]) ** 2))
    elif kind == KIND_TANH:
        v = fp[0] + fp[1] * 0.5 * (1.0 + math.tanh((rho - fp[2]) / fp[3]))
    elif kind == KIND_RHO_GAUSS2:
        v = rho * (fp[0] * math.exp(-(rho / fp[1]) ** 2)
                   + fp[2] * math.exp(-(rho / fp[3]) ** 2))
    elif kind == KIND_TABLE:
        if rho <= xs[0]:
            v = ys[0]
        elif rho >= xs[-1]:
            v = fp[0]
        else:
            j = np.searchsorted(xs, rho) - 1
            w = (rho - xs[j]) / (xs[j + 1] - xs[j])
            v = ys[j] + w * (ys[j + 1] - ys[j])
    elif kind == KIND_STAIR_LOG:
        if rho <= 0.0:
            v = ys[0]
        else:
            s = math.log(rho)
            if s <= xs[0]:
                v = ys[0]
            elif s >= xs[-1]:
                v = ys[-1]
            else:
                j = np.searchsorted(xs, s) - 1
                w = (s - xs[j]) / (xs[j + 1] - xs[j])
                v = ys[j] + w * (ys[j + 1] - ys[j])
    else:
        v = math.nan
    if post == POST_FMAP:
        v = math.acos(post_c * math.cos(v))
    return v


@njit
def _heat_weight_scalar(rho, t, r, dim):
    gauss = math.exp(-((r - rho) ** 2) / (4.0 * t))
    z = r * rho / (2.0 * t)
    if dim == 2:
        return (rho / (2.0 * t)) * gauss * i0e_scalar(z)
    q = rho / (2.0 * t)
    return rho * q * q * gauss * i1e_over_x_scalar(z)


@njit
def heat_panels_desc(edges, t, r, dim, kind, fp, xs, ys, post, post_c,
                     gx_hi, gw_hi, gx_lo, gw_lo):
    """Per-panel high-order values and |high - low| error estimates."""
    n = edges.shape[0] - 1
    vals = np.empty(n)
    errs = np.empty(n)
    for i in range(n):
        a = edges[i]
        b = edges[i + 1]
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        s_hi = 0.0
        for j in range(gx_hi.shape[0]):
            rho = c + h * gx_hi[j]
            f = _profile_scalar(rho, kind, fp, xs, ys, post, post_c)
            s_hi += gw_hi[j] * f * _heat_weight_scalar(rho, t, r, dim)
        s_lo = 0.0
        for j in range(gx_lo.shape[0]):
            rho = c + h * gx_lo[j]
            f = _profile_scalar(rho, kind, fp, xs, ys, post, post_c)
            s_lo += gw_lo[j] * f * _heat_weight_scalar(rho, t, r, dim)
        vals[i] = h * s_hi
        errs[i] = abs(h * (s_hi - s_lo))
    return vals, errs


@njit
def heat2d_panels_deriv_desc(edges, t, r, kind, fp, xs, ys, post, post_c,
                             gx, gw):
    """Fused 2D convolution and its radial derivative (single pass, no error
    estimate; used by the pressure integrand on sub-checkpoint panels)."""
    n = edges.shape[0] - 1
    val = 0.0
    dval = 0.0
    for i in range(n):
        a = edges[i]
        b = edges[i + 1]
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        sv = 0.0
        sd = 0.0
        for j in range(gx.shape[0]):
            rho = c + h * gx[j]
            f = _profile_scalar(rho, kind, fp, xs, ys, post, post_c)
            z = r * rho / (2.0 * t)
            gauss = math.exp(-((r - rho) ** 2) / (4.0 * t))
            i0 = i0e_scalar(z)
            base = (rho / (2.0 * t)) * gauss
            sv += gw[j] * f * base * i0
            dw = base * (-(r - rho) / (2.0 * t) * i0
                         + (rho / (2.0 * t)) * (i1e_scalar(z) - i0))
            sd += gw[j] * f * dw
        val += h * sv
        dval += h * sd
    return val, dval


def _heat_weight_vec(rho, t, r, dim):
    gauss = np.exp(-((r - rho) ** 2) / (4.0 * t))
    z = r * rho / (2.0 * t)
    if dim == 2:
        return (rho / (2.0 * t)) * gauss * bessel_i0e(z)
    q = rho / (2.0 * t)
    return rho * q * q * gauss * bessel_i1e_over_x(z)


def heat_panels_vec(edges, t, r, dim, profile):
    """numpy implementation of heat_panels_desc for arbitrary profiles."""
    a = edges[:-1]
    b = edges[1:]
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    out = []
    for gx, gw in (gauss_legendre_rule(64), gauss_legendre_rule(32)):
        nodes = c[:, None] + h[:, None] * gx[None, :]
        flat = nodes.ravel()
        f = np.asarray(profile(flat), dtype=float)
        w = _heat_weight_vec(flat, t, r, dim)
        vals = h * ((f * w).reshape(nodes.shape) @ gw)
        out.append(vals)
    return out[0], np.abs(out[0] - out[1])


def heat2d_panels_deriv_vec(edges, t, r, profile):
    gx, gw = gauss_legendre_rule(64)
    a = edges[:-1]
    b = edges[1:]
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    nodes = c[:, None] + h[:, None] * gx[None, :]
    flat = nodes.ravel()
    f = np.asarray(profile(flat), dtype=float)
    z = r * flat / (2.0 * t)
    gauss = np.exp(-((r - flat) ** 2) / (4.0 * t))
    i0 = bessel_i0e(z)
    base = (flat / (2.0 * t)) * gauss
    wv = base * i0
    wd = base * (-(r - flat) / (2.0 * t) * i0
                 + (flat / (2.0 * t)) * (bessel_i1e(z) - i0))
    val = float(np.dot(h, (f * wv).reshape(nodes.shape) @ gw))
    dval = float(np.dot(h, (f * wd).reshape(nodes.shape) @ gw))
    return val, dval


# ---------------------------------------------------------------------------
# Crank-Nicolson stepper for the nonlinear radial heat equation
#   psi_t = psi_rr + psi_r/r - cos(psi)/((beta sin^2 psi - 1) sin psi) psi_r^2
# on [0, R] with psi_r(0) = 0 (symmetry) and psi(R) fixed.
# Runs as plain Python when numba is unavailable (use small grids then).
# ---------------------------------------------------------------------------

@njit
def _nonlin(psi, beta):
    s = math.sin(psi)
    return -math.cos(psi) / ((beta * s * s - 1.0) * s)


@njit
def _nonlin_prime(psi, beta):
    s = math.sin(psi)
    c = math.cos(psi)
    u = beta * s * s - 1.0
    return (u + 2.0 * beta * s * s * c * c) / (u * s) ** 2


@njit
def _rhs_operator(x, h, beta, out):
    n = x.shape[0]
    out[0] = 4.0 * (x[1] - x[0]) / (h * h)
    for i in range(1, n - 1):
        r = i * h
        d1 = (x[i + 1] - x[i - 1]) / (2.0 * h)
        d2 = (x[i + 1] - 2.0 * x[i] + x[i - 1]) / (h * h)
        out[i] = d2 + d1 / r + _nonlin(x[i], beta) * d1 * d1
    out[n - 1] = 0.0


@njit
def _thomas(low, diag, up, rhs, out):
    n = diag.shape[0]
    cp = np.empty(n)
    dp = np.empty(n)
    cp[0] = up[0] / diag[0]
    dp[0] = rhs[0] / diag[0]
    for i in range(1, n):
        m = diag[i] - low[i] * cp[i - 1]
        cp[i] = up[i] / m
        dp[i] = (rhs[i] - low[i] * dp[i - 1]) / m
    out[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        out[i] = dp[i] - cp[i] * out[i + 1]


@njit
def cn_evolve(psi0, h, tau, nsteps, beta, newton_tol, max_newton):
    """Crank-Nicolson evolution; returns (state, newton_converged)."""
    n = psi0.shape[0]
    x = psi0.copy()
    xn = psi0.copy()
    l_old = np.empty(n)
    l_new = np.empty(n)
    low = np.empty(n)
    diag = np.empty(n)
    up = np.empty(n)
    rhs = np.empty(n)
    dx = np.empty(n)
    ok = True
    for _ in range(nsteps):
        _rhs_operator(x, h, beta, l_old)
        for i in range(n):
            xn[i] = x[i]
        converged = False
        for _ in range(max_newton):
            _rhs_operator(xn, h, beta, l_new)
            # G(xn) = xn - x - tau/2 (L(xn) + L(x)); assemble J = dG/dxn
            low[0] = 0.0
            diag[0] = 1.0 + 2.0 * tau / (h * h)
            up[0] = -2.0 * tau / (h * h)
            rhs[0] = -(xn[0] - x[0] - 0.5 * tau * (l_new[0] + l_old[0]))
            for i in range(1, n - 1):
                r = i * h
                d1 = (xn[i + 1] - xn[i - 1]) / (2.0 * h)
                nl = _nonlin(xn[i], beta)
                low[i] = -0.5 * tau * (1.0 / (h * h) - 1.0 / (2.0 * h * r)
                                       - nl * d1 / h)
                diag[i] = 1.0 - 0.5 * tau * (-2.0 / (h * h)
                                             + _nonlin_prime(xn[i], beta) * d1 * d1)
                up[i] = -0.5 * tau * (1.0 / (h * h) + 1.0 / (2.0 * h * r)
                                      + nl * d1 / h)
                rhs[i] = -(xn[i] - x[i] - 0.5 * tau * (l_new[i] + l_old[i]))
            low[n - 1] = 0.0
            diag[n - 1] = 1.0
            up[n - 1] = 0.0
            rhs[n - 1] = 0.0
            _thomas(low, diag, up, rhs, dx)
            step = 0.0
            for i in range(n):
                xn[i] += dx[i]
                if abs(dx[i]) > step:
                    step = abs(dx[i])
            if step <= newton_tol:
                converged = True
                break
        if not converged:
            ok = False
            break
        for i in range(n):
            x[i] = xn[i]
    return x, ok


@njit
def euler_evolve(psi0, h, tau, nsteps, beta):
    n = psi0.shape[0]
    x = psi0.copy()
    l_val = np.empty(n)
    for _ in range(nsteps):
        _rhs_operator(x, h, beta, l_val)
        for i in range(n - 1):
            x[i] += tau * l_val[i]
    return x
