"""Independent verification of the assembled solution.

Finite-difference residuals of the reduced system are measured on snapshot
triples (t - tau, t, t + tau); invariant monitors track unit norm, the psi
and F ranges, arc length, and energy; a Crank-Nicolson reference solver
cross-validates psi without using the linearizing transform. All residuals
use interior nodes only (two ghost layers excluded) and converge at second
order on the exact solution.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._kernels import cn_evolve, euler_evolve
from .errors import ConfigError, InvalidArgumentError, NumericalError
from .quadrature import adaptive_gauss_legendre
from .sphere_curve import F_map, metric_factor

_GHOST = 2  # boundary layers excluded from residual norms


@dataclass(frozen=True)
class ResidualReport:
    equation: str
    h: float
    tau: float
    max_norm: float
    l2_norm: float
    worst_r: float
    worst_index: int
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Diagnostics:
    times: np.ndarray
    arc_length: np.ndarray
    f_min: np.ndarray
    f_max: np.ndarray
    psi_min: np.ndarray
    psi_max: np.ndarray
    energy: np.ndarray

    def __post_init__(self):
        n = self.times.size
        for name in ("arc_length", "f_min", "f_max", "psi_min", "psi_max",
                      "energy"):
            if getattr(self, name).size != n:
                raise InvalidArgumentError("diagnostics columns misaligned")


def _check_triple(prev, mid, nxt):
    if not (np.array_equal(prev.r, mid.r) and np.array_equal(mid.r, nxt.r)):
        raise InvalidArgumentError("snapshots must share one radius grid")
    h = float(mid.r[1] - mid.r[0])
    if np.max(np.abs(np.diff(mid.r) - h)) > 1e-9 * h:
        raise InvalidArgumentError("residuals need a uniform grid")
    tau = mid.t - prev.t
    if abs((nxt.t - mid.t) - tau) > 1e-12 * max(tau, 1.0):
        raise InvalidArgumentError("snapshots must be equally spaced in time")
    return h, tau


def _interior(n):
    return slice(_GHOST, n - _GHOST)


def _space_derivs(f, h):
    d1 = np.empty_like(f)
    d2 = np.empty_like(f)
    d1[1:-1] = (f[2:] - f[:-2]) / (2.0 * h)
    d2[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / (h * h)
    d1[0] = d1[1]
    d1[-1] = d1[-2]
    d2[0] = d2[1]
    d2[-1] = d2[-2]
    return d1, d2


def _report(tag, res, r, h, tau, extra=None):
    idx = _interior(r.size)
    res_i = res[idx]
    r_i = r[idx]
    k = int(np.argmax(np.abs(res_i)))
    return ResidualReport(
        equation=tag, h=h, tau=tau,
        max_norm=float(np.max(np.abs(res_i))),
        l2_norm=float(math.sqrt(h * float(np.sum(res_i * res_i)))),
        worst_r=float(r_i[k]), worst_index=k + _GHOST,
        extra=dict(extra or {}))


def residual_u(prev, mid, nxt):
    """|u_t - u_rr - u_r/r + u/r^2| by central differences."""
    h, tau = _check_triple(prev, mid, nxt)
    r = mid.r
    u = mid.u
    ut = (nxt.u - prev.u) / (2.0 * tau)
    ur, urr = _space_derivs(u, h)
    res = ut - urr - ur / r + u / r ** 2
    return _report("u", res, r, h, tau)


def residual_psi(prev, mid, nxt):
    """Residual of the reduced nonlinear heat equation for psi."""
    h, tau = _check_triple(prev, mid, nxt)
    beta = mid.params.beta
    r = mid.r
    psi = mid.psi
    pt = (nxt.psi - prev.psi) / (2.0 * tau)
    pr, prr = _space_derivs(psi, h)
    s = np.sin(psi)
    nonlin = np.cos(psi) / ((beta * s * s - 1.0) * s)
    res = pt - prr - pr / r + nonlin * pr * pr
    return _report("psi", res, r, h, tau)


def residual_angles(prev, mid, nxt):
    """Residuals of both angle equations (the second divided by sin^2 psi);
    the report carries the pointwise maximum of the two."""
    h, tau = _check_triple(prev, mid, nxt)
    r = mid.r
    psi, phi = mid.psi, mid.phi
    pt = (nxt.psi - prev.psi) / (2.0 * tau)
    ft = (nxt.phi - prev.phi) / (2.0 * tau)
    pr, prr = _space_derivs(psi, h)
    fr, frr = _space_derivs(phi, h)
    s = np.sin(psi)
    c = np.cos(psi)
    res_polar = pt - prr - pr / r + c * s * fr * fr
    res_azimuth = ft - frr - fr / r - 2.0 * (c / s) * pr * fr
    res = np.maximum(np.abs(res_polar), np.abs(res_azimuth))
    return _report("angles", res, r, h, tau,
                   extra={"polar_max": float(np.max(np.abs(res_polar[_interior(r.size)]))),
                          "azimuth_max": float(np.max(np.abs(res_azimuth[_interior(r.size)])))})


def residual_director(prev, mid, nxt):
    """Vector residual |d_t - d_rr - d_r/r - |d_r|^2 d| (max over nodes and
    components); the projection onto d is reported as extra["orthogonality"].
    """
    h, tau = _check_triple(prev, mid, nxt)
    r = mid.r
    d = mid.d
    dt = (nxt.d - prev.d) / (2.0 * tau)
    dr = np.empty_like(d)
    drr = np.empty_like(d)
    dr[1:-1] = (d[2:] - d[:-2]) / (2.0 * h)
    drr[1:-1] = (d[2:] - 2.0 * d[1:-1] + d[:-2]) / (h * h)
    dr[0] = dr[1]
    dr[-1] = dr[-2]
    drr[0] = drr[1]
    drr[-1] = drr[-2]
    grad2 = np.sum(dr * dr, axis=1)
    res_vec = dt - drr - dr / r[:, None] - grad2[:, None] * d
    res = np.max(np.abs(res_vec), axis=1)
    proj = np.abs(np.sum(res_vec * d, axis=1))
    idx = _interior(r.size)
    return _report("director", res, r, h, tau,
                   extra={"orthogonality": float(np.max(proj[idx]))})


def residual_pressure(snapshot):
    """|p_r - u^2/r + 2 d_r . d_rr + |d_r|^2/r| with p_r by central
    differences of the pressure column (single snapshot)."""
    r = snapshot.r
    h = float(r[1] - r[0])
    if np.max(np.abs(np.diff(r) - h)) > 1e-9 * h:
        raise InvalidArgumentError("residuals need a uniform grid")
    if snapshot.p is None or snapshot.u is None:
        raise InvalidArgumentError("pressure residual needs p and u columns")
    pr, _ = _space_derivs(snapshot.p, h)
    d = snapshot.d
    dr = np.empty_like(d)
    drr = np.empty_like(d)
    dr[1:-1] = (d[2:] - d[:-2]) / (2.0 * h)
    drr[1:-1] = (d[2:] - 2.0 * d[1:-1] + d[:-2]) / (h * h)
    dr[0] = dr[1]
    dr[-1] = dr[-2]
    drr[0] = drr[1]
    drr[-1] = drr[-2]
    grad2 = np.sum(dr * dr, axis=1)
    res = pr - snapshot.u ** 2 / r + 2.0 * np.sum(dr * drr, axis=1) + grad2 / r
    return _report("pressure", res, r, h, 0.0)


# ---- invariant monitors ---------------------------------------------------

def f_range(snapshot):
    """(F_min, F_max) of the transformed field over the snapshot nodes."""
    f = F_map(snapshot.psi, snapshot.params)
    return float(np.min(f)), float(np.max(f))


def arc_length(snapshot):
    """Arc length of the image curve over the attained psi interval:
    int sqrt(metric_factor) over [min psi, max psi]."""
    if snapshot.psi.size == 0:
        raise InvalidArgumentError("empty snapshot")
    lo = float(np.min(snapshot.psi))
    hi = float(np.max(snapshot.psi))
    if lo == hi:
        return 0.0
    params = snapshot.params
    return adaptive_gauss_legendre(
        lambda s: np.sqrt(metric_factor(s, params)), lo, hi, abs_tol=1e-12)


def energy(snapshot):
    """pi * int (u^2 + metric_factor(psi) psi_r^2) r dr by the trapezoid rule
    on the snapshot grid (psi_r by second-order differences)."""
    if snapshot.u is None:
        raise InvalidArgumentError("energy needs the u column")
    psi_r = np.gradient(snapshot.psi, snapshot.r)
    dens = (snapshot.u ** 2
            + metric_factor(snapshot.psi, snapshot.params) * psi_r ** 2)
    return math.pi * float(np.trapezoid(dens * snapshot.r, snapshot.r))


def collect_diagnostics(sol, times, r_grid, threads=1):
    rows = {"arc": [], "fmin": [], "fmax": [], "pmin": [], "pmax": [],
            "en": []}
    for t in times:
        snap = sol.snapshot(t, r_grid, fields=("psi", "phi", "u", "d"),
                            threads=threads)
        fmin, fmax = f_range(snap)
        rows["arc"].append(arc_length(snap))
        rows["fmin"].append(fmin)
        rows["fmax"].append(fmax)
        rows["pmin"].append(float(np.min(snap.psi)))
        rows["pmax"].append(float(np.max(snap.psi)))
        rows["en"].append(energy(snap))
    return Diagnostics(times=np.asarray(times, dtype=float),
                       arc_length=np.array(rows["arc"]),
                       f_min=np.array(rows["fmin"]),
                       f_max=np.array(rows["fmax"]),
                       psi_min=np.array(rows["pmin"]),
                       psi_max=np.array(rows["pmax"]),
                       energy=np.array(rows["en"]))


# ---- reference solver ------------------------------------------------------

def reference_fd_solve(data, t_end, n_r=2048, r_max=8.0, tau=1e-4,
                       method="cn", newton_tol=1e-12, max_newton=30):
    """Direct finite-difference solve of the nonlinear psi equation on
    [0, r_max]: symmetry at 0, Dirichlet psi0(r_max) at the far end.

    Crank-Nicolson (default) with a tridiagonal Newton inner solve, or
    explicit Euler under the CFL bound tau <= h^2/4. Returns (r, psi(t_end)).
    Used solely as a cross-validation oracle for solve_psi.
    """
    if t_end <= 0:
        raise InvalidArgumentError("t_end must be positive")
    h = r_max / (n_r - 1)
    r = h * np.arange(n_r)
    psi = np.asarray(data.psi0(r), dtype=float)
    nsteps = max(1, int(round(t_end / tau)))
    tau_eff = t_end / nsteps
    beta = data.params.beta
    if method == "cn":
        out, ok = cn_evolve(psi, h, tau_eff, nsteps, beta,
                            newton_tol, max_newton)
        if not ok:
            raise NumericalError("Newton iteration stalled in the CN solve")
    elif method == "euler":
        if tau_eff > 0.25 * h * h:
            raise ConfigError([("reference_fd_solve.tau",
                                f"CFL violated: tau must be <= h^2/4 = "
                                f"{0.25 * h * h:.3e}")])
        out = euler_evolve(psi, h, tau_eff, nsteps, beta)
    else:
        raise InvalidArgumentError("method must be 'cn' or 'euler'")
    return r, out


# ---- orchestration ---------------------------------------------------------

def residual_suite(sol, t0, r_lo, r_hi, h, tau, threads=1):
    """All five residual reports on a uniform [r_lo, r_hi] grid at time t0."""
    n = int(round((r_hi - r_lo) / h)) + 1
    r = r_lo + h * np.arange(n)
    snaps = {}
    for key, t in (("prev", t0 - tau), ("mid", t0), ("nxt", t0 + tau)):
        fields = ("psi", "phi", "u", "p", "d") if key == "mid" else \
                 ("psi", "phi", "u", "d")
        snaps[key] = sol.snapshot(t, r, fields=fields, threads=threads)
    prev, mid, nxt = snaps["prev"], snaps["mid"], snaps["nxt"]
    return {
        "u": residual_u(prev, mid, nxt),
        "psi": residual_psi(prev, mid, nxt),
        "angles": residual_angles(prev, mid, nxt),
        "director": residual_director(prev, mid, nxt),
        "pressure": residual_pressure(mid),
    }


def residual_convergence(sol, t0, r_lo, r_hi, h_coarsest, tau_coarsest,
                         levels=3, threads=1):
    """Residual suites at (h, tau)/2^k for k = 0..levels-1, plus least-squares
    order estimates of max_norm against the spacing."""
    by_eq = {}
    for k in range(levels):
        suite = residual_suite(sol, t0, r_lo, r_hi,
                               h_coarsest / 2 ** k, tau_coarsest / 2 ** k,
                               threads=threads)
        for eq, rep in suite.items():
            by_eq.setdefault(eq, []).append(rep)
    orders = {}
    for eq, reps in by_eq.items():
        xs = np.log2([rep.h for rep in reps])
        ys = np.log2([max(rep.max_norm, 1e-300) for rep in reps])
        slope = float(np.polyfit(xs, ys, 1)[0])
        orders[eq] = slope
    return by_eq, orders
