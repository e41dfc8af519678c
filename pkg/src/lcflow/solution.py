"""Assembly of the exact solution from validated initial data.

psi(t, .) = F_inv(heat2d(F(psi0))), phi = Phi(psi), u(t, r) = r * heat4d(u0/rho),
d from the angles, and p from the radial pressure integral. Everything is
closed-form modulo quadrature; there is no time stepping here.
"""

import math
import threading
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidArgumentError, NotApplicableError
from .profiles import RadialProfile, g0_from_u0
from .quadrature import adaptive_gauss_legendre, gauss_legendre_rule
from .radial_heat import (DEFAULT_ABS_TOL, heat2d_radial,
                          heat2d_value_and_derivative, heat4d_radial)
from .sphere_curve import (F_inv, F_map, ModelParams, director_from_angles,
                           metric_factor, phi_of_psi)

PRESSURE_EPS = 1e-8          # lower limit of the pressure integral
PRESSURE_CHECKPOINT = 1.0 / 64.0


@dataclass(frozen=True)
class InitialData:
    params: ModelParams
    u0: RadialProfile
    psi0: RadialProfile
    far_field_psi: Optional[float] = None


@dataclass(frozen=True)
class ValidationEntry:
    name: str
    passed: bool
    measured: object
    detail: str
    warning: bool = False


class ValidationReport:
    def __init__(self, entries):
        self.entries = list(entries)

    @property
    def ok(self):
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def __str__(self):
        lines = []
        for e in self.entries:
            mark = "ok" if e.passed else "FAIL"
            if e.warning:
                mark = "warn"
            lines.append(f"[{mark:4s}] {e.name}: {e.detail} (measured {e.measured})")
        return "\n".join(lines)


def _profile_slope(profile, r, h=1e-5):
    r = np.asarray(r, dtype=float)
    lo = np.maximum(r - h, 0.0)
    hi = r + h
    return (profile(hi) - profile(lo)) / (hi - lo)


def validate_initial(data):
    """Check the data conditions; every entry carries the measured value.

    Downstream constructors refuse reports with failures.
    """
    params = data.params
    entries = []
    r_big = max(data.psi0.support_radius(), data.u0.support_radius()) + 2.0

    sample_r = np.linspace(0.0, r_big, 4097)
    psi_vals = data.psi0(sample_r)
    lo, hi = float(np.min(psi_vals)), float(np.max(psi_vals))
    entries.append(ValidationEntry(
        "psi0_range", params.delta1 < lo and hi < math.pi - params.delta1,
        (lo, hi),
        f"delta1 < psi0 < pi - delta1 with delta1 = {params.delta1:.6f}"))

    margin = params.validity_margin(params.delta1)
    entries.append(ValidationEntry(
        "beta_margin", margin > 0.0, margin,
        "beta*sin(delta1)^2 - 1 must be positive"))

    tail = data.u0.tail_value()
    decaying = data.u0.decay[0] in ("gaussian", "compact") or tail == 0.0
    u_energy = adaptive_gauss_legendre(
        lambda s: data.u0(s) ** 2 * s, 0.0, r_big, abs_tol=1e-8)
    entries.append(ValidationEntry(
        "u0_energy", decaying and np.isfinite(u_energy), u_energy,
        "int u0^2 r dr must converge (profile must decay to 0)"))

    slope_tail = abs(float(_profile_slope(data.psi0, np.array([r_big]))[0]))
    g_energy = adaptive_gauss_legendre(
        lambda s: _profile_slope(data.psi0, s) ** 2 * s, 1e-6, r_big,
        abs_tol=1e-8)
    entries.append(ValidationEntry(
        "psi0_gradient_energy",
        slope_tail < 1e-7 and np.isfinite(g_energy), g_energy,
        "int (psi0')^2 r dr must converge (psi0 must level off)"))

    probes = np.array([1e-6, 1e-9])
    ratios = np.abs(data.u0(probes) / probes)
    entries.append(ValidationEntry(
        "u0_linear_origin",
        bool(np.all(np.isfinite(ratios)) and ratios[1] <= 10.0 * ratios[0] + 1e-12),
        tuple(ratios),
        "u0(rho)/rho must stay bounded near 0"))

    if data.far_field_psi is not None:
        far = float(data.psi0(np.array([r_big]))[0])
        entries.append(ValidationEntry(
            "far_field_consistency",
            abs(far - data.far_field_psi) < 1e-8,
            far, "declared far-field limit must match the profile tail"))

    h0 = 1e-4
    f0, f1, f2 = (float(data.psi0(x)) for x in (0.0, h0, 2 * h0))
    slope0 = abs((-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h0))
    entries.append(ValidationEntry(
        "psi0_origin_slope", True, slope0,
        "psi0'(0) = 0 keeps d smooth at the origin (warning only)",
        warning=slope0 > 1e-6))

    return ValidationReport(entries)


class _PressureLine:
    """Cumulative pressure integral along one time slice.

    Checkpoints at eps + k*delta accumulate the integral once; a query adds
    the short remainder panel, so pointwise calls and snapshot columns follow
    the identical code path (and agree bit for bit).
    """

    def __init__(self, integrand):
        self.integrand = integrand
        self.edges = [PRESSURE_EPS]
        self.cumulative = [0.0]
        self.lock = threading.Lock()
        self._probe_done = False

    def _panel(self, a, b):
        gx, gw = gauss_legendre_rule(8)
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        total = 0.0
        for j in range(gx.size):
            total += gw[j] * self.integrand(c + h * gx[j])
        return h * total

    def _probe_origin(self):
        if self._probe_done:
            return
        self._probe_done = True
        q = [abs(self.integrand(s) * s) for s in (1e-6, 1e-7, 1e-8)]
        if q[2] > 2.0 * q[0] + 1e-10:
            warnings.warn("pressure integrand grows toward s = 0; the "
                          "integral from 0 may be inaccurate", RuntimeWarning)

    def ensure(self, r):
        with self.lock:
            self._probe_origin()
            while self.edges[-1] < r:
                a = self.edges[-1]
                b = a + PRESSURE_CHECKPOINT
                self.cumulative.append(self.cumulative[-1] + self._panel(a, b))
                self.edges.append(b)

    def integral_to(self, r):
        if r <= PRESSURE_EPS:
            return 0.0
        self.ensure(r)
        k = int((r - PRESSURE_EPS) / PRESSURE_CHECKPOINT)
        k = min(k, len(self.edges) - 2) if len(self.edges) > 1 else 0
        base = self.cumulative[k]
        a = self.edges[k]
        if r > a:
            base = base + self._panel(a, r)
        return base


class ExactSolution:
    """Immutable solution handle; all queries are pure and thread-safe."""

    def __init__(self, data, quad_tol=DEFAULT_ABS_TOL):
        report = validate_initial(data)
        if not report.ok:
            failed = ", ".join(e.name for e in report.failures())
            raise InvalidArgumentError(
                f"initial data rejected by validation: {failed}\n{report}")
        self.data = data
        self.report = report
        self.quad_tol = float(quad_tol)
        self.f0 = data.psi0.with_fmap(data.params)   # F o psi0
        self.g0 = g0_from_u0(data.u0)                # u0(rho)/rho
        self._lines = {}
        self._lines_lock = threading.Lock()

    # ---- field queries --------------------------------------------------

    def _check_tr(self, t, r):
        if not (np.isfinite(t) and t >= 0.0):
            raise InvalidArgumentError("t must be finite and >= 0")
        if not (np.isfinite(r) and r >= 0.0):
            raise InvalidArgumentError("r must be finite and >= 0")

    def solve_psi(self, t, r):
        """Polar angle psi(t, r); t = 0 returns the initial profile."""
        t = float(t)
        r = float(r)
        self._check_tr(t, r)
        if t == 0.0:
            return float(self.data.psi0(r))
        f = heat2d_radial(self.f0, t, r, abs_tol=self.quad_tol)
        return F_inv(f, self.data.params)

    def solve_u(self, t, r):
        """Swirl velocity u(t, r); u(t, 0) = 0 and t = 0 returns u0."""
        t = float(t)
        r = float(r)
        self._check_tr(t, r)
        if t == 0.0:
            return float(self.data.u0(r))
        if r == 0.0:
            return 0.0
        return r * heat4d_radial(self.g0, t, r, abs_tol=self.quad_tol)

    def solve_phi(self, t, r):
        """Azimuth phi = Phi(psi(t, r))."""
        return phi_of_psi(self.solve_psi(t, r), self.data.params)

    def psi_r(self, t, r):
        """Radial derivative of psi by 5-point differences, step
        max(1e-4, 1e-3 r); one-sided near the origin. Requires t > 0."""
        t = float(t)
        r = float(r)
        if t <= 0.0:
            raise InvalidArgumentError("psi_r requires t > 0")
        self._check_tr(t, r)
        h = max(1e-4, 1e-3 * r)
        f = lambda x: self.solve_psi(t, x)
        if r >= 2.0 * h:
            return (-f(r + 2 * h) + 8 * f(r + h)
                    - 8 * f(r - h) + f(r - 2 * h)) / (12.0 * h)
        return (-25 * f(r) + 48 * f(r + h) - 36 * f(r + 2 * h)
                + 16 * f(r + 3 * h) - 3 * f(r + 4 * h)) / (12.0 * h)

    def _psi_and_slope(self, t, s):
        # fused kernel-derivative route: exact d/dr of the convolution
        val, dval = heat2d_value_and_derivative(self.f0, t, s)
        params = self.data.params
        psi = F_inv(val, params)
        b = math.sqrt((params.beta - 1.0) / params.beta)
        slope = b * math.sin(val) / math.sin(psi) * dval
        return psi, slope

    def _pressure_line(self, t):
        with self._lines_lock:
            line = self._lines.get(t)
            if line is not None:
                return line
            params = self.data.params
            if t == 0.0:
                def integrand(s):
                    psi = float(self.data.psi0(s))
                    slope = float(_profile_slope(self.data.psi0, np.array([s]))[0])
                    u = float(self.data.u0(s))
                    dr2 = metric_factor(psi, params) * slope * slope
                    return (u * u - dr2) / s
            else:
                def integrand(s):
                    psi, slope = self._psi_and_slope(t, s)
                    u = s * heat4d_radial(self.g0, t, s, abs_tol=self.quad_tol)
                    dr2 = metric_factor(psi, params) * slope * slope
                    return (u * u - dr2) / s
            line = _PressureLine(integrand)
            self._lines[t] = line
            return line

    def _dr_squared(self, t, r):
        params = self.data.params
        if t == 0.0:
            psi = float(self.data.psi0(r))
            slope = float(_profile_slope(self.data.psi0, np.array([r]))[0])
        else:
            psi, slope = self._psi_and_slope(t, r)
        return metric_factor(psi, params) * slope * slope

    def solve_pressure(self, t, r):
        """p(t, r) = int_eps^r (u^2 - |d_r|^2)/s ds - |d_r(t, r)|^2.

        The additive constant is fixed by integrating from (essentially) 0.
        Defined for t > 0 in the solution proper; t = 0 applies the same
        formula to the initial fields.
        """
        t = float(t)
        r = float(r)
        self._check_tr(t, r)
        line = self._pressure_line(t)
        return line.integral_to(r) - self._dr_squared(t, r)

    def long_time_limit(self):
        """psi_bar = F_inv(F(far-field psi)); requires a declared far field."""
        far = self.data.far_field_psi
        if far is None:
            raise NotApplicableError("no far-field psi declared in the data")
        return F_inv(F_map(float(far), self.data.params), self.data.params)

    # ---- snapshots -------------------------------------------------------

    def snapshot(self, t, r_grid, fields=("psi", "phi", "u", "p", "d"),
                 threads=1):
        """All fields on a strictly increasing radius grid.

        Every column is produced by the corresponding pointwise call, so
        snapshot values and pointwise values are identical. Thread fan-out
        (threads > 1) assigns results by index and changes nothing.
        """
        t = float(t)
        r = np.asarray(r_grid, dtype=float)
        if r.ndim != 1 or r.size == 0:
            raise InvalidArgumentError("r_grid must be a non-empty 1-d array")
        if np.any(np.diff(r) <= 0) or r[0] < 0:
            raise InvalidArgumentError("r_grid must be strictly increasing, >= 0")

        psi = np.array(_indexed_map(lambda i: self.solve_psi(t, r[i]),
                                    r.size, threads))
        phi = phi_of_psi(psi, self.data.params)
        if "u" in fields:
            u = np.array(_indexed_map(lambda i: self.solve_u(t, r[i]),
                                      r.size, threads))
        else:
            u = None
        if "p" in fields:
            self._pressure_line(t).ensure(float(r[-1]))
            p = np.array(_indexed_map(lambda i: self.solve_pressure(t, r[i]),
                                      r.size, threads))
        else:
            p = None
        d = director_from_angles(psi, phi)
        return FieldSnapshot(t=t, r=r, psi=psi, phi=phi, u=u, p=p, d=d,
                             params=self.data.params)


def _indexed_map(fn, n, threads):
    if threads <= 1:
        return [fn(i) for i in range(n)]
    with ThreadPoolExecutor(max_workers=int(threads)) as pool:
        return list(pool.map(fn, range(n)))


@dataclass(frozen=True)
class FieldSnapshot:
    """All fields sampled on one time slice; validated on construction."""

    t: float
    r: np.ndarray
    psi: np.ndarray
    phi: np.ndarray
    u: Optional[np.ndarray]
    p: Optional[np.ndarray]
    d: np.ndarray
    params: ModelParams

    def __post_init__(self):
        norm = np.sqrt(np.sum(self.d * self.d, axis=-1))
        worst = float(np.max(np.abs(norm - 1.0)))
        if worst > 8.0 * np.finfo(float).eps:
            raise InvalidArgumentError(
                f"director norm violation: max |n - 1| = {worst:.3e}")
        lo = float(np.min(self.psi))
        hi = float(np.max(self.psi))
        if lo <= self.params.delta1 or hi >= math.pi - self.params.delta1:
            raise InvalidArgumentError(
                f"psi range ({lo:.6f}, {hi:.6f}) leaves "
                f"(delta1, pi - delta1)")
