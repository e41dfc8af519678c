"""Staircase initial data whose heat evolution keeps oscillating at the origin.

The profile v0 ramps between 0 and 1 linearly in log radius, with plateaus
arranged on a schedule of log-radius exponents a_j (generator a_j = c j^p;
c = 1, p = 3 reproduces the astronomically scaled original, the desk-scale
default (0.05, 3) keeps every radius inside double precision). At the
concentration times t_k = e^{2 a_{6k+3}} nearly all kernel mass sits on the
k-th 1-plateau annulus, so v(t_k, 0) ~ 1; at the off times
t~_k = e^{2 a_{6k+6}} it sits on the 0-plateau and v(t~_k, 0) ~ 0. All
Gaussian arguments are formed as exponent differences, never as raw radii.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NumericalError
from .profiles import KIND_STAIR_LOG, RadialProfile
from .radial_heat import annulus_mass_log, heat2d_origin

DESK_C = 0.05
DESK_P = 3.0
# largest log-time whose exp() stays a normal double
_MAX_LOG_TIME = 700.0


@dataclass(frozen=True)
class StaircaseSchedule:
    """Ordered log-radius exponents a_0 < a_1 < ... defining, per group k,
    the ramp-up (a_{6k+1}, a_{6k+2}], 1-plateau (a_{6k+2}, a_{6k+4}],
    ramp-down (a_{6k+4}, a_{6k+5}] and 0-plateau (a_{6k+5}, a_{6k+7}]."""

    exponents: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.exponents, dtype=float)
        object.__setattr__(self, "exponents", a)
        if a.ndim != 1 or a.size < 8:
            raise InvalidArgumentError(
                "schedule needs at least 8 exponents (one full group)")
        if np.any(np.diff(a) <= 0):
            raise InvalidArgumentError("exponents must increase strictly")

    @staticmethod
    def polynomial(c=DESK_C, p=DESK_P, groups=3):
        """Generator a_j = c * j^p with enough exponents for `groups` ramps."""
        if c <= 0 or p <= 0 or groups < 1:
            raise InvalidArgumentError("need c > 0, p > 0, groups >= 1")
        j = np.arange(6 * groups + 2, dtype=float)
        return StaircaseSchedule(exponents=c * j ** p)

    @property
    def groups(self):
        return (self.exponents.size - 2) // 6

    def ramp_widths(self):
        """Exponent widths of every ramp (up and down, all groups)."""
        a = self.exponents
        widths = []
        for k in range(self.groups):
            widths.append(a[6 * k + 2] - a[6 * k + 1])
            widths.append(a[6 * k + 5] - a[6 * k + 4])
        return widths


@dataclass(frozen=True)
class ProbeTimes:
    """Concentration/off log-times, interleaved strictly increasing."""

    log_peak: np.ndarray
    log_off: np.ndarray

    def __post_init__(self):
        merged = np.empty(self.log_peak.size + self.log_off.size)
        merged[0::2] = self.log_peak
        merged[1::2] = self.log_off
        if np.any(np.diff(merged) <= 0):
            raise InvalidArgumentError("probe times must interleave strictly")

    def interleaved_log(self):
        out = np.empty(self.log_peak.size + self.log_off.size)
        out[0::2] = self.log_peak
        out[1::2] = self.log_off
        return out


def probe_times(schedule, count):
    """ProbeTimes for groups k = 0..count-1: log t_k = 2 a_{6k+3},
    log t~_k = 2 a_{6k+6}."""
    if count < 1 or count > schedule.groups:
        raise InvalidArgumentError(
            f"count must be in 1..{schedule.groups} for this schedule")
    a = schedule.exponents
    peak = np.array([2.0 * a[6 * k + 3] for k in range(count)])
    off = np.array([2.0 * a[6 * k + 6] for k in range(count)])
    return ProbeTimes(log_peak=peak, log_off=off)


def build_v0(schedule):
    """The staircase profile: 0 up to the first ramp, linear in log r on
    ramps, exactly 1 on 1-plateaus and 0 on 0-plateaus."""
    a = schedule.exponents
    nodes = []
    values = []
    for k in range(schedule.groups):
        nodes.extend([a[6 * k + 1], a[6 * k + 2], a[6 * k + 4], a[6 * k + 5]])
        values.extend([0.0, 1.0, 1.0, 0.0])
    return RadialProfile.staircase_log(np.array(nodes), np.array(values))


def dirichlet_energy(v0, schedule):
    """2 pi * sum over ramps of 1/(exponent width): each ramp contributes
    exactly 1/width to int (v0')^2 r dr."""
    if v0.kind != KIND_STAIR_LOG:
        raise InvalidArgumentError("dirichlet_energy expects a staircase profile")
    widths = schedule.ramp_widths()
    return 2.0 * math.pi * sum(1.0 / w for w in widths)


def origin_series(v0, times, abs_tol=1e-10):
    """v(t, 0) at the interleaved probe times via heat2d_origin.

    Raises NumericalError when the schedule's radii or times overflow double
    precision (the paper-scaled generator does; desk-scale ones do not).
    """
    logs = times.interleaved_log()
    if np.any(logs > _MAX_LOG_TIME):
        raise NumericalError(
            "probe times overflow double precision; this schedule supports "
            "only the log-space closed forms")
    out = []
    for lt in logs:
        out.append(heat2d_origin(v0, math.exp(lt), abs_tol=abs_tol))
    return out


def annulus_dominance(schedule, times):
    """Kernel mass over the k-th 1-plateau annulus at t_k, in log space
    (valid for arbitrarily large exponents)."""
    a = schedule.exponents
    out = []
    for k in range(times.log_peak.size):
        out.append(annulus_mass_log(times.log_peak[k],
                                    a[6 * k + 2], a[6 * k + 4]))
    return out
