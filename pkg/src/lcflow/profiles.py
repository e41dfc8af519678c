"""Radial profiles: closed-form families, sampled tables, and the staircase.

A RadialProfile evaluates f(r) for r >= 0 and carries decay metadata used by
the validators. Closed-form families lower to a numeric descriptor the
quadrature kernels evaluate directly (no interpolation error); sampled tables
interpolate piecewise-linearly with flat extrapolation beyond their ends; the
staircase is piecewise-linear in log radius. A profile may carry the
linearizing post-map F(v) = arccos(c cos v), applied after evaluation.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidArgumentError, NumericalError

# kernel descriptor kinds (shared with _kernels)
KIND_CONST = 0
KIND_GAUSS2 = 1      # offset + A1 e^{-r^2/s1^2} + A2 e^{-r^2/s2^2}
KIND_TANH = 2        # low + step * (1 + tanh((r - r0)/w)) / 2
KIND_RHO_GAUSS2 = 3  # r * (A1 e^{-r^2/s1^2} + A2 e^{-r^2/s2^2})
KIND_TABLE = 4
KIND_STAIR_LOG = 5
KIND_CALLABLE = -1   # not lowerable; quadrature uses the numpy path

POST_NONE = 0
POST_FMAP = 1

_EMPTY = np.empty(0, dtype=float)

# log radii above this make r^2 overflow double precision
MAX_LOG_RADIUS = 350.0


@dataclass(frozen=True)
class RadialProfile:
    kind: int
    fparams: np.ndarray = field(default_factory=lambda: _EMPTY)
    xs: np.ndarray = field(default_factory=lambda: _EMPTY)
    ys: np.ndarray = field(default_factory=lambda: _EMPTY)
    decay: tuple = ("bounded", None)
    post: int = POST_NONE
    post_c: float = 0.0
    func: object = None  # vectorized callable for KIND_CALLABLE

    # ---- constructors -------------------------------------------------

    @staticmethod
    def constant(value):
        return RadialProfile(KIND_CONST, np.array([float(value)]),
                             decay=("bounded", None))

    @staticmethod
    def gaussian_bump(center, amplitude, sigma):
        """center + amplitude * exp(-r^2/sigma^2)."""
        if sigma <= 0:
            raise InvalidArgumentError("sigma must be positive")
        fp = np.array([float(center), float(amplitude), float(sigma), 0.0, 1.0])
        return RadialProfile(KIND_GAUSS2, fp, decay=("gaussian", float(sigma)))

    @staticmethod
    def gaussian_pair(a1, sigma1, a2, sigma2):
        """a1 exp(-r^2/sigma1^2) + a2 exp(-r^2/sigma2^2) (decays to 0)."""
        if sigma1 <= 0 or sigma2 <= 0:
            raise InvalidArgumentError("sigmas must be positive")
        fp = np.array([0.0, float(a1), float(sigma1), float(a2), float(sigma2)])
        return RadialProfile(KIND_GAUSS2, fp,
                             decay=("gaussian", float(max(sigma1, sigma2))))

    @staticmethod
    def tanh_step(low, high, radius, width):
        """low + (high - low)(1 + tanh((r - radius)/width))/2."""
        if width <= 0:
            raise InvalidArgumentError("width must be positive")
        fp = np.array([float(low), float(high) - float(low), float(radius),
                       float(width)])
        return RadialProfile(KIND_TANH, fp,
                             decay=("compact", float(radius) + 20.0 * float(width)))

    @staticmethod
    def swirl_gaussian(amplitude, sigma):
        """amplitude * r * exp(-r^2/sigma^2) (swirl-velocity family)."""
        if sigma <= 0:
            raise InvalidArgumentError("sigma must be positive")
        fp = np.array([float(amplitude), float(sigma), 0.0, 1.0])
        return RadialProfile(KIND_RHO_GAUSS2, fp,
                             decay=("gaussian", float(sigma)))

    @staticmethod
    def swirl_gaussian_pair(a1, sigma1, a2, sigma2):
        fp = np.array([float(a1), float(sigma1), float(a2), float(sigma2)])
        return RadialProfile(KIND_RHO_GAUSS2, fp,
                             decay=("gaussian", float(max(sigma1, sigma2))))

    @staticmethod
    def table(radii, values, tail=None):
        """Piecewise-linear table; flat extrapolation (tail defaults to the
        last sample)."""
        xs = np.asarray(radii, dtype=float)
        ys = np.asarray(values, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise InvalidArgumentError("table needs matching 1-d radii/values")
        if np.any(np.diff(xs) <= 0):
            raise InvalidArgumentError("table radii must be strictly increasing")
        if xs[0] < 0 or not np.all(np.isfinite(xs)) or not np.all(np.isfinite(ys)):
            raise InvalidArgumentError("table entries must be finite, radii >= 0")
        tail = float(ys[-1] if tail is None else tail)
        return RadialProfile(KIND_TABLE, np.array([tail]), xs=xs, ys=ys,
                             decay=("compact", float(xs[-1])))

    @staticmethod
    def staircase_log(log_radii, values):
        """Piecewise-linear in log r between (log_radii, values); 0-valued
        flat tails on both sides are expected from the schedule builder."""
        xs = np.asarray(log_radii, dtype=float)
        ys = np.asarray(values, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise InvalidArgumentError("staircase needs matching breakpoints")
        if np.any(np.diff(xs) <= 0):
            raise InvalidArgumentError("staircase exponents must increase")
        decay_r = math.exp(min(xs[-1], MAX_LOG_RADIUS))
        return RadialProfile(KIND_STAIR_LOG, np.array([ys[-1]]), xs=xs, ys=ys,
                             decay=("compact", decay_r))

    @staticmethod
    def from_callable(func, decay=("bounded", None)):
        """Wrap a vectorized callable; quadrature uses the numpy path."""
        return RadialProfile(KIND_CALLABLE, decay=tuple(decay), func=func)

    # ---- evaluation ----------------------------------------------------

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        scalar = r.ndim == 0
        r = np.atleast_1d(r)
        if np.any(r < 0):
            raise InvalidArgumentError("radius must be >= 0")
        v = self._eval_raw(r)
        if self.post == POST_FMAP:
            v = np.arccos(self.post_c * np.cos(v))
        return float(v[0]) if scalar else v

    def _eval_raw(self, r):
        k, fp = self.kind, self.fparams
        if k == KIND_CONST:
            return np.full_like(r, fp[0])
        if k == KIND_GAUSS2:
            return (fp[0] + fp[1] * np.exp(-(r / fp[2]) ** 2)
                    + fp[3] * np.exp(-(r / fp[4]) ** 2))
        if k == KIND_TANH:
            return fp[0] + fp[1] * 0.5 * (1.0 + np.tanh((r - fp[2]) / fp[3]))
        if k == KIND_RHO_GAUSS2:
            return r * (fp[0] * np.exp(-(r / fp[1]) ** 2)
                        + fp[2] * np.exp(-(r / fp[3]) ** 2))
        if k == KIND_TABLE:
            return np.interp(r, self.xs, self.ys, left=self.ys[0], right=fp[0])
        if k == KIND_STAIR_LOG:
            out = np.zeros_like(r)
            pos = r > 0
            out[pos] = np.interp(np.log(r[pos]), self.xs, self.ys,
                                 left=self.ys[0], right=self.ys[-1])
            out[~pos] = self.ys[0]
            return out
        if k == KIND_CALLABLE:
            return np.asarray(self.func(r), dtype=float)
        raise InvalidArgumentError(f"unknown profile kind {k}")

    # ---- metadata ------------------------------------------------------

    def breakpoints(self):
        """Radii where the derivative may jump (panel-alignment hints)."""
        if self.kind == KIND_TABLE:
            return self.xs
        if self.kind == KIND_STAIR_LOG:
            safe = self.xs[self.xs <= MAX_LOG_RADIUS]
            return np.exp(safe)
        return _EMPTY

    def tail_value(self):
        if self.kind == KIND_CONST:
            v = self.fparams[0]
        elif self.kind == KIND_GAUSS2:
            v = self.fparams[0]
        elif self.kind == KIND_TANH:
            v = self.fparams[0] + self.fparams[1]
        elif self.kind == KIND_RHO_GAUSS2:
            v = 0.0
        elif self.kind in (KIND_TABLE, KIND_STAIR_LOG):
            v = self.fparams[0] if self.kind == KIND_TABLE else self.ys[-1]
        else:
            v = float(self.func(np.array([1e9]))[0])
        if self.post == POST_FMAP:
            v = math.acos(self.post_c * math.cos(v))
        return float(v)

    def support_radius(self):
        """Radius beyond which the profile is numerically its tail value."""
        mode, par = self.decay
        if mode == "gaussian":
            return 9.0 * par
        if mode == "compact":
            return par
        return 10.0  # bounded: arbitrary sampling horizon for validators

    def with_fmap(self, params):
        """Compose with F(v) = arccos(sqrt(beta/(beta-1)) cos v)."""
        if self.post != POST_NONE:
            raise InvalidArgumentError("profile already carries a post-map")
        c = math.sqrt(params.beta / (params.beta - 1.0))
        return replace(self, post=POST_FMAP, post_c=c)

    def lowered(self):
        """(kind, fparams, xs, ys, post, post_c) for the quadrature kernels."""
        if self.kind == KIND_CALLABLE:
            return None
        if self.kind == KIND_STAIR_LOG and self.xs[-1] > MAX_LOG_RADIUS:
            raise NumericalError(
                "staircase exponents too large for quadrature "
                f"(max {self.xs[-1]:.1f} > {MAX_LOG_RADIUS}); "
                "use the log-space closed forms instead")
        return (self.kind, self.fparams, self.xs, self.ys, self.post,
                self.post_c)


def g0_from_u0(u0):
    """Swirl seed g0(rho) = u0(rho)/rho, requiring u0 = O(rho) near 0."""
    if u0.kind == KIND_RHO_GAUSS2:
        fp = u0.fparams
        return RadialProfile.gaussian_pair(fp[0], fp[1], fp[2], fp[3])
    if u0.kind == KIND_CONST and u0.fparams[0] == 0.0:
        return RadialProfile.constant(0.0)
    if u0.kind == KIND_TABLE:
        xs, ys = u0.xs, u0.ys
        g = np.empty_like(ys)
        pos = xs > 0
        g[pos] = ys[pos] / xs[pos]
        if not pos[0]:
            # linear leading segment: u/r tends to the first chord slope
            g[0] = (ys[1] - ys[0]) / (xs[1] - xs[0])
        if u0.fparams[0] != 0.0:
            raise InvalidArgumentError(
                "u0 table must decay to 0 for u0/rho to stay integrable")
        return RadialProfile.table(xs, g, tail=0.0)

    def call(r):
        r = np.asarray(r, dtype=float)
        rr = np.where(r > 0, r, 1e-9)
        return np.asarray(u0(rr), dtype=float) / rr

    return RadialProfile.from_callable(call, decay=u0.decay)
