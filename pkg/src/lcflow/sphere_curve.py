"""Geometry of the director's image curve on the unit sphere.

The director d = (sin psi cos phi, sin psi sin phi, cos psi) traces a fixed
curve when phi is slaved to psi through the curve map Phi, whose derivative
satisfies (Phi')^2 = 1 / ((beta sin^2 psi - 1) sin^2 psi) on the strip where
beta sin^2 psi > 1. The companion change of variable
F(psi) = arccos(sqrt(beta/(beta-1)) cos psi) linearizes the radial evolution
of psi; its inverse is F_inv(f) = arccos(sqrt((beta-1)/beta) cos f).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainViolationError, InvalidArgumentError
from .quadrature import adaptive_gauss_legendre

# strict-inequality guard for beta*sin(psi)**2 > 1 (avoids arccos/sqrt overflow
# at the boundary)
DOMAIN_MARGIN = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Curve parameters: beta > 1 and the angular inset delta1 in (0, pi/2).

    beta >= 1/sin(delta1)^2 guarantees beta*sin(psi)^2 > 1 on
    (delta1, pi - delta1).
    """

    beta: float
    delta1: float

    def __post_init__(self):
        if not (np.isfinite(self.beta) and np.isfinite(self.delta1)):
            raise InvalidArgumentError("ModelParams fields must be finite")
        if self.beta <= 1.0:
            raise InvalidArgumentError("beta must exceed 1")
        if not (0.0 < self.delta1 < math.pi / 2):
            raise InvalidArgumentError("delta1 must lie in (0, pi/2)")
        if self.beta < 1.0 / math.sin(self.delta1) ** 2:
            raise InvalidArgumentError(
                "beta must be at least 1/sin(delta1)^2 "
                f"(= {1.0 / math.sin(self.delta1) ** 2:.6f})")

    def validity_margin(self, psi):
        """beta*sin(psi)^2 - 1 (positive inside the valid strip)."""
        return self.beta * np.sin(psi) ** 2 - 1.0


def _require_finite(name, value):
    value = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(value)):
        raise InvalidArgumentError(f"{name} must be finite")
    return value


def _require_margin(params, psi):
    psi = _require_finite("psi", psi)
    margin = params.validity_margin(psi)
    bad = margin <= DOMAIN_MARGIN
    if np.any(bad):
        worst = np.argmin(np.atleast_1d(margin))
        psi_flat = np.atleast_1d(psi)
        mar_flat = np.atleast_1d(margin)
        raise DomainViolationError(psi_flat[worst], mar_flat[worst])
    return psi, margin


def director_from_angles(psi, phi):
    """Unit director for polar angle psi and azimuth phi.

    Scalars give shape (3,), arrays give shape (..., 3); unit norm within a
    few eps by construction.
    """
    psi = _require_finite("psi", psi)
    phi = _require_finite("phi", phi)
    sp = np.sin(psi)
    d = np.stack([sp * np.cos(phi), sp * np.sin(phi),
                  np.cos(psi) * np.ones_like(phi)], axis=-1)
    return d


def phi_prime(psi, params, negative_branch=False):
    """dPhi/dpsi = 1/(sqrt(beta sin^2 psi - 1) sin psi), positive branch.

    The negative branch is exposed behind the flag for completeness; the
    construction fixes the positive one.
    """
    psi, margin = _require_margin(params, psi)
    out = 1.0 / (np.sqrt(margin) * np.sin(psi))
    return -out if negative_branch else out


def phi_of_psi(psi, params, negative_branch=False):
    """Curve map Phi(psi) = int_{pi/2}^{psi} phi_prime, via the exact
    antiderivative arctan(-cos psi / sqrt(beta sin^2 psi - 1)).

    Odd about pi/2, strictly increasing, Phi(pi/2) = 0.
    """
    psi, margin = _require_margin(params, psi)
    out = np.arctan(-np.cos(psi) / np.sqrt(margin))
    if negative_branch:
        out = -out
    return float(out) if np.ndim(psi) == 0 else out


def phi_of_psi_quadrature(psi, params, abs_tol=1e-12):
    """Phi(psi) by adaptive Gauss-Legendre panels over [pi/2, psi].

    Secondary route kept for verification against the antiderivative; panels
    bisect automatically toward the steep ends of the strip.
    """
    psi = float(_require_finite("psi", psi))
    # sin^2 is concave on (0, pi): the interval minimum sits at an endpoint
    _require_margin(params, np.array([psi, math.pi / 2]))
    integrand = lambda s: phi_prime(s, params)
    return adaptive_gauss_legendre(integrand, math.pi / 2, psi,
                                   abs_tol=abs_tol)


def _fmap_coeff(params):
    return math.sqrt(params.beta / (params.beta - 1.0))


def F_map(psi, params):
    """Linearizing map F(psi) = arccos(sqrt(beta/(beta-1)) cos psi)."""
    psi, _ = _require_margin(params, psi)
    arg = _fmap_coeff(params) * np.cos(psi)
    # margin check above already forces |arg| < 1
    out = np.arccos(arg)
    return float(out) if np.ndim(psi) == 0 else out


def F_inv(f, params):
    """Inverse map arccos(sqrt((beta-1)/beta) cos f) for f in (0, pi).

    Its range is exactly the open strip where beta sin^2 psi > 1, so the
    validity constraint propagates automatically.
    """
    f = _require_finite("f", f)
    if np.any(f <= 0.0) or np.any(f >= math.pi):
        raise InvalidArgumentError("f must lie in the open interval (0, pi)")
    arg = np.cos(f) / _fmap_coeff(params)
    out = np.arccos(arg)
    return float(out) if np.ndim(f) == 0 else out


def delta2_of(params):
    """delta2 = F(delta1), the inset of the transformed strip.

    Degenerate (zero margin) when beta sin^2 delta1 = 1: that collapses
    delta2 to 0, which downstream range checks cannot use.
    """
    margin = params.validity_margin(params.delta1)
    if margin <= DOMAIN_MARGIN:
        raise DomainViolationError(
            params.delta1, margin,
            what="delta2 degenerates to 0: beta*sin(delta1)^2 must exceed 1")
    return float(F_map(params.delta1, params))


def metric_factor(psi, params):
    """Squared speed 1 + sin^2 psi (Phi')^2 = beta sin^2 psi/(beta sin^2 psi - 1).

    Always > 1 on the valid strip; its square root integrates to the arc
    length of the image curve.
    """
    psi, margin = _require_margin(params, psi)
    out = (margin + 1.0) / margin
    return float(out) if np.ndim(psi) == 0 else out


def ode_residual_phi(psi_samples, params):
    """Max |Phi'' sin^2 psi + 2 Phi' cos psi sin psi + (Phi')^3 cos psi sin^3 psi|
    over interior samples, with Phi', Phi'' by central differences.

    Samples must be uniformly spaced and strictly inside the valid strip;
    the residual vanishes at order h^2 under refinement.
    """
    psi = np.asarray(psi_samples, dtype=float)
    if psi.ndim != 1 or psi.size < 3:
        raise InvalidArgumentError("need at least 3 uniformly spaced samples")
    h = psi[1] - psi[0]
    if h <= 0 or np.max(np.abs(np.diff(psi) - h)) > 1e-9 * abs(h):
        raise InvalidArgumentError("samples must be uniformly increasing")
    big_phi = phi_of_psi(psi, params)
    d1 = (big_phi[2:] - big_phi[:-2]) / (2.0 * h)
    d2 = (big_phi[2:] - 2.0 * big_phi[1:-1] + big_phi[:-2]) / (h * h)
    s = np.sin(psi[1:-1])
    c = np.cos(psi[1:-1])
    res = d2 * s ** 2 + 2.0 * d1 * c * s + d1 ** 3 * c * s ** 3
    return float(np.max(np.abs(res)))


def phi_range_growth(delta1_list, margin=0.5, eps=1e-3):
    """|Phi(pi - delta1 - eps)| for each delta1, with beta = 1/sin^2 delta1 + margin.

    The values grow strictly as delta1 decreases, witnessing the widening of
    the curve's azimuthal range.
    """
    out = []
    for d1 in delta1_list:
        d1 = float(d1)
        if not (0.0 < d1 < math.pi / 2):
            raise InvalidArgumentError("each delta1 must lie in (0, pi/2)")
        if eps <= 0 or d1 + eps >= math.pi / 2:
            raise InvalidArgumentError("eps must be small and positive")
        params = ModelParams(beta=1.0 / math.sin(d1) ** 2 + margin, delta1=d1)
        out.append(abs(phi_of_psi(math.pi - d1 - eps, params)))
    return out
