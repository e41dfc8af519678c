"""Exact global solutions of the rotationally symmetric 2D liquid-crystal
system, with independent numerical verification.

The swirl velocity rides a 4D radial heat semigroup, the director's polar
angle a 2D one after a linearizing change of variable, the azimuth follows
the polar angle along a fixed curve on the sphere, and the pressure closes
the system through a radial integral. The verifier measures finite-difference
residuals of the original equations on the assembled fields and monitors the
maximum-principle invariants; a staircase counterexample shows the heat
evolution's range need not shrink.
"""

from ._backend import USING_NUMBA, backend_name
from .errors import (ConfigError, DomainViolationError, InvalidArgumentError,
                     NotApplicableError, NumericalError)
from .nonshrink import (ProbeTimes, StaircaseSchedule, annulus_dominance,
                        build_v0, dirichlet_energy, origin_series,
                        probe_times)
from .profiles import RadialProfile, g0_from_u0
from .radial_heat import (HeatQuery, annulus_mass, annulus_mass_log,
                          heat2d_origin, heat2d_radial, heat4d_radial)
from .solution import (ExactSolution, FieldSnapshot, InitialData,
                       ValidationReport, validate_initial)
from .special import bessel_i0e, bessel_i1e, bessel_i1e_over_x
from .sphere_curve import (ModelParams, F_inv, F_map, delta2_of,
                           director_from_angles, metric_factor,
                           ode_residual_phi, phi_of_psi,
                           phi_of_psi_quadrature, phi_prime,
                           phi_range_growth)
from .verifier import (Diagnostics, ResidualReport, arc_length,
                       collect_diagnostics, energy, f_range,
                       reference_fd_solve, residual_angles,
                       residual_convergence, residual_director,
                       residual_pressure, residual_psi, residual_suite,
                       residual_u)

__version__ = "0.1.0"

__all__ = [
    "USING_NUMBA", "backend_name",
    "ConfigError", "DomainViolationError", "InvalidArgumentError",
    "NotApplicableError", "NumericalError",
    "ModelParams", "F_inv", "F_map", "delta2_of", "director_from_angles",
    "metric_factor", "ode_residual_phi", "phi_of_psi",
    "phi_of_psi_quadrature", "phi_prime", "phi_range_growth",
    "RadialProfile", "g0_from_u0",
    "HeatQuery", "annulus_mass", "annulus_mass_log", "heat2d_origin",
    "heat2d_radial", "heat4d_radial",
    "bessel_i0e", "bessel_i1e", "bessel_i1e_over_x",
    "ExactSolution", "FieldSnapshot", "InitialData", "ValidationReport",
    "validate_initial",
    "Diagnostics", "ResidualReport", "arc_length", "collect_diagnostics",
    "energy", "f_range", "reference_fd_solve", "residual_angles",
    "residual_convergence", "residual_director", "residual_pressure",
    "residual_psi", "residual_suite", "residual_u",
    "ProbeTimes", "StaircaseSchedule", "annulus_dominance", "build_v0",
    "dirichlet_energy", "origin_series", "probe_times",
]
