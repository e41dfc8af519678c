"""Run configuration: strict JSON object parsing and profile construction.

Unknown keys are rejected with their full path (silent typos must not alter
a run). Every constraint violation is collected with its path so one parse
reports all problems at once.
"""

import json
import math
from dataclasses import dataclass, field

from .errors import ConfigError
from .profiles import RadialProfile
from .solution import InitialData
from .sphere_curve import ModelParams

_FORMATS = ("csv", "json", "svg")

_FAMILY_KEYS = {
    "constant": {"value"},
    "gaussian-bump": {"center", "amplitude", "sigma"},
    "tanh-step": {"low", "high", "radius", "width"},
    "table": {"radii", "values", "tail"},
    "swirl-gaussian": {"amplitude", "sigma"},
    "staircase": {"c", "p", "K"},
}


@dataclass(frozen=True)
class RunConfig:
    beta: float
    delta1: float
    u0: dict
    psi0: dict
    far_field_psi: object  # float or None
    r_max: float
    n_r: int
    times: tuple
    quadrature_abs: float
    residual_h: float
    residual_tau: float
    out_directory: str
    formats: tuple
    counterexample: dict = field(default_factory=dict)

    def to_json(self):
        """Canonical serialization; parse_config round-trips it."""
        doc = {
            "model": {"beta": self.beta, "delta1": self.delta1},
            "initial": {"u0": self.u0, "psi0": self.psi0},
            "grid": {"r_max": self.r_max, "n_r": self.n_r,
                     "times": list(self.times)},
            "tolerances": {"quadrature_abs": self.quadrature_abs,
                           "residual_h": self.residual_h,
                           "residual_tau": self.residual_tau},
            "outputs": {"directory": self.out_directory,
                        "formats": list(self.formats)},
            "counterexample": dict(self.counterexample),
        }
        if self.far_field_psi is not None:
            doc["initial"]["far_field_psi"] = self.far_field_psi
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


class _Reader:
    def __init__(self):
        self.issues = []

    def reject_unknown(self, obj, path, allowed):
        for key in obj:
            if key not in allowed:
                self.issues.append((f"{path}.{key}" if path else key,
                                    "unknown key"))

    def get(self, obj, path, key, kind, default=None, required=False,
            check=None, message=None):
        if key not in obj:
            if required:
                self.issues.append((f"{path}.{key}" if path else key,
                                    "missing required key"))
            return default
        val = obj[key]
        full = f"{path}.{key}" if path else key
        if kind is float and isinstance(val, (int, float)) \
                and not isinstance(val, bool):
            val = float(val)
        if not isinstance(val, kind) or isinstance(val, bool):
            self.issues.append((full, f"expected {kind.__name__}"))
            return default
        if check is not None and not check(val):
            self.issues.append((full, message or "constraint violated"))
            return default
        return val


def parse_config(text):
    """Parse and validate a JSON config, or raise ConfigError listing every
    problem (syntax errors carry line/column)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([(f"line {exc.lineno}, column {exc.colno}",
                            f"syntax error: {exc.msg}")]) from exc
    if not isinstance(doc, dict):
        raise ConfigError([("", "top level must be a JSON object")])

    rd = _Reader()
    rd.reject_unknown(doc, "", {"model", "initial", "grid", "tolerances",
                                "outputs", "counterexample"})

    model = doc.get("model")
    if not isinstance(model, dict):
        rd.issues.append(("model", "missing required section"))
        model = {}
    rd.reject_unknown(model, "model", {"beta", "delta1"})
    beta = rd.get(model, "model", "beta", float, required=True,
                  check=lambda v: v > 1.0, message="beta must exceed 1")
    delta1 = rd.get(model, "model", "delta1", float, required=True,
                    check=lambda v: 0.0 < v < math.pi / 2,
                    message="delta1 must lie in (0, pi/2)")
    if beta is not None and delta1 is not None:
        need = 1.0 / math.sin(delta1) ** 2
        if beta < need:
            rd.issues.append(("model.beta",
                              f"beta must be at least 1/sin(delta1)^2 = {need:.6f}"))

    initial = doc.get("initial")
    if not isinstance(initial, dict):
        rd.issues.append(("initial", "missing required section"))
        initial = {}
    rd.reject_unknown(initial, "initial", {"u0", "psi0", "far_field_psi"})
    u0 = _read_family(rd, initial.get("u0"), "initial.u0")
    psi0 = _read_family(rd, initial.get("psi0"), "initial.psi0")
    far = rd.get(initial, "initial", "far_field_psi", float,
                 check=lambda v: 0.0 < v < math.pi,
                 message="far_field_psi must lie in (0, pi)")

    grid = doc.get("grid", {})
    if not isinstance(grid, dict):
        rd.issues.append(("grid", "must be an object"))
        grid = {}
    rd.reject_unknown(grid, "grid", {"r_max", "n_r", "times"})
    r_max = rd.get(grid, "grid", "r_max", float, default=4.0,
                   check=lambda v: v > 0, message="r_max must be positive")
    n_r = rd.get(grid, "grid", "n_r", int, default=64,
                 check=lambda v: v >= 16, message="n_r must be at least 16")
    times = rd.get(grid, "grid", "times", list, default=[0.0, 0.1])
    if times is not None:
        ok = (all(isinstance(t, (int, float)) and not isinstance(t, bool)
                  and t >= 0 for t in times)
              and all(b > a for a, b in zip(times, times[1:]))
              and len(times) > 0)
        if not ok:
            rd.issues.append(("grid.times",
                              "times must be non-negative and strictly increasing"))
        else:
            times = [float(t) for t in times]

    tols = doc.get("tolerances", {})
    if not isinstance(tols, dict):
        rd.issues.append(("tolerances", "must be an object"))
        tols = {}
    rd.reject_unknown(tols, "tolerances",
                      {"quadrature_abs", "residual_h", "residual_tau"})
    pos = (lambda v: v > 0, "must be positive")
    quad_abs = rd.get(tols, "tolerances", "quadrature_abs", float,
                      default=1e-10, check=pos[0], message=pos[1])
    res_h = rd.get(tols, "tolerances", "residual_h", float, default=1e-3,
                   check=pos[0], message=pos[1])
    res_tau = rd.get(tols, "tolerances", "residual_tau", float, default=1e-3,
                     check=pos[0], message=pos[1])

    outputs = doc.get("outputs", {})
    if not isinstance(outputs, dict):
        rd.issues.append(("outputs", "must be an object"))
        outputs = {}
    rd.reject_unknown(outputs, "outputs", {"directory", "formats"})
    out_dir = rd.get(outputs, "outputs", "directory", str, default="out")
    formats = rd.get(outputs, "outputs", "formats", list,
                     default=list(_FORMATS))
    if formats is not None:
        if not all(isinstance(f, str) and f in _FORMATS for f in formats):
            rd.issues.append(("outputs.formats",
                              f"formats must be a subset of {_FORMATS}"))

    cx = doc.get("counterexample", {})
    if not isinstance(cx, dict):
        rd.issues.append(("counterexample", "must be an object"))
        cx = {}
    rd.reject_unknown(cx, "counterexample", {"c", "p", "K", "probes"})
    cx_c = rd.get(cx, "counterexample", "c", float, default=0.05,
                  check=pos[0], message=pos[1])
    cx_p = rd.get(cx, "counterexample", "p", float, default=3.0,
                  check=pos[0], message=pos[1])
    cx_k = rd.get(cx, "counterexample", "K", int, default=3,
                  check=lambda v: v >= 1, message="K must be >= 1")
    cx_probes = rd.get(cx, "counterexample", "probes", int, default=None,
                       check=lambda v: v >= 1, message="probes must be >= 1")
    if cx_probes is None:
        cx_probes = cx_k if cx_k else 3
    if cx_k is not None and cx_probes is not None and cx_probes > cx_k:
        rd.issues.append(("counterexample.probes", "probes cannot exceed K"))

    if rd.issues:
        raise ConfigError(rd.issues)

    return RunConfig(beta=beta, delta1=delta1, u0=u0, psi0=psi0,
                     far_field_psi=far, r_max=r_max, n_r=n_r,
                     times=tuple(times), quadrature_abs=quad_abs,
                     residual_h=res_h, residual_tau=res_tau,
                     out_directory=out_dir, formats=tuple(formats),
                     counterexample={"c": cx_c, "p": cx_p, "K": cx_k,
                                     "probes": cx_probes})


def _read_family(rd, spec, path):
    if spec is None:
        rd.issues.append((path, "missing required profile"))
        return {}
    if not isinstance(spec, dict) or "family" not in spec:
        rd.issues.append((path, "profile must be an object with a 'family' key"))
        return {}
    family = spec["family"]
    if family not in _FAMILY_KEYS:
        rd.issues.append((f"{path}.family",
                          f"unknown family (choose from {sorted(_FAMILY_KEYS)})"))
        return {}
    allowed = _FAMILY_KEYS[family] | {"family"}
    rd.reject_unknown(spec, path, allowed)
    for key, val in spec.items():
        if key in ("family", "radii", "values"):
            continue
        if not isinstance(val, (int, float)) or isinstance(val, bool):
            rd.issues.append((f"{path}.{key}", "expected a number"))
    return dict(spec)


def profile_from_family(spec):
    """RadialProfile from a validated family dict.

    Family compliance notes: a gaussian-bump psi0 = center + A e^{-r^2/s^2}
    satisfies the range condition iff delta1 < center - |A| and
    center + |A| < pi - delta1; tanh-step needs both levels inside the
    strip; swirl-gaussian u0 vanishes linearly at 0 as required.
    """
    family = spec["family"]
    if family == "constant":
        return RadialProfile.constant(spec["value"])
    if family == "gaussian-bump":
        return RadialProfile.gaussian_bump(spec["center"], spec["amplitude"],
                                           spec["sigma"])
    if family == "tanh-step":
        return RadialProfile.tanh_step(spec["low"], spec["high"],
                                       spec["radius"], spec["width"])
    if family == "table":
        return RadialProfile.table(spec["radii"], spec["values"],
                                   tail=spec.get("tail"))
    if family == "swirl-gaussian":
        return RadialProfile.swirl_gaussian(spec["amplitude"], spec["sigma"])
    if family == "staircase":
        from .nonshrink import StaircaseSchedule, build_v0
        sched = StaircaseSchedule.polynomial(spec.get("c", 0.05),
                                             spec.get("p", 3.0),
                                             int(spec.get("K", 3)))
        return build_v0(sched)
    raise ConfigError([("family", f"unknown family {family!r}")])


def initial_data_from_config(cfg):
    params = ModelParams(beta=cfg.beta, delta1=cfg.delta1)
    return InitialData(params=params,
                       u0=profile_from_family(cfg.u0),
                       psi0=profile_from_family(cfg.psi0),
                       far_field_psi=cfg.far_field_psi)
