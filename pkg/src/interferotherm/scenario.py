"""Scenario files and their evaluation into result rows.

A scenario is an INI file (or the equivalent nested JSON object)::

    [sample]
    mass = 1e-10
    omega = 1e2

    [light]
    omega_p = 1e10
    photon_number = 1e10

    [kerr]
    chi = 1e-8

    [temperature]
    kT = 1e-21          ; or value = <K>, or start/stop/points/log

    [model]
    name = auto

Optional sections: ``[loss]``, ``[setup]`` (``mirrors = one|two``),
``[constants]``, ``[outputs]`` (``quantities = ...``) and ``[reference]``
(``claimed_delta_T``, ``claimed_relative``) for comparing against quoted
numbers.
"""

from __future__ import annotations

import configparser
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ParseError, ThermometryError, UnknownParameter
from .estimation import (
    Formula,
    estimate_high_T,
    estimate_low_T,
    formula_value,
    resolution_paper,
    resolution_propagated,
)
from .interferometer import MeasurementModel, effective_frequency, second_moment
from .params import (
    ExperimentSpec,
    KerrSpec,
    LightSpec,
    LossSpec,
    Mirrors,
    PhysicalConstants,
    RegimeTag,
    SampleSpec,
    classify_regime,
    validate,
    warnings_at,
)

OUTPUTS = ("mean_M", "delta_M", "paper_delta_M", "T_hat", "delta_T_paper", "delta_T_propagated")
DEFAULT_OUTPUTS = OUTPUTS

#: Sweepable parameters and the ExperimentSpec field each one sets.
SWEEPABLE = {
    "T": None,
    "N": "photon_number",
    "omega_p": "omega_p",
    "chi": "chi",
    "eta": "eta_detect",
    "omega": "omega",
    "m": "mass",
}

#: Ratio above which a quoted number is flagged as inconsistent.
DISCREPANCY_FACTOR = 10.0

_SECTIONS = {
    "sample": (SampleSpec, {"mass", "omega"}),
    "light": (LightSpec, {"omega_p", "photon_number", "refractive_index"}),
    "kerr": (KerrSpec, {"chi"}),
    "loss": (LossSpec, {"eta_detect", "eta_reflect"}),
    "constants": (PhysicalConstants, {"hbar", "boltzmann", "light_speed"}),
}

_OTHER_KEYS = {
    "setup": {"mirrors"},
    "temperature": {"value", "values", "kT", "kt", "start", "stop", "points", "log"},
    "model": {"name", "override_regime"},
    "outputs": {"quantities"},
    "reference": {"claimed_delta_T", "claimed_relative"},
}


@dataclass(frozen=True)
class Scenario:
    spec: ExperimentSpec
    temperatures: tuple
    model: str = "auto"
    outputs: tuple = DEFAULT_OUTPUTS
    override_regime: bool = False
    reference: dict = field(default_factory=dict)
    source: dict = field(default_factory=dict)


def _float(section, key, value):
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ParseError(f"[{section}] {key} = {value!r} is not a number") from None


def _bool(value):
    if isinstance(value, bool):
        return value
    s = str(value).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off", ""):
        return False
    raise ParseError(f"not a boolean: {value!r}")


def _temperatures(section, constants):
    if not section:
        raise ParseError("missing [temperature] section")
    keys = set(section)
    if "value" in keys:
        return (_float("temperature", "value", section["value"]),)
    if "values" in keys:
        raw = section["values"]
        items = raw if isinstance(raw, list) else [v for v in str(raw).split(",") if v.strip()]
        temps = tuple(_float("temperature", "values", v) for v in items)
        if len(temps) < 2:
            raise ParseError("[temperature] values needs at least 2 entries; use value for one")
        return temps
    if "kT" in keys or "kt" in keys:
        kT = _float("temperature", "kT", section.get("kT", section.get("kt")))
        return (kT / constants.boltzmann,)
    if {"start", "stop", "points"} <= keys:
        start = _float("temperature", "start", section["start"])
        stop = _float("temperature", "stop", section["stop"])
        try:
            points = int(section["points"])
        except (TypeError, ValueError):
            raise ParseError(f"[temperature] points = {section['points']!r} is not an integer") from None
        if points < 2:
            raise ParseError("a temperature sweep needs at least 2 points")
        if _bool(section.get("log", False)):
            if start <= 0 or stop <= 0:
                raise ParseError("log-spaced sweep needs positive start and stop")
            grid = np.geomspace(start, stop, points)
        else:
            grid = np.linspace(start, stop, points)
        return tuple(float(t) for t in grid)
    raise ParseError("[temperature] needs value, kT, or start/stop/points")


def from_mapping(data):
    """Build a :class:`Scenario` from nested section -> key -> value data."""
    if not isinstance(data, dict):
        raise ParseError("scenario must be a mapping of sections")
    extra = set(data) - set(_SECTIONS) - set(_OTHER_KEYS)
    if extra:
        raise ParseError(f"unknown section(s): {', '.join(sorted(extra))}")
    for name, allowed in _OTHER_KEYS.items():
        sec = data.get(name, {}) or {}
        unknown = set(sec) - allowed if allowed is not None else set()
        if unknown:
            raise ParseError(f"unknown key(s) in [{name}]: {', '.join(sorted(unknown))}")
    parts = {}
    for name, (cls, allowed) in _SECTIONS.items():
        sec = data.get(name, {}) or {}
        unknown = set(sec) - allowed
        if unknown:
            raise ParseError(f"unknown key(s) in [{name}]: {', '.join(sorted(unknown))}")
        parts[name] = {k: _float(name, k, v) for k, v in sec.items()}
    for required in ("sample", "light"):
        missing = _SECTIONS[required][1] - {"refractive_index"} - set(parts[required])
        if missing:
            raise ParseError(f"[{required}] is missing {', '.join(sorted(missing))}")

    setup = data.get("setup", {}) or {}
    try:
        mirrors = Mirrors(str(setup.get("mirrors", "one")).strip().lower())
    except ValueError:
        raise ParseError(f"[setup] mirrors must be 'one' or 'two', got {setup.get('mirrors')!r}") from None

    constants = PhysicalConstants(**parts["constants"])
    spec = ExperimentSpec(
        sample=SampleSpec(**parts["sample"]),
        light=LightSpec(**parts["light"]),
        kerr=KerrSpec(**parts["kerr"]),
        loss=LossSpec(**parts["loss"]),
        mirrors=mirrors,
        constants=constants,
    )
    temps = _temperatures(data.get("temperature"), constants)

    model_sec = data.get("model", {}) or {}
    model = str(model_sec.get("name", "auto")).strip()
    if model.lower() != "auto":
        try:
            model = MeasurementModel.parse(model).value
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    else:
        model = "auto"
    override = _bool(model_sec.get("override_regime", False))

    out_sec = data.get("outputs", {}) or {}
    outputs = DEFAULT_OUTPUTS
    if "quantities" in out_sec:
        q = out_sec["quantities"]
        items = q if isinstance(q, list) else [s.strip() for s in str(q).split(",")]
        bad = [s for s in items if s not in OUTPUTS]
        if bad:
            raise ParseError(f"unknown output(s): {', '.join(bad)}")
        outputs = tuple(items)

    ref = {k: _float("reference", k, v) for k, v in (data.get("reference", {}) or {}).items()}
    return Scenario(spec, temps, model, outputs, override, ref, data)


def parse_text(text, fmt=None):
    """Parse scenario text; ``fmt`` is 'ini', 'json', or None to sniff.

    Raises
    ------
    ParseError
        Malformed text, unknown keys, or an invalid temperature sweep.
    """
    if fmt is None:
        fmt = "json" if text.lstrip().startswith("{") else "ini"
    if fmt == "json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return from_mapping(data)
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ParseError(f"invalid scenario file: {exc}") from None
    return from_mapping({s: dict(cp[s]) for s in cp.sections()})


def load(path):
    """Load a scenario from ``path``; ``"paper"`` selects the bundled one."""
    if str(path) == "paper":
        return parse_text(paper_scenario_text())
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read scenario {path}: {exc}") from None
    return parse_text(text, "json" if p.suffix.lower() == ".json" else None)


def paper_scenario_text():
    return resources.files("interferotherm").joinpath("data/paper_discussion.ini").read_text()


def to_ini(scenario):
    """Render the resolved scenario as INI text."""
    s = scenario.spec
    lines = []

    def section(name, items):
        lines.append(f"[{name}]")
        lines.extend(f"{k} = {v!r}" if isinstance(v, float) else f"{k} = {v}" for k, v in items)
        lines.append("")

    section("sample", [("mass", s.sample.mass), ("omega", s.sample.omega)])
    section(
        "light",
        [
            ("omega_p", s.light.omega_p),
            ("photon_number", float(s.light.photon_number)),
            ("refractive_index", s.light.refractive_index),
        ],
    )
    section("kerr", [("chi", float(s.kerr.chi))])
    section("loss", [("eta_detect", s.loss.eta_detect), ("eta_reflect", s.loss.eta_reflect)])
    section("setup", [("mirrors", s.mirrors.value)])
    c = s.constants
    section("constants", [("hbar", c.hbar), ("boltzmann", c.boltzmann), ("light_speed", c.light_speed)])
    if len(scenario.temperatures) == 1:
        section("temperature", [("value", scenario.temperatures[0])])
    else:
        section("temperature", [("values", ", ".join(repr(t) for t in scenario.temperatures))])
    section("model", [("name", scenario.model), ("override_regime", str(scenario.override_regime).lower())])
    section("outputs", [("quantities", ", ".join(scenario.outputs))])
    if scenario.reference:
        section("reference", sorted(scenario.reference.items()))
    return "\n".join(lines)


# --- evaluation -----------------------------------------------------------

def resolve_model(spec, T, model):
    if model != "auto":
        return MeasurementModel.parse(model)
    tag = classify_regime(spec, T).tag
    if tag is RegimeTag.HIGH_T:
        return MeasurementModel.QUADRATIC_HIGH_T
    if tag is RegimeTag.LOW_T:
        return MeasurementModel.TWO_LEVEL_LOW_T
    return MeasurementModel.EXACT_GAUSSIAN


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def evaluate_point(spec, T, model="auto", outputs=DEFAULT_OUTPUTS, override=False, reference=None):
    """Evaluate one temperature point into an ordered row dict.

    Domain errors do not propagate; they are recorded in the ``error``
    column and the row keeps whatever was computed before the failure.
    """
    spec = validate(spec)
    row = {
        "mass_kg": spec.sample.mass,
        "omega_rad_s": spec.sample.omega,
        "omega_p_rad_s": spec.light.omega_p,
        "photon_number": float(spec.light.photon_number),
        "refractive_index": spec.light.refractive_index,
        "chi": float(spec.kerr.chi),
        "eta_detect": spec.loss.eta_detect,
        "eta_reflect": spec.loss.eta_reflect,
        "mirrors": spec.mirrors.value,
        "T_K": float(T),
    }
    errors = []
    try:
        regime = classify_regime(spec, T)
        row["ratio_hbar_omega_over_kT"] = regime.ratio
        row["regime"] = regime.tag.value
        resolved = resolve_model(spec, T, model)
        row["model"] = resolved.value
        row["omega_p_eff_rad_s"] = effective_frequency(spec)
        warn = warnings_at(spec, T)
    except ThermometryError as exc:
        row["warnings"] = ""
        row["error"] = str(exc)
        return row, True
    override = override or model == "auto"

    for name in outputs:
        try:
            if name == "mean_M":
                stats = second_moment(spec, T, resolved, override)
                row["mean_M"] = stats.mean_M
            elif name == "delta_M":
                stats = second_moment(spec, T, resolved, override)
                row["delta_M"] = stats.delta_M
            elif name == "paper_delta_M":
                row["paper_delta_M"] = spec.loss.efficiency * float(spec.light.photon_number)
            elif name == "T_hat":
                stats = second_moment(spec, T, resolved, override)
                if regime.tag is RegimeTag.LOW_T and spec.mirrors is Mirrors.ONE:
                    est = estimate_low_T(spec, stats)
                else:
                    est = estimate_high_T(spec, stats)
                row["T_hat_K"] = est.T_hat
                row["estimator"] = est.estimator.value
            elif name == "delta_T_paper":
                rep = resolution_paper(spec)
                row["delta_T_paper_K"] = rep.delta_T_paper
                row["formula"] = rep.formula.value
            elif name == "delta_T_propagated":
                rep = resolution_propagated(spec, T, resolved, override=override)
                row["delta_T_propagated_K"] = rep.delta_T_propagated
                row["delta_T_paper_spread_K"] = rep.delta_T_paper_spread
                row["dM_dT_per_K"] = rep.dM_dT
        except ThermometryError as exc:
            errors.append(f"{name}: {exc}")

    if reference:
        lossy = formula_value(spec, Formula.EQ25)
        row["lossy_formula_delta_T_K"] = lossy
        if "claimed_delta_T" in reference:
            claimed = reference["claimed_delta_T"]
            ratio = lossy / claimed
            row["claimed_delta_T_K"] = claimed
            row["claim_ratio"] = ratio
            row["claim_flag"] = "DISCREPANCY" if _discrepant(ratio) else "consistent"
        if "claimed_relative" in reference:
            rel = lossy / T
            claimed = reference["claimed_relative"]
            row["relative_delta_T"] = rel
            row["claimed_relative"] = claimed
            row["relative_flag"] = "DISCREPANCY" if _discrepant(rel / claimed) else "consistent"

    row["warnings"] = "; ".join(warn)
    row["error"] = "; ".join(errors)
    return row, bool(errors)


def _discrepant(ratio):
    return not (1.0 / DISCREPANCY_FACTOR <= ratio <= DISCREPANCY_FACTOR)


def evaluate(scenario):
    """Rows for every temperature of ``scenario`` plus an any-error flag."""
    spec = validate(scenario.spec)
    rows, failed = [], False
    for T in scenario.temperatures:
        row, bad = evaluate_point(
            spec, T, scenario.model, scenario.outputs, scenario.override_regime, scenario.reference
        )
        rows.append(row)
        failed |= bad
    return rows, failed


def parse_grid(text):
    """``log:start:stop:points``, ``lin:start:stop:points`` or ``v1,v2,...``."""
    text = text.strip()
    try:
        if text.startswith(("log:", "lin:")):
            kind, start, stop, points = text.split(":")
            start, stop, points = float(start), float(stop), int(points)
            if points < 2:
                raise ParseError("a grid needs at least 2 points")
            if kind == "log":
                if start <= 0 or stop <= 0:
                    raise ParseError("log grid needs positive bounds")
                return tuple(float(v) for v in np.geomspace(start, stop, points))
            return tuple(float(v) for v in np.linspace(start, stop, points))
        values = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ParseError(f"cannot parse grid {text!r}") from None
    if not values:
        raise ParseError("empty grid")
    return values


def sweep(scenario, vary, grid):
    """Rows for ``scenario`` with one parameter stepped over ``grid``.

    Raises
    ------
    UnknownParameter
        ``vary`` is not one of T, N, omega_p, chi, eta, omega, m.
    """
    if vary not in SWEEPABLE:
        raise UnknownParameter(vary, SWEEPABLE)
    if vary == "T":
        points = [(scenario.spec, T) for T in grid]
    else:
        if len(scenario.temperatures) != 1:
            raise ParseError("sweeping a parameter needs a single temperature in the scenario")
        T = scenario.temperatures[0]
        changes = {"eta_reflect": 1.0} if vary == "eta" else {}
        points = [(scenario.spec.with_(**{SWEEPABLE[vary]: v}, **changes), T) for v in grid]

    rows, failed = [], False
    for spec, T in points:
        try:
            row, bad = evaluate_point(
                validate(spec), T, scenario.model, scenario.outputs, scenario.override_regime, scenario.reference
            )
        except ThermometryError as exc:
            row, bad = {"T_K": T, "error": str(exc)}, True
        rows.append(row)
        failed |= bad
    return rows, failed


def _columns(rows):
    cols = []
    for row in rows:
        for k in row:
            if k not in cols:
                cols.append(k)
    # warnings and error always last
    for tail in ("warnings", "error"):
        if tail in cols:
            cols.remove(tail)
            cols.append(tail)
    return cols


def to_csv(rows):
    import csv
    import io

    buf = io.StringIO()
    cols = _columns(rows)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in cols])
    return buf.getvalue()


def to_json(rows):
    clean = [{k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in r.items()} for r in rows]
    return json.dumps(clean, indent=2) + "\n"
