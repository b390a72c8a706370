"""Deterministic execution of parsed scenarios.

A run resolves parameters (declared defaults, then caller overrides),
replays the declarations against a fresh register and evaluates every
measurement request in declaration order.  A sweep repeats independent
runs over a parameter grid; rows always come out in ascending parameter
order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .criteria import (
    CriterionResult,
    EllipsePoint,
    conditional_ellipse,
    duan_quadrature,
    epr_product_quadrature,
    epr_product_stokes,
    stokes_inseparability,
)
from .errors import PhysicsError
from .register import GaussianRegister
from .scenario import BeamSplit, Loss, Measurement, Rotate, ScenarioSpec, eval_expr
from .spectrum import SqueezingSpectrum
from .stokes import PolBeam, StokesMeans, make_beam, stokes_means

# correlation terms larger than this (relative to the criterion bound) get a
# warning: the normalization assumes they vanish
CORRELATION_WARN_TOL = 1e-9

MeasurementResult = CriterionResult | StokesMeans | EllipsePoint


@dataclass(frozen=True)
class Report:
    """Results of one run: resolved parameters, (name, result) entries in
    declaration order and any warnings raised while evaluating."""

    params: dict[str, float]
    entries: tuple[tuple[str, MeasurementResult], ...]
    warnings: tuple[str, ...]


@dataclass(frozen=True)
class SweepTable:
    """One row per parameter value, ascending; columns are flattened scalar
    measurement outputs with NaN where a flagged result has no value."""

    param: str
    values: tuple[float, ...]
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    flags: tuple[str, ...]


def resolve_params(spec: ScenarioSpec, overrides: dict[str, float] | None) -> dict[str, float]:
    params = {p.name: eval_expr(p.default, {}) for p in spec.params}
    for name, value in (overrides or {}).items():
        if name not in params:
            raise ValueError(f"override of undeclared parameter {name!r}")
        params[name] = float(value)
    return params


def _wrap_physics(line: int, exc: PhysicsError) -> PhysicsError:
    wrapped = PhysicsError(f"line {line}: {exc}")
    wrapped.line = line
    return wrapped


def _execute(spec: ScenarioSpec, params: dict[str, float]):
    reg = GaussianRegister()
    mode_ids: dict[str, int] = {}
    for decl in spec.modes:
        try:
            if decl.kind == "vacuum":
                mode_ids[decl.name] = reg.add_vacuum()
            elif decl.kind == "coherent":
                mode_ids[decl.name] = reg.add_coherent(eval_expr(decl.alpha, params))
            else:
                alpha = eval_expr(decl.alpha, params) if decl.alpha is not None else 0.0
                mode_ids[decl.name] = reg.add_squeezed(
                    eval_expr(decl.v_plus, params),
                    eval_expr(decl.v_minus, params),
                    alpha,
                )
        except PhysicsError as exc:
            raise _wrap_physics(decl.line, exc) from exc
    for element in spec.elements:
        try:
            if isinstance(element, Rotate):
                reg.apply_rotation(mode_ids[element.mode], eval_expr(element.angle, params))
            elif isinstance(element, BeamSplit):
                phase = eval_expr(element.phase, params) if element.phase is not None else 0.0
                reg.apply_beamsplitter(
                    mode_ids[element.mode_a], mode_ids[element.mode_b],
                    eval_expr(element.eta, params), phase,
                )
            else:
                reg.apply_loss(mode_ids[element.mode], eval_expr(element.eta, params))
        except PhysicsError as exc:
            raise _wrap_physics(element.line, exc) from exc
    beams = {
        b.name: make_beam(reg, mode_ids[b.h], mode_ids[b.v], eval_expr(b.theta, params))
        for b in spec.beams
    }
    return reg, mode_ids, beams


def measurement_name(m: Measurement) -> str:
    if m.kind in ("duan", "epr_quad"):
        return m.kind
    if m.kind in ("insep", "epr_stokes"):
        return f"{m.kind}_S{m.indices[0]}S{m.indices[1]}"
    if m.kind == "stokes_means":
        return f"stokes_means_{m.beams[0]}"
    return f"ellipse_S{m.indices[0]}"


def _evaluate(m: Measurement, reg: GaussianRegister,
              mode_ids: dict[str, int], beams: dict[str, PolBeam]) -> MeasurementResult:
    try:
        if m.kind == "duan":
            return duan_quadrature(reg, mode_ids[m.modes[0]], mode_ids[m.modes[1]])
        if m.kind == "epr_quad":
            return epr_product_quadrature(reg, mode_ids[m.modes[0]], mode_ids[m.modes[1]])
        if m.kind == "insep":
            return stokes_inseparability(reg, beams[m.beams[0]], beams[m.beams[1]],
                                         m.indices[0], m.indices[1])
        if m.kind == "epr_stokes":
            return epr_product_stokes(reg, beams[m.beams[0]], beams[m.beams[1]],
                                      m.indices[0], m.indices[1])
        if m.kind == "stokes_means":
            return stokes_means(reg, beams[m.beams[0]])
        return conditional_ellipse(reg, beams[m.beams[0]], beams[m.beams[1]], m.indices[0])
    except PhysicsError as exc:
        raise _wrap_physics(m.line, exc) from exc


def run(spec: ScenarioSpec, overrides: dict[str, float] | None = None) -> Report:
    """Execute a scenario and evaluate all its measurements."""
    params = resolve_params(spec, overrides)
    reg, mode_ids, beams = _execute(spec, params)
    names: list[str] = []
    entries: list[tuple[str, MeasurementResult]] = []
    warnings: list[str] = []
    for m in spec.measurements:
        base = measurement_name(m)
        name = base
        serial = 2
        while name in names:
            name = f"{base}_{serial}"
            serial += 1
        names.append(name)
        result = _evaluate(m, reg, mode_ids, beams)
        if isinstance(result, CriterionResult):
            if result.zero_bound:
                warnings.append(
                    f"{name}: commutator bound is zero; criterion cannot certify"
                )
            elif result.correlation_term > CORRELATION_WARN_TOL * max(result.bound, 1.0):
                warnings.append(
                    f"{name}: correlation term {result.correlation_term:.3e} "
                    "is not negligible"
                )
        entries.append((name, result))
    return Report(params=params, entries=tuple(entries), warnings=tuple(warnings))


def flatten_result(name: str, result: MeasurementResult) -> list[tuple[str, float]]:
    """Scalar columns contributed by one measurement result."""
    if isinstance(result, CriterionResult):
        return [(name, result.value)]
    if isinstance(result, StokesMeans):
        return [(f"{name}.s{k}", getattr(result, f"s{k}")) for k in range(4)]
    cols = [(f"{name}.conditional", result.conditional),
            (f"{name}.unconditional", result.unconditional)]
    for idx, var in zip(result.other_indices, result.other_variances):
        cols.append((f"{name}.unconditional_S{idx}", var))
    return cols


def report_flags(report: Report) -> str:
    flagged = [
        f"{name}:zero_bound"
        for name, result in report.entries
        if isinstance(result, CriterionResult) and result.zero_bound
    ]
    return ";".join(flagged)


def sweep(spec: ScenarioSpec, param: str, start: float, stop: float, steps: int,
          overrides: dict[str, float] | None = None) -> SweepTable:
    """Independent runs over a parameter grid, rows ascending in the parameter."""
    if steps < 2:
        raise ValueError("sweep needs at least 2 steps")
    if param not in {p.name for p in spec.params}:
        raise ValueError(f"sweep parameter {param!r} is not declared in the scenario")
    values = np.linspace(start, stop, steps)
    return _sweep_rows(spec, param, values, overrides,
                       lambda value: {param: float(value)})


def sweep_spectrum(spec: ScenarioSpec, spectrum: SqueezingSpectrum,
                   start_mhz: float, stop_mhz: float, steps: int,
                   overrides: dict[str, float] | None = None,
                   freq_name: str = "f",
                   v_plus_param: str = "vplus",
                   v_minus_param: str = "vminus") -> SweepTable:
    """Sweep sideband frequency, feeding the spectrum's variances into the
    scenario's squeezing parameters.  The frequency column itself is
    synthetic and need not be declared."""
    if steps < 2:
        raise ValueError("sweep needs at least 2 steps")
    declared = {p.name for p in spec.params}
    for needed in (v_plus_param, v_minus_param):
        if needed not in declared:
            raise ValueError(f"scenario does not declare parameter {needed!r}")
    values = np.linspace(start_mhz, stop_mhz, steps)

    def per_point(freq):
        v_plus, v_minus = spectrum.variances(float(freq))
        return {v_plus_param: v_plus, v_minus_param: v_minus}

    return _sweep_rows(spec, freq_name, values, overrides, per_point)


def _sweep_rows(spec, param, values, overrides, per_point) -> SweepTable:
    order = np.argsort(values, kind="stable")
    columns: tuple[str, ...] | None = None
    rows: list[tuple[float, ...]] = []
    flags: list[str] = []
    sorted_values: list[float] = []
    for value in values[order]:
        point = dict(overrides or {})
        point.update(per_point(value))
        report = run(spec, point)
        flat: list[tuple[str, float]] = []
        for name, result in report.entries:
            flat.extend(flatten_result(name, result))
        names = tuple(name for name, _ in flat)
        if columns is None:
            columns = names
        rows.append(tuple(v for _, v in flat))
        flags.append(report_flags(report))
        sorted_values.append(float(value))
    return SweepTable(
        param=param,
        values=tuple(sorted_values),
        columns=columns or (),
        rows=tuple(rows),
        flags=tuple(flags),
    )
