"""Scenario files, run orchestration, and the golden-table regression suite.

A scenario is an INI-style document describing the rocket, the warhead,
the release condition, and run controls. The run() entry point executes
one of five subcommands against a parsed scenario and writes CSV series
plus a plain-text report into an output directory:

    ascent   powered ascent to apogee (optimizes the angle if omitted)
    impact   ascent plus warhead descent to the ground
    thermal  ascent plus wall-temperature histories over the burn
    sweep    best firing angle for every release-condition combination
    tables   recompute the bundled reference tables and check tolerances
"""
import configparser
import csv
import io
import itertools
import math
import os
from dataclasses import dataclass, field, replace

from dlsrr import flight, thermal, vehicle
from dlsrr._kernels import backend_name

VERSION = "1.0.0"

SUBCOMMANDS = ("ascent", "impact", "thermal", "sweep", "tables")

DEFAULT_ANGLE_GRID = tuple(float(a) for a in range(30, 81))
DEFAULT_SWEEP_ALTITUDES = (12000.0, 16000.0, 20000.0)
DEFAULT_SWEEP_SPEEDS = (500.0, 600.0, 700.0)
DEFAULT_SWEEP_BURN_TIMES = (30.0, 40.0, 50.0, 60.0, 80.0)


class ScenarioError(ValueError):
    """A scenario document failed to parse or validate."""


@dataclass(frozen=True)
class Scenario:
    """Everything a run needs, resolved and validated."""

    rocket: vehicle.RocketSpec
    projectile: vehicle.ProjectileSpec
    release_altitude: float | None = None
    release_speed: float | None = None
    firing_angle: float | None = None
    dt: float = 0.1
    angle_grid: tuple = DEFAULT_ANGLE_GRID
    sweep_altitudes: tuple = DEFAULT_SWEEP_ALTITUDES
    sweep_speeds: tuple = DEFAULT_SWEEP_SPEEDS
    sweep_burn_times: tuple = DEFAULT_SWEEP_BURN_TIMES
    areal_density: float = thermal.DEFAULT_AREAL_DENSITY
    cp_wall: float = thermal.DEFAULT_CP_WALL
    t_initial: float = thermal.DEFAULT_T_INITIAL

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ScenarioError("dt must be positive")


_SECTIONS = {
    "rocket": {
        "preset", "burn_time", "total_mass", "diameter", "propellant_fraction",
        "exhaust_velocity", "nose_radius", "nose_length", "body_length",
        "drag_table", "drag_knots",
    },
    "projectile": {"preset", "mass", "diameter", "drag_table", "drag_knots"},
    "launch": {"release_altitude", "release_speed", "firing_angle"},
    "run": {"dt", "angle_grid"},
    "sweep": {"release_altitudes", "release_speeds", "burn_times"},
    "thermal": {"areal_density", "cp_wall", "t_initial"},
}

_DRAG_TABLES = {
    "rocket_30cm": vehicle.rocket_drag_table,
    "hpv": vehicle.hpv_drag_table,
    "europrojectile": vehicle.europrojectile_drag_table,
}


def _float(section, key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ScenarioError(f"[{section}] {key}: {raw!r} is not a number") from None


def _float_list(section, key, raw):
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ScenarioError(f"[{section}] {key}: empty list")
    return tuple(_float(section, key, p) for p in parts)


def _angle_grid(raw):
    if ":" in raw:
        parts = raw.split(":")
        if len(parts) != 3:
            raise ScenarioError("[run] angle_grid: ranges are start:stop:step")
        start, stop, step = (_float("run", "angle_grid", p) for p in parts)
        if step <= 0.0 or stop < start:
            raise ScenarioError("[run] angle_grid: need stop >= start and step > 0")
        grid = []
        k = 0
        while True:
            a = start + k * step
            if a > stop + 1e-9:
                break
            grid.append(a)
            k += 1
        return tuple(grid)
    return _float_list("run", "angle_grid", raw)


def _resolve_drag(section, options):
    name = options.pop("drag_table", None)
    knots = options.pop("drag_knots", None)
    if name is not None and knots is not None:
        raise ScenarioError(f"[{section}] give drag_table or drag_knots, not both")
    if name is not None:
        if name not in _DRAG_TABLES:
            raise ScenarioError(
                f"[{section}] drag_table: unknown table {name!r}; "
                f"choose from {sorted(_DRAG_TABLES)}"
            )
        return _DRAG_TABLES[name]()
    if knots is not None:
        pairs = []
        for item in knots.split():
            m, _, c = item.partition(":")
            if not c:
                raise ScenarioError(
                    f"[{section}] drag_knots: expected mach:cd pairs, got {item!r}"
                )
            pairs.append((_float(section, "drag_knots", m),
                          _float(section, "drag_knots", c)))
        return vehicle.DragTable(tuple(pairs))
    raise ScenarioError(f"[{section}] needs drag_table or drag_knots")


def _parse_rocket(options):
    preset = options.pop("preset", None)
    if preset is not None:
        if preset != "rocket_30cm":
            raise ScenarioError(f"[rocket] preset: unknown preset {preset!r}")
        burn_time = _float("rocket", "burn_time", options.pop("burn_time", "30"))
        if options:
            raise ScenarioError(
                f"[rocket] keys {sorted(options)} not allowed together with preset"
            )
        return vehicle.rocket_30cm(burn_time=burn_time)
    required = ("total_mass", "diameter", "propellant_fraction",
                "exhaust_velocity", "burn_time", "nose_radius",
                "nose_length", "body_length")
    missing = [k for k in required if k not in options]
    if missing:
        raise ScenarioError(f"[rocket] missing required keys: {sorted(missing)}")
    table = _resolve_drag("rocket", options)
    values = {k: _float("rocket", k, options.pop(k)) for k in required}
    try:
        return vehicle.RocketSpec(drag_table=table, **values)
    except ValueError as exc:
        raise ScenarioError(f"[rocket] {exc}") from exc


def _parse_projectile(options):
    preset = options.pop("preset", None)
    if preset is not None:
        if options:
            raise ScenarioError(
                f"[projectile] keys {sorted(options)} not allowed together with preset"
            )
        if preset == "hpv":
            return vehicle.hpv()
        if preset == "europrojectile":
            return vehicle.europrojectile()
        raise ScenarioError(f"[projectile] preset: unknown preset {preset!r}")
    missing = [k for k in ("mass", "diameter") if k not in options]
    if missing:
        raise ScenarioError(f"[projectile] missing required keys: {sorted(missing)}")
    table = _resolve_drag("projectile", options)
    try:
        return vehicle.ProjectileSpec(
            mass=_float("projectile", "mass", options.pop("mass")),
            diameter=_float("projectile", "diameter", options.pop("diameter")),
            drag_table=table,
        )
    except ValueError as exc:
        raise ScenarioError(f"[projectile] {exc}") from exc


def parse_scenario(source):
    """Parse a scenario document from a path or from the text itself.

    Strings containing a newline are treated as document text; anything
    else is read as a file path. Unknown sections or keys are rejected,
    and parse errors carry line numbers.
    """
    if isinstance(source, str) and "\n" in source:
        text = source
        origin = "<string>"
    else:
        origin = os.fspath(source)
        try:
            with open(origin, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario {origin}: {exc}") from exc
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=origin)
    except configparser.Error as exc:
        raise ScenarioError(f"scenario parse error: {exc}") from exc

    for section in parser.sections():
        if section not in _SECTIONS:
            raise ScenarioError(f"unknown section [{section}]")
        for key in parser.options(section):
            if key not in _SECTIONS[section]:
                raise ScenarioError(f"unknown key {key!r} in section [{section}]")

    if not parser.has_section("rocket"):
        raise ScenarioError("missing required section [rocket]")
    rocket = _parse_rocket(dict(parser.items("rocket")))
    if parser.has_section("projectile"):
        projectile = _parse_projectile(dict(parser.items("projectile")))
    else:
        projectile = vehicle.europrojectile()

    release_altitude = release_speed = firing_angle = None
    if parser.has_section("launch"):
        opts = dict(parser.items("launch"))
        missing = [k for k in ("release_altitude", "release_speed") if k not in opts]
        if missing:
            raise ScenarioError(f"[launch] missing required keys: {sorted(missing)}")
        release_altitude = _float("launch", "release_altitude", opts["release_altitude"])
        release_speed = _float("launch", "release_speed", opts["release_speed"])
        if "firing_angle" in opts:
            firing_angle = _float("launch", "firing_angle", opts["firing_angle"])
            # surface bad angles at parse time rather than mid-run
            try:
                flight.LaunchCondition(release_altitude, release_speed, firing_angle)
            except ValueError as exc:
                raise ScenarioError(f"[launch] {exc}") from exc
        else:
            if not 0.0 <= release_altitude <= 30000.0:
                raise ScenarioError("[launch] release_altitude must lie in [0 m, 30 km]")
            if release_speed < 0.0:
                raise ScenarioError("[launch] release_speed must be non-negative")

    kwargs = {}
    if parser.has_section("run"):
        opts = dict(parser.items("run"))
        if "dt" in opts:
            dt = _float("run", "dt", opts["dt"])
            if dt <= 0.0:
                raise ScenarioError("[run] dt must be positive")
            kwargs["dt"] = dt
        if "angle_grid" in opts:
            kwargs["angle_grid"] = _angle_grid(opts["angle_grid"])
    if parser.has_section("sweep"):
        opts = dict(parser.items("sweep"))
        if "release_altitudes" in opts:
            kwargs["sweep_altitudes"] = _float_list(
                "sweep", "release_altitudes", opts["release_altitudes"]
            )
        if "release_speeds" in opts:
            kwargs["sweep_speeds"] = _float_list(
                "sweep", "release_speeds", opts["release_speeds"]
            )
        if "burn_times" in opts:
            kwargs["sweep_burn_times"] = _float_list(
                "sweep", "burn_times", opts["burn_times"]
            )
    if parser.has_section("thermal"):
        opts = dict(parser.items("thermal"))
        for key, dest in (("areal_density", "areal_density"),
                          ("cp_wall", "cp_wall"), ("t_initial", "t_initial")):
            if key in opts:
                value = _float("thermal", key, opts[key])
                if value <= 0.0:
                    raise ScenarioError(f"[thermal] {key} must be positive")
                kwargs[dest] = value

    return Scenario(
        rocket=rocket,
        projectile=projectile,
        release_altitude=release_altitude,
        release_speed=release_speed,
        firing_angle=firing_angle,
        **kwargs,
    )


def _table_name(table):
    for name, loader in _DRAG_TABLES.items():
        if loader().knots == table.knots:
            return name
    return None


def _drag_lines(table):
    name = _table_name(table)
    if name is not None:
        return [f"drag_table = {name}"]
    knots = " ".join(f"{m!r}:{c!r}" for m, c in table.knots)
    return [f"drag_knots = {knots}"]


def emit_scenario(scenario):
    """Render a Scenario back to canonical document text.

    parse_scenario(emit_scenario(s)) == s for any parseable scenario.
    """
    r = scenario.rocket
    lines = ["[rocket]"]
    lines.append(f"total_mass = {r.total_mass!r}")
    lines.append(f"diameter = {r.diameter!r}")
    lines.append(f"propellant_fraction = {r.propellant_fraction!r}")
    lines.append(f"exhaust_velocity = {r.exhaust_velocity!r}")
    lines.append(f"burn_time = {r.burn_time!r}")
    lines.append(f"nose_radius = {r.nose_radius!r}")
    lines.append(f"nose_length = {r.nose_length!r}")
    lines.append(f"body_length = {r.body_length!r}")
    lines.extend(_drag_lines(r.drag_table))
    p = scenario.projectile
    lines.append("")
    lines.append("[projectile]")
    lines.append(f"mass = {p.mass!r}")
    lines.append(f"diameter = {p.diameter!r}")
    lines.extend(_drag_lines(p.drag_table))
    if scenario.release_altitude is not None:
        lines.append("")
        lines.append("[launch]")
        lines.append(f"release_altitude = {scenario.release_altitude!r}")
        lines.append(f"release_speed = {scenario.release_speed!r}")
        if scenario.firing_angle is not None:
            lines.append(f"firing_angle = {scenario.firing_angle!r}")
    lines.append("")
    lines.append("[run]")
    lines.append(f"dt = {scenario.dt!r}")
    lines.append("angle_grid = " + ",".join(repr(a) for a in scenario.angle_grid))
    lines.append("")
    lines.append("[sweep]")
    lines.append("release_altitudes = "
                 + ",".join(repr(a) for a in scenario.sweep_altitudes))
    lines.append("release_speeds = " + ",".join(repr(a) for a in scenario.sweep_speeds))
    lines.append("burn_times = " + ",".join(repr(a) for a in scenario.sweep_burn_times))
    lines.append("")
    lines.append("[thermal]")
    lines.append(f"areal_density = {scenario.areal_density!r}")
    lines.append(f"cp_wall = {scenario.cp_wall!r}")
    lines.append(f"t_initial = {scenario.t_initial!r}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class RunReport:
    """Summary of one run; to_text() is what lands in report.txt."""

    subcommand: str
    version: str
    kernel: str
    ok: bool
    summary: dict
    outputs: tuple
    scenario_echo: str

    def to_text(self):
        lines = [
            f"subcommand: {self.subcommand}",
            f"version: {self.version}",
            f"kernel: {self.kernel}",
            f"status: {'ok' if self.ok else 'TOLERANCE FAILURE'}",
            "",
        ]
        for key, value in self.summary.items():
            if isinstance(value, dict):
                lines.append(f"{key}:")
                for k2, v2 in value.items():
                    lines.append(f"  {k2}: {_fmt(v2)}")
            else:
                lines.append(f"{key}: {_fmt(value)}")
        if self.outputs:
            lines.append("")
            lines.append("outputs:")
            for path in self.outputs:
                lines.append(f"  {path}")
        lines.append("")
        lines.append("scenario:")
        for raw in self.scenario_echo.rstrip("\n").split("\n"):
            lines.append(f"  {raw}")
        return "\n".join(lines) + "\n"


def _fmt(value):
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _require_launch(scenario):
    if scenario.release_altitude is None or scenario.release_speed is None:
        raise ScenarioError("this subcommand needs a [launch] section")
    return scenario.release_altitude, scenario.release_speed


def _resolve_angle(scenario):
    """Firing angle to fly: the scenario's, or the sweep optimum."""
    h0, v0 = _require_launch(scenario)
    if scenario.firing_angle is not None:
        return scenario.firing_angle, None
    opt = flight.optimize_firing_angle(
        scenario.rocket, scenario.projectile, h0, v0,
        angle_grid=scenario.angle_grid, dt=scenario.dt,
    )
    return opt.best_angle, opt


def _ascent_summary(angle, optimized, ascent):
    return {
        "firing_angle_deg": angle,
        "angle_optimized": optimized,
        "apogee_altitude_m": ascent.apogee_altitude,
        "apogee_speed_m_s": ascent.apogee_speed,
        "apogee_downrange_m": ascent.apogee_downrange,
        "time_to_apogee_s": ascent.time_to_apogee,
        "velocity_gain_m_s": ascent.velocity_gain,
        "drag_loss_m_s": ascent.drag_loss,
        "gravity_loss_m_s": ascent.gravity_loss,
    }


def _write(out_dir, fname, text):
    path = os.path.join(out_dir, fname)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


def run(subcommand, scenario, out_dir, constants=thermal.DEFAULT_CONSTANTS):
    """Execute one subcommand; write CSVs and report.txt into out_dir."""
    if subcommand not in SUBCOMMANDS:
        raise ScenarioError(
            f"unknown subcommand {subcommand!r}; choose from {SUBCOMMANDS}"
        )
    os.makedirs(out_dir, exist_ok=True)
    outputs = []
    summary = {}
    ok = True

    if subcommand in ("ascent", "impact", "thermal"):
        angle, opt = _resolve_angle(scenario)
        h0, v0 = scenario.release_altitude, scenario.release_speed
        launch = flight.LaunchCondition(h0, v0, angle)
        ascent = flight.integrate_ascent(scenario.rocket, launch, dt=scenario.dt)
        outputs.append(_write(out_dir, "ascent.csv", ascent.series.to_csv()))
        summary["ascent"] = _ascent_summary(angle, opt is not None, ascent)
        if subcommand == "impact":
            release = flight.FlightState(
                t=0.0,
                x=ascent.apogee_downrange,
                y=ascent.apogee_altitude,
                vx=ascent.series.data[-1, 3],
                vy=0.0,
                mass=scenario.projectile.mass,
            )
            impact = flight.integrate_descent(
                scenario.projectile, release, dt=scenario.dt
            )
            outputs.append(_write(out_dir, "descent.csv", impact.series.to_csv()))
            summary["impact"] = {
                "range_from_release_m": impact.range_from_release,
                "impact_speed_m_s": impact.impact_speed,
                "descent_time_s": impact.descent_time,
                "descent_drag_loss_m_s": impact.descent_drag_loss,
                "total_flight_time_s": ascent.time_to_apogee + impact.descent_time,
            }
        elif subcommand == "thermal":
            stations = thermal.default_stations(
                nose_radius=scenario.rocket.nose_radius,
                nose_length=scenario.rocket.nose_length,
            )
            series = thermal.thermal_history(
                ascent.series,
                stations=stations,
                constants=constants,
                areal_density=scenario.areal_density,
                cp_wall=scenario.cp_wall,
                t_initial=scenario.t_initial,
            )
            outputs.append(_write(out_dir, "thermal.csv", series.to_csv()))
            block = {}
            for j, label in enumerate(series.labels):
                block[f"max_{label}_K"] = float(series.temperatures[:, j].max())
            if series.q_cyl is not None:
                block["final_T_cyl_base_K"] = float(series.temperatures[:, -1][-1])
                block["final_T_cyl_base_C"] = float(
                    series.temperatures[:, -1][-1] - 273.15
                )
                block["cumulative_energy_J_m2"] = series.cumulative_energy
            summary["thermal"] = block

    elif subcommand == "sweep":
        rows, n_failed = _run_sweep(scenario)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["release_altitude", "release_speed", "burn_time",
             "best_angle", "best_range", "status"]
        )
        for row in rows:
            writer.writerow(row)
        outputs.append(_write(out_dir, "sweep.csv", buf.getvalue()))
        summary["sweep"] = {
            "combinations": len(rows),
            "failed": n_failed,
        }

    else:  # tables
        ok, table_summaries, files = _run_tables(out_dir)
        outputs.extend(files)
        summary.update(table_summaries)

    report = RunReport(
        subcommand=subcommand,
        version=VERSION,
        kernel=backend_name,
        ok=ok,
        summary=summary,
        outputs=tuple(outputs),
        scenario_echo=emit_scenario(scenario),
    )
    _write(out_dir, "report.txt", report.to_text())
    return report


def _run_sweep(scenario):
    rows = []
    n_failed = 0
    for h0, v0, tb in itertools.product(
        scenario.sweep_altitudes, scenario.sweep_speeds, scenario.sweep_burn_times
    ):
        rocket = replace(scenario.rocket, burn_time=tb)
        try:
            opt = flight.optimize_firing_angle(
                rocket, scenario.projectile, h0, v0,
                angle_grid=scenario.angle_grid, dt=scenario.dt,
            )
        except (flight.SimulationError, flight.OptimizationError, ValueError) as exc:
            n_failed += 1
            rows.append([f"{h0:.6g}", f"{v0:.6g}", f"{tb:.6g}", "", "", str(exc)])
            continue
        rows.append(
            [f"{h0:.6g}", f"{v0:.6g}", f"{tb:.6g}",
             f"{opt.best_angle:.6g}", f"{opt.best_range:.6g}", "ok"]
        )
    return rows, n_failed


# ---------------------------------------------------------------------------
# tables: recompute the bundled reference tables and check tolerances


def _reference_rows(fname):
    text = vehicle._data_file("reference", fname).read_text(encoding="utf-8")
    reader = csv.DictReader(
        u for u in text.splitlines() if u and not u.startswith("#")
    )
    return [
        {k: (v if k == "quantity" or k == "kind" else float(v)) for k, v in row.items()}
        for row in reader
    ]


def _tolerances():
    out = {}
    for row in _reference_rows("tolerances.csv"):
        out[row["quantity"]] = (row["kind"], row["value"])
    return out


def _check(tolerances, quantity, computed, reference):
    kind, value = tolerances[quantity]
    if kind == "rel":
        err = abs(computed - reference) / abs(reference)
    else:
        err = abs(computed - reference)
    return float(err), bool(err <= value)


def _table_csv(out_dir, fname, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    return _write(out_dir, fname, buf.getvalue())


def _run_tables(out_dir, dt=0.1):
    tol = _tolerances()
    ascent_ref = _reference_rows("ascent_performance.csv")
    files = []
    summaries = {}
    all_ok = True

    # ascent block: losses, thrust gain, and total warhead range per cell
    angle_by_cell = {}
    ascent_cache = {}
    europrojectile = vehicle.europrojectile()
    rows = []
    worst = {"range": 0.0, "drag_loss": 0.0, "gravity_loss": 0.0, "velocity_gain": 0.0}
    block_ok = True
    for ref in ascent_ref:
        h0, v0, tb, angle = ref["h0"], ref["v0"], ref["tb"], ref["angle"]
        angle_by_cell[(h0, v0, tb)] = angle
        rocket = vehicle.rocket_30cm(burn_time=tb)
        launch = flight.LaunchCondition(h0, v0, angle)
        ascent, impact = flight.fly(rocket, europrojectile, launch, dt=dt)
        ascent_cache[(h0, v0, tb)] = ascent
        cells = []
        row_ok = True
        for quantity, computed, reference in (
            ("range", impact.range_from_release, ref["range_km"] * 1000.0),
            ("drag_loss", ascent.drag_loss, ref["drag_loss"]),
            ("gravity_loss", ascent.gravity_loss, ref["gravity_loss"]),
            ("velocity_gain", ascent.velocity_gain, ref["velocity_gain"]),
        ):
            err, cell_ok = _check(tol, quantity, computed, reference)
            worst[quantity] = max(worst[quantity], err)
            row_ok &= cell_ok
            cells.extend([f"{computed:.6g}", f"{reference:.6g}", f"{err:.3g}"])
        block_ok &= row_ok
        rows.append(
            [f"{h0:.6g}", f"{v0:.6g}", f"{tb:.6g}", f"{angle:.6g}"]
            + cells + ["1" if row_ok else "0"]
        )
    files.append(_table_csv(
        out_dir, "tables_ascent.csv",
        ["h0", "v0", "tb", "angle",
         "range", "range_ref", "range_err",
         "drag_loss", "drag_loss_ref", "drag_loss_err",
         "gravity_loss", "gravity_loss_ref", "gravity_loss_err",
         "velocity_gain", "velocity_gain_ref", "velocity_gain_err", "ok"],
        rows,
    ))
    summaries["tables_ascent"] = {
        "cells": len(ascent_ref),
        "worst_range_rel_err": worst["range"],
        "worst_drag_loss_err_m_s": worst["drag_loss"],
        "worst_gravity_loss_err_m_s": worst["gravity_loss"],
        "worst_velocity_gain_err_m_s": worst["velocity_gain"],
        "pass": block_ok,
    }
    all_ok &= block_ok

    # descent blocks: start each warhead from the stated apogee state,
    # seeded with this run's own ascent downrange at the cell's angle
    for fname, label, proj in (
        ("impact_hpv.csv", "tables_hpv", vehicle.hpv()),
        ("impact_europrojectile.csv", "tables_europrojectile",
         vehicle.europrojectile()),
    ):
        block_ok = True
        worst = {"impact_range": 0.0, "impact_speed": 0.0, "descent_loss": 0.0}
        rows = []
        refs = _reference_rows(fname)
        for ref in refs:
            h0, v0, tb = ref["h0"], ref["v0"], ref["tb"]
            ascent = ascent_cache[(h0, v0, tb)]
            release = flight.FlightState(
                t=0.0,
                x=ascent.apogee_downrange,
                y=ref["apogee_km"] * 1000.0,
                vx=math.copysign(ref["apogee_speed"], ascent.series.data[-1, 3]),
                vy=0.0,
                mass=proj.mass,
            )
            impact = flight.integrate_descent(proj, release, dt=dt)
            cells = []
            row_ok = True
            for quantity, computed, reference in (
                ("impact_range", impact.range_from_release, ref["range_km"] * 1000.0),
                ("impact_speed", impact.impact_speed, ref["impact_speed"]),
                ("descent_loss", impact.descent_drag_loss, ref["descent_loss"]),
            ):
                err, cell_ok = _check(tol, quantity, computed, reference)
                worst[quantity] = max(worst[quantity], err)
                row_ok &= cell_ok
                cells.extend([f"{computed:.6g}", f"{reference:.6g}", f"{err:.3g}"])
            block_ok &= row_ok
            rows.append(
                [f"{v0:.6g}", f"{h0:.6g}", f"{tb:.6g}"] + cells
                + ["1" if row_ok else "0"]
            )
        files.append(_table_csv(
            out_dir, f"{label}.csv",
            ["v0", "h0", "tb",
             "range", "range_ref", "range_err",
             "impact_speed", "impact_speed_ref", "impact_speed_err",
             "descent_loss", "descent_loss_ref", "descent_loss_err", "ok"],
            rows,
        ))
        summaries[label] = {
            "cells": len(refs),
            "worst_range_rel_err": worst["impact_range"],
            "worst_impact_speed_rel_err": worst["impact_speed"],
            "worst_descent_loss_err_m_s": worst["descent_loss"],
            "pass": block_ok,
        }
        all_ok &= block_ok

    # cylinder block: heat-sink march over each cell's burn
    block_ok = True
    worst_temp = 0.0
    worst_energy = 0.0
    rows = []
    refs = _reference_rows("cylinder_heating.csv")
    for ref in refs:
        h0, v0, tb = ref["h0"], ref["v0"], ref["tb"]
        ascent = ascent_cache[(h0, v0, tb)]
        hist = thermal.heat_sink_march(ascent.series)
        final_c = hist.final_temperature - 273.15
        err, cell_ok = _check(tol, "cylinder_temp", final_c, ref["final_temp_C"])
        kind, budget = tol["cylinder_energy"]
        energy_ok = hist.cumulative_energy < budget
        worst_temp = max(worst_temp, err)
        worst_energy = max(worst_energy, hist.cumulative_energy)
        row_ok = cell_ok and energy_ok
        block_ok &= row_ok
        rows.append(
            [f"{h0:.6g}", f"{v0:.6g}", f"{tb:.6g}",
             f"{final_c:.6g}", f"{ref['final_temp_C']:.6g}", f"{err:.3g}",
             f"{hist.cumulative_energy:.6g}", "1" if row_ok else "0"]
        )
    files.append(_table_csv(
        out_dir, "tables_cylinder.csv",
        ["h0", "v0", "tb", "final_temp_C", "final_temp_C_ref", "err",
         "cumulative_energy", "ok"],
        rows,
    ))
    summaries["tables_cylinder"] = {
        "cells": len(refs),
        "worst_temp_err_C": worst_temp,
        "max_cumulative_energy_J_m2": worst_energy,
        "pass": block_ok,
    }
    all_ok &= block_ok

    return all_ok, summaries, files
