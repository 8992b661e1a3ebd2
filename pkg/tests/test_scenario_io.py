"""Scenario parsing, emission round-trips, run orchestration, CLI codes."""
import textwrap

import pytest

from dlsrr import (
    DragTable,
    RunReport,
    Scenario,
    ScenarioError,
    emit_scenario,
    europrojectile,
    parse_scenario,
    rocket_30cm,
    run,
)
from dlsrr import cli, scenario_io

MINIMAL = textwrap.dedent(
    """
    [rocket]
    preset = rocket_30cm
    burn_time = 30
    """
)

FULL = textwrap.dedent(
    """
    [rocket]
    preset = rocket_30cm
    burn_time = 50

    [projectile]
    preset = hpv

    [launch]
    release_altitude = 16000
    release_speed = 600
    firing_angle = 59

    [run]
    dt = 0.5
    angle_grid = 50:56:2

    [thermal]
    areal_density = 13.5
    cp_wall = 912.5
    t_initial = 293.15
    """
)


def test_parse_minimal_scenario():
    scenario = parse_scenario(MINIMAL)
    assert scenario.rocket == rocket_30cm(burn_time=30.0)
    assert scenario.projectile == europrojectile()
    assert scenario.release_altitude is None
    assert scenario.firing_angle is None
    assert scenario.dt == 0.1
    assert scenario.angle_grid[0] == 30.0
    assert scenario.angle_grid[-1] == 80.0


def test_parse_full_scenario():
    scenario = parse_scenario(FULL)
    assert scenario.rocket.burn_time == 50.0
    assert scenario.projectile.mass == 11.4
    assert scenario.release_altitude == 16000.0
    assert scenario.release_speed == 600.0
    assert scenario.firing_angle == 59.0
    assert scenario.dt == 0.5
    assert scenario.angle_grid == (50.0, 52.0, 54.0, 56.0)


def test_parse_inline_rocket():
    text = textwrap.dedent(
        """
        [rocket]
        total_mass = 250
        diameter = 0.25
        propellant_fraction = 0.45
        exhaust_velocity = 2200
        burn_time = 40
        nose_radius = 0.02
        nose_length = 0.9
        body_length = 3.0
        drag_table = rocket_30cm
        """
    )
    scenario = parse_scenario(text)
    assert scenario.rocket.total_mass == 250.0
    assert scenario.rocket.propellant_fraction == 0.45
    assert len(scenario.rocket.drag_table.knots) == 36


def test_parse_inline_drag_knots():
    text = textwrap.dedent(
        """
        [rocket]
        preset = rocket_30cm

        [projectile]
        mass = 5.0
        diameter = 0.05
        drag_knots = 0.5:0.3 2.0:0.25 5.0:0.2
        """
    )
    scenario = parse_scenario(text)
    assert scenario.projectile.drag_table.knots == (
        (0.5, 0.3), (2.0, 0.25), (5.0, 0.2),
    )


def test_parse_from_file(tmp_path):
    path = tmp_path / "scenario.ini"
    path.write_text(FULL, encoding="utf-8")
    assert parse_scenario(str(path)) == parse_scenario(FULL)
    with pytest.raises(ScenarioError):
        parse_scenario(str(tmp_path / "missing.ini"))


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("[rocket]\npreset = rocket_30cm\n\n[warhead]\nmass = 5\n", "warhead"),
        ("[rocket]\npreset = rocket_30cm\ncolor = red\n", "color"),
        ("[rocket]\npreset = nosuch\n", "preset"),
        ("[projectile]\nmass = 5\n", "rocket"),
        ("[rocket]\npreset = rocket_30cm\nburn_time = fast\n", "number"),
        ("[rocket]\npreset = rocket_30cm\n\n[launch]\nrelease_speed = 500\n",
         "release_altitude"),
        ("[rocket]\npreset = rocket_30cm\n\n[launch]\n"
         "release_altitude = 12000\nrelease_speed = 500\nfiring_angle = 95\n",
         "firing_angle"),
        ("[rocket]\npreset = rocket_30cm\n\n[run]\ndt = 0\n", "dt"),
        ("[rocket]\npreset = rocket_30cm\n\n[run]\nangle_grid = 40:30:1\n",
         "angle_grid"),
    ],
)
def test_parse_rejections(text, fragment):
    with pytest.raises(ScenarioError, match=fragment):
        parse_scenario(text)


def test_parse_rejects_invalid_rocket_physics():
    text = textwrap.dedent(
        """
        [rocket]
        total_mass = 300
        diameter = 0.3
        propellant_fraction = 1.2
        exhaust_velocity = 2100
        burn_time = 30
        nose_radius = 0.02
        nose_length = 1.0
        body_length = 3.3
        drag_table = rocket_30cm
        """
    )
    with pytest.raises(ScenarioError, match="propellant_fraction"):
        parse_scenario(text)


def test_parse_rejects_conflicting_drag_sources():
    text = textwrap.dedent(
        """
        [rocket]
        preset = rocket_30cm

        [projectile]
        mass = 5.0
        diameter = 0.05
        drag_table = hpv
        drag_knots = 0.5:0.3 2.0:0.25
        """
    )
    with pytest.raises(ScenarioError, match="not both"):
        parse_scenario(text)


def test_emit_round_trip_with_presets():
    scenario = parse_scenario(FULL)
    text = emit_scenario(scenario)
    assert "drag_table = rocket_30cm" in text
    assert "drag_table = hpv" in text
    assert parse_scenario(text) == scenario


def test_emit_round_trip_with_custom_table():
    from dlsrr import ProjectileSpec

    table = DragTable(((0.5, 0.31), (2.0, 0.27), (6.0, 0.21)))
    scenario = Scenario(
        rocket=rocket_30cm(burn_time=40.0),
        projectile=ProjectileSpec(mass=5.5, diameter=0.06, drag_table=table),
        release_altitude=12345.6,
        release_speed=543.21,
        firing_angle=None,
        dt=0.25,
    )
    text = emit_scenario(scenario)
    assert "drag_knots = 0.5:0.31 2.0:0.27 6.0:0.21" in text
    again = parse_scenario(text)
    assert again.projectile.drag_table.knots == table.knots
    assert again.release_altitude == 12345.6
    assert again.firing_angle is None
    assert again == scenario


def test_run_requires_launch_when_flying():
    scenario = parse_scenario(MINIMAL)
    with pytest.raises(ScenarioError, match="launch"):
        run("ascent", scenario, "/tmp/unused")


def test_run_rejects_unknown_subcommand(tmp_path):
    scenario = parse_scenario(FULL)
    with pytest.raises(ScenarioError, match="subcommand"):
        run("orbit", scenario, str(tmp_path))


def test_run_ascent_with_fixed_angle(tmp_path):
    scenario = parse_scenario(FULL)
    report = run("ascent", scenario, str(tmp_path))
    assert isinstance(report, RunReport)
    assert report.ok
    assert report.subcommand == "ascent"
    assert (tmp_path / "ascent.csv").exists()
    assert (tmp_path / "report.txt").exists()
    text = (tmp_path / "ascent.csv").read_text()
    assert text.splitlines()[0] == "t,x,y,vx,vy,mass,mach,rho,T_a,F_d,F_t"
    assert report.summary["ascent"]["firing_angle_deg"] == 59.0
    assert report.summary["ascent"]["angle_optimized"] is False
    report_text = (tmp_path / "report.txt").read_text()
    assert "status: ok" in report_text
    assert "[rocket]" in report_text


def test_run_ascent_optimizes_when_angle_is_omitted(tmp_path):
    text = FULL.replace("firing_angle = 59\n", "")
    scenario = parse_scenario(text)
    report = run("ascent", scenario, str(tmp_path))
    assert report.summary["ascent"]["angle_optimized"] is True
    assert report.summary["ascent"]["firing_angle_deg"] in (50.0, 52.0, 54.0, 56.0)


def test_run_impact(tmp_path):
    scenario = parse_scenario(FULL)
    report = run("impact", scenario, str(tmp_path))
    assert (tmp_path / "ascent.csv").exists()
    assert (tmp_path / "descent.csv").exists()
    block = report.summary["impact"]
    assert block["range_from_release_m"] > 100000.0
    assert block["impact_speed_m_s"] > 1000.0
    assert block["total_flight_time_s"] == pytest.approx(
        report.summary["ascent"]["time_to_apogee_s"] + block["descent_time_s"]
    )


def test_run_thermal(tmp_path):
    scenario = parse_scenario(FULL)
    report = run("thermal", scenario, str(tmp_path))
    csv_text = (tmp_path / "thermal.csv").read_text()
    header = csv_text.splitlines()[0]
    assert header == "t,T_stag,T_cone_Y0.03,T_cone_Y0.10,T_cone_Y0.30,T_cyl_base,q_cyl"
    assert report.summary["thermal"]["cumulative_energy_J_m2"] > 0.0


def test_run_sweep(tmp_path):
    text = textwrap.dedent(
        """
        [rocket]
        preset = rocket_30cm

        [run]
        dt = 0.5
        angle_grid = 52:56:2

        [sweep]
        release_altitudes = 12000
        release_speeds = 500
        burn_times = 30, 40
        """
    )
    scenario = parse_scenario(text)
    report = run("sweep", scenario, str(tmp_path))
    lines = (tmp_path / "sweep.csv").read_text().splitlines()
    assert lines[0] == "release_altitude,release_speed,burn_time,best_angle,best_range,status"
    assert len(lines) == 3
    assert all(line.endswith("ok") for line in lines[1:])
    assert report.summary["sweep"]["combinations"] == 2
    assert report.summary["sweep"]["failed"] == 0


def test_runs_are_reproducible(tmp_path):
    scenario = parse_scenario(FULL)
    run("ascent", scenario, str(tmp_path / "a"))
    run("ascent", scenario, str(tmp_path / "b"))
    a = (tmp_path / "a" / "ascent.csv").read_bytes()
    b = (tmp_path / "b" / "ascent.csv").read_bytes()
    assert a == b


def write_scenario(tmp_path, text=FULL):
    path = tmp_path / "scenario.ini"
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_cli_usage_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["ascent"])  # missing --scenario/--out
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        cli.main(["orbit", "--scenario", "x", "--out", "y"])
    assert exc.value.code == 1
    capsys.readouterr()


def test_cli_scenario_errors_exit_2(tmp_path, capsys):
    missing = str(tmp_path / "nope.ini")
    code = cli.main(["ascent", "--scenario", missing, "--out", str(tmp_path)])
    assert code == 2
    bad = tmp_path / "bad.ini"
    bad.write_text("[rocket]\npreset = nosuch\n", encoding="utf-8")
    code = cli.main(["ascent", "--scenario", str(bad), "--out", str(tmp_path)])
    assert code == 2
    err = capsys.readouterr().err
    assert "error" in err


def test_cli_needs_launch_for_flight_exit_2(tmp_path, capsys):
    path = write_scenario(tmp_path, MINIMAL)
    code = cli.main(["impact", "--scenario", path, "--out", str(tmp_path / "out")])
    assert code == 2
    capsys.readouterr()


def test_cli_ascent_success(tmp_path, capsys):
    path = write_scenario(tmp_path)
    out = tmp_path / "out"
    code = cli.main(["ascent", "--scenario", path, "--out", str(out)])
    assert code == 0
    assert (out / "ascent.csv").exists()
    assert "status: ok" in capsys.readouterr().out


def test_cli_dt_override(tmp_path, capsys):
    path = write_scenario(tmp_path)
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    assert cli.main(["ascent", "--scenario", path, "--out", str(out_a)]) == 0
    assert cli.main(
        ["ascent", "--scenario", path, "--out", str(out_b), "--dt", "0.25"]
    ) == 0
    rows_a = (out_a / "ascent.csv").read_text().count("\n")
    rows_b = (out_b / "ascent.csv").read_text().count("\n")
    assert rows_b > rows_a
    capsys.readouterr()


def test_cli_qk_variant(tmp_path, capsys):
    path = write_scenario(tmp_path)
    out = tmp_path / "out"
    code = cli.main(
        ["thermal", "--scenario", path, "--out", str(out), "--qk", "detra"]
    )
    assert code == 0
    assert (out / "thermal.csv").exists()
    capsys.readouterr()


def test_cli_maps_tolerance_failures_to_exit_3(tmp_path, monkeypatch, capsys):
    report = RunReport(
        subcommand="tables", version="1.0.0", kernel="ref", ok=False,
        summary={}, outputs=(), scenario_echo="[rocket]\npreset = rocket_30cm\n",
    )
    monkeypatch.setattr(scenario_io, "run", lambda *a, **k: report)
    path = write_scenario(tmp_path, MINIMAL)
    code = cli.main(["tables", "--scenario", path, "--out", str(tmp_path / "o")])
    assert code == 3
    assert "TOLERANCE FAILURE" in capsys.readouterr().out


def test_tables_detects_violations_with_impossible_tolerances(tmp_path, monkeypatch):
    tight = {
        "range": ("rel", 1e-12), "drag_loss": ("abs", 1e-12),
        "gravity_loss": ("abs", 1e-12), "velocity_gain": ("abs", 1e-12),
        "impact_range": ("rel", 1e-12), "impact_speed": ("rel", 1e-12),
        "descent_loss": ("abs", 1e-12), "cylinder_temp": ("abs", 1e-12),
        "cylinder_energy": ("max", 1e-12),
    }
    monkeypatch.setattr(scenario_io, "_tolerances", lambda: tight)
    report = run("tables", parse_scenario(MINIMAL), str(tmp_path))
    assert report.ok is False
    assert (tmp_path / "tables_ascent.csv").exists()
