"""Heating correlations, equilibrium solves, and the heat-sink march."""
import math

import numpy as np
import pytest

from dlsrr import (
    LaunchCondition,
    cone_flux,
    cone_station,
    constants_for,
    cylinder_station,
    default_stations,
    equilibrium_wall_temperature,
    heat_sink_march,
    integrate_ascent,
    recovery_conditions,
    reynolds,
    rocket_30cm,
    sample,
    skin_friction,
    stagnation_flux,
    stagnation_station,
    stanton,
    station_equilibrium,
    thermal_history,
    turbulent_flux_cylinder,
)
from dlsrr.atmosphere import AtmosphereState
from dlsrr.thermal import (
    CONE_EMISSIVITY,
    CYLINDER_COEFFICIENT,
    CONE_COEFFICIENT,
    DEFAULT_CONSTANTS,
    QK_VARIANTS,
    SIGMA_B,
    ThermalConstants,
    ThermalStation,
    air_enthalpy,
    cone_inclination,
    temperature_from_enthalpy,
)
from dlsrr._kernels import backend


def make_air(temperature, density):
    """Hand-built ambient state for correlation-level tests."""
    return AtmosphereState(
        altitude=0.0,
        temperature=temperature,
        pressure=density * 287.0528 * temperature,
        density=density,
        speed_of_sound=math.sqrt(1.4 * 287.05 * temperature),
    )


@pytest.fixture(scope="module")
def reference_ascent():
    spec = rocket_30cm(burn_time=30.0)
    return integrate_ascent(spec, LaunchCondition(12000.0, 500.0, 54.0))


def test_air_enthalpy_is_linear():
    assert air_enthalpy(0.0) == 0.0
    assert air_enthalpy(300.0) == pytest.approx(301500.0, rel=1e-12)
    assert temperature_from_enthalpy(air_enthalpy(567.8)) == pytest.approx(567.8)
    with pytest.raises(ValueError):
        air_enthalpy(-1.0)


def test_recovery_matches_the_mach_number_form():
    # cp = gamma R / (gamma - 1) only approximately, so allow 0.5%
    atm = sample(15000.0)
    for mach in (1.0, 2.0, 4.0, 6.0, 8.0):
        v = mach * atm.speed_of_sound
        _, t_r = recovery_conditions(atm, v, 0.9)
        expected = atm.temperature * (1.0 + 0.9 * 0.2 * mach * mach)
        assert t_r == pytest.approx(expected, rel=5e-3)
    with pytest.raises(ValueError):
        recovery_conditions(atm, -1.0, 0.9)


def test_stagnation_flux_hand_value():
    atm = make_air(224.0, 0.02)
    h_a = 1005.0 * 224.0
    h_aw = h_a + 1000.0 ** 2 / 2.0
    h_w = 1005.0 * 300.0
    expected = (
        1.83e-4 * math.sqrt(0.02 / 0.02) * 1000.0 ** 3 * (h_aw - h_w) / (h_aw - h_a)
        - 0.6 * SIGMA_B * 300.0 ** 4
    )
    q = stagnation_flux(atm, 1000.0, 0.02, 300.0)
    assert q == pytest.approx(expected, rel=1e-9)
    assert q == pytest.approx(1.548e5, rel=5e-3)


def test_stagnation_flux_is_pure_radiation_at_rest():
    atm = make_air(224.0, 0.02)
    q = stagnation_flux(atm, 0.0, 0.02, 300.0)
    assert q == pytest.approx(-0.6 * SIGMA_B * 300.0 ** 4, rel=1e-12)


def test_stagnation_flux_scales_with_root_density_over_radius():
    v, t_w = 1200.0, 400.0
    thin = make_air(224.0, 0.005)
    thick = make_air(224.0, 0.02)
    q_rad = 0.6 * SIGMA_B * t_w ** 4
    q1 = stagnation_flux(thin, v, 0.02, t_w) + q_rad
    q2 = stagnation_flux(thick, v, 0.02, t_w) + q_rad
    assert q2 / q1 == pytest.approx(2.0, rel=1e-9)
    q3 = stagnation_flux(thick, v, 0.08, t_w) + q_rad
    assert q2 / q3 == pytest.approx(2.0, rel=1e-9)


def test_stagnation_variants():
    atm = make_air(224.0, 0.02)
    args = (atm, 1500.0, 0.02, 300.0)
    fluxes = {
        name: stagnation_flux(*args, constants=constants_for(name))
        for name in QK_VARIANTS
    }
    assert fluxes["klein"] > fluxes["sutton"] > fluxes["chapman"]
    # detra at 1.5 km/s: 1.45e-4 * 1.5^0.15 against klein's 1.83e-4
    rad = 0.6 * SIGMA_B * 300.0 ** 4
    ratio = (fluxes["detra"] + rad) / (fluxes["klein"] + rad)
    assert ratio == pytest.approx(1.45e-4 * 1.5 ** 0.15 / 1.83e-4, rel=1e-9)
    with pytest.raises(ValueError):
        constants_for("unknown")


def test_reynolds_coefficient():
    assert reynolds(1.0, 1000.0, 1.0) == pytest.approx(70.0e6, rel=1e-12)
    assert reynolds(0.5, 800.0, 2.0) == pytest.approx(70.0e6 * 0.5 * 0.8 * 2.0)
    with pytest.raises(ValueError):
        reynolds(1.0, 1000.0, 0.0)


def test_skin_friction_reference_point():
    assert skin_friction(1.0e7, 1.0) == pytest.approx(2.51e-3, rel=0.01)


def test_skin_friction_decreases_with_heating_and_reynolds():
    previous = skin_friction(1.0e7, 1.0)
    for ratio in (1.5, 2.0, 3.0, 5.0):
        current = skin_friction(1.0e7, ratio)
        assert current < previous
        previous = current
    previous = skin_friction(1.0e5, 2.0)
    for re in (1.0e6, 1.0e7, 1.0e8):
        current = skin_friction(re, 2.0)
        assert current < previous
        previous = current


def test_skin_friction_domain():
    with pytest.raises(ValueError):
        skin_friction(0.0, 1.0)
    with pytest.raises(ValueError):
        skin_friction(1.0e7, 0.9)
    with pytest.raises(ValueError):
        skin_friction(0.5, 1.0)  # ln Re negative, bracket collapses


def test_stanton_stays_within_the_analogy_band():
    for c_f in np.linspace(1e-4, 8e-3, 40):
        st = stanton(float(c_f))
        assert 0.499 * c_f <= st <= 0.601 * c_f


def test_cylinder_flux_vanishes_at_the_recovery_temperature():
    atm = sample(12000.0)
    _, t_r = recovery_conditions(atm, 1000.0, 0.9)
    assert abs(turbulent_flux_cylinder(atm, 1000.0, 1.0, t_r)) < 0.1
    cold = turbulent_flux_cylinder(atm, 1000.0, 1.0, 300.0)
    hot = turbulent_flux_cylinder(atm, 1000.0, 1.0, t_r + 200.0)
    assert cold > 0.0
    assert hot < 0.0


def test_cone_flux_reduces_to_scaled_plate_at_zero_inclination():
    atm = sample(12000.0)
    v, t_w = 1000.0, 400.0
    # the cone station at the nose-cylinder joint is parallel to the flow
    cone = cone_flux(atm, v, 1.0, t_w)
    plate = turbulent_flux_cylinder(atm, v, 1.0, t_w)
    radiation = CONE_EMISSIVITY * SIGMA_B * t_w ** 4
    assert (cone + radiation) / plate == pytest.approx(
        CONE_COEFFICIENT / CYLINDER_COEFFICIENT, rel=1e-9
    )


def test_cone_inclination_mapping():
    assert cone_inclination(0.0) == pytest.approx(0.3)
    assert cone_inclination(0.5) == pytest.approx(0.15)
    assert cone_inclination(1.0) == 0.0
    assert cone_inclination(0.5, nose_length=2.0) == pytest.approx(0.225)
    with pytest.raises(ValueError):
        cone_inclination(1.5)


def test_cone_flux_pressure_factor():
    atm = sample(12000.0)
    v, t_w, y = 1000.0, 400.0, 0.5
    theta = cone_inclination(y)
    # same correlation with the inclination zeroed isolates the factor
    base = backend.turbulent_flux(
        atm.density, atm.temperature, v, t_w,
        CONE_COEFFICIENT, y, 0.0, 0.9, 0.0, 1005.0,
    )
    full = cone_flux(atm, v, y, t_w)
    radiation = CONE_EMISSIVITY * SIGMA_B * t_w ** 4
    factor = 1.0 + 6.0e-6 * math.sin(theta) ** 2 * v * v
    assert (full + radiation) / base == pytest.approx(factor, rel=1e-9)


def test_cone_flux_near_tip_clamps_the_reynolds_length():
    atm = sample(12000.0)
    v, t_w = 1000.0, 400.0
    q_at_clamp = cone_flux(atm, v, 0.03, t_w)
    q_inside = cone_flux(atm, v, 0.02, t_w)
    # only the inclination factor differs once x is clamped
    f_inside = 1.0 + 6.0e-6 * math.sin(cone_inclination(0.02)) ** 2 * v * v
    f_clamp = 1.0 + 6.0e-6 * math.sin(cone_inclination(0.03)) ** 2 * v * v
    radiation = CONE_EMISSIVITY * SIGMA_B * t_w ** 4
    assert (q_inside + radiation) / (q_at_clamp + radiation) == pytest.approx(
        f_inside / f_clamp, rel=1e-9
    )


def test_equilibrium_returns_ambient_when_the_wall_cannot_heat():
    atm = sample(15000.0)
    station = stagnation_station(0.02)
    assert station_equilibrium(station, atm, 0.0) == atm.temperature


def test_equilibrium_flux_residual_is_small():
    atm = sample(15000.0)
    v = 1200.0
    t_eq = station_equilibrium(stagnation_station(0.02), atm, v)
    assert abs(stagnation_flux(atm, v, 0.02, t_eq)) < 1.0
    t_eq = station_equilibrium(cone_station(0.10), atm, v)
    assert abs(cone_flux(atm, v, 0.10, t_eq)) < 1.0


def test_equilibrium_is_monotone_along_the_nose():
    atm = sample(15000.0)
    v = 1400.0
    temps = [
        station_equilibrium(cone_station(y), atm, v)
        for y in (0.03, 0.10, 0.30, 0.60, 1.0)
    ]
    assert all(a > b for a, b in zip(temps, temps[1:]))


def test_equilibrium_rejects_unbracketable_walls():
    # enormous convection with no room to radiate it away
    flux_fn = lambda tw: 1.0e12
    with pytest.raises(ValueError):
        equilibrium_wall_temperature(flux_fn, 250.0)


def test_equilibrium_bisection_tolerance():
    flux_fn = lambda tw: 1000.0 - (tw - 250.0) * 10.0  # root at 350 K
    t_eq = equilibrium_wall_temperature(flux_fn, 250.0)
    assert abs(flux_fn(t_eq)) < 1.0


def test_cylinder_station_has_no_equilibrium():
    atm = sample(15000.0)
    with pytest.raises(ValueError):
        station_equilibrium(cylinder_station(), atm, 1200.0)


def test_station_validation():
    with pytest.raises(ValueError):
        ThermalStation(kind="nose", emissivity=0.6)
    with pytest.raises(ValueError):
        ThermalStation(kind="stagnation", emissivity=0.6, nose_radius=0.0)
    with pytest.raises(ValueError):
        ThermalStation(kind="cone", emissivity=1.5, y=0.1, theta=0.27)
    with pytest.raises(ValueError):
        cone_station(1.5)
    with pytest.raises(ValueError):
        ThermalConstants(prandtl=0.0)
    with pytest.raises(ValueError):
        ThermalConstants(r_f_turbulent=1.2)


def test_heat_sink_march_frozen_values(reference_ascent):
    hist = heat_sink_march(reference_ascent.series)
    assert hist.final_temperature - 273.15 == pytest.approx(98.98, abs=0.2)
    assert hist.cumulative_energy < 9.9e5
    assert hist.t[-1] == pytest.approx(30.0)
    assert hist.wall_temperature[0] == 293.15
    assert np.all(np.diff(hist.wall_temperature) >= 0.0)


def test_heat_sink_march_second_cell():
    spec = rocket_30cm(burn_time=80.0)
    ascent = integrate_ascent(spec, LaunchCondition(20000.0, 700.0, 62.0))
    hist = heat_sink_march(ascent.series)
    assert hist.final_temperature - 273.15 == pytest.approx(42.96, abs=0.2)


def test_heat_sink_march_with_zero_flux(reference_ascent):
    hist = heat_sink_march(
        reference_ascent.series, flux_fn=lambda rho, ta, v, tw: 0.0
    )
    assert np.all(hist.wall_temperature == 293.15)
    assert hist.cumulative_energy == 0.0
    assert np.all(hist.flux == 0.0)


def test_heat_sink_march_flux_injection_matches_the_default(reference_ascent):
    def default_flux(rho, ta, v, tw):
        return backend.turbulent_flux(
            rho, ta, v, tw, CONE_COEFFICIENT, 1.0, 0.0, 0.9,
            CONE_EMISSIVITY, 1005.0,
        )

    built_in = heat_sink_march(reference_ascent.series)
    injected = heat_sink_march(reference_ascent.series, flux_fn=default_flux)
    assert np.allclose(built_in.wall_temperature, injected.wall_temperature,
                       rtol=1e-12, atol=0.0)
    assert built_in.cumulative_energy == pytest.approx(
        injected.cumulative_energy, rel=1e-12
    )


def test_heat_sink_march_validation(reference_ascent):
    with pytest.raises(ValueError):
        heat_sink_march(reference_ascent.series, areal_density=0.0)
    with pytest.raises(ValueError):
        heat_sink_march(reference_ascent.series, cp_wall=-1.0)


def test_thermal_history_layout(reference_ascent):
    series = thermal_history(reference_ascent.series)
    assert series.labels == (
        "T_stag", "T_cone_Y0.03", "T_cone_Y0.10", "T_cone_Y0.30", "T_cyl_base",
    )
    n = len(series.t)
    assert series.temperatures.shape == (n, 5)
    assert series.q_cyl is not None and len(series.q_cyl) == n
    assert series.cumulative_energy is not None
    # powered segment only: ends at burnout
    assert series.t[-1] == pytest.approx(30.0)


def test_thermal_history_station_ordering(reference_ascent):
    series = thermal_history(reference_ascent.series)
    final = series.temperatures[-1]
    # stagnation hottest, then monotone cooling along the nose
    assert final[0] > final[1] > final[2] > final[3]
    stag = series.temperatures[:, 0]
    peak = int(np.argmax(stag))
    assert peak >= int(0.8 * len(stag))


def test_thermal_history_csv_schema(reference_ascent):
    text = thermal_history(reference_ascent.series).to_csv()
    header = text.splitlines()[0]
    assert header == "t,T_stag,T_cone_Y0.03,T_cone_Y0.10,T_cone_Y0.30,T_cyl_base,q_cyl"


def test_default_station_set():
    stations = default_stations(nose_radius=0.02, nose_length=1.0)
    assert [s.kind for s in stations] == [
        "stagnation", "cone", "cone", "cone", "cylinder_base",
    ]
    assert stations[0].nose_radius == 0.02
    assert stations[1].y == 0.03
    assert stations[-1].x == 1.0
