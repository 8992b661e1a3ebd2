"""Flight dynamics and aerothermal heating of a drone-launched rocket.

The package simulates a small solid rocket released at altitude from a
carrier aircraft: powered ascent to apogee, ballistic warhead descent,
firing-angle optimization for range, and wall-temperature histories of
the nose and body under aerodynamic heating.

Hot loops run in a compiled extension when available and fall back to a
pure-Python twin otherwise; set DLSRR_KERNEL=ref or DLSRR_KERNEL=fast to
force a backend. Both produce bit-identical results.
"""
from dlsrr._kernels import backend_name, load_backend
from dlsrr.atmosphere import MAX_ALTITUDE, AtmosphereState, sample, speed_of_sound
from dlsrr.flight import (
    AltitudeLimitError,
    AngleEntry,
    AscentResult,
    FlightState,
    GroundImpactError,
    ImpactResult,
    LaunchCondition,
    OptimizationError,
    OptimizationResult,
    SimulationDivergenceError,
    SimulationError,
    TrajectorySeries,
    drag_force,
    fly,
    integrate_ascent,
    integrate_descent,
    mass_flow_rate,
    optimize_firing_angle,
    thrust,
)
from dlsrr.scenario_io import (
    RunReport,
    Scenario,
    ScenarioError,
    emit_scenario,
    parse_scenario,
    run,
)
from dlsrr.thermal import (
    DEFAULT_CONSTANTS,
    QK_VARIANTS,
    HeatSinkHistory,
    ThermalConstants,
    ThermalSeries,
    ThermalStation,
    air_enthalpy,
    cone_flux,
    cone_station,
    constants_for,
    cylinder_station,
    default_stations,
    equilibrium_wall_temperature,
    heat_sink_march,
    recovery_conditions,
    reynolds,
    skin_friction,
    stagnation_flux,
    stagnation_station,
    stanton,
    station_equilibrium,
    thermal_history,
    turbulent_flux_cylinder,
)
from dlsrr.vehicle import (
    DragTable,
    ProjectileSpec,
    PropellantRecord,
    RocketSpec,
    UnsupportedPropellantError,
    burn_rate,
    cd_lookup,
    europrojectile,
    europrojectile_mass,
    europrojectile_volume_terms,
    hpv,
    load_propellants,
    rocket_30cm,
    tsiolkovsky_gain,
)

__version__ = "1.0.0"

__all__ = [
    "AltitudeLimitError",
    "AngleEntry",
    "AscentResult",
    "AtmosphereState",
    "DEFAULT_CONSTANTS",
    "DragTable",
    "FlightState",
    "GroundImpactError",
    "HeatSinkHistory",
    "ImpactResult",
    "LaunchCondition",
    "MAX_ALTITUDE",
    "OptimizationError",
    "OptimizationResult",
    "ProjectileSpec",
    "PropellantRecord",
    "QK_VARIANTS",
    "RocketSpec",
    "RunReport",
    "Scenario",
    "ScenarioError",
    "SimulationDivergenceError",
    "SimulationError",
    "ThermalConstants",
    "ThermalSeries",
    "ThermalStation",
    "TrajectorySeries",
    "UnsupportedPropellantError",
    "air_enthalpy",
    "backend_name",
    "burn_rate",
    "cd_lookup",
    "cone_flux",
    "cone_station",
    "constants_for",
    "cylinder_station",
    "default_stations",
    "drag_force",
    "emit_scenario",
    "equilibrium_wall_temperature",
    "europrojectile",
    "europrojectile_mass",
    "europrojectile_volume_terms",
    "fly",
    "heat_sink_march",
    "hpv",
    "integrate_ascent",
    "integrate_descent",
    "load_backend",
    "load_propellants",
    "mass_flow_rate",
    "optimize_firing_angle",
    "parse_scenario",
    "recovery_conditions",
    "reynolds",
    "rocket_30cm",
    "run",
    "sample",
    "skin_friction",
    "speed_of_sound",
    "stagnation_flux",
    "stagnation_station",
    "stanton",
    "station_equilibrium",
    "thermal_history",
    "thrust",
    "tsiolkovsky_gain",
    "turbulent_flux_cylinder",
]
