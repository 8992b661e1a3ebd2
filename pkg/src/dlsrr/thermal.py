"""Aerodynamic heating along an ascent trajectory.

Correlation-based heat fluxes for three station kinds on the vehicle:
the laminar stagnation point on the nose tip, turbulent stations along
the conical nose, and the cylindrical body treated as a thin heat-sink
skin. Stagnation and cone stations radiate and are solved for their
instantaneous radiative-equilibrium wall temperature; the cylinder skin
is marched cumulatively over the burn.

Air enthalpy uses a calorically perfect model (cp = 1005 J/(kg K)) and
is swappable through ThermalConstants.cp_air.
"""
import math
from dataclasses import dataclass, replace

import numpy as np

from dlsrr._kernels import backend, common

SIGMA_B = common.SIGMA_B

# flux-correlation coefficients: flat plate, and cone (1.3x the plate value)
CYLINDER_COEFFICIENT = 0.68
CONE_COEFFICIENT = 0.88

STAGNATION_EMISSIVITY = 0.6   # oxidized chromium, lower bound
CONE_EMISSIVITY = 0.75        # oxidized Inconel, lower bound

CONE_Y_MIN = 0.03  # m; innermost resolved cone station, avoids the Re->0 tip

DEFAULT_AREAL_DENSITY = 13.5  # kg/m^2, 5 mm aluminum wall
DEFAULT_CP_WALL = 912.5       # J/(kg K)
DEFAULT_T_INITIAL = 293.15    # K


@dataclass(frozen=True)
class ThermalConstants:
    """Correlation constants of the heating model."""

    q_k: float = 1.83e-4
    q_k_velocity_exponent: float = 0.0
    sigma_b: float = SIGMA_B
    prandtl: float = 0.71
    gamma: float = 1.4
    r_f_stagnation: float = 1.0
    r_f_turbulent: float = 0.9
    cp_air: float = 1005.0
    mu_ref: float = 1.7e-5
    mu_ref_temperature: float = 240.0
    mu_exponent: float = 0.7

    def __post_init__(self):
        for name in ("q_k", "sigma_b", "prandtl", "gamma", "cp_air",
                     "mu_ref", "mu_ref_temperature", "mu_exponent"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")
        for name in ("r_f_stagnation", "r_f_turbulent"):
            if not 0.0 < getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in (0, 1]")


DEFAULT_CONSTANTS = ThermalConstants()

# stagnation correlation variants; detra scales with (v / 1 km/s)^0.15
QK_VARIANTS = {
    "klein": (1.83e-4, 0.0),
    "sutton": (1.74e-4, 0.0),
    "chapman": (1.63e-4, 0.0),
    "detra": (1.45e-4, 0.15),
}


def constants_for(variant):
    """ThermalConstants with the named stagnation-correlation variant."""
    try:
        q_k, vexp = QK_VARIANTS[variant]
    except KeyError:
        raise ValueError(
            f"unknown correlation variant {variant!r}; choose from "
            f"{sorted(QK_VARIANTS)}"
        ) from None
    return replace(DEFAULT_CONSTANTS, q_k=q_k, q_k_velocity_exponent=vexp)


@dataclass(frozen=True)
class ThermalStation:
    """A point on the wall where heating is evaluated.

    kind is one of 'stagnation' (needs nose_radius), 'cone' (needs y and
    theta along the nose), or 'cylinder_base' (needs x, the turbulent
    run length).
    """

    kind: str
    emissivity: float
    nose_radius: float | None = None
    y: float | None = None
    theta: float | None = None
    x: float | None = None

    def __post_init__(self):
        if not 0.0 < self.emissivity <= 1.0:
            raise ValueError("emissivity must lie in (0, 1]")
        if self.kind == "stagnation":
            if self.nose_radius is None or self.nose_radius <= 0.0:
                raise ValueError("stagnation station needs a positive nose_radius")
        elif self.kind == "cone":
            if self.y is None or self.theta is None:
                raise ValueError("cone station needs y and theta")
        elif self.kind == "cylinder_base":
            if self.x is None or self.x <= 0.0:
                raise ValueError("cylinder station needs a positive run length x")
        else:
            raise ValueError(f"unknown station kind {self.kind!r}")


def stagnation_station(nose_radius, emissivity=STAGNATION_EMISSIVITY):
    return ThermalStation(
        kind="stagnation", emissivity=emissivity, nose_radius=nose_radius
    )


def cone_station(y, nose_length=1.0, emissivity=CONE_EMISSIVITY):
    if not 0.0 <= y <= nose_length:
        raise ValueError("cone station must lie on the nose (0 <= y <= nose length)")
    return ThermalStation(
        kind="cone",
        emissivity=emissivity,
        y=y,
        theta=cone_inclination(y, nose_length),
    )


def cylinder_station(x=1.0, emissivity=CONE_EMISSIVITY):
    return ThermalStation(kind="cylinder_base", emissivity=emissivity, x=x)


def default_stations(nose_radius=0.02, nose_length=1.0):
    """The reporting station set: nose tip, three cone points, cylinder base."""
    return (
        stagnation_station(nose_radius),
        cone_station(0.03, nose_length),
        cone_station(0.10, nose_length),
        cone_station(0.30, nose_length),
        cylinder_station(1.0),
    )


def air_enthalpy(temperature, constants=DEFAULT_CONSTANTS):
    """Specific enthalpy of air (J/kg) under the calorically perfect model."""
    if temperature < 0.0:
        raise ValueError("temperature must be non-negative")
    return constants.cp_air * temperature


def temperature_from_enthalpy(enthalpy, constants=DEFAULT_CONSTANTS):
    """Inverse of air_enthalpy; exact under the linear model."""
    return enthalpy / constants.cp_air


def recovery_conditions(atm, v, r_f, constants=DEFAULT_CONSTANTS):
    """Adiabatic wall enthalpy (J/kg) and recovery temperature (K)."""
    if v < 0.0:
        raise ValueError("speed must be non-negative")
    h_aw = constants.cp_air * atm.temperature + r_f * v * v / 2.0
    return h_aw, temperature_from_enthalpy(h_aw, constants)


def stagnation_flux(atm, v, nose_radius, t_w, constants=DEFAULT_CONSTANTS,
                    emissivity=STAGNATION_EMISSIVITY):
    """Net stagnation-point heat flux (W/m^2); pure radiative cooling at v = 0."""
    if nose_radius <= 0.0:
        raise ValueError("nose_radius must be positive")
    if atm.density < 0.0:
        raise ValueError("density must be non-negative")
    if v < 0.0:
        raise ValueError("speed must be non-negative")
    return backend.stagnation_flux(
        atm.density,
        atm.temperature,
        v,
        t_w,
        constants.q_k,
        constants.q_k_velocity_exponent,
        nose_radius,
        emissivity,
        constants.cp_air,
    )


def reynolds(rho, v, x):
    """Reynolds number at distance x (m) from the leading point.

    The 70e6 coefficient folds the reference viscosity of air near 240 K
    into a density (kg/m^3) times speed (km/s) times length (m) product.
    """
    if x <= 0.0:
        raise ValueError("x must be positive")
    return 70.0e6 * rho * (v / 1000.0) * x


def skin_friction(re, t_star_ratio):
    """Turbulent skin-friction coefficient at boundary-to-ambient ratio T*/T_a."""
    if t_star_ratio < 1.0:
        raise ValueError("T*/T_a must be at least 1")
    if re <= 0.0:
        raise ValueError("Reynolds number must be positive")
    bracket = math.log(re) - 1.7 * math.log(t_star_ratio)
    if bracket <= 0.0:
        raise ValueError("skin-friction correlation bracket is not positive")
    return 2.28 * bracket ** -2.45 / t_star_ratio


def stanton(c_f, prandtl=0.71):
    """Stanton number from the skin-friction coefficient."""
    if c_f <= 0.0:
        raise ValueError("skin-friction coefficient must be positive")
    root = math.sqrt(c_f / 2.0)
    return (c_f / 2.0) / (1.0 + 13.0 * (prandtl ** (2.0 / 3.0) - 1.0) * root)


def turbulent_flux_cylinder(atm, v, x, t_w, constants=DEFAULT_CONSTANTS):
    """Convective turbulent flux (W/m^2) on the cylinder; no radiation term."""
    return backend.turbulent_flux(
        atm.density,
        atm.temperature,
        v,
        t_w,
        CYLINDER_COEFFICIENT,
        x,
        0.0,
        constants.r_f_turbulent,
        0.0,
        constants.cp_air,
    )


def cone_inclination(y, nose_length=1.0):
    """Surface inclination (rad) of the nose cone at axial position y."""
    if not 0.0 <= y <= nose_length:
        raise ValueError("y must lie on the nose (0 <= y <= nose length)")
    return 0.3 * (1.0 - y / nose_length)


def cone_flux(atm, v, y, t_w, constants=DEFAULT_CONSTANTS, nose_length=1.0,
              emissivity=CONE_EMISSIVITY):
    """Net heat flux (W/m^2) on the nose cone at axial position y.

    The Reynolds length is clamped to CONE_Y_MIN near the tip where the
    flat-plate correlation loses validity; the tip itself belongs to the
    stagnation model.
    """
    theta = cone_inclination(y, nose_length)
    x = y if y > CONE_Y_MIN else CONE_Y_MIN
    return backend.turbulent_flux(
        atm.density,
        atm.temperature,
        v,
        t_w,
        CONE_COEFFICIENT,
        x,
        theta,
        constants.r_f_turbulent,
        emissivity,
        constants.cp_air,
    )


def equilibrium_wall_temperature(flux_fn, t_a):
    """Wall temperature (K) where the net flux crosses zero.

    Bisection on [t_a, 4000 K] to |flux| < 1 W/m^2 (with a microkelvin
    bracket as the fallback exit for pathological flux functions);
    returns t_a directly when the wall cannot heat at all.
    """
    lo = t_a
    flo = flux_fn(lo)
    if flo <= 0.0:
        return lo
    hi = 4000.0
    fhi = flux_fn(hi)
    if fhi > 0.0:
        raise ValueError("no radiative-equilibrium wall temperature below 4000 K")
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f = flux_fn(mid)
        if abs(f) < 1.0 or hi - lo < 1e-6:
            return mid
        if f > 0.0:
            lo = mid
        else:
            hi = mid
    return mid


def _station_equilibrium_raw(station, rho, ta, v, constants):
    if station.kind == "stagnation":
        return backend.equilibrium_stagnation(
            rho,
            ta,
            v,
            constants.q_k,
            constants.q_k_velocity_exponent,
            station.nose_radius,
            station.emissivity,
            constants.cp_air,
        )
    if station.kind == "cone":
        x = station.y if station.y > CONE_Y_MIN else CONE_Y_MIN
        return backend.equilibrium_turbulent(
            rho,
            ta,
            v,
            CONE_COEFFICIENT,
            x,
            station.theta,
            constants.r_f_turbulent,
            station.emissivity,
            constants.cp_air,
        )
    raise ValueError(
        "cylinder stations accumulate heat and have no per-instant equilibrium"
    )


def station_equilibrium(station, atm, v, constants=DEFAULT_CONSTANTS):
    """Radiative-equilibrium wall temperature (K) of one station."""
    return _station_equilibrium_raw(station, atm.density, atm.temperature, v, constants)


@dataclass(frozen=True)
class HeatSinkHistory:
    """Marched skin temperature of the cylinder wall over the burn."""

    t: np.ndarray
    wall_temperature: np.ndarray
    flux: np.ndarray
    cumulative_energy: float
    final_temperature: float


def _powered_slice(series):
    """Sample count covering the burn: thrusting rows plus the burnout row."""
    ft = series.F_t
    idle = np.nonzero(ft <= 0.0)[0]
    n = int(idle[0]) + 1 if idle.size else len(series)
    if n < 2:
        raise ValueError("series does not cover a burn interval")
    return n


def heat_sink_march(series, areal_density=DEFAULT_AREAL_DENSITY,
                    cp_wall=DEFAULT_CP_WALL, t_initial=DEFAULT_T_INITIAL,
                    x=1.0, constants=DEFAULT_CONSTANTS,
                    emissivity=CONE_EMISSIVITY, coefficient=CONE_COEFFICIENT,
                    flux_fn=None):
    """March the cylinder-skin temperature across the powered segment.

    The skin is a lumped heat sink: T += flux dt / (areal_density cp_wall),
    integrated as a left Riemann sum over the thrusting samples and stopped
    at burnout. The default flux is the cone correlation evaluated at zero
    inclination with run length x, radiating at the given emissivity; pass
    flux_fn(rho, T_a, v, T_w) to substitute any other wall-flux model.
    """
    if areal_density <= 0.0:
        raise ValueError("areal_density must be positive")
    if cp_wall <= 0.0:
        raise ValueError("cp_wall must be positive")
    n = _powered_slice(series)
    t = series.t[:n].copy()
    dt = t[1] - t[0]
    rho = series.rho[:n]
    ta = series.T_a[:n]
    vx = series.vx[:n]
    vy = series.vy[:n]
    v = np.sqrt(vx * vx + vy * vy)
    if flux_fn is None:
        tw_arr, q_arr, cum = backend.heat_sink_history(
            rho, ta, v, dt, coefficient, x, constants.r_f_turbulent,
            emissivity, constants.cp_air, areal_density, cp_wall, t_initial,
        )
    else:
        tw_arr = np.empty(n, dtype=np.float64)
        q_arr = np.empty(n, dtype=np.float64)
        tw = t_initial
        cum = 0.0
        for i in range(n):
            q = flux_fn(rho[i], ta[i], v[i], tw)
            tw_arr[i] = tw
            q_arr[i] = q
            if i < n - 1:
                tw = tw + q * dt / (areal_density * cp_wall)
                cum += q * dt
    return HeatSinkHistory(
        t=t,
        wall_temperature=tw_arr,
        flux=q_arr,
        cumulative_energy=cum,
        final_temperature=float(tw_arr[-1]),
    )


@dataclass(frozen=True)
class ThermalSeries:
    """Wall temperatures per station along the powered segment."""

    t: np.ndarray
    labels: tuple
    temperatures: np.ndarray
    q_cyl: np.ndarray | None
    cumulative_energy: float | None

    def to_csv(self, path=None):
        """Write the series as CSV (6 significant digits); return the text."""
        columns = ["t", *self.labels]
        if self.q_cyl is not None:
            columns.append("q_cyl")
        lines = [",".join(columns)]
        for i in range(len(self.t)):
            vals = [self.t[i], *self.temperatures[i]]
            if self.q_cyl is not None:
                vals.append(self.q_cyl[i])
            lines.append(",".join(f"{u:.6g}" for u in vals))
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


def _station_label(station):
    if station.kind == "stagnation":
        return "T_stag"
    if station.kind == "cone":
        return f"T_cone_Y{station.y:.2f}"
    return "T_cyl_base"


def thermal_history(series, stations=None, constants=DEFAULT_CONSTANTS,
                    areal_density=DEFAULT_AREAL_DENSITY, cp_wall=DEFAULT_CP_WALL,
                    t_initial=DEFAULT_T_INITIAL):
    """Wall-temperature histories over the powered segment of an ascent.

    Stagnation and cone stations are solved independently per sample (the
    shield radiates its heat away); a cylinder station is marched as a
    heat sink and contributes the flux column. Post-burnout samples are
    not evaluated: the correlations lose their footing in near-vacuum,
    and the skin march is defined over the burn only.
    """
    if stations is None:
        stations = default_stations()
    n = _powered_slice(series)
    t = series.t[:n].copy()
    rho = series.rho[:n]
    ta = series.T_a[:n]
    vx = series.vx[:n]
    vy = series.vy[:n]
    v = np.sqrt(vx * vx + vy * vy)
    temps = np.empty((n, len(stations)), dtype=np.float64)
    q_cyl = None
    cumulative = None
    for j, station in enumerate(stations):
        if station.kind == "cylinder_base":
            hist = heat_sink_march(
                series,
                areal_density=areal_density,
                cp_wall=cp_wall,
                t_initial=t_initial,
                x=station.x,
                constants=constants,
                emissivity=station.emissivity,
            )
            temps[:, j] = hist.wall_temperature
            q_cyl = hist.flux
            cumulative = hist.cumulative_energy
            continue
        for i in range(n):
            temps[i, j] = _station_equilibrium_raw(
                station, float(rho[i]), float(ta[i]), float(v[i]), constants
            )
    labels = tuple(_station_label(s) for s in stations)
    return ThermalSeries(
        t=t,
        labels=labels,
        temperatures=temps,
        q_cyl=q_cyl,
        cumulative_energy=cumulative,
    )
