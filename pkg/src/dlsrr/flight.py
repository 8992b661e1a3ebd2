"""Powered-ascent and ballistic-descent integration.

Forward-Euler trajectory integration in a flat-Earth Cartesian frame with
constant gravity: thrust along the velocity vector during burn, Mach-based
drag opposing motion throughout, apogee and impact refined by linear
interpolation inside the final step. Also houses the loss accounting
(thrust integral, drag loss, gravity loss) and the firing-angle sweep.
"""
import math
from dataclasses import dataclass

import numpy as np

from dlsrr import vehicle
from dlsrr._kernels import backend, common

G0 = common.G0

SERIES_COLUMNS = ("t", "x", "y", "vx", "vy", "mass", "mach", "rho", "T_a", "F_d", "F_t")

DEFAULT_DT = 0.1
DEFAULT_T_MAX = 1200.0


class SimulationError(RuntimeError):
    """Base class for integrator failures."""


class SimulationDivergenceError(SimulationError):
    """The integration ran past its time budget without terminating."""


class GroundImpactError(SimulationError):
    """The vehicle struck the ground while still below apogee."""


class AltitudeLimitError(SimulationError):
    """The trajectory left the altitude range of the atmosphere model."""


class OptimizationError(RuntimeError):
    """No angle in the sweep produced a completed trajectory."""


@dataclass(frozen=True)
class FlightState:
    """Planar kinematic state at one instant."""

    t: float
    x: float
    y: float
    vx: float
    vy: float
    mass: float


@dataclass(frozen=True)
class LaunchCondition:
    """Where and how the rocket is released from its carrier."""

    release_altitude: float
    release_speed: float
    firing_angle: float

    def __post_init__(self):
        if not 0.0 <= self.release_altitude <= 30000.0:
            raise ValueError("release_altitude must lie in [0 m, 30 km]")
        if self.release_speed < 0.0:
            raise ValueError("release_speed must be non-negative")
        if not 0.0 < self.firing_angle < 90.0:
            raise ValueError("firing_angle must lie in (0, 90) degrees")


class TrajectorySeries:
    """Fixed-step record of a trajectory leg.

    Wraps an (n, 11) float array with columns t, x, y, vx, vy, mass, mach,
    rho, T_a, F_d, F_t. The last record is the interpolated terminal point
    (apogee for ascents, ground impact for descents).
    """

    def __init__(self, data):
        data = np.asarray(data, dtype=np.float64)
        if data.ndim != 2 or data.shape[1] != len(SERIES_COLUMNS):
            raise ValueError(f"expected an (n, {len(SERIES_COLUMNS)}) array")
        self.data = data

    def __len__(self):
        return self.data.shape[0]

    def column(self, name):
        return self.data[:, SERIES_COLUMNS.index(name)]

    @property
    def t(self):
        return self.data[:, 0]

    @property
    def x(self):
        return self.data[:, 1]

    @property
    def y(self):
        return self.data[:, 2]

    @property
    def vx(self):
        return self.data[:, 3]

    @property
    def vy(self):
        return self.data[:, 4]

    @property
    def mass(self):
        return self.data[:, 5]

    @property
    def mach(self):
        return self.data[:, 6]

    @property
    def rho(self):
        return self.data[:, 7]

    @property
    def T_a(self):
        return self.data[:, 8]

    @property
    def F_d(self):
        return self.data[:, 9]

    @property
    def F_t(self):
        return self.data[:, 10]

    def state(self, i):
        """FlightState of record i (kinematic columns only)."""
        t, x, y, vx, vy, m = self.data[i, :6]
        return FlightState(t=t, x=x, y=y, vx=vx, vy=vy, mass=m)

    def to_csv(self, path=None):
        """Write the series as CSV (6 significant digits); return the text."""
        lines = [",".join(SERIES_COLUMNS)]
        for row in self.data:
            lines.append(",".join(f"{u:.6g}" for u in row))
        text = "\n".join(lines) + "\n"
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


@dataclass(frozen=True)
class AscentResult:
    """Apogee state and loss accounting of one powered ascent."""

    apogee_altitude: float
    apogee_speed: float
    apogee_downrange: float
    time_to_apogee: float
    drag_loss: float
    gravity_loss: float
    velocity_gain: float
    series: TrajectorySeries


@dataclass(frozen=True)
class ImpactResult:
    """Ground-impact state of one warhead descent."""

    range_from_release: float
    impact_speed: float
    descent_time: float
    descent_drag_loss: float
    series: TrajectorySeries


@dataclass(frozen=True)
class AngleEntry:
    """One firing angle of a sweep; failure holds the error text if it failed."""

    angle: float
    total_range: float
    failure: str | None


@dataclass(frozen=True)
class OptimizationResult:
    best_angle: float
    best_range: float
    table: tuple


def mass_flow_rate(spec):
    """Propellant mass flow (kg/s) of the steady-burn schedule."""
    return spec.total_mass * spec.propellant_fraction / spec.burn_time


def thrust(spec, t):
    """Thrust (N) at time t since ignition; zero after burnout."""
    if t < 0.0:
        raise ValueError("time must be non-negative")
    if t <= spec.burn_time:
        return mass_flow_rate(spec) * spec.exhaust_velocity
    return 0.0


def drag_force(state, area, table, atm):
    """Drag magnitude (N) on a body of the given frontal area."""
    v = math.hypot(state.vx, state.vy)
    if v == 0.0:
        return 0.0
    cd = vehicle.cd_lookup(table, v / atm.speed_of_sound)
    return 0.5 * cd * atm.density * v * v * area


def integrate_ascent(spec, launch, dt=DEFAULT_DT, t_max=DEFAULT_T_MAX):
    """Integrate the powered ascent from release to apogee.

    Gravity loss is defined so that the apogee energy identity holds
    exactly: v_g = (v0 + v_r) - v_d - sqrt(2 g (y_A - h0) + vx_A^2).
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")
    table = spec.drag_table
    try:
        status, rows, v_r, v_d = backend.integrate_ascent(
            launch.release_altitude,
            launch.release_speed,
            math.radians(launch.firing_angle),
            spec.total_mass,
            spec.propellant_fraction,
            spec.burn_time,
            spec.exhaust_velocity,
            spec.frontal_area,
            table.machs,
            table.cds,
            dt,
            t_max,
        )
    except ValueError as exc:
        raise AltitudeLimitError(str(exc)) from exc
    if status == 1:
        raise GroundImpactError(
            f"ground impact before apogee at firing angle {launch.firing_angle} deg"
        )
    if status == 2:
        raise SimulationDivergenceError(f"no apogee within {t_max} s")
    apogee = rows[-1]
    y_a = apogee[2]
    vx_a = apogee[3]
    v_g = (launch.release_speed + v_r) - v_d - math.sqrt(
        2.0 * G0 * (y_a - launch.release_altitude) + vx_a * vx_a
    )
    return AscentResult(
        apogee_altitude=y_a,
        apogee_speed=abs(vx_a),
        apogee_downrange=apogee[1],
        time_to_apogee=apogee[0],
        drag_loss=v_d,
        gravity_loss=v_g,
        velocity_gain=v_r,
        series=TrajectorySeries(rows),
    )


def integrate_descent(proj, apogee, dt=DEFAULT_DT, t_max=DEFAULT_T_MAX):
    """Integrate an unpowered fall from the release state to the ground.

    The descent drag loss is the deficit against the drag-free fall:
    sqrt(v0^2 + 2 g y0) minus the achieved impact speed.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if t_max <= 0.0:
        raise ValueError("t_max must be positive")
    if apogee.vy != 0.0:
        raise ValueError("descent must start at apogee (vy = 0)")
    if apogee.y <= 0.0:
        raise ValueError("descent must start above the ground")
    table = proj.drag_table
    try:
        status, rows = backend.integrate_descent(
            apogee.x,
            apogee.y,
            apogee.vx,
            apogee.vy,
            proj.mass,
            proj.frontal_area,
            table.machs,
            table.cds,
            dt,
            t_max,
        )
    except ValueError as exc:
        raise AltitudeLimitError(str(exc)) from exc
    if status == 2:
        raise SimulationDivergenceError(f"no ground impact within {t_max} s")
    impact = rows[-1]
    impact_speed = math.sqrt(impact[3] * impact[3] + impact[4] * impact[4])
    v0 = math.hypot(apogee.vx, apogee.vy)
    vacuum_speed = math.sqrt(v0 * v0 + 2.0 * G0 * apogee.y)
    return ImpactResult(
        range_from_release=impact[1],
        impact_speed=impact_speed,
        descent_time=impact[0],
        descent_drag_loss=vacuum_speed - impact_speed,
        series=TrajectorySeries(rows),
    )


def fly(spec, projectile, launch, dt=DEFAULT_DT, t_max=DEFAULT_T_MAX):
    """Ascent plus warhead descent released at apogee.

    Returns (AscentResult, ImpactResult); the descent series is seeded
    with the apogee downrange so its final x is the total range.
    """
    ascent = integrate_ascent(spec, launch, dt=dt, t_max=t_max)
    release = FlightState(
        t=0.0,
        x=ascent.apogee_downrange,
        y=ascent.apogee_altitude,
        vx=ascent.series.data[-1, 3],
        vy=0.0,
        mass=projectile.mass,
    )
    impact = integrate_descent(projectile, release, dt=dt, t_max=t_max)
    return ascent, impact


def optimize_firing_angle(spec, projectile, release_altitude, release_speed,
                          angle_grid=None, dt=DEFAULT_DT, t_max=DEFAULT_T_MAX):
    """Sweep firing angles and pick the one with the longest total range.

    Angles whose integration fails are excluded from the argmax but kept
    in the returned table with their failure text; ties go to the smaller
    angle. Raises OptimizationError when every angle fails.
    """
    if angle_grid is None:
        angle_grid = tuple(float(a) for a in range(30, 81))
    angles = tuple(float(a) for a in angle_grid)
    if not angles:
        raise ValueError("angle grid must not be empty")
    for i, a in enumerate(angles):
        if not 0.0 < a < 90.0:
            raise ValueError("angles must lie in (0, 90) degrees")
        if i and a <= angles[i - 1]:
            raise ValueError("angle grid must be strictly increasing")
    entries = []
    for a in angles:
        launch = LaunchCondition(release_altitude, release_speed, a)
        try:
            ascent, impact = fly(spec, projectile, launch, dt=dt, t_max=t_max)
        except SimulationError as exc:
            entries.append(AngleEntry(angle=a, total_range=math.nan, failure=str(exc)))
            continue
        entries.append(
            AngleEntry(angle=a, total_range=impact.range_from_release, failure=None)
        )
    best = None
    for entry in entries:
        if entry.failure is not None:
            continue
        if best is None or entry.total_range > best.total_range:
            best = entry
    if best is None:
        raise OptimizationError("every angle in the sweep failed to integrate")
    return OptimizationResult(
        best_angle=best.angle, best_range=best.total_range, table=tuple(entries)
    )
