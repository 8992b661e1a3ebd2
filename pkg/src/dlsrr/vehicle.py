"""Vehicle and projectile definitions.

Holds the drag tables, the spec records for the rocket and its warheads,
the bundled propellant catalogue, and the closed-form performance
formulas (ideal velocity gain, warhead mass, burn-rate scaling).
"""
import csv
import math
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

# volume coefficients of the artillery-shape warhead, each times d^3;
# stored with the source rounding rather than recomputed from geometry
FRUSTUM_COEFF = 1.43
CYLINDER_COEFF = 1.62
NOSE_COEFF = 0.50
TOTAL_VOLUME_COEFF = 3.55


class UnsupportedPropellantError(ValueError):
    """Raised when a propellant record lacks the data an operation needs."""


@dataclass(frozen=True)
class DragTable:
    """Piecewise-linear drag coefficient versus Mach number."""

    knots: tuple

    def __post_init__(self):
        knots = tuple((float(m), float(c)) for m, c in self.knots)
        object.__setattr__(self, "knots", knots)
        if len(knots) < 2:
            raise ValueError("drag table needs at least 2 knots")
        for i, (m, c) in enumerate(knots):
            if c <= 0.0:
                raise ValueError(f"drag coefficient {c} at knot {i} must be positive")
            if i and m <= knots[i - 1][0]:
                raise ValueError("knot Mach numbers must be strictly increasing")
        object.__setattr__(
            self, "machs", np.array([m for m, _ in knots], dtype=np.float64)
        )
        object.__setattr__(
            self, "cds", np.array([c for _, c in knots], dtype=np.float64)
        )


@dataclass(frozen=True)
class RocketSpec:
    """Geometry and propulsion parameters of the powered vehicle."""

    total_mass: float
    diameter: float
    propellant_fraction: float
    exhaust_velocity: float
    burn_time: float
    drag_table: DragTable
    nose_radius: float
    nose_length: float
    body_length: float
    frontal_area: float = field(init=False)

    def __post_init__(self):
        if self.total_mass <= 0.0:
            raise ValueError("total_mass must be positive")
        if self.diameter <= 0.0:
            raise ValueError("diameter must be positive")
        if not 0.0 < self.propellant_fraction < 1.0:
            raise ValueError("propellant_fraction must lie in (0, 1)")
        if self.exhaust_velocity <= 0.0:
            raise ValueError("exhaust_velocity must be positive")
        if self.burn_time <= 0.0:
            raise ValueError("burn_time must be positive")
        if self.nose_radius <= 0.0:
            raise ValueError("nose_radius must be positive")
        if self.nose_length <= 0.0:
            raise ValueError("nose_length must be positive")
        if self.body_length <= 0.0:
            raise ValueError("body_length must be positive")
        object.__setattr__(self, "frontal_area", math.pi / 4.0 * self.diameter ** 2)


@dataclass(frozen=True)
class ProjectileSpec:
    """An unpowered warhead released at apogee."""

    mass: float
    diameter: float
    drag_table: DragTable
    frontal_area: float = field(init=False)

    def __post_init__(self):
        if self.mass <= 0.0:
            raise ValueError("mass must be positive")
        if self.diameter <= 0.0:
            raise ValueError("diameter must be positive")
        object.__setattr__(self, "frontal_area", math.pi / 4.0 * self.diameter ** 2)


@dataclass(frozen=True)
class PropellantRecord:
    """One row of the propellant catalogue.

    burn_rate_ref is mm/s at reference_pressure (atm); None where the
    source lists no burn-rate measurement.
    """

    name: str
    flame_temperature: float
    exhaust_velocity: float
    burn_rate_ref: float | None
    reference_pressure: float
    exponent: float | None

    def __post_init__(self):
        if self.burn_rate_ref is not None and self.burn_rate_ref <= 0.0:
            raise ValueError("burn_rate_ref must be positive where present")
        if self.exponent is not None and not 0.0 <= self.exponent <= 1.0:
            raise ValueError("exponent must lie in [0, 1]")


def cd_lookup(table, mach):
    """Drag coefficient at the given Mach number, clamped outside the knots."""
    if mach < 0.0:
        raise ValueError(f"mach {mach} must be non-negative")
    from dlsrr._kernels import backend

    return float(backend.cd_lookup(table.machs, table.cds, float(mach)))


def tsiolkovsky_gain(exhaust_velocity, propellant_fraction):
    """Ideal velocity gain -v_e ln(1 - f_p) of the rocket equation."""
    if exhaust_velocity <= 0.0:
        raise ValueError("exhaust_velocity must be positive")
    if not 0.0 <= propellant_fraction < 1.0:
        raise ValueError("propellant_fraction must lie in [0, 1)")
    return -exhaust_velocity * math.log(1.0 - propellant_fraction)


def europrojectile_volume_terms(diameter):
    """Frustum, cylinder, and nose volumes (m^3) of the artillery shape."""
    d3 = diameter ** 3
    return FRUSTUM_COEFF * d3, CYLINDER_COEFF * d3, NOSE_COEFF * d3


def europrojectile_mass(diameter, density):
    """Mass (kg) of the artillery-shape warhead of the given caliber."""
    if diameter < 0.0:
        raise ValueError("diameter must be non-negative")
    if density <= 0.0:
        raise ValueError("density must be positive")
    return TOTAL_VOLUME_COEFF * diameter ** 3 * density


def burn_rate(record, pressure):
    """Burn rate (mm/s) at a chamber pressure (atm) via the power law."""
    if pressure <= 0.0:
        raise ValueError("pressure must be positive")
    if record.burn_rate_ref is None or record.exponent is None:
        raise UnsupportedPropellantError(
            f"propellant {record.name!r} has no burn-rate data"
        )
    return record.burn_rate_ref * (pressure / record.reference_pressure) ** record.exponent


def _data_file(*parts):
    node = resources.files("dlsrr") / "data"
    for part in parts:
        node = node / part
    return node


def _load_drag_csv(fname):
    text = _data_file(fname).read_text(encoding="utf-8")
    knots = []
    reader = csv.reader(u for u in text.splitlines() if u and not u.startswith("#"))
    header = next(reader)
    if header != ["mach", "cd"]:
        raise ValueError(f"{fname}: unexpected header {header}")
    for row in reader:
        knots.append((float(row[0]), float(row[1])))
    return DragTable(tuple(knots))


def load_propellants():
    """Read the bundled propellant catalogue."""
    text = _data_file("propellants.csv").read_text(encoding="utf-8")
    reader = csv.DictReader(u for u in text.splitlines() if u and not u.startswith("#"))
    records = []
    for row in reader:
        records.append(
            PropellantRecord(
                name=row["name"],
                flame_temperature=float(row["flame_temperature"]),
                exhaust_velocity=float(row["exhaust_velocity"]),
                burn_rate_ref=float(row["burn_rate_ref"]) if row["burn_rate_ref"] else None,
                reference_pressure=float(row["reference_pressure"]),
                exponent=float(row["exponent"]) if row["exponent"] else None,
            )
        )
    return tuple(records)


def rocket_drag_table():
    """Drag table of the 0.30 m finned rocket."""
    return _load_drag_csv("drag_rocket_30cm.csv")


def hpv_drag_table():
    """Drag table of the high-performance (conical) warhead."""
    return _load_drag_csv("drag_hpv.csv")


def europrojectile_drag_table():
    """Drag table of the 75 mm artillery-shape warhead."""
    return _load_drag_csv("drag_europrojectile.csv")


def rocket_30cm(burn_time=30.0):
    """The study's 300 kg, 0.30 m rocket with a configurable burn time."""
    return RocketSpec(
        total_mass=300.0,
        diameter=0.30,
        propellant_fraction=0.5,
        exhaust_velocity=2100.0,
        burn_time=burn_time,
        drag_table=rocket_drag_table(),
        nose_radius=0.02,
        nose_length=1.0,
        body_length=3.3,
    )


def hpv():
    """The 11.4 kg high-performance warhead."""
    return ProjectileSpec(mass=11.4, diameter=0.0783, drag_table=hpv_drag_table())


def europrojectile(diameter=0.075, density=11000.0):
    """The artillery-shape warhead; mass follows from caliber and density."""
    return ProjectileSpec(
        mass=europrojectile_mass(diameter, density),
        diameter=diameter,
        drag_table=europrojectile_drag_table(),
    )
