"""Standard-atmosphere properties from sea level to 140 km.

Below 86 km the model is the layered 1976 US standard atmosphere; above,
temperature is frozen at its 86 km value and density decays exponentially
with a scale height fitted to the published high-altitude tables.
"""
import math
from dataclasses import dataclass

from dlsrr._kernels import backend, common

MAX_ALTITUDE = common.MAX_ALTITUDE
GAMMA = common.GAMMA
R_SOUND = common.R_SOUND


@dataclass(frozen=True)
class AtmosphereState:
    """Air properties at one altitude, SI units throughout."""

    altitude: float
    temperature: float
    pressure: float
    density: float
    speed_of_sound: float


def sample(altitude):
    """Atmosphere state at a geometric altitude in metres.

    Valid for 0 <= altitude <= 140000; outside that a ValueError names
    the violated bound.
    """
    t, p, rho, vs = backend.atmo_sample(float(altitude))
    return AtmosphereState(
        altitude=float(altitude),
        temperature=t,
        pressure=p,
        density=rho,
        speed_of_sound=vs,
    )


def speed_of_sound(temperature):
    """Speed of sound (m/s) of air at the given temperature (K)."""
    if temperature <= 0.0:
        raise ValueError(f"temperature {temperature} K must be positive")
    return math.sqrt(GAMMA * R_SOUND * temperature)
