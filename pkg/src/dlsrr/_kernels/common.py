"""Physical constants and atmosphere tables shared by both kernel backends.

The layered atmosphere is the 1976 US standard: seven geopotential layers
up to 86 km geometric altitude, then an exponential density tail with the
temperature held at its 86 km value. The tail scale height (SCALE_HEIGHT,
5862.2 m) is a least-squares fit of ln(density) to the published 86-120 km
standard values listed in TAIL_ANCHORS.
"""
import math

G0 = 9.80665               # m/s^2
R_AIR = 287.0528           # J/(kg K), hydrostatic gas constant of the layered model
R_SOUND = 287.05           # J/(kg K), gas constant used in the speed-of-sound relation
GAMMA = 1.4
EARTH_RADIUS = 6356766.0   # m, radius used by the geopotential conversion
SIGMA_B = 5.67e-8          # W/(m^2 K^4)

# geopotential layer bases (m), base temperatures (K), lapse rates (K/m)
LAYER_BASE = (0.0, 11000.0, 20000.0, 32000.0, 47000.0, 51000.0, 71000.0)
LAYER_TEMP = (288.15, 216.65, 216.65, 228.65, 270.65, 270.65, 214.65)
LAYER_LAPSE = (-0.0065, 0.0, 0.0010, 0.0028, 0.0, -0.0028, -0.0020)

TOP_ALTITUDE = 86000.0     # m geometric, top of the layered model
MAX_ALTITUDE = 140000.0    # m geometric, model ceiling


def _base_pressures():
    pressures = [101325.0]
    for i in range(1, 7):
        t0, lapse = LAYER_TEMP[i - 1], LAYER_LAPSE[i - 1]
        dh = LAYER_BASE[i] - LAYER_BASE[i - 1]
        if lapse == 0.0:
            pressures.append(pressures[-1] * math.exp(-G0 * dh / (R_AIR * t0)))
        else:
            pressures.append(pressures[-1] * (t0 / (t0 + lapse * dh)) ** (G0 / (R_AIR * lapse)))
    return tuple(pressures)


LAYER_PRESSURE = _base_pressures()


def layered(hg):
    """Temperature, pressure, density at geopotential altitude hg (m)."""
    i = 6
    for k in range(6):
        if hg < LAYER_BASE[k + 1]:
            i = k
            break
    t = LAYER_TEMP[i] + LAYER_LAPSE[i] * (hg - LAYER_BASE[i])
    if LAYER_LAPSE[i] == 0.0:
        p = LAYER_PRESSURE[i] * math.exp(-G0 * (hg - LAYER_BASE[i]) / (R_AIR * LAYER_TEMP[i]))
    else:
        p = LAYER_PRESSURE[i] * (LAYER_TEMP[i] / t) ** (G0 / (R_AIR * LAYER_LAPSE[i]))
    return t, p, p / (R_AIR * t)


# published standard densities (geometric altitude m, kg/m^3) anchoring the tail fit
TAIL_ANCHORS = (
    (86000.0, 6.958e-6),
    (90000.0, 3.416e-6),
    (95000.0, 1.393e-6),
    (100000.0, 5.604e-7),
    (110000.0, 9.708e-8),
    (120000.0, 2.222e-8),
)


def _fit_scale_height():
    n = len(TAIL_ANCHORS)
    sx = sum(h for h, _ in TAIL_ANCHORS)
    sy = sum(math.log(d) for _, d in TAIL_ANCHORS)
    sxx = sum(h * h for h, _ in TAIL_ANCHORS)
    sxy = sum(h * math.log(d) for h, d in TAIL_ANCHORS)
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    return -1.0 / slope


SCALE_HEIGHT = _fit_scale_height()  # 5862.2 m

TEMP_86KM, PRESSURE_86KM, DENSITY_86KM = layered(
    EARTH_RADIUS * TOP_ALTITUDE / (EARTH_RADIUS + TOP_ALTITUDE)
)
