"""Pure-Python reference implementation of the numerical kernels.

The compiled twin (_fast.pyx) mirrors this module operation for operation.
Any change here must be applied there with the same arithmetic ordering,
otherwise the two backends stop producing bit-identical results and the
parity tests fail.
"""
import math

import numpy as np

from dlsrr._kernels import common

BACKEND_NAME = "ref"

G0 = common.G0
R_AIR = common.R_AIR
R_SOUND = common.R_SOUND
GAMMA = common.GAMMA
SIGMA_B = common.SIGMA_B
TOP_ALTITUDE = common.TOP_ALTITUDE
MAX_ALTITUDE = common.MAX_ALTITUDE
EARTH_RADIUS = common.EARTH_RADIUS
TEMP_86KM = common.TEMP_86KM
DENSITY_86KM = common.DENSITY_86KM
SCALE_HEIGHT = common.SCALE_HEIGHT

_BURN_EPS = 1e-12


def atmo_sample(h):
    """Return (temperature, pressure, density, speed of sound) at altitude h (m)."""
    if h < 0.0:
        raise ValueError(f"altitude {h} m is below the model floor 0 m")
    if h > MAX_ALTITUDE:
        raise ValueError(f"altitude {h} m is above the model ceiling 140000 m")
    if h <= TOP_ALTITUDE:
        hg = EARTH_RADIUS * h / (EARTH_RADIUS + h)
        t, p, rho = common.layered(hg)
    else:
        t = TEMP_86KM
        rho = DENSITY_86KM * math.exp(-(h - TOP_ALTITUDE) / SCALE_HEIGHT)
        p = rho * R_AIR * t
    return t, p, rho, math.sqrt(GAMMA * R_SOUND * t)


def cd_lookup(machs, cds, mach):
    """Piecewise-linear drag coefficient, clamped outside the knot range."""
    n = len(machs)
    if mach <= machs[0]:
        return cds[0]
    if mach >= machs[n - 1]:
        return cds[n - 1]
    lo = 0
    hi = n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if machs[mid] <= mach:
            lo = mid
        else:
            hi = mid
    f = (mach - machs[lo]) / (machs[hi] - machs[lo])
    return cds[lo] + f * (cds[hi] - cds[lo])


def integrate_ascent(h0, v0, alpha_rad, m0, fp, tb, ve, area, machs, cds, dt, t_max):
    """March the powered ascent to apogee with forward-Euler steps.

    Returns (status, rows, velocity_gain_rocket, drag_loss) where status is
    0 for apogee reached, 1 for ground strike while still below apogee, and
    2 for running past t_max. rows is an (n, 11) float array with columns
    t, x, y, vx, vy, mass, mach, rho, T_a, F_d, F_t; on status 0 the last
    row is the interpolated apogee point with vy exactly zero.
    """
    machs = [float(u) for u in machs]
    cds = [float(u) for u in cds]
    x = 0.0
    y = h0
    vx = v0 * math.cos(alpha_rad)
    vy = v0 * math.sin(alpha_rad)
    m = m0
    mflow = m0 * fp / tb
    ft_burn = mflow * ve
    vr = 0.0
    vd = 0.0
    rows = []
    k = 0
    while True:
        t = k * dt
        if t > t_max:
            return 2, np.asarray(rows, dtype=np.float64), vr, vd
        burning = t < tb - _BURN_EPS
        # propellant spent during the upcoming step leaves before forces act
        if burning:
            m -= mflow * dt
        ta, p, rho, vs = atmo_sample(y)
        v = math.sqrt(vx * vx + vy * vy)
        mach = v / vs
        cd = cd_lookup(machs, cds, mach)
        fd = 0.5 * cd * rho * v * v * area
        ft = ft_burn if burning else 0.0
        rows.append((t, x, y, vx, vy, m, mach, rho, ta, fd, ft))
        if v > 0.0:
            acc = (ft - fd) / m
            ax = acc * vx / v
            ay = acc * vy / v - G0
        else:
            ax = 0.0
            ay = -G0
        nx = x + vx * dt
        ny = y + vy * dt
        nvx = vx + ax * dt
        nvy = vy + ay * dt
        if nvy <= 0.0:
            f = vy / (vy - nvy)
            vd += f * (fd / m) * dt
            vr += f * (ft / m) * dt
            t_a = t + f * dt
            x_a = x + f * (nx - x)
            y_a = y + f * (ny - y)
            vx_a = vx + f * (nvx - vx)
            h_a = y_a if y_a < MAX_ALTITUDE else MAX_ALTITUDE
            ta_a, p_a, rho_a, vs_a = atmo_sample(h_a)
            v_a = abs(vx_a)
            mach_a = v_a / vs_a
            cd_a = cd_lookup(machs, cds, mach_a)
            fd_a = 0.5 * cd_a * rho_a * v_a * v_a * area
            rows.append((t_a, x_a, y_a, vx_a, 0.0, m, mach_a, rho_a, ta_a, fd_a, ft))
            return 0, np.asarray(rows, dtype=np.float64), vr, vd
        if ny <= 0.0:
            return 1, np.asarray(rows, dtype=np.float64), vr, vd
        vd += (fd / m) * dt
        vr += (ft / m) * dt
        x = nx
        y = ny
        vx = nvx
        vy = nvy
        k += 1


def integrate_descent(x0, y0, vx0, vy0, mass, area, machs, cds, dt, t_max):
    """March an unpowered fall to the ground with forward-Euler steps.

    Returns (status, rows): status 0 for ground reached (last row is the
    interpolated impact point with y exactly zero), 2 for running past
    t_max. Row layout matches integrate_ascent; F_t is zero throughout.
    """
    machs = [float(u) for u in machs]
    cds = [float(u) for u in cds]
    x = x0
    y = y0
    vx = vx0
    vy = vy0
    rows = []
    k = 0
    while True:
        t = k * dt
        if t > t_max:
            return 2, np.asarray(rows, dtype=np.float64)
        ta, p, rho, vs = atmo_sample(y if y > 0.0 else 0.0)
        v = math.sqrt(vx * vx + vy * vy)
        mach = v / vs
        cd = cd_lookup(machs, cds, mach)
        fd = 0.5 * cd * rho * v * v * area
        rows.append((t, x, y, vx, vy, mass, mach, rho, ta, fd, 0.0))
        if v > 0.0:
            acc = -fd / mass
            ax = acc * vx / v
            ay = acc * vy / v - G0
        else:
            ax = 0.0
            ay = -G0
        nx = x + vx * dt
        ny = y + vy * dt
        nvx = vx + ax * dt
        nvy = vy + ay * dt
        if ny <= 0.0:
            f = y / (y - ny)
            t_i = t + f * dt
            x_i = x + f * (nx - x)
            vx_i = vx + f * (nvx - vx)
            vy_i = vy + f * (nvy - vy)
            ta_i, p_i, rho_i, vs_i = atmo_sample(0.0)
            v_i = math.sqrt(vx_i * vx_i + vy_i * vy_i)
            mach_i = v_i / vs_i
            cd_i = cd_lookup(machs, cds, mach_i)
            fd_i = 0.5 * cd_i * rho_i * v_i * v_i * area
            rows.append((t_i, x_i, 0.0, vx_i, vy_i, mass, mach_i, rho_i, ta_i, fd_i, 0.0))
            return 0, np.asarray(rows, dtype=np.float64)
        x = nx
        y = ny
        vx = nvx
        vy = nvy
        k += 1


def stagnation_flux(rho, ta, v, tw, qk, qk_vexp, r, ew, cp):
    """Net stagnation-point heat flux (W/m^2) at wall temperature tw."""
    conv = 0.0
    if v > 0.0:
        qk_eff = qk * (v / 1000.0) ** qk_vexp
        ha = cp * ta
        haw = ha + v * v / 2.0
        hw = cp * tw
        conv = qk_eff * math.sqrt(rho / r) * (v * v * v) * (haw - hw) / (haw - ha)
    return conv - ew * SIGMA_B * ((tw * tw) * (tw * tw))


def turbulent_flux(rho, ta, v, tw, coeff, x, theta, rf, ew, cp):
    """Net turbulent heat flux (W/m^2) at distance x from the leading point.

    theta is the local surface inclination (rad) entering the pressure
    factor; ew is the emissivity of the radiating wall (0 disables the
    radiation term exactly).
    """
    ha = cp * ta
    haw = ha + rf * v * v / 2.0
    hw = cp * tw
    hstar = 0.22 * haw + 0.50 * hw + 0.28 * ha
    tratio = hstar / ha
    re = 70.0e6 * rho * (v / 1000.0) * x
    if re <= 0.0:
        raise ValueError("turbulent correlation needs a positive Reynolds number")
    b = math.log(re) - 1.7 * math.log(tratio)
    if b <= 0.0:
        raise ValueError("skin-friction correlation bracket is not positive")
    c = b ** -2.45 / tratio
    q = coeff * c * rho * (v * v * v) * (haw - hw) / (haw - ha)
    q = q * (1.0 + 6e-6 * (math.sin(theta) * math.sin(theta)) * v * v)
    return q - ew * SIGMA_B * ((tw * tw) * (tw * tw))


def _bisect_wall(flux, ta):
    lo = ta
    flo = flux(lo)
    if flo <= 0.0:
        return lo
    hi = 4000.0
    fhi = flux(hi)
    if fhi > 0.0:
        raise ValueError("no radiative-equilibrium wall temperature below 4000 K")
    mid = 0.5 * (lo + hi)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f = flux(mid)
        if abs(f) < 1.0 or hi - lo < 1e-6:
            return mid
        if f > 0.0:
            lo = mid
        else:
            hi = mid
    return mid


def equilibrium_stagnation(rho, ta, v, qk, qk_vexp, r, ew, cp):
    """Wall temperature (K) balancing stagnation heating against radiation."""
    return _bisect_wall(
        lambda tw: stagnation_flux(rho, ta, v, tw, qk, qk_vexp, r, ew, cp), ta
    )


def equilibrium_turbulent(rho, ta, v, coeff, x, theta, rf, ew, cp):
    """Wall temperature (K) balancing turbulent heating against radiation."""
    return _bisect_wall(
        lambda tw: turbulent_flux(rho, ta, v, tw, coeff, x, theta, rf, ew, cp), ta
    )


def heat_sink_history(rho, ta, v, dt, coeff, x, rf, ew, cp, areal, cp_wall, t0):
    """Wall-temperature march of a thin heat-sink skin along a trajectory.

    rho, ta, v are per-sample arrays spaced dt apart. The flux at each
    sample heats the skin through the following interval (left Riemann
    sum); the final sample gets a flux value but no integration step.
    Returns (wall_temperature_array, flux_array, cumulative_heat_load).
    """
    rho = [float(u) for u in rho]
    ta = [float(u) for u in ta]
    v = [float(u) for u in v]
    n = len(rho)
    tw_arr = np.empty(n, dtype=np.float64)
    q_arr = np.empty(n, dtype=np.float64)
    tw = t0
    cum = 0.0
    for i in range(n):
        q = turbulent_flux(rho[i], ta[i], v[i], tw, coeff, x, 0.0, rf, ew, cp)
        tw_arr[i] = tw
        q_arr[i] = q
        if i < n - 1:
            tw = tw + q * dt / (areal * cp_wall)
            cum += q * dt
    return tw_arr, q_arr, cum
