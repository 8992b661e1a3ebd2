# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of the pure-Python kernel module (_ref).

Every function mirrors its _ref counterpart operation for operation, with
the same arithmetic ordering and the same libm entry points, and the
extension is built with -ffp-contract=off, so both backends produce
bit-identical doubles. Keep the two files in lockstep.
"""
from libc.math cimport cos, exp, fabs, log, pow, sin, sqrt

import numpy as np

from dlsrr._kernels import common

BACKEND_NAME = "fast"

cdef double G0 = common.G0
cdef double R_AIR = common.R_AIR
cdef double R_SOUND = common.R_SOUND
cdef double GAMMA = common.GAMMA
cdef double SIGMA_B = common.SIGMA_B
cdef double TOP_ALTITUDE = common.TOP_ALTITUDE
cdef double MAX_ALTITUDE = common.MAX_ALTITUDE
cdef double EARTH_RADIUS = common.EARTH_RADIUS
cdef double TEMP_86KM = common.TEMP_86KM
cdef double DENSITY_86KM = common.DENSITY_86KM
cdef double SCALE_HEIGHT = common.SCALE_HEIGHT
cdef double BURN_EPS = 1e-12

cdef double[7] LAYER_BASE
cdef double[7] LAYER_TEMP
cdef double[7] LAYER_LAPSE
cdef double[7] LAYER_PRESSURE


def _load_layers():
    for i in range(7):
        LAYER_BASE[i] = common.LAYER_BASE[i]
        LAYER_TEMP[i] = common.LAYER_TEMP[i]
        LAYER_LAPSE[i] = common.LAYER_LAPSE[i]
        LAYER_PRESSURE[i] = common.LAYER_PRESSURE[i]


_load_layers()


cdef struct Atmo:
    double t
    double p
    double rho
    double vs


cdef Atmo _atmo(double h) except *:
    cdef Atmo out
    cdef double hg, t, p, rho
    cdef int i, k
    if h < 0.0:
        raise ValueError(f"altitude {h} m is below the model floor 0 m")
    if h > MAX_ALTITUDE:
        raise ValueError(f"altitude {h} m is above the model ceiling 140000 m")
    if h <= TOP_ALTITUDE:
        hg = EARTH_RADIUS * h / (EARTH_RADIUS + h)
        i = 6
        for k in range(6):
            if hg < LAYER_BASE[k + 1]:
                i = k
                break
        t = LAYER_TEMP[i] + LAYER_LAPSE[i] * (hg - LAYER_BASE[i])
        if LAYER_LAPSE[i] == 0.0:
            p = LAYER_PRESSURE[i] * exp(-G0 * (hg - LAYER_BASE[i]) / (R_AIR * LAYER_TEMP[i]))
        else:
            p = LAYER_PRESSURE[i] * pow(LAYER_TEMP[i] / t, G0 / (R_AIR * LAYER_LAPSE[i]))
        rho = p / (R_AIR * t)
    else:
        t = TEMP_86KM
        rho = DENSITY_86KM * exp(-(h - TOP_ALTITUDE) / SCALE_HEIGHT)
        p = rho * R_AIR * t
    out.t = t
    out.p = p
    out.rho = rho
    out.vs = sqrt(GAMMA * R_SOUND * t)
    return out


def atmo_sample(double h):
    """Return (temperature, pressure, density, speed of sound) at altitude h (m)."""
    cdef Atmo a = _atmo(h)
    return a.t, a.p, a.rho, a.vs


cdef double _cd(double[::1] machs, double[::1] cds, double mach) noexcept nogil:
    cdef Py_ssize_t n = machs.shape[0]
    cdef Py_ssize_t lo, hi, mid
    cdef double f
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


def cd_lookup(machs, cds, double mach):
    """Piecewise-linear drag coefficient, clamped outside the knot range."""
    cdef double[::1] mg = np.ascontiguousarray(machs, dtype=np.float64)
    cdef double[::1] cg = np.ascontiguousarray(cds, dtype=np.float64)
    return _cd(mg, cg, mach)


def integrate_ascent(double h0, double v0, double alpha_rad, double m0, double fp,
                     double tb, double ve, double area, machs, cds,
                     double dt, double t_max):
    """March the powered ascent to apogee with forward-Euler steps.

    Same contract as the _ref twin: returns (status, rows, velocity gain
    from thrust, drag loss) with status 0 apogee / 1 ground / 2 timeout.
    """
    cdef double[::1] mg = np.ascontiguousarray(machs, dtype=np.float64)
    cdef double[::1] cg = np.ascontiguousarray(cds, dtype=np.float64)
    cdef Py_ssize_t cap = <Py_ssize_t>(t_max / dt) + 8
    out = np.empty((cap, 11), dtype=np.float64)
    cdef double[:, ::1] rows = out
    cdef Py_ssize_t n = 0
    cdef long k = 0
    cdef double x = 0.0
    cdef double y = h0
    cdef double vx = v0 * cos(alpha_rad)
    cdef double vy = v0 * sin(alpha_rad)
    cdef double m = m0
    cdef double mflow = m0 * fp / tb
    cdef double ft_burn = mflow * ve
    cdef double vr = 0.0
    cdef double vd = 0.0
    cdef double t, v, mach, cd, fd, ft, acc, ax, ay, nx, ny, nvx, nvy, f
    cdef double t_a, x_a, y_a, vx_a, h_a, v_a, mach_a, cd_a, fd_a
    cdef bint burning
    cdef Atmo a
    while True:
        t = k * dt
        if t > t_max:
            return 2, out[:n].copy(), vr, vd
        burning = t < tb - BURN_EPS
        # propellant spent during the upcoming step leaves before forces act
        if burning:
            m -= mflow * dt
        a = _atmo(y)
        v = sqrt(vx * vx + vy * vy)
        mach = v / a.vs
        cd = _cd(mg, cg, mach)
        fd = 0.5 * cd * a.rho * v * v * area
        ft = ft_burn if burning else 0.0
        rows[n, 0] = t
        rows[n, 1] = x
        rows[n, 2] = y
        rows[n, 3] = vx
        rows[n, 4] = vy
        rows[n, 5] = m
        rows[n, 6] = mach
        rows[n, 7] = a.rho
        rows[n, 8] = a.t
        rows[n, 9] = fd
        rows[n, 10] = ft
        n += 1
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
            a = _atmo(h_a)
            v_a = fabs(vx_a)
            mach_a = v_a / a.vs
            cd_a = _cd(mg, cg, mach_a)
            fd_a = 0.5 * cd_a * a.rho * v_a * v_a * area
            rows[n, 0] = t_a
            rows[n, 1] = x_a
            rows[n, 2] = y_a
            rows[n, 3] = vx_a
            rows[n, 4] = 0.0
            rows[n, 5] = m
            rows[n, 6] = mach_a
            rows[n, 7] = a.rho
            rows[n, 8] = a.t
            rows[n, 9] = fd_a
            rows[n, 10] = ft
            n += 1
            return 0, out[:n].copy(), vr, vd
        if ny <= 0.0:
            return 1, out[:n].copy(), vr, vd
        vd += (fd / m) * dt
        vr += (ft / m) * dt
        x = nx
        y = ny
        vx = nvx
        vy = nvy
        k += 1


def integrate_descent(double x0, double y0, double vx0, double vy0, double mass,
                      double area, machs, cds, double dt, double t_max):
    """March an unpowered fall to the ground with forward-Euler steps.

    Same contract as the _ref twin: returns (status, rows) with status 0
    ground reached / 2 timeout; the last row on status 0 is the
    interpolated impact point with y exactly zero.
    """
    cdef double[::1] mg = np.ascontiguousarray(machs, dtype=np.float64)
    cdef double[::1] cg = np.ascontiguousarray(cds, dtype=np.float64)
    cdef Py_ssize_t cap = <Py_ssize_t>(t_max / dt) + 8
    out = np.empty((cap, 11), dtype=np.float64)
    cdef double[:, ::1] rows = out
    cdef Py_ssize_t n = 0
    cdef long k = 0
    cdef double x = x0
    cdef double y = y0
    cdef double vx = vx0
    cdef double vy = vy0
    cdef double t, v, mach, cd, fd, acc, ax, ay, nx, ny, nvx, nvy, f
    cdef double t_i, x_i, vx_i, vy_i, v_i, mach_i, cd_i, fd_i
    cdef Atmo a
    while True:
        t = k * dt
        if t > t_max:
            return 2, out[:n].copy()
        a = _atmo(y if y > 0.0 else 0.0)
        v = sqrt(vx * vx + vy * vy)
        mach = v / a.vs
        cd = _cd(mg, cg, mach)
        fd = 0.5 * cd * a.rho * v * v * area
        rows[n, 0] = t
        rows[n, 1] = x
        rows[n, 2] = y
        rows[n, 3] = vx
        rows[n, 4] = vy
        rows[n, 5] = mass
        rows[n, 6] = mach
        rows[n, 7] = a.rho
        rows[n, 8] = a.t
        rows[n, 9] = fd
        rows[n, 10] = 0.0
        n += 1
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
            a = _atmo(0.0)
            v_i = sqrt(vx_i * vx_i + vy_i * vy_i)
            mach_i = v_i / a.vs
            cd_i = _cd(mg, cg, mach_i)
            fd_i = 0.5 * cd_i * a.rho * v_i * v_i * area
            rows[n, 0] = t_i
            rows[n, 1] = x_i
            rows[n, 2] = 0.0
            rows[n, 3] = vx_i
            rows[n, 4] = vy_i
            rows[n, 5] = mass
            rows[n, 6] = mach_i
            rows[n, 7] = a.rho
            rows[n, 8] = a.t
            rows[n, 9] = fd_i
            rows[n, 10] = 0.0
            n += 1
            return 0, out[:n].copy()
        x = nx
        y = ny
        vx = nvx
        vy = nvy
        k += 1


cdef double _stag_flux(double rho, double ta, double v, double tw, double qk,
                       double qk_vexp, double r, double ew, double cp) noexcept nogil:
    cdef double conv = 0.0
    cdef double qk_eff, ha, haw, hw
    if v > 0.0:
        qk_eff = qk * pow(v / 1000.0, qk_vexp)
        ha = cp * ta
        haw = ha + v * v / 2.0
        hw = cp * tw
        conv = qk_eff * sqrt(rho / r) * (v * v * v) * (haw - hw) / (haw - ha)
    return conv - ew * SIGMA_B * ((tw * tw) * (tw * tw))


def stagnation_flux(double rho, double ta, double v, double tw, double qk,
                    double qk_vexp, double r, double ew, double cp):
    """Net stagnation-point heat flux (W/m^2) at wall temperature tw."""
    return _stag_flux(rho, ta, v, tw, qk, qk_vexp, r, ew, cp)


cdef double _turb_flux(double rho, double ta, double v, double tw, double coeff,
                       double x, double theta, double rf, double ew,
                       double cp) except? -1e300:
    cdef double ha, haw, hw, hstar, tratio, re, b, c, q
    ha = cp * ta
    haw = ha + rf * v * v / 2.0
    hw = cp * tw
    hstar = 0.22 * haw + 0.50 * hw + 0.28 * ha
    tratio = hstar / ha
    re = 70.0e6 * rho * (v / 1000.0) * x
    if re <= 0.0:
        raise ValueError("turbulent correlation needs a positive Reynolds number")
    b = log(re) - 1.7 * log(tratio)
    if b <= 0.0:
        raise ValueError("skin-friction correlation bracket is not positive")
    c = pow(b, -2.45) / tratio
    q = coeff * c * rho * (v * v * v) * (haw - hw) / (haw - ha)
    q = q * (1.0 + 6e-6 * (sin(theta) * sin(theta)) * v * v)
    return q - ew * SIGMA_B * ((tw * tw) * (tw * tw))


def turbulent_flux(double rho, double ta, double v, double tw, double coeff,
                   double x, double theta, double rf, double ew, double cp):
    """Net turbulent heat flux (W/m^2) at distance x from the leading point."""
    return _turb_flux(rho, ta, v, tw, coeff, x, theta, rf, ew, cp)


def equilibrium_stagnation(double rho, double ta, double v, double qk,
                           double qk_vexp, double r, double ew, double cp):
    """Wall temperature (K) balancing stagnation heating against radiation."""
    cdef double lo = ta
    cdef double hi = 4000.0
    cdef double flo, fhi, mid, f
    cdef int i
    flo = _stag_flux(rho, ta, v, lo, qk, qk_vexp, r, ew, cp)
    if flo <= 0.0:
        return lo
    fhi = _stag_flux(rho, ta, v, hi, qk, qk_vexp, r, ew, cp)
    if fhi > 0.0:
        raise ValueError("no radiative-equilibrium wall temperature below 4000 K")
    mid = 0.5 * (lo + hi)
    for i in range(200):
        mid = 0.5 * (lo + hi)
        f = _stag_flux(rho, ta, v, mid, qk, qk_vexp, r, ew, cp)
        if fabs(f) < 1.0 or hi - lo < 1e-6:
            return mid
        if f > 0.0:
            lo = mid
        else:
            hi = mid
    return mid


def equilibrium_turbulent(double rho, double ta, double v, double coeff, double x,
                          double theta, double rf, double ew, double cp):
    """Wall temperature (K) balancing turbulent heating against radiation."""
    cdef double lo = ta
    cdef double hi = 4000.0
    cdef double flo, fhi, mid, f
    cdef int i
    flo = _turb_flux(rho, ta, v, lo, coeff, x, theta, rf, ew, cp)
    if flo <= 0.0:
        return lo
    fhi = _turb_flux(rho, ta, v, hi, coeff, x, theta, rf, ew, cp)
    if fhi > 0.0:
        raise ValueError("no radiative-equilibrium wall temperature below 4000 K")
    mid = 0.5 * (lo + hi)
    for i in range(200):
        mid = 0.5 * (lo + hi)
        f = _turb_flux(rho, ta, v, mid, coeff, x, theta, rf, ew, cp)
        if fabs(f) < 1.0 or hi - lo < 1e-6:
            return mid
        if f > 0.0:
            lo = mid
        else:
            hi = mid
    return mid


def heat_sink_history(rho, ta, v, double dt, double coeff, double x, double rf,
                      double ew, double cp, double areal, double cp_wall, double t0):
    """Wall-temperature march of a thin heat-sink skin along a trajectory.

    Same contract as the _ref twin: left Riemann integration between
    samples, flux evaluated (but not integrated) at the final sample.
    """
    cdef double[::1] rg = np.ascontiguousarray(rho, dtype=np.float64)
    cdef double[::1] tg = np.ascontiguousarray(ta, dtype=np.float64)
    cdef double[::1] vg = np.ascontiguousarray(v, dtype=np.float64)
    cdef Py_ssize_t n = rg.shape[0]
    tw_out = np.empty(n, dtype=np.float64)
    q_out = np.empty(n, dtype=np.float64)
    cdef double[::1] twv = tw_out
    cdef double[::1] qv = q_out
    cdef double tw = t0
    cdef double cum = 0.0
    cdef double q
    cdef Py_ssize_t i
    for i in range(n):
        q = _turb_flux(rg[i], tg[i], vg[i], tw, coeff, x, 0.0, rf, ew, cp)
        twv[i] = tw
        qv[i] = q
        if i < n - 1:
            tw = tw + q * dt / (areal * cp_wall)
            cum += q * dt
    return tw_out, q_out, cum
