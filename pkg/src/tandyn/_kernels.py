"""Compiled scalar kernels shared by the public API and the tile renderers.

Everything here works on plain complex128 scalars and returns status codes
instead of raising, so the same code runs inside ``nogil`` tile loops.
All formulas are written in real arithmetic so that z -> -z and
z -> conj(z) symmetries hold bit-for-bit.
"""
import math

import numpy as np
from numba import njit

PI = math.pi

POLE_TOL = 1e-9
Y_SWITCH = 20.0
IM_CLAMP = 1e8
CYCLE_TOL = 1e-8
MAX_PERIOD = 64
CLASS_TOL = 1e-6
CAPTURE_EPS = 1e-3
NEWTON_TOL = 1e-12
NEWTON_MAX = 50
PRIMITIVE_TOL = 1e-8
MATCH_TOL = 1e-6

# newton_cycle status
NEWTON_OK = 0
NEWTON_NOCONV = 1
NEWTON_POLE = 2

# orbit_kernel status
ORBIT_UNDETERMINED = 0
ORBIT_ATTRACTED = 1
ORBIT_PREPOLE = 2

# classify_kernel kind codes
KIND_NONE = 0
KIND_TWO_CYCLES = 1
KIND_SINGLE_DOUBLED = 2
KIND_UNIT_DISK = 3


@njit(cache=True, nogil=True)
def tan_c(z):
    x = z.real
    y = z.imag
    ay = abs(y)
    if ay > Y_SWITCH:
        # tan(x+iy) with numerator and denominator scaled by 2 e^{-2|y|}
        e = math.exp(-2.0 * ay)
        c2 = math.cos(2.0 * x)
        s2 = math.sin(2.0 * x)
        d = 1.0 + 2.0 * e * c2 + e * e
        im = (1.0 - e * e) / d
        if y < 0.0:
            im = -im
        return complex(2.0 * e * s2 / d, im)
    sx = math.sin(x)
    cx = math.cos(x)
    sh = math.sinh(y)
    ch = math.cosh(y)
    d = cx * cx + sh * sh
    return complex(sx * cx / d, sh * ch / d)


@njit(cache=True, nogil=True)
def sec2_c(z):
    x = z.real
    y = z.imag
    ay = abs(y)
    if ay > Y_SWITCH:
        # sec^2 z = 4q / (1+q)^2 with q = e^{2i(x + i|y|)} for y > 0; even in z
        if y < 0.0:
            x = -x
        e = math.exp(-2.0 * ay)
        qr = e * math.cos(2.0 * x)
        qi = e * math.sin(2.0 * x)
        ar = 1.0 + qr
        dr = ar * ar - qi * qi
        di = 2.0 * ar * qi
        nr = 4.0 * qr
        ni = 4.0 * qi
        den = dr * dr + di * di
        return complex((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
    sx = math.sin(x)
    cx = math.cos(x)
    sh = math.sinh(y)
    ch = math.cosh(y)
    m = cx * cx + sh * sh
    den = m * m
    return complex((cx * cx * ch * ch - sx * sx * sh * sh) / den,
                   (2.0 * cx * sx * ch * sh) / den)


@njit(cache=True, nogil=True)
def cmul(a, b):
    return complex(a.real * b.real - a.imag * b.imag,
                   a.real * b.imag + a.imag * b.real)


@njit(cache=True, nogil=True)
def f_step(lam, z):
    """lam * tan z, with the far-tract clamp to the asymptotic values."""
    if z.imag > IM_CLAMP:
        return complex(-lam.imag, lam.real)
    if z.imag < -IM_CLAMP:
        return complex(lam.imag, -lam.real)
    return cmul(lam, tan_c(z))


@njit(cache=True, nogil=True)
def fprime_step(lam, z):
    return cmul(lam, sec2_c(z))


@njit(cache=True, nogil=True)
def nearest_pole_c(z):
    x = z.real
    y = z.imag
    lo = math.floor(x / PI - 0.5)
    hi = lo + 1.0
    d_lo = math.hypot(x - (lo + 0.5) * PI, y)
    d_hi = math.hypot(x - (hi + 0.5) * PI, y)
    if d_hi < d_lo or (d_hi == d_lo and abs(hi) < abs(lo)):
        return np.int64(hi), d_hi
    return np.int64(lo), d_lo


@njit(cache=True, nogil=True)
def cycle_residual(lam, z, p):
    """Return (status, f^p(z) - z, prod f'(z_i))."""
    w = z
    dprod = complex(1.0, 0.0)
    for _ in range(p):
        n, d = nearest_pole_c(w)
        if d < POLE_TOL:
            return NEWTON_POLE, complex(0.0, 0.0), dprod
        dprod = cmul(dprod, fprime_step(lam, w))
        w = f_step(lam, w)
    return NEWTON_OK, w - z, dprod


@njit(cache=True, nogil=True)
def newton_cycle(lam, z, p, maxit):
    """Newton on f^p(z) - z.  Returns (status, z, residual_abs)."""
    for _ in range(maxit):
        st, F, dprod = cycle_residual(lam, z, p)
        if st != NEWTON_OK:
            return st, z, math.inf
        r = abs(F)
        if not math.isfinite(r):
            return NEWTON_NOCONV, z, math.inf
        if r <= NEWTON_TOL * max(1.0, abs(z)):
            return NEWTON_OK, z, r
        dF = dprod - 1.0
        if dF == 0:
            return NEWTON_NOCONV, z, r
        z = z - F / dF
    st, F, dprod = cycle_residual(lam, z, p)
    if st != NEWTON_OK:
        return st, z, math.inf
    r = abs(F)
    if r <= NEWTON_TOL * max(1.0, abs(z)):
        return NEWTON_OK, z, r
    return NEWTON_NOCONV, z, r


@njit(cache=True, nogil=True)
def primitive_period(lam, z, p):
    for d in range(1, p):
        if p % d != 0:
            continue
        w = z
        for _ in range(d):
            w = f_step(lam, w)
        if abs(w - z) < PRIMITIVE_TOL * max(1.0, abs(z)):
            return d
    return p


@njit(cache=True, nogil=True)
def fill_cycle(lam, z, p, pts):
    """Write the orbit of z into pts[:p] and return the multiplier."""
    m = complex(1.0, 0.0)
    w = z
    for i in range(p):
        pts[i] = w
        m = cmul(m, fprime_step(lam, w))
        w = f_step(lam, w)
    return m


@njit(cache=True, nogil=True)
def refine_kernel(lam, z, p, pts):
    """Newton refinement plus primitive-period reduction.

    Returns (status, period, multiplier); cycle points land in pts.
    """
    st, z, r = newton_cycle(lam, z, p, NEWTON_MAX)
    if st != NEWTON_OK:
        return st, p, complex(0.0, 0.0)
    q = primitive_period(lam, z, p)
    m = fill_cycle(lam, z, q, pts)
    return NEWTON_OK, q, m


@njit(cache=True, nogil=True)
def orbit_kernel(lam, z0, budget, max_period, pts, trace, want_trace):
    """Iterate z0 under lam*tan z looking for an attracting cycle.

    Returns (status, step, pole_index, period, multiplier, last_point, ntrace).
    Near-returns are found against an anchor refreshed every max_period
    steps, so detection costs O(1) per step.
    """
    z = z0
    ntrace = 0
    if want_trace:
        trace[0] = z
        ntrace = 1
    anchor = z
    astep = 0
    limit = budget
    extended = False
    min_gap = math.inf
    armed = True
    k = 0
    while True:
        n, d = nearest_pole_c(z)
        if d < POLE_TOL:
            return ORBIT_PREPOLE, k, n, 0, complex(0.0, 0.0), z, ntrace
        if k >= limit:
            # one budget doubling when the orbit is visibly settling
            if (not extended) and min_gap < 1e-4:
                extended = True
                limit = 2 * budget
                if want_trace and trace.shape[0] < limit + 1:
                    want_trace = False
            else:
                break
        z = f_step(lam, z)
        k += 1
        if want_trace:
            trace[ntrace] = z
            ntrace += 1
        lag = k - astep
        gap = abs(z - anchor)
        if gap < min_gap:
            min_gap = gap
        if armed and gap < CYCLE_TOL * max(1.0, abs(z)):
            st, q, m = refine_kernel(lam, z, lag, pts)
            if st == NEWTON_OK and abs(m) < 1.0 - CLASS_TOL:
                return ORBIT_ATTRACTED, k, 0, q, m, z, ntrace
            armed = False
        if lag >= max_period:
            anchor = z
            astep = k
            armed = True
            min_gap = math.inf
    return ORBIT_UNDETERMINED, k, 0, 0, complex(0.0, 0.0), z, ntrace


@njit(cache=True, nogil=True)
def is_symmetric_set(pts, q):
    """True when the point set pts[:q] is invariant under z -> -z."""
    for i in range(q):
        target = -pts[i]
        found = False
        for j in range(q):
            if abs(pts[j] - target) < MATCH_TOL * max(1.0, abs(target)):
                found = True
                break
        if not found:
            return False
    return True


@njit(cache=True, nogil=True)
def classify_kernel(lam, budget, max_period, pts):
    """Classify one parameter from the orbit of the asymptotic value lam*i.

    The orbit of -lam*i is the exact negative of that of lam*i, so the
    second limit cycle is -C and the kind follows from comparing C with -C.
    Returns (kind, period, multiplier, cycle_length, outcome_status).
    """
    dummy = np.empty(1, dtype=np.complex128)
    z0 = complex(-lam.imag, lam.real)
    st, k, pole, q, m, zl, nt = orbit_kernel(lam, z0, budget, max_period,
                                            pts, dummy, False)
    if st != ORBIT_ATTRACTED:
        return KIND_NONE, 0, complex(0.0, 0.0), 0, st
    if q == 1 and abs(pts[0]) < 1e-12 and abs(lam) < 1.0:
        pts[0] = 0.0
        return KIND_UNIT_DISK, 1, lam, 1, st
    if q % 2 == 0 and is_symmetric_set(pts, q):
        return KIND_SINGLE_DOUBLED, q // 2, m, q, st
    return KIND_TWO_CYCLES, q, m, q, st


@njit(cache=True, nogil=True)
def classify_tile(lams, budget, max_period, kinds, periods, mults):
    pts = np.empty(max_period + 1, dtype=np.complex128)
    rows, cols = lams.shape
    for r in range(rows):
        for c in range(cols):
            lam = lams[r, c]
            if lam == 0:
                kinds[r, c] = -1
                periods[r, c] = 0
                mults[r, c] = 0
                continue
            kind, p, m, q, st = classify_kernel(lam, budget, max_period, pts)
            kinds[r, c] = kind
            periods[r, c] = p
            mults[r, c] = m


@njit(cache=True, nogil=True)
def capture_steps(lam, z0, pts, q, kmax, eps):
    """First step at which the orbit of z0 comes within eps of the cycle pts[:q]."""
    z = z0
    for k in range(kmax + 1):
        for i in range(q):
            if abs(z - pts[i]) < eps:
                return k
        z = f_step(lam, z)
    return kmax


@njit(cache=True, nogil=True)
def orbit_tile(lam, zs, budget, max_period, status, periods, steps):
    """Per-pixel outcome; steps holds the capture time for attracted pixels
    and the step count otherwise."""
    pts = np.empty(max_period + 1, dtype=np.complex128)
    dummy = np.empty(1, dtype=np.complex128)
    rows, cols = zs.shape
    for r in range(rows):
        for c in range(cols):
            st, k, pole, q, m, zl, nt = orbit_kernel(lam, zs[r, c], budget,
                                                    max_period, pts, dummy,
                                                    False)
            status[r, c] = st
            periods[r, c] = q
            if st == ORBIT_ATTRACTED:
                k = capture_steps(lam, zs[r, c], pts, q, k, CAPTURE_EPS)
            steps[r, c] = k
