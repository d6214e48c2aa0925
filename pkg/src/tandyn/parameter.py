"""Parameter plane: component classification, the eigenvalue map, internal
rays, virtual centers and the boundary of the fixed-point component."""
import cmath
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .core import (DEFAULT_BUDGET, MAX_PERIOD, as_parameter,
                   orbit_derivative_wrt_lambda, pole)
from .errors import (AsymptoticValueCollision, AsymptoticValueInput,
                     ContinuationFailure, NoConvergence, NotHyperbolic,
                     PoleProximity)
from .inverse import compose_inverse, strip_index

log = logging.getLogger(__name__)

FD_STEP = 1e-7
RAY_RATIO = 0.9
CENTER_TOL = 1e-10


class ComponentKind(enum.Enum):
    TWO_CYCLES = "TwoCycles"
    SINGLE_DOUBLED = "SingleDoubled"
    UNIT_DISK = "UnitDisk"


_KIND_FROM_CODE = {
    K.KIND_TWO_CYCLES: ComponentKind.TWO_CYCLES,
    K.KIND_SINGLE_DOUBLED: ComponentKind.SINGLE_DOUBLED,
    K.KIND_UNIT_DISK: ComponentKind.UNIT_DISK,
}


@dataclass(frozen=True)
class ComponentSample:
    lam: complex
    period: int
    kind: ComponentKind
    multiplier: complex
    cycle: tuple  # limit cycle of the orbit of lambda*i


@dataclass(frozen=True)
class ParameterUndetermined:
    lam: complex
    reason: str  # "budget" or "prepole"


@dataclass(frozen=True)
class VirtualCenter:
    lambda_star: complex
    order: int
    itinerary: tuple
    pole_index: int
    residual: float


@dataclass(frozen=True)
class RayPoint:
    r: float
    alpha: float
    lam: complex
    multiplier: complex


def classify_parameter(lam, budget=DEFAULT_BUDGET, max_period=MAX_PERIOD):
    """Classify lambda by where the asymptotic orbits of +-lambda*i settle.

    f is odd, so the orbit of -lambda*i is the negative of the orbit of
    lambda*i and only one orbit is iterated.  The two limit cycles C and -C
    coincide as sets exactly when the component has a single symmetric
    cycle.
    """
    lam = as_parameter(lam)
    pts = np.empty(max_period + 1, dtype=np.complex128)
    kind, p, m, q, st = K.classify_kernel(lam, int(budget), int(max_period), pts)
    if kind == K.KIND_NONE:
        reason = "prepole" if st == K.ORBIT_PREPOLE else "budget"
        return ParameterUndetermined(lam, reason)
    return ComponentSample(lam, int(p), _KIND_FROM_CODE[int(kind)], complex(m),
                           tuple(complex(z) for z in pts[:q]))


def eigenvalue(lam, budget=DEFAULT_BUDGET):
    """Multiplier of the attracting cycle (the full 2p-cycle for SingleDoubled)."""
    s = classify_parameter(lam, budget)
    if not isinstance(s, ComponentSample):
        raise NotHyperbolic(f"no attracting cycle found for lambda={s.lam!r} ({s.reason})")
    return s.multiplier


def classify_on_circle(center, radius, n=64, budget=DEFAULT_BUDGET):
    """Classify n equally spaced parameters on a circle."""
    out = []
    for j in range(n):
        lam = complex(center) + radius * cmath.exp(2j * math.pi * j / n)
        out.append(classify_parameter(lam, budget))
    return out


class _CycleTracker:
    """Follows one attracting cycle of fixed length as lambda moves."""

    def __init__(self, lam, z, q):
        self.lam = lam
        self.z = z
        self.q = q

    def evaluate(self, lam, z_from=None):
        z_from = self.z if z_from is None else z_from
        st, z, r = K.newton_cycle(lam, z_from, self.q, K.NEWTON_MAX)
        if st != K.NEWTON_OK:
            return None
        if abs(z - z_from) > 0.5 * max(1.0, abs(z_from)):
            return None
        _, _, dprod = K.cycle_residual(lam, z, self.q)
        return z, dprod

    def solve(self, lam_guess, target, tol=1e-13, maxit=40):
        """Newton on m(lambda) = target; dm/dlambda by central differences."""
        lam = lam_guess
        z = self.z
        for _ in range(maxit):
            got = self.evaluate(lam, z)
            if got is None:
                return None
            z, m = got
            err = m - target
            if abs(err) <= tol * abs(target):
                return lam, z, m
            plus = self.evaluate(lam + FD_STEP, z)
            minus = self.evaluate(lam - FD_STEP, z)
            if plus is None or minus is None:
                return None
            dm = (plus[1] - minus[1]) / (2 * FD_STEP)
            if dm == 0:
                return None
            step = err / dm
            # keep Newton from leaping across the component
            cap = 0.25 * abs(target) / max(abs(dm), 1e-300)
            if abs(step) > cap:
                step *= cap / abs(step)
            lam = lam - step
        got = self.evaluate(lam, z)
        if got is not None and abs(got[1] - target) <= 1e-10 * abs(target):
            return lam, got[0], got[1]
        return None


def _start_tracker(lam0, budget):
    s = classify_parameter(lam0, budget)
    if not isinstance(s, ComponentSample):
        raise NotHyperbolic(f"seed {lam0!r} is not hyperbolic ({s.reason})")
    return _CycleTracker(s.lam, s.cycle[0], len(s.cycle)), s.multiplier


def _walk(tracker, lam, targets_fn, t0, t1, n_min, last_good, max_halvings=30):
    """Continue along targets_fn(t) for t from t0 to t1, yielding accepted
    (t, lam, z, m).  Step halving on corrector failure."""
    t = t0
    dt0 = dt = (t1 - t0) / n_min
    prev = None  # (t, lam) for the secant predictor
    halvings = 0
    while (t1 - t) * (t1 - t0) > 0:
        t_next = t + dt
        if (t1 - t_next) * (t1 - t0) < 0:
            t_next = t1
        guess = lam
        if prev is not None and t != prev[0]:
            guess = lam + (lam - prev[1]) * (t_next - t) / (t - prev[0])
        res = tracker.solve(guess, targets_fn(t_next))
        if res is None and guess != lam:
            res = tracker.solve(lam, targets_fn(t_next))
        if res is None:
            halvings += 1
            if halvings > max_halvings:
                raise ContinuationFailure(
                    f"corrector failed near lambda={lam!r}", last_good())
            dt *= 0.5
            continue
        prev = (t, lam)
        lam, tracker.z, m = res
        tracker.lam = lam
        t = t_next
        halvings = max(0, halvings - 1)
        if abs(dt) < abs(dt0):
            dt *= 2.0
        yield t, lam, m


def trace_internal_ray(seed, alpha, r_end, ratio=RAY_RATIO, budget=DEFAULT_BUDGET):
    """Points of the internal ray R(alpha) from the component of ``seed``.

    The seed's multiplier is first rotated to angle alpha at fixed modulus;
    then r follows a geometric schedule (ratio 0.9, or its inverse when
    r_end exceeds the seed modulus) with step halving on failure.  The
    returned points satisfy eigenvalue(lambda) = r e^{2 pi i alpha}.
    """
    return _trace_ray(seed, alpha, r_end, ratio, budget)[0]


def _trace_ray(seed, alpha, r_end, ratio, budget):
    seed = as_parameter(seed)
    if not 0 < r_end < 1:
        raise ValueError("r_end must lie in (0, 1)")
    tracker, m0 = _start_tracker(seed, budget)
    r0 = abs(m0)
    out = []

    def last_good():
        return out[-1] if out else None

    lam = seed
    # rotate the multiplier angle to alpha along |m| = r0
    a0 = cmath.phase(m0) / (2 * math.pi)
    da = ((alpha - a0) + 0.5) % 1.0 - 0.5
    if abs(da) > 1e-15:
        n = max(1, int(math.ceil(abs(da) / 0.02)))
        for _, lam, m in _walk(tracker, lam,
                               lambda t: r0 * cmath.exp(2j * math.pi * (a0 + t)),
                               0.0, da, n, last_good):
            pass
    direction = cmath.exp(2j * math.pi * alpha)
    res = tracker.solve(lam, r0 * direction)
    if res is None:
        raise ContinuationFailure("could not align the seed with the ray", None)
    lam, tracker.z, m = res
    out.append(RayPoint(r0, alpha, lam, m))

    # march in s = log r with steps of log(ratio)
    s0, s1 = math.log(r0), math.log(r_end)
    if s0 == s1:
        return out, tracker
    n = max(1, int(math.ceil(abs(s1 - s0) / abs(math.log(ratio)))))
    for s, lam, m in _walk(tracker, lam, lambda s: math.exp(s) * direction,
                           s0, s1, n, last_good):
        r = r_end if s == s1 else math.exp(s)
        out.append(RayPoint(r, alpha, lam, m))
    return out, tracker


def bud_point(seed, q, j, delta=1e-3, budget=DEFAULT_BUDGET):
    """The boundary parameter where the multiplier reaches e^{2 pi i j/q}."""
    if q < 1 or math.gcd(int(j), int(q)) != 1:
        raise ValueError("need q >= 1 and j coprime to q")
    alpha = (j % q) / q
    ray, tracker = _trace_ray(seed, alpha, 1.0 - delta, RAY_RATIO, budget)
    lam = ray[-1].lam
    target = cmath.exp(2j * math.pi * alpha)
    res = tracker.solve(lam, target, tol=1e-12)
    if res is None or abs(res[2] - target) >= 1e-6:
        raise ContinuationFailure("no convergence to the root of unity", ray[-1])
    return res[0]


def _neg_i(lam):
    """-lambda * i."""
    return complex(lam.imag, -lam.real)


def center_residual(lam, itinerary):
    """|f^{p-2}(-lambda i) - s_{n_1}| for an itinerary of length p-1."""
    z = _neg_i(lam)
    for _ in range(len(itinerary) - 1):
        z = K.f_step(lam, z)
    return abs(z - pole(itinerary[0]))


def _center_orbit_matches(lam, itinerary):
    # -lambda*i sits in L_{n_{p-1}}, its image in L_{n_{p-2}}, ... then s_{n_1}
    z = _neg_i(lam)
    rev = list(reversed(itinerary[1:]))
    for n in rev:
        if strip_index(z) != n:
            return False
        z = K.f_step(lam, z)
    n, d = K.nearest_pole_c(z)
    return int(n) == itinerary[0]


def find_virtual_center(p, itinerary, seed=None, damping=1.0, maxit=500):
    """Solve for lambda* with -lambda* i the prepole of the given itinerary.

    Then f^{p-1} sends -lambda* i to infinity, and by oddness lambda* i is
    the prepole of the mirrored itinerary.  The iteration
    lambda <- i * prepole(itinerary, lambda) runs first; Newton on
    g(lambda) = -f^{p-2}(lambda i) - s_{n_1} is the fallback.
    """
    itinerary = tuple(int(n) for n in itinerary)
    if p < 2 or len(itinerary) != p - 1:
        raise ValueError("need p >= 2 and an itinerary of length p-1")
    n1 = itinerary[0]
    if p == 2:
        lam = complex(0.0, pole(n1))
        return VirtualCenter(lam, 1, itinerary, n1, center_residual(lam, itinerary))
    if seed is None:
        seed = find_virtual_center(p - 1, itinerary[1:]).lambda_star
    seed = as_parameter(seed)

    def fixed_map(lam):
        try:
            w = compose_inverse(itinerary[1:], lam, pole(n1))
        except AsymptoticValueInput as exc:
            raise AsymptoticValueCollision(
                f"inverse chain meets an asymptotic value at depth {exc.depth}") from None
        return complex(-w.imag, w.real)  # i * w

    def accept(lam):
        return (lam != 0 and cmath.isfinite(lam)
                and center_residual(lam, itinerary) < CENTER_TOL
                and _center_orbit_matches(lam, itinerary))

    def from_seed(lam):
        try:
            for _ in range(maxit):
                new = lam + damping * (fixed_map(lam) - lam)
                if new == 0:
                    break
                step = abs(new - lam)
                lam = new
                if step < 1e-14 * max(1.0, abs(lam)):
                    break
        except AsymptoticValueCollision:
            pass
        if accept(lam):
            return lam
        try:
            lam = _center_newton(p, itinerary, lam)
        except NoConvergence:
            return None
        return lam if accept(lam) else None

    # A seed on the imaginary axis sends real poles to strip edges, so
    # nearby seeds are tried when the given one fails.
    collided = False
    for d in (0, 0.1, -0.1, 0.01, -0.01, 0.1j, -0.1j):
        try:
            lam = from_seed(seed + d)
        except AsymptoticValueCollision:
            collided = True
            continue
        if lam is not None:
            return VirtualCenter(lam, p - 1, itinerary, n1,
                                 center_residual(lam, itinerary))
    if collided:
        raise AsymptoticValueCollision("inverse chain meets an asymptotic value")
    raise NoConvergence(f"no center with itinerary {itinerary} near {seed!r}")


def _center_newton(p, itinerary, lam, maxit=60):
    target = pole(itinerary[0])
    for _ in range(maxit):
        try:
            zs = [complex(-lam.imag, lam.real)]
            for _ in range(p - 2):
                zs.append(K.f_step(lam, zs[-1]))
            dz = orbit_derivative_wrt_lambda(lam, p - 2)[-1]
        except PoleProximity:
            raise NoConvergence("orbit of -lambda*i met a pole") from None
        g = -zs[-1] - target
        if abs(g) < CENTER_TOL * 1e-2:
            return lam
        dg = -dz
        if dg == 0 or not cmath.isfinite(dg):
            break
        lam = lam - g / dg
        if lam == 0 or not cmath.isfinite(lam):
            break
    if lam != 0 and cmath.isfinite(lam) and center_residual(lam, itinerary) < CENTER_TOL:
        return lam
    raise NoConvergence("virtual-center Newton did not converge")


def mirrored_center_itinerary(itinerary):
    """Itinerary of -lambda* when lambda* is the center for ``itinerary``.

    Since f_{-lambda}^j(-v) = (-1)^{j+1} f_lambda^j(v), strips alternate
    between L_n and L_{-n} along the orbit and the final pole flips to
    s_{-n_1-1} exactly when p is even.
    """
    itin = list(itinerary)
    p = len(itin) + 1
    for j in range(0, p - 2, 2):
        itin[p - 2 - j] = -itin[p - 2 - j]
    if p % 2 == 0:
        itin[0] = -itin[0] - 1
    return tuple(itin)


def centers_accumulation(parent, k_range):
    """Order-(p) centers with itinerary (k,) + parent.itinerary, seeded at the
    parent.  Returns a list of (k, VirtualCenter or NoConvergence)."""
    p = parent.order + 2
    out = []
    for k in k_range:
        itin = (int(k),) + tuple(parent.itinerary)
        try:
            out.append((k, find_virtual_center(p, itin, seed=parent.lambda_star)))
        except (NoConvergence, AsymptoticValueCollision) as exc:
            log.debug("no order-%d center for itinerary %s: %s", p - 1, itin, exc)
            out.append((k, exc))
    return out


def omega1_boundary_point(y, x_guess, maxit=50):
    """A parameter on the boundary of the fixed-point component.

    Solves |u / sin u| = 1 for u = x + iy in x by Newton and returns
    lambda = (u/2) cot(u/2); the fixed point z = u/2 then has multiplier
    u / sin u of modulus one.
    """
    u = omega1_boundary_u(y, x_guess, maxit)
    w = u / 2
    return w * cmath.cos(w) / cmath.sin(w)


def omega1_boundary_u(y, x_guess, maxit=50):
    """The u = x + iy with |u / sin u| = 1, found by Newton in x."""
    y = float(y)
    if y == 0:
        raise ValueError("y must be nonzero")
    x = float(x_guess)
    for _ in range(maxit):
        u = complex(x, y)
        s = cmath.sin(u)
        h = math.log(abs(u)) - math.log(abs(s))
        if abs(h) < 1e-14:
            break
        dh = x / abs(u) ** 2 - (cmath.cos(u) / s).real
        if dh == 0:
            raise NoConvergence("flat residual in boundary solve")
        x -= h / dh
    else:
        raise NoConvergence("boundary solve did not converge")
    return complex(x, y)
