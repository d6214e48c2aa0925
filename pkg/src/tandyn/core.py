"""Evaluation of f(z) = lambda * tan z and its forward orbits."""
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import InfinityInput, InvalidParameter, PoleProximity

POLE_TOL = K.POLE_TOL
Y_SWITCH = K.Y_SWITCH
CYCLE_TOL = K.CYCLE_TOL
MAX_PERIOD = K.MAX_PERIOD
IM_CLAMP = K.IM_CLAMP
DEFAULT_BUDGET = 2000


class _Infinity:
    """The point at infinity of the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def is_infinity(z):
    return z is INFINITY


def as_point(z):
    """Coerce to a finite complex point; raise InfinityInput for infinity."""
    if z is INFINITY:
        raise InfinityInput("finite point required")
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise InfinityInput(f"non-finite coordinates {z!r}")
    return z


def as_parameter(lam):
    lam = complex(lam)
    if lam == 0 or not (math.isfinite(lam.real) and math.isfinite(lam.imag)):
        raise InvalidParameter(f"lambda must be finite and nonzero, got {lam!r}")
    return lam


def pole(n):
    """The pole s_n = (n + 1/2) pi."""
    return (n + 0.5) * math.pi


def nearest_pole(z):
    """Return (n, |z - s_n|) for the closest pole; ties go to smaller |n|, then smaller n."""
    n, d = K.nearest_pole_c(as_point(z))
    return int(n), float(d)


def _check_pole(z):
    n, d = K.nearest_pole_c(z)
    if d < POLE_TOL:
        raise PoleProximity(z, int(n), float(d))


def tan(z):
    """Overflow-safe tan z for finite z (no pole check)."""
    return K.tan_c(complex(z))


def sec2(z):
    return K.sec2_c(complex(z))


def eval_f(lam, z):
    """lambda * tan z.

    For |Im z| > Y_SWITCH the tangent is evaluated in a form scaled by
    e^{-2|Im z|}, which tends smoothly to +-i.
    """
    lam = as_parameter(lam)
    z = as_point(z)
    _check_pole(z)
    return K.f_step(lam, z)


def eval_f_prime(lam, z):
    """lambda * sec^2 z."""
    lam = as_parameter(lam)
    z = as_point(z)
    _check_pole(z)
    return K.fprime_step(lam, z)


@dataclass(frozen=True)
class Attracted:
    period: int
    cycle_points: tuple
    multiplier: complex


@dataclass(frozen=True)
class PrepoleHit:
    step: int
    pole_index: int


@dataclass(frozen=True)
class Undetermined:
    last_point: complex


@dataclass(frozen=True)
class OrbitResult:
    outcome: object
    trace: np.ndarray = field(default=None, repr=False)


def iterate_orbit(lam, z0, max_iter=DEFAULT_BUDGET, max_period=MAX_PERIOD,
                  trace=False):
    """Forward orbit of z0 classified as Attracted, PrepoleHit or Undetermined.

    With ``trace=True`` an :class:`OrbitResult` carrying the visited points
    is returned instead of the bare outcome.
    """
    lam = as_parameter(lam)
    z0 = as_point(z0)
    pts = np.empty(max_period + 1, dtype=np.complex128)
    # room for the single budget doubling the kernel may take
    buf = np.empty(2 * max_iter + 1 if trace else 1, dtype=np.complex128)
    st, k, pole_index, q, m, zl, nt = K.orbit_kernel(
        lam, z0, int(max_iter), int(max_period), pts, buf, bool(trace))
    if st == K.ORBIT_ATTRACTED:
        out = Attracted(int(q), tuple(complex(p) for p in pts[:q]), complex(m))
    elif st == K.ORBIT_PREPOLE:
        out = PrepoleHit(int(k), int(pole_index))
    else:
        out = Undetermined(complex(zl))
    if trace:
        return OrbitResult(out, buf[:nt].copy())
    return out


def orbit(lam, z0, steps):
    """The first ``steps + 1`` points of the orbit of z0 (raises at a pole)."""
    lam = as_parameter(lam)
    z = as_point(z0)
    out = [z]
    for _ in range(steps):
        _check_pole(z)
        z = K.f_step(lam, z)
        out.append(z)
    return out


def orbit_derivative_wrt_lambda(lam, steps):
    """d z_k / d lambda for z_0 = lambda*i, k = 0..steps.

    Forward-mode recurrence dz_{k+1} = tan z_k + lambda sec^2 z_k dz_k.
    """
    lam = as_parameter(lam)
    z = complex(-lam.imag, lam.real)
    dz = 1j
    out = [dz]
    for _ in range(steps):
        _check_pole(z)
        t = K.tan_c(z)
        dz = t + lam * K.sec2_c(z) * dz
        z = K.f_step(lam, z)
        out.append(dz)
    return out


def asymptotic_values(lam):
    lam = as_parameter(lam)
    return complex(-lam.imag, lam.real), complex(lam.imag, -lam.real)
