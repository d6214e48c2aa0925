"""Periodic cycles: Newton refinement, multipliers, cycles near prepoles,
and continuation of cycles along parameter paths."""
import enum
import logging
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .core import as_parameter, as_point, nearest_pole
from .errors import (AsymptoticValueInput, ContractionFailure, NoConvergence,
                     PoleCollision, StepFailure)
from .inverse import compose_inverse, prepole

log = logging.getLogger(__name__)

CLASS_TOL = K.CLASS_TOL
ESCAPE_THRESHOLD = 50.0
SYMMETRY_TOL = 1e-8
ALGEBRAIC_TOL = 1e-3
TRANSCENDENTAL_M_TOL = 1e-6
PREDECESSOR_POLE_DIST = 0.1


class Stability(enum.Enum):
    ATTRACTING = "Attracting"
    REPELLING = "Repelling"
    NEUTRAL = "Neutral"


class SingularityKind(enum.Enum):
    ALGEBRAIC = "Algebraic"
    TRANSCENDENTAL = "Transcendental"
    NONE = "None"


@dataclass(frozen=True)
class Cycle:
    points: tuple
    period: int
    multiplier: complex
    stability: Stability
    symmetric: bool

    def negated(self):
        return Cycle(tuple(-z for z in self.points), self.period,
                     self.multiplier, self.stability, self.symmetric)


@dataclass(frozen=True)
class PathSingularityReport:
    kind: SingularityKind
    final_multiplier: complex
    max_abs_imag: float
    predecessor_pole: tuple  # (pole index, distance) of the escaping point's predecessor


def classify_cycle(m):
    a = abs(m)
    if a < 1.0 - CLASS_TOL:
        return Stability.ATTRACTING
    if a > 1.0 + CLASS_TOL:
        return Stability.REPELLING
    return Stability.NEUTRAL


def _points_symmetric(points, tol=SYMMETRY_TOL):
    if len(points) % 2:
        return False
    for z in points:
        if min(abs(w + z) for w in points) > tol * max(1.0, abs(z)):
            return False
    return True


def multiplier(lam, cycle):
    """Product of lambda sec^2 over the cycle points."""
    lam = as_parameter(lam)
    points = cycle.points if isinstance(cycle, Cycle) else tuple(cycle)
    m = 1 + 0j
    for z in points:
        m *= K.fprime_step(lam, complex(z))
    return m


def multiplier_sine_form(cycle):
    """prod 2 z_{i+1} / sin 2 z_i, using lambda = z_{i+1} / tan z_i.

    Returns None where the form is undefined (a zero point, or sin 2z
    overflowing far out in a tract).
    """
    points = cycle.points if isinstance(cycle, Cycle) else tuple(cycle)
    p = len(points)
    m = 1 + 0j
    for i in range(p):
        z = complex(points[i])
        nxt = complex(points[(i + 1) % p])
        if nxt == 0 or abs(z.imag) > 300:
            return None
        s = np.sin(2 * z)
        if s == 0:
            return None
        m *= 2 * nxt / s
    return complex(m)


def make_cycle(lam, points):
    lam = as_parameter(lam)
    points = tuple(complex(z) for z in points)
    m = multiplier(lam, points)
    return Cycle(points, len(points), m, classify_cycle(m),
                 _points_symmetric(points))


def _orbit_points(lam, z, p):
    pts = [z]
    for _ in range(p - 1):
        pts.append(K.f_step(lam, pts[-1]))
    return pts


def refine_cycle_newton(lam, z_guess, p, reduce=True):
    """Newton on f^p(z) - z from z_guess; returns the cycle through the root.

    With ``reduce`` the period is cut to the primitive period.
    """
    lam = as_parameter(lam)
    z = as_point(z_guess)
    if p < 1:
        raise ValueError("period must be >= 1")
    st, z, r = K.newton_cycle(lam, z, int(p), K.NEWTON_MAX)
    if st == K.NEWTON_POLE:
        raise PoleCollision(f"orbit of {z!r} meets a pole within {p} steps")
    if st != K.NEWTON_OK:
        raise NoConvergence(f"Newton for period {p} stalled at residual {r:.3g}")
    q = int(K.primitive_period(lam, z, int(p))) if reduce else int(p)
    return make_cycle(lam, _orbit_points(lam, z, q))


def cycle_residual(lam, cycle):
    """max_i |f(z_i) - z_{i+1}|."""
    lam = as_parameter(lam)
    pts = cycle.points
    p = len(pts)
    return max(abs(K.f_step(lam, pts[i]) - pts[(i + 1) % p]) for i in range(p))


def flip_lambda(lam, cycle):
    """The cycle of f_{-lambda} through the same first point.

    f^k_{-lambda} = (-1)^k f^k_lambda, so an odd period doubles.
    """
    lam = as_parameter(lam)
    z0 = cycle.points[0]
    q = cycle.period if cycle.period % 2 == 0 else 2 * cycle.period
    st, z, r = K.newton_cycle(-lam, z0, q, K.NEWTON_MAX)
    if st != K.NEWTON_OK:
        raise NoConvergence("flipped cycle did not refine")
    q = int(K.primitive_period(-lam, z, q))
    return make_cycle(-lam, _orbit_points(-lam, z, q))


def repelling_cycles_near_prepole(lam, prepole_itin, k_range, tol=1e-12,
                                  maxit=500):
    """Period-p repelling cycles accumulating at the prepole v of order p-1.

    For each k the cycle is the attracting fixed point of the inverse chain
    that first takes branch k (landing far out in the strip L_k) and then
    follows ``prepole_itin`` back to v.  Iteration starts at v.

    Returns a list of (k, Cycle) with points[0] the end point of the chain.
    It tends to v as |k| grows when Re(lambda) k > 0; on the other side the
    second step lands near the left edge of its strip, so the cycles
    accumulate at the prepole whose first entry is one less.  Values
    of k for which the chain does not contract are dropped when they lie
    below the adaptively found threshold; ContractionFailure is raised if
    none remain.
    """
    lam = as_parameter(lam)
    prepole_itin = tuple(int(n) for n in prepole_itin)
    v = prepole(prepole_itin, lam).point
    av = complex(-lam.imag, lam.real)
    from .inverse import BRANCH_TOL
    if min(abs(v - av), abs(v + av)) <= 2 * BRANCH_TOL:
        raise AsymptoticValueInput(v)
    p = len(prepole_itin) + 1
    chain_tail = prepole_itin

    results = {}
    for k in k_range:
        chain = (k,) + chain_tail
        z = v
        ok = False
        try:
            for _ in range(maxit):
                z_new = compose_inverse(chain, lam, z)
                if abs(z_new - z) < tol * max(1.0, abs(z)):
                    z = z_new
                    ok = True
                    break
                z = z_new
        except AsymptoticValueInput:
            ok = False
        if not ok:
            log.debug("k=%d: inverse chain did not settle", k)
            continue
        cyc = make_cycle(lam, _orbit_points(lam, z, p))
        if abs(cyc.multiplier) <= 1.0:
            continue
        results[k] = cyc

    ks = list(k_range)
    if not ks:
        return []
    # keep the k with |k| >= k_min where every larger |k| also succeeded
    failed = [abs(k) for k in ks if k not in results]
    k_min = max(failed) + 1 if failed else min(abs(k) for k in ks)
    kept = [(k, results[k]) for k in ks if k in results and abs(k) >= k_min]
    if not kept:
        raise ContractionFailure(
            f"no k in the range gives a contracting inverse chain (p={p})")
    return kept


def _tracked_step(lam, z_prev, p):
    st, z, r = K.newton_cycle(lam, z_prev, p, K.NEWTON_MAX)
    if st != K.NEWTON_OK:
        return None
    if abs(z - z_prev) > 0.25 * max(1.0, abs(z_prev)):
        return None
    return z


def continue_cycle_along_path(lams, cycle0, max_depth=20):
    """Continue cycle0 through the parameter samples ``lams``.

    Each sample is reached by Newton from the previous cycle point; failed
    or jumping steps are bisected up to ``max_depth`` times.  Returns
    (cycles, report) where cycles[i] is the continued cycle at lams[i].
    """
    lams = [as_parameter(l) for l in lams]
    if not lams:
        raise ValueError("empty path")
    p = cycle0.period
    z = cycle0.points[0]
    st, z, r = K.newton_cycle(lams[0], z, p, K.NEWTON_MAX)
    if st != K.NEWTON_OK:
        raise StepFailure("cycle0 is not a cycle at the first sample", None)
    path = [make_cycle(lams[0], _orbit_points(lams[0], z, p))]
    cur = lams[0]
    for target in lams[1:]:
        pending = [target]
        depth = 0
        while pending:
            nxt = pending[-1]
            z_new = _tracked_step(nxt, z, p)
            if z_new is None:
                depth += 1
                if depth > max_depth:
                    raise StepFailure(
                        f"continuation stalled between {cur!r} and {nxt!r}",
                        path[-1])
                pending.append(0.5 * (cur + nxt))
                continue
            z = z_new
            cur = pending.pop()
        path.append(make_cycle(target, _orbit_points(target, z, p)))

    return path, singularity_report(path[-1])


def singularity_report(cycle):
    m = cycle.multiplier
    pts = cycle.points
    p = len(pts)
    i_max = max(range(p), key=lambda i: abs(pts[i].imag))
    max_im = abs(pts[i_max].imag)
    pred = pts[(i_max - 1) % p]
    n, d = nearest_pole(pred)
    if abs(1 - m) - ALGEBRAIC_TOL <= 1e-12:
        kind = SingularityKind.ALGEBRAIC
    elif (max_im > ESCAPE_THRESHOLD and d < PREDECESSOR_POLE_DIST
          and abs(m) < TRANSCENDENTAL_M_TOL):
        kind = SingularityKind.TRANSCENDENTAL
    else:
        kind = SingularityKind.NONE
    return PathSingularityReport(kind, m, max_im, (n, d))
