"""Inverse branches of lambda*tan z and the prepoles they generate.

The branch ``n`` takes values in the strip
L_n = {(n - 1/2) pi <= Re w < (n + 1/2) pi}.  An itinerary
(n_1, ..., n_p) applies branch n_1 first and n_p last.
"""
import itertools
import logging
import math
from dataclasses import dataclass

from . import _kernels as K
from .core import INFINITY, as_parameter, as_point, pole
from .errors import AsymptoticValueInput, InfinityInput

log = logging.getLogger(__name__)

BRANCH_TOL = 1e-9


@dataclass(frozen=True)
class Prepole:
    point: complex
    order: int
    itinerary: tuple


def strip_index(w):
    """The n with Re w in L_n."""
    x = complex(w).real
    n = int(math.floor(x / math.pi + 0.5))
    # the quotient can round across an edge; settle it with the edge values
    if x < (n - 0.5) * math.pi:
        n -= 1
    elif x >= (n + 0.5) * math.pi:
        n += 1
    return n


def _principal(lam, z):
    a1, a2 = lam.real, lam.imag
    x, y = z.real, z.imag
    lz = a1 * a1 + a2 * a2 - (x * x + y * y)
    cross = 2.0 * (a1 * x + a2 * y)
    theta = math.atan2(cross, lz)
    if theta == math.pi:
        # half-angle pi/2 is the left edge of the next strip; use -pi/2
        theta = -math.pi
    den = (a1 + y) ** 2 + (a2 - x) ** 2
    im = -0.25 * math.log((lz * lz + cross * cross) / (den * den)) + 0.0
    return 0.5 * theta, im


def inverse_branch(n, lam, z):
    """The preimage of z under lambda*tan in the strip L_n."""
    if z is INFINITY:
        raise InfinityInput("use inverse_branch_at_infinity for the point at infinity")
    lam = as_parameter(lam)
    z = as_point(z)
    av = complex(-lam.imag, lam.real)
    if abs(z - av) < BRANCH_TOL or abs(z + av) < BRANCH_TOL:
        raise AsymptoticValueInput(z)
    half, im = _principal(lam, z)
    re = half + n * math.pi
    lo = (n - 0.5) * math.pi
    hi = (n + 0.5) * math.pi
    # rounding in n*pi must not push the result across a strip edge
    if re < lo:
        re = lo
    elif re >= hi:
        re = math.nextafter(hi, -math.inf)
    return complex(re, im)


def inverse_branch_at_infinity(n):
    return complex(pole(n), 0.0)


def compose_inverse(itinerary, lam, z):
    """Apply the branches of ``itinerary`` to z, first entry first."""
    lam = as_parameter(lam)
    w = z
    for depth, n in enumerate(itinerary):
        if w is INFINITY:
            w = inverse_branch_at_infinity(n)
            continue
        try:
            w = inverse_branch(n, lam, w)
        except AsymptoticValueInput as exc:
            raise AsymptoticValueInput(exc.z, depth) from None
    return w


def prepole(itinerary, lam):
    itinerary = tuple(int(n) for n in itinerary)
    lam = as_parameter(lam)
    if not itinerary:
        return Prepole(INFINITY, 0, ())
    point = compose_inverse(itinerary, lam, INFINITY)
    return Prepole(point, len(itinerary), itinerary)


def enumerate_prepoles(p, bound, lam, skipped=None):
    """All prepoles of order p with itinerary entries in [-bound, bound].

    Itineraries are visited in lexicographic order.  Those whose inverse
    chain meets an asymptotic value are skipped and, if ``skipped`` is a
    list, appended to it.
    """
    if p < 1 or bound < 0:
        raise ValueError("need p >= 1 and bound >= 0")
    lam = as_parameter(lam)
    out = []
    rng = range(-bound, bound + 1)
    for itin in itertools.product(rng, repeat=p):
        try:
            out.append(prepole(itin, lam))
        except AsymptoticValueInput:
            log.debug("skipping itinerary %s: hits an asymptotic value", itin)
            if skipped is not None:
                skipped.append(itin)
    return out


def forward_check(pp, lam):
    """Distance from f^{order-1}(point) to the pole s_{n_1}."""
    lam = as_parameter(lam)
    if pp.order == 0:
        return 0.0
    z = pp.point
    for _ in range(pp.order - 1):
        z = K.f_step(lam, z)
    return abs(z - pole(pp.itinerary[0]))


def negated_itinerary(itinerary):
    """Itinerary of the mirror image -v of a prepole v.

    The pole entry maps s_n -> s_{-n-1}; the strips after it map L_n -> L_{-n}.
    """
    if not itinerary:
        return ()
    head, *rest = itinerary
    return (-head - 1,) + tuple(-n for n in rest)
