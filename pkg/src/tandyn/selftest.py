"""Embedded invariant checks, run by ``tandyn selftest``.

Each check is small enough to finish in a few seconds; together they touch
every invariant the library promises (symmetries, roundtrips, monotone
accumulation, multiplier identities, render determinism).
"""
import cmath
import math

import numpy as np

from . import core, cycles, inverse, parameter, render

CHECKS = []


def check(fn):
    CHECKS.append(fn)
    return fn


def _rng():
    return np.random.default_rng(20240611)


def _points(rng, n, scale=6.0):
    return scale * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def _lams(rng, n):
    r = rng.uniform(0.2, 4.0, n)
    a = rng.uniform(0, 2 * math.pi, n)
    return r * np.exp(1j * a)


@check
def oddness_and_parameter_sign():
    rng = _rng()
    for lam, z in zip(_lams(rng, 300), _points(rng, 300)):
        lam, z = complex(lam), complex(z)
        if core.nearest_pole(z)[1] < 1e-6:
            continue
        f = core.eval_f(lam, z)
        assert core.eval_f(lam, -z) == -f
        assert core.eval_f(-lam, z) == -f


@check
def asymptotic_value_limit():
    for lam in (1.0, 2 + 1j, -0.5j):
        for x in (-3.0, 0.4, 2.0):
            for y in (21.0, 25.0, 30.0):
                d = abs(core.eval_f(lam, complex(x, y)) - lam * 1j)
                assert d <= 4 * abs(lam) * math.exp(-2 * y) * 1.01
                d = abs(core.eval_f(lam, complex(x, -y)) + lam * 1j)
                assert d <= 4 * abs(lam) * math.exp(-2 * y) * 1.01


@check
def derivative_matches_differences():
    rng = _rng()
    h = 1e-6
    for lam, z in zip(_lams(rng, 100), _points(rng, 100, 2.0)):
        lam, z = complex(lam), complex(z)
        if core.nearest_pole(z)[1] < 0.3:
            continue
        fd = (core.eval_f(lam, z + h) - core.eval_f(lam, z - h)) / (2 * h)
        d = core.eval_f_prime(lam, z)
        assert abs(fd - d) <= 1e-6 * max(1.0, abs(d))


@check
def orbit_parameter_derivative():
    h = 1e-6
    for lam in (1 + 0.3j, 0.7 - 0.2j, 2.0 + 0.5j):
        d = core.orbit_derivative_wrt_lambda(lam, 5)[-1]
        zp = core.orbit(lam + h, (lam + h) * 1j, 5)[-1]
        zm = core.orbit(lam - h, (lam - h) * 1j, 5)[-1]
        fd = (zp - zm) / (2 * h)
        assert abs(fd - d) <= 1e-5 * max(1.0, abs(d))


@check
def inverse_roundtrip_and_strips():
    rng = _rng()
    for _ in range(1000):
        n = int(rng.integers(-20, 21))
        lam = complex(_lams(rng, 1)[0])
        z = complex(_points(rng, 1, 3.0)[0])
        if min(abs(z - lam * 1j), abs(z + lam * 1j)) < 1e-3:
            continue
        w = inverse.inverse_branch(n, lam, z)
        assert (n - 0.5) * math.pi <= w.real < (n + 0.5) * math.pi
        assert abs(core.eval_f(lam, w) - z) <= 1e-10 * max(1.0, abs(z))


@check
def prepole_accumulation():
    lam = 1 + 0.5j
    tail = [abs(inverse.prepole((1, n), lam).point) for n in range(10, 30)]
    assert all(b > a for a, b in zip(tail, tail[1:]))
    v = inverse.prepole((2,), lam).point
    head = [abs(inverse.prepole((n, 2), lam).point - v) for n in range(10, 30)]
    assert all(b < a for a, b in zip(head, head[1:]))


@check
def prepole_mirror():
    lam = 1 + 0.5j
    for itin in ((2, 3), (0, -1), (4, 1, -2)):
        a = inverse.prepole(itin, lam).point
        b = inverse.prepole(inverse.negated_itinerary(itin), lam).point
        assert abs(a + b) <= 1e-10 * max(1.0, abs(a))


@check
def cycle_symmetries():
    found = [(2, cycles.refine_cycle_newton(2, 1.8j, 1)),
             (-2, cycles.refine_cycle_newton(-2, 1.8j, 2)),
             (0.5, cycles.refine_cycle_newton(0.5, 0.1, 1))]
    found += [(2j, c) for _, c in cycles.repelling_cycles_near_prepole(2j, (0, 0), range(4, 8))]
    for lam, c in found:
        neg = c.negated()
        scale = max(1.0, max(abs(z) for z in c.points))
        assert cycles.cycle_residual(lam, neg) <= 1e-8 * scale
        assert abs(cycles.multiplier(lam, neg) - c.multiplier) <= 1e-8 * abs(c.multiplier)
        alt = cycles.multiplier_sine_form(c)
        if alt is not None:
            assert abs(alt - c.multiplier) <= 1e-8 * abs(c.multiplier)


@check
def parameter_sign_doubles_odd_cycles():
    c = cycles.refine_cycle_newton(2, 1.8j, 1)
    assert cycles.flip_lambda(2, c).period == 2
    s = parameter.classify_parameter(2.0 + 0.4j)
    if isinstance(s, parameter.ComponentSample) and s.period % 2:
        c = cycles.make_cycle(s.lam, s.cycle)
        assert cycles.flip_lambda(s.lam, c).period == 2 * s.period


@check
def prepole_cycles_monotone():
    got = cycles.repelling_cycles_near_prepole(2, (0,), range(5, 16))
    d = [abs(c.points[0] - math.pi / 2) for _, c in got]
    m = [abs(c.multiplier) for _, c in got]
    assert all(b < a for a, b in zip(d, d[1:]))
    assert all(b > a for a, b in zip(m, m[1:]))


@check
def classification_symmetries():
    for lam in (2.0, 1.2 + 1.9j, 0.3 + 1.3j, -0.4 + 4.9j):
        a = parameter.classify_parameter(lam)
        b = parameter.classify_parameter(complex(lam).conjugate())
        assert type(a) is type(b)
        if isinstance(a, parameter.ComponentSample):
            assert (a.period, a.kind) == (b.period, b.kind)
    a = parameter.classify_parameter(2.0)
    b = parameter.classify_parameter(-2.0)
    assert a.kind is parameter.ComponentKind.TWO_CYCLES
    assert b.kind is parameter.ComponentKind.SINGLE_DOUBLED
    assert {round(z.imag, 9) for z in b.cycle} == {round(z.imag, 9) for z in (a.cycle[0], -a.cycle[0])}


@check
def virtual_centers():
    c = parameter.find_virtual_center(3, (8, 0), seed=cmath.pi / 2 * 1j + 0.1)
    assert c.residual < 1e-8
    mirror = parameter.mirrored_center_itinerary(c.itinerary)
    assert parameter.center_residual(-c.lambda_star, mirror) < 1e-8
    ring = parameter.classify_on_circle(math.pi / 2 * 1j, 0.05, 32)
    kinds = {s.kind for s in ring if isinstance(s, parameter.ComponentSample)}
    assert {parameter.ComponentKind.TWO_CYCLES, parameter.ComponentKind.SINGLE_DOUBLED} <= kinds


@check
def ray_modulus():
    for pt in parameter.trace_internal_ray(2.0 + 0.3j, 0.1, 0.01):
        assert abs(abs(pt.multiplier) - pt.r) < 1e-6


@check
def render_invariants():
    vp = render.Viewport(0.3 + 1.0j, 4.0, 130, 70)
    a = render.render_parameter_plane(vp, budget=400, threads=1)
    b = render.render_parameter_plane(vp, budget=400, threads=3)
    assert a == b
    m = render.render_parameter_plane(vp.mirrored(), budget=400, threads=2)
    assert np.array_equal(m.pixels, a.pixels[::-1])
    d = render.render_dynamic_plane(1 + 0.6j, render.Viewport(0, 6, 31, 27), budget=400)
    assert np.array_equal(d.pixels, d.pixels[::-1, ::-1])
    assert render.decode_ppm(render.encode_ppm(a), a.meta) == a
    assert render.decode_meta(render.encode_meta(a.meta)) == a.meta


def run(stream=None):
    """Run every check; returns the number of failures."""
    failures = 0
    for fn in CHECKS:
        try:
            fn()
            line = f"PASS\t{fn.__name__}"
        except Exception as exc:  # report, keep going
            failures += 1
            line = f"FAIL\t{fn.__name__}\t{type(exc).__name__}: {exc}"
        if stream is not None:
            print(line, file=stream)
    return failures
