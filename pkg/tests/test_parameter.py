import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from tandyn import (ComponentKind, ComponentSample, NotHyperbolic, ParameterUndetermined,
                    VirtualCenter, bud_point, centers_accumulation,
                    classify_parameter, eigenvalue, eval_f, eval_f_prime,
                    find_virtual_center, negated_itinerary,
                    omega1_boundary_point, prepole,
                    trace_internal_ray)
from tandyn import parameter as P

PI = math.pi
T = float(O.T_FIXED)


# --- classification ------------------------------------------------------

def test_classify_unit_disk():
    s = classify_parameter(0.5)
    assert s.kind is ComponentKind.UNIT_DISK and s.period == 1
    assert s.multiplier == 0.5


def test_classify_two_fixed_points():
    s = classify_parameter(2)
    assert s.kind is ComponentKind.TWO_CYCLES and s.period == 1
    assert abs(s.cycle[0].imag) - T < 1e-12 and abs(s.cycle[0].real) < 1e-12
    assert abs(s.multiplier - float(O.M_FIXED)) < 1e-12


def test_classify_single_doubled():
    s = classify_parameter(-2)
    assert s.kind is ComponentKind.SINGLE_DOUBLED and s.period == 1
    assert len(s.cycle) == 2
    assert {round(z.imag, 10) for z in s.cycle} == {round(T, 10), round(-T, 10)}
    assert abs(s.multiplier - float(O.M_TWO_CYCLE)) < 1e-12


def test_classify_undetermined():
    # lambda = -(pi/2) i: lambda*i = pi/2 is a pole
    s = classify_parameter(-PI / 2 * 1j)
    assert isinstance(s, ParameterUndetermined) and s.reason == "prepole"
    # lambda = 1 is parabolic; convergence to 0 is too slow for a short budget
    s = classify_parameter(1.0, budget=50)
    assert isinstance(s, ParameterUndetermined) and s.reason == "budget"


def test_two_cycles_are_negatives():
    s = classify_parameter(1.0078125 + 4.1484375j)
    assert s.kind is ComponentKind.TWO_CYCLES and s.period == 3
    lam = s.lam
    for z in s.cycle:
        w = -z
        for _ in range(3):
            w = eval_f(lam, w)
        assert abs(w + z) < 1e-8 * max(1.0, abs(z))
    assert min(abs(a + b) for a in s.cycle for b in s.cycle) > 1e-3


@settings(max_examples=120, deadline=None)
@given(st.floats(-6, 6), st.floats(-6, 6))
def test_conjugation_symmetry(a, b):
    lam = complex(a, b)
    if abs(lam) < 1e-3:
        return
    s, t = classify_parameter(lam, 800), classify_parameter(lam.conjugate(), 800)
    assert type(s) is type(t)
    if isinstance(s, ComponentSample):
        assert (s.period, s.kind) == (t.period, t.kind)
        assert abs(s.multiplier.conjugate() - t.multiplier) <= 1e-12 * max(1, abs(s.multiplier))


@pytest.mark.parametrize("lam,p", [(2.0, 1), (1.0078125 + 4.1484375j, 3),
                                   (0.2578125 + 5.9765625j, 5)])
def test_parameter_sign_doubles_odd_period(lam, p):
    s = classify_parameter(lam)
    t = classify_parameter(-lam)
    assert s.kind is ComponentKind.TWO_CYCLES and s.period == p
    assert t.kind is ComponentKind.SINGLE_DOUBLED and t.period == p
    assert len(t.cycle) == 2 * p
    # the doubled cycle is the union of the two cycles of lambda
    union = list(s.cycle) + [-z for z in s.cycle]
    for z in t.cycle:
        assert min(abs(z - w) for w in union) < 1e-8 * max(1.0, abs(z))
    assert abs(t.multiplier - s.multiplier ** 2) < 1e-8 * abs(s.multiplier) ** 2


def test_eigenvalue_examples():
    assert abs(eigenvalue(0.3 + 0.2j) - (0.3 + 0.2j)) < 1e-15
    assert abs(eigenvalue(2) - float(O.M_FIXED)) < 1e-12
    assert abs(eigenvalue(-2) - float(O.M_TWO_CYCLE)) < 1e-12
    with pytest.raises(NotHyperbolic):
        eigenvalue(-PI / 2 * 1j)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 0.98), st.floats(0, 2 * PI))
def test_eigenvalue_identity_on_unit_disk(r, a):
    lam = r * cmath.exp(1j * a)
    assert abs(eigenvalue(lam) - lam) < 1e-12


# --- internal rays -------------------------------------------------------

def test_ray_in_unit_disk_is_identity():
    ray = trace_internal_ray(0.5, 0.0, 1e-3)
    assert abs(ray[-1].r - 1e-3) < 1e-15
    for pt in ray:
        assert abs(pt.lam - pt.r) < 1e-10
        assert abs(pt.multiplier - pt.r) < 1e-8


def test_ray_in_fixed_point_component_goes_to_infinity():
    ray = trace_internal_ray(2.0, 0.0, 1e-3)
    lams = [pt.lam for pt in ray]
    assert all(abs(l.imag) < 1e-9 for l in lams)
    re = [l.real for l in lams]
    assert all(b > a for a, b in zip(re, re[1:]))
    assert re[0] > 1 and re[-1] > 4


@pytest.mark.parametrize("seed,alpha,r_end", [
    (2.0 + 0.3j, 0.1, 0.01), (0.3 + 0.4j, 0.75, 0.05),
    ((PI / 2 + 0.2) * 1j, 0.0, 1e-3), (1.0078125 + 4.1484375j, 0.3, 1e-2)])
def test_ray_modulus_and_angle(seed, alpha, r_end):
    ray = trace_internal_ray(seed, alpha, r_end)
    for pt in ray:
        assert abs(abs(pt.multiplier) - pt.r) < 1e-6
        assert abs(pt.multiplier - pt.r * cmath.exp(2j * PI * alpha)) < 1e-8
        assert abs(eigenvalue(pt.lam) - pt.multiplier) < 1e-6
    # r moves monotonically from the seed modulus to r_end, in either direction
    rs = [pt.r for pt in ray]
    sign = 1 if r_end > rs[0] else -1
    assert all(sign * (b - a) > 0 for a, b in zip(rs, rs[1:]))
    assert rs[-1] == r_end


def test_ray_toward_imaginary_axis_center_deep():
    # the multiplier decays like exp(-pi/t) with t the distance to (pi/2) i,
    # so the ray only comes close for very small r
    ray = trace_internal_ray((PI / 2 + 0.5) * 1j, 0.5, 1e-150)
    d = [abs(pt.lam - PI / 2 * 1j) for pt in ray]
    assert d[-1] < 1e-2
    assert all(b < a for a, b in zip(d[len(d) // 2:], d[len(d) // 2 + 1:]))


def test_ray_errors():
    with pytest.raises(ValueError):
        trace_internal_ray(0.5, 0.0, 1.5)
    with pytest.raises(NotHyperbolic):
        trace_internal_ray(-PI / 2 * 1j, 0.0, 0.1)


def test_ray_outward():
    ray = trace_internal_ray(0.2, 0.0, 0.9)
    assert abs(ray[-1].lam - 0.9) < 1e-10


# --- buds ----------------------------------------------------------------

def test_bud_points_of_unit_disk():
    assert abs(bud_point(0.5, 3, 1) - cmath.exp(2j * PI / 3)) < 1e-6
    assert abs(bud_point(0.5, 2, 1) + 1) < 1e-6
    with pytest.raises(ValueError):
        bud_point(0.5, 4, 2)


def test_bud_point_of_fixed_point_component():
    b = bud_point(2.0, 2, 1)
    # b itself is parabolic; just inside, the fixed points have m near -1,
    # and just across, the attached period-2 component begins
    inner, outer = classify_parameter(1.01 * b), classify_parameter(0.99 * b)
    assert inner.period == 1 and inner.kind is ComponentKind.TWO_CYCLES
    assert abs(inner.multiplier + 1) < 0.05
    assert outer.period == 2


# --- virtual centers -----------------------------------------------------

@pytest.mark.parametrize("k", [-3, -1, 0, 1, 4])
def test_order_one_centers(k):
    c = find_virtual_center(2, (k,))
    assert c.lambda_star == (k + 0.5) * PI * 1j
    assert c.order == 1 and c.pole_index == k and c.residual == 0


def test_center_period_three():
    c = find_virtual_center(3, (8, 0), seed=PI / 2 * 1j + 0.1)
    assert c.residual < 1e-10
    lam = c.lambda_star
    # f_lambda(-lambda i) lands on s_8, so f^2 sends -lambda i to infinity
    assert abs(eval_f(lam, -lam * 1j) - (8.5 * PI)) < 1e-10
    # by oddness lambda i is the mirrored prepole of order 2
    v = prepole(negated_itinerary((8, 0)), lam).point
    assert abs(v - lam * 1j) < 1e-8


def test_center_errors():
    with pytest.raises(ValueError):
        find_virtual_center(3, (1,))
    with pytest.raises(ValueError):
        find_virtual_center(1, ())


def test_centers_accumulate_at_parent():
    parent = find_virtual_center(2, (0,))
    for ks in (range(5, 31), range(-30, -4)):
        got = centers_accumulation(parent, ks)
        assert all(isinstance(c, VirtualCenter) for _, c in got)
        assert all(c.itinerary[0] == k for k, c in got)
        assert all(c.residual < 1e-8 for _, c in got)
        d = [abs(c.lambda_star - parent.lambda_star) for _, c in got]
        if ks.start < 0:
            d = d[::-1]
        assert all(b < a for a, b in zip(d, d[1:]))
        assert d[-1] < 0.02


@pytest.mark.parametrize("itin", [(8, 0), (5, 0), (-6, 0), (3, 1)])
def test_mirrored_centers(itin):
    c = find_virtual_center(3, itin)
    mirror = P.mirrored_center_itinerary(itin)
    assert P.center_residual(-c.lambda_star, mirror) < 1e-8
    assert P._center_orbit_matches(-c.lambda_star, mirror)


def test_mirrored_itinerary_rule():
    assert P.mirrored_center_itinerary((8, 0)) == (8, 0)
    assert P.mirrored_center_itinerary((3, 1, 0)) == (-4, 1, 0)
    assert P.mirrored_center_itinerary((5,)) == (-6,)


def test_period_four_center():
    parent = find_virtual_center(3, (8, 0), seed=PI / 2 * 1j + 0.1)
    c = find_virtual_center(4, (6, 8, 0), seed=parent.lambda_star)
    assert c.residual < 1e-10
    mirror = P.mirrored_center_itinerary(c.itinerary)
    assert P.center_residual(-c.lambda_star, mirror) < 1e-8


def test_both_kinds_near_center():
    ring = P.classify_on_circle(PI / 2 * 1j, 0.05, 64)
    kinds = {(s.period, s.kind) for s in ring if isinstance(s, ComponentSample)}
    assert {(2, ComponentKind.TWO_CYCLES), (2, ComponentKind.SINGLE_DOUBLED)} <= kinds


def test_undetermined_near_center():
    # a finer ring crosses the boundary and meets parameters with no verdict
    ring = P.classify_on_circle(PI / 2 * 1j, 0.05, 1024)
    assert any(isinstance(s, ParameterUndetermined) for s in ring)
    periods = {s.period for s in ring if isinstance(s, ComponentSample)}
    assert 2 in periods and min(periods) == 2


# --- boundary of the fixed-point component --------------------------------

def _check_boundary(y, x_guess):
    lam = omega1_boundary_point(y, x_guess)
    u = P.omega1_boundary_u(y, x_guess)
    z = u / 2
    assert abs(lam * cmath.tan(z) - z) < 1e-8 * max(1.0, abs(z))
    assert abs(abs(eval_f_prime(lam, z)) - 1) < 1e-8
    return lam, u


def test_boundary_touches_one():
    lam, _ = _check_boundary(1e-4, 0.01)
    assert abs(lam - 1) < 1e-7


def test_boundary_at_half_pi():
    y = float(O.Y_HALF_PI)
    _, u = _check_boundary(y, 1.4)
    assert abs(u.real - PI / 2) < 1e-12


@pytest.mark.parametrize("y", np.linspace(0.2, 5.0, 13))
def test_boundary_general(y):
    _check_boundary(y, math.sqrt(max(math.cosh(y) ** 2 - y * y, 0.01)))


def test_boundary_asymptote():
    # |Im lambda| e^{-2|Re lambda|} stays between 1/(4e) and e/4
    vals = []
    for y in np.linspace(6, 14, 41):
        lam, _ = _check_boundary(y, math.sqrt((math.exp(y) / 2) ** 2 - y * y))
        vals.append(abs(lam.imag) * math.exp(-2 * abs(lam.real)))
    lo, hi = 1 / (4 * math.e), math.e / 4
    assert all(lo * (1 - 1e-3) <= v <= hi * (1 + 1e-3) for v in vals)


def test_boundary_bad_input():
    with pytest.raises(ValueError):
        omega1_boundary_point(0.0, 1.0)
