"""Internal rays: curves along which the multiplier has a fixed angle.

In the unit disk the multiplier map is the identity, so rays are radii.
In the component of lambda = 2 the zero-angle ray runs out to infinity.
The ray into the period-2 component above (pi/2) i only gets close to
(pi/2) i once the multiplier is astronomically small: near the center it
behaves like exp(-pi / t) at distance t.
"""
import math

from tandyn import trace_internal_ray

ray = trace_internal_ray(0.5, 0.0, 1e-3)
print("unit disk:", [f"{p.lam.real:.4f}" for p in ray[::10]])

ray = trace_internal_ray(2.0, 0.0, 1e-3)
print("from 2:   ", [f"{p.lam.real:.3f}" for p in ray[::10]])

center = math.pi / 2 * 1j
for r_end in (1e-3, 1e-10, 1e-50, 1e-150):
    ray = trace_internal_ray((math.pi / 2 + 0.5) * 1j, 0.5, r_end)
    print(f"period 2, r = {r_end:.0e}: distance to (pi/2)i = {abs(ray[-1].lam - center):.4f}")
