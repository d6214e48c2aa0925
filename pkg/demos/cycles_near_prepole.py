"""Repelling cycles that accumulate at a prepole.

For lambda = 2 and the pole pi/2, each k gives a period-2 cycle through a
point z_k next to pi/2; as k grows z_k closes in and the multiplier grows.
"""
import math

from tandyn import flip_lambda, refine_cycle_newton, repelling_cycles_near_prepole

for k, c in repelling_cycles_near_prepole(2.0, (0,), range(5, 16)):
    print(f"k={k:2d} |z_k - pi/2| = {abs(c.points[0] - math.pi / 2):.3e}"
          f"  |m_k| = {abs(c.multiplier):9.2f}  {c.stability.value}")

# changing the sign of lambda doubles an odd period
c = refine_cycle_newton(2.0, 1.8j, 1)
d = flip_lambda(2.0, c)
print(f"lambda=2 fixed point {c.points[0]:.6f}; lambda=-2 cycle of period {d.period},"
      f" symmetric={d.symmetric}, m = {d.multiplier.real:.6f} = {c.multiplier.real:.6f}^2")
