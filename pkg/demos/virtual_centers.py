"""Virtual centers: parameters whose asymptotic value is a prepole.

Order-one centers sit at (k + 1/2) pi i.  Order-two centers with itinerary
(k, 0) close in on (pi/2) i as k grows, and a small circle around (pi/2) i
meets both kinds of period-2 component.
"""
import math
from collections import Counter

from tandyn import ComponentSample, centers_accumulation, find_virtual_center
from tandyn import parameter as P

for k in (-1, 0, 1, 2):
    print(f"itinerary ({k}) -> {find_virtual_center(2, (k,)).lambda_star}")

parent = find_virtual_center(2, (0,))
for k, c in centers_accumulation(parent, [5, 10, 20, 30]):
    print(f"itinerary ({k}, 0) -> {c.lambda_star:.6f}, distance"
          f" {abs(c.lambda_star - parent.lambda_star):.4f}, residual {c.residual:.1e}")

ring = P.classify_on_circle(math.pi / 2 * 1j, 0.05, 64)
tally = Counter((s.period, s.kind.value) if isinstance(s, ComponentSample) else "Undetermined"
                for s in ring)
print("circle of radius 0.05 about (pi/2)i:", dict(tally))
