"""Prepoles: points that reach a pole after finitely many steps.

An itinerary (n1, n2, ...) names the pole s_{n1} and then the strips the
backward chain passes through.  Varying the last entry sends the prepoles
to infinity; varying the first makes them pile up on a lower-order prepole.
"""
from tandyn import enumerate_prepoles, negated_itinerary, prepole

lam = 1 + 0.5j
print("tail varying, |v| grows:")
for n in (5, 10, 20, 40):
    print(f"  (1, {n:2d}) -> |v| = {abs(prepole((1, n), lam).point):.4f}")

target = prepole((2,), lam).point
print("head varying, v approaches s_2 =", target)
for n in (5, 10, 20, 40):
    v = prepole((n, 2), lam).point
    print(f"  ({n:2d}, 2) -> distance {abs(v - target):.3e}")

itin = (4, 1, -2)
a, b = prepole(itin, lam).point, prepole(negated_itinerary(itin), lam).point
print(f"mirror of {itin} is {negated_itinerary(itin)}: |v + v'| = {abs(a + b):.1e}")

print("order-2 prepoles with entries in [-1, 1] for lambda = 2 (all real):")
for p in enumerate_prepoles(2, 1, 2.0):
    print("  ", p.itinerary, f"{p.point.real:+.6f}")
