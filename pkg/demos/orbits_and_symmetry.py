"""Forward orbits of lambda tan z and the z -> -z symmetry.

For lambda = 0.5 everything near the origin falls into the fixed point 0.
For lambda = 2 the imaginary axis carries two attracting fixed points +-it,
and the real axis (the Julia set) never settles.
"""
from tandyn import eval_f, iterate_orbit

for lam, z0 in [(0.5, 0.3), (2.0, 0.5j), (2.0, -0.5j), (2.0, 0.7)]:
    res = iterate_orbit(lam, z0, 2000)
    print(f"lambda={lam:<4} z0={z0!s:<6} -> {type(res).__name__}", end="")
    if hasattr(res, "cycle_points"):
        print(f" period {res.period}, point {res.cycle_points[0]:.12f}, m = {res.multiplier:.6f}")
    else:
        print()

# oddness holds bit for bit, in z and in lambda
lam, z = 1.3 - 0.4j, 0.77 + 0.2j
print("f(-z) == -f(z):", eval_f(lam, -z) == -eval_f(lam, z))
print("f_{-lambda}(z) == -f_lambda(z):", eval_f(-lam, z) == -eval_f(lam, z))
