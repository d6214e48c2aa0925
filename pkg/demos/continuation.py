"""Following a cycle along a parameter path until it degenerates.

Along 0.5 -> 0.999 the fixed point 0 has multiplier lambda, which tends to
1: an algebraic end.  Along the imaginary axis down to (pi/2) i one point
of the period-2 cycle runs up the tract, its predecessor sits next to a
pole and the multiplier collapses to 0: a transcendental end.
"""
import math

import numpy as np

from tandyn import classify_parameter, continue_cycle_along_path, make_cycle, refine_cycle_newton

path, rep = continue_cycle_along_path(np.linspace(0.5, 0.999, 50),
                                      refine_cycle_newton(0.5, 0.1, 1))
print(f"real path: {rep.kind.value}, final m = {rep.final_multiplier.real:.4f}")

lam0 = (math.pi / 2 + 0.3) * 1j
cyc = make_cycle(lam0, classify_parameter(lam0).cycle)
lams = [(math.pi / 2 + t) * 1j for t in np.geomspace(0.3, 0.01, 60)]
path, rep = continue_cycle_along_path(lams, cyc)
n, d = rep.predecessor_pole
print(f"imaginary path: {rep.kind.value}, max |Im z| = {rep.max_abs_imag:.1f},"
      f" predecessor {d:.3f} from s_{n}, |m| = {abs(rep.final_multiplier):.1e}")
