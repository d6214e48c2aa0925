import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile (or load cached) kernels once so timings measure work."""
    from tandyn import classify_parameter, iterate_orbit
    from tandyn.render import Viewport, classify_grid, orbit_grid
    classify_parameter(2.0)
    iterate_orbit(0.5, 0.3)
    classify_grid(Viewport(0, 1, 2), budget=10, threads=1)
    orbit_grid(2.0, Viewport(0, 1, 2), budget=10, threads=1)
