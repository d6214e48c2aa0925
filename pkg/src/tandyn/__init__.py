"""Dynamics of the tangent family f(z) = lambda * tan z."""
from ._version import __version__
from .core import (INFINITY, Attracted, OrbitResult, PrepoleHit, Undetermined,
                   asymptotic_values, eval_f, eval_f_prime, is_infinity,
                   iterate_orbit, nearest_pole, orbit,
                   orbit_derivative_wrt_lambda, pole)
from .cycles import (Cycle, PathSingularityReport, SingularityKind, Stability,
                     classify_cycle, continue_cycle_along_path, flip_lambda,
                     make_cycle, multiplier, multiplier_sine_form,
                     refine_cycle_newton, repelling_cycles_near_prepole)
from .errors import (AsymptoticValueCollision, AsymptoticValueInput,
                     ContinuationFailure, ContractionFailure, InfinityInput,
                     InvalidParameter, NoConvergence, NotHyperbolic,
                     PoleCollision, PoleProximity, StepFailure, TanDynError)
from .inverse import (Prepole, compose_inverse, enumerate_prepoles,
                      inverse_branch, inverse_branch_at_infinity,
                      negated_itinerary, prepole, strip_index)
from .parameter import (ComponentKind, ComponentSample, ParameterUndetermined,
                        RayPoint, VirtualCenter, bud_point, centers_accumulation,
                        classify_on_circle, classify_parameter, eigenvalue,
                        find_virtual_center, mirrored_center_itinerary,
                        omega1_boundary_point, trace_internal_ray)
from .render import (RasterImage, Viewport, decode_ppm, encode_ppm,
                     render_dynamic_plane, render_parameter_plane)
