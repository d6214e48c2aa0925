"""Parameter-plane and dynamic-plane pictures, written as PPM files.

Usage: python3 demos/render_planes.py [output directory]
"""
import os
import sys

from tandyn.render import Viewport, render_dynamic_plane, render_parameter_plane, write_image

out = sys.argv[1] if len(sys.argv) > 1 else "demo_images"
os.makedirs(out, exist_ok=True)

jobs = [
    ("parameter_wide.ppm", render_parameter_plane(Viewport(0, 12.0, 256, 256))),
    ("parameter_half_pi.ppm", render_parameter_plane(Viewport(1.5707963267948966j, 1.0, 256, 256))),
    ("dynamic_2.ppm", render_dynamic_plane(2.0, Viewport(0, 8.0, 257, 257))),
    ("dynamic_period3.ppm", render_dynamic_plane(1.0078125 + 4.1484375j, Viewport(0, 8.0, 256, 256))),
]
for name, img in jobs:
    path = os.path.join(out, name)
    write_image(img, path)
    print(path, img.cols, "x", img.rows)
