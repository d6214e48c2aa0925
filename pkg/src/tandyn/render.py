"""Deterministic rasterization of the parameter and dynamic planes.

Pixels are sampled at their centers and computed in 64x64 tiles on a
thread pool; the compiled kernels release the GIL and each tile writes a
disjoint block, so the output does not depend on scheduling.
"""
import colorsys
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from ._version import __version__
from .core import DEFAULT_BUDGET, MAX_PERIOD, as_parameter
from .records import format_complex

TILE = 64
BACKGROUND = (255, 255, 255)
UNDETERMINED = (0, 0, 0)
PREPOLE = (255, 255, 255)
UNIT_DISK_GREY = (150, 150, 150)
GOLDEN_ANGLE = 137.50776405003785  # degrees
SHADES = 12


@dataclass(frozen=True)
class Viewport:
    center: complex
    width: float
    cols: int
    rows: int = None

    def __post_init__(self):
        if self.rows is None:
            object.__setattr__(self, "rows", self.cols)
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "width", float(self.width))
        if not self.width > 0 or self.cols < 1 or self.rows < 1:
            raise ValueError("viewport needs width > 0 and at least one pixel")

    @property
    def pitch(self):
        return self.width / self.cols

    def mirrored(self):
        """The viewport reflected across the real axis."""
        return Viewport(self.center.conjugate(), self.width, self.cols, self.rows)

    def grid(self, supersample=1):
        """Complex sample points, row 0 at the top.

        Offsets are computed from half-integer pixel indices about the
        center so that symmetric pixels get exactly negated offsets.
        """
        s = int(supersample)
        cols, rows = self.cols * s, self.rows * s
        pitch = self.width / cols
        cx, cy = self.center.real, self.center.imag
        xs = cx + (np.arange(cols) + 0.5 - cols / 2) * pitch
        ys = cy - (np.arange(rows) + 0.5 - rows / 2) * pitch
        return xs[None, :] + 1j * ys[:, None]


@dataclass
class RasterImage:
    pixels: np.ndarray  # (rows, cols, 3) uint8
    meta: dict = field(default_factory=dict)

    @property
    def cols(self):
        return self.pixels.shape[1]

    @property
    def rows(self):
        return self.pixels.shape[0]

    def __eq__(self, other):
        return (isinstance(other, RasterImage)
                and np.array_equal(self.pixels, other.pixels)
                and self.meta == other.meta)


def thread_count():
    env = os.environ.get("TANDYN_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError("TANDYN_THREADS must be positive")
        return n
    return os.cpu_count() or 1


def _tiles(rows, cols):
    for r0 in range(0, rows, TILE):
        for c0 in range(0, cols, TILE):
            yield r0, min(r0 + TILE, rows), c0, min(c0 + TILE, cols)


def _run_tiles(work, rows, cols, threads):
    tiles = list(_tiles(rows, cols))
    threads = thread_count() if threads is None else int(threads)
    if threads <= 1 or len(tiles) == 1:
        for t in tiles:
            work(*t)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for fut in [pool.submit(work, *t) for t in tiles]:
            fut.result()


def classify_grid(vp, budget=DEFAULT_BUDGET, threads=None, supersample=1,
                  max_period=MAX_PERIOD):
    """Per-pixel (kind, period, multiplier) arrays over a parameter viewport.

    kind uses the kernel codes; -1 marks lambda = 0.
    """
    lams = vp.grid(supersample)
    rows, cols = lams.shape
    kinds = np.zeros((rows, cols), dtype=np.int64)
    periods = np.zeros((rows, cols), dtype=np.int64)
    mults = np.zeros((rows, cols), dtype=np.complex128)

    def work(r0, r1, c0, c1):
        k = np.empty((r1 - r0, c1 - c0), dtype=np.int64)
        p = np.empty_like(k)
        m = np.empty((r1 - r0, c1 - c0), dtype=np.complex128)
        K.classify_tile(np.ascontiguousarray(lams[r0:r1, c0:c1]), int(budget),
                        int(max_period), k, p, m)
        kinds[r0:r1, c0:c1] = k
        periods[r0:r1, c0:c1] = p
        mults[r0:r1, c0:c1] = m

    _run_tiles(work, rows, cols, threads)
    return kinds, periods, mults


def orbit_grid(lam, vp, budget=DEFAULT_BUDGET, threads=None, supersample=1,
               max_period=MAX_PERIOD):
    """Per-pixel (status, period, steps) arrays over a dynamic-plane viewport."""
    lam = as_parameter(lam)
    zs = vp.grid(supersample)
    rows, cols = zs.shape
    status = np.zeros((rows, cols), dtype=np.int64)
    periods = np.zeros((rows, cols), dtype=np.int64)
    steps = np.zeros((rows, cols), dtype=np.int64)

    def work(r0, r1, c0, c1):
        s = np.empty((r1 - r0, c1 - c0), dtype=np.int64)
        p = np.empty_like(s)
        n = np.empty_like(s)
        K.orbit_tile(lam, np.ascontiguousarray(zs[r0:r1, c0:c1]), int(budget),
                     int(max_period), s, p, n)
        status[r0:r1, c0:c1] = s
        periods[r0:r1, c0:c1] = p
        steps[r0:r1, c0:c1] = n

    _run_tiles(work, rows, cols, threads)
    return status, periods, steps


def _hls(hue_deg, light, sat=0.75):
    r, g, b = colorsys.hls_to_rgb((hue_deg % 360.0) / 360.0, light, sat)
    return int(round(255 * r)), int(round(255 * g)), int(round(255 * b))


def period_hue(p):
    return (p * GOLDEN_ANGLE) % 360.0


def parameter_color(kind, period, palette="default"):
    """Color of a parameter pixel from its kernel kind code and period."""
    if palette == "gray":
        return {K.KIND_TWO_CYCLES: (200, 200, 200), K.KIND_SINGLE_DOUBLED: (110, 110, 110),
                K.KIND_UNIT_DISK: UNIT_DISK_GREY, -1: BACKGROUND}.get(kind, UNDETERMINED)
    if palette != "default":
        raise ValueError(f"unknown palette {palette!r}")
    if kind == -1:
        return BACKGROUND
    if kind == K.KIND_UNIT_DISK:
        return UNIT_DISK_GREY
    if kind == K.KIND_TWO_CYCLES:
        return _hls(period_hue(period), 0.68)
    if kind == K.KIND_SINGLE_DOUBLED:
        return _hls(period_hue(period), 0.34)
    return UNDETERMINED


def dynamic_color(status, period, steps, palette="default"):
    """Color of a dynamic-plane pixel.

    Depends only on the period and the capture time, not on which of the
    cycles C, -C captured the point, so the picture keeps the z -> -z
    symmetry.
    """
    if status == K.ORBIT_PREPOLE:
        return PREPOLE
    if status != K.ORBIT_ATTRACTED:
        return UNDETERMINED
    # capture times repeat through a cycle of shades so short and long
    # times both show contrast
    band = (int(steps) % SHADES) / (SHADES - 1.0)
    if palette == "gray":
        v = int(round(230 - 150 * band))
        return v, v, v
    if palette != "default":
        raise ValueError(f"unknown palette {palette!r}")
    return _hls(period_hue(period), 0.72 - 0.42 * band)


def _paint(codes, color_fn):
    """Map each distinct code tuple to its color once."""
    rows, cols = codes[0].shape
    stacked = np.stack(codes, axis=-1).reshape(-1, len(codes))
    uniq, inv = np.unique(stacked, axis=0, return_inverse=True)
    table = np.array([color_fn(*map(int, u)) for u in uniq], dtype=np.uint8)
    return table[inv.reshape(-1)].reshape(rows, cols, 3)


def _downsample(pix, s):
    if s == 1:
        return pix
    rows, cols = pix.shape[0] // s, pix.shape[1] // s
    blocks = pix.reshape(rows, s, cols, s, 3).astype(np.uint32).sum(axis=(1, 3))
    n = s * s
    return ((blocks + n // 2) // n).astype(np.uint8)


def _meta(vp, budget, palette, supersample, **extra):
    m = {
        "budget": str(int(budget)),
        "center": format_complex(vp.center),
        "cols": str(vp.cols),
        "palette": palette,
        "rows": str(vp.rows),
        "supersample": str(int(supersample)),
        "version": f"tandyn {__version__}",
        "width": repr(vp.width),
    }
    m.update(extra)
    return m


def render_parameter_plane(vp, budget=DEFAULT_BUDGET, palette="default",
                           threads=None, supersample=1):
    kinds, periods, _ = classify_grid(vp, budget, threads, supersample)
    pix = _paint((kinds, periods), lambda k, p: parameter_color(k, p, palette))
    return RasterImage(_downsample(pix, int(supersample)),
                       _meta(vp, budget, palette, supersample, plane="parameter"))


def render_dynamic_plane(lam, vp, budget=DEFAULT_BUDGET, palette="default",
                         threads=None, supersample=1):
    lam = as_parameter(lam)
    status, periods, steps = orbit_grid(lam, vp, budget, threads, supersample)
    pix = _paint((status, periods, steps),
                 lambda s, p, n: dynamic_color(s, p, n, palette))
    return RasterImage(_downsample(pix, int(supersample)),
                       _meta(vp, budget, palette, supersample, plane="dynamic",
                             **{"lambda": format_complex(lam)}))


def encode_ppm(img):
    pix = np.ascontiguousarray(img.pixels, dtype=np.uint8)
    if pix.ndim != 3 or pix.shape[2] != 3:
        raise ValueError("pixels must have shape (rows, cols, 3)")
    header = f"P6\n{pix.shape[1]} {pix.shape[0]}\n255\n".encode("ascii")
    return header + pix.tobytes()


def decode_ppm(data, meta=None):
    """Inverse of encode_ppm (accepts only the header layout it writes)."""
    parts = data.split(b"\n", 3)
    if len(parts) != 4 or parts[0] != b"P6" or parts[2] != b"255":
        raise ValueError("not a P6 image in the expected layout")
    cols, rows = (int(v) for v in parts[1].split())
    body = parts[3]
    if len(body) != rows * cols * 3:
        raise ValueError("pixel data has the wrong length")
    pix = np.frombuffer(body, dtype=np.uint8).reshape(rows, cols, 3).copy()
    return RasterImage(pix, dict(meta or {}))


def encode_meta(meta):
    lines = []
    for key in sorted(meta):
        val = str(meta[key])
        if "\n" in val or "=" in key or "\n" in key:
            raise ValueError(f"metadata entry {key!r} cannot be encoded")
        lines.append(f"{key}={val}\n")
    return "".join(lines).encode("utf-8")


def decode_meta(data):
    out = {}
    for line in data.decode("utf-8").splitlines():
        if line:
            key, _, val = line.partition("=")
            out[key] = val
    return out


def write_image(img, path):
    """Write the PPM and its '<path>.meta' sidecar."""
    with open(path, "wb") as fh:
        fh.write(encode_ppm(img))
    with open(str(path) + ".meta", "wb") as fh:
        fh.write(encode_meta(img.meta))


def read_image(path):
    with open(path, "rb") as fh:
        data = fh.read()
    meta = {}
    if os.path.exists(str(path) + ".meta"):
        with open(str(path) + ".meta", "rb") as fh:
            meta = decode_meta(fh.read())
    return decode_ppm(data, meta)
