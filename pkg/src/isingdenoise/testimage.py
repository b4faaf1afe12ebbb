"""Deterministic structured test image: large solid glyphs on white.

Stands in for real scanned binary images in the bundled experiment: a
filled disk, a filled rectangle, a thick ring and a filled triangle, all
scaled to the requested size with pure integer arithmetic, so the same
dimensions always produce the same pixels on every platform.
"""

from __future__ import annotations

import numpy as np

from .model import SpinImage

__all__ = ["generate_test_image"]


def generate_test_image(width: int, height: int) -> SpinImage:
    """Black glyphs (-1) on a white (+1) background, any size >= 1x1."""
    if width < 1 or height < 1:
        raise ValueError(f"image dimensions must be positive, got {width}x{height}")
    yy, xx = np.mgrid[0:height, 0:width]
    m = min(width, height)
    black = np.zeros((height, width), dtype=bool)

    # filled disk, upper left
    cx, cy, r = (30 * width) // 100, (30 * height) // 100, (17 * m) // 100
    black |= (xx - cx) ** 2 + (yy - cy) ** 2 <= r * r

    # filled rectangle, upper right
    x0, x1 = (55 * width) // 100, (88 * width) // 100
    y0, y1 = (12 * height) // 100, (44 * height) // 100
    black |= (xx >= x0) & (xx < x1) & (yy >= y0) & (yy < y1)

    # thick ring, lower left
    cx, cy = (32 * width) // 100, (72 * height) // 100
    r_out, r_in = (17 * m) // 100, (8 * m) // 100
    d2 = (xx - cx) ** 2 + (yy - cy) ** 2
    black |= (d2 >= r_in * r_in) & (d2 <= r_out * r_out)

    # filled triangle, lower right
    ax, ay = (58 * width) // 100, (90 * height) // 100
    bx, by = (92 * width) // 100, (90 * height) // 100
    tx, ty = (75 * width) // 100, (52 * height) // 100
    side_ab = (bx - ax) * (yy - ay) - (by - ay) * (xx - ax)
    side_bt = (tx - bx) * (yy - by) - (ty - by) * (xx - bx)
    side_ta = (ax - tx) * (yy - ty) - (ay - ty) * (xx - tx)
    black |= (side_ab <= 0) & (side_bt <= 0) & (side_ta <= 0)

    return SpinImage(width, height, np.where(black, -1, 1).astype(np.int8))
