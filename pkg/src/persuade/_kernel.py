"""Hot-kernel selection: the simplex pivot loop and the hull sweep.

The compiled extension (persuade._core) is preferred when importable; set
``PERSUADE_PURE_PYTHON=1`` to force the numpy/python fallbacks (used by the
benchmark and the kernel-agreement tests)."""

from __future__ import annotations

import os

import numpy as np

from . import _simplex


def _hull_py(x: np.ndarray, y: np.ndarray, out: np.ndarray) -> int:
    """Python fallback with the same contract as persuade._core.lower_hull."""
    m = 0
    for i in range(len(x)):
        if m > 0 and x[out[m - 1]] == x[i]:
            continue
        while m >= 2:
            ox, oy = x[out[m - 2]], y[out[m - 2]]
            ax, ay = x[out[m - 1]], y[out[m - 1]]
            c = (ax - ox) * (y[i] - oy) - (ay - oy) * (x[i] - ox)
            scale = abs(ax - ox) * abs(y[i] - oy) + abs(ay - oy) * abs(x[i] - ox) + 1e-300
            if c <= 1e-12 * scale:
                m -= 1
            else:
                break
        out[m] = i
        m += 1
    return m


if os.environ.get("PERSUADE_PURE_PYTHON") == "1":
    PIVOT_KERNEL = _simplex.pivot_loop
    HULL_KERNEL = _hull_py
    KERNEL_NAME = "python"
else:
    try:
        from . import _core

        PIVOT_KERNEL = _core.pivot_loop
        HULL_KERNEL = _core.lower_hull
        KERNEL_NAME = "compiled"
    except ImportError:
        PIVOT_KERNEL = _simplex.pivot_loop
        HULL_KERNEL = _hull_py
        KERNEL_NAME = "python"

# backward-compatible name used by the LP driver
KERNEL = PIVOT_KERNEL
