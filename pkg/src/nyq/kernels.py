"""Hot numeric kernels with a numba fast path and a pure-numpy fallback.

Everything here operates on plain float64/complex128 arrays; the exact
symbolic layers convert their data before calling in.  The fast path is
selected at import time: numba is used when it imports cleanly and the
environment variable ``NYQ_NO_NUMBA`` is not set to 1/true/yes.  Both
paths compute the same quantities with the same wrap conventions, so
they are interchangeable up to floating round-off; ``benchmarks/``
compares their speed and ``tests/test_kernels.py`` their agreement.

Kernels:

- ``polyval_grid(coeffs, z)``: Horner evaluation of a polynomial with
  ascending complex coefficients on a grid of complex points.
- ``expsum_grid(freqs, coeffs, y)``: sum of ``c_k * exp(i * freq_k * y)``
  on a real grid.
- ``expsum_min_abs(freqs, coeffs, h, m, n)``: min of the modulus of the
  sum on the centered grid ``y_j = (j - m) * h``, j = 0..n-1.
- ``expsum_phase_scan(freqs, coeffs, h, m, n)``: walk the same grid
  accumulating the continuous argument; returns
  (min_abs, max_step, theta_first, theta_last, sum_y_theta) where
  sum_y_theta is the dot product of the grid with the unwrapped phase
  (used for the regression slope of the phase).
- ``torus_abs_range(exps, coeffs, res)``: min and max modulus of a
  multivariate trigonometric sum over the product grid with ``res[j]``
  equally spaced angles per axis.

Phase differences are wrapped into [-pi, pi) via ``(d + pi) % 2pi - pi``.
A sample landing exactly on zero yields min_abs 0.0; callers decide how
to fail.
"""

import math
import os

import numpy as np

_CHUNK = 1 << 16

_disabled = os.environ.get("NYQ_NO_NUMBA", "0").lower() in {"1", "true", "yes"}
if not _disabled:
    try:
        from numba import njit
    except ImportError:
        _disabled = True

NUMBA_ENABLED = not _disabled


def numba_enabled():
    """True when the jitted kernels are active in this process."""
    return NUMBA_ENABLED


# ---------------------------------------------------------------- numpy path


def polyval_grid_numpy(coeffs, z):
    acc = np.zeros_like(z, dtype=np.complex128)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def expsum_grid_numpy(freqs, coeffs, y):
    acc = np.zeros(y.shape, dtype=np.complex128)
    for lam, c in zip(freqs, coeffs):
        acc += c * np.exp(1j * lam * y)
    return acc


def expsum_min_abs_numpy(freqs, coeffs, h, m, n):
    best = math.inf
    for j0 in range(0, n, _CHUNK):
        j1 = min(j0 + _CHUNK, n)
        y = (np.arange(j0, j1, dtype=np.float64) - m) * h
        best = min(best, float(np.min(np.abs(expsum_grid_numpy(freqs, coeffs, y)))))
    return best


def expsum_phase_scan_numpy(freqs, coeffs, h, m, n):
    two_pi = 2.0 * math.pi
    min_abs = math.inf
    max_step = 0.0
    theta_first = 0.0
    theta_prev = 0.0
    angle_prev = 0.0
    sum_y_theta = 0.0
    for j0 in range(0, n, _CHUNK):
        j1 = min(j0 + _CHUNK, n)
        y = (np.arange(j0, j1, dtype=np.float64) - m) * h
        vals = expsum_grid_numpy(freqs, coeffs, y)
        min_abs = min(min_abs, float(np.min(np.abs(vals))))
        angles = np.angle(vals)
        if j0 == 0:
            theta_first = float(angles[0])
            lead = np.empty_like(angles)
            lead[0] = 0.0
            lead[1:] = angles[1:] - angles[:-1]
        else:
            lead = np.empty_like(angles)
            lead[0] = angles[0] - angle_prev
            lead[1:] = angles[1:] - angles[:-1]
        steps = (lead + math.pi) % two_pi - math.pi
        if j0 == 0:
            steps[0] = 0.0
            theta = theta_first + np.cumsum(steps)
        else:
            theta = theta_prev + np.cumsum(steps)
        if steps.size > (1 if j0 == 0 else 0):
            max_step = max(max_step, float(np.max(np.abs(steps[1 if j0 == 0 else 0:]))))
        sum_y_theta += float(np.dot(y, theta))
        theta_prev = float(theta[-1])
        angle_prev = float(angles[-1])
    return min_abs, max_step, theta_first, theta_prev, sum_y_theta


def torus_abs_range_numpy(exps, coeffs, res):
    nvars = len(res)
    grid = np.zeros(tuple(int(r) for r in res), dtype=np.complex128)
    for k in range(len(coeffs)):
        phase = np.zeros((), dtype=np.float64)
        for j in range(nvars):
            theta = 2.0 * math.pi * np.arange(res[j], dtype=np.float64) / res[j]
            shape = [1] * nvars
            shape[j] = int(res[j])
            phase = phase + (exps[k, j] * theta).reshape(shape)
        grid += coeffs[k] * np.exp(1j * phase)
    mods = np.abs(grid)
    return float(mods.min()), float(mods.max())


# ---------------------------------------------------------------- numba path

if NUMBA_ENABLED:

    @njit(cache=True)
    def _polyval_grid_nb(coeffs, z):
        out = np.empty(z.shape[0], dtype=np.complex128)
        nc = coeffs.shape[0]
        for i in range(z.shape[0]):
            acc = 0.0 + 0.0j
            for k in range(nc - 1, -1, -1):
                acc = acc * z[i] + coeffs[k]
            out[i] = acc
        return out

    @njit(cache=True)
    def _expsum_grid_nb(freqs, coeffs, y):
        out = np.empty(y.shape[0], dtype=np.complex128)
        for i in range(y.shape[0]):
            acc = 0.0 + 0.0j
            for k in range(freqs.shape[0]):
                ph = freqs[k] * y[i]
                acc += coeffs[k] * complex(math.cos(ph), math.sin(ph))
            out[i] = acc
        return out

    @njit(cache=True)
    def _expsum_min_abs_nb(freqs, coeffs, h, m, n):
        best = math.inf
        for j in range(n):
            yj = (j - m) * h
            acc = 0.0 + 0.0j
            for k in range(freqs.shape[0]):
                ph = freqs[k] * yj
                acc += coeffs[k] * complex(math.cos(ph), math.sin(ph))
            a = abs(acc)
            if a < best:
                best = a
        return best

    @njit(cache=True)
    def _expsum_phase_scan_nb(freqs, coeffs, h, m, n):
        two_pi = 2.0 * math.pi
        min_abs = math.inf
        max_step = 0.0
        theta = 0.0
        theta_first = 0.0
        angle_prev = 0.0
        sum_y_theta = 0.0
        for j in range(n):
            yj = (j - m) * h
            acc = 0.0 + 0.0j
            for k in range(freqs.shape[0]):
                ph = freqs[k] * yj
                acc += coeffs[k] * complex(math.cos(ph), math.sin(ph))
            a = abs(acc)
            if a < min_abs:
                min_abs = a
            ang = math.atan2(acc.imag, acc.real)
            if j == 0:
                theta = ang
                theta_first = ang
            else:
                d = (ang - angle_prev + math.pi) % two_pi - math.pi
                if abs(d) > max_step:
                    max_step = abs(d)
                theta += d
            angle_prev = ang
            sum_y_theta += yj * theta
        return min_abs, max_step, theta_first, theta, sum_y_theta

    @njit(cache=True)
    def _torus_abs_range_nb(exps, coeffs, res):
        nvars = res.shape[0]
        total = 1
        for j in range(nvars):
            total *= res[j]
        lo = math.inf
        hi = 0.0
        idx = np.zeros(nvars, dtype=np.int64)
        for _ in range(total):
            acc = 0.0 + 0.0j
            for k in range(coeffs.shape[0]):
                ph = 0.0
                for j in range(nvars):
                    ph += exps[k, j] * (2.0 * math.pi * idx[j] / res[j])
                acc += coeffs[k] * complex(math.cos(ph), math.sin(ph))
            a = abs(acc)
            if a < lo:
                lo = a
            if a > hi:
                hi = a
            j = nvars - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < res[j]:
                    break
                idx[j] = 0
                j -= 1
        return lo, hi

    def polyval_grid_numba(coeffs, z):
        return _polyval_grid_nb(
            np.ascontiguousarray(coeffs, dtype=np.complex128),
            np.ascontiguousarray(z, dtype=np.complex128),
        )

    def expsum_grid_numba(freqs, coeffs, y):
        return _expsum_grid_nb(
            np.ascontiguousarray(freqs, dtype=np.float64),
            np.ascontiguousarray(coeffs, dtype=np.complex128),
            np.ascontiguousarray(y, dtype=np.float64),
        )

    def expsum_min_abs_numba(freqs, coeffs, h, m, n):
        return _expsum_min_abs_nb(
            np.ascontiguousarray(freqs, dtype=np.float64),
            np.ascontiguousarray(coeffs, dtype=np.complex128),
            float(h), int(m), int(n),
        )

    def expsum_phase_scan_numba(freqs, coeffs, h, m, n):
        return _expsum_phase_scan_nb(
            np.ascontiguousarray(freqs, dtype=np.float64),
            np.ascontiguousarray(coeffs, dtype=np.complex128),
            float(h), int(m), int(n),
        )

    def torus_abs_range_numba(exps, coeffs, res):
        return _torus_abs_range_nb(
            np.ascontiguousarray(exps, dtype=np.int64),
            np.ascontiguousarray(coeffs, dtype=np.complex128),
            np.ascontiguousarray(res, dtype=np.int64),
        )

else:
    polyval_grid_numba = None
    expsum_grid_numba = None
    expsum_min_abs_numba = None
    expsum_phase_scan_numba = None
    torus_abs_range_numba = None


# ------------------------------------------------------------- dispatchers

if NUMBA_ENABLED:
    polyval_grid = polyval_grid_numba
    expsum_grid = expsum_grid_numba
    expsum_min_abs = expsum_min_abs_numba
    expsum_phase_scan = expsum_phase_scan_numba
    torus_abs_range = torus_abs_range_numba
else:
    polyval_grid = polyval_grid_numpy
    expsum_grid = expsum_grid_numpy
    expsum_min_abs = expsum_min_abs_numpy
    expsum_phase_scan = expsum_phase_scan_numpy
    torus_abs_range = torus_abs_range_numpy
