"""Numerical winding numbers and the mean motion of exponential sums.

Curves are closed paths t in [0, 1] -> C given as vectorized callables
(ndarray in, ndarray out) with curve(0) == curve(1).  ``winding_number``
samples adaptively, doubling the resolution until adjacent argument
steps are below pi/2, and reports the rounded total argument increment
together with a certificate (rounding residual below 0.01 and all
samples above the modulus floor).

An :class:`ExponentialPolynomial` is a finite sum of terms
c * exp(i * lambda * y).  Frequencies are stored as exact rational
coordinate vectors over a declared real basis (default (1.0,)), so
products merge equal frequencies exactly instead of splitting them by
float round-off.  ``average_winding`` estimates the mean motion
lim (arg f(T) - arg f(-T)) / 2T by unwrapping the phase over windows
[-T_k, T_k] on a geometric schedule and fitting the slope of the
unwrapped phase by least squares (the regression averages out the
bounded almost periodic remainder much faster than the raw endpoint
quotient; the limit is the same).  Sampling steps obey the Lipschitz
rule step * sum(|lambda_k| |c_k|) < min|f| / 2, which makes every
wrapped argument step valid.

Results are certified only when invertibility itself is certified:
either one coefficient dominates the sum of the others, or all
frequencies are commensurable so the function is periodic and a finite
grid bounds its minimum modulus rigorously.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    BasisMismatchError,
    DegenerateBoundaryError,
    NeedsRefinementError,
    PossiblyNotInvertibleError,
    UnresolvedError,
)
from . import kernels

TWO_PI = 2.0 * math.pi


def _wrap(d):
    return (d + math.pi) % TWO_PI - math.pi


def phase_unwrap(values) -> np.ndarray:
    """Continuous argument along a sequence of nonzero complex samples.

    The first entry is the principal argument of the first value; each
    subsequent entry adds the wrapped difference.  Raises on zero values
    and on ambiguous jumps of essentially pi.
    """
    v = np.asarray(values, dtype=np.complex128)
    if v.size == 0:
        return np.zeros(0)
    mods = np.abs(v)
    if np.any(mods == 0.0):
        raise DegenerateBoundaryError("phase unwrap hit a zero value")
    angles = np.angle(v)
    steps = _wrap(np.diff(angles))
    if steps.size and np.max(np.abs(steps)) >= math.pi - 1e-9:
        raise NeedsRefinementError(
            "adjacent samples differ by about pi; refine the sampling"
        )
    out = np.empty(v.size)
    out[0] = angles[0]
    if steps.size:
        out[1:] = angles[0] + np.cumsum(steps)
    return out


@dataclass(frozen=True)
class WindingResult:
    value: object  # int for circle windings, float for mean motion
    min_modulus: float
    samples_used: int
    certified: bool

    def __post_init__(self):
        if self.certified and not self.min_modulus > 0:
            raise ValueError("certified results need a positive minimum modulus")


def _env_max_samples(default):
    raw = os.environ.get("NYQ_MAX_SAMPLES", "")
    if raw:
        try:
            return max(int(raw), 16)
        except ValueError:
            pass
    return default


@dataclass(frozen=True)
class WindingConfig:
    initial_samples: int = 1024
    max_samples: int = field(default_factory=lambda: _env_max_samples(1 << 20))
    min_modulus_floor: float = 1e-9


def winding_number(curve, cfg: WindingConfig | None = None) -> WindingResult:
    """Integer winding of a closed curve around the origin.

    Doubles the sample count until every adjacent argument step is below
    pi/2 (or the sample budget is reached), then rounds the total
    unwrapped increment to the nearest integer.
    """
    cfg = cfg or WindingConfig()
    n = max(cfg.initial_samples, 8)
    while True:
        t = np.linspace(0.0, 1.0, n + 1)
        v = np.asarray(curve(t), dtype=np.complex128)
        closure = abs(v[0] - v[-1])
        if closure > 1e-12 * max(1.0, abs(v[0])):
            raise ValueError("curve evaluator is not closed: curve(0) != curve(1)")
        mods = np.abs(v)
        min_mod = float(mods.min())
        if min_mod < cfg.min_modulus_floor:
            raise DegenerateBoundaryError(
                f"curve sample modulus {min_mod:.3e} below floor "
                f"{cfg.min_modulus_floor:.3e}"
            )
        steps = _wrap(np.diff(np.angle(v)))
        max_step = float(np.max(np.abs(steps)))
        if max_step < math.pi / 2:
            break
        if 2 * n > cfg.max_samples:
            if max_step >= math.pi - 1e-9:
                raise UnresolvedError(
                    "sample budget exhausted with ambiguous pi jumps remaining",
                    last_estimate=float(steps.sum() / TWO_PI),
                )
            break
        n *= 2
    total = float(steps.sum())
    w = total / TWO_PI
    value = int(round(w))
    residual = abs(w - value)
    certified = residual < 0.01 and min_mod >= cfg.min_modulus_floor
    return WindingResult(
        value=value, min_modulus=min_mod, samples_used=n + 1, certified=certified
    )


# ------------------------------------------------------------ curve helpers


def circle_curve(f, radius: float = 1.0):
    """Closed curve t -> f(radius * e^{2 pi i t}) for a rational function."""
    num = f.num.to_complex_array()
    den = f.den.to_complex_array()

    def evaluate(t):
        z = radius * np.exp(2j * math.pi * np.mod(np.asarray(t, dtype=np.float64), 1.0))
        return kernels.polyval_grid(num, z) / kernels.polyval_grid(den, z)

    return evaluate


def product_curve(*curves):
    def evaluate(t):
        acc = None
        for c in curves:
            v = np.asarray(c(t), dtype=np.complex128)
            acc = v if acc is None else acc * v
        return acc

    return evaluate


def reparametrize(curve, phi):
    """Precompose a curve with a strictly increasing map of [0, 1] onto itself."""

    def evaluate(t):
        return curve(phi(np.asarray(t, dtype=np.float64)))

    return evaluate


# --------------------------------------------------- exponential polynomials


def _coerce_coords(coords, width=None):
    if isinstance(coords, (int, Fraction)):
        coords = (coords,)
    tup = tuple(Fraction(q) for q in coords)
    if width is not None and len(tup) != width:
        raise BasisMismatchError(
            f"coordinate vector of length {len(tup)} does not match basis width {width}"
        )
    return tup


class ExponentialPolynomial:
    """Finite sum of c * exp(i * lambda * y) with exact frequency bookkeeping.

    ``basis`` is a tuple of real frequency-basis values; the frequency of
    a term with rational coordinates q is sum(q_j * basis_j), recomputed
    from the exact coordinates on demand.  Coefficients are complex
    floats.  Terms with coefficient exactly zero are dropped.
    """

    __slots__ = ("basis", "terms")

    def __init__(self, terms=None, basis=(1.0,)):
        basis = tuple(float(b) for b in basis)
        if not basis:
            raise BasisMismatchError("frequency basis must be nonempty")
        clean = {}
        for coords, coeff in (terms or {}).items():
            coords = _coerce_coords(coords, len(basis))
            coeff = complex(coeff)
            if coeff != 0:
                clean[coords] = clean.get(coords, 0.0 + 0.0j) + coeff
        clean = {c: v for c, v in clean.items() if v != 0}
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ExponentialPolynomial is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(basis=(1.0,)) -> "ExponentialPolynomial":
        return ExponentialPolynomial({}, basis)

    @staticmethod
    def constant(c, basis=(1.0,)) -> "ExponentialPolynomial":
        coords = tuple(Fraction(0) for _ in basis)
        return ExponentialPolynomial({coords: complex(c)}, basis)

    @staticmethod
    def one(basis=(1.0,)) -> "ExponentialPolynomial":
        return ExponentialPolynomial.constant(1.0, basis)

    @staticmethod
    def term(coeff, coords, basis=(1.0,)) -> "ExponentialPolynomial":
        return ExponentialPolynomial({_coerce_coords(coords, len(basis)): coeff}, basis)

    # -- structure --------------------------------------------------------

    def frequency(self, coords) -> float:
        return float(sum(float(q) * b for q, b in zip(coords, self.basis)))

    def spectrum(self):
        """Sorted list of (frequency, coords, coefficient)."""
        items = [(self.frequency(c), c, v) for c, v in self.terms.items()]
        items.sort(key=lambda t: t[0])
        return items

    def frequencies(self):
        return [f for f, _, _ in self.spectrum()]

    def is_zero(self) -> bool:
        return not self.terms

    def n_terms(self) -> int:
        return len(self.terms)

    def wiener_norm(self) -> float:
        return float(sum(abs(v) for v in self.terms.values()))

    def lipschitz_bound(self) -> float:
        return float(
            sum(abs(self.frequency(c)) * abs(v) for c, v in self.terms.items())
        )

    def _check_basis(self, other):
        if self.basis != other.basis:
            raise BasisMismatchError(
                f"bases {self.basis} and {other.basis} are incompatible"
            )

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, ExponentialPolynomial):
            other = ExponentialPolynomial.constant(other, self.basis)
        self._check_basis(other)
        out = dict(self.terms)
        for c, v in other.terms.items():
            out[c] = out.get(c, 0.0 + 0.0j) + v
        return ExponentialPolynomial(out, self.basis)

    __radd__ = __add__

    def __neg__(self):
        return ExponentialPolynomial(
            {c: -v for c, v in self.terms.items()}, self.basis
        )

    def __sub__(self, other):
        if not isinstance(other, ExponentialPolynomial):
            other = ExponentialPolynomial.constant(other, self.basis)
        return self + (-other)

    def __rsub__(self, other):
        return ExponentialPolynomial.constant(other, self.basis) + (-self)

    def __mul__(self, other):
        if not isinstance(other, ExponentialPolynomial):
            return ExponentialPolynomial(
                {c: v * complex(other) for c, v in self.terms.items()}, self.basis
            )
        self._check_basis(other)
        out = {}
        for ca, va in self.terms.items():
            for cb, vb in other.terms.items():
                key = tuple(a + b for a, b in zip(ca, cb))
                out[key] = out.get(key, 0.0 + 0.0j) + va * vb
        return ExponentialPolynomial(out, self.basis)

    __rmul__ = __mul__

    def approx_equal(self, other, tol: float = 1e-9) -> bool:
        if not isinstance(other, ExponentialPolynomial) or self.basis != other.basis:
            return False
        keys = set(self.terms) | set(other.terms)
        scale = max(1.0, self.wiener_norm(), other.wiener_norm())
        return all(
            abs(self.terms.get(k, 0) - other.terms.get(k, 0)) <= tol * scale
            for k in keys
        )

    # -- numerics -------------------------------------------------------------

    def as_arrays(self):
        freqs = np.array(
            [self.frequency(c) for c in self.terms], dtype=np.float64
        )
        coeffs = np.array(list(self.terms.values()), dtype=np.complex128)
        return freqs, coeffs

    def evaluate(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=np.float64)
        if not self.terms:
            return np.zeros(y.shape, dtype=np.complex128)
        freqs, coeffs = self.as_arrays()
        return kernels.expsum_grid(freqs, coeffs, y)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for freq, _, coeff in self.spectrum():
            bits.append(f"({coeff:g})*e({freq:g})")
        return " + ".join(bits)

    def __repr__(self):
        return f"ExponentialPolynomial({self})"


def commensurable_structure(f: ExponentialPolynomial):
    """If all frequencies are rational multiples of one basis entry,
    return (beta, [rational multipliers]); otherwise None."""
    used = set()
    for coords in f.terms:
        for j, q in enumerate(coords):
            if q != 0:
                used.add(j)
    if len(used) > 1:
        return None
    j0 = used.pop() if used else 0
    beta = f.basis[j0]
    return beta, [coords[j0] for coords in f.terms]


def dominance_winding(f: ExponentialPolynomial):
    """Frequency of a strictly dominant term, or None.

    When |c_0| exceeds the sum of all other coefficient moduli, f equals
    c_0 e_{lambda_0} (1 + g) with sup|g| < 1, so the mean motion is
    exactly lambda_0.
    """
    if not f.terms:
        return None
    items = list(f.terms.items())
    mods = [abs(v) for _, v in items]
    k = max(range(len(items)), key=lambda i: mods[i])
    if mods[k] > sum(mods) - mods[k]:
        return f.frequency(items[k][0])
    return None


def dominance_gap(f: ExponentialPolynomial) -> float:
    if not f.terms:
        return 0.0
    mods = sorted((abs(v) for v in f.terms.values()), reverse=True)
    return mods[0] - sum(mods[1:])


_PERIODIC_GRID_CAP = 1 << 22
_HEURISTIC_BUDGET = 1 << 21


def _periodic_min_modulus(f: ExponentialPolynomial, beta: float, multipliers):
    """Certified lower bound for a periodic exponential sum via grid plus
    Lipschitz bound.  Returns (bound, certified)."""
    freqs, coeffs = f.as_arrays()
    lips = f.lipschitz_bound()
    nonzero = [q for q in multipliers if q != 0]
    if not nonzero:
        val = abs(sum(f.terms.values()))
        return val, True
    den_lcm = 1
    for q in nonzero:
        den_lcm = den_lcm * q.denominator // math.gcd(den_lcm, q.denominator)
    num_gcd = 0
    for q in nonzero:
        num_gcd = math.gcd(num_gcd, abs(q.numerator * (den_lcm // q.denominator)))
    fundamental = abs(beta) * num_gcd / den_lcm
    period = TWO_PI / fundamental
    n = 4096
    while True:
        h = period / n
        m = kernels.expsum_min_abs(freqs, coeffs, h, 0, n)
        if lips * h < m / 2:
            return m / 2, True
        if 2 * n > _PERIODIC_GRID_CAP:
            return max(m - lips * h / 2, 0.0), False
        n *= 2


def certified_min_modulus(f: ExponentialPolynomial):
    """Lower bound on inf_y |f(y)| with a certification flag.

    Certified via coefficient dominance or, for commensurable
    frequencies, via a periodic grid with a Lipschitz margin.  For
    incommensurable sums the bound is half the minimum observed over a
    wide sampling window and is flagged heuristic.
    """
    if not f.terms:
        return 0.0, True
    gap = dominance_gap(f)
    best = (gap, True) if gap > 0 else None
    comm = commensurable_structure(f)
    if comm is not None:
        bound, certified = _periodic_min_modulus(f, *comm)
        if certified and (best is None or bound > best[0]):
            best = (bound, True)
        elif best is None:
            best = (bound, False)
    if best is not None:
        return best
    # heuristic window scan for incommensurable, non-dominant sums
    freqs, coeffs = f.as_arrays()
    distinct = np.unique(freqs)
    gaps = np.diff(distinct)
    mean_gap = float(np.mean(gaps)) if gaps.size else 1.0
    window = min(1e6 / max(mean_gap, 1e-9), 1e8)
    max_freq = float(np.max(np.abs(freqs))) or 1.0
    h = 0.5 / max_freq
    n = int(min(_HEURISTIC_BUDGET, max(2.0 * window / h, 4096)))
    m = kernels.expsum_min_abs(freqs, coeffs, h, n // 2, n)
    return m / 2, False


@dataclass(frozen=True)
class MeanMotionConfig:
    T0: float = 64.0
    growth_factor: float = 4.0
    tol: float = 1e-4
    max_doublings: int = 10
    min_modulus_floor: float = 1e-12
    max_window_samples: int = 1 << 26


def average_winding(
    f: ExponentialPolynomial, cfg: MeanMotionConfig | None = None
) -> WindingResult:
    """Mean motion of an exponential sum.

    Single-frequency inputs return exactly their frequency.  Otherwise
    the phase is unwrapped over windows [-T_k, T_k] with
    T_k = T0 * growth_factor^k and the estimate is the least-squares
    slope of the unwrapped phase; iteration stops when two successive
    estimates differ by less than tol.
    """
    cfg = cfg or MeanMotionConfig()
    if f.is_zero():
        raise PossiblyNotInvertibleError("zero exponential polynomial")
    if f.n_terms() == 1:
        ((coords, coeff),) = f.terms.items()
        return WindingResult(
            value=f.frequency(coords),
            min_modulus=abs(coeff),
            samples_used=0,
            certified=True,
        )

    freqs, coeffs = f.as_arrays()
    lips = f.lipschitz_bound()
    certified_inv = dominance_winding(f) is not None
    if not certified_inv:
        comm = commensurable_structure(f)
        if comm is not None:
            certified_inv = _periodic_min_modulus(f, *comm)[1]

    coarse = kernels.expsum_min_abs(freqs, coeffs, 2 * cfg.T0 / 4096, 2048, 4097)
    if coarse < cfg.min_modulus_floor:
        raise PossiblyNotInvertibleError(
            f"samples reached modulus {coarse:.3e}; the sum may vanish on the line"
        )
    m_cur = coarse
    min_seen = coarse
    total_samples = 0
    estimates = []
    k = 0
    while k <= cfg.max_doublings:
        T = cfg.T0 * cfg.growth_factor ** k
        retries = 0
        while True:
            h = 0.45 * m_cur / lips
            half = max(int(math.ceil(T / h)), 1)
            n = 2 * half + 1
            if n > cfg.max_window_samples:
                raise UnresolvedError(
                    f"mean motion window needs {n} samples, over the cap",
                    last_estimate=estimates[-1] if estimates else None,
                )
            min_abs, max_step, _, _, sum_y_theta = kernels.expsum_phase_scan(
                freqs, coeffs, h, half, n
            )
            total_samples += n
            min_seen = min(min_seen, min_abs)
            if min_abs < cfg.min_modulus_floor:
                raise PossiblyNotInvertibleError(
                    f"samples reached modulus {min_abs:.3e}; "
                    "the sum may vanish on the line"
                )
            if min_abs < m_cur / 2 or max_step >= math.pi / 2:
                m_cur = min(min_abs, m_cur / 2)
                retries += 1
                if retries > 6:
                    raise UnresolvedError(
                        "could not stabilize the sampling step",
                        last_estimate=estimates[-1] if estimates else None,
                    )
                continue
            break
        sum_y2 = h * h * (half * (half + 1) * (2 * half + 1) / 3.0)
        estimates.append(sum_y_theta / sum_y2)
        if k >= 2 and abs(estimates[-1] - estimates[-2]) < cfg.tol:
            return WindingResult(
                value=float(estimates[-1]),
                min_modulus=min_seen,
                samples_used=total_samples,
                certified=certified_inv,
            )
        k += 1
    raise UnresolvedError(
        "mean motion estimates did not converge within the doubling budget",
        last_estimate=estimates[-1] if estimates else None,
    )
