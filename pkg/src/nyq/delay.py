"""Delay systems: sums of delayed rational transforms and delayed impulses.

A :class:`CDElement` represents F(s) = sum_k R_k(s) e^{-s t_k}
+ sum_j c_j e^{-s t_j} with exact rational delays t >= 0, strictly
proper exact-coefficient rational parts R_k and complex impulse
coefficients c_j.  The class is closed under addition and
multiplication: products of rational parts stay rational, impulse times
rational stays rational (the float coefficient is absorbed exactly into
the rational coefficients), delays add exactly.

``cd_membership`` decides whether the delay-rational part is the
transform of an integrable function on (0, inf): it extracts partial
fraction data at every pole with nonnegative real part and requires the
combined coefficient of every non-decaying mode t^i e^{pt} beyond the
last delay to vanish.  This is how expressions like
(1 - e * e^{-s})/(s - 1) are recognized as stable even though each
summand alone is not.

``cd_index`` computes the invertibility data of F on the imaginary
axis: the almost periodic impulse part must be bounded away from zero
(its mean motion is the real index component) and the closed curve
y -> 1 + F_AP(iy)^{-1} * fa_hat(iy), compactified by y = tan(theta),
contributes the integer component.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import MembershipError
from .indices import (
    Certificate,
    IndexOutcome,
    IndexValue,
    degenerate_outcome,
    not_invertible_outcome,
)
from .polynomials import GaussianRational, Poly
from .rational import RationalFunction
from .winding import (
    ExponentialPolynomial,
    MeanMotionConfig,
    WindingConfig,
    average_winding,
    certified_min_modulus,
    winding_number,
)
from .errors import (
    DegenerateBoundaryError,
    PossiblyNotInvertibleError,
    UnresolvedError,
)
from . import kernels


def exact_from_complex(c: complex) -> GaussianRational:
    """Exact Gaussian rational equal to the given double."""
    c = complex(c)
    return GaussianRational(Fraction(c.real), Fraction(c.imag))


def _as_delay(t) -> Fraction:
    t = Fraction(t)
    if t < 0:
        raise MembershipError("delays must be nonnegative")
    return t


class CDElement:
    """Finite delay-rational plus delayed-impulse representation."""

    __slots__ = ("delay_rational", "atomic")

    def __init__(self, delay_rational=(), atomic=()):
        rat = {}
        for t, R in delay_rational:
            t = _as_delay(t)
            R = RationalFunction.coerce(R)
            if R.is_zero():
                continue
            if R.num.degree >= R.den.degree:
                raise ValueError("delay-rational parts must be strictly proper")
            rat[t] = rat[t] + R if t in rat else R
        rat = {t: R for t, R in rat.items() if not R.is_zero()}
        atoms = {}
        for t, c in atomic:
            t = _as_delay(t)
            c = complex(c)
            if c != 0:
                atoms[t] = atoms.get(t, 0.0 + 0.0j) + c
        atoms = {t: c for t, c in atoms.items() if c != 0}
        object.__setattr__(
            self, "delay_rational", tuple(sorted(rat.items(), key=lambda kv: kv[0]))
        )
        object.__setattr__(
            self, "atomic", tuple(sorted(atoms.items(), key=lambda kv: kv[0]))
        )

    def __setattr__(self, name, value):
        raise AttributeError("CDElement is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "CDElement":
        return CDElement()

    @staticmethod
    def one() -> "CDElement":
        return CDElement(atomic=[(0, 1.0)])

    @staticmethod
    def impulse(delay, coeff=1.0) -> "CDElement":
        return CDElement(atomic=[(delay, coeff)])

    @staticmethod
    def from_rational(R, delay=0) -> "CDElement":
        """Split a proper rational function into impulse + strictly proper."""
        R = RationalFunction.coerce(R)
        if R.num.degree > R.den.degree:
            raise MembershipError("improper rational functions are not transforms here")
        q, r = divmod(R.num, R.den)
        parts = []
        atoms = []
        if not q.is_zero():
            atoms.append((delay, complex(q.constant_value())))
        if not r.is_zero():
            parts.append((delay, RationalFunction(r, R.den)))
        return CDElement(parts, atoms)

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.delay_rational and not self.atomic

    def __eq__(self, other):
        if not isinstance(other, CDElement):
            return NotImplemented
        return (
            self.delay_rational == other.delay_rational and self.atomic == other.atomic
        )

    def approx_equal(self, other, tol: float = 1e-9) -> bool:
        if not isinstance(other, CDElement):
            return False
        diff = self - other
        scale = max(1.0, self._magnitude(), other._magnitude())
        return diff._magnitude() <= tol * scale

    def _magnitude(self) -> float:
        m = 0.0
        for _, c in self.atomic:
            m = max(m, abs(c))
        for _, R in self.delay_rational:
            for coeff in R.num.coeffs:
                m = max(m, abs(complex(coeff)))
        return m

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, CDElement):
            other = CDElement(atomic=[(0, other)])
        return CDElement(
            list(self.delay_rational) + list(other.delay_rational),
            list(self.atomic) + list(other.atomic),
        )

    __radd__ = __add__

    def __neg__(self):
        return CDElement(
            [(t, -R) for t, R in self.delay_rational],
            [(t, -c) for t, c in self.atomic],
        )

    def __sub__(self, other):
        if not isinstance(other, CDElement):
            other = CDElement(atomic=[(0, other)])
        return self + (-other)

    def __rsub__(self, other):
        return CDElement(atomic=[(0, other)]) + (-self)

    def __mul__(self, other):
        if not isinstance(other, CDElement):
            other = CDElement(atomic=[(0, other)])
        rat = []
        atoms = []
        for ta, ca in self.atomic:
            for tb, cb in other.atomic:
                atoms.append((ta + tb, ca * cb))
        for ta, ca in self.atomic:
            for tb, Rb in other.delay_rational:
                rat.append((ta + tb, Rb * exact_from_complex(ca)))
        for ta, Ra in self.delay_rational:
            for tb, cb in other.atomic:
                rat.append((ta + tb, Ra * exact_from_complex(cb)))
        for ta, Ra in self.delay_rational:
            for tb, Rb in other.delay_rational:
                rat.append((ta + tb, Ra * Rb))
        return CDElement(rat, atoms)

    __rmul__ = __mul__

    # -- evaluation ---------------------------------------------------------------

    def evaluate(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=np.complex128)
        out = np.zeros(s.shape, dtype=np.complex128)
        for t, c in self.atomic:
            out += c * np.exp(-s * float(t))
        for t, R in self.delay_rational:
            out += R.eval_grid(s) * np.exp(-s * float(t))
        return out

    def atomic_part(self) -> ExponentialPolynomial:
        """The impulse part as a function of y on the axis: frequencies -t_k."""
        return ExponentialPolynomial(
            {(-t,): c for t, c in self.atomic}, basis=(1.0,)
        )

    def rational_part_values(self, y: np.ndarray) -> np.ndarray:
        s = 1j * np.asarray(y, dtype=np.float64)
        out = np.zeros(s.shape, dtype=np.complex128)
        for t, R in self.delay_rational:
            out += R.eval_grid(s) * np.exp(-s * float(t))
        return out

    def __str__(self):
        bits = [f"({c:g})*delta({t})" for t, c in self.atomic]
        bits += [f"[{R}]*delta({t})" for t, R in self.delay_rational]
        return " + ".join(bits) if bits else "0"

    def __repr__(self):
        return f"CDElement({self})"


# ------------------------------------------------------------ partial fractions


def _synthetic_quotient(coeffs: np.ndarray, p: complex) -> np.ndarray:
    """Quotient of the polynomial by (s - p), ascending coefficients."""
    n = coeffs.shape[0]
    if n <= 1:
        return np.zeros(0, dtype=np.complex128)
    q = np.empty(n - 1, dtype=np.complex128)
    acc = coeffs[n - 1]
    for i in range(n - 2, -1, -1):
        q[i] = acc
        acc = coeffs[i] + acc * p
    return q


def _poly_value(coeffs: np.ndarray, p: complex) -> complex:
    acc = 0.0 + 0.0j
    for c in coeffs[::-1]:
        acc = acc * p + c
    return acc


def partial_fraction_block(R: RationalFunction, p: complex, mult: int) -> np.ndarray:
    """Coefficients a_j of sum_j a_j/(s-p)^j, j = 1..mult, at a pole p.

    Computed from the Taylor expansion of num/(den/(s-p)^mult) around p;
    a_j is the Taylor coefficient of order mult - j.
    """
    num = R.num.to_complex_array()
    den = R.den.to_complex_array()
    for _ in range(mult):
        den = _synthetic_quotient(den, p)
    num_taylor = _taylor_series(num, p, mult)
    den_taylor = _taylor_series(den, p, mult)
    if abs(den_taylor[0]) == 0:
        raise ZeroDivisionError("pole multiplicity mismatch in partial fractions")
    series = np.zeros(mult, dtype=np.complex128)
    for k in range(mult):
        acc = num_taylor[k]
        for i in range(1, k + 1):
            acc -= den_taylor[i] * series[k - i]
        series[k] = acc / den_taylor[0]
    return series[::-1]  # a_j = series[mult - j]


def _taylor_series(coeffs: np.ndarray, p: complex, order: int) -> np.ndarray:
    out = np.zeros(order, dtype=np.complex128)
    work = coeffs.astype(np.complex128).copy()
    for k in range(order):
        if work.shape[0] == 0:
            break
        out[k] = _poly_value(work, p)
        work = _synthetic_quotient(work, p)
    return out


def _cluster_poles(pole_lists, tol=1e-7):
    """Group numerically equal poles across terms.

    pole_lists: list of (term_index, pole, multiplicity).  Returns a list
    of (representative pole, [(term_index, mult), ...]).
    """
    clusters = []
    for term_idx, p, mult in pole_lists:
        for rep, members in clusters:
            if abs(p - rep) < tol * max(1.0, abs(rep)):
                members.append((term_idx, p, mult))
                break
        else:
            clusters.append((p, [(term_idx, p, mult)]))
    return clusters


def cd_membership(F: CDElement, tol: float = 1e-9) -> bool:
    """True when F is the transform of a stable (integrable) signal.

    Delays are nonnegative by construction.  For every pole with real
    part >= 0 of any rational part, the inverse transform beyond the last
    delay is sum_i S_i t^i e^{pt}; membership requires every S_i to
    vanish (within a relative tolerance, since pole locations are
    numerical).
    """
    if not F.delay_rational:
        return True
    pole_data = []
    for idx, (t, R) in enumerate(F.delay_rational):
        for p, mult in R.poles():
            if p.real >= -tol:
                pole_data.append((idx, p, mult))
    if not pole_data:
        return True
    terms = list(F.delay_rational)
    for rep, members in _cluster_poles(pole_data):
        max_mult = max(m for _, _, m in members)
        # combined coefficient of t^i e^{rep t} for i = 0..max_mult-1
        sums = np.zeros(max_mult, dtype=np.complex128)
        scale = 0.0
        for idx, p, mult in members:
            t_k, R = terms[idx]
            tk = float(t_k)
            a = partial_fraction_block(R, p, mult)  # a[j-1] multiplies 1/(s-p)^j
            shift = np.exp(-rep * tk)
            for j in range(1, mult + 1):
                aj = a[j - 1] / math.factorial(j - 1)
                for i in range(j):
                    contrib = (
                        aj * math.comb(j - 1, i) * (-tk) ** (j - 1 - i) * shift
                    )
                    sums[i] += contrib
                    scale = max(scale, abs(contrib))
        if scale == 0.0:
            continue
        if np.max(np.abs(sums)) > 1e-7 * scale:
            return False
    return True


# ---------------------------------------------------------------- axis index


def compactified_axis(t: np.ndarray) -> np.ndarray:
    """Map t in [0, 1] to y = tan(pi (t - 1/2)), the full real line."""
    return np.tan(math.pi * (np.asarray(t, dtype=np.float64) - 0.5))


def cd_axis_curve(F: CDElement, fap_arrays):
    """Closed curve t -> 1 + F_AP(iy)^{-1} fa_hat(iy) with y = tan scaling.

    The rational part vanishes at infinity (strict properness), so the
    endpoints t = 0, 1 take the exact value 1.
    """
    freqs, coeffs = fap_arrays

    def evaluate(t):
        t = np.asarray(t, dtype=np.float64)
        inner = (t > 0.0) & (t < 1.0)
        out = np.ones(t.shape, dtype=np.complex128)
        if np.any(inner):
            y = compactified_axis(t[inner])
            fap = kernels.expsum_grid(freqs, coeffs, y)
            out[inner] = 1.0 + F.rational_part_values(y) / fap
        return out

    return evaluate


def cd_index(
    F: CDElement,
    mm_cfg: MeanMotionConfig | None = None,
    wind_cfg: WindingConfig | None = None,
) -> IndexOutcome:
    """Pair index (mean motion of the impulse part, axis winding of
    1 + F_AP^{-1} fa_hat) together with invertibility on the axis."""
    if not F.atomic:
        return not_invertible_outcome(
            "impulse part is zero, so F cannot be inverted in the delay algebra"
        )
    mm_cfg = mm_cfg or MeanMotionConfig()
    fap = F.atomic_part()
    bound, bound_certified = certified_min_modulus(fap)
    if bound <= 0:
        if bound_certified:
            return not_invertible_outcome(
                "impulse part is not bounded away from zero", certified=True
            )
        return degenerate_outcome("impulse part minimum modulus could not be certified")
    try:
        mm = average_winding(fap, mm_cfg)
    except (PossiblyNotInvertibleError, DegenerateBoundaryError) as exc:
        return degenerate_outcome(f"mean motion failed: {exc}")
    except UnresolvedError as exc:
        return degenerate_outcome(f"mean motion unresolved: {exc}")

    curve = cd_axis_curve(F, fap.as_arrays())
    try:
        wind = winding_number(curve, wind_cfg)
    except (DegenerateBoundaryError, UnresolvedError) as exc:
        return degenerate_outcome(f"axis curve degenerate: {exc}")

    min_modulus = bound * wind.min_modulus
    certified = bound_certified and mm.certified and wind.certified
    return IndexOutcome(
        invertible_in_S=True,
        index=IndexValue.pair(float(mm.value), int(wind.value), tol=mm_cfg.tol),
        certificate=Certificate(min_modulus=min_modulus, certified=certified),
    )


def cd_axis_min_ratio(num: CDElement, dens, samples: int = 4097) -> float:
    """Minimum of |num(iy)| / prod |den(iy)| over a compactified axis grid."""
    t = np.linspace(0.0, 1.0, samples + 2)[1:-1]
    y = compactified_axis(t)
    s = 1j * y
    vals = np.abs(num.evaluate(s))
    for d in dens:
        vals = vals / np.abs(d.evaluate(s))
    return float(np.min(vals))


def cd_l1_bound(R: RationalFunction):
    """Upper bound on the L1 norm of the inverse transform of a strictly
    proper rational with simple strictly stable poles; None when the
    shape is unsupported."""
    try:
        poles = R.poles()
    except Exception:
        return None
    total = 0.0
    for p, mult in poles:
        if mult != 1 or p.real >= -1e-12:
            return None
        a = partial_fraction_block(R, p, 1)[0]
        total += abs(a) / abs(p.real)
    return total
