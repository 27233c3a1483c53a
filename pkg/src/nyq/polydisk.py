"""Multivariate polynomials on the polydisk and their diagonal index.

A :class:`MultiPoly` maps exponent vectors to exact Gaussian-rational
coefficients.  The invertibility test on the closed polydisk follows the
product structure of the boundary data: the modulus on the torus must be
certifiably positive (grid scan plus a Lipschitz margin, capped at 1e6
grid points) and the one-variable diagonal restriction z -> f(z, ..., z)
must have no zeros on the unit circle; the index is the winding of that
diagonal, computed exactly from its roots and cross-checked numerically.

Ratios of multivariate polynomials are supported when the denominator is
certified nonvanishing on the closed polydisk, either by coefficient
dominance (constant term exceeding the sum of the rest) or by its own
invertibility data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateBoundaryError, MembershipError
from .indices import (
    Certificate,
    IndexOutcome,
    IndexValue,
    degenerate_outcome,
    not_invertible_outcome,
)
from .polynomials import GaussianRational, Poly, QQI_ZERO
from .rational import RationalFunction, classify_circle_roots
from .winding import WindingConfig, circle_curve, winding_number
from .errors import UnresolvedError
from . import kernels

TORUS_POINT_CAP = 1_000_000


class MultiPoly:
    """Polynomial in n variables with exact coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        clean = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError("exponent vector length mismatch")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponents are not polynomial")
            coeff = GaussianRational.coerce(coeff)
            if not coeff.is_zero():
                acc = clean.get(exps)
                coeff = coeff if acc is None else acc + coeff
                if coeff.is_zero():
                    clean.pop(exps, None)
                else:
                    clean[exps] = coeff
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    @staticmethod
    def constant(c, nvars: int = 1) -> "MultiPoly":
        return MultiPoly(nvars, {tuple([0] * nvars): c})

    @staticmethod
    def variable(i: int, nvars: int) -> "MultiPoly":
        exps = [0] * nvars
        exps[i] = 1
        return MultiPoly(nvars, {tuple(exps): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.nvars)
        self._check(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, QQI_ZERO) + c
        return MultiPoly(self.nvars, merged)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.nvars)
        return self + (-other)

    def __rsub__(self, other):
        return MultiPoly.constant(other, self.nvars) + (-self)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(other, self.nvars)
        self._check(other)
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                acc = out.get(key, QQI_ZERO) + ca * cb
                out[key] = acc
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def diagonal(self) -> Poly:
        """One-variable restriction z -> f(z, ..., z)."""
        if not self.terms:
            return Poly.zero()
        top = max(sum(e) for e in self.terms)
        coeffs = [QQI_ZERO] * (top + 1)
        for e, c in self.terms.items():
            coeffs[sum(e)] = coeffs[sum(e)] + c
        return Poly(coeffs)

    def evaluate(self, point) -> GaussianRational:
        """Exact evaluation at a tuple of Gaussian rationals."""
        point = [GaussianRational.coerce(x) for x in point]
        if len(point) != self.nvars:
            raise ValueError("evaluation point has wrong arity")
        total = QQI_ZERO
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                for _ in range(k):
                    term = term * x
            total = total + term
        return total

    def as_arrays(self):
        exps = np.array(sorted(self.terms), dtype=np.int64).reshape(
            len(self.terms), self.nvars
        )
        coeffs = np.array(
            [complex(self.terms[tuple(e)]) for e in exps], dtype=np.complex128
        )
        return exps, coeffs

    def coefficient_dominance_gap(self) -> float:
        """|constant coefficient| minus the sum of the other coefficient
        moduli; positive means nonvanishing on the closed polydisk."""
        zero = tuple([0] * self.nvars)
        const = abs(complex(self.terms.get(zero, QQI_ZERO)))
        rest = sum(
            abs(complex(c)) for e, c in self.terms.items() if e != zero
        )
        return const - rest

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            mono = "*".join(
                f"z{j + 1}^{k}" if k > 1 else f"z{j + 1}"
                for j, k in enumerate(e)
                if k
            )
            c = str(self.terms[e])
            bits.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

    def __repr__(self):
        return f"MultiPoly({self})"


@dataclass(frozen=True)
class MultiPolyRatio:
    num: MultiPoly
    den: MultiPoly

    def __post_init__(self):
        if self.num.nvars != self.den.nvars:
            raise ValueError("numerator and denominator arity mismatch")
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")


def _torus_scan(f: MultiPoly, cap: int = TORUS_POINT_CAP):
    """Grid min/max of |f| on the torus with a Lipschitz error margin.

    Returns (lo, hi, err, certified): inf |f| >= lo - err when not
    certified; when certified, lo/2 is a rigorous lower bound
    (err < lo/2) and hi + err an upper bound.
    """
    exps, coeffs = f.as_arrays()
    n = f.nvars
    # per-axis Lipschitz constants in the angle variables
    lips = np.zeros(n)
    for e, c in zip(exps, np.abs(coeffs)):
        lips += np.asarray(e, dtype=np.float64) * c
    res = max(int(cap ** (1.0 / n)), 8)
    per_axis = np.full(n, min(res, 64), dtype=np.int64)
    while True:
        lo, hi = kernels.torus_abs_range(exps, coeffs, per_axis)
        err = float(sum(lips[j] * np.pi / per_axis[j] for j in range(n)))
        if err < lo / 2:
            return lo, hi, err, True
        grown = per_axis * 2
        if int(np.prod(grown)) > cap:
            return lo, hi, err, False
        per_axis = grown


def _diagonal_outcome(f_d: Poly, torus_lo: float, torus_hi_err: float,
                      torus_bound: float, torus_certified: bool,
                      wind_cfg: WindingConfig | None) -> IndexOutcome:
    if f_d.is_zero():
        return not_invertible_outcome("diagonal restriction is identically zero")
    if f_d.degree < 1:
        c = abs(complex(f_d.constant_value()))
        return IndexOutcome(
            invertible_in_S=True,
            index=IndexValue.integer(0),
            certificate=Certificate(
                min_modulus=min(torus_bound, c), certified=torus_certified
            ),
        )
    inside, on_circle, near = classify_circle_roots(f_d)
    if on_circle or near:
        return degenerate_outcome(
            "diagonal restriction vanishes on the unit circle"
            if on_circle
            else "diagonal zero within tolerance of the circle"
        )
    try:
        check = winding_number(circle_curve(RationalFunction(f_d)), wind_cfg)
    except (DegenerateBoundaryError, UnresolvedError) as exc:
        return degenerate_outcome(f"diagonal winding degenerate: {exc}")
    certified = torus_certified and check.certified and check.value == inside
    return IndexOutcome(
        invertible_in_S=True,
        index=IndexValue.integer(inside),
        certificate=Certificate(
            min_modulus=min(torus_bound, check.min_modulus), certified=certified
        ),
    )


def polydisk_index(f, wind_cfg: WindingConfig | None = None) -> IndexOutcome:
    """Invertibility on the torus-plus-diagonal boundary data and the
    winding of the diagonal restriction.

    Accepts a MultiPoly or a MultiPolyRatio whose denominator is
    certified nonvanishing on the closed polydisk.
    """
    if isinstance(f, MultiPolyRatio):
        return _ratio_index(f, wind_cfg)
    if not isinstance(f, MultiPoly):
        raise TypeError("expected MultiPoly or MultiPolyRatio")
    if f.is_zero():
        return not_invertible_outcome("zero polynomial", certified=True)
    lo, hi, err, certified = _torus_scan(f)
    scale = max(abs(complex(c)) for c in f.terms.values())
    if lo <= 1e-12 * max(scale, 1.0):
        return not_invertible_outcome(
            f"torus modulus reached {lo:.3e}; f vanishes on the torus",
            min_modulus=0.0,
            certified=False,
        )
    bound = lo / 2 if certified else max(lo - err, 0.0)
    if bound <= 0:
        return degenerate_outcome(
            "torus minimum could not be certified within the grid cap",
            min_modulus=lo,
        )
    return _diagonal_outcome(f.diagonal(), lo, hi + err, bound, certified, wind_cfg)


def _ratio_index(f: MultiPolyRatio, wind_cfg: WindingConfig | None) -> IndexOutcome:
    den_gap = f.den.coefficient_dominance_gap()
    if den_gap <= 0:
        o_den_check = polydisk_index(f.den, wind_cfg)
        if not (
            o_den_check.invertible_in_S
            and o_den_check.index is not None
            and o_den_check.index.is_identity()
        ):
            raise MembershipError(
                "denominator is not certified nonvanishing on the closed polydisk"
            )
    o_num = polydisk_index(f.num, wind_cfg)
    if not o_num.invertible_in_S:
        return o_num
    den_lo, den_hi, den_err, den_cert = _torus_scan(f.den)
    o_den = polydisk_index(f.den, wind_cfg)
    if not o_den.invertible_in_S:
        return degenerate_outcome("denominator boundary data degenerate")
    index = IndexValue.integer(o_num.index.int_part - o_den.index.int_part)
    min_modulus = o_num.certificate.min_modulus / (den_hi + den_err)
    certified = (
        o_num.certificate.certified and o_den.certificate.certified and den_cert
    )
    return IndexOutcome(
        invertible_in_S=True,
        index=index,
        certificate=Certificate(min_modulus=min_modulus, certified=certified),
    )
