"""Exact univariate polynomial arithmetic over the Gaussian rationals.

A coefficient is a :class:`GaussianRational`: a complex number whose real
and imaginary parts are arbitrary-precision :class:`fractions.Fraction`
values.  A :class:`Poly` stores coefficients ascending by degree with the
leading coefficient nonzero; the zero polynomial has an empty coefficient
tuple and degree -1.  All ring/field operations (including gcd and exact
division) are exact; floating point enters only in :func:`poly_roots`,
which localizes roots numerically after an exact square-free
decomposition.

Coefficients serialize as ``"a/b"`` for real values and ``"a/b+c/d i"``
with an optional sign for complex ones; ``parse_coefficient`` accepts the
same forms.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import ProblemFormatError
from .kernels import polyval_grid


def _to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {x!r} to an exact rational")


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        if isinstance(x, str):
            return parse_coefficient(x)
        raise TypeError(f"cannot coerce {x!r} to GaussianRational")

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) + (-self)

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if self.im < 0:
            return f"{self.re}-{-self.im} i"
        return f"{self.re}+{self.im} i"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


QQI_ZERO = GaussianRational(0)
QQI_ONE = GaussianRational(1)


def parse_coefficient(text: str) -> GaussianRational:
    """Parse ``"a/b"`` or ``"a/b+c/d i"`` (signs allowed, spaces ignored)."""
    t = text.strip().replace(" ", "")
    if not t:
        raise ProblemFormatError("empty coefficient")
    try:
        if t.endswith("i"):
            body = t[:-1]
            split = 0
            for k in range(len(body) - 1, 0, -1):
                if body[k] in "+-" and body[k - 1] not in "+-/.eE":
                    split = k
                    break
            re_part, im_part = body[:split], body[split:]
            if im_part in ("", "+"):
                im = Fraction(1)
            elif im_part == "-":
                im = Fraction(-1)
            else:
                im = Fraction(im_part)
            re = Fraction(re_part) if re_part else Fraction(0)
            return GaussianRational(re, im)
        return GaussianRational(Fraction(t))
    except (ValueError, ZeroDivisionError) as exc:
        raise ProblemFormatError(f"bad coefficient {text!r}: {exc}") from exc


class Poly:
    """Univariate polynomial, coefficients ascending, exact arithmetic."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((QQI_ONE,))

    @staticmethod
    def constant(c) -> "Poly":
        return Poly((GaussianRational.coerce(c),))

    @staticmethod
    def variable() -> "Poly":
        return Poly((QQI_ZERO, QQI_ONE))

    @staticmethod
    def from_roots(roots) -> "Poly":
        p = Poly.one()
        for r in roots:
            p = p * Poly((-GaussianRational.coerce(r), QQI_ONE))
        return p

    @staticmethod
    def from_strings(strings) -> "Poly":
        return Poly(tuple(parse_coefficient(s) for s in strings))

    # -- basic structure ----------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_value(self) -> GaussianRational:
        return self.coeffs[0] if self.coeffs else QQI_ZERO

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return Poly.constant(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero()
        out = [QQI_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(), self
        inv_lc = other.leading().inverse()
        quot = [QQI_ZERO] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv_lc
            if not c.is_zero():
                quot[k] = c
                for i, b in enumerate(other.coeffs):
                    rem[k + i] = rem[k + i] - c * b
        return Poly(quot), Poly(rem[: other.degree if other.degree > 0 else 0])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("polynomial division was not exact")
        return q

    def derivative(self) -> "Poly":
        return Poly(tuple(c * k for k, c in enumerate(self.coeffs) if k > 0))

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return Poly(tuple(c * inv for c in self.coeffs))

    # -- evaluation -----------------------------------------------------

    def __call__(self, x):
        """Exact Horner evaluation at a GaussianRational (or coercible)."""
        x = GaussianRational.coerce(x)
        acc = QQI_ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_complex_array(self) -> np.ndarray:
        if not self.coeffs:
            return np.zeros(1, dtype=np.complex128)
        return np.array([complex(c) for c in self.coeffs], dtype=np.complex128)

    def eval_grid(self, z: np.ndarray) -> np.ndarray:
        """Floating evaluation on a complex grid."""
        return polyval_grid(self.to_complex_array(), np.asarray(z, dtype=np.complex128))

    # -- formatting -----------------------------------------------------

    def to_strings(self):
        return [str(c) for c in self.coeffs] if self.coeffs else ["0"]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mon = "z" if k == 1 else f"z^{k}"
                if c == QQI_ONE:
                    parts.append(mon)
                else:
                    cs = str(c)
                    if ("+" in cs[1:]) or ("-" in cs[1:]) or c.im:
                        cs = f"({cs})"
                    parts.append(f"{cs}*{mon}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor by the Euclidean algorithm."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    a, b = p, q
    while not b.is_zero():
        # monic normalization after each step keeps coefficient growth down
        a, b = b, (a % b).monic()
    return a.monic()


def poly_lcm(p: Poly, q: Poly) -> Poly:
    if p.is_zero() or q.is_zero():
        return Poly.zero()
    return (p * q).exact_div(poly_gcd(p, q)).monic()


def poly_xgcd(p: Poly, q: Poly):
    """Extended Euclid: returns (g, x, y) with x*p + y*q = g, g monic."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    r0, r1 = p, q
    x0, x1 = Poly.one(), Poly.zero()
    y0, y1 = Poly.zero(), Poly.one()
    while not r1.is_zero():
        quo, rem = divmod(r0, r1)
        r0, r1 = r1, rem
        x0, x1 = x1, x0 - quo * x1
        y0, y1 = y1, y0 - quo * y1
    lead = r0.leading().inverse()
    return r0.monic(), x0 * lead, y0 * lead


def squarefree_decomposition(p: Poly):
    """Yun's algorithm: returns [(factor, multiplicity)], factors monic.

    The product of factor^multiplicity equals p up to the leading
    coefficient.
    """
    if p.is_zero():
        raise ValueError("square-free decomposition of zero polynomial")
    p = p.monic()
    if p.degree < 1:
        return []
    g = poly_gcd(p, p.derivative())
    if g.degree == 0:
        return [(p, 1)]
    out = []
    b = p.exact_div(g)
    c = p.derivative().exact_div(g)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d) if not d.is_zero() else b.monic()
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def poly_roots(p: Poly):
    """All complex roots with multiplicities.

    Multiplicities come from the exact square-free decomposition; the
    roots of each square-free factor are found from the companion matrix
    and polished with a few Newton steps.
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    out = []
    for factor, mult in squarefree_decomposition(p):
        cs = factor.to_complex_array()
        roots = np.roots(cs[::-1])
        dcs = factor.derivative().to_complex_array()
        for r in roots:
            x = complex(r)
            for _ in range(3):
                dv = complex(polyval_grid(dcs, np.array([x]))[0])
                if dv == 0:
                    break
                x -= complex(polyval_grid(cs, np.array([x]))[0]) / dv
            out.append((x, mult))
    return out


def rational_root_candidate(x: complex, max_den: int = 10 ** 6):
    """Snap a float to a nearby small-denominator Gaussian rational.

    Returns None when no candidate with the requested denominator bound
    is within 1e-9 of x.  Used to confirm exactly that a numerically
    found root sits on the unit circle.
    """
    re = Fraction(x.real).limit_denominator(max_den)
    im = Fraction(x.imag).limit_denominator(max_den)
    if abs(float(re) - x.real) < 1e-9 and abs(float(im) - x.imag) < 1e-9:
        return GaussianRational(re, im)
    return None


def bound_root_error(p: Poly, root: complex) -> float:
    """|p(root)| scaled by the coefficient magnitude, for accuracy checks."""
    cs = p.to_complex_array()
    val = abs(complex(polyval_grid(cs, np.array([root]))[0]))
    scale = max(abs(c) for c in cs) * max(1.0, abs(root)) ** max(p.degree, 1)
    return val / scale if scale else val


def unit_circle_distance(x: complex) -> float:
    return abs(math.hypot(x.real, x.imag) - 1.0)
