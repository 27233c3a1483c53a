"""Shared generators and independent oracles for the test suite.

Oracles here deliberately avoid the code paths they check: windings come
from brute-force sampling with numpy's unwrap, mean motions from long
endpoint windows, determinants from numeric cofactor evaluation, and
half-plane zero counts from root finding on the raw numerator.
"""

import cmath
import math
from fractions import Fraction

import numpy as np

from nyq.polynomials import GaussianRational, Poly
from nyq.rational import RationalFunction, RationalMatrix
from nyq.winding import ExponentialPolynomial


# ------------------------------------------------------------- generators


def frac(rng, num_range=3, den_choices=(1, 2)):
    return Fraction(rng.randint(-num_range, num_range), rng.choice(den_choices))


def random_root_away_from_circle(rng, margin=1e-3):
    """Gaussian rational root with modulus bounded away from 1."""
    while True:
        re = Fraction(rng.randint(-8, 8), 4)
        im = Fraction(rng.randint(-8, 8), 4)
        r = GaussianRational(re, im)
        mod = math.sqrt(float(r.abs2()))
        if abs(mod - 1.0) > margin:
            return r


def random_stable_pole(rng):
    re = Fraction(rng.choice([-3, -2, 2, 3]))
    im = Fraction(rng.randint(-2, 2))
    return GaussianRational(re, im)


def random_boundary_safe_rational(rng, max_zeros=3, max_poles=2) -> RationalFunction:
    """Nonzero rational with all roots and poles away from the circle."""
    num = Poly.constant(Fraction(rng.randint(1, 3), rng.randint(1, 2)))
    for _ in range(rng.randint(0, max_zeros)):
        num = num * Poly((-random_root_away_from_circle(rng), GaussianRational(1)))
    den = Poly.one()
    for _ in range(rng.randint(0, max_poles)):
        den = den * Poly((-random_root_away_from_circle(rng), GaussianRational(1)))
    return RationalFunction(num, den)


def random_stable_rational(rng, max_zeros=3, max_poles=2) -> RationalFunction:
    """Boundary-safe rational whose poles all lie outside the closed disk."""
    num = Poly.constant(Fraction(rng.randint(1, 3), rng.randint(1, 2)))
    for _ in range(rng.randint(0, max_zeros)):
        num = num * Poly((-random_root_away_from_circle(rng), GaussianRational(1)))
    den = Poly.one()
    for _ in range(rng.randint(0, max_poles)):
        den = den * Poly((-random_stable_pole(rng), GaussianRational(1)))
    return RationalFunction(num, den)


def random_plant_entry(rng, max_deg=4) -> RationalFunction:
    """General rational entry (poles anywhere off the circle), degrees <= max_deg."""
    num = Poly.constant(frac(rng))
    while num.is_zero():
        num = Poly.constant(frac(rng))
    for _ in range(rng.randint(0, max_deg)):
        num = num * Poly((-random_root_away_from_circle(rng), GaussianRational(1)))
    den = Poly.one()
    for _ in range(rng.randint(0, max_deg)):
        den = den * Poly((-random_root_away_from_circle(rng), GaussianRational(1)))
    return RationalFunction(num, den)


def random_plant(rng, size=1, max_deg=4) -> RationalMatrix:
    return RationalMatrix(
        [[random_plant_entry(rng, max_deg) for _ in range(size)] for _ in range(size)]
    )


def random_dominant_exp(rng, max_extra=4, rest_budget=0.3) -> ExponentialPolynomial:
    """Dominant lowest-frequency term plus strictly smaller higher terms;
    frequencies on the 1/8 lattice in [0, 3]."""
    base = Fraction(rng.choice([0, 0, 0, 1, 2, 4]), 8)
    c0 = (1.5 + rng.random()) * cmath.exp(1j * rng.uniform(-3.0, 3.0))
    terms = {(base,): c0}
    k = rng.randint(1, max_extra)
    budget = rest_budget * abs(c0)
    for _ in range(k):
        step = Fraction(rng.randint(1, 22), 8)
        coeff = (budget / k) * cmath.exp(1j * rng.uniform(-3.0, 3.0))
        key = (base + step,)
        terms[key] = terms.get(key, 0) + coeff
    return ExponentialPolynomial(terms)


# ---------------------------------------------------------------- oracles


def winding_oracle(values) -> float:
    """Total winding of a closed sample sequence via numpy's unwrap."""
    angles = np.unwrap(np.angle(np.asarray(values, dtype=np.complex128)))
    return (angles[-1] - angles[0]) / (2 * math.pi)


def circle_samples(f: RationalFunction, n=4096, radius=1.0):
    t = np.linspace(0.0, 1.0, n + 1)
    z = radius * np.exp(2j * math.pi * t)
    return f.num.eval_grid(z) / f.den.eval_grid(z)


def mean_motion_oracle(f: ExponentialPolynomial, T=1e4, samples=2_000_001) -> float:
    """Endpoint quotient (arg f(T) - arg f(-T)) / 2T on one dense window."""
    y = np.linspace(-T, T, samples)
    vals = f.evaluate(y)
    angles = np.unwrap(np.angle(vals))
    return (angles[-1] - angles[0]) / (2 * T)


def det2_oracle(M: RationalMatrix, points):
    """Numeric 2x2 determinant values at the given complex points."""
    out = []
    for z in points:
        zz = np.array([z], dtype=np.complex128)
        a = complex(M[0, 0].eval_grid(zz)[0])
        b = complex(M[0, 1].eval_grid(zz)[0])
        c = complex(M[1, 0].eval_grid(zz)[0])
        d = complex(M[1, 1].eval_grid(zz)[0])
        out.append(a * d - b * c)
    return out


def rhp_zero_pole_winding_oracle(f: RationalFunction) -> int:
    """Axis winding of a rational with no roots on the imaginary axis:
    (right-half-plane poles) - (right-half-plane zeros)."""
    zeros = sum(m for r, m in f.zeros() if r.real > 0)
    poles = sum(m for r, m in f.poles() if r.real > 0)
    return poles - zeros


def bisection_real_root(coeffs, lo, hi, iters=200):
    """Bisection oracle for a real root of a real-coefficient polynomial."""

    def value(x):
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    flo = value(lo)
    for _ in range(iters):
        mid = (lo + hi) / 2
        fm = value(mid)
        if flo * fm <= 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return (lo + hi) / 2
