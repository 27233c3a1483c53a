import math
import random
from fractions import Fraction

import numpy as np
import pytest

from nyq.errors import (
    DegenerateBoundaryError,
    NeedsRefinementError,
    PossiblyNotInvertibleError,
)
from nyq.polynomials import GaussianRational, Poly
from nyq.rational import RationalFunction, disk_winding_exact
from nyq.winding import (
    ExponentialPolynomial,
    MeanMotionConfig,
    WindingConfig,
    average_winding,
    certified_min_modulus,
    circle_curve,
    dominance_winding,
    phase_unwrap,
    product_curve,
    reparametrize,
    winding_number,
)
from support import mean_motion_oracle, random_boundary_safe_rational, random_dominant_exp

z = Poly.variable()
half = GaussianRational(Fraction(1, 2))
SQRT2 = math.sqrt(2.0)


def e_term(freq, coeff=1.0, basis=(1.0,)):
    return ExponentialPolynomial.term(coeff, freq, basis)


# ------------------------------------------------------------ phase unwrap


def test_unwrap_constant():
    assert np.allclose(phase_unwrap([1, 1, 1]), [0, 0, 0])


def test_unwrap_quarter_turns():
    vals = np.exp(1j * np.array([0, np.pi / 2, np.pi, 3 * np.pi / 2, 2 * np.pi]))
    out = phase_unwrap(vals)
    assert np.allclose(out, [0, np.pi / 2, np.pi, 3 * np.pi / 2, 2 * np.pi])


def test_unwrap_circle_samples_total_increment():
    f = RationalFunction(z - half, z - 2)
    t = np.linspace(0, 1, 65)
    vals = circle_curve(f)(t)
    out = phase_unwrap(vals)
    total = (out[-1] - out[0]) / (2 * math.pi)
    assert abs(total - disk_winding_exact(f)) < 1e-9


def test_unwrap_rejects_zero():
    with pytest.raises(DegenerateBoundaryError):
        phase_unwrap([1.0, 0.0, 1.0])


def test_unwrap_rejects_pi_jump():
    with pytest.raises(NeedsRefinementError):
        phase_unwrap([1.0, -1.0, 1.0])


def test_unwrap_steps_inside_open_interval():
    rng = np.random.default_rng(0)
    vals = np.exp(1j * np.cumsum(rng.uniform(-2.5, 2.5, size=200)))
    out = phase_unwrap(vals)
    steps = np.diff(out)
    assert np.all(np.abs(steps) < math.pi)


# ----------------------------------------------------------- winding number


def test_winding_unit_circle():
    r = winding_number(lambda t: np.exp(2j * np.pi * t))
    assert r.value == 1 and r.certified


def test_winding_offset_circle():
    r = winding_number(lambda t: 3 + np.exp(2j * np.pi * t))
    assert r.value == 0 and r.certified


def test_winding_rational_double():
    f = RationalFunction(
        (z - half) * (z - GaussianRational(0, Fraction(9, 10))), (z - 2) ** 2
    )
    r = winding_number(circle_curve(f))
    assert r.value == 2 and r.certified


def test_winding_reparametrization_invariant():
    f = RationalFunction((z - half) * (z + half), (z - 2))
    base = winding_number(circle_curve(f))
    rng = random.Random(31)
    for _ in range(5):
        a = rng.uniform(0.5, 3.0)

        def phi(t, a=a):
            return (np.exp(a * t) - 1.0) / (math.exp(a) - 1.0)

        r = winding_number(reparametrize(circle_curve(f), phi))
        assert r.value == base.value


def test_winding_product_additive():
    rng = random.Random(37)
    for _ in range(10):
        f = random_boundary_safe_rational(rng)
        g = random_boundary_safe_rational(rng)
        cf, cg = circle_curve(f), circle_curve(g)
        wf = winding_number(cf).value
        wg = winding_number(cg).value
        wfg = winding_number(product_curve(cf, cg)).value
        assert wfg == wf + wg


def test_winding_degenerate_floor():
    with pytest.raises(DegenerateBoundaryError):
        winding_number(circle_curve(RationalFunction(z - 1)))


def test_winding_open_curve_rejected():
    with pytest.raises(ValueError):
        winding_number(lambda t: np.exp(1j * np.pi * t))


# -------------------------------------------------------------- mean motion


def test_mean_motion_single_terms_exact():
    for freq in (Fraction(0), Fraction(1), Fraction(5, 3)):
        r = average_winding(e_term(freq))
        assert r.certified
        assert abs(r.value - float(freq)) < 1e-6
    r = average_winding(e_term((0, 1), basis=(1.0, SQRT2)))
    assert abs(r.value - SQRT2) < 1e-6


def test_mean_motion_dominant_vs_long_window_oracle():
    f = ExponentialPolynomial.constant(2.0) + e_term(1)
    r = average_winding(f)
    assert r.certified
    oracle = mean_motion_oracle(f, T=1e4)
    assert abs(r.value - 0.0) < 1e-4
    assert abs(r.value - oracle) < 1e-3


def test_mean_motion_sqrt2_shift():
    basis = (1.0, SQRT2)
    f = e_term((0, 1), basis=basis) * (
        ExponentialPolynomial.constant(3.0, basis) + e_term((1, 0), basis=basis)
    )
    r = average_winding(f)
    assert abs(r.value - SQRT2) < 1e-4


def test_mean_motion_zero_rejected():
    with pytest.raises(PossiblyNotInvertibleError):
        average_winding(ExponentialPolynomial.zero())


def test_mean_motion_homomorphism_random():
    rng = random.Random(41)
    for _ in range(10):
        f = random_dominant_exp(rng)
        g = random_dominant_exp(rng)
        wf = average_winding(f).value
        wg = average_winding(g).value
        wfg = average_winding(f * g).value
        assert abs(wfg - wf - wg) < 2e-4


def test_mean_motion_shift_property():
    rng = random.Random(43)
    for _ in range(5):
        f = random_dominant_exp(rng)
        lam = Fraction(3, 2)
        shifted = e_term(lam) * f
        assert abs(
            average_winding(shifted).value - float(lam) - average_winding(f).value
        ) < 2e-4


# ---------------------------------------------------------------- dominance


def test_dominance_examples():
    f = ExponentialPolynomial.constant(2.0) + e_term(1)
    assert dominance_winding(f) == 0.0
    g = e_term(1) + e_term(2)
    assert dominance_winding(g) is None
    basis = (1.0, SQRT2)
    h = (
        e_term((0, 1), 5.0, basis)
        + e_term((1, 0), 1.0, basis)
        + e_term((3, 0), 1.0, basis)
    )
    assert abs(dominance_winding(h) - SQRT2) < 1e-12
    est = average_winding(h)
    assert abs(est.value - SQRT2) < 1e-3


# ------------------------------------------------------ certified min modulus


def test_min_modulus_dominance():
    f = ExponentialPolynomial.constant(2.0) + e_term(1)
    bound, certified = certified_min_modulus(f)
    assert certified and abs(bound - 1.0) < 1e-12


def test_min_modulus_folded_zero():
    f = e_term(1) - e_term(1)
    bound, certified = certified_min_modulus(f)
    assert bound == 0.0 and certified


def test_min_modulus_periodic_certified():
    # 1 + (1/2) e^{iy} + (1/4) e^{2iy}: periodic, commensurable, min > 0
    f = (
        ExponentialPolynomial.constant(1.0)
        + e_term(1, 0.5)
        + e_term(2, 0.25)
    )
    bound, certified = certified_min_modulus(f)
    assert certified and bound > 0
    y = np.linspace(0, 2 * math.pi, 20001)
    true_min = float(np.min(np.abs(f.evaluate(y))))
    assert bound <= true_min + 1e-12


def test_min_modulus_incommensurable_heuristic():
    basis = (1.0, SQRT2)
    f = (
        ExponentialPolynomial.constant(1.0, basis)
        + e_term((1, 0), 1.0, basis)
        + e_term((0, 1), 1.0, basis)
    )
    bound, certified = certified_min_modulus(f)
    assert not certified
    # inf over the line is 0 (the three unit vectors can align against 1)
    assert bound < 0.05


def test_mean_motion_certified_flag_tracks_commensurability():
    # commensurable but not dominant: certified via the periodic grid
    f = e_term(1, 1.0) + e_term(Fraction(3, 2), 1.0) + ExponentialPolynomial.constant(2.5)
    r = average_winding(f)
    assert r.certified
    basis = (1.0, SQRT2)
    g = (
        ExponentialPolynomial.constant(3.0, basis)
        + e_term((1, 0), 1.0, basis)
        + e_term((0, 1), 1.0, basis)
    )
    # dominant, so certified even though incommensurable
    assert average_winding(g).certified
