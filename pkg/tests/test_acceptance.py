"""Acceptance criteria, one test per criterion, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import math
import random
import time
from fractions import Fraction

import numpy as np

from nyq.delay import CDElement, cd_index, cd_membership
from nyq.errors import IllPosedLoopError
from nyq.feedback import direct_stability_oracle, nyquist_verdict
from nyq.indices import IndexValue, axiom_suite
from nyq.polydisk import MultiPoly, polydisk_index
from nyq.polynomials import GaussianRational, Poly
from nyq.rational import (
    RationalFunction,
    RationalMatrix,
    disk_winding_exact,
    left_coprime_factorization,
    right_coprime_factorization,
)
from nyq.rings import make_ring
from nyq.winding import (
    ExponentialPolynomial,
    average_winding,
    circle_curve,
    dominance_winding,
    winding_number,
)
from support import (
    random_boundary_safe_rational,
    random_dominant_exp,
    random_plant,
    rhp_zero_pole_winding_oracle,
)

z = Poly.variable()
s = Poly.variable()
half = GaussianRational(Fraction(1, 2))
disk = make_ring("disk_rational")


def report(criterion, ok, detail):
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_1_verdict_equals_oracle():
    rng = random.Random(101)
    start = time.monotonic()
    total = mismatches = degenerate = 0
    attempts = 0
    while total < 200 and attempts < 400:
        attempts += 1
        size = 1 if total < 120 else 2
        max_deg = 4 if size == 1 else 2
        P = random_plant(rng, size=size, max_deg=max_deg)
        C = random_plant(rng, size=size, max_deg=max_deg if size == 1 else 1)
        try:
            rcf = right_coprime_factorization(P)
            lcf = left_coprime_factorization(C)
            v = nyquist_verdict(P, C, rcf, lcf, disk)
        except IllPosedLoopError:
            continue
        total += 1
        if v.stabilizes == "degenerate":
            degenerate += 1
            continue
        oracle = direct_stability_oracle(P, C, disk)
        if v.stabilizes != oracle:
            mismatches += 1
    elapsed = time.monotonic() - start
    ok = (
        total == 200
        and mismatches == 0
        and degenerate / total < 0.05
        and elapsed < 60.0
    )
    report(
        1,
        ok,
        f"{total} instances, {mismatches} mismatches, "
        f"{degenerate} degenerate ({100 * degenerate / total:.1f}%), {elapsed:.1f}s",
    )


def test_criterion_2_gain_sweep():
    P = RationalMatrix([[RationalFunction(Poly.one(), z - half)]])
    rcf = right_coprime_factorization(P)
    gains = [Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(1)]
    expected = ["no", "no", "yes", "yes"]
    got = []
    for k in gains:
        C = RationalMatrix([[RationalFunction.constant(k)]])
        v = nyquist_verdict(P, C, rcf, left_coprime_factorization(C), disk)
        got.append(v.stabilizes)
        analytic = "yes" if abs(Fraction(1, 2) + k) > 1 else "no"
        assert v.stabilizes == analytic
    report(2, got == expected, f"verdicts {got} for gains {gains}")


def test_criterion_3_index_homomorphism():
    rng = random.Random(103)
    exact_bad = 0
    for _ in range(500):
        f = random_boundary_safe_rational(rng)
        g = random_boundary_safe_rational(rng)
        if disk_winding_exact(f * g) != disk_winding_exact(f) + disk_winding_exact(g):
            exact_bad += 1
    worst = 0.0
    for _ in range(100):
        f = random_dominant_exp(rng)
        g = random_dominant_exp(rng)
        err = abs(
            average_winding(f * g).value
            - average_winding(f).value
            - average_winding(g).value
        )
        worst = max(worst, err)
    ok = exact_bad == 0 and worst < 2e-4
    report(
        3,
        ok,
        f"500 exact pairs ({exact_bad} failures), 100 exponential pairs "
        f"(worst error {worst:.2e} < 2e-4)",
    )


def test_criterion_4_mean_motion():
    targets = [
        (ExponentialPolynomial.term(1.0, Fraction(0)), 0.0),
        (ExponentialPolynomial.term(1.0, Fraction(1)), 1.0),
        (ExponentialPolynomial.term(1.0, Fraction(5, 3)), 5.0 / 3.0),
        (
            ExponentialPolynomial.term(1.0, (0, 1), basis=(1.0, math.sqrt(2))),
            math.sqrt(2),
        ),
    ]
    worst_single = max(abs(average_winding(f).value - lam) for f, lam in targets)
    rng = random.Random(107)
    worst_dom = 0.0
    for _ in range(100):
        f = random_dominant_exp(rng)
        lam0 = dominance_winding(f)
        assert lam0 is not None
        worst_dom = max(worst_dom, abs(average_winding(f).value - lam0))
    ok = worst_single < 1e-6 and worst_dom < 1e-3
    report(
        4,
        ok,
        f"single-term worst {worst_single:.2e} < 1e-6, "
        f"dominance agreement worst {worst_dom:.2e} < 1e-3",
    )


def test_criterion_5_delay_ring():
    o = cd_index(CDElement.one())
    exact_zero = o.index.real_part == 0.0 and o.index.int_part == 0
    o1 = cd_index(CDElement.impulse(1, 1.0))
    delta1_ok = abs(o1.index.real_part + 1.0) < 1e-4 and o1.index.int_part == 0

    f_plus = RationalFunction(s + 2, s + 1)
    f_minus = RationalFunction(s - 1, s + 1)
    o2 = cd_index(CDElement.from_rational(f_plus))
    o3 = cd_index(CDElement.from_rational(f_minus))
    oracle2 = rhp_zero_pole_winding_oracle(f_plus)
    oracle3 = rhp_zero_pole_winding_oracle(f_minus)
    rational_ok = (
        o2.index.int_part == 0 == oracle2
        and abs(o2.index.real_part) < 1e-4
        and o3.index.int_part == -1 == oracle3
        and abs(o3.index.real_part) < 1e-4
    )

    # delay plant P = e^{-s}/(s-1) with its Bezout witnesses
    e = math.e
    N = CDElement([(1, RationalFunction(Poly.one(), s + 1))])
    D = CDElement.from_rational(f_minus)
    X = CDElement(atomic=[(0, 2 * e)])
    Y = CDElement(
        [
            (0, RationalFunction(Poly.constant(2), s - 1)),
            (1, RationalFunction(Poly.constant(Fraction(-2 * e)), s - 1)),
        ],
        atomic=[(0, 1.0)],
    )
    grid = np.linspace(-200.0, 200.0, 20001)
    bezout_err = float(np.max(np.abs((X * N + Y * D).evaluate(1j * grid) - 1.0)))

    ring = make_ring("callier_desoer")
    rcf = {"N": [[N]], "D": [[D]], "X": [[X]], "Y": [[Y]]}
    lcf = {"N": [[-X]], "D": [[Y]], "X": [[-N]], "Y": [[D]]}
    v = nyquist_verdict(None, None, rcf, lcf, ring)
    closed_loop_members = all(
        cd_membership(entry) for entry in (N * X, N * Y, D * X, D * Y)
    )
    consistency = (v.stabilizes == "yes") == closed_loop_members

    ok = (
        exact_zero
        and delta1_ok
        and rational_ok
        and bezout_err < 1e-9
        and consistency
        and v.stabilizes == "yes"
    )
    report(
        5,
        ok,
        f"pair indices ok, Bezout grid error {bezout_err:.2e} < 1e-9, "
        f"verdict {v.stabilizes} consistent with closed-loop membership",
    )


def test_criterion_6_polydisk():
    z1 = MultiPoly.variable(0, 2)
    z2 = MultiPoly.variable(1, 2)
    o1 = polydisk_index(4 - z1 * z2)
    first = o1.invertible_in_S and o1.index == IndexValue.integer(0)

    g = z1 * z2 - MultiPoly.constant(Fraction(1, 4), 2)
    o2 = polydisk_index(g)
    # invertible on the boundary data with nonzero index: not invertible
    # in the polydisk ring itself
    second = (
        o2.invertible_in_S
        and o2.index == IndexValue.integer(2)
        and not o2.index.is_identity()
    )
    witness = abs(complex(g.evaluate((Fraction(1, 2), Fraction(1, 2)))))
    ok = first and second and witness < 1e-15
    report(
        6,
        ok,
        f"4-z1z2 index 0 invertible, z1z2-1/4 index 2, witness |f(1/2,1/2)| = {witness:.1e}",
    )


def test_criterion_7_axiom_harness():
    failures = {}
    for name in ("disk_rational", "hardy_rational", "apw_plus",
                 "callier_desoer", "polydisk_rational"):
        ring = make_ring(name)
        rep = axiom_suite(ring, ring.sample, 100, random.Random(109))
        failures[name] = len(rep.failures)
    ok = all(v == 0 for v in failures.values())
    report(7, ok, f"failures per instance: {failures}")


def test_criterion_8_exact_vs_numeric_winding():
    rng = random.Random(113)
    mismatches = 0
    certified = 0
    for _ in range(200):
        f = random_boundary_safe_rational(rng)
        exact = disk_winding_exact(f)
        result = winding_number(circle_curve(f))
        if result.value != exact:
            mismatches += 1
        if result.certified:
            certified += 1
    ok = mismatches == 0 and certified >= 198
    report(
        8,
        ok,
        f"200 rationals, {mismatches} mismatches, {certified} certified (>= 198 needed)",
    )
