import math
import random
from fractions import Fraction

import numpy as np
import pytest

from nyq.delay import CDElement, cd_membership
from nyq.errors import IllPosedLoopError, InvalidFactorizationError
from nyq.feedback import (
    closed_loop,
    direct_stability_oracle,
    nyquist_verdict,
    ring_det,
    ring_mat_mul,
    ring_mat_sub,
    stack_matrices,
)
from nyq.indices import IndexValue
from nyq.polynomials import GaussianRational, Poly
from nyq.rational import (
    CoprimeFactorization,
    RationalFunction,
    RationalMatrix,
    det_rational,
    left_coprime_factorization,
    right_coprime_factorization,
)
from nyq.rings import make_ring
from nyq.winding import ExponentialPolynomial
from support import random_plant

z = Poly.variable()
s = Poly.variable()
half = GaussianRational(Fraction(1, 2))
disk = make_ring("disk_rational")


def scalar(f):
    return RationalMatrix([[f]])


P_BASIC = scalar(RationalFunction(Poly.one(), z - half))


# ------------------------------------------------------------- closed loop


def test_closed_loop_worked_example():
    H = closed_loop(P_BASIC, scalar(RationalFunction.constant(1)))
    target_den = ((z - GaussianRational(Fraction(3, 2))).monic())
    for row in H.entries:
        for entry in row:
            assert entry.den == target_den


def test_closed_loop_zero_plant_zero_controller():
    H = closed_loop(scalar(RationalFunction.zero()), scalar(RationalFunction.zero()))
    assert H == RationalMatrix([[RationalFunction.zero(), RationalFunction.zero()],
                                [RationalFunction.zero(), RationalFunction.one()]])


def test_closed_loop_ill_posed():
    p = RationalFunction(Poly.one(), z - half)
    with pytest.raises(IllPosedLoopError):
        closed_loop(scalar(p), scalar(p.inverse()))


# ------------------------------------------------------------------ oracle


def test_oracle_examples():
    assert direct_stability_oracle(P_BASIC, scalar(RationalFunction.constant(1)), disk) == "yes"
    assert direct_stability_oracle(
        P_BASIC, scalar(RationalFunction.constant(Fraction(1, 5))), disk
    ) == "no"
    stable = scalar(RationalFunction(Poly.one(), z - 3))
    assert direct_stability_oracle(stable, scalar(RationalFunction.zero()), disk) == "yes"


# ----------------------------------------------------------- proof identity


def test_stacked_identity_exact():
    rng = random.Random(73)
    for _ in range(10):
        P = random_plant(rng, size=2, max_deg=2)
        C = random_plant(rng, size=2, max_deg=1)
        rcf = right_coprime_factorization(P)
        lcf = left_coprime_factorization(C)
        G_P, G_C = stack_matrices(rcf, lcf)
        lhs = G_C * G_P
        icp = RationalMatrix.identity(2) - C * P
        rhs = lcf.D * icp * rcf.D
        assert lhs == rhs
        assert det_rational(lhs) == det_rational(lcf.D) * det_rational(icp) * det_rational(rcf.D)


def test_stacked_shapes_and_trivial_patterns():
    rcf = right_coprime_factorization(P_BASIC)
    lcf = left_coprime_factorization(scalar(RationalFunction.zero()))
    G_P, G_C = stack_matrices(rcf, lcf)
    assert (G_P.rows, G_P.cols) == (2, 1)
    assert G_C == RationalMatrix([[RationalFunction.zero(), RationalFunction.one()]])
    stable = scalar(RationalFunction(Poly.one(), z - 3))
    G_P2, _ = stack_matrices(right_coprime_factorization(stable), lcf)
    assert G_P2 == RationalMatrix.vstack(stable, RationalMatrix.identity(1))


# ----------------------------------------------------------------- verdict


def verdict_for_gain(k):
    C = scalar(RationalFunction.constant(k))
    return nyquist_verdict(
        P_BASIC, C, right_coprime_factorization(P_BASIC), left_coprime_factorization(C), disk
    )


def test_verdict_gain_family():
    v = verdict_for_gain(1)
    assert v.stabilizes == "yes"
    assert v.det_I_minus_CP.index == IndexValue.integer(-1)
    assert v.det_DP.index == IndexValue.integer(1)
    assert v.det_DtildeC.index == IndexValue.integer(0)
    assert v.index_sum == IndexValue.integer(0)

    v = verdict_for_gain(Fraction(1, 5))
    assert v.stabilizes == "no"
    assert v.index_sum == IndexValue.integer(1)

    assert verdict_for_gain(Fraction(1, 2)).stabilizes == "degenerate"


def test_verdict_trivial_zero_loop():
    P = scalar(RationalFunction.zero())
    C = scalar(RationalFunction.zero())
    rcf = CoprimeFactorization(
        side="right", N=P, D=RationalMatrix.identity(1),
        X=RationalMatrix.zeros(1, 1), Y=RationalMatrix.identity(1),
    )
    lcf = CoprimeFactorization(
        side="left", N=C, D=RationalMatrix.identity(1),
        X=RationalMatrix.zeros(1, 1), Y=RationalMatrix.identity(1),
    )
    v = nyquist_verdict(P, C, rcf, lcf, disk)
    assert v.stabilizes == "yes"
    assert v.index_sum == IndexValue.integer(0)


def test_verdict_rejects_bad_factorization():
    C = scalar(RationalFunction.constant(1))
    rcf = right_coprime_factorization(P_BASIC)
    broken = CoprimeFactorization(
        side="right", N=rcf.N, D=rcf.D,
        X=RationalMatrix.zeros(1, 1), Y=RationalMatrix.zeros(1, 1),
    )
    with pytest.raises(InvalidFactorizationError):
        nyquist_verdict(P_BASIC, C, broken, left_coprime_factorization(C), disk)


def test_verdict_matches_oracle_random():
    rng = random.Random(79)
    agreements = 0
    for _ in range(25):
        P = random_plant(rng, size=1, max_deg=3)
        C = random_plant(rng, size=1, max_deg=2)
        try:
            rcf = right_coprime_factorization(P)
            lcf = left_coprime_factorization(C)
            v = nyquist_verdict(P, C, rcf, lcf, disk)
        except IllPosedLoopError:
            continue
        if v.stabilizes == "degenerate":
            continue
        oracle = direct_stability_oracle(P, C, disk)
        assert oracle in ("yes", "no")
        assert v.stabilizes == oracle
        agreements += 1
    assert agreements >= 20


def test_verdict_invariant_under_refactorization():
    # replace (N, D) by (N u, D u) for a unit u of the stable ring
    C = scalar(RationalFunction.constant(1))
    rcf = right_coprime_factorization(P_BASIC)
    u = RationalFunction(z - 3, z - 2)  # invertible over the stable ring
    uinv = u.inverse()
    rcf2 = CoprimeFactorization(
        side="right",
        N=rcf.N * u,
        D=rcf.D * u,
        X=rcf.X * uinv,
        Y=rcf.Y * uinv,
    )
    lcf = left_coprime_factorization(C)
    v1 = nyquist_verdict(P_BASIC, C, rcf, lcf, disk)
    v2 = nyquist_verdict(P_BASIC, C, rcf2, lcf, disk)
    assert v1.stabilizes == v2.stabilizes == "yes"
    assert v1.index_sum.is_identity() and v2.index_sum.is_identity()


# ------------------------------------------------------- exponential ring


def trivial_generic_factorization(elements_one, elements_zero, plant):
    rcf = {"N": [[plant]], "D": [[elements_one]], "X": [[elements_zero]], "Y": [[elements_one]]}
    return rcf


def test_apw_verdict_small_gain_vs_large_gain():
    ring = make_ring("apw_plus")
    one = ExponentialPolynomial.one()
    zero = ExponentialPolynomial.zero()
    plant = ExponentialPolynomial.term(1.0, 1)  # e^{iy}, stable
    rcf = trivial_generic_factorization(one, zero, plant)

    for gain, expected in ((0.5, "yes"), (2.0, "no")):
        ctrl = ExponentialPolynomial.constant(gain)
        lcf = {"N": [[ctrl]], "D": [[one]], "X": [[zero]], "Y": [[one]]}
        v = nyquist_verdict(None, None, rcf, lcf, ring)
        assert v.stabilizes == expected, (gain, v)


# --------------------------------------------------------------- delay ring


def delay_plant_factorization():
    """P = e^{-s}/(s-1): N = e^{-s}/(s+1), D = (s-1)/(s+1),
    X = 2e, Y = 1 + 2(1 - e^{1-s})/(s-1)."""
    e = math.e
    N = CDElement([(1, RationalFunction(Poly.one(), s + 1))])
    D = CDElement.from_rational(RationalFunction(s - 1, s + 1))
    X = CDElement(atomic=[(0, 2 * e)])
    Y = CDElement(
        [
            (0, RationalFunction(Poly.constant(2), s - 1)),
            (1, RationalFunction(Poly.constant(Fraction(-2 * e)), s - 1)),
        ],
        atomic=[(0, 1.0)],
    )
    return N, D, X, Y


def test_delay_plant_bezout_on_axis_grid():
    N, D, X, Y = delay_plant_factorization()
    lhs = X * N + Y * D
    y = np.linspace(-200.0, 200.0, 20001)
    vals = lhs.evaluate(1j * y)
    assert float(np.max(np.abs(vals - 1.0))) < 1e-9


def test_delay_plant_witness_is_member():
    N, D, X, Y = delay_plant_factorization()
    for el in (N, D, X, Y):
        assert cd_membership(el)


def test_delay_plant_verdict_and_membership_consistency():
    ring = make_ring("callier_desoer")
    N, D, X, Y = delay_plant_factorization()
    rcf = {"N": [[N]], "D": [[D]], "X": [[X]], "Y": [[Y]]}
    # stabilizing controller C = -Y^{-1} X: left factorization with
    # Dtilde = Y, Ntilde = -X and witnesses Xtilde = -N, Ytilde = D
    lcf = {"N": [[-X]], "D": [[Y]], "X": [[-N]], "Y": [[D]]}
    v = nyquist_verdict(None, None, rcf, lcf, ring)
    assert v.stabilizes == "yes"
    assert v.index_sum.is_identity()

    # with this controller Gtilde_C G_P = Y D + X N = 1 exactly, so the
    # closed loop is G_P * Gtilde_C; all four entries must be members
    lam = ring_mat_sub(
        ring,
        ring_mat_mul(ring, lcf["D"], rcf["D"]),
        ring_mat_mul(ring, lcf["N"], rcf["N"]),
    )
    assert lam[0][0].approx_equal(CDElement.one(), tol=1e-12)
    for entry in (N * X, N * Y, D * X, D * Y):
        assert cd_membership(entry)

    # zero controller: verdict no, and the plant entry of the closed loop
    # (= P itself) genuinely fails membership: D has an uncancelled
    # right-half-plane zero at s = 1 where N does not vanish
    zero = CDElement.zero()
    one = CDElement.one()
    lcf0 = {"N": [[zero]], "D": [[one]], "X": [[zero]], "Y": [[one]]}
    v0 = nyquist_verdict(None, None, rcf, lcf0, ring)
    assert v0.stabilizes == "no"
    d_at_1 = complex(D.evaluate(np.array([1.0 + 0j]))[0])
    n_at_1 = complex(N.evaluate(np.array([1.0 + 0j]))[0])
    assert abs(d_at_1) < 1e-12 and abs(n_at_1) > 1e-3
    raw_plant = CDElement([(1, RationalFunction(Poly.one(), s - 1))])
    assert not cd_membership(raw_plant)


def test_generic_verdict_rejects_broken_bezout():
    ring = make_ring("callier_desoer")
    N, D, X, Y = delay_plant_factorization()
    rcf = {"N": [[N]], "D": [[D]], "X": [[CDElement.zero()]], "Y": [[CDElement.zero()]]}
    lcf = {"N": [[-X]], "D": [[Y]], "X": [[-N]], "Y": [[D]]}
    with pytest.raises(InvalidFactorizationError):
        nyquist_verdict(None, None, rcf, lcf, ring)


# ----------------------------------------------------------- ring matrices


def test_ring_det_matches_rational_det():
    rng = random.Random(83)
    ring = make_ring("disk_rational")
    for _ in range(10):
        M = random_plant(rng, size=3, max_deg=1)
        rows = [[M[i, j] for j in range(3)] for i in range(3)]
        assert ring_det(ring, rows) == det_rational(M)
