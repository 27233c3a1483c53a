"""Closed-loop algebra and the stability decision procedure.

``closed_loop`` builds H(P, C) = [P; I] (I - CP)^{-1} [-C, I] exactly for
rational plants and controllers; ``direct_stability_oracle`` then decides
stability by testing every entry of H for membership in the stable ring.
That oracle is independent of the index machinery and serves as the
ground truth in the test suite.

``nyquist_verdict`` is the decision procedure proper: given coprime
factorizations P = N D^{-1} and C = Dtilde^{-1} Ntilde, it computes the
three determinants det(I - CP), det D_P, det Dtilde_C, asks the ring
instance for their invertibility and indices, and declares stability
exactly when all three are invertible in the ambient algebra and their
indices sum to the group identity.  The backbone identity

    Gtilde_C G_P = Dtilde_C (I - CP) D_P,  with G_P = [N; D],
    Gtilde_C = [-Ntilde, Dtilde],

lets the same verdict run over rings whose elements cannot be divided:
det(I - CP) is then represented as det(Gtilde_C G_P) divided by the two
denominators, its index derived by group arithmetic and its modulus
bounded by sampling.

Degenerate is a first-class verdict: any boundary-degenerate or
uncertified outcome makes the whole verdict degenerate rather than
raising, so parameter sweeps that cross stability boundaries complete.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .delay import CDElement, cd_axis_min_ratio
from .errors import (
    DimensionError,
    IllPosedLoopError,
    InvalidFactorizationError,
)
from .indices import IndexOutcome, IndexValue, index_combine
from .polydisk import MultiPoly, MultiPolyRatio, polydisk_index
from .rational import (
    CoprimeFactorization,
    RationalMatrix,
    det_rational,
    verify_bezout,
)
from .winding import ExponentialPolynomial
from . import kernels

import numpy as np

DET_CAP = 6


@dataclass(frozen=True)
class Verdict:
    """Outcome of the stability decision.

    ``stabilizes`` is "yes" exactly when all three determinants are
    invertible in the ambient algebra and the index sum is the identity,
    all with certified data; "degenerate" when any outcome is
    boundary-degenerate or uncertified; "no" otherwise.
    """

    stabilizes: str
    det_I_minus_CP: IndexOutcome
    det_DP: IndexOutcome
    det_DtildeC: IndexOutcome
    index_sum: IndexValue | None
    notes: tuple = ()

    def to_json(self):
        return {
            "stabilizes": self.stabilizes,
            "det_I_minus_CP": self.det_I_minus_CP.to_json(),
            "det_D_P": self.det_DP.to_json(),
            "det_Dtilde_C": self.det_DtildeC.to_json(),
            "index_sum": None
            if self.index_sum is None
            else {
                "variant": self.index_sum.variant,
                "value": self.index_sum.describe(),
                "tol": self.index_sum.tol,
            },
            "notes": list(self.notes),
        }


# ------------------------------------------------------------ rational loop


def closed_loop(P: RationalMatrix, C: RationalMatrix) -> RationalMatrix:
    """H(P, C) = [P; I] (I - CP)^{-1} [-C, I], exact over the fractions.

    Raises IllPosedLoopError when det(I - CP) vanishes identically.
    """
    p, m = P.rows, P.cols
    if C.rows != m or C.cols != p:
        raise DimensionError(
            f"controller must be {m}x{p} for a {p}x{m} plant, got {C.rows}x{C.cols}"
        )
    icp = RationalMatrix.identity(m) - C * P
    if det_rational(icp).is_zero():
        raise IllPosedLoopError("det(I - CP) is identically zero")
    inv = icp.inverse()
    top = RationalMatrix.vstack(P, RationalMatrix.identity(m))
    bottom = RationalMatrix.hstack(-C, RationalMatrix.identity(m))
    return top * inv * bottom


def direct_stability_oracle(P: RationalMatrix, C: RationalMatrix, ring) -> str:
    """Membership test of every closed-loop entry: "yes", "no" or
    "ill-posed".  Bypasses all index machinery."""
    try:
        H = closed_loop(P, C)
    except IllPosedLoopError:
        return "ill-posed"
    for row in H.entries:
        for entry in row:
            if not ring.is_member(entry):
                return "no"
    return "yes"


def stack_matrices(rcf_P: CoprimeFactorization, lcf_C: CoprimeFactorization):
    """G_P = [N; D] and Gtilde_C = [-Ntilde, Dtilde] as matrices over R."""
    if rcf_P.side != "right" or lcf_C.side != "left":
        raise InvalidFactorizationError(
            "need a right factorization of P and a left factorization of C"
        )
    G_P = RationalMatrix.vstack(rcf_P.N, rcf_P.D)
    G_C = RationalMatrix.hstack(-lcf_C.N, lcf_C.D)
    if G_C.cols != G_P.rows:
        raise DimensionError("stacked factorization dimensions are inconsistent")
    return G_P, G_C


# ------------------------------------------------------- generic ring matrices


def ring_mat_mul(ring, A, B):
    n, k, m = len(A), len(B), len(B[0])
    if len(A[0]) != k:
        raise DimensionError("ring matrix product shape mismatch")
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for t in range(k):
                term = ring.mul(A[i][t], B[t][j])
                acc = term if acc is None else ring.add(acc, term)
            row.append(acc)
        out.append(row)
    return out


def ring_mat_sub(ring, A, B):
    return [
        [ring.add(a, ring.neg(b)) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)
    ]


def ring_det(ring, M):
    """Determinant by Laplace expansion with memoized minors.

    Uses only ring addition and multiplication, so it works for delay
    and exponential-sum elements that cannot be divided.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise DimensionError("determinant of a non-square ring matrix")
    if n > DET_CAP:
        raise DimensionError(f"exact determinant capped at {DET_CAP}x{DET_CAP}")
    memo = {}

    def minor(r, cols):
        if not cols:
            return ring.one()
        key = (r, cols)
        if key in memo:
            return memo[key]
        acc = None
        for pos, c in enumerate(cols):
            sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
            term = ring.mul(M[r][c], sub)
            if pos % 2:
                term = ring.neg(term)
            acc = term if acc is None else ring.add(acc, term)
        memo[key] = acc
        return acc

    return minor(0, tuple(range(n)))


# ------------------------------------------------------------- the verdict


def _combine_outcomes(o_icp, o_dp, o_dc, notes):
    outcomes = (o_icp, o_dp, o_dc)
    degenerate = any(o.degenerate for o in outcomes)
    uncertified = any(not o.certificate.certified for o in outcomes)
    index_sum = None
    if all(o.invertible_in_S for o in outcomes):
        index_sum = index_combine(
            index_combine(o_icp.index, o_dp.index), o_dc.index
        )
    if degenerate:
        verdict = "degenerate"
    elif uncertified:
        verdict = "degenerate"
        notes = notes + ("an outcome is uncertified; verdict withheld",)
    elif index_sum is not None and index_sum.is_identity():
        verdict = "yes"
    else:
        verdict = "no"
    return Verdict(
        stabilizes=verdict,
        det_I_minus_CP=o_icp,
        det_DP=o_dp,
        det_DtildeC=o_dc,
        index_sum=index_sum,
        notes=notes,
    )


def nyquist_verdict(
    P: RationalMatrix | None,
    C: RationalMatrix | None,
    rcf_P,
    lcf_C,
    ring,
) -> Verdict:
    """Stability verdict from the three determinant indices.

    For rational rings P and C are required and det(I - CP) is computed
    directly in exact arithmetic.  For delay, exponential-sum and
    polydisk rings the factorizations carry the data and det(I - CP) is
    represented through det(Gtilde_C G_P) = det Dtilde_C det(I-CP) det D_P.
    """
    if isinstance(rcf_P, CoprimeFactorization):
        return _rational_verdict(P, C, rcf_P, lcf_C, ring)
    return _generic_verdict(rcf_P, lcf_C, ring)


def _rational_verdict(P, C, rcf_P, lcf_C, ring) -> Verdict:
    if P is None or C is None:
        raise InvalidFactorizationError("rational verdicts need P and C")
    if not verify_bezout(rcf_P, P):
        raise InvalidFactorizationError(
            "right factorization of the plant failed Bezout verification"
        )
    if not verify_bezout(lcf_C, C):
        raise InvalidFactorizationError(
            "left factorization of the controller failed Bezout verification"
        )
    for M in (rcf_P.N, rcf_P.D, rcf_P.X, rcf_P.Y, lcf_C.N, lcf_C.D, lcf_C.X, lcf_C.Y):
        for row in M.entries:
            for e in row:
                if not ring.is_member(e):
                    raise InvalidFactorizationError(
                        f"factorization entry {e} is outside the stable ring"
                    )
    m = P.cols
    icp = RationalMatrix.identity(m) - C * P
    det_icp = det_rational(icp)
    if det_icp.is_zero():
        raise IllPosedLoopError("det(I - CP) is identically zero")
    det_dp = det_rational(rcf_P.D)
    det_dc = det_rational(lcf_C.D)
    o_icp = ring.index(det_icp)
    o_dp = ring.index(det_dp)
    o_dc = ring.index(det_dc)
    return _combine_outcomes(o_icp, o_dp, o_dc, ())


def _bezout_holds(ring, rcf, lcf) -> bool:
    """Both Bezout products equal the identity at the ring's precision."""

    def is_identity(prod, size):
        one = ring.one()
        zero = ring.add(one, ring.neg(one))
        for i in range(size):
            for j in range(size):
                target = one if i == j else zero
                if not ring.approx_equal(prod[i][j], target):
                    return False
        return True

    N, D, X, Y = rcf["N"], rcf["D"], rcf["X"], rcf["Y"]
    xn_yd = [
        [ring.add(a, b) for a, b in zip(ra, rb)]
        for ra, rb in zip(ring_mat_mul(ring, X, N), ring_mat_mul(ring, Y, D))
    ]
    Nt, Dt, Xt, Yt = lcf["N"], lcf["D"], lcf["X"], lcf["Y"]
    nx_dy = [
        [ring.add(a, b) for a, b in zip(ra, rb)]
        for ra, rb in zip(ring_mat_mul(ring, Nt, Xt), ring_mat_mul(ring, Dt, Yt))
    ]
    return is_identity(xn_yd, len(D)) and is_identity(nx_dy, len(Dt))


def _generic_verdict(rcf, lcf, ring) -> Verdict:
    """Verdict over rings carried by factorization data alone.

    ``rcf`` and ``lcf`` are dicts with keys N, D, X, Y holding
    list-of-list matrices of ring elements (left factorization entries
    are Ntilde, Dtilde, Xtilde, Ytilde).
    """
    if not _bezout_holds(ring, rcf, lcf):
        raise InvalidFactorizationError("Bezout identity failed for the ring data")
    for mat in (rcf["N"], rcf["D"], rcf["X"], rcf["Y"],
                lcf["N"], lcf["D"], lcf["X"], lcf["Y"]):
        for row in mat:
            for e in row:
                if not ring.is_member(e):
                    raise InvalidFactorizationError(
                        "factorization entry is outside the stable ring"
                    )
    N, D = rcf["N"], rcf["D"]
    Nt, Dt = lcf["N"], lcf["D"]
    lam = ring_mat_sub(ring, ring_mat_mul(ring, Dt, D), ring_mat_mul(ring, Nt, N))
    d_lam = ring_det(ring, lam)
    d_dp = ring_det(ring, D)
    d_dc = ring_det(ring, Dt)
    o_lam = ring.index(d_lam)
    o_dp = ring.index(d_dp)
    o_dc = ring.index(d_dc)
    notes = ("det(I-CP) derived from det(Gtilde_C G_P) and the denominators",)
    o_icp = _derived_icp_outcome(ring, d_lam, d_dp, d_dc, o_lam, o_dp, o_dc)
    return _combine_outcomes(o_icp, o_dp, o_dc, notes)


def _derived_icp_outcome(ring, d_lam, d_dp, d_dc, o_lam, o_dp, o_dc) -> IndexOutcome:
    from .indices import Certificate, degenerate_outcome, not_invertible_outcome

    if o_lam.degenerate or o_dp.degenerate or o_dc.degenerate:
        return degenerate_outcome("a factor outcome is degenerate")
    if not (o_lam.invertible_in_S and o_dp.invertible_in_S and o_dc.invertible_in_S):
        return not_invertible_outcome(
            "det(Gtilde_C G_P) or a denominator determinant is not invertible",
            certified=all(
                o.certificate.certified for o in (o_lam, o_dp, o_dc)
            ),
        )
    index = index_combine(
        o_lam.index, index_combine(o_dp.index.negate(), o_dc.index.negate())
    )
    min_mod = _boundary_min_ratio(ring, d_lam, (d_dp, d_dc))
    certified = all(o.certificate.certified for o in (o_lam, o_dp, o_dc))
    if min_mod <= 0:
        return degenerate_outcome("derived det(I-CP) modulus vanished on samples")
    return IndexOutcome(
        invertible_in_S=True,
        index=index,
        certificate=Certificate(min_modulus=min_mod, certified=certified),
    )


def _boundary_min_ratio(ring, num, dens) -> float:
    if isinstance(num, CDElement):
        return cd_axis_min_ratio(num, list(dens))
    if isinstance(num, ExponentialPolynomial):
        y = np.linspace(-20000.0, 20000.0, 1 << 17)
        vals = np.abs(num.evaluate(y))
        for d in dens:
            vals = vals / np.abs(d.evaluate(y))
        return float(np.min(vals))
    if isinstance(num, MultiPoly):
        den = None
        for d in dens:
            den = d if den is None else den * d
        out = polydisk_index(MultiPolyRatio(num, den))
        return out.certificate.min_modulus
    raise DimensionError(f"no boundary sampler for {type(num).__name__}")
