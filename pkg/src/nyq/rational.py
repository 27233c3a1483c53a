"""Exact rational functions, rational matrices and coprime factorizations.

A :class:`RationalFunction` is a reduced fraction of :class:`Poly` values:
the gcd of numerator and denominator is cancelled and the denominator is
monic, so equality is literal tuple equality.  Matrices are immutable
grids of rational functions with exact field arithmetic throughout.

The constructive heart of the module is :func:`smith_mcmillan` (diagonal
reduction by unimodular polynomial matrices) and
:func:`right_coprime_factorization`, which turns the diagonal form into a
factorization P = N D^{-1} over the ring of rational functions with no
poles in the closed unit disk, together with Bezout witnesses
X N + Y D = I built from scalar polynomial Bezout identities
x*e + y*psi = (z - gamma)^k.  All identities hold exactly.

:func:`disk_winding_exact` counts the winding of f around the unit
circle by the argument principle (zeros minus poles inside the disk),
refusing when a root sits within ``boundary_tol`` of the circle unless
it can be confirmed to lie exactly on it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateBoundaryError, DimensionError
from .polynomials import (
    GaussianRational,
    Poly,
    QQI_ONE,
    QQI_ZERO,
    poly_gcd,
    poly_lcm,
    poly_roots,
    poly_xgcd,
    rational_root_candidate,
    unit_circle_distance,
)

DET_SIZE_CAP = 6  # exact determinants use dense elimination; keep desk scale
DEFAULT_BOUNDARY_TOL = 1e-9


class RationalFunction:
    """Reduced fraction num/den of polynomials, den monic and nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.constant(num) if not isinstance(num, (list, tuple)) else Poly(num)
        if den is None:
            den = Poly.one()
        elif not isinstance(den, Poly):
            den = Poly.constant(den) if not isinstance(den, (list, tuple)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        else:
            # gcd only when both sides are nonconstant; constants cannot
            # share a factor with anything
            if num.degree > 0 and den.degree > 0:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
            if den.leading() != QQI_ONE:
                lead = den.leading().inverse()
                num = num * lead
                den = den * lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _reduced(cls, num: Poly, den: Poly) -> "RationalFunction":
        """Build from a fraction already known to be in lowest terms."""
        self = object.__new__(cls)
        if num.is_zero():
            num, den = Poly.zero(), Poly.one()
        elif den.leading() != QQI_ONE:
            lead = den.leading().inverse()
            num = num * lead
            den = den * lead
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction(Poly.zero())

    @staticmethod
    def one() -> "RationalFunction":
        return RationalFunction(Poly.one())

    @staticmethod
    def constant(c) -> "RationalFunction":
        return RationalFunction(Poly.constant(c))

    @staticmethod
    def variable() -> "RationalFunction":
        return RationalFunction(Poly.variable())

    @staticmethod
    def coerce(x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return RationalFunction(x)
        return RationalFunction(Poly.constant(GaussianRational.coerce(x)))

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == Poly.one() and self.den == Poly.one()

    def is_polynomial(self) -> bool:
        return self.den == Poly.one()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- field arithmetic --------------------------------------------------

    def __add__(self, other):
        other = RationalFunction.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        # reduced addition: gcd work happens on the small denominators,
        # never on the combined numerator against the full denominator
        if self.den == other.den:
            num = self.num + other.num
            g = poly_gcd(num, self.den) if (not num.is_zero() and num.degree > 0
                                            and self.den.degree > 0) else Poly.one()
            if g.degree > 0:
                return RationalFunction._reduced(num.exact_div(g), self.den.exact_div(g))
            return RationalFunction._reduced(num, self.den)
        if self.den.degree == 0 or other.den.degree == 0:
            d = Poly.one()
        else:
            d = poly_gcd(self.den, other.den)
        if d.degree == 0:
            num = self.num * other.den + other.num * self.den
            return RationalFunction._reduced(num, self.den * other.den)
        db = other.den.exact_div(d)
        da = self.den.exact_div(d)
        t = self.num * db + other.num * da
        if t.is_zero():
            return RF_ZERO
        g = poly_gcd(t, d) if (t.degree > 0 and d.degree > 0) else Poly.one()
        if g.degree > 0:
            t = t.exact_div(g)
            den = self.den.exact_div(g) * db
        else:
            den = self.den * db
        return RationalFunction._reduced(t, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._reduced(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RationalFunction.coerce(other))

    def __rsub__(self, other):
        return RationalFunction.coerce(other) + (-self)

    def __mul__(self, other):
        other = RationalFunction.coerce(other)
        if self.is_zero() or other.is_zero():
            return RF_ZERO
        # cross-cancellation: both inputs are reduced, so the product of
        # the cancelled parts is reduced as well
        g1 = (
            poly_gcd(self.num, other.den)
            if self.num.degree > 0 and other.den.degree > 0
            else Poly.one()
        )
        g2 = (
            poly_gcd(other.num, self.den)
            if other.num.degree > 0 and self.den.degree > 0
            else Poly.one()
        )
        na = self.num.exact_div(g1) if g1.degree > 0 else self.num
        db = other.den.exact_div(g1) if g1.degree > 0 else other.den
        nb = other.num.exact_div(g2) if g2.degree > 0 else other.num
        da = self.den.exact_div(g2) if g2.degree > 0 else self.den
        return RationalFunction._reduced(na * nb, da * db)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction._reduced(self.den, self.num)

    def __truediv__(self, other):
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._reduced(self.num ** n, self.den ** n)

    # -- analysis ----------------------------------------------------------

    def zeros(self):
        """Roots of the numerator with multiplicities (empty for constants)."""
        if self.num.is_zero() or self.num.degree < 1:
            return []
        return poly_roots(self.num)

    def poles(self):
        if self.den.degree < 1:
            return []
        return poly_roots(self.den)

    def eval_grid(self, z):
        return self.num.eval_grid(z) / self.den.eval_grid(z)

    def __call__(self, x):
        """Exact evaluation at a GaussianRational point off the poles."""
        dv = self.den(x)
        if dv.is_zero():
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / dv

    def __str__(self):
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


RF_ZERO = RationalFunction.zero()
RF_ONE = RationalFunction.one()


class RationalMatrix:
    """Immutable rectangular matrix of rational functions."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(RationalFunction.coerce(e) for e in row) for row in entries)
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged matrix rows")
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("RationalMatrix is immutable")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix(
            [[RF_ONE if i == j else RF_ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(p: int, m: int) -> "RationalMatrix":
        return RationalMatrix([[RF_ZERO] * m for _ in range(p)])

    @staticmethod
    def diagonal(values, rows=None, cols=None) -> "RationalMatrix":
        values = [RationalFunction.coerce(v) for v in values]
        p = rows if rows is not None else len(values)
        m = cols if cols is not None else len(values)
        return RationalMatrix(
            [
                [values[i] if i == j and i < len(values) else RF_ZERO for j in range(m)]
                for i in range(p)
            ]
        )

    @staticmethod
    def scalar(f) -> "RationalMatrix":
        return RationalMatrix([[RationalFunction.coerce(f)]])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __add__(self, other):
        self._same_shape(other)
        return RationalMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other):
        self._same_shape(other)
        return RationalMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self):
        return RationalMatrix([[-a for a in row] for row in self.entries])

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionError(
                f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise DimensionError(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            return RationalMatrix(
                [
                    [
                        sum(
                            (self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                            RF_ZERO,
                        )
                        for j in range(other.cols)
                    ]
                    for i in range(self.rows)
                ]
            )
        f = RationalFunction.coerce(other)
        return RationalMatrix([[a * f for a in row] for row in self.entries])

    def __rmul__(self, other):
        f = RationalFunction.coerce(other)
        return RationalMatrix([[f * a for a in row] for row in self.entries])

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def map(self, fn) -> "RationalMatrix":
        return RationalMatrix([[fn(a) for a in row] for row in self.entries])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def det(self) -> RationalFunction:
        return det_rational(self)

    def inverse(self) -> "RationalMatrix":
        """Exact inverse by Gauss-Jordan elimination; raises on singular."""
        if not self.is_square():
            raise DimensionError("inverse of a non-square matrix")
        n = self.rows
        work = [list(row) for row in self.entries]
        aug = [[RF_ONE if i == j else RF_ZERO for j in range(n)] for i in range(n)]
        for col in range(n):
            pivot = None
            best = None
            for i in range(col, n):
                e = work[i][col]
                if not e.is_zero():
                    weight = e.num.degree + e.den.degree
                    if best is None or weight < best:
                        best, pivot = weight, i
            if pivot is None:
                raise ZeroDivisionError("matrix is singular over the fraction field")
            work[col], work[pivot] = work[pivot], work[col]
            aug[col], aug[pivot] = aug[pivot], aug[col]
            inv = work[col][col].inverse()
            work[col] = [e * inv for e in work[col]]
            aug[col] = [e * inv for e in aug[col]]
            for i in range(n):
                if i == col or work[i][col].is_zero():
                    continue
                q = work[i][col]
                work[i] = [a - q * b for a, b in zip(work[i], work[col])]
                aug[i] = [a - q * b for a, b in zip(aug[i], aug[col])]
        return RationalMatrix(aug)

    @staticmethod
    def vstack(top: "RationalMatrix", bottom: "RationalMatrix") -> "RationalMatrix":
        if top.cols != bottom.cols:
            raise DimensionError("vstack width mismatch")
        return RationalMatrix(list(top.entries) + list(bottom.entries))

    @staticmethod
    def hstack(left: "RationalMatrix", right: "RationalMatrix") -> "RationalMatrix":
        if left.rows != right.rows:
            raise DimensionError("hstack height mismatch")
        return RationalMatrix(
            [list(a) + list(b) for a, b in zip(left.entries, right.entries)]
        )

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.entries) + "]"

    def __repr__(self):
        return f"RationalMatrix({self})"


def det_rational(M: RationalMatrix) -> RationalFunction:
    """Exact determinant by elimination over the fraction field."""
    if not M.is_square():
        raise DimensionError("determinant of a non-square matrix")
    n = M.rows
    if n > DET_SIZE_CAP:
        raise DimensionError(f"exact determinant capped at {DET_SIZE_CAP}x{DET_SIZE_CAP}")
    work = [list(row) for row in M.entries]
    det = RF_ONE
    for col in range(n):
        pivot = None
        best = None
        for i in range(col, n):
            e = work[i][col]
            if not e.is_zero():
                weight = e.num.degree + e.den.degree
                if best is None or weight < best:
                    best, pivot = weight, i
        if pivot is None:
            return RF_ZERO
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        p = work[col][col]
        det = det * p
        inv = p.inverse()
        for i in range(col + 1, n):
            if work[i][col].is_zero():
                continue
            q = work[i][col] * inv
            work[i] = [a - q * b for a, b in zip(work[i], work[col])]
    return det


# --------------------------------------------------------------- Smith form


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _poly_smith(A):
    """Diagonalize a polynomial matrix by unimodular row/column operations.

    Returns (U, D, V) as lists of Poly with A = U * D * V, U and V square
    with nonzero constant determinant, D diagonal with monic entries each
    dividing the next.
    """
    p = len(A)
    m = len(A[0])
    D = [[e for e in row] for row in A]
    U = [[Poly.one() if i == j else Poly.zero() for j in range(p)] for i in range(p)]
    V = [[Poly.one() if i == j else Poly.zero() for j in range(m)] for i in range(m)]

    def row_op(i, j, q):
        # D_row_i -= q * D_row_j ; preserve A = U D V by U_col_j += q * U_col_i
        for c in range(m):
            D[i][c] = D[i][c] - q * D[j][c]
        for r in range(p):
            U[r][j] = U[r][j] + q * U[r][i]

    def col_op(j, i, q):
        # D_col_j -= q * D_col_i ; preserve by V_row_i += q * V_row_j
        for r in range(p):
            D[r][j] = D[r][j] - q * D[r][i]
        for c in range(m):
            V[i][c] = V[i][c] + q * V[j][c]

    for k in range(min(p, m)):
        while True:
            pivot = None
            best = None
            for i in range(k, p):
                for j in range(k, m):
                    if not D[i][j].is_zero() and (best is None or D[i][j].degree < best):
                        best, pivot = D[i][j].degree, (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != k:
                _swap_rows(D, k, pi)
                _swap_cols(U, k, pi)
            if pj != k:
                _swap_cols(D, k, pj)
                _swap_rows(V, k, pj)
            dirty = False
            for i in range(k + 1, p):
                if not D[i][k].is_zero():
                    q = D[i][k] // D[k][k]
                    row_op(i, k, q)
                    if not D[i][k].is_zero():
                        dirty = True
            for j in range(k + 1, m):
                if not D[k][j].is_zero():
                    q = D[k][j] // D[k][k]
                    col_op(j, k, q)
                    if not D[k][j].is_zero():
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(k + 1, p):
                for j in range(k + 1, m):
                    if not (D[i][j] % D[k][k]).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(k, offender, Poly.constant(-1))  # add offending row to row k
        if not D[k][k].is_zero():
            lead = D[k][k].leading()
            if lead != QQI_ONE:
                inv = lead.inverse()
                for c in range(m):
                    D[k][c] = D[k][c] * inv
                for r in range(p):
                    U[r][k] = U[r][k] * lead
    return U, D, V


def _poly_matrix_to_rational(M) -> RationalMatrix:
    return RationalMatrix([[RationalFunction(e) for e in row] for row in M])


def smith_mcmillan(M: RationalMatrix):
    """Smith-McMillan form: M = U * diag(e_i/psi_i) * V.

    U and V are unimodular polynomial matrices (nonzero constant
    determinant); the diagonal carries monic coprime pairs (e_i, psi_i)
    with e_i | e_{i+1} and psi_{i+1} | psi_i.  Zero diagonal slots (rank
    deficiency) are returned as (0, 1).
    """
    d = Poly.one()
    for row in M.entries:
        for e in row:
            d = poly_lcm(d, e.den)
    A = [
        [e.num * d.exact_div(e.den) for e in row]
        for row in M.entries
    ]
    U, D, V = _poly_smith(A)
    pairs = []
    for i in range(min(M.rows, M.cols)):
        s = D[i][i]
        if s.is_zero():
            pairs.append((Poly.zero(), Poly.one()))
        else:
            g = poly_gcd(s, d)
            pairs.append((s.exact_div(g), d.exact_div(g)))
    return _poly_matrix_to_rational(U), pairs, _poly_matrix_to_rational(V)


# ---------------------------------------------------- coprime factorization


@dataclass(frozen=True)
class CoprimeFactorization:
    """A factorization P = N D^{-1} (right) or D^{-1} N (left) plus witnesses.

    Right: X N + Y D = I; left: N X + D Y = I.  All entries live in the
    ring of stable rational functions when produced by the constructors
    in this module.
    """

    side: str
    N: RationalMatrix
    D: RationalMatrix
    X: RationalMatrix
    Y: RationalMatrix

    def __post_init__(self):
        if self.side not in ("right", "left"):
            raise ValueError("side must be 'right' or 'left'")


def has_no_poles_in_closed_disk(f: RationalFunction, tol: float = DEFAULT_BOUNDARY_TOL) -> bool:
    """Strict stability: every pole has modulus > 1 + tol."""
    return all(abs(r) > 1.0 + tol for r, _ in f.poles())


def _stable_base(gamma: GaussianRational, k: int) -> Poly:
    return Poly((-gamma, QQI_ONE)) ** k


def right_coprime_factorization(
    P: RationalMatrix, gamma=GaussianRational(2)
) -> CoprimeFactorization:
    """Right coprime factorization over stable rationals on the disk.

    Built from the Smith-McMillan form with denominators (z - gamma)^k;
    gamma must satisfy |gamma| > 1 so those denominators have no zeros in
    the closed disk.  Bezout witnesses come from scalar identities
    x*e + y*psi = (z - gamma)^k per diagonal entry.
    """
    gamma = GaussianRational.coerce(gamma)
    if gamma.abs2() <= 1:
        raise ValueError("gamma must lie strictly outside the closed unit disk")
    p, m = P.rows, P.cols

    if all(has_no_poles_in_closed_disk(e) for row in P.entries for e in row):
        return CoprimeFactorization(
            side="right",
            N=P,
            D=RationalMatrix.identity(m),
            X=RationalMatrix.zeros(m, p),
            Y=RationalMatrix.identity(m),
        )

    U, pairs, V = smith_mcmillan(P)
    r = min(p, m)
    n_diag = []
    d_diag = [RF_ONE] * m
    x_diag = []
    y_diag = [RF_ONE] * m
    for i in range(r):
        e_i, psi_i = pairs[i]
        if e_i.is_zero():
            n_diag.append(RF_ZERO)
            x_diag.append(RF_ZERO)
            continue
        k = max(e_i.degree, psi_i.degree)
        b = _stable_base(gamma, k)
        g, x0, y0 = poly_xgcd(e_i, psi_i)
        if g.degree != 0:
            raise ValueError("Smith-McMillan pair was not coprime")
        xb = x0 * b
        if psi_i.degree > 0:
            x_red = xb % psi_i
        else:
            x_red = Poly.zero()
        y_red = (b - x_red * e_i).exact_div(psi_i)
        n_diag.append(RationalFunction(e_i, b))
        d_diag[i] = RationalFunction(psi_i, b)
        x_diag.append(RationalFunction(x_red))
        y_diag[i] = RationalFunction(y_red)

    sigma_n = RationalMatrix.diagonal(n_diag, rows=p, cols=m)
    sigma_d = RationalMatrix.diagonal(d_diag, rows=m, cols=m)
    sigma_x = RationalMatrix.diagonal(x_diag, rows=m, cols=p)
    sigma_y = RationalMatrix.diagonal(y_diag, rows=m, cols=m)

    N = U * sigma_n
    D = V.inverse() * sigma_d
    X = sigma_x * U.inverse()
    Y = sigma_y * V
    return CoprimeFactorization(side="right", N=N, D=D, X=X, Y=Y)


def left_coprime_factorization(
    C: RationalMatrix, gamma=GaussianRational(2)
) -> CoprimeFactorization:
    """Left coprime factorization C = D^{-1} N via the transposed right one."""
    rf = right_coprime_factorization(C.transpose(), gamma)
    return CoprimeFactorization(
        side="left",
        N=rf.N.transpose(),
        D=rf.D.transpose(),
        X=rf.X.transpose(),
        Y=rf.Y.transpose(),
    )


def verify_bezout(f: CoprimeFactorization, P: RationalMatrix | None = None) -> bool:
    """Exact check of the Bezout identity and, when P is given, of the
    factorization identity itself."""
    try:
        if f.side == "right":
            m = f.D.rows
            if (f.X * f.N + f.Y * f.D) != RationalMatrix.identity(m):
                return False
            if P is not None:
                if det_rational(f.D).is_zero():
                    return False
                if f.N * f.D.inverse() != P:
                    return False
        else:
            pdim = f.D.rows
            if (f.N * f.X + f.D * f.Y) != RationalMatrix.identity(pdim):
                return False
            if P is not None:
                if det_rational(f.D).is_zero():
                    return False
                if f.D.inverse() * f.N != P:
                    return False
    except DimensionError:
        return False
    return True


# -------------------------------------------------------- exact disk winding


def classify_circle_roots(p: Poly, tol: float = DEFAULT_BOUNDARY_TOL):
    """Count roots of p inside the unit circle, on it, and near it.

    Returns (inside, exactly_on, degenerate): ``exactly_on`` counts roots
    confirmed on the circle by exact evaluation at a snapped Gaussian
    rational; ``degenerate`` is True when a root lies within tol of the
    circle without such confirmation.
    """
    inside = 0
    on_circle = 0
    degenerate = False
    if p.degree < 1:
        return 0, 0, False
    for root, mult in poly_roots(p):
        if unit_circle_distance(root) < tol:
            cand = rational_root_candidate(root)
            if cand is not None and cand.abs2() == 1 and p(cand).is_zero():
                on_circle += mult
            else:
                degenerate = True
        elif abs(root) < 1.0:
            inside += mult
    return inside, on_circle, degenerate


def disk_winding_exact(f: RationalFunction, tol: float = DEFAULT_BOUNDARY_TOL) -> int:
    """Winding of t -> f(e^{it}) by the argument principle.

    Equals (zeros of f in the open disk) - (poles of f in the open disk).
    Raises DegenerateBoundaryError when a zero or pole lies within tol of
    the circle.
    """
    if f.is_zero():
        raise DegenerateBoundaryError("winding of the zero function is undefined")
    nz, z_on, z_deg = classify_circle_roots(f.num, tol)
    np_, p_on, p_deg = classify_circle_roots(f.den, tol)
    if z_on or p_on or z_deg or p_deg:
        raise DegenerateBoundaryError(
            "zero or pole within boundary tolerance of the unit circle"
        )
    return nz - np_
