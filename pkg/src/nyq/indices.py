"""Abstract index values and the axiom harness for ring instances.

Every concrete ring instance pairs a ring R of stable elements with an
ambient algebra S in which invertibility can be tested and an index can
be computed.  The index lives in an abelian group realized here as one
of three variants: an integer, a real with a comparison tolerance, or a
(real, integer) pair.  Mixing variants is a hard error because each ring
instance fixes its group once and for all.

``IndexOutcome`` packages what a ring instance reports about one
element: whether it is invertible in S, its index when it is, and a
certificate (observed minimum modulus plus a certified flag).  Outcomes
may also be marked degenerate when a boundary test came within tolerance
of zero; degenerate outcomes are reported, not raised, so batch runs can
complete.

``axiom_suite`` samples elements from an instance and checks the four
contract axioms: closed commutative unital arithmetic, membership of
samples and products in R, additivity of the index on products, and the
equivalence between R-invertibility and a trivial index for elements
invertible in S.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import VariantMismatchError

DEFAULT_REAL_TOL = 1e-6


@dataclass(frozen=True)
class IndexValue:
    """Element of the index group: int, real, or (real, int) pair.

    Exactly one variant is populated; ``variant`` is one of "int",
    "real", "pair".  Real components compare within ``tol``; integer
    components compare exactly.
    """

    variant: str
    int_part: int = 0
    real_part: float = 0.0
    tol: float = DEFAULT_REAL_TOL

    def __post_init__(self):
        if self.variant not in ("int", "real", "pair"):
            raise ValueError(f"unknown index variant {self.variant!r}")
        if self.tol < 0:
            raise ValueError("tolerance must be nonnegative")

    @staticmethod
    def integer(n: int) -> "IndexValue":
        return IndexValue("int", int_part=int(n))

    @staticmethod
    def real(x: float, tol: float = DEFAULT_REAL_TOL) -> "IndexValue":
        return IndexValue("real", real_part=float(x), tol=tol)

    @staticmethod
    def pair(x: float, n: int, tol: float = DEFAULT_REAL_TOL) -> "IndexValue":
        return IndexValue("pair", real_part=float(x), int_part=int(n), tol=tol)

    def is_identity(self) -> bool:
        if self.variant == "int":
            return self.int_part == 0
        if self.variant == "real":
            return abs(self.real_part) <= self.tol
        return abs(self.real_part) <= self.tol and self.int_part == 0

    def combine(self, other: "IndexValue") -> "IndexValue":
        if not isinstance(other, IndexValue) or other.variant != self.variant:
            raise VariantMismatchError(
                f"cannot combine index variants "
                f"{self.variant!r} and {getattr(other, 'variant', type(other).__name__)!r}: "
                "the elements come from incompatible ring instances"
            )
        return IndexValue(
            self.variant,
            int_part=self.int_part + other.int_part,
            real_part=self.real_part + other.real_part,
            tol=max(self.tol, other.tol),
        )

    def negate(self) -> "IndexValue":
        return IndexValue(
            self.variant,
            int_part=-self.int_part,
            real_part=-self.real_part,
            tol=self.tol,
        )

    def __eq__(self, other):
        if not isinstance(other, IndexValue):
            return NotImplemented
        if self.variant != other.variant:
            return False
        tol = max(self.tol, other.tol)
        if self.variant == "int":
            return self.int_part == other.int_part
        if self.variant == "real":
            return abs(self.real_part - other.real_part) <= tol
        return (
            self.int_part == other.int_part
            and abs(self.real_part - other.real_part) <= tol
        )

    def __hash__(self):
        return hash(self.variant)

    def describe(self):
        if self.variant == "int":
            return self.int_part
        if self.variant == "real":
            return self.real_part
        return (self.real_part, self.int_part)

    def __str__(self):
        return str(self.describe())


def index_combine(a: IndexValue, b: IndexValue) -> IndexValue:
    """Group operation: componentwise addition of same-variant values."""
    return a.combine(b)


def index_is_identity(a: IndexValue) -> bool:
    return a.is_identity()


def index_negate(a: IndexValue) -> IndexValue:
    return a.negate()


@dataclass(frozen=True)
class Certificate:
    min_modulus: float
    certified: bool


@dataclass(frozen=True)
class IndexOutcome:
    """What a ring instance reports about one element of S."""

    invertible_in_S: bool
    index: IndexValue | None
    certificate: Certificate
    degenerate: bool = False
    reason: str = ""

    def __post_init__(self):
        if self.invertible_in_S and self.index is None:
            raise ValueError("invertible outcomes must carry an index")
        if not self.invertible_in_S and self.index is not None:
            raise ValueError("non-invertible outcomes must not carry an index")
        if self.invertible_in_S and not self.certificate.min_modulus > 0:
            raise ValueError("invertible outcomes need a positive minimum modulus")

    def to_json(self):
        return {
            "invertible_in_S": self.invertible_in_S,
            "index": None if self.index is None else {
                "variant": self.index.variant,
                "value": self.index.describe(),
                "tol": self.index.tol,
            },
            "min_modulus": self.certificate.min_modulus,
            "certified": self.certificate.certified,
            "degenerate": self.degenerate,
            "reason": self.reason,
        }


def degenerate_outcome(reason: str, min_modulus: float = 0.0) -> IndexOutcome:
    return IndexOutcome(
        invertible_in_S=False,
        index=None,
        certificate=Certificate(min_modulus=min_modulus, certified=False),
        degenerate=True,
        reason=reason,
    )


def not_invertible_outcome(reason: str, min_modulus: float = 0.0,
                           certified: bool = True) -> IndexOutcome:
    return IndexOutcome(
        invertible_in_S=False,
        index=None,
        certificate=Certificate(min_modulus=min_modulus, certified=certified),
        reason=reason,
    )


# ------------------------------------------------------------- axiom harness


@dataclass
class AxiomReport:
    """Per-axiom pass/fail counts plus a list of failure descriptions."""

    instance: str
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, axiom: str, ok: bool, detail: str = ""):
        passed, failed = self.counts.get(axiom, (0, 0))
        if ok:
            self.counts[axiom] = (passed + 1, failed)
        else:
            self.counts[axiom] = (passed, failed + 1)
            self.failures.append(f"{axiom}: {detail}")

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        lines = [f"axiom suite for {self.instance}:"]
        for axiom in sorted(self.counts):
            passed, failed = self.counts[axiom]
            lines.append(f"  {axiom}: {passed} passed, {failed} failed")
        if self.failures:
            lines.append("  failures:")
            lines.extend(f"    {f}" for f in self.failures[:10])
        return "\n".join(lines)


def axiom_suite(ring, sampler, n: int, rng) -> AxiomReport:
    """Check the (R, S, index) contract on n sampled elements.

    ``ring`` is any object providing one(), mul(a, b), add(a, b),
    approx_equal(a, b), is_member(x), index(x) -> IndexOutcome and
    invertible_in_R(x) -> bool | None (None meaning undecided,
    skipped).  ``sampler(rng)`` yields ring elements with whatever
    distribution the instance documents.  Failures are recorded, never
    raised.
    """
    report = AxiomReport(instance=getattr(ring, "name", type(ring).__name__))
    one = ring.one()
    samples = [sampler(rng) for _ in range(n)]

    out_one = ring.index(one)
    ok = (
        out_one.invertible_in_S
        and out_one.index is not None
        and out_one.index.is_identity()
    )
    report.record("A3-unit", ok, "index of the ring unit is not the identity")

    for i, a in enumerate(samples):
        b = samples[(i + 1) % n]
        c = samples[(i + 2) % n]

        ab = ring.mul(a, b)
        ba = ring.mul(b, a)
        report.record("A1-commutative", ring.approx_equal(ab, ba), f"sample {i}")
        report.record(
            "A1-associative",
            ring.approx_equal(ring.mul(ab, c), ring.mul(a, ring.mul(b, c))),
            f"sample {i}",
        )
        report.record("A1-unital", ring.approx_equal(ring.mul(a, one), a), f"sample {i}")
        report.record(
            "A1-distributive",
            ring.approx_equal(ring.mul(a, ring.add(b, c)),
                              ring.add(ring.mul(a, b), ring.mul(a, c))),
            f"sample {i}",
        )

        report.record("A2-membership", bool(ring.is_member(a)), f"sample {i}")
        report.record("A2-closure", bool(ring.is_member(ab)), f"product {i}")

        oa = ring.index(a)
        ob = ring.index(b)
        oab = ring.index(ab)
        if (
            oa.invertible_in_S
            and ob.invertible_in_S
            and oab.invertible_in_S
            and not (oa.degenerate or ob.degenerate or oab.degenerate)
        ):
            combined = index_combine(oa.index, ob.index)
            report.record(
                "A3-product",
                combined == oab.index,
                f"sample {i}: {combined} vs {oab.index}",
            )

        decided = ring.invertible_in_R(a)
        if decided is not None and oa.invertible_in_S and not oa.degenerate:
            via_index = oa.index.is_identity()
            report.record(
                "A4-equivalence",
                decided == via_index,
                f"sample {i}: R-invertible={decided} but index={oa.index}",
            )
    return report
