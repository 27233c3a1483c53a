"""Stability verdicts for feedback loops over rings of stable transfer functions.

The decision procedure tests invertibility of three determinants in a
boundary algebra and the vanishing of the sum of their indices; the
package provides the exact rational algebra, coprime factorizations,
winding machinery and five concrete ring instances that make the test
computable, plus the ``nyq`` command line front end.
"""

from .delay import CDElement, cd_index, cd_membership
from .feedback import (
    Verdict,
    closed_loop,
    direct_stability_oracle,
    nyquist_verdict,
    stack_matrices,
)
from .indices import (
    AxiomReport,
    Certificate,
    IndexOutcome,
    IndexValue,
    axiom_suite,
    index_combine,
    index_is_identity,
)
from .polydisk import MultiPoly, MultiPolyRatio, polydisk_index
from .polynomials import GaussianRational, Poly, poly_gcd, poly_roots
from .rational import (
    CoprimeFactorization,
    RationalFunction,
    RationalMatrix,
    det_rational,
    disk_winding_exact,
    left_coprime_factorization,
    right_coprime_factorization,
    smith_mcmillan,
    verify_bezout,
)
from .rings import (
    RINGS,
    apw_index,
    apw_membership,
    disk_index,
    disk_membership,
    hardy_index_restricted,
    make_ring,
)
from .winding import (
    ExponentialPolynomial,
    MeanMotionConfig,
    WindingConfig,
    WindingResult,
    average_winding,
    certified_min_modulus,
    circle_curve,
    dominance_winding,
    phase_unwrap,
    winding_number,
)

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "CDElement",
    "Certificate",
    "CoprimeFactorization",
    "ExponentialPolynomial",
    "GaussianRational",
    "IndexOutcome",
    "IndexValue",
    "MeanMotionConfig",
    "MultiPoly",
    "MultiPolyRatio",
    "Poly",
    "RINGS",
    "RationalFunction",
    "RationalMatrix",
    "Verdict",
    "WindingConfig",
    "WindingResult",
    "apw_index",
    "apw_membership",
    "average_winding",
    "axiom_suite",
    "cd_index",
    "cd_membership",
    "certified_min_modulus",
    "circle_curve",
    "closed_loop",
    "det_rational",
    "direct_stability_oracle",
    "disk_index",
    "disk_membership",
    "disk_winding_exact",
    "dominance_winding",
    "hardy_index_restricted",
    "index_combine",
    "index_is_identity",
    "left_coprime_factorization",
    "make_ring",
    "nyquist_verdict",
    "phase_unwrap",
    "poly_gcd",
    "poly_roots",
    "polydisk_index",
    "right_coprime_factorization",
    "smith_mcmillan",
    "stack_matrices",
    "verify_bezout",
    "winding_number",
]
