import random

import pytest

from nyq.errors import VariantMismatchError
from nyq.indices import (
    Certificate,
    IndexOutcome,
    IndexValue,
    index_combine,
    index_is_identity,
    index_negate,
)


def test_combine_examples():
    assert index_combine(IndexValue.integer(2), IndexValue.integer(-2)) == IndexValue.integer(0)
    assert index_combine(IndexValue.real(1.5), IndexValue.real(0.0)) == IndexValue.real(1.5)
    assert index_combine(
        IndexValue.pair(-1.0, 0), IndexValue.pair(0.0, -1)
    ) == IndexValue.pair(-1.0, -1)


def test_identity_examples():
    assert index_is_identity(IndexValue.integer(0))
    assert index_is_identity(IndexValue.real(1e-12, tol=1e-9))
    assert not index_is_identity(IndexValue.pair(0.0, -1))


def test_variant_mismatch():
    with pytest.raises(VariantMismatchError):
        index_combine(IndexValue.integer(1), IndexValue.real(1.0))
    with pytest.raises(VariantMismatchError):
        index_combine(IndexValue.pair(0.0, 1), IndexValue.integer(1))


def test_tolerance_propagates_as_max():
    a = IndexValue.real(1.0, tol=1e-8)
    b = IndexValue.real(2.0, tol=1e-3)
    assert index_combine(a, b).tol == 1e-3


def test_negate_inverse():
    for v in (IndexValue.integer(3), IndexValue.real(0.7), IndexValue.pair(1.5, -2)):
        assert index_is_identity(index_combine(v, index_negate(v)))


def test_real_equality_uses_tolerance():
    assert IndexValue.real(1.0, tol=1e-6) == IndexValue.real(1.0 + 5e-7, tol=1e-6)
    assert IndexValue.real(1.0, tol=1e-6) != IndexValue.real(1.0 + 5e-6, tol=1e-6)
    assert IndexValue.pair(0.0, 1) != IndexValue.pair(0.0, 2)


def test_group_laws_random():
    rng = random.Random(0)
    for _ in range(200):
        variant = rng.choice(["int", "real", "pair"])
        def sample():
            if variant == "int":
                return IndexValue.integer(rng.randint(-5, 5))
            if variant == "real":
                return IndexValue.real(rng.uniform(-2, 2))
            return IndexValue.pair(rng.uniform(-2, 2), rng.randint(-5, 5))
        a, b, c = sample(), sample(), sample()
        assert index_combine(a, b) == index_combine(b, a)
        assert index_combine(index_combine(a, b), c) == index_combine(a, index_combine(b, c))


def test_outcome_invariants():
    with pytest.raises(ValueError):
        IndexOutcome(True, None, Certificate(1.0, True))
    with pytest.raises(ValueError):
        IndexOutcome(True, IndexValue.integer(0), Certificate(0.0, True))
    with pytest.raises(ValueError):
        IndexOutcome(False, IndexValue.integer(0), Certificate(0.0, False))
    ok = IndexOutcome(True, IndexValue.integer(1), Certificate(0.5, True))
    assert ok.to_json()["index"]["value"] == 1
