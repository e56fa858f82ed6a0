"""Laplace minor reports and the zero-cofactor audit.

Every reconstruction must equal the determinant exactly, and nonsingular
matrices with nonzero entries may have at most n-2 vanishing minors along
any one line.
"""

import random

import pytest

from unitcount import Q, QI, MatrixInstance, det, parse_scalar
from unitcount.families import ElementSet, Geometric, materialize
from unitcount.minors import audit_prop_zero_cofactors, laplace_report

import oracles
from conftest import int_element_set, rand_element_set


@pytest.mark.parametrize("field", [Q, QI])
@pytest.mark.parametrize("axis", ["row", "col"])
def test_reconstruction_equals_det(field, axis):
    rng = random.Random(hash((field, axis)) % 10_000)
    for _ in range(25):
        elements = rand_element_set(rng, field, size=4, span=5, max_den=2)
        n = rng.choice([2, 3, 4])
        rows = [[rng.randrange(len(elements)) for _ in range(n)] for _ in range(n)]
        X = MatrixInstance.from_rows(rows)
        value = det(X, elements)
        index = rng.randrange(n)
        report = laplace_report(X, elements, axis, index)
        assert report.reconstruction == value
        assert report.singular == value.is_zero()
        assert report.zero_count == sum(1 for m in report.minors if m.is_zero())
        assert len(report.minors) == n


def test_minors_match_submatrix_determinants():
    elements = int_element_set([1, 2, 3, 5])
    X = MatrixInstance.from_rows([[0, 1, 2], [3, 0, 1], [2, 3, 0]])
    report = laplace_report(X, elements, "row", 1)
    scal = X.scalar_rows(elements)
    for j, minor in enumerate(report.minors):
        sub = [
            [oracles.pair(v) for k, v in enumerate(row) if k != j]
            for i, row in enumerate(scal)
            if i != 1
        ]
        assert oracles.pair(minor) == oracles.det_pairs(sub)


def test_known_singular_example_is_flagged_not_bounded():
    # rank 1 matrix: every 2x2 minor of the 3x3 vanishes
    elements = int_element_set([1, 2, 4])
    X = MatrixInstance.from_rows([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    # rows (1,2,4), (2,4,1), (4,1,2): not rank 1, keep a genuinely singular one
    Y = MatrixInstance.from_rows([[0, 1, 2], [0, 1, 2], [1, 2, 0]])
    report = laplace_report(Y, elements, "col", 0)
    assert report.singular
    assert report.reconstruction.is_zero()
    del X


def test_nonsingular_zero_minor_bound_small_cases():
    # exhaustive over 3x3 matrices from a 2-element set: 2^9 = 512 cases
    elements = int_element_set([1, 2])
    for code in range(2 ** 9):
        rows = [[(code >> (3 * i + j)) & 1 for j in range(3)] for i in range(3)]
        X = MatrixInstance.from_rows(rows)
        if det(X, elements).is_zero():
            continue
        for axis in ("row", "col"):
            for index in range(3):
                report = laplace_report(X, elements, axis, index)
                assert report.zero_count <= 1


def test_laplace_validation():
    elements = int_element_set([1, 2])
    square = MatrixInstance.from_rows([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        laplace_report(MatrixInstance.from_rows([[0, 1]]), elements)
    with pytest.raises(ValueError):
        laplace_report(square, elements, "diag", 0)
    with pytest.raises(ValueError):
        laplace_report(square, elements, "row", 2)
    with pytest.raises(ValueError):
        laplace_report(MatrixInstance.from_rows([[0]]), elements, "row", 0)


@pytest.mark.parametrize(
    "elements",
    [
        materialize(Geometric(parse_scalar("2", Q), 1, 5)),
        materialize(Geometric(parse_scalar("1+i", QI), 1, 5)),
    ],
    ids=["rational-powers", "gaussian-powers"],
)
def test_audit_passes_on_structured_sets(elements):
    summary = audit_prop_zero_cofactors(elements, 3, trials=60, seed=7)
    assert summary.passed
    assert summary.reconstruction_mismatches == 0
    assert summary.max_zero_count <= summary.zero_count_bound == 1
    assert summary.samples == 60
    assert summary.nonsingular_checked + summary.singular_skipped == summary.samples
    assert summary.violations == ()


def test_audit_min_nonsingular_keeps_drawing():
    elements = int_element_set([1, 2, 3])
    base = audit_prop_zero_cofactors(elements, 2, trials=5, seed=3)
    forced = audit_prop_zero_cofactors(
        elements, 2, trials=5, seed=3, min_nonsingular=base.nonsingular_checked + 10
    )
    assert forced.nonsingular_checked >= base.nonsingular_checked + 10
    assert forced.samples > 5


def test_audit_deterministic_and_json_shape():
    elements = int_element_set([1, 2, 3])
    a = audit_prop_zero_cofactors(elements, 3, trials=40, seed=11)
    b = audit_prop_zero_cofactors(elements, 3, trials=40, seed=11)
    assert a == b
    blob = a.to_json()
    assert blob["n"] == 3 and blob["trials"] == 40 and blob["seed"] == 11
    assert blob["passed"] is True
    assert blob["violations"] == []
    assert set(blob) == {
        "n",
        "trials",
        "seed",
        "samples",
        "nonsingular_checked",
        "singular_skipped",
        "max_zero_count",
        "zero_count_bound",
        "reconstruction_mismatches",
        "violations",
        "passed",
    }


def test_audit_validation():
    elements = int_element_set([1, 2])
    with pytest.raises(ValueError):
        audit_prop_zero_cofactors(elements, 1, trials=5, seed=0)
    with pytest.raises(ValueError):
        audit_prop_zero_cofactors(elements, 2, trials=0, seed=0)
