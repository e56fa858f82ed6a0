"""Laplace-expansion minor reports and the zero-cofactor audit.

For a nonsingular square matrix with nonzero entries, at most n-2 of the
n minors along any fixed row or column can vanish.  The audit samples random
matrices, recombines each Laplace expansion, checks the recombination equals
the determinant exactly, and tallies zero minors on nonsingular samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .families import ElementSet
from .matrices import MatrixInstance, det, random_matrix
from .scalars import Scalar


@dataclass(frozen=True)
class MinorReport:
    """Minors along one row or column, with the signed recombination."""

    axis: str
    index: int
    minors: tuple[Scalar, ...]
    reconstruction: Scalar
    zero_count: int
    singular: bool


def _delete_line(X: MatrixInstance, row: int, col: int) -> MatrixInstance:
    entries = tuple(
        tuple(value for j, value in enumerate(r) if j != col)
        for i, r in enumerate(X.entries)
        if i != row
    )
    return MatrixInstance(X.m - 1, X.n - 1, entries)


def laplace_report(
    X: MatrixInstance, elements: ElementSet, axis: str = "row", index: int = 0
) -> MinorReport:
    """Expand det(X) along one line and report the n minors (0-based index)."""
    if X.m != X.n:
        raise ValueError("Laplace expansion needs a square matrix")
    if axis not in ("row", "col"):
        raise ValueError("axis must be 'row' or 'col'")
    n = X.n
    if not 0 <= index < n:
        raise ValueError(f"line index {index} outside 0..{n - 1}")
    if n < 2:
        raise ValueError("need n >= 2")
    minors = []
    recon = Scalar.zero(elements.field)
    for j in range(n):
        row, col = (index, j) if axis == "row" else (j, index)
        minor = det(_delete_line(X, row, col), elements)
        minors.append(minor)
        entry = elements[X.entries[row][col]]
        term = entry * minor
        recon = recon + term if (row + col) % 2 == 0 else recon - term
    zero_count = sum(1 for m in minors if m.is_zero())
    return MinorReport(
        axis=axis,
        index=index,
        minors=tuple(minors),
        reconstruction=recon,
        zero_count=zero_count,
        singular=recon.is_zero(),
    )


@dataclass(frozen=True)
class AuditSummary:
    n: int
    trials: int
    seed: int
    samples: int
    nonsingular_checked: int
    singular_skipped: int
    max_zero_count: int
    zero_count_bound: int
    reconstruction_mismatches: int
    violations: tuple[tuple[tuple[int, ...], ...], ...]
    passed: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "samples": self.samples,
            "nonsingular_checked": self.nonsingular_checked,
            "singular_skipped": self.singular_skipped,
            "max_zero_count": self.max_zero_count,
            "zero_count_bound": self.zero_count_bound,
            "reconstruction_mismatches": self.reconstruction_mismatches,
            "violations": [
                [list(row) for row in matrix] for matrix in self.violations
            ],
            "passed": self.passed,
        }


def audit_prop_zero_cofactors(
    elements: ElementSet,
    n: int,
    trials: int,
    seed: int,
    *,
    min_nonsingular: int = 0,
) -> AuditSummary:
    """Sample matrices, verify every Laplace recombination equals det, and
    check the n-2 zero-minor bound on each nonsingular sample.

    Draws `trials` samples, continuing past that if needed until
    `min_nonsingular` nonsingular matrices have been checked.  Singular draws
    are skipped for the zero-minor bound (it does not apply to them) but
    still participate in the reconstruction equality check.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if trials < 1:
        raise ValueError("need trials >= 1")
    rng = random.Random(seed)
    bound = n - 2
    samples = 0
    nonsingular = 0
    singular = 0
    max_zero = 0
    mismatches = 0
    violations: list[tuple[tuple[int, ...], ...]] = []
    cap = 100 * max(trials, min_nonsingular, 1)
    while samples < trials or nonsingular < min_nonsingular:
        if samples >= cap:
            raise RuntimeError(
                f"could not reach {min_nonsingular} nonsingular samples in {cap} draws"
            )
        X = random_matrix(elements, n, n, rng)
        samples += 1
        value = det(X, elements)
        is_singular = value.is_zero()
        matrix_max_zero = 0
        for axis in ("row", "col"):
            for index in range(n):
                report = laplace_report(X, elements, axis, index)
                if report.reconstruction != value:
                    mismatches += 1
                matrix_max_zero = max(matrix_max_zero, report.zero_count)
        if is_singular:
            singular += 1
            continue
        nonsingular += 1
        max_zero = max(max_zero, matrix_max_zero)
        if matrix_max_zero > bound:
            violations.append(X.entries)
    passed = not violations and mismatches == 0
    return AuditSummary(
        n=n,
        trials=trials,
        seed=seed,
        samples=samples,
        nonsingular_checked=nonsingular,
        singular_skipped=singular,
        max_zero_count=max_zero,
        zero_count_bound=bound,
        reconstruction_mismatches=mismatches,
        violations=tuple(violations),
        passed=passed,
    )
