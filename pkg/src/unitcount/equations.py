"""Exact solution counting for linear equations with variables in a finite set.

The core counter meets in the middle: it enumerates partial sums of the first
half of the variables into a hash table and streams the second half against
it, turning an A^n scan into roughly A^(n/2) work and memory.  When the table
would exceed the entry budget the left half is split into prefix chunks and
the right half is streamed once per chunk, trading time for memory without
giving up exactness or determinism.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from .families import ElementSet
from .scalars import FieldMismatchError, Scalar, parse_scalar

# Cap on hash-table entries for the meet-in-the-middle join.
DEFAULT_MAX_ENTRIES = 2_000_000


@dataclass(frozen=True)
class EquationSpec:
    """a_1*x_1 + ... + a_n*x_n = rhs with all a_j nonzero."""

    coeffs: tuple[Scalar, ...]
    rhs: Scalar

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("equation needs at least one coefficient")
        field = self.coeffs[0].field
        for coeff in self.coeffs:
            if coeff.field != field:
                raise ValueError("equation mixes fields")
            if coeff.is_zero():
                raise ValueError("zero coefficient")
        if self.rhs.field != field:
            raise ValueError("rhs field differs from coefficient field")

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def field(self) -> str:
        return self.coeffs[0].field

    def is_homogeneous(self) -> bool:
        return self.rhs.is_zero()


def equation_to_json(eq: EquationSpec) -> dict:
    return {
        "coeffs": [c.text() for c in eq.coeffs],
        "rhs": eq.rhs.text(),
        "field": eq.field,
    }


def equation_from_json(obj: dict) -> EquationSpec:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ValueError("equation object needs a 'coeffs' key")
    field = obj.get("field", "Q")
    coeffs = tuple(parse_scalar(c, field) for c in obj["coeffs"])
    rhs = parse_scalar(obj.get("rhs", "0"), field)
    return EquationSpec(coeffs=coeffs, rhs=rhs)


def load_equation(path: str | Path) -> EquationSpec:
    with open(path, "r", encoding="utf-8") as handle:
        return equation_from_json(json.load(handle))


def _term_table(eq: EquationSpec, elements: ElementSet) -> list[list[Scalar]]:
    if elements.field != eq.field:
        raise FieldMismatchError(
            f"equation field {eq.field} does not match set field {elements.field}"
        )
    return [[coeff * x for x in elements] for coeff in eq.coeffs]


def _tally_sums(
    terms: list[list[Scalar]], start: Scalar, table: dict[Scalar, int]
) -> None:
    """Add every sum start + t_1 + ... over the term lists into table."""
    if not terms:
        table[start] = table.get(start, 0) + 1
        return
    head, rest = terms[0], terms[1:]
    for term in head:
        _tally_sums(rest, start + term, table)


def _stream_lookups(
    terms: list[list[Scalar]], start: Scalar, table: dict[Scalar, int]
) -> int:
    """Sum table[start - (t_1 + ...)] over the term lists."""
    if not terms:
        return table.get(start, 0)
    head, rest = terms[0], terms[1:]
    return sum(_stream_lookups(rest, start - term, table) for term in head)


def count_solutions(
    eq: EquationSpec,
    elements: ElementSet,
    *,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> int:
    """Exact number of tuples in elements^n satisfying the equation."""
    terms = _term_table(eq, elements)
    size = len(elements)
    half = (eq.n + 1) // 2
    left, right = terms[:half], terms[half:]
    zero = Scalar.zero(eq.field)

    # Prefix-chunk the left block until the remaining table fits the budget.
    prefix = 0
    while prefix < half and size ** (half - prefix) > max_entries:
        prefix += 1
    prefix_terms, body_terms = left[:prefix], left[prefix:]

    total = 0
    prefix_sums: list[Scalar] = []

    def walk_prefix(level: int, acc: Scalar) -> None:
        if level == len(prefix_terms):
            prefix_sums.append(acc)
            return
        for term in prefix_terms[level]:
            walk_prefix(level + 1, acc + term)

    walk_prefix(0, zero)
    for base in prefix_sums:
        table: dict[Scalar, int] = {}
        _tally_sums(body_terms, base, table)
        total += _stream_lookups(right, eq.rhs, table)
    return total


def count_system_sum_squares(
    n: int,
    elements: ElementSet,
    *,
    max_entries: int = DEFAULT_MAX_ENTRIES,
) -> int:
    """Count tuples with x_1 + ... + x_n = 0 and x_1^2 + ... + x_n^2 = 0.

    Same meet-in-the-middle join as count_solutions but keyed on the pair
    (partial sum, partial sum of squares).
    """
    if n < 1:
        raise ValueError("need n >= 1")
    pairs = [(x, x.square()) for x in elements]
    zero = Scalar.zero(elements.field)
    half = (n + 1) // 2
    size = len(elements)

    prefix = 0
    while prefix < half and size ** (half - prefix) > max_entries:
        prefix += 1

    def tally(levels: int, s: Scalar, q: Scalar, table: dict) -> None:
        if levels == 0:
            key = (s, q)
            table[key] = table.get(key, 0) + 1
            return
        for x, xx in pairs:
            tally(levels - 1, s + x, q + xx, table)

    def stream(levels: int, s: Scalar, q: Scalar, table: dict) -> int:
        if levels == 0:
            return table.get((s, q), 0)
        return sum(stream(levels - 1, s - x, q - xx, table) for x, xx in pairs)

    prefix_pairs: list[tuple[Scalar, Scalar]] = []

    def walk_prefix(levels: int, s: Scalar, q: Scalar) -> None:
        if levels == 0:
            prefix_pairs.append((s, q))
            return
        for x, xx in pairs:
            walk_prefix(levels - 1, s + x, q + xx)

    walk_prefix(prefix, zero, zero)
    total = 0
    for s0, q0 in prefix_pairs:
        table: dict[tuple[Scalar, Scalar], int] = {}
        tally(half - prefix, s0, q0, table)
        total += stream(n - half, zero, zero, table)
    return total


@dataclass(frozen=True)
class SubsumClassification:
    """Solution counts grouped by the maximal vanishing index subset.

    Keys are 1-based index tuples; the empty tuple collects solutions in
    which no nonempty subset of terms sums to zero.  Ties between maximal
    vanishing subsets of equal size break to the lexicographically smallest
    index tuple.
    """

    classes: dict[tuple[int, ...], int]
    total: int


@lru_cache(maxsize=None)
def _mask_scan_order(n: int) -> list[tuple[int, tuple[int, ...]]]:
    masks = []
    for mask in range(1, 1 << n):
        indices = tuple(j + 1 for j in range(n) if mask >> j & 1)
        masks.append((mask, indices))
    masks.sort(key=lambda entry: (-len(entry[1]), entry[1]))
    return masks


def classify_by_vanishing_subsums(
    eq: EquationSpec, elements: ElementSet
) -> SubsumClassification:
    """Group every solution by its maximal vanishing subset of terms.

    Exhaustive over elements^n, so n is capped at 10.
    """
    n = eq.n
    if n > 10:
        raise ValueError("classification is exhaustive; n is capped at 10")
    terms = _term_table(eq, elements)
    zero = Scalar.zero(eq.field)
    order = _mask_scan_order(n)
    classes: dict[tuple[int, ...], int] = {}
    total = 0

    solution_terms: list[Scalar] = [zero] * n

    def classify_current() -> None:
        nonlocal total
        total += 1
        # Subset sums over the n term values, low bit = index 1.
        sums = [zero] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            sums[mask] = sums[mask ^ low] + solution_terms[low.bit_length() - 1]
        for mask, indices in order:
            if sums[mask].is_zero():
                classes[indices] = classes.get(indices, 0) + 1
                return
        classes[()] = classes.get((), 0) + 1

    def walk(level: int, acc: Scalar) -> None:
        if level == n:
            if acc == eq.rhs:
                classify_current()
            return
        for term in terms[level]:
            solution_terms[level] = term
            walk(level + 1, acc + term)

    walk(0, zero)
    return SubsumClassification(classes=classes, total=total)


def system_exponent(n: int) -> tuple[int, int]:
    """Growth exponent of the zero-sum, zero-square-sum system.

    Value is max over k in 0..n//2 of min((n+k)//3, (n-k)//2), which equals
    floor(2n/5); the returned k is n//5 when that attains the maximum,
    otherwise the smallest attaining k.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    best = -1
    best_k = 0
    for k in range(n // 2 + 1):
        value = min((n + k) // 3, (n - k) // 2)
        if value > best:
            best = value
            best_k = k
    preferred = n // 5
    if min((n + preferred) // 3, (n - preferred) // 2) == best:
        best_k = preferred
    return best, best_k


def kappa(n: int) -> tuple[int, int]:
    """Alias for system_exponent: (exponent value, attaining k)."""
    return system_exponent(n)
