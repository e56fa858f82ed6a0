"""Exact matrix statistics (rank, determinant, characteristic polynomial)
with entries drawn from a finite scalar set, plus full-domain sweeps.

All computation clears denominators first: an ElementSet with denominator
lcm L turns into integer (or Gaussian-integer) entries, statistics are
computed fraction-free over the integers, and results are rescaled by the
appropriate power of L at the end.  Determinants and ranks use Bareiss
elimination, whose intermediate divisions are exact in any integral domain;
characteristic polynomials come from determinant evaluations at n+1 integer
nodes followed by exact interpolation, cross-checkable against an
independent trace-recursion implementation.

Sweeps enumerate every matrix in elements^(m*n) in row-major odometer order
and histogram the requested statistics.  A sweep is sharded by the first
matrix row, so partial sweeps can run separately and merge; when the field
is Q, the shape is 2x2 or 3x3, and an a-priori magnitude bound proves that
no intermediate can leave int64, a vectorized kernel takes over.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .families import ElementSet
from .scalars import Q, QI, Scalar, parse_scalar

DEFAULT_BUDGET = 200_000_000
BUDGET_ENV_VAR = "UNITCOUNT_BUDGET"


class BudgetExceededError(RuntimeError):
    """Raised before starting work whose size estimate exceeds the budget."""

    def __init__(self, required: int, budget: int, what: str = "sweep"):
        super().__init__(
            f"{what} requires {required} units of work, over the budget of {budget}"
        )
        self.required = required
        self.budget = budget


def resolve_budget(budget: int | None) -> int:
    if budget is None:
        env = os.environ.get(BUDGET_ENV_VAR)
        budget = int(env) if env is not None else DEFAULT_BUDGET
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    return budget


# -- matrix container ---------------------------------------------------------


@dataclass(frozen=True)
class MatrixInstance:
    """An m x n matrix given as row-major indices into an ElementSet."""

    m: int
    n: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.m or any(len(r) != self.n for r in self.entries):
            raise ValueError("entry grid does not match declared shape")

    @staticmethod
    def from_rows(rows: list[list[int]] | tuple) -> "MatrixInstance":
        entries = tuple(tuple(r) for r in rows)
        return MatrixInstance(len(entries), len(entries[0]) if entries else 0, entries)

    def scalar_rows(self, elements: ElementSet) -> list[list[Scalar]]:
        return [[elements[j] for j in row] for row in self.entries]


def random_matrix(elements: ElementSet, m: int, n: int, rng) -> MatrixInstance:
    size = len(elements)
    entries = tuple(
        tuple(rng.randrange(size) for _ in range(n)) for _ in range(m)
    )
    return MatrixInstance(m, n, entries)


def _scaled_rows(X: MatrixInstance, elements: ElementSet) -> list[list]:
    _, values, _ = elements.scaled_integers()
    size = len(elements)
    for row in X.entries:
        for idx in row:
            if not 0 <= idx < size:
                raise IndexError(f"entry index {idx} outside set of size {size}")
    return [[values[idx] for idx in row] for row in X.entries]


# -- exact integer and Gaussian-integer cores ---------------------------------


def _int_det(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    M = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, n):
            row_i = M[i]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * M[-1][-1]


def _gadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _gsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gdiv_exact(a, b):
    # (a * conj b) / |b|^2; exact by construction wherever Bareiss divides.
    norm = b[0] * b[0] + b[1] * b[1]
    return (
        (a[0] * b[0] + a[1] * b[1]) // norm,
        (a[1] * b[0] - a[0] * b[1]) // norm,
    )


_GZERO = (0, 0)
_GONE = (1, 0)


def _gauss_det(rows: list[list[tuple[int, int]]]) -> tuple[int, int]:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return _gsub(_gmul(rows[0][0], rows[1][1]), _gmul(rows[0][1], rows[1][0]))
    M = [list(r) for r in rows]
    sign = 1
    prev = _GONE
    for k in range(n - 1):
        if M[k][k] == _GZERO:
            for i in range(k + 1, n):
                if M[i][k] != _GZERO:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return _GZERO
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, n):
            row_i = M[i]
            mik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = _gdiv_exact(
                    _gsub(_gmul(row_i[j], pivot), _gmul(mik, row_k[j])), prev
                )
            row_i[k] = _GZERO
        prev = pivot
    value = M[-1][-1]
    return value if sign == 1 else (-value[0], -value[1])


def _int_rank(rows: list[list[int]]) -> int:
    M = [list(r) for r in rows]
    m, n = len(M), len(M[0])
    r = 0
    prev = 1
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if M[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        M[r], M[pivot_row] = M[pivot_row], M[r]
        pivot = M[r][c]
        row_r = M[r]
        for i in range(r + 1, m):
            row_i = M[i]
            mic = row_i[c]
            for j in range(c + 1, n):
                row_i[j] = (row_i[j] * pivot - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = pivot
        r += 1
        if r == m:
            break
    return r


def _gauss_rank(rows: list[list[tuple[int, int]]]) -> int:
    M = [list(r) for r in rows]
    m, n = len(M), len(M[0])
    r = 0
    prev = _GONE
    for c in range(n):
        pivot_row = None
        for i in range(r, m):
            if M[i][c] != _GZERO:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        M[r], M[pivot_row] = M[pivot_row], M[r]
        pivot = M[r][c]
        row_r = M[r]
        for i in range(r + 1, m):
            row_i = M[i]
            mic = row_i[c]
            for j in range(c + 1, n):
                row_i[j] = _gdiv_exact(
                    _gsub(_gmul(row_i[j], pivot), _gmul(mic, row_r[j])), prev
                )
            row_i[c] = _GZERO
        prev = pivot
        r += 1
        if r == m:
            break
    return r


def _newton_int_coeffs(ys: list[int]) -> list[int]:
    """Monomial coefficients of the unique degree<=n polynomial through
    (t, ys[t]) for t = 0..n; asserts the coefficients are integers."""
    n = len(ys) - 1
    dd = [Fraction(y) for y in ys]
    for j in range(1, n + 1):
        for i in range(n, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / j
    coeffs = [Fraction(0)] * (n + 1)
    basis = [Fraction(1)]
    for j in range(n + 1):
        for deg, base_coeff in enumerate(basis):
            coeffs[deg] += dd[j] * base_coeff
        new_basis = [Fraction(0)] * (len(basis) + 1)
        for deg, base_coeff in enumerate(basis):
            new_basis[deg + 1] += base_coeff
            new_basis[deg] -= base_coeff * j
        basis = new_basis
    out = []
    for value in coeffs:
        if value.denominator != 1:
            raise ArithmeticError("interpolation produced a non-integer coefficient")
        out.append(value.numerator)
    return out


def _int_charpoly_scaled(rows: list[list[int]]) -> list[int]:
    """Coefficients c_0..c_n of det(T*I - M) for an integer matrix M."""
    n = len(rows)
    dets = []
    for t in range(n + 1):
        shifted = [
            [(t if i == j else 0) - rows[i][j] for j in range(n)] for i in range(n)
        ]
        dets.append(_int_det(shifted))
    return _newton_int_coeffs(dets)


def _gauss_charpoly_scaled(rows: list[list[tuple[int, int]]]) -> list[tuple[int, int]]:
    n = len(rows)
    dets = []
    for t in range(n + 1):
        shifted = [
            [
                ((t if i == j else 0) - rows[i][j][0], -rows[i][j][1])
                for j in range(n)
            ]
            for i in range(n)
        ]
        dets.append(_gauss_det(shifted))
    res = _newton_int_coeffs([d[0] for d in dets])
    ims = _newton_int_coeffs([d[1] for d in dets])
    return list(zip(res, ims))


# -- single-matrix public statistics ------------------------------------------


def det(X: MatrixInstance, elements: ElementSet) -> Scalar:
    if X.m != X.n:
        raise ValueError("determinant needs a square matrix")
    lcm, _, _ = elements.scaled_integers()
    rows = _scaled_rows(X, elements)
    if elements.field == Q:
        raw = _int_det(rows)
        return Scalar(Q, raw, 0, lcm**X.n)
    raw = _gauss_det(rows)
    return Scalar(QI, raw[0], raw[1], lcm**X.n)


def rank(X: MatrixInstance, elements: ElementSet) -> int:
    rows = _scaled_rows(X, elements)
    if elements.field == Q:
        return _int_rank(rows)
    return _gauss_rank(rows)


@dataclass(frozen=True)
class CharPolyKey:
    """Monic characteristic polynomial, stored as coefficients c_0..c_(n-1)
    of T^n + c_(n-1) T^(n-1) + ... + c_0."""

    coeffs: tuple[Scalar, ...]

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def text(self) -> str:
        return ",".join(c.text() for c in self.coeffs)

    @staticmethod
    def from_text(text: str, field: str = Q) -> "CharPolyKey":
        parts = [p for p in text.split(",")]
        if not parts or not any(p.strip() for p in parts):
            raise ValueError("empty characteristic polynomial text")
        return CharPolyKey(tuple(parse_scalar(p, field) for p in parts))

    def sort_tuple(self):
        return tuple(c.sort_tuple() for c in self.coeffs)


def charpoly(X: MatrixInstance, elements: ElementSet) -> CharPolyKey:
    """Characteristic polynomial via exact interpolation of det(T*I - X)."""
    if X.m != X.n:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = X.n
    lcm, _, _ = elements.scaled_integers()
    rows = _scaled_rows(X, elements)
    if elements.field == Q:
        cs = _int_charpoly_scaled(rows)
        if cs[n] != 1:
            raise ArithmeticError("interpolated polynomial is not monic")
        return CharPolyKey(
            tuple(Scalar(Q, cs[k], 0, lcm ** (n - k)) for k in range(n))
        )
    cs = _gauss_charpoly_scaled(rows)
    if cs[n] != (1, 0):
        raise ArithmeticError("interpolated polynomial is not monic")
    return CharPolyKey(
        tuple(Scalar(QI, cs[k][0], cs[k][1], lcm ** (n - k)) for k in range(n))
    )


def charpoly_trace_recursion(X: MatrixInstance, elements: ElementSet) -> CharPolyKey:
    """Independent characteristic polynomial via the trace recursion
    M_1 = X, c_(n-1) = -tr M_1, M_k = X(M_(k-1) + c_(n-k+1) I),
    c_(n-k) = -tr(M_k)/k.  Used to cross-check `charpoly`."""
    if X.m != X.n:
        raise ValueError("characteristic polynomial needs a square matrix")
    n = X.n
    field = elements.field
    rows = X.scalar_rows(elements)
    zero = Scalar.zero(field)

    def mat_mul(A, B):
        return [
            [
                sum((A[i][k] * B[k][j] for k in range(n)), zero)
                for j in range(n)
            ]
            for i in range(n)
        ]

    def trace(A):
        return sum((A[i][i] for i in range(n)), zero)

    coeffs: list[Scalar] = [zero] * n
    M = [row[:] for row in rows]
    coeffs[n - 1] = -trace(M)
    for k in range(2, n + 1):
        shifted = [row[:] for row in M]
        for i in range(n):
            shifted[i][i] = shifted[i][i] + coeffs[n - k + 1]
        M = mat_mul(rows, shifted)
        coeffs[n - k] = -(trace(M) / Scalar.rational(k, 1, field))
    return CharPolyKey(tuple(coeffs))


def power_sums_from_coeffs(c_top: Scalar, c_second: Scalar) -> tuple[Scalar, Scalar]:
    """(t1, t2) = (trace, trace of the square) from the two leading
    non-monic coefficients: t1 = -c_(n-1), t2 = t1^2 - 2 c_(n-2)."""
    t1 = -c_top
    t2 = t1 * t1 - (c_second + c_second)
    return t1, t2


# -- sweeps -------------------------------------------------------------------


@dataclass(frozen=True)
class SweepOptions:
    rank: bool = True
    det: bool = True
    charpoly: bool = False
    powersums: bool = False
    budget: int | None = None
    shards: int = 1


@dataclass
class SweepHistogram:
    """Joint result of one full sweep over elements^(m*n)."""

    field: str
    m: int
    n: int
    set_size: int
    total: int
    rank_profile: dict[int, int] | None
    det_histogram: dict[Scalar, int] | None
    charpoly_histogram: dict[CharPolyKey, int] | None
    powersum_histogram: dict[tuple[Scalar, Scalar], int] | None

    def merge(self, other: "SweepHistogram") -> None:
        if (self.field, self.m, self.n, self.set_size) != (
            other.field,
            other.m,
            other.n,
            other.set_size,
        ):
            raise ValueError("cannot merge sweeps over different domains")
        self.total += other.total
        for mine, theirs in (
            (self.rank_profile, other.rank_profile),
            (self.det_histogram, other.det_histogram),
            (self.charpoly_histogram, other.charpoly_histogram),
            (self.powersum_histogram, other.powersum_histogram),
        ):
            if mine is None or theirs is None:
                continue
            for key, count in theirs.items():
                mine[key] = mine.get(key, 0) + count

    def validate(self) -> None:
        expected = self.set_size ** (self.m * self.n)
        if self.total != expected:
            raise AssertionError(f"sweep total {self.total} != {expected}")
        for name, hist in (
            ("rank", self.rank_profile),
            ("det", self.det_histogram),
            ("charpoly", self.charpoly_histogram),
            ("powersums", self.powersum_histogram),
        ):
            if hist is None:
                continue
            mass = sum(hist.values())
            if mass != self.total:
                raise AssertionError(f"{name} histogram mass {mass} != {self.total}")
        if self.rank_profile is not None:
            max_rank = min(self.m, self.n)
            for r in self.rank_profile:
                if not 1 <= r <= max_rank:
                    raise AssertionError(f"impossible rank {r}")
        # A square matrix has full rank exactly when its determinant is nonzero.
        if (
            self.m == self.n
            and self.rank_profile is not None
            and self.det_histogram is not None
        ):
            zero = Scalar.zero(self.field)
            singular = self.det_histogram.get(zero, 0)
            if self.rank_profile.get(self.n, 0) != self.total - singular:
                raise AssertionError("rank/determinant cross-check failed")

    def csv_rows(self) -> list[tuple[str, str, int]]:
        rows: list[tuple[str, str, int]] = []
        if self.rank_profile is not None:
            for r in sorted(self.rank_profile):
                rows.append(("rank", str(r), self.rank_profile[r]))
        if self.det_histogram is not None:
            for key in sorted(self.det_histogram, key=Scalar.sort_tuple):
                rows.append(("det", key.text(), self.det_histogram[key]))
        if self.charpoly_histogram is not None:
            for key in sorted(self.charpoly_histogram, key=CharPolyKey.sort_tuple):
                rows.append(("charpoly", key.text(), self.charpoly_histogram[key]))
        if self.powersum_histogram is not None:
            for t1, t2 in sorted(
                self.powersum_histogram,
                key=lambda pair: (pair[0].sort_tuple(), pair[1].sort_tuple()),
            ):
                rows.append(
                    ("powersums", f"{t1.text()},{t2.text()}", self.powersum_histogram[(t1, t2)])
                )
        return rows


def _shard_ranges(space: int, shards: int) -> list[tuple[int, int]]:
    bounds = [space * j // shards for j in range(shards + 1)]
    return [(bounds[j], bounds[j + 1]) for j in range(shards)]


def _empty_raw(opts: SweepOptions) -> dict:
    return {
        "total": 0,
        "rank": {} if opts.rank else None,
        "det": {} if opts.det else None,
        "charpoly": {} if opts.charpoly else None,
        "powersums": {} if opts.powersums else None,
    }


def _merge_raw(acc: dict, part: dict) -> None:
    acc["total"] += part["total"]
    for key in ("rank", "det", "charpoly", "powersums"):
        if acc[key] is None or part[key] is None:
            continue
        target = acc[key]
        for stat_key, count in part[key].items():
            target[stat_key] = target.get(stat_key, 0) + count


def _generic_shard(
    values: list,
    field: str,
    m: int,
    n: int,
    opts: SweepOptions,
    lo: int,
    hi: int,
) -> dict:
    """Reference sweep over first-row indices in [lo, hi), any field/shape."""
    raw = _empty_raw(opts)
    size = len(values)
    rest_width = (m - 1) * n
    gaussian = field == QI
    det_fn = _gauss_det if gaussian else _int_det
    rank_fn = _gauss_rank if gaussian else _int_rank
    charpoly_fn = _gauss_charpoly_scaled if gaussian else _int_charpoly_scaled

    rank_hist = raw["rank"]
    det_hist = raw["det"]
    cp_hist = raw["charpoly"]
    ps_hist = raw["powersums"]
    total = 0

    for flat in range(lo, hi):
        row0_idx = []
        rem = flat
        for _ in range(n):
            rem, digit = divmod(rem, size)
            row0_idx.append(digit)
        row0_idx.reverse()
        row0 = [values[j] for j in row0_idx]
        for rest in itertools.product(values, repeat=rest_width):
            rows = [row0] + [
                list(rest[r * n : (r + 1) * n]) for r in range(m - 1)
            ]
            total += 1
            if det_hist is not None:
                key = det_fn(rows)
                det_hist[key] = det_hist.get(key, 0) + 1
            if rank_hist is not None:
                r = rank_fn(rows)
                rank_hist[r] = rank_hist.get(r, 0) + 1
            if cp_hist is not None:
                cs = tuple(charpoly_fn(rows)[:n])
                cp_hist[cs] = cp_hist.get(cs, 0) + 1
            if ps_hist is not None:
                if gaussian:
                    t1 = _GZERO
                    t2 = _GZERO
                    for i in range(n):
                        t1 = _gadd(t1, rows[i][i])
                        for j in range(n):
                            t2 = _gadd(t2, _gmul(rows[i][j], rows[j][i]))
                else:
                    t1 = sum(rows[i][i] for i in range(n))
                    t2 = sum(
                        rows[i][j] * rows[j][i] for i in range(n) for j in range(n)
                    )
                ps_key = (t1, t2)
                ps_hist[ps_key] = ps_hist.get(ps_key, 0) + 1
    raw["total"] = total
    return raw


def _finalize(
    raw: dict, elements: ElementSet, m: int, n: int, opts: SweepOptions
) -> SweepHistogram:
    lcm, _, _ = elements.scaled_integers()
    field = elements.field
    gaussian = field == QI

    def scalar_from_raw(value, den: int) -> Scalar:
        if gaussian:
            return Scalar(QI, value[0], value[1], den)
        return Scalar(Q, value, 0, den)

    det_hist = None
    if raw["det"] is not None:
        den = lcm**n
        cache: dict = {}
        det_hist = {}
        for key, count in raw["det"].items():
            scalar = cache.get(key)
            if scalar is None:
                scalar = scalar_from_raw(key, den)
                cache[key] = scalar
            det_hist[scalar] = det_hist.get(scalar, 0) + count

    cp_hist = None
    if raw["charpoly"] is not None:
        dens = [lcm ** (n - k) for k in range(n)]
        cache = {}
        cp_hist = {}
        for key, count in raw["charpoly"].items():
            cp = cache.get(key)
            if cp is None:
                cp = CharPolyKey(
                    tuple(scalar_from_raw(key[k], dens[k]) for k in range(n))
                )
                cache[key] = cp
            cp_hist[cp] = cp_hist.get(cp, 0) + count

    ps_hist = None
    if raw["powersums"] is not None:
        den1 = lcm
        den2 = lcm * lcm
        cache = {}
        ps_hist = {}
        for key, count in raw["powersums"].items():
            pair = cache.get(key)
            if pair is None:
                pair = (
                    scalar_from_raw(key[0], den1),
                    scalar_from_raw(key[1], den2),
                )
                cache[key] = pair
            ps_hist[pair] = ps_hist.get(pair, 0) + count

    rank_hist = None
    if raw["rank"] is not None:
        rank_hist = {int(r): int(c) for r, c in raw["rank"].items()}

    hist = SweepHistogram(
        field=field,
        m=m,
        n=n,
        set_size=len(elements),
        total=raw["total"],
        rank_profile=rank_hist,
        det_histogram=det_hist,
        charpoly_histogram=cp_hist,
        powersum_histogram=ps_hist,
    )
    hist.validate()
    return hist


def sweep(
    elements: ElementSet, m: int, n: int, options: SweepOptions | None = None
) -> SweepHistogram:
    """Histogram the enabled statistics over every matrix in elements^(m*n)."""
    opts = options or SweepOptions()
    if m < 1 or n < 1:
        raise ValueError("matrix dimensions must be positive")
    if m != n and (opts.det or opts.charpoly or opts.powersums):
        raise ValueError("det, charpoly and powersums need a square matrix")
    if not (opts.rank or opts.det or opts.charpoly or opts.powersums):
        raise ValueError("no statistic enabled")
    if opts.shards < 1:
        raise ValueError("shards must be >= 1")

    size = len(elements)
    total_work = size ** (m * n)
    budget = resolve_budget(opts.budget)
    if total_work > budget:
        raise BudgetExceededError(total_work, budget)

    lcm, values, bound = elements.scaled_integers()
    ranges = _shard_ranges(size**n, opts.shards)

    use_kernel = (
        elements.field == Q
        and m == n
        and n in (2, 3)
        and _kernels.supports(
            bound, n, opts.det, opts.rank, opts.charpoly, opts.powersums
        )
    )

    raw = _empty_raw(opts)
    for lo, hi in ranges:
        if lo == hi:
            continue
        if use_kernel:
            part = _kernels.sweep_square(
                values, n, opts.det, opts.rank, opts.charpoly, opts.powersums, lo, hi
            )
        else:
            part = _generic_shard(values, elements.field, m, n, opts, lo, hi)
        _merge_raw(raw, part)
    return _finalize(raw, elements, m, n, opts)


# -- counting wrappers --------------------------------------------------------


def _single_stat_options(options: SweepOptions | None, stat: str) -> SweepOptions:
    base = options or SweepOptions()
    return SweepOptions(
        rank=stat == "rank",
        det=stat == "det",
        charpoly=stat == "charpoly",
        powersums=stat == "powersums",
        budget=base.budget,
        shards=base.shards,
    )


def count_det(
    elements: ElementSet,
    n: int,
    target: Scalar,
    *,
    options: SweepOptions | None = None,
) -> int:
    hist = sweep(elements, n, n, _single_stat_options(options, "det"))
    return hist.det_histogram.get(target, 0)


def count_rank(
    elements: ElementSet,
    m: int,
    n: int,
    r: int,
    *,
    cumulative: bool = False,
    options: SweepOptions | None = None,
) -> int:
    if not 1 <= r <= min(m, n):
        raise ValueError(f"rank {r} impossible for a {m}x{n} matrix over nonzero entries")
    hist = sweep(elements, m, n, _single_stat_options(options, "rank"))
    if cumulative:
        return sum(c for rr, c in hist.rank_profile.items() if rr <= r)
    return hist.rank_profile.get(r, 0)


def count_charpoly(
    elements: ElementSet,
    n: int,
    key: CharPolyKey,
    *,
    options: SweepOptions | None = None,
) -> int:
    if key.n != n:
        raise ValueError(f"characteristic polynomial has {key.n} coefficients, need {n}")
    hist = sweep(elements, n, n, _single_stat_options(options, "charpoly"))
    return hist.charpoly_histogram.get(key, 0)


def count_power_sums(
    elements: ElementSet,
    n: int,
    t1: Scalar,
    t2: Scalar,
    *,
    options: SweepOptions | None = None,
) -> int:
    hist = sweep(elements, n, n, _single_stat_options(options, "powersums"))
    return hist.powersum_histogram.get((t1, t2), 0)


# -- closed 2x2 product-convolution paths --------------------------------------
#
# For 2x2 matrices every statistic is a function of (sum of a diagonal pair,
# product difference), so histograms reduce to convolutions of the pairwise
# product multiset.  This gives exact counts in roughly A^2 dictionary work,
# independent of how large the entries are, and is the scalable route the
# growth experiments use.  Equality with the exhaustive sweep is part of the
# acceptance checks, keeping the two routes honest against each other.


def _product_counter(elements: ElementSet) -> dict[Scalar, int]:
    counts: dict[Scalar, int] = {}
    for x in elements:
        for y in elements:
            p = x * y
            counts[p] = counts.get(p, 0) + 1
    return counts


def fast_det2_histogram(elements: ElementSet) -> dict[Scalar, int]:
    """Histogram of det over all 2x2 matrices, via product convolution."""
    products = _product_counter(elements)
    hist: dict[Scalar, int] = {}
    for p1, c1 in products.items():
        for p2, c2 in products.items():
            key = p1 - p2
            hist[key] = hist.get(key, 0) + c1 * c2
    return hist


def fast_det2_count(elements: ElementSet, target: Scalar) -> int:
    """Number of 2x2 matrices with det equal to target, in O(A^2)."""
    products = _product_counter(elements)
    return sum(
        c * products.get(p - target, 0) for p, c in products.items()
    )


def fast_charpoly2_count(elements: ElementSet, key: CharPolyKey) -> int:
    """Number of 2x2 matrices with charpoly T^2 + c1 T + c0, in O(A^2)."""
    if key.n != 2:
        raise ValueError("fast_charpoly2_count needs a degree-2 polynomial")
    c0, c1 = key.coeffs
    trace_target = -c1
    products = _product_counter(elements)
    membership = {x: None for x in elements}
    total = 0
    for a in elements:
        d = trace_target - a
        if d in membership:
            total += products.get(a * d - c0, 0)
    return total


def fast_power_sums2_count(elements: ElementSet, t1: Scalar, t2: Scalar) -> int:
    """Number of 2x2 matrices with given (trace, trace of square), in O(A^2).

    (t1, t2) determines the charpoly: c1 = -t1, c0 = (t1^2 - t2)/2.
    """
    half = Scalar.rational(1, 2, elements.field)
    c0 = (t1 * t1 - t2) * half
    return fast_charpoly2_count(elements, CharPolyKey((c0, -t1)))
