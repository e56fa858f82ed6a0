import random

import pytest

import oracles
from conftest import int_element_set, rand_element_set
from unitcount import matrices
from unitcount.families import ElementSet
from unitcount.matrices import (
    BudgetExceededError,
    CharPolyKey,
    MatrixInstance,
    SweepOptions,
    charpoly,
    charpoly_trace_recursion,
    count_charpoly,
    count_det,
    count_power_sums,
    count_rank,
    det,
    fast_charpoly2_count,
    fast_det2_count,
    fast_det2_histogram,
    fast_power_sums2_count,
    power_sums_from_coeffs,
    random_matrix,
    rank,
    resolve_budget,
    sweep,
)
from unitcount.scalars import Q, QI, Scalar


def _rand_instance(rng, elements, m, n):
    return random_matrix(elements, m, n, rng)


@pytest.mark.parametrize("field", [Q, QI])
def test_det_matches_permutation_expansion(field):
    rng = random.Random(31 if field == Q else 32)
    for _ in range(60):
        n = rng.randint(1, 4)
        elements = rand_element_set(rng, field, size=5, span=5, max_den=3)
        X = _rand_instance(rng, elements, n, n)
        expected = oracles.det_pairs(oracles.pairs_from_rows(X.scalar_rows(elements)))
        assert oracles.pair(det(X, elements)) == expected


@pytest.mark.parametrize("field", [Q, QI])
def test_rank_matches_gaussian_elimination(field):
    rng = random.Random(33 if field == Q else 34)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        elements = rand_element_set(rng, field, size=4, span=3, max_den=2)
        X = _rand_instance(rng, elements, m, n)
        expected = oracles.rank_pairs(oracles.pairs_from_rows(X.scalar_rows(elements)))
        assert rank(X, elements) == expected


def test_rank_can_drop_via_dependent_rows():
    elements = int_element_set([1, 2, 4])
    X = MatrixInstance.from_rows([[0, 1], [1, 2]])
    assert rank(X, elements) == 1
    assert det(X, elements).is_zero()


@pytest.mark.parametrize("field", [Q, QI])
def test_charpoly_matches_interpolation_oracle(field):
    rng = random.Random(35 if field == Q else 36)
    for _ in range(40):
        n = rng.randint(1, 4)
        elements = rand_element_set(rng, field, size=4, span=4, max_den=3)
        X = _rand_instance(rng, elements, n, n)
        key = charpoly(X, elements)
        assert key.n == n
        expected = oracles.charpoly_pairs(oracles.pairs_from_rows(X.scalar_rows(elements)))
        assert [oracles.pair(c) for c in key.coeffs] == expected


@pytest.mark.parametrize("field", [Q, QI])
def test_charpoly_agrees_with_trace_recursion(field):
    rng = random.Random(37 if field == Q else 38)
    for _ in range(30):
        n = rng.randint(1, 4)
        elements = rand_element_set(rng, field, size=4, span=4, max_den=2)
        X = _rand_instance(rng, elements, n, n)
        assert charpoly(X, elements) == charpoly_trace_recursion(X, elements)


def test_charpoly_requires_square():
    elements = int_element_set([1, 2])
    X = _rand_instance(random.Random(0), elements, 2, 3)
    with pytest.raises(ValueError):
        charpoly(X, elements)


def test_power_sums_from_coeffs_identity():
    rng = random.Random(39)
    for _ in range(30):
        n = rng.randint(2, 4)
        field = rng.choice([Q, QI])
        elements = rand_element_set(rng, field, size=4, span=4, max_den=2)
        X = _rand_instance(rng, elements, n, n)
        key = charpoly(X, elements)
        t1, t2 = power_sums_from_coeffs(key.coeffs[n - 1], key.coeffs[n - 2])
        rows = oracles.pairs_from_rows(X.scalar_rows(elements))
        trace = oracles.PZERO
        for i in range(n):
            trace = oracles.padd(trace, rows[i][i])
        square_trace = oracles.PZERO
        for i in range(n):
            for j in range(n):
                square_trace = oracles.padd(
                    square_trace, oracles.pmul(rows[i][j], rows[j][i])
                )
        assert oracles.pair(t1) == trace
        assert oracles.pair(t2) == square_trace


def test_charpoly_key_text_round_trip():
    key = CharPolyKey(
        (Scalar.rational(-3, 2), Scalar.zero(Q), Scalar.rational(5))
    )
    assert CharPolyKey.from_text(key.text(), Q) == key
    with pytest.raises(ValueError):
        CharPolyKey.from_text("", Q)


def _hist_as_pairs(hist):
    """Package SweepHistogram -> oracle-keyed dicts for comparison."""
    out = {"rank": dict(hist.rank_profile)}
    if hist.det_histogram is not None:
        out["det"] = {
            oracles.pair(k): v for k, v in hist.det_histogram.items()
        }
    if hist.charpoly_histogram is not None:
        out["charpoly"] = {
            tuple(oracles.pair(c) for c in k.coeffs): v
            for k, v in hist.charpoly_histogram.items()
        }
    if hist.powersum_histogram is not None:
        out["powersums"] = {
            (oracles.pair(a), oracles.pair(b)): v
            for (a, b), v in hist.powersum_histogram.items()
        }
    return out


_ALL_STATS = SweepOptions(rank=True, det=True, charpoly=True, powersums=True)


@pytest.mark.parametrize("field", [Q, QI])
def test_full_2x2_sweep_matches_naive_enumeration(field):
    rng = random.Random(41 if field == Q else 42)
    for _ in range(6):
        elements = rand_element_set(rng, field, size=rng.randint(2, 4), span=4, max_den=2)
        hist = sweep(elements, 2, 2, options=_ALL_STATS)
        hist.validate()
        expected = oracles.sweep_counts(elements, 2, 2)
        got = _hist_as_pairs(hist)
        assert got["rank"] == expected["rank"]
        assert got["det"] == expected["det"]
        assert got["charpoly"] == expected["charpoly"]
        assert got["powersums"] == expected["powersums"]
        assert hist.total == len(elements) ** 4


def test_full_3x3_sweep_matches_naive_enumeration():
    rng = random.Random(43)
    elements = rand_element_set(rng, Q, size=2, span=3, max_den=2)
    hist = sweep(elements, 3, 3, options=_ALL_STATS)
    hist.validate()
    expected = oracles.sweep_counts(elements, 3, 3)
    assert _hist_as_pairs(hist) == expected


def test_rectangular_sweep_matches_naive_rank_profile():
    rng = random.Random(44)
    for m, n in ((1, 3), (2, 3), (3, 2)):
        elements = rand_element_set(rng, Q, size=3, span=3, max_den=2)
        hist = sweep(elements, m, n, options=SweepOptions(rank=True, det=False))
        hist.validate()
        assert _hist_as_pairs(hist)["rank"] == oracles.sweep_counts(elements, m, n)["rank"]


def test_kernel_and_generic_paths_agree(monkeypatch):
    rng = random.Random(45)
    for n in (2, 3):
        elements = rand_element_set(rng, Q, size=3, span=4, max_den=2)
        fast = sweep(elements, n, n, options=_ALL_STATS)
        monkeypatch.setattr(matrices._kernels, "supports", lambda *a: False)
        slow = sweep(elements, n, n, options=_ALL_STATS)
        monkeypatch.undo()
        assert fast.rank_profile == slow.rank_profile
        assert fast.det_histogram == slow.det_histogram
        assert fast.charpoly_histogram == slow.charpoly_histogram
        assert fast.powersum_histogram == slow.powersum_histogram


def test_sharded_sweep_equals_unsharded():
    rng = random.Random(46)
    for field in (Q, QI):
        elements = rand_element_set(rng, field, size=3, span=4, max_den=2)
        lone = sweep(elements, 2, 2, options=_ALL_STATS)
        for shards in (2, 3, 7, 50):
            opts = SweepOptions(
                rank=True, det=True, charpoly=True, powersums=True, shards=shards
            )
            sharded = sweep(elements, 2, 2, options=opts)
            assert sharded.rank_profile == lone.rank_profile
            assert sharded.det_histogram == lone.det_histogram
            assert sharded.charpoly_histogram == lone.charpoly_histogram
            assert sharded.powersum_histogram == lone.powersum_histogram


def test_sweep_validates_options():
    elements = int_element_set([1, 2])
    with pytest.raises(ValueError):
        sweep(elements, 2, 3, options=SweepOptions(det=True))
    with pytest.raises(ValueError):
        sweep(elements, 0, 2)
    with pytest.raises(ValueError):
        sweep(elements, 2, 2, options=SweepOptions(rank=False, det=False))
    with pytest.raises(ValueError):
        sweep(elements, 2, 2, options=SweepOptions(shards=0))


def test_budget_enforcement_and_env_default(monkeypatch):
    elements = int_element_set([1, 2, 3])
    with pytest.raises(BudgetExceededError) as info:
        sweep(elements, 2, 2, options=SweepOptions(budget=80))
    assert info.value.required == 81
    assert info.value.budget == 80
    monkeypatch.setenv(matrices.BUDGET_ENV_VAR, "80")
    assert resolve_budget(None) == 80
    with pytest.raises(BudgetExceededError):
        sweep(elements, 2, 2)
    monkeypatch.setenv(matrices.BUDGET_ENV_VAR, "81")
    sweep(elements, 2, 2)
    monkeypatch.delenv(matrices.BUDGET_ENV_VAR)
    assert resolve_budget(None) == matrices.DEFAULT_BUDGET
    with pytest.raises(ValueError):
        resolve_budget(0)


def test_histogram_csv_rows_are_deterministic():
    rng = random.Random(47)
    elements = rand_element_set(rng, QI, size=3, span=3, max_den=2)
    first = sweep(elements, 2, 2, options=_ALL_STATS).csv_rows()
    second = sweep(elements, 2, 2, options=_ALL_STATS).csv_rows()
    assert first == second
    assert first == sorted(first, key=lambda row: first.index(row))
    stats = [row[0] for row in first]
    assert stats == sorted(stats, key=["rank", "det", "charpoly", "powersums"].index)


def test_count_wrappers_match_histogram_marginals():
    rng = random.Random(48)
    elements = rand_element_set(rng, Q, size=3, span=3, max_den=2)
    hist = sweep(elements, 2, 2, options=_ALL_STATS)
    for value, expected in hist.det_histogram.items():
        assert count_det(elements, 2, value) == expected
    for key, expected in hist.charpoly_histogram.items():
        assert count_charpoly(elements, 2, key) == expected
    for (t1, t2), expected in hist.powersum_histogram.items():
        assert count_power_sums(elements, 2, t1, t2) == expected
    total = 0
    for r in (1, 2):
        exact = count_rank(elements, 2, 2, r, cumulative=False)
        assert exact == hist.rank_profile.get(r, 0)
        total += exact
        assert count_rank(elements, 2, 2, r, cumulative=True) == total
    assert total == hist.total


def test_count_det_absent_value_is_zero():
    elements = int_element_set([1, 2])
    assert count_det(elements, 2, Scalar.rational(7919)) == 0


def test_count_rank_validates_r():
    elements = int_element_set([1, 2])
    with pytest.raises(ValueError):
        count_rank(elements, 2, 2, 0)
    with pytest.raises(ValueError):
        count_rank(elements, 2, 2, 3)


def test_count_charpoly_validates_degree():
    elements = int_element_set([1, 2])
    key = CharPolyKey((Scalar.zero(Q), Scalar.zero(Q)))
    with pytest.raises(ValueError):
        count_charpoly(elements, 3, key)


def test_fast_det2_paths_match_sweep():
    rng = random.Random(49)
    for field in (Q, QI):
        for _ in range(8):
            elements = rand_element_set(rng, field, size=rng.randint(2, 5), span=5, max_den=2)
            hist = sweep(elements, 2, 2, options=_ALL_STATS)
            fast_hist = fast_det2_histogram(elements)
            assert fast_hist == hist.det_histogram
            for value, expected in hist.det_histogram.items():
                assert fast_det2_count(elements, value) == expected
            assert fast_det2_count(elements, Scalar.rational(10**9, 1, field)) == 0
            for key, expected in hist.charpoly_histogram.items():
                assert fast_charpoly2_count(elements, key) == expected
            for (t1, t2), expected in hist.powersum_histogram.items():
                assert fast_power_sums2_count(elements, t1, t2) == expected


def test_fast_paths_handle_huge_values_exactly():
    # far outside int64: the fast paths use arbitrary precision
    big = [Scalar.rational(2**k) for k in (0, 40, 80, 120)]
    elements = ElementSet(tuple(big))
    assert fast_det2_count(elements, Scalar.zero(Q)) == sum(
        1
        for a in big
        for b in big
        for c in big
        for d in big
        if (a * d - b * c).is_zero()
    )


def test_pinned_determinant_and_charpoly_counts():
    elements = int_element_set([1, 2])
    assert count_det(elements, 2, Scalar.zero(Q)) == 6
    key = CharPolyKey((Scalar.zero(Q), Scalar.rational(-2)))
    assert count_charpoly(elements, 2, key) == 1


def test_matrix_instance_shape_and_indexing():
    elements = int_element_set([1, 2, 3])
    rng = random.Random(50)
    X = random_matrix(elements, 2, 3, rng)
    assert (X.m, X.n) == (2, 3)
    assert len(X.entries) == 2 and all(len(r) == 3 for r in X.entries)
    rows = X.scalar_rows(elements)
    assert len(rows) == 2 and len(rows[0]) == 3
    assert rows == [[elements[j] for j in row] for row in X.entries]
    Y = MatrixInstance.from_rows(X.entries)
    assert Y == X
    with pytest.raises(ValueError):
        MatrixInstance(2, 2, ((0, 1), (0,)))
    with pytest.raises(ValueError):
        MatrixInstance(0, 2, ())
    bad = MatrixInstance(1, 2, ((0, 99),))
    with pytest.raises(IndexError):
        det(MatrixInstance(2, 2, ((0, 99), (0, 0))), elements)
    assert bad.m == 1
