"""Exact excursion counts: recursion vs closed forms vs brute force."""

from math import comb

import pytest

from conewalks.counting import (
    admissible,
    closed_diagonal,
    closed_dyck,
    closed_simple,
    closed_tandem,
    count_dp,
)
from conewalks.lattice import DIAGONAL, SIMPLE, TANDEM


def brute_dyck(lam, n):
    """1D nonnegative-path count by direct dynamic programming."""
    layer = {0: 1}
    for _ in range(n):
        nxt = {}
        for pos, ways in layer.items():
            for step in (1, -1):
                np_ = pos + step
                if np_ >= 0:
                    nxt[np_] = nxt.get(np_, 0) + ways
        layer = nxt
    return layer.get(lam, 0)


def total_walks_from_origin(model, n):
    """Number of n-step quadrant walks from the origin (any endpoint)."""
    layer = {(0, 0): 1}
    for _ in range(n):
        nxt = {}
        for (i, j), ways in layer.items():
            for (dx, dy) in model.steps:
                ni, nj = i + dx, j + dy
                if ni >= 0 and nj >= 0:
                    nxt[(ni, nj)] = nxt.get((ni, nj), 0) + ways
        layer = nxt
    return sum(layer.values())


def reversed_model(model):
    from conewalks.lattice import StepModel

    return StepModel(
        model.name + "-reversed",
        tuple((-dx, -dy) for (dx, dy) in model.steps),
        model.weights,
        model.gamma,
    )


class TestSmallCounts:
    def test_simple_two_step_origin(self):
        assert closed_simple(0, 0, 2) == 2

    def test_simple_from_1_1(self):
        assert closed_simple(1, 1, 2) == 2

    def test_simple_parity_zero(self):
        assert closed_simple(0, 0, 3) == 0

    def test_diagonal_cases(self):
        assert closed_diagonal(2, 0, 2) == 1
        assert closed_diagonal(0, 0, 2) == 1
        assert closed_diagonal(1, 0, 2) == 0

    def test_tandem_cases(self):
        assert closed_tandem(0, 0, 3) == 1
        assert closed_tandem(0, 0, 1) == 0
        assert closed_tandem(1, 0, 2) == 1

    def test_dyck_cases(self):
        assert closed_dyck(1, 1) == 1
        assert closed_dyck(0, 2) == 1

    def test_dp_small_values(self):
        assert count_dp(SIMPLE, 2)[2].value(0, 0) == 2
        assert count_dp(DIAGONAL, 2)[2].value(2, 0) == 1
        assert count_dp(TANDEM, 3)[3].value(0, 0) == 1


def test_dyck_matches_catalan():
    for n in range(11):
        assert closed_dyck(0, 2 * n) == comb(2 * n, n) // (n + 1)


def test_dyck_matches_brute_force():
    for n in range(13):
        for lam in range(n + 1):
            assert closed_dyck(lam, n) == brute_dyck(lam, n)


@pytest.mark.parametrize(
    "model,closed",
    [(SIMPLE, closed_simple), (DIAGONAL, closed_diagonal), (TANDEM, closed_tandem)],
)
def test_dp_equals_closed_form(model, closed):
    n_max = 22
    tables = count_dp(model, n_max)
    for table in tables:
        for i in range(table.n + 1):
            for j in range(table.n + 1):
                assert table.value(i, j) == closed(i, j, table.n)


def test_diagonal_factorizes_into_dyck_pair():
    for n in range(23):
        for i in range(n + 1):
            for j in range(n + 1):
                assert closed_diagonal(i, j, n) == closed_dyck(i, n) * closed_dyck(j, n)


@pytest.mark.parametrize("model", [SIMPLE, DIAGONAL, TANDEM])
def test_table_sums_count_reversed_walks(model):
    """Reversing every excursion gives the walks of the reversed step set."""
    rev = reversed_model(model)
    tables = count_dp(model, 12)
    for table in tables:
        assert sum(table.values.values()) == total_walks_from_origin(rev, table.n)


def test_support_respects_congruence_class():
    for model in (SIMPLE, DIAGONAL, TANDEM):
        for table in count_dp(model, 14):
            for (i, j), v in table.values.items():
                assert v > 0
                assert admissible(model.name, i, j, table.n)


def brute_excursions(model, n):
    """Enumerate every n-step sequence explicitly; the slowest, surest oracle."""
    from itertools import product

    counts = {}
    for seq in product(model.steps, repeat=n):
        for start_i in range(n + 1):
            for start_j in range(n + 1):
                i, j = start_i, start_j
                ok = True
                for (dx, dy) in seq:
                    i += dx
                    j += dy
                    if i < 0 or j < 0:
                        ok = False
                        break
                if ok and (i, j) == (0, 0):
                    counts[(start_i, start_j)] = counts.get((start_i, start_j), 0) + 1
    return counts


@pytest.mark.parametrize("model,n", [(SIMPLE, 6), (DIAGONAL, 6), (TANDEM, 7)])
def test_dp_matches_explicit_path_enumeration(model, n):
    table = count_dp(model, n)[n]
    assert table.values == brute_excursions(model, n)
