import threading

from itertools import combinations
from typing import List

import pytest

from foxcohen.exceptions import BudgetExceeded, DisjointnessError, DomainError
from foxcohen.fox import (
    FoxTable,
    fox_sign,
    inversion_count,
    phi_bruteforce,
    phi_closed,
    phi_recurrence,
)
from foxcohen.numtheory import binomial
from foxcohen.types import IndexSet
from foxcohen.utils import FOXCOHEN_ENUMERATION_BUDGET


class TestFoxSign:
    def test_known_values(self) -> None:
        assert fox_sign(IndexSet([2]), IndexSet([1])) == -1
        assert fox_sign(IndexSet([1]), IndexSet([2])) == 1
        assert fox_sign(IndexSet([1, 2]), IndexSet()) == -1

    def test_inversions(self) -> None:
        assert inversion_count(IndexSet([2, 4]), IndexSet([1, 3])) == 3
        assert inversion_count(IndexSet([1, 3]), IndexSet([2, 4])) == 1

    def test_errors(self) -> None:
        with pytest.raises(DisjointnessError):
            fox_sign(IndexSet([1, 2]), IndexSet([2, 3]))
        with pytest.raises(DomainError):
            fox_sign(IndexSet(), IndexSet([1]))

    def test_disjointness_is_a_domain_error(self) -> None:
        with pytest.raises(DomainError):
            fox_sign(IndexSet([1]), IndexSet([1]))

    def test_antisymmetry(self) -> None:
        for k in range(2, 9):
            for size in range(1, k):
                for chosen in combinations(range(1, k + 1), size):
                    a = IndexSet(chosen)
                    b = a.complement(k)
                    assert inversion_count(a, b) + inversion_count(b, a) == len(a) * len(b)
                    exponent = (len(a) + 1) * (len(b) + 1)
                    assert fox_sign(a, b) == -fox_sign(b, a) * (-1) ** exponent


class TestPhi:
    def test_bruteforce_values(self) -> None:
        assert phi_bruteforce(1, 2) == 0
        assert phi_bruteforce(2, 2) == -1
        assert phi_bruteforce(1, 3) == 1
        assert phi_bruteforce(2, 4) == -2

    def test_boundaries(self) -> None:
        for k in range(1, 10):
            assert phi_bruteforce(0, k) == -1
            assert phi_recurrence(0, k) == -1
            assert phi_bruteforce(k, k) == (-1) ** (k - 1)
            assert phi_recurrence(k, k) == (-1) ** (k - 1)

    def test_recurrence_values(self) -> None:
        assert phi_recurrence(1, 3) == 1
        assert phi_recurrence(3, 3) == 1
        assert phi_recurrence(2, 4) == -2

    def test_closed_values(self) -> None:
        assert phi_closed(2, 4) == -2
        assert phi_closed(1, 1) == 1
        assert phi_closed(2, 3) == -1

    def test_oracles_agree(self) -> None:
        table = FoxTable(16)
        for k in range(1, 17):
            for l in range(1, k + 1):
                expected = phi_closed(l, k)
                assert phi_bruteforce(l, k, budget=16) == expected
                assert phi_recurrence(l, k, table) == expected

    def test_argument_errors(self) -> None:
        with pytest.raises(DomainError):
            phi_bruteforce(3, 2)
        with pytest.raises(DomainError):
            phi_recurrence(-1, 2)
        with pytest.raises(DomainError):
            phi_closed(0, 3)
        with pytest.raises(DomainError):
            phi_closed(4, 3)
        with pytest.raises(DomainError):
            phi_bruteforce(0, 0)

    def test_budget(self, monkeypatch: pytest.MonkeyPatch) -> None:
        with pytest.raises(BudgetExceeded):
            phi_bruteforce(1, 5, budget=4)
        monkeypatch.setenv(FOXCOHEN_ENUMERATION_BUDGET, "3")
        with pytest.raises(BudgetExceeded):
            phi_bruteforce(1, 4)
        assert phi_bruteforce(1, 3) == 1


class TestPhiIdentities:
    @pytest.fixture(scope="function")
    def table(self) -> FoxTable:
        return FoxTable(201)

    def test_parity_vanishing(self, table: FoxTable) -> None:
        for k in range(1, 101):
            for l in range(1, 2 * k + 1, 2):
                assert table.value(l, 2 * k) == 0

    def test_stability_and_alternation(self, table: FoxTable) -> None:
        for k in range(1, 100):
            for l in range(0, 2 * k + 1, 2):
                assert table.value(l, 2 * k) == table.value(l, 2 * k + 1)
                assert table.value(l + 1, 2 * k + 1) == -table.value(l, 2 * k + 1)

    def test_even_even(self, table: FoxTable) -> None:
        for k in range(2, 101):
            for l in range(1, k):
                assert table.value(2 * l, 2 * k) == table.value(
                    2 * l, 2 * k - 2
                ) + table.value(2 * l - 2, 2 * k - 2)
            for l in range(1, k + 1):
                assert table.value(2 * l, 2 * k) == -binomial(k, l)

    def test_closed_form_up_to_200(self, table: FoxTable) -> None:
        for k in range(1, 201):
            for l in range(1, k + 1):
                assert table.value(l, k) == phi_closed(l, k)

    def test_in_proof_value_is_not_used(self) -> None:
        for k in range(0, 10):
            assert phi_closed(1, 2 * k + 1) == 1


class TestFoxTable:
    def test_values(self) -> None:
        table = FoxTable(4)
        values = table.values
        assert len([key for key in values if key[0] >= 1]) == 10
        assert [values[(l, 4)] for l in range(1, 5)] == [0, -2, 0, -1]

    def test_extends_on_demand(self) -> None:
        table = FoxTable(2)
        assert table.max_k == 2
        assert table.value(3, 7) == phi_closed(3, 7)
        assert table.max_k == 7

    def test_invalid_size(self) -> None:
        with pytest.raises(DomainError):
            FoxTable(0)

    def test_shared_fill_is_consistent(self) -> None:
        table = FoxTable(1)
        results: List[int] = []

        def fill(k: int) -> None:
            results.append(table.value(k // 2, k))

        threads = [threading.Thread(target=fill, args=(k,)) for k in range(60, 120)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()

        assert sorted(results) == sorted(phi_closed(k // 2, k) for k in range(60, 120))
        assert table.values == FoxTable(119).values
