"""The Fox sign of an ordered pair of disjoint index sets and the Fox function.

The Fox function φ(l, k) sums the Fox sign (-1)^(w + l - 1) over every
l-subset of {1..k}, w counting the inversions j < i with i in the subset and
j in its complement. It is computed three ways that must agree: brute-force
enumeration, the two-term recurrence, and the four-case closed form.

Boundary values follow the subset-sum definition: φ(0, k) = -1 and
φ(k, k) = (-1)^(k-1).
"""

import logging
import threading

from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Tuple

from foxcohen.exceptions import BudgetExceeded, DisjointnessError, DomainError
from foxcohen.types import IndexSet
from foxcohen.utils import enumeration_budget

logger = logging.getLogger(__name__)


def inversion_count(a: IndexSet, b: IndexSet) -> int:
    """Number of pairs (i, j) with i in `a`, j in `b` and j < i."""
    return sum(1 for i in a for j in b if j < i)


def fox_sign(a: IndexSet, b: IndexSet) -> int:
    """Fox sign (-1)^(w + |a| - 1) of the ordered pair (a, b).

    Raises:
        DomainError: `a` is empty.
        DisjointnessError: `a` and `b` share an index.
    """
    if not len(a):
        raise DomainError("the Fox sign needs a nonempty first index set")
    if not a.isdisjoint(b):
        raise DisjointnessError(f"index sets {{{a}}} and {{{b}}} overlap")
    return -1 if (inversion_count(a, b) + len(a) - 1) % 2 else 1


def _check_arguments(l: int, k: int) -> None:
    if k < 1:
        raise DomainError(f"phi needs k >= 1, got k={k}")
    if l < 0 or l > k:
        raise DomainError(f"phi needs 0 <= l <= k, got l={l}, k={k}")


def phi_bruteforce(l: int, k: int, budget: Optional[int] = None) -> int:
    """Sum the Fox sign over all l-subsets of {1..k} by enumeration.

    Args:
        l: subset size, 0 <= l <= k.
        k: size of the index range.
        budget: largest k accepted; defaults to `FOXCOHEN_ENUMERATION_BUDGET`.

    Raises:
        DomainError: arguments outside 0 <= l <= k, k >= 1.
        BudgetExceeded: k beyond the enumeration budget.
    """
    _check_arguments(l, k)
    limit = enumeration_budget() if budget is None else budget
    if k > limit:
        raise BudgetExceeded(f"brute force over k={k} exceeds the budget k <= {limit}")
    universe = range(1, k + 1)
    total = 0
    for chosen in combinations(universe, l):
        a = IndexSet(chosen)
        b = a.complement(k)
        w = inversion_count(a, b)
        total += -1 if (w + l - 1) % 2 else 1
    return total


class FoxTable:
    """Memoized φ(l, k) for 0 <= l <= k <= max_k, filled row by row.

    Rows extend on demand; a fill happens under a lock so a shared table
    behaves as if it had been computed once.
    """

    def __init__(self, max_k: int = 1) -> None:
        if max_k < 1:
            raise DomainError(f"a Fox table needs max_k >= 1, got {max_k}")
        self.logger = logging.getLogger(self.__class__.__name__)
        self._lock = threading.Lock()
        self._rows: List[List[int]] = [[], [-1, 1]]
        self.max_k = 1
        self.extend(max_k)

    def extend(self, max_k: int) -> None:
        with self._lock:
            if max_k <= self.max_k:
                return
            self.logger.debug("Filling Fox table rows %d..%d", self.max_k + 1, max_k)
            for k in range(self.max_k + 1, max_k + 1):
                previous = self._rows[k - 1]
                row = [-1]
                for l in range(1, k):
                    sign = -1 if (k - l + 1) % 2 else 1
                    row.append(sign * previous[l - 1] + previous[l])
                row.append(-1 if (k - 1) % 2 else 1)
                self._rows.append(row)
            self.max_k = max_k

    def value(self, l: int, k: int) -> int:
        _check_arguments(l, k)
        if k > self.max_k:
            self.extend(k)
        return self._rows[k][l]

    @property
    def values(self) -> Dict[Tuple[int, int], int]:
        return {
            (l, k): self._rows[k][l]
            for k in range(1, self.max_k + 1)
            for l in range(0, k + 1)
        }


_shared_table = FoxTable()


def phi_recurrence(l: int, k: int, table: Optional[FoxTable] = None) -> int:
    """φ(l, k) from φ(l,k) = (-1)^(k-l+1) φ(l-1,k-1) + φ(l,k-1)."""
    return (table or _shared_table).value(l, k)


@lru_cache(maxsize=None)
def phi_closed(l: int, k: int) -> int:
    """Closed form of φ(l, k) for 1 <= l <= k.

    Raises:
        DomainError: l = 0 or l > k, where the closed form is not defined.
    """
    if l < 1 or l > k:
        raise DomainError(f"the closed form needs 1 <= l <= k, got l={l}, k={k}")
    if k % 2 == 0:
        return -comb(k // 2, l // 2) if l % 2 == 0 else 0
    if l % 2:
        return comb((k - 1) // 2, (l - 1) // 2)
    return -comb((k - 1) // 2, l // 2)
