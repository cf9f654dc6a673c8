"""Exact big-integer combinatorics behind the commutativity criteria.

Binomials, Lucas residues, Catalan numbers, the Δ table deciding whether two
homogeneous classes commute, and the stem predicates for the spheres S^{2n}.
No floating point is used anywhere.
"""

import threading

from math import comb
from typing import List, Union

from pydantic import BaseModel

from foxcohen.exceptions import DomainError
from foxcohen.types import INFINITE, NOT_APPLICABLE, Special

BracketOrder = Union[int, Special]


class DeltaEntry(BaseModel):
    n: int
    m: int
    value: int

    class Config:
        frozen = True


class StemReport(BaseModel):
    n: int
    delta_low: int
    delta_high: int
    j4nm1_abelian: bool
    j4np1_abelian: Union[bool, Special]

    class Config:
        frozen = True


def binomial(n: int, k: int) -> int:
    if n < 0:
        raise DomainError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def binomial_mod_p(n: int, k: int, p: int) -> int:
    """C(n, k) mod p by Lucas' theorem over the base-p digits of n and k.

    Raises:
        DomainError: p is not prime or n is negative.
    """
    if not is_prime(p):
        raise DomainError(f"Lucas residues need a prime modulus, got {p}")
    if n < 0:
        raise DomainError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    residue = 1
    while n or k:
        n, a = divmod(n, p)
        k, b = divmod(k, p)
        if b > a:
            return 0
        residue = residue * comb(a, b) % p
    return residue


def binomial_odd(n: int, k: int) -> bool:
    """True iff every binary digit of k is at most the matching digit of n."""
    if n < 0 or k < 0:
        return False
    return k & ~n == 0


class _CatalanCache:
    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._values: List[int] = [1]

    def get(self, n: int) -> int:
        if n < len(self._values):
            return self._values[n]
        with self._lock:
            values = self._values
            for m in range(len(values) - 1, n):
                values.append(values[m] * 2 * (2 * m + 1) // (m + 2))
            return values[n]


_catalan = _CatalanCache()


def catalan(n: int) -> int:
    if n < 0:
        raise DomainError(f"Catalan numbers need n >= 0, got {n}")
    return _catalan.get(n)


def catalan_two_adic_valuation(n: int) -> int:
    """Exponent of 2 in C_n, one less than the number of ones in n + 1."""
    if n < 0:
        raise DomainError(f"Catalan numbers need n >= 0, got {n}")
    return bin(n + 1).count("1") - 1


def delta(n: int, m: int) -> DeltaEntry:
    """Δ(n, m) for α in π_{n+1} and β in π_{m+1}, by the parity table."""
    if n < 1 or m < 1:
        raise DomainError(f"delta needs n, m >= 1, got n={n}, m={m}")
    if n % 2 and m % 2:
        value = 0
    elif n % 2:
        value = comb((n + m - 1) // 2, m // 2)
    elif m % 2:
        value = comb((n + m - 1) // 2, n // 2)
    else:
        value = comb((n + m) // 2, n // 2)
    return DeltaEntry(n=n, m=m, value=value)


def commutes_by_degree(n: int, m: int, bracket_order: BracketOrder) -> bool:
    """Whether α in π_{n+1} and β in π_{m+1} commute given the order of [α, β].

    An order of 1 stands for a vanishing bracket.
    """
    if n % 2 and m % 2:
        return True
    if bracket_order is INFINITE:
        return False
    if not isinstance(bracket_order, int) or bracket_order < 1:
        raise DomainError(f"bracket order must be positive or infinite, got {bracket_order}")
    return delta(n, m).value % bracket_order == 0


def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def in_Tstar01(n: int) -> bool:
    """Whether every base-3 digit of n above the units digit is 0 or 1."""
    if n < 0:
        raise DomainError(f"T*(01) holds natural numbers, got {n}")
    n //= 3
    while n:
        n, digit = divmod(n, 3)
        if digit == 2:
            return False
    return True


def j4n_minus1_abelian(n: int) -> bool:
    """Whether [J_{4n-1}(S^1), ΩS^{2n}] is abelian: iff n is not a power of 2."""
    if n < 1:
        raise DomainError(f"stem index needs n >= 1, got {n}")
    return not is_power_of_two(n)


def whitehead_nu_order(n: int) -> int:
    """Order of [ι_{2n}, ν_{2n}] for n not a power of 2."""
    return 12 if n % 2 else 24


def j4n_plus1_abelian(n: int) -> bool:
    """Whether [J_{4n+1}(S^1), ΩS^{2n}] is abelian, by exact divisibility.

    Raises:
        DomainError: n is a power of 2.
    """
    if n < 1 or is_power_of_two(n):
        raise DomainError(f"the 3-stem criterion needs n not a power of 2, got {n}")
    return n * catalan(n) % whitehead_nu_order(n) == 0


def j4n_plus1_abelian_by_digits(n: int) -> bool:
    """The binary and ternary digit form of the 3-stem criterion."""
    if n < 1 or is_power_of_two(n):
        raise DomainError(f"the 3-stem criterion needs n not a power of 2, got {n}")
    three_part = n % 3 == 0 or not in_Tstar01(n + 1)
    if n % 2 == 0:
        return three_part
    # n = 2^a - 1 or 2^a + 2^b - 1 exactly when n + 1 has at most two ones
    four_divides_catalan = bin(n + 1).count("1") >= 3
    return four_divides_catalan and three_part


def stem_report(n: int) -> StemReport:
    return StemReport(
        n=n,
        delta_low=delta(2 * n - 1, 2 * n).value,
        delta_high=binomial(2 * n, n - 1),
        j4nm1_abelian=j4n_minus1_abelian(n),
        j4np1_abelian=NOT_APPLICABLE if is_power_of_two(n) else j4n_plus1_abelian(n),
    )
