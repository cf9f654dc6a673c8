"""Regression suite over the known groups, identities and criteria.

Checks are grouped in blocks (``fox``, ``numtheory``, ``pi``, ``cohen``,
``torus``); each check yields a `CheckResult` and a failing check never stops
the rest of its block.
"""

import logging
import random

from enum import Enum
from itertools import combinations, product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel

from foxcohen.catalog import (
    bracket_probe,
    catalog,
    connective,
    get_space,
    probe_generators,
    sphere_stem_one,
    sphere_stem_three,
    wedge,
    zero_bracket,
)
from foxcohen.cohen import CohenGroup
from foxcohen.exceptions import FoxCohenException
from foxcohen.fox import (
    FoxTable,
    fox_sign,
    inversion_count,
    phi_bruteforce,
    phi_closed,
    phi_recurrence,
)
from foxcohen.homotopy import SpaceModel
from foxcohen.loader import load_space, serialize_space
from foxcohen.numtheory import (
    binomial,
    binomial_mod_p,
    binomial_odd,
    catalan,
    catalan_two_adic_valuation,
    commutes_by_degree,
    delta,
    in_Tstar01,
    is_power_of_two,
    j4n_minus1_abelian,
    j4n_plus1_abelian,
    j4n_plus1_abelian_by_digits,
)
from foxcohen.torus import (
    SubsetOrder,
    TorusGroup,
    disjoint_pairs,
    signed_subset_sum,
    tau_kernel_multiplicities,
    tau_multiplicities,
)
from foxcohen.types import IndexSet

Outcome = Tuple[str, bool, str]
Check = Callable[[], Outcome]

SEED = 20221101


class CheckStatus(str, Enum):
    PASS = "Pass"
    FAIL = "Fail"


class CheckResult(BaseModel):
    block: str
    name: str
    status: CheckStatus
    detail: str = ""


def _first_failure(cases: Iterator[Tuple[bool, str]]) -> Tuple[bool, str]:
    checked = 0
    for ok, label in cases:
        checked += 1
        if not ok:
            return False, f"fails at {label}"
    return True, f"{checked} cases"


# fox


def check_phi_oracles() -> Outcome:
    table = FoxTable(16)
    ok, detail = _first_failure(
        (
            phi_bruteforce(l, k, budget=16)
            == phi_recurrence(l, k, table)
            == phi_closed(l, k),
            f"({l},{k})",
        )
        for k in range(1, 17)
        for l in range(1, k + 1)
    )
    return "phi oracles agree for k <= 16", ok, detail


def check_phi_identities() -> Outcome:
    table = FoxTable(201)

    def phi(l: int, k: int) -> int:
        return table.value(l, k)

    def cases() -> Iterator[Tuple[bool, str]]:
        for k in range(1, 201):
            for l in range(1, k + 1):
                yield phi(l, k) == phi_closed(l, k), f"closed form ({l},{k})"
        for k in range(1, 101):
            for l in range(1, 2 * k + 1, 2):
                yield phi(l, 2 * k) == 0, f"parity ({l},{2 * k})"
            for l in range(0, 2 * k + 1, 2):
                yield phi(l, 2 * k) == phi(l, 2 * k + 1), f"stability ({l},{2 * k})"
                yield phi(l + 1, 2 * k + 1) == -phi(
                    l, 2 * k + 1
                ), f"alternation ({l},{2 * k + 1})"
            for l in range(1, k + 1):
                yield phi(2 * l, 2 * k) == -binomial(k, l), f"even closed form ({2 * l},{2 * k})"
            for l in range(1, k):
                yield phi(2 * l, 2 * k) == phi(2 * l, 2 * k - 2) + phi(
                    2 * l - 2, 2 * k - 2
                ), f"even recursion ({2 * l},{2 * k})"

    ok, detail = _first_failure(cases())
    return "phi identities for k <= 200", ok, detail


def check_sign_antisymmetry() -> Outcome:
    def cases() -> Iterator[Tuple[bool, str]]:
        for k in range(2, 9):
            for size in range(1, k):
                for chosen in combinations(range(1, k + 1), size):
                    a = IndexSet(chosen)
                    b = a.complement(k)
                    exponent = (len(a) + 1) * (len(b) + 1)
                    yield (
                        inversion_count(a, b) + inversion_count(b, a) == len(a) * len(b)
                        and fox_sign(a, b) == -fox_sign(b, a) * (-1) ** exponent,
                        f"{{{a}}} | {{{b}}}",
                    )

    ok, detail = _first_failure(cases())
    return "fox sign antisymmetry up to 8 indices", ok, detail


def check_definition_linkage() -> Outcome:
    ok, detail = _first_failure(
        (signed_subset_sum(l, k) == phi_bruteforce(l, k), f"({l},{k})")
        for k in range(1, 13)
        for l in range(1, k + 1)
    )
    return "signed subset sums equal phi for k <= 12", ok, detail


# numtheory


def check_delta_phi_linkage() -> Outcome:
    def cases() -> Iterator[Tuple[bool, str]]:
        for n in range(1, 41):
            for m in range(1, 41):
                sign = (-1) ** ((n + 1) * (m + 1))
                linked = abs(
                    phi_closed(n, n + m - 1) - sign * phi_closed(m, n + m - 1)
                )
                yield delta(n, m).value == linked, f"({n},{m})"

    ok, detail = _first_failure(cases())
    return "delta equals the phi difference for n, m <= 40", ok, detail


def check_delta_table() -> Outcome:
    ok, detail = _first_failure(
        (
            delta(n, m).value == delta(m, n).value
            and (delta(n, m).value == 0) == (n % 2 == 1 and m % 2 == 1),
            f"({n},{m})",
        )
        for n in range(1, 65)
        for m in range(1, 65)
    )
    return "delta symmetry and zero locus for n, m <= 64", ok, detail


def check_lucas() -> Outcome:
    rng = random.Random(SEED)

    def cases() -> Iterator[Tuple[bool, str]]:
        for _ in range(2000):
            n = rng.randint(0, 2000)
            k = rng.randint(0, n)
            for p in (2, 3, 5, 7):
                yield binomial_mod_p(n, k, p) == binomial(n, k) % p, f"C({n},{k}) mod {p}"
            yield binomial_odd(n, k) == (binomial_mod_p(n, k, 2) == 1), f"C({n},{k}) odd"

    ok, detail = _first_failure(cases())
    return "Lucas residues match exact binomials", ok, detail


def check_one_stem() -> Outcome:
    ok, detail = _first_failure(
        (
            j4n_minus1_abelian(n) == (not is_power_of_two(n))
            and j4n_minus1_abelian(n) == commutes_by_degree(2 * n - 1, 2 * n, 2),
            f"n={n}",
        )
        for n in range(1, 65)
    )
    return "level 4n-1 criterion for n <= 64", ok, detail


def check_three_stem() -> Outcome:
    def cases() -> Iterator[Tuple[bool, str]]:
        yield not j4n_plus1_abelian(29), "n=29"
        yield j4n_plus1_abelian(34), "n=34"
        for n in range(1, 1001):
            if not is_power_of_two(n):
                yield j4n_plus1_abelian_by_digits(n) == j4n_plus1_abelian(n), f"n={n}"

    ok, detail = _first_failure(cases())
    return "level 4n+1 criterion and its digit form for n <= 1000", ok, detail


def check_catalan() -> Outcome:
    def cases() -> Iterator[Tuple[bool, str]]:
        for n in range(1, 3001):
            c = catalan(n)
            yield (c % 3 != 0) == in_Tstar01(n + 1), f"3 | C_{n}"
            yield binomial(2 * n, n - 1) == n * c, f"binomial identity n={n}"
            if n <= 500:
                exact = (c & -c).bit_length() - 1
                yield catalan_two_adic_valuation(n) == exact, f"2-adic n={n}"

    ok, detail = _first_failure(cases())
    return "Catalan criteria for n <= 3000", ok, detail


# pi


def _checked_models() -> List[SpaceModel]:
    return list(catalog().values()) + [
        wedge(2),
        sphere_stem_one(3),
        sphere_stem_three(3),
        connective(2),
        zero_bracket(6),
    ]


def check_catalog_valid() -> Outcome:
    ok, detail = _first_failure(
        (not (violations := model.validate()), f"{model.name}: {violations}")
        for model in _checked_models()
    )
    return "catalog models validate", ok, detail


def check_round_trip() -> Outcome:
    ok, detail = _first_failure(
        (load_space(serialize_space(model)) == model, model.name)
        for model in _checked_models()
    )
    return "serialized models load back unchanged", ok, detail


def check_bilinearity() -> Outcome:
    rng = random.Random(SEED)

    def random_pi(model: SpaceModel, degree: int) -> List[int]:
        return [rng.randrange(o) if o else rng.randint(-9, 9) for o in model.group(degree).orders]

    def cases() -> Iterator[Tuple[bool, str]]:
        for model in _checked_models():
            for p, q in product(model.degrees, repeat=2):
                for _ in range(5):
                    x = model.element(p, random_pi(model, p))
                    x2 = model.element(p, random_pi(model, p))
                    y = model.element(q, random_pi(model, q))
                    yield (
                        model.bracket(x + x2, y) == model.bracket(x, y) + model.bracket(x2, y),
                        f"{model.name} degrees ({p},{q})",
                    )

    ok, detail = _first_failure(cases())
    return "brackets are bilinear", ok, detail


# cohen


def check_sphere_two_rule() -> Outcome:
    group = CohenGroup(get_space("S2@4"), 2)
    free = range(-20, 21)
    sparse = (-20, -1, 0, 1, 20)

    def cases() -> Iterator[Tuple[bool, str]]:
        for a1, b1 in product(free, repeat=2):
            for a2, b2 in product(sparse, repeat=2):
                x = group.element({2: [a1], 3: [a2]})
                y = group.element({2: [b1], 3: [b2]})
                expected = group.element({2: [a1 + b1], 3: [a2 + b2 + 2 * a1 * b1]})
                yield group.multiply(x, y) == expected, f"({a1},{a2})#({b1},{b2})"

    ok, detail = _first_failure(cases())
    return "S2@4 product rule on |coeffs| <= 20", ok, detail


def check_sphere_two_isomorphism() -> Outcome:
    group = CohenGroup(get_space("S2@4"), 2)

    def image(m: int, n: int) -> Tuple[int, int]:
        return m, m * (m - 1) + n

    def cases() -> Iterator[Tuple[bool, str]]:
        grid = range(-20, 21)
        seen: Set[Tuple[int, int]] = set()
        for m, n in product(grid, repeat=2):
            seen.add(image(m, n))
        yield len(seen) == 41 * 41, "injective"
        for m, n, m2 in product(grid, grid, (-20, -3, 0, 5, 20)):
            for n2 in (-20, 0, 20):
                x, y, expected = (
                    group.element({2: [u], 3: [v]})
                    for u, v in (image(m, n), image(m2, n2), image(m + m2, n + n2))
                )
                yield group.multiply(x, y) == expected, f"({m},{n})+({m2},{n2})"

    ok, detail = _first_failure(cases())
    return "S2@4 level 2 is Z + Z via (m, n) -> (m, m(m-1)+n)", ok, detail


def check_moore_three_census() -> Outcome:
    census = CohenGroup(get_space("M3@3"), 2).enumerate_group(8)
    ok = (
        census.size == 8
        and census.order_census == {1: 1, 2: 3, 4: 4}
        and 8 not in census.order_census
        and census.closed
    )
    return "M3@3 level 2 has 8 elements, census {1:1, 2:3, 4:4}", ok, str(census.order_census)


def check_moore_seven_order() -> Outcome:
    group = CohenGroup(get_space("M7reduced@11"), 10)
    alpha = group.element({6: [1]})
    order = group.order(alpha)
    square_coefficient = phi_closed(5, 9)
    expected = 4 if square_coefficient % 2 else 2
    ok = order == expected and order in (2, 4)
    return (
        "M7reduced@11 level 10 order of the i7 slot",
        ok,
        f"order {order}, phi(5,9) = {square_coefficient}",
    )


def check_sphere_four_nonabelian() -> Outcome:
    report = CohenGroup(get_space("S4reduced@8"), 7).is_abelian()
    ok = not report.abelian and report.witness == ((4, 0), (5, 0))
    return "S4reduced@8 level 7 is non-abelian with witness (iota4, eta4)", ok, str(report.witness)


def check_commutator_criterion() -> Outcome:
    models = (
        [sphere_stem_one(n) for n in range(1, 7)]
        + [sphere_stem_three(n) for n in (3, 5, 6, 7)]
        + [wedge(n) for n in (1, 2, 3)]
    )

    def cases() -> Iterator[Tuple[bool, str]]:
        for model in models:
            (p, _), (q, _) = next(key for key, _ in model.brackets.items())
            level = p + q - 2
            group = CohenGroup(model, level)
            alpha = group.homogeneous(model.generator(p, 0))
            beta = group.homogeneous(model.generator(q, 0))
            bracket_value = model.bracket(model.generator(p, 0), model.generator(q, 0))
            order = bracket_value.order() if not bracket_value.is_zero() else 1
            commutes = group.commutator(alpha, beta).is_identity()
            top = group.commutator(alpha, beta).coordinate(level + 1)
            coefficient = phi_closed(p - 1, level - 1) - (-1) ** (p * q) * phi_closed(
                q - 1, level - 1
            )
            yield (
                commutes == commutes_by_degree(p - 1, q - 1, order)
                and abs(coefficient) == delta(p - 1, q - 1).value
                and top == bracket_value.scale(coefficient),
                model.name,
            )

    ok, detail = _first_failure(cases())
    return "commutators match the delta criterion", ok, detail


def _group_cases() -> List[CohenGroup]:
    groups: List[CohenGroup] = []
    for model in _checked_models():
        for level in range(1, model.truncation):
            groups.append(CohenGroup(model, level))
    return groups


def check_group_axioms(samples: int = 10000) -> Outcome:
    rng = random.Random(SEED)
    groups = _group_cases()

    def cases() -> Iterator[Tuple[bool, str]]:
        for index in range(samples):
            group = groups[index % len(groups)]
            x, y, z = (group.random_element(rng) for _ in range(3))
            label = f"{group.model.name} level {group.level}"
            yield not group.associativity_failures([(x, y, z)]), f"associativity {label}"
            yield group.multiply(x, group.identity()) == x, f"identity {label}"
            yield group.multiply(x, group.inverse(x)).is_identity(), f"inverse {label}"
            if group.level > 1:
                yield (
                    group.project(group.multiply(x, y))
                    == group.parent().multiply(group.project(x), group.project(y)),
                    f"projection {label}",
                )
            top = group.element({group.level + 1: list(x.coordinate(group.level + 1).coeffs)})
            yield group.commutator(top, y).is_identity(), f"centrality {label}"

    ok, detail = _first_failure(cases())
    return f"group axioms on {samples} random triples", ok, detail


def check_direct_product() -> Outcome:
    rng = random.Random(SEED)
    group = CohenGroup(zero_bracket(6), 5)

    def cases() -> Iterator[Tuple[bool, str]]:
        for _ in range(500):
            x, y = group.random_element(rng), group.random_element(rng)
            sums = {
                d: [a + b for a, b in zip(x.coordinate(d).coeffs, y.coordinate(d).coeffs)]
                for d in group.degrees
            }
            yield group.multiply(x, y) == group.element(sums), str(x)

    ok, detail = _first_failure(cases())
    return "vanishing brackets multiply coordinatewise", ok, detail


def check_connectivity_window() -> Outcome:
    ok, detail = _first_failure(
        (CohenGroup(connective(n), level).is_abelian().abelian, f"n={n} level {level}")
        for n in (2, 3)
        for level in range(1, 4 * n - 1)
    )
    return "(2n-1)-connected models are abelian through level 4n-2", ok, detail


# torus


def check_torus_commutators(max_size: int = 8, order: SubsetOrder = SubsetOrder.COLEX) -> Outcome:
    level = max_size
    groups: Dict[Tuple[int, int], TorusGroup] = {}

    def torus(p: int, q: int) -> TorusGroup:
        if (p, q) not in groups:
            groups[(p, q)] = TorusGroup(bracket_probe(p, q, level + 1), level, order)
        return groups[(p, q)]

    def cases() -> Iterator[Tuple[bool, str]]:
        for a, b in disjoint_pairs(max_size):
            p, q = len(a) + 1, len(b) + 1
            group = torus(p, q)
            ga, gb = probe_generators(p, q)
            alpha, beta = group.model.generator(*ga), group.model.generator(*gb)
            result = group.commutator(group.embed(alpha, a), group.embed(beta, b))
            expected = group.model.bracket(alpha, beta).scale(fox_sign(a, b))
            yield result.slots == {a.union(b): expected}, f"{{{a}}}, {{{b}}}"
        for size_a, size_b in ((2, 2), (2, 3), (3, 1)):
            p, q = size_a + 1, size_b + 1
            group = torus(p, q)
            ga, gb = probe_generators(p, q)
            alpha, beta = group.model.generator(*ga), group.model.generator(*gb)
            for ca in combinations(range(1, 6), size_a):
                for cb in combinations(range(1, 6), size_b):
                    a, b = IndexSet(ca), IndexSet(cb)
                    if a.isdisjoint(b):
                        continue
                    result = group.commutator(group.embed(alpha, a), group.embed(beta, b))
                    yield result.is_identity(), f"overlap {{{a}}}, {{{b}}}"

    ok, detail = _first_failure(cases())
    return f"torus commutators follow the Fox sign ({order.value})", ok, detail


def check_torus_commutators_reverse() -> Outcome:
    return check_torus_commutators(order=SubsetOrder.REVERSE_COLEX)


def check_torus_two_slots() -> Outcome:
    group = TorusGroup(get_space("S2@4"), 2)
    iota = group.model.generator(2, 0)
    result = group.commutator(group.embed(iota, IndexSet([2])), group.embed(iota, IndexSet([1])))
    expected = -group.model.bracket(iota, iota)
    ok = result.slots == {IndexSet([1, 2]): expected}
    return "tau_3(S2) commutator of slots {2}, {1} is -[i2,i2]", ok, str(result.to_dict())


def check_multiplicities() -> Outcome:
    sphere_four = get_space("S4reduced@8")
    counts = tau_multiplicities(8)
    kernel = tau_kernel_multiplicities(5, sphere_four)
    ok = (
        counts[4] == 35
        and counts[5] == 35
        and binomial_mod_p(7, 3, 2) == 1
        and kernel == {4: 3, 5: 1}
    )
    return "tau_8 carries 35 copies of pi4 and pi5; tau_5 kernel is pi5 + 3 pi4", ok, str(kernel)


def check_torus_axioms(samples: int = 2000) -> Outcome:
    rng = random.Random(SEED)
    model = get_space("S2@4")

    def random_tau(group: TorusGroup) -> Dict[str, List[int]]:
        slots: Dict[str, List[int]] = {}
        for size in (1, 2):
            for chosen in combinations(range(1, group.level + 1), size):
                slots[",".join(map(str, chosen))] = [rng.randint(-5, 5)]
        return slots

    def cases() -> Iterator[Tuple[bool, str]]:
        for order in SubsetOrder:
            group = TorusGroup(model, 3, order)
            for _ in range(samples // 2):
                x, y, z = (group.element(random_tau(group)) for _ in range(3))
                left = group.multiply(group.multiply(x, y), z)
                right = group.multiply(x, group.multiply(y, z))
                yield left == right, f"associativity ({order.value})"
                yield group.multiply(x, group.inverse(x)).is_identity(), f"inverse ({order.value})"

    ok, detail = _first_failure(cases())
    return "torus group axioms on random triples", ok, detail


BLOCKS: Dict[str, List[Check]] = {
    "fox": [
        check_phi_oracles,
        check_phi_identities,
        check_sign_antisymmetry,
        check_definition_linkage,
    ],
    "numtheory": [
        check_delta_phi_linkage,
        check_delta_table,
        check_lucas,
        check_one_stem,
        check_three_stem,
        check_catalan,
    ],
    "pi": [check_catalog_valid, check_round_trip, check_bilinearity],
    "cohen": [
        check_sphere_two_rule,
        check_sphere_two_isomorphism,
        check_moore_three_census,
        check_moore_seven_order,
        check_sphere_four_nonabelian,
        check_commutator_criterion,
        check_group_axioms,
        check_direct_product,
        check_connectivity_window,
    ],
    "torus": [
        check_torus_commutators,
        check_torus_commutators_reverse,
        check_torus_two_slots,
        check_multiplicities,
        check_torus_axioms,
    ],
}


class Verifier:
    def __init__(self, blocks: Optional[Dict[str, List[Check]]] = None) -> None:
        self.logger = logging.getLogger(self.__class__.__name__)
        self.blocks = BLOCKS if blocks is None else blocks

    def run(self, only: Optional[Sequence[str]] = None) -> List[CheckResult]:
        """Run the selected blocks, all of them when `only` is empty."""
        selected = list(only) if only else list(self.blocks)
        for name in selected:
            if name not in self.blocks:
                raise ValueError(f"unknown verify block {name!r}")
        results: List[CheckResult] = []
        for name in selected:
            for check in self.blocks[name]:
                results.append(self._run_check(name, check))
        return results

    def _run_check(self, block: str, check: Check) -> CheckResult:
        try:
            title, ok, detail = check()
        except FoxCohenException as e:
            self.logger.warning("Check %s in block %s raised %s", check, block, e)
            title, ok, detail = getattr(check, "__name__", "check"), False, str(e)
        status = CheckStatus.PASS if ok else CheckStatus.FAIL
        self.logger.info("%s: %s (%s)", title, status.value, detail)
        return CheckResult(block=block, name=title, status=status, detail=detail)
