import random

from itertools import combinations
from typing import Dict, List

import pytest

from foxcohen.catalog import bracket_probe, get_space, probe_generators
from foxcohen.exceptions import DomainError, ModelMismatchError, ModelNotClass2
from foxcohen.fox import fox_sign, phi_bruteforce
from foxcohen.homotopy import SpaceModel
from foxcohen.torus import (
    SubsetOrder,
    TorusGroup,
    class_two_violations,
    disjoint_pairs,
    signed_subset_sum,
    tau_commutator,
    tau_kernel_multiplicities,
    tau_multiplicities,
    tau_multiply,
)
from foxcohen.types import IndexSet


@pytest.fixture
def sphere_two_torus() -> TorusGroup:
    return TorusGroup(get_space("S2@4"), 2)


def iterated_model() -> SpaceModel:
    return SpaceModel.from_tables(
        "iterated",
        5,
        {2: [0], 3: [0], 4: [0], 5: [0]},
        [((2, 0), (2, 0), [1], "first"), ((2, 0), (3, 0), [1], "second")],
    )


class TestConstruction:
    def test_level_range(self) -> None:
        with pytest.raises(DomainError):
            TorusGroup(get_space("S2@4"), 0)
        with pytest.raises(DomainError):
            TorusGroup(get_space("S2@4"), 4)

    def test_not_class_two(self) -> None:
        assert "[(2,0),(3,0)]" in class_two_violations(iterated_model(), 4)
        with pytest.raises(ModelNotClass2):
            TorusGroup(iterated_model(), 3)
        assert TorusGroup(iterated_model(), 2).level == 2

    def test_embed(self, sphere_two_torus: TorusGroup) -> None:
        iota = sphere_two_torus.model.generator(2, 0)
        x = sphere_two_torus.embed(iota, IndexSet([2]))
        assert x.to_dict() == {"2": [1]}
        assert x.slot(IndexSet([1])).is_zero()

    def test_embed_errors(self, sphere_two_torus: TorusGroup) -> None:
        iota = sphere_two_torus.model.generator(2, 0)
        with pytest.raises(DomainError):
            sphere_two_torus.embed(iota, IndexSet([1, 2]))
        with pytest.raises(DomainError):
            sphere_two_torus.embed(iota, IndexSet([3]))
        with pytest.raises(DomainError):
            sphere_two_torus.embed(iota, IndexSet())
        foreign = get_space("M3@3").generator(2, 0)
        with pytest.raises(ModelMismatchError):
            sphere_two_torus.embed(foreign, IndexSet([1]))

    def test_element(self, sphere_two_torus: TorusGroup) -> None:
        x = sphere_two_torus.element({"1,2": [3], "1": [0]})
        assert x.to_dict() == {"1,2": [3]}
        with pytest.raises(DomainError):
            sphere_two_torus.element({"1,3": [1]})
        with pytest.raises(DomainError):
            sphere_two_torus.element({"": [1]})

    def test_foreign_elements(self, sphere_two_torus: TorusGroup) -> None:
        other = TorusGroup(get_space("S2@4"), 3)
        with pytest.raises(ModelMismatchError):
            sphere_two_torus.multiply(sphere_two_torus.identity(), other.identity())


class TestMultiply:
    def test_cocycle_follows_order(self, sphere_two_torus: TorusGroup) -> None:
        x = sphere_two_torus.element({"1": [1]})
        y = sphere_two_torus.element({"2": [1]})
        assert tau_multiply(x, y).to_dict() == {"1": [1], "2": [1]}
        assert tau_multiply(y, x).to_dict() == {"1": [1], "2": [1], "1,2": [-2]}

    def test_reverse_order(self) -> None:
        group = TorusGroup(get_space("S2@4"), 2, SubsetOrder.REVERSE_COLEX)
        x = group.element({"1": [1]})
        y = group.element({"2": [1]})
        assert group.multiply(x, y).to_dict() == {"1": [1], "2": [1], "1,2": [2]}
        assert group.multiply(y, x).to_dict() == {"1": [1], "2": [1]}

    def test_inverse(self, sphere_two_torus: TorusGroup) -> None:
        x = sphere_two_torus.element({"1": [2], "2": [-1], "1,2": [5]})
        inverse = sphere_two_torus.inverse(x)
        assert sphere_two_torus.multiply(x, inverse).is_identity()
        assert sphere_two_torus.multiply(inverse, x).is_identity()

    def test_identity(self, sphere_two_torus: TorusGroup) -> None:
        x = sphere_two_torus.element({"2": [4], "1,2": [1]})
        e = sphere_two_torus.identity()
        assert e.is_identity()
        assert sphere_two_torus.multiply(x, e) == x
        assert sphere_two_torus.multiply(e, x) == x


class TestCommutator:
    def test_swapped_singletons(self, sphere_two_torus: TorusGroup) -> None:
        iota = sphere_two_torus.model.generator(2, 0)
        result = tau_commutator(
            sphere_two_torus.embed(iota, IndexSet([2])),
            sphere_two_torus.embed(iota, IndexSet([1])),
        )
        assert result.slots == {IndexSet([1, 2]): -sphere_two_torus.model.bracket(iota, iota)}
        assert result.to_dict() == {"1,2": [-2]}

    @pytest.mark.parametrize("order", list(SubsetOrder))
    def test_disjoint_slots(self, order: SubsetOrder) -> None:
        level = 5
        groups: Dict[int, TorusGroup] = {}
        for a, b in disjoint_pairs(level):
            p, q = len(a) + 1, len(b) + 1
            key = p * 100 + q
            if key not in groups:
                groups[key] = TorusGroup(bracket_probe(p, q, level + 1), level, order)
            group = groups[key]
            ga, gb = probe_generators(p, q)
            alpha = group.model.generator(*ga)
            beta = group.model.generator(*gb)
            result = group.commutator(group.embed(alpha, a), group.embed(beta, b))
            expected = group.model.bracket(alpha, beta).scale(fox_sign(a, b))
            assert result.slots == {a.union(b): expected}

    def test_overlapping_slots(self) -> None:
        group = TorusGroup(bracket_probe(3, 3, 5), 4)
        ga, gb = probe_generators(3, 3)
        alpha = group.model.generator(*ga)
        beta = group.model.generator(*gb)
        for ca in combinations(range(1, 5), 2):
            for cb in combinations(range(1, 5), 2):
                a, b = IndexSet(ca), IndexSet(cb)
                if a.isdisjoint(b):
                    continue
                result = group.commutator(group.embed(alpha, a), group.embed(beta, b))
                assert result.is_identity()

    def test_order_invariance(self) -> None:
        rng = random.Random(11)
        model = get_space("S2@4")
        colex = TorusGroup(model, 3)
        reverse = TorusGroup(model, 3, SubsetOrder.REVERSE_COLEX)

        def slots() -> Dict[str, List[int]]:
            return {
                ",".join(map(str, c)): [rng.randint(-4, 4)]
                for size in (1, 2)
                for c in combinations(range(1, 4), size)
            }

        for _ in range(50):
            x, y = slots(), slots()
            left = colex.commutator(colex.element(x), colex.element(y))
            right = reverse.commutator(reverse.element(x), reverse.element(y))
            assert left.to_dict() == right.to_dict()


class TestAxioms:
    @pytest.mark.parametrize("order", list(SubsetOrder))
    def test_random_triples(self, order: SubsetOrder) -> None:
        rng = random.Random(5)
        group = TorusGroup(get_space("S2@4"), 3, order)

        def random_tau() -> Dict[str, List[int]]:
            return {
                ",".join(map(str, c)): [rng.randint(-5, 5)]
                for size in (1, 2)
                for c in combinations(range(1, 4), size)
            }

        for _ in range(200):
            x, y, z = (group.element(random_tau()) for _ in range(3))
            left = group.multiply(group.multiply(x, y), z)
            right = group.multiply(x, group.multiply(y, z))
            assert left == right
            assert group.multiply(x, group.inverse(x)).is_identity()


class TestCounting:
    def test_multiplicities(self) -> None:
        counts = tau_multiplicities(8)
        assert counts[4] == 35
        assert counts[5] == 35
        assert sum(counts.values()) == 2**7 - 1

    def test_multiplicities_with_model(self) -> None:
        assert tau_multiplicities(5, get_space("S4reduced@8")) == {4: 4, 5: 1}

    def test_kernel(self) -> None:
        assert tau_kernel_multiplicities(5, get_space("S4reduced@8")) == {4: 3, 5: 1}
        assert tau_kernel_multiplicities(4) == {2: 1, 3: 2, 4: 1}

    def test_bad_n(self) -> None:
        with pytest.raises(DomainError):
            tau_multiplicities(1)
        with pytest.raises(DomainError):
            tau_kernel_multiplicities(1)

    def test_signed_subset_sum(self) -> None:
        for k in range(1, 9):
            for l in range(1, k + 1):
                assert signed_subset_sum(l, k) == phi_bruteforce(l, k)
        with pytest.raises(DomainError):
            signed_subset_sum(0, 3)

    def test_disjoint_pairs(self) -> None:
        pairs = disjoint_pairs(2)
        assert pairs == [(IndexSet([1]), IndexSet([2])), (IndexSet([2]), IndexSet([1]))]
        assert all(a.isdisjoint(b) for a, b in disjoint_pairs(4))
