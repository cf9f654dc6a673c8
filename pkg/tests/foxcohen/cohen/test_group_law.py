from itertools import product

import pytest

from pytest_mock import MockerFixture

from foxcohen import cohen
from foxcohen.catalog import get_space
from foxcohen.cohen import CohenGroup
from foxcohen.exceptions import CoefficientMismatch, DomainError, ModelMismatchError
from foxcohen.fox import phi_closed
from foxcohen.types import EXCEEDS_BOUND, INFINITE
from foxcohen.utils import FOXCOHEN_DEBUG


@pytest.fixture(scope="function")
def sphere_two() -> CohenGroup:
    return CohenGroup(get_space("S2@4"), 2)


class TestConstruction:
    def test_level_bounds(self) -> None:
        model = get_space("S2@4")
        with pytest.raises(DomainError):
            CohenGroup(model, 0)
        with pytest.raises(DomainError):
            CohenGroup(model, 4)
        assert CohenGroup(model, 3).degrees == [2, 3, 4]

    def test_identity(self) -> None:
        model = get_space("S2@4")
        assert CohenGroup(model, 1).identity().to_dict() == {"2": [0]}
        assert CohenGroup(model, 2).identity().to_dict() == {"2": [0], "3": [0]}

    def test_element_degrees(self, sphere_two: CohenGroup) -> None:
        with pytest.raises(DomainError):
            sphere_two.element({4: [1]})
        with pytest.raises(ModelMismatchError):
            sphere_two.element({2: [1, 1]})
        assert sphere_two.element({3: [5]}).to_dict() == {"2": [0], "3": [5]}

    def test_to_dict_skips_trivial_degrees(self) -> None:
        group = CohenGroup(get_space("S4reduced@8"), 7)
        assert group.identity().to_dict() == {"4": [0], "5": [0], "8": [0]}


class TestMultiply:
    def test_sphere_two_square(self, sphere_two: CohenGroup) -> None:
        x = sphere_two.element({2: [1]})
        assert sphere_two.multiply(x, x).to_dict() == {"2": [2], "3": [2]}

    def test_sphere_two_rule(self, sphere_two: CohenGroup) -> None:
        for a1, a2, b1, b2 in product(range(-6, 7), (-3, 0, 4), range(-6, 7), (-2, 0, 5)):
            x = sphere_two.element({2: [a1], 3: [a2]})
            y = sphere_two.element({2: [b1], 3: [b2]})
            expected = sphere_two.element({2: [a1 + b1], 3: [a2 + b2 + 2 * a1 * b1]})
            assert x * y == expected

    def test_moore_three_square(self) -> None:
        group = CohenGroup(get_space("M3@3"), 2)
        x = group.element({2: [1]})
        assert group.multiply(x, x).to_dict() == {"2": [0], "3": [2]}

    def test_identity_law(self) -> None:
        group = CohenGroup(get_space("S4reduced@8"), 7)
        x = group.element({4: [3], 5: [1], 8: [1]})
        assert group.multiply(x, group.identity()) == x
        assert group.multiply(group.identity(), x) == x

    def test_level_mismatch(self) -> None:
        model = get_space("S2@4")
        low, high = CohenGroup(model, 2), CohenGroup(model, 3)
        with pytest.raises(ModelMismatchError):
            low.multiply(low.identity(), high.identity())

    def test_model_mismatch(self) -> None:
        left = CohenGroup(get_space("S2@4"), 2)
        right = CohenGroup(get_space("Wedge23@4"), 2)
        with pytest.raises(ModelMismatchError):
            left.multiply(left.identity(), right.identity())


class TestInverse:
    def test_sphere_two(self, sphere_two: CohenGroup) -> None:
        x = sphere_two.element({2: [1]})
        assert sphere_two.inverse(x).to_dict() == {"2": [-1], "3": [2]}
        assert sphere_two.multiply(x, sphere_two.inverse(x)).is_identity()

    def test_identity(self, sphere_two: CohenGroup) -> None:
        assert sphere_two.inverse(sphere_two.identity()).is_identity()

    def test_involution(self) -> None:
        group = CohenGroup(get_space("SphereStem3@3"), 13)
        x = group.element({6: [2], 9: [5], 14: [7]})
        assert group.inverse(group.inverse(x)) == x
        assert group.multiply(group.inverse(x), x).is_identity()


class TestPowerAndOrder:
    def test_power(self, sphere_two: CohenGroup) -> None:
        x = sphere_two.element({2: [1], 3: [1]})
        assert sphere_two.power(x, 0).is_identity()
        assert sphere_two.power(x, 1) == x
        assert sphere_two.power(x, -1) == sphere_two.inverse(x)
        assert sphere_two.power(x, 5) == x * x * x * x * x
        assert sphere_two.power(x, -3) == sphere_two.power(sphere_two.inverse(x), 3)

    def test_sphere_two_power_formula(self, sphere_two: CohenGroup) -> None:
        x = sphere_two.element({2: [1]})
        for m in range(-8, 9):
            assert sphere_two.power(x, m).to_dict() == {"2": [m], "3": [m * (m - 1)]}

    def test_orders(self, sphere_two: CohenGroup) -> None:
        assert sphere_two.order(sphere_two.identity()) == 1
        assert sphere_two.order(sphere_two.element({2: [1]})) is INFINITE
        assert sphere_two.order(sphere_two.element({3: [4]})) is INFINITE

    def test_moore_seven_order(self) -> None:
        group = CohenGroup(get_space("M7reduced@11"), 10)
        alpha = group.element({6: [1]})
        square = group.power(alpha, 2)
        coefficient = phi_closed(5, 9)
        assert coefficient == 6
        assert square.to_dict() == {"6": [0], "11": [coefficient % 2]}
        order = group.order(alpha)
        assert order in (2, 4)
        assert (order == 4) == (coefficient % 2 == 1)
        assert group.power(alpha, 4).is_identity()

    def test_moore_three_order_four(self) -> None:
        group = CohenGroup(get_space("M3@3"), 2)
        x = group.element({2: [1]})
        assert group.order(x) == 4
        assert group.power(x, 2).to_dict() == {"2": [0], "3": [2]}

    def test_exceeds_bound(self) -> None:
        group = CohenGroup(get_space("ZeroBracket@4"), 3)
        x = group.element({4: [0, 3]})
        assert group.order(x) == 4
        assert group.order(x, bound=3) is EXCEEDS_BOUND

    def test_bound_from_environment(self, monkeypatch: pytest.MonkeyPatch) -> None:
        group = CohenGroup(get_space("ZeroBracket@4"), 3)
        monkeypatch.setenv("FOXCOHEN_ORDER_BOUND", "2")
        assert group.order(group.element({3: [0, 1]})) is EXCEEDS_BOUND


class TestCommutator:
    def test_self_commutator(self) -> None:
        group = CohenGroup(get_space("S4reduced@8"), 7)
        x = group.element({4: [2], 5: [1]})
        assert group.commutator(x, x).is_identity()

    def test_sphere_four_nontrivial(self) -> None:
        group = CohenGroup(get_space("S4reduced@8"), 7)
        iota = group.element({4: [1]})
        eta = group.element({5: [1]})
        result = group.commutator(iota, eta)
        assert result.to_dict() == {"4": [0], "5": [0], "8": [1]}

    def test_homogeneous_coefficient(self) -> None:
        model = get_space("Wedge@2")
        group = CohenGroup(model, 7)
        alpha = group.element({4: [1]})
        beta = group.element({5: [1]})
        coefficient = phi_closed(3, 6) - (-1) ** 20 * phi_closed(4, 6)
        assert abs(coefficient) == 3
        assert group.commutator(alpha, beta).to_dict() == {
            "4": [0],
            "5": [0],
            "8": [coefficient],
        }

    def test_kernel_is_central(self) -> None:
        group = CohenGroup(get_space("SphereStem1@3"), 11)
        central = group.element({12: [1]})
        for degree, coeffs in ((6, [1]), (7, [1])):
            y = group.element({degree: coeffs})
            assert group.commutator(central, y).is_identity()


class TestProject:
    def test_drops_top(self, sphere_two: CohenGroup) -> None:
        x = sphere_two.element({2: [3], 3: [4]})
        projected = sphere_two.project(x)
        assert projected.level == 1
        assert projected.to_dict() == {"2": [3]}

    def test_homomorphism(self) -> None:
        group = CohenGroup(get_space("S4reduced@8"), 7)
        x = group.element({4: [1], 5: [1], 8: [1]})
        y = group.element({4: [-2], 5: [1]})
        assert group.project(x * y) == group.parent().multiply(
            group.project(x), group.project(y)
        )

    def test_level_one(self) -> None:
        group = CohenGroup(get_space("S2@4"), 1)
        with pytest.raises(DomainError):
            group.project(group.identity())


class TestDebugMode:
    def test_recomputes_coefficients(self, mocker: MockerFixture) -> None:
        spy = mocker.spy(cohen, "phi_bruteforce")
        group = CohenGroup(get_space("S2@4"), 2, debug=True)
        x = group.element({2: [1]})
        assert group.multiply(x, x).to_dict() == {"2": [2], "3": [2]}
        assert spy.call_count > 0
        spy.assert_any_call(1, 1)

    def test_off_by_default(self, mocker: MockerFixture, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.delenv(FOXCOHEN_DEBUG, raising=False)
        spy = mocker.spy(cohen, "phi_bruteforce")
        group = CohenGroup(get_space("S2@4"), 2)
        x = group.element({2: [1]})
        group.multiply(x, x)
        assert spy.call_count == 0

    def test_environment_switch(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setenv(FOXCOHEN_DEBUG, "true")
        assert CohenGroup(get_space("S2@4"), 2).debug

    def test_mismatch(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setattr(cohen, "phi_bruteforce", lambda l, k: 99)
        group = CohenGroup(get_space("S2@4"), 2, debug=True)
        x = group.element({2: [1]})
        with pytest.raises(CoefficientMismatch):
            group.multiply(x, x)
