"""
Tests for the poset P_{s,t}, its order ideals and the brute-force oracles.
"""
import random

import allure
import pytest

from straub.bipoly import QPoly, SparseBiPoly, eval_q1_t1
from straub.errors import InvalidArgumentError
from straub.partitions import core_count
from straub.poset import (
    OrderIdeal,
    a_poly_bruteforce,
    build_poset,
    enumerate_ideals,
    enumerate_ideals_no_consec,
    is_order_ideal,
    straub_poly_bruteforce,
    triangle_labels,
    triangle_weight_bruteforce,
)

A_1 = SparseBiPoly({(0, 0): 1, (1, 1): 1, (2, 1): 1, (5, 2): 1})


class TestBuildPoset:
    """Sieve of non-representable integers."""

    def test_p_3_5(self):
        poset = build_poset(3, 5)
        assert poset.elements == (1, 2, 4, 7)
        assert 4 in poset and 3 not in poset

    def test_unit_generator_gives_empty_poset(self):
        assert len(build_poset(1, 7)) == 0

    @pytest.mark.parametrize("s,t", [(3, 5), (5, 7), (7, 9), (13, 15), (4, 9)])
    def test_cardinality(self, s, t):
        assert len(build_poset(s, t)) == (s - 1) * (t - 1) // 2

    @pytest.mark.parametrize("s,t", [(2, 4), (6, 9), (0, 3)])
    def test_rejects_non_coprime(self, s, t):
        with pytest.raises(InvalidArgumentError):
            build_poset(s, t)

    def test_closed_under_generator_subtraction(self):
        poset = build_poset(13, 15)
        for x in poset.elements:
            for step in (13, 15):
                if x - step >= 0:
                    assert x - step in poset


class TestOrderIdeals:
    """Bitmask enumeration of ideals."""

    @pytest.mark.tcid("TC-POSET-001")
    @allure.title("No-consecutive ideals of P_{3,5}")
    def test_no_consecutive_ideals_3_5(self):
        ideals = {ideal.members for ideal in enumerate_ideals_no_consec(build_poset(3, 5))}
        assert ideals == {frozenset(), frozenset({1}), frozenset({2}), frozenset({1, 4})}

    def test_empty_poset_has_one_ideal(self):
        assert list(enumerate_ideals_no_consec(build_poset(1, 3))) == [OrderIdeal(frozenset())]

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_no_consecutive_count_is_power_of_four(self, n):
        poset = build_poset(2 * n + 1, 2 * n + 3)
        assert sum(1 for _ in enumerate_ideals_no_consec(poset)) == 4 ** n

    @pytest.mark.parametrize("s,t", [(3, 5), (4, 7), (5, 7), (5, 8)])
    def test_all_ideals_biject_with_cores(self, s, t):
        assert sum(1 for _ in enumerate_ideals(build_poset(s, t))) == core_count(s, t)

    def test_enumerated_ideals_are_valid_and_unique(self):
        poset = build_poset(5, 7)
        seen = set()
        for ideal in enumerate_ideals_no_consec(poset):
            assert is_order_ideal(poset, ideal.members)
            assert not ideal.has_consecutive()
            seen.add(ideal.members)
        assert len(seen) == 16

    def test_ideal_weight(self):
        ideal = OrderIdeal(frozenset({1, 4}))
        assert ideal.vertex_count == 2
        assert ideal.label_sum == 5

    @pytest.mark.property
    def test_random_subsets_against_closure(self):
        poset = build_poset(5, 7)
        ideals = {ideal.members for ideal in enumerate_ideals(poset)}
        rng = random.Random(20240501)
        for _ in range(500):
            subset = frozenset(x for x in poset.elements if rng.random() < 0.3)
            assert is_order_ideal(poset, subset) is (subset in ideals)

    def test_non_member_is_not_an_ideal(self):
        assert not is_order_ideal(build_poset(3, 5), {3})


@pytest.mark.oracle
class TestBruteForceOracles:
    """A_n and S_n by direct ideal enumeration."""

    @pytest.mark.tcid("TC-POSET-002")
    @allure.title("A_1 from the four ideals of P_{3,5}")
    def test_a_poly_1(self):
        assert a_poly_bruteforce(1) == A_1

    def test_a_poly_0(self):
        assert a_poly_bruteforce(0) == SparseBiPoly.one()

    def test_a_poly_2_total(self):
        assert eval_q1_t1(a_poly_bruteforce(2)) == 16

    @pytest.mark.tcid("TC-POSET-003")
    @allure.severity(allure.severity_level.CRITICAL)
    def test_straub_1(self):
        assert straub_poly_bruteforce(1) == QPoly({0: 1, 1: 1, 2: 1, 4: 1})

    def test_straub_0(self):
        assert straub_poly_bruteforce(0) == QPoly({0: 1})

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_straub_coefficients(self, n):
        poly = straub_poly_bruteforce(n)
        assert all(c > 0 for _, c in poly)
        assert poly(1) == 4 ** n


class TestTriangle:
    """Generalized triangle lattices behind P^{(c,h)}_k."""

    def test_labels_side_one(self):
        assert triangle_labels(3, 2, 1) == {(0, 0): 1}

    def test_rank_zero_row(self):
        labels = triangle_labels(7, 2, 4)
        assert sorted(labels[(x, 3 - x)] for x in range(4)) == [1, 3, 5, 7]

    def test_side_one_weight(self):
        assert triangle_weight_bruteforce(5, 2, 1) == SparseBiPoly({(0, 0): 1, (1, 1): 1})

    def test_empty_triangles(self):
        assert triangle_weight_bruteforce(3, 2, 0) == SparseBiPoly.one()
        assert triangle_weight_bruteforce(3, 2, -1) == SparseBiPoly.one()

    @pytest.mark.parametrize("k,catalan", [(1, 2), (2, 5), (3, 14), (4, 42), (5, 132)])
    def test_ideal_counts_are_catalan(self, k, catalan):
        assert eval_q1_t1(triangle_weight_bruteforce(3, 2, k)) == catalan

    def test_rejects_non_positive_steps(self):
        with pytest.raises(InvalidArgumentError):
            triangle_labels(0, 2, 3)
