"""
Tests for the counting and weighted recurrences.
"""
from math import comb

import allure
import pytest

from straub.bipoly import SparseBiPoly, eval_q1_t1, subst_t_scale
from straub.engine import MemoStore, StraubEngine, compute_straub_polys, max_size_formula
from straub.errors import InvalidArgumentError
from straub.poset import a_poly_bruteforce, straub_poly_bruteforce, triangle_weight_bruteforce


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


class TestCounts:
    """Integer path p, e, o, s."""

    @pytest.mark.parametrize("k,expected", [(-1, 1), (0, 1), (1, 2), (2, 5), (5, 132)])
    def test_p_count(self, fresh_engine, k, expected):
        assert fresh_engine.p_count(k) == expected

    def test_p_count_is_catalan(self, fresh_engine):
        for k in range(0, 40):
            assert fresh_engine.p_count(k) == catalan(k + 1)

    def test_p_count_rejects_small_k(self, fresh_engine):
        with pytest.raises(InvalidArgumentError):
            fresh_engine.p_count(-2)

    def test_hand_values(self, fresh_engine):
        assert fresh_engine.o_count(1, 1) == 3
        assert fresh_engine.e_count(1, 2) == 6

    @pytest.mark.parametrize("b", range(-1, 6))
    def test_boundaries(self, fresh_engine, b):
        assert fresh_engine.e_count(0, b) == fresh_engine.p_count(b)
        assert fresh_engine.o_count(-1, b) == fresh_engine.p_count(b)

    @pytest.mark.tcid("TC-ENGINE-001")
    @allure.title("s(n) = 4^n on the integer path")
    @allure.severity(allure.severity_level.BLOCKER)
    def test_s_count_small(self, fresh_engine):
        assert [fresh_engine.s_count(n) for n in range(0, 41)] == [4 ** n for n in range(0, 41)]

    def test_s_count_rejects_negative(self, fresh_engine):
        with pytest.raises(InvalidArgumentError):
            fresh_engine.s_count(-1)

    @pytest.mark.slow
    @pytest.mark.timeout(600)
    def test_s_count_400(self, fresh_engine):
        for n in range(0, 401):
            assert fresh_engine.s_count(n) == 4 ** n, n


class TestWeightedPolynomials:
    """P, E, O and A polynomials."""

    @pytest.mark.parametrize("k", [-1, 0])
    def test_p_poly_initial(self, fresh_engine, k):
        assert fresh_engine.p_poly(7, 2, k) == SparseBiPoly.one()

    def test_p_poly_single_vertex(self, fresh_engine):
        assert fresh_engine.p_poly(5, 2, 1) == SparseBiPoly({(0, 0): 1, (1, 1): 1})

    def test_p_poly_forgets_to_catalan(self, fresh_engine):
        assert eval_q1_t1(fresh_engine.p_poly(3, 2, 4)) == 42

    @pytest.mark.oracle
    @pytest.mark.parametrize("c,h,k", [(3, 2, 3), (5, 2, 4), (1, 1, 4), (7, 2, 5), (4, 3, 4)])
    def test_p_poly_matches_triangle_enumeration(self, fresh_engine, c, h, k):
        assert fresh_engine.p_poly(c, h, k) == triangle_weight_bruteforce(c, h, k)

    @pytest.mark.parametrize("y", range(-1, 4))
    def test_e_o_initial_conditions(self, fresh_engine, y):
        p = fresh_engine.p_poly(9, 2, y)
        assert fresh_engine.e_poly(9, 0, y) == p
        assert fresh_engine.o_poly(9, 0, y) == subst_t_scale(p, 1)

    def test_e_poly_forgets(self, fresh_engine):
        assert eval_q1_t1(fresh_engine.e_poly(13, 1, 2)) == 6

    @pytest.mark.property
    @pytest.mark.parametrize("c", [3, 5, 9])
    def test_weight_forgetting(self, fresh_engine, c):
        for y in range(0, 5):
            for x in range(0, y + 1):
                assert eval_q1_t1(fresh_engine.e_poly(c, x, y)) == fresh_engine.e_count(x, y), (x, y)
                assert eval_q1_t1(fresh_engine.o_poly(c, x, y)) == fresh_engine.o_count(x, y), (x, y)
        for k in range(-1, 6):
            assert eval_q1_t1(fresh_engine.p_poly(c, 2, k)) == fresh_engine.p_count(k)

    def test_a_poly_0(self, fresh_engine):
        assert fresh_engine.a_poly(0) == SparseBiPoly.one()

    def test_a_poly_1(self, fresh_engine):
        assert fresh_engine.a_poly(1) == SparseBiPoly({(0, 0): 1, (1, 1): 1, (2, 1): 1, (5, 2): 1})

    def test_a_poly_forgets_to_s_count(self, fresh_engine):
        for n in range(0, 5):
            assert eval_q1_t1(fresh_engine.a_poly(n)) == fresh_engine.s_count(n)

    @pytest.mark.oracle
    @pytest.mark.tcid("TC-ENGINE-002")
    @allure.title("A_n from the recurrences equals ideal enumeration")
    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_a_poly_matches_oracle(self, fresh_engine, n):
        assert fresh_engine.a_poly(n) == a_poly_bruteforce(n)

    @pytest.mark.oracle
    @pytest.mark.slow
    @pytest.mark.timeout(600)
    def test_a_poly_4_matches_oracle(self, fresh_engine):
        assert fresh_engine.a_poly(4) == a_poly_bruteforce(4)

    def test_rejects_negative_n(self, fresh_engine):
        with pytest.raises(InvalidArgumentError):
            fresh_engine.a_poly(-1)


class TestStraubPolynomials:
    """S_n properties on the computed range."""

    def test_max_size_formula(self):
        assert [max_size_formula(n) for n in (0, 1, 2, 4, 21)] == [0, 4, 21, 155, 51359]

    @pytest.mark.tcid("TC-ENGINE-003")
    @allure.severity(allure.severity_level.CRITICAL)
    def test_total_and_degree(self, straub_polys):
        for n, poly in straub_polys.items():
            assert poly(1) == 4 ** n
            assert poly.degree() == max_size_formula(n)

    def test_low_coefficients(self, straub_polys):
        for n, poly in straub_polys.items():
            assert poly.coeff(0) == 1
            if n >= 1:
                assert poly.coeff(1) == 1

    def test_non_negative_coefficients(self, straub_polys):
        for poly in straub_polys.values():
            assert all(c > 0 for _, c in poly)

    @pytest.mark.parametrize("n,expected", [(1, 4), (2, 21), (4, 155)])
    def test_max_size(self, engine, n, expected):
        assert engine.max_size(n) == expected

    @pytest.mark.oracle
    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_matches_bruteforce(self, straub_polys, n):
        assert straub_polys[n] == straub_poly_bruteforce(n)

    @pytest.mark.slow
    @pytest.mark.timeout(3600)
    def test_degree_up_to_max_n(self, engine, max_n):
        polys = compute_straub_polys(range(max_n + 1), engine)
        for n, poly in polys.items():
            assert poly.degree() == max_size_formula(n), n
            assert poly(1) == 4 ** n, n


class TestMemoStore:
    """Table lifetime and determinism."""

    def test_release_drops_spacing(self):
        engine = StraubEngine(release_tables=True)
        engine.straub_poly(2)
        for table in (engine.store.p_polys, engine.store.e_polys, engine.store.o_polys):
            assert all(key[0] != 5 for key in table)

    def test_tables_kept_without_release(self):
        engine = StraubEngine(release_tables=False)
        engine.straub_poly(2)
        assert engine.store.sizes()["e_polys"] > 0

    def test_shared_store_gives_identical_results(self):
        store = MemoStore()
        first = StraubEngine(store=store, release_tables=False).straub_poly(3)
        second = StraubEngine(store=store, release_tables=False).straub_poly(3)
        assert first == second == StraubEngine().straub_poly(3)

    def test_parallel_matches_serial(self):
        serial = compute_straub_polys(range(5), StraubEngine(), jobs=1)
        parallel = compute_straub_polys(range(5), StraubEngine(), jobs=2)
        assert list(serial) == list(parallel) == [0, 1, 2, 3, 4]
        assert serial == parallel

    def test_result_ordered_by_n(self):
        polys = compute_straub_polys([3, 1, 2, 1])
        assert list(polys) == [1, 2, 3]
