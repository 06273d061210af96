"""
Tests for the on-disk polynomial cache.
"""
import logging

import pytest

from straub.bipoly import QPoly
from straub.cache import PolyCache
from straub.engine import StraubEngine, compute_straub_polys

S_1 = QPoly({0: 1, 1: 1, 2: 1, 4: 1})


@pytest.fixture
def poly_cache(tmp_path) -> PolyCache:
    return PolyCache(tmp_path / "cache")


class TestPolyCache:
    """Store, load, corruption handling."""

    def test_creates_directory(self, tmp_path):
        PolyCache(tmp_path / "a" / "b")
        assert (tmp_path / "a" / "b").is_dir()

    def test_path_layout(self, poly_cache):
        assert poly_cache.path(7).name == "straub_007.txt"

    def test_miss(self, poly_cache):
        assert poly_cache.load(3) is None

    @pytest.mark.tcid("TC-CACHE-001")
    def test_store_and_load(self, poly_cache):
        path = poly_cache.store(1, S_1)
        assert path.read_text(encoding="utf-8") == S_1.dumps(1)
        assert poly_cache.load(1) == S_1

    def test_corrupted_entry_is_discarded(self, poly_cache, caplog):
        path = poly_cache.path(2)
        path.write_text("# straub-poly v1 n=2 terms=3\n0 1\n", encoding="utf-8")
        with caplog.at_level(logging.WARNING):
            assert poly_cache.load(2) is None
        assert not path.exists()
        assert "corrupted" in caplog.text

    def test_entry_for_other_n_is_discarded(self, poly_cache):
        poly_cache.path(4).write_text(S_1.dumps(1), encoding="utf-8")
        assert poly_cache.load(4) is None

    def test_clear(self, poly_cache):
        poly_cache.store(1, S_1)
        poly_cache.clear()
        assert list(poly_cache.directory.iterdir()) == []


class TestEngineWithCache:
    """Cache hits are byte-identical to recomputation."""

    @pytest.mark.tcid("TC-CACHE-002")
    def test_byte_stability(self, poly_cache):
        engine = StraubEngine(cache=poly_cache)
        engine.straub_poly(3)
        first = poly_cache.path(3).read_bytes()
        poly_cache.clear()
        StraubEngine(cache=poly_cache).straub_poly(3)
        assert poly_cache.path(3).read_bytes() == first

    def test_second_run_served_from_cache(self, poly_cache, monkeypatch):
        computed = compute_straub_polys(range(4), StraubEngine(cache=poly_cache))
        engine = StraubEngine(cache=poly_cache)

        def fail(n):
            raise AssertionError(f"A_{n} recomputed despite cache")

        monkeypatch.setattr(engine, "a_poly", fail)
        assert compute_straub_polys(range(4), engine) == computed
        assert engine.straub_poly(2) == computed[2]

    def test_corruption_triggers_recompute(self, poly_cache):
        engine = StraubEngine(cache=poly_cache)
        expected = engine.straub_poly(2)
        poly_cache.path(2).write_text("garbage\n", encoding="utf-8")
        assert StraubEngine(cache=poly_cache).straub_poly(2) == expected
        assert QPoly.loads(poly_cache.path(2).read_text(encoding="utf-8")) == (2, expected)

    def test_parallel_writes_cache(self, poly_cache):
        compute_straub_polys(range(4), StraubEngine(cache=poly_cache), jobs=2)
        assert sorted(p.name for p in poly_cache.directory.glob("straub_*.txt")) == [
            "straub_000.txt", "straub_001.txt", "straub_002.txt", "straub_003.txt",
        ]
