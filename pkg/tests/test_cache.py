"""Fraction-plan cache: round trips, corruption handling, digest hygiene."""

import json
import logging
from fractions import Fraction

from cutplan import optimize_fractions
from cutplan.cache import PlanCache

from conftest import asymmetric_matrix

F = Fraction


def solved():
    matrix = asymmetric_matrix()
    return matrix.canonical_digest(), optimize_fractions(matrix)


class TestCache:
    def test_store_then_lookup_is_identical(self, tmp_path):
        digest, plan = solved()
        cache = PlanCache(tmp_path)
        cache.store(digest, plan)
        assert cache.lookup(digest) == plan

    def test_miss_returns_none(self, tmp_path):
        assert PlanCache(tmp_path).lookup("0" * 64) is None

    def test_corrupt_json_warns_and_misses(self, tmp_path, caplog):
        digest, plan = solved()
        cache = PlanCache(tmp_path)
        path = cache.store(digest, plan)
        path.write_text("{broken", encoding="utf-8")
        with caplog.at_level(logging.WARNING):
            assert cache.lookup(digest) is None
        assert "corrupt" in caplog.text

    def test_digest_mismatch_is_corrupt(self, tmp_path, caplog):
        digest, plan = solved()
        cache = PlanCache(tmp_path)
        path = cache.store(digest, plan)
        entry = json.loads(path.read_text(encoding="utf-8"))
        entry["digest"] = "f" * 64
        path.write_text(json.dumps(entry), encoding="utf-8")
        with caplog.at_level(logging.WARNING):
            assert cache.lookup(digest) is None

    def test_invariant_violations_are_corrupt(self, tmp_path, caplog):
        digest, plan = solved()
        cache = PlanCache(tmp_path)
        path = cache.store(digest, plan)
        entry = json.loads(path.read_text(encoding="utf-8"))
        entry["n_zero"] = 7  # no longer the least common denominator
        path.write_text(json.dumps(entry), encoding="utf-8")
        with caplog.at_level(logging.WARNING):
            assert cache.lookup(digest) is None

    def test_entries_carry_exact_fraction_strings(self, tmp_path):
        digest, plan = solved()
        cache = PlanCache(tmp_path)
        entry = json.loads(cache.store(digest, plan).read_text(encoding="utf-8"))
        assert entry["fractions"] == ["1/5", "1/5", "1/5", "0", "2/5"]
        assert entry["cutset_fraction"] == "2/5"
        assert entry["n_zero"] == 5
        assert "solver" in entry
