import itertools

import pytest

from sumsetlab.errors import MalformedInputError
from sumsetlab.sweeps import (
    DEFAULT_FAMILY,
    FAMILIES,
    SweepSpec,
    normalized_subsets,
    run_sweep,
)
from sumsetlab.verify import THEOREM_IDS, check_payload


def sweep(theorem, family=None, params=None, **kw):
    spec = SweepSpec(
        theorem=theorem,
        family=family or DEFAULT_FAMILY[theorem],
        params=params or {},
        **kw,
    )
    return run_sweep(spec)


def test_every_theorem_has_a_default_family():
    assert set(DEFAULT_FAMILY) == set(THEOREM_IDS)
    assert set(DEFAULT_FAMILY.values()) <= set(FAMILIES)


def test_unknown_family_rejected():
    with pytest.raises(MalformedInputError):
        SweepSpec(theorem="thm_A", family="no_such_family")


def test_normalized_subsets_enumeration():
    import math

    # only the single pair {0, 1} survives the gcd filter at k = 2
    assert list(normalized_subsets(4, kmin=2, kmax=2)) == [(0, 1)]
    assert (0, 2, 3) in set(normalized_subsets(4, kmin=3, kmax=3))
    assert (0, 2, 4) not in set(normalized_subsets(4, kmin=3, kmax=3))
    for elems in normalized_subsets(6, kmin=2, kmax=4):
        assert elems[0] == 0
        assert math.gcd(*elems[1:]) == 1


class TestIntegerSweeps:
    @pytest.mark.parametrize("theorem", ["thm_A", "lemma_1", "lemma_2", "cor_1"])
    def test_no_counterexamples_small(self, theorem):
        rep = sweep(theorem, params={"nmax": 9, "kmin": 3, "kmax": 6})
        assert rep.ok and rep.counts["instances"] > 0
        assert rep.counts["hypothesis_met"] >= 1
        assert rep.counts["holds"] == rep.counts["hypothesis_met"]

    def test_cor_2_boxes(self):
        rep = sweep("cor_2", params={"nmax": 8})
        assert rep.ok and rep.counts["hypothesis_met"] >= 1

    def test_vacuous_accounting(self):
        rep = sweep("thm_A", params={"nmax": 8, "kmin": 3, "kmax": 5})
        c = rep.counts
        assert c["instances"] == c["hypothesis_met"] + c["vacuous"]


class TestProductSweeps:
    def test_exhaustive_small_inner(self):
        rep = sweep(
            "thm_1",
            params={"inner": {"kind": "cyclic", "n": 3}, "amax": 6, "kmax": 4},
        )
        assert rep.ok and rep.counts["hypothesis_met"] >= 1

    def test_bulk_skip_soundness(self):
        # classes skipped in bulk really cannot meet the hypothesis: force
        # full enumeration via exhaustive mode and compare verdict counts
        params = {"inner": {"kind": "cyclic", "n": 2}, "amax": 5, "kmin": 3, "kmax": 4}
        rep = sweep("thm_2", params=params)
        brute_hyp = 0
        for first in normalized_subsets(5, 3, 4):
            for coords in itertools.product([0, 1], repeat=len(first)):
                payload = {
                    "inner": {"kind": "cyclic", "n": 2},
                    "points": [[a, x] for a, x in zip(first, coords)],
                }
                hyp, concl, _, _ = check_payload("thm_2", payload)
                if hyp:
                    brute_hyp += 1
                    assert concl
        assert rep.counts["hypothesis_met"] == brute_hyp

    def test_random_mode_deterministic(self):
        params = {
            "inner": {"kind": "cyclic", "n": 5},
            "amax": 7,
            "mode": "random",
            "count": 500,
        }
        a = sweep("thm_1", params=params, seed=11)
        b = sweep("thm_1", params=params, seed=11)
        assert a.to_json(include_timing=False) == b.to_json(include_timing=False)
        c = sweep("thm_1", params=params, seed=12)
        assert c.counts["instances"] == 500
        assert not c.counterexamples

    def test_random_mode_requires_count(self):
        with pytest.raises(MalformedInputError):
            sweep(
                "thm_1",
                params={"inner": {"kind": "cyclic", "n": 3}, "mode": "random"},
                seed=1,
            )


class TestHeisenbergSweeps:
    def test_exhaustive_tiny_box(self):
        rep = sweep("thm_4", params={"box": (-1, 1), "kmin": 3, "kmax": 3})
        assert rep.ok
        assert rep.counts["hypothesis_met"] >= 1
        # every hypothesis-met instance got a window reading
        assert sum(rep.reading_counts.values()) == rep.counts["hypothesis_met"]
        assert "none" not in rep.reading_counts

    def test_thm_3_random(self):
        rep = sweep(
            "thm_3",
            params={"box": (-2, 2), "mode": "random", "count": 2000, "kmin": 3, "kmax": 5},
            seed=7,
        )
        assert rep.ok and rep.counts["instances"] == 2000


class TestTwoSetSweeps:
    def test_cauchy_davenport_exhaustive(self):
        rep = sweep("cauchy_davenport", params={"p": 5})
        assert rep.ok
        assert rep.counts["instances"] == (2**5 - 1) ** 2

    def test_eq1_pairs(self):
        rep = sweep("eq1", params={"nmax": 6, "kmin": 2, "kmax": 4})
        assert rep.ok and rep.counts["hypothesis_met"] == rep.counts["instances"]


class TestEngine:
    def test_limit_marks_incomplete(self):
        spec = SweepSpec(theorem="thm_A", family="normalized_int_sets", params={"nmax": 10})
        rep = run_sweep(spec, limit=50)
        assert not rep.complete and not rep.ok
        assert rep.counts["instances"] <= 50

    def test_workers_match_serial(self):
        params = {"nmax": 9, "kmin": 3, "kmax": 6}
        serial = sweep("lemma_2", params=params)
        parallel = sweep("lemma_2", params=params, workers=2)
        assert serial.to_json(include_timing=False) == parallel.to_json(
            include_timing=False
        )

    def test_progress_callback_monotone(self):
        seen = []
        spec = SweepSpec(theorem="thm_A", family="normalized_int_sets", params={"nmax": 9})
        run_sweep(spec, progress=seen.append, chunk_size=100)
        assert seen
        totals = [c["instances"] for c in seen]
        assert totals == sorted(totals)

    def test_counterexamples_reverify_from_payload(self):
        # any stored counterexample payload must re-check to the same verdict
        spec = SweepSpec(theorem="thm_A", family="normalized_int_sets", params={"nmax": 9})
        rep = run_sweep(spec)
        for cx in rep.counterexamples:
            hyp, concl, _, _ = check_payload(spec.theorem, cx["payload"])
            assert hyp and not concl

    def test_csv_rows_shape(self):
        rep = sweep("thm_A", params={"nmax": 8})
        header, row = rep.csv_rows()
        assert header[0] == "theorem" and row[0] == "thm_A"
        assert len(header) == len(row)
