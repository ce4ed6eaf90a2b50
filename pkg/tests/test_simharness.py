import pytest

from qfse.engine import SYSTEM_S1, SYSTEM_S2
from qfse.errors import ArgumentError
from qfse.evalkit import SessionRecord, auc, recall_curve
from qfse.simharness import (
    LABEL_ORACLE,
    LABEL_SUG,
    QueryScript,
    SOURCE_SIMULATED,
    build_lsug,
    build_oracle,
    run_simulation,
)
from qfse.textproc import build_corpus


class TestQueryScript:
    def test_types_by_label(self):
        sug = QueryScript(label=LABEL_SUG, queries=("a b",))
        oracle = QueryScript(label=LABEL_ORACLE, queries=("a b",))
        assert sug.query_type == "suggested"
        assert oracle.query_type == "free_text"

    def test_empty_rejected(self):
        with pytest.raises(ArgumentError):
            QueryScript(label=LABEL_SUG, queries=())


class TestBuildScripts:
    def test_lsug_matches_session_suggestions(self, bench):
        corpus = bench.corpora[0]
        script = build_lsug(corpus, SYSTEM_S1)
        assert script.label == LABEL_SUG
        assert len(script.queries) == 10
        assert not script.short

    def test_lsug_empty_suggestions_rejected(self):
        corpus = build_corpus("sw", [("d", "The of and. To in on.")], ["r."])
        with pytest.raises(ArgumentError):
            build_lsug(corpus, SYSTEM_S1)

    def test_oracle_seeded_and_deterministic(self, bench):
        corpus = bench.corpora[0]
        a = build_oracle(corpus, seed=3)
        b = build_oracle(corpus, seed=3)
        assert a == b
        assert len(a.queries) == 10
        assert set(a.queries) <= set(corpus.scus)

    def test_oracle_short_flag(self):
        corpus = build_corpus(
            "few",
            [("d", "Alpha event hit town. Beta event hit town.")],
            ["Alpha and beta events."],
            scus=("Alpha event.", "Beta event."),
        )
        script = build_oracle(corpus)
        assert script.short
        assert len(script.queries) == 2

    def test_oracle_requires_scus(self):
        corpus = build_corpus("none", [("d", "Alpha beta.")], ["r."])
        with pytest.raises(ArgumentError):
            build_oracle(corpus)


class TestRunSimulation:
    def test_interaction_shape(self, bench):
        corpus = bench.corpora[0]
        script = build_oracle(corpus)
        record = run_simulation(corpus, SYSTEM_S1, script, bench.store)
        assert len(record.interactions) == 10
        assert record.user_id == "sim_oracle"
        assert record.source == SOURCE_SIMULATED
        assert record.system_id == "S1"
        for i, inter in enumerate(record.interactions, start=1):
            assert inter.timestamp_ms == i * 1000
            assert inter.latency_ms == 0
            assert inter.rating is None
            assert inter.query_type == "free_text"

    def test_suggested_script_type(self, bench):
        corpus = bench.corpora[0]
        record = run_simulation(
            corpus, SYSTEM_S2, build_lsug(corpus, SYSTEM_S2), bench.store
        )
        assert all(i.query_type == "suggested" for i in record.interactions)
        assert record.user_id == "sim_sug"

    def test_byte_identical_reruns(self, bench):
        corpus = bench.corpora[1]
        script = build_oracle(corpus, seed=1)
        a = run_simulation(corpus, SYSTEM_S1, script, bench.store)
        b = run_simulation(corpus, SYSTEM_S1, script, bench.store)
        assert a.to_json() == b.to_json()

    def test_log_round_trips(self, bench):
        corpus = bench.corpora[0]
        record = run_simulation(
            corpus, SYSTEM_S2, build_oracle(corpus), bench.store
        )
        assert SessionRecord.from_json(record.to_json()) == record

    def test_oracle_bounds_suggestion_replay(self, bench, bench_logs,
                                             bench_refs):
        # One topic spot check; the acceptance suite covers the full sweep.
        lo, hi = 80.0, 400.0
        aucs = {}
        for label in (LABEL_SUG, LABEL_ORACLE):
            record = bench_logs[("S1", label, bench.corpora[0].topic_id)]
            curve = recall_curve(record, bench_refs[bench.corpora[0].topic_id])
            aucs[label] = auc(curve, lo, hi)
        assert aucs[LABEL_ORACLE] > aucs[LABEL_SUG]
