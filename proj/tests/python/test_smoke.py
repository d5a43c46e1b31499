import math
import os
from pathlib import Path

import pytest

import kert

DATA = Path(os.environ.get("KERT_DATA", Path(__file__).resolve().parents[2] / "data"))


def test_tokenize():
    assert kert.tokenize("Mining Top-K Frequent Closed Patterns") == [
        "mining", "top", "k", "frequent", "closed", "patterns"]
    assert kert.tokenize("of of of", stopwords=["of"]) == []


def test_corpus_from_lines():
    c = kert.corpus_from_lines(["support vector machines for text", "the the the"],
                               stopwords=["the", "for"])
    assert len(c) == 2
    assert [c.word(w) for w in c.titles[0]] == ["support", "vector", "machines", "text"]
    assert c.titles[1] == []


def test_mine_and_rank_planted_phrase():
    lines = ["support vector machines kernel"] * 8 + ["graph clustering"] * 6 + ["query index"] * 6
    corpus = kert.corpus_from_lines(lines)
    model = kert.run_inference(corpus, kert.ModelConfig(topics=2, lam=0.9, burn_in=50, sweeps=100))
    assert len(model.labels) == len(lines)
    assert all(abs(sum(row) - 1) < 1e-9 for row in model.phi)
    txns = kert.build_transactions(model)
    assert len(txns) == 3
    topic = max(range(1, 3), key=lambda t: txns[t].d_t_size)
    cands = kert.mine_candidates(txns[topic], min_support=3, max_size=4)
    assert cands and all(c.freq >= 3 for c in cands)
    ranked = kert.rank_topic(cands, txns, kert.RankingConfig(), corpus)
    assert len(ranked) == len(cands)
    scores = [r.score for r in ranked if not r.filtered]
    assert scores == sorted(scores, reverse=True)
    assert all(r.score == 0 for r in ranked if r.filtered)


def test_ranking_config_rejects_bad_values():
    with pytest.raises(kert.KertError):
        kert.RankingConfig(gamma=2.0)
    with pytest.raises(kert.KertError):
        kert.RankingConfig(variant="nope")
    assert kert.RankingConfig(variant="no_pur").variant == "no_pur"


def test_nkqm_ideal_is_one():
    judgments = [(1, p, j, s) for p, s in [("a b", 5), ("c", 3), ("d", 1)] for j in ("x", "y")]
    assert kert.nkqm_at_k({1: ["a b", "c"]}, judgments, 2) == pytest.approx(1.0)
    assert kert.nkqm_at_k({1: ["d", "c"]}, judgments, 2) < 1.0


def test_mi_identity_coupling():
    lines = [f"t{t} x" for t in range(3) for _ in range(4)]
    cats = [f"c{t}" for t in range(3) for _ in range(4)]
    corpus = kert.corpus_from_lines(lines)
    rankings = [[[corpus.word_id(f"t{t}")]] for t in range(3)]
    assert kert.mi_at_k(rankings, corpus, cats, 1) == pytest.approx(math.log2(3))


def test_run_pipeline(tmp_path):
    out = kert.run_pipeline({
        "input": str(DATA / "titles.txt"),
        "stopwords": str(DATA / "stopwords.txt"),
        "topics": "2",
        "lambda": "0.8",
        "burn_in": "50",
        "sweeps": "100",
        "output_dir": str(tmp_path / "run"),
    })
    ranked = Path(out) / "ranked_topic_1.tsv"
    assert ranked.exists()
    assert ranked.read_text().splitlines()[1].startswith("rank\tphrase")


def test_missing_input_raises(tmp_path):
    with pytest.raises(kert.KertError, match="missing.txt"):
        kert.run_pipeline({"input": str(tmp_path / "missing.txt"),
                           "output_dir": str(tmp_path / "run")})
