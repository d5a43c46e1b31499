"""Topical keyphrase extraction and ranking for collections of short titles."""

from ._core import (
    CandidateKeyphrase,
    Corpus,
    KertError,
    LabeledCorpus,
    ModelConfig,
    RankingConfig,
    ScoredKeyphrase,
    TopicTransactions,
    __version__,
    build_transactions,
    corpus_from_lines,
    load_corpus,
    mi_at_k,
    mine_candidates,
    nkqm_at_k,
    rank_topic,
    run_inference,
    run_pipeline,
    tokenize,
)

__all__ = [
    "CandidateKeyphrase",
    "Corpus",
    "KertError",
    "LabeledCorpus",
    "ModelConfig",
    "RankingConfig",
    "ScoredKeyphrase",
    "TopicTransactions",
    "__version__",
    "build_transactions",
    "corpus_from_lines",
    "load_corpus",
    "mi_at_k",
    "mine_candidates",
    "nkqm_at_k",
    "rank_topic",
    "run_inference",
    "run_pipeline",
    "tokenize",
]
