"""Association graphs over bibliographic records, CPCL clustering and analysis."""

from ._assograph import (
    Corpus,
    Error,
    Graph,
    Result,
    cpcl,
    equivalence_coefficient,
    normalize_author,
)

__all__ = [
    "Corpus",
    "Error",
    "Graph",
    "Result",
    "cpcl",
    "equivalence_coefficient",
    "normalize_author",
    "pipeline",
]


def pipeline(records, mode="coauthor", threshold=None, levels=None, terms=None):
    """Parse records, optionally extract terms, build the graph and cluster it."""
    corpus = Corpus.parse(records)
    if terms is not None:
        corpus = corpus.with_terms(terms)
    return Graph.build(corpus, mode, threshold).cluster(levels)
