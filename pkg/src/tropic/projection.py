"""Statistically validated projection of the URL layer.

URL pairs are scored by the probability of seeing at least the observed
number of co-sharing users under the fitted null model, then filtered with
Benjamini-Hochberg FDR control over all tested pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from numba import njit
from scipy.stats import poisson

from .bicm import BicmModel, url_probability_column
from .bipartite import BipartiteGraph
from .errors import InvalidAlpha

# Exact dynamic programming up to this many effective Bernoulli terms per
# pair; the Poisson tail takes over above it.
EXACT_MODE_MAX_N = 1024

MODES = ("auto", "exact", "poisson")


@dataclass(frozen=True)
class CooccurrenceTable:
    """Observed co-share counts V for URL pairs (a < b); zero counts omitted."""

    pairs: dict[tuple[int, int], int]


@dataclass
class ValidatedProjection:
    """URL-URL edges whose co-occurrence survived FDR-controlled validation."""

    n_urls: int
    edges: set[tuple[int, int]]
    pvalues: dict[tuple[int, int], float]
    threshold: float | None
    alpha: float
    mode: str

    @property
    def nodes(self) -> range:
        return range(self.n_urls)


def count_cooccurrences(graph: BipartiteGraph) -> CooccurrenceTable:
    """V[a, b] = number of users sharing both URLs, via the sparse product."""
    indptr = np.concatenate([[0], np.cumsum(graph.user_degrees)])
    if graph.n_users == 0 or indptr[-1] == 0:
        return CooccurrenceTable(pairs={})
    indices = np.concatenate([row for row in graph.adjacency if row.size])
    data = np.ones(indices.size, dtype=np.int64)
    biadj = sp.csr_matrix(
        (data, indices, indptr), shape=(graph.n_users, graph.n_urls)
    )
    counts = sp.triu(biadj.T @ biadj, k=1).tocoo()
    order = np.lexsort((counts.col, counts.row))
    pairs = {
        (int(counts.row[i]), int(counts.col[i])): int(counts.data[i]) for i in order
    }
    return CooccurrenceTable(pairs=pairs)


@njit(cache=True)
def _tail_dp(q: np.ndarray, v: int) -> float:  # pragma: no cover - jitted
    """P(sum of Bernoulli(q_i) >= v) with the pmf truncated at v."""
    dp = np.zeros(v)
    dp[0] = 1.0
    tail = 0.0
    top = 0
    for i in range(q.size):
        p = q[i]
        tail += dp[v - 1] * p
        hi = min(top + 1, v - 1)
        for j in range(hi, 0, -1):
            dp[j] = dp[j] * (1.0 - p) + dp[j - 1] * p
        dp[0] *= 1.0 - p
        top = hi
    return tail


def poisson_binomial_tail(q: np.ndarray, observed: int) -> float:
    """Exact P(V >= observed) for V a sum of independent Bernoulli(q_i).

    Certain successes (q == 1) shift the required count; zero entries are
    dropped. Runs in O(n * observed).
    """
    if observed <= 0:
        return 1.0
    q = np.asarray(q, dtype=np.float64)
    sure = int((q == 1.0).sum())
    v = observed - sure
    if v <= 0:
        return 1.0
    stochastic = q[(q > 0.0) & (q < 1.0)]
    if v > stochastic.size:
        return 0.0
    return float(_tail_dp(stochastic, v))


def pair_pvalue(
    model: BicmModel, url_a: int, url_b: int, observed: int, mode: str = "auto"
) -> float:
    """P(V >= observed) for the co-occurrence count of a URL pair under the null."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    q = url_probability_column(model, url_a) * url_probability_column(model, url_b)
    return _tail_probability(q[q > 0.0], observed, mode)


def _tail_probability(q_nonzero: np.ndarray, observed: int, mode: str) -> float:
    if observed <= 0:
        return 1.0
    use_exact = mode == "exact" or (
        mode == "auto" and q_nonzero.size <= EXACT_MODE_MAX_N
    )
    if use_exact:
        return poisson_binomial_tail(q_nonzero, observed)
    return float(poisson.sf(observed - 1, q_nonzero.sum()))


def bh_threshold(pvalues, alpha: float) -> float | None:
    """Benjamini-Hochberg cutoff: the largest p_(k) with p_(k) <= k*alpha/m.

    Returns None when nothing passes. Ties at the cutoff are kept by callers
    comparing with <=.
    """
    if not 0.0 < alpha <= 1.0:
        raise InvalidAlpha(f"alpha must be in (0, 1], got {alpha}")
    p = np.sort(np.asarray(list(pvalues), dtype=np.float64))
    m = p.size
    if m == 0:
        return None
    ranks = np.arange(1, m + 1, dtype=np.float64)
    passing = np.flatnonzero(p <= ranks * alpha / m)
    if passing.size == 0:
        return None
    return float(p[passing[-1]])


def validate_projection(
    graph: BipartiteGraph,
    model: BicmModel,
    alpha: float = 0.05,
    mode: str = "auto",
) -> ValidatedProjection:
    """Keep URL pairs whose co-share count is significant after FDR control.

    Only pairs with at least one observed co-share are tested; the BH
    denominator is the number of tested pairs.
    """
    if not 0.0 < alpha <= 1.0:
        raise InvalidAlpha(f"alpha must be in (0, 1], got {alpha}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if model.n_users != graph.n_users or model.n_urls != graph.n_urls:
        raise ValueError("model dimensions do not match graph")

    table = count_cooccurrences(graph)
    columns: dict[int, np.ndarray] = {}

    def column(url: int) -> np.ndarray:
        if url not in columns:
            columns[url] = url_probability_column(model, url)
        return columns[url]

    pvalues: dict[tuple[int, int], float] = {}
    for (a, b), observed in table.pairs.items():
        q = column(a) * column(b)
        pvalues[(a, b)] = _tail_probability(q[q > 0.0], observed, mode)

    threshold = bh_threshold(pvalues.values(), alpha) if pvalues else None
    edges = (
        {pair for pair, p in pvalues.items() if p <= threshold}
        if threshold is not None
        else set()
    )
    return ValidatedProjection(
        n_urls=graph.n_urls,
        edges=edges,
        pvalues=pvalues,
        threshold=threshold,
        alpha=alpha,
        mode=mode,
    )
