"""Independent reference implementations used to check the pipeline.

Everything here is deliberately naive: dense per-node iteration, exhaustive
enumeration, textbook sort-and-scan. None of it shares code with the package.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def dense_bicm_fixed_point(biadjacency, tol=1e-12, max_iter=200000):
    """Fit user/url fitnesses by the plain dense fixed-point iteration.

    x_i <- k_i / sum_a y_a / (1 + x_i * y_a), then
    y_a <- d_a / sum_i x_i / (1 + x_i * y_a), starting from deg / sqrt(E),
    until the max relative degree residual drops below ``tol``.
    """
    a = np.asarray(biadjacency, dtype=float)
    k = a.sum(axis=1)
    d = a.sum(axis=0)
    e = k.sum()
    x = k / math.sqrt(e)
    y = d / math.sqrt(e)
    for iteration in range(1, max_iter + 1):
        x = k / (y[None, :] / (1.0 + x[:, None] * y[None, :])).sum(axis=1)
        y = d / (x[:, None] / (1.0 + x[:, None] * y[None, :])).sum(axis=0)
        p = x[:, None] * y[None, :]
        p = p / (1.0 + p)
        res_u = np.abs(p.sum(axis=1) - k) / np.maximum(k, 1.0)
        res_a = np.abs(p.sum(axis=0) - d) / np.maximum(d, 1.0)
        residual = max(res_u.max(), res_a.max())
        if residual <= tol:
            return x, y, p, iteration
    raise RuntimeError(f"dense oracle did not converge, residual={residual}")


def poisson_binomial_tail_bruteforce(q, observed):
    """P(sum of independent Bernoulli(q_i) >= observed) by 2^n enumeration."""
    q = list(q)
    total = 0.0
    for outcome in itertools.product((0, 1), repeat=len(q)):
        if sum(outcome) >= observed:
            prob = 1.0
            for qi, hit in zip(q, outcome):
                prob *= qi if hit else (1.0 - qi)
            total += prob
    return total


def bh_reject_bruteforce(pvalues, alpha):
    """Indices rejected by Benjamini-Hochberg, by the textbook sorted scan."""
    m = len(pvalues)
    order = sorted(range(m), key=lambda i: pvalues[i])
    k = 0
    for rank, idx in enumerate(order, start=1):
        if pvalues[idx] <= rank * alpha / m:
            k = rank
    return set(order[:k])


def cooccurrence_bruteforce(adjacency, n_urls):
    """V counts by the double loop over url pairs and users."""
    rows = [set(r) for r in adjacency]
    table = {}
    for a in range(n_urls):
        for b in range(a + 1, n_urls):
            v = sum(1 for row in rows if a in row and b in row)
            if v:
                table[(a, b)] = v
    return table


def pair_counting_agreement(labels_a, labels_b):
    """Adjusted Rand index computed from raw element-pair concordance counts."""
    n = len(labels_a)
    assert n == len(labels_b)
    both = a_only = b_only = neither = 0
    for i in range(n):
        for j in range(i + 1, n):
            sa = labels_a[i] == labels_a[j]
            sb = labels_b[i] == labels_b[j]
            if sa and sb:
                both += 1
            elif sa:
                a_only += 1
            elif sb:
                b_only += 1
            else:
                neither += 1
    total = both + a_only + b_only + neither
    expected = (both + a_only) * (both + b_only) / total
    max_index = 0.5 * ((both + a_only) + (both + b_only))
    if max_index == expected:
        return 1.0
    return (both - expected) / (max_index - expected)
