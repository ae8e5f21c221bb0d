"""Maximum-likelihood fit of the bipartite configuration model.

The null model assigns each user a fitness x_i and each URL a fitness y_a,
with link probability p = x*y / (1 + x*y), chosen so that every node's
expected degree equals its observed degree. Degenerate nodes (degree zero, or
connected to the whole opposite layer) are peeled off first and their pair
probabilities fixed at the observed 0/1 values; the remaining core is solved
over degree classes, one unknown per distinct degree per layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bipartite import BipartiteGraph
from .errors import IndexOutOfRange, NoConvergence

_METHODS = ("fixed-point", "newton")


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = 1e-8
    max_iterations: int = 10000
    method: str = "fixed-point"

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}")


@dataclass
class BicmModel:
    """Fitted fitnesses and the information needed to evaluate probabilities.

    ``x``/``y`` hold finite positive fitnesses for core nodes, exactly 0.0 for
    zero-degree nodes and +inf for forced-full nodes. For pairs where both
    endpoints are degenerate the link probability equals the observed
    adjacency entry, resolved through ``forced_rows``.
    """

    x: np.ndarray
    y: np.ndarray
    tolerance_achieved: float
    iterations: int
    method: str
    forced_rows: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def n_users(self) -> int:
        return self.x.size

    @property
    def n_urls(self) -> int:
        return self.y.size


def _peel_degenerate(graph: BipartiteGraph):
    """Iteratively strip zero-degree and forced-full nodes from both layers.

    Removing a full node decrements every opposite active degree by one, which
    can cascade; effective degrees stay simple because zero removals never
    touch the other layer. Returns per-layer state arrays (0 active, 1 zero,
    2 full) and the within-core degree sequences.
    """
    user_state = np.zeros(graph.n_users, dtype=np.int8)
    url_state = np.zeros(graph.n_urls, dtype=np.int8)
    full_users = 0
    full_urls = 0
    while True:
        active_users = user_state == 0
        active_urls = url_state == 0
        n_active_urls = int(active_urls.sum())
        eff_k = graph.user_degrees - full_urls
        zero_u = active_users & (eff_k == 0)
        full_u = active_users & ~zero_u & (eff_k == n_active_urls)
        user_state[zero_u] = 1
        user_state[full_u] = 2
        full_users += int(full_u.sum())

        active_users = user_state == 0
        n_active_users = int(active_users.sum())
        eff_d = graph.url_degrees - full_users
        zero_a = active_urls & (eff_d == 0)
        full_a = active_urls & ~zero_a & (eff_d == n_active_users)
        url_state[zero_a] = 1
        url_state[full_a] = 2
        full_urls += int(full_a.sum())

        if not (zero_u.any() or full_u.any() or zero_a.any() or full_a.any()):
            break
    core_k = graph.user_degrees - full_urls
    core_d = graph.url_degrees - full_users
    return user_state, url_state, core_k, core_d


def _class_setup(values: np.ndarray):
    """Distinct degrees, member counts, and per-node class index."""
    distinct, inverse, counts = np.unique(values, return_inverse=True, return_counts=True)
    return distinct.astype(float), counts.astype(float), inverse


def _reduced_residual(xk, yd, kappa, delta, c_counts, m_counts):
    t = xk[:, None] * yd[None, :]
    p = t / (1.0 + t)
    exp_k = (m_counts[None, :] * p).sum(axis=1)
    exp_d = (c_counts[:, None] * p).sum(axis=0)
    res_u = np.abs(exp_k - kappa) / np.maximum(kappa, 1.0)
    res_a = np.abs(exp_d - delta) / np.maximum(delta, 1.0)
    return max(float(res_u.max()), float(res_a.max()))


def _solve_fixed_point(kappa, delta, c_counts, m_counts, config):
    """Alternating fixed-point sweeps on the degree-class system.

    Mirrors the dense per-node iteration exactly: equal-degree nodes share one
    unknown, so the class trajectory and the dense trajectory coincide.
    """
    e_core = float((kappa * c_counts).sum())
    xk = kappa / math.sqrt(e_core)
    yd = delta / math.sqrt(e_core)
    residual = math.inf
    for iteration in range(1, config.max_iterations + 1):
        t = xk[:, None] * yd[None, :]
        xk = kappa / ((m_counts[None, :] * yd[None, :]) / (1.0 + t)).sum(axis=1)
        t = xk[:, None] * yd[None, :]
        yd = delta / ((c_counts[:, None] * xk[:, None]) / (1.0 + t)).sum(axis=0)
        residual = _reduced_residual(xk, yd, kappa, delta, c_counts, m_counts)
        if residual <= config.tolerance:
            return xk, yd, residual, iteration
    raise NoConvergence(config.max_iterations, residual)


def _solve_newton(kappa, delta, c_counts, m_counts, config):
    """Newton iteration on log-fitnesses, warm-started by fixed-point sweeps.

    The system has a one-parameter scale freedom (x*c, y/c leaves every
    probability unchanged), so the Jacobian is singular along that direction;
    the least-squares solve picks the minimum-norm step.
    """
    e_core = float((kappa * c_counts).sum())
    xk = kappa / math.sqrt(e_core)
    yd = delta / math.sqrt(e_core)
    n_k = kappa.size
    residual = math.inf
    for iteration in range(1, config.max_iterations + 1):
        t = xk[:, None] * yd[None, :]
        p = t / (1.0 + t)
        exp_k = (m_counts[None, :] * p).sum(axis=1)
        exp_d = (c_counts[:, None] * p).sum(axis=0)
        f = np.concatenate([exp_k - kappa, exp_d - delta])
        residual = max(
            float((np.abs(exp_k - kappa) / np.maximum(kappa, 1.0)).max()),
            float((np.abs(exp_d - delta) / np.maximum(delta, 1.0)).max()),
        )
        if residual <= config.tolerance:
            return xk, yd, residual, iteration
        w = p * (1.0 - p)
        jac = np.zeros((f.size, f.size))
        jac[:n_k, :n_k] = np.diag((m_counts[None, :] * w).sum(axis=1))
        jac[:n_k, n_k:] = m_counts[None, :] * w
        jac[n_k:, :n_k] = (c_counts[:, None] * w).T
        jac[n_k:, n_k:] = np.diag((c_counts[:, None] * w).sum(axis=0))
        step, *_ = np.linalg.lstsq(jac, -f, rcond=None)
        scale = 1.0
        base = float(np.abs(f).max())
        for _ in range(40):
            xk_try = xk * np.exp(scale * step[:n_k])
            yd_try = yd * np.exp(scale * step[n_k:])
            t = xk_try[:, None] * yd_try[None, :]
            p_try = t / (1.0 + t)
            f_try = np.concatenate([
                (m_counts[None, :] * p_try).sum(axis=1) - kappa,
                (c_counts[:, None] * p_try).sum(axis=0) - delta,
            ])
            if float(np.abs(f_try).max()) < base:
                break
            scale *= 0.5
        xk = xk * np.exp(scale * step[:n_k])
        yd = yd * np.exp(scale * step[n_k:])
    raise NoConvergence(config.max_iterations, residual)


def fit_bicm(graph: BipartiteGraph, config: SolverConfig | None = None) -> BicmModel:
    """Fit the null model so expected degrees reproduce observed degrees."""
    if graph.n_users == 0 or graph.n_urls == 0:
        raise ValueError("cannot fit a model on an empty graph")
    config = config or SolverConfig()

    user_state, url_state, core_k, core_d = _peel_degenerate(graph)
    core_users = np.flatnonzero(user_state == 0)
    core_urls = np.flatnonzero(url_state == 0)

    x = np.where(user_state == 2, np.inf, 0.0)
    y = np.where(url_state == 2, np.inf, 0.0)

    residual = 0.0
    iterations = 0
    if core_users.size:
        kappa, c_counts, user_class = _class_setup(core_k[core_users])
        delta, m_counts, url_class = _class_setup(core_d[core_urls])
        solver = _solve_fixed_point if config.method == "fixed-point" else _solve_newton
        xk, yd, residual, iterations = solver(kappa, delta, c_counts, m_counts, config)
        x[core_users] = xk[user_class]
        y[core_urls] = yd[url_class]

    forced_rows = {
        int(i): graph.adjacency[int(i)] for i in np.flatnonzero(user_state != 0)
    }
    return BicmModel(
        x=x,
        y=y,
        tolerance_achieved=residual,
        iterations=iterations,
        method=config.method,
        forced_rows=forced_rows,
    )


def _observed(model: BicmModel, user: int, url: int) -> float:
    row = model.forced_rows[user]
    pos = int(np.searchsorted(row, url))
    return 1.0 if pos < row.size and row[pos] == url else 0.0


def link_probability(model: BicmModel, user: int, url: int) -> float:
    """p = x*y / (1 + x*y), with degenerate markers resolving to exactly 0 or 1."""
    if not 0 <= user < model.n_users:
        raise IndexOutOfRange(f"user index {user} out of range [0, {model.n_users})")
    if not 0 <= url < model.n_urls:
        raise IndexOutOfRange(f"url index {url} out of range [0, {model.n_urls})")
    xu = float(model.x[user])
    ya = float(model.y[url])
    if xu == 0.0 or ya == 0.0:
        # A zero paired with a forced-full node keeps its observed value,
        # decided by whichever endpoint was peeled first.
        if math.isinf(xu) or math.isinf(ya):
            return _observed(model, user, url)
        return 0.0
    if math.isinf(xu) or math.isinf(ya):
        return 1.0
    t = xu * ya
    return t / (1.0 + t)


def user_probability_row(model: BicmModel, user: int) -> np.ndarray:
    """Link probabilities of one user against every URL."""
    if not 0 <= user < model.n_users:
        raise IndexOutOfRange(f"user index {user} out of range [0, {model.n_users})")
    xu = float(model.x[user])
    y = model.y
    if 0.0 < xu < math.inf:
        with np.errstate(invalid="ignore"):
            t = xu * y
            row = t / (1.0 + t)
        row[np.isinf(y)] = 1.0
        row[y == 0.0] = 0.0
        return row
    row = np.zeros(model.n_urls) if xu == 0.0 else np.ones(model.n_urls)
    conflict = np.isinf(y) if xu == 0.0 else (y == 0.0)
    for url in np.flatnonzero(conflict):
        row[url] = _observed(model, user, int(url))
    return row


def url_probability_column(model: BicmModel, url: int) -> np.ndarray:
    """Link probabilities of one URL against every user."""
    if not 0 <= url < model.n_urls:
        raise IndexOutOfRange(f"url index {url} out of range [0, {model.n_urls})")
    ya = float(model.y[url])
    x = model.x
    if 0.0 < ya < math.inf:
        with np.errstate(invalid="ignore"):
            t = x * ya
            col = t / (1.0 + t)
        col[np.isinf(x)] = 1.0
        col[x == 0.0] = 0.0
        return col
    col = np.zeros(model.n_users) if ya == 0.0 else np.ones(model.n_users)
    degenerate = np.isinf(x) if ya == 0.0 else (x == 0.0)
    for user in np.flatnonzero(degenerate):
        col[user] = _observed(model, int(user), url)
    return col


def expected_degree(model: BicmModel, layer: str, index: int) -> float:
    """Sum of link probabilities over the opposite layer."""
    if layer == "user":
        return float(user_probability_row(model, index).sum())
    if layer == "url":
        return float(url_probability_column(model, index).sum())
    raise ValueError("layer must be 'user' or 'url'")


def max_degree_residual(model: BicmModel, graph: BipartiteGraph) -> float:
    """Max relative degree residual over every node, computed densely."""
    worst = 0.0
    for i in range(graph.n_users):
        expected = float(user_probability_row(model, i).sum())
        k = float(graph.user_degrees[i])
        worst = max(worst, abs(expected - k) / max(k, 1.0))
    for a in range(graph.n_urls):
        expected = float(url_probability_column(model, a).sum())
        d = float(graph.url_degrees[a])
        worst = max(worst, abs(expected - d) / max(d, 1.0))
    return worst
