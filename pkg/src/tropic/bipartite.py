"""Bipartite user-URL graph representation and degree bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange


@dataclass
class BipartiteGraph:
    """Binary user-URL graph with dense 0-based indices on both layers.

    Adjacency is stored user-side only (sorted, duplicate-free URL index
    arrays); URL-side views are derived on demand.
    """

    n_users: int
    n_urls: int
    adjacency: list[np.ndarray]
    user_degrees: np.ndarray
    url_degrees: np.ndarray
    user_labels: list[str]
    url_labels: list[str]
    user_index: dict[str, int] = field(repr=False, compare=False, default_factory=dict)
    url_index: dict[str, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        if not self.user_index:
            self.user_index = {u: i for i, u in enumerate(self.user_labels)}
        if not self.url_index:
            self.url_index = {u: i for i, u in enumerate(self.url_labels)}
        total = int(sum(row.size for row in self.adjacency))
        if int(self.user_degrees.sum()) != total or int(self.url_degrees.sum()) != total:
            raise ValueError("degree sequences do not match adjacency")
        if len(self.user_labels) != self.n_users or len(self.url_labels) != self.n_urls:
            raise ValueError("labels do not match layer sizes")

    def neighbors(self, user: int) -> np.ndarray:
        """Sorted URL indices shared by ``user``."""
        if not 0 <= user < self.n_users:
            raise IndexOutOfRange(f"user index {user} out of range [0, {self.n_users})")
        return self.adjacency[user]

    def url_adjacency(self) -> list[np.ndarray]:
        """Per-URL sorted user index arrays, derived from the user-side lists."""
        buckets: list[list[int]] = [[] for _ in range(self.n_urls)]
        for user in range(self.n_users):
            for url in self.adjacency[user]:
                buckets[int(url)].append(user)
        return [np.asarray(b, dtype=np.int64) for b in buckets]


@dataclass(frozen=True)
class DegreeClasses:
    """Node indices grouped by equal degree, one entry per distinct degree."""

    user_classes: dict[int, np.ndarray]
    url_classes: dict[int, np.ndarray]


def degree_classes(graph: BipartiteGraph) -> DegreeClasses:
    """Group equal-degree users and URLs; the solver runs one unknown per class."""
    return DegreeClasses(
        user_classes=_group_by_degree(graph.user_degrees),
        url_classes=_group_by_degree(graph.url_degrees),
    )


def _group_by_degree(degrees: np.ndarray) -> dict[int, np.ndarray]:
    order = np.argsort(degrees, kind="stable")
    classes: dict[int, np.ndarray] = {}
    if degrees.size == 0:
        return classes
    sorted_deg = degrees[order]
    boundaries = np.flatnonzero(np.diff(sorted_deg)) + 1
    for chunk in np.split(order, boundaries):
        classes[int(degrees[chunk[0]])] = np.sort(chunk)
    return classes
