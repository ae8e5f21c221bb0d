"""Community structure of the validated URL network.

Louvain modularity optimisation on the validated projection, then the
communities large enough to matter are kept as news-engagement clusters
(NECs). The partition is canonicalised so equal inputs serialise to equal
bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import networkx as nx

from .projection import ValidatedProjection


@dataclass(frozen=True)
class NecPartition:
    """NECs as sorted URL-index tuples, largest first."""

    necs: tuple[tuple[int, ...], ...]
    n_urls: int

    @property
    def n_necs(self) -> int:
        return len(self.necs)

    def membership(self) -> dict[int, int]:
        """URL index -> NEC position for every URL inside some NEC."""
        return {url: i for i, nec in enumerate(self.necs) for url in nec}


def _projection_graph(projection: ValidatedProjection) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(projection.nodes)
    g.add_edges_from(projection.edges)
    return g


def detect_communities(
    projection: ValidatedProjection, seed: int = 42, resolution: float = 1.0
) -> list[set[int]]:
    """Louvain communities of the validated network, canonically ordered.

    Isolated URLs come out as singletons. Order is by size descending,
    breaking ties by smallest member, so a fixed seed gives a fixed result.
    """
    g = _projection_graph(projection)
    if g.number_of_nodes() == 0:
        return []
    communities = nx.community.louvain_communities(
        g, seed=seed, resolution=resolution
    )
    return sorted(communities, key=lambda c: (-len(c), min(c)))


def modularity(projection: ValidatedProjection, communities: list[set[int]]) -> float:
    """Newman modularity of a partition; 0.0 for an edgeless network."""
    g = _projection_graph(projection)
    if g.number_of_edges() == 0:
        return 0.0
    return float(nx.community.modularity(g, communities))


def extract_necs(
    communities: list[set[int]], n_urls: int, min_size: int = 2
) -> NecPartition:
    """Keep communities with at least min_size URLs as NECs."""
    if min_size < 2:
        raise ValueError(f"min_size must be at least 2, got {min_size}")
    kept = [tuple(sorted(c)) for c in communities if len(c) >= min_size]
    kept.sort(key=lambda nec: (-len(nec), nec[0]))
    return NecPartition(necs=tuple(kept), n_urls=n_urls)


def nec_url_indices(partition: NecPartition) -> set[int]:
    """All URL indices belonging to some NEC."""
    return {url for nec in partition.necs for url in nec}


def partition_to_json(partition: NecPartition) -> bytes:
    """Canonical serialisation: same partition, same bytes."""
    payload = {"n_urls": partition.n_urls, "necs": [list(n) for n in partition.necs]}
    return json.dumps(payload, separators=(",", ":"), sort_keys=True).encode("ascii")


def partition_from_json(blob: bytes) -> NecPartition:
    payload = json.loads(blob.decode("ascii"))
    return NecPartition(
        necs=tuple(tuple(int(u) for u in nec) for nec in payload["necs"]),
        n_urls=int(payload["n_urls"]),
    )
