"""Synthetic discussions with planted ground truth.

Two user populations with opposite sharing preferences over two publisher
quality tiers. Recovering the tier of unannotated publishers from such a
discussion exercises every pipeline stage, and the planted scores give an
exact evaluation target. Also the source of the bundled demo dataset.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PlantedDiscussion:
    """A generated discussion plus everything needed to grade predictions."""

    edge_text: str
    base_text: str
    truth: dict[str, int]
    annotated: frozenset[str]
    publishers: tuple[str, ...]
    good: frozenset[str]

    @property
    def unannotated(self) -> list[str]:
        return [p for p in self.publishers if p not in self.annotated]


def generate_planted(
    seed: int,
    n_users: int = 500,
    n_publishers: int = 60,
    annotated_fraction: float = 0.3,
    mean_shares: float = 22.0,
    min_shares: int = 5,
    preference: float = 0.9,
    urls_per_publisher: tuple[int, int] = (1, 3),
) -> PlantedDiscussion:
    """Plant two publisher tiers (scores 90±5 vs 20±5) and two user groups.

    Group 0 users direct `preference` of their shares at the high tier,
    group 1 the mirror image. A balanced annotated_fraction of each tier
    goes into the base knowledge; the rest is held out as ground truth.
    """
    rng = np.random.default_rng(seed)
    n_good = n_publishers // 2
    publishers = tuple(f"outlet{i:02d}.example" for i in range(n_publishers))
    good = frozenset(publishers[:n_good])

    truth = {}
    for i, publisher in enumerate(publishers):
        center = 90.0 if i < n_good else 20.0
        score = int(np.clip(round(center + 5.0 * rng.standard_normal()), 0, 100))
        truth[publisher] = score

    urls = {}
    for publisher in publishers:
        count = int(rng.integers(urls_per_publisher[0], urls_per_publisher[1] + 1))
        urls[publisher] = [
            f"https://{publisher}/story-{j}" for j in range(count)
        ]

    tiers = (publishers[:n_good], publishers[n_good:])
    rows = []
    for u in range(n_users):
        user = f"user{u:04d}"
        group = 0 if u < n_users // 2 else 1
        n_shares = int(rng.poisson(mean_shares)) + min_shares
        for _ in range(n_shares):
            prefers_own = rng.random() < preference
            tier = tiers[group] if prefers_own else tiers[1 - group]
            publisher = tier[int(rng.integers(len(tier)))]
            url = urls[publisher][int(rng.integers(len(urls[publisher])))]
            rows.append((url, user))

    per_tier = max(1, round(annotated_fraction * n_good))
    annotated = frozenset(
        list(rng.choice(publishers[:n_good], size=per_tier, replace=False))
        + list(rng.choice(publishers[n_good:], size=per_tier, replace=False))
    )

    edge_lines = ["url,user_id"] + [f"{url},{user}" for url, user in rows]
    base_lines = ["publisher,score"] + [
        f"{p},{truth[p]}" for p in publishers if p in annotated
    ]
    return PlantedDiscussion(
        edge_text="\n".join(edge_lines) + "\n",
        base_text="\n".join(base_lines) + "\n",
        truth=truth,
        annotated=annotated,
        publishers=publishers,
        good=good,
    )


def demo_discussion() -> PlantedDiscussion:
    """The bundled demo: small enough to process in a couple of seconds."""
    return generate_planted(
        seed=7, n_users=150, n_publishers=20, mean_shares=14.0
    )
