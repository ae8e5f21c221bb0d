"""Voter profiling and publisher trust prediction.

Voters are users who shared at least one URL belonging to a NEC. Each voter
gets a propensity profile: the share-weighted average of annotated publisher
scores over their NEC shares. An unannotated publisher's score is the plain
average profile of the voters who shared any of its URLs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .communities import NecPartition, nec_url_indices
from .errors import AlreadyAnnotated, NotAVoter, ScoreOutOfRange
from .ingestion import EdgeList

# Publisher record states.
ANNOTATED = "A"
PREDICTED = "P"
UNCLASSIFIED = "U"

TRUSTWORTHY = "T"
UNTRUSTWORTHY = "N"


@dataclass(frozen=True)
class ScoringConfig:
    label_threshold: float = 60.0
    confidence_halfpoint: int = 5
    dispersion_scale: float = 50.0

    def __post_init__(self):
        if not 0.0 < self.label_threshold < 100.0:
            raise ValueError("label_threshold must be in (0, 100)")
        if self.confidence_halfpoint < 1:
            raise ValueError("confidence_halfpoint must be >= 1")
        if self.dispersion_scale <= 0.0:
            raise ValueError("dispersion_scale must be positive")


@dataclass(frozen=True)
class VoterProfile:
    """Propensity of one voter to share trusted content.

    support is the share-count mass over annotated publishers backing the
    score; it is always positive (voters without any annotated NEC share
    have no profile at all).
    """

    user_id: str
    score: float
    support: int


@dataclass(frozen=True)
class PublisherStats:
    """Engagement counts for one publisher, independent of annotations."""

    n_voters: int
    n_nec_urls: int
    n_urls: int
    n_shares: int


@dataclass(frozen=True)
class PublisherRecord:
    publisher: str
    state: str
    score: float | None
    confidence: float
    label: str | None
    stats: PublisherStats


@dataclass(frozen=True)
class ScoringResult:
    records: tuple[PublisherRecord, ...]
    voters: frozenset[str]
    profiles: dict[str, VoterProfile]


def nec_url_labels(edge_list: EdgeList, necs: NecPartition) -> frozenset[str]:
    """URL strings covered by some NEC; indices refer to sorted URL order."""
    if necs.n_urls != len(edge_list.urls):
        raise ValueError("NEC partition does not match edge list URL count")
    return frozenset(edge_list.urls[i] for i in nec_url_indices(necs))


def select_voters(edge_list: EdgeList, necs: NecPartition) -> set[str]:
    """Users who shared at least one NEC URL."""
    labels = nec_url_labels(edge_list, necs)
    return {user for url in labels for user in edge_list.users_by_url[url]}


def _profile_from_shares(
    user_id: str,
    shares: dict[str, int],
    nec_labels: frozenset[str],
    edge_list: EdgeList,
    base_knowledge: dict[str, int],
) -> VoterProfile | None:
    weight = 0
    mass = 0.0
    for url, count in shares.items():
        if url not in nec_labels:
            continue
        score = base_knowledge.get(edge_list.url_publisher[url])
        if score is None:
            continue
        weight += count
        mass += count * score
    if weight == 0:
        return None
    return VoterProfile(user_id=user_id, score=mass / weight, support=weight)


def profile_voter(
    user_id: str,
    edge_list: EdgeList,
    necs: NecPartition,
    base_knowledge: dict[str, int],
) -> VoterProfile | None:
    """Share-weighted average of annotated scores over the voter's NEC shares.

    Returns None for voters with no annotated NEC share (unprofilable).
    """
    if user_id not in select_voters(edge_list, necs):
        raise NotAVoter(f"user {user_id!r} shared no NEC URL")
    labels = nec_url_labels(edge_list, necs)
    return _profile_from_shares(
        user_id, edge_list.shares_by_user[user_id], labels, edge_list, base_knowledge
    )


def _publisher_voters(
    edge_list: EdgeList, publisher: str, voters: set[str] | frozenset[str]
) -> list[str]:
    """Voters sharing any URL of the publisher, in sorted order."""
    seen = {
        user
        for url in edge_list.urls_by_publisher[publisher]
        for user in edge_list.users_by_url[url]
        if user in voters
    }
    return sorted(seen)


def predict_publisher(
    publisher: str,
    edge_list: EdgeList,
    profiles: dict[str, VoterProfile],
    config: ScoringConfig,
    base_knowledge: dict[str, int] | None = None,
) -> tuple[float, float, int] | None:
    """(score, confidence, n_voters) from contributing profiles, or None.

    Contributing voters are the profilable ones who shared any URL of this
    publisher, NEC or not. None means no contributing voter (Unclassified).
    """
    if base_knowledge is not None and publisher in base_knowledge:
        raise AlreadyAnnotated(f"{publisher} is annotated")
    contributing = [
        profiles[user].score
        for user in _publisher_voters(edge_list, publisher, set(profiles))
    ]
    n = len(contributing)
    if n == 0:
        return None
    values = np.asarray(contributing, dtype=np.float64)
    score = float(values.mean())
    spread = float(values.std())
    confidence = _confidence(n, spread, config)
    return score, confidence, n


def _confidence(n: int, spread: float, config: ScoringConfig) -> float:
    evidence = n / (n + config.confidence_halfpoint)
    agreement = max(0.0, 1.0 - spread / config.dispersion_scale)
    return evidence * agreement


def assign_label(score: float, config: ScoringConfig) -> str:
    """T for scores at or above the threshold, N below."""
    if not 0.0 <= score <= 100.0:
        raise ScoreOutOfRange(f"score {score} outside [0, 100]")
    return TRUSTWORTHY if score >= config.label_threshold else UNTRUSTWORTHY


def compute_publisher_stats(
    edge_list: EdgeList, necs: NecPartition
) -> dict[str, PublisherStats]:
    """Engagement counts per publisher; pure in the edge list and NECs."""
    labels = nec_url_labels(edge_list, necs)
    voters = {user for url in labels for user in edge_list.users_by_url[url]}
    shares: dict[str, int] = {p: 0 for p in edge_list.publishers}
    for (_, url), count in edge_list.counts.items():
        shares[edge_list.url_publisher[url]] += count
    stats = {}
    for publisher in edge_list.publishers:
        urls = edge_list.urls_by_publisher[publisher]
        sharers = {u for url in urls for u in edge_list.users_by_url[url]}
        stats[publisher] = PublisherStats(
            n_voters=len(sharers & voters),
            n_nec_urls=sum(1 for url in urls if url in labels),
            n_urls=len(urls),
            n_shares=shares[publisher],
        )
    return stats


def score_all(
    edge_list: EdgeList,
    necs: NecPartition,
    base_knowledge: dict[str, int],
    config: ScoringConfig | None = None,
) -> ScoringResult:
    """One record per publisher: annotated passthrough, else predicted.

    Publishers whose prediction has no contributing voter come out
    Unclassified with confidence 0 and no label.
    """
    config = config or ScoringConfig()
    labels = nec_url_labels(edge_list, necs)
    voters = {user for url in labels for user in edge_list.users_by_url[url]}
    profiles = {}
    for user in sorted(voters):
        profile = _profile_from_shares(
            user, edge_list.shares_by_user[user], labels, edge_list, base_knowledge
        )
        if profile is not None:
            profiles[user] = profile

    stats = compute_publisher_stats(edge_list, necs)
    records = []
    for publisher in edge_list.publishers:
        if publisher in base_knowledge:
            score = float(base_knowledge[publisher])
            records.append(
                PublisherRecord(
                    publisher=publisher,
                    state=ANNOTATED,
                    score=score,
                    confidence=1.0,
                    label=assign_label(score, config),
                    stats=stats[publisher],
                )
            )
            continue
        prediction = predict_publisher(publisher, edge_list, profiles, config)
        if prediction is None:
            records.append(
                PublisherRecord(
                    publisher=publisher,
                    state=UNCLASSIFIED,
                    score=None,
                    confidence=0.0,
                    label=None,
                    stats=stats[publisher],
                )
            )
            continue
        score, confidence, _ = prediction
        records.append(
            PublisherRecord(
                publisher=publisher,
                state=PREDICTED,
                score=score,
                confidence=confidence,
                label=assign_label(score, config),
                stats=stats[publisher],
            )
        )
    return ScoringResult(
        records=tuple(records), voters=frozenset(voters), profiles=profiles
    )
