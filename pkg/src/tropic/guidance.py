"""Annotation workflow: per-publisher stats, impact ranking, incremental
recomputation, and dashboard aggregates.

Annotations never touch the graph, the null model, or the NEC partition;
they only re-run the scoring pass. User annotations overlay the uploaded
base knowledge and can be removed again, restoring the baseline value if
one existed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .bicm import BicmModel
from .bipartite import BipartiteGraph
from .communities import NecPartition
from .errors import NotUserAnnotated, ScoreOutOfRange, UnknownPublisher
from .ingestion import EdgeList
from .projection import ValidatedProjection
from .scoring import (
    ANNOTATED,
    PREDICTED,
    PublisherStats,
    ScoringConfig,
    ScoringResult,
    compute_publisher_stats,
    nec_url_labels,
    score_all,
)


@dataclass(frozen=True)
class ImpactRank:
    """How much annotating this publisher would grow prediction coverage."""

    publisher: str
    unlocked_voters: int
    n_nec_urls: int


@dataclass(frozen=True)
class Summary:
    """Dashboard aggregates: two histograms plus A/P/U counts.

    Histograms have ten buckets, lower-inclusive with a closed top bucket
    ([90, 100] for scores, [0.9, 1.0] for confidences).
    """

    annotated_scores: tuple[int, ...]
    counts: dict[str, int]
    confidences: tuple[int, ...]


@dataclass(frozen=True)
class JobState:
    """Everything one processed discussion carries between requests."""

    edge_list: EdgeList
    graph: BipartiteGraph
    model: BicmModel
    projection: ValidatedProjection
    necs: NecPartition
    baseline: dict[str, int]
    user_annotations: dict[str, int]
    config: ScoringConfig
    scoring: ScoringResult

    @property
    def knowledge(self) -> dict[str, int]:
        """Effective annotations: user edits shadow the uploaded baseline."""
        return {**self.baseline, **self.user_annotations}


def build_state(
    edge_list: EdgeList,
    graph: BipartiteGraph,
    model: BicmModel,
    projection: ValidatedProjection,
    necs: NecPartition,
    baseline: dict[str, int],
    config: ScoringConfig | None = None,
) -> JobState:
    config = config or ScoringConfig()
    known = {p: s for p, s in baseline.items() if p in set(edge_list.publishers)}
    return JobState(
        edge_list=edge_list,
        graph=graph,
        model=model,
        projection=projection,
        necs=necs,
        baseline=known,
        user_annotations={},
        config=config,
        scoring=score_all(edge_list, necs, known, config),
    )


def compute_stats(state: JobState) -> dict[str, PublisherStats]:
    """Engagement counts per publisher; invariant under annotation changes."""
    return compute_publisher_stats(state.edge_list, state.necs)


def rank_candidates(state: JobState) -> list[ImpactRank]:
    """Unannotated publishers ordered by how many voters they would unlock.

    A voter is unlocked when it is currently unprofilable but shares at
    least one NEC URL of the candidate; ties break by NEC URL count, then
    publisher id.
    """
    edge_list = state.edge_list
    labels = nec_url_labels(edge_list, state.necs)
    unprofilable = state.scoring.voters - set(state.scoring.profiles)
    knowledge = state.knowledge
    ranks = []
    for publisher in edge_list.publishers:
        if publisher in knowledge:
            continue
        nec_urls = [u for u in edge_list.urls_by_publisher[publisher] if u in labels]
        unlocked = {
            user
            for url in nec_urls
            for user in edge_list.users_by_url[url]
            if user in unprofilable
        }
        ranks.append(
            ImpactRank(
                publisher=publisher,
                unlocked_voters=len(unlocked),
                n_nec_urls=len(nec_urls),
            )
        )
    ranks.sort(key=lambda r: (-r.unlocked_voters, -r.n_nec_urls, r.publisher))
    return ranks


def _check_annotation_score(score) -> int:
    if isinstance(score, bool) or not isinstance(score, int):
        raise ScoreOutOfRange(f"annotation score must be an integer, got {score!r}")
    if not 0 <= score <= 100:
        raise ScoreOutOfRange(f"annotation score {score} outside [0, 100]")
    return score


def apply_annotation(state: JobState, publisher: str, score: int) -> JobState:
    """Annotate (or re-annotate) a publisher and re-run scoring only."""
    if publisher not in state.edge_list.urls_by_publisher:
        raise UnknownPublisher(f"no such publisher in edge list: {publisher}")
    score = _check_annotation_score(score)
    annotations = {**state.user_annotations, publisher: score}
    knowledge = {**state.baseline, **annotations}
    return replace(
        state,
        user_annotations=annotations,
        scoring=score_all(state.edge_list, state.necs, knowledge, state.config),
    )


def remove_annotation(state: JobState, publisher: str) -> JobState:
    """Drop a user annotation; an uploaded baseline value resurfaces."""
    if publisher not in state.edge_list.urls_by_publisher:
        raise UnknownPublisher(f"no such publisher in edge list: {publisher}")
    if publisher not in state.user_annotations:
        raise NotUserAnnotated(f"{publisher} has no user annotation")
    annotations = {p: s for p, s in state.user_annotations.items() if p != publisher}
    knowledge = {**state.baseline, **annotations}
    return replace(
        state,
        user_annotations=annotations,
        scoring=score_all(state.edge_list, state.necs, knowledge, state.config),
    )


# Bucket boundaries; i/10 (not i*0.1) so 0.3 compares against the nearest
# double to 0.3 rather than 0.30000000000000004.
_SCORE_EDGES = tuple(10 * i for i in range(1, 10))
_CONFIDENCE_EDGES = tuple(i / 10 for i in range(1, 10))


def _bucket(value: float, edges: tuple) -> int:
    """Ten lower-inclusive buckets; the top one is closed."""
    for i in range(8, -1, -1):
        if value >= edges[i]:
            return i + 1
    return 0


def summary(state: JobState) -> Summary:
    scores = [0] * 10
    confidences = [0] * 10
    counts = {"annotated": 0, "predicted": 0, "unclassified": 0}
    for record in state.scoring.records:
        if record.state == ANNOTATED:
            counts["annotated"] += 1
            scores[_bucket(record.score, _SCORE_EDGES)] += 1
        elif record.state == PREDICTED:
            counts["predicted"] += 1
            confidences[_bucket(record.confidence, _CONFIDENCE_EDGES)] += 1
        else:
            counts["unclassified"] += 1
    return Summary(
        annotated_scores=tuple(scores),
        counts=counts,
        confidences=tuple(confidences),
    )
