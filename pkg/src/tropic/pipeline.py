"""End-to-end run: edge list in, scored publisher table out.

Stages mirror the processing chain (model fit, validation, community
detection, scoring) and report progress through a phase callback so a
service can surface them. CSV rendering lives here too because the CLI and
the HTTP export must produce byte-identical output.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .bicm import SolverConfig, fit_bicm
from .communities import detect_communities, extract_necs
from .errors import InvalidAlpha
from .guidance import JobState, build_state
from .ingestion import EdgeList, build_bipartite
from .projection import MODES, validate_projection
from .scoring import PublisherRecord, ScoringConfig

PHASES = (
    "Queued",
    "Parsing",
    "FittingModel",
    "Validating",
    "DetectingCommunities",
    "Scoring",
    "Done",
    "Failed",
)

CSV_HEADER = "publisher,state,score,confidence,label,n_voters,n_nec_urls,n_urls,n_shares"

DEFAULT_MAX_EDGES = 50000


@dataclass(frozen=True)
class PipelineConfig:
    alpha: float = 0.05
    mode: str = "auto"
    seed: int = 42
    resolution: float = 1.0
    min_nec_size: int = 2
    max_edges: int = DEFAULT_MAX_EDGES
    scoring: ScoringConfig = field(default_factory=ScoringConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise InvalidAlpha(f"alpha must be in (0, 1], got {self.alpha}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.max_edges < 0:
            raise ValueError("max_edges must be >= 0 (0 disables the cap)")
        if self.min_nec_size < 2:
            raise ValueError("min_nec_size must be >= 2")
        if self.resolution <= 0.0:
            raise ValueError("resolution must be positive")

    @property
    def edge_limit(self) -> int | None:
        """The parse-time cap; None when disabled via max_edges = 0."""
        return self.max_edges if self.max_edges > 0 else None


def config_from_env(environ=None) -> PipelineConfig:
    """Build a config from TROPIC_* variables, falling back to defaults."""
    env = os.environ if environ is None else environ
    kwargs = {}
    if "TROPIC_MAX_EDGES" in env:
        kwargs["max_edges"] = int(env["TROPIC_MAX_EDGES"])
    if "TROPIC_ALPHA" in env:
        kwargs["alpha"] = float(env["TROPIC_ALPHA"])
    if "TROPIC_SEED" in env:
        kwargs["seed"] = int(env["TROPIC_SEED"])
    if "TROPIC_LABEL_THRESHOLD" in env:
        kwargs["scoring"] = ScoringConfig(
            label_threshold=float(env["TROPIC_LABEL_THRESHOLD"])
        )
    return PipelineConfig(**kwargs)


def run_pipeline(
    edge_list: EdgeList,
    baseline: dict[str, int],
    config: PipelineConfig | None = None,
    on_phase=None,
) -> JobState:
    """Run every stage after parsing; on_phase fires as each stage starts."""
    config = config or PipelineConfig()

    def phase(name: str):
        if on_phase is not None:
            on_phase(name)

    phase("FittingModel")
    graph = build_bipartite(edge_list)
    model = fit_bicm(graph, config.solver)

    phase("Validating")
    projection = validate_projection(graph, model, config.alpha, config.mode)

    phase("DetectingCommunities")
    communities = detect_communities(projection, config.seed, config.resolution)
    necs = extract_necs(communities, graph.n_urls, config.min_nec_size)

    phase("Scoring")
    return build_state(
        edge_list, graph, model, projection, necs, baseline, config.scoring
    )


def render_record(record: PublisherRecord) -> str:
    score = "" if record.score is None else f"{record.score:.2f}"
    label = "" if record.label is None else record.label
    s = record.stats
    return (
        f"{record.publisher},{record.state},{score},{record.confidence:.4f},"
        f"{label},{s.n_voters},{s.n_nec_urls},{s.n_urls},{s.n_shares}"
    )


def render_csv(records, only_annotated: bool = False) -> bytes:
    """The export format: sorted by publisher, LF endings, fixed precision."""
    rows = sorted(records, key=lambda r: r.publisher)
    if only_annotated:
        rows = [r for r in rows if r.state == "A"]
    lines = [CSV_HEADER] + [render_record(r) for r in rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


def changed_records(
    old: tuple[PublisherRecord, ...], new: tuple[PublisherRecord, ...]
) -> list[PublisherRecord]:
    """Records that differ after an annotation, for one-round-trip updates."""
    before = {r.publisher: r for r in old}
    return [r for r in new if before.get(r.publisher) != r]
