"""Trustworthiness ratings for online publishers from sharing behavior.

The pipeline: parse a (URL, user) edge list, fit a bipartite configuration
model, keep statistically validated URL co-occurrences, detect news
engagement communities, then score publishers from the profiles of the
users who shared them.
"""

from .bicm import BicmModel, SolverConfig, fit_bicm
from .bipartite import BipartiteGraph
from .communities import NecPartition, detect_communities, extract_necs
from .guidance import JobState, apply_annotation, rank_candidates, remove_annotation
from .ingestion import (
    EdgeList,
    build_bipartite,
    parse_base_knowledge,
    parse_edge_list,
)
from .pipeline import PipelineConfig, render_csv, run_pipeline
from .projection import ValidatedProjection, validate_projection
from .scoring import PublisherRecord, ScoringConfig, score_all

__all__ = [
    "BicmModel",
    "BipartiteGraph",
    "EdgeList",
    "JobState",
    "NecPartition",
    "PipelineConfig",
    "PublisherRecord",
    "ScoringConfig",
    "SolverConfig",
    "ValidatedProjection",
    "apply_annotation",
    "build_bipartite",
    "detect_communities",
    "extract_necs",
    "fit_bicm",
    "parse_base_knowledge",
    "parse_edge_list",
    "rank_candidates",
    "remove_annotation",
    "render_csv",
    "run_pipeline",
    "score_all",
    "validate_projection",
]

__version__ = "1.0.0"
