"""HTTP front end: background jobs, the annotation loop, summaries, export.

Jobs are parsed synchronously (so upload errors surface immediately with
line numbers) and processed in a background thread through the pipeline
phases. Per-job mutations are serialized with a lock; reads hand out
immutable snapshots. With TROPIC_SNAPSHOT_DIR set, inputs and annotations
are persisted after every change and rebuilt on startup.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field, replace

from fastapi import FastAPI, Form, Request, UploadFile
from fastapi.responses import JSONResponse, Response

from . import guidance
from .errors import (
    DuplicateDomain,
    EmptyInput,
    InvalidAlpha,
    LimitExceeded,
    MalformedRow,
    NotUserAnnotated,
    ParseAborted,
    ScoreOutOfRange,
    UnknownPublisher,
)
from .guidance import JobState
from .ingestion import parse_base_knowledge, parse_edge_list, serialize_edge_list
from .pipeline import (
    PipelineConfig,
    changed_records,
    config_from_env,
    render_csv,
    run_pipeline,
)
from .scoring import PublisherRecord, ScoringConfig
from .synthetic import demo_discussion

SORT_KEYS = (
    "publisher",
    "state",
    "score",
    "confidence",
    "n_voters",
    "n_nec_urls",
    "n_shares",
)


@dataclass
class Job:
    id: str
    created_at: float
    config: PipelineConfig
    edge_text: str
    baseline: dict[str, int]
    phase: str = "Queued"
    error: str | None = None
    state: JobState | None = None
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class JobStore:
    """In-memory job registry with optional snapshot persistence."""

    def __init__(self, config: PipelineConfig, snapshot_dir: str | None = None):
        self.config = config
        self.snapshot_dir = snapshot_dir
        self._jobs: dict[str, Job] = {}
        self._registry = threading.Lock()
        if snapshot_dir:
            os.makedirs(snapshot_dir, exist_ok=True)

    def get(self, job_id: str) -> Job | None:
        with self._registry:
            return self._jobs.get(job_id)

    def create(
        self,
        edge_file: bytes,
        base_file: bytes | None,
        config: PipelineConfig,
        job_id: str | None = None,
        annotations: dict[str, int] | None = None,
        created_at: float | None = None,
    ) -> Job:
        """Parse inputs now (errors propagate), then process in background."""
        edge_list = parse_edge_list(edge_file, limit=config.edge_limit)
        baseline = parse_base_knowledge(base_file) if base_file else {}
        job = Job(
            id=job_id or uuid.uuid4().hex,
            created_at=created_at or time.time(),
            config=config,
            edge_text=serialize_edge_list(edge_list),
            baseline=baseline,
        )
        with self._registry:
            self._jobs[job.id] = job
        worker = threading.Thread(
            target=self._process,
            args=(job, edge_list, annotations or {}),
            daemon=True,
        )
        worker.start()
        return job

    def _process(self, job: Job, edge_list, annotations: dict[str, int]):
        job.phase = "Parsing"
        try:
            state = run_pipeline(
                edge_list,
                job.baseline,
                job.config,
                on_phase=lambda name: setattr(job, "phase", name),
            )
            for publisher, score in annotations.items():
                state = guidance.apply_annotation(state, publisher, score)
            job.state = state
            job.phase = "Done"
            self.snapshot(job)
        except Exception as exc:  # noqa: BLE001 - job must land in Failed
            job.error = str(exc)
            job.phase = "Failed"

    def mutate(self, job: Job, action) -> tuple[JobState, JobState]:
        """Apply a state transition under the job's mutation lock."""
        with job.lock:
            before = job.state
            after = action(before)
            job.state = after
        self.snapshot(job)
        return before, after

    def snapshot(self, job: Job):
        if not self.snapshot_dir or job.state is None:
            return
        payload = {
            "job_id": job.id,
            "created_at": job.created_at,
            "config": {
                "alpha": job.config.alpha,
                "mode": job.config.mode,
                "seed": job.config.seed,
                "resolution": job.config.resolution,
                "min_nec_size": job.config.min_nec_size,
                "max_edges": job.config.max_edges,
                "label_threshold": job.config.scoring.label_threshold,
            },
            "edge_text": job.edge_text,
            "baseline": job.baseline,
            "user_annotations": job.state.user_annotations,
        }
        path = os.path.join(self.snapshot_dir, f"{job.id}.json")
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)

    def restore(self):
        """Rebuild jobs from snapshots; the pipeline is deterministic, so a
        recomputation reproduces the persisted results exactly."""
        if not self.snapshot_dir:
            return
        for name in sorted(os.listdir(self.snapshot_dir)):
            if not name.endswith(".json"):
                continue
            with open(os.path.join(self.snapshot_dir, name), encoding="utf-8") as fh:
                payload = json.load(fh)
            cfg = payload["config"]
            config = PipelineConfig(
                alpha=cfg["alpha"],
                mode=cfg["mode"],
                seed=cfg["seed"],
                resolution=cfg["resolution"],
                min_nec_size=cfg["min_nec_size"],
                max_edges=cfg["max_edges"],
                scoring=ScoringConfig(label_threshold=cfg["label_threshold"]),
            )
            base_lines = ["publisher,score"] + [
                f"{p},{s}" for p, s in payload["baseline"].items()
            ]
            self.create(
                payload["edge_text"].encode("utf-8"),
                "\n".join(base_lines).encode("utf-8") if payload["baseline"] else None,
                config,
                job_id=payload["job_id"],
                annotations={
                    p: int(s) for p, s in payload["user_annotations"].items()
                },
                created_at=payload["created_at"],
            )


def _record_json(record: PublisherRecord) -> dict:
    return {
        "publisher": record.publisher,
        "state": record.state,
        "score": record.score,
        "confidence": record.confidence,
        "label": record.label,
        "n_voters": record.stats.n_voters,
        "n_nec_urls": record.stats.n_nec_urls,
        "n_urls": record.stats.n_urls,
        "n_shares": record.stats.n_shares,
    }


def _summary_json(state: JobState) -> dict:
    agg = guidance.summary(state)
    return {
        "annotated_scores": list(agg.annotated_scores),
        "counts": agg.counts,
        "confidences": list(agg.confidences),
    }


def _sort_records(records, sort: str, order: str):
    rows = sorted(records, key=lambda r: r.publisher)
    if sort == "publisher" and order == "asc":
        return rows
    missing = float("-inf")

    def key(r: PublisherRecord):
        if sort == "score":
            return missing if r.score is None else r.score
        if sort in ("state", "publisher"):
            return getattr(r, sort)
        if sort == "confidence":
            return r.confidence
        return getattr(r.stats, sort)

    rows.sort(key=key, reverse=order == "desc")
    return rows


def _error(status: int, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"detail": message, **extra})


def create_app(
    config: PipelineConfig | None = None, snapshot_dir: str | None = None
) -> FastAPI:
    config = config or config_from_env()
    if snapshot_dir is None:
        snapshot_dir = os.environ.get("TROPIC_SNAPSHOT_DIR") or None
    app = FastAPI(title="tropic", version="1.0")
    store = JobStore(config, snapshot_dir)
    app.state.store = store
    store.restore()

    def load_job(job_id: str) -> tuple[Job | None, JSONResponse | None]:
        job = store.get(job_id)
        if job is None:
            return None, _error(404, f"unknown job {job_id}")
        return job, None

    def ready_job(job_id: str):
        job, err = load_job(job_id)
        if err:
            return None, err
        if job.phase != "Done":
            return None, _error(409, f"job not ready (phase {job.phase})")
        return job, None

    def parse_overrides(alpha, label_threshold, seed) -> PipelineConfig:
        cfg = config
        if alpha is not None:
            cfg = replace(cfg, alpha=float(alpha))
        if label_threshold is not None:
            cfg = replace(
                cfg, scoring=ScoringConfig(label_threshold=float(label_threshold))
            )
        if seed is not None:
            cfg = replace(cfg, seed=int(seed))
        return cfg

    @app.post("/api/jobs", status_code=202)
    async def create_job(
        edge_list: UploadFile,
        base_knowledge: UploadFile | None = None,
        alpha: str | None = Form(None),
        label_threshold: str | None = Form(None),
        seed: str | None = Form(None),
    ):
        try:
            job_config = parse_overrides(alpha, label_threshold, seed)
        except (ValueError, InvalidAlpha) as exc:
            return _error(422, f"invalid config: {exc}")
        edge_bytes = await edge_list.read()
        base_bytes = await base_knowledge.read() if base_knowledge else None
        try:
            job = store.create(edge_bytes, base_bytes, job_config)
        except LimitExceeded as exc:
            return _error(413, str(exc), count=exc.count, limit=exc.limit)
        except ParseAborted as exc:
            rows = [
                {"line": e.line_no, "reason": e.reason} for e in exc.row_errors
            ]
            return _error(400, str(exc), rows=rows, truncated=exc.truncated)
        except (EmptyInput, ScoreOutOfRange, MalformedRow, DuplicateDomain) as exc:
            detail = {"line": exc.line_no} if getattr(exc, "line_no", None) else {}
            return _error(400, str(exc), **detail)
        return {"job_id": job.id, "phase": job.phase}

    @app.post("/api/demo", status_code=202)
    def create_demo_job():
        demo = demo_discussion()
        job = store.create(
            demo.edge_text.encode("utf-8"), demo.base_text.encode("utf-8"), config
        )
        return {"job_id": job.id, "phase": job.phase}

    @app.get("/api/jobs/{job_id}")
    def get_status(job_id: str):
        job, err = load_job(job_id)
        if err:
            return err
        body = {
            "job_id": job.id,
            "phase": job.phase,
            "created_at": job.created_at,
            "error": job.error,
        }
        if job.state is not None:
            model = job.state.model
            body["diagnostics"] = {
                "iterations": model.iterations,
                "residual": model.tolerance_achieved,
                "method": model.method,
                "n_users": job.state.graph.n_users,
                "n_urls": job.state.graph.n_urls,
                "n_validated_edges": len(job.state.projection.edges),
                "n_necs": job.state.necs.n_necs,
                "n_voters": len(job.state.scoring.voters),
                "n_profiled": len(job.state.scoring.profiles),
            }
        return body

    @app.get("/api/jobs/{job_id}/results")
    def get_results(
        job_id: str,
        sort: str = "publisher",
        order: str = "asc",
        page: int = 0,
        page_size: int = 50,
        state: str | None = None,
        search: str | None = None,
    ):
        job, err = ready_job(job_id)
        if err:
            return err
        if sort not in SORT_KEYS:
            return _error(422, f"sort must be one of {SORT_KEYS}")
        if order not in ("asc", "desc"):
            return _error(422, "order must be asc or desc")
        if page < 0 or page_size < 1:
            return _error(422, "page must be >= 0 and page_size >= 1")
        records = job.state.scoring.records
        if state is not None:
            if state not in ("A", "P", "U"):
                return _error(422, "state filter must be A, P, or U")
            records = [r for r in records if r.state == state]
        if search:
            records = [r for r in records if search.lower() in r.publisher]
        rows = _sort_records(records, sort, order)
        start = page * page_size
        return {
            "total": len(rows),
            "page": page,
            "page_size": page_size,
            "records": [_record_json(r) for r in rows[start : start + page_size]],
        }

    @app.post("/api/jobs/{job_id}/annotations")
    async def annotate(job_id: str, request: Request):
        job, err = ready_job(job_id)
        if err:
            return err
        try:
            body = await request.json()
        except Exception:
            return _error(422, "body must be JSON")
        if not isinstance(body, dict) or "publisher" not in body or "score" not in body:
            return _error(422, "body must contain publisher and score")
        publisher, score = body["publisher"], body["score"]
        try:
            before, after = store.mutate(
                job, lambda s: guidance.apply_annotation(s, publisher, score)
            )
        except UnknownPublisher as exc:
            return _error(404, str(exc))
        except ScoreOutOfRange as exc:
            return _error(422, str(exc))
        return {
            "summary": _summary_json(after),
            "changed": [
                _record_json(r)
                for r in changed_records(
                    before.scoring.records, after.scoring.records
                )
            ],
        }

    @app.delete("/api/jobs/{job_id}/annotations/{publisher}")
    def remove_annotation(job_id: str, publisher: str):
        job, err = ready_job(job_id)
        if err:
            return err
        try:
            before, after = store.mutate(
                job, lambda s: guidance.remove_annotation(s, publisher)
            )
        except UnknownPublisher as exc:
            return _error(404, str(exc))
        except NotUserAnnotated as exc:
            return _error(409, str(exc))
        return {
            "summary": _summary_json(after),
            "changed": [
                _record_json(r)
                for r in changed_records(
                    before.scoring.records, after.scoring.records
                )
            ],
        }

    @app.get("/api/jobs/{job_id}/suggestions")
    def get_suggestions(job_id: str, limit: int = 10):
        job, err = ready_job(job_id)
        if err:
            return err
        if limit < 1:
            return _error(422, "limit must be >= 1")
        ranks = guidance.rank_candidates(job.state)[:limit]
        return {
            "suggestions": [
                {
                    "publisher": r.publisher,
                    "unlocked_voters": r.unlocked_voters,
                    "n_nec_urls": r.n_nec_urls,
                }
                for r in ranks
            ]
        }

    @app.get("/api/jobs/{job_id}/summary")
    def get_summary(job_id: str):
        job, err = ready_job(job_id)
        if err:
            return err
        return _summary_json(job.state)

    @app.get("/api/jobs/{job_id}/export")
    def export_csv(job_id: str, only: str | None = None):
        job, err = ready_job(job_id)
        if err:
            return err
        if only is not None and only != "annotated":
            return _error(422, "only filter supports only=annotated")
        payload = render_csv(
            job.state.scoring.records, only_annotated=only == "annotated"
        )
        return Response(
            content=payload,
            media_type="text/csv; charset=utf-8",
            headers={"Content-Disposition": 'attachment; filename="tropic.csv"'},
        )

    static_dir = os.environ.get(
        "TROPIC_STATIC_DIR",
        os.path.join(os.path.dirname(__file__), "..", "..", "frontend", "dist"),
    )
    if os.path.isdir(static_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="console")

    return app
