"""Benchmark orchestration: topics files, evaluation runs and sweeps.

Topics travel between commands as JSON: ranked words (as strings, so a
topics file is portable across corpora), their weights, optionally the
full word distributions (aligned with the producing corpus vocabulary)
and, for pipeline output, the per-document cluster labels. Documents
labeled noise are excluded from coherence scoring.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .coherence import CoherenceConfig, aggregate_mean, score_topics
from .corpusio import CorpusArchive
from .divergence import avg_pairwise_divergence, unique_word_diversity
from .embeddings import load_embeddings
from .errors import TopicEvalError, UnknownFormat
from .pipeline import PipelineConfig, PipelineResult, run_pipeline
from .preprocessing import Vocabulary
from .records import RunRecord, write_records_csv
from .topics import Topic, TopicSet, TopicWordDist

DIVERSITY_MEASURES = ("unique", "jsd", "hellinger", "cosine")


# --------------------------------------------------------------------------
# topics files
# --------------------------------------------------------------------------


def topic_set_to_json(
    model: str,
    ts: TopicSet,
    vocab: Vocabulary,
    seed: int,
    labels: list[int] | None = None,
    metadata: dict | None = None,
    include_dists: bool = True,
) -> dict:
    topics_json = []
    for topic, dist in zip(ts.topics, ts.dists or [None] * len(ts)):
        entry = {"words": [vocab.token_of[w] for w in topic.words]}
        if dist is not None:
            entry["weights"] = [float(dist.probs[w]) for w in topic.words]
        topics_json.append(entry)
    doc = {"model": model, "k": len(ts), "seed": seed, "topics": topics_json}
    if include_dists and ts.dists is not None:
        doc["dists"] = [[float(x) for x in d.probs] for d in ts.dists]
    if labels is not None:
        doc["labels"] = [int(x) for x in labels]
    if metadata:
        doc["metadata"] = metadata
    return doc


@dataclass
class TopicsFile:
    model: str
    words: list[list[str]]
    weights: list[list[float]] | None
    dists: list[TopicWordDist] | None
    labels: list[int] | None
    seed: int | None


def load_topics_file(path: str | Path) -> TopicsFile:
    try:
        doc = json.loads(Path(path).read_text("utf-8"))
    except json.JSONDecodeError as exc:
        raise UnknownFormat(f"{path}: not valid JSON: {exc}") from exc
    if "topics" not in doc:
        raise UnknownFormat(f"{path}: missing 'topics' field")
    words = [[str(w) for w in t["words"]] for t in doc["topics"]]
    weights = [t.get("weights") for t in doc["topics"]]
    if any(w is None for w in weights):
        weights = None
    dists = None
    if "dists" in doc:
        dists = [TopicWordDist(np.asarray(d, dtype=np.float64)) for d in doc["dists"]]
    return TopicsFile(
        model=doc.get("model", "unknown"),
        words=words,
        weights=weights,
        dists=dists,
        labels=doc.get("labels"),
        seed=doc.get("seed"),
    )


def words_to_ids(topic_words: list[list[str]], vocab: Vocabulary) -> list[Topic]:
    """Map word strings to vocabulary ids.

    Words outside the vocabulary get stable negative sentinel ids (shared
    across topics) so they count as never occurring instead of erroring.
    """
    unknown: dict[str, int] = {}
    topics = []
    for words in topic_words:
        ids = []
        for w in words:
            tid = vocab.id_of.get(w)
            if tid is None:
                tid = unknown.setdefault(w, -(len(unknown) + 1))
            ids.append(tid)
        topics.append(Topic(tuple(ids)))
    return topics


# --------------------------------------------------------------------------
# evaluation
# --------------------------------------------------------------------------


@dataclass
class EvalOptions:
    coherence: CoherenceConfig = field(default_factory=CoherenceConfig)
    diversity_measure: str = "unique"
    diversity_top_n: int = 10

    def __post_init__(self) -> None:
        if self.diversity_measure not in DIVERSITY_MEASURES:
            raise ValueError(f"unknown diversity measure {self.diversity_measure!r}")


@dataclass
class EvalOutcome:
    coherence: float
    per_topic: list[float]
    diversity: float  # the selected headline measure
    k: int
    # all divergence measures, computed whenever distributions exist
    divergences: dict[str, float] = field(default_factory=dict)


def evaluate_topics(
    archive: CorpusArchive,
    topics: list[Topic],
    options: EvalOptions,
    dists: list[TopicWordDist] | None = None,
    labels: list[int] | None = None,
) -> EvalOutcome:
    """Score one topic set for coherence and diversity against a corpus.

    The headline diversity follows ``options.diversity_measure``; the
    divergence-based measures are additionally computed whenever full
    topic distributions are available, so reports can carry them side by
    side.
    """
    sequences = archive.sequences
    bow = archive.to_bow()
    if labels is not None:
        keep = [i for i, lab in enumerate(labels) if lab >= 0]
        sequences = [sequences[i] for i in keep]
        bow.docs = [bow.docs[i] for i in keep]
        bow.doc_ids = None
    per_topic = score_topics(topics, options.coherence, bow=bow, sequences=sequences)
    coherence = aggregate_mean(per_topic)

    divergences: dict[str, float] = {}
    if dists is not None and len(dists) >= 2:
        for measure in ("jsd", "hellinger", "cosine"):
            divergences[measure] = avg_pairwise_divergence(dists, measure).average

    if options.diversity_measure == "unique":
        diversity = unique_word_diversity(topics, options.diversity_top_n)
    elif options.diversity_measure in divergences:
        diversity = divergences[options.diversity_measure]
    else:
        raise TopicEvalError(
            "divergence-based diversity needs full topic distributions; "
            "re-run the model with distributions enabled"
        )
    return EvalOutcome(coherence, per_topic, diversity, len(topics), divergences)


def evaluate_pipeline_run(
    archive: CorpusArchive,
    embeddings_path: str | Path,
    pipeline_config: PipelineConfig,
    options: EvalOptions,
    ids_path: str | Path | None = None,
) -> tuple[EvalOutcome, PipelineResult]:
    emb = load_embeddings(embeddings_path, ids_path)
    result = run_pipeline(archive.to_bow(), emb, pipeline_config)
    outcome = evaluate_topics(
        archive,
        result.topics.topics,
        options,
        dists=result.topics.dists,
        labels=[int(x) for x in result.assignment.labels],
    )
    return outcome, result


# --------------------------------------------------------------------------
# sweeps
# --------------------------------------------------------------------------


@dataclass
class SweepJob:
    dataset: str
    encoder: str
    params: int
    corpus_path: Path
    embeddings_path: Path | None  # None: not configured for this pair


@dataclass
class SweepPlan:
    jobs: list[SweepJob]
    options: EvalOptions
    pipeline: PipelineConfig
    seed: int


def parse_sweep_config(path: str | Path) -> SweepPlan:
    """Read a sweep TOML; relative paths resolve against the config file."""
    path = Path(path)
    with open(path, "rb") as fh:
        cfg = tomllib.load(fh)
    base = path.parent
    seed = int(cfg.get("seed", 42))

    coh = cfg.get("coherence", {})
    coherence = CoherenceConfig(
        measure=coh.get("measure", "c_v"),
        window_size=coh.get("window"),
        epsilon=float(coh.get("epsilon", 1e-12)),
        top_n=int(coh.get("top_n", 10)),
    )
    div = cfg.get("diversity", {})
    options = EvalOptions(
        coherence=coherence,
        diversity_measure=div.get("measure", "unique"),
        diversity_top_n=int(div.get("top_n", 10)),
    )
    pipe = cfg.get("pipeline", {})
    pipeline = PipelineConfig(
        reduce_dim=int(pipe.get("reduce_dim", 5)),
        clusterer=pipe.get("clusterer", "hdbscan"),
        min_cluster_size=int(pipe.get("min_cluster_size", 10)),
        min_samples=pipe.get("min_samples"),
        n_clusters=int(pipe.get("n_clusters", 10)),
        top_n=int(pipe.get("top_n", coherence.top_n)),
        seed=seed,
    )

    encoders = cfg.get("encoders", [])
    datasets = cfg.get("datasets", [])
    if not encoders or not datasets:
        raise UnknownFormat(f"{path}: sweep config needs [[datasets]] and [[encoders]]")
    jobs = []
    for ds in datasets:
        emb_map = ds.get("embeddings", {})
        for enc in encoders:
            emb = emb_map.get(enc["name"])
            jobs.append(
                SweepJob(
                    dataset=ds["name"],
                    encoder=enc["name"],
                    params=int(enc["params"]),
                    corpus_path=base / ds["corpus"],
                    embeddings_path=base / emb if emb else None,
                )
            )
    return SweepPlan(jobs, options, pipeline, seed)


def _utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _journal_entry(record: RunRecord, status: str, detail: str = "") -> str:
    doc = record.to_json()
    doc["status"] = status
    if detail:
        doc["detail"] = detail
    return json.dumps(doc, sort_keys=True)


def read_journal(path: str | Path) -> list[RunRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            doc = json.loads(line)
            records.append(
                RunRecord(
                    dataset=doc["dataset"],
                    encoder=doc["encoder"],
                    params=doc["params"],
                    k=doc.get("k"),
                    coherence=doc.get("coherence"),
                    diversity=doc.get("diversity"),
                    seed=doc["seed"],
                    div_jsd=doc.get("div_jsd"),
                    div_hellinger=doc.get("div_hellinger"),
                    div_cosine=doc.get("div_cosine"),
                    timestamp=doc.get("timestamp", ""),
                )
            )
    return records


def _run_job(job: SweepJob, plan: SweepPlan) -> tuple[RunRecord, str, str]:
    from .corpusio import load_archive

    if job.embeddings_path is None or not job.embeddings_path.exists():
        record = RunRecord(
            job.dataset, job.encoder, job.params,
            k=None, coherence=None, diversity=None,
            seed=plan.seed, timestamp=_utc_now(),
        )
        detail = str(job.embeddings_path) if job.embeddings_path else "not configured"
        return record, "missing-embeddings", detail
    archive = load_archive(job.corpus_path)
    outcome, _ = evaluate_pipeline_run(
        archive, job.embeddings_path, plan.pipeline, plan.options
    )
    record = RunRecord(
        job.dataset, job.encoder, job.params,
        k=outcome.k, coherence=outcome.coherence, diversity=outcome.diversity,
        seed=plan.seed,
        div_jsd=outcome.divergences.get("jsd"),
        div_hellinger=outcome.divergences.get("hellinger"),
        div_cosine=outcome.divergences.get("cosine"),
        timestamp=_utc_now(),
    )
    return record, "ok", ""


def run_sweep(
    config_path: str | Path, out_dir: str | Path, workers: int = 1
) -> list[RunRecord]:
    """Evaluate every (dataset, encoder) pair; resumable via the journal.

    Completed pairs found in ``journal.jsonl`` are skipped. Missing
    embedding files produce a gap record (empty score cells), never a
    failure. The final ``records.csv`` is rewritten from the full journal
    and is byte-stable for a fixed config and seed.
    """
    plan = parse_sweep_config(config_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    journal_path = out_dir / "journal.jsonl"

    done: set[tuple[str, str]] = set()
    if journal_path.exists():
        done = {r.key() for r in read_journal(journal_path)}
    pending = [j for j in plan.jobs if (j.dataset, j.encoder) not in done]

    with open(journal_path, "a", encoding="utf-8") as journal:
        def finish(result: tuple[RunRecord, str, str]) -> None:
            record, status, detail = result
            journal.write(_journal_entry(record, status, detail) + "\n")
            journal.flush()

        if workers <= 1:
            for job in pending:
                finish(_run_job(job, plan))
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for result in pool.map(lambda j: _run_job(j, plan), pending):
                    finish(result)

    records = read_journal(journal_path)
    write_records_csv(out_dir / "records.csv", records)
    return records
