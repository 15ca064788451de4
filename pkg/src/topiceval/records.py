"""Benchmark run records, their CSV/JSON serialization and aggregation.

The records CSV is the canonical deterministic artifact: rows are
stable-sorted by (dataset, encoder), floats use shortest round-trip
formatting and wall-clock timestamps are deliberately excluded (they
live in the JSON journal), so identical runs produce identical bytes.
Missing scores stay empty cells and are never imputed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import asdict, dataclass
from pathlib import Path

from .errors import EmptyRecords

CSV_COLUMNS = (
    "dataset", "encoder", "params", "k", "coherence", "diversity",
    "div_jsd", "div_hellinger", "div_cosine", "seed",
)


@dataclass
class RunRecord:
    dataset: str
    encoder: str
    params: int
    k: int | None
    coherence: float | None
    diversity: float | None  # the selected headline measure
    seed: int
    # divergence-based measures, emitted alongside whenever the topic
    # distributions were available
    div_jsd: float | None = None
    div_hellinger: float | None = None
    div_cosine: float | None = None
    timestamp: str = ""  # RFC-3339; JSON journal only

    def __post_init__(self) -> None:
        if self.params <= 0:
            raise ValueError("params must be positive")

    @property
    def complete(self) -> bool:
        return self.coherence is not None and self.diversity is not None

    def key(self) -> tuple[str, str]:
        return (self.dataset, self.encoder)

    def to_json(self) -> dict:
        return asdict(self)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))  # shortest round-trip; normalizes numpy scalars
    return str(value)


def write_records_csv(path: str | Path, records: list[RunRecord]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for r in sorted(records, key=RunRecord.key):
            writer.writerow(
                [r.dataset, r.encoder, r.params, _cell(r.k),
                 _cell(r.coherence), _cell(r.diversity), _cell(r.div_jsd),
                 _cell(r.div_hellinger), _cell(r.div_cosine), r.seed]
            )


def read_records_csv(path: str | Path) -> list[RunRecord]:
    records = []

    def opt_float(row: dict, column: str) -> float | None:
        value = row.get(column)
        return float(value) if value else None

    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            records.append(
                RunRecord(
                    dataset=row["dataset"],
                    encoder=row["encoder"],
                    params=int(row["params"]),
                    k=int(row["k"]) if row["k"] else None,
                    coherence=opt_float(row, "coherence"),
                    diversity=opt_float(row, "diversity"),
                    seed=int(row["seed"]),
                    div_jsd=opt_float(row, "div_jsd"),
                    div_hellinger=opt_float(row, "div_hellinger"),
                    div_cosine=opt_float(row, "div_cosine"),
                )
            )
    return records


@dataclass
class EncoderSummary:
    encoder: str
    params: int
    n: int  # present (scored) datasets
    mean_coherence: float
    std_coherence: float  # sample (n-1); 0 for a single record


def summarize(records: list[RunRecord]) -> list[EncoderSummary]:
    """Per-encoder coherence mean/std over present entries.

    Rows come back sorted by (params, encoder name) so emission order is
    independent of record order.
    """
    if not records:
        raise EmptyRecords("no run records to aggregate")
    by_encoder: dict[str, list[RunRecord]] = {}
    for r in records:
        by_encoder.setdefault(r.encoder, []).append(r)
    out = []
    for encoder, group in by_encoder.items():
        scores = sorted(r.coherence for r in group if r.coherence is not None)
        if not scores:
            continue
        n = len(scores)
        mean = math.fsum(scores) / n
        if n > 1:
            var = math.fsum((s - mean) ** 2 for s in scores) / (n - 1)
            std = math.sqrt(var)
        else:
            std = 0.0
        out.append(EncoderSummary(encoder, group[0].params, n, mean, std))
    if not out:
        raise EmptyRecords("no record carries a coherence score")
    return sorted(out, key=lambda s: (s.params, s.encoder))


def write_summary_csv(path: str | Path, summaries: list[EncoderSummary]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("encoder", "params", "n", "mean_coherence", "std_coherence"))
        for s in summaries:
            writer.writerow(
                [s.encoder, s.params, s.n, repr(s.mean_coherence), repr(s.std_coherence)]
            )


def write_figure_csv(path: str | Path, summaries: list[EncoderSummary]) -> None:
    """Figure data: model size versus mean coherence with error bars."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("params", "mean", "std"))
        for s in summaries:
            writer.writerow([s.params, repr(s.mean_coherence), repr(s.std_coherence)])
