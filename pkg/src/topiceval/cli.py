"""topiceval command line: preprocess corpora, fit models, score topics.

Subcommands: preprocess, lda, nmf, pipeline, coherence, diversity,
evaluate, sweep, report. Exit codes: 0 success, 1 usage error, 2 data
error, 3 internal error. ``TOPICEVAL_SEED`` overrides the built-in
default seed; an explicit ``--seed`` wins over both.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import traceback
from pathlib import Path

import numpy as np

from . import bench
from .coherence import CoherenceConfig, aggregate_mean, score_topics
from .corpusio import FORMATS, build_archive, load_archive, read_documents, write_archive
from .cooccurrence import count_document_stats, count_window_stats, dump_stats_csv
from .divergence import avg_pairwise_divergence, unique_word_diversity
from .embeddings import load_embeddings
from .errors import TopicEvalError
from .lda import LdaConfig, lda_fit, lda_topic_set
from .nmf import nmf_fit, nmf_topic_set
from .pipeline import CLUSTERERS, PipelineConfig, run_pipeline
from .preprocessing import TokenizerConfig, load_default_stopwords, tfidf
from .records import read_records_csv, summarize, write_records_csv, write_summary_csv, write_figure_csv

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_SEED = 42


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def resolve_seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("TOPICEVAL_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"TOPICEVAL_SEED must be an integer, got {env!r}") from exc
    return DEFAULT_SEED


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


# --------------------------------------------------------------------------
# preprocess
# --------------------------------------------------------------------------


def _tokenizer_config(args) -> TokenizerConfig:
    if args.stopwords == "default":
        stopwords = load_default_stopwords()
    elif args.stopwords == "none":
        stopwords = frozenset()
    else:
        words = Path(args.stopwords).read_text("utf-8").split()
        stopwords = frozenset(w.lower() for w in words)
    return TokenizerConfig(
        lowercase=not args.no_lowercase,
        strip_punctuation=not args.keep_punctuation,
        min_token_len=args.min_len,
        max_token_len=args.max_len,
        alphabetic_only=not args.keep_nonalpha,
        stopwords=stopwords,
    )


def cmd_preprocess(args) -> None:
    records = read_documents(args.input, args.format, args.text_column)
    archive = build_archive(records, _tokenizer_config(args))
    write_archive(args.out, archive)
    _emit(
        {
            "out": str(args.out),
            "n_docs": len(archive.sequences),
            "vocab_size": len(archive.vocab),
            "n_tokens": sum(len(s) for s in archive.sequences),
        },
        None,
    )


# --------------------------------------------------------------------------
# models
# --------------------------------------------------------------------------


def cmd_lda(args) -> None:
    archive = load_archive(args.corpus)
    seed = resolve_seed(args.seed)
    cfg = LdaConfig(k=args.k, alpha=args.alpha, beta=args.beta,
                    sweeps=args.sweeps, seed=seed)
    state = lda_fit(archive.to_bow(), cfg)
    ts = lda_topic_set(state, args.topn)
    doc = bench.topic_set_to_json(
        "lda", ts, archive.vocab, seed, include_dists=not args.no_dists
    )
    _emit(doc, args.out)


def cmd_nmf(args) -> None:
    archive = load_archive(args.corpus)
    seed = resolve_seed(args.seed)
    bow = archive.to_bow()
    if args.weighting == "tfidf":
        v = tfidf(bow).toarray()
    else:
        v = np.zeros((len(bow.docs), len(bow.vocab)))
        for d, doc in enumerate(bow.docs):
            for tid, cnt in doc:
                v[d, tid] = cnt
    factors = nmf_fit(v, k=args.k, iters=args.iters, tol=args.tol, seed=seed)
    ts = nmf_topic_set(factors, args.topn)
    doc = bench.topic_set_to_json(
        "nmf", ts, archive.vocab, seed, include_dists=not args.no_dists,
        metadata={"final_error": factors.objective_trace[-1],
                  "iterations": len(factors.objective_trace) - 1},
    )
    _emit(doc, args.out)


def cmd_pipeline(args) -> None:
    archive = load_archive(args.corpus)
    seed = resolve_seed(args.seed)
    cfg = PipelineConfig(
        reduce_dim=args.reduce_dim,
        clusterer=args.clusterer,
        min_cluster_size=args.min_cluster_size,
        min_samples=args.min_samples,
        n_clusters=args.k,
        top_n=args.topn,
        seed=seed,
    )
    emb = load_embeddings(args.embeddings, args.ids)
    result = run_pipeline(archive.to_bow(), emb, cfg)
    doc = bench.topic_set_to_json(
        "pipeline", result.topics, archive.vocab, seed,
        labels=[int(x) for x in result.assignment.labels],
        metadata=result.metadata,
        include_dists=not args.no_dists,
    )
    _emit(doc, args.out)


# --------------------------------------------------------------------------
# metrics
# --------------------------------------------------------------------------


def _coherence_config(args) -> CoherenceConfig:
    return CoherenceConfig(
        measure=args.measure,
        window_size=args.window,
        epsilon=args.epsilon,
        top_n=args.topn,
        cv_compare=args.cv_compare,
    )


def cmd_coherence(args) -> None:
    archive = load_archive(args.corpus)
    tf = bench.load_topics_file(args.topics)
    topics = bench.words_to_ids([w[: args.topn] for w in tf.words], archive.vocab)
    cfg = _coherence_config(args)
    options = bench.EvalOptions(coherence=cfg)
    sequences = archive.sequences
    bow = archive.to_bow()
    if tf.labels is not None:
        keep = [i for i, lab in enumerate(tf.labels) if lab >= 0]
        sequences = [sequences[i] for i in keep]
        bow.docs = [bow.docs[i] for i in keep]
        bow.doc_ids = None
    if args.dump_stats:
        words = {w for t in topics for w in t.words}
        if cfg.measure == "umass":
            stats = count_document_stats(bow, words)
        else:
            stats = count_window_stats(sequences, words, cfg.effective_window, cfg.window_step)
        with open(args.dump_stats, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(("word_i", "word_j", "joint", "occur_i", "occur_j", "n_virtual"))
            writer.writerows(dump_stats_csv(stats))
    per_topic = score_topics(topics, cfg, bow=bow, sequences=sequences)
    _emit(
        {
            "measure": cfg.measure,
            "window": None if cfg.measure == "umass" else cfg.effective_window,
            "mean": aggregate_mean(per_topic),
            "per_topic": per_topic,
        },
        args.out,
    )


def cmd_diversity(args) -> None:
    tf = bench.load_topics_file(args.topics)
    divergences = {}
    if tf.dists is not None and len(tf.dists) >= 2:
        for measure in ("jsd", "hellinger", "cosine"):
            divergences[measure] = avg_pairwise_divergence(tf.dists, measure).average
    if args.diversity == "unique":
        id_map: dict[str, int] = {}
        from .topics import Topic

        topics = []
        for words in tf.words:
            ids = [id_map.setdefault(w, len(id_map)) for w in words]
            topics.append(Topic(tuple(ids)))
        value = unique_word_diversity(topics, args.topn)
    elif args.diversity in divergences:
        value = divergences[args.diversity]
    else:
        raise TopicEvalError(
            "divergence-based diversity needs a topics file with 'dists'"
        )
    _emit(
        {
            "measure": args.diversity,
            "diversity": value,
            "k": len(tf.words),
            "divergences": divergences,
        },
        args.out,
    )


# --------------------------------------------------------------------------
# evaluate / sweep / report
# --------------------------------------------------------------------------


def cmd_evaluate(args) -> None:
    if (args.topics is None) == (args.embeddings is None):
        raise TopicEvalError("evaluate needs exactly one of --topics or --embeddings")
    archive = load_archive(args.corpus)
    seed = resolve_seed(args.seed)
    options = bench.EvalOptions(
        coherence=_coherence_config(args),
        diversity_measure=args.diversity,
        diversity_top_n=args.topn,
    )
    if args.topics is not None:
        tf = bench.load_topics_file(args.topics)
        topics = bench.words_to_ids([w[: args.topn] for w in tf.words], archive.vocab)
        outcome = bench.evaluate_topics(
            archive, topics, options, dists=tf.dists, labels=tf.labels
        )
    else:
        cfg = PipelineConfig(
            reduce_dim=args.reduce_dim,
            clusterer=args.clusterer,
            min_cluster_size=args.min_cluster_size,
            min_samples=args.min_samples,
            n_clusters=args.k,
            top_n=args.topn,
            seed=seed,
        )
        outcome, _ = bench.evaluate_pipeline_run(
            archive, args.embeddings, cfg, options, args.ids
        )
    record = bench.RunRecord(
        dataset=args.dataset,
        encoder=args.encoder,
        params=args.params,
        k=outcome.k,
        coherence=outcome.coherence,
        diversity=outcome.diversity,
        seed=seed,
        div_jsd=outcome.divergences.get("jsd"),
        div_hellinger=outcome.divergences.get("hellinger"),
        div_cosine=outcome.divergences.get("cosine"),
        timestamp=bench._utc_now(),
    )
    if args.out:
        write_records_csv(args.out, [record])
    print(json.dumps(record.to_json(), indent=2))


def cmd_sweep(args) -> None:
    records = bench.run_sweep(args.config, args.out_dir, args.workers)
    complete = sum(1 for r in records if r.complete)
    print(
        json.dumps(
            {
                "records": len(records),
                "complete": complete,
                "gaps": len(records) - complete,
                "records_csv": str(Path(args.out_dir) / "records.csv"),
            },
            indent=2,
        )
    )


def cmd_report(args) -> None:
    records = read_records_csv(args.records)
    summaries = summarize(records)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_summary_csv(out_dir / "summary.csv", summaries)
    write_figure_csv(out_dir / "figure.csv", summaries)
    if not args.no_plot:
        from .plotting import render_coherence_figure

        render_coherence_figure(out_dir / "figure.png", summaries)
    width = max(len(s.encoder) for s in summaries)
    print(f"{'encoder':<{width}}  {'params':>14}  {'n':>3}  {'mean':>8}  {'std':>8}")
    for s in summaries:
        print(
            f"{s.encoder:<{width}}  {s.params:>14}  {s.n:>3}  "
            f"{s.mean_coherence:>8.4f}  {s.std_coherence:>8.4f}"
        )


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _add_tokenizer_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--min-len", type=int, default=2, help="minimum token length")
    p.add_argument("--max-len", type=int, default=15, help="maximum token length")
    p.add_argument("--keep-nonalpha", action="store_true",
                   help="keep tokens containing digits")
    p.add_argument("--no-lowercase", action="store_true")
    p.add_argument("--keep-punctuation", action="store_true",
                   help="split on whitespace only")
    p.add_argument("--stopwords", default="default",
                   help="'default', 'none' or a path to a stopword file")


def _add_measure_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--measure", choices=("umass", "c_npmi", "c_v"), default="c_v")
    p.add_argument("--window", type=int, default=None,
                   help="window size in tokens (default: 110 for c_v, 70 for c_npmi)")
    p.add_argument("--epsilon", type=float, default=1e-12)
    p.add_argument("--cv-compare", choices=("mean", "wstar_sum"), default="mean")


def _add_pipeline_flags(p: argparse.ArgumentParser, require_embeddings: bool) -> None:
    p.add_argument("--embeddings", required=require_embeddings,
                   help="EMB1 embedding container")
    p.add_argument("--ids", default=None, help="sidecar id file (default: <embeddings>.ids)")
    p.add_argument("--reduce-dim", type=int, default=5)
    p.add_argument("--clusterer", choices=CLUSTERERS, default="hdbscan")
    p.add_argument("--min-cluster-size", type=int, default=10)
    p.add_argument("--min-samples", type=int, default=None)
    p.add_argument("--k", type=int, default=10, help="cluster count for kmeans")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="topiceval", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", parents=[], help="tokenize a corpus into an archive")
    p.add_argument("--input", required=True)
    p.add_argument("--format", required=True, choices=FORMATS)
    p.add_argument("--text-column", default="text")
    p.add_argument("--out", required=True)
    _add_tokenizer_flags(p)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("lda", help="fit LDA by collapsed Gibbs sampling")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--alpha", type=float, default=None, help="default: 50/k")
    p.add_argument("--beta", type=float, default=0.01)
    p.add_argument("--sweeps", type=int, default=200)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--topn", type=int, default=10)
    p.add_argument("--no-dists", action="store_true", help="omit full distributions")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lda)

    p = sub.add_parser("nmf", help="fit NMF by multiplicative updates")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--weighting", choices=("tfidf", "counts"), default="tfidf")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--topn", type=int, default=10)
    p.add_argument("--no-dists", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_nmf)

    p = sub.add_parser("pipeline", help="embed -> reduce -> cluster -> c-TF-IDF topics")
    p.add_argument("--corpus", required=True)
    _add_pipeline_flags(p, require_embeddings=True)
    p.add_argument("--topn", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-dists", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("coherence", help="score a topics file against a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--topics", required=True)
    p.add_argument("--topn", type=int, default=10)
    _add_measure_flags(p)
    p.add_argument("--dump-stats", default=None,
                   help="write word/pair counts as CSV for debugging")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_coherence)

    p = sub.add_parser("diversity", help="score topic diversity from a topics file")
    p.add_argument("--topics", required=True)
    p.add_argument("--diversity", choices=bench.DIVERSITY_MEASURES, default="unique")
    p.add_argument("--topn", type=int, default=10)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_diversity)

    p = sub.add_parser("evaluate", help="one (dataset, encoder) run record")
    p.add_argument("--corpus", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--encoder", required=True)
    p.add_argument("--params", type=int, required=True,
                   help="declared encoder parameter count")
    p.add_argument("--topics", default=None, help="score an existing topics file")
    _add_pipeline_flags(p, require_embeddings=False)
    p.add_argument("--topn", type=int, default=10)
    _add_measure_flags(p)
    p.add_argument("--diversity", choices=bench.DIVERSITY_MEASURES, default="unique")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="write the record as CSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="evaluate a dataset x encoder cross product")
    p.add_argument("--config", required=True, help="sweep TOML")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="aggregate run records per encoder")
    p.add_argument("--records", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse --help or usage error
        return int(exc.code or 0)
    try:
        args.func(args)
        return EXIT_OK
    except ValueError as exc:
        print(f"topiceval: invalid parameter: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TopicEvalError, OSError) as exc:
        print(f"topiceval: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception:
        print("topiceval: internal error", file=sys.stderr)
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
