"""Dataset loaders and the preprocessed-corpus archive.

Three input shapes are supported, one document per record: a directory
of plain-text files (one file = one document), a CSV with a named text
column, and JSON-lines with a ``"text"`` field. Records keep their
natural order (directory entries are sorted by name) so preprocessing is
deterministic.

The archive (``.tpc``) is a JSON header followed by a binary payload of
ordered token-id sequences:

    magic   4 bytes  "TPC1"
    hlen    u32 LE   header length in bytes
    header  UTF-8 JSON: version, n_docs, vocab, doc_freq, doc_ids,
            payload_crc32
    payload per document: u32 LE token count, then that many u32 LE ids

Token order is preserved because sliding-window statistics need it; the
bag-of-words view is derived on load.
"""

from __future__ import annotations

import csv
import json
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyCorpus, TruncatedFile, UnknownFormat, UnreadableInput
from .preprocessing import (
    BowCorpus,
    TokenizerConfig,
    Vocabulary,
    build_vocabulary,
    doc2bow,
    tokenize,
)

FORMATS = ("dir", "csv", "jsonl")
MAGIC = b"TPC1"


def read_documents(
    path: str | Path, fmt: str, text_column: str = "text"
) -> list[tuple[str, str]]:
    """Load raw documents as (id, text) pairs."""
    if fmt not in FORMATS:
        raise UnknownFormat(f"unknown corpus format {fmt!r}; expected one of {FORMATS}")
    path = Path(path)
    if not path.exists():
        raise UnreadableInput(f"{path}: no such file or directory")
    try:
        if fmt == "dir":
            return _read_dir(path)
        if fmt == "csv":
            return _read_csv(path, text_column)
        return _read_jsonl(path)
    except (OSError, UnicodeError) as exc:
        raise UnreadableInput(f"{path}: {exc}") from exc


def _read_dir(path: Path) -> list[tuple[str, str]]:
    if not path.is_dir():
        raise UnreadableInput(f"{path}: not a directory")
    out = []
    for p in sorted(path.rglob("*")):
        if p.is_file():
            out.append((str(p.relative_to(path)), p.read_text("utf-8", errors="replace")))
    return out


def _read_csv(path: Path, text_column: str) -> list[tuple[str, str]]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or text_column not in reader.fieldnames:
            raise UnknownFormat(
                f"{path}: CSV has no {text_column!r} column "
                f"(found {reader.fieldnames})"
            )
        has_id = "id" in reader.fieldnames
        for i, row in enumerate(reader):
            doc_id = row["id"] if has_id else str(i)
            out.append((doc_id, row[text_column] or ""))
    return out


def _read_jsonl(path: Path) -> list[tuple[str, str]]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for i, line in enumerate(fh):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise UnknownFormat(f"{path}:{i + 1}: invalid JSON: {exc}") from exc
            if "text" not in rec:
                raise UnknownFormat(f"{path}:{i + 1}: record has no 'text' field")
            out.append((str(rec.get("id", i)), rec["text"]))
    return out


@dataclass
class CorpusArchive:
    """A tokenized corpus: vocabulary plus ordered token-id sequences."""

    vocab: Vocabulary
    sequences: list[list[int]]
    doc_ids: list[str]

    def to_bow(self) -> BowCorpus:
        docs = []
        for seq in self.sequences:
            counts: dict[int, int] = {}
            for tid in seq:
                counts[tid] = counts.get(tid, 0) + 1
            docs.append(sorted(counts.items()))
        return BowCorpus(docs, self.vocab, list(self.doc_ids))


def build_archive(
    records: list[tuple[str, str]], cfg: TokenizerConfig = TokenizerConfig()
) -> CorpusArchive:
    """Tokenize records and assemble vocabulary + id sequences."""
    if not records:
        raise EmptyCorpus("no input documents")
    doc_ids = [rid for rid, _ in records]
    token_docs = [tokenize(text, cfg) for _, text in records]
    vocab = build_vocabulary(token_docs)
    sequences = [[vocab.id_of[t] for t in toks] for toks in token_docs]
    return CorpusArchive(vocab, sequences, doc_ids)


def write_archive(path: str | Path, archive: CorpusArchive) -> None:
    chunks = []
    for seq in archive.sequences:
        chunks.append(struct.pack("<I", len(seq)))
        chunks.append(struct.pack(f"<{len(seq)}I", *seq))
    payload = b"".join(chunks)
    header = json.dumps(
        {
            "version": 1,
            "n_docs": len(archive.sequences),
            "vocab": archive.vocab.token_of,
            "doc_freq": archive.vocab.doc_freq,
            "doc_ids": archive.doc_ids,
            "payload_crc32": zlib.crc32(payload) & 0xFFFFFFFF,
        },
        ensure_ascii=False,
        separators=(",", ":"),
    ).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", len(header)))
        fh.write(header)
        fh.write(payload)


def load_archive(path: str | Path) -> CorpusArchive:
    raw = Path(path).read_bytes()
    if len(raw) < 8 or raw[:4] != MAGIC:
        raise UnknownFormat(f"{path}: not a corpus archive (bad magic)")
    (hlen,) = struct.unpack_from("<I", raw, 4)
    if len(raw) < 8 + hlen:
        raise TruncatedFile(f"{path}: truncated header")
    header = json.loads(raw[8: 8 + hlen].decode("utf-8"))
    payload = raw[8 + hlen:]
    if zlib.crc32(payload) & 0xFFFFFFFF != header["payload_crc32"]:
        raise TruncatedFile(f"{path}: payload checksum mismatch")
    tokens = header["vocab"]
    vocab = Vocabulary(
        id_of={t: i for i, t in enumerate(tokens)},
        token_of=tokens,
        doc_freq=header["doc_freq"],
        n_docs=header["n_docs"],
    )
    sequences = []
    off = 0
    for _ in range(header["n_docs"]):
        if off + 4 > len(payload):
            raise TruncatedFile(f"{path}: truncated payload")
        (n,) = struct.unpack_from("<I", payload, off)
        off += 4
        if off + 4 * n > len(payload):
            raise TruncatedFile(f"{path}: truncated payload")
        sequences.append(list(struct.unpack_from(f"<{n}I", payload, off)))
        off += 4 * n
    return CorpusArchive(vocab, sequences, header["doc_ids"])
