"""EMB1 container I/O for dense document embeddings.

Layout (all little-endian):

    magic   4 bytes  "EMB1"
    version u32      1
    n_docs  u64
    dim     u32
    dtype   u8       1 = IEEE-754 float32
    pad     3 bytes  zero
    payload n_docs * dim * 4 bytes, row-major float32
    crc     u32      CRC-32 of the payload bytes

A sidecar JSON-lines file holds one ``{"id": <string>}`` record per row,
in row order; by convention it lives next to the container at
``<path>.ids``.
"""

from __future__ import annotations

import json
import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    BadMagic,
    ChecksumMismatch,
    EmptyEmbeddings,
    NonFiniteValue,
    TruncatedFile,
)

MAGIC = b"EMB1"
VERSION = 1
DTYPE_F32 = 1
_HEADER = struct.Struct("<4sIQIB3x")


@dataclass
class EmbeddingMatrix:
    """Row-major document embeddings aligned with ``doc_ids``."""

    data: np.ndarray  # n_docs x dim, float32 or float64
    doc_ids: list[str]

    def __post_init__(self) -> None:
        if self.data.ndim != 2:
            raise ValueError("embedding data must be 2-D")
        if len(self.doc_ids) != self.data.shape[0]:
            raise ValueError("doc_ids must align with rows")

    @property
    def n_docs(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return self.data.shape[1]


def sidecar_path(path: str | Path) -> Path:
    return Path(str(path) + ".ids")


def write_embeddings(path: str | Path, emb: EmbeddingMatrix) -> None:
    """Write the container and its sidecar id file."""
    data = np.ascontiguousarray(emb.data, dtype="<f4")
    payload = data.tobytes()
    header = _HEADER.pack(MAGIC, VERSION, emb.n_docs, emb.dim, DTYPE_F32)
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)
        fh.write(struct.pack("<I", crc))
    with open(sidecar_path(path), "w", encoding="utf-8") as fh:
        for doc_id in emb.doc_ids:
            fh.write(json.dumps({"id": doc_id}) + "\n")


def load_embeddings(path: str | Path, ids_path: str | Path | None = None) -> EmbeddingMatrix:
    """Read a container, verifying magic, version, checksum and finiteness.

    Doc ids come from ``ids_path`` (default: ``<path>.ids``); if no sidecar
    exists, ids fall back to the row index as a string.
    """
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise TruncatedFile(f"{path}: shorter than the fixed header")
    magic, version, n_docs, dim, dtype = _HEADER.unpack_from(raw)
    if magic != MAGIC:
        raise BadMagic(f"{path}: expected {MAGIC!r}, found {magic!r}")
    if version != VERSION:
        raise BadMagic(f"{path}: unsupported version {version}")
    if dtype != DTYPE_F32:
        raise BadMagic(f"{path}: unsupported dtype code {dtype}")
    if n_docs == 0:
        raise EmptyEmbeddings(f"{path}: container declares zero documents")
    if dim == 0:
        raise TruncatedFile(f"{path}: container declares zero dimensions")
    need = _HEADER.size + n_docs * dim * 4 + 4
    if len(raw) < need:
        raise TruncatedFile(f"{path}: need {need} bytes, found {len(raw)}")
    payload = raw[_HEADER.size: _HEADER.size + n_docs * dim * 4]
    (crc_stored,) = struct.unpack_from("<I", raw, _HEADER.size + len(payload))
    crc = zlib.crc32(payload) & 0xFFFFFFFF
    if crc != crc_stored:
        raise ChecksumMismatch(f"{path}: payload CRC {crc:#010x} != stored {crc_stored:#010x}")
    data = np.frombuffer(payload, dtype="<f4").reshape(n_docs, dim)
    if not np.isfinite(data).all():
        raise NonFiniteValue(f"{path}: payload contains NaN or infinity")

    sidecar = Path(ids_path) if ids_path is not None else sidecar_path(path)
    if sidecar.exists():
        doc_ids = []
        with open(sidecar, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    doc_ids.append(str(json.loads(line)["id"]))
        if len(doc_ids) != n_docs:
            raise TruncatedFile(
                f"{sidecar}: {len(doc_ids)} ids for {n_docs} embedding rows"
            )
    else:
        doc_ids = [str(i) for i in range(n_docs)]
    return EmbeddingMatrix(data.copy(), doc_ids)
