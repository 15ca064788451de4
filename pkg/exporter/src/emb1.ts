// EMB1 container I/O.
//
// Layout (little-endian): magic "EMB1", u32 version=1, u64 n_docs,
// u32 dim, u8 dtype (1 = float32), 3 zero pad bytes, n_docs*dim
// float32 row-major payload, u32 CRC-32 of the payload bytes.
// Sidecar "<path>.ids" holds one {"id": string} JSON line per row.

import { crc32 } from "node:zlib";
import { readFileSync, writeFileSync } from "node:fs";

export const MAGIC = Buffer.from("EMB1", "ascii");
export const VERSION = 1;
export const DTYPE_F32 = 1;
const HEADER_SIZE = 24;

export interface Emb1File {
  nDocs: number;
  dim: number;
  rows: Float32Array; // row-major, nDocs * dim
  ids: string[];
}

export function sidecarPath(path: string): string {
  return path + ".ids";
}

export function writeEmb1(path: string, emb: Emb1File): void {
  if (emb.ids.length !== emb.nDocs) {
    throw new Error(`ids length ${emb.ids.length} != nDocs ${emb.nDocs}`);
  }
  if (emb.rows.length !== emb.nDocs * emb.dim) {
    throw new Error(`payload length ${emb.rows.length} != nDocs*dim`);
  }
  const header = Buffer.alloc(HEADER_SIZE);
  MAGIC.copy(header, 0);
  header.writeUInt32LE(VERSION, 4);
  header.writeBigUInt64LE(BigInt(emb.nDocs), 8);
  header.writeUInt32LE(emb.dim, 16);
  header.writeUInt8(DTYPE_F32, 20);
  const payload = Buffer.from(emb.rows.buffer, emb.rows.byteOffset, emb.rows.byteLength);
  const trailer = Buffer.alloc(4);
  trailer.writeUInt32LE(crc32(payload) >>> 0, 0);
  writeFileSync(path, Buffer.concat([header, payload, trailer]));
  const lines = emb.ids.map((id) => JSON.stringify({ id })).join("\n");
  writeFileSync(sidecarPath(path), lines + "\n");
}

export function readEmb1(path: string): Emb1File {
  const raw = readFileSync(path);
  if (raw.length < HEADER_SIZE) throw new Error(`${path}: truncated header`);
  if (!raw.subarray(0, 4).equals(MAGIC)) throw new Error(`${path}: bad magic`);
  const version = raw.readUInt32LE(4);
  if (version !== VERSION) throw new Error(`${path}: unsupported version ${version}`);
  const nDocs = Number(raw.readBigUInt64LE(8));
  const dim = raw.readUInt32LE(16);
  const dtype = raw.readUInt8(20);
  if (dtype !== DTYPE_F32) throw new Error(`${path}: unsupported dtype ${dtype}`);
  const need = HEADER_SIZE + nDocs * dim * 4 + 4;
  if (raw.length < need) throw new Error(`${path}: truncated payload`);
  const payload = raw.subarray(HEADER_SIZE, HEADER_SIZE + nDocs * dim * 4);
  const stored = raw.readUInt32LE(HEADER_SIZE + payload.length);
  const actual = crc32(payload) >>> 0;
  if (stored !== actual) {
    throw new Error(`${path}: checksum mismatch (${actual} != ${stored})`);
  }
  // copy so the view is aligned and independent of the file buffer
  const rows = new Float32Array(nDocs * dim);
  for (let i = 0; i < rows.length; i++) rows[i] = payload.readFloatLE(i * 4);

  let ids: string[];
  try {
    ids = readFileSync(sidecarPath(path), "utf-8")
      .split("\n")
      .filter((l) => l.trim().length > 0)
      .map((l) => String(JSON.parse(l).id));
  } catch {
    ids = Array.from({ length: nDocs }, (_, i) => String(i));
  }
  if (ids.length !== nDocs) {
    throw new Error(`${path}: ${ids.length} sidecar ids for ${nDocs} rows`);
  }
  return { nDocs, dim, rows, ids };
}

export function row(emb: Emb1File, i: number): Float32Array {
  return emb.rows.subarray(i * emb.dim, (i + 1) * emb.dim);
}

export function cosine(a: Float32Array, b: Float32Array): number {
  let dot = 0;
  let na = 0;
  let nb = 0;
  for (let i = 0; i < a.length; i++) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na === 0 || nb === 0) return 0;
  return dot / Math.sqrt(na * nb);
}
