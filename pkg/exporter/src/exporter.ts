// Export orchestration: read a corpus, encode it in batches, write EMB1.

import { LocalEncoder, resolveEncoder } from "./encoder.js";
import { readCorpus, type CorpusFormat } from "./corpus.js";
import { writeEmb1 } from "./emb1.js";

export interface ExportJob {
  input: string;
  format: CorpusFormat;
  textColumn?: string;
  encoder: string;
  out: string;
  quantize8bit?: boolean;
  batchSize?: number;
  onBatch?: (done: number, total: number) => void;
}

export interface ExportResult {
  nDocs: number;
  dim: number;
  encoder: string;
  quantized: boolean;
  out: string;
}

export function runExport(job: ExportJob): ExportResult {
  const spec = resolveEncoder(job.encoder);
  const docs = readCorpus(job.input, job.format, job.textColumn ?? "text");
  if (docs.length === 0) throw new Error(`${job.input}: no documents to export`);
  const encoder = new LocalEncoder(spec, job.quantize8bit ?? false);
  const batch = Math.max(1, job.batchSize ?? 32);

  const rows = new Float32Array(docs.length * spec.dim);
  for (let start = 0; start < docs.length; start += batch) {
    const end = Math.min(start + batch, docs.length);
    for (let i = start; i < end; i++) {
      rows.set(encoder.encode(docs[i].text), i * spec.dim);
    }
    job.onBatch?.(end, docs.length);
  }

  writeEmb1(job.out, {
    nDocs: docs.length,
    dim: spec.dim,
    rows,
    ids: docs.map((d) => d.id),
  });
  return {
    nDocs: docs.length,
    dim: spec.dim,
    encoder: spec.name,
    quantized: job.quantize8bit ?? false,
    out: job.out,
  };
}
