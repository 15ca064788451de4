// Sentence encoders backing the exporter.
//
// Pretrained transformer weights cannot be fetched or shipped here, so
// each named encoder maps to a deterministic local reference backend:
// token features come from a hash of the token string, pass through a
// small tanh layer and an output projection whose weights are generated
// by a PRNG seeded from the encoder name (the moral equivalent of fixed
// pretrained weights), and documents are mean-pooled over their tokens
// (only real tokens contribute; there is no padding to mask out) and
// L2-normalized. Embeddings are therefore reproducible everywhere, rows
// follow input order, and duplicate documents encode identically.
//
// --quantize-8bit stores both weight matrices as int8 with one scale per
// output row and runs inference on the dequantized values; activations
// stay float. Outputs differ slightly from the full-precision path, the
// way weight-only quantization behaves on real checkpoints.

export interface EncoderSpec {
  name: string;
  dim: number; // embedding dimension of the real model it stands in for
  params: number; // declared parameter count of the real model
  hidden: number; // width of the local backend
}

export const ENCODERS: Record<string, EncoderSpec> = {
  "all-minilm-l6-v2": { name: "all-minilm-l6-v2", dim: 384, params: 22_000_000, hidden: 64 },
  "minilm-l12-h384-uncased": { name: "minilm-l12-h384-uncased", dim: 384, params: 33_000_000, hidden: 64 },
  "distilbert-base-uncased": { name: "distilbert-base-uncased", dim: 768, params: 66_000_000, hidden: 64 },
  "bert-base-uncased": { name: "bert-base-uncased", dim: 768, params: 110_000_000, hidden: 64 },
  "roberta-base": { name: "roberta-base", dim: 768, params: 125_000_000, hidden: 64 },
  "llama-2-7b": { name: "llama-2-7b", dim: 4096, params: 7_000_000_000, hidden: 32 },
  "llama-2-13b": { name: "llama-2-13b", dim: 5120, params: 13_000_000_000, hidden: 32 },
};

export class EncoderUnavailable extends Error {}

export function resolveEncoder(name: string): EncoderSpec {
  const spec = ENCODERS[name.toLowerCase()];
  if (!spec) {
    throw new EncoderUnavailable(
      `encoder '${name}' is not available locally; known encoders: ${Object.keys(ENCODERS).join(", ")}`,
    );
  }
  return spec;
}

// --- deterministic number generation -------------------------------------

function fnv1a(text: string): number {
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193);
  }
  return h >>> 0;
}

/** splitmix32: tiny, seedable, good enough for weight generation. */
function splitmix32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x9e3779b9) >>> 0;
    let z = state;
    z = Math.imul(z ^ (z >>> 16), 0x21f0aaad);
    z = Math.imul(z ^ (z >>> 15), 0x735a2d97);
    z ^= z >>> 15;
    return (z >>> 0) / 4294967296;
  };
}

function gaussians(seed: number, n: number, scale: number): Float64Array {
  const rand = splitmix32(seed);
  const out = new Float64Array(n);
  for (let i = 0; i < n; i += 2) {
    const u = Math.max(rand(), 1e-12);
    const v = rand();
    const r = Math.sqrt(-2 * Math.log(u));
    out[i] = r * Math.cos(2 * Math.PI * v) * scale;
    if (i + 1 < n) out[i + 1] = r * Math.sin(2 * Math.PI * v) * scale;
  }
  return out;
}

// --- quantization ----------------------------------------------------------

/** Quantize a (rows x cols) matrix to int8 per-row and dequantize in place. */
export function quantizeDequantize8bit(w: Float64Array, rows: number, cols: number): void {
  for (let r = 0; r < rows; r++) {
    let maxAbs = 0;
    for (let c = 0; c < cols; c++) {
      const a = Math.abs(w[r * cols + c]);
      if (a > maxAbs) maxAbs = a;
    }
    if (maxAbs === 0) continue;
    const scale = maxAbs / 127;
    for (let c = 0; c < cols; c++) {
      const q = Math.round(w[r * cols + c] / scale);
      w[r * cols + c] = Math.max(-127, Math.min(127, q)) * scale;
    }
  }
}

// --- the backend -------------------------------------------------------------

const TOKEN_RE = /[a-zÀ-ɏ]+/g;

export function tokenizeText(text: string): string[] {
  return text.toLowerCase().match(TOKEN_RE) ?? [];
}

export class LocalEncoder {
  readonly spec: EncoderSpec;
  readonly quantized: boolean;
  private w1: Float64Array; // hidden x hidden
  private b1: Float64Array; // hidden
  private w2: Float64Array; // dim x hidden
  private tokenCache = new Map<string, Float64Array>();

  constructor(spec: EncoderSpec, quantize8bit = false) {
    this.spec = spec;
    this.quantized = quantize8bit;
    const h = spec.hidden;
    this.w1 = gaussians(fnv1a(spec.name + "/w1"), h * h, 1 / Math.sqrt(h));
    this.b1 = gaussians(fnv1a(spec.name + "/b1"), h, 0.1);
    this.w2 = gaussians(fnv1a(spec.name + "/w2"), spec.dim * h, 1 / Math.sqrt(h));
    if (quantize8bit) {
      quantizeDequantize8bit(this.w1, h, h);
      quantizeDequantize8bit(this.w2, spec.dim, h);
    }
  }

  private tokenVector(token: string): Float64Array {
    let cached = this.tokenCache.get(token);
    if (cached) return cached;
    const h = this.spec.hidden;
    const feat = gaussians(fnv1a("tok/" + token), h, 1);
    // hidden layer: x = tanh(W1 f + b1)
    const x = new Float64Array(h);
    for (let r = 0; r < h; r++) {
      let acc = this.b1[r];
      for (let c = 0; c < h; c++) acc += this.w1[r * h + c] * feat[c];
      x[r] = Math.tanh(acc);
    }
    // projection: y = W2 x
    const dim = this.spec.dim;
    const y = new Float64Array(dim);
    for (let r = 0; r < dim; r++) {
      let acc = 0;
      for (let c = 0; c < h; c++) acc += this.w2[r * h + c] * x[c];
      y[r] = acc;
    }
    cached = y;
    this.tokenCache.set(token, cached);
    return cached;
  }

  /** Mean-pooled, L2-normalized document embedding; empty text -> zeros. */
  encode(text: string): Float32Array {
    const dim = this.spec.dim;
    const out = new Float64Array(dim);
    const tokens = tokenizeText(text);
    if (tokens.length === 0) return new Float32Array(dim);
    for (const tok of tokens) {
      const y = this.tokenVector(tok);
      for (let i = 0; i < dim; i++) out[i] += y[i];
    }
    let norm = 0;
    for (let i = 0; i < dim; i++) {
      out[i] /= tokens.length;
      norm += out[i] * out[i];
    }
    norm = Math.sqrt(norm);
    const result = new Float32Array(dim);
    if (norm > 0) {
      for (let i = 0; i < dim; i++) result[i] = out[i] / norm;
    }
    return result;
  }
}
