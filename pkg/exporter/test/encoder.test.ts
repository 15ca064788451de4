import { describe, expect, it } from "vitest";

import { cosine } from "../src/emb1.js";
import {
  ENCODERS,
  EncoderUnavailable,
  LocalEncoder,
  quantizeDequantize8bit,
  resolveEncoder,
  tokenizeText,
} from "../src/encoder.js";

const MINILM = resolveEncoder("all-minilm-l6-v2");

describe("encoder registry", () => {
  it("knows the seven encoders with their dimensions", () => {
    expect(Object.keys(ENCODERS)).toHaveLength(7);
    expect(resolveEncoder("ALL-MiniLM-L6-V2").dim).toBe(384);
    expect(resolveEncoder("llama-2-13b").dim).toBe(5120);
    expect(resolveEncoder("bert-base-uncased").params).toBe(110_000_000);
  });

  it("raises for unknown encoders", () => {
    expect(() => resolveEncoder("gpt-17-enormous")).toThrow(EncoderUnavailable);
  });
});

describe("local backend", () => {
  it("is deterministic: same text, same vector", () => {
    const a = new LocalEncoder(MINILM);
    const b = new LocalEncoder(MINILM);
    const va = a.encode("The cat sat on the mat.");
    const vb = b.encode("The cat sat on the mat.");
    expect(va).toEqual(vb);
    expect(va).toHaveLength(384);
  });

  it("distinguishes encoders by name", () => {
    const a = new LocalEncoder(resolveEncoder("all-minilm-l6-v2")).encode("hello world");
    const b = new LocalEncoder(resolveEncoder("minilm-l12-h384-uncased")).encode("hello world");
    expect(cosine(a, b)).toBeLessThan(0.99);
  });

  it("produces unit-norm vectors and zero for empty text", () => {
    const enc = new LocalEncoder(MINILM);
    const v = enc.encode("some meaningful words here");
    let norm = 0;
    for (const x of v) norm += x * x;
    expect(Math.sqrt(norm)).toBeCloseTo(1, 5);
    expect(Array.from(enc.encode("123 456 !!!"))).toEqual(new Array(384).fill(0));
  });

  it("similar bags of words land closer than disjoint ones", () => {
    const enc = new LocalEncoder(MINILM);
    const a = enc.encode("orbit shuttle launch rocket orbit shuttle");
    const b = enc.encode("orbit shuttle launch rocket gravity");
    const c = enc.encode("pitcher inning batter dugout bullpen");
    expect(cosine(a, b)).toBeGreaterThan(cosine(a, c));
  });

  it("tokenizes like the downstream pipeline expects", () => {
    expect(tokenizeText("The cat, the CAT! 2024")).toEqual(["the", "cat", "the", "cat"]);
  });
});

describe("8-bit quantization", () => {
  it("keeps per-row error within the int8 step", () => {
    const rows = 5;
    const cols = 16;
    const w = new Float64Array(rows * cols);
    for (let i = 0; i < w.length; i++) w[i] = Math.sin(i * 1.7) * (1 + (i % 3));
    const orig = Float64Array.from(w);
    quantizeDequantize8bit(w, rows, cols);
    for (let r = 0; r < rows; r++) {
      let maxAbs = 0;
      for (let c = 0; c < cols; c++) maxAbs = Math.max(maxAbs, Math.abs(orig[r * cols + c]));
      const step = maxAbs / 127;
      for (let c = 0; c < cols; c++) {
        expect(Math.abs(w[r * cols + c] - orig[r * cols + c])).toBeLessThanOrEqual(step / 2 + 1e-12);
      }
    }
  });

  it("perturbs embeddings only slightly", () => {
    const full = new LocalEncoder(MINILM, false);
    const quant = new LocalEncoder(MINILM, true);
    const text = "orbit shuttle launch rocket gravity mission payload";
    const sim = cosine(full.encode(text), quant.encode(text));
    expect(sim).toBeGreaterThan(0.99);
    expect(sim).toBeLessThan(1.0); // the paths genuinely differ
  });
});
