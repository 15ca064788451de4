// Corpus readers: one document per record, natural order preserved
// (directory entries sorted by name so runs are deterministic).

import { readFileSync, readdirSync, statSync } from "node:fs";
import { join, relative } from "node:path";
import Papa from "papaparse";

export type CorpusFormat = "dir" | "csv" | "jsonl";

export interface DocRecord {
  id: string;
  text: string;
}

export function readCorpus(
  input: string,
  format: CorpusFormat,
  textColumn = "text",
): DocRecord[] {
  switch (format) {
    case "dir":
      return readDir(input);
    case "csv":
      return readCsv(input, textColumn);
    case "jsonl":
      return readJsonl(input);
    default:
      throw new Error(`unknown corpus format: ${format as string}`);
  }
}

function walk(root: string, dir: string, out: string[]): void {
  for (const name of readdirSync(dir).sort()) {
    const full = join(dir, name);
    if (statSync(full).isDirectory()) walk(root, full, out);
    else out.push(full);
  }
}

function readDir(input: string): DocRecord[] {
  const files: string[] = [];
  walk(input, input, files);
  files.sort((a, b) => (relative(input, a) < relative(input, b) ? -1 : 1));
  return files.map((f) => ({
    id: relative(input, f),
    text: readFileSync(f, "utf-8"),
  }));
}

function readCsv(input: string, textColumn: string): DocRecord[] {
  const parsed = Papa.parse<Record<string, string>>(readFileSync(input, "utf-8"), {
    header: true,
    skipEmptyLines: true,
    delimiter: ",",
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new Error(`${input}: CSV parse error at row ${e.row}: ${e.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  if (!fields.includes(textColumn)) {
    throw new Error(`${input}: CSV has no '${textColumn}' column (found ${fields.join(", ")})`);
  }
  const hasId = fields.includes("id");
  return parsed.data.map((row, i) => ({
    id: hasId ? row.id : String(i),
    text: row[textColumn] ?? "",
  }));
}

function readJsonl(input: string): DocRecord[] {
  const out: DocRecord[] = [];
  const lines = readFileSync(input, "utf-8").split("\n");
  let index = 0;
  for (const line of lines) {
    if (!line.trim()) continue;
    const rec = JSON.parse(line) as { id?: unknown; text?: unknown };
    if (typeof rec.text !== "string") {
      throw new Error(`${input}: record ${index} has no 'text' string field`);
    }
    out.push({ id: rec.id !== undefined ? String(rec.id) : String(index), text: rec.text });
    index++;
  }
  return out;
}
