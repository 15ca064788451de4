#!/usr/bin/env node
// topiceval-export: emit EMB1 embedding containers from raw corpora.

import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { ENCODERS, EncoderUnavailable } from "./encoder.js";
import { runExport } from "./exporter.js";
import type { CorpusFormat } from "./corpus.js";

await yargs(hideBin(process.argv))
  .scriptName("topiceval-export")
  .command(
    "export",
    "encode a corpus into an EMB1 container plus sidecar ids",
    (y) =>
      y
        .option("input", { type: "string", demandOption: true, describe: "corpus path" })
        .option("format", {
          choices: ["dir", "csv", "jsonl"] as const,
          demandOption: true,
        })
        .option("text-column", { type: "string", default: "text" })
        .option("encoder", {
          type: "string",
          demandOption: true,
          describe: `one of: ${Object.keys(ENCODERS).join(", ")}`,
        })
        .option("out", { type: "string", demandOption: true, describe: "output .emb path" })
        .option("quantize-8bit", { type: "boolean", default: false })
        .option("batch", { type: "number", default: 32 }),
    (argv) => {
      try {
        const result = runExport({
          input: argv.input,
          format: argv.format as CorpusFormat,
          textColumn: argv["text-column"],
          encoder: argv.encoder,
          out: argv.out,
          quantize8bit: argv["quantize-8bit"],
          batchSize: argv.batch,
          onBatch: (done, total) => {
            if (process.stderr.isTTY) process.stderr.write(`\rencoded ${done}/${total}`);
          },
        });
        if (process.stderr.isTTY) process.stderr.write("\n");
        console.log(JSON.stringify(result, null, 2));
      } catch (err) {
        const msg = err instanceof Error ? err.message : String(err);
        console.error(`topiceval-export: ${msg}`);
        process.exit(err instanceof EncoderUnavailable ? 2 : 1);
      }
    },
  )
  .demandCommand(1)
  .strict()
  .help()
  .parseAsync();
