/**
 * CLI: render <spec.json> [more-specs...]
 *
 * Exit codes mirror the primary tool: 0 rendered, 1 schema/content failure
 * (including a stated column diff), 2 usage error.
 */

import { readFileSync, writeFileSync } from "fs";
import { SchemaMismatchError } from "./csv.js";
import { figureSpecSchema, renderFigure } from "./figures.js";

export function renderSpecFile(path: string): string {
  const parsed = figureSpecSchema.safeParse(JSON.parse(readFileSync(path, "utf-8")));
  if (!parsed.success) {
    throw new Error(`invalid figure spec ${path}: ${parsed.error.issues.map((i) => i.message).join("; ")}`);
  }
  const spec = parsed.data;
  if (!spec.output.endsWith(".svg")) {
    throw new Error(`unsupported output format for ${spec.output}: this renderer emits SVG only`);
  }
  const csvText = readFileSync(spec.input_csv, "utf-8");
  const svg = renderFigure(spec, csvText);
  writeFileSync(spec.output, svg, "utf-8");
  return spec.output;
}

export function main(argv: string[]): number {
  if (argv.length === 0) {
    console.error("usage: render <figure-spec.json> [...]");
    return 2;
  }
  for (const path of argv) {
    try {
      const out = renderSpecFile(path);
      console.log(`wrote ${out}`);
    } catch (err) {
      if (err instanceof SchemaMismatchError) {
        console.error(err.message);
        return 1;
      }
      if (err instanceof Error && err.message.startsWith("usage")) {
        console.error(err.message);
        return 2;
      }
      console.error(err instanceof Error ? err.message : String(err));
      return (err as NodeJS.ErrnoException)?.code === "ENOENT" ? 2 : 1;
    }
  }
  return 0;
}
