/**
 * The three figure kinds over the primary tool's documented CSV schemas.
 * Every number drawn here is read from the CSV (or the figure spec); nothing
 * is recomputed.
 */

import { z } from "zod";
import { CsvTable, numericColumn, parseCsv, requireColumns } from "./csv.js";
import { SvgPlot, padDomain } from "./svg.js";

export const figureSpecSchema = z
  .object({
    input_csv: z.string(),
    kind: z.enum(["loglog-rate", "compensated-band", "error-decay"]),
    output: z.string(),
    annotations: z
      .object({
        fitted_exponent: z.number().optional(),
        claimed_exponent: z.number().optional(),
      })
      .strict()
      .optional(),
  })
  .strict();

export type FigureSpec = z.infer<typeof figureSpecSchema>;

export const RATE_COLUMNS = ["target", "n", "t", "value"];
export const SANDWICH_COLUMNS = ["claim", "t", "raw", "compensated", "lower", "upper", "pass"];
export const ERROR_COLUMNS = [
  "family",
  "n",
  "t",
  "delta",
  "low_err_sq",
  "high_err_sq",
  "total_err",
  "i0",
  "p1",
];

const FRAME = {
  width: 640,
  height: 420,
  margin: { top: 40, right: 90, bottom: 50, left: 70 },
};

function referenceLine(
  plot: SvgPlot,
  ts: number[],
  vs: number[],
  exponent: number,
  stroke: string,
): void {
  // anchored at the last sample so the guide hugs the data tail
  if (ts.length === 0) return;
  const t1 = ts[ts.length - 1];
  const v1 = vs[vs.length - 1];
  const t0 = ts[0];
  const v0 = v1 * Math.pow(t0 / t1, exponent);
  plot.polyline([t0, t1], [v0, v1], "gray", 'stroke-dasharray="3 3"');
}

export function renderLoglogRate(table: CsvTable, spec: FigureSpec): string {
  requireColumns(table, RATE_COLUMNS);
  const ts = numericColumn(table, "t");
  const vs = numericColumn(table, "value");
  const target = table.rows.length ? table.rows[0][0] : "value";
  const plot = new SvgPlot(
    {
      ...FRAME,
      xKind: "log",
      yKind: "log",
      xDomain: padDomain(ts, "log"),
      yDomain: padDomain(vs, "log"),
    },
    `${target} vs t (log-log)`,
  );
  plot.axes("t", target);
  plot.polyline(ts, vs, "steelblue");
  plot.markers(ts, vs, "steelblue");
  const ann = spec.annotations ?? {};
  let line = 0;
  if (ann.fitted_exponent !== undefined) {
    plot.note(`fitted slope ${ann.fitted_exponent.toFixed(4)}`, line++);
    referenceLine(plot, ts, vs, ann.fitted_exponent, "gray");
  }
  if (ann.claimed_exponent !== undefined) {
    plot.note(`claimed slope ${ann.claimed_exponent.toFixed(4)}`, line++);
    referenceLine(plot, ts, vs, ann.claimed_exponent, "dimgray");
  }
  return plot.render();
}

export function renderCompensatedBand(table: CsvTable, _spec: FigureSpec): string {
  requireColumns(table, SANDWICH_COLUMNS);
  const ts = numericColumn(table, "t");
  const comp = numericColumn(table, "compensated");
  const claim = table.rows.length ? table.rows[0][0] : "band";
  // the proven coefficients come from the CSV, never from this renderer
  const lower = table.rows.length ? Number(table.rows[0][4]) : NaN;
  const upper = table.rows.length ? Number(table.rows[0][5]) : NaN;
  const yVals = comp.concat(Number.isFinite(lower) ? [lower] : [], Number.isFinite(upper) ? [upper] : []);
  const plot = new SvgPlot(
    {
      ...FRAME,
      xKind: "log",
      yKind: "linear",
      xDomain: padDomain(ts, "log"),
      yDomain: padDomain(yVals, "linear"),
    },
    `${claim}: compensated values inside the proven band`,
  );
  plot.axes("t", "compensated value");
  if (Number.isFinite(lower))
    plot.hline(lower, "firebrick", `lower ${lower.toPrecision(6)}`, {
      role: "band-lower",
      coef: String(lower),
    });
  if (Number.isFinite(upper))
    plot.hline(upper, "firebrick", `upper ${upper.toPrecision(6)}`, {
      role: "band-upper",
      coef: String(upper),
    });
  plot.polyline(ts, comp, "steelblue");
  plot.markers(ts, comp, "steelblue");
  return plot.render();
}

export function renderErrorDecay(table: CsvTable, spec: FigureSpec): string {
  requireColumns(table, ERROR_COLUMNS);
  const ts = numericColumn(table, "t");
  const errs = numericColumn(table, "total_err");
  const family = table.rows.length ? table.rows[0][0] : "";
  const dim = table.rows.length ? table.rows[0][1] : "?";
  const plot = new SvgPlot(
    {
      ...FRAME,
      xKind: "log",
      yKind: "log",
      xDomain: padDomain(ts, "log"),
      yDomain: padDomain(errs, "log"),
    },
    `profile error decay (${family}, n=${dim})`,
  );
  plot.axes("t", "total error");
  plot.polyline(ts, errs, "seagreen");
  plot.markers(ts, errs, "seagreen");
  const ann = spec.annotations ?? {};
  let line = 0;
  if (ann.fitted_exponent !== undefined) {
    plot.note(`fitted slope ${ann.fitted_exponent.toFixed(4)}`, line++);
    referenceLine(plot, ts, errs, ann.fitted_exponent, "gray");
  }
  if (ann.claimed_exponent !== undefined) {
    plot.note(`claimed slope ${ann.claimed_exponent.toFixed(4)}`, line++);
    referenceLine(plot, ts, errs, ann.claimed_exponent, "dimgray");
  }
  return plot.render();
}

export function renderFigure(spec: FigureSpec, csvText: string): string {
  const table = parseCsv(csvText);
  switch (spec.kind) {
    case "loglog-rate":
      return renderLoglogRate(table, spec);
    case "compensated-band":
      return renderCompensatedBand(table, spec);
    case "error-decay":
      return renderErrorDecay(table, spec);
  }
}
