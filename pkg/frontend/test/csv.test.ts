import { describe, expect, it } from "vitest";
import { SchemaMismatchError, numericColumn, parseCsv, requireColumns } from "../src/csv.js";

const SAMPLE = `# logevo-csv/1 command=rates
# config: {"n": 3}
target,n,t,value
l2,3,1.0000000000000000e+02,4.1655762963549625e+00
l2,3,1.7782794100389228e+02,3.6118445894668476e+00
`;

describe("parseCsv", () => {
  it("separates comments, header and rows", () => {
    const t = parseCsv(SAMPLE);
    expect(t.comments).toHaveLength(2);
    expect(t.columns).toEqual(["target", "n", "t", "value"]);
    expect(t.rows).toHaveLength(2);
  });

  it("keeps an empty-but-valid table", () => {
    const t = parseCsv("a,b,c\n");
    expect(t.columns).toEqual(["a", "b", "c"]);
    expect(t.rows).toHaveLength(0);
  });

  it("rejects headerless input", () => {
    expect(() => parseCsv("# only comments\n")).toThrow(/no header/);
  });
});

describe("requireColumns", () => {
  it("accepts the documented header", () => {
    expect(() => requireColumns(parseCsv(SAMPLE), ["target", "n", "t", "value"])).not.toThrow();
  });

  it("reports a column diff on mismatch", () => {
    try {
      requireColumns(parseCsv(SAMPLE), ["claim", "t", "value"]);
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(SchemaMismatchError);
      const msg = (err as Error).message;
      expect(msg).toContain("missing:");
      expect(msg).toContain("claim");
      expect(msg).toContain("extra:");
    }
  });
});

describe("numericColumn", () => {
  it("parses scientific notation", () => {
    const vals = numericColumn(parseCsv(SAMPLE), "value");
    expect(vals[0]).toBeCloseTo(4.1655762963549625, 12);
  });

  it("rejects non-numeric cells", () => {
    const bad = parseCsv("t,value\n1,oops\n");
    expect(() => numericColumn(bad, "value")).toThrow(/non-numeric/);
  });
});
