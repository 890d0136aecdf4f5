import { readFileSync } from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, test } from "vitest";

import {
  emitVectors,
  fillTables,
  refTwistedTab32,
  streamValue,
} from "../src/generator.js";

const HERE = path.dirname(fileURLToPath(import.meta.url));
const GOLDEN = path.resolve(
  HERE, "..", "..", "src", "tabsketch", "data", "golden_vectors_seed1.txt",
);

describe("counter-mix generator", () => {
  test("matches the published first output for seed 0", () => {
    expect(streamValue(0n, 0n)).toBe(0xe220a8397b1dcdafn);
  });

  test("positions are independent of visit order", () => {
    const later = streamValue(7n, 500n);
    streamValue(7n, 0n);
    expect(streamValue(7n, 500n)).toBe(later);
  });
});

describe("reference hashing", () => {
  test("all-zero tables hash everything to 0", () => {
    const zero = Array.from({ length: 4 }, () => new Array<bigint>(256).fill(0n));
    for (const key of [0, 1, 0xdeadbeef, 0xffffffff]) {
      expect(refTwistedTab32(key, zero)).toBe(0);
    }
  });

  test("head index folds the accumulator low byte back in", () => {
    const tables = fillTables(1n);
    // keys differing only in the top byte select head entries 256 apart
    const a = refTwistedTab32(0x01000000, tables);
    const b = refTwistedTab32(0x02000000, tables);
    expect(a).not.toBe(b);
  });
});

describe("golden file", () => {
  test("regenerates the committed file byte-identically", () => {
    const committed = readFileSync(GOLDEN, "ascii");
    expect(emitVectors(1n, 256)).toBe(committed);
  });

  test("cross-check entries cover the first 8 merged values", () => {
    const tables = fillTables(1n);
    const lines = emitVectors(1n, 0).trimEnd().split("\n");
    expect(lines).toHaveLength(9);
    for (let j = 0; j < 8; j++) {
      const hex = tables[0][j].toString(16).padStart(16, "0");
      expect(lines[j + 1]).toBe(`# tablecheck 0 ${j} ${hex}`);
    }
  });

  test("count=0 emits a header-only file", () => {
    const text = emitVectors(9n, 0);
    expect(text.endsWith("\n")).toBe(true);
    const lines = text.trimEnd().split("\n");
    expect(lines[0]).toBe("# spec char_bits=8 c=4 r=32 seed=9");
    expect(lines.every((l) => l.startsWith("#"))).toBe(true);
  });

  test("body lines are zero-padded key/hash pairs in order", () => {
    const body = emitVectors(1n, 16).trimEnd().split("\n").slice(9);
    expect(body).toHaveLength(16);
    body.forEach((line, i) => {
      expect(line).toMatch(/^[0-9a-f]{8}\t[0-9a-f]{8}$/);
      expect(line.slice(0, 8)).toBe(i.toString(16).padStart(8, "0"));
    });
  });

  test("regeneration is idempotent", () => {
    expect(emitVectors(123n, 64)).toBe(emitVectors(123n, 64));
  });
});
