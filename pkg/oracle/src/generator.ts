// Reference generator for the golden vector file. Everything 64-bit is
// BigInt; plain numbers only index tables. The table fill duplicates the
// Python library's counter-mix generator on purpose: the two codebases
// share nothing but the file format, so agreement means something.

export const MASK64 = (1n << 64n) - 1n;
const GOLDEN = 0x9e3779b97f4a7c15n;
const SHIFT_FILL_SALT = 0x5348494654535f21n;
const TWIST_FILL_SALT = 0x5457495354455221n;

export function mix64(z: bigint): bigint {
  z = ((z ^ (z >> 30n)) * 0xbf58476d1ce4e5b9n) & MASK64;
  z = ((z ^ (z >> 27n)) * 0x94d049bb133111ebn) & MASK64;
  return z ^ (z >> 31n);
}

export function streamValue(seed: bigint, pos: bigint): bigint {
  return mix64((seed + (pos + 1n) * GOLDEN) & MASK64);
}

// 4 tables x 256 packed 64-bit entries: shift value in the high 32 bits,
// twister character in the low bits (head table has no twister half)
export type RefTableSet = bigint[][];

export function fillTables(seed: bigint): RefTableSet {
  const masked = seed & MASK64;
  const tables: RefTableSet = [];
  for (let i = 0; i < 4; i++) {
    const row: bigint[] = [];
    for (let j = 0; j < 256; j++) {
      const pos = BigInt(i * 256 + j);
      let entry = (streamValue(masked ^ SHIFT_FILL_SALT, pos) & 0xffffffffn) << 32n;
      if (i < 3) {
        entry |= streamValue(masked ^ TWIST_FILL_SALT, pos) & 0xffn;
      }
      row.push(entry);
    }
    tables.push(row);
  }
  return tables;
}

export function refTwistedTab32(key: number, tables: RefTableSet): number {
  // the published routine's signed INT8 index is an explicit low-byte
  // mask here; the arithmetic right shift is immaterial after masking
  let x = BigInt(key >>> 0);
  let h = 0n;
  for (let i = 0; i < 3; i++) {
    h ^= tables[i][Number(x & 0xffn)];
    x >>= 8n;
  }
  h ^= tables[3][Number((x ^ h) & 0xffn)];
  return Number((h >> 32n) & 0xffffffffn);
}

export function hex32(v: number): string {
  return (v >>> 0).toString(16).padStart(8, "0");
}

export function hex64(v: bigint): string {
  return v.toString(16).padStart(16, "0");
}

export function emitVectors(seed: bigint, count: number): string {
  const tables = fillTables(seed);
  const lines = [`# spec char_bits=8 c=4 r=32 seed=${seed}`];
  for (let j = 0; j < 8; j++) {
    lines.push(`# tablecheck 0 ${j} ${hex64(tables[0][j])}`);
  }
  for (let key = 0; key < count; key++) {
    lines.push(`${hex32(key)}\t${hex32(refTwistedTab32(key, tables))}`);
  }
  return lines.join("\n") + "\n";
}
