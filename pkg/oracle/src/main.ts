#!/usr/bin/env node
import { writeFileSync } from "node:fs";
import { emitVectors } from "./generator.js";

function usage(): never {
  console.error("usage: cref-oracle <seed> <count> <outpath>");
  process.exit(2);
}

const args = process.argv.slice(2);
if (args.length !== 3) usage();

let seed: bigint;
try {
  seed = BigInt(args[0]);
} catch {
  usage();
}
const count = Number(args[1]);
if (seed < 0n || seed >= 1n << 64n || !Number.isInteger(count) || count < 0 || count > 2 ** 32) {
  usage();
}

writeFileSync(args[2], emitVectors(seed, count), { encoding: "ascii" });
console.log(`wrote ${count} vectors for seed ${seed} to ${args[2]}`);
