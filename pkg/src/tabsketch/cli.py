"""Command-line front end.

Subcommands: bias, similarity, verify-vectors, groups, independence.
All experiment state lives in a single self-contained JSON config
(schema-validated, unknown fields rejected); --seed can override the
config's base_seed. Outputs are diff-stable: rows are sorted, floats
use 10 significant digits, and the resolved config is echoed into
every file. Report commands render companion PNG figures next to the
delimited output unless told not to.

Exit codes: 0 success, 1 verification failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import jsonschema

from . import engine, plotting, vectors
from .errors import ConfigError, TabSketchError, VectorFormatError
from .families import make_hasher
from .shingle import ShingleConfig, shingle_keys
from .sketch import bottomq_jaccard, bottomq_sketch, kx_jaccard, kx_sketch
from .statlab import (
    BiasExperimentConfig,
    estimate_min_probability,
    exhaustive_independence_check,
    generate_query_and_set,
    max_group_sizes,
    occupancy_sweep,
    twisted_group_stats,
)
from .tabcore import TwistedTables, UniverseSpec

_SPEC_SCHEMA = {
    "type": "object",
    "properties": {
        "char_bits": {"type": "integer", "minimum": 1},
        "c": {"type": "integer", "minimum": 1},
        "r": {"type": "integer", "minimum": 1},
    },
    "required": ["char_bits", "c"],
    "additionalProperties": False,
}

_FAMILY_SCHEMA = {"type": "string", "pattern": r"^(simple|twisted|random|poly:[0-9]+)$"}

_GENERATOR_SCHEMA = {"enum": ["random-distinct", "fixed-tail-cube", "dense-interval"]}

_SEED_SCHEMA = {"type": "integer", "minimum": 0}

BIAS_SCHEMA = {
    "type": "object",
    "properties": {
        "experiment": {"const": "bias"},
        "spec": _SPEC_SCHEMA,
        "families": {"type": "array", "items": _FAMILY_SCHEMA, "minItems": 1},
        "ns": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "set_generator": _GENERATOR_SCHEMA,
        "trials": {"type": "integer", "minimum": 1},
        "base_seed": _SEED_SCHEMA,
        "confidence": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
    },
    "required": ["experiment", "spec", "families", "ns", "set_generator", "trials", "base_seed"],
    "additionalProperties": False,
}

SIMILARITY_SCHEMA = {
    "type": "object",
    "properties": {
        "experiment": {"const": "similarity"},
        "corpus_dir": {"type": "string"},
        "spec": _SPEC_SCHEMA,
        "family": _FAMILY_SCHEMA,
        "sketch": {
            "type": "object",
            "properties": {
                "kind": {"enum": ["kx", "bottomq"]},
                "q": {"type": "integer", "minimum": 1},
            },
            "required": ["kind", "q"],
            "additionalProperties": False,
        },
        "shingle": {
            "type": "object",
            "properties": {
                "w": {"type": "integer", "minimum": 1},
                "lowercase": {"type": "boolean"},
                "collapse_whitespace": {"type": "boolean"},
            },
            "required": ["w"],
            "additionalProperties": False,
        },
        "base_seed": _SEED_SCHEMA,
    },
    "required": ["experiment", "corpus_dir", "spec", "family", "sketch", "shingle", "base_seed"],
    "additionalProperties": False,
}

GROUPS_SCHEMA = {
    "type": "object",
    "properties": {
        "experiment": {"const": "groups"},
        "spec": _SPEC_SCHEMA,
        "n": {"type": "integer", "minimum": 1},
        "trials": {"type": "integer", "minimum": 1},
        "set_generator": _GENERATOR_SCHEMA,
        "base_seed": _SEED_SCHEMA,
        "occupancy": {
            "type": "object",
            "properties": {
                "family": _FAMILY_SCHEMA,
                "n": {"type": "integer", "minimum": 1},
                "m": {"type": "integer", "minimum": 1},
                "trials": {"type": "integer", "minimum": 1},
                "threshold": {"type": "integer", "minimum": 1},
            },
            "required": ["family", "n", "m", "trials", "threshold"],
            "additionalProperties": False,
        },
    },
    "required": ["experiment", "spec", "n", "trials", "set_generator", "base_seed"],
    "additionalProperties": False,
}

INDEPENDENCE_SCHEMA = {
    "type": "object",
    "properties": {
        "experiment": {"const": "independence"},
        "spec": _SPEC_SCHEMA,
        "family": _FAMILY_SCHEMA,
        "k": {"type": "integer", "minimum": 1},
        "prime": {"type": "integer", "minimum": 2},
    },
    "required": ["experiment", "spec", "family", "k"],
    "additionalProperties": False,
}


def _fmt(value) -> str:
    if isinstance(value, float):
        return "%.10g" % value
    return str(value)


def _load_config(args, schema) -> dict:
    if not args.config:
        raise ConfigError("this subcommand needs --config <file.json>")
    with open(args.config, "r", encoding="utf-8") as fh:
        config = json.load(fh)
    jsonschema.validate(config, schema)
    if args.seed is not None:
        config["base_seed"] = args.seed
    return config


def _spec_of(obj: dict) -> UniverseSpec:
    return UniverseSpec(
        char_bits=obj["char_bits"], char_count=obj["c"], out_bits=obj.get("r", 0)
    )


def _config_echo(config: dict) -> str:
    return json.dumps(config, sort_keys=True, separators=(",", ":"))


def _write_text(out, text: str) -> None:
    if not out or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _figure_target(args, stem: str):
    """Where to render the companion figure, or None to skip."""
    if args.no_figures:
        return None
    if args.figures:
        directory = Path(args.figures)
        directory.mkdir(parents=True, exist_ok=True)
        return directory / f"{stem}.png"
    if args.out and args.out != "-":
        return Path(args.out).with_suffix(".png")
    return None


def _csv_lines(config: dict, header: list[str], rows) -> str:
    lines = [f"# config {_config_echo(config)}", ",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(row[col]) for col in header))
    return "\n".join(lines) + "\n"


def _json_report(config: dict, payload: dict) -> str:
    return json.dumps({"config": config, **payload}, indent=2, sort_keys=True) + "\n"


def cmd_bias(args) -> int:
    config = _load_config(args, BIAS_SCHEMA)
    spec = _spec_of(config["spec"])
    cells = [
        BiasExperimentConfig(
            spec=spec,
            family=family,
            n=n,
            set_generator=config["set_generator"],
            trials=config["trials"],
            base_seed=config["base_seed"],
            confidence=config.get("confidence", 0.99),
        )
        for family in config["families"]
        for n in config["ns"]
    ]
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            reports = list(pool.map(estimate_min_probability, cells))
    else:
        reports = [estimate_min_probability(cell) for cell in cells]
    reports.sort(key=lambda rep: (rep.config.family, rep.config.n))
    rows = []
    for rep in reports:
        rows.append(
            {
                "family": rep.config.family,
                "n": rep.config.n,
                "trials": rep.trials,
                "p_hat": rep.point_estimate,
                "ci_lo": rep.wilson_lo,
                "ci_hi": rep.wilson_hi,
                "implied_bias_lo": rep.implied_bias_lo,
                "implied_bias_hi": rep.implied_bias_hi,
                "tie_count": rep.tie_count,
                "implied_bias": rep.implied_bias,
            }
        )
    header = [
        "family", "n", "trials", "p_hat", "ci_lo", "ci_hi",
        "implied_bias_lo", "implied_bias_hi", "tie_count",
    ]
    if args.format == "csv":
        _write_text(args.out, _csv_lines(config, header, rows))
    else:
        _write_text(
            args.out,
            _json_report(config, {"rows": [rep.to_record() for rep in reports]}),
        )
    target = _figure_target(args, "bias")
    if target:
        plotting.render_bias_figure(rows, target)
    return 0


def _corpus_key_sets(config: dict):
    corpus = Path(config["corpus_dir"])
    if not corpus.is_dir():
        raise ConfigError(f"corpus_dir {corpus} is not a directory")
    spec = _spec_of(config["spec"])
    shingle_cfg = ShingleConfig(**config["shingle"])
    docs = []
    for path in sorted(corpus.glob("*.txt")):
        keys = shingle_keys(path.read_text(encoding="utf-8"), shingle_cfg, spec)
        if not keys:
            print(f"warning: {path.name} has no shingles, skipped", file=sys.stderr)
            continue
        docs.append((path.name, keys))
    if len(docs) < 2:
        raise ConfigError("similarity needs at least 2 non-empty documents")
    return spec, docs


def cmd_similarity(args) -> int:
    config = _load_config(args, SIMILARITY_SCHEMA)
    spec, docs = _corpus_key_sets(config)
    family = config["family"]
    q = config["sketch"]["q"]
    base = config["base_seed"]
    if config["sketch"]["kind"] == "kx":
        seeds = [int(s) for s in engine.trial_seeds(base, 0, q)]
        built = {name: kx_sketch(spec, family, seeds, keys) for name, keys in docs}
        estimate = lambda a, b: kx_jaccard(built[a], built[b])  # noqa: E731
    else:
        seed = int(engine.trial_seeds(base, 0, 1)[0])
        hasher = make_hasher(spec, family, seed)
        built = {name: bottomq_sketch(hasher, keys, q) for name, keys in docs}
        estimate = lambda a, b: bottomq_jaccard(built[a], built[b])  # noqa: E731
    key_sets = dict(docs)
    rows = []
    for i, (name_a, _) in enumerate(docs):
        for name_b, _ in docs[i + 1 :]:
            a, b = key_sets[name_a], key_sets[name_b]
            exact = len(a & b) / len(a | b)
            est = estimate(name_a, name_b)
            rows.append(
                {
                    "doc_a": name_a,
                    "doc_b": name_b,
                    "estimate": est,
                    "exact": exact,
                    "abs_error": abs(est - exact),
                }
            )
    rows.sort(key=lambda r: (r["doc_a"], r["doc_b"]))
    header = ["doc_a", "doc_b", "estimate", "exact", "abs_error"]
    if args.format == "csv":
        _write_text(args.out, _csv_lines(config, header, rows))
    else:
        _write_text(args.out, _json_report(config, {"rows": rows}))
    target = _figure_target(args, "similarity")
    if target:
        plotting.render_similarity_figure(rows, target)
    return 0


def cmd_verify_vectors(args) -> int:
    path = args.vector_file or vectors.packaged_golden_path()
    result = vectors.verify_vector_file(path)
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    if not result.ok:
        print(f"MISMATCH at line {result.mismatch_line}: {result.mismatch_text}")
        return 1
    print(f"ok: {result.checked} vectors verified")
    return 0


def cmd_groups(args) -> int:
    if args.format == "csv":
        raise ConfigError("groups reports are structured; use --format json")
    config = _load_config(args, GROUPS_SCHEMA)
    spec = _spec_of(config["spec"])
    maxima = max_group_sizes(
        spec, config["n"], config["trials"], config["base_seed"],
        set_generator=config["set_generator"],
    )
    _, keys = generate_query_and_set(
        spec, config["set_generator"], config["n"], config["base_seed"]
    )
    first_seed = int(engine.trial_seeds(config["base_seed"], 0, 1)[0])
    first = twisted_group_stats(TwistedTables(spec, first_seed), keys)
    histogram: dict[str, int] = {}
    for size in maxima:
        histogram[str(size)] = histogram.get(str(size), 0) + 1
    payload = {
        "group_stats": first.to_record(),
        "max_group_sizes": {
            "trials": config["trials"],
            "histogram": histogram,
            "max": max(maxima),
        },
        "occupancy": None,
    }
    if "occupancy" in config:
        occ = config["occupancy"]
        payload["occupancy"] = occupancy_sweep(
            spec, occ["family"], occ["n"], occ["m"], occ["trials"],
            config["base_seed"], occ["threshold"],
            set_generator=config["set_generator"],
        ).to_record()
    _write_text(args.out, _json_report(config, payload))
    target = _figure_target(args, "groups")
    if target:
        plotting.render_groups_figure(list(first.sizes.values()), maxima, target)
    return 0


def cmd_independence(args) -> int:
    if args.format == "csv":
        raise ConfigError("independence reports are structured; use --format json")
    config = _load_config(args, INDEPENDENCE_SCHEMA)
    spec = _spec_of(config["spec"])
    report = exhaustive_independence_check(
        spec, config["family"], config["k"], prime=config.get("prime")
    )
    _write_text(args.out, _json_report(config, {"report": report.to_record()}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tabsketch",
        description="Tabulation hashing experiments: bias, similarity, structure checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_config=True):
        if needs_config:
            p.add_argument("--config", help="JSON experiment config")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--seed", type=int, help="override the config base_seed")
        p.add_argument("--threads", type=int, default=1, help="parallel experiment cells")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--figures", help="directory for companion figures")
        p.add_argument("--no-figures", action="store_true", help="skip figure rendering")

    p_bias = sub.add_parser("bias", help="minwise bias sweep over families and set sizes")
    add_common(p_bias)
    p_bias.set_defaults(fn=cmd_bias)

    p_sim = sub.add_parser("similarity", help="sketch-estimated vs exact Jaccard on a corpus")
    add_common(p_sim)
    p_sim.set_defaults(fn=cmd_similarity)

    p_ver = sub.add_parser("verify-vectors", help="recompute a golden vector file")
    p_ver.add_argument("vector_file", nargs="?", help="vector file (default: packaged golden)")
    add_common(p_ver, needs_config=False)
    p_ver.set_defaults(fn=cmd_verify_vectors)

    p_groups = sub.add_parser("groups", help="twisted group sizes and bin occupancy")
    add_common(p_groups)
    p_groups.set_defaults(fn=cmd_groups, format="json")

    p_ind = sub.add_parser("independence", help="exhaustive independence check")
    add_common(p_ind)
    p_ind.set_defaults(fn=cmd_independence, format="json")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except VectorFormatError as exc:
        print(f"error: malformed vector file: {exc}", file=sys.stderr)
        return 2
    except jsonschema.ValidationError as exc:
        print(f"error: config rejected: {exc.message}", file=sys.stderr)
        return 2
    except (TabSketchError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
