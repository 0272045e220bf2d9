"""Command-line entry point: ``omega-words <group> <command> [flags]``.

Every response is one JSON object on stdout carrying ``"schema": "omega-words/1"``.
Exit codes: 0 success, 2 domain error, 3 budget exhausted, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from . import extraction, families, schreier, search, words
from .errors import BudgetExceeded, OmegaWordsError
from .ordinal import as_ordinal, format_ordinal
from .words import DominationSeq, LocatedWord

SCHEMA = "omega-words/1"
EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET, EXIT_USAGE = 0, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    domination: dict = field(default_factory=lambda: {"kind": "constant", "c": 1})
    budget: str = "w^(w^w)"
    cap: int = 2_000_000
    workers: int = 1
    seed: int = 0
    output: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.cap < 1 or self.workers < 1:
            raise OmegaWordsError("caps and worker counts must be positive")
        as_ordinal(self.budget)

    @property
    def k(self) -> DominationSeq:
        return DominationSeq.from_json(self.domination)

    @classmethod
    def load(cls, path: str | None) -> "RunConfig":
        if path is None:
            return cls()
        data = json.loads(Path(path).read_text())
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise OmegaWordsError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)


def _json_arg(text: str):
    """Inline JSON, or ``@path`` / an existing file path holding JSON."""
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    stripped = text.strip()
    if stripped[:1] not in "[{\"" and Path(stripped).is_file():
        return json.loads(Path(stripped).read_text())
    return json.loads(text)


def _int_set(text: str) -> list[int]:
    text = text.strip()
    if text.startswith("["):
        return [int(x) for x in json.loads(text)]
    if not text:
        return []
    return [int(x) for x in text.split(",")]


def _word(text: str) -> LocatedWord:
    return LocatedWord.from_json(_json_arg(text))


def _tuple(text: str) -> tuple[LocatedWord, ...]:
    return tuple(LocatedWord.from_json(w) for w in _json_arg(text))


def _tuple_json(t) -> list:
    return [w.to_json() for w in t]


def _sorted_words(ws) -> list:
    return [w.to_json() for w in sorted(ws, key=words.word_key)]


# handlers: each returns a JSON-able dict

def schreier_member(a, cfg):
    return {"member": schreier.member(as_ordinal(a.xi), _int_set(a.set))}


def schreier_decompose(a, cfg):
    blocks, rest = schreier.canonical_decomposition(as_ordinal(a.xi), _int_set(a.seq))
    return {"blocks": [list(b) for b in blocks], "remainder": list(rest)}


def schreier_audit(a, cfg):
    violations = schreier.thinness_audit(as_ordinal(a.xi), a.bound)
    return {"violations": [[list(s), list(t)] for s, t in violations], "thin": not violations}


def word_tp(a, cfg):
    k = cfg.k
    return {"word": words.t_p(_word(a.word).validate(k), a.p, k).to_json()}


def word_plus(a, cfg):
    return {"word": words.plus(_word(a.w), _word(a.u)).to_json()}


def word_concat(a, cfg):
    return {"word": words.concat(_word(a.w), _word(a.u)).to_json()}


def word_unlocate(a, cfg):
    return {"word": words.to_unlocated(_word(a.word).validate(cfg.k)).to_json()}


def extract_ev(a, cfg):
    return {"words": _sorted_words(extraction.ev(_tuple(a.tuple), cfg.k))}


def extract_e(a, cfg):
    return {"words": _sorted_words(extraction.e(_tuple(a.tuple), cfg.k))}


def extract_tuples(a, cfg):
    found = extraction.enumerate_L_xi_ev(as_ordinal(a.xi), _tuple(a.generators), cfg.k, a.max_len)
    return {"tuples": [_tuple_json(t) for t in found]}


def _context(a, cfg) -> families.FamilyContext:
    gens = _tuple(a.generators) if a.generators else None
    return families.FamilyContext(cfg.k, gens)


def family_cb_index(a, cfg):
    spec = families.family_from_json(_json_arg(a.spec))
    index = families.strong_cb_index(spec, _context(a, cfg), budget=cfg.budget)
    return {"index": format_ordinal(index)}


def family_closure(a, cfg):
    spec = families.family_from_json(_json_arg(a.spec))
    out = families.star_closure(spec) if a.kind == "star" else families.hered_closure(spec, cfg.k)
    return {"family": families.family_to_json(out)}


def family_canon(a, cfg):
    blocks, rest = families.canonical_rep_L_xi(as_ordinal(a.xi), _tuple(a.tuple))
    return {"blocks": [_tuple_json(b) for b in blocks], "remainder": _tuple_json(rest)}


def search_homogeneous(a, cfg):
    k = cfg.k
    bridge = _json_arg(a.vdw_bridge) if a.vdw_bridge else None
    if bridge is not None:
        sg = search.SemigroupSpec.from_json(bridge)
        sg_col = search.SemigroupColoring.from_json(bridge.get("coloring", {"kind": "mod", "m": 2}))
        col_const = search.Coloring.parse(a.color_const) if a.color_const else search.Coloring.via_g(sg, sg_col)
        col_var = search.Coloring.parse(a.color_var or "constant")
    else:
        if not a.color_var or not a.color_const:
            raise UsageError("--color-var and --color-const are required without --vdw-bridge")
        col_var, col_const = search.Coloring.parse(a.color_var), search.Coloring.parse(a.color_const)
    result = search.find_homogeneous(
        a.m, a.N, k, col_var, col_const,
        workers=cfg.workers, normalize=bridge is not None, max_states=cfg.cap,
    )
    out = result.to_json(timing=cfg.timing)
    if isinstance(result, search.Witness):
        out["verified"] = search.verify_homogeneous(result.words, k, col_var, col_const)
        if bridge is not None:
            cap = bridge.get("lambda_cap")
            out["bridge"] = {
                "lambda_cap": cap,
                "passed": search.vdw_bridge_check(result.words, k, sg, sg_col, cap),
            }
    return out


def _semigroup(a) -> search.SemigroupSpec:
    return search.SemigroupSpec.from_json(_json_arg(a.sg))


def semigroup_g(a, cfg):
    return {"value": search.g_eval(_word(a.word).validate(cfg.k), _semigroup(a))}


def semigroup_fs(a, cfg):
    values = search.fs_set(_json_arg(a.xs), _semigroup(a), a.lambda_cap)
    return {"values": sorted(values, key=lambda v: (str(type(v)), v))}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON run config; flags override it")
    common.add_argument("--dom", help="domination sequence JSON, e.g. '{\"kind\":\"constant\",\"c\":2}'")
    common.add_argument("--budget", help="ordinal budget for index computations")
    common.add_argument("--cap", type=int, help="enumeration / state cap")
    common.add_argument("--workers", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--output", help="also write the JSON result to this path")
    common.add_argument("--timing", action="store_true", default=None, help="include elapsed seconds")

    parser = _Parser(prog="omega-words", description="Ramsey theory toolkit for located words.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(group, name, handler, help_text):
        p = group.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    g = groups.add_parser("schreier", help="Schreier families").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "member", schreier_member, "membership in A_xi")
    p.add_argument("--xi", required=True)
    p.add_argument("--set", required=True, help="'3,5,7' or a JSON array")
    p = leaf(g, "decompose", schreier_decompose, "canonical decomposition")
    p.add_argument("--xi", required=True)
    p.add_argument("--seq", required=True)
    p = leaf(g, "audit", schreier_audit, "thinness audit over subsets of [1..bound]")
    p.add_argument("--xi", required=True)
    p.add_argument("--bound", type=int, default=10)

    g = groups.add_parser("word", help="word algebra").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "tp", word_tp, "substitute the p-th letter for the variable")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--word", required=True)
    for name, handler in (("plus", word_plus), ("concat", word_concat)):
        p = leaf(g, name, handler, f"{name} of two words")
        p.add_argument("--w", required=True)
        p.add_argument("--u", required=True)
    p = leaf(g, "unlocate", word_unlocate, "fill gaps to get an omega-word")
    p.add_argument("--word", required=True)

    g = groups.add_parser("extract", help="extracted words").add_subparsers(dest="cmd", required=True)
    for name, handler in (("ev", extract_ev), ("e", extract_e)):
        p = leaf(g, name, handler, f"{name} of an orderly tuple")
        p.add_argument("--tuple", required=True)
    p = leaf(g, "tuples", extract_tuples, "L^xi tuples over ev(generators)")
    p.add_argument("--xi", required=True)
    p.add_argument("--generators", required=True)
    p.add_argument("--max-len", type=int, default=4)

    g = groups.add_parser("family", help="hereditary families").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "cb-index", family_cb_index, "strong Cantor-Bendixson index")
    p.add_argument("--spec", required=True)
    p.add_argument("--generators")
    p = leaf(g, "closure", family_closure, "tree or hereditary closure of an explicit family")
    p.add_argument("--spec", required=True)
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--star", dest="kind", action="store_const", const="star")
    kind.add_argument("--hered", dest="kind", action="store_const", const="hered")
    p = leaf(g, "canon", family_canon, "canonical representation w.r.t. L^xi")
    p.add_argument("--xi", required=True)
    p.add_argument("--tuple", required=True)

    g = groups.add_parser("search", help="monochromatic witnesses").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "homogeneous", search_homogeneous, "least homogeneous m-tuple")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--color-var")
    p.add_argument("--color-const")
    p.add_argument("--vdw-bridge", help="semigroup JSON (inline or file)")

    g = groups.add_parser("semigroup", help="the bridge g and FS-sets").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "g", semigroup_g, "g of a constant word")
    p.add_argument("--word", required=True)
    p.add_argument("--sg", required=True)
    p = leaf(g, "fs", semigroup_fs, "finite sums")
    p.add_argument("--xs", required=True)
    p.add_argument("--sg", required=True)
    p.add_argument("--lambda-cap", type=int)
    return parser


def _config(a) -> RunConfig:
    cfg = RunConfig.load(a.config)
    overrides = {}
    if a.dom is not None:
        overrides["domination"] = json.loads(a.dom)
    for name in ("budget", "cap", "workers", "seed", "output", "timing"):
        value = getattr(a, name)
        if value is not None:
            overrides[name] = value
    return replace(cfg, **overrides) if overrides else cfg


def _emit(payload: dict, stream, output: str | None = None) -> None:
    text = json.dumps({"schema": SCHEMA, **payload})
    if output:
        Path(output).write_text(text + "\n")
    stream.write(text + "\n")


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        result = args.handler(args, cfg)
    except UsageError as exc:
        _emit({"error": "usage", "detail": str(exc)}, stdout)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        _emit({"error": "budget", "detail": str(exc)}, stdout)
        return EXIT_BUDGET
    except (ValueError, KeyError, TypeError, OSError) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)}, stdout)
        return EXIT_DOMAIN
    _emit(result, stdout, cfg.output)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
