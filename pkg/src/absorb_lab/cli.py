"""Command-line interface: ``absorb-lab <command> ...``.

Exit codes: 0 success, 1 a refutation (or a strict search that found
nothing), 2 bad input. JSON output is canonical (sorted keys, fixed
indentation) and text output is rendered from the same JSON document.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from typing import Optional

from . import module as mod
from .predicates import ALL_PREDICATES, IDEAL_PREDICATES, Predicate, check_ideal_predicate, \
    check_submodule_predicate
from .ring import InputError, MultiplicativeSet, ideal_generate, is_quasilocal
from .schema import (
    SCHEMA_VERSION,
    InstanceSpec,
    compile_instance,
    compile_ring,
    module_as_table,
    parse_document,
    ring_as_table,
    shorthand_ring,
)

REPORT_VERSION = 1
OK, FAILED, BAD_INPUT = 0, 1, 2


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _threads() -> int:
    raw = os.environ.get("ABSORB_LAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"ABSORB_LAB_THREADS must be an integer (got {raw!r})") from None
    return max(1, n)


def _read_specs(path: Optional[str]) -> list[InstanceSpec]:
    if path is None:
        raise InputError("--in is required for this command")
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def _readings(flag: str) -> tuple[str, ...]:
    return ("A", "B") if flag == "both" else (flag,)


# -- classify ----------------------------------------------------------------------

def _classify_one(spec: InstanceSpec) -> dict:
    ci = compile_instance(spec)
    ring, m = ci.ring, ci.module
    s_set = ci.multset or MultiplicativeSet(ring, [ring.one])
    targets = [ci.target] if ci.target is not None else list(m.proper_submodules)
    flags = asdict(mod.structure_flags(m))
    flags["um_set"] = list(flags["um_set"])
    rows = []
    for n in targets:
        if not n.is_proper:
            raise InputError(f"{spec.id}: target must be a proper submodule")
        row = {"target": list(n.members), "colon": list(mod.colon_ring(n).members),
               "mrad": list(mod.m_radical(n).members),
               "module_level": {p.value: check_submodule_predicate(m, n, s_set, p).to_dict()
                                for p in ALL_PREDICATES}}
        if spec.module is None:
            ideal = mod.as_ideal(n)
            row["ideal_level"] = {p.value: check_ideal_predicate(ring, ideal, s_set, p).to_dict()
                                  for p in IDEAL_PREDICATES}
        rows.append(row)
    return {"id": spec.id, "ring_size": ring.size, "module_size": m.size,
            "multset": list(s_set.members), "quasilocal": is_quasilocal(ring),
            "flags": flags, "results": rows}


def cmd_classify(args) -> tuple[dict, int]:
    specs = _read_specs(args.input)
    return {"version": REPORT_VERSION, "command": "classify",
            "instances": [_classify_one(s) for s in specs]}, OK


# -- list-submodules -----------------------------------------------------------------

def cmd_list_submodules(args) -> tuple[dict, int]:
    out = []
    for spec in _read_specs(args.input):
        ci = compile_instance(spec)
        m = ci.module
        subs = [{"members": list(n.members), "colon": list(mod.colon_ring(n).members),
                 "prime": mod.is_prime_submodule(n) if n.is_proper else False}
                for n in m.submodules]
        out.append({"id": spec.id, "module_size": m.size, "count": len(subs), "submodules": subs})
    return {"version": REPORT_VERSION, "command": "list-submodules", "instances": out}, OK


# -- verify ------------------------------------------------------------------------------

def _init_worker(readings):
    from .harness import avoidance

    avoidance.set_readings(readings)


def _verify_one(spec: InstanceSpec, suite: list[str]) -> list[dict]:
    from .harness.theorems import verify_theorems

    return [r.to_dict() for r in verify_theorems(spec, suite)]


def cmd_verify(args) -> tuple[dict, int]:
    from .harness.corpus import Bounds, generate_corpus
    from .harness.theorems import resolve_suite

    readings = _readings(args.reading)
    _init_worker(readings)
    suite = resolve_suite(args.suite)
    if args.input is not None:
        specs = _read_specs(args.input)
        bounds = None
    else:
        b = Bounds.parse(args.bounds)
        specs = generate_corpus(b)
        bounds = [b.max_ring_size, b.max_module_size, b.construction_depth]
    threads = _threads()
    if threads > 1 and len(specs) > 1:
        with ProcessPoolExecutor(threads, initializer=_init_worker, initargs=(readings,)) as pool:
            chunks = list(pool.map(_verify_one, specs, [suite] * len(specs)))
    else:
        chunks = [_verify_one(s, suite) for s in specs]
    reports = sorted((r for c in chunks for r in c), key=lambda r: (r["instance_id"], r["theorem_id"]))
    summary = {tid: {"verified": 0, "refuted": 0, "inapplicable": 0} for tid in suite}
    for r in reports:
        base = r["theorem_id"]
        summary.setdefault(base, {"verified": 0, "refuted": 0, "inapplicable": 0})[r["status"]] += 1
    refuted = sum(v["refuted"] for v in summary.values())
    doc = {"version": REPORT_VERSION, "command": "verify", "bounds": bounds, "suite": suite,
           "readings": list(readings), "instances": len(specs), "refuted": refuted,
           "summary": summary, "reports": reports}
    return doc, FAILED if refuted else OK


# -- search ------------------------------------------------------------------------------

def cmd_search(args) -> tuple[dict, int]:
    from .harness.corpus import Bounds, generate_corpus
    from .harness.search import mutation_search, separate_classes

    corpus = _read_specs(args.input) if args.input else generate_corpus(Bounds.parse(args.bounds))
    if args.mutation:
        if args.predicates:
            raise InputError("--mutation takes no predicate names")
        result = mutation_search(corpus)
    else:
        if len(args.predicates) != 2:
            raise InputError("search needs two predicate names (or --mutation)")
        for p in args.predicates:
            try:
                Predicate(p)
            except ValueError:
                raise InputError(f"unknown predicate {p!r}") from None
        result = separate_classes(args.predicates[0], args.predicates[1], corpus,
                                  level=args.level, gated_only=not args.ungated)
    doc = {"version": REPORT_VERSION, "command": "search", "result": result}
    return doc, FAILED if args.strict and result["status"] != "found" else OK


# -- construct ---------------------------------------------------------------------------

def _ints(text: Optional[str], what: str) -> list[int]:
    if text is None:
        raise InputError(f"--{what} is required for this construction")
    try:
        return sorted({int(x) for x in text.split(",") if x.strip()})
    except ValueError:
        raise InputError(f"--{what} must be a comma-separated list of indices") from None


def shorthand_module(text: str, ring_recipe: dict) -> dict:
    """``regular``, ``zn:d`` (the cyclic module R/dR) or a ``+``-separated sum of these."""
    parts = [p.strip() for p in text.split("+")]
    if len(parts) > 1:
        return {"kind": "direct_sum", "parts": [shorthand_module(p, ring_recipe) for p in parts]}
    if text == "regular":
        return {"kind": "regular"}
    kind, _, arg = text.partition(":")
    if kind != "zn" or not arg.isdigit() or int(arg) < 1:
        raise InputError(f"cannot read module shorthand {text!r}")
    ring = compile_ring(ring_recipe)
    d = ring.zero
    for _ in range(int(arg)):
        d = int(ring.add[d, ring.one])
    k = ideal_generate(ring, [d])
    if k.members == (ring.zero,):
        return {"kind": "regular"}
    return {"kind": "quotient", "module": {"kind": "regular"}, "K": list(k.members)}


def _construct_recipe(args) -> dict:
    if args.ring is None:
        raise InputError("--ring is required")
    base = shorthand_ring(args.ring)
    kind = args.kind
    if kind == "ring":
        return base
    if kind == "idealization":
        return {"kind": "idealization", "ring": base,
                "module": shorthand_module(args.module or "regular", base)}
    if kind == "duplication":
        return {"kind": "duplication_ring", "ring": base, "I": _ints(args.ideal, "ideal")}
    if kind == "quotient":
        return {"kind": "quotient", "ring": base, "I": _ints(args.ideal, "ideal")}
    if kind == "localization":
        return {"kind": "localization", "ring": base, "S": _ints(args.multset, "multset")}
    raise InputError(f"unknown construction {kind!r}")  # pragma: no cover


def cmd_construct(args) -> tuple[dict, int]:
    if args.input is not None:
        out = []
        for spec in _read_specs(args.input):
            ci = compile_instance(spec)
            d = spec.to_dict()
            d["ring"] = ring_as_table(ci.ring)
            if spec.module is not None:
                d["module"] = module_as_table(ci.module)
            out.append(d)
        return (out[0] if len(out) == 1 else {"version": SCHEMA_VERSION, "instances": out}), OK
    if args.kind is None:
        raise InputError("construct needs --kind or --in")
    ring = compile_ring(_construct_recipe(args))
    return {"version": SCHEMA_VERSION, "id": args.kind, "ring": ring_as_table(ring)}, OK


# -- text rendering ----------------------------------------------------------------------

def _verdict(rep: dict) -> str:
    if not rep["applicable"]:
        return "n/a"
    if rep["holds"]:
        return "yes" if rep["witness_s"] is None else f"yes(s={rep['witness_s']})"
    return "no"


def render_text(doc: dict) -> str:
    """Human-readable view of a JSON result document."""
    lines: list[str] = []
    cmd = doc.get("command")
    if cmd == "verify":
        lines.append(f"instances: {doc['instances']}  refuted: {doc['refuted']}")
        lines.append(f"{'theorem':<24}{'verified':>10}{'refuted':>10}{'inapplicable':>14}")
        for tid in sorted(doc["summary"]):
            c = doc["summary"][tid]
            lines.append(f"{tid:<24}{c['verified']:>10}{c['refuted']:>10}{c['inapplicable']:>14}")
        for r in doc["reports"]:
            if r["status"] == "refuted":
                lines.append(f"REFUTED {r['theorem_id']} on {r['instance_id']}: {r['evidence']['detail']}")
    elif cmd == "classify":
        for inst in doc["instances"]:
            lines.append(f"{inst['id']}  |R|={inst['ring_size']} |M|={inst['module_size']} S={inst['multset']}")
            for row in inst["results"]:
                verdicts = " ".join(f"{k}={_verdict(v)}" for k, v in sorted(row["module_level"].items()))
                lines.append(f"  N={row['target']}  {verdicts}")
    elif cmd == "list-submodules":
        for inst in doc["instances"]:
            lines.append(f"{inst['id']}: {inst['count']} submodules")
            for s in inst["submodules"]:
                lines.append(f"  {s['members']}  colon={s['colon']}{'  prime' if s['prime'] else ''}")
    elif cmd == "search":
        r = doc["result"]
        what = r.get("predicates") or r.get("predicate")
        lines.append(f"{r['status']} after {r['checked']} checks ({what})")
        if r["status"] == "found":
            inst = r["instance"]
            lines.append(f"  instance {inst['id']}  N={inst.get('target')}  S={inst.get('multset')}")
            for k, v in sorted(r.get("post_check", {}).items()):
                lines.append(f"  {k}: {v}")
    else:
        items = doc.get("instances", [doc])
        for inst in items:
            ring = inst["ring"]
            lines.append(f"{inst['id']}: table ring with {len(ring['add'])} elements")
    return "\n".join(lines) + "\n"


# -- entry point ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="absorb-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--in", dest="input", metavar="PATH")
        sp.add_argument("--out", dest="output", metavar="PATH")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = sub.add_parser("classify", help="evaluate every predicate on the instance targets")
    common(sp)
    sp = sub.add_parser("list-submodules", help="print the submodule lattice")
    common(sp)
    sp = sub.add_parser("verify", help="run the theorem suite on a corpus or on --in")
    common(sp)
    sp.add_argument("--bounds", default="12,32,1", help="ring size, module size, construction depth")
    sp.add_argument("--suite", default="all", help="all, a suite name or comma-separated theorem ids")
    sp.add_argument("--reading", choices=("A", "B", "both"), default="both",
                    help="avoidance hypothesis reading")
    sp = sub.add_parser("search", help="first instance in one class but not another")
    common(sp)
    sp.add_argument("predicates", nargs="*", metavar="PRED")
    sp.add_argument("--bounds", default="12,32,1")
    sp.add_argument("--level", choices=("module", "ideal"), default="module")
    sp.add_argument("--ungated", action="store_true", help="also search pairs where the gate fails")
    sp.add_argument("--mutation", action="store_true",
                    help="look for per-tuple witnesses without a uniform one")
    sp.add_argument("--strict", action="store_true", help="exit 1 when nothing is found")
    sp = sub.add_parser("construct", help="compile a construction to a raw table ring")
    common(sp)
    sp.add_argument("--kind", choices=("ring", "idealization", "duplication", "quotient", "localization"))
    sp.add_argument("--ring", help="zn:N, f4 or a product like zn:2*zn:3")
    sp.add_argument("--module", help="regular, zn:D or a sum like zn:2+zn:2")
    sp.add_argument("--ideal", help="comma-separated ideal members")
    sp.add_argument("--multset", help="comma-separated members of S")
    return p


COMMANDS = {"classify": cmd_classify, "list-submodules": cmd_list_submodules,
            "verify": cmd_verify, "search": cmd_search, "construct": cmd_construct}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else BAD_INPUT
    try:
        doc, code = COMMANDS[args.command](args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    text = _dump(doc) if args.format == "json" else render_text(doc)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return BAD_INPUT
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
