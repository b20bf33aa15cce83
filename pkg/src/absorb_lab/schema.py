"""JSON instance files: strict validation, compilation and serialization.

An instance names a ring recipe, an optional module recipe (the regular
module by default), an optional target submodule and an optional
multiplicative set, all as ascending index arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any, Optional

import jsonschema

from . import constructions as C
from .module import (
    FiniteModule,
    Submodule,
    componentwise_module,
    product_module,
    quotient,
)
from .ring import FiniteRing, Ideal, InputError, MultiplicativeSet, RingHom, build_zn

SCHEMA_VERSION = 1


@lru_cache(maxsize=1)
def instance_schema() -> dict:
    text = resources.files("absorb_lab").joinpath("schema/instance.schema.json").read_text()
    return json.loads(text)


@dataclass(frozen=True)
class InstanceSpec:
    id: str
    ring: dict
    module: Optional[dict] = None
    target: Optional[tuple[int, ...]] = None
    multset: Optional[tuple[int, ...]] = None
    tags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        d: dict[str, Any] = {"version": SCHEMA_VERSION, "id": self.id, "ring": self.ring}
        if self.module is not None:
            d["module"] = self.module
        if self.target is not None:
            d["target"] = list(self.target)
        if self.multset is not None:
            d["multset"] = list(self.multset)
        if self.tags:
            d["tags"] = list(self.tags)
        return d


@dataclass
class CompiledInstance:
    spec: InstanceSpec
    ring: FiniteRing
    module: FiniteModule
    target: Optional[Submodule] = None
    multset: Optional[MultiplicativeSet] = None
    extras: dict = field(default_factory=dict)


def _path(err: jsonschema.ValidationError) -> str:
    return "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path)


def _validate(doc: Any) -> None:
    schema = instance_schema()
    if isinstance(doc, dict) and "instances" not in doc:
        schema = {"$ref": "#/$defs/instance", "$defs": schema["$defs"]}
    validator = jsonschema.Draft202012Validator(schema)
    # oneOf failures hide the useful message in the closest sub-error
    best = jsonschema.exceptions.best_match(validator.iter_errors(doc))
    while best is not None and best.validator == "oneOf" and best.context:
        branches: dict[int, list] = {}
        for e in best.context:
            branches.setdefault(e.relative_schema_path[0], []).append(e)
        # the branch whose "kind" matched is the one the author meant
        chosen = [errs for errs in branches.values()
                  if not any(list(e.relative_path)[:1] == ["kind"] or
                             list(e.relative_schema_path)[1:3] == ["properties", "kind"]
                             for e in errs)]
        if len(chosen) != 1:
            break
        best = jsonschema.exceptions.best_match(chosen[0])
    if best is not None:
        raise InputError(f"schema violation at {_path(best)}: {best.message}")


def _spec_from(d: dict, default_id: str = "instance") -> InstanceSpec:
    d = {"id": default_id, **d}

    def ascending(key):
        v = d.get(key)
        if v is None:
            return None
        if list(v) != sorted(set(v)):
            raise InputError(f"{d['id']}: {key} must be ascending without repeats")
        return tuple(v)

    return InstanceSpec(id=d["id"], ring=d["ring"], module=d.get("module"),
                        target=ascending("target"), multset=ascending("multset"),
                        tags=tuple(d.get("tags", ())))


def parse_document(text: str) -> list[InstanceSpec]:
    """Parse a single instance or a ``{"version", "instances"}`` collection."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    _validate(doc)
    items = doc["instances"] if "instances" in doc else [doc]
    if len(items) == 1:
        specs = [_spec_from(items[0])]
    else:
        specs = [_spec_from(d, f"instance-{k}") for k, d in enumerate(items)]
    seen = set()
    for s in specs:
        if s.id in seen:
            raise InputError(f"duplicate instance id {s.id!r}")
        seen.add(s.id)
    return specs


def parse_instance(text: str) -> InstanceSpec:
    specs = parse_document(text)
    if len(specs) != 1:
        raise InputError(f"expected one instance, found {len(specs)}")
    return specs[0]


def serialize(specs: InstanceSpec | list[InstanceSpec]) -> str:
    if isinstance(specs, InstanceSpec):
        body: Any = specs.to_dict()
    else:
        body = {"version": SCHEMA_VERSION, "instances": [s.to_dict() for s in specs]}
    return json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# -- compilation ------------------------------------------------------------------

def _ideal(ring: FiniteRing, members, what: str) -> Ideal:
    try:
        return ring.ideal(members)
    except InputError as exc:
        raise InputError(f"{what}: {exc}") from None


def compile_ring(recipe: dict) -> FiniteRing:
    kind = recipe["kind"]
    if kind == "zn":
        ring = build_zn(recipe["n"])
    elif kind == "table":
        ring = FiniteRing(recipe["add"], recipe["mul"], recipe["zero"], recipe["one"],
                          recipe.get("label", "table"))
    elif kind == "product":
        ring = C.product_ring([compile_ring(r) for r in recipe["factors"]])
    elif kind == "idealization":
        base = compile_ring(recipe["ring"])
        ring = C.idealization(base, compile_module(recipe["module"], base))
    elif kind == "amalgamation":
        a, b = compile_ring(recipe["A"]), compile_ring(recipe["B"])
        f = RingHom(a, b, recipe["f"])
        ring = C.amalgamation(a, b, f, _ideal(b, recipe["J"], "J"))
    elif kind == "duplication_ring":
        base = compile_ring(recipe["ring"])
        ring = C.duplication_ring(base, _ideal(base, recipe["I"], "I"))
    elif kind == "localization":
        base = compile_ring(recipe["ring"])
        ring, _ = C.localize(base, MultiplicativeSet(base, recipe["S"]))
    elif kind == "quotient":
        base = compile_ring(recipe["ring"])
        ring, _ = C.quotient_ring(base, _ideal(base, recipe["I"], "I"))
    else:  # pragma: no cover - the schema rejects other kinds
        raise InputError(f"unknown ring kind {kind!r}")
    ring.recipe = recipe
    return ring


def compile_module(recipe: Optional[dict], ring: FiniteRing) -> FiniteModule:
    recipe = recipe or {"kind": "regular"}
    kind = recipe["kind"]
    if kind == "regular":
        module = ring.regular_module
    elif kind == "quotient":
        inner = compile_module(recipe["module"], ring)
        try:
            k = inner.submodule(recipe["K"])
        except InputError as exc:
            raise InputError(f"K: {exc}") from None
        module, _ = quotient(inner, k)
    elif kind == "direct_sum":
        parts = [compile_module(p, ring) for p in recipe["parts"]]
        module = parts[0]
        for p in parts[1:]:
            module = product_module(module, p)
    elif kind == "componentwise":
        factors = C._factors(ring)
        if len(factors) != len(recipe["parts"]):
            raise InputError("componentwise module needs one part per factor")
        module = componentwise_module(ring, [compile_module(p, f)
                                             for p, f in zip(recipe["parts"], factors)])
    elif kind == "duplication_module":
        corr = ring.correspondence
        if corr is None or corr.kind != "amalgamation" or corr.parts["A"] is not corr.parts["B"]:
            raise InputError("duplication modules live over a duplication ring")
        base = corr.parts["A"]
        module = C.duplication_module(compile_module(recipe["module"], base), corr.parts["J"], ring)
    elif kind == "localization":
        corr = ring.correspondence
        if corr is None or corr.kind != "localization":
            raise InputError("localized modules live over a localized ring")
        base = corr.parts["base"]
        module, _ = C.localize_module(compile_module(recipe["module"], base), corr.parts["S"], ring)
    elif kind == "table":
        module = FiniteModule(ring, recipe["add"], recipe["act"], recipe["zero"],
                              label=recipe.get("label", "table"))
    else:  # pragma: no cover
        raise InputError(f"unknown module kind {kind!r}")
    if module is not ring.regular_module:
        module.recipe = recipe
    return module


def compile_instance(spec: InstanceSpec) -> CompiledInstance:
    ring = compile_ring(spec.ring)
    module = compile_module(spec.module, ring)
    target = None
    if spec.target is not None:
        if max(spec.target, default=0) >= module.size:
            raise InputError(f"{spec.id}: target index out of range")
        try:
            target = module.submodule(spec.target)
        except InputError as exc:
            raise InputError(f"{spec.id}: target is not a submodule: {exc}") from None
    multset = None
    if spec.multset is not None:
        if max(spec.multset) >= ring.size:
            raise InputError(f"{spec.id}: multset index out of range")
        try:
            multset = MultiplicativeSet(ring, spec.multset)
        except InputError as exc:
            raise InputError(f"{spec.id}: multset: {exc}") from None
    return CompiledInstance(spec, ring, module, target, multset)


def ring_as_table(ring: FiniteRing) -> dict:
    """Raw table recipe that reproduces ``ring`` bit for bit."""
    return {"kind": "table", "add": ring.add.tolist(), "mul": ring.mul.tolist(),
            "zero": int(ring.zero), "one": int(ring.one), "label": ring.label}


def module_as_table(module: FiniteModule) -> dict:
    return {"kind": "table", "add": module.add.tolist(), "act": module.act.tolist(),
            "zero": int(module.zero), "label": module.label}


def shorthand_ring(text: str) -> dict:
    """``zn:6``, ``f4`` or ``zn:2*zn:3`` (a product) as a ring recipe."""
    parts = [p.strip() for p in text.split("*")]
    if len(parts) > 1:
        return {"kind": "product", "factors": [shorthand_ring(p) for p in parts]}
    if text == "f4":
        return ring_as_table(C.build_f4())
    kind, _, arg = text.partition(":")
    if kind == "zn" and arg.isdigit() and int(arg) >= 1:
        return {"kind": "zn", "n": int(arg)}
    raise InputError(f"cannot read ring shorthand {text!r}")

