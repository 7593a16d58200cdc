"""JSON presentation files and relation files.

A presentation file looks like::

    {"base": ["a", "b", "c"],
     "axioms": [{"elem": "a", "cover": ["b", "c"]}],
     "operation": {"kind": "table", "payload": [["a", "a", ["a"]], ...]},
     "unit": ["a"],
     "mode": "convergent"}

``base`` may also be ``{"product": [L, R]}``, ``{"lists": {"atoms": [...],
"max_len": n}}`` or ``{"powerset": [...]}``. Elements are written as JSON
values: strings for atoms, two-element arrays for pairs, arrays of atoms for
lists and for finite subsets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .core import Base, Subset, bits, list_base, make_base, powerset_base, product_base
from .errors import InputError
from .generation import (TAGS, Axiom, AxiomSet, DeltaOp, OpCover, circ_basic_cover,
                         generate_basic, generate_convergent, generate_formal, make_delta)
from .morphisms import Relation
from .saturation import GeneratedCover

MODES = ("basic", "circ", "convergent", "formal")


# -- bases and elements ---------------------------------------------------

def decode_base(raw) -> Base:
    if isinstance(raw, list):
        if not all(isinstance(x, str) for x in raw):
            raise InputError("atomic base must be a list of strings")
        return make_base(raw)
    if isinstance(raw, dict) and len(raw) == 1:
        (kind, body), = raw.items()
        if kind == "product":
            if not isinstance(body, list) or len(body) != 2:
                raise InputError("product base needs two factors")
            return product_base(decode_base(body[0]), decode_base(body[1]))
        if kind == "lists":
            if not isinstance(body, dict) or "atoms" not in body or "max_len" not in body:
                raise InputError("list base needs 'atoms' and 'max_len'")
            return list_base(decode_base(body["atoms"]), _int(body["max_len"], "max_len"))
        if kind == "powerset":
            return powerset_base(decode_base(body))
    raise InputError(f"unrecognized base description: {json.dumps(raw)[:60]}")


def encode_base(base: Base):
    if base.kind == "atomic":
        return list(base.elements)
    if base.kind == "product":
        return {"product": [encode_base(base.left), encode_base(base.right)]}
    if base.kind == "lists":
        return {"lists": {"atoms": encode_base(base.atoms), "max_len": base.max_len}}
    return {"powerset": encode_base(base.atoms)}


def decode_element(base: Base, raw):
    kind = base.kind
    if kind == "atomic":
        x = raw
    elif kind == "product":
        if not isinstance(raw, list) or len(raw) != 2:
            raise InputError(f"product element must be a pair, got {json.dumps(raw)}")
        x = (decode_element(base.left, raw[0]), decode_element(base.right, raw[1]))
    elif kind == "lists":
        if not isinstance(raw, list):
            raise InputError(f"list element must be an array, got {json.dumps(raw)}")
        x = tuple(decode_element(base.atoms, a) for a in raw)
    else:
        if not isinstance(raw, list):
            raise InputError(f"subset element must be an array, got {json.dumps(raw)}")
        x = frozenset(decode_element(base.atoms, a) for a in raw)
    if not isinstance(x, (str, tuple, frozenset)) or x not in base:
        raise InputError(f"unknown element {json.dumps(raw)}")
    return x


def encode_element(base: Base, x):
    kind = base.kind
    if kind == "atomic":
        return x
    if kind == "product":
        return [encode_element(base.left, x[0]), encode_element(base.right, x[1])]
    if kind == "lists":
        return [encode_element(base.atoms, a) for a in x]
    return [encode_element(base.atoms, a) for a in sorted(x, key=base.atoms.index)]


def decode_subset(base: Base, raw) -> Subset:
    if not isinstance(raw, list):
        raise InputError("a subset must be an array of elements")
    return base.subset(decode_element(base, x) for x in raw)


def encode_subset(U: Subset) -> list:
    return [encode_element(U.base, x) for x in U]


def _int(x, what):
    if not isinstance(x, int) or isinstance(x, bool):
        raise InputError(f"{what} must be an integer")
    return x


def _to_tuple(x):
    return tuple(_to_tuple(v) for v in x) if isinstance(x, list) else x


def _to_list(x):
    return [_to_list(v) for v in x] if isinstance(x, tuple) else x


# -- axioms and operations ------------------------------------------------

def decode_axioms(base: Base, raw) -> AxiomSet:
    if not isinstance(raw, list):
        raise InputError("'axioms' must be an array")
    rows = [[] for _ in base.elements]
    for entry in raw:
        if not isinstance(entry, dict) or "elem" not in entry or "cover" not in entry:
            raise InputError("each axiom needs 'elem' and 'cover'")
        i = base.index(decode_element(base, entry["elem"]))
        cover = decode_subset(base, entry["cover"])
        tag = entry.get("tag", "user")
        if tag not in TAGS:
            raise InputError(f"unknown axiom tag {tag!r}")
        ident = _to_tuple(entry["id"]) if "id" in entry else ("user", len(rows[i]) + 1)
        rows[i].append(Axiom(i, ident, cover, tag))
    return AxiomSet(base, rows)


def encode_axioms(A: AxiomSet, full: bool = True) -> list:
    base = A.base
    out = []
    for ax in A:
        entry = {"elem": encode_element(base, base.element(ax.head)),
                 "cover": encode_subset(ax.cover)}
        if full:
            entry["tag"] = ax.tag
            entry["id"] = _to_list(ax.ident)
        out.append(entry)
    return out


def decode_operation(base: Base, raw) -> DeltaOp | None:
    if raw is None:
        return None
    if not isinstance(raw, dict) or "kind" not in raw or "payload" not in raw:
        raise InputError("'operation' needs 'kind' and 'payload'")
    kind, payload = raw["kind"], raw["payload"]
    el = lambda v: decode_element(base, v)
    if kind == "table":
        table = {}
        for row in payload:
            if not isinstance(row, list) or len(row) != 3:
                raise InputError("table rows are [a, b, [values]]")
            table[el(row[0]), el(row[1])] = list(decode_subset(base, row[2]))
        delta = make_delta(base, "table", table)
        over = raw.get("overflow", [])
        if over:
            pairs = frozenset((base.index(el(a)), base.index(el(b))) for a, b in over)
            delta = DeltaOp(base, delta.table, "table", None, pairs)
        return delta
    if kind == "preorder":
        return make_delta(base, "preorder", [(el(x), el(y)) for x, y in payload])
    if kind == "monoid":
        if not isinstance(payload, dict) or "table" not in payload or "unit" not in payload:
            raise InputError("monoid payload needs 'table' and 'unit'")
        table = {(el(a), el(b)): el(c) for a, b, c in payload["table"]}
        return make_delta(base, "monoid", table, unit=el(payload["unit"]))
    raise InputError(f"unknown operation kind {kind!r}")


def encode_operation(delta: DeltaOp | None):
    if delta is None:
        return None
    base = delta.base
    enc = lambda x: encode_element(base, x)
    if delta.kind == "preorder":
        return {"kind": "preorder", "payload": [[enc(x), enc(y)] for x, y in delta.payload]}
    if delta.kind == "monoid":
        p = delta.payload
        return {"kind": "monoid", "payload": {
            "table": [[enc(a), enc(b), enc(c)] for (a, b), c in p["table"]],
            "unit": enc(p["unit"])}}
    n = len(base)
    rows = [[enc(base.element(i)), enc(base.element(j)),
             encode_subset(Subset(base, delta.table[i][j]))]
            for i in range(n) for j in range(n)]
    out = {"kind": "table", "payload": rows}
    if delta.overflow:
        out["overflow"] = [[enc(base.element(i)), enc(base.element(j))]
                           for i, j in sorted(delta.overflow)]
    return out


# -- presentation files ---------------------------------------------------

@dataclass
class PresentationFile:
    base: Base
    axioms: AxiomSet
    delta: DeltaOp | None
    unit: Subset | None
    mode: str

    def build(self):
        """A GeneratedCover for basic mode, otherwise an OpCover."""
        if self.mode == "basic":
            return generate_basic(self.base, self.axioms)
        if self.mode == "circ":
            unit = self.unit if self.unit is not None else self.base.empty()
            return circ_basic_cover(self.base, self.axioms, self.delta, unit)
        if self.mode == "convergent":
            return generate_convergent(self.base, self.axioms, self.delta, self.unit)
        return generate_formal(self.base, self.axioms, self.delta)

    def cover(self) -> GeneratedCover:
        built = self.build()
        return getattr(built, "cover", built)

    def circ(self) -> OpCover:
        """The underlying cover with its operation and unit, without generated laws."""
        if self.delta is None:
            raise InputError("this presentation has no operation")
        unit = self.unit if self.unit is not None else self.base.empty()
        return circ_basic_cover(self.base, self.axioms, self.delta, unit)

    def to_json(self) -> dict:
        out = {"base": encode_base(self.base),
               "axioms": encode_axioms(self.axioms, full=_needs_ids(self.axioms)),
               "operation": encode_operation(self.delta)}
        if self.unit is not None:
            out["unit"] = encode_subset(self.unit)
        out["mode"] = self.mode
        return out


def _needs_ids(A: AxiomSet) -> bool:
    """Plain user axioms numbered in order round-trip without explicit ids."""
    for row in A.entries:
        for k, ax in enumerate(row, 1):
            if ax.tag != "user" or ax.ident != ("user", k):
                return True
    return False


def decode_presentation(raw) -> PresentationFile:
    if not isinstance(raw, dict):
        raise InputError("a presentation file must be a JSON object")
    unknown = set(raw) - {"base", "axioms", "operation", "unit", "mode"}
    if unknown:
        raise InputError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if "base" not in raw:
        raise InputError("missing field 'base'")
    base = decode_base(raw["base"])
    axioms = decode_axioms(base, raw.get("axioms", []))
    delta = decode_operation(base, raw.get("operation"))
    unit = decode_subset(base, raw["unit"]) if raw.get("unit") is not None else None
    mode = raw.get("mode", "basic" if delta is None else "convergent")
    if mode not in MODES:
        raise InputError(f"mode must be one of {', '.join(MODES)}")
    if mode != "basic" and delta is None:
        raise InputError(f"mode {mode!r} requires an operation")
    return PresentationFile(base, axioms, delta, unit, mode)


def presentation_of(oc, mode: str | None = None) -> PresentationFile:
    """Wrap a generated result back into a file description."""
    if isinstance(oc, OpCover):
        return PresentationFile(oc.base, oc.user_axioms, oc.delta, oc.unit, mode or oc.mode)
    return PresentationFile(oc.base, oc.axioms, None, None, "basic")


def load_json(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})")


def load_presentation(path) -> PresentationFile:
    return decode_presentation(load_json(path))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


# -- relations ------------------------------------------------------------

def decode_relation(raw, source: Base, target: Base) -> Relation:
    pairs = raw.get("pairs") if isinstance(raw, dict) else raw
    if not isinstance(pairs, list):
        raise InputError("a relation is {\"pairs\": [[source, target], ...]}")
    out = []
    for p in pairs:
        if not isinstance(p, list) or len(p) != 2:
            raise InputError("relation pairs are [source, target]")
        out.append((decode_element(source, p[0]), decode_element(target, p[1])))
    return Relation.from_pairs(source, target, out)


def encode_relation(r: Relation) -> dict:
    return {"source": encode_base(r.source), "target": encode_base(r.target),
            "pairs": [[encode_element(r.source, a), encode_element(r.target, b)]
                      for a, b in r.pairs()]}


def mask_labels(base: Base, mask: int) -> list:
    return [base.label(base.element(i)) for i in bits(mask)]
