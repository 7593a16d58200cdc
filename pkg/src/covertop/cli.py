"""Command-line interface.

Exit codes: 0 success (including a failed law, which is reported as data),
2 invalid input, 3 size cap exceeded, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import operations as ops
from .core import Base, Subset
from .errors import InputError, InvariantError, SizeCapError
from .formats import (PresentationFile, decode_relation, dumps, encode_relation, load_json,
                      load_presentation, presentation_of, write_json)
from .free import DEFAULT_DEPTH, L, O, Q, bounded_derive, check_circ_basic, parse_goal
from .generation import OpCover
from .morphisms import (is_basic_cover_map, is_convergent_map, is_formal_map,
                        is_unital_map)
from .presentations import (as_bullet_formal, as_leq_formal, dot_axioms, dot_construction,
                            is_lhd_formal, is_unary, m_preorder)
from .saturation import sat_lattice
from .tensor import tensor_cover

EXIT_INPUT, EXIT_CAP, EXIT_INVARIANT = 2, 3, 4


def split_labels(text: str) -> list:
    """Split on commas that are not nested inside brackets, braces or parentheses."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    last = "".join(cur).strip()
    if last or out:
        out.append(last)
    return [x for x in out if x != ""]


def parse_subset(base: Base, text: str | None) -> Subset:
    if not text:
        return base.empty()
    return base.subset(base.by_label(x) for x in split_labels(text))


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj))


def _report(rep) -> dict:
    out = {"passed": rep.passed, "witness": rep.witness, "checked": rep.checked}
    if rep.note:
        out["note"] = rep.note
    return out


def _op_cover(pf: PresentationFile) -> OpCover:
    built = pf.build()
    if not isinstance(built, OpCover):
        raise InputError("this command needs a presentation with an operation")
    return built


# -- commands -------------------------------------------------------------

def cmd_saturate(args) -> None:
    pf = load_presentation(args.input)
    cover = pf.cover()
    U = parse_subset(pf.base, args.subset)
    print(" ".join(cover.saturate(U).labels()))


def _node(mask: int) -> str:
    return "n" + hashlib.sha1(str(mask).encode()).hexdigest()[:12]


def render_dot(lattice) -> str:
    lines = ["digraph sat {", "  rankdir=BT;"]
    for p in lattice:
        lines.append(f'  {_node(p.mask)} [label="{{{",".join(p.labels())}}}"];')
    for i, j in lattice.hasse_edges():
        lines.append(f"  {_node(lattice.points[i].mask)} -> {_node(lattice.points[j].mask)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_lattice(args) -> None:
    pf = load_presentation(args.input)
    lat = sat_lattice(pf.cover())
    print(f"{len(lat)} points")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(render_dot(lat))


def _law_jobs(pf: PresentationFile):
    """Zero-argument checkers for the laws relevant to the file's mode."""
    built = pf.build()
    if pf.mode == "basic":
        cover = built
        jobs = [lambda: is_unary(cover)]
        if len(cover.base) <= 5:
            jobs.insert(0, lambda: is_lhd_formal(cover))
        return jobs
    cover, op = built.cover, built.op
    n = len(cover.base)
    if pf.mode == "formal":
        jobs = [lambda: ops.check_localization(cover, op),
                lambda: ops.check_associativity(cover, op, ops._auto(n, ops.TRIPLE_CAP)),
                lambda: ops.check_commutativity(cover, op),
                lambda: ops.check_weakening(cover, op),
                lambda: ops.check_contraction(cover, op),
                lambda: ops.check_top_unit(cover, op)]
        if n <= ops.PAIR_CAP:
            jobs += [lambda: ops.check_frame_equality(cover, op),
                     lambda: ops.check_meet_coincidence(cover, op)]
        return jobs
    unit = built.unit
    jobs = [lambda: ops.check_localization(cover, op),
            lambda: ops.check_stability(cover, op, "element" if n <= ops.PAIR_CAP else "subset"),
            lambda: ops.check_associativity(cover, op, ops._auto(n, ops.TRIPLE_CAP)),
            lambda: ops.check_commutativity(cover, op, ops._auto(n, ops.PAIR_CAP))]
    if n <= ops.PAIR_CAP:
        jobs.append(lambda: ops.check_well_defined(cover, op))
    if n <= ops.TRIPLE_CAP:
        jobs.append(lambda: ops.check_distributivity(cover, op))
    if n <= ops.ADJUNCTION_CAP:
        jobs.append(lambda: ops.check_adjunction(cover, op))
    if unit is not None:
        jobs.append(lambda: ops.check_unit(cover, op, unit))
    jobs += [lambda: ops.check_weakening(cover, op), lambda: ops.check_contraction(cover, op)]
    if n <= ops.PAIR_CAP:
        jobs += [lambda: ops.check_frame_equality(cover, op),
                 lambda: ops.check_meet_coincidence(cover, op)]
    if pf.mode == "circ":
        circ = check_circ_basic(built)
        jobs += [lambda r=r: _renamed(r, "circ_" + r.law) for r in circ]
    return jobs


def _renamed(rep, law):
    rep.law = law
    return rep


def cmd_laws(args) -> None:
    pf = load_presentation(args.input)
    jobs = _law_jobs(pf)
    with ThreadPoolExecutor(max_workers=args.threads) as pool:
        reports = list(pool.map(lambda f: f(), jobs))
    _emit({"mode": pf.mode, "laws": {r.law: _report(r) for r in reports}})


LEVELS = {"basic": None, "convergent": is_convergent_map, "unital": is_unital_map,
          "formal": is_formal_map}


def cmd_checkmap(args) -> None:
    src, tgt = load_presentation(args.source), load_presentation(args.target)
    r = decode_relation(load_json(args.relation), src.base, tgt.base)
    if args.level == "basic":
        rep = is_basic_cover_map(r, src.cover(), tgt.cover(), args.method)
    else:
        S, T = src.build(), tgt.build()
        if not isinstance(S, OpCover) or not isinstance(T, OpCover):
            raise InputError(f"level {args.level!r} needs operations on both sides")
        rep = LEVELS[args.level](r, S, T, args.method)
    _emit({"level": args.level, **_report(rep)})


def cmd_tensor(args) -> None:
    left, right = load_presentation(args.left), load_presentation(args.right)
    t = tensor_cover(left.cover(), right.cover())
    pf = presentation_of(t)
    if args.out:
        write_json(args.out, pf.to_json())
    _emit({"size": len(t.base), "axioms": len(t.axioms), "points": len(sat_lattice(t))
           if len(t.base) <= 16 else None})


def cmd_convert(args) -> None:
    pf = load_presentation(args.input)
    out: dict = {"to": args.to}
    written = None
    if args.to == "lhd":
        rep = is_lhd_formal(pf.cover())
        out["lhd_formal"] = _report(rep)
    elif args.to == "leq":
        delta = pf.delta
        if delta is None or delta.kind not in ("preorder", "monoid"):
            raise InputError("conversion to leq needs a preorder or a monoid operation")
        if delta.kind == "monoid":
            delta = m_preorder(delta)
        pres = as_leq_formal(delta, pf.axioms)
        out["leq_left"] = _report(pres.checks[0])
        out["preorder"] = [[delta.base.label(x), delta.base.label(y)] for x, y in delta.payload]
        written = presentation_of(pres.generated, "formal")
    elif args.to == "bullet":
        if pf.delta is None or pf.delta.kind != "monoid":
            raise InputError("conversion to bullet needs a monoid operation")
        pres = as_bullet_formal(pf.delta, pf.axioms)
        out["points"] = len(sat_lattice(pres.cover))
        written = presentation_of(pres.generated, "formal")
    else:
        dot = dot_construction(pf.cover())
        P = dot.presentation.cover.base
        out["size"] = len(P)
        out["points"] = len(sat_lattice(dot.presentation.cover)) if len(P) <= 16 else None
        if args.out:
            written = PresentationFile(P, dot_axioms(dot), dot.presentation.op.delta,
                                       P.subset([frozenset()]), "circ")
    if args.out and written is not None:
        write_json(args.out, written.to_json())
    _emit(out)


def cmd_free(args) -> None:
    pf = load_presentation(args.input)
    if args.apply == "O":
        stage = O(pf.cover(), args.max_len)
    elif args.apply == "Q":
        stage = Q(pf.circ())
    else:
        stage = L(_op_cover(pf))
    res = stage.result
    if args.out:
        write_json(args.out, presentation_of(res).to_json())
    if args.map_out:
        write_json(args.map_out, encode_relation(stage.unit_map))
    _emit({"apply": args.apply, "mode": res.mode, "size": len(res.base),
           "axioms": len(res.cover.axioms), "unit_map": _report(stage.report)})


def cmd_derive(args) -> None:
    pf = load_presentation(args.input)
    cover = pf.cover()
    elem, K = parse_goal(pf.base, args.goal)
    tree = bounded_derive(cover, elem, K, args.depth)
    if tree is None:
        _emit({"found": False, "depth": args.depth})
    else:
        _emit({"found": True, "depth": args.depth, "tree": tree.to_json()})


def cmd_implication(args) -> None:
    pf = load_presentation(args.input)
    oc = _op_cover(pf)
    U, V = parse_subset(pf.base, args.left), parse_subset(pf.base, args.right)
    print(" ".join(ops.implication(oc.cover, oc.op, U, V).labels()))


# -- entry point ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="covertop", description="Finite covers, their laws and maps.")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                   help="worker threads for law sweeps")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("saturate", help="print the saturation of a subset")
    s.add_argument("--input", required=True)
    s.add_argument("--subset", default="")
    s.set_defaults(fn=cmd_saturate)

    s = sub.add_parser("lattice", help="count saturated subsets, optionally write a DOT diagram")
    s.add_argument("--input", required=True)
    s.add_argument("--dot")
    s.set_defaults(fn=cmd_lattice)

    s = sub.add_parser("laws", help="run the law checks for the file's mode")
    s.add_argument("--input", required=True)
    s.set_defaults(fn=cmd_laws)

    s = sub.add_parser("checkmap", help="validate a relation as a cover map")
    s.add_argument("--source", required=True)
    s.add_argument("--target", required=True)
    s.add_argument("--relation", required=True)
    s.add_argument("--level", choices=list(LEVELS), default="basic")
    s.add_argument("--method", choices=["axioms", "exhaustive"], default="axioms")
    s.set_defaults(fn=cmd_checkmap)

    s = sub.add_parser("tensor", help="tensor product of two basic covers")
    s.add_argument("--left", required=True)
    s.add_argument("--right", required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_tensor)

    s = sub.add_parser("convert", help="change presentation style")
    s.add_argument("--input", required=True)
    s.add_argument("--to", choices=["lhd", "leq", "bullet", "dot"], required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_convert)

    s = sub.add_parser("free", help="apply O, Q or L")
    s.add_argument("--apply", choices=["O", "Q", "L"], required=True)
    s.add_argument("--input", required=True)
    s.add_argument("--max-len", type=int, default=3)
    s.add_argument("--out")
    s.add_argument("--map-out")
    s.set_defaults(fn=cmd_free)

    s = sub.add_parser("derive", help="bounded derivation search")
    s.add_argument("--input", required=True)
    s.add_argument("--goal", required=True)
    s.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    s.set_defaults(fn=cmd_derive)

    s = sub.add_parser("implication", help="print U → V")
    s.add_argument("--input", required=True)
    s.add_argument("--left", default="")
    s.add_argument("--right", default="")
    s.set_defaults(fn=cmd_implication)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        args.fn(args)
    except SizeCapError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CAP
    except InvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:  # anything else is a bug
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    return 0


if __name__ == "__main__":
    sys.exit(main())
