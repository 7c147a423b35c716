"""Command-line interface: ``foldwidth SUBCOMMAND ...``.

Data goes to stdout, diagnostics to stderr.  Exit status is 0 on success,
1 when an input fails validation and 2 on usage errors.  ``-`` reads a
document from stdin.
"""

from __future__ import annotations

import argparse
import json
import sys

from .assembly import build_surface, enumerate_assemblies
from .catalog import EnumBounds, entry_from, enumerate_diagrams, export_csv, export_jsonl, verdict
from .errors import BoundExceeded, FoldDiagramError, RealizationUnavailable
from .generators import (BraidSpec, RibbonSpec, Tube, connected_sum, gen_braid_closure, gen_ribbon,
                         gen_spun_bridge, gen_trivial, split)
from .invariants import compute_invariants
from .io import parse_document, serialize_document
from .labeling import enumerate_labelings
from .render import render_svg


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str):
    return parse_document(_read(path))


def _labelings(doc):
    """Labelings shipped with the document, else every admissible one."""
    return list(doc.labelings) or enumerate_labelings(doc.diagram)


def _first_labeling(doc):
    labs = _labelings(doc)
    if not labs:
        raise FoldDiagramError("diagram admits no width labeling")
    return labs[0]


def _emit(text: str, out: str | None = None):
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args):
    doc = _load(args.file)
    d = doc.diagram
    print(f"ok: {len(d.components)} components, {sum(len(c.vertices) for c in d.components)} vertices, "
          f"{len(d.faces)} faces, {len(d.fold_components())} loops, "
          f"{len(doc.labelings)} labelings verified")
    return 0


def cmd_labelings(args):
    doc = _load(args.file)
    labs = enumerate_labelings(doc.diagram)
    print(json.dumps([lab.as_dict() for lab in labs]))
    print(f"count {len(labs)}", file=sys.stderr)
    return 0


def _require_labelings(doc):
    labs = _labelings(doc)
    if not labs:
        print("error: diagram admits no width labeling", file=sys.stderr)
    return labs


def cmd_invariants(args):
    doc = _load(args.file)
    labs = _require_labelings(doc)
    for lab in labs:
        print(compute_invariants(doc.diagram, lab).line())
    return 0 if labs else 1


def cmd_assemble(args):
    doc = _load(args.file)
    labs = _require_labelings(doc)
    for i, lab in enumerate(labs):
        seen = {}
        for asm in enumerate_assemblies(doc.diagram, lab, max_results=args.max_results,
                                        monodromy=args.monodromy, orientable_only=args.orientable):
            s = build_surface(doc.diagram, lab, asm)
            key = (s.chi, s.orientable, tuple(p.name for p in s.pieces))
            seen[key] = seen.get(key, 0) + 1
        widths = " ".join(map(str, lab.widths))
        print(f"labeling {i} [{widths}]: {sum(seen.values())} assemblies")
        for (chi, orient, names), n in sorted(seen.items()):
            print(f"  chi={chi} orientable={'yes' if orient else 'no'} "
                  f"components={len(names)} pieces={'+'.join(names)} count={n}")
    return 0 if labs else 1


def cmd_verdict(args):
    doc = _load(args.file)
    labs = _require_labelings(doc)
    for lab in labs:
        e = entry_from(doc.diagram, lab, monodromy=args.monodromy)
        print(f"{verdict(e, assume_connected=args.assume_connected)}  [{e.invariants.line()}]")
    return 0 if labs else 1


def _parse_tube(text: str) -> Tube:
    """``START-END`` or ``START-END:P1,P2`` (balls passed over)."""
    try:
        ends, _, passes = text.partition(":")
        a, b = ends.split("-")
        over = tuple(int(p) for p in passes.split(",") if p)
        return Tube(int(a), int(b), over)
    except ValueError:
        raise UsageError(f"bad tube {text!r}; expected START-END[:P1,P2,...]") from None


def _parse_parents(text: str):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        out.append(None if tok in ("-", "", "none", "None") else int(tok))
    return out


def cmd_generate(args):
    fam = args.family
    if fam == "trivial":
        parents = _parse_parents(args.parents) if args.parents else None
        rising = [t == "1" for t in args.rising.split(",")] if args.rising else None
        d, lab = gen_trivial(parents, rising)
        name = "nested circles"
    elif fam == "ribbon":
        spec = RibbonSpec(args.balls, tuple(_parse_tube(t) for t in args.tube or ()))
        d, lab = gen_ribbon(spec)
        name = f"ribbon k={args.balls} tubes={len(spec.tubes)}"
    elif fam == "spun":
        d, lab = gen_spun_bridge(args.m)
        name = f"spun {args.m}-bridge"
    elif fam == "braid":
        d, lab = gen_braid_closure(BraidSpec(args.b, args.r))
        name = f"braid closure b={args.b} r={args.r}"
    else:
        a, b = _load(args.first), _load(args.second)
        d, lab = connected_sum(a.diagram, _first_labeling(a), b.diagram, _first_labeling(b))
        name = "connected sum"
    _emit(serialize_document(d, [lab], {"diagram": name}), args.out)
    return 0


def cmd_split(args):
    doc = _load(args.file)
    pieces = split(doc.diagram, _first_labeling(doc))
    if args.piece:
        d, lab = pieces[args.piece - 1]
        _emit(serialize_document(d, [lab], {"diagram": f"piece {args.piece}"}), args.out)
    else:
        docs = [json.loads(serialize_document(d, [lab])) for d, lab in pieces]
        _emit(json.dumps(docs, indent=2) + "\n", args.out)
    return 0


def cmd_enumerate(args):
    bounds = EnumBounds(args.max_crossings, args.max_cusps, args.max_loops, args.max_tw, args.reflect,
                        args.monodromy)
    catalog = enumerate_diagrams(bounds, workers=args.workers, max_entries=args.max_entries)
    fmt = args.format or ("csv" if args.out and args.out.endswith(".csv") else "jsonl")
    text = export_csv(catalog) if fmt == "csv" else export_jsonl(catalog)
    _emit(text, args.out)
    print(f"{len(catalog)} entries", file=sys.stderr)
    return 0


def cmd_render(args):
    doc = _load(args.file)
    labs = _labelings(doc)
    if not labs:
        print("error: diagram admits no width labeling", file=sys.stderr)
        return 1
    if not 0 <= args.labeling < len(labs):
        raise UsageError(f"labeling index {args.labeling} out of range (0..{len(labs) - 1})")
    _emit(render_svg(doc.diagram, labs[args.labeling]), args.out)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="foldwidth", description="Fold diagrams of surfaces in 4-space.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, func, helptext in (("validate", cmd_validate, "check a document"),
                                 ("labelings", cmd_labelings, "list admissible width labelings"),
                                 ("invariants", cmd_invariants, "w, tw, chi and counts per labeling")):
        s = sub.add_parser(name, help=helptext)
        s.add_argument("file")
        s.set_defaults(func=func)

    s = sub.add_parser("assemble", help="surfaces covered by sheet assemblies")
    s.add_argument("file")
    s.add_argument("--max-results", type=int, default=256)
    s.add_argument("--monodromy", action="store_true", help="allow sheet permutations around holes")
    s.add_argument("--orientable", action="store_true", help="only orientable gluings")
    s.set_defaults(func=cmd_assemble)

    s = sub.add_parser("verdict", help="triviality verdict per labeling")
    s.add_argument("file")
    s.add_argument("--assume-connected", action="store_true")
    s.add_argument("--monodromy", action="store_true", help="allow sheet permutations around holes")
    s.set_defaults(func=cmd_verdict)

    s = sub.add_parser("generate", help="build a diagram family")
    fams = s.add_subparsers(dest="family", required=True)
    t = fams.add_parser("trivial")
    t.add_argument("--parents", help="comma list of parent indices, '-' for a root")
    t.add_argument("--rising", help="comma list of 0/1, one per circle")
    r = fams.add_parser("ribbon")
    r.add_argument("--balls", type=int, default=1)
    r.add_argument("--tube", action="append", help="START-END[:P1,P2] (repeatable)")
    sp = fams.add_parser("spun")
    sp.add_argument("--m", type=int, default=2)
    b = fams.add_parser("braid")
    b.add_argument("--b", type=int, required=True)
    b.add_argument("--r", type=int, default=0)
    c = fams.add_parser("consum")
    c.add_argument("first")
    c.add_argument("second")
    for fp in (t, r, sp, b, c):
        fp.add_argument("--out")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("split", help="undo a connected sum")
    s.add_argument("file")
    s.add_argument("--piece", type=int, choices=(1, 2))
    s.add_argument("--out")
    s.set_defaults(func=cmd_split)

    s = sub.add_parser("enumerate", help="exhaustive catalog within bounds")
    defaults = EnumBounds()
    s.add_argument("--max-crossings", type=int, default=defaults.max_crossings)
    s.add_argument("--max-cusps", type=int, default=defaults.max_cusps)
    s.add_argument("--max-loops", type=int, default=defaults.max_loops)
    s.add_argument("--max-tw", type=int, default=defaults.max_tw)
    s.add_argument("--reflect", action="store_true", help="identify mirror images")
    s.add_argument("--monodromy", action="store_true", help="allow sheet permutations around holes")
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--max-entries", type=int, default=200_000)
    s.add_argument("--format", choices=("jsonl", "csv"))
    s.add_argument("--out")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("render", help="SVG drawing")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.add_argument("--labeling", type=int, default=0)
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        if isinstance(exc, FoldDiagramError):
            where = f" at {exc.where}" if exc.where else ""
            print(f"error: {type(exc).__name__}{where}: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 1
    except (BoundExceeded, RealizationUnavailable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
