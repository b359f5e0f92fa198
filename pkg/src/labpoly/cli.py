"""Command-line interface.

Every subcommand reads one (or two) polytope JSON files, works in exact
arithmetic, and prints a deterministic report: the same input always produces
byte-identical output.  ``--json`` switches any subcommand to a machine
readable report.

Exit codes: 0 success, 1 validation failure (the file parses but is not a
labeled rational simple polytope, or an argument like --xi fails a required
property), 2 I/O or parse error, 3 internal invariant violation (the two
independent group computations disagree, or an exact identity fails; this
must never happen).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import warnings

from . import delzant as dz
from . import fan as fan_mod
from . import local_model as lm
from . import morse as morse_mod
from .lattice import format_rational
from .polytope import (
    FormatError,
    ValidationError,
    format_point,
    isomorphism_report,
    load_polytope,
)


def _load(path):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        p = load_polytope(path)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return p


def _emit(obj, as_json):
    if as_json:
        print(json.dumps(obj, indent=2))


def _face_name(p, f):
    if f.codim == p.dim:
        return f"face {list(f.active)} vertex {format_point(p.vertices[f.vertices[0]])}"
    return f"face {list(f.active)}"


def _group_json(g):
    return {"invariant_factors": list(g.invariant_factors), "order": g.order}


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args):
    p = _load(args.file)
    labels = [h.label for h in p.halfspaces]
    if args.json:
        _emit({"valid": True, "dim": p.dim, "facets": len(p.halfspaces),
               "vertices": len(p.vertices), "labels": labels}, True)
    else:
        print(f"valid: dim {p.dim}, {len(p.halfspaces)} facets, "
              f"{len(p.vertices)} vertices, labels {labels}")
    return 0


def cmd_vertices(args):
    p = _load(args.file)
    if args.json:
        _emit({"vertices": [[format_rational(x) for x in v] for v in p.vertices]},
              True)
    else:
        for v in p.vertices:
            print(format_point(v))
    return 0


def cmd_faces(args):
    p = _load(args.file)
    if args.json:
        _emit({"faces": [{"active": list(f.active), "codim": f.codim,
                          "vertices": list(f.vertices)} for f in p.faces]}, True)
    else:
        for f in p.faces:
            print(f"codim {f.codim} active {list(f.active)} "
                  f"vertices {list(f.vertices)}")
    return 0


def cmd_structure_groups(args):
    p = _load(args.file)
    rows = []
    for f in p.proper_faces():
        g = lm.structure_group(p, f)
        rows.append((f, g))
    if args.json:
        _emit({"structure_groups": [
            {"active": list(f.active), "codim": f.codim, **_group_json(g)}
            for f, g in rows]}, True)
    else:
        for f, g in rows:
            print(f"{_face_name(p, f)}: {g}")
    return 0


def cmd_fan(args):
    p = _load(args.file)
    f = fan_mod.build_fan(p)
    if args.json:
        _emit(fan_mod.fan_to_json(f), True)
    else:
        rays = ", ".join(str(tuple(r)) for r in f.rays())
        print(f"dim {f.ambient_dim}, {len(f.cones)} cones, rays [{rays}]")
        for c in f.sorted_cones():
            print("cone " + str([list(g) for g in c.generators]))
    return 0


def cmd_compare(args):
    p = _load(args.file1)
    q = _load(args.file2)
    do_symp = args.symplectic or not args.biholomorphic
    do_biho = args.biholomorphic or not args.symplectic
    out = {}
    lines = []
    if do_symp:
        translation, reason = isomorphism_report(p, q)
        if translation is not None:
            lines.append(f"symplectomorphic (translation by {format_point(translation)})")
            out["symplectomorphic"] = True
            out["translation"] = [format_rational(x) for x in translation]
        else:
            lines.append(f"NOT symplectomorphic ({reason})")
            out["symplectomorphic"] = False
            out["reason"] = reason
    if do_biho:
        equal = fan_mod.fans_equal(fan_mod.build_fan(p), fan_mod.build_fan(q))
        lines.append("fans equal: biholomorphic" if equal
                      else "fans differ: not biholomorphic")
        out["fans_equal"] = equal
    if args.json:
        _emit(out, True)
    else:
        for line in lines:
            print(line)
    return 0


def cmd_delzant(args):
    p = _load(args.file)
    d = dz.build_construction(p)
    info = dz.kernel_group(d)
    reg = dz.verify_regular_level(d, p)
    stab = [(f, dz.face_stabilizer(d, f)) for f in p.proper_faces()]
    if args.json:
        _emit({
            "projection": [list(r) for r in d.projection],
            "scaled_offsets": [format_rational(x) for x in d.scaled_offsets],
            "kernel_basis": [list(r) for r in d.kernel_rows],
            "level": [format_rational(x) for x in d.level],
            "torus_dim": info.torus_dim,
            "component_group": _group_json(info.component_group),
            "stabilizers": [
                {"active": list(f.active), **_group_json(g)} for f, g in stab],
            "regular": reg.regular,
            "max_stabilizer_order": reg.max_stabilizer_order,
        }, True)
    else:
        print("projection:")
        for r in d.projection:
            print(f"  {list(r)}")
        print(f"scaled offsets: {[format_rational(x) for x in d.scaled_offsets]}")
        print("kernel basis:")
        for r in d.kernel_rows:
            print(f"  {list(r)}")
        print(f"level: {[format_rational(x) for x in d.level]}")
        print(f"torus dim: {info.torus_dim}")
        print(f"component group: {info.component_group}")
        print("stabilizers:")
        for f, g in stab:
            print(f"  {_face_name(p, f)}: {g}")
        if reg.regular:
            print(f"regular level: yes (max stabilizer order {reg.max_stabilizer_order})")
        else:
            print(f"regular level: NO ({reg.failure})")
    return 0


def cmd_stabilizers(args):
    p = _load(args.file)
    d = dz.build_construction(p)
    rows = []
    agree = True
    for f in p.proper_faces():
        a = dz.face_stabilizer(d, f)
        b = lm.structure_group(p, f)
        same = a.invariant_factors == b.invariant_factors
        agree = agree and same
        rows.append((f, a, b, same))
    if args.json:
        _emit({"faces": [
            {"active": list(f.active), "reduction": _group_json(a),
             "local": _group_json(b), "agree": same}
            for f, a, b, same in rows],
            "oracles_agree": agree}, True)
    else:
        for f, a, b, same in rows:
            mark = "agree" if same else "DISAGREE"
            print(f"{_face_name(p, f)}: reduction {a}, local {b}, {mark}")
        print("verdict: oracles agree on all faces" if agree
              else "verdict: ORACLE DISAGREEMENT")
    return 0 if agree else 3


def _parse_xi(text, dim):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != dim:
        raise FormatError(f"--xi needs {dim} comma-separated integers")
    try:
        return tuple(int(s) for s in parts)
    except ValueError as exc:
        raise FormatError(f"--xi must be integers: {exc}") from exc


def cmd_betti(args):
    p = _load(args.file)
    if args.xi is not None:
        xi = _parse_xi(args.xi, p.dim)
        if not any(xi):
            raise ValidationError("xi must be nonzero")
        if not morse_mod.is_generic(p, xi):
            raise ValidationError(f"xi = {tuple(xi)} is not generic for this polytope")
    else:
        xi = morse_mod.random_generic_direction(p, random.Random(args.seed))
    rep = morse_mod.morse_report(p, xi)
    if args.json:
        _emit({"xi": list(xi),
               "vertex_indices": [
                   {"vertex": [format_rational(x) for x in v], "index": k}
                   for v, k in zip(p.vertices, rep.vertex_indices)],
               "poincare": list(rep.poincare)}, True)
    else:
        print(f"xi = {tuple(xi)}")
        for v, k in zip(p.vertices, rep.vertex_indices):
            print(f"vertex {format_point(v)}: index {k}")
        print(f"poincare coefficients: {list(rep.poincare)}")
    return 0


def cmd_verify(args):
    p = _load(args.file)
    d = dz.build_construction(p)
    checks = []

    samples = dz.convex_samples(p, args.samples, args.seed)
    red = dz.verify_reduction_invariants(d, p, samples)
    checks.append(("reduction invariants "
                   f"({red.samples_checked} samples, vertices attained)",
                   red.passed, red.failure))

    disagreements = []
    for f in p.proper_faces():
        a = dz.face_stabilizer(d, f)
        b = lm.structure_group(p, f)
        if a.invariant_factors != b.invariant_factors:
            disagreements.append(f"face {list(f.active)}: {a} vs {b}")
    checks.append((f"stabilizer/structure-group agreement "
                   f"({len(p.proper_faces())} faces)",
                   not disagreements,
                   "; ".join(disagreements) or None))

    rng = random.Random(args.seed)
    polys = set()
    for _ in range(5):
        xi = morse_mod.random_generic_direction(p, rng)
        polys.add(morse_mod.poincare_polynomial(p, xi))
    base = next(iter(polys))
    betti_ok = (len(polys) == 1 and sum(base) == len(p.vertices)
                and morse_mod.morse_inequality_check(base, base) == ())
    checks.append(("Betti numbers independent of direction (5 draws)",
                   betti_ok, None if betti_ok else f"saw {sorted(polys)}"))

    reg = dz.verify_regular_level(d, p)
    checks.append(("regular level", reg.regular, reg.failure))

    all_ok = all(ok for _, ok, _ in checks)
    if args.json:
        _emit({"checks": [{"name": name, "passed": ok, "detail": detail}
                          for name, ok, detail in checks],
               "passed": all_ok}, True)
    else:
        for name, ok, detail in checks:
            line = f"{'PASS' if ok else 'FAIL'}: {name}"
            if detail and not ok:
                line += f" ({detail})"
            print(line)
        print("verify: PASS" if all_ok else "verify: FAIL")
    return 0 if all_ok else 3


# ---------------------------------------------------------------------------
# parser and dispatch
# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(
        prog="labpoly",
        description="Exact computations on labeled rational simple polytopes")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, two_files=False):
        sp = sub.add_parser(name, help=help_text)
        if two_files:
            sp.add_argument("file1")
            sp.add_argument("file2")
        else:
            sp.add_argument("file")
        sp.add_argument("--json", action="store_true",
                        help="machine readable output")
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "check the file is a labeled simple polytope")
    add("vertices", cmd_vertices, "list the vertices")
    add("faces", cmd_faces, "list the face lattice")
    add("structure-groups", cmd_structure_groups,
        "orbifold structure group of every proper face")
    add("fan", cmd_fan, "print the fan of face cones")
    cp = add("compare", cmd_compare,
             "compare two polytopes up to translation and by fan", two_files=True)
    cp.add_argument("--symplectic", action="store_true",
                    help="only the label-preserving translation check")
    cp.add_argument("--biholomorphic", action="store_true",
                    help="only the fan equality check")
    add("delzant", cmd_delzant, "reduction presentation (projection, kernel, level)")
    add("stabilizers", cmd_stabilizers,
        "cross-check face stabilizers against structure groups")
    bt = add("betti", cmd_betti, "Morse indices and Poincare coefficients")
    bt.add_argument("--xi", help="direction as comma-separated integers")
    bt.add_argument("--seed", type=int, default=0,
                    help="seed for the random generic direction")
    vf = add("verify", cmd_verify, "run the full battery of exact self-checks")
    vf.add_argument("--samples", type=int, default=100,
                    help="number of sample points for the reduction identity")
    vf.add_argument("--seed", type=int, default=0, help="sampling seed")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
