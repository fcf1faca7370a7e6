"""Command-line interface: ``modinv <command> ...``.

Exit codes: 0 success, 1 computation or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import caps
from .errors import BoundViolationError, CapExceededError, ModInvError
from .gb import buchberger, cuts_out_origin
from .gf import make_field
from .inv import invariant_basis
from .poly import parse_polynomial
from .repspec import emit_repspec, parse_repspec
from .rep import (
    alternating_group_4,
    conjugation_automorphism,
    cyclic_group,
    group_from_permutations,
    induce,
    inversion_automorphism,
    klein_four,
    normalizer_twist_module,
    p_times_a_module,
    regular_representation,
    symmetric_group,
    trivial_representation,
    zqzd_summand,
)
from .sigdel import ModuleResult, bounds_report, delta, sigma


def named_group(name: str):
    """``S3``, ``A4``, ``V4``, ``Z<n>``/``C<n>``, or permutations joined by ``;``."""
    key = name.strip()
    m = re.fullmatch(r"[SZCsc](\d+)", key)
    if m:
        n = int(m.group(1))
        return symmetric_group(n) if key[0] in "Ss" else cyclic_group(n)
    if key.upper() == "A4":
        return alternating_group_4()
    if key.upper() in ("V4", "K4"):
        return klein_four()
    if "(" in key:
        return group_from_permutations([p for p in key.split(";") if p.strip()])
    raise ValueError(f"unknown group {name!r}")


def _write(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_spec(path: str):
    with open(path) as fh:
        return parse_repspec(fh.read())


# subcommands


def cmd_field(args):
    f = make_field(args.p, args.roots)
    doc = {"p": f.p, "k": f.k, "modulus": list(f.modulus), "size": f.size}
    print(json.dumps(doc))
    return 0


def cmd_construct(args):
    fam = args.family
    if fam == "regular":
        g = named_group(args.group)
        rep = regular_representation(g, make_field(args.char, args.roots))
    elif fam == "zq-rtimes-zd":
        rep = zqzd_summand(args.q, args.d, args.char, args.i)
    elif fam == "p-times-a":
        rep = p_times_a_module(named_group(args.p_group), args.a_orders, args.char)
    elif fam == "normalizer-twist":
        pg = named_group(args.p_group)
        auto = inversion_automorphism(pg) if args.auto == "inversion" else conjugation_automorphism(pg, args.auto)
        rep = normalizer_twist_module(pg, auto, args.r, args.char)
    elif fam == "induced":
        g = named_group(args.group)
        h = g.generated(_subgroup_elements(g, args.subgroup))
        field = make_field(args.char, args.roots)
        h_rep = regular_representation(h.group, field) if args.module == "regular" else trivial_representation(h.group, field)
        rep = induce(h_rep, g, h)
    else:  # pragma: no cover - argparse restricts the choices
        raise ValueError(fam)
    _write(emit_repspec(rep, args.label), args.out)
    return 0


def _subgroup_elements(g, text: str) -> list[int]:
    """Parent indices of permutations written in cycle notation, separated by ``;``."""
    from .rep.groups import parse_permutation

    if g.labels is None:
        raise ValueError("subgroup generators need a permutation group")
    degree = len(g.labels[0])
    index = {lab: i for i, lab in enumerate(g.labels)}
    out = []
    for piece in text.split(";"):
        if not piece.strip():
            continue
        img = parse_permutation(piece, degree)
        if img not in index:
            raise ValueError(f"{piece.strip()} is not an element of the group")
        out.append(index[img])
    return out


def cmd_invariants(args):
    spec = _read_spec(args.spec)
    degrees = range(1, args.degree + 1) if args.up_to else [args.degree]
    for d in degrees:
        for f in invariant_basis(spec.rep, d, method=args.method).basis:
            print(f"{d}: {f}")
    return 0


def cmd_sigma(args):
    spec = _read_spec(args.spec)
    print((sigma if args.command == "sigma" else delta)(spec.rep).to_json())
    return 0


def cmd_groebner(args):
    field = make_field(args.char, args.roots)
    lines = []
    if args.input:
        with open(args.input) as fh:
            lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    lines += args.polys
    if not lines:
        raise ValueError("no polynomials given")
    polys = [parse_polynomial(t, field, args.nvars) for t in lines]
    if args.action == "basis":
        doc = {"basis": [str(f) for f in buchberger(polys)]}
        print(json.dumps(doc, indent=2))
        return 0
    report = cuts_out_origin(polys, args.nvars)
    doc = {
        "cuts_out_origin": report.verdict,
        "method": report.method,
        "basis": [str(f) for f in report.basis] if report.basis is not None else None,
        "variables": [
            {"variable": f"x{v.index + 1}", "in_radical": v.in_radical, "exponent": v.exponent}
            for v in report.variables
        ],
    }
    print(json.dumps(doc, indent=2))
    return 0


def cmd_verify(args):
    from .verify import run_all, run_criterion

    results = [run_criterion(n) for n in args.only] if args.only else run_all()
    for r in results:
        # timings go to stderr so stdout stays byte-reproducible
        print(r.line(timing=False), flush=True)
        print(f"criterion {r.number}: {r.seconds:.2f}s", file=sys.stderr)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return 2 if failed else 0


def cmd_bounds(args):
    entries = [(p, _read_spec(p), False) for p in args.spec] + [(p, _read_spec(p), True) for p in args.twist]
    if not entries:
        raise ValueError("give at least one --spec or --twist file")
    p = entries[0][1].rep.field.p
    if any(s.rep.field.p != p for _, s, _ in entries):
        raise ValueError("all modules must share the characteristic")
    # one report per group; a twist module usually lives on its own semidirect product
    groups: list = []
    modules: list[list[ModuleResult]] = []
    for path, spec, twist in entries:
        rep = spec.rep
        if twist:
            role = "normalizer-twist"
        else:
            role = "regular" if rep == regular_representation(spec.group, rep.field) else "module"
        result = ModuleResult(spec.label or path, sigma=sigma(rep), delta=delta(rep), role=role)
        for k, grp in enumerate(groups):
            if grp == spec.group:
                modules[k].append(result)
                break
        else:
            groups.append(spec.group)
            modules.append([result])
    reports = [bounds_report(g, p, mods, raise_on_violation=False) for g, mods in zip(groups, modules)]
    print(json.dumps({"reports": [r.to_dict() for r in reports]}, indent=2))
    return 0 if all(r.ok for r in reports) else 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors (exit 1); exit 2 is reserved for verification failures
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="modinv", description="Modular invariant theory workbench.")
    ap.add_argument("--cap-group", type=int, help=f"group order cap (default {caps.GROUP_ORDER})")
    ap.add_argument("--cap-dim", type=int, help=f"module dimension cap (default {caps.MODULE_DIM})")
    ap.add_argument("--cap-monomials", type=int, help=f"monomials per degree cap (default {caps.MONOMIALS})")
    sub = ap.add_subparsers(dest="command", required=True)

    f = sub.add_parser("field", help="build a finite field and print it")
    f.add_argument("p", type=int)
    f.add_argument("--roots", type=int, nargs="*", default=[], help="orders of roots of unity needed")
    f.set_defaults(func=cmd_field)

    c = sub.add_parser("construct", help="emit the rep-spec of a module family")
    csub = c.add_subparsers(dest="family", required=True)

    def common(x, char_required=True):
        x.add_argument("--char", type=int, required=char_required, help="characteristic")
        x.add_argument("--label")
        x.add_argument("--out", help="write to a file instead of stdout")

    r = csub.add_parser("regular")
    r.add_argument("--group", required=True)
    r.add_argument("--roots", type=int, nargs="*", default=[])
    common(r)
    z = csub.add_parser("zq-rtimes-zd")
    z.add_argument("q", type=int)
    z.add_argument("d", type=int)
    z.add_argument("i", type=int)
    common(z)
    pa = csub.add_parser("p-times-a")
    pa.add_argument("--p-group", required=True)
    pa.add_argument("--a-orders", type=int, nargs="+", required=True)
    common(pa)
    nt = csub.add_parser("normalizer-twist")
    nt.add_argument("--p-group", required=True)
    nt.add_argument("--auto", default="inversion", help="'inversion' or a conjugating permutation")
    nt.add_argument("--r", type=int, required=True)
    common(nt)
    ind = csub.add_parser("induced")
    ind.add_argument("--group", required=True)
    ind.add_argument("--subgroup", required=True, help="subgroup generators, ';' separated")
    ind.add_argument("--module", choices=["trivial", "regular"], default="trivial")
    ind.add_argument("--roots", type=int, nargs="*", default=[])
    common(ind)
    c.set_defaults(func=cmd_construct)

    i = sub.add_parser("invariants", help="basis of invariants of one degree")
    i.add_argument("--spec", required=True)
    i.add_argument("--degree", type=int, required=True)
    i.add_argument("--up-to", action="store_true", help="all degrees 1..d")
    i.add_argument("--method", choices=["auto", "orbit", "linalg"], default="auto")
    i.set_defaults(func=cmd_invariants)

    for name in ("sigma", "delta"):
        s = sub.add_parser(name, help=f"{name} certificate as JSON")
        s.add_argument("--spec", required=True)
        s.set_defaults(func=cmd_sigma)

    g = sub.add_parser("groebner", help="Gröbner basis or origin check")
    g.add_argument("action", choices=["origin-check", "basis"])
    g.add_argument("polys", nargs="*", help="polynomials in x1..xn")
    g.add_argument("--input", help="file with one polynomial per line")
    g.add_argument("--nvars", type=int, required=True)
    g.add_argument("--char", type=int, required=True)
    g.add_argument("--roots", type=int, nargs="*", default=[])
    g.set_defaults(func=cmd_groebner)

    v = sub.add_parser("verify", help="run the reproduction suite")
    v.add_argument("target", choices=["paper"])
    v.add_argument("--only", type=int, nargs="*", help="criterion numbers")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="inequality report for modules of one group")
    b.add_argument("--spec", action="append", default=[])
    b.add_argument("--twist", action="append", default=[], help="rep-spec of the normaliser twist module")
    b.set_defaults(func=cmd_bounds)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:  # --help and usage errors
        return int(exc.code or 0)
    saved = (caps.GROUP_ORDER, caps.MODULE_DIM, caps.MONOMIALS)
    if args.cap_group is not None:
        caps.GROUP_ORDER = args.cap_group
    if args.cap_dim is not None:
        caps.MODULE_DIM = args.cap_dim
    if args.cap_monomials is not None:
        caps.MONOMIALS = args.cap_monomials
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc.cap} cap exceeded: {exc}", file=sys.stderr)
        return 1
    except BoundViolationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 2
    except (ModInvError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        caps.GROUP_ORDER, caps.MODULE_DIM, caps.MONOMIALS = saved


if __name__ == "__main__":
    sys.exit(main())
