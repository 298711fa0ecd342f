"""Command-line front end.

One verb per calculator: ``table dump``, ``jinv enumerate|check``,
``ring j-from-gens``, ``motive rost-poincare|decompose|candim|
torsion-bound|integral``, ``flag poincare`` and ``lift idempotent|
family|izvrat|sl``.  Every verb prints human-readable text by default
and exactly one JSON document with ``--json`` (or with the environment
variable JCALC_OUTPUT=json, read once at startup).

Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .errors import JCalcError, ParseError
from .idempotent_lab import (
    ModMatrix,
    crt_split,
    lift_idempotent,
    lift_isomorphism,
    lift_orthogonal_family,
    random_isomorphism_instance,
    sl_lift,
)
from .jinvariant import JInvariant, enumerate_admissible, is_admissible
from .kac_table import TorsionData, expand_table, parse_form
from .motive import (
    canonical_p_dimension,
    decompose,
    integral_decomposition,
    rost_poincare,
    torsion_index_bound,
)
from .polynomial import Poly
from .root_data import DynkinType, poincare_homogeneous
from .truncated_ring import RingElement, j_from_generators


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _int_list(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected a comma-separated integer list") from exc


def _poly(text: str) -> Poly:
    return Poly(_int_list(text))


def _summand(text: str) -> Tuple[int, Poly]:
    try:
        head, tail = text.split(":", 1)
        return int(head), _poly(tail)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected p:c0,c1,...") from exc


def _context(args) -> TorsionData:
    return TorsionData(args.p, _int_list(args.d), _int_list(args.k))


def _matrix_from_args(args, attr: str = "matrix") -> ModMatrix:
    text = getattr(args, attr, None)
    if getattr(args, "infile", None):
        raw = sys.stdin.read() if args.infile == "-" else open(args.infile).read()
        return ModMatrix.parse(raw)
    if text is None:
        raise ParseError("no matrix given; use --matrix or --in")
    return ModMatrix.parse(text, modulus=args.modulus)


def _pfister(value: Optional[str]) -> Optional[bool]:
    if value is None:
        return None
    return value == "yes"


# ---------------------------------------------------------------------------
# handlers: each returns (payload, text_lines)
# ---------------------------------------------------------------------------

def _cmd_table_dump(args) -> Tuple[object, List[str]]:
    rows = list(expand_table(args.max_rank))
    if args.form:
        name = parse_form(args.form).name
        rows = [r for r in rows if r["form"] == name]
    if args.p:
        rows = [r for r in rows if r["p"] == args.p]
    lines = []
    for r in rows:
        rules = "; ".join(str(rule) for rule in _rules_back(r["rules"])) or "-"
        lines.append("%-12s p=%d  r=%d  d=%s  k=%s  rules: %s"
                     % (r["form"], r["p"], r["r"], r["d"], r["k"], rules))
    return rows, lines


def _rules_back(rule_dicts: Sequence[Dict]) -> List:
    from .kac_table import ConstraintRule
    return [ConstraintRule(d["kind"], d["i"], d["j"], d["offset"],
                           tuple(d["gate"]) if d["gate"] else None)
            for d in rule_dicts]


def _cmd_jinv_enumerate(args) -> Tuple[object, List[str]]:
    form = parse_form(args.form)
    values = enumerate_admissible(form, args.p, budget=args.budget)
    payload = {"form": form.name, "p": args.p,
               "values": [J.to_dict() for J in values]}
    return payload, [str(J) for J in values]


def _cmd_jinv_check(args) -> Tuple[object, List[str]]:
    form = parse_form(args.form)
    ok = is_admissible(_int_list(args.j), form, args.p)
    payload = {"form": form.name, "p": args.p, "j": list(_int_list(args.j)),
               "admissible": ok}
    return payload, ["admissible" if ok else "not admissible"]


def _cmd_ring_j_from_gens(args) -> Tuple[object, List[str]]:
    data = _context(args)
    gens = [RingElement.parse(data, text) for text in args.gens]
    j = j_from_generators(gens, data)
    payload = JInvariant(data, j).to_dict()
    return payload, ["J = (%s)" % ",".join(str(x) for x in j)]


def _cmd_motive_rost(args) -> Tuple[object, List[str]]:
    data = _context(args)
    poly = rost_poincare(data, _int_list(args.j))
    return {"poincare": list(poly.coeffs)}, [str(poly)]


def _cmd_motive_decompose(args) -> Tuple[object, List[str]]:
    form = parse_form(args.form)
    dec = decompose(form, args.p, _int_list(args.j),
                    theta=_int_list(args.theta) if args.theta else None,
                    tits_index=args.tits_index,
                    splitting_degree=args.splitting_degree,
                    pfister=_pfister(args.pfister))
    lines = [
        "summand:        %s" % dec.summand_poincare,
        "multiplicities: %s" % dec.multiplicities,
        "copies:         %d" % dec.summand_count,
    ]
    return dec.to_dict(), lines


def _cmd_motive_candim(args) -> Tuple[object, List[str]]:
    data = _context(args)
    value = canonical_p_dimension(data, _int_list(args.j))
    return {"candim": value}, [str(value)]


def _cmd_motive_torsion_bound(args) -> Tuple[object, List[str]]:
    if args.d or args.k:
        # validate against a full context when one is supplied
        data = _context(args)
        bound = torsion_index_bound(JInvariant(data, _int_list(args.j)))
    else:
        bound = args.p ** sum(_int_list(args.j))
    return {"p": args.p, "j": list(_int_list(args.j)), "bound": bound}, [str(bound)]


def _cmd_motive_integral(args) -> Tuple[object, List[str]]:
    total = _poly(args.total)
    summands = list(args.summand)
    if args.all:
        results = integral_decomposition(total, args.m, summands, all_candidates=True)
        payload = [{"summand": list(f.coeffs), "multiplicities": list(mult.coeffs)}
                   for f, mult in results]
        lines = ["%s  x  %s" % (f, mult) for f, mult in results]
        return payload, lines
    f, mult = integral_decomposition(total, args.m, summands)
    payload = {"summand": list(f.coeffs), "multiplicities": list(mult.coeffs),
               "total": list(total.coeffs)}
    return payload, ["summand:        %s" % f, "multiplicities: %s" % mult]


def _cmd_flag_poincare(args) -> Tuple[object, List[str]]:
    t = DynkinType.parse(args.type)
    theta = _int_list(args.theta) if args.theta else None
    poly = poincare_homogeneous(t, theta)
    return {"poincare": list(poly.coeffs)}, [str(poly)]


def _cmd_lift_idempotent(args) -> Tuple[object, List[str]]:
    a = _matrix_from_args(args)
    e = lift_idempotent(a)
    return {"modulus": e.modulus, "entries": [list(r) for r in e.entries]}, [e.to_text()]


def _cmd_lift_family(args) -> Tuple[object, List[str]]:
    mats = [ModMatrix.parse(text, modulus=args.modulus) for text in args.matrix]
    lifted = lift_orthogonal_family(mats)
    payload = [{"modulus": e.modulus, "entries": [list(r) for r in e.entries]}
               for e in lifted]
    return payload, [e.to_text() for e in lifted]


def _cmd_lift_izvrat(args) -> Tuple[object, List[str]]:
    if args.demo:
        rng = random.Random(args.seed)
        phi1, phi2, psi12, psi21 = random_isomorphism_instance(rng, args.modulus, args.size)
    else:
        if not all([args.phi1, args.phi2, args.psi12, args.psi21]):
            raise ParseError("supply --phi1/--phi2/--psi12/--psi21 or use --demo")
        phi1 = ModMatrix.parse(args.phi1, modulus=args.modulus)
        phi2 = ModMatrix.parse(args.phi2, modulus=args.modulus)
        psi12 = ModMatrix.parse(args.psi12, modulus=args.modulus)
        psi21 = ModMatrix.parse(args.psi21, modulus=args.modulus)
    t12, t21 = lift_isomorphism(phi1, phi2, psi12, psi21)
    payload = {
        "theta12": [list(r) for r in t12.entries],
        "theta21": [list(r) for r in t21.entries],
        "modulus": t12.modulus,
        "verified": True,
    }
    lines = ["theta12:", t12.to_text(), "theta21:", t21.to_text(),
             "identities theta21*theta12 = phi1 and theta12*theta21 = phi2 verified"]
    return payload, lines


def _cmd_lift_sl(args) -> Tuple[object, List[str]]:
    if args.demo:
        rng = random.Random(args.seed)
        while True:
            cand = ModMatrix(args.modulus, tuple(
                tuple(rng.randrange(args.modulus) for _ in range(args.size))
                for _ in range(args.size)))
            if cand.det() == 1 % args.modulus:
                break
        matrix = cand
    else:
        matrix = _matrix_from_args(args)
    lifted = sl_lift(matrix)
    payload = {"modulus": matrix.modulus,
               "input": [list(r) for r in matrix.entries],
               "lift": [list(r) for r in lifted]}
    lines = ["input (mod %d): %s" % (matrix.modulus, matrix.entries),
             "integer lift:   %s" % (lifted,)]
    return payload, lines


def _cmd_lift_crt(args) -> Tuple[object, List[str]]:
    splitting = crt_split(args.m)
    payload = {"m": args.m,
               "factors": [[p, e] for p, e in splitting.factors]}
    lines = ["%d = %s" % (args.m, " * ".join(
        "%d^%d" % (p, e) if e > 1 else str(p) for p, e in splitting.factors))]
    if args.matrix:
        matrix = ModMatrix.parse(args.matrix, modulus=args.m)
        parts = splitting.split(matrix)
        payload["parts"] = [{"modulus": part.modulus,
                             "entries": [list(r) for r in part.entries]}
                            for part in parts]
        lines += [part.to_text() for part in parts]
    return payload, lines


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jcalc",
        description="Exact J-invariant and motivic decomposition calculators.")
    parser.add_argument("--version", action="version", version="jcalc %s" % __version__)
    parser.add_argument("--json", action="store_true",
                        help="emit exactly one JSON document")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit exactly one JSON document")
    top = parser.add_subparsers(dest="group", required=True)

    table = top.add_parser("table", help="torsion table queries").add_subparsers(
        dest="verb", required=True)
    dump = table.add_parser("dump", help="expanded table rows as {form,p,r,d,k,rules}", parents=[common])
    dump.add_argument("--form", help="restrict to one form, e.g. E7sc or Spin11")
    dump.add_argument("--p", type=int, help="restrict to one prime")
    dump.add_argument("--max-rank", type=int, default=8,
                      help="classical series rank bound (default 8)")
    dump.set_defaults(handler=_cmd_table_dump)

    jinv = top.add_parser("jinv", help="J-invariant values").add_subparsers(
        dest="verb", required=True)
    enum = jinv.add_parser("enumerate", help="all admissible values of a row", parents=[common])
    enum.add_argument("--form", required=True)
    enum.add_argument("--p", type=int, required=True)
    enum.add_argument("--budget", type=int, default=10 ** 6)
    enum.set_defaults(handler=_cmd_jinv_enumerate)
    check = jinv.add_parser("check", help="test one value against the table rules", parents=[common])
    check.add_argument("--form", required=True)
    check.add_argument("--p", type=int, required=True)
    check.add_argument("--j", required=True, help="comma list, e.g. 1,1,0")
    check.set_defaults(handler=_cmd_jinv_check)

    ring = top.add_parser("ring", help="truncated ring calculations").add_subparsers(
        dest="verb", required=True)
    jfg = ring.add_parser("j-from-gens",
                          help="J-invariant of the subring generated by elements", parents=[common])
    jfg.add_argument("--p", type=int, required=True)
    jfg.add_argument("--d", required=True, help="codimensions, e.g. 3,5")
    jfg.add_argument("--k", required=True, help="exponents, e.g. 2,1")
    jfg.add_argument("gens", nargs="*", help="elements like '1 + 2*x1^3*x2'")
    jfg.set_defaults(handler=_cmd_ring_j_from_gens)

    motive = top.add_parser("motive", help="decomposition calculators").add_subparsers(
        dest="verb", required=True)
    rost = motive.add_parser("rost-poincare", help="summand Poincare polynomial", parents=[common])
    for flag_name in ("--p", "--d", "--k", "--j"):
        rost.add_argument(flag_name, required=True,
                          type=int if flag_name == "--p" else str)
    rost.set_defaults(handler=_cmd_motive_rost)

    dec = motive.add_parser("decompose", help="twist multiplicities of a flag variety", parents=[common])
    dec.add_argument("--form", required=True)
    dec.add_argument("--p", type=int, required=True)
    dec.add_argument("--j", required=True)
    dec.add_argument("--theta", help="parabolic vertices, e.g. 1,2 (default: Borel)")
    dec.add_argument("--tits-index", type=int, dest="tits_index")
    dec.add_argument("--splitting-degree", type=int, dest="splitting_degree")
    dec.add_argument("--pfister", choices=("yes", "no"))
    dec.set_defaults(handler=_cmd_motive_decompose)

    candim = motive.add_parser("candim", help="canonical p-dimension", parents=[common])
    for flag_name in ("--p", "--d", "--k", "--j"):
        candim.add_argument(flag_name, required=True,
                            type=int if flag_name == "--p" else str)
    candim.set_defaults(handler=_cmd_motive_candim)

    bound = motive.add_parser("torsion-bound", help="p-power bound for the torsion index", parents=[common])
    bound.add_argument("--p", type=int, required=True)
    bound.add_argument("--j", required=True)
    bound.add_argument("--d", default="")
    bound.add_argument("--k", default="")
    bound.set_defaults(handler=_cmd_motive_torsion_bound)

    integral = motive.add_parser("integral", help="minimal m-positive divisor", parents=[common])
    integral.add_argument("--total", required=True, help="coefficients c0,c1,...")
    integral.add_argument("--m", type=int, required=True)
    integral.add_argument("--summand", type=_summand, action="append", required=True,
                          help="p:c0,c1,... (repeatable)")
    integral.add_argument("--all", action="store_true",
                          help="report every minimal candidate")
    integral.set_defaults(handler=_cmd_motive_integral)

    flag = top.add_parser("flag", help="flag variety Poincare polynomials").add_subparsers(
        dest="verb", required=True)
    fp = flag.add_parser("poincare", help="P(G/P_theta, t)", parents=[common])
    fp.add_argument("--type", required=True, help="Dynkin type, e.g. E8 or D5")
    fp.add_argument("--theta", help="parabolic vertices, e.g. 1,3")
    fp.set_defaults(handler=_cmd_flag_poincare)

    lift = top.add_parser("lift", help="idempotent lab").add_subparsers(
        dest="verb", required=True)
    li = lift.add_parser("idempotent", help="lift an idempotent mod p to Z/p^n", parents=[common])
    li.add_argument("--matrix", help="rows ';'-separated, entries ','")
    li.add_argument("--modulus", type=int)
    li.add_argument("--in", dest="infile", help="headered matrix file, '-' for stdin")
    li.set_defaults(handler=_cmd_lift_idempotent)

    lf = lift.add_parser("family", help="lift an orthogonal idempotent family", parents=[common])
    lf.add_argument("--modulus", type=int, required=True)
    lf.add_argument("--matrix", action="append", required=True)
    lf.set_defaults(handler=_cmd_lift_family)

    lz = lift.add_parser("izvrat", help="lift mutually inverse isomorphisms", parents=[common])
    lz.add_argument("--modulus", type=int, default=8)
    lz.add_argument("--phi1")
    lz.add_argument("--phi2")
    lz.add_argument("--psi12")
    lz.add_argument("--psi21")
    lz.add_argument("--demo", action="store_true",
                    help="random planted instance instead of explicit matrices")
    lz.add_argument("--seed", type=int, default=0)
    lz.add_argument("--size", type=int, default=3)
    lz.set_defaults(handler=_cmd_lift_izvrat)

    ls = lift.add_parser("sl", help="integer lift of an SL_l(Z/m) matrix",
                         parents=[common])
    ls.add_argument("--matrix")
    ls.add_argument("--modulus", type=int, default=6)
    ls.add_argument("--in", dest="infile")
    ls.add_argument("--demo", action="store_true")
    ls.add_argument("--seed", type=int, default=0)
    ls.add_argument("--size", type=int, default=2)
    ls.set_defaults(handler=_cmd_lift_sl)

    lc = lift.add_parser("crt", help="prime-power splitting of Z/m coefficients", parents=[common])
    lc.add_argument("--m", type=int, required=True)
    lc.add_argument("--matrix", help="optional matrix to transport")
    lc.set_defaults(handler=_cmd_lift_crt)

    return parser


def execute(argv: Sequence[str]) -> int:
    """Run one invocation; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 0
    json_mode = args.json or os.environ.get("JCALC_OUTPUT", "").lower() == "json"
    try:
        payload, lines = args.handler(args)
    except JCalcError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    if json_mode:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)
    return 0


def main() -> None:
    sys.exit(execute(sys.argv[1:]))


if __name__ == "__main__":
    main()
