"""Command-line front end.

Exit codes: 0 success, 1 mathematical rejection (reducible input,
unsupported case, inapplicable datum, cap exceeded, sweep counterexample),
2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .classify import (IN_REAL_RRE, NO_REAL_ROOTS, NOT_IN_REAL_RRE, ReducibleInput, Verdict,
                       analyze_sextic_case_study, classify)
from .galois import (DatumError, GaloisDatum, build_binomial, build_cyclotomic,
                     build_pure_radical, galois_group_small_degree, theorem_a_witness)
from .perm import GroupError, intermediate_subgroups
from .poly import FieldMismatch, Poly, PolyParseError, parse_poly
from .quadfield import is_prime, is_squarefree
from .realroots import isolate_real_roots, sturm_chain
from .rre import (NOT_APPLICABLE, check_prime_degree_radical, find_rre_chain,
                  intermediate_preservation, verify_chain)
from .sweeps import (DEFAULT_CLOSURE_ORDER, DEFAULT_MODULE_INSTANCES, DEFAULT_SECTION_ORDER,
                     run_all)
from .tower import TowerError

OK, REJECTED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Rejection(Exception):
    pass


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


def _ground(args) -> Optional[int]:
    d = getattr(args, "ground", None)
    if d is None:
        return None
    if d < 2 or not is_squarefree(d):
        raise UsageError(f"--ground must be a squarefree integer >= 2, got {d}")
    return d


def _width(args) -> Fraction:
    return Fraction(1, 2 ** args.width)


def _poly(args) -> Poly:
    return parse_poly(args.polynomial, _ground(args))


def _subgroup_arg(text: str):
    """An order (integer) or a comma-separated generator list."""
    text = text.strip()
    if "," in text or text.startswith("["):
        try:
            return [int(t) for t in text.strip("[]").split(",") if t.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad generator list {text!r}")
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad subgroup {text!r}: give an order or generators a,b")


# --- analyze -------------------------------------------------------------------------

def _verdict_lines(v: Verdict) -> list[str]:
    cert = v.certificates["irreducibility"]
    out = [f"polynomial: {v.polynomial} over {v.ground_field}"]
    desc = cert["status"]
    if "method" in cert:
        desc += f" ({cert['method']}" + (f" p={cert['prime']}" if "prime" in cert else "") + ")"
    out.append(f"irreducibility: {desc}")
    if "discriminant" in v.certificates:
        out.append(f"discriminant: {v.certificates['discriminant']}")
    if "cubic_obstruction" in v.certificates:
        ob = v.certificates["cubic_obstruction"]
        out.append(f"cubic radical obstruction: {ob['status']} "
                   f"(discriminant / -3 = {ob['discriminant_over_minus_3']})")
    if "galois_group" in v.certificates:
        g = v.certificates["galois_group"]
        out.append(f"Galois group: {g['label']} (order {g['order']})")
    out.append(f"real roots: {v.real_root_count}")
    out.append(f"outcome: {v.outcome}" + (f" ({v.reason})" if v.reason else ""))
    for i, r in enumerate(v.roots):
        tag = f" [{r.theorem}" + (f"; {', '.join(r.supporting)}" if r.supporting else "") + "]" \
            if r.theorem else ""
        out.append(f"  root {i}: {r.interval}  {r.status}{tag}")
        if r.tower is not None:
            out += ["    " + line for line in r.tower.describe()]
            out.append(f"    tower verified: {r.tower_check.ok} "
                       f"(root enclosure width <= 2^-30, f(enclosure) contains 0)")
    return out


def _verdict_code(v: Verdict) -> int:
    return OK if v.outcome in (IN_REAL_RRE, NOT_IN_REAL_RRE, NO_REAL_ROOTS) else REJECTED


def cmd_analyze(args) -> int:
    f = _poly(args)
    v = classify(f, width=_width(args))
    _emit(args, v.to_json(), _verdict_lines(v))
    return _verdict_code(v)


def cmd_tower(args) -> int:
    f = _poly(args)
    v = classify(f, width=_width(args))
    with_towers = [(i, r) for i, r in enumerate(v.roots) if r.tower is not None]
    payload = {"schema": 1, "polynomial": str(f), "ground_field": v.ground_field,
               "outcome": v.outcome,
               "towers": [{"root": i, "interval": r.interval.as_json(), "theorem": r.theorem,
                           "tower": r.tower.to_json(), "check": r.tower_check.to_json()}
                          for i, r in with_towers]}
    lines = [f"polynomial: {f} over {v.ground_field}", f"outcome: {v.outcome}"]
    if args.over_q and v.ground is not None:
        lines.append("towers rewritten over Q")
    for i, r in with_towers:
        tw = r.tower.over_rationals() if args.over_q and v.ground is not None else r.tower
        chk = tw.verify() if tw is not r.tower else r.tower_check
        lines.append(f"root {i}: {r.interval}")
        lines += ["  " + line for line in tw.describe()]
        lines.append(f"  indices: {tw.indices}")
        lines.append(f"  verification at {chk.bits} bits: root in [{float(chk.root.lo):.15g}, "
                     f"{float(chk.root.hi):.15g}], f(root) in [{float(chk.value.lo):.3g}, "
                     f"{float(chk.value.hi):.3g}] -> {'ok' if chk.ok else 'FAILED'}")
    if not with_towers:
        lines.append("no radical tower: " + (v.reason or v.outcome))
    _emit(args, payload, lines)
    return OK if with_towers else REJECTED


# --- roots ---------------------------------------------------------------------------

def cmd_roots(args) -> int:
    f = _poly(args)
    isos = isolate_real_roots(f, _width(args))
    chain = sturm_chain(f)
    payload = {"schema": 1, "polynomial": str(f), "ground_field": f.field(),
               "sturm_chain_length": len(chain), "real_root_count": len(isos),
               "intervals": [iv.as_json() for iv in isos]}
    lines = [f"polynomial: {f} over {f.field()}",
             f"Sturm chain length: {len(chain)}",
             f"real roots: {len(isos)}"]
    lines += [f"  {iv}" for iv in isos]
    _emit(args, payload, lines)
    return OK


# --- galois --------------------------------------------------------------------------

def _datum_lines(d: GaloisDatum) -> list[str]:
    out = [f"G: order {d.G.order} on {d.G.degree} points",
           f"U: order {d.U.order}", f"N: order {d.N.order}", f"M = U & N: order {d.M.order}",
           f"quasireal: {d.quasireal}"]
    out += [f"{k}: {v}" for k, v in d.labels.items()]
    for p, chi in sorted(d.characters.items()):
        out.append(f"character at {p} on generators: "
                   + ", ".join(f"{g} -> {chi[g]}" for g in d.G.gens))
    return out


def cmd_galois(args) -> int:
    if args.binomial:
        n, a = args.binomial
        d = _radical_datum(int(n), Fraction(a))
    elif args.witness is not None:
        d = theorem_a_witness(args.witness)
    else:
        if args.polynomial is None:
            raise UsageError("galois needs a polynomial, --binomial N A or --witness N")
        f = _poly(args)
        if not f.is_rational() or f.d is not None:
            raise Rejection("Galois groups are computed over Q only")
        f = f.to_rational()
        cert = classify(f, towers=False).certificates["irreducibility"]
        lab = galois_group_small_degree(f)
        payload = lab.to_json()
        payload.update({"schema": 1, "polynomial": str(f), "irreducibility": cert})
        lines = [f"polynomial: {f}", f"Galois group: {lab.label} (order {lab.order})",
                 f"discriminant: {lab.discriminant} "
                 f"({'square' if lab.discriminant_square else 'not a square'})"]
        if lab.resolvent is not None:
            lines.append(f"resolvent cubic: {lab.resolvent}")
        _emit(args, payload, lines)
        return OK
    _emit(args, d.to_json(), _datum_lines(d))
    return OK


# --- families ------------------------------------------------------------------------

def _radical_datum(n: int, a: Fraction) -> GaloisDatum:
    return build_binomial(n, a) if is_prime(n) else build_pure_radical(n, a)


def cmd_cyclotomic(args) -> int:
    d = build_cyclotomic(args.n, args.h_ground, args.h_field)
    verdict = find_rre_chain(d)
    meta = d.metadata
    payload = {"schema": 1, "datum": d.to_json(), "verdict": verdict.to_json()}
    lines = [f"E = Q(zeta_{args.n}); ground = {d.labels['Q']}; L = {d.labels['L']}",
             f"[L : ground] = {meta['degree_L_over_ground']}",
             f"verdict for L over the ground field: {verdict.describe()}"]
    if meta.get("radical_by_construction"):
        lines.append(f"L is radical by construction: {meta['radical_note']}")
    else:
        # companion: the full cyclotomic field over the same ground
        comp = build_cyclotomic(args.n, args.h_ground, 1)
        payload["companion"] = {"L": comp.labels["L"],
                                "degree_over_ground": comp.metadata["degree_L_over_ground"],
                                "radical_by_construction": True,
                                "note": comp.metadata["radical_note"]}
        lines.append(f"companion: {comp.labels['L']} over the ground field has degree "
                     f"{comp.metadata['degree_L_over_ground']} and is radical by construction "
                     f"({comp.metadata['radical_note']})")
    _emit(args, payload, lines)
    return REJECTED if verdict.outcome == NOT_APPLICABLE else OK


def cmd_binomial(args) -> int:
    d = _radical_datum(args.n, Fraction(args.a))
    verdict = find_rre_chain(d)
    payload = {"schema": 1, "datum": d.to_json(), "verdict": verdict.to_json()}
    lines = _datum_lines(d) + [f"chain search: {verdict.describe()}"]
    if verdict.found:
        ok = verify_chain(d, verdict.witness)
        payload["chain_verified"] = ok
        lines.append(f"chain re-verified element-wise: {ok}")
    if is_prime(args.n):
        pd = check_prime_degree_radical(d)
        payload["prime_degree_check"] = pd.to_json()
        lines.append(f"prime-degree check: {pd.describe()} {pd.details}")
    if args.intermediates:
        results = []
        for V in intermediate_subgroups(d.U, d.G):
            r = intermediate_preservation(d, V)
            results.append({"order": V.order, "index": d.G.order // V.order,
                            "verdict": r.outcome, "branch": r.details["branch"]})
            lines.append(f"  intermediate of order {V.order}: {r.describe()} ({r.details['branch']})")
        payload["intermediates"] = results
        if any(r["verdict"] != "ChainFound" for r in results):
            _emit(args, payload, lines)
            return REJECTED
    _emit(args, payload, lines)
    return OK if verdict.found else REJECTED


# --- sweeps and case study ---------------------------------------------------------------

def cmd_verify_lemmas(args) -> int:
    reports = run_all(args.section_order, args.closure_order, args.module_instances,
                      args.seed, args.workers)
    payload = {"schema": 1, "sweeps": [r.to_json() for r in reports],
               "ok": all(r.ok for r in reports)}
    lines = [str(r) for r in reports]
    for r in reports:
        lines += [f"  counterexample: {c}" for c in r.counterexamples[:5]]
    lines.append("all sweeps ok" if payload["ok"] else "COUNTEREXAMPLES FOUND")
    _emit(args, payload, lines)
    return OK if payload["ok"] else REJECTED


def cmd_case_study(args) -> int:
    rep = analyze_sextic_case_study()
    _emit(args, rep.to_json(), rep.lines())
    return OK


# --- parser --------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (schema 1)")

    polyopts = argparse.ArgumentParser(add_help=False)
    polyopts.add_argument("--ground", type=int, metavar="D",
                          help="work over Q(sqrt(D)); D squarefree >= 2")
    polyopts.add_argument("--width", type=int, default=20, metavar="K",
                          help="isolating interval width 2^-K (default 20)")

    p = argparse.ArgumentParser(prog="realrad", description=(
        "Decide whether real roots of polynomials over Q or Q(sqrt d) lie in real "
        "repeated radical extensions."))
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    s = sub.add_parser("analyze", parents=[common, polyopts], help="classify every real root")
    s.add_argument("polynomial")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("roots", parents=[common, polyopts], help="Sturm count and isolating intervals")
    s.add_argument("polynomial")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("tower", parents=[common, polyopts], help="build and verify radical towers")
    s.add_argument("polynomial")
    s.add_argument("--over-q", action="store_true", help="rewrite towers over Q(sqrt d) as towers over Q")
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("galois", parents=[common, polyopts],
                       help="Galois group of a rational polynomial of degree <= 4, or a family datum")
    s.add_argument("polynomial", nargs="?")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--binomial", nargs=2, metavar=("N", "A"), help="splitting field of x^N - A")
    g.add_argument("--witness", type=int, metavar="N", help="real cyclic field of degree N (2, 4, 8, 16)")
    s.set_defaults(func=cmd_galois)

    s = sub.add_parser("cyclotomic", parents=[common],
                       help="Q(zeta_n) over the fixed field of H_GROUND, L fixed by H_FIELD")
    s.add_argument("n", type=int)
    s.add_argument("h_ground", type=_subgroup_arg, help="subgroup order, or generators a,b,...")
    s.add_argument("h_field", type=_subgroup_arg, help="subgroup order, or generators a,b,...")
    s.set_defaults(func=cmd_cyclotomic)

    s = sub.add_parser("binomial", parents=[common],
                       help="chain search for x^n - a (n an odd prime or odd prime power)")
    s.add_argument("n", type=int)
    s.add_argument("a", type=Fraction)
    s.add_argument("--intermediates", action="store_true",
                   help="also test every subgroup between U and G")
    s.set_defaults(func=cmd_binomial)

    s = sub.add_parser("verify-lemmas", parents=[common], help="brute-force group-lemma sweeps")
    s.add_argument("--section-order", type=int, default=DEFAULT_SECTION_ORDER,
                   help=f"max subgroup order for section checks (default {DEFAULT_SECTION_ORDER})")
    s.add_argument("--closure-order", type=int, default=DEFAULT_CLOSURE_ORDER,
                   help=f"max subgroup order for normal-closure checks (default {DEFAULT_CLOSURE_ORDER})")
    s.add_argument("--module-instances", type=int, default=DEFAULT_MODULE_INSTANCES,
                   help=f"generated module instances (default {DEFAULT_MODULE_INSTANCES})")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_verify_lemmas)

    s = sub.add_parser("case-study", parents=[common], help="worked examples")
    s.add_argument("name", choices=["sextic"])
    s.set_defaults(func=cmd_case_study)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code (argparse usage errors give 2)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else OK
    try:
        return args.func(args)
    except (UsageError, PolyParseError, FieldMismatch) as e:
        print(f"realrad: error: {e}", file=sys.stderr)
        return USAGE
    except ReducibleInput as e:
        print(f"realrad: rejected: {e}", file=sys.stderr)
        return REJECTED
    except (Rejection, DatumError, GroupError, TowerError, ValueError) as e:
        print(f"realrad: rejected: {e}", file=sys.stderr)
        return REJECTED


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
