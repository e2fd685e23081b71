"""``qkit`` command line.

Exit codes: 0 when every check passes, 1 on a law or axiom violation (the
witness is printed as JSON), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import serialize as ser
from .dot import poset_to_dot, square_to_dot
from .errors import LawViolation, QkitError, UsageError
from .functors import (
    f_pr,
    functor_F_pr_check,
    functor_U_check,
    functor_V_check,
    galois_F_pr_star,
    galois_dual_check,
    lift_g_star,
    square_commutes,
)
from .library import builtin_lattices, builtin_ortholattices
from .order import CompleteLattice, FinitePoset, right_adjoint
from .quantum import check_measurement_claims, measurement_transition
from .report import Report
from .resolution import (
    Resolution,
    canonicalize,
    factorization_defects,
    factorize,
    is_canonical,
    separation,
)
from .transitions import (
    Kind,
    PossibleTransition,
    PropertyTransition,
    check_property_transition,
    compose,
    compose_property,
    in_hom_set,
    join_property,
    join_transitions,
    verify_quantaloid_laws,
)
from .closure import closed_set_lattice


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def _bool(text: str) -> bool:
    if text.lower() in ("true", "1", "yes"):
        return True
    if text.lower() in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError("expected true or false")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qkit", description="Operational resolutions, state and property transitions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    common = _Parser(add_help=False)
    common.add_argument("--in", dest="inputs", nargs="+", default=[], metavar="PATH")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--format", choices=["json", "dot"], default=None)
    common.add_argument("--strict", type=_bool, default=None, metavar="true|false")
    common.add_argument("--cap", type=int, default=None)
    helps = {
        "validate": "validate a poset, lattice, space, resolution or ortholattice",
        "factorize": "split a resolution into closure and embedding",
        "canonicalize": "canonical resolution and its state map",
        "check-morphism": "side conditions of a transition (RES1 RES2 F)",
        "compose": "composite F2 after F1 (R1 R2 R3 F1 F2)",
        "join": "pointwise join of transitions (R1 R2 F...)",
        "fpr": "induced property transition (RES1 RES2 F)",
        "lift": "lift a property transition to states (RES1 RES2 G)",
        "adjoint": "right adjoint of a join-preserving map (L1 L2 G)",
        "sasaki": "perfect measurement on an ortholattice",
        "laws": "quantaloid and functor law suites over objects",
        "export-dot": "Hasse diagram, or the f_pr square for RES1 RES2 F",
    }
    subs = {name: sub.add_parser(name, parents=[common], help=h) for name, h in helps.items()}
    for name in ("sasaki", "export-dot", "validate"):
        subs[name].add_argument("--lattice", help="built-in lattice name")
    subs["sasaki"].add_argument("--property", help="tested property a")
    subs["lift"].add_argument("--galois", action="store_true", help="compare with the brute-force sup")
    subs["laws"].add_argument("--galois", action="store_true", help="also run the Galois-dual checks")
    return p


class _Ctx:
    def __init__(self, args):
        self.args = args
        self.docs = [ser.load(path) for path in args.inputs]

    def need(self, n: int, what: str, at_least: bool = False):
        k = len(self.docs)
        if k < n or (k > n and not at_least):
            raise UsageError(f"expected {'at least ' if at_least else ''}{n} inputs: {what}")

    def resolution(self, i: int) -> Resolution:
        doc = self.docs[i]
        if ser.detect_kind(doc) != "resolution":
            raise UsageError(f"{self.args.inputs[i]} is not a resolution")
        return ser.resolution_from_json(doc, self.args.strict)

    def morphism(self, i: int, src: Resolution, tgt: Resolution):
        doc = self.docs[i]
        kind = ser.detect_kind(doc)
        if kind == "transition":
            return ser.transition_from_json(doc, src, tgt)
        if kind == "property-transition":
            return ser.property_from_json(doc, src, tgt)
        raise UsageError(f"{self.args.inputs[i]} is not a morphism")

    def kind_of(self, i: int, f) -> Kind:
        doc = self.docs[i]
        if "kind" in doc:
            return Kind(doc["kind"])
        strict = True if self.args.strict is None else self.args.strict
        if isinstance(f, PossibleTransition):
            return Kind.RES_SHARP_STRICT if strict else Kind.RES_SHARP
        return Kind.RES0 if strict else Kind.RES


def _emit(args, payload, fmt: str = "json") -> None:
    text = ser.dumps(payload) + "\n" if fmt == "json" else payload
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _morph_json(f, kind=None) -> dict:
    if isinstance(f, PossibleTransition):
        return ser.transition_to_json(f, kind)
    return ser.property_to_json(f, kind)


def _report_exit(args, report: Report) -> int:
    """One JSON object per check, then a summary line."""
    text = report.to_jsonl() + "\n" + json.dumps({"summary": report.summary()}, sort_keys=True) + "\n"
    _emit(args, text, "text")
    return 0 if report.ok else 1


def _builtin(name: str):
    ols = builtin_ortholattices()
    if name in ols:
        return ols[name]
    lats = builtin_lattices()
    if name in lats:
        return lats[name]
    raise UsageError(f"unknown built-in lattice {name!r}", witness=sorted(set(ols) | set(lats)))


def cmd_validate(ctx: _Ctx) -> int:
    args = ctx.args
    if args.lattice:
        ctx.docs.append(ser.ortholattice_to_json(_builtin(args.lattice)) if args.lattice in builtin_ortholattices()
                        else ser.poset_to_json(_builtin(args.lattice)))
    if not ctx.docs:
        raise UsageError("nothing to validate")
    out = []
    for i, doc in enumerate(ctx.docs):
        kind = ser.detect_kind(doc)
        if kind == "poset":
            P = ser.poset_from_json(doc)
            out.append({"type": "poset", "valid": True, "size": len(P)})
        elif kind == "lattice":
            L = ser.lattice_from_json(doc)
            out.append({"type": "lattice", "valid": True, "size": len(L), "bottom": L.bottom, "top": L.top})
        elif kind == "ortholattice":
            ol = ser.ortholattice_from_json(doc)
            entry = {"type": "ortholattice", "valid": True, "orthomodular": ol.orthomodular}
            if not ol.orthomodular:
                entry["orthomodular_witness"] = list(ol.orthomodular_witness)
            out.append(entry)
        elif kind == "space":
            S = ser.space_from_json(doc)
            out.append({"type": "space", "valid": True, "strict": S.strict, "closed_sets": len(S.closed)})
        elif kind == "resolution":
            res = ctx.resolution(i)
            sep = separation(res)
            out.append({
                "type": "resolution", "valid": True, "strict": res.strict,
                "image": list(res.image.elements), "T0": sep.T0, "T1": sep.T1,
                "canonical": is_canonical(res),
            })
        else:
            raise UsageError(f"cannot validate a {kind} document on its own")
    _emit(args, out[0] if len(out) == 1 else out)
    return 0


def cmd_factorize(ctx: _Ctx) -> int:
    ctx.need(1, "RES")
    res = ctx.resolution(0)
    fac = factorize(res)
    defects = factorization_defects(res, fac)
    _emit(ctx.args, {
        "type": "resolution",
        "space": ser.space_to_json(fac.space),
        "theta": fac.theta_map(),
        "lattice": ser.poset_to_json(res.target),
        "strict": res.strict,
        "defects": defects,
    })
    return 1 if defects else 0


def cmd_canonicalize(ctx: _Ctx) -> int:
    ctx.need(1, "RES")
    canon, phi = canonicalize(ctx.resolution(0))
    doc = ser.resolution_to_json(canon)
    doc["phi"] = phi
    _emit(ctx.args, doc)
    return 0


def cmd_check_morphism(ctx: _Ctx) -> int:
    ctx.need(3, "RES1 RES2 F")
    r1, r2 = ctx.resolution(0), ctx.resolution(1)
    f = ctx.morphism(2, r1, r2)
    kind = ctx.kind_of(2, f)
    if isinstance(f, PossibleTransition):
        c = f.conditions
        out = {"A_union": True, "A_empty": c.A_empty, "A_sharp": c.A_sharp, "A_star": c.A_star}
    else:
        c = check_property_transition(f)
        out = {"A_vee": c.A_vee, "A_0": c.A_0}
    ok = in_hom_set(f, kind)
    out.update({"kind": kind.value, "member": ok})
    _emit(ctx.args, out)
    return 0 if ok else 1


def _family(ctx: _Ctx, objs: list[Resolution], start: int):
    return [ctx.morphism(i, objs[0], objs[1]) for i in range(start, len(ctx.docs))]


def cmd_compose(ctx: _Ctx) -> int:
    ctx.need(5, "R1 R2 R3 F1 F2")
    r1, r2, r3 = (ctx.resolution(i) for i in range(3))
    f1, f2 = ctx.morphism(3, r1, r2), ctx.morphism(4, r2, r3)
    if type(f1) is not type(f2):
        raise UsageError("cannot compose a state transition with a property transition")
    h = compose(f2, f1) if isinstance(f1, PossibleTransition) else compose_property(f2, f1)
    _emit(ctx.args, _morph_json(h))
    return 0


def cmd_join(ctx: _Ctx) -> int:
    ctx.need(2, "R1 R2 F...", at_least=True)
    r1, r2 = ctx.resolution(0), ctx.resolution(1)
    fs = _family(ctx, [r1, r2], 2)
    if len({type(f) for f in fs}) > 1:
        raise UsageError("cannot join state and property transitions")
    if fs and isinstance(fs[0], PropertyTransition):
        h = join_property(fs, r1, r2)
    else:
        h = join_transitions(fs, r1, r2)
    _emit(ctx.args, _morph_json(h))
    return 0


def cmd_fpr(ctx: _Ctx) -> int:
    ctx.need(3, "RES1 RES2 F")
    r1, r2 = ctx.resolution(0), ctx.resolution(1)
    f = ctx.morphism(2, r1, r2)
    if not isinstance(f, PossibleTransition):
        raise UsageError("fpr expects a state transition")
    g = f_pr(f)
    doc = ser.property_to_json(g)
    doc["square_commutes"] = square_commutes(f, g)
    _emit(ctx.args, doc)
    return 0


def cmd_lift(ctx: _Ctx) -> int:
    ctx.need(3, "RES1 RES2 G")
    r1, r2 = ctx.resolution(0), ctx.resolution(1)
    g = ctx.morphism(2, r1, r2)
    if not isinstance(g, PropertyTransition):
        raise UsageError("lift expects a property transition")
    lifted = lift_g_star(g)
    doc = ser.transition_to_json(lifted)
    code = 0
    if ctx.args.galois:
        sup = galois_F_pr_star(g, ctx.args.strict, cap=ctx.args.cap)
        doc["sup"] = sup.as_mapping()
        doc["lift_equals_sup"] = sup == lifted
        code = 0 if sup == lifted else 1
    _emit(ctx.args, doc)
    return code


def _lattice_doc(doc) -> CompleteLattice:
    kind = ser.detect_kind(doc)
    if kind == "ortholattice":
        return ser.ortholattice_from_json(doc).lattice
    if kind in ("poset", "lattice"):
        return ser.lattice_from_json(doc)
    raise UsageError(f"expected a lattice, got a {kind}")


def cmd_adjoint(ctx: _Ctx) -> int:
    ctx.need(3, "L1 L2 G")
    L1, L2 = _lattice_doc(ctx.docs[0]), _lattice_doc(ctx.docs[1])
    g = ser.lattice_map_from_json(ctx.docs[2], L1, L2)
    _emit(ctx.args, ser.lattice_map_to_json(right_adjoint(g)))
    return 0


def cmd_sasaki(ctx: _Ctx) -> int:
    args = ctx.args
    if args.lattice:
        ol = _builtin(args.lattice)
        if isinstance(ol, CompleteLattice):
            raise UsageError(f"{args.lattice} has no orthocomplement")
    else:
        ctx.need(1, "ORTHOLATTICE")
        ol = ser.ortholattice_from_json(ctx.docs[0])
    a = args.property or next(e for e in ol.lattice.elements if e not in (ol.lattice.bottom, ol.lattice.top))
    ol.lattice.idx(a)
    m = measurement_transition(ol, a)
    report = check_measurement_claims(ol, a)
    _emit(args, {
        "property": a,
        "transition": m.transition.as_mapping(),
        "summary": report.summary(),
        "results": [r.to_dict() for r in report.results],
    })
    return 0 if report.ok else 1


def cmd_laws(ctx: _Ctx) -> int:
    args = ctx.args
    if not ctx.docs:
        raise UsageError("laws needs at least one resolution")
    objs = {f"R{i}": ctx.resolution(i) for i in range(len(ctx.docs))}
    strict = all(r.strict for r in objs.values()) if args.strict is None else args.strict
    state_kind = Kind.RES_SHARP_STRICT if strict else Kind.RES_SHARP
    prop_kind = Kind.RES0 if strict else Kind.RES
    report = verify_quantaloid_laws(objs, state_kind, args.cap)
    report.extend(verify_quantaloid_laws(objs, prop_kind, args.cap))
    report.extend(functor_F_pr_check(objs, strict, args.cap))
    report.extend(functor_U_check(objs, strict, args.cap))
    report.extend(functor_V_check(objs, strict=strict, cap=args.cap))
    if args.galois:
        report.extend(galois_dual_check(objs, strict, args.cap))
    return _report_exit(args, report)


def cmd_export_dot(ctx: _Ctx) -> int:
    args = ctx.args
    if args.format == "json":
        raise UsageError("export-dot only writes DOT")
    if args.lattice:
        _emit(args, poset_to_dot(_lattice_of(_builtin(args.lattice)), args.lattice), "dot")
        return 0
    if len(ctx.docs) == 3:
        r1, r2 = ctx.resolution(0), ctx.resolution(1)
        f = ctx.morphism(2, r1, r2)
        if not isinstance(f, PossibleTransition):
            raise UsageError("the square needs a state transition")
        f_pr(f)
        _emit(args, square_to_dot("f", "f_pr"), "dot")
        return 0
    ctx.need(1, "STRUCTURE or RES1 RES2 F")
    doc = ctx.docs[0]
    kind = ser.detect_kind(doc)
    if kind in ("poset", "lattice"):
        P = ser.poset_from_json(doc)
    elif kind == "ortholattice":
        P = ser.ortholattice_from_json(doc).lattice.poset
    elif kind == "space":
        P = closed_set_lattice(ser.space_from_json(doc)).poset
    elif kind == "resolution":
        P = ctx.resolution(0).image.poset
    else:
        raise UsageError(f"cannot draw a {kind} on its own")
    _emit(args, poset_to_dot(P), "dot")
    return 0


def _lattice_of(x) -> FinitePoset:
    return x.lattice.poset if hasattr(x, "ortho") else x.poset


COMMANDS = {
    "validate": cmd_validate,
    "factorize": cmd_factorize,
    "canonicalize": cmd_canonicalize,
    "check-morphism": cmd_check_morphism,
    "compose": cmd_compose,
    "join": cmd_join,
    "fpr": cmd_fpr,
    "lift": cmd_lift,
    "adjoint": cmd_adjoint,
    "sasaki": cmd_sasaki,
    "laws": cmd_laws,
    "export-dot": cmd_export_dot,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format == "dot" and args.command != "export-dot":
        print("qkit: error: --format dot is only available for export-dot", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](_Ctx(args))
    except LawViolation as e:
        print(json.dumps({"error": type(e).__name__, "message": str(e), "witness": e.witness}, default=str))
        return 1
    except (UsageError, QkitError, ValueError) as e:
        print(f"qkit: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
