"""Functors between the transition quantaloids and the checks that exercise them.

``f_pr`` sends a state transition to the property transition it induces on
image lattices; ``lift_g_star`` goes back, and ``galois_F_pr_star`` computes
the same lift as a brute-force supremum over a hom-set.  The ``*_check``
functions return :class:`~qkit.report.Report` objects and never raise on a
failed law.
"""

from __future__ import annotations

import itertools
from typing import Mapping, Sequence

from ._bits import iter_bits
from .closure import ClosureSpace, closed_set_lattice
from .errors import ASharpFails, NotAClosMorphism, NotContinuous, UsageError, ValueOutsideImage
from .order import CompleteLattice, LatticeMap
from .report import FOUND, NOT_FOUND, Report
from .resolution import (
    Resolution,
    canonicalize,
    essential_isomorphism,
    full_state_resolution,
    space_resolution,
)
from .transitions import (
    ClosMorphism,
    Kind,
    PossibleTransition,
    PropertyTransition,
    a_empty_holds,
    a_sharp_witness,
    compose,
    compose_property,
    enumerate_hom_set,
    identity,
    join_property,
    join_transitions,
    property_bottom,
    property_identity,
    _named,
)


def f_pr(f: PossibleTransition) -> PropertyTransition:
    """Induced property transition ``table1(T) -> table2(f(T))``."""
    w = a_sharp_witness(f)
    if w is not None:
        raise ASharpFails(
            f"table1({w[0]}) == table1({w[1]}) but their images have different values",
            witness={"T": w[0], "T'": w[1]},
        )
    src, tgt = f.source, f.target
    img = f.table
    values = tuple(tgt.table[img[src.theta_inverse[a]]] for a in src.image.elements)
    return PropertyTransition(src, tgt, values)


def square_commutes(f: PossibleTransition, g: PropertyTransition | None = None) -> bool:
    g = f_pr(f) if g is None else g
    img = f.table
    return all(
        f.target.table[img[T]] == g(f.source.table[T]) for T in range(1 << len(f.source.sigma))
    )


def lift_g_star(g: PropertyTransition) -> PossibleTransition:
    """State transition sending t to the closed set of the target carrying g(table1({t}))."""
    src, tgt = g.source, g.target
    images = []
    for i in range(len(src.sigma)):
        v = g(src.table[1 << i])
        if v not in tgt.theta_inverse:
            raise ValueOutsideImage(f"{v!r} is not a value of the target resolution", witness=v)
        images.append(tgt.theta_inverse[v])
    return PossibleTransition(src, tgt, tuple(images))


def galois_F_pr_star(g: PropertyTransition, strict: bool | None = None, hom=None, cap=None) -> PossibleTransition:
    """Supremum of every state transition whose induced property map lies below ``g``."""
    if strict is None:
        strict = g.source.strict and g.target.strict
    if hom is None:
        kind = Kind.RES_SHARP_STRICT if strict else Kind.RES_SHARP
        hom = enumerate_hom_set(g.source, g.target, kind, cap)
    below = [f for f in hom if f_pr(f).leq(g)]
    return join_transitions(below, g.source, g.target)


def _kinds(strict: bool) -> tuple[Kind, Kind]:
    return (Kind.RES_SHARP_STRICT, Kind.RES0) if strict else (Kind.RES_SHARP, Kind.RES)


def _homs(objs: dict[str, Resolution], strict: bool, cap):
    ks, kp = _kinds(strict)
    states = {(a, b): enumerate_hom_set(objs[a], objs[b], ks, cap) for a in objs for b in objs}
    props = {(a, b): enumerate_hom_set(objs[a], objs[b], kp, cap) for a in objs for b in objs}
    return states, props


def functor_F_pr_check(objects, strict: bool = True, cap=None) -> Report:
    """Well-definedness, squares, functoriality, join preservation and fullness of F_pr."""
    objs = _named(objects)
    states, props = _homs(objs, strict, cap)
    report = Report()
    tag = "F_pr" if strict else "F_R"
    for (a, b), H in states.items():
        inst = f"{a}->{b}"
        P = props[(a, b)]
        bad_def = bad_sq = None
        images = {}
        for f in H:
            try:
                g = f_pr(f)
            except ASharpFails as e:
                bad_def = bad_def or e.witness
                continue
            images[f] = g
            if g not in P:
                bad_def = bad_def or {"map": f.as_mapping(), "f_pr": g.as_mapping()}
            if not square_commutes(f, g):
                bad_sq = bad_sq or f.as_mapping()
        report.add(f"{tag}:well-defined", inst, bad_def is None, bad_def, cases=len(H))
        report.add(f"{tag}:square-commutes", inst, bad_sq is None, bad_sq, cases=len(H))

        bot_ok = images.get(H.bottom) == property_bottom(objs[a], objs[b])
        bad_join = None if bot_ok else "empty join"
        ms = list(images)
        for f1, f2 in itertools.combinations_with_replacement(ms, 2):
            lhs = images.get(join_transitions([f1, f2]))
            if lhs != join_property([images[f1], images[f2]]):
                bad_join = bad_join or [f1.as_mapping(), f2.as_mapping()]
        report.add(f"{tag}:preserves-joins", inst, bad_join is None, bad_join, cases=len(ms) ** 2)

        bad_full = None
        for g in P:
            lifted = lift_g_star(g)
            if lifted not in H or f_pr(lifted) != g:
                bad_full = bad_full or g.as_mapping()
        report.add(f"{tag}:full", inst, bad_full is None, bad_full, cases=len(P))
        report.add(f"{tag}:hom-surjective", inst, set(images.values()) == set(P), cases=len(P))
        if a == b:
            report.add(f"{tag}:preserves-identity", inst,
                       f_pr(identity(objs[a])) == property_identity(objs[a]), cases=1)

    for a, b, c in itertools.product(objs, repeat=3):
        bad = None
        n = 0
        for f1 in states[(a, b)]:
            g1 = f_pr(f1)
            for f2 in states[(b, c)]:
                n += 1
                if f_pr(compose(f2, f1)) != compose_property(f_pr(f2), g1):
                    bad = bad or [f1.as_mapping(), f2.as_mapping()]
        report.add(f"{tag}:preserves-composition", f"{a}->{b}->{c}", bad is None, bad, cases=n)
    return report


def galois_dual_check(objects, strict: bool = True, cap=None) -> Report:
    """Compare the lift with the brute-force Galois dual and probe its functoriality.

    Records exact composition preservation, the weaker inclusion
    ``F*(g2) . F*(g1) <= F*(g2 . g1)``, and searches for identity and
    join-preservation failures.
    """
    objs = _named(objects)
    states, props = _homs(objs, strict, cap)
    report = Report()
    star: dict = {}
    for (a, b), P in props.items():
        inst = f"{a}->{b}"
        bad_i = bad_ii = None
        for g in P:
            lifted = lift_g_star(g)
            brute = galois_F_pr_star(g, strict, hom=states[(a, b)])
            star[g] = lifted
            if lifted != brute:
                bad_i = bad_i or {"g": g.as_mapping(), "lift": lifted.as_mapping(), "sup": brute.as_mapping()}
            if f_pr(lifted) != g:
                bad_ii = bad_ii or g.as_mapping()
        report.add("galois:lift-equals-sup", inst, bad_i is None, bad_i, cases=len(P))
        report.add("galois:right-inverse", inst, bad_ii is None, bad_ii, cases=len(P))

    for a, b, c in itertools.product(objs, repeat=3):
        bad = lax = None
        n = 0
        for g1 in props[(a, b)]:
            for g2 in props[(b, c)]:
                n += 1
                lhs = star[compose_property(g2, g1)]
                rhs = compose(star[g2], star[g1])
                if lhs != rhs:
                    bad = bad or {
                        "g1": g1.as_mapping(), "g2": g2.as_mapping(),
                        "F*(g2.g1)": lhs.as_mapping(), "F*(g2).F*(g1)": rhs.as_mapping(),
                    }
                if not rhs.leq(lhs):
                    lax = lax or [g1.as_mapping(), g2.as_mapping()]
        inst = f"{a}->{b}->{c}"
        report.add("galois:preserves-composition", inst, bad is None, bad, cases=n)
        report.add("galois:lax-composition", inst, lax is None, lax, cases=n)

    witness = None
    for a, r in objs.items():
        if star[property_identity(r)] != identity(r):
            witness = {"object": a, "F*(id)": star[property_identity(r)].as_mapping()}
            break
    report.record("galois:identity-not-preserved", "all", FOUND if witness else NOT_FOUND, witness)

    gap = None
    for (a, b), P in props.items():
        for g1, g2 in itertools.combinations(P, 2):
            lhs = star[join_property([g1, g2])]
            rhs = join_transitions([star[g1], star[g2]])
            if lhs != rhs:
                gap = {"hom": f"{a}->{b}", "g1": g1.as_mapping(), "g2": g2.as_mapping(),
                       "F*(g1 v g2)": lhs.as_mapping(), "F*(g1) v F*(g2)": rhs.as_mapping()}
                break
        if gap:
            break
    report.record("galois:join-gap", "all", FOUND if gap else NOT_FOUND, gap)
    return report


# U : Res_0 -> JCLat_0


def functor_U(res: Resolution) -> CompleteLattice:
    return res.image


def functor_U_map(g: PropertyTransition) -> LatticeMap:
    return g.as_lattice_map()


def U_star(lat: CompleteLattice, strict: bool = True) -> Resolution:
    """Full-state resolution on every non-bottom element."""
    return full_state_resolution(lat, strict=strict)


def enumerate_jclat_hom(L1: CompleteLattice, L2: CompleteLattice, strict: bool = True) -> list[LatticeMap]:
    """All join-preserving maps (plus A_0 or constant bottom when strict), by backtracking.

    Elements are assigned in order of increasing down-set size so every
    binary join is assigned after its arguments.
    """
    n = len(L1)
    order = sorted(range(n), key=lambda i: L1.poset.down[i].bit_count())
    val = [-1] * n
    out = []

    def ok(i: int) -> bool:
        v = val[i]
        if i == L1.bottom_idx and v != L2.bottom_idx:
            return False
        for j in range(n):
            if val[j] < 0:
                continue
            if L1.poset.leq_idx(j, i) and not L2.poset.leq_idx(val[j], v):
                return False
            for k in range(n):
                if val[k] >= 0 and L1.join_table[j][k] == i and L2.join_table[val[j]][val[k]] != v:
                    return False
        return True

    def walk(pos: int):
        if pos == n:
            out.append(LatticeMap(L1, L2, tuple(L2.elements[v] for v in val)))
            return
        i = order[pos]
        for v in range(len(L2)):
            val[i] = v
            if ok(i):
                walk(pos + 1)
        val[i] = -1

    walk(0)
    if strict:
        b1, b2 = L1.bottom, L2.bottom
        out = [
            g for g in out
            if all(v == b2 for v in g.values)
            or all((v == b2) == (e == b1) for e, v in zip(L1.elements, g.values))
        ]
    return out


def functor_U_check(objects, strict: bool = True, cap=None) -> Report:
    """U is faithful and full on hom-sets, and U* inverts it up to canonicalization."""
    objs = _named(objects)
    _, kp = _kinds(strict)
    report = Report()
    for a, b in itertools.product(objs, repeat=2):
        ra, rb = objs[a], objs[b]
        P = enumerate_hom_set(ra, rb, kp, cap)
        mapped = [functor_U_map(g) for g in P]
        inst = f"{a}->{b}"
        report.add("U:faithful", inst, len(set(mapped)) == len(mapped), cases=len(P))
        target = set(enumerate_jclat_hom(ra.image, rb.image, strict))
        missing = [m.as_dict() for m in target - set(mapped)]
        report.add("U:full", inst, not missing and set(mapped) <= target,
                   missing[:1] or None, cases=len(target))
    for a, r in objs.items():
        report.extend(U_roundtrip_check(r, a, strict))
    return report


def U_roundtrip_check(res: Resolution, name: str = "res", strict: bool = True) -> Report:
    report = Report()
    lat = functor_U(res)
    back = U_star(lat, strict)
    report.add("U:U-of-U*-is-identity", name, functor_U(back) == lat, cases=1)
    canon, _ = canonicalize(res)
    report.add("U:U*U-is-canonicalization", name, essential_isomorphism(back, canon) is not None, cases=1)
    return report


# V : Res*_0 -> Clos_0, and the Res# <-> Res* isomorphism


def functor_V(res: Resolution) -> ClosureSpace:
    return res.factorization.space


def functor_V_map(f: PossibleTransition) -> ClosMorphism:
    return ClosMorphism(functor_V(f.source), functor_V(f.target), f.images)


def res_sharp_to_star(f: PossibleTransition) -> PossibleTransition:
    """Identity on underlying maps; A_# and A_* must agree (checked)."""
    c = f.conditions  # raises ConditionDisagreement on disagreement
    if not c.A_star and not f.is_bottom:
        raise ASharpFails("map is not a morphism on either side", witness=f.as_mapping())
    return f


def enumerate_clos_hom(S1: ClosureSpace, S2: ClosureSpace, strict: bool = True) -> list[ClosMorphism]:
    out = []
    for images in itertools.product(range(1 << len(S2.universe)), repeat=len(S1.universe)):
        f = ClosMorphism(S1, S2, images)
        if f.is_bottom:
            out.append(f)
        elif f.star_witness() is None and (not strict or a_empty_holds(f)):
            out.append(f)
    return out


def functor_V_check(objects, spaces: Sequence[ClosureSpace] = (), strict: bool = True, cap=None) -> Report:
    objs = _named(objects)
    ks, _ = _kinds(strict)
    report = Report()
    for a, b in itertools.product(objs, repeat=2):
        H = enumerate_hom_set(objs[a], objs[b], ks, cap)
        images = [functor_V_map(f) for f in H]
        inst = f"{a}->{b}"
        bad = next((f.as_mapping() for f, v in zip(H, images) if v.images != f.images), None)
        report.add("V:identity-on-maps", inst, bad is None, bad, cases=len(H))
        clos = set(enumerate_clos_hom(functor_V(objs[a]), functor_V(objs[b]), strict))
        report.add("V:full", inst, set(images) == clos, cases=len(clos))
        disagree = None
        for images_ in itertools.product(range(1 << len(objs[b].sigma)), repeat=len(objs[a].sigma)):
            f = PossibleTransition(objs[a], objs[b], images_)
            if (a_sharp_witness(f) is None) != (functor_V_map(f).star_witness() is None):
                disagree = disagree or f.as_mapping()
        report.add("V:sharp-iff-star", inst, disagree is None, disagree,
                   cases=(1 << len(objs[b].sigma)) ** len(objs[a].sigma))
    for i, S in enumerate(spaces):
        report.add("V:surjective-on-objects", f"S{i}", functor_V(space_resolution(S)) == S, cases=1)
    return report


# W : Clos -> Intsys


def functor_W(f: ClosMorphism) -> LatticeMap:
    """``F -> C2(f(F))`` between closed-set lattices."""
    w = f.star_witness()
    if w is not None:
        raise NotAClosMorphism(f"f(C1({w})) is not inside C2(f({w}))", witness=w)
    S1, S2 = f.source, f.target
    L1, L2 = closed_set_lattice(S1), closed_set_lattice(S2)
    img = f.table
    values = tuple(S2.label(S2.close(img[F])) for F in sorted(S1.closed))
    return LatticeMap(L1, L2, values)


def functor_W_check(spaces: Sequence[ClosureSpace], strict: bool = False) -> Report:
    report = Report()
    spaces = list(spaces)
    homs = {
        (i, j): enumerate_clos_hom(spaces[i], spaces[j], strict)
        for i in range(len(spaces)) for j in range(len(spaces))
    }
    for (i, j), H in homs.items():
        inst = f"S{i}->S{j}"
        Ws = [functor_W(f) for f in H]
        report.add("W:join-preserving", inst, all(w.is_join_preserving() for w in Ws), cases=len(H))
        target = set(enumerate_jclat_hom(closed_set_lattice(spaces[i]), closed_set_lattice(spaces[j]), strict))
        report.add("W:full", inst, set(Ws) <= target and target <= set(Ws), cases=len(target))
        if i == j:
            ident = ClosMorphism(spaces[i], spaces[i], tuple(1 << k for k in range(len(spaces[i].universe))))
            report.add("W:preserves-identity", inst,
                       functor_W(ident) == LatticeMap.identity(closed_set_lattice(spaces[i])), cases=1)
    for i, S in enumerate(spaces):
        # a space is recovered from the labels of its closed-set lattice
        by_label = {S.label(F): F for F in S.closed}
        back = frozenset(by_label[e] for e in closed_set_lattice(S).elements)
        report.add("W:bijective-on-objects", f"S{i}", back == S.closed, cases=1)
    n = len(spaces)
    for i, j, k in itertools.product(range(n), repeat=3):
        bad = None
        for f1 in homs[(i, j)]:
            w1 = functor_W(f1)
            for f2 in homs[(j, k)]:
                if functor_W(compose(f2, f1)) != w1.then(functor_W(f2)):
                    bad = bad or [f1.as_mapping(), f2.as_mapping()]
        report.add("W:preserves-composition", f"S{i}->S{j}->S{k}", bad is None, bad,
                   cases=len(homs[(i, j)]) * len(homs[(j, k)]))
    return report


# Ext : Space -> Clos


def ext_functor(mapping: Mapping[str, str], space1: ClosureSpace, space2: ClosureSpace) -> ClosMorphism:
    """Extend a partial continuous map (undefined on its kernel) to powersets."""
    idx2 = space2.index
    images = []
    for x in space1.universe:
        if x in mapping:
            if mapping[x] not in idx2:
                raise UsageError(f"unknown target point {mapping[x]!r}", witness=mapping[x])
            images.append(1 << idx2[mapping[x]])
        else:
            images.append(0)
    f = ClosMorphism(space1, space2, tuple(images))
    kernel = sum(1 << i for i, x in enumerate(space1.universe) if x not in mapping)
    img = f.table
    for T in range(1 << len(space1.universe)):
        if img[space1.close(T) & ~kernel] & ~space2.close(img[T & ~kernel]):
            raise NotContinuous(f"continuity fails on {space1.label(T)}", witness=space1.label(T))
    return f


def compose_partial(f2: Mapping[str, str], f1: Mapping[str, str]) -> dict[str, str]:
    """Partial-map composite; its kernel is K1 together with the preimage of K2."""
    return {x: f2[y] for x, y in f1.items() if y in f2}


def space_join_witness(f1: ClosMorphism, f2: ClosMorphism):
    """A point whose image under the pointwise join has two elements, or None."""
    j = join_transitions([f1, f2])
    for x, m in zip(f1.source.universe, j.images):
        if m.bit_count() > 1:
            return {"point": x, "image": sorted(f1.target.universe[i] for i in iter_bits(m))}
    return None


def functor_F_R_check(objects, spaces: Sequence[ClosureSpace] = (), cap=None) -> Report:
    """The F_pr, U and V suites rerun without the empty-kernel conditions."""
    report = functor_F_pr_check(objects, strict=False, cap=cap)
    report.extend(functor_U_check(objects, strict=False, cap=cap))
    report.extend(functor_V_check(objects, spaces, strict=False, cap=cap))
    return report
