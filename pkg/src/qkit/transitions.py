"""State and property transitions between resolutions, and their hom-sets.

A possible-state transition is a union-preserving map between powersets,
stored by the images of singletons (``images[i]`` is the image of the i-th
source state as a bitmask).  A definite-property transition is a map between
image lattices, stored by its values in the source image's element order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

from ._bits import env_cap, iter_bits, union_table
from .closure import ClosureSpace
from .errors import ConditionDisagreement, NotComposable, SizeCapExceeded, UsageError
from .order import CompleteLattice, LatticeMap
from .report import Report
from .resolution import Resolution

HOM_CAP = 3


class Kind(str, Enum):
    RES_SHARP_STRICT = "res-sharp-strict"
    RES_SHARP = "res-sharp-nonstrict"
    RES0 = "res0-strict"
    RES = "res-nonstrict"

    @property
    def strict(self) -> bool:
        return self in (Kind.RES_SHARP_STRICT, Kind.RES0)

    @property
    def on_states(self) -> bool:
        return self in (Kind.RES_SHARP_STRICT, Kind.RES_SHARP)

    def property_kind(self) -> "Kind":
        return Kind.RES0 if self.strict else Kind.RES

    def state_kind(self) -> "Kind":
        return Kind.RES_SHARP_STRICT if self.strict else Kind.RES_SHARP


class _UnionMap:
    images: tuple[int, ...]

    @cached_property
    def table(self) -> list[int]:
        return union_table(self.images)

    def apply(self, T: int) -> int:
        out = 0
        for i in iter_bits(T):
            out |= self.images[i]
        return out

    @property
    def is_bottom(self) -> bool:
        return not any(self.images)

    def leq(self, other) -> bool:
        return all(a & ~b == 0 for a, b in zip(self.images, other.images))


@dataclass(frozen=True)
class PossibleTransition(_UnionMap):
    source: Resolution
    target: Resolution
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != len(self.source.sigma):
            raise UsageError("one image per source state required")
        if any(m >> len(self.target.sigma) for m in self.images):
            raise UsageError("image outside the target states")

    @classmethod
    def from_mapping(cls, source: Resolution, target: Resolution, mapping: Mapping[str, Iterable[str]]):
        missing = [p for p in source.sigma if p not in mapping]
        if missing:
            raise UsageError(f"transition undefined on {missing}", witness=missing)
        try:
            images = tuple(target.mask(mapping[p]) for p in source.sigma)
        except KeyError as e:
            raise UsageError(f"unknown target state {e.args[0]!r}", witness=e.args[0]) from None
        return cls(source, target, images)

    def as_mapping(self) -> dict[str, list[str]]:
        return {
            p: sorted(self.target.sigma[j] for j in iter_bits(m))
            for p, m in zip(self.source.sigma, self.images)
        }

    @cached_property
    def conditions(self) -> "Conditions":
        return check_conditions(self)


@dataclass(frozen=True)
class ClosMorphism(_UnionMap):
    """Union-preserving map between closure spaces."""

    source: ClosureSpace
    target: ClosureSpace
    images: tuple[int, ...]

    def star_witness(self):
        """Subset T with f(C1(T)) not inside C2(f(T)), or None."""
        img = self.table
        for T in range(1 << len(self.source.universe)):
            if img[self.source.close(T)] & ~self.target.close(img[T]):
                return self.source.label(T)
        return None

    def as_mapping(self) -> dict[str, list[str]]:
        return {
            p: sorted(self.target.universe[j] for j in iter_bits(m))
            for p, m in zip(self.source.universe, self.images)
        }


def apply(f: _UnionMap, T: int) -> int:
    return f.apply(T)


class Conditions(NamedTuple):
    A_empty: bool
    A_sharp: bool
    A_star: bool


def a_sharp_witness(f: PossibleTransition):
    """Pair (T, T') with equal source values but different target values of f."""
    img, t1, t2 = f.table, f.source.tidx, f.target.tidx
    rep: dict[int, int] = {}
    for T in range(1 << len(f.source.sigma)):
        S = rep.setdefault(t1[T], T)
        if t2[img[S]] != t2[img[T]]:
            return f.source.label(S), f.source.label(T)
    return None


def a_star_witness(f: PossibleTransition):
    img, C1, C2 = f.table, f.source.closure, f.target.closure
    for T in range(1 << len(f.source.sigma)):
        if img[C1[T]] & ~C2[img[T]]:
            return f.source.label(T)
    return None


def a_empty_holds(f: _UnionMap) -> bool:
    img = f.table
    return all((img[T] == 0) == (T == 0) for T in range(len(img)))


def check_conditions(f: PossibleTransition) -> Conditions:
    a_sharp = a_sharp_witness(f) is None
    a_star = a_star_witness(f) is None
    if a_sharp != a_star:
        raise ConditionDisagreement(
            "A_# and A_* disagree",
            witness={"A_sharp": a_sharp, "A_star": a_star, "map": f.as_mapping()},
        )
    return Conditions(a_empty_holds(f), a_sharp, a_star)


def identity(res: Resolution) -> PossibleTransition:
    return PossibleTransition(res, res, tuple(1 << i for i in range(len(res.sigma))))


def bottom(source: Resolution, target: Resolution) -> PossibleTransition:
    return PossibleTransition(source, target, (0,) * len(source.sigma))


def compose(f2, f1):
    """``f2`` after ``f1`` (state or closure-space morphisms)."""
    if f1.target != f2.source:
        raise NotComposable("target of the first map is not the source of the second")
    img = f2.table
    return type(f1)(f1.source, f2.target, tuple(img[m] for m in f1.images))


def join_transitions(fs: Sequence, source=None, target=None):
    """Pointwise union; the empty family gives the bottom morphism."""
    fs = list(fs)
    if not fs:
        if source is None or target is None:
            raise UsageError("empty join needs explicit source and target")
        n = len(source.sigma) if isinstance(source, Resolution) else len(source.universe)
        return (PossibleTransition if isinstance(source, Resolution) else ClosMorphism)(
            source, target, (0,) * n
        )
    first = fs[0]
    for f in fs[1:]:
        if f.source != first.source or f.target != first.target:
            raise NotComposable("joined maps must share source and target")
    images = tuple(
        _or_all(f.images[i] for f in fs) for i in range(len(first.images))
    )
    return type(first)(first.source, first.target, images)


def _or_all(ms: Iterable[int]) -> int:
    out = 0
    for m in ms:
        out |= m
    return out


@dataclass(frozen=True)
class PropertyTransition:
    source: Resolution
    target: Resolution
    values: tuple[str, ...]

    @classmethod
    def from_mapping(cls, source: Resolution, target: Resolution, mapping: Mapping[str, str]):
        dom = source.image.elements
        missing = [a for a in dom if a not in mapping]
        if missing:
            raise UsageError(f"property transition undefined on {missing}", witness=missing)
        for v in mapping.values():
            target.image.idx(v)
        return cls(source, target, tuple(mapping[a] for a in dom))

    @property
    def source_im(self) -> CompleteLattice:
        return self.source.image

    @property
    def target_im(self) -> CompleteLattice:
        return self.target.image

    @cached_property
    def vidx(self) -> tuple[int, ...]:
        im = self.target.image
        return tuple(im.idx(v) for v in self.values)

    def __call__(self, a: str) -> str:
        return self.values[self.source.image.idx(a)]

    def as_mapping(self) -> dict[str, str]:
        return dict(zip(self.source.image.elements, self.values))

    def as_lattice_map(self) -> LatticeMap:
        return LatticeMap(self.source.image, self.target.image, self.values)

    def leq(self, other: "PropertyTransition") -> bool:
        im = self.target.image
        return all(im.poset.leq_idx(a, b) for a, b in zip(self.vidx, other.vidx))

    @property
    def is_bottom(self) -> bool:
        b = self.target.image.bottom
        return all(v == b for v in self.values)


class PropertyConditions(NamedTuple):
    A_vee: bool
    A_0: bool


def check_property_transition(g: PropertyTransition) -> PropertyConditions:
    src, tgt = g.source.image, g.target.image
    a_vee = g.as_lattice_map().join_witness() is None
    a_0 = all((v == tgt.bottom_idx) == (i == src.bottom_idx) for i, v in enumerate(g.vidx))
    return PropertyConditions(a_vee, a_0)


def property_identity(res: Resolution) -> PropertyTransition:
    return PropertyTransition(res, res, res.image.elements)


def property_bottom(source: Resolution, target: Resolution) -> PropertyTransition:
    return PropertyTransition(source, target, (target.image.bottom,) * len(source.image))


def compose_property(g2: PropertyTransition, g1: PropertyTransition) -> PropertyTransition:
    if g1.target != g2.source:
        raise NotComposable("target of the first map is not the source of the second")
    return PropertyTransition(g1.source, g2.target, tuple(g2(v) for v in g1.values))


def join_property(gs: Sequence[PropertyTransition], source=None, target=None) -> PropertyTransition:
    gs = list(gs)
    if not gs:
        if source is None or target is None:
            raise UsageError("empty join needs explicit source and target")
        return property_bottom(source, target)
    first = gs[0]
    im = first.target.image
    values = []
    for i in range(len(first.values)):
        values.append(im.elements[im.join_idx(g.vidx[i] for g in gs)])
    return PropertyTransition(first.source, first.target, tuple(values))


def in_hom_set(f, kind: Kind) -> bool:
    """Membership test for the hom-set of the given kind."""
    kind = Kind(kind)
    if kind.on_states:
        if not isinstance(f, PossibleTransition):
            return False
        if kind.strict:
            return f.is_bottom or (f.conditions.A_empty and f.conditions.A_sharp)
        return f.conditions.A_sharp
    if not isinstance(f, PropertyTransition):
        return False
    c = check_property_transition(f)
    if kind.strict:
        return f.is_bottom or (c.A_vee and c.A_0)
    return c.A_vee


@dataclass(frozen=True)
class HomSet:
    source: Resolution
    target: Resolution
    kind: Kind
    morphisms: tuple

    def __iter__(self):
        return iter(self.morphisms)

    def __len__(self) -> int:
        return len(self.morphisms)

    def __contains__(self, f) -> bool:
        return f in self._members

    @cached_property
    def _members(self) -> dict:
        return {f: i for i, f in enumerate(self.morphisms)}

    def position(self, f) -> int:
        return self._members[f]

    @property
    def bottom(self):
        if self.kind.on_states:
            return bottom(self.source, self.target)
        return property_bottom(self.source, self.target)

    def join(self, fs):
        if self.kind.on_states:
            return join_transitions(fs, self.source, self.target)
        return join_property(fs, self.source, self.target)


def _check_cap(res1: Resolution, res2: Resolution, cap: int | None) -> None:
    cap = env_cap(HOM_CAP) if cap is None else cap
    if len(res1.sigma) > cap or len(res2.sigma) > cap:
        raise SizeCapExceeded(
            f"hom-set enumeration capped at {cap} states per object",
            witness={"sizes": [len(res1.sigma), len(res2.sigma)], "cap": cap},
        )


def enumerate_hom_set(res1: Resolution, res2: Resolution, kind, cap: int | None = None) -> HomSet:
    """Every morphism of the given kind from ``res1`` to ``res2``.

    State kinds run through all singleton-image assignments.  Property kinds
    run through all assignments on the singleton values of ``res1`` (which
    generate its image under joins) and keep the join-preserving results.
    """
    kind = Kind(kind)
    _check_cap(res1, res2, cap)
    found = []
    if kind.on_states:
        choices = range(1 << len(res2.sigma))
        for images in itertools.product(choices, repeat=len(res1.sigma)):
            f = PossibleTransition(res1, res2, images)
            if in_hom_set(f, kind):
                found.append(f)
        return HomSet(res1, res2, kind, tuple(found))

    im1, im2 = res1.image, res2.image
    gens = sorted({im1.idx(res1.table[1 << i]) for i in range(len(res1.sigma))})
    below = [[k for k, g in enumerate(gens) if im1.poset.leq_idx(g, a)] for a in range(len(im1))]
    seen = set()
    for assignment in itertools.product(range(len(im2)), repeat=len(gens)):
        values = tuple(
            im2.elements[im2.join_idx(assignment[k] for k in below[a])] for a in range(len(im1))
        )
        if values in seen:
            continue
        seen.add(values)
        g = PropertyTransition(res1, res2, values)
        if in_hom_set(g, kind):
            found.append(g)
    bot = property_bottom(res1, res2)
    if bot.values not in seen:
        found.insert(0, bot)
    return HomSet(res1, res2, kind, tuple(found))


def _ops(kind: Kind):
    if kind.on_states:
        return compose, identity
    return compose_property, property_identity


def _named(objects) -> dict[str, Resolution]:
    if isinstance(objects, Mapping):
        return dict(objects)
    return {f"R{i}": r for i, r in enumerate(objects)}


def verify_quantaloid_laws(objects, kind=Kind.RES_SHARP_STRICT, cap: int | None = None) -> Report:
    """Check the quantaloid axioms on the full subcategory spanned by ``objects``.

    Covers identities in hom-sets, bottoms, closure of hom-sets under pairwise
    join and composition, identity laws, associativity and two-sided
    distributivity of composition over binary and empty joins.  Composition
    and join are tabulated once as index tables, then the laws are checked on
    indices.
    """
    kind = Kind(kind)
    objs = _named(objects)
    names = list(objs)
    comp, ident = _ops(kind)
    report = Report()
    hom = {(a, b): enumerate_hom_set(objs[a], objs[b], kind, cap) for a in names for b in names}

    join_tab: dict = {}
    for (a, b), H in hom.items():
        inst = f"{a}->{b}"
        ms = H.morphisms
        bot = H.bottom
        report.add("bottom-in-hom-set", inst, bot in H, cases=1)
        bad = next((f for f in ms if not bot.leq(f)), None)
        report.add("bottom-is-least", inst, bad is None, witness=_show(bad), cases=len(ms))
        tab, miss = [], None
        for f in ms:
            row = []
            for g in ms:
                j = H.join([f, g])
                if j not in H:
                    miss = miss or [_show(f), _show(g)]
                    row.append(-1)
                else:
                    row.append(H.position(j))
            tab.append(row)
        join_tab[(a, b)] = tab
        report.add("join-closed", inst, miss is None, witness=miss, cases=len(ms) ** 2)
        if a == b:
            report.add("identity-in-hom-set", inst, ident(objs[a]) in H, cases=1)

    comp_tab: dict = {}
    for a in names:
        for b in names:
            for c in names:
                H1, H2, H3 = hom[(a, b)], hom[(b, c)], hom[(a, c)]
                tab, miss = [], None
                for g in H2.morphisms:
                    row = []
                    for f in H1.morphisms:
                        h = comp(g, f)
                        if h not in H3:
                            miss = miss or [_show(g), _show(f)]
                            row.append(-1)
                        else:
                            row.append(H3.position(h))
                    tab.append(row)
                comp_tab[(a, b, c)] = tab
                report.add("composition-closed", f"{a}->{b}->{c}", miss is None, witness=miss,
                           cases=len(H1) * len(H2))

    for a in names:
        for b in names:
            H = hom[(a, b)]
            ia = hom[(a, a)].position(ident(objs[a])) if ident(objs[a]) in hom[(a, a)] else None
            ib = hom[(b, b)].position(ident(objs[b])) if ident(objs[b]) in hom[(b, b)] else None
            bad = None
            for k in range(len(H)):
                if ia is not None and comp_tab[(a, a, b)][k][ia] != k:
                    bad = bad or ["f.id", _show(H.morphisms[k])]
                if ib is not None and comp_tab[(a, b, b)][ib][k] != k:
                    bad = bad or ["id.f", _show(H.morphisms[k])]
            report.add("identity-law", f"{a}->{b}", bad is None, witness=bad, cases=len(H))

    for a, b, c, d in itertools.product(names, repeat=4):
        ab, bc, cd = len(hom[(a, b)]), len(hom[(b, c)]), len(hom[(c, d)])
        t_abc, t_bcd = comp_tab[(a, b, c)], comp_tab[(b, c, d)]
        t_acd, t_abd = comp_tab[(a, c, d)], comp_tab[(a, b, d)]
        bad = None
        for h in range(cd):
            for g in range(bc):
                hg = t_bcd[h][g]
                for f in range(ab):
                    gf = t_abc[g][f]
                    if min(hg, gf) < 0 or t_acd[h][gf] != t_abd[hg][f]:
                        bad = bad or [h, g, f]
        report.add("associativity", f"{a}->{b}->{c}->{d}", bad is None, witness=bad, cases=ab * bc * cd)

    for a, b, c in itertools.product(names, repeat=3):
        H1, H2, H3 = hom[(a, b)], hom[(b, c)], hom[(a, c)]
        t = comp_tab[(a, b, c)]
        J1, J2, J3 = join_tab[(a, b)], join_tab[(b, c)], join_tab[(a, c)]
        bot1, bot2, bot3 = H1.position(H1.bottom), H2.position(H2.bottom), H3.position(H3.bottom)
        left = right = None
        for g in range(len(H2)):
            if t[g][bot1] != bot3:
                left = left or ["g.bottom", g]
            for f1 in range(len(H1)):
                for f2 in range(len(H1)):
                    if t[g][J1[f1][f2]] != J3[t[g][f1]][t[g][f2]]:
                        left = left or [g, f1, f2]
        for f in range(len(H1)):
            if t[bot2][f] != bot3:
                right = right or ["bottom.f", f]
            for g1 in range(len(H2)):
                for g2 in range(len(H2)):
                    if t[J2[g1][g2]][f] != J3[t[g1][f]][t[g2][f]]:
                        right = right or [g1, g2, f]
        inst = f"{a}->{b}->{c}"
        report.add("left-distributivity", inst, left is None, witness=left, cases=len(H2) * len(H1) ** 2)
        report.add("right-distributivity", inst, right is None, witness=right, cases=len(H1) * len(H2) ** 2)
    return report


def _show(f):
    if f is None:
        return None
    return f.as_mapping()

