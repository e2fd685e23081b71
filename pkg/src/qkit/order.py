"""Finite posets, complete lattices, maps between them and Galois adjoints.

Elements are strings.  Internally every element has an index (its position in
``elements``) and the order is stored as one bitmask per element: ``up[i]``
has bit ``j`` set iff ``elements[i] <= elements[j]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ._bits import env_cap, iter_bits
from .errors import (
    CycleError,
    NotALattice,
    NotJoinPreserving,
    NotMeetPreserving,
    SizeCapExceeded,
    UnknownElement,
    UsageError,
)

EXHAUSTIVE_LATTICE_CHECK = 12
ISO_CAP = 10


@dataclass(frozen=True)
class FinitePoset:
    elements: tuple[str, ...]
    up: tuple[int, ...]

    @cached_property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def down(self) -> tuple[int, ...]:
        n = len(self.elements)
        return tuple(
            sum(1 << j for j in range(n) if self.up[j] >> i & 1) for i in range(n)
        )

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def __len__(self) -> int:
        return len(self.elements)

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}", witness=name) from None

    def leq(self, a: str, b: str) -> bool:
        return bool(self.up[self.idx(a)] >> self.idx(b) & 1)

    def leq_idx(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def le_pairs(self) -> list[tuple[str, str]]:
        e = self.elements
        return [(e[i], e[j]) for i in range(len(e)) for j in iter_bits(self.up[i])]

    def subposet(self, names: Iterable[str]) -> "FinitePoset":
        """Induced order on ``names``, kept in this poset's element order."""
        keep = sorted({self.idx(n) for n in names})
        pos = {old: new for new, old in enumerate(keep)}
        up = tuple(
            sum(1 << pos[j] for j in iter_bits(self.up[i]) if j in pos) for i in keep
        )
        return FinitePoset(tuple(self.elements[i] for i in keep), up)

    def relabel(self, mapping: Mapping[str, str]) -> "FinitePoset":
        return FinitePoset(tuple(mapping[e] for e in self.elements), self.up)


def validate_poset(
    elements: Sequence[str], le_pairs: Iterable[tuple[str, str]]
) -> FinitePoset:
    """Build a poset from generating pairs; applies reflexive-transitive closure."""
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        dup = next(e for e in elements if elements.count(e) > 1)
        raise UsageError(f"duplicate element {dup!r}", witness=dup)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    up = [1 << i for i in range(n)]
    for a, b in le_pairs:
        for x in (a, b):
            if x not in index:
                raise UnknownElement(f"unknown element {x!r}", witness=x)
        up[index[a]] |= 1 << index[b]
    # Warshall on bit rows
    for k in range(n):
        bit = 1 << k
        row = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row
    for i in range(n):
        for j in iter_bits(up[i]):
            if j != i and up[j] >> i & 1:
                raise CycleError(
                    f"{elements[i]!r} and {elements[j]!r} are mutually below each other",
                    witness=[elements[i], elements[j]],
                )
    return FinitePoset(elements, tuple(up))


def chain_poset(names: Sequence[str]) -> FinitePoset:
    return validate_poset(names, zip(names, names[1:]))


@dataclass(frozen=True)
class CompleteLattice:
    poset: FinitePoset
    join_table: tuple[tuple[int, ...], ...]
    meet_table: tuple[tuple[int, ...], ...]
    bottom_idx: int
    top_idx: int

    @property
    def elements(self) -> tuple[str, ...]:
        return self.poset.elements

    @property
    def bottom(self) -> str:
        return self.poset.elements[self.bottom_idx]

    @property
    def top(self) -> str:
        return self.poset.elements[self.top_idx]

    def __len__(self) -> int:
        return len(self.poset)

    def idx(self, name: str) -> int:
        return self.poset.idx(name)

    def leq(self, a: str, b: str) -> bool:
        return self.poset.leq(a, b)

    def join_idx(self, idxs: Iterable[int]) -> int:
        acc = self.bottom_idx
        for i in idxs:
            acc = self.join_table[acc][i]
        return acc

    def meet_idx(self, idxs: Iterable[int]) -> int:
        acc = self.top_idx
        for i in idxs:
            acc = self.meet_table[acc][i]
        return acc

    def join(self, subset: Iterable[str]) -> str:
        return self.elements[self.join_idx(self.idx(s) for s in subset)]

    def meet(self, subset: Iterable[str]) -> str:
        return self.elements[self.meet_idx(self.idx(s) for s in subset)]

    def atoms(self) -> list[str]:
        b = self.bottom_idx
        return [
            e
            for i, e in enumerate(self.elements)
            if i != b and self.poset.down[i] == (1 << i) | (1 << b)
        ]


def join(lattice: CompleteLattice, subset: Iterable[str]) -> str:
    return lattice.join(subset)


def meet(lattice: CompleteLattice, subset: Iterable[str]) -> str:
    return lattice.meet(subset)


def _extremum(bounds: int, rows: Sequence[int]) -> int | None:
    """Index u in ``bounds`` with every bound on the far side of u, if any."""
    for u in iter_bits(bounds):
        if bounds & ~rows[u] == 0:
            return u
    return None


def as_complete_lattice(
    poset: FinitePoset, exhaustive_limit: int = EXHAUSTIVE_LATTICE_CHECK
) -> CompleteLattice:
    """Attach join/meet tables, or raise :class:`NotALattice` with a witness.

    Posets up to ``exhaustive_limit`` elements get a lub/glb check for every
    subset; larger ones are checked through pairwise joins/meets plus
    bottom/top, which is equivalent for finite posets.
    """
    n = len(poset)
    up, down = poset.up, poset.down
    full = poset.full
    if n == 0:
        raise NotALattice("empty poset has no bottom", witness={"subset": [], "missing": "lub"})

    def fail(mask: int, what: str):
        names = [poset.elements[i] for i in iter_bits(mask)]
        raise NotALattice(f"subset {names} has no {what}", witness={"subset": names, "missing": what})

    if n <= exhaustive_limit:
        for mask in range(1 << n):
            ub, lb = full, full
            for i in iter_bits(mask):
                ub &= up[i]
                lb &= down[i]
            if _extremum(ub, up) is None:
                fail(mask, "lub")
            if _extremum(lb, down) is None:
                fail(mask, "glb")

    bottom = _extremum(full, up)
    if bottom is None:
        fail(0, "lub")
    top = _extremum(full, down)
    if top is None:
        fail(0, "glb")
    jt: list[list[int]] = [[0] * n for _ in range(n)]
    mt: list[list[int]] = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            u = _extremum(up[i] & up[j], up)
            if u is None:
                fail((1 << i) | (1 << j), "lub")
            d = _extremum(down[i] & down[j], down)
            if d is None:
                fail((1 << i) | (1 << j), "glb")
            jt[i][j] = jt[j][i] = u
            mt[i][j] = mt[j][i] = d
    return CompleteLattice(
        poset, tuple(map(tuple, jt)), tuple(map(tuple, mt)), bottom, top
    )


def lattice(elements: Sequence[str], le_pairs: Iterable[tuple[str, str]]) -> CompleteLattice:
    return as_complete_lattice(validate_poset(elements, le_pairs))


@dataclass(frozen=True)
class LatticeMap:
    """A total map between lattices, values aligned with ``domain.elements``."""

    domain: CompleteLattice
    codomain: CompleteLattice
    values: tuple[str, ...]

    @classmethod
    def from_mapping(
        cls, domain: CompleteLattice, codomain: CompleteLattice, mapping: Mapping[str, str]
    ) -> "LatticeMap":
        missing = [e for e in domain.elements if e not in mapping]
        if missing:
            raise UsageError(f"map undefined on {missing}", witness=missing)
        for v in mapping.values():
            codomain.idx(v)
        return cls(domain, codomain, tuple(mapping[e] for e in domain.elements))

    @classmethod
    def identity(cls, lat: CompleteLattice) -> "LatticeMap":
        return cls(lat, lat, lat.elements)

    @classmethod
    def constant(cls, domain: CompleteLattice, codomain: CompleteLattice, value: str) -> "LatticeMap":
        return cls(domain, codomain, (value,) * len(domain))

    def __call__(self, a: str) -> str:
        return self.values[self.domain.idx(a)]

    def as_dict(self) -> dict[str, str]:
        return dict(zip(self.domain.elements, self.values))

    @cached_property
    def _vidx(self) -> tuple[int, ...]:
        return tuple(self.codomain.idx(v) for v in self.values)

    def monotone_witness(self):
        d, v = self.domain.poset, self._vidx
        for i in range(len(d)):
            for j in iter_bits(d.up[i]):
                if not self.codomain.poset.leq_idx(v[i], v[j]):
                    return [d.elements[i], d.elements[j]]
        return None

    def join_witness(self):
        """First subset whose join is not preserved, or None.

        Checking the empty join and all pairs covers every finite subset.
        """
        d, c, v = self.domain, self.codomain, self._vidx
        if v[d.bottom_idx] != c.bottom_idx:
            return []
        n = len(d)
        for i in range(n):
            for j in range(i + 1, n):
                if v[d.join_table[i][j]] != c.join_table[v[i]][v[j]]:
                    return [d.elements[i], d.elements[j]]
        return None

    def meet_witness(self):
        d, c, v = self.domain, self.codomain, self._vidx
        if v[d.top_idx] != c.top_idx:
            return []
        n = len(d)
        for i in range(n):
            for j in range(i + 1, n):
                if v[d.meet_table[i][j]] != c.meet_table[v[i]][v[j]]:
                    return [d.elements[i], d.elements[j]]
        return None

    def is_monotone(self) -> bool:
        return self.monotone_witness() is None

    def is_join_preserving(self) -> bool:
        return self.join_witness() is None

    def is_meet_preserving(self) -> bool:
        return self.meet_witness() is None

    def then(self, other: "LatticeMap") -> "LatticeMap":
        """``other`` after ``self``."""
        return LatticeMap(self.domain, other.codomain, tuple(other(v) for v in self.values))

    def leq(self, other: "LatticeMap") -> bool:
        return all(self.codomain.leq(a, b) for a, b in zip(self.values, other.values))


def compose_maps(g2: LatticeMap, g1: LatticeMap) -> LatticeMap:
    return g1.then(g2)


def right_adjoint(g: LatticeMap) -> LatticeMap:
    """Galois dual ``b -> join{a : g(a) <= b}`` of a join-preserving map."""
    w = g.join_witness()
    if w is not None:
        raise NotJoinPreserving(f"map does not preserve the join of {w}", witness=w)
    L1, L2 = g.domain, g.codomain
    gv = g._vidx
    values = []
    for b in range(len(L2)):
        below = (a for a in range(len(L1)) if L2.poset.leq_idx(gv[a], b))
        values.append(L1.elements[L1.join_idx(below)])
    return LatticeMap(L2, L1, tuple(values))


def left_adjoint(h: LatticeMap) -> LatticeMap:
    """Join-preserving dual ``a -> meet{b : a <= h(b)}`` of a meet-preserving map."""
    w = h.meet_witness()
    if w is not None:
        raise NotMeetPreserving(f"map does not preserve the meet of {w}", witness=w)
    L2, L1 = h.domain, h.codomain
    hv = h._vidx
    values = []
    for a in range(len(L1)):
        above = (b for b in range(len(L2)) if L1.poset.leq_idx(a, hv[b]))
        values.append(L2.elements[L2.meet_idx(above)])
    return LatticeMap(L1, L2, tuple(values))


def _as_poset(x) -> FinitePoset:
    return x.poset if isinstance(x, CompleteLattice) else x


def find_lattice_isomorphism(L1, L2, cap: int | None = None) -> dict[str, str] | None:
    """Order isomorphism between two finite posets/lattices, or None.

    Backtracking over candidates with matching (down-set size, up-set size).
    """
    P1, P2 = _as_poset(L1), _as_poset(L2)
    cap = env_cap(ISO_CAP) if cap is None else cap
    if max(len(P1), len(P2)) > cap:
        raise SizeCapExceeded(
            f"isomorphism search capped at {cap} elements",
            witness={"sizes": [len(P1), len(P2)], "cap": cap},
        )
    if len(P1) != len(P2):
        return None
    n = len(P1)

    def sig(P, i):
        return (P.down[i].bit_count(), P.up[i].bit_count())

    s1 = [sig(P1, i) for i in range(n)]
    s2 = [sig(P2, j) for j in range(n)]
    if sorted(s1) != sorted(s2):
        return None
    order = sorted(range(n), key=lambda i: s1[i])
    assign: dict[int, int] = {}
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j] or s2[j] != s1[i]:
                continue
            if all(
                P1.leq_idx(i, a) == P2.leq_idx(j, b) and P1.leq_idx(a, i) == P2.leq_idx(b, j)
                for a, b in assign.items()
            ):
                assign[i] = j
                used[j] = True
                if extend(k + 1):
                    return True
                del assign[i]
                used[j] = False
        return False

    if not extend(0):
        return None
    return {P1.elements[i]: P2.elements[j] for i, j in assign.items()}
