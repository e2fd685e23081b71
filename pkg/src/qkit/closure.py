"""Closure spaces stored as intersection systems."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from ._bits import iter_bits, set_label
from .errors import C1Violation, C2Violation, C3Violation, NotIntersectionSystem, SizeCapExceeded
from .order import CompleteLattice, FinitePoset

TABLE_CAP = 16


@dataclass(frozen=True)
class ClosureSpace:
    """A finite set with a family of closed subsets (bitmasks over ``universe``).

    The family must contain the whole universe and be closed under
    intersection.  ``C(empty) = empty`` is not required; see :attr:`strict`.
    """

    universe: tuple[str, ...]
    closed: frozenset[int]

    def __post_init__(self):
        full = self.full
        if full not in self.closed:
            raise NotIntersectionSystem("universe is not closed", witness=[])
        fam = sorted(self.closed)
        for F in fam:
            if F & ~full:
                raise NotIntersectionSystem("closed set outside the universe", witness=F)
        for a in range(len(fam)):
            for b in range(a + 1, len(fam)):
                if fam[a] & fam[b] not in self.closed:
                    raise NotIntersectionSystem(
                        "family not closed under intersection",
                        witness=[self.label(fam[a]), self.label(fam[b])],
                    )

    @property
    def full(self) -> int:
        return (1 << len(self.universe)) - 1

    @cached_property
    def index(self) -> dict[str, int]:
        return {x: i for i, x in enumerate(self.universe)}

    def label(self, mask: int) -> str:
        return set_label(mask, self.universe)

    @cached_property
    def table(self) -> tuple[int, ...]:
        """``table[T]`` is the closure of subset ``T``."""
        if len(self.universe) > TABLE_CAP:
            raise SizeCapExceeded(f"closure table capped at {TABLE_CAP} points")
        fam = sorted(self.closed)
        out = []
        for T in range(1 << len(self.universe)):
            acc = self.full
            for F in fam:
                if T & ~F == 0:
                    acc &= F
            out.append(acc)
        return tuple(out)

    def close(self, T: int) -> int:
        if len(self.universe) <= TABLE_CAP:
            return self.table[T]
        acc = self.full
        for F in self.closed:
            if T & ~F == 0:
                acc &= F
        return acc

    @property
    def strict(self) -> bool:
        """True when the empty set is closed."""
        return 0 in self.closed

    @cached_property
    def lattice(self) -> CompleteLattice:
        return closed_set_lattice(self)


def closure_of(space: ClosureSpace, T: int) -> int:
    return space.close(T)


def discrete_space(universe: Sequence[str]) -> ClosureSpace:
    return ClosureSpace(tuple(universe), frozenset(range(1 << len(universe))))


def space_from_sets(universe: Sequence[str], closed: Sequence[Sequence[str]]) -> ClosureSpace:
    index = {x: i for i, x in enumerate(universe)}
    masks = set()
    for F in closed:
        m = 0
        for x in F:
            m |= 1 << index[x]
        masks.add(m)
    return ClosureSpace(tuple(universe), frozenset(masks))


def validate_closure_table(universe: Sequence[str], table: Sequence[int] | Mapping[int, int]) -> ClosureSpace:
    """Check C1-C3 on an explicit operator table and return its closure space."""
    universe = tuple(universe)
    n = len(universe)
    if n > TABLE_CAP:
        raise SizeCapExceeded(f"closure tables capped at {TABLE_CAP} points")
    C = [table[T] for T in range(1 << n)]
    lab = lambda m: set_label(m, universe)  # noqa: E731
    for T in range(1 << n):
        if T & ~C[T]:
            raise C1Violation(f"{lab(T)} not inside its closure", witness=[lab(T)])
    for T in range(1 << n):
        for i in range(n):
            U = T | 1 << i
            if U != T and C[T] & ~C[U]:
                raise C2Violation(f"closure not monotone on {lab(T)} <= {lab(U)}", witness=[lab(T), lab(U)])
    for T in range(1 << n):
        if C[C[T]] != C[T]:
            raise C3Violation(f"closure not idempotent on {lab(T)}", witness=[lab(T)])
    return ClosureSpace(universe, frozenset(T for T in range(1 << n) if C[T] == T))


def is_T0_closure(space: ClosureSpace) -> bool:
    if space.close(0) != 0:
        return False
    singles = [space.close(1 << i) for i in range(len(space.universe))]
    return len(set(singles)) == len(singles)


def is_T1_closure(space: ClosureSpace) -> bool:
    if space.close(0) != 0:
        return False
    return all(space.close(1 << i) == 1 << i for i in range(len(space.universe)))


def closed_set_lattice(space: ClosureSpace) -> CompleteLattice:
    """Closed sets ordered by inclusion; meet is intersection, join is C(union).

    Elements are labelled ``[x,y]`` and listed in increasing bitmask order.
    """
    fam = sorted(space.closed)
    pos = {F: i for i, F in enumerate(fam)}
    n = len(fam)
    up = tuple(sum(1 << j for j in range(n) if fam[i] & ~fam[j] == 0) for i in range(n))
    poset = FinitePoset(tuple(space.label(F) for F in fam), up)
    jt = tuple(tuple(pos[space.close(fam[i] | fam[j])] for j in range(n)) for i in range(n))
    mt = tuple(tuple(pos[fam[i] & fam[j]] for j in range(n)) for i in range(n))
    return CompleteLattice(poset, jt, mt, pos[fam[0]], pos[space.full])


def closed_set_by_label(space: ClosureSpace) -> dict[str, int]:
    return {space.label(F): F for F in space.closed}


def singleton_closures(space: ClosureSpace) -> list[int]:
    return [space.close(1 << i) for i in range(len(space.universe))]

