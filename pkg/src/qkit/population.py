"""Exhaustive generators for small posets, lattices, closure spaces and resolutions."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

from .closure import ClosureSpace
from .errors import LawViolation
from .order import FinitePoset, as_complete_lattice, CompleteLattice, validate_poset
from .resolution import Resolution, validate_resolution

STATE_NAMES = "pqrstuvw"


def _canonical_form(n: int, rel: frozenset[tuple[int, int]]) -> tuple:
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[i], perm[j]) for i, j in rel))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def posets(n: int) -> tuple[FinitePoset, ...]:
    """One poset per isomorphism class on ``n`` elements named e0..e{n-1}.

    Every finite poset has a linear extension, so it suffices to search
    relations that only go from lower to higher index.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    out = []
    for bits in range(1 << len(pairs)):
        rel = frozenset(p for k, p in enumerate(pairs) if bits >> k & 1)
        if any((i, j) in rel and (j, k) in rel and (i, k) not in rel for i, j, k in itertools.permutations(range(n), 3)):
            continue
        key = _canonical_form(n, rel)
        if key in seen:
            continue
        seen.add(key)
        names = [f"e{i}" for i in range(n)]
        out.append(validate_poset(names, [(names[i], names[j]) for i, j in rel]))
    return tuple(out)


def lattices(max_size: int) -> list[CompleteLattice]:
    out = []
    for n in range(1, max_size + 1):
        for P in posets(n):
            try:
                out.append(as_complete_lattice(P))
            except LawViolation:
                pass
    return out


def closure_spaces(universe, strict: bool | None = None) -> list[ClosureSpace]:
    """Every intersection system on ``universe`` (with or without the empty set)."""
    universe = tuple(universe)
    full = (1 << len(universe)) - 1
    others = list(range(full))
    out = []
    for bits in range(1 << len(others)):
        fam = {full} | {others[k] for k in range(len(others)) if bits >> k & 1}
        if strict is True and 0 not in fam:
            continue
        if strict is False and 0 in fam:
            continue
        if all(a & b in fam for a in fam for b in fam):
            out.append(ClosureSpace(universe, frozenset(fam)))
    return out


def monotone_tables(n_states: int, target: FinitePoset) -> Iterator[tuple[int, ...]]:
    """Monotone maps from the powerset of ``n_states`` points into ``target`` (as indices)."""
    size = 1 << n_states
    table = [0] * size
    m = len(target)

    def walk(T: int):
        if T == size:
            yield tuple(table)
            return
        for v in range(m):
            if all(target.leq_idx(table[T ^ (1 << i)], v) for i in range(n_states) if T >> i & 1):
                table[T] = v
                yield from walk(T + 1)

    yield from walk(0)


def resolutions(max_states: int = 3, max_target: int = 4, strict: bool = True) -> list[Resolution]:
    """Every valid resolution with at most ``max_states`` states into every
    poset (up to isomorphism) with 1..``max_target`` elements."""
    out = []
    for size in range(1, max_target + 1):
        for P in posets(size):
            for n in range(max_states + 1):
                sigma = tuple(STATE_NAMES[:n])
                for t in monotone_tables(n, P):
                    if strict and any(t[T] == t[0] for T in range(1, len(t))):
                        continue
                    try:
                        out.append(validate_resolution(sigma, P, [P.elements[v] for v in t], strict))
                    except LawViolation:
                        pass
    return out
