"""Brute-force reference implementations used to cross-check the library.

Everything here works on plain Python sets and dicts, straight from the
definitions, and never calls into the bitmask code paths under test.
"""

from __future__ import annotations

import itertools
from collections import deque


def subsets(xs):
    xs = list(xs)
    for r in range(len(xs) + 1):
        yield from (frozenset(c) for c in itertools.combinations(xs, r))


def reach(elements, pairs):
    """Reflexive-transitive closure by breadth-first search from each element."""
    succ = {e: set() for e in elements}
    for a, b in pairs:
        succ[a].add(b)
    le = set()
    for e in elements:
        seen = {e}
        todo = deque([e])
        while todo:
            x = todo.popleft()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        le |= {(e, y) for y in seen}
    return le


def lub(elements, le, S):
    ubs = [u for u in elements if all((s, u) in le for s in S)]
    least = [u for u in ubs if all((u, v) in le for v in ubs)]
    return least[0] if least else None


def glb(elements, le, S):
    lbs = [u for u in elements if all((u, s) in le for s in S)]
    great = [u for u in lbs if all((v, u) in le for v in lbs)]
    return great[0] if great else None


def is_complete_lattice(elements, le):
    return all(lub(elements, le, S) is not None and glb(elements, le, S) is not None
               for S in subsets(elements))


def lat_le(L):
    return {(a, b) for a in L.elements for b in L.elements if L.leq(a, b)}


def preserves_all_joins(g, L1, L2):
    le1, le2 = lat_le(L1), lat_le(L2)
    return all(
        g[lub(L1.elements, le1, S)] == lub(L2.elements, le2, {g[s] for s in S})
        for S in subsets(L1.elements)
    )


def all_join_preserving(L1, L2):
    """Every total map L1 -> L2 preserving every join, by full enumeration."""
    out = []
    for vals in itertools.product(L2.elements, repeat=len(L1)):
        g = dict(zip(L1.elements, vals))
        if preserves_all_joins(g, L1, L2):
            out.append(g)
    return out


def sup_adjoint(g, L1, L2):
    le1, le2 = lat_le(L1), lat_le(L2)
    return {b: lub(L1.elements, le1, {a for a in L1.elements if (g[a], b) in le2}) for b in L2.elements}


def table_of(res):
    """Resolution table as a dict frozenset -> value."""
    return {frozenset(T): res.table[res.mask(T)] for T in subsets(res.sigma)}


def closure_by_definition(res):
    """C(T) = {t : table({t}) <= table(T)}."""
    tab = table_of(res)
    le = res.target.leq
    return {T: frozenset(t for t in res.sigma if le(tab[frozenset([t])], tab[T])) for T in tab}


def closure_from_family(universe, family):
    """Smallest member of ``family`` containing T, for every T."""
    out = {}
    for T in subsets(universe):
        above = [F for F in family if T <= F]
        out[T] = frozenset.intersection(*above) if above else None
    return out


def transition_image(f, T):
    out = set()
    for t in T:
        out |= set(f.as_mapping()[t])
    return frozenset(out)


def a_sharp(f):
    """Equal source values force equal target values, checked on all pairs."""
    t1, t2 = table_of(f.source), table_of(f.target)
    for T in t1:
        for U in t1:
            if t1[T] == t1[U] and t2[transition_image(f, T)] != t2[transition_image(f, U)]:
                return False
    return True


def a_star(f):
    """f(C1(T)) inside C2(f(T)) for every T, with closures taken from the tables."""
    C1, C2 = closure_by_definition(f.source), closure_by_definition(f.target)
    return all(transition_image(f, C1[T]) <= C2[transition_image(f, T)] for T in C1)
