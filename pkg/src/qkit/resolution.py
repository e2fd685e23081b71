"""Operational resolutions and resolution operators.

A resolution assigns to every subset of a finite state set ``sigma`` an
element of a target poset.  Tables are stored in full, indexed by subset
bitmask.  ``strict=True`` additionally demands that only the empty set is sent
to the bottom value (the empty-kernel axiom); ``strict=False`` is the
resolution-operator regime where that axiom is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, NamedTuple, Sequence

from ._bits import iter_bits, set_label
from .closure import ClosureSpace, closed_set_lattice
from .errors import (
    EmptyKernelViolation,
    JoinAxiomViolation,
    MonotonicityViolation,
    NotAFullSetOfStates,
    NotAnEmbedding,
    SizeCapExceeded,
    UsageError,
)
from .order import CompleteLattice, FinitePoset, as_complete_lattice, find_lattice_isomorphism

SIGMA_CAP = 16


@dataclass(frozen=True)
class Resolution:
    sigma: tuple[str, ...]
    target: FinitePoset
    table: tuple[str, ...]
    strict: bool = True

    def __post_init__(self):
        if len(self.table) != 1 << len(self.sigma):
            raise UsageError(
                f"table has {len(self.table)} entries, expected {1 << len(self.sigma)}"
            )

    @property
    def full(self) -> int:
        return (1 << len(self.sigma)) - 1

    @cached_property
    def index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.sigma)}

    @cached_property
    def tidx(self) -> tuple[int, ...]:
        """Table values as indices into ``target``."""
        return tuple(self.target.idx(v) for v in self.table)

    def label(self, mask: int) -> str:
        return set_label(mask, self.sigma)

    def mask(self, names) -> int:
        m = 0
        for p in names:
            m |= 1 << self.index[p]
        return m

    def __call__(self, T: int) -> str:
        return self.table[T]

    @cached_property
    def image(self) -> CompleteLattice:
        return image_lattice(self)

    @cached_property
    def factorization(self) -> "Factorization":
        return factorize(self)

    @property
    def closure(self) -> tuple[int, ...]:
        return self.factorization.space.table

    @cached_property
    def theta_inverse(self) -> dict[str, int]:
        """Image value -> the unique closed set carrying it."""
        return {v: F for F, v in self.factorization.theta.items()}


def _normalize_table(sigma, table) -> tuple[str, ...]:
    n = len(sigma)
    if isinstance(table, Mapping):
        missing = [set_label(T, sigma) for T in range(1 << n) if T not in table]
        if missing:
            raise UsageError(f"table undefined on {missing}", witness=missing)
        return tuple(table[T] for T in range(1 << n))
    return tuple(table)


def validate_resolution(
    sigma: Sequence[str],
    target: FinitePoset,
    table: Sequence[str] | Mapping[int, str],
    strict: bool = True,
) -> Resolution:
    """Check the monotonicity, join and (if strict) empty-kernel axioms."""
    sigma = tuple(sigma)
    n = len(sigma)
    if n > SIGMA_CAP:
        raise SizeCapExceeded(f"resolutions capped at {SIGMA_CAP} states")
    if len(set(sigma)) != n:
        raise UsageError("duplicate state names", witness=list(sigma))
    res = Resolution(sigma, target, _normalize_table(sigma, table), strict)
    t = res.tidx
    le = target.leq_idx
    lab = res.label

    for T in range(1 << n):
        for i in range(n):
            U = T | 1 << i
            if U != T and not le(t[T], t[U]):
                raise MonotonicityViolation(
                    f"table({lab(T)}) is not below table({lab(U)})",
                    witness={"T": lab(T), "T'": lab(U)},
                )

    # For each T, the union of every S with table(S) <= table(T) must itself
    # lie below table(T); subfamilies then follow by monotonicity.
    union_by_value: dict[int, int] = {}
    for S in range(1 << n):
        union_by_value[t[S]] = union_by_value.get(t[S], 0) | S
    for T in range(1 << n):
        family_union = 0
        for v, U in union_by_value.items():
            if le(v, t[T]):
                family_union |= U
        if not le(t[family_union], t[T]):
            family = [lab(S) for S in range(1 << n) if le(t[S], t[T])]
            raise JoinAxiomViolation(
                f"every table(T_i) <= table({lab(T)}) but table of their union is not",
                witness={"family": family, "T": lab(T)},
            )

    if strict:
        for T in range(1, 1 << n):
            if t[T] == t[0]:
                raise EmptyKernelViolation(
                    f"non-empty {lab(T)} has the same value as the empty set",
                    witness={"T": lab(T)},
                )
    return res


def image_lattice(res: Resolution) -> CompleteLattice:
    """Distinct table values with the order inherited from the target."""
    return as_complete_lattice(res.target.subposet(set(res.table)))


@dataclass(frozen=True)
class Factorization:
    space: ClosureSpace
    theta: dict[int, str]

    def theta_map(self) -> dict[str, str]:
        return {self.space.label(F): v for F, v in sorted(self.theta.items())}


def factorize(res: Resolution) -> Factorization:
    """Split a resolution into its closure factor and the embedding of closed sets.

    ``C(T) = {t : table({t}) <= table(T)}`` and ``theta(F) = table(F)``.
    """
    n = len(res.sigma)
    t, le = res.tidx, res.target.leq_idx
    singles = [t[1 << i] for i in range(n)]
    closed = set()
    for T in range(1 << n):
        C = 0
        for i in range(n):
            if le(singles[i], t[T]):
                C |= 1 << i
        if C == T:
            closed.add(T)
    space = ClosureSpace(res.sigma, frozenset(closed))
    return Factorization(space, {F: res.table[F] for F in sorted(closed)})


def factorization_defects(res: Resolution, fac: Factorization) -> list[str]:
    """Everything wrong with ``fac`` as a factorization of ``res`` (empty if sound)."""
    out = []
    space = fac.space
    C = space.table
    n = len(res.sigma)
    for T in range(1 << n):
        if T & ~C[T]:
            out.append(f"C1 fails at {res.label(T)}")
        if C[C[T]] != C[T]:
            out.append(f"C3 fails at {res.label(T)}")
        for i in range(n):
            if C[T] & ~C[T | 1 << i]:
                out.append(f"C2 fails at {res.label(T)}")
        if fac.theta[C[T]] != res.table[T]:
            out.append(f"theta(C({res.label(T)})) != table({res.label(T)})")
    if res.strict and C[0] != 0:
        out.append("C(empty) is not empty")
    closed = sorted(space.closed)
    for F in closed:
        for G in closed:
            if (F & ~G == 0) != res.target.leq(fac.theta[F], fac.theta[G]):
                out.append(f"theta not an order embedding on {res.label(F)}, {res.label(G)}")
    if find_lattice_isomorphism(closed_set_lattice(space), res.image, cap=1 << 16) is None:
        out.append("closed-set lattice not isomorphic to image lattice")
    return out


def resolution_from_factors(
    space: ClosureSpace,
    theta: Mapping[int, str],
    target: FinitePoset,
    strict: bool | None = None,
) -> Resolution:
    """Compose an order embedding of the closed sets with the closure operator."""
    closed = sorted(space.closed)
    missing = [space.label(F) for F in closed if F not in theta]
    if missing:
        raise NotAnEmbedding(f"theta undefined on {missing}", witness={"undefined": missing})
    for F in closed:
        for G in closed:
            if (F & ~G == 0) != target.leq(theta[F], theta[G]):
                raise NotAnEmbedding(
                    f"theta does not reflect/preserve {space.label(F)} vs {space.label(G)}",
                    witness={"F": space.label(F), "G": space.label(G)},
                )
    if strict is None:
        strict = space.strict
    table = tuple(theta[space.close(T)] for T in range(1 << len(space.universe)))
    return validate_resolution(space.universe, target, table, strict)


def space_resolution(space: ClosureSpace) -> Resolution:
    """A closure space read as a resolution into its own closed-set lattice."""
    lat = closed_set_lattice(space)
    theta = {F: space.label(F) for F in space.closed}
    return resolution_from_factors(space, theta, lat.poset, strict=space.strict)


def full_state_resolution(
    lat: CompleteLattice, states: Sequence[str] | None = None, strict: bool = True
) -> Resolution:
    """``T -> join T`` over a full set of states (default: every non-bottom element)."""
    if states is None:
        states = [e for e in lat.elements if e != lat.bottom]
    states = tuple(states)
    if lat.bottom in states:
        raise NotAFullSetOfStates("states may not contain bottom", witness=lat.bottom)
    for e in lat.elements:
        below = [s for s in states if lat.leq(s, e)]
        if lat.join(below) != e:
            raise NotAFullSetOfStates(f"{e!r} is not the join of the states below it", witness=e)
    table = tuple(lat.join(states[i] for i in iter_bits(T)) for T in range(1 << len(states)))
    return validate_resolution(states, lat.poset, table, strict)


class Separation(NamedTuple):
    T0: bool
    T1: bool


def separation(res: Resolution) -> Separation:
    n = len(res.sigma)
    singles = [res.tidx[1 << i] for i in range(n)]
    t0 = len(set(singles)) == n
    t1 = all(
        not res.target.leq_idx(singles[i], singles[j])
        for i in range(n)
        for j in range(n)
        if i != j
    )
    return Separation(t0, t1)


def preorder(res: Resolution) -> frozenset[tuple[str, str]]:
    """Pairs (p, q) with table({p}) <= table({q})."""
    s = res.sigma
    singles = [res.tidx[1 << i] for i in range(len(s))]
    return frozenset(
        (s[i], s[j])
        for i in range(len(s))
        for j in range(len(s))
        if res.target.leq_idx(singles[i], singles[j])
    )


def is_saturated(res: Resolution) -> bool:
    hit = {res.table[1 << i] for i in range(len(res.sigma))}
    return hit >= set(res.table) - {res.table[0]}


def is_canonical(res: Resolution) -> bool:
    return is_saturated(res) and separation(res).T0


CANONICAL_PREFIX = "s:"


def canonicalize(res: Resolution) -> tuple[Resolution, dict[str, str]]:
    """Canonical resolution on the non-bottom image values, plus the point map.

    New states are the image values prefixed with ``s:``; the new table sends a
    set of them to its join inside the image lattice.  ``phi`` is partial when
    some state has the bottom value on its own.
    """
    im = res.image
    bottom = res.table[0]
    points = [v for v in im.elements if v != bottom]
    sigma2 = tuple(CANONICAL_PREFIX + v for v in points)
    pidx = [im.idx(v) for v in points]
    table = tuple(
        im.elements[im.join_idx(pidx[i] for i in iter_bits(T))] for T in range(1 << len(points))
    )
    canon = validate_resolution(sigma2, im.poset, table, res.strict)
    # states whose singleton value is bottom (possible only when not strict) have no image
    phi = {
        p: CANONICAL_PREFIX + res.table[1 << i]
        for i, p in enumerate(res.sigma)
        if res.table[1 << i] != bottom
    }
    return canon, phi


def push_forward(mask: int, phi: Mapping[str, str], src: Resolution, dst: Resolution) -> int:
    """P(phi) on a subset mask; points outside the domain of ``phi`` vanish."""
    return dst.mask(phi[p] for p in (src.sigma[i] for i in iter_bits(mask)) if p in phi)


def essential_isomorphism(a: Resolution, b: Resolution):
    """(point bijection, image lattice isomorphism) relating two resolutions, or None.

    The pair must make ``iso(a.table[T]) == b.table[xi(T)]`` for every subset T.
    Only the first lattice isomorphism found is tried, which is enough for
    canonical resolutions (their tables are joins of singleton values).
    """
    if len(a.sigma) != len(b.sigma):
        return None
    iso = find_lattice_isomorphism(a.image, b.image, cap=1 << 16)
    if iso is None:
        return None
    by_value: dict[str, list[str]] = {}
    for j, q in enumerate(b.sigma):
        by_value.setdefault(b.table[1 << j], []).append(q)
    xi = {}
    for i, p in enumerate(a.sigma):
        bucket = by_value.get(iso[a.table[1 << i]])
        if not bucket:
            return None
        xi[p] = bucket.pop()
    for T in range(1 << len(a.sigma)):
        if iso[a.table[T]] != b.table[push_forward(T, xi, a, b)]:
            return None
    return xi, iso
