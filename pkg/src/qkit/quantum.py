"""Ortholattices, Sasaki projections and the perfect-measurement transition.

States are the atoms of an atomistic orthomodular lattice, read through the
full-state resolution ``T -> join T``.  A measurement of property ``a`` sends
an atom ``p`` to its two possible outcomes ``a & (a' | p)`` and
``a' & (a | p)``; an outcome equal to bottom is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import NotAtomistic, NotJoinPreserving, NotOrthomodular, OrthoLawViolation, UsageError
from .functors import enumerate_jclat_hom, f_pr
from .order import CompleteLattice, LatticeMap
from .report import FOUND, NOT_FOUND, Report
from .resolution import Resolution, full_state_resolution
from .transitions import PossibleTransition, a_sharp_witness, join_transitions


@dataclass(frozen=True)
class Ortholattice:
    lattice: CompleteLattice
    ortho: tuple[str, ...]
    orthomodular: bool
    orthomodular_witness: tuple[str, str] | None = None

    def perp(self, a: str) -> str:
        return self.ortho[self.lattice.idx(a)]

    @cached_property
    def atoms(self) -> list[str]:
        return self.lattice.atoms()

    @cached_property
    def state_resolution(self) -> Resolution:
        """Full-state resolution with the atoms as states."""
        return full_state_resolution(self.lattice, self.atoms)


def validate_ortholattice(lat: CompleteLattice, ortho: Mapping[str, str]) -> Ortholattice:
    """Check the ortholattice laws and test orthomodularity.

    ``ortho`` may list each complementary pair once; the reverse direction
    is filled in, and a conflict is reported as an involution failure.
    """
    perp = dict(ortho)
    for a, b in ortho.items():
        lat.idx(a)
        lat.idx(b)
        perp.setdefault(b, a)
    missing = [e for e in lat.elements if e not in perp]
    if missing:
        raise UsageError(f"orthocomplement undefined on {missing}", witness=missing)

    def fail(law, *w):
        raise OrthoLawViolation(f"{law} fails at {list(w)}", witness={"law": law, "elements": list(w)})

    for a in lat.elements:
        if perp[perp[a]] != a:
            fail("involution", a)
        if lat.join([a, perp[a]]) != lat.top:
            fail("a v a' = 1", a)
        if lat.meet([a, perp[a]]) != lat.bottom:
            fail("a ^ a' = 0", a)
    for a in lat.elements:
        for b in lat.elements:
            if lat.leq(a, b) and not lat.leq(perp[b], perp[a]):
                fail("order reversal", a, b)
    witness = None
    for a in lat.elements:
        for b in lat.elements:
            if lat.leq(a, b) and lat.join([a, lat.meet([b, perp[a]])]) != b:
                witness = (a, b)
                break
        if witness:
            break
    return Ortholattice(lat, tuple(perp[e] for e in lat.elements), witness is None, witness)


def is_atomistic(lat: CompleteLattice) -> bool:
    atoms = lat.atoms()
    return all(lat.join(q for q in atoms if lat.leq(q, e)) == e for e in lat.elements)


def sasaki_projection(ol: Ortholattice, a: str) -> LatticeMap:
    """``p -> a & (a' | p)``."""
    L = ol.lattice
    ap = ol.perp(a)
    return LatticeMap(L, L, tuple(L.meet([a, L.join([ap, p])]) for p in L.elements))


def _require_measurable(ol: Ortholattice) -> None:
    if not ol.orthomodular:
        raise NotOrthomodular("lattice is not orthomodular", witness=list(ol.orthomodular_witness))
    if not is_atomistic(ol.lattice):
        raise NotAtomistic("lattice is not atomistic")


def atomically_generated(g: LatticeMap, ol: Ortholattice) -> PossibleTransition:
    """Transition sending atom p to the atoms below g(p)."""
    if not is_atomistic(ol.lattice):
        raise NotAtomistic("lattice is not atomistic")
    w = g.join_witness()
    if w is not None:
        raise NotJoinPreserving(f"generator does not preserve the join of {w}", witness=w)
    res = ol.state_resolution
    L = ol.lattice
    images = tuple(res.mask(q for q in ol.atoms if L.leq(q, g(p))) for p in ol.atoms)
    return PossibleTransition(res, res, images)


@dataclass(frozen=True)
class MeasurementTransition:
    lattice: Ortholattice
    tested_property: str
    transition: PossibleTransition

    def outcomes(self, p: str) -> list[str]:
        t = self.transition
        return [t.target.sigma[j] for j in range(len(t.target.sigma)) if t.images[t.source.index[p]] >> j & 1]


def measurement_transition(ol: Ortholattice, a: str) -> MeasurementTransition:
    """Possible-state transition of a perfect measurement of ``a`` and ``a'``.

    Each outcome contributes the atoms below it (just itself when it is an
    atom); bottom outcomes contribute nothing.
    """
    _require_measurable(ol)
    L = ol.lattice
    ap = ol.perp(a)
    res = ol.state_resolution
    images = []
    for p in ol.atoms:
        outcomes = {L.meet([a, L.join([ap, p])]), L.meet([ap, L.join([a, p])])} - {L.bottom}
        images.append(res.mask(q for q in ol.atoms if any(L.leq(q, o) for o in outcomes)))
    return MeasurementTransition(ol, a, PossibleTransition(res, res, tuple(images)))


def check_measurement_claims(ol: Ortholattice, a: str) -> Report:
    """Verify the measurement transition is a state transition and test whether
    a single join-preserving map on the lattice generates it."""
    m = measurement_transition(ol, a)
    f = m.transition
    report = Report()
    inst = f"a={a}"
    phi_a = sasaki_projection(ol, a)
    phi_ap = sasaki_projection(ol, ol.perp(a))
    report.add("sasaki-join-preserving", inst, phi_a.is_join_preserving() and phi_ap.is_join_preserving(),
               cases=2)
    union = join_transitions([atomically_generated(phi_a, ol), atomically_generated(phi_ap, ol)])
    report.add("union-of-sasaki-generated", inst, union == f, cases=1)
    report.add("A_union", inst, f.table[f.source.full] == _or(f.images), cases=1)
    w = a_sharp_witness(f)
    report.add("A_sharp", inst, w is None, w, cases=1 << len(f.source.sigma))
    report.add("A_empty", inst, f.conditions.A_empty, cases=1 << len(f.source.sigma))
    if w is None:
        report.record("f_pr", inst, "info", f_pr(f).as_mapping())

    multi = {p: m.outcomes(p) for p in ol.atoms if len(m.outcomes(p)) > 1}
    report.record("indeterministic-state", inst, FOUND if multi else NOT_FOUND, multi or None)
    generator = None
    for g in enumerate_jclat_hom(ol.lattice, ol.lattice, strict=False):
        if atomically_generated(g, ol) == f:
            generator = g.as_dict()
            break
    report.record("single-generator", inst, FOUND if generator else NOT_FOUND, generator)
    return report


def _or(ms) -> int:
    out = 0
    for x in ms:
        out |= x
    return out
