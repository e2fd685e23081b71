import pytest

from qkit.errors import NotAtomistic, NotOrthomodular, OrthoLawViolation
from qkit.library import boolean, builtin_ortholattices, chain, mo, o6
from qkit.order import LatticeMap, lattice
from qkit.quantum import (
    atomically_generated,
    check_measurement_claims,
    is_atomistic,
    measurement_transition,
    sasaki_projection,
    validate_ortholattice,
)
from qkit.report import FOUND, NOT_FOUND
from qkit.transitions import identity


def _laws_by_hand(ol):
    L = ol.lattice
    for a in L.elements:
        ap = ol.perp(a)
        assert ol.perp(ap) == a
        assert L.join([a, ap]) == L.top and L.meet([a, ap]) == L.bottom
        for b in L.elements:
            if L.leq(a, b):
                assert L.leq(ol.perp(b), ap)


def test_mo2_valid_orthomodular():
    ol = mo(2)
    _laws_by_hand(ol)
    assert ol.orthomodular


def test_boolean_orthomodular():
    for n in (1, 2, 3):
        assert boolean(n).orthomodular


def test_o6_not_orthomodular():
    ol = o6()
    _laws_by_hand(ol)
    assert not ol.orthomodular
    a, b = ol.orthomodular_witness
    L = ol.lattice
    assert L.leq(a, b) and L.join([a, L.meet([b, ol.perp(a)])]) != b


def test_ortho_law_violation():
    L = mo(2).lattice
    with pytest.raises(OrthoLawViolation) as e:
        validate_ortholattice(L, {"0": "1", "a": "a", "a'": "a'", "b": "b'"})
    assert e.value.witness["law"]


def test_half_specified_ortho_is_completed():
    L = mo(2).lattice
    ol = validate_ortholattice(L, {"a": "a'", "b": "b'", "0": "1"})
    assert ol.perp("a'") == "a" and ol.perp("1") == "0"


def test_sasaki_examples():
    ol = mo(2)
    phi = sasaki_projection(ol, "a")
    assert phi("a") == "a" and phi("b") == "a" and phi("0") == "0"


def test_sasaki_properties():
    for name, ol in builtin_ortholattices().items():
        if not ol.orthomodular:
            continue
        L = ol.lattice
        for a in L.elements:
            phi = sasaki_projection(ol, a)
            assert phi.is_join_preserving(), (name, a)
            for p in L.elements:
                assert phi(phi(p)) == phi(p)
                assert L.leq(phi(p), a)


def test_measurement_mo2():
    m = measurement_transition(mo(2), "a")
    f = m.transition.as_mapping()
    assert f["b"] == ["a", "a'"]
    assert f["a"] == ["a"]
    assert f["a'"] == ["a'"]
    c = m.transition.conditions
    assert c.A_sharp and c.A_empty


def test_measurement_boolean():
    m = measurement_transition(mo(1), "a")
    assert m.transition.as_mapping() == {"a": ["a"], "a'": ["a'"]}
    for n in (2, 3):
        ol = boolean(n)
        for a in ol.lattice.elements:
            mt = measurement_transition(ol, a)
            assert all(len(v) == 1 for v in mt.transition.as_mapping().values())


def test_measurement_every_builtin_oml():
    for ol in builtin_ortholattices().values():
        if not ol.orthomodular:
            continue
        for a in ol.lattice.elements:
            c = measurement_transition(ol, a).transition.conditions
            assert c.A_sharp and c.A_empty


def test_measurement_rejections():
    with pytest.raises(NotOrthomodular):
        measurement_transition(o6(), "x")
    assert not is_atomistic(chain(3))


def test_not_atomistic_rejected():
    # the 3-chain has no orthocomplement, so bypass validation to reach the atom check
    from qkit.quantum import Ortholattice

    L = chain(3)
    fake = Ortholattice(L, ("1", "c1", "0"), True)
    with pytest.raises(NotAtomistic):
        measurement_transition(fake, "c1")
    with pytest.raises(NotAtomistic):
        atomically_generated(LatticeMap.identity(L), fake)


def test_atomically_generated():
    ol = mo(2)
    assert atomically_generated(LatticeMap.identity(ol.lattice), ol) == identity(ol.state_resolution)
    g = atomically_generated(sasaki_projection(ol, "a"), ol)
    assert g.as_mapping() == {"a": ["a"], "a'": [], "b": ["a"], "b'": ["a"]}


def test_claims_mo2():
    r = check_measurement_claims(mo(2), "a")
    assert r.ok
    (single,) = r.by_check("single-generator")
    assert single.status == NOT_FOUND
    (ind,) = r.by_check("indeterministic-state")
    assert ind.status == FOUND and ind.witness["b"] == ["a", "a'"]
    (fpr,) = r.by_check("f_pr")
    assert fpr.witness["b"] == "1"


def test_claims_boolean():
    r = check_measurement_claims(mo(1), "a")
    assert r.ok
    (single,) = r.by_check("single-generator")
    assert single.status == FOUND


def test_claims_mo3():
    r = check_measurement_claims(mo(3), "b")
    assert r.ok
    assert r.by_check("single-generator")[0].status == NOT_FOUND


def test_m3_without_ortho():
    L = lattice(["0", "x", "1"], [("0", "x"), ("x", "1")])
    with pytest.raises(OrthoLawViolation):
        validate_ortholattice(L, {"0": "1", "x": "x"})
