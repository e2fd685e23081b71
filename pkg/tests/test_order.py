import itertools

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from qkit.errors import CycleError, NotALattice, NotJoinPreserving, NotMeetPreserving, SizeCapExceeded, UnknownElement
from qkit.library import chain
from qkit.order import (
    LatticeMap,
    as_complete_lattice,
    compose_maps,
    find_lattice_isomorphism,
    join,
    left_adjoint,
    meet,
    right_adjoint,
    validate_poset,
)
from qkit.population import lattices, posets


def test_singleton_poset():
    P = validate_poset(["a"], [])
    assert P.leq("a", "a")


def test_diamond_transitivity(m2):
    assert m2.leq("0", "1")
    pairs = [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
    assert set(m2.poset.le_pairs()) == oracles.reach(m2.elements, pairs)


def test_cycle_rejected():
    with pytest.raises(CycleError) as e:
        validate_poset(["a", "b"], [("a", "b"), ("b", "a")])
    assert set(e.value.witness) == {"a", "b"}


def test_unknown_element():
    with pytest.raises(UnknownElement):
        validate_poset(["a"], [("a", "z")])


def test_chain_join():
    L = chain(2)
    assert join(L, ["0", "1"]) == "1"
    assert join(L, []) == "0"
    assert meet(L, []) == "1"


def test_n_poset_not_lattice():
    P = validate_poset(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    with pytest.raises(NotALattice) as e:
        as_complete_lattice(P)
    w = e.value.witness
    le = oracles.reach(P.elements, P.le_pairs())
    finder = oracles.lub if w["missing"] == "lub" else oracles.glb
    assert finder(P.elements, le, w["subset"]) is None


def test_diamond_joins(m2):
    assert join(m2, ["a", "b"]) == "1"
    assert meet(m2, ["a", "b"]) == "0"


def test_lattice_detection_matches_brute_force():
    for n in range(1, 6):
        for P in posets(n):
            le = oracles.reach(P.elements, P.le_pairs())
            try:
                as_complete_lattice(P)
                got = True
            except NotALattice:
                got = False
            assert got == oracles.is_complete_lattice(P.elements, le)


def test_joins_match_brute_force():
    for L in lattices(5):
        le = oracles.lat_le(L)
        for S in oracles.subsets(L.elements):
            assert join(L, S) == oracles.lub(L.elements, le, S)
            assert meet(L, S) == oracles.glb(L.elements, le, S)
            ubs = [u for u in L.elements if all(L.leq(s, u) for s in S)]
            assert join(L, S) == meet(L, ubs)


def test_right_adjoint_examples(m2):
    assert right_adjoint(LatticeMap.identity(m2)) == LatticeMap.identity(m2)
    c2 = chain(2)
    g = LatticeMap.constant(c2, c2, "0")
    assert right_adjoint(g) == LatticeMap.constant(c2, c2, "1")
    h = LatticeMap.constant(c2, c2, "1")
    assert left_adjoint(h) == LatticeMap.constant(c2, c2, "0")
    assert left_adjoint(LatticeMap.identity(m2)) == LatticeMap.identity(m2)


def test_adjoint_errors():
    c2 = chain(2)
    with pytest.raises(NotJoinPreserving):
        right_adjoint(LatticeMap.constant(c2, c2, "1"))
    with pytest.raises(NotMeetPreserving):
        left_adjoint(LatticeMap.constant(c2, c2, "0"))


def _jp_maps(L1, L2):
    return [LatticeMap.from_mapping(L1, L2, g) for g in oracles.all_join_preserving(L1, L2)]


def test_adjunction_exhaustive():
    pop = lattices(4)
    for L1, L2 in itertools.product(pop, repeat=2):
        for g in _jp_maps(L1, L2):
            gs = right_adjoint(g)
            assert gs.as_dict() == oracles.sup_adjoint(g.as_dict(), L1, L2)
            for a in L1.elements:
                for b in L2.elements:
                    assert L2.leq(g(a), b) == L1.leq(a, gs(b))
            assert gs.is_meet_preserving()
            assert left_adjoint(gs) == g


def test_adjoint_reverses_composition():
    pop = lattices(3)
    for L1, L2, L3 in itertools.product(pop, repeat=3):
        for g1 in _jp_maps(L1, L2):
            for g2 in _jp_maps(L2, L3):
                h = compose_maps(g2, g1)
                assert h.is_join_preserving()
                assert right_adjoint(h) == compose_maps(right_adjoint(g1), right_adjoint(g2))


def test_join_witness_agrees_with_all_subsets():
    pop = lattices(4)
    for L1, L2 in itertools.product(pop, repeat=2):
        for vals in itertools.product(L2.elements, repeat=len(L1)):
            g = LatticeMap(L1, L2, vals)
            assert g.is_join_preserving() == oracles.preserves_all_joins(g.as_dict(), L1, L2)


def test_isomorphism(m2):
    iso = find_lattice_isomorphism(m2, m2)
    assert iso is not None and all(m2.leq(a, b) == m2.leq(iso[a], iso[b]) for a in m2.elements for b in m2.elements)
    assert find_lattice_isomorphism(chain(3), m2) is None


def test_isomorphism_into_chain_image():
    from qkit.closure import closed_set_lattice, space_from_sets
    from qkit.resolution import resolution_from_factors

    space = space_from_sets(["x", "y"], [[], ["x"], ["x", "y"]])
    c5 = chain(5)
    theta = {0: "0", 1: "c2", 3: "1"}
    res = resolution_from_factors(space, theta, c5.poset)
    assert find_lattice_isomorphism(closed_set_lattice(space), res.image) is not None


def test_isomorphism_cap():
    with pytest.raises(SizeCapExceeded):
        find_lattice_isomorphism(chain(5), chain(5), cap=4)


def _brute_iso(P1, P2):
    for perm in itertools.permutations(P2.elements):
        f = dict(zip(P1.elements, perm))
        if all(P1.leq(a, b) == P2.leq(f[a], f[b]) for a in P1.elements for b in P1.elements):
            return True
    return False


def test_isomorphism_complete_on_small_posets():
    for n in range(1, 5):
        ps = posets(n)
        for P1, P2 in itertools.product(ps, repeat=2):
            assert (find_lattice_isomorphism(P1, P2) is not None) == _brute_iso(P1, P2)


@st.composite
def random_poset(draw):
    n = draw(st.integers(1, 6))
    names = [f"v{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())]
    perm = draw(st.permutations(names))
    return validate_poset(perm, pairs), pairs


@settings(max_examples=60, deadline=None)
@given(random_poset())
def test_closure_matches_path_search(data):
    P, pairs = data
    assert set(P.le_pairs()) == oracles.reach(P.elements, pairs)
