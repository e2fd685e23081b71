"""Acceptance criteria 1 to 9.

Each test prints one ``criterion N: PASS|FAIL`` line (visible with or
without ``-s``) and then asserts. Run directly with
``python tests/test_acceptance.py`` for just the summary lines.
"""

import itertools
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from qkit.closure import closed_set_lattice, discrete_space, space_from_sets, validate_closure_table  # noqa: E402
from qkit.functors import (  # noqa: E402
    U_star,
    enumerate_jclat_hom,
    functor_F_pr_check,
    functor_U,
    functor_U_check,
    functor_V,
    galois_dual_check,
)
from qkit.library import boolean, builtin_lattices, chain, mo  # noqa: E402
from qkit.order import find_lattice_isomorphism, left_adjoint, right_adjoint  # noqa: E402
from qkit.population import closure_spaces, lattices, resolutions  # noqa: E402
from qkit.quantum import check_measurement_claims, measurement_transition  # noqa: E402
from qkit.report import FOUND, NOT_FOUND  # noqa: E402
from qkit.resolution import (  # noqa: E402
    canonicalize,
    essential_isomorphism,
    factorization_defects,
    factorize,
    full_state_resolution,
    is_canonical,
    push_forward,
    space_resolution,
    validate_resolution,
)
from qkit.transitions import Kind, PossibleTransition, check_conditions, verify_quantaloid_laws  # noqa: E402

PAIR_SAMPLE_THRESHOLD = 10 ** 5
PAIR_SAMPLE = 10_000
ORACLE_SAMPLE = 500
SEED = 20240101


def _line(n: int, ok: bool, detail: str) -> str:
    return f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.fixture
def announce(capsys):
    def out(n, ok, detail):
        with capsys.disabled():
            print("\n" + _line(n, ok, detail))
    return out


def tiny_objects(strict: bool = True) -> dict:
    one = validate_resolution(["p"], chain(2).poset, ["0", "1"], strict=strict)
    two = validate_resolution(["p", "q"], chain(3).poset, ["0", "c1", "1", "1"], strict=strict)
    disc = validate_resolution(["a", "b"], boolean(2).lattice.poset, ["0", "a", "b", "1"], strict=strict)
    return {"one": one, "chain": two, "disc": disc}


def counterexample_objects() -> dict:
    """Three objects on which the Galois lift fails to preserve a composite."""
    r1 = full_state_resolution(chain(2))
    r2 = space_resolution(discrete_space(["s1", "s2"]))
    r3 = space_resolution(space_from_sets(["x", "y", "z"], [[], ["x"], ["y"], ["x", "y", "z"]]))
    return {"R1": r1, "R2": r2, "R3": r3}


# 1. factorization


def criterion_1():
    t0 = time.perf_counter()
    pop = resolutions(3, 4, strict=True)
    bad = []
    for res in pop:
        fac = factorize(res)
        S = fac.space
        problems = []
        if S.close(0) != 0:
            problems.append("C(empty) != empty")
        try:
            validate_closure_table(S.universe, S.table)
        except Exception as e:  # any C1-C3 failure
            problems.append(type(e).__name__)
        if any(fac.theta[S.close(T)] != res.table[T] for T in range(res.full + 1)):
            problems.append("theta.C != table")
        if factorization_defects(res, fac):
            problems.append("defects")
        if find_lattice_isomorphism(closed_set_lattice(S), res.image) is None:
            problems.append("closed sets not iso to image")
        if problems:
            bad.append((res.sigma, res.table, problems))
    dt = time.perf_counter() - t0
    return not bad and dt < 60, f"{len(pop)} strict resolutions, {len(bad)} failures, {dt:.1f}s"


# 2. A_# iff A_*


def criterion_2():
    pop = resolutions(3, 4, strict=False)
    n_pairs = len(pop) ** 2
    rng = random.Random(SEED)
    if n_pairs > PAIR_SAMPLE_THRESHOLD:
        pairs = [(rng.choice(pop), rng.choice(pop)) for _ in range(PAIR_SAMPLE)]
    else:
        pairs = list(itertools.product(pop, repeat=2))
    checked = {i for i in rng.sample(range(len(pairs)), min(ORACLE_SAMPLE, len(pairs)))}
    maps = disagreements = 0
    for i, (r1, r2) in enumerate(pairs):
        for images in itertools.product(range(1 << len(r2.sigma)), repeat=len(r1.sigma)):
            f = PossibleTransition(r1, r2, images)
            c = check_conditions(f)
            maps += 1
            if c.A_sharp != c.A_star:
                disagreements += 1
            elif i in checked and not (oracles.a_sharp(f) == oracles.a_star(f) == c.A_sharp):
                disagreements += 1
    detail = (f"{len(pairs)} of {n_pairs} pairs (seed {SEED}), {maps} maps, "
              f"oracle on {len(checked)} pairs, {disagreements} discrepancies")
    return disagreements == 0, detail


# 3. quantaloid laws


def criterion_3():
    t0 = time.perf_counter()
    violations = checks = 0
    for strict in (True, False):
        objs = tiny_objects(strict)
        for kind in Kind:
            if kind.strict != strict:
                continue
            rep = verify_quantaloid_laws(objs, kind)
            checks += len(rep.results)
            violations += len(rep.violations)
    dt = time.perf_counter() - t0
    return violations == 0 and dt < 30, f"{checks} checks over both regimes, {violations} violations, {dt:.1f}s"


# 4. F_pr


def criterion_4():
    checks = violations = 0
    for strict in (True, False):
        rep = functor_F_pr_check(tiny_objects(strict), strict=strict)
        checks += len(rep.results)
        violations += len(rep.violations)
    return violations == 0, f"{checks} checks, {violations} violations"


# 5. Galois dual


def criterion_5():
    parts = {}
    rep = galois_dual_check({**tiny_objects(), **counterexample_objects()}, strict=True)

    def clean(check):
        rs = rep.by_check(check)
        return bool(rs) and all(r.status == "ok" for r in rs), rs

    parts["i"], _ = clean("galois:lift-equals-sup")
    parts["ii"], _ = clean("galois:right-inverse")
    parts["iii"], comp = clean("galois:preserves-composition")
    lax_ok, _ = clean("galois:lax-composition")
    sxy = space_from_sets(["x", "y"], [[], ["x"], ["x", "y"]])
    (w,) = galois_dual_check({"S": space_resolution(sxy)}).by_check("galois:identity-not-preserved")
    parts["iv"] = w.status == FOUND and w.witness["F*(id)"]["y"] == ["x", "y"]
    broken = [r.instance for r in comp if r.status != "ok"]
    detail = ", ".join(f"({k}) {'ok' if v else 'FAIL'}" for k, v in parts.items())
    detail += f"; lax inclusion {'ok' if lax_ok else 'FAIL'}"
    if broken:
        detail += f"; composite not preserved on {broken[0]}, see decisions ledger"
    return all(parts.values()), detail


# 6. equivalences


def criterion_6():
    fails = []
    for strict in (True, False):
        rep = functor_U_check(tiny_objects(strict), strict=strict)
        fails += [r.check for r in rep.violations if r.check in ("U:full", "U:faithful")]
    small = {k: L for k, L in builtin_lattices().items() if len(L) <= 8}
    fails += [f"U(U*({k}))" for k, L in small.items() if functor_U(U_star(L)) != L]
    pop = resolutions(3, 4, strict=True)
    for res in pop:
        canon, _ = canonicalize(res)
        if essential_isomorphism(U_star(functor_U(res)), canon) is None:
            fails.append(f"U*U {res.table}")
    spaces = [S for n in range(4) for S in closure_spaces(tuple("xyz"[:n]))]
    fails += [f"V {S.closed}" for S in spaces if functor_V(space_resolution(S)) != S]
    detail = f"{len(small)} built-in lattices, {len(pop)} resolutions, {len(spaces)} spaces, {len(fails)} failures"
    return not fails, detail


# 7. canonicalization


def criterion_7():
    pop = resolutions(3, 4, strict=True)
    fails = 0
    for res in pop:
        canon, phi = canonicalize(res)
        square = all(res.table[T] == canon.table[push_forward(T, phi, res, canon)] for T in range(res.full + 1))
        again, phi2 = canonicalize(canon)
        bij = len(set(phi2.values())) == len(phi2) == len(again.sigma)
        same_image = find_lattice_isomorphism(again.image, canon.image) is not None
        iso = essential_isomorphism(again, canon) is not None
        if not (square and is_canonical(canon) and bij and same_image and iso):
            fails += 1
    return fails == 0, f"{len(pop)} resolutions, {fails} failures"


# 8. Sasaki measurement


def criterion_8():
    t0 = time.perf_counter()
    ol = mo(2)
    m = measurement_transition(ol, "a").transition
    f = m.as_mapping()
    exact = f["b"] == ["a", "a'"] and f["a"] == ["a"] and f["a'"] == ["a'"]
    rep = check_measurement_claims(ol, "a")
    union = rep.by_check("A_union")[0].status == "ok"
    sharp = rep.by_check("A_sharp")[0].status == "ok" and m.conditions.A_sharp
    irreducible = rep.by_check("single-generator")[0].status == NOT_FOUND
    b4 = measurement_transition(mo(1), "a").transition.as_mapping()
    deterministic = all(len(v) == 1 for v in b4.values())
    dt = time.perf_counter() - t0
    ok = exact and union and sharp and irreducible and deterministic and dt < 5
    detail = (f"images {'exact' if exact else 'WRONG'}, A_union {union}, A_sharp {sharp}, "
              f"irreducible {irreducible}, Boolean deterministic {deterministic}, {dt:.2f}s")
    return ok, detail


# 9. adjunction


def criterion_9():
    pop = lattices(4)
    maps = fails = 0
    for L1, L2 in itertools.product(pop, repeat=2):
        for g in enumerate_jclat_hom(L1, L2, strict=False):
            maps += 1
            h = right_adjoint(g)
            adj = all(L2.leq(g(a), b) == L1.leq(a, h(b)) for a in L1.elements for b in L2.elements)
            if not adj or left_adjoint(h) != g:
                fails += 1
    return fails == 0, f"{len(pop)} lattices, {maps} join-preserving maps, {fails} failures"


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 10)}


@pytest.mark.parametrize("n", list(CRITERIA))
def test_criterion(n, announce):
    ok, detail = CRITERIA[n]()
    announce(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        results.append(ok)
        print(_line(n, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
