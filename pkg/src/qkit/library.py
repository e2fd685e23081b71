"""Built-in lattices: chains, Boolean algebras, MO_n, O6, M3, N5."""

from __future__ import annotations

import itertools

from .order import CompleteLattice, lattice
from .quantum import Ortholattice, validate_ortholattice

LETTERS = "abc"


def chain(n: int) -> CompleteLattice:
    if n == 1:
        return lattice(["0"], [])
    names = ["0"] + [f"c{i}" for i in range(1, n - 1)] + ["1"]
    return lattice(names, zip(names, names[1:]))


def _bool_name(bits: int, n: int) -> str:
    if bits == 0:
        return "0"
    if bits == (1 << n) - 1:
        return "1"
    return "".join(LETTERS[i] for i in range(n) if bits >> i & 1)


def boolean(n: int) -> Ortholattice:
    """Powerset of ``n`` atoms (n <= 3) with set complement."""
    full = (1 << n) - 1
    names = [_bool_name(b, n) for b in range(1 << n)]
    pairs = [
        (names[a], names[b]) for a, b in itertools.product(range(1 << n), repeat=2) if a & ~b == 0
    ]
    lat = lattice(names, pairs)
    return validate_ortholattice(lat, {names[b]: names[full ^ b] for b in range(1 << n)})


def mo(n: int) -> Ortholattice:
    """``0 < x, x' < 1`` for ``n`` complementary pairs; MO1 is the Boolean 4-lattice."""
    atoms = []
    for i in range(n):
        atoms += [LETTERS[i], LETTERS[i] + "'"]
    names = ["0", *atoms, "1"]
    pairs = [("0", x) for x in atoms] + [(x, "1") for x in atoms]
    perp = {"0": "1", "1": "0"}
    for i in range(n):
        perp[LETTERS[i]] = LETTERS[i] + "'"
        perp[LETTERS[i] + "'"] = LETTERS[i]
    return validate_ortholattice(lattice(names, pairs), perp)


def o6() -> Ortholattice:
    """Benzene ring: ``x < y`` and ``y' < x'``; an ortholattice that is not orthomodular."""
    names = ["0", "x", "y", "y'", "x'", "1"]
    pairs = [("0", "x"), ("x", "y"), ("y", "1"), ("0", "y'"), ("y'", "x'"), ("x'", "1")]
    perp = {"0": "1", "1": "0", "x": "x'", "x'": "x", "y": "y'", "y'": "y"}
    return validate_ortholattice(lattice(names, pairs), perp)


def m3() -> CompleteLattice:
    return lattice(["0", "a", "b", "c", "1"], [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])


def n5() -> CompleteLattice:
    return lattice(["0", "a", "b", "c", "1"], [("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")])


def builtin_ortholattices() -> dict[str, Ortholattice]:
    out = {f"B{n}": boolean(n) for n in (1, 2, 3)}
    out.update({f"MO{n}": mo(n) for n in (1, 2, 3)})
    out["O6"] = o6()
    return out


def builtin_lattices() -> dict[str, CompleteLattice]:
    out = {f"{n}-chain": chain(n) for n in (1, 2, 3, 4, 5)}
    out.update({name: ol.lattice for name, ol in builtin_ortholattices().items()})
    out["M3"] = m3()
    out["N5"] = n5()
    return out
