"""Graphviz DOT output: Hasse diagrams and commuting squares."""

from __future__ import annotations

from ._bits import iter_bits
from .order import CompleteLattice, FinitePoset


def hasse_edges(P: FinitePoset | CompleteLattice) -> list[tuple[str, str]]:
    """Covering pairs ``(a, b)`` with ``a < b`` and nothing strictly between."""
    if isinstance(P, CompleteLattice):
        P = P.poset
    out = []
    n = len(P)
    for i in range(n):
        strictly_above = P.up[i] & ~(1 << i)
        for j in iter_bits(strictly_above):
            between = strictly_above & P.down[j] & ~(1 << j)
            if not between:
                out.append((P.elements[i], P.elements[j]))
    return out


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(P: FinitePoset | CompleteLattice, name: str = "hasse") -> str:
    if isinstance(P, CompleteLattice):
        P = P.poset
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    lines += [f"  {_q(e)};" for e in P.elements]
    lines += [f"  {_q(a)} -> {_q(b)};" for a, b in hasse_edges(P)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def square_to_dot(f_label: str = "f", g_label: str = "f_pr", name: str = "square") -> str:
    """The square P(S1) -> P(S2), im1 -> im2 with the two resolutions as verticals."""
    nodes = ["P(Σ1)", "P(Σ2)", "im1", "im2"]
    edges = [
        ("P(Σ1)", "P(Σ2)", f_label),
        ("P(Σ1)", "im1", "C_pr1"),
        ("P(Σ2)", "im2", "C_pr2"),
        ("im1", "im2", g_label),
    ]
    lines = [f"digraph {_q(name)} {{"]
    lines += [f"  {_q(v)};" for v in nodes]
    lines += [f"  {_q(a)} -> {_q(b)} [label={_q(lab)}];" for a, b, lab in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
