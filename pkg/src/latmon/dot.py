"""Graphviz DOT text for a carrier's Hasse diagram or its totally-below relation."""

from __future__ import annotations

from .order import FinitePoset
from .tower import relation_pairs, totally_below

RELATIONS = ("order", "totally-below")


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(x: FinitePoset, relation: str = "order", name: str = "L") -> str:
    """Nodes in element order; edges point upward (rankdir=BT)."""
    if relation == "order":
        edges = x.covers()
    elif relation == "totally-below":
        edges = relation_pairs(totally_below(x))
    else:
        raise ValueError(f"unknown relation {relation!r} (expected order or totally-below)")
    lines = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    lines += [f"  {_q(s)};" for s in x.labels]
    lines += [f"  {_q(x.labels[a])} -> {_q(x.labels[b])};" for a, b in edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
