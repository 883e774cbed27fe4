"""
GraphViz export.

PURPOSE:
- export_dot: one node per state (clustered by partition block when a partition is
  given); non-Dirac probabilistic branches go through a point-shaped hyper-edge node;
  tau, chi and external labels are styled differently; timed transitions are dashed.
"""

from __future__ import annotations

from typing import List, Optional

from src.model_interface.automaton import MarkovAutomaton
from src.model_interface.partition import Partition
from src.model_interface.types import Action, Chi, Tau
from src.utils.rationals import format_rational

_STYLE = {
    Tau: 'style=dotted, color="gray40"',
    Chi: 'style=bold, color="blue"',
}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _edge_style(action: Action) -> str:
    return _STYLE.get(type(action), 'color="black"')


def export_dot(m: MarkovAutomaton, part: Optional[Partition] = None, name: str = "mabisim") -> str:
    nodes: List[str] = []
    edges: List[str] = []

    def node(s: int) -> str:
        shape = "doublecircle" if s == m.initial else "circle"
        return f"{_quote(m.name(s))} [shape={shape}];"

    if part is None:
        nodes.extend(node(s) for s in range(m.size))
    else:
        for i, block in enumerate(part.blocks):
            nodes.append(f"subgraph cluster_{i} {{")
            nodes.append(f'\tlabel="C{i}"; style=rounded;')
            nodes.extend("\t" + node(s) for s in block)
            nodes.append("}")

    for k, t in enumerate(m.pt):
        src = _quote(m.name(t.source))
        style = _edge_style(t.action)
        label = _quote(str(t.action))
        if t.target.is_dirac():
            (tgt,) = t.target.support
            edges.append(f"{src} -> {_quote(m.name(tgt))} [label={label}, {style}];")
            continue
        hub = _quote(f"__branch{k}")
        nodes.append(f"{hub} [shape=point];")
        edges.append(f"{src} -> {hub} [label={label}, arrowhead=none, {style}];")
        for tgt, q in t.target.items():
            edges.append(f"{hub} -> {_quote(m.name(tgt))} [label={_quote(format_rational(q))}, {style}];")

    for x in m.mt:
        edges.append(
            f"{_quote(m.name(x.source))} -> {_quote(m.name(x.target))} "
            f"[label={_quote(format_rational(x.rate))}, style=dashed];"
        )

    lines = [f"digraph {_quote(name)} {{", "\trankdir=LR;"]
    lines.extend("\t" + n for n in nodes)
    lines.extend("\t" + e for e in edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["export_dot"]
