"""Graph documents (JSON), DIMACS edge lists, and DOT output for trees."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .cutset import CutsetTree
from .errors import InputError
from .graph import WeightedGraph, to_weight
from .modular import ExtendedModularTree, ModuleNode

FORMAT = "wiscount-graph"
VERSION = 1


def frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def graph_to_dict(G: WeightedGraph, provenance: Optional[dict] = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"format": FORMAT, "version": VERSION}
    if provenance:
        doc["provenance"] = provenance
    doc["vertices"] = [{"id": v, "weight": frac_str(G.weight(v))} for v in G]
    doc["edges"] = [[u, v] for u, v in G.edges()]
    return doc


def emit_document(G: WeightedGraph, provenance: Optional[dict] = None) -> str:
    return json.dumps(graph_to_dict(G, provenance), indent=1) + "\n"


def graph_from_dict(doc: Any) -> WeightedGraph:
    if not isinstance(doc, dict):
        raise InputError("graph document must be a JSON object")
    if doc.get("version", VERSION) != VERSION:
        raise InputError(f"unsupported document version {doc.get('version')!r}")
    verts = doc.get("vertices")
    edges = doc.get("edges", [])
    if not isinstance(verts, list) or not isinstance(edges, list):
        raise InputError("document needs 'vertices' and 'edges' lists")
    weights: dict[int, Fraction] = {}
    for item in verts:
        if not isinstance(item, dict) or "id" not in item:
            raise InputError(f"bad vertex entry {item!r}")
        vid = item["id"]
        if not isinstance(vid, int) or isinstance(vid, bool):
            raise InputError(f"vertex id {vid!r} is not an integer")
        if vid in weights:
            raise InputError(f"duplicate vertex id {vid}")
        weights[vid] = to_weight(item.get("weight", "1/1"))
    seen = set()
    pairs = []
    for e in edges:
        if not isinstance(e, list) or len(e) != 2:
            raise InputError(f"bad edge entry {e!r}")
        u, v = e
        if u not in weights or v not in weights:
            raise InputError(f"edge {e} references an unknown vertex")
        if u == v:
            raise InputError(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"duplicate edge {e}")
        seen.add(key)
        pairs.append(key)
    return WeightedGraph(weights, pairs)


def parse_document(text: str) -> WeightedGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return graph_from_dict(doc)


def parse_dimacs(text: str) -> WeightedGraph:
    """DIMACS edge format ('p edge n m' and 'e u v', 1-based); unit weights."""
    n = None
    edges = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) < 3:
                raise InputError(f"line {lineno}: malformed problem line")
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise InputError(f"line {lineno}: edge before problem line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise InputError(f"line {lineno}: bad edge {parts[1]} {parts[2]}")
            edges.add((min(u, v), max(u, v)))
        else:
            raise InputError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise InputError("no problem line found")
    return WeightedGraph.unit(n, sorted(edges))


def load_graph(path: str) -> WeightedGraph:
    """Read a graph document, or a DIMACS file when the text is not JSON."""
    try:
        text = Path(path).read_text() if path != "-" else _stdin()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if text.lstrip().startswith("{"):
        return parse_document(text)
    try:
        return parse_dimacs(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _stdin() -> str:
    import sys

    return sys.stdin.read()


# ------------------------------------------------------------------- trees

def _label(vs) -> str:
    return "{" + ",".join(str(v) for v in sorted(vs)) + "}"


def cutset_tree_dict(tree: CutsetTree) -> dict[str, Any]:
    return {
        "h": tree.h,
        "atoms": [sorted(a) for a in tree.atoms],
        "cliques": [sorted(k) for k in tree.cliques],
    }


def cutset_tree_dot(tree: CutsetTree) -> str:
    """Cliques as circles on a path, atoms as boxes hanging off them."""
    lines = ["graph cutset_tree {"]
    lines.append(f'  a0 [shape=box, label="A0 {_label(tree.atoms[0])}"];')
    prev = "a0"
    for i in range(tree.h, 0, -1):
        k = f"k{i}"
        lines.append(f'  {k} [shape=circle, label="K{i} {_label(tree.cliques[i - 1])}"];')
        lines.append(f'  a{i} [shape=box, label="A{i} {_label(tree.atoms[i])}"];')
        lines.append(f"  {prev} -- {k};")
        lines.append(f"  {k} -- a{i};")
        prev = k
    lines.append("}")
    return "\n".join(lines) + "\n"


def modular_tree_dict(root, ext: ExtendedModularTree) -> dict[str, Any]:
    def node(x):
        if isinstance(x, ModuleNode):
            return {"vertices": sorted(x.vertices), "kind": x.kind, "children": [node(c) for c in x.children]}
        return {"vertex": x}

    return {
        "standard": None if root is None else node(root),
        "extended": [
            {"leaf": i + 1, "vertices": sorted(leaf.vertices), "edges": [list(e) for e in leaf.edges()],
             "contracted_to": ext.contracted[i]}
            for i, leaf in enumerate(ext.leaves)
        ],
    }


def modular_tree_dot(root, ext: ExtendedModularTree) -> str:
    """The standard tree (modules as boxes, vertices as points) and the leaf order."""
    lines = ["digraph modular_tree {", "  subgraph cluster_standard {", '    label="standard";']
    counter = [0]

    def walk(x) -> str:
        counter[0] += 1
        name = f"n{counter[0]}"
        if isinstance(x, ModuleNode):
            lines.append(f'    {name} [shape=box, label="{x.kind} {_label(x.vertices)}"];')
            for c in x.children:
                lines.append(f"    {name} -> {walk(c)};")
        else:
            lines.append(f'    {name} [shape=circle, label="{x}"];')
        return name

    if root is not None:
        walk(root)
    lines.append("  }")
    lines.append("  subgraph cluster_extended {")
    lines.append('    label="extended (postorder)";')
    for i, leaf in enumerate(ext.leaves):
        lines.append(f'    m{i + 1} [shape=box, label="M{i + 1} {_label(leaf.vertices)} -> {ext.contracted[i]}"];')
        if i:
            lines.append(f"    m{i} -> m{i + 1} [style=dotted];")
    lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"
