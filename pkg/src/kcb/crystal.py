"""Kashiwara crystal via the signature rule, graph generation, weights,
hubs, defects, the block-reduced graph, and path extraction.

Signature convention: the +/- word is written bottom to top (component 1
is topmost), "-+" pairs are cancelled, the good node is the leftmost
surviving "-", the cogood node the rightmost surviving "+".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .fock import FockContext, NodeRef, add_node, content, i_node_slots, remove_node
from .partitions import Multipartition, is_e_regular, mp_from_json, mp_to_json


class NotAVertexError(ValueError):
    """The multipartition is not reachable in the crystal."""


@lru_cache(maxsize=None)
def cartan_matrix(e: int) -> tuple[tuple[int, ...], ...]:
    """Affine Cartan matrix of the rank-e cyclic diagram (e=2 gives [[2,-2],[-2,2]])."""
    rows = []
    for i in range(e):
        row = [0] * e
        row[i] = 2
        row[(i + 1) % e] -= 1
        row[(i - 1) % e] -= 1
        rows.append(tuple(row))
    return tuple(rows)


@dataclass(frozen=True)
class WeightInfo:
    content: tuple[int, ...]
    hub: tuple[int, ...]
    defect: int


def weight_info(ctx: FockContext, cont) -> WeightInfo:
    """Hub h = a - C c and defect a.c - (c.Cc)/2 for the weight Lambda - sum c_i alpha_i."""
    cont = tuple(int(x) for x in cont)
    if len(cont) != ctx.e or any(x < 0 for x in cont):
        raise ValueError(f"content must be a non-negative length-{ctx.e} vector: {cont}")
    C = cartan_matrix(ctx.e)
    a = ctx.weight_multiplicities
    hub = tuple(a[i] - sum(C[i][j] * cont[j] for j in range(ctx.e)) for i in range(ctx.e))
    twice = 2 * sum(a[i] * cont[i] for i in range(ctx.e)) - sum(
        cont[i] * C[i][j] * cont[j] for i in range(ctx.e) for j in range(ctx.e)
    )
    assert twice % 2 == 0
    return WeightInfo(cont, hub, twice // 2)


def _reduced_signature(ctx: FockContext, mp: Multipartition, i: int) -> list[tuple[NodeRef, bool]]:
    """Surviving (node, is_addable) entries, bottom-to-top, after '-+' cancellation."""
    stack: list[tuple[NodeRef, bool]] = []
    for node, isadd in reversed(i_node_slots(ctx, mp, i)):
        if isadd and stack and not stack[-1][1]:
            stack.pop()
        else:
            stack.append((node, isadd))
    return stack


def f_tilde(ctx: FockContext, mp: Multipartition, i: int) -> Multipartition | None:
    """Add the i-cogood node (rightmost surviving +); None if there is none."""
    sig = _reduced_signature(ctx, mp, i)
    for node, isadd in reversed(sig):
        if isadd:
            return add_node(mp, node)
    return None


def e_tilde(ctx: FockContext, mp: Multipartition, i: int) -> Multipartition | None:
    """Remove the i-good node (leftmost surviving -); None if there is none."""
    for node, isadd in _reduced_signature(ctx, mp, i):
        if not isadd:
            return remove_node(mp, node)
    return None


@dataclass
class CrystalGraph:
    ctx: FockContext
    max_degree: int
    degrees: dict[Multipartition, int]
    edges: list[tuple[Multipartition, int, Multipartition]]
    _by_content: dict[tuple[int, ...], list[Multipartition]] | None = field(
        default=None, repr=False
    )

    def vertices(self) -> list[Multipartition]:
        return sorted(self.degrees)

    def by_content(self) -> dict[tuple[int, ...], list[Multipartition]]:
        if self._by_content is None:
            buckets: dict[tuple[int, ...], list[Multipartition]] = {}
            for mp in self.degrees:
                buckets.setdefault(content(self.ctx, mp), []).append(mp)
            for v in buckets.values():
                v.sort()
            self._by_content = buckets
        return self._by_content

    def weight(self, cont) -> WeightInfo:
        return weight_info(self.ctx, cont)


def generate_crystal(ctx: FockContext, max_degree: int) -> CrystalGraph:
    """Breadth-first closure of the highest weight vertex under every f~_i."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    start = ctx.highest_weight_vertex()
    degrees = {start: 0}
    edges: list[tuple[Multipartition, int, Multipartition]] = []
    frontier = [start]
    for d in range(max_degree):
        nxt = []
        for mp in frontier:
            for i in range(ctx.e):
                img = f_tilde(ctx, mp, i)
                if img is None:
                    continue
                edges.append((mp, i, img))
                if img not in degrees:
                    degrees[img] = d + 1
                    nxt.append(img)
        nxt.sort()
        frontier = nxt
    return CrystalGraph(ctx, max_degree, degrees, edges)


@dataclass
class BlockReducedGraph:
    """Quotient of the crystal by content; vertices are weights."""

    ctx: FockContext
    max_degree: int
    weights: dict[tuple[int, ...], WeightInfo]
    dims: dict[tuple[int, ...], int]
    edges: list[tuple[tuple[int, ...], int, tuple[int, ...]]]


def block_reduced(g: CrystalGraph) -> BlockReducedGraph:
    weights: dict[tuple[int, ...], WeightInfo] = {}
    dims: dict[tuple[int, ...], int] = {}
    for cont, verts in g.by_content().items():
        weights[cont] = weight_info(g.ctx, cont)
        dims[cont] = len(verts)
    eset = set()
    for src, i, dst in g.edges:
        eset.add((content(g.ctx, src), i, content(g.ctx, dst)))
    return BlockReducedGraph(g.ctx, g.max_degree, weights, dims, sorted(eset))


def is_external(bg: BlockReducedGraph, cont) -> bool:
    """True iff some raising direction leaves the weight set.

    Raised contents sit at lower degree, so truncation never hides them.
    """
    cont = tuple(int(x) for x in cont)
    if cont not in bg.weights:
        raise ValueError(f"{cont} is not a weight of the graph")
    for i in range(bg.ctx.e):
        if cont[i] == 0:
            return True
        raised = cont[:i] + (cont[i] - 1,) + cont[i + 1 :]
        if raised not in bg.weights:
            return True
    return False


def residue_collected_path(
    ctx: FockContext, mp: Multipartition
) -> tuple[tuple[int, int], ...]:
    """Segments (residue, multiplicity) of maximal strings leading from the
    highest weight vertex to mp.

    Derived by peeling maximal e~_i-strings, taking the smallest residue
    with a good node first, then reversing.  Raises NotAVertexError when
    peeling strands before reaching the highest weight vertex.
    """
    cur = mp
    segs: list[tuple[int, int]] = []
    top = ctx.highest_weight_vertex()
    while cur != top:
        if not is_e_regular(cur, ctx.e):
            raise NotAVertexError(f"{cur} is not {ctx.e}-regular")
        for i in range(ctx.e):
            nxt = e_tilde(ctx, cur, i)
            if nxt is not None:
                count = 0
                while nxt is not None:
                    cur = nxt
                    count += 1
                    nxt = e_tilde(ctx, cur, i)
                segs.append((i, count))
                break
        else:
            raise NotAVertexError(f"{mp} does not reach the highest weight vertex")
    return tuple(reversed(segs))


# serialization


def crystal_to_json(g: CrystalGraph) -> dict:
    verts = sorted(g.degrees.items(), key=lambda kv: (kv[1], kv[0]))
    return {
        "e": g.ctx.e,
        "charges": list(g.ctx.charges),
        "max_degree": g.max_degree,
        "vertices": [
            {
                "multipartition": mp_to_json(mp),
                "degree": d,
                "content": list(content(g.ctx, mp)),
            }
            for mp, d in verts
        ],
        "edges": [
            {"source": mp_to_json(s), "residue": i, "target": mp_to_json(t)}
            for s, i, t in g.edges
        ],
    }


def crystal_from_json(data) -> CrystalGraph:
    ctx = FockContext(data["e"], tuple(data["charges"]))
    degrees = {mp_from_json(v["multipartition"]): v["degree"] for v in data["vertices"]}
    edges = [
        (mp_from_json(e["source"]), e["residue"], mp_from_json(e["target"]))
        for e in data["edges"]
    ]
    return CrystalGraph(ctx, data["max_degree"], degrees, edges)


def block_to_json(bg: BlockReducedGraph) -> dict:
    order = sorted(bg.weights, key=lambda c: (sum(c), c))
    return {
        "e": bg.ctx.e,
        "charges": list(bg.ctx.charges),
        "max_degree": bg.max_degree,
        "vertices": [
            {
                "content": list(c),
                "hub": list(bg.weights[c].hub),
                "defect": bg.weights[c].defect,
                "dimension": bg.dims[c],
            }
            for c in order
        ],
        "edges": [
            {"source": list(s), "residue": i, "target": list(t)} for s, i, t in bg.edges
        ],
    }


def block_from_json(data) -> BlockReducedGraph:
    ctx = FockContext(data["e"], tuple(data["charges"]))
    weights = {}
    dims = {}
    for v in data["vertices"]:
        c = tuple(v["content"])
        weights[c] = WeightInfo(c, tuple(v["hub"]), v["defect"])
        dims[c] = v["dimension"]
    edges = [(tuple(e["source"]), e["residue"], tuple(e["target"])) for e in data["edges"]]
    return BlockReducedGraph(ctx, data["max_degree"], weights, dims, edges)


def _hub_label(info: WeightInfo) -> str:
    return "[" + ",".join(str(h) for h in info.hub) + "]^" + str(info.defect)


def block_to_dot(bg: BlockReducedGraph) -> str:
    """DOT rendering; each weight is labelled hub^defect, edges by residue."""
    order = sorted(bg.weights, key=lambda c: (sum(c), c))
    ids = {c: "w_" + "_".join(str(x) for x in c) for c in order}
    lines = ["digraph block_reduced_crystal {", '  rankdir="TB";']
    for c in order:
        lines.append(f'  {ids[c]} [label="{_hub_label(bg.weights[c])}", shape=box];')
    for s, i, t in bg.edges:
        lines.append(f'  {ids[s]} -> {ids[t]} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
