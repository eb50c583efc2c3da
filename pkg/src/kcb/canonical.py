"""Recursive canonical-basis computation: bar-invariant monomials along
crystal paths and their reduction to the canonical basis, plus shape,
sveltness, the diamond involution, and serialization.

The reduction expresses the path monomial A(mu) over the canonical
elements at the same weight and strips off everything but G(mu).  Writing
A = sum_nu m_nu G(nu) with every m_nu bar-symmetric, the globally most
negative exponent appearing on any vertex coordinate is uncontaminated by
cross terms (canonical off-diagonal entries lie in vZ[v], so products
shift degrees up), which makes the elimination below exact degree by
degree.  At level >= 2 a monomial can involve canonical elements whose
labels strictly dominate mu, so the elimination deliberately ranges over
every other vertex of the weight, not only the dominated ones; the final
element is still checked to be dominance-triangular.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass

from .crystal import (
    CrystalGraph,
    NotAVertexError,
    WeightInfo,
    f_tilde,
    generate_crystal,
    residue_collected_path,
    weight_info,
)
from .fock import FockContext, FockVector, apply_f_divided, content
from .laurent import LaurentPoly
from .partitions import (
    Multipartition,
    dominates,
    mp_from_json,
    mp_to_json,
    prefix_profile,
    total_size,
)


class ReductionError(RuntimeError):
    """The triangular reduction failed an invariant; never ignored."""


@dataclass(frozen=True)
class CanonicalElement:
    label: Multipartition
    vector: FockVector
    weight: WeightInfo
    shape: tuple[int, ...]


def compute_shape(vector: FockVector, defect: int) -> tuple[int, ...]:
    """Entry l counts basis terms carrying v^l, with coefficient multiplicity."""
    shape = [0] * (defect + 1)
    for mp, c in vector.terms():
        for e, coef in c.items():
            if e < 0 or e > defect:
                raise ReductionError(
                    f"coefficient exponent {e} outside 0..{defect} at {mp}"
                )
            shape[e] += coef
    return tuple(shape)


def shape_of(g: CanonicalElement) -> tuple[int, ...]:
    return compute_shape(g.vector, g.weight.defect)


def is_svelte(g: CanonicalElement) -> bool:
    """Shape is all ones of length defect + 1."""
    return g.shape == (1,) * (g.weight.defect + 1)


def decomposition_entry(g: CanonicalElement, lam: Multipartition) -> LaurentPoly:
    """Coefficient of lam in g (the zero polynomial if absent)."""
    return g.vector.coefficient(lam)


def dominance_sort_key(mp: Multipartition):
    """Total order refining dominance: profile first, then the tuple itself."""
    return (prefix_profile(mp, max(1, total_size(mp))), mp)


def monomial_element(ctx: FockContext, mp: Multipartition) -> FockVector:
    """Divided powers along the residue-collected path applied to the
    highest weight vector; bar-invariant by construction."""
    vec = FockVector.basis(ctx.highest_weight_vertex())
    for i, k in residue_collected_path(ctx, mp):
        vec = apply_f_divided(ctx, vec, i, k)
    return vec


def diamond(ctx: FockContext, mp: Multipartition) -> tuple[FockContext, Multipartition]:
    """Replay the residue-negated path through the dual crystal."""
    path = residue_collected_path(ctx, mp)
    dctx = ctx.dual()
    cur = dctx.highest_weight_vertex()
    for i, k in path:
        j = (-i) % ctx.e
        for _ in range(k):
            nxt = f_tilde(dctx, cur, j)
            if nxt is None:
                raise NotAVertexError(f"dual path broke at residue {j} from {cur}")
            cur = nxt
    return dctx, cur


class CanonicalBasis:
    """Canonical-basis computer for one context, with memoization.

    Elements are cached per multipartition; monomials are cached per path
    prefix so same-weight labels share work.  Pass cache_dir (or set
    KCB_CACHE_DIR) to persist elements as content-addressed JSON files.
    """

    def __init__(
        self, ctx: FockContext, cache_dir: str | None = None, tie_reverse: bool = False
    ):
        self.ctx = ctx
        self._elements: dict[Multipartition, CanonicalElement] = {}
        self._monomials: dict[tuple, FockVector] = {}
        self._graph: CrystalGraph | None = None
        self._in_progress: set[Multipartition] = set()
        self._cache_dir = cache_dir
        # processing order within an elimination pass is mathematically
        # irrelevant; flipping it must reproduce identical elements
        self._tie_reverse = tie_reverse

    # crystal bookkeeping

    def crystal(self, degree: int) -> CrystalGraph:
        if self._graph is None or self._graph.max_degree < degree:
            self._graph = generate_crystal(self.ctx, degree)
        return self._graph

    def vertices_at(self, cont) -> list[Multipartition]:
        cont = tuple(cont)
        g = self.crystal(sum(cont))
        return g.by_content().get(cont, [])

    # monomials

    def monomial(self, mp: Multipartition) -> FockVector:
        return self._monomial_for_path(residue_collected_path(self.ctx, mp))

    def _monomial_for_path(self, path: tuple) -> FockVector:
        if not path:
            return FockVector.basis(self.ctx.highest_weight_vertex())
        cached = self._monomials.get(path)
        if cached is None:
            prev = self._monomial_for_path(path[:-1])
            i, k = path[-1]
            cached = apply_f_divided(self.ctx, prev, i, k)
            self._monomials[path] = cached
        return cached

    # canonical elements

    def element(self, mp: Multipartition) -> CanonicalElement:
        got = self._elements.get(mp)
        if got is not None:
            return got
        disk = self._disk_load(mp)
        if disk is not None:
            self._elements[mp] = disk
            return disk
        if mp in self._in_progress:
            raise ReductionError(f"cyclic canonical-basis dependency at {mp}")
        self._in_progress.add(mp)
        try:
            elem = self._compute(mp)
        finally:
            self._in_progress.discard(mp)
        self._elements[mp] = elem
        self._disk_store(elem)
        return elem

    def at_weight(self, cont) -> dict[Multipartition, CanonicalElement]:
        """G(mu) for every e-regular vertex mu at this weight."""
        verts = self.vertices_at(cont)
        if not verts and tuple(cont) != (0,) * self.ctx.e:
            raise ValueError(f"content {tuple(cont)} does not occur in the crystal")
        ordered = sorted(verts, key=dominance_sort_key, reverse=True)
        return {mp: self.element(mp) for mp in ordered}

    def _compute(self, mp: Multipartition) -> CanonicalElement:
        cont = content(self.ctx, mp)
        info = weight_info(self.ctx, cont)
        verts = self.vertices_at(cont)
        if mp not in verts:
            raise NotAVertexError(f"{mp} is not a crystal vertex")
        others = sorted((v for v in verts if v != mp), key=dominance_sort_key, reverse=True)
        if self._tie_reverse:
            others.reverse()
        V = self.monomial(mp)

        # degree-extremal bar-symmetric elimination over the other vertices
        while True:
            worst = 1
            for nu in others:
                c = V.coefficient(nu)
                if c and c.min_exponent() < worst:
                    worst = c.min_exponent()
            if worst > 0:
                break
            for nu in others:
                coef = V.coefficient(nu).coeff(worst)
                if not coef:
                    continue
                if worst < 0:
                    mult = LaurentPoly({worst: coef, -worst: coef})
                else:
                    mult = LaurentPoly({0: coef})
                V = V.add_scaled(self.element(nu).vector, -mult)

        lead = V.coefficient(mp)
        if lead != LaurentPoly.one():
            # the monomial carried a bar-symmetric multiple of G(mp)
            if lead.is_zero() or lead != lead.bar():
                raise ReductionError(f"leading coefficient {lead} at {mp} is not bar-fixed")
            V = V.exact_div(lead)

        self._check_element(mp, V)
        return CanonicalElement(mp, V, info, compute_shape(V, info.defect))

    def _check_element(self, mp: Multipartition, V: FockVector) -> None:
        if V.coefficient(mp) != LaurentPoly.one():
            raise ReductionError(f"leading coefficient of G({mp}) is not 1")
        for lam, c in V.terms():
            if lam == mp:
                continue
            if not c.in_v_zv():
                raise ReductionError(
                    f"reduction failure: coefficient {c} at {lam} not in vZ[v] "
                    f"(offender outside the vertex set)"
                )
            if not dominates(mp, lam):
                raise ReductionError(
                    f"reduction failure: {lam} in G({mp}) is not dominated by the label"
                )

    # optional persistent cache

    def _cache_path(self, mp: Multipartition) -> str | None:
        root = self._cache_dir or os.environ.get("KCB_CACHE_DIR")
        if not root:
            return None
        key = json.dumps(
            {"e": self.ctx.e, "charges": list(self.ctx.charges), "mp": mp_to_json(mp)},
            sort_keys=True,
        )
        digest = hashlib.sha256(key.encode()).hexdigest()[:32]
        return os.path.join(root, f"{digest}.json")

    def _disk_load(self, mp: Multipartition) -> CanonicalElement | None:
        path = self._cache_path(mp)
        if not path or not os.path.exists(path):
            return None
        with open(path, "r", encoding="utf-8") as fh:
            return element_from_json(json.load(fh))

    def _disk_store(self, elem: CanonicalElement) -> None:
        path = self._cache_path(elem.label)
        if not path:
            return
        os.makedirs(os.path.dirname(path), exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(element_to_json(elem), fh)
        os.replace(tmp, path)


_BASES: dict[tuple, CanonicalBasis] = {}


def get_basis(ctx: FockContext, cache_dir: str | None = None) -> CanonicalBasis:
    """Shared per-context basis computer (process-wide memoization)."""
    key = (ctx.e, ctx.charges, cache_dir)
    basis = _BASES.get(key)
    if basis is None:
        basis = CanonicalBasis(ctx, cache_dir)
        _BASES[key] = basis
    return basis


def canonical_basis_at_weight(ctx: FockContext, cont) -> dict[Multipartition, CanonicalElement]:
    return get_basis(ctx).at_weight(cont)


def canonical_element(ctx: FockContext, mp: Multipartition) -> CanonicalElement:
    return get_basis(ctx).element(mp)


# serialization


def sorted_terms(vector: FockVector) -> list[tuple[Multipartition, LaurentPoly]]:
    """Terms by decreasing dominance (profile order), then reverse-lex."""
    return sorted(vector.terms(), key=lambda t: dominance_sort_key(t[0]), reverse=True)


def element_to_json(elem: CanonicalElement) -> dict:
    return {
        "label": mp_to_json(elem.label),
        "content": list(elem.weight.content),
        "hub": list(elem.weight.hub),
        "defect": elem.weight.defect,
        "shape": list(elem.shape),
        "terms": [
            {"multipartition": mp_to_json(mp), "coefficient": c.to_json()}
            for mp, c in sorted_terms(elem.vector)
        ],
    }


def element_from_json(data) -> CanonicalElement:
    vector = FockVector(
        [
            (mp_from_json(t["multipartition"]), LaurentPoly.from_json(t["coefficient"]))
            for t in data["terms"]
        ]
    )
    info = WeightInfo(tuple(data["content"]), tuple(data["hub"]), data["defect"])
    return CanonicalElement(
        mp_from_json(data["label"]), vector, info, tuple(data["shape"])
    )
