"""Fock space over Z[v, v^-1]: residues, node combinatorics, and the
v-weighted raising/lowering operators with their divided powers.

Ordering convention used everywhere ("above"/"below"): component 1 is
topmost, and within a component a smaller row index is higher.  A single
row carries at most one node of a given residue (the removable box at its
end and the addable slot just past it differ by one residue), so listing
nodes by (component, row) is unambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, NamedTuple

from .laurent import LaurentPoly, exact_div, qfact
from .partitions import Multipartition


class NodeRef(NamedTuple):
    comp: int  # 1-based component index
    row: int   # 1-based row
    col: int   # 1-based column


@dataclass(frozen=True)
class FockContext:
    """Rank e >= 2 together with the charge sequence (k_1, ..., k_r).

    Charges fix every node residue and the highest weight
    Lambda = Lambda_{k_1} + ... + Lambda_{k_r}.  Components sharing a
    charge must occupy a contiguous block.
    """

    e: int
    charges: tuple[int, ...]

    def __post_init__(self):
        if self.e < 2:
            raise ValueError(f"rank must be >= 2, got {self.e}")
        object.__setattr__(self, "charges", tuple(int(c) for c in self.charges))
        if len(self.charges) < 1:
            raise ValueError("need at least one charge")
        if any(not 0 <= c < self.e for c in self.charges):
            raise ValueError(f"charges must lie in 0..{self.e - 1}: {self.charges}")
        seen = set()
        prev = None
        for c in self.charges:
            if c != prev:
                if c in seen:
                    raise ValueError(f"equal charges must be contiguous: {self.charges}")
                seen.add(c)
                prev = c

    @property
    def level(self) -> int:
        return len(self.charges)

    @property
    def weight_multiplicities(self) -> tuple[int, ...]:
        """a_i = multiplicity of Lambda_i in the highest weight."""
        out = [0] * self.e
        for c in self.charges:
            out[c] += 1
        return tuple(out)

    def highest_weight_vertex(self) -> Multipartition:
        return ((),) * self.level

    def dual(self) -> "FockContext":
        """Charges negated mod e and reversed."""
        return FockContext(self.e, tuple((-c) % self.e for c in reversed(self.charges)))


def symmetric_context(a: int) -> FockContext:
    """e = 2 with highest weight a*Lambda_0 + a*Lambda_1 (charges 0^a 1^a)."""
    if a < 1:
        raise ValueError(f"need a >= 1, got {a}")
    return FockContext(2, (0,) * a + (1,) * a)


def residue(ctx: FockContext, node: NodeRef) -> int:
    """(charge of the component + column - row) mod e."""
    return (ctx.charges[node.comp - 1] + node.col - node.row) % ctx.e


def i_node_slots(ctx: FockContext, mp: Multipartition, i: int) -> list[tuple[NodeRef, bool]]:
    """Addable (True) and removable (False) i-nodes, top to bottom."""
    out = []
    e = ctx.e
    for u, comp in enumerate(mp, start=1):
        ch = ctx.charges[u - 1]
        t = len(comp)
        for j in range(1, t + 2):
            cur = comp[j - 1] if j <= t else 0
            # addable slot at (j, cur+1) when the row above is strictly longer
            if j == 1 or comp[j - 2] > cur:
                if (ch + cur + 1 - j) % e == i:
                    out.append((NodeRef(u, j, cur + 1), True))
            # removable box at (j, cur) when the row below is strictly shorter
            if j <= t and (j == t or comp[j] < cur):
                if (ch + cur - j) % e == i:
                    out.append((NodeRef(u, j, cur), False))
    return out


def addable_nodes(ctx: FockContext, mp: Multipartition, i: int) -> list[NodeRef]:
    return [n for n, add in i_node_slots(ctx, mp, i) if add]


def removable_nodes(ctx: FockContext, mp: Multipartition, i: int) -> list[NodeRef]:
    return [n for n, add in i_node_slots(ctx, mp, i) if not add]


def add_node(mp: Multipartition, node: NodeRef) -> Multipartition:
    comp = mp[node.comp - 1]
    if node.row == len(comp) + 1:
        new = comp + (1,)
    else:
        new = comp[: node.row - 1] + (comp[node.row - 1] + 1,) + comp[node.row :]
    return mp[: node.comp - 1] + (new,) + mp[node.comp :]


def remove_node(mp: Multipartition, node: NodeRef) -> Multipartition:
    comp = mp[node.comp - 1]
    r = comp[node.row - 1] - 1
    if r == 0:
        new = comp[: node.row - 1] + comp[node.row :]
    else:
        new = comp[: node.row - 1] + (r,) + comp[node.row :]
    return mp[: node.comp - 1] + (new,) + mp[node.comp :]


def content(ctx: FockContext, mp: Multipartition) -> tuple[int, ...]:
    """Number of nodes of each residue, as a length-e vector."""
    out = [0] * ctx.e
    for u, comp in enumerate(mp, start=1):
        ch = ctx.charges[u - 1]
        for j, row in enumerate(comp, start=1):
            for c in range(1, row + 1):
                out[(ch + c - j) % ctx.e] += 1
    return tuple(out)


class FockVector:
    """Finite formal sum multipartition -> Laurent polynomial."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        t: dict[Multipartition, LaurentPoly] = {}
        if terms:
            for mp, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    prev = t.get(mp)
                    c = c if prev is None else prev + c
                    if c:
                        t[mp] = c
                    elif mp in t:
                        del t[mp]
        self._terms = t

    @staticmethod
    def basis(mp: Multipartition) -> "FockVector":
        v = FockVector.__new__(FockVector)
        v._terms = {mp: LaurentPoly.one()}
        return v

    @staticmethod
    def zero() -> "FockVector":
        v = FockVector.__new__(FockVector)
        v._terms = {}
        return v

    def coefficient(self, mp: Multipartition) -> LaurentPoly:
        return self._terms.get(mp, LaurentPoly.zero())

    def terms(self) -> Iterator[tuple[Multipartition, LaurentPoly]]:
        return iter(self._terms.items())

    def support(self) -> list[Multipartition]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __add__(self, other: "FockVector") -> "FockVector":
        return self.add_scaled(other, LaurentPoly.one())

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self.add_scaled(other, LaurentPoly.from_int(-1))

    def scaled(self, mult: LaurentPoly) -> "FockVector":
        out = FockVector.__new__(FockVector)
        if mult.is_zero():
            out._terms = {}
        else:
            out._terms = {mp: c * mult for mp, c in self._terms.items()}
        return out

    def add_scaled(self, other: "FockVector", mult: LaurentPoly) -> "FockVector":
        """self + mult * other."""
        t = dict(self._terms)
        if mult:
            for mp, c in other._terms.items():
                p = c * mult
                prev = t.get(mp)
                n = p if prev is None else prev + p
                if n:
                    t[mp] = n
                elif mp in t:
                    del t[mp]
        out = FockVector.__new__(FockVector)
        out._terms = t
        return out

    def exact_div(self, q: LaurentPoly) -> "FockVector":
        out = FockVector.__new__(FockVector)
        out._terms = {mp: exact_div(c, q) for mp, c in self._terms.items()}
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        bits = [f"({c})*{list(map(list, mp))}" for mp, c in sorted(self._terms.items())]
        return " + ".join(bits)

    __repr__ = __str__

    def to_json(self) -> list[dict]:
        from .partitions import mp_to_json

        return [
            {"multipartition": mp_to_json(mp), "coefficient": c.to_json()}
            for mp, c in sorted(self._terms.items())
        ]

    @staticmethod
    def from_json(data) -> "FockVector":
        from .partitions import mp_from_json

        return FockVector(
            [(mp_from_json(d["multipartition"]), LaurentPoly.from_json(d["coefficient"]))
             for d in data]
        )


def apply_f(ctx: FockContext, vec: FockVector, i: int) -> FockVector:
    """f_i: sum over addable i-nodes n of v^N(n,i) * (add n), extended linearly.

    N(n,i) = #{addable i-nodes above n} - #{removable i-nodes above n}.
    """
    out: dict[Multipartition, LaurentPoly] = {}
    for mp, c in vec.terms():
        na = nr = 0
        for node, isadd in i_node_slots(ctx, mp, i):
            if isadd:
                nmp = add_node(mp, node)
                p = c.shift(na - nr)
                prev = out.get(nmp)
                n = p if prev is None else prev + p
                if n:
                    out[nmp] = n
                elif nmp in out:
                    del out[nmp]
                na += 1
            else:
                nr += 1
    return FockVector(out)


def apply_e(ctx: FockContext, vec: FockVector, i: int) -> FockVector:
    """e_i: sum over removable i-nodes m of v^M(m,i) * (remove m).

    M(m,i) = #{addable i-nodes below m} - #{removable i-nodes below m}.
    """
    out: dict[Multipartition, LaurentPoly] = {}
    for mp, c in vec.terms():
        slots = i_node_slots(ctx, mp, i)
        ta = sum(1 for _, isadd in slots if isadd)
        tr = len(slots) - ta
        na = nr = 0
        for node, isadd in slots:
            if isadd:
                na += 1
            else:
                nmp = remove_node(mp, node)
                p = c.shift((ta - na) - (tr - nr - 1))
                prev = out.get(nmp)
                n = p if prev is None else prev + p
                if n:
                    out[nmp] = n
                elif nmp in out:
                    del out[nmp]
                nr += 1
    return FockVector(out)


def apply_f_divided(ctx: FockContext, vec: FockVector, i: int, k: int) -> FockVector:
    """The divided power f_i^(k) = f_i^k / [k]!.

    Computed directly: adding an i-node only turns that addable slot into
    a removable i-node and leaves every other i-slot alone, so summing
    f_i^k over the k! insertion orders of a fixed node set T gives
    [k]! * v^(sum_{t in T}(alpha_t - rho_t) - C(k,2)), where alpha_t/rho_t
    count addable/removable i-nodes above t in the starting shape.  The
    iterative route (apply_f k times, then exact division by [k]!) is kept
    alongside as an independent cross-check.
    """
    if k < 0:
        raise ValueError(f"divided power needs k >= 0, got {k}")
    if k == 0:
        return vec
    if k == 1:
        return apply_f(ctx, vec, i)
    base = k * (k - 1) // 2
    out: dict[Multipartition, LaurentPoly] = {}
    for mp, c in vec.terms():
        adds: list[tuple[NodeRef, int]] = []
        na = nr = 0
        for node, isadd in i_node_slots(ctx, mp, i):
            if isadd:
                adds.append((node, na - nr))
                na += 1
            else:
                nr += 1
        if len(adds) < k:
            continue
        for T in combinations(adds, k):
            expo = sum(w for _, w in T) - base
            nmp = mp
            for node, _ in T:
                nmp = add_node(nmp, node)
            p = c.shift(expo)
            prev = out.get(nmp)
            n = p if prev is None else prev + p
            if n:
                out[nmp] = n
            elif nmp in out:
                del out[nmp]
    return FockVector(out)


def apply_f_divided_iterative(ctx: FockContext, vec: FockVector, i: int, k: int) -> FockVector:
    """f_i iterated k times followed by exact division by [k]!."""
    out = vec
    for _ in range(k):
        out = apply_f(ctx, out, i)
    return out.exact_div(qfact(k))
