"""Non-recursive constructions: choice sequences and their inversion
statistic, the shape function, the tau / pi multipartition families,
assembled closed-form elements, and the small-defect data.

Families are generated structurally: a family fixes a path (residue,
multiplicity per segment) and a number m of choice stages; every choice
stage picks k nodes out of the current addable-node list of its branch,
later stages must use every addable node.  Exponents come in two
readings:

* "plain"     - the inversion count of each choice sequence, summed;
* "corrected" - the true divided-power statistic, which additionally
                subtracts, for every chosen node, the number of removable
                nodes of the active residue above it.

The readings agree whenever no stage sees a removable node of its
residue.  Where they differ the recursive oracle arbitrates (module
verify); "corrected" is the default because it is the one consistent
with the leading coefficient being 1 in every family.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .canonical import CanonicalElement, compute_shape
from .crystal import f_tilde, weight_info
from .fock import FockContext, FockVector, add_node, content, i_node_slots, symmetric_context
from .laurent import LaurentPoly
from .partitions import Multipartition, triangular, u_family


class AmbiguousCaseError(RuntimeError):
    """A sub-case where the two exponent readings disagree; the caller must
    pick one explicitly (the verify suites record which one the recursive
    computation confirms)."""


@dataclass(frozen=True)
class ChoiceSequence:
    """A 0/1 sequence selecting addable nodes."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bits must be 0/1: {self.bits}")

    @property
    def length(self) -> int:
        return len(self.bits)

    @property
    def weight(self) -> int:
        return sum(self.bits)


def inv(s) -> int:
    """Number of 0s appearing before each 1, summed over the 1s."""
    bits = s.bits if isinstance(s, ChoiceSequence) else tuple(s)
    zeros = 0
    out = 0
    for b in bits:
        if b:
            out += zeros
        else:
            zeros += 1
    return out


def choice_sequences(c: int, k: int) -> list[ChoiceSequence]:
    """All C(c, k) sequences of length c with k ones, deterministic order."""
    if not 0 <= k <= c:
        raise ValueError(f"need 0 <= k <= c, got k={k}, c={c}")
    out = []
    for pos in combinations(range(c), k):
        bits = [0] * c
        for p in pos:
            bits[p] = 1
        out.append(ChoiceSequence(tuple(bits)))
    return out


# shape function


@lru_cache(maxsize=None)
def shape_fn(a: int, k: int, ell: int) -> int:
    """Recursive count of choice sequences in S(a, k) with inversion ell.

    s(1,0,0) = s(1,1,0) = 1, s(a,k,l) = s(a-1,k-1,l) + s(a-1,k,l-k);
    zero outside 0 <= l <= k(a-k).
    """
    if a < 1 or k < 0 or k > a:
        return 0
    if ell < 0 or ell > k * (a - k):
        return 0
    if a == 1:
        return 1 if ell == 0 else 0
    return shape_fn(a - 1, k - 1, ell) + shape_fn(a - 1, k, ell - k)


def shape_fn_closed(a: int, k: int, ell: int) -> int:
    """Closed forms for k in {1, 2, 3}.

    k=1: constantly 1 on 0..a-1.  k=2: floor((a - |l - (a-2)|)/2) on
    0..2(a-2).  k=3: the k=2 form summed along the first-row split,
    s(a,3,l) = sum_t s(a-t, 2, l - 3(t-1)).
    """
    if k not in (1, 2, 3):
        raise ValueError(f"closed form only for k in 1..3, got {k}")
    if a < k:
        raise ValueError(f"need a >= k, got a={a}, k={k}")
    if ell < 0 or ell > k * (a - k):
        return 0
    if k == 1:
        return 1
    if k == 2:
        return (a - abs(ell - (a - 2))) // 2
    total = 0
    t = 1
    while ell - 3 * (t - 1) >= 0:
        m = ell - 3 * (t - 1)
        aa = a - t
        if aa >= 2 and 0 <= m <= 2 * (aa - 2):
            total += (aa - abs(m - (aa - 2))) // 2
        t += 1
    return total


def shape_row(a: int, k: int) -> tuple[int, ...]:
    return tuple(shape_fn(a, k, ell) for ell in range(k * (a - k) + 1))


def shape_table(a: int) -> dict[int, tuple[int, ...]]:
    return {k: shape_row(a, k) for k in range(a + 1)}


# tau families


def tau(a: int, i: int, n: int, s1: ChoiceSequence) -> Multipartition:
    """Level-2a multipartition: T_{n+1} on the i-corner components chosen
    by s1, T_{n-1} on the unchosen ones, T_n on every opposite-corner
    component."""
    if i not in (0, 1):
        raise ValueError("residue must be 0 or 1")
    if s1.length != a:
        raise ValueError(f"choice sequence must have length a={a}")
    comps = []
    for u in range(1, 2 * a + 1):
        corner = 0 if u <= a else 1
        if corner == i:
            idx = u - 1 if i == 0 else u - a - 1
            comps.append(triangular(n + 1) if s1.bits[idx] else triangular(n - 1))
        else:
            comps.append(triangular(n))
    return tuple(comps)


# the family engine


FAMILIES = ("top-row", "weyl", "p0k1", "p10k", "p010k")

# families whose case tables admit conflicting readings at n >= 1; pinned
# empirically against the recursive computation, never resolved silently
FLAGGED = {("p10k", True), ("p010k", True)}  # (family, n >= 1)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    a: int
    k: int
    n: int = 0
    dual: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.a < 1:
            raise ValueError("need a >= 1")
        if not 0 <= self.k <= self.a:
            raise ValueError(f"need 0 <= k <= a, got k={self.k}, a={self.a}")
        if self.n < 0:
            raise ValueError("need n >= 0")
        if self.family in ("p0k1", "p10k", "p010k") and self.k < 1:
            raise ValueError(f"family {self.family} needs k >= 1")
        if self.family == "p010k" and self.k < 2:
            raise ValueError(
                "family p010k needs k >= 2 (for k = 1 the path collapses to p0k1)"
            )

    @property
    def flagged(self) -> bool:
        return (self.family, self.n >= 1) in FLAGGED


def family_stages(spec: FamilySpec) -> tuple[list[tuple[int, int | None]], int]:
    """Path segments (residue, multiplicity; None = fill every addable node)
    and the number m of free-choice stages."""
    a, k, n = spec.a, spec.k, spec.n
    i0 = 1 if spec.dual else 0
    i1 = 1 - i0
    if spec.family == "top-row":
        stages: list[tuple[int, int | None]] = [(i0, k)]
        m = 1
        n = 0
    elif spec.family == "weyl":
        stages = [(i0, k)]
        m = 1
    elif spec.family == "p0k1":
        stages = [(i0, k), (i1, 1 if n == 0 else 2 * k + a - 1)]
        m = 2
    elif spec.family == "p10k":
        stages = [(i1, 1), (i0, k)]
        m = 2
        if n >= 1:
            stages.append((i1, 2 * k + a - 2))
            m = 3
    else:  # p010k
        stages = [(i0, 1), (i1, 1), (i0, k - 1)]
        m = 3
        if n >= 1:
            stages.append((i1, 2 * k + a - 2))
            m = 4
    # remaining strings are filled completely, alternating residues
    extra = n if spec.family == "weyl" else (n - 1 if n >= 1 else 0)
    res = stages[-1][0]
    for _ in range(extra):
        res = 1 - res
        stages.append((res, None))
    return stages, m


def _stage_adds(ctx: FockContext, mp: Multipartition, i: int):
    """Addable i-nodes with (position-among-addables, removables-above)."""
    adds = []
    na = nr = 0
    for node, isadd in i_node_slots(ctx, mp, i):
        if isadd:
            adds.append((node, na, nr))
            na += 1
        else:
            nr += 1
    return adds


def expand_family(
    ctx: FockContext, stages, m: int, branch_cap: int | None = None
) -> list[tuple[Multipartition, int, int]]:
    """All branches (multipartition, plain exponent, corrected exponent)."""
    branches = [(ctx.highest_weight_vertex(), 0, 0)]
    for idx, (i, mult) in enumerate(stages):
        nxt = []
        for mp, ep, ec in branches:
            adds = _stage_adds(ctx, mp, i)
            kk = len(adds) if mult is None else mult
            if kk > len(adds):
                raise ValueError(
                    f"stage {idx + 1} asks for {kk} nodes, only {len(adds)} addable"
                )
            if idx >= m and kk < len(adds):
                raise ValueError(
                    f"stage {idx + 1} is past the choice stages but leaves "
                    f"{len(adds) - kk} nodes unused"
                )
            base = kk * (kk - 1) // 2
            for T in combinations(range(len(adds)), kk):
                invp = sum(pos - t for t, pos in enumerate(T))
                corr = sum(adds[pos][2] for pos in T)
                nmp = mp
                for pos in T:
                    nmp = add_node(nmp, adds[pos][0])
                nxt.append((nmp, ep + invp, ec + invp - corr))
        branches = nxt
        if branch_cap is not None and len(branches) > branch_cap:
            raise ValueError(f"branch budget exceeded ({len(branches)} > {branch_cap})")
    conts = {content(ctx, mp) for mp, _, _ in branches}
    if len(conts) > 1:
        raise ValueError(f"branches ended at different weights: {sorted(conts)}")
    return branches


def family_vectors(
    ctx: FockContext, spec: FamilySpec
) -> tuple[FockVector, FockVector]:
    """(plain-reading sum, corrected-reading sum) for the family."""
    stages, m = family_stages(spec)
    branches = expand_family(ctx, stages, m)
    plain: dict[Multipartition, LaurentPoly] = {}
    corrected: dict[Multipartition, LaurentPoly] = {}
    for mp, ep, ec in branches:
        for store, e in ((plain, ep), (corrected, ec)):
            prev = store.get(mp)
            p = LaurentPoly.monomial(e)
            store[mp] = p if prev is None else prev + p
    return FockVector(plain), FockVector(corrected)


def family_label(ctx: FockContext, spec: FamilySpec) -> Multipartition:
    """The e-regular member: replay the path through the crystal operators."""
    stages, _ = family_stages(spec)
    cur = ctx.highest_weight_vertex()
    for i, mult in stages:
        steps = mult if mult is not None else len(_stage_adds(ctx, cur, i))
        for _ in range(steps):
            nxt = f_tilde(ctx, cur, i)
            if nxt is None:
                raise ValueError(f"path broke at residue {i} from {cur}")
            cur = nxt
    return cur


def _element_from_vector(ctx: FockContext, label: Multipartition, vec: FockVector) -> CanonicalElement:
    info = weight_info(ctx, content(ctx, label))
    return CanonicalElement(label, vec, info, compute_shape(vec, info.defect))


def closed_canonical_top(a: int, i: int, k: int) -> CanonicalElement:
    """sum over S(a,k) of v^Inv(S) tau^0_i(S); label is tau^0_i at the
    all-ones-first choice."""
    ctx = symmetric_context(a)
    terms = [
        (tau(a, i, 0, s), LaurentPoly.monomial(inv(s))) for s in choice_sequences(a, k)
    ]
    label = tau(a, i, 0, ChoiceSequence((1,) * k + (0,) * (a - k)))
    return _element_from_vector(ctx, label, FockVector(terms))


def closed_canonical_weyl(a: int, i: int, k: int, n: int) -> CanonicalElement:
    """Same coefficients with tau^n multipartitions (string-reflected images)."""
    ctx = symmetric_context(a)
    terms = [
        (tau(a, i, n, s), LaurentPoly.monomial(inv(s))) for s in choice_sequences(a, k)
    ]
    label = tau(a, i, n, ChoiceSequence((1,) * k + (0,) * (a - k)))
    return _element_from_vector(ctx, label, FockVector(terms))


def replay_choices(
    ctx: FockContext, spec: FamilySpec, choices
) -> tuple[Multipartition, int, int]:
    """One branch for explicit choice sequences (one per choice stage).

    Returns (multipartition, plain exponent, corrected exponent).
    """
    stages, m = family_stages(spec)
    choices = tuple(
        c if isinstance(c, ChoiceSequence) else ChoiceSequence(tuple(c)) for c in choices
    )
    if len(choices) != m:
        raise ValueError(f"family has {m} choice stages, got {len(choices)} sequences")
    mp = ctx.highest_weight_vertex()
    ep = ec = 0
    for idx, (i, mult) in enumerate(stages):
        adds = _stage_adds(ctx, mp, i)
        if idx < m:
            s = choices[idx]
            if s.length != len(adds):
                raise ValueError(
                    f"stage {idx + 1}: sequence length {s.length} != "
                    f"{len(adds)} addable nodes"
                )
            if s.weight != mult:
                raise ValueError(
                    f"stage {idx + 1}: sequence weight {s.weight} != {mult}"
                )
            picks = [p for p, b in enumerate(s.bits) if b]
        else:
            if mult is not None and mult != len(adds):
                raise ValueError(f"stage {idx + 1} is not a full string")
            picks = list(range(len(adds)))
        kk = len(picks)
        invp = sum(pos - t for t, pos in enumerate(picks))
        corr = sum(adds[pos][2] for pos in picks)
        ep += invp
        ec += invp - corr
        for pos in picks:
            mp = add_node(mp, adds[pos][0])
    return mp, ep, ec


def _pi(spec: FamilySpec, choices, rule: str | None):
    ctx = symmetric_context(spec.a)
    mp, ep, ec = replay_choices(ctx, spec, choices)
    if rule is None:
        if spec.flagged and ep != ec:
            raise AmbiguousCaseError(
                f"{spec.family} (n={spec.n}) hits a sub-case where the exponent "
                f"readings disagree: plain {ep} vs corrected {ec}; pass "
                f"rule='plain' or rule='corrected'"
            )
        rule = "corrected"
    if rule not in ("plain", "corrected"):
        raise ValueError(f"unknown exponent rule {rule!r}")
    return mp, (ep if rule == "plain" else ec)


def pi0(spec: FamilySpec, choices, rule: str | None = None):
    """One n = 0 family term: (multipartition, coefficient exponent)."""
    if spec.n != 0:
        raise ValueError("pi0 needs n = 0")
    return _pi(spec, choices, rule)


def pin(spec: FamilySpec, choices, rule: str | None = None):
    """One n >= 1 family term: (multipartition, coefficient exponent)."""
    if spec.n < 1:
        raise ValueError("pin needs n >= 1")
    return _pi(spec, choices, rule)


def closed_canonical_family(spec: FamilySpec, rule: str | None = None) -> CanonicalElement:
    """The family sum as a canonical element (not oracle-checked here)."""
    if spec.family not in ("p0k1", "p10k", "p010k"):
        raise ValueError(
            f"closed_canonical_family covers the path families, not {spec.family!r}"
        )
    if rule is None:
        if spec.flagged:
            raise AmbiguousCaseError(
                f"{spec.family} with n >= 1 has sub-cases where the exponent "
                f"readings disagree; pass rule='plain' or rule='corrected'"
            )
        rule = "corrected"
    ctx = symmetric_context(spec.a)
    plain, corrected = family_vectors(ctx, spec)
    vec = plain if rule == "plain" else corrected
    return _element_from_vector(ctx, family_label(ctx, spec), vec)


# top-row defects and the small-defect catalogue


def defect_top_row(a: int, b: int, k: int, i: int) -> int:
    """Defect of Lambda - k alpha_i on the top row: k(a-k) resp. k(b-k)."""
    bound = a if i == 0 else b
    if not 0 <= k <= bound:
        raise ValueError(f"need 0 <= k <= {bound} for residue {i}, got {k}")
    return k * (bound - k)


def defect_congruences(a: int) -> set[int]:
    """{k(a-k) mod 2a : 0 <= k <= a}: all defects occur in these classes."""
    if a < 1:
        raise ValueError("need a >= 1")
    return {(k * (a - k)) % (2 * a) for k in range(a + 1)}


def small_defect_families(a: int, n: int) -> list[tuple[Multipartition, str]]:
    """The defect-2 multipartition families for symmetric crystals, a in {1, 3}."""
    if a not in (1, 3):
        raise ValueError("defect-2 families exist for a = 1 and a = 3 only")
    if n < 1:
        raise ValueError("need n >= 1")
    T = triangular
    if a == 1:
        return [
            ((T(n + 1), T(n - 2)), "triangles:mu"),
            ((T(n), u_family(1, n)), "triangles:diamond"),
            ((u_family(1, n), T(n - 2)), "hook:mu"),
            ((u_family(1, n), T(n)), "hook:diamond"),
        ]
    return [
        ((T(n + 1), T(n - 1), T(n - 1), T(n), T(n), T(n)), "one-up:mu"),
        ((T(n), T(n), T(n), T(n + 1), T(n - 1), T(n - 1)), "one-up:diamond"),
        ((T(n + 1), T(n + 1), T(n - 1), T(n), T(n), T(n)), "two-up:mu"),
        ((T(n), T(n), T(n), T(n + 1), T(n + 1), T(n - 1)), "two-up:diamond"),
    ]
