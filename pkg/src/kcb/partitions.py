"""Partitions, multipartitions, and the small builder combinators.

A partition is a tuple of weakly decreasing positive ints; a
multipartition is a tuple of partitions (its length is the level).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

Partition = tuple[int, ...]
Multipartition = tuple[Partition, ...]


class IllFormedPartitionError(ValueError):
    """Rows fail to be weakly decreasing positive integers."""


def as_partition(rows) -> Partition:
    p = tuple(int(r) for r in rows)
    if any(r <= 0 for r in p):
        raise IllFormedPartitionError(f"non-positive row in {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise IllFormedPartitionError(f"rows not weakly decreasing: {p}")
    return p


def as_multipartition(comps) -> Multipartition:
    return tuple(as_partition(c) for c in comps)


def transpose(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for r in p if r > c) for c in range(p[0]))


def triangular(n: int) -> Partition:
    """T_n = (n, n-1, ..., 1) for n > 0, the empty partition otherwise."""
    if n <= 0:
        return ()
    return tuple(range(n, 0, -1))


def vee(p: Partition, q: Partition) -> Partition:
    """Rows of p followed by the rows of q; must stay a partition."""
    out = p + q
    if p and q and p[-1] < q[0]:
        raise IllFormedPartitionError(f"{p} v {q} is not weakly decreasing")
    return out


def u_family(variant: int, n: int) -> Partition:
    """U^n_1 = (n+1) v T_{n-2} and its transpose U^n_2 = T_{n-1} v (1,1)."""
    if n < 1:
        raise ValueError(f"u_family needs n >= 1, got {n}")
    if variant == 1:
        return vee((n + 1,), triangular(n - 2))
    if variant == 2:
        return vee(triangular(n - 1), (1, 1))
    raise ValueError(f"variant must be 1 or 2, got {variant}")


def conjugate(mp: Multipartition) -> Multipartition:
    """Reverse the component order and transpose every component."""
    return tuple(transpose(c) for c in reversed(mp))


def transpose_each(mp: Multipartition) -> Multipartition:
    """Transpose every component, keeping the order."""
    return tuple(transpose(c) for c in mp)


def total_size(mp: Multipartition) -> int:
    return sum(sum(c) for c in mp)


def prefix_profile(mp: Multipartition, depth: int) -> tuple[int, ...]:
    """Cumulative box counts component by component, row by row.

    Each component is padded with zero rows to `depth`, so profiles of
    equal-level multipartitions align position by position.
    """
    out = []
    run = 0
    for comp in mp:
        for j in range(depth):
            run += comp[j] if j < len(comp) else 0
            out.append(run)
    return tuple(out)


def dominates(mu: Multipartition, lam: Multipartition) -> bool:
    """mu >= lam in the dominance order (prefix sums pointwise >=)."""
    if len(mu) != len(lam):
        raise ValueError("dominance needs equal levels")
    n = total_size(mu)
    if n != total_size(lam):
        raise ValueError("dominance needs equal total size")
    depth = max(1, n)
    pm = prefix_profile(mu, depth)
    pl = prefix_profile(lam, depth)
    return all(a >= b for a, b in zip(pm, pl))


def is_e_regular(mp: Multipartition, e: int) -> bool:
    """No component repeats a row e times in a row."""
    if e < 2:
        raise ValueError(f"rank must be >= 2, got {e}")
    for comp in mp:
        for i in range(len(comp) - e + 1):
            if comp[i] == comp[i + e - 1]:
                return False
    return True


@lru_cache(maxsize=None)
def _partitions_of(n: int, cap: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions_of(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def iter_partitions(n: int) -> Iterator[Partition]:
    """All partitions of exactly n, descending-lex order."""
    return iter(_partitions_of(n, n))


def iter_multipartitions(n: int, level: int) -> Iterator[Multipartition]:
    """All multipartitions of exactly n with the given level."""
    if level == 0:
        if n == 0:
            yield ()
        return
    if level == 1:
        for p in iter_partitions(n):
            yield (p,)
        return
    for head in range(n, -1, -1):
        for p in iter_partitions(head):
            for rest in iter_multipartitions(n - head, level - 1):
                yield (p,) + rest


def mp_to_json(mp: Multipartition) -> list[list[int]]:
    return [list(c) for c in mp]


def mp_from_json(data) -> Multipartition:
    return as_multipartition(data)
