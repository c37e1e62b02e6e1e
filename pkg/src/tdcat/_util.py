"""Canonical ordering, union-find and size guards."""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .errors import SizeGuardExceeded

_DIGITS = re.compile(r"(\d+)")


def natural_key(name: str):
    """Sort key that orders ``f2`` before ``f10``."""
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in _DIGITS.split(name) if p)


def canon_key(x):
    """Total sort key over the element labels used throughout the package.

    Mixed types are ordered ints < strings < tuples < frozensets < other.
    """
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, natural_key(x))
    if isinstance(x, tuple):
        return (2, tuple(canon_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(canon_key(y) for y in x)))
    sk = getattr(x, "sort_key", None)
    if sk is not None:
        return (4, sk())
    return (9, repr(x))


def canonical(elems) -> tuple:
    return tuple(sorted(elems, key=canon_key))


def fmt(x) -> str:
    """Compact human-readable rendering of an element label."""
    if isinstance(x, str):
        return x
    if isinstance(x, tuple):
        return "(" + ",".join(fmt(y) for y in x) + ")"
    if isinstance(x, frozenset):
        return "{" + ",".join(fmt(y) for y in canonical(x)) + "}"
    return str(x)


class UnionFind:
    """Union-find over ``0..n-1`` whose class representative is the least index."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a == b:
            return
        if a < b:
            self.parent[b] = a
        else:
            self.parent[a] = b

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            out.setdefault(self.find(i), []).append(i)
        return out


@dataclass(frozen=True)
class Guard:
    """Size bounds; exceeding one raises :class:`SizeGuardExceeded`."""

    max_objects: int = 64
    max_arrows: int = 4096
    # 2**20 down-sets is what a 20-element antichain produces.
    max_downsets: int = 1 << 20
    max_families: int = 10**9
    max_subsets: int = 100_000

    def check(self, what: str, count: int) -> None:
        bound = getattr(self, "max_" + what)
        if count > bound:
            raise SizeGuardExceeded(what, count, bound)

    def with_overrides(self, **kw) -> "Guard":
        kw = {k: v for k, v in kw.items() if v is not None}
        for k, v in kw.items():
            if v <= 0:
                raise ValueError(f"guard {k} must be positive")
        return replace(self, **kw)


DEFAULT_GUARD = Guard()


def bits(mask: int):
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")
