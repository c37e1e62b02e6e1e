"""Enumeration of small posets and lattices up to isomorphism, and seeded
random generators for the sweeps."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from ._util import bits
from .core import FinPoset
from .order import down_sets


def _relation_code(down, perm) -> int:
    pos = {old: new for new, old in enumerate(perm)}
    code = 0
    n = len(perm)
    for new_j, old_j in enumerate(perm):
        row = 0
        for old_i in bits(down[old_j]):
            row |= 1 << pos[old_i]
        code |= row << (n * new_j)
    return code


def canonical_code(P: FinPoset) -> tuple[int, int]:
    """Isomorphism invariant that determines ``P`` up to isomorphism."""
    n = len(P)
    inv = [(bin(P.down[i]).count("1"), bin(P.up[i]).count("1")) for i in range(n)]
    # refine once by the multiset of neighbours' invariants
    inv = [(inv[i], tuple(sorted(inv[j] for j in bits(P.down[i]))), tuple(sorted(inv[j] for j in bits(P.up[i]))))
           for i in range(n)]
    groups: dict = {}
    for i in range(n):
        groups.setdefault(inv[i], []).append(i)
    keys = sorted(groups)
    best = None
    for parts in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
        perm = [i for part in parts for i in part]
        code = _relation_code(P.down, perm)
        if best is None or code < best:
            best = code
    return n, best if best is not None else 0


def are_isomorphic(P: FinPoset, Q: FinPoset) -> bool:
    return len(P) == len(Q) and canonical_code(P) == canonical_code(Q)


def _from_code(n: int, code: int) -> FinPoset:
    labels = [str(i) for i in range(n)]
    pairs = []
    for j in range(n):
        row = code >> (n * j) & ((1 << n) - 1)
        pairs.extend((labels[i], labels[j]) for i in bits(row))
    return FinPoset(labels, pairs)


@lru_cache(maxsize=None)
def _poset_codes(n: int) -> tuple[int, ...]:
    if n == 0:
        return (0,)
    seen = set()
    for code in _poset_codes(n - 1):
        P = _from_code(n - 1, code)
        # every poset arises by adding a maximal element over a down-set
        for d in down_sets(P):
            labels = list(P.labels) + [str(n - 1)]
            pairs = P.pairs() + [(P.labels[i], str(n - 1)) for i in bits(d)] + [(str(n - 1), str(n - 1))]
            seen.add(canonical_code(FinPoset(labels, pairs))[1])
    return tuple(sorted(seen))


def all_posets(n: int) -> list[FinPoset]:
    """One representative of each isomorphism class of posets on ``n`` elements."""
    return [_from_code(n, c) for c in _poset_codes(n)]


def is_lattice(P: FinPoset) -> bool:
    if len(P) == 0:
        return False
    for a in range(len(P)):
        for b in range(a + 1, len(P)):
            if P.join(1 << a | 1 << b) is None or P.meet(1 << a | 1 << b) is None:
                return False
    return True


def all_lattices(n: int) -> list[FinPoset]:
    return [P for P in all_posets(n) if is_lattice(P)]


def random_poset(rng: random.Random, n: int, density: float | None = None) -> FinPoset:
    """Random poset: a random strict upper-triangular relation, closed."""
    p = rng.random() if density is None else density
    labels = [f"p{i}" for i in range(n)]
    order = rng.sample(labels, n)
    pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return FinPoset.from_relation(labels, pairs)


def random_lattice(rng: random.Random, min_size: int = 6, max_size: int = 8) -> FinPoset:
    """Random lattice with ``min_size..max_size`` elements.

    Built as an intersection-closed family of subsets of a small ground set
    (with the full set added), ordered by inclusion; every finite lattice
    arises this way.
    """
    while True:
        m = rng.randint(3, 5)
        full = (1 << m) - 1
        family = {full}
        for _ in range(rng.randint(2, 7)):
            family.add(rng.randint(0, full))
        changed = True
        while changed:
            changed = False
            for a, b in itertools.combinations(list(family), 2):
                if a & b not in family:
                    family.add(a & b)
                    changed = True
        if min_size <= len(family) <= max_size:
            members = sorted(family)
            labels = [f"s{x:0{m}b}" for x in members]
            pairs = [(labels[i], labels[j]) for i, a in enumerate(members) for j, b in enumerate(members)
                     if a & ~b == 0]
            return FinPoset(labels, pairs)


def named_poset(name: str) -> FinPoset:
    """A few posets used throughout tests and documentation."""
    if name == "boolean-square":
        return FinPoset("0 a b 1".split(), [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")], close=True)
    if name == "M3":
        return FinPoset("0 a b c 1".split(),
                        [("0", x) for x in "abc"] + [(x, "1") for x in "abc"], close=True)
    if name == "N5":
        return FinPoset("0 a b c 1".split(), [("0", "a"), ("a", "b"), ("0", "c"), ("b", "1"), ("c", "1")],
                        close=True)
    if name.startswith("chain"):
        k = int(name[5:])
        labels = [str(i) for i in range(k)]
        return FinPoset(labels, [(labels[i], labels[j]) for i in range(k) for j in range(i, k)])
    if name.startswith("antichain"):
        k = int(name[9:])
        labels = [chr(ord("a") + i) for i in range(k)]
        return FinPoset(labels, [(x, x) for x in labels])
    raise KeyError(name)
