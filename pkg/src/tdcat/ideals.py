"""Two-sided arrow ideals and their idempotent members (Rem. 1.8, Exa. 1.9).

An ideal is a set of arrows closed under composing with arbitrary arrows on
either side. Ideals are exactly the unions of principal ideals, so all of
them are the down-sets of the poset of distinct principal ideals; the
enumeration walks those down-sets instead of all arrow subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._util import DEFAULT_GUARD, Guard, bits
from .core import FinCategory, FinPoset
from .errors import InputError, InternalInconsistency
from .order import down_sets


@dataclass(frozen=True)
class ArrowIdeal:
    base: FinCategory = field(compare=False, hash=False, repr=False)
    members: frozenset

    def __len__(self):
        return len(self.members)

    def __contains__(self, f: int) -> bool:
        return f in self.members

    def __le__(self, other: "ArrowIdeal") -> bool:
        return self.members <= other.members

    def fingerprint(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def sort_key(self):
        return (len(self.members), self.fingerprint())

    def names(self) -> list[str]:
        return [self.base.arrows[f] for f in self.fingerprint()]

    def closure_failure(self):
        """A pair ``(f, composite)`` leaving the set, or None."""
        C = self.base
        for f in self.fingerprint():
            for g in C.out_of[C.tgt[f]]:
                if C.compose(g, f) not in self.members:
                    return C.arrows[f], C.arrows[C.compose(g, f)]
            for k in C.into[C.src[f]]:
                if C.compose(f, k) not in self.members:
                    return C.arrows[f], C.arrows[C.compose(f, k)]
        return None

    def square(self) -> frozenset:
        """``I . I``: composites of two members."""
        C = self.base
        return frozenset(C.compose(g, f) for f in self.members for g in C.out_of[C.tgt[f]] if g in self.members)

    def __repr__(self):
        return "ArrowIdeal{" + ",".join(self.names()) + "}"


def ideal_closure(C: FinCategory, seeds) -> ArrowIdeal:
    """Least two-sided ideal containing ``seeds`` (arrow ids or names)."""
    todo = [C.arrow(s) if isinstance(s, str) else int(s) for s in seeds]
    members = set(todo)
    while todo:
        f = todo.pop()
        new = [C.compose(g, f) for g in C.out_of[C.tgt[f]]] + [C.compose(f, k) for k in C.into[C.src[f]]]
        for h in new:
            if h not in members:
                members.add(h)
                todo.append(h)
    return ArrowIdeal(C, frozenset(members))


@dataclass
class IdempotencyReport:
    idempotent: bool
    factorizations: dict  # member -> (g, h) with g . h = member, both members
    witness: int | None = None  # first member with no factorization

    def __bool__(self):
        return self.idempotent


def is_idempotent(I: ArrowIdeal) -> IdempotencyReport:
    """``I = I . I``: every member factors through two members."""
    C = I.base
    fact = {}
    for h in sorted(I.members):
        for g in C.out_of[C.tgt[h]]:
            if g in I.members:
                fact.setdefault(C.compose(g, h), (g, h))
    for f in sorted(I.members):
        if f not in fact:
            return IdempotencyReport(False, {}, f)
    return IdempotencyReport(True, {f: fact[f] for f in sorted(I.members)})


def principal_ideals(C: FinCategory) -> list[ArrowIdeal]:
    """The distinct principal ideals, sorted by size then members."""
    seen = {}
    for f in range(C.n_arrows):
        I = ideal_closure(C, [f])
        seen.setdefault(I.members, I)
    return sorted(seen.values(), key=ArrowIdeal.sort_key)


def all_ideals(C: FinCategory, guard: Guard | None = None) -> list[ArrowIdeal]:
    """Every two-sided ideal, as unions of down-closed sets of principal ideals."""
    guard = guard or DEFAULT_GUARD
    guard.check("objects", C.n_objects)
    guard.check("arrows", C.n_arrows)
    prin = principal_ideals(C)
    labels = list(range(len(prin)))
    P = FinPoset(labels, [(a, b) for a in labels for b in labels if prin[a].members <= prin[b].members])
    masks = down_sets(P, guard.with_overrides(max_downsets=guard.max_subsets))
    out = []
    for m in masks:
        members = frozenset().union(*(prin[P.labels[i]].members for i in bits(m)))
        out.append(ArrowIdeal(C, members))
    return sorted(out, key=ArrowIdeal.sort_key)


class IdealLattice:
    """The idempotent ideals of ``C`` under inclusion, with meet and join tables."""

    def __init__(self, base: FinCategory, ideals: list[ArrowIdeal], total: int):
        self.base = base
        self.ideals = sorted(ideals, key=ArrowIdeal.sort_key)
        self.total_ideals = total
        self._index = {I.members: k for k, I in enumerate(self.ideals)}
        n = len(self.ideals)
        self.meet = [[0] * n for _ in range(n)]
        self.join = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                self.meet[a][b] = self._meet(a, b)
                self.join[a][b] = self._join(a, b)

    def __len__(self):
        return len(self.ideals)

    def leq(self, a: int, b: int) -> bool:
        return self.ideals[a].members <= self.ideals[b].members

    def index(self, I: ArrowIdeal) -> int:
        return self._index[I.members]

    def _meet(self, a: int, b: int) -> int:
        common = self.ideals[a].members & self.ideals[b].members
        below = [k for k, I in enumerate(self.ideals) if I.members <= common]
        top = [k for k in below if all(self.ideals[j].members <= self.ideals[k].members for j in below)]
        if len(top) != 1:
            raise InternalInconsistency(f"no unique greatest idempotent ideal below ideals {a} and {b}")
        return top[0]

    def _join(self, a: int, b: int) -> int:
        union = self.ideals[a].members | self.ideals[b].members
        if union in self._index:
            return self._index[union]
        above = [k for k, I in enumerate(self.ideals) if union <= I.members]
        least = [k for k in above if all(self.ideals[k].members <= self.ideals[j].members for j in above)]
        if len(least) != 1:
            raise InternalInconsistency(f"no least idempotent ideal above ideals {a} and {b}")
        return least[0]

    def is_chain(self) -> bool:
        n = len(self)
        return all(self.leq(a, b) or self.leq(b, a) for a in range(n) for b in range(n))

    def covers(self) -> list[tuple[int, int]]:
        n = len(self)
        out = []
        for a in range(n):
            for b in range(n):
                if a != b and self.leq(a, b) and not any(
                        c not in (a, b) and self.leq(a, c) and self.leq(c, b) for c in range(n)):
                    out.append((a, b))
        return out

    def as_poset(self) -> FinPoset:
        labels = [f"I{k}" for k in range(len(self))]
        return FinPoset(labels, [(labels[a], labels[b]) for a in range(len(self)) for b in range(len(self))
                                 if self.leq(a, b)])

    def to_dot(self) -> str:
        lines = [f'digraph "ideals_{self.base.name}" {{', "  rankdir=BT;", "  node [shape=box];"]
        for k, I in enumerate(self.ideals):
            lines.append(f'  I{k} [label="I{k}\\n|I|={len(I)}"];')
        for a, b in self.covers():
            lines.append(f"  I{a} -> I{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_idempotent_ideals(C: FinCategory, guard: Guard | None = None) -> IdealLattice:
    everything = all_ideals(C, guard)
    idem = [I for I in everything if is_idempotent(I)]
    return IdealLattice(C, idem, len(everything))


def object_dimension(C: FinCategory, o: int) -> int:
    try:
        return int(C.objects[o])
    except ValueError:
        raise InputError(f"object {C.objects[o]!r} has no dimension (expected an integer name)") from None


def dimension_ideal(C: FinCategory, d: int) -> ArrowIdeal:
    """Arrows factoring through an object of dimension ``<= d`` (Exa. 1.9)."""
    dims = [object_dimension(C, o) for o in range(C.n_objects)]
    if not 0 <= d <= max(dims, default=-1):
        raise InputError(f"dimension {d} out of range")
    members = set()
    for o in range(C.n_objects):
        if dims[o] > d:
            continue
        for h in C.out_of[o]:
            for k in C.into[o]:
                members.add(C.compose(h, k))
    I = ArrowIdeal(C, frozenset(members))
    if I.closure_failure() is not None or not is_idempotent(I):
        raise InternalInconsistency(f"dimension ideal {d} is not an idempotent ideal")
    return I
