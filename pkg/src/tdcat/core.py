"""Finite categories, functors, posets, monotone maps and profunctors.

Arrows, objects and poset elements are interned to dense integer ids in a
stable canonical (natural-sort) order; every algorithm in the package works
on those ids and only the I/O layer deals in names.
"""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from ._util import DEFAULT_GUARD, Guard, UnionFind, bits, canon_key, canonical, fmt, natural_key
from .errors import (
    AssociativityViolation,
    CategoryError,
    CompositeTypeError,
    FunctorError,
    IdentityViolation,
    InputError,
    MissingComposite,
    PosetError,
    ProfunctorError,
)

__all__ = [
    "FinSet",
    "FinCategory",
    "FinFunctor",
    "Poset",
    "FinPoset",
    "SubsetPoset",
    "MonotoneMap",
    "Profunctor",
    "Bifunctor",
    "ProfunctorMorphism",
    "validate_category",
    "poset_as_category",
    "underlying_poset",
    "builtin",
    "chain_poset",
    "category_from_function",
    "category_to_text",
    "check_category",
    "BUILTIN_NAMES",
    "hom_profunctor",
    "compose_profunctors",
    "composite_class",
    "left_unitor",
    "right_unitor",
    "associator",
]


class FinSet:
    """A labelled finite set whose elements are kept in canonical order."""

    __slots__ = ("label", "elements", "_index")

    def __init__(self, label: str, elements: Iterable[Hashable]):
        elems = canonical(elements)
        index = {}
        for i, e in enumerate(elems):
            if e in index:
                raise InputError(f"duplicate element {fmt(e)} in {label}")
            index[e] = i
        self.label = label
        self.elements = elems
        self._index = index

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __contains__(self, e):
        return e in self._index

    def index(self, e) -> int:
        return self._index[e]

    def __repr__(self):
        return f"FinSet({self.label!r}, {len(self)} elements)"


# ---------------------------------------------------------------------------
# categories


class FinCategory:
    """An explicit finite category.

    Use :func:`validate_category` (or the builders in this module) to make
    one; the constructor trusts its arguments.
    """

    def __init__(self, objects, arrows, src, tgt, identities, comp, name=""):
        self.name = name
        self.objects: tuple[str, ...] = tuple(objects)
        self.arrows: tuple[str, ...] = tuple(arrows)
        self.src: tuple[int, ...] = tuple(src)
        self.tgt: tuple[int, ...] = tuple(tgt)
        self.identities: tuple[int, ...] = tuple(identities)
        self._comp: dict[tuple[int, int], int] = comp
        self._obj_index = {o: i for i, o in enumerate(self.objects)}
        self._arrow_index = {a: i for i, a in enumerate(self.arrows)}
        self._is_identity = [False] * len(self.arrows)
        for f in self.identities:
            self._is_identity[f] = True
        n = len(self.objects)
        self._hom: dict[tuple[int, int], tuple[int, ...]] = {}
        buckets: dict[tuple[int, int], list[int]] = {}
        for f in range(len(self.arrows)):
            buckets.setdefault((self.src[f], self.tgt[f]), []).append(f)
        for a in range(n):
            for b in range(n):
                self._hom[a, b] = tuple(buckets.get((a, b), ()))
        self.out_of = tuple(tuple(f for f in range(len(self.arrows)) if self.src[f] == a) for a in range(n))
        self.into = tuple(tuple(f for f in range(len(self.arrows)) if self.tgt[f] == a) for a in range(n))

    # -- lookups
    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def obj(self, name: str) -> int:
        try:
            return self._obj_index[name]
        except KeyError:
            raise InputError(f"unknown object {name!r}") from None

    def arrow(self, name: str) -> int:
        try:
            return self._arrow_index[name]
        except KeyError:
            raise InputError(f"unknown arrow {name!r}") from None

    def hom(self, a: int, b: int) -> tuple[int, ...]:
        return self._hom[a, b]

    def identity(self, a: int) -> int:
        return self.identities[a]

    def is_identity(self, f: int) -> bool:
        return self._is_identity[f]

    def compose(self, g: int, f: int) -> int:
        """``g . f`` (first ``f``, then ``g``)."""
        return self._comp[g, f]

    def composable_pairs(self):
        for f in range(self.n_arrows):
            for g in self.out_of[self.tgt[f]]:
                yield g, f

    def op(self) -> "FinCategory":
        comp = {(f, g): h for (g, f), h in self._comp.items()}
        return FinCategory(self.objects, self.arrows, self.tgt, self.src, self.identities, comp,
                           name=f"{self.name}^op" if self.name else "")

    def is_thin(self) -> bool:
        return all(len(h) <= 1 for h in self._hom.values())

    def is_skeletal(self) -> bool:
        n = self.n_objects
        return all(not (self.hom(a, b) and self.hom(b, a)) for a in range(n) for b in range(n) if a != b)

    def fingerprint(self) -> str:
        """Hash of the structure: sorted declaration lines, name excluded."""
        body = sorted(category_to_text(self).splitlines()[1:])
        return hashlib.sha256("\n".join(body).encode()).hexdigest()[:16]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinCategory{label}: {self.n_objects} objects, {self.n_arrows} arrows>"


def _identity_name(obj: str) -> str:
    return f"id_{obj}"


def validate_category(objects: Sequence[str], arrows: Sequence[tuple[str, str, str]],
                      compositions: Iterable[tuple[str, str, str]] = (),
                      name: str = "", guard: Guard | None = None) -> FinCategory:
    """Check raw tables and return a :class:`FinCategory`.

    ``arrows`` lists non-identity arrows ``(id, src, tgt)``; identities are
    synthesized as ``id_<object>``. ``compositions`` holds triples
    ``(g, f, h)`` meaning ``g . f = h``; pairs involving an identity may be
    omitted. Raises :class:`MissingComposite`, :class:`IdentityViolation`,
    :class:`AssociativityViolation` or :class:`CompositeTypeError`.
    """
    guard = guard or DEFAULT_GUARD
    guard.check("objects", len(objects))
    guard.check("arrows", len(arrows) + len(objects))
    if len(set(objects)) != len(objects):
        raise CategoryError("duplicate object id")
    objs = sorted(objects, key=natural_key)
    oidx = {o: i for i, o in enumerate(objs)}

    raw: dict[str, tuple[int, int]] = {}
    for o in objs:
        raw[_identity_name(o)] = (oidx[o], oidx[o])
    for a, s, t in arrows:
        if a in raw:
            raise CategoryError(f"duplicate arrow id {a!r}")
        if s not in oidx or t not in oidx:
            raise CategoryError(f"arrow {a!r} has unknown endpoint")
        raw[a] = (oidx[s], oidx[t])
    names = sorted(raw, key=natural_key)
    aidx = {a: i for i, a in enumerate(names)}
    src = [raw[a][0] for a in names]
    tgt = [raw[a][1] for a in names]
    ids = [aidx[_identity_name(o)] for o in objs]
    is_id = set(ids)

    comp: dict[tuple[int, int], int] = {}
    for g, f, h in compositions:
        for x in (g, f, h):
            if x not in aidx:
                raise CategoryError(f"unknown arrow {x!r} in composition {g} . {f} = {h}")
        gi, fi, hi = aidx[g], aidx[f], aidx[h]
        if tgt[fi] != src[gi]:
            raise CompositeTypeError(f"{g} . {f}: target of {f} is not the source of {g}")
        if src[hi] != src[fi] or tgt[hi] != tgt[gi]:
            raise CompositeTypeError(f"{g} . {f} = {h}: {h} has the wrong source or target")
        if (gi, fi) in comp and comp[gi, fi] != hi:
            raise CategoryError(f"conflicting entries for {g} . {f}")
        if gi in is_id and hi != fi or fi in is_id and hi != gi:
            raise IdentityViolation(f"{g} . {f} = {h} contradicts the identity law")
        comp[gi, fi] = hi
    for f in range(len(names)):
        comp.setdefault((ids[tgt[f]], f), f)
        comp.setdefault((f, ids[src[f]]), f)
    C = FinCategory(objs, names, src, tgt, ids, comp, name=name)
    check_category(C)
    return C


def check_category(C: FinCategory) -> None:
    """Exhaustive check of totality, typing, identity and associativity."""
    comp = C._comp
    for g, f in C.composable_pairs():
        h = comp.get((g, f))
        if h is None:
            raise MissingComposite(f"no composite for {C.arrows[g]} . {C.arrows[f]}")
        if C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            raise CompositeTypeError(f"{C.arrows[g]} . {C.arrows[f]} has the wrong type")
    for (g, f) in comp:
        if C.tgt[f] != C.src[g]:
            raise CompositeTypeError(f"composite given for non-composable pair {C.arrows[g]} . {C.arrows[f]}")
    for f in range(C.n_arrows):
        if comp[C.identities[C.tgt[f]], f] != f or comp[f, C.identities[C.src[f]]] != f:
            raise IdentityViolation(f"identity law fails at {C.arrows[f]}")
    for f in range(C.n_arrows):
        for g in C.out_of[C.tgt[f]]:
            gf = comp[g, f]
            for h in C.out_of[C.tgt[g]]:
                if comp[h, gf] != comp[comp[h, g], f]:
                    raise AssociativityViolation((C.arrows[h], C.arrows[g], C.arrows[f]))


def category_from_function(objects: Sequence[str], arrows: Sequence[tuple[str, str, str]],
                           compose: Callable[[str, str], str], name: str = "",
                           guard: Guard | None = None, check: bool = True) -> FinCategory:
    """Build a category whose arrow list includes the identities ``id_<o>``.

    ``compose(g, f)`` returns the name of ``g . f``.
    """
    guard = guard or DEFAULT_GUARD
    guard.check("objects", len(objects))
    guard.check("arrows", len(arrows))
    objs = sorted(objects, key=natural_key)
    oidx = {o: i for i, o in enumerate(objs)}
    names = sorted((a for a, _, _ in arrows), key=natural_key)
    if len(set(names)) != len(names):
        raise CategoryError("duplicate arrow id")
    aidx = {a: i for i, a in enumerate(names)}
    ends = {a: (oidx[s], oidx[t]) for a, s, t in arrows}
    src = [ends[a][0] for a in names]
    tgt = [ends[a][1] for a in names]
    try:
        ids = [aidx[_identity_name(o)] for o in objs]
    except KeyError as e:
        raise CategoryError(f"missing identity {e.args[0]}") from None
    out_of: dict[int, list[int]] = {}
    for f in range(len(names)):
        out_of.setdefault(src[f], []).append(f)
    comp = {}
    for f in range(len(names)):
        for g in out_of.get(tgt[f], ()):
            comp[g, f] = aidx[compose(names[g], names[f])]
    C = FinCategory(objs, names, src, tgt, ids, comp, name=name)
    if check:
        check_category(C)
    return C


def category_to_text(C: FinCategory) -> str:
    """Serialize to the line-based category format."""
    lines = [f"# category {C.name}".rstrip()]
    for o in C.objects:
        lines.append(f"object {o}")
    for f, a in enumerate(C.arrows):
        if not C.is_identity(f):
            lines.append(f"arrow {a} : {C.objects[C.src[f]]} -> {C.objects[C.tgt[f]]}")
    for g, f in C.composable_pairs():
        if C.is_identity(g) or C.is_identity(f):
            continue
        lines.append(f"compose {C.arrows[g]} . {C.arrows[f]} = {C.arrows[C.compose(g, f)]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# functors


class FinFunctor:
    def __init__(self, dom: FinCategory, cod: FinCategory, obj_map: Sequence[int],
                 arrow_map: Sequence[int], check: bool = True):
        self.dom = dom
        self.cod = cod
        self.obj_map = tuple(obj_map)
        self.arrow_map = tuple(arrow_map)
        if check:
            self.validate()

    def validate(self) -> None:
        D, E = self.dom, self.cod
        if len(self.obj_map) != D.n_objects or len(self.arrow_map) != D.n_arrows:
            raise FunctorError("object or arrow map has the wrong length")
        for f in range(D.n_arrows):
            Ff = self.arrow_map[f]
            if E.src[Ff] != self.obj_map[D.src[f]] or E.tgt[Ff] != self.obj_map[D.tgt[f]]:
                raise FunctorError(f"{D.arrows[f]} is sent to an arrow of the wrong type")
        for a in range(D.n_objects):
            if self.arrow_map[D.identity(a)] != E.identity(self.obj_map[a]):
                raise FunctorError(f"identity of {D.objects[a]} is not preserved")
        for g, f in D.composable_pairs():
            if self.arrow_map[D.compose(g, f)] != E.compose(self.arrow_map[g], self.arrow_map[f]):
                raise FunctorError(f"composite {D.arrows[g]} . {D.arrows[f]} is not preserved")

    def __call__(self, a: int) -> int:
        return self.obj_map[a]

    def on_arrow(self, f: int) -> int:
        return self.arrow_map[f]

    def fully_faithful_failure(self):
        """First object pair on which the hom map is not bijective, else None."""
        D, E = self.dom, self.cod
        for a in range(D.n_objects):
            for b in range(D.n_objects):
                image = [self.arrow_map[f] for f in D.hom(a, b)]
                target = E.hom(self.obj_map[a], self.obj_map[b])
                if len(set(image)) != len(image) or set(image) != set(target):
                    return D.objects[a], D.objects[b]
        return None

    def is_fully_faithful(self) -> bool:
        return self.fully_faithful_failure() is None

    @classmethod
    def identity(cls, C: FinCategory) -> "FinFunctor":
        return cls(C, C, range(C.n_objects), range(C.n_arrows), check=False)

    @classmethod
    def full_inclusion(cls, E: FinCategory, objects: Iterable[str | int]) -> "FinFunctor":
        """Inclusion of the full subcategory of ``E`` on ``objects``."""
        keep = sorted({E.obj(o) if isinstance(o, str) else o for o in objects})
        names = [E.objects[o] for o in keep]
        arrows = [(E.arrows[f], E.objects[a], E.objects[b])
                  for a in keep for b in keep for f in E.hom(a, b)]
        G = category_from_function(names, arrows,
                                   lambda g, f: E.arrows[E.compose(E.arrow(g), E.arrow(f))],
                                   name=f"{E.name}|{','.join(names)}", check=False)
        return cls(G, E, [E.obj(o) for o in G.objects], [E.arrow(a) for a in G.arrows])


# ---------------------------------------------------------------------------
# posets


class Poset:
    """Interface shared by explicit posets and lazily ordered subset families."""

    labels: tuple

    def __len__(self) -> int:
        return len(self.labels)

    def leq(self, i: int, j: int) -> bool:  # pragma: no cover - abstract
        raise NotImplementedError

    def index(self, label) -> int:
        return self._label_index[label]

    def label(self, i: int):
        return self.labels[i]

    def minimum(self, candidates: Sequence[int]):
        """The least element of ``candidates`` if there is one, else None."""
        if not candidates:
            return None
        m = candidates[0]
        for c in candidates[1:]:
            if self.leq(c, m):
                m = c
        if all(self.leq(m, c) for c in candidates):
            return m
        return None

    def maximum(self, candidates: Sequence[int]):
        if not candidates:
            return None
        m = candidates[0]
        for c in candidates[1:]:
            if self.leq(m, c):
                m = c
        if all(self.leq(c, m) for c in candidates):
            return m
        return None

    def materialize(self) -> "FinPoset":
        n = len(self)
        down = [sum(1 << i for i in range(n) if self.leq(i, j)) for j in range(n)]
        return FinPoset._from_masks(self.labels, down)


class FinPoset(Poset):
    """A finite poset stored as down-set bitmasks over canonically ordered elements."""

    def __init__(self, elements: Iterable[Hashable], leq: Iterable[tuple[Hashable, Hashable]],
                 close: bool = False):
        labels = canonical(elements)
        idx = {e: i for i, e in enumerate(labels)}
        if len(idx) != len(labels):
            raise PosetError("duplicate poset element")
        n = len(labels)
        down = [0] * n
        for a, b in leq:
            if a not in idx or b not in idx:
                raise PosetError(f"unknown element in relation ({fmt(a)}, {fmt(b)})")
            down[idx[b]] |= 1 << idx[a]
        if close:
            for i in range(n):
                down[i] |= 1 << i
            changed = True
            while changed:
                changed = False
                for j in range(n):
                    new = down[j]
                    for i in bits(down[j]):
                        new |= down[i]
                    if new != down[j]:
                        down[j] = new
                        changed = True
        self._init(labels, down)
        self._check()

    @classmethod
    def _from_masks(cls, labels, down) -> "FinPoset":
        self = cls.__new__(cls)
        self._init(tuple(labels), list(down))
        return self

    @classmethod
    def from_relation(cls, elements, pairs) -> "FinPoset":
        """Reflexive-transitive closure of ``pairs``; antisymmetry is checked."""
        return cls(elements, pairs, close=True)

    def _init(self, labels, down):
        self.labels = tuple(labels)
        self._label_index = {e: i for i, e in enumerate(self.labels)}
        self.down = tuple(down)
        n = len(self.labels)
        up = [0] * n
        for j in range(n):
            for i in bits(self.down[j]):
                up[i] |= 1 << j
        self.up = tuple(up)
        self.full = (1 << n) - 1

    def _check(self):
        n = len(self.labels)
        for i in range(n):
            if not self.down[i] >> i & 1:
                raise PosetError(f"relation is not reflexive at {fmt(self.labels[i])}")
        for j in range(n):
            for i in bits(self.down[j]):
                if i != j and self.down[i] >> j & 1:
                    raise PosetError(
                        f"relation is not antisymmetric: {fmt(self.labels[i])}, {fmt(self.labels[j])}")
                if self.down[i] & ~self.down[j]:
                    raise PosetError(f"relation is not transitive below {fmt(self.labels[j])}")

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down[j] >> i & 1)

    def pairs(self):
        return [(self.labels[i], self.labels[j]) for j in range(len(self)) for i in bits(self.down[j])]

    def upper_bounds(self, mask: int) -> int:
        out = self.full
        for i in bits(mask):
            out &= self.up[i]
        return out

    def lower_bounds(self, mask: int) -> int:
        out = self.full
        for i in bits(mask):
            out &= self.down[i]
        return out

    def join(self, mask: int):
        """Least upper bound of the subset ``mask`` (None if absent)."""
        return self.minimum(list(bits(self.upper_bounds(mask))))

    def meet(self, mask: int):
        return self.maximum(list(bits(self.lower_bounds(mask))))

    def top(self):
        return self.meet(0)

    def bottom(self):
        return self.join(0)

    def is_down_closed(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in bits(mask))

    def is_up_closed(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def opposite(self) -> "FinPoset":
        return FinPoset._from_masks(self.labels, self.up)

    def restrict(self, mask: int) -> "FinPoset":
        keep = list(bits(mask))
        pairs = [(self.labels[i], self.labels[j]) for i in keep for j in keep if self.leq(i, j)]
        return FinPoset([self.labels[i] for i in keep], pairs)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(i, j)`` with ``i`` covered by ``j``."""
        out = []
        for j in range(len(self)):
            below = self.down[j] & ~(1 << j)
            for i in bits(below):
                if not any(k != i and self.leq(i, k) for k in bits(below)):
                    out.append((i, j))
        return out

    def mask_of(self, labels) -> int:
        return sum(1 << self._label_index[e] for e in labels)

    def labels_of(self, mask: int) -> tuple:
        return tuple(self.labels[i] for i in bits(mask))

    def __eq__(self, other):
        return isinstance(other, FinPoset) and self.labels == other.labels and self.down == other.down

    def __hash__(self):
        return hash((self.labels, self.down))

    def __repr__(self):
        return f"<FinPoset {len(self)} elements>"


class SubsetPoset(Poset):
    """A family of subsets of ``base`` (as bitmasks) ordered by inclusion.

    Labels are tuples of base labels; ``leq`` is a bit test, so large
    families (down-set lattices, frames of opens) never materialize their
    order relation.
    """

    def __init__(self, base: FinPoset, masks: Sequence[int]):
        order = sorted(set(masks), key=lambda m: (bin(m).count("1"), canon_key(base.labels_of(m))))
        self.base = base
        self.masks = tuple(order)
        self._mask_index = {m: i for i, m in enumerate(self.masks)}
        self.labels = tuple(base.labels_of(m) for m in self.masks)
        self._label_index = {e: i for i, e in enumerate(self.labels)}

    def leq(self, i: int, j: int) -> bool:
        return self.masks[i] & ~self.masks[j] == 0

    def index_of_mask(self, mask: int) -> int:
        return self._mask_index[mask]

    def has_mask(self, mask: int) -> bool:
        return mask in self._mask_index


class MonotoneMap:
    def __init__(self, dom: Poset, cod: Poset, mapping: Sequence[int], check: bool = True):
        self.dom = dom
        self.cod = cod
        self.mapping = tuple(mapping)
        if len(self.mapping) != len(dom):
            raise PosetError("mapping has the wrong length")
        if check:
            bad = self.monotonicity_failure()
            if bad is not None:
                raise PosetError(f"map is not monotone at {fmt(dom.labels[bad[0]])} <= {fmt(dom.labels[bad[1]])}")

    @classmethod
    def from_labels(cls, dom: Poset, cod: Poset, mapping: dict) -> "MonotoneMap":
        return cls(dom, cod, [cod.index(mapping[x]) for x in dom.labels])

    @classmethod
    def identity(cls, P: Poset) -> "MonotoneMap":
        return cls(P, P, range(len(P)), check=False)

    def monotonicity_failure(self):
        d, c, m = self.dom, self.cod, self.mapping
        for i in range(len(d)):
            for j in range(len(d)):
                if d.leq(i, j) and not c.leq(m[i], m[j]):
                    return i, j
        return None

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def then(self, g: "MonotoneMap") -> "MonotoneMap":
        """``g . self``."""
        return MonotoneMap(self.dom, g.cod, [g(self(i)) for i in range(len(self.dom))], check=False)

    def is_order_embedding(self) -> bool:
        d = self.dom
        return all(d.leq(i, j) == self.cod.leq(self(i), self(j)) for i in range(len(d)) for j in range(len(d)))

    def as_dict(self) -> dict:
        return {self.dom.labels[i]: self.cod.labels[self(i)] for i in range(len(self.dom))}

    def __eq__(self, other):
        return isinstance(other, MonotoneMap) and self.mapping == other.mapping and \
            self.dom.labels == other.dom.labels and self.cod.labels == other.cod.labels

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return "MonotoneMap(" + ", ".join(f"{fmt(k)}->{fmt(v)}" for k, v in self.as_dict().items()) + ")"


def poset_as_category(P: FinPoset, name: str = "") -> FinCategory:
    """One arrow ``x<=y`` for each ``x <= y``; composition is forced."""
    obj = [fmt(x) for x in P.labels]
    if len(set(obj)) != len(obj):
        raise PosetError("element labels collide when rendered as object ids")

    def arrow_name(i, j):
        return _identity_name(obj[i]) if i == j else f"{obj[i]}<={obj[j]}"

    ends = {}
    arrows = []
    for j in range(len(P)):
        for i in bits(P.down[j]):
            a = arrow_name(i, j)
            ends[a] = (i, j)
            arrows.append((a, obj[i], obj[j]))

    def compose(g, f):
        return arrow_name(ends[f][0], ends[g][1])

    return category_from_function(obj, arrows, compose, name=name or "poset", check=False)


def underlying_poset(C: FinCategory) -> FinPoset:
    """The poset of a thin skeletal category."""
    if not C.is_thin() or not C.is_skeletal():
        raise CategoryError("category is not thin and skeletal")
    return FinPoset(C.objects, [(C.objects[C.src[f]], C.objects[C.tgt[f]]) for f in range(C.n_arrows)])


# ---------------------------------------------------------------------------
# built-in categories


def chain_poset(n: int) -> FinPoset:
    """The chain ``0 < 1 < ... < n`` (n+1 elements)."""
    labels = [str(i) for i in range(n + 1)]
    return FinPoset(labels, [(labels[i], labels[j]) for i in range(n + 1) for j in range(i, n + 1)])


def _simplex(n: int, guard: Guard) -> FinCategory:
    total = sum(_binom(j + k + 1, j + 1) for j in range(n + 1) for k in range(n + 1))
    guard.check("arrows", total)
    objects = [str(i) for i in range(n + 1)]
    sep = "," if n >= 10 else ""
    table: dict[str, tuple[int, int, tuple[int, ...]]] = {}
    by_value: dict[tuple[int, int, tuple[int, ...]], str] = {}
    for j in range(n + 1):
        for k in range(n + 1):
            for vals in itertools.combinations_with_replacement(range(k + 1), j + 1):
                if j == k and vals == tuple(range(j + 1)):
                    name = _identity_name(str(j))
                else:
                    name = f"{j}>{k}:" + sep.join(map(str, vals))
                table[name] = (j, k, vals)
                by_value[j, k, vals] = name

    def compose(g, f):
        j, _, fv = table[f]
        _, l, gv = table[g]
        return by_value[j, l, tuple(gv[v] for v in fv)]

    arrows = [(a, str(j), str(k)) for a, (j, k, _) in table.items()]
    return category_from_function(objects, arrows, compose, name=f"simplex({n})", guard=guard)


def _globe(n: int, guard: Guard) -> FinCategory:
    # Arrow m -> l in normal form: down by reflexivities to p, then up by
    # cofaces starting with s or t (e is None when p == l).
    objects = [str(i) for i in range(n + 1)]
    table: dict[str, tuple[int, int, int, str | None]] = {}
    by_value = {}
    for m in range(n + 1):
        for l in range(n + 1):
            for p in range(min(m, l) + 1):
                for e in ((None,) if p == l else ("s", "t")):
                    if m == l == p:
                        name = _identity_name(str(m))
                    else:
                        name = f"{m}>{l}:{p}{e or ''}"
                    table[name] = (m, l, p, e)
                    by_value[m, l, p, e] = name
    guard.check("arrows", len(table))

    def compose(g, f):
        m, _, p, e = table[f]
        _, l, q, e2 = table[g]
        r = min(p, q)
        lead = e if q > p else e2
        return by_value[m, l, r, None if r == l else lead]

    arrows = [(a, str(m), str(l)) for a, (m, l, _, _) in table.items()]
    return category_from_function(objects, arrows, compose, name=f"globe({n})", guard=guard)


def _monoid_table(n: int, guard: Guard) -> FinCategory:
    if n < 1:
        raise InputError("monoid-table needs n >= 1 (multiplicative monoid of Z/n)")
    guard.check("arrows", n)

    def name(a):
        return _identity_name("*") if a == 1 % n else f"m{a}"

    arrows = [(name(a), "*", "*") for a in range(n)]
    value = {name(a): a for a in range(n)}
    return category_from_function(["*"], arrows, lambda g, f: name(value[g] * value[f] % n),
                                  name=f"monoid-table({n})", guard=guard)


def _discrete(n: int, guard: Guard) -> FinCategory:
    return validate_category([str(i) for i in range(n)], [], name=f"discrete({n})", guard=guard)


BUILTIN_NAMES = ("simplex", "globe", "chain", "monoid-table", "discrete", "terminal", "walking-arrow")


def builtin(name: str, n: int = 0, guard: Guard | None = None) -> FinCategory:
    """Built-in categories.

    ``simplex n``: truncated simplex category on ``[0..n]``; ``globe n``:
    reflexive globe category on ``0..n``; ``chain n``: the chain with ``n+1``
    elements; ``monoid-table n``: multiplicative monoid of ``Z/n``;
    ``discrete n``: ``n`` objects; ``terminal`` and ``walking-arrow`` ignore ``n``.
    """
    guard = guard or DEFAULT_GUARD
    if n < 0:
        raise InputError("n must be >= 0")
    guard.check("objects", n + 1)
    if name == "simplex":
        return _simplex(n, guard)
    if name == "globe":
        return _globe(n, guard)
    if name == "chain":
        guard.check("arrows", (n + 1) * (n + 2) // 2)
        return poset_as_category(chain_poset(n), name=f"chain({n})")
    if name == "monoid-table":
        return _monoid_table(n, guard)
    if name == "discrete":
        return _discrete(n, guard)
    if name == "terminal":
        return validate_category(["*"], [], name="terminal")
    if name == "walking-arrow":
        return validate_category(["c0", "c1"], [("f", "c0", "c1")], name="walking-arrow")
    raise InputError(f"unknown builtin {name!r}; choose from {', '.join(BUILTIN_NAMES)}")


def _binom(a: int, b: int) -> int:
    from math import comb
    return comb(a, b)


# ---------------------------------------------------------------------------
# profunctors


class Profunctor:
    """A functor ``dom^op x cod -> FinSet``.

    ``lact(f, d, x)`` applies ``f: c' -> c`` of ``dom`` to ``x in M(c, d)``;
    ``ract(c, g, x)`` applies ``g: d -> d'`` of ``cod`` to ``x in M(c, d)``.
    """

    def __init__(self, dom: FinCategory, cod: FinCategory, values: dict, lact, ract,
                 check: bool = True, name: str = ""):
        self.dom = dom
        self.cod = cod
        self.name = name
        self.values = {(c, d): canonical(values.get((c, d), ()))
                       for c in range(dom.n_objects) for d in range(cod.n_objects)}
        self._left = {}
        for f in range(dom.n_arrows):
            for d in range(cod.n_objects):
                self._left[f, d] = {x: lact(f, d, x) for x in self.values[dom.tgt[f], d]}
        self._right = {}
        for c in range(dom.n_objects):
            for g in range(cod.n_arrows):
                self._right[c, g] = {x: ract(c, g, x) for x in self.values[c, cod.src[g]]}
        if check:
            self.validate()

    def __call__(self, c: int, d: int) -> tuple:
        return self.values[c, d]

    def lact(self, f: int, d: int, x):
        return self._left[f, d][x]

    def ract(self, c: int, g: int, x):
        return self._right[c, g][x]

    def validate(self) -> None:
        C, D = self.dom, self.cod
        for (f, d), table in self._left.items():
            target = set(self.values[C.src[f], d])
            if not all(y in target for y in table.values()):
                raise ProfunctorError(f"left action of {C.arrows[f]} leaves its value set")
        for (c, g), table in self._right.items():
            target = set(self.values[c, D.tgt[g]])
            if not all(y in target for y in table.values()):
                raise ProfunctorError(f"right action of {D.arrows[g]} leaves its value set")
        for a in range(C.n_objects):
            for d in range(D.n_objects):
                if any(self.lact(C.identity(a), d, x) != x for x in self.values[a, d]):
                    raise ProfunctorError("identity of the domain does not act trivially")
        for c in range(C.n_objects):
            for b in range(D.n_objects):
                if any(self.ract(c, D.identity(b), x) != x for x in self.values[c, b]):
                    raise ProfunctorError("identity of the codomain does not act trivially")
        for g, f in C.composable_pairs():
            gf = C.compose(g, f)
            for d in range(D.n_objects):
                for x in self.values[C.tgt[g], d]:
                    if self.lact(gf, d, x) != self.lact(f, d, self.lact(g, d, x)):
                        raise ProfunctorError("left action does not respect composition")
        for g, f in D.composable_pairs():
            gf = D.compose(g, f)
            for c in range(C.n_objects):
                for x in self.values[c, D.src[f]]:
                    if self.ract(c, gf, x) != self.ract(c, g, self.ract(c, f, x)):
                        raise ProfunctorError("right action does not respect composition")
        for f in range(C.n_arrows):
            for g in range(D.n_arrows):
                for x in self.values[C.tgt[f], D.src[g]]:
                    if self.lact(f, D.tgt[g], self.ract(C.tgt[f], g, x)) != \
                            self.ract(C.src[f], g, self.lact(f, D.src[g], x)):
                        raise ProfunctorError("left and right actions do not commute")

    def is_empty(self) -> bool:
        return not any(self.values.values())

    def __repr__(self):
        return f"<Profunctor {self.name or ''} {self.dom.name} -|-> {self.cod.name}>"


class Bifunctor(Profunctor):
    """A profunctor ``C -|-> C``, the integrand of a coend or end."""

    def __init__(self, base: FinCategory, values, lact, ract, check: bool = True, name: str = ""):
        super().__init__(base, base, values, lact, ract, check=check, name=name)

    @property
    def base(self) -> FinCategory:
        return self.dom


@dataclass
class ProfunctorMorphism:
    """Components ``(c, d) -> {x: y}`` of a map of profunctors ``src -> tgt``."""

    src: Profunctor
    tgt: Profunctor
    components: dict

    def __call__(self, c, d, x):
        return self.components[c, d][x]

    def naturality_failure(self):
        M, N = self.src, self.tgt
        C, D = M.dom, M.cod
        for (c, d), table in self.components.items():
            if set(table) != set(M(c, d)) or not set(table.values()) <= set(N(c, d)):
                return ("component", C.objects[c], D.objects[d])
        for f in range(C.n_arrows):
            for d in range(D.n_objects):
                for x in M(C.tgt[f], d):
                    if self(C.src[f], d, M.lact(f, d, x)) != N.lact(f, d, self(C.tgt[f], d, x)):
                        return ("left", C.arrows[f], D.objects[d], x)
        for c in range(C.n_objects):
            for g in range(D.n_arrows):
                for x in M(c, D.src[g]):
                    if self(c, D.tgt[g], M.ract(c, g, x)) != N.ract(c, g, self(c, D.src[g], x)):
                        return ("right", C.objects[c], D.arrows[g], x)
        return None

    def is_natural(self) -> bool:
        return self.naturality_failure() is None

    def is_iso(self) -> bool:
        if not self.is_natural():
            return False
        return all(len(set(t.values())) == len(t) == len(self.tgt(c, d))
                   for (c, d), t in self.components.items())


def hom_profunctor(C: FinCategory) -> Profunctor:
    return Profunctor(C, C, {(a, b): C.hom(a, b) for a in range(C.n_objects) for b in range(C.n_objects)},
                      lambda f, d, x: C.compose(x, f), lambda c, g, x: C.compose(g, x),
                      check=False, name="Hom")


def compose_profunctors(M: Profunctor, N: Profunctor) -> Profunctor:
    """``N . M`` for ``M: C -|-> D`` and ``N: D -|-> E``, as a coend over ``D``.

    Elements are canonical class representatives ``(d, n, m)``; the raw
    triple-to-class table is kept on the result (see :func:`composite_class`).
    """
    if M.cod is not N.dom:
        raise ProfunctorError("codomain of the first profunctor is not the domain of the second")
    C, D, E = M.dom, M.cod, N.cod
    values, classes = {}, {}
    for c in range(C.n_objects):
        for e in range(E.n_objects):
            raw = [(d, n, m) for d in range(D.n_objects) for n in N(d, e) for m in M(c, d)]
            pos = {t: i for i, t in enumerate(raw)}
            uf = UnionFind(len(raw))
            for g in range(D.n_arrows):
                d, d2 = D.src[g], D.tgt[g]
                for n in N(d2, e):
                    n_g = N.lact(g, e, n)
                    for m in M(c, d):
                        uf.union(pos[d, n_g, m], pos[d2, n, M.ract(c, g, m)])
            rep = {t: raw[uf.find(i)] for i, t in enumerate(raw)}
            values[c, e] = set(rep.values())
            classes[c, e] = rep

    def lact(f, e, x):
        d, n, m = x
        return classes[C.src[f], e][d, n, M.lact(f, d, m)]

    def ract(c, h, x):
        d, n, m = x
        return classes[c, E.tgt[h]][d, N.ract(d, h, n), m]

    P = Profunctor(C, E, values, lact, ract, check=False, name=f"({N.name}.{M.name})")
    P.raw_classes = classes
    return P


def composite_class(P: Profunctor, c: int, e: int, d: int, n, m):
    """Class of the raw triple ``(d, n, m)`` in a composite built above."""
    return P.raw_classes[c, e][d, n, m]


def left_unitor(M: Profunctor, HM: Profunctor | None = None) -> ProfunctorMorphism:
    """Canonical ``Hom_D . M -> M``, ``(d, g, m) |-> g.m``."""
    HM = HM or compose_profunctors(M, hom_profunctor(M.cod))
    comps = {(c, e): {x: M.ract(c, x[1], x[2]) for x in HM(c, e)} for (c, e) in HM.values}
    return ProfunctorMorphism(HM, M, comps)


def right_unitor(M: Profunctor, MH: Profunctor | None = None) -> ProfunctorMorphism:
    """Canonical ``M . Hom_C -> M``, ``(c', m, f) |-> m.f``."""
    MH = MH or compose_profunctors(hom_profunctor(M.dom), M)
    comps = {(c, e): {x: M.lact(x[2], e, x[1]) for x in MH(c, e)} for (c, e) in MH.values}
    return ProfunctorMorphism(MH, M, comps)


def associator(M: Profunctor, N: Profunctor, P: Profunctor) -> ProfunctorMorphism:
    """Canonical ``P.(N.M) -> (P.N).M`` between the two bracketings."""
    left = compose_profunctors(compose_profunctors(M, N), P)
    PN = compose_profunctors(N, P)
    right = compose_profunctors(M, PN)
    comps = {}
    for (c, f), elems in left.values.items():
        table = {}
        for e, p, (d, n, m) in elems:
            pn = composite_class(PN, d, f, e, p, n)
            table[e, p, (d, n, m)] = composite_class(right, c, f, d, pn, m)
        comps[c, f] = table
    return ProfunctorMorphism(left, right, comps)
