"""Set-valued functors on finite categories, natural transformations,
coends, ends, flatness and the functor induced by a profunctor."""

from __future__ import annotations

from math import prod
from typing import Callable

from ._util import DEFAULT_GUARD, Guard, UnionFind, canon_key, canonical, fmt
from .core import Bifunctor, FinCategory, FinSet, Profunctor, category_from_function
from .errors import PresheafError


class SetFunctor:
    """Common machinery for presheaves (contravariant) and copresheaves.

    ``values`` maps object ids to element iterables; ``maps`` maps arrow ids
    to ``{x: y}`` dicts or is a callable ``act(f, x)``. For a presheaf and
    ``f: a -> b`` the map goes ``F(b) -> F(a)``. Identity maps may be omitted.
    """

    contravariant = True

    def __init__(self, base: FinCategory, values: dict, maps: dict | Callable = None,
                 check: bool = True, name: str = ""):
        self.base = base
        self.name = name
        self.values: tuple[tuple, ...] = tuple(canonical(values.get(c, ())) for c in range(base.n_objects))
        self._index = tuple({x: i for i, x in enumerate(v)} for v in self.values)
        for c, v in enumerate(self.values):
            if len(self._index[c]) != len(v):
                raise PresheafError(f"duplicate element at {base.objects[c]}")
        tables = []
        for f in range(base.n_arrows):
            src_obj = self.arrow_input(f)
            if callable(maps):
                table = {x: maps(f, x) for x in self.values[src_obj]}
            elif maps is not None and f in maps:
                table = dict(maps[f])
            elif base.is_identity(f):
                table = {x: x for x in self.values[src_obj]}
            else:
                raise PresheafError(f"no map given for arrow {base.arrows[f]}")
            tables.append(table)
        self._maps = tuple(tables)
        if check:
            self.validate()

    # orientation helpers
    def arrow_input(self, f: int) -> int:
        """Object whose value set the action of ``f`` starts from."""
        return self.base.tgt[f] if self.contravariant else self.base.src[f]

    def arrow_output(self, f: int) -> int:
        return self.base.src[f] if self.contravariant else self.base.tgt[f]

    def __call__(self, c: int) -> tuple:
        return self.values[c]

    def act(self, f: int, x):
        return self._maps[f][x]

    def index(self, c: int, x) -> int:
        return self._index[c][x]

    def size(self) -> int:
        return sum(len(v) for v in self.values)

    def validate(self) -> None:
        C = self.base
        for f, table in enumerate(self._maps):
            dom, cod = self.arrow_input(f), self.arrow_output(f)
            if set(table) != set(self.values[dom]):
                raise PresheafError(f"map for {C.arrows[f]} is not defined on the whole value set")
            if not all(y in self._index[cod] for y in table.values()):
                raise PresheafError(f"map for {C.arrows[f]} leaves its codomain")
        for a in range(C.n_objects):
            if any(self.act(C.identity(a), x) != x for x in self.values[a]):
                raise PresheafError(f"identity of {C.objects[a]} does not act trivially")
        for g, f in C.composable_pairs():
            gf = C.compose(g, f)
            first, second = (g, f) if self.contravariant else (f, g)
            for x in self.values[self.arrow_input(gf)]:
                if self.act(gf, x) != self.act(second, self.act(first, x)):
                    raise PresheafError(f"composite {C.arrows[g]} . {C.arrows[f]} is not respected")

    def same_shape(self, other: "SetFunctor") -> bool:
        return self.base is other.base and self.contravariant == other.contravariant

    def describe(self) -> dict:
        C = self.base
        return {C.objects[c]: [fmt(x) for x in v] for c, v in enumerate(self.values)}

    def __repr__(self):
        kind = type(self).__name__
        sizes = ",".join(str(len(v)) for v in self.values)
        return f"<{kind} {self.name} sizes=({sizes})>"


class Presheaf(SetFunctor):
    contravariant = True


class Copresheaf(SetFunctor):
    contravariant = False


def _kind(F: SetFunctor):
    return Presheaf if F.contravariant else Copresheaf


# ---------------------------------------------------------------------------
# constructors


def yoneda(C: FinCategory, c: int) -> Presheaf:
    """The representable ``Hom(-, c)``; elements are arrow ids."""
    return Presheaf(C, {x: C.hom(x, c) for x in range(C.n_objects)},
                    lambda f, g: C.compose(g, f), check=False, name=f"y({C.objects[c]})")


def coyoneda(C: FinCategory, c: int) -> Copresheaf:
    """The corepresentable ``Hom(c, -)``."""
    return Copresheaf(C, {x: C.hom(c, x) for x in range(C.n_objects)},
                      lambda f, g: C.compose(f, g), check=False, name=f"y*({C.objects[c]})")


def terminal(C: FinCategory, kind=Presheaf) -> SetFunctor:
    return kind(C, {c: ("*",) for c in range(C.n_objects)}, lambda f, x: x, check=False, name="1")


def empty(C: FinCategory, kind=Presheaf) -> SetFunctor:
    return kind(C, {}, lambda f, x: x, check=False, name="0")


def coproduct(F: SetFunctor, G: SetFunctor) -> SetFunctor:
    if not F.same_shape(G):
        raise PresheafError("coproduct of functors of different shape")
    vals = {c: [(0, x) for x in F(c)] + [(1, y) for y in G(c)] for c in range(F.base.n_objects)}

    def act(f, t):
        return (t[0], (F if t[0] == 0 else G).act(f, t[1]))

    return _kind(F)(F.base, vals, act, check=False, name=f"{F.name}+{G.name}")


def product(F: SetFunctor, G: SetFunctor) -> SetFunctor:
    if not F.same_shape(G):
        raise PresheafError("product of functors of different shape")
    vals = {c: [(x, y) for x in F(c) for y in G(c)] for c in range(F.base.n_objects)}
    return _kind(F)(F.base, vals, lambda f, t: (F.act(f, t[0]), G.act(f, t[1])), check=False,
                    name=f"{F.name}x{G.name}")


def standard_samples(C: FinCategory, kind=Presheaf) -> list[SetFunctor]:
    """Representables, binary coproducts of representables, terminal, empty."""
    rep = yoneda if kind is Presheaf else coyoneda
    reps = [rep(C, c) for c in range(C.n_objects)]
    out = list(reps)
    for i in range(len(reps)):
        for j in range(i, len(reps)):
            out.append(coproduct(reps[i], reps[j]))
    out.append(terminal(C, kind))
    out.append(empty(C, kind))
    return out


# ---------------------------------------------------------------------------
# natural transformations


class NatTrans:
    """Components of ``alpha: F -> G``, stored aligned with ``F``'s value order."""

    __slots__ = ("dom", "cod", "components", "_hash")

    def __init__(self, dom: SetFunctor, cod: SetFunctor, components):
        self.dom = dom
        self.cod = cod
        self.components = tuple(tuple(c) for c in components)
        self._hash = hash(self.components)

    @classmethod
    def from_function(cls, dom, cod, fn: Callable[[int, object], object]) -> "NatTrans":
        return cls(dom, cod, [[fn(c, x) for x in dom(c)] for c in range(dom.base.n_objects)])

    @classmethod
    def identity(cls, F: SetFunctor) -> "NatTrans":
        return cls(F, F, F.values)

    def at(self, c: int, x):
        return self.components[c][self.dom.index(c, x)]

    def after(self, other: "NatTrans") -> "NatTrans":
        """``self . other``."""
        return NatTrans.from_function(other.dom, self.cod, lambda c, x: self.at(c, other.at(c, x)))

    def naturality_failure(self):
        F, G = self.dom, self.cod
        C = F.base
        for c in range(C.n_objects):
            if not all(y in G._index[c] for y in self.components[c]):
                return ("component", C.objects[c])
        for f in range(C.n_arrows):
            d, e = F.arrow_input(f), F.arrow_output(f)
            for x in F(d):
                if self.at(e, F.act(f, x)) != G.act(f, self.at(d, x)):
                    return ("square", C.arrows[f], x)
        return None

    def is_natural(self) -> bool:
        return self.naturality_failure() is None

    def is_iso(self) -> bool:
        return self.is_natural() and all(
            len(set(comp)) == len(comp) == len(self.cod(c)) for c, comp in enumerate(self.components))

    def sort_key(self):
        return canon_key(self.components)

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.components == other.components

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"NatTrans({self.dom.name}->{self.cod.name}: {fmt(self.components)})"


def family_count(F: SetFunctor, G: SetFunctor) -> int:
    return prod(len(G(c)) ** len(F(c)) for c in range(F.base.n_objects))


def nat_trans_set(F: SetFunctor, G: SetFunctor, guard: Guard | None = None) -> FinSet:
    """All natural transformations ``F -> G`` in canonical order.

    Component values are chosen element by element in canonical order; each
    naturality square is checked as soon as both of its corners are set,
    and a corner forced by an earlier choice is filled in directly.
    """
    guard = guard or DEFAULT_GUARD
    if not F.same_shape(G):
        raise PresheafError("natural transformations between functors of different shape")
    guard.check("families", family_count(F, G))
    C = F.base
    slots = [(c, x) for c in range(C.n_objects) for x in F(c)]
    pos = {s: i for i, s in enumerate(slots)}
    # edges slot_in -> (slot_out, f): value(slot_out) must equal G(f)(value(slot_in))
    forward: list[list[tuple[int, int]]] = [[] for _ in slots]
    for f in range(C.n_arrows):
        if C.is_identity(f):
            continue
        d, e = F.arrow_input(f), F.arrow_output(f)
        for x in F(d):
            forward[pos[d, x]].append((pos[e, F.act(f, x)], f))
    choice: list = [None] * len(slots)
    results = []

    def assign(i, v, trail):
        # set slot i to v and propagate the forced values; False on conflict
        stack = [(i, v)]
        while stack:
            j, w = stack.pop()
            cur = choice[j]
            if cur is not None:
                if cur != w:
                    return False
                continue
            choice[j] = w
            trail.append(j)
            for k, f in forward[j]:
                stack.append((k, G.act(f, w)))
        return True

    def search(i):
        while i < len(slots) and choice[i] is not None:
            i += 1
        if i == len(slots):
            comps = [[] for _ in range(C.n_objects)]
            for (c, _), v in zip(slots, choice):
                comps[c].append(v)
            results.append(NatTrans(F, G, comps))
            return
        c = slots[i][0]
        for v in G(c):
            trail: list[int] = []
            if assign(i, v, trail):
                search(i + 1)
            for j in trail:
                choice[j] = None

    search(0)
    return FinSet(f"Nat({F.name},{G.name})", results)


def yoneda_element(F: SetFunctor, c: int, a) -> NatTrans:
    """The transformation ``y(c) -> F`` sending ``id_c`` to ``a`` (presheaf ``F``)."""
    C = F.base
    Y = yoneda(C, c)
    return NatTrans.from_function(Y, F, lambda x, h: F.act(h, a))


# ---------------------------------------------------------------------------
# coends and ends


class Coend:
    """Quotient of the disjoint union of the diagonal by both actions.

    ``classes`` holds canonical representatives ``(c, x)``: the least
    (object id, element position) pair of each class.
    """

    def __init__(self, classes: FinSet, injections: dict):
        self.classes = classes
        self.injections = injections

    def cls(self, c: int, x):
        return self.injections[c][x]

    def __len__(self):
        return len(self.classes)


def coend(H: Profunctor) -> Coend:
    C = H.dom
    if H.cod is not C:
        raise PresheafError("coend needs a bifunctor C^op x C -> Set")
    raw = [(c, x) for c in range(C.n_objects) for x in H(c, c)]
    pos = {t: i for i, t in enumerate(raw)}
    uf = UnionFind(len(raw))
    for f in range(C.n_arrows):
        a, b = C.src[f], C.tgt[f]
        for x in H(b, a):
            uf.union(pos[a, H.lact(f, a, x)], pos[b, H.ract(b, f, x)])
    inj = {c: {} for c in range(C.n_objects)}
    for i, (c, x) in enumerate(raw):
        inj[c][x] = raw[uf.find(i)]
    return Coend(FinSet("coend", {raw[uf.find(i)] for i in range(len(raw))}), inj)


def end(H, guard: Guard | None = None) -> FinSet:
    """Families ``(x_c in H(c, c))`` compatible along every arrow."""
    guard = guard or DEFAULT_GUARD
    C = H.dom
    if H.cod is not C:
        raise PresheafError("end needs a bifunctor C^op x C -> Set")
    n = C.n_objects
    size = getattr(H, "count", lambda c, d: len(H(c, d)))
    guard.check("families", prod(size(c, c) for c in range(n)))
    checks: list[list[int]] = [[] for _ in range(n)]
    for f in range(C.n_arrows):
        if not C.is_identity(f):
            checks[max(C.src[f], C.tgt[f])].append(f)
    fam: list = [None] * n
    out = []

    def ok(f):
        a, b = C.src[f], C.tgt[f]
        return H.ract(a, f, fam[a]) == H.lact(f, b, fam[b])

    def search(c):
        if c == n:
            out.append(tuple(fam))
            return
        for x in H(c, c):
            fam[c] = x
            if all(ok(f) for f in checks[c]):
                search(c + 1)
        fam[c] = None

    search(0)
    return FinSet("end", out)


def function_set(A: tuple, B: tuple):
    """All functions ``A -> B`` as tuples of images aligned with ``A``."""
    import itertools
    return list(itertools.product(B, repeat=len(A)))


class FunctionBifunctor:
    """The integrand ``(c, c') |-> [F(.), G(.)]`` whose end is ``Nat(F, G)``.

    For presheaves the value at ``(c, c')`` is ``[F(c'), G(c)]``; for
    copresheaves it is ``[F(c), G(c')]``. Functions are image tuples aligned
    with the domain's canonical order. Value sets are built lazily because
    only the diagonal is needed for the end; :meth:`materialize` gives a
    fully tabulated :class:`Bifunctor`.
    """

    def __init__(self, F: SetFunctor, G: SetFunctor):
        if not F.same_shape(G):
            raise PresheafError("function bifunctor of functors of different shape")
        self.F, self.G = F, G
        self.dom = self.cod = F.base
        self.name = f"[{F.name},{G.name}]"
        self._cache: dict = {}

    def ends(self, c: int, c2: int) -> tuple[tuple, tuple]:
        F, G = self.F, self.G
        return (F(c2), G(c)) if F.contravariant else (F(c), G(c2))

    def count(self, c: int, c2: int) -> int:
        A, B = self.ends(c, c2)
        return len(B) ** len(A)

    def __call__(self, c: int, c2: int) -> list:
        if (c, c2) not in self._cache:
            self._cache[c, c2] = function_set(*self.ends(c, c2))
        return self._cache[c, c2]

    def lact(self, f: int, d: int, phi):
        F, G, C = self.F, self.G, self.dom
        if F.contravariant:
            # phi: F(d) -> G(b), f: a -> b; postcompose G(f)
            return tuple(G.act(f, y) for y in phi)
        # phi: F(b) -> G(d); precompose F(f): F(a) -> F(b)
        return tuple(phi[F.index(C.tgt[f], F.act(f, x))] for x in F(C.src[f]))

    def ract(self, c: int, g: int, phi):
        F, G, C = self.F, self.G, self.dom
        if F.contravariant:
            # phi: F(a) -> G(c), g: a -> b; precompose F(g): F(b) -> F(a)
            return tuple(phi[F.index(C.src[g], F.act(g, x))] for x in F(C.tgt[g]))
        return tuple(G.act(g, y) for y in phi)

    def materialize(self, check: bool = True, guard: Guard | None = None) -> Bifunctor:
        guard = guard or DEFAULT_GUARD
        n = self.dom.n_objects
        guard.check("families", sum(self.count(c, d) for c in range(n) for d in range(n)))
        values = {(c, d): self(c, d) for c in range(n) for d in range(n)}
        return Bifunctor(self.dom, values, self.lact, self.ract, check=check, name=self.name)


def hom_bifunctor(F: SetFunctor, G: SetFunctor) -> FunctionBifunctor:
    return FunctionBifunctor(F, G)


# ---------------------------------------------------------------------------
# the functor induced by a profunctor


def profunctor_to_functor(M: Profunctor, F: Copresheaf) -> Copresheaf:
    """``a |-> coend over a' of M(a', a) x F(a')``.

    Elements are class representatives ``(a', m, x)``; the raw-to-class
    table is kept as ``result.raw_classes``.
    """
    A = M.dom
    if M.cod is not A or F.base is not A or F.contravariant:
        raise PresheafError("profunctor_to_functor needs M: A -|-> A and a copresheaf on A")
    classes = {}
    values = {}
    for a in range(A.n_objects):
        raw = [(a2, m, x) for a2 in range(A.n_objects) for m in M(a2, a) for x in F(a2)]
        pos = {t: i for i, t in enumerate(raw)}
        uf = UnionFind(len(raw))
        for u in range(A.n_arrows):
            a2, a3 = A.src[u], A.tgt[u]
            for m in M(a3, a):
                mu = M.lact(u, a, m)
                for x in F(a2):
                    uf.union(pos[a2, mu, x], pos[a3, m, F.act(u, x)])
        classes[a] = {t: raw[uf.find(i)] for i, t in enumerate(raw)}
        values[a] = set(classes[a].values())

    def act(g, t):
        a2, m, x = t
        return classes[A.tgt[g]][a2, M.ract(a2, g, m), x]

    out = Copresheaf(A, values, act, check=False, name=f"{M.name or 'M'}~({F.name})")
    out.raw_classes = classes
    return out


def profunctor_to_functor_map(alpha: NatTrans, MF: Copresheaf, MG: Copresheaf) -> NatTrans:
    """The induced functor on a transformation ``alpha: F -> G``."""
    return NatTrans.from_function(
        MF, MG, lambda a, t: MG.raw_classes[a][t[0], t[1], alpha.at(t[0], t[2])])


# ---------------------------------------------------------------------------
# categories of elements and flatness


def elements_category(F: SetFunctor) -> tuple[FinCategory, list[tuple[int, object]]]:
    """Category of elements, with ``pairs[k]`` the ``(c, x)`` of object ``e{k}``.

    Presheaf: ``f: (c, F(f)x') -> (c', x')``; copresheaf: ``f: (c, x) -> (c', F(f)x)``.
    """
    C = F.base
    pairs = [(c, x) for c in range(C.n_objects) for x in F(c)]
    names = [f"e{k}" for k in range(len(pairs))]
    pos = {p: k for k, p in enumerate(pairs)}
    arrows = []
    info = {}
    for f in range(C.n_arrows):
        d = F.arrow_input(f)
        for x in F(d):
            y = F.act(f, x)
            if F.contravariant:
                s, t = pos[C.src[f], y], pos[C.tgt[f], x]
            else:
                s, t = pos[C.src[f], x], pos[C.tgt[f], y]
            name = f"id_e{s}" if C.is_identity(f) else f"{C.arrows[f]}@e{s}>e{t}"
            arrows.append((name, names[s], names[t]))
            info[name] = (f, s, t)

    def compose(g, f):
        fa, s, _ = info[f]
        ga, _, t = info[g]
        h = C.compose(ga, fa)
        return f"id_e{s}" if C.is_identity(h) else f"{C.arrows[h]}@e{s}>e{t}"

    K = category_from_function(names, arrows, compose, name=f"el({F.name})", check=False)
    order = [pairs[int(o[1:])] for o in K.objects]
    return K, order


def filtered_failure(K: FinCategory):
    """First violation of filteredness of ``K``, else None."""
    n = K.n_objects
    if n == 0:
        return ("empty",)
    for a in range(n):
        for b in range(a + 1, n):
            if not any(K.hom(a, z) and K.hom(b, z) for z in range(n)):
                return ("no cocone", K.objects[a], K.objects[b])
    for a in range(n):
        for b in range(n):
            hs = K.hom(a, b)
            for i, u in enumerate(hs):
                for v in hs[i + 1:]:
                    if not any(K.compose(w, u) == K.compose(w, v) for w in K.out_of[b]):
                        return ("no coequalizing arrow", K.arrows[u], K.arrows[v])
    return None


def flat_check(P: SetFunctor) -> tuple[bool, object]:
    """Flatness of a presheaf (or copresheaf) with the first failing witness.

    A presheaf is flat iff its category of elements is filtered, i.e. the
    elements category taken over ``C^op`` is cofiltered; for a copresheaf
    the elements category itself must be cofiltered.
    """
    K, pairs = elements_category(P)
    bad = filtered_failure(K if P.contravariant else K.op())
    if bad is None:
        return True, None
    C = P.base
    lookup = {K.objects[k]: (C.objects[c], fmt(x)) for k, (c, x) in enumerate(pairs)}
    return False, tuple(lookup.get(w, w) for w in bad)
