"""Order-theoretic checks on finite posets.

Down-sets, ideals and opens are bitmasks over the element ids of the base
poset. Lattices built from them (:class:`SubsetPoset`) compare by bit tests
and are never materialized as relation tables unless asked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ._util import DEFAULT_GUARD, Guard, bits, fmt
from .core import FinPoset, MonotoneMap, Poset, SubsetPoset
from .errors import AdjunctionViolation, NotALattice, NotFullyFaithful, NotJoinDense


# ---------------------------------------------------------------------------
# down-sets and ideals


def _linear_extension(P: FinPoset) -> list[int]:
    return sorted(range(len(P)), key=lambda i: (bin(P.down[i]).count("1"), i))


def down_sets(P: FinPoset, guard: Guard | None = None) -> list[int]:
    """All down-closed subsets of ``P`` as bitmasks, each produced once."""
    guard = guard or DEFAULT_GUARD
    order = _linear_extension(P)
    out = []
    # An element may join D only once everything strictly below it has.
    stack = [(0, 0)]
    while stack:
        k, mask = stack.pop()
        if k == len(order):
            out.append(mask)
            if len(out) > guard.max_downsets:
                guard.check("downsets", len(out))
            continue
        x = order[k]
        stack.append((k + 1, mask))
        if P.down[x] & ~(1 << x) & ~mask == 0:
            stack.append((k + 1, mask | 1 << x))
    return out


def up_sets(P: FinPoset, guard: Guard | None = None) -> list[int]:
    return [P.full & ~m for m in down_sets(P, guard)]


def is_directed(P: FinPoset, mask: int) -> bool:
    if mask == 0:
        return False
    members = list(bits(mask))
    return all(P.up[i] & P.up[j] & mask for i in members for j in members)


@dataclass
class DownSetLattice:
    base: FinPoset
    poset: SubsetPoset
    embed: MonotoneMap

    def principal(self, i: int) -> int:
        return self.embed(i)


@dataclass
class IdealCompletion:
    base: FinPoset
    poset: SubsetPoset
    embed: MonotoneMap


def downset_lattice(P: FinPoset, guard: Guard | None = None) -> DownSetLattice:
    Dn = SubsetPoset(P, down_sets(P, guard))
    embed = MonotoneMap(P, Dn, [Dn.index_of_mask(P.down[i]) for i in range(len(P))], check=False)
    return DownSetLattice(P, Dn, embed)


def ideal_completion(P: FinPoset, guard: Guard | None = None) -> IdealCompletion:
    Idl = SubsetPoset(P, [m for m in down_sets(P, guard) if is_directed(P, m)])
    embed = MonotoneMap(P, Idl, [Idl.index_of_mask(P.down[i]) for i in range(len(P))], check=False)
    return IdealCompletion(P, Idl, embed)


# ---------------------------------------------------------------------------
# adjoints


def adjunction_failure(g: MonotoneMap, f: MonotoneMap):
    """Witness ``(y, x)`` where ``g(y) <= x iff y <= f(x)`` fails, or None.

    The two-sided condition over all pairs implies that both maps are
    monotone, so it is the whole adjunction check.
    """
    X, Y = f.dom, f.cod
    for y in range(len(Y)):
        gy = g(y)
        for x in range(len(X)):
            if X.leq(gy, x) != Y.leq(y, f(x)):
                return (Y.labels[y], X.labels[x])
    return None


def left_adjoint_obstruction(f: MonotoneMap):
    """An element ``y`` of the codomain with no least ``x`` such that ``y <= f(x)``."""
    X, Y = f.dom, f.cod
    for y in range(len(Y)):
        cands = [x for x in range(len(X)) if Y.leq(y, f(x))]
        if X.minimum(cands) is None:
            return Y.labels[y]
    return None


def left_adjoint(f: MonotoneMap) -> MonotoneMap | None:
    """The left Galois adjoint ``g -| f`` if it exists.

    ``g(y)`` is the least ``x`` with ``y <= f(x)``; None is returned as soon
    as some candidate set has no least element (see
    :func:`left_adjoint_obstruction` for the witness).
    """
    X, Y = f.dom, f.cod
    mapping = []
    for y in range(len(Y)):
        cands = [x for x in range(len(X)) if Y.leq(y, f(x))]
        m = X.minimum(cands)
        if m is None:
            return None
        mapping.append(m)
    g = MonotoneMap(Y, X, mapping, check=False)
    bad = adjunction_failure(g, f)
    if bad is not None:  # pragma: no cover - minimum construction guarantees this
        raise AdjunctionViolation("constructed left adjoint fails verification", bad)
    return g


def right_adjoint(f: MonotoneMap) -> MonotoneMap | None:
    """The right adjoint ``f -| h``, via :func:`left_adjoint` on opposite posets."""
    X, Y = f.dom, f.cod
    Xop, Yop = _opposite(X), _opposite(Y)
    g = left_adjoint(MonotoneMap(Xop, Yop, f.mapping, check=False))
    if g is None:
        return None
    return MonotoneMap(Y, X, g.mapping, check=False)


class _Opposite(Poset):
    def __init__(self, P: Poset):
        self._p = P
        self.labels = P.labels
        self._label_index = {e: i for i, e in enumerate(P.labels)}

    def leq(self, i, j):
        return self._p.leq(j, i)


def _opposite(P: Poset) -> Poset:
    return P.opposite() if isinstance(P, FinPoset) else _Opposite(P)


# ---------------------------------------------------------------------------
# ccd lattices


@dataclass
class CcdReport:
    complete: bool
    join_map: MonotoneMap | None
    totally_below: MonotoneMap | None
    ccd: bool
    lex_ccd: bool
    witness: object = None
    lex_witness: object = None
    downsets: DownSetLattice | None = field(default=None, repr=False)

    def totally_below_set(self, i: int) -> tuple:
        """Labels of the down-set assigned to element ``i``."""
        return self.downsets.poset.labels[self.totally_below(i)]


def ccd_check(P: Poset, guard: Guard | None = None) -> CcdReport:
    """Decide completeness, constructive complete distributivity and lex-ccd."""
    if not isinstance(P, FinPoset):
        P = P.materialize()
    dn = downset_lattice(P, guard)
    join = left_adjoint(dn.embed)
    if join is None:
        return CcdReport(False, None, None, False, False,
                         witness=("no join of", left_adjoint_obstruction(dn.embed)), downsets=dn)
    tb = left_adjoint(join)
    if tb is None:
        return CcdReport(True, join, None, False, False,
                         witness=("no totally-below set for", left_adjoint_obstruction(join)), downsets=dn)
    lex_bad = lex_failure(P, dn, tb)
    return CcdReport(True, join, tb, True, lex_bad is None, lex_witness=lex_bad, downsets=dn)


def lex_failure(P: FinPoset, dn: DownSetLattice, tb: MonotoneMap):
    """Where the totally-below map fails to preserve finite meets, else None.

    Finite meets include the empty one: the top must go to the whole poset.
    """
    masks = dn.poset.masks
    top = P.top()
    if top is None or masks[tb(top)] != P.full:
        return ("top", fmt(P.labels[top]) if top is not None else None)
    for a in range(len(P)):
        for b in range(a + 1, len(P)):
            m = P.meet(1 << a | 1 << b)
            if masks[tb(m)] != masks[tb(a)] & masks[tb(b)]:
                return ("meet", P.labels[a], P.labels[b])
    return None


def lattice_tables(P: FinPoset):
    """Binary meet and join tables; raises :class:`NotALattice`."""
    n = len(P)
    if n == 0:
        raise NotALattice((), "top or bottom")
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            j = P.join(1 << a | 1 << b)
            if j is None:
                raise NotALattice((P.labels[a], P.labels[b]), "join")
            m = P.meet(1 << a | 1 << b)
            if m is None:
                raise NotALattice((P.labels[a], P.labels[b]), "meet")
            join[a][b] = join[b][a] = j
            meet[a][b] = meet[b][a] = m
    return meet, join


def distributivity_witness(P: FinPoset):
    """First triple violating ``x & (y | z) = (x & y) | (x & z)``, else None."""
    meet, join = lattice_tables(P)
    n = len(P)
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return P.labels[x], P.labels[y], P.labels[z]
    return None


def distributivity_oracle(P: FinPoset) -> bool:
    return distributivity_witness(P) is None


# ---------------------------------------------------------------------------
# way-below and continuity


@dataclass
class WayBelow:
    base: FinPoset
    relation: frozenset  # pairs of labels (x, y) with x << y
    below_masks: tuple  # y -> mask of {x : x << y}

    def holds(self, x, y) -> bool:
        return (x, y) in self.relation


def way_below(P: FinPoset, guard: Guard | None = None) -> WayBelow:
    """``x << y`` iff every ideal whose join dominates ``y`` contains ``x``."""
    ideals = [(m, P.join(m)) for m in down_sets(P, guard) if is_directed(P, m)]
    masks = []
    for y in range(len(P)):
        acc = P.full
        for m, j in ideals:
            if j is not None and P.leq(y, j):
                acc &= m
        masks.append(acc)
    rel = frozenset((P.labels[x], P.labels[y]) for y in range(len(P)) for x in bits(masks[y]))
    return WayBelow(P, rel, tuple(masks))


@dataclass
class ContinuityReport:
    continuous: bool
    join_map: MonotoneMap | None
    wavy_map: MonotoneMap | None
    agrees_with_way_below: bool
    witness: object = None


def continuity_check(P: FinPoset, guard: Guard | None = None) -> ContinuityReport:
    idl = ideal_completion(P, guard)
    join = left_adjoint(idl.embed)
    if join is None:
        return ContinuityReport(False, None, None, False, ("not a dcpo", left_adjoint_obstruction(idl.embed)))
    wavy = left_adjoint(join)
    if wavy is None:
        return ContinuityReport(False, join, None, False, ("not continuous", left_adjoint_obstruction(join)))
    wb = way_below(P, guard)
    agree = all(idl.poset.masks[wavy(y)] == wb.below_masks[y] for y in range(len(P)))
    witness = None
    if not agree:
        witness = next(P.labels[y] for y in range(len(P)) if idl.poset.masks[wavy(y)] != wb.below_masks[y])
    return ContinuityReport(True, join, wavy, agree, witness)


# ---------------------------------------------------------------------------
# Scott opens and the duality spot-check


@dataclass
class ScottFrame:
    base: FinPoset
    poset: SubsetPoset

    @property
    def masks(self):
        return self.poset.masks

    def meet(self, i: int, j: int) -> int:
        return self.poset.index_of_mask(self.masks[i] & self.masks[j])

    def join(self, indices) -> int:
        m = 0
        for i in indices:
            m |= self.masks[i]
        return self.poset.index_of_mask(m)

    @property
    def top(self) -> int:
        return self.poset.index_of_mask(self.base.full)

    @property
    def bottom(self) -> int:
        return self.poset.index_of_mask(0)


def scott_opens(P: FinPoset, guard: Guard | None = None) -> ScottFrame:
    """Scott-open sets of a finite poset: exactly its up-closed subsets."""
    return ScottFrame(P, SubsetPoset(P, up_sets(P, guard)))


@dataclass
class DualityReport:
    opens_ccd: bool
    n_opens: int
    points: list  # each point as the frozenset of open-indices sent to 1
    points_isomorphic: bool
    counterexamples: dict

    @property
    def ok(self) -> bool:
        return self.opens_ccd and self.points_isomorphic


def frame_points(F: ScottFrame) -> list[frozenset]:
    """Maps ``F -> 2`` preserving finite meets and all joins.

    A join-preserving map to 2 is fixed by the largest open it kills, so the
    candidates are indexed by opens; each candidate is then checked directly.
    """
    masks = F.masks
    n = len(masks)
    pts = []
    for u0 in range(n):
        phi = [0 if masks[u] & ~masks[u0] == 0 else 1 for u in range(n)]
        if phi[F.top] != 1 or phi[F.bottom] != 0:
            continue
        ok = True
        for a in range(n):
            for b in range(a + 1, n):
                if phi[F.meet(a, b)] != (phi[a] & phi[b]) or phi[F.join((a, b))] != (phi[a] | phi[b]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            pts.append(frozenset(u for u in range(n) if phi[u]))
    return pts


def duality_check(P: FinPoset, guard: Guard | None = None) -> DualityReport:
    F = scott_opens(P, guard)
    opens_ccd = ccd_check(F.poset, guard).ccd
    pts = frame_points(F)
    # x |-> the point "U contains x"
    image = [frozenset(u for u, m in enumerate(F.masks) if m >> x & 1) for x in range(len(P))]
    pts_set = set(pts)
    not_points = [P.labels[x] for x in range(len(P)) if image[x] not in pts_set]
    missed = sorted(len(p) for p in pts_set - set(image))
    order_bad = [(P.labels[x], P.labels[y]) for x in range(len(P)) for y in range(len(P))
                 if P.leq(x, y) != (image[x] <= image[y])]
    iso = not not_points and not missed and not order_bad and len(set(image)) == len(image)
    counter = {}
    if not_points:
        counter["elements_not_points"] = not_points
    if missed:
        counter["points_not_elements"] = missed
    if order_bad:
        counter["order_mismatch"] = order_bad
    return DualityReport(opens_ccd, len(F.masks), pts, iso, counter)


# ---------------------------------------------------------------------------
# transfer along q -| r -| s


@dataclass
class TransferReport:
    source: CcdReport  # for E
    target: CcdReport  # for D
    holds: bool
    lex_applicable: bool
    lex_holds: bool


def preserves_finite_meets(q: MonotoneMap) -> bool:
    D, E = q.dom, q.cod
    if not isinstance(D, FinPoset) or not isinstance(E, FinPoset):
        return False
    if D.top() is None or E.top() is None or q(D.top()) != E.top():
        return False
    for a in range(len(D)):
        for b in range(a + 1, len(D)):
            m = D.meet(1 << a | 1 << b)
            if m is None:
                return False
            if q(m) != E.meet(1 << q(a) | 1 << q(b)):
                return False
    return True


def transfer_ccd(q: MonotoneMap, r: MonotoneMap, s: MonotoneMap, guard: Guard | None = None) -> TransferReport:
    """ccd transfers from ``E`` to ``D`` along ``q -| r -| s : D -> E``."""
    for left, right, label in ((q, r, "q -| r"), (r, s, "r -| s")):
        bad = adjunction_failure(left, right)
        if bad is not None:
            raise AdjunctionViolation(f"{label} fails", bad)
    for m, label in ((q, "q"), (s, "s")):
        if not m.is_order_embedding():
            raise NotFullyFaithful(label)
    rep_e = ccd_check(q.cod, guard)
    rep_d = ccd_check(q.dom, guard)
    lex_app = rep_e.lex_ccd and preserves_finite_meets(q)
    return TransferReport(rep_e, rep_d, holds=(not rep_e.ccd) or rep_d.ccd,
                          lex_applicable=lex_app, lex_holds=(not lex_app) or rep_d.lex_ccd)


def retraction_triple(E: FinPoset, sub_mask: int):
    """``(q, r, s)`` with ``q`` the inclusion of the induced subposet on
    ``sub_mask``, when both further adjoints exist and ``s`` is an embedding."""
    D = E.restrict(sub_mask)
    q = MonotoneMap(D, E, [E.index(x) for x in D.labels])
    r = right_adjoint(q)
    if r is None:
        return None
    s = right_adjoint(r)
    if s is None or not s.is_order_embedding():
        return None
    return q, r, s


def relabel(P: FinPoset, names) -> tuple[FinPoset, dict]:
    """Copy of ``P`` with element ``P.labels[i]`` renamed ``names[i]``."""
    ren = dict(zip(P.labels, names))
    return FinPoset(list(ren.values()), [(ren[a], ren[b]) for a, b in P.pairs()]), ren


def random_transfer_triples(rng: random.Random, count: int, max_size: int = 5):
    """Yield ``count`` random valid triples ``q -| r -| s : D -> E`` with ``E`` ccd.

    ``E`` is the down-set lattice of a random poset (every finite
    distributive lattice arises this way), relabelled at random; ``D`` is a
    random subposet admitting the two further adjoints, also relabelled.
    """
    from .generate import random_poset

    produced = 0
    while produced < count:
        J = random_poset(rng, rng.randint(0, max_size - 1))
        dn = down_sets(J)
        if len(dn) > max_size:
            continue
        base = SubsetPoset(J, dn).materialize()
        E, _ = relabel(base, rng.sample([f"e{i}" for i in range(10)], len(base)))
        sub = rng.randint(1, E.full)
        trip = retraction_triple(E, sub)
        if trip is None:
            continue
        q, r, s = trip
        D, ren = relabel(q.dom, rng.sample([f"d{i}" for i in range(10)], len(q.dom)))
        qmap = {ren[x]: E.labels[q(i)] for i, x in enumerate(q.dom.labels)}
        q2 = MonotoneMap.from_labels(D, E, qmap)
        r2 = MonotoneMap.from_labels(E, D, {e: ren[q.dom.labels[r(i)]] for i, e in enumerate(E.labels)})
        s2 = MonotoneMap.from_labels(D, E, {ren[x]: E.labels[s(i)] for i, x in enumerate(q.dom.labels)})
        produced += 1
        yield q2, r2, s2


# ---------------------------------------------------------------------------
# restriction to a join-dense generator


@dataclass
class GeneratorReport:
    generators: tuple
    yoneda: MonotoneMap  # y': E -> Dn(G)
    colim: MonotoneMap | None  # c' = left adjoint of y'
    tensor: MonotoneMap | None  # t' = left adjoint of c'
    colim_is_join: bool
    ccd: bool
    tensor_matches_totally_below: bool
    yoneda_embedding: bool
    tensor_embedding: bool

    @property
    def consistent(self) -> bool:
        """c' exists, it is the join, and t' exists exactly when E is ccd."""
        return (self.colim is not None and self.colim_is_join and self.yoneda_embedding
                and (self.tensor is not None) == self.ccd and self.tensor_matches_totally_below
                and (self.tensor is None or self.tensor_embedding))


def join_dense_failure(E: FinPoset, gmask: int):
    for v in range(len(E)):
        if E.join(E.down[v] & gmask) != v:
            return E.labels[v]
    return None


def generator_restriction(E: FinPoset, generators, guard: Guard | None = None) -> GeneratorReport:
    """Restrict ``t -| c -| y`` of ``E`` to the join-dense subset ``generators``."""
    gmask = generators if isinstance(generators, int) else E.mask_of(generators)
    bad = join_dense_failure(E, gmask)
    if bad is not None:
        raise NotJoinDense(bad)
    G = E.restrict(gmask)
    dn = downset_lattice(G, guard)
    to_g = {E.index(x): G.index(x) for x in G.labels}

    def restrict(mask):
        return sum(1 << to_g[i] for i in bits(mask & gmask))

    def to_e(mask):
        return E.mask_of(G.labels_of(mask))

    y = MonotoneMap(E, dn.poset, [dn.poset.index_of_mask(restrict(E.down[v])) for v in range(len(E))])
    c = left_adjoint(y)
    rep = ccd_check(E, guard)
    colim_is_join = c is not None and all(c(d) == E.join(to_e(m)) for d, m in enumerate(dn.poset.masks))
    t = left_adjoint(c) if c is not None else None
    matches = True
    if t is not None and rep.ccd:
        matches = all(dn.poset.masks[t(v)] == restrict(rep.downsets.poset.masks[rep.totally_below(v)])
                      for v in range(len(E)))
    return GeneratorReport(
        generators=G.labels, yoneda=y, colim=c, tensor=t, colim_is_join=colim_is_join, ccd=rep.ccd,
        tensor_matches_totally_below=matches, yoneda_embedding=y.is_order_embedding(),
        tensor_embedding=t is not None and t.is_order_embedding())


def join_dense_subsets(E: FinPoset):
    """All join-dense subsets of ``E`` as bitmasks."""
    return [m for m in range(E.full + 1) if join_dense_failure(E, m) is None]
