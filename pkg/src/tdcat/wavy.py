"""Wavy arrows at computable scale (§3, §4).

On a finite poset ``A`` the wavy-arrow profunctor ``W(x, y)`` degenerates to
the way-below relation: ``V(x, y)`` is a singleton iff ``x << y``. More
generally any sub-profunctor of ``Hom`` given by an idempotent arrow ideal
is an idempotent comonad in Prof; those supply non-degenerate instances
(e.g. ``V(-, 0) = {}`` on the chain ``0 < 1``). Elements of such a ``V`` are
the arrows themselves, so the counit ``V -> Hom`` is an inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._util import Guard, fmt
from .core import (FinCategory, FinPoset, Profunctor, ProfunctorMorphism, compose_profunctors, composite_class,
                   hom_profunctor, poset_as_category)
from .errors import InterpolationFailure, NoRightAdjointOnSample
from .ideals import ArrowIdeal, is_idempotent
from .kan import AdjointTripleWitness, SampledCategory, SampledFunctor, _bijection_ok, triple_from_comonad
from .order import way_below
from .presheaf import (Copresheaf, NatTrans, Presheaf, flat_check, nat_trans_set, product,
                       profunctor_to_functor, profunctor_to_functor_map, standard_samples, terminal)


@dataclass
class WavyProfunctor:
    """A sub-profunctor ``V`` of ``Hom`` on ``base`` with comonad data and its checks."""

    base: FinCategory
    V: Profunctor
    delta: ProfunctorMorphism  # V -> V.V
    counit: ProfunctorMorphism  # V -> Hom
    VV: Profunctor
    checks: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    poset: FinPoset | None = None

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def subhom_profunctor(C: FinCategory, members, name: str = "V") -> Profunctor:
    """``V(x, y) = members & Hom(x, y)``; ``members`` must be a two-sided ideal."""
    members = frozenset(members)
    values = {(a, b): [f for f in C.hom(a, b) if f in members]
              for a in range(C.n_objects) for b in range(C.n_objects)}
    return Profunctor(C, C, values, lambda f, d, x: C.compose(x, f), lambda c, g, x: C.compose(g, x),
                      check=True, name=name)


def _comonad(C: FinCategory, V: Profunctor, interpolant, poset=None, guard: Guard | None = None) -> WavyProfunctor:
    """Attach counit and comultiplication to ``V`` and run the invariant checks.

    ``interpolant(f)`` returns a factorization ``(g, h)`` of ``f`` with both
    factors in ``V`` (``g . h = f``), or None.
    """
    H = hom_profunctor(C)
    counit = ProfunctorMorphism(V, H, {(a, b): {f: f for f in V(a, b)} for (a, b) in V.values})
    VV = compose_profunctors(V, V)
    comps = {}
    witnesses = {}
    for (a, b), elems in V.values.items():
        table = {}
        for f in elems:
            gh = interpolant(f)
            if gh is None:
                raise InterpolationFailure(f"no interpolant for {C.arrows[f]}")
            g, h = gh
            table[f] = composite_class(VV, a, b, C.src[g], g, h)
        comps[a, b] = table
    delta = ProfunctorMorphism(V, VV, comps)
    mult = ProfunctorMorphism(VV, V, {(a, b): {t: C.compose(t[1], t[2]) for t in VV(a, b)} for (a, b) in VV.values})
    checks = {
        "counit natural (V <= Hom)": counit.is_natural(),
        "comultiplication natural": delta.is_natural(),
        "V.V = V": mult.is_iso(),
        "comultiplication inverts composition": all(mult(a, b, delta(a, b, f)) == f for (a, b) in V.values
                                                    for f in V(a, b)),
    }
    flat = True
    for y in range(C.n_objects):
        col = column_presheaf(V, y)
        ok, w = flat_check(col)
        if not ok:
            flat = False
            witnesses.setdefault("flat", (C.objects[y], w))
    checks["columns flat"] = flat
    return WavyProfunctor(C, V, delta, counit, VV, checks, witnesses, poset)


def column_presheaf(V: Profunctor, y: int) -> Presheaf:
    """``V(-, y)`` as a presheaf on the domain."""
    C = V.dom
    return Presheaf(C, {x: V(x, y) for x in range(C.n_objects)}, lambda f, a: V.lact(f, y, a),
                    check=False, name=f"{V.name}(-,{C.objects[y]})")


def row_copresheaf(V: Profunctor, x: int) -> Copresheaf:
    """``V(x, -)`` as a copresheaf on the codomain."""
    D = V.cod
    return Copresheaf(D, {y: V(x, y) for y in range(D.n_objects)}, lambda g, a: V.ract(x, g, a),
                      check=False, name=f"{V.name}({V.dom.objects[x]},-)")


def wavy_profunctor(A: FinPoset, guard: Guard | None = None) -> WavyProfunctor:
    """The way-below profunctor of a finite poset with its comonad structure.

    The comultiplication picks the least interpolant ``x << z << y`` in
    canonical element order.
    """
    C = poset_as_category(A)
    obj = [C.obj(fmt(x)) for x in A.labels]
    elem = {o: i for i, o in enumerate(obj)}
    wb = way_below(A, guard)
    members = [C.hom(obj[x], obj[y])[0] for y in range(len(A)) for x in range(len(A))
               if wb.below_masks[y] >> x & 1]
    V = subhom_profunctor(C, members, name="V")

    def interpolant(f):
        x, y = elem[C.src[f]], elem[C.tgt[f]]
        for z in range(len(A)):
            if wb.below_masks[z] >> x & 1 and wb.below_masks[y] >> z & 1:
                return C.hom(obj[z], obj[y])[0], C.hom(obj[x], obj[z])[0]
        return None

    return _comonad(C, V, interpolant, poset=A, guard=guard)


def ideal_profunctor(I: ArrowIdeal, guard: Guard | None = None) -> WavyProfunctor:
    """``V_I = I & Hom``: an idempotent comonad whenever ``I`` is idempotent."""
    rep = is_idempotent(I)
    V = subhom_profunctor(I.base, I.members, name="V_I")
    return _comonad(I.base, V, lambda f: rep.factorizations.get(f), guard=guard)


def hom_comonad(C: FinCategory) -> WavyProfunctor:
    return _comonad(C, subhom_profunctor(C, range(C.n_arrows), name="Hom"), lambda f: (f, C.identity(C.src[f])))


# ---------------------------------------------------------------------------
# the induced endofunctor on copresheaves


class InducedComonad:
    """``F |-> V~(F)`` with memoized objects, its action on maps and counit."""

    def __init__(self, W: WavyProfunctor):
        self.W = W
        self._obj: dict[int, tuple] = {}

    def __call__(self, F: Copresheaf) -> Copresheaf:
        hit = self._obj.get(id(F))
        if hit is None or hit[0] is not F:
            hit = (F, profunctor_to_functor(self.W.V, F))
            self._obj[id(F)] = hit
        return hit[1]

    def on_arrow(self, alpha: NatTrans) -> NatTrans:
        return profunctor_to_functor_map(alpha, self(alpha.dom), self(alpha.cod))

    def counit(self, F: Copresheaf) -> NatTrans:
        """``V~(F) -> F``, ``[(a', m, x)] |-> F(m)(x)``."""
        return NatTrans.from_function(self(F), F, lambda a, t: F.act(t[1], t[2]))


def induced_comonad(W: WavyProfunctor, F: Copresheaf) -> Copresheaf:
    return profunctor_to_functor(W.V, F)


@dataclass
class CartesianReport:
    binary: bool
    nullary: bool
    witness: object = None

    @property
    def cartesian(self) -> bool:
        return self.binary and self.nullary


def cartesian_spot_check(W: WavyProfunctor, F: Copresheaf, G: Copresheaf) -> CartesianReport:
    """Compare ``V~(F x G)`` with ``V~F x V~G`` and ``V~(1)`` with ``1``."""
    A = W.base
    T = InducedComonad(W)
    P = product(F, G)
    VP, VF, VG = T(P), T(F), T(G)
    binary, witness = True, None
    for a in range(A.n_objects):
        images = [(VF.raw_classes[a][a2, m, x], VG.raw_classes[a][a2, m, y]) for (a2, m, (x, y)) in VP(a)]
        target = {(u, v) for u in VF(a) for v in VG(a)}
        if len(set(images)) != len(images) or set(images) != target:
            binary = False
            witness = witness or ("product", A.objects[a], len(VP(a)), len(target))
    V1 = T(terminal(A, Copresheaf))
    nullary = True
    for a in range(A.n_objects):
        if len(V1(a)) != 1:
            nullary = False
            witness = witness or ("terminal", A.objects[a], len(V1(a)))
            break
    return CartesianReport(binary, nullary, witness)


# ---------------------------------------------------------------------------
# fixed points and the triple of Lemma 4.2


@dataclass
class CoreflectionWitness:
    evaluator: InducedComonad
    counits: dict
    fixed: dict  # sample name -> bool
    log: list
    triple: AdjointTripleWitness | None = None

    @property
    def failures(self) -> list:
        out = [e for e in self.log if not e["ok"]]
        if self.triple is not None:
            out += self.triple.failures
        return out

    @property
    def passed(self) -> bool:
        return not self.failures


class RightAdjointOfComonad:
    """``n(G)(a) = Nat(V(a, -), G)``, the right adjoint of ``V~`` on copresheaves."""

    def __init__(self, W: WavyProfunctor, guard: Guard | None = None):
        self.W = W
        self.guard = guard
        self.rows = [row_copresheaf(W.V, a) for a in range(W.base.n_objects)]
        self._obj: dict[int, tuple] = {}

    def __call__(self, G: Copresheaf) -> Copresheaf:
        hit = self._obj.get(id(G))
        if hit is None or hit[0] is not G:
            A, V, rows = self.W.base, self.W.V, self.rows
            values = {a: nat_trans_set(rows[a], G, self.guard).elements for a in range(A.n_objects)}

            def act(u, alpha):
                # u: a -> a2; precompose V(u, -): V(a2, -) -> V(a, -)
                return NatTrans.from_function(rows[A.tgt[u]], G, lambda d, m: alpha.at(d, V.lact(u, d, m)))

            hit = (G, Copresheaf(A, values, act, check=False, name=f"n({G.name})"))
            self._obj[id(G)] = hit
        return hit[1]

    def on_arrow(self, beta: NatTrans) -> NatTrans:
        return NatTrans.from_function(self(beta.dom), self(beta.cod), lambda a, alpha: beta.after(alpha))

    def counit(self, T: InducedComonad, G: Copresheaf) -> NatTrans:
        """``V~(n G) -> G``, ``[(a', m, alpha)] |-> alpha(m)``."""
        nG = self(G)
        return NatTrans.from_function(T(nG), G, lambda a, t: t[2].at(a, t[1]))


def fixed_points(W: WavyProfunctor, samples=None, guard: Guard | None = None) -> CoreflectionWitness:
    """Classify samples by the counit, then verify ``i -| r -| s`` (Lemmas 4.1, 4.2)."""
    A = W.base
    S = list(samples) if samples is not None else standard_samples(A, Copresheaf)
    T = InducedComonad(W)
    n = RightAdjointOfComonad(W, guard)
    log, counits, fixed = [], {}, {}

    def record(check, sample, ok, sizes=None):
        log.append({"check": check, "sample": sample, "ok": bool(ok), "sizes": sizes})

    for F in S:
        eps = T.counit(F)
        counits[F.name] = eps
        fixed[F.name] = eps.is_iso()
        VF = T(F)
        record("V~ idempotent", F.name, T.counit(VF).is_iso(), [VF.size(), T(VF).size()])
        record("V~(F) is fixed", F.name, T.counit(VF).is_iso())
    for F in S:
        for G in S:
            lhs = nat_trans_set(T(F), G, guard)
            nG = n(G)
            rhs = nat_trans_set(F, nG, guard)
            eps_n = n.counit(T, G)
            ok, sizes = _bijection_ok(lambda h: eps_n.after(T.on_arrow(h)), rhs, lhs)
            if not ok:
                log.append({"check": "n right adjoint", "sample": f"{F.name}|{G.name}", "ok": False,
                            "sizes": sizes, "error": str(NoRightAdjointOnSample(f"{F.name}|{G.name}"))})
            else:
                record("n right adjoint", f"{F.name}|{G.name}", True, sizes)

    fixed_objs = [T(F) for F in S]
    Dcat = SampledCategory(f"[{A.name},Set]", S, lambda F, G: nat_trans_set(F, G, guard),
                           lambda g, f: g.after(f), NatTrans.identity)
    Ccat = SampledCategory("Fix(V~)", fixed_objs, Dcat.hom, Dcat.compose, Dcat.identity)
    ident = SampledFunctor(lambda x: x, lambda h: h)
    r = SampledFunctor(T, T.on_arrow)
    nf = SampledFunctor(n, n.on_arrow)
    triple = triple_from_comonad(Ccat, Dcat, ident, r, nf, T.counit, lambda d: n.counit(T, d),
                                 name=f"fixed points of {W.V.name}~")
    return CoreflectionWitness(T, counits, fixed, log, triple)
