"""kan: restriction, ran, formal colimits, the TD triple t -| c -| y, Lemma 4.1."""

import itertools

import pytest

from tdcat.core import FinFunctor, MonotoneMap, builtin
from tdcat.errors import NotFullyFaithful, VerificationFailure
from tdcat.generate import named_poset
from tdcat.kan import (AdjointTripleWitness, BigMorphism, FormalColimit, SampledFunctor, TDTriple, big_hom,
                       big_representable, colimit_presheaf, formal_coproduct, has_finite_limits, lan_along_yoneda,
                       presheaf_category, ran, restrict, td_witness, triple_from_comonad, triple_from_comonad_poset)
from tdcat.order import right_adjoint
from tdcat.presheaf import NatTrans, Presheaf, empty, nat_trans_set, standard_samples, terminal, yoneda


# -- restrict and ran


def test_restrict_identity():
    C = builtin("simplex", 1)
    for F in standard_samples(C):
        R = restrict(FinFunctor.identity(C), F)
        assert all(R(c) == F(c) for c in range(C.n_objects))


def test_restrict_to_one_end_is_evaluation(walking_arrow):
    C = walking_arrow
    i = FinFunctor.full_inclusion(C, ["c1"])
    for F in standard_samples(C):
        assert restrict(i, F)(0) == F(C.obj("c1"))


def test_restrict_three_chain_example():
    E = builtin("chain", 2)
    i = FinFunctor.full_inclusion(E, ["0", "2"])
    R = restrict(i, yoneda(E, E.obj("1")))
    assert [len(R(g)) for g in range(2)] == [1, 0]


def test_ran_identity():
    C = builtin("walking-arrow")
    for P in standard_samples(C):
        R = ran(FinFunctor.identity(C), P)
        assert all(len(R(c)) == len(P(c)) for c in range(C.n_objects))


def test_ran_from_source_singleton(walking_arrow):
    C = walking_arrow
    i = FinFunctor.full_inclusion(C, ["c0"])
    P = terminal(i.dom)
    R = ran(i, P)
    # Nat(i^ e^, 1) is a singleton for every e
    assert [len(R(c)) for c in range(C.n_objects)] == [1, 1]


def test_ran_empty():
    E = builtin("chain", 2)
    i = FinFunctor.full_inclusion(E, ["1", "2"])
    R = ran(i, empty(i.dom))
    # Nat(i^ e^, 0) is empty exactly when some g maps to e
    for e in range(E.n_objects):
        reached = any(E.hom(i(g), e) for g in range(i.dom.n_objects))
        assert len(R(e)) == (0 if reached else 1)


@pytest.mark.parametrize("name,n,keep", [("chain", 2, ["0", "2"]), ("simplex", 1, ["1"]),
                                         ("walking-arrow", 0, ["c0"]), ("globe", 1, ["0"])])
def test_ran_counit_iso_on_samples(name, n, keep):
    E = builtin(name, n)
    i = FinFunctor.full_inclusion(E, keep)
    for P in standard_samples(i.dom):
        R = ran(i, P)  # raises VerificationFailure if the counit is not an iso
        back = restrict(i, R)
        assert all(len(back(g)) == len(P(g)) for g in range(i.dom.n_objects))


def test_ran_rejects_non_full():
    E = builtin("simplex", 1)
    # [1] has three endomorphisms, the terminal category one: not full
    T = builtin("terminal")
    assert not FinFunctor(T, E, [E.obj("1")], [E.identity(E.obj("1"))]).is_fully_faithful()
    G = builtin("discrete", 2)
    collapse = FinFunctor(G, E, [E.obj("0"), E.obj("0")], [E.identity(E.obj("0"))] * 2)
    with pytest.raises(NotFullyFaithful):
        ran(collapse, terminal(G))


# -- formal colimits and big_hom


@pytest.mark.parametrize("name,n", [("walking-arrow", 0), ("chain", 1), ("simplex", 1)])
def test_big_hom_between_big_representables(name, n):
    C = builtin(name, n)
    S = standard_samples(C)
    for F, G in itertools.product(S, repeat=2):
        assert len(big_hom(big_representable(F), big_representable(G))) == len(nat_trans_set(F, G))


def test_big_hom_from_empty_colimit(walking_arrow):
    C = walking_arrow
    X = formal_coproduct(C, [])
    for G in standard_samples(C):
        assert len(big_hom(X, big_representable(G))) == 1


def test_big_hom_from_coproduct_is_product(walking_arrow):
    C = walking_arrow
    S = standard_samples(C)
    for A, B in itertools.product(S[:2], repeat=2):
        X = formal_coproduct(C, [A, B])
        for G in S:
            Y = big_representable(G)
            assert len(big_hom(X, Y)) == len(nat_trans_set(A, G)) * len(nat_trans_set(B, G))


def test_lan_of_empty_is_empty(walking_arrow):
    assert len(lan_along_yoneda(empty(walking_arrow))) == 0


def test_lan_of_coproduct_has_disjoint_elements(walking_arrow):
    C = walking_arrow
    S = standard_samples(C)
    Y0, Y1 = S[0], S[1]
    X = lan_along_yoneda(S[3])  # y(c0)+y(c1)
    assert len(X) == len(lan_along_yoneda(Y0)) + len(lan_along_yoneda(Y1))


@pytest.mark.parametrize("name,n", [("walking-arrow", 0), ("chain", 2), ("simplex", 1)])
def test_lan_of_representable_iso_to_big_representable(name, n):
    C = builtin(name, n)
    S = standard_samples(C)
    T = TDTriple(C)
    for c in range(C.n_objects):
        Yc = yoneda(C, c)
        tX, Y = lan_along_yoneda(Yc), big_representable(Yc)
        # represent the same object: equal hom-sets into every sample
        for F in S:
            B = big_representable(F)
            assert len(big_hom(tX, B)) == len(big_hom(Y, B))
        # and mutually inverse maps exist
        there, back = big_hom(tX, Y), big_hom(Y, tX)
        assert any(b.after(a) == BigMorphism.identity(tX) and a.after(b) == BigMorphism.identity(Y)
                   for a in there for b in back)
        assert colimit_presheaf(tX).size() == Yc.size()
        assert T.c(tX).size() == Yc.size()


def test_formal_colimit_validation(walking_arrow):
    C = walking_arrow
    S = standard_samples(C)
    X = formal_coproduct(C, S[:2])
    X.validate()
    shape = builtin("walking-arrow")
    bad = FormalColimit(C, shape, [S[0], S[1]], [NatTrans.identity(S[0]), NatTrans.identity(S[1]),
                                                   NatTrans.identity(S[1])])
    with pytest.raises(Exception):
        bad.validate()


# -- TD triple


def test_has_finite_limits():
    assert has_finite_limits(builtin("terminal"))
    assert has_finite_limits(builtin("chain", 2))
    assert not has_finite_limits(builtin("discrete", 2))


@pytest.mark.parametrize("name,n", [("terminal", 0), ("walking-arrow", 0)])
def test_td_witness_passes(name, n):
    W = td_witness(builtin(name, n))
    assert W.passed, W.failures
    checks = {e["check"] for e in W.log}
    assert {"Hom(tE,Y) = Nat(E,cY)", "Nat(cY,F) = Hom(Y,yF)", "c(y F) = F",
            "triangle t-|c (t side)", "triangle c-|y (y side)"} <= checks


def test_td_witness_terminal_shadow_is_two_chain():
    W = td_witness(builtin("terminal"))
    assert any(e["check"] == "poset shadow Dn(C) is ccd" and e["ok"] for e in W.log)


def test_td_witness_walking_arrow_cy_law(walking_arrow):
    C = walking_arrow
    T = TDTriple(C)
    for c in range(C.n_objects):
        Yc = yoneda(C, c)
        assert T.cy_counit(Yc).is_iso()


def test_td_witness_with_user_sample(walking_arrow):
    C = walking_arrow
    F = Presheaf(C, {0: ["p"], 1: ["u", "v"]}, {C.arrow("f"): {"u": "p", "v": "p"}}, name="collapse")
    W = td_witness(C, samples=[F, terminal(C)])
    assert W.passed


def test_witness_raise_if_failed():
    W = AdjointTripleWitness("demo")
    W.record("x", "s2", True)
    W.record("x", "s1", False, [1, 2])
    assert not W.passed and len(W.failures) == 1
    assert [e["sample"] for e in W.sorted_log()] == ["s1", "s2"]
    with pytest.raises(VerificationFailure):
        W.raise_if_failed()


# -- Lemma 4.1


def test_triple_from_comonad_identity():
    C = builtin("walking-arrow")
    S = standard_samples(C)
    P = presheaf_category(C, S)
    ident = SampledFunctor(lambda F: F, lambda a: a)
    W = triple_from_comonad(P, P, ident, ident, ident, NatTrans.identity, NatTrans.identity)
    assert W.passed, W.failures
    assert W.evaluators["s"](S[0]) is S[0]


def test_triple_from_comonad_poset_instance():
    D = named_poset("chain3")
    C = D.restrict(D.mask_of(["0", "2"]))
    i = MonotoneMap(C, D, [D.index(x) for x in C.labels])
    r = right_adjoint(i)
    n = right_adjoint(r.then(i))
    W = triple_from_comonad_poset(i, r, n)
    assert W.passed, W.failures
    assert [D.labels[k] for k in W.evaluators["s"].mapping] == ["1", "2"]
