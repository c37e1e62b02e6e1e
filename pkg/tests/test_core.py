"""cat-core: finite categories, functors, posets and profunctors."""

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tdcat._util import UnionFind
from tdcat.core import (FinFunctor, FinPoset, MonotoneMap, associator, builtin, category_from_function,
                        category_to_text, check_category, chain_poset, compose_profunctors, hom_profunctor,
                        left_unitor, poset_as_category, right_unitor, underlying_poset, validate_category)
from tdcat.errors import (AssociativityViolation, CompositeTypeError, IdentityViolation, MissingComposite,
                          PosetError, SizeGuardExceeded)
from tdcat._util import Guard
from tdcat.formats import parse_category


def test_walking_arrow_shape(walking_arrow):
    C = walking_arrow
    assert C.n_objects == 2 and C.n_arrows == 3
    f = C.arrow("f")
    assert C.compose(f, C.identity(C.obj("c0"))) == f
    assert C.compose(C.identity(C.obj("c1")), f) == f
    assert C.is_thin() and C.is_skeletal()


def test_terminal_category(terminal):
    assert terminal.n_arrows == 1 and terminal.is_identity(0)


def test_simplex_counts():
    # monotone maps [m] -> [n] number C(m+n+1, m+1)
    assert [builtin("simplex", k).n_arrows for k in range(4)] == [1, 7, 31, 121]
    S1 = builtin("simplex", 1)
    assert len(S1.hom(S1.obj("1"), S1.obj("1"))) == 3
    assert len(S1.hom(S1.obj("0"), S1.obj("1"))) == 2
    check_category(S1)


def test_globe_and_discrete():
    assert builtin("globe", 1).n_arrows == 7
    D = builtin("discrete", 3)
    assert D.n_objects == 3 and D.n_arrows == 3


def test_chain_category_is_poset():
    C = builtin("chain", 2)
    assert C.n_objects == 3 and C.n_arrows == 6 and C.is_thin()
    P = underlying_poset(C)
    assert P.leq(P.index("0"), P.index("2"))


def test_op_involution():
    C = builtin("simplex", 1)
    assert C.op().op().fingerprint() == C.fingerprint()
    f = C.arrow("0>1:0")
    assert C.op().src[f] == C.tgt[f]


def test_missing_composite_rejected():
    with pytest.raises(MissingComposite):
        validate_category(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")], [])


def test_mistyped_composite_rejected():
    with pytest.raises(CompositeTypeError):
        validate_category(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c"), ("h", "a", "b")],
                          [("g", "f", "h")])


def test_associativity_violation_rejected():
    text = "object x\narrow f : x -> x\narrow g : x -> x\n" \
           "compose f . f = g\ncompose f . g = f\ncompose g . f = g\ncompose g . g = g\n"
    with pytest.raises(AssociativityViolation):
        parse_category(text)


def test_identity_override_rejected():
    with pytest.raises((IdentityViolation, CompositeTypeError)):
        validate_category(["x"], [("f", "x", "x")], [("f", "id_x", "id_x"), ("f", "f", "f")])


def test_guard_rejects_large_builtin():
    with pytest.raises(SizeGuardExceeded):
        builtin("simplex", 5, Guard(max_arrows=100))


def test_category_text_round_trip():
    for C in (builtin("simplex", 2), builtin("globe", 2), builtin("walking-arrow")):
        D = parse_category(category_to_text(C))
        assert D.fingerprint() == C.fingerprint()


def test_monoid_table_category():
    C = builtin("monoid-table", 3)
    assert C.n_objects == 1 and C.n_arrows == 3


def test_category_from_function_matches_builtin():
    C = poset_as_category(chain_poset(2))
    arrows = [(C.arrows[f], C.objects[C.src[f]], C.objects[C.tgt[f]]) for f in range(C.n_arrows)]
    D = category_from_function(list(C.objects), arrows,
                               lambda g, f: C.arrows[C.compose(C.arrow(g), C.arrow(f))])
    assert D.fingerprint() == C.fingerprint()


def test_functor_full_inclusion_fully_faithful():
    C = builtin("chain", 2)
    i = FinFunctor.full_inclusion(C, ["0", "2"])
    assert i.is_fully_faithful()
    assert FinFunctor.identity(C).is_fully_faithful()


# -- posets


def test_poset_rejects_cycle():
    with pytest.raises(PosetError):
        FinPoset.from_relation(["a", "b"], [("a", "b"), ("b", "a")])


def test_poset_join_meet():
    P = FinPoset.from_relation(list("0ab1"), [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
    a, b = P.index("a"), P.index("b")
    assert P.labels[P.join(1 << a | 1 << b)] == "1"
    assert P.labels[P.meet(1 << a | 1 << b)] == "0"
    assert P.join(0) == P.index("0")  # empty join is the bottom
    assert sorted((P.labels[i], P.labels[j]) for i, j in P.covers()) == \
        [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]


def test_monotone_map_checks():
    P = chain_poset(1)
    with pytest.raises(PosetError):
        MonotoneMap(P, P, [1, 0])
    m = MonotoneMap(P, P, [0, 1])
    assert m.then(m).mapping == (0, 1) and m.is_order_embedding()


# -- profunctors


def _uf_components(n, pairs):
    uf = UnionFind(n)
    for a, b in pairs:
        uf.union(a, b)
    return sorted(sorted(c) for c in uf.classes().values())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=15))))
def test_union_find_matches_networkx(case):
    n, pairs = case
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from(pairs)
    assert _uf_components(n, pairs) == sorted(sorted(c) for c in nx.connected_components(G))


@pytest.mark.parametrize("name,n", [("walking-arrow", 0), ("chain", 2), ("simplex", 1), ("globe", 1)])
def test_hom_unitors_and_associator(name, n):
    C = builtin(name, n)
    H = hom_profunctor(C)
    assert left_unitor(H).is_iso() and right_unitor(H).is_iso()
    assert associator(H, H, H).is_iso()


def test_composite_counts_chain():
    C = builtin("chain", 1)
    H = hom_profunctor(C)
    HH = compose_profunctors(H, H)
    for c in range(C.n_objects):
        for d in range(C.n_objects):
            assert len(HH(c, d)) == len(H(c, d))
