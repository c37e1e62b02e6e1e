"""order: ccd, lex ccd, way-below, continuity, Scott opens, transfer, generators."""

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tdcat.core import FinPoset, MonotoneMap
from tdcat.errors import NotALattice
from tdcat.generate import all_lattices, all_posets, are_isomorphic, named_poset, random_lattice, random_poset
from tdcat.order import (adjunction_failure, ccd_check, continuity_check, distributivity_oracle, down_sets,
                         downset_lattice, duality_check, generator_restriction, join_dense_subsets, lattice_tables,
                         left_adjoint, random_transfer_triples, retraction_triple, right_adjoint, scott_opens,
                         transfer_ccd, way_below)


def chain(k):
    return named_poset(f"chain{k}")


# -- brute-force oracles


def brute_lattice_tables(P):
    n = len(P)
    join, meet = {}, {}
    for a, b in itertools.product(range(n), repeat=2):
        ub = [c for c in range(n) if P.leq(a, c) and P.leq(b, c)]
        lb = [c for c in range(n) if P.leq(c, a) and P.leq(c, b)]
        join[a, b] = next(c for c in ub if all(P.leq(c, d) for d in ub))
        meet[a, b] = next(c for c in lb if all(P.leq(d, c) for d in lb))
    return join, meet


def brute_distributive(P):
    join, meet = brute_lattice_tables(P)
    n = len(P)
    return all(meet[a, join[b, c]] == join[meet[a, b], meet[a, c]]
               for a, b, c in itertools.product(range(n), repeat=3))


def brute_downsets(P):
    n = len(P)
    return sorted(m for m in range(1 << n)
                  if all(not (m >> j & 1) or all(m >> i & 1 for i in range(n) if P.leq(i, j)) for j in range(n)))


# -- tests


def test_lattice_counts_match_oeis():
    # unlabeled lattices on n elements: A006966
    assert [len(all_lattices(n)) for n in range(1, 7)] == [1, 1, 1, 2, 5, 15]


def test_poset_counts_match_oeis():
    # unlabeled posets: A000112
    assert [len(all_posets(n)) for n in range(0, 6)] == [1, 1, 2, 5, 16, 63]


def test_lattice_tables_match_brute_force():
    for n in range(1, 6):
        for P in all_lattices(n):
            meet, join = lattice_tables(P)
            bj, bm = brute_lattice_tables(P)
            for a, b in itertools.product(range(n), repeat=2):
                assert join[a][b] == bj[a, b]
                assert meet[a][b] == bm[a, b]


def test_not_a_lattice_raises():
    with pytest.raises(NotALattice):
        lattice_tables(named_poset("antichain2"))


def test_downsets_match_brute_force():
    for n in range(0, 5):
        for P in all_posets(n):
            assert sorted(down_sets(P)) == brute_downsets(P)


def test_chain3_is_lex_ccd():
    r = ccd_check(chain(3))
    assert r.ccd and r.lex_ccd and r.complete


def test_m3_and_n5_not_ccd():
    for name in ("M3", "N5"):
        r = ccd_check(named_poset(name))
        assert r.complete and not r.ccd and r.witness is not None
        assert not distributivity_oracle(named_poset(name))


def test_boolean_square_ccd():
    assert ccd_check(named_poset("boolean-square")).ccd


def test_antichain_not_complete():
    r = ccd_check(named_poset("antichain2"))
    assert not r.complete and not r.ccd


def test_totally_below_on_chain_is_strictly_lower_plus_self_except_bottom():
    r = ccd_check(chain(3))
    assert r.totally_below_set(0) == ()
    assert set(r.totally_below_set(2)) == {"0", "1", "2"}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_random_lattice_ccd_iff_distributive(seed):
    P = random_lattice(random.Random(seed), 6, 8)
    assert ccd_check(P).ccd == brute_distributive(P) == distributivity_oracle(P)


def test_galois_adjoints_on_downset_lattice():
    P = named_poset("boolean-square")
    dn = downset_lattice(P)
    join_map = ccd_check(P).join_map
    lower = left_adjoint(join_map)
    assert lower is not None and adjunction_failure(lower, join_map) is None
    # the down-set embedding is right adjoint to join
    down = right_adjoint(join_map)
    assert down is not None
    for i in range(len(P)):
        assert dn.poset.masks[down.mapping[i]] == P.down[i]


def test_left_adjoint_absent():
    P = named_poset("chain2")
    # constant top has the constant-bottom left adjoint
    assert left_adjoint(MonotoneMap(P, P, [1, 1])).mapping == (0, 0)
    # a map with a left adjoint preserves the empty meet (the top); constant bottom does not
    assert left_adjoint(MonotoneMap(P, P, [0, 0])) is None


@pytest.mark.parametrize("n", range(0, 5))
def test_way_below_equals_leq(n):
    for P in all_posets(n):
        wb = way_below(P)
        assert set(wb.relation) == {(P.labels[i], P.labels[j]) for i in range(n) for j in range(n) if P.leq(i, j)}
        assert continuity_check(P).continuous


def test_scott_opens_are_up_sets():
    P = named_poset("N5")
    F = scott_opens(P)
    ups = sorted(m for m in range(1 << len(P)) if P.is_up_closed(m))
    assert sorted(F.masks) == ups


def test_duality_small():
    for P in (chain(3), named_poset("M3"), named_poset("antichain2")):
        d = duality_check(P)
        assert d.opens_ccd and d.points_isomorphic and d.ok


def test_transfer_retraction_triple():
    E = named_poset("boolean-square")
    assert retraction_triple(E, E.mask_of(["0", "a", "1"])) is None  # r has no right adjoint
    q, r, s = retraction_triple(E, E.mask_of(["0", "a"]))
    rep = transfer_ccd(q, r, s)
    assert rep.holds and rep.target.ccd and rep.source.ccd


def test_random_transfer_triples_valid():
    for q, r, s in random_transfer_triples(random.Random(5), 40):
        assert adjunction_failure(q, r) is None and adjunction_failure(r, s) is None
        assert transfer_ccd(q, r, s).holds


def test_generator_restriction():
    E = named_poset("boolean-square")
    subsets = list(join_dense_subsets(E))
    assert subsets
    for g in subsets:
        rep = generator_restriction(E, g)
        assert rep.consistent
    rep = generator_restriction(named_poset("M3"), list(join_dense_subsets(named_poset("M3")))[0])
    assert rep.consistent and rep.tensor is None


def test_isomorphism_check():
    a = FinPoset.from_relation(["x", "y", "z"], [("x", "y")])
    b = FinPoset.from_relation(["p", "q", "r"], [("r", "q")])
    assert are_isomorphic(a, b)
    assert not are_isomorphic(a, named_poset("chain3"))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 7))
def test_random_poset_continuity(seed, n):
    P = random_poset(random.Random(seed), n)
    assert continuity_check(P).continuous
