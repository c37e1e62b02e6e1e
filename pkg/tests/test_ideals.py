"""kl-ideals: closure, idempotency, enumeration against the recorded brute-force oracle."""

import itertools

import pytest

from tdcat.core import builtin
from tdcat.errors import InputError
from tdcat.ideals import (ArrowIdeal, all_ideals, dimension_ideal, enumerate_idempotent_ideals, ideal_closure,
                          is_idempotent)

ORACLE_CASES = [("terminal", 0), ("walking-arrow", 0), ("chain", 1), ("chain", 2), ("simplex", 1),
                ("simplex", 2), ("globe", 1), ("globe", 2), ("globe", 3)]


def test_closure_examples(walking_arrow, terminal):
    assert ideal_closure(walking_arrow, []).members == frozenset()
    assert len(ideal_closure(terminal, ["id_*"])) == 1
    assert ideal_closure(walking_arrow, ["f"]).names() == ["f"]


def test_idempotency_examples(walking_arrow):
    C = walking_arrow
    assert is_idempotent(ArrowIdeal(C, frozenset()))
    everything = ArrowIdeal(C, frozenset(range(C.n_arrows)))
    rep = is_idempotent(everything)
    assert rep.idempotent and all(C.compose(*rep.factorizations[f]) == f for f in everything.members)
    rep = is_idempotent(ideal_closure(C, ["f"]))
    assert not rep.idempotent and rep.witness == C.arrow("f")


def test_terminal_two_ideals(terminal):
    L = enumerate_idempotent_ideals(terminal)
    assert len(L) == 2 and L.is_chain()


def test_walking_arrow_lattice_is_diamond(walking_arrow):
    L = enumerate_idempotent_ideals(walking_arrow)
    assert [len(I) for I in L.ideals] == [0, 2, 2, 3]
    assert not L.is_chain()
    assert L.total_ideals == 5


@pytest.mark.parametrize("name,n", ORACLE_CASES)
def test_enumeration_matches_oracle(ideal_counts, name, n):
    rec = ideal_counts[name, n]
    C = builtin(name, n)
    L = enumerate_idempotent_ideals(C)
    assert L.total_ideals == rec["ideals_total"]
    assert len(L) == rec["idempotent"]
    assert [len(I) for I in L.ideals] == rec["idempotent_sizes"]
    assert sorted(sorted(I.names()) for I in L.ideals) == sorted(rec["idempotent_members"])


@pytest.mark.parametrize("name,n", ORACLE_CASES + [("simplex", 3)])
def test_lattice_invariants(name, n):
    C = builtin(name, n)
    L = enumerate_idempotent_ideals(C)
    for I in L.ideals:
        assert I.closure_failure() is None
        assert I.square() <= I.members
        assert is_idempotent(I)
    assert len(L.ideals[0]) == 0 and len(L.ideals[-1]) == C.n_arrows
    for a, b in itertools.product(range(len(L)), repeat=2):
        m, j = L.meet[a][b], L.join[a][b]
        assert L.leq(m, a) and L.leq(m, b) and L.leq(a, j) and L.leq(b, j)
        for k in range(len(L)):
            if L.leq(k, a) and L.leq(k, b):
                assert L.leq(k, m)
            if L.leq(a, k) and L.leq(b, k):
                assert L.leq(j, k)


def test_all_ideals_closed_and_distinct():
    C = builtin("chain", 2)
    ideals = all_ideals(C)
    assert len({I.members for I in ideals}) == len(ideals)
    assert all(I.closure_failure() is None for I in ideals)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_simplex_dimension_ideals_form_chain(k):
    C = builtin("simplex", k)
    L = enumerate_idempotent_ideals(C)
    assert L.is_chain()
    found = {I.members for I in L.ideals}
    for d in range(k + 1):
        assert dimension_ideal(C, d).members in found
    assert len(dimension_ideal(C, k)) == C.n_arrows


def test_simplex1_dimension_zero():
    C = builtin("simplex", 1)
    I0 = dimension_ideal(C, 0)
    # everything except id_1
    assert set(I0.names()) == set(C.arrows) - {"id_1"}
    constant_endos = [f for f in C.hom(C.obj("1"), C.obj("1")) if f in I0.members]
    assert len(constant_endos) == 2


def test_globe1_dimension_zero():
    C = builtin("globe", 1)
    assert len(dimension_ideal(C, 0)) == 6


def test_dimension_out_of_range():
    with pytest.raises(InputError):
        dimension_ideal(builtin("simplex", 1), 2)


def test_dot_output(walking_arrow):
    dot = enumerate_idempotent_ideals(walking_arrow).to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 4
