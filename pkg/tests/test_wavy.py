"""wavy: the way-below comonad, its induced endofunctor, cartesianness and fixed points."""

import itertools

import pytest

from tdcat.core import builtin, hom_profunctor
from tdcat.generate import all_posets, named_poset
from tdcat.ideals import enumerate_idempotent_ideals, ideal_closure
from tdcat.presheaf import Copresheaf, coyoneda, empty, standard_samples
from tdcat.wavy import (InducedComonad, cartesian_spot_check, column_presheaf, fixed_points, hom_comonad,
                        ideal_profunctor, induced_comonad, wavy_profunctor)


def test_singleton_poset_v_is_hom():
    W = wavy_profunctor(named_poset("chain1"))
    assert W.ok and W.V.values == hom_profunctor(W.base).values


def test_chain_and_antichain_comonads():
    for name in ("chain2", "antichain2", "chain3", "M3", "N5"):
        W = wavy_profunctor(named_poset(name))
        assert W.ok, (name, W.checks, W.witnesses)
    W = wavy_profunctor(named_poset("antichain2"))
    C = W.base
    assert all(bool(W.V(a, b)) == (a == b) for a in range(2) for b in range(2))
    assert all(column_presheaf(W.V, y) for y in range(C.n_objects))


@pytest.mark.parametrize("n", range(0, 5))
def test_all_small_posets(n):
    for P in all_posets(n):
        assert wavy_profunctor(P).ok


def test_hom_comonad_fixes_everything():
    C = builtin("walking-arrow")
    W = hom_comonad(C)
    assert W.ok
    T = InducedComonad(W)
    for F in standard_samples(C, Copresheaf):
        assert T.counit(F).is_iso()
        assert cartesian_spot_check(W, F, F).cartesian


def test_induced_on_chain_example():
    P = named_poset("chain2")
    W = wavy_profunctor(P)
    C = W.base
    F = Copresheaf(C, {0: ["x", "y"], 1: ["z"]}, {C.arrow("0<=1"): {"x": "z", "y": "z"}}, name="F")
    VF = induced_comonad(W, F)
    assert [len(VF(a)) for a in range(2)] == [2, 1]
    T = InducedComonad(W)
    assert T.counit(T(F)).is_iso()
    W2 = fixed_points(W, [F])
    assert W2.fixed["F"] and W2.passed


def test_empty_copresheaf_fixed():
    W = wavy_profunctor(named_poset("chain2"))
    E = empty(W.base, Copresheaf)
    assert fixed_points(W, [E]).fixed[E.name]


def test_cartesian_on_chain3_representables():
    W = wavy_profunctor(named_poset("chain3"))
    C = W.base
    for a, b in itertools.product(range(C.n_objects), repeat=2):
        assert cartesian_spot_check(W, coyoneda(C, a), coyoneda(C, b)).cartesian


def test_non_flat_ideal_comonad_fails_nullary():
    C = builtin("chain", 1)
    I = ideal_closure(C, ["id_1"])  # {id_1, 0<=1}: nothing lands in 0
    W = ideal_profunctor(I)
    assert not W.checks["columns flat"] and "flat" in W.witnesses
    F = coyoneda(C, 1)
    rep = cartesian_spot_check(W, F, F)
    assert not rep.nullary and rep.witness[:2] == ("terminal", "0")


def test_ideal_comonads_are_idempotent():
    for name, n in [("walking-arrow", 0), ("chain", 2), ("simplex", 1)]:
        C = builtin(name, n)
        for I in enumerate_idempotent_ideals(C).ideals:
            W = ideal_profunctor(I)
            assert W.checks["V.V = V"] and W.checks["comultiplication natural"]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fixed_points_chains(k):
    W = fixed_points(wavy_profunctor(named_poset(f"chain{k}")))
    assert W.passed, W.failures


def test_fixed_points_nondegenerate_coreflection():
    C = builtin("walking-arrow")
    for I in enumerate_idempotent_ideals(C).ideals:
        W = fixed_points(ideal_profunctor(I))
        assert W.passed, (I, W.failures)
    # the ideal of arrows out of c0 fixes only copresheaves generated at c0
    I = ideal_closure(C, ["id_c0"])
    W = fixed_points(ideal_profunctor(I))
    assert W.fixed["y*(c0)"] and not W.fixed["y*(c1)"]
