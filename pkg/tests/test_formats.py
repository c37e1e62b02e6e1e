"""File formats: categories, posets, samples; errors carry line numbers."""

import pytest

from tdcat.core import builtin, category_to_text
from tdcat.errors import CategoryError, InputError, ParseError
from tdcat.formats import (load_category, load_poset, load_samples, parse_builtin_ref, parse_category,
                           parse_poset, parse_samples, poset_to_text)
from tdcat.generate import all_posets, are_isomorphic

from conftest import REPO

DATA = REPO / "data"


def test_parse_poset_and_round_trip():
    P = parse_poset("# chain\nelement 0\nelement 1\nelement 2\nle 0 1\nle 1 2\n")
    assert P.leq(P.index("0"), P.index("2"))
    for n in range(5):
        for Q in all_posets(n):
            assert are_isomorphic(parse_poset(poset_to_text(Q)), Q)


def test_malformed_le_reports_line():
    with pytest.raises(ParseError) as e:
        parse_poset("element a\nelement b\nle a\n", path="x.poset")
    assert e.value.line == 3 and "x.poset:line 3" in str(e.value)


def test_unknown_and_duplicate_elements():
    with pytest.raises(ParseError, match="unknown element"):
        parse_poset("element a\nle a b\n")
    with pytest.raises(ParseError, match="duplicate"):
        parse_poset("element a\nelement a\n")


def test_cyclic_poset_rejected():
    with pytest.raises(InputError):
        parse_poset("element a\nelement b\nle a b\nle b a\n")


def test_category_files():
    C = load_category(DATA / "walking-arrow.cat")
    assert C.fingerprint() == builtin("walking-arrow").fingerprint()
    with pytest.raises(CategoryError):
        load_category(DATA / "broken-cycle.cat")
    with pytest.raises(ParseError):
        parse_category("object a\narrow f a b\n")


def test_builtin_refs():
    assert parse_builtin_ref("builtin:simplex:2") == ("simplex", 2)
    assert parse_builtin_ref("builtin:terminal") == ("terminal", 0)
    assert parse_builtin_ref("file.cat") is None
    with pytest.raises(InputError):
        parse_builtin_ref("builtin:")
    assert load_category("builtin:globe:1").n_arrows == 7


def test_builtin_text_round_trip():
    for name, n in [("simplex", 2), ("globe", 2), ("chain", 3), ("monoid-table", 3)]:
        C = builtin(name, n)
        assert parse_category(category_to_text(C)).fingerprint() == C.fingerprint()


def test_sample_files():
    S = load_samples(DATA / "walking-arrow.samples")
    assert [F.name for F in S] == ["collapse"] and S[0].contravariant
    S = load_samples(DATA / "chain1.copresheaves", base=builtin("chain", 1))
    assert not S[0].contravariant and S[0].size() == 3


def test_samples_category_mismatch():
    with pytest.raises(ParseError, match="different category"):
        load_samples(DATA / "walking-arrow.samples", base=builtin("chain", 2))


def test_samples_missing_map_and_bad_object():
    C = builtin("walking-arrow")
    with pytest.raises(ParseError, match="no map"):
        parse_samples("sample s\nat c0 = {p}\nat c1 = {u}\n", base=C)
    with pytest.raises(ParseError) as e:
        parse_samples("sample s\nat nowhere = {p}\n", base=C)
    assert e.value.line == 2
    with pytest.raises(ParseError, match="no category"):
        parse_samples("sample s\n")


def test_poset_file_loads():
    assert len(load_poset(DATA / "M3.poset")) == 5
