import pytest

from cpext import catalog as cat
from cpext.bounds import PresentationBoundInput, is_commutator_shaped, presentation_rank_bound
from cpext.groups import commuting_probability
from cpext.suites import PRESENTATION_CASES, parse_filter


def test_catalog_minimum_contents():
    names = {e.name for e in cat.catalog()}
    required = {f"C{n}" for n in range(2, 17)} | {f"D{n}" for n in range(3, 9)}
    required |= {"Q8", "Q16", "S3", "S4", "A4", "A5", "Heis27", "UT3(2)", "UT3(3)", "UT4(2)", "M16", "Phi16"}
    assert required <= names
    assert len(cat.select(max_order=32)) >= 25


def test_every_entry_reproduces_its_order():
    for e in cat.catalog():
        assert cat.get_group(e.name).n == e.order


def test_catalog_examples():
    assert cat.get_group("D4").n == 8
    ut = cat.entry("UT4(2)")
    assert ut.order == 64 and ut.expected["b0"] == [] and ut.provenance["b0"] == "PAPER"
    phi = cat.entry("Phi16")
    assert phi.expected["b0"] == [2] and phi.expected["cp"] == "1/4" and phi.citation
    assert str(commuting_probability(phi.build())) == "1/4"


def test_resolve_spec_file(tmp_path):
    p = tmp_path / "g.json"
    p.write_text('{"type": "abelian", "invariants": [2, 3]}')
    assert cat.resolve_group(str(p)).n == 6
    with pytest.raises(KeyError):
        cat.resolve_group("no-such-group")


def test_commutator_shape():
    def w(s):
        return [(ord(ch) - 97) * 2 if ch.islower() else (ord(ch) - 65) * 2 + 1 for ch in s]

    assert is_commutator_shaped(w("ABab"))
    assert is_commutator_shaped(w("AABaba"))  # u = a, v = ba
    assert not is_commutator_shaped(w("AAbaab"))
    assert not is_commutator_shaped(w("aa"))
    assert not is_commutator_shaped(w("ABabC"))
    assert is_commutator_shaped(w("ABaAab"))  # reduces to ABab


@pytest.mark.parametrize("name,bound", [("UT3(2)", 1), ("C5", 0), ("Phi16", 2)])
def test_presentation_bounds(name, bound):
    rb = presentation_rank_bound(PresentationBoundInput.from_json(PRESENTATION_CASES[name]))
    assert rb.status == "ok" and rb.bound == bound


def test_bound_not_applicable_for_non_minimal():
    data = {"generators": 3, "relators": ["ABabC", "ACac", "BCbc", "aa", "bb", "cc"]}
    rb = presentation_rank_bound(PresentationBoundInput.from_json(data))
    assert rb.status == "not applicable" and rb.d_Q == 2 and rb.bound is None


def test_bound_unverified_when_too_large():
    data = {"generators": 2, "relators": ["ABab"]}
    rb = presentation_rank_bound(PresentationBoundInput.from_json(data), coset_cap=200)
    assert rb.status == "unverified minimality" and rb.bound == 0


def test_filter_parser():
    f = parse_filter("order<=16,pgroup")
    assert f(cat.entry("D4")) and not f(cat.entry("S3")) and not f(cat.entry("C32"))
    assert parse_filter("name=D4|Q8")(cat.entry("Q8"))
    with pytest.raises(ValueError):
        parse_filter("colour=red")
