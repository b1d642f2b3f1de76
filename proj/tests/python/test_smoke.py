import pytest

import liaison_forge as lf


def test_version():
    assert lf.__version__ == "0.1.0"


def test_corpus_names_include_fixed_entries():
    names = lf.corpus_names()
    assert names[:3] == ["veronese", "bruns_char2", "ht_example"]


def test_veronese_classifies_and_descends():
    entry = lf.corpus_entry("veronese")
    report = lf.classify(entry, 2)
    assert report["verdict"] == "SymmetricDeterminantal"
    assert report["actual_codim"] == 3

    cert = lf.chain(entry, 2, seed=0)
    assert len(cert["steps"]) == 1
    assert cert["terminal"]["is_ci"]


def test_minor_ideal_height_and_groebner():
    entry = lf.corpus_entry("veronese")
    ideal = lf.minor_ideal(entry, 2)
    assert len(ideal["generators"]) == 6
    assert lf.height(ideal) == 3
    gb = lf.groebner(ideal)
    assert gb["height"] == 3


def test_cross_identities_hold():
    checked, failed = lf.verify_cross(lf.corpus_entry("veronese"), 2)
    assert checked > 0
    assert failed == 0


def test_char2_chain_refused():
    entry = lf.corpus_entry("bruns_char2")
    with pytest.raises(lf.CharTwoRefused):
        lf.chain(entry, 2)
    assert issubclass(lf.CharTwoRefused, lf.LiaisonError)


def test_corpus_entry_checks_pass():
    for name in ["veronese", "ht_example", "generic_sym_3_2"]:
        results = lf.run_corpus_entry(name)
        assert results
        assert all(r["pass"] for r in results), name


def test_malformed_matrix_raises():
    with pytest.raises(ValueError):
        lf.classify("{not json", 2)
