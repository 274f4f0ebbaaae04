import pytest
from hypothesis import given, settings, strategies as st

from nonevade.certify import (
    Leaf,
    Prune,
    Split,
    audit_certificate,
    certificate_complex,
    certificate_from_obj,
    certificate_ground,
    certificate_to_obj,
    certify,
    extract_collapses,
    interior_members,
    verify_certificate,
)
from nonevade.complexes import Complex, replay_collapses
from nonevade.corpus import M3_TEXT, N5_TEXT, named_corpus
from nonevade.errors import (
    ElementOnBoundary,
    ParseError,
    UnknownElement,
    VerificationFailed,
)
from nonevade.lattice import generate, parse_lattice


@pytest.fixture
def d12():
    return generate("divisor", 12)


# --- certify: frozen shapes ----------------------------------------------------


def test_certify_chain4():
    cert, _ = certify(generate("chain", 4), "a")
    assert cert == Split("b", "case2_coatom", "a", Leaf("a"), Leaf("a"))


def test_certify_b2_prunes_the_complement():
    cert, _ = certify(generate("boolean", 2), "a")
    assert cert == Prune(("b",), Leaf("a"))


def test_certify_d12_root(d12):
    cert, trace = certify(d12, "2")
    assert isinstance(cert, Split)
    assert cert.vertex == "3"
    assert cert.mode == "case1_atom"
    assert cert.link_element == "6"
    assert cert.lk == Leaf("6")
    assert len(trace) == 7


def test_certify_boundary_rejected(d12):
    with pytest.raises(ElementOnBoundary):
        certify(d12, "1")
    with pytest.raises(ElementOnBoundary):
        certify(d12, "12")
    with pytest.raises(UnknownElement):
        certify(d12, "9")


def test_certify_m3_prunes_both_complements():
    cert, _ = certify(parse_lattice(M3_TEXT), "a")
    assert cert == Prune(("b", "c"), Leaf("a"))


def test_certify_n5():
    cert, _ = certify(parse_lattice(N5_TEXT), "a")
    assert isinstance(cert, Prune) and cert.removed == ("b",)
    assert isinstance(cert.child, Split) and cert.child.vertex == "c"


def test_interior_members_drop_complements(d12):
    assert interior_members(d12, "2") == ("2", "3", "4", "6")
    assert interior_members(d12, "4") == ("2", "4", "6")
    b2 = generate("boolean", 2)
    assert interior_members(b2, "a") == ("a",)


# --- verification -----------------------------------------------------------------


def test_verify_leaf_point():
    assert verify_certificate(Complex("a", [{"a"}]), Leaf("a")).ok
    result = verify_certificate(Complex("a", [{"a"}]), Leaf("b"))
    assert not result.ok


def test_verify_d12_certificate(d12):
    cert, _ = certify(d12, "2")
    complex_ = certificate_complex(d12, "2")
    assert verify_certificate(complex_, cert).ok


def test_verify_rejects_hollow_triangle():
    triangle = Complex("abc", [{"a", "b"}, {"a", "c"}, {"b", "c"}])
    cert = Split("a", "case1_atom", "b",
                 Split("b", "case1_atom", "c", Leaf("c"), Leaf("c")),
                 Leaf("b"))
    result = verify_certificate(triangle, cert)
    assert not result.ok
    assert "lk" in result.path


def test_verify_prune_must_avoid_present_vertices():
    point = Complex("a", [{"a"}])
    assert verify_certificate(point, Prune(("b",), Leaf("a"))).ok
    assert not verify_certificate(point, Prune(("a",), Leaf("a"))).ok


def test_verify_reports_first_failure_path(d12):
    cert, _ = certify(d12, "2")
    broken = Split(cert.vertex, cert.mode, cert.link_element, cert.dl, Leaf("4"))
    result = verify_certificate(certificate_complex(d12, "2"), broken)
    assert not result.ok
    assert result.path[-1] == "lk"


# --- collapse extraction -------------------------------------------------------------


def test_extract_single_edge():
    c = Complex("ab", [{"a", "b"}])
    cert = Split("b", "case2_coatom", "a", Leaf("a"), Leaf("a"))
    seq = extract_collapses(cert, c)
    assert [tuple(sorted(p.free_face)) for p in seq.pairs] == [("b",)]
    assert seq.final_vertex == "a"


def test_extract_d12_matches_frozen_sequence(d12):
    cert, _ = certify(d12, "2")
    complex_ = certificate_complex(d12, "2")
    seq = extract_collapses(cert, complex_)
    assert seq.to_obj() == {
        "pairs": [[["3"], ["3", "6"]], [["4"], ["2", "4"]], [["6"], ["2", "6"]]],
        "final": "2",
    }


def test_extract_point_is_empty():
    seq = extract_collapses(Leaf("a"), Complex("a", [{"a"}]))
    assert seq.pairs == () and seq.final_vertex == "a"


def test_extract_requires_verification():
    c = Complex("ab", [{"a"}, {"b"}])
    with pytest.raises(VerificationFailed):
        extract_collapses(Leaf("a"), c)


def test_extract_pair_count_is_half_the_faces(d12):
    for x in d12.interior():
        cert, _ = certify(d12, x)
        complex_ = certificate_complex(d12, x)
        seq = extract_collapses(cert, complex_)
        assert len(seq.pairs) == (complex_.face_count() - 1) // 2
        replay_collapses(complex_, seq)


# --- serialisation --------------------------------------------------------------------


def test_certificate_json_round_trip(d12):
    cert, _ = certify(d12, "2")
    obj = certificate_to_obj(cert)
    assert certificate_from_obj(obj) == cert
    assert obj["type"] == "split" and obj["z"] == "6"


def test_certificate_from_obj_rejects_garbage():
    with pytest.raises(ParseError):
        certificate_from_obj({"type": "mystery"})
    with pytest.raises(ParseError):
        certificate_from_obj({"type": "split", "vertex": "a"})
    with pytest.raises(ParseError):
        certificate_from_obj([])


def test_certificate_ground(d12):
    cert, _ = certify(d12, "2")
    assert certificate_ground(cert) == frozenset({"2", "3", "4", "6"})


def test_trace_reproduces_certificate_structure(d12):
    # trace entries are recorded in preorder; replaying them rebuilds the tree
    cert, trace = certify(d12, "2")
    entries = iter(trace.entries)

    def rebuild(node):
        entry = next(entries)
        if isinstance(node, Leaf):
            assert entry["case"] == "leaf" and entry["vertex"] == node.vertex
            return
        if isinstance(node, Prune):
            assert entry["case"] == "prune"
            assert tuple(entry["removed"]) == node.removed
            rebuild(node.child)
            return
        assert entry["case"] == node.mode
        assert entry["vertex"] == node.vertex
        assert entry["link_element"] == node.link_element
        rebuild(node.dl)
        rebuild(node.lk)

    rebuild(cert)
    assert next(entries, None) is None


# --- the audit -----------------------------------------------------------------------


def test_audit_accepts_named_corpus_sample():
    for name, lat in named_corpus():
        if len(lat) > 9:
            continue
        for x in lat.interior():
            cert, _ = certify(lat, x)
            report = audit_certificate(lat, x, cert)
            assert report.ok, (name, x, report.failures)


def test_audit_flags_tampered_mode(d12):
    cert, _ = certify(d12, "2")
    tampered = Split(cert.vertex, "case2_atom", cert.link_element, cert.dl, cert.lk)
    report = audit_certificate(d12, "2", tampered)
    assert not report.ok


def test_audit_flags_wrong_link_element(d12):
    cert, _ = certify(d12, "2")
    tampered = Split(cert.vertex, cert.mode, "12", cert.dl, cert.lk)
    report = audit_certificate(d12, "2", tampered)
    assert not report.ok


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=20_000))
def test_certify_verify_audit_random(seed):
    lat = generate("random", 7, p=0.35, seed=seed)
    for x in lat.interior():
        cert, _ = certify(lat, x)
        complex_ = certificate_complex(lat, x)
        assert verify_certificate(complex_, cert).ok
        assert audit_certificate(lat, x, cert).ok
