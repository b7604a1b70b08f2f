import pytest

import subdiv


def test_digraph_roundtrip():
    d = subdiv.Digraph(3, [(0, 1), (1, 2), (2, 0)])
    assert d.n == 3
    assert d.arc_count() == 3
    assert sorted(d.arcs()) == [(0, 1), (1, 2), (2, 0)]
    assert subdiv.directed_girth(d) == 3
    assert subdiv.directed_girth(subdiv.Digraph(2, [(0, 1)])) is None


def test_find_k3e_on_bioriented_triangle():
    d = subdiv.bioriented_clique(3)
    r = subdiv.find(d, "k3e")
    assert r["status"] == "found"
    ok, msg = subdiv.validate_certificate(d, "k3e", r["certificate"])
    assert ok, msg


def test_two_block_lower_bound():
    r = subdiv.find(subdiv.bioriented_clique(4), "twoblock:3,2")
    assert r["status"] == "not-found"
    assert subdiv.contains_subdivision(subdiv.bioriented_clique(4), "twoblock:3,2")["status"] == "none"


def test_cab_on_circulant_by_construction():
    n, s = 48, 12
    d = subdiv.Digraph(n, [(i, (i + j) % n) for i in range(n) for j in range(1, s + 1)])
    r = subdiv.find(d, "cab:2,1", exact_fallback=False)
    assert r["status"] == "found"
    assert r["route"] == "construction"
    assert subdiv.validate_certificate(d, subdiv.pattern_cab(2, 1), r["certificate"])[0]


def test_tampered_certificate_is_rejected():
    d = subdiv.bioriented_clique(3)
    cert = subdiv.find(d, "k3e")["certificate"]
    cert["paths"][0]["vertices"] = cert["paths"][0]["vertices"][::-1]
    ok, msg = subdiv.validate_certificate(d, "k3e", cert)
    assert not ok and msg


def test_mader_lab():
    assert len(subdiv.enumerate_digraphs(3, 0)) == 64
    rep = subdiv.verify_upper("k3e", 1, 3)
    assert rep["outcome"] == "counterexample"
    assert subdiv.lower_witness("twoblock:3,2") == subdiv.bioriented_clique(4)


def test_errors_carry_kind():
    with pytest.raises(subdiv.SubdivError) as info:
        subdiv.pattern("nope:1")
    assert info.value.kind == "ParseError"
    with pytest.raises(subdiv.SubdivError) as info:
        subdiv.enumerate_digraphs(6, 0)
    assert info.value.kind == "TooLarge"
