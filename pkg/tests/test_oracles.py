import pytest
from hypothesis import given, settings, strategies as st

from nonevade.certify import certificate_complex, verify_certificate
from nonevade.complexes import Complex, order_complex, replay_collapses
from nonevade.corpus import named_corpus, random_complexes
from nonevade.errors import CapExceeded
from nonevade.lattice import generate, parse_lattice
from nonevade.corpus import M3_TEXT, N5_TEXT
from nonevade.oracles import (
    brute_certificate,
    brute_collapsible,
    brute_nonevasive,
    find_noncomplemented_element,
    memo_key,
    mobius,
)


def full_triangle():
    return Complex("abc", [{"a", "b", "c"}])


def hollow_triangle():
    return Complex("abc", [{"a", "b"}, {"a", "c"}, {"b", "c"}])


# --- nonevasiveness -------------------------------------------------------------


def test_point_is_nonevasive():
    assert brute_nonevasive(Complex("a", [{"a"}]))


def test_two_points_are_evasive():
    assert not brute_nonevasive(Complex("ab", [{"a"}, {"b"}]))


def test_full_triangle_is_nonevasive():
    assert brute_nonevasive(full_triangle())


def test_hollow_triangle_is_evasive():
    assert not brute_nonevasive(hollow_triangle())


def test_nonevasive_cap():
    big = Complex([f"v{i}" for i in range(13)],
                  [{f"v{i}"} for i in range(13)])
    with pytest.raises(CapExceeded):
        brute_nonevasive(big)


def test_memo_key_equal_complexes():
    one = Complex(["a", "b"], [{"a", "b"}])
    two = Complex(["b", "a"], [{"b", "a"}])
    assert memo_key(one) == memo_key(two)


# --- collapsibility --------------------------------------------------------------


def test_single_edge_collapses():
    seq = brute_collapsible(Complex("ab", [{"a", "b"}]))
    assert seq is not None and len(seq.pairs) == 1


def test_hollow_triangle_has_no_free_pair():
    assert brute_collapsible(hollow_triangle()) is None


def test_path_collapse_is_replayable():
    c = Complex(["2", "3", "4", "6"], [{"2", "4"}, {"2", "6"}, {"3", "6"}])
    seq = brute_collapsible(c)
    assert seq is not None
    assert len(seq.pairs) == (c.face_count() - 1) // 2 == 3
    replay_collapses(c, seq)


def test_collapse_cap():
    chain = generate("chain", 8)
    c = order_complex(chain.interior_set())
    with pytest.raises(CapExceeded):
        brute_collapsible(c, face_cap=10)


def test_even_face_count_is_never_collapsible():
    two_points = Complex("ab", [{"a"}, {"b"}])
    assert brute_collapsible(two_points) is None


# --- Mobius -------------------------------------------------------------------------


def test_mobius_two_chain():
    assert mobius(generate("chain", 2)) == -1


def test_mobius_boolean():
    # oracle: (-1)^n for rank n
    assert mobius(generate("boolean", 2)) == 1
    assert mobius(generate("boolean", 3)) == -1
    assert mobius(generate("boolean", 4)) == 1


def test_mobius_d12():
    assert mobius(generate("divisor", 12)) == 0


def test_mobius_squarefree_divisor():
    # oracle: number-theoretic Mobius of 30 = (-1)^3
    assert mobius(generate("divisor", 30)) == -1


def test_mobius_dual_invariant():
    for name, lat in named_corpus():
        assert mobius(lat) == mobius(lat.dual())


# --- complementation scan --------------------------------------------------------------


def test_noncomplemented_scan():
    assert find_noncomplemented_element(generate("divisor", 12)) == "2"
    assert find_noncomplemented_element(generate("boolean", 3)) is None
    assert find_noncomplemented_element(generate("chain", 3)) == "a"
    assert find_noncomplemented_element(parse_lattice(M3_TEXT)) is None
    assert find_noncomplemented_element(parse_lattice(N5_TEXT)) is None


# --- cross-oracle implications -----------------------------------------------------------


def test_implication_chain_on_small_corpus():
    # nonevasive => collapsible => reduced Euler 0
    for name, lat in named_corpus():
        interior = lat.interior()
        if not interior or len(interior) > 8:
            continue
        c = order_complex(lat.interior_set())
        if brute_nonevasive(c):
            seq = brute_collapsible(c)
            assert seq is not None, name
            replay_collapses(c, seq)
            assert c.reduced_euler() == 0, name


def test_brute_certificate_agrees_with_brute_nonevasive():
    for name, c in random_complexes(count=25):
        nev = brute_nonevasive(c)
        cert = brute_certificate(c)
        assert (cert is not None) == nev, name
        if cert is not None:
            assert verify_certificate(c, cert).ok, name


def test_certifier_matches_oracle_on_divisors():
    for n in (12, 24, 36, 60):
        lat = generate("divisor", n)
        for x in lat.interior():
            c = certificate_complex(lat, x)
            if len(c.vertices) <= 10:
                assert brute_nonevasive(c)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_mobius_matches_euler_on_random_lattices(seed):
    lat = generate("random", 6, p=0.3, seed=seed)
    mu = mobius(lat)
    interior = lat.interior()
    euler = (order_complex(lat.interior_set()).reduced_euler()
             if interior else -1)
    assert euler == mu
    if find_noncomplemented_element(lat) is not None:
        assert mu == 0
