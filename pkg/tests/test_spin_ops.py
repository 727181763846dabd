import numpy as np
import pytest
from hypothesis import given, strategies as st

from xxzrect.spin_ops import embed, pauli, pauli_string, two_site

KINDS = ["x", "y", "z"]


def test_pauli_z_convention():
    assert np.array_equal(pauli("z"), np.diag([1, -1]))


def test_raising_lowering():
    assert np.array_equal(pauli("plus") @ pauli("plus"), np.zeros((2, 2)))
    assert np.array_equal(pauli("minus") @ pauli("minus"), np.zeros((2, 2)))
    assert np.allclose(pauli("plus"), (pauli("x") + 1j * pauli("y")) / 2)
    assert np.allclose(pauli("plus") @ pauli("minus") + pauli("minus") @ pauli("plus"), np.eye(2))


def test_pauli_algebra():
    assert np.allclose(pauli("x") @ pauli("y"), 1j * pauli("z"))


@pytest.mark.parametrize("kind", KINDS)
def test_generators_hermitian_traceless_involutive(kind):
    s = pauli(kind)
    assert np.allclose(s, s.conj().T)
    assert np.trace(s) == 0
    assert np.allclose(s @ s, np.eye(2))


def test_pauli_returns_copy_and_rejects_unknown():
    s = pauli("x")
    s[0, 0] = 5
    assert pauli("x")[0, 0] == 0
    with pytest.raises(ValueError):
        pauli("w")


def test_embed_site_one_is_leftmost():
    assert np.array_equal(embed(pauli("z"), 1, 2), np.diag([1, 1, -1, -1]))
    assert np.array_equal(embed(pauli("z"), 2, 2), np.diag([1, -1, 1, -1]))


@pytest.mark.parametrize("site", [1, 2, 3])
def test_embed_identity(site):
    assert np.array_equal(embed(pauli("identity"), site, 3), np.eye(8))


def test_embed_traceless():
    assert embed(pauli("x"), 2, 3).trace() == 0


@pytest.mark.parametrize("site", [0, 4])
def test_embed_site_out_of_range(site):
    with pytest.raises(ValueError):
        embed(pauli("x"), site, 3)


def test_two_site_zz():
    assert np.array_equal(two_site(pauli("z"), 1, pauli("z"), 2, 2), np.diag([1, -1, -1, 1]))


def test_two_site_order_independent():
    a = two_site(pauli("x"), 1, pauli("y"), 3, 3)
    b = two_site(pauli("y"), 3, pauli("x"), 1, 3)
    assert np.array_equal(a, b)


def test_two_site_rejects_same_site():
    with pytest.raises(ValueError):
        two_site(pauli("x"), 2, pauli("z"), 2, 3)


def test_heisenberg_pair_spectrum():
    # written out by hand: sum_b s^b s^b on two spins in the (uu, ud, du, dd) basis
    by_hand = np.array([[1, 0, 0, 0], [0, -1, 2, 0], [0, 2, -1, 0], [0, 0, 0, 1]], dtype=float)
    built = sum(two_site(pauli(b), 1, pauli(b), 2, 2) for b in KINDS)
    assert np.allclose(built, by_hand)
    assert np.allclose(np.linalg.eigvalsh(by_hand), [-3, 1, 1, 1])


def test_pauli_string_matches_products():
    assert np.allclose(pauli_string({1: "x", 3: "z"}, 3), two_site(pauli("x"), 1, pauli("z"), 3, 3))


@given(st.sampled_from(KINDS), st.sampled_from(KINDS), st.integers(1, 4), st.integers(1, 4))
def test_disjoint_embeddings_commute(a, b, i, j):
    if i == j:
        return
    A, B = embed(pauli(a), i, 4), embed(pauli(b), j, 4)
    assert np.allclose(A @ B, B @ A)


@given(st.sampled_from(KINDS), st.integers(1, 3))
def test_embed_preserves_spectrum_with_degeneracy(kind, site):
    E = embed(pauli(kind), site, 3)
    assert np.allclose(E, E.conj().T)
    assert np.allclose(np.linalg.eigvalsh(E), [-1] * 4 + [1] * 4)
