import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegelmult.sampling import random_sl2, random_sp4
from siegelmult.symplectic import (
    KLINGEN1,
    NONE,
    SIEGEL,
    SiegelPoint,
    SymplecticError,
    act,
    classify_parabolic,
    epsilon,
    format_literal,
    identity,
    in_principal_congruence,
    inverse,
    involution_I,
    iota1,
    iota2,
    iota3,
    is_symplectic,
    j_at_base_exact,
    j_factor,
    make_symplectic,
    mul,
    parse_literal,
    sl2,
    swap_P,
    translation,
)

import random

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def test_standard_alternating_matrix_is_valid():
    assert is_symplectic(make_symplectic([[0, -1], [1, 0]]))


def test_swap_is_valid():
    assert is_symplectic(swap_P())


def test_singular_matrix_rejected():
    with pytest.raises(SymplecticError):
        make_symplectic([[1, 1], [1, 1]])


def test_square_of_deligne_matrix():
    M = sl2(13, 8, 8, 5)
    assert mul(M, M) == sl2(233, 144, 144, 89)


def test_inverse_of_involution_is_negative():
    I1 = involution_I(1)
    assert inverse(I1) == -I1


def test_identity_is_neutral():
    M = sl2(13, 8, 8, 5)
    assert mul(identity(1), M) == M


def test_inversion_fixes_i():
    assert act(sl2(0, -1, 1, 0), SiegelPoint(1j)).Z[0, 0] == pytest.approx(1j)


def test_translation_action():
    Z = SiegelPoint(np.array([[1j, 0.3], [0.3, 2j]]))
    S = ((1, 2), (2, -1))
    assert np.allclose(act(translation(S), Z).Z, Z.Z + np.array(S))


def test_lower_unipotent_action():
    assert act(sl2(1, 0, 1, 1), SiegelPoint(1j)).Z[0, 0] == pytest.approx((1 + 1j) / 2)


def test_j_values():
    assert j_factor(involution_I(2), SiegelPoint.base(2)) == pytest.approx(-1)
    Z = SiegelPoint(np.array([[0.2 + 1j, 0.1], [0.1, 3j]]))
    assert j_factor(translation(((1, 0), (0, 0))), Z) == pytest.approx(1)
    M = make_symplectic([[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 1, 0], [0, 1, 0, 0]])
    assert j_factor(M, SiegelPoint.base(2)) == pytest.approx(-1 + 1j)
    assert j_at_base_exact(M) == (-1, 1)


def test_congruence_membership():
    assert in_principal_congruence(sl2(13, 8, 8, 5), 4)
    assert in_principal_congruence(identity(2), 7)
    assert not in_principal_congruence(sl2(0, -1, 1, 0), 2)


def test_parabolic_classes():
    T = translation(((1, 2), (2, 3)))
    assert classify_parabolic(T) == SIEGEL and epsilon(T) == 1
    K = parse_literal("5,0,3,3;9,1,6,3;3,0,2,0;0,0,0,1")
    assert classify_parabolic(K) == KLINGEN1
    assert classify_parabolic(involution_I(2)) == NONE


def test_iota3_lower_right_block():
    m = sl2(2, 3, 1, 2)
    M = iota3(m)
    assert M.D == ((2, -1), (-3, 2))


def test_swap_conjugates_embeddings():
    P = swap_P()
    m = sl2(0, -1, 1, 0)
    assert mul(P, iota1(m), inverse(P)) == iota2(m)


def test_zero_translation_is_identity():
    assert translation(((0, 0), (0, 0))) == identity(2)


def test_literal_round_trip(tmp_path):
    M = sl2(13, 8, 8, 5)
    assert parse_literal(format_literal(M)) == M
    f = tmp_path / "m.txt"
    f.write_text("13,8;8,5\n")
    assert parse_literal(f"@{f}") == M
    with pytest.raises(SymplecticError):
        parse_literal("1,2;x,4")


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_products_and_inverses_exact(seed):
    rng = random.Random(seed)
    M, N = random_sp4(rng), random_sp4(rng)
    assert is_symplectic(mul(M, N))
    assert mul(M, inverse(M)) == identity(2)
    assert mul(inverse(N), N) == identity(2)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_action_preserves_half_space_and_chain_rule(seed):
    rng = random.Random(seed)
    M, N = random_sp4(rng, bound=10), random_sp4(rng, bound=10)
    Z = SiegelPoint(np.array([[1.1j + 0.3, 0.2 + 0.1j], [0.2 + 0.1j, 0.9j - 0.4]]))
    NZ = act(N, Z)
    assert np.all(np.linalg.eigvalsh(NZ.Z.imag) > 0)
    lhs = j_factor(mul(M, N), Z)
    rhs = j_factor(M, NZ) * j_factor(N, Z)
    assert abs(lhs - rhs) <= 1e-9 * abs(lhs)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_embeddings_are_homomorphisms(seed):
    rng = random.Random(seed)
    m, n = random_sl2(rng), random_sl2(rng)
    for emb in (iota1, iota2, iota3):
        assert emb(mul(m, n)) == mul(emb(m), emb(n))


def test_real_matrices_accepted_with_tolerance():
    t = math.pi
    M = make_symplectic([[math.cos(t / 7), -math.sin(t / 7)], [math.sin(t / 7), math.cos(t / 7)]])
    assert not M.integral
    assert j_factor(M, SiegelPoint(1j)) == pytest.approx(1j * math.sin(t / 7) + math.cos(t / 7))
