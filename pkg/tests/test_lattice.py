"""Lattice layer: Hermite/Smith forms, saturation, unimodular completions.

Expected values for the worked examples were frozen from the enumeration
oracle below (membership by brute-force small integer combinations), which
is independent of the reduction code under test.
"""

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusaffine.intmat import det, from_columns, inverse_unimodular, matmul, matvec
from torusaffine.lattice import (
    LatticeBasis,
    basis_extension,
    complete_to_unimodular,
    coordinates_in,
    hnf,
    is_primitive,
    is_unimodular,
    primitive_part,
    saturate,
    smith_invariants,
    snf_decomposition,
    xgcd,
)


def combo_member(vectors, target, bound=8):
    """Oracle: is target an integer combination of vectors with coefficients
    in [-bound, bound]?  Exhaustive, no clever algebra."""
    k = len(vectors)
    for coeffs in product(range(-bound, bound + 1), repeat=k):
        cand = [0] * len(target)
        for c, v in zip(coeffs, vectors):
            for i, x in enumerate(v):
                cand[i] += c * x
        if tuple(cand) == tuple(target):
            return True
    return False


def same_lattice(vs1, vs2, bound=8):
    return all(combo_member(vs2, v, bound) for v in vs1) and all(
        combo_member(vs1, v, bound) for v in vs2
    )


# ---------------------------------------------------------------- xgcd


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_xgcd_identity(a, b):
    g, x, y = xgcd(a, b)
    assert g == a * x + b * y
    assert g >= 0
    if (a, b) != (0, 0):
        assert a % g == 0 and b % g == 0


# ------------------------------------------------------ primitive_part


def test_primitive_part_examples():
    assert primitive_part((4, 6)) == ((2, 3), 2)
    # sign rule forces the first nonzero entry positive
    assert primitive_part((-3, 3)) == ((1, -1), 3)
    assert primitive_part((0, -5, 0)) == ((0, 1, 0), 5)


def test_primitive_part_zero_vector():
    with pytest.raises(ValueError):
        primitive_part((0, 0, 0))


@given(st.lists(st.integers(-1000, 1000), min_size=1, max_size=5))
def test_primitive_part_roundtrip(v):
    if all(x == 0 for x in v):
        return
    prim, content = primitive_part(v)
    assert content > 0
    assert is_primitive(prim)
    scaled = tuple(content * x for x in prim)
    first = next(x for x in v if x != 0)
    if first > 0:
        assert scaled == tuple(v)
    else:
        assert scaled == tuple(-x for x in v)


# ---------------------------------------------------------------- hnf


def test_hnf_example_det2():
    basis = hnf([(1, 2), (3, 4)])
    assert basis.vectors == ((1, 0), (0, 2))
    assert same_lattice(basis.vectors, [(1, 2), (3, 4)])
    assert not basis.saturated  # index 2 in Z^2


def test_hnf_identity_like():
    assert hnf([(1, 0), (0, 1)]).vectors == ((1, 0), (0, 1))
    assert hnf([(0, 1), (1, 0)]).vectors == ((1, 0), (0, 1))


def test_hnf_rank0():
    assert hnf([(0, 0, 0)]).vectors == ()
    assert hnf([(0, 0), (0, 0)]).rank == 0


def test_hnf_drops_dependent_generators():
    basis = hnf([(2, 4), (1, 2), (3, 6)])
    assert basis.vectors == ((1, 2),)


def test_hnf_shape_convention():
    # pivots positive, entry left of the second pivot reduced into [0, pivot)
    basis = hnf([(2, 1), (0, 5)])
    assert basis.vectors == ((2, 1), (0, 5))
    basis = hnf([(2, -9), (0, 5)])
    assert basis.vectors == ((2, 1), (0, 5))


@st.composite
def small_vectors(draw, maxdim=4):
    n = draw(st.integers(2, maxdim))
    k = draw(st.integers(1, n))
    return [
        tuple(draw(st.integers(-9, 9)) for _ in range(n)) for _ in range(k)
    ]


@given(small_vectors())
@settings(max_examples=150)
def test_hnf_idempotent_and_generation_invariant(vecs):
    basis = hnf(vecs)
    assert hnf(basis.vectors).vectors == basis.vectors if basis.vectors else True
    # adding integer combinations of the generators changes nothing
    extra = tuple(sum(x) for x in zip(*vecs)) if len(vecs) > 1 else vecs[0]
    assert hnf(list(vecs) + [extra]).vectors == basis.vectors


# ------------------------------------------------------- is_unimodular


def test_is_unimodular_examples():
    assert is_unimodular(from_columns([(2, 1), (1, 1)]))
    assert not is_unimodular(from_columns([(2, 0), (0, 2)]))
    assert is_unimodular(((1, 0), (0, -1)))


# ------------------------------------------------------------ smith


def test_smith_examples():
    assert smith_invariants(((1, 0), (0, 1))) == (1, 1)
    assert smith_invariants(((2, 0), (0, 4))) == (2, 4)
    assert smith_invariants(from_columns([(1, 1), (1, -1)])) == (1, 2)


@given(st.integers(1, 4), st.integers(1, 4), st.data())
@settings(max_examples=120)
def test_smith_decomposition_properties(nr, nc, data):
    mat = tuple(
        tuple(data.draw(st.integers(-9, 9)) for _ in range(nc))
        for _ in range(nr)
    )
    d, u, u_inv, v, v_inv = snf_decomposition(mat)
    assert matmul(matmul(u, mat), v) == d
    assert matmul(u, u_inv) == tuple(
        tuple(1 if i == j else 0 for j in range(nr)) for i in range(nr)
    )
    assert matmul(v, v_inv) == tuple(
        tuple(1 if i == j else 0 for j in range(nc)) for i in range(nc)
    )
    diag = [d[i][i] for i in range(min(nr, nc))]
    for i in range(nr):
        for j in range(nc):
            if i != j:
                assert d[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        if b != 0:
            assert a != 0 and b % a == 0
    assert all(x >= 0 for x in diag)


def test_smith_product_is_abs_det():
    mat = ((12, 6, 4), (3, 9, 6), (2, 16, 14))
    invs = smith_invariants(mat)
    prod = 1
    for x in invs:
        prod *= x
    assert prod == abs(det(mat))


# --------------------------------------------------------- saturate


def test_saturate_example():
    basis = hnf([(2, 2, 0), (0, 2, 2)])
    sat = saturate(basis)
    assert sat.saturated
    assert sat.vectors == ((1, 0, -1), (0, 1, 1))
    assert combo_member(sat.vectors, (1, 1, 0))
    # saturation is idempotent
    assert saturate(sat) is sat


def test_saturate_index_equals_smith_product_of_inclusion():
    basis = hnf([(2, 2, 0), (0, 2, 2)])
    sat = saturate(basis)
    coords = [coordinates_in(sat, v) for v in basis.vectors]
    assert all(c is not None for c in coords)
    invs = smith_invariants(from_columns(coords))
    prod = 1
    for x in invs:
        prod *= x
    assert prod == 4


@given(small_vectors())
@settings(max_examples=120)
def test_saturate_properties(vecs):
    basis = hnf(vecs)
    if basis.rank == 0:
        return
    sat = saturate(basis)
    assert sat.saturated
    assert sat.rank == basis.rank
    # every original vector lies in the saturation
    for v in basis.vectors:
        assert coordinates_in(sat, v) is not None


# ----------------------------------------- unimodular completions


def test_complete_to_unimodular_examples():
    assert complete_to_unimodular((1, 0)) == ((1, 0), (0, 1))
    u = complete_to_unimodular((0, 1))
    assert tuple(row[0] for row in u) == (0, 1)
    assert is_unimodular(u)
    u = complete_to_unimodular((2, 3))
    assert tuple(row[0] for row in u) == (2, 3)
    assert is_unimodular(u)


def test_complete_to_unimodular_rejects_imprimitive():
    with pytest.raises(ValueError):
        complete_to_unimodular((2, 4))


@given(st.lists(st.integers(-30, 30), min_size=2, max_size=5))
def test_complete_to_unimodular_property(v):
    if all(x == 0 for x in v):
        return
    prim, _ = primitive_part(v)
    u = complete_to_unimodular(prim)
    assert tuple(row[0] for row in u) == prim
    assert is_unimodular(u)
    # deterministic: same input, same completion
    assert complete_to_unimodular(prim) == u


def test_basis_extension_prefix_columns():
    sat = saturate(hnf([(2, 2, 0), (0, 2, 2)]))
    u = basis_extension(sat)
    assert is_unimodular(u)
    for j, vec in enumerate(sat.vectors):
        assert tuple(row[j] for row in u) == vec
    inverse_unimodular(u)  # exists


def test_basis_extension_requires_saturated():
    with pytest.raises(ValueError):
        basis_extension(hnf([(2, 0), (0, 2)]))


# ------------------------------------------------------ coordinates_in


def test_coordinates_in():
    basis = hnf([(1, 2), (3, 4)])
    assert coordinates_in(basis, (1, 0)) is not None
    assert coordinates_in(basis, (0, 1)) is None
    c = coordinates_in(basis, (4, 6))
    assert c is not None
    assert matvec(basis.matrix(), c) == (4, 6)
