import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lieinv.cocycle import build_der
from lieinv.exactmath import BASE, Branch, Poly
from lieinv.liealg import LieAlgebra
from lieinv.paramlinalg import (
    ParamMatrix,
    bareiss_generic_rank,
    kernel_basis_at,
    kernel_profile,
    rank_at_point,
    stack_systems,
    subspace_equal,
)

X = Poly.x()
ONE = Poly.one()


def P(*coeffs):
    return Poly(BASE, coeffs)


def XM():
    return ParamMatrix.from_dense([[X, ONE], [ONE, X]])


def zero_matrix(r, c):
    return ParamMatrix(r, c, [[] for _ in range(r)])


def g21_psi():
    return build_der(LieAlgebra.from_brackets(2, {(1, 2): {1: 1}}), X, 1, 1)


# -- bareiss_generic_rank --------------------------------------------------------


def test_bareiss_x_matrix():
    rank, cert = bareiss_generic_rank(XM())
    assert rank == 2
    assert cert.monic() == P(-1, 0, 1).monic()  # associate of x^2 - 1


def test_bareiss_zero_matrix():
    rank, cert = bareiss_generic_rank(zero_matrix(2, 2))
    assert rank == 0
    assert cert.is_one()


def test_bareiss_g21_psi_rank():
    rank, _ = bareiss_generic_rank(g21_psi())
    assert rank == 2


def test_bareiss_certificate_degree_bound():
    m = XM()
    rank, cert = bareiss_generic_rank(m)
    assert cert.degree <= rank * m.max_entry_degree()


# -- rank_at_point ------------------------------------------------------------------


def test_rank_at_scalar_point():
    out = rank_at_point(XM(), BASE.scalar(2))
    assert len(out) == 1
    assert out[0][1] == 2


def test_rank_at_branch_no_split():
    br = Branch(P(-1, 0, 1))  # x^2 - 1
    out = rank_at_point(XM(), br)
    assert len(out) == 1
    got, rank = out[0]
    assert rank == 1
    assert got.modulus.monic() == br.modulus.monic()


def test_rank_at_branch_split():
    m = ParamMatrix.from_dense([[X, Poly.zero()], [Poly.zero(), Poly.zero()]])
    out = rank_at_point(m, Branch(P(0, -1, 1)))  # x^2 - x
    table = {str(br.point()): r for br, r in out}
    assert table == {"0": 0, "1": 1}


def test_rank_split_moduli_multiply_to_input():
    m = ParamMatrix.from_dense([[X, Poly.zero()], [Poly.zero(), Poly.zero()]])
    modulus = P(0, -1, 1)
    out = rank_at_point(m, Branch(modulus))
    prod = Poly.one()
    for br, _ in out:
        prod = prod * br.modulus
    assert prod.monic() == modulus.monic()


# -- kernel_profile ------------------------------------------------------------------


def test_profile_g21_psi():
    prof = kernel_profile(g21_psi())
    assert prof.generic_kernel_dim == 2
    assert [(str(b.point()), d) for b, d in prof.exceptional] == [("0", 3)]


def test_profile_sl2_psi():
    sl2 = LieAlgebra.from_brackets(
        3, {(1, 2): {1: 1}, (2, 3): {3: 1}, (1, 3): {2: 2}}
    )
    prof = kernel_profile(build_der(sl2, X, 1, 1))
    assert prof.generic_kernel_dim == 0
    table = {str(b.point()): d for b, d in prof.exceptional}
    assert table == {"1": 3, "-1": 5, "2": 1}


def test_profile_abelian_no_exceptional():
    prof = kernel_profile(build_der(LieAlgebra.abelian(3), X, 1, 1))
    assert prof.generic_kernel_dim == 9
    assert prof.exceptional == ()


def test_profile_moduli_divide_certificate():
    prof = kernel_profile(g21_psi())
    for br, _ in prof.exceptional:
        _, rem = prof.certificate.divmod(br.modulus)
        assert rem.is_zero()


def test_profile_value_at():
    prof = kernel_profile(g21_psi())
    assert prof.value_at(BASE.zero()) == 3
    assert prof.value_at(BASE.one()) == 2
    assert prof.value_at(BASE.scalar(Fraction(22, 7))) == 2


# -- kernel_basis_at ------------------------------------------------------------------


def test_kernel_basis_zero_matrix():
    basis = kernel_basis_at(zero_matrix(2, 2), BASE.scalar(5))
    assert len(basis) == 2
    std = [[BASE.one(), BASE.zero()], [BASE.zero(), BASE.one()]]
    assert subspace_equal(basis, std)


def test_kernel_basis_line():
    m = ParamMatrix.from_dense([[ONE, ONE], [Poly.zero(), Poly.zero()]])
    basis = kernel_basis_at(m, BASE.scalar(7))
    assert len(basis) == 1
    assert subspace_equal(basis, [[BASE.one(), -BASE.one()]])


def test_kernel_basis_g31_der_at_one():
    g31 = LieAlgebra.from_brackets(3, {(2, 3): {1: 1}})
    basis = kernel_basis_at(build_der(g31, X, 1, 1), BASE.one())
    assert len(basis) == 6


# -- subspace_equal ------------------------------------------------------------------


def test_subspace_equal_trivials():
    one, zero = BASE.one(), BASE.zero()
    a = [[one, zero]]
    assert subspace_equal(a, a)
    assert subspace_equal(a, [[BASE.scalar(2), zero]])
    assert not subspace_equal(a, [[zero, one]])
    assert subspace_equal([], [])
    assert not subspace_equal(a, [])


# -- stack_systems ------------------------------------------------------------------


def test_stack_same_matrix_same_profile():
    m = g21_psi()
    assert kernel_profile(stack_systems(m, m)) == kernel_profile(m)


def test_stack_with_zero_same_profile():
    m = g21_psi()
    z = zero_matrix(3, m.cols)
    assert kernel_profile(stack_systems(z, m)) == kernel_profile(m)


def test_stack_rejects_mismatched_columns():
    with pytest.raises(ValueError):
        stack_systems(zero_matrix(1, 2), zero_matrix(1, 3))


# -- randomized properties ------------------------------------------------------------

coeffs = st.integers(min_value=-3, max_value=3)
poly_st = st.lists(coeffs, min_size=0, max_size=3).map(lambda cs: Poly(BASE, cs))


@st.composite
def matrices(draw):
    rows = draw(st.integers(min_value=1, max_value=4))
    cols = draw(st.integers(min_value=1, max_value=4))
    entries = [[draw(poly_st) for _ in range(cols)] for _ in range(rows)]
    return ParamMatrix.from_dense(entries)


@given(matrices(), st.fractions(min_value=-6, max_value=6, max_denominator=4))
def test_profile_matches_direct_elimination(m, a0):
    prof = kernel_profile(m)
    at = BASE.scalar(a0)
    assert prof.value_at(at) == len(kernel_basis_at(m, at))


@given(matrices(), st.randoms(use_true_random=False))
def test_profile_invariant_under_row_ops(m, rng):
    rows = list(m.sparse_rows())
    rng.shuffle(rows)
    scaled = []
    for row in rows:
        f = Poly.constant(BASE.scalar(rng.choice([1, 2, -1, 3, Fraction(1, 2)])))
        scaled.append([(c, p * f) for c, p in row])
    m2 = ParamMatrix(m.rows, m.cols, scaled, m.tower)
    assert kernel_profile(m2) == kernel_profile(m)


@given(matrices())
def test_profile_invariants(m):
    prof = kernel_profile(m)
    assert prof.generic_kernel_dim == m.cols - prof.generic_rank
    seen = []
    for br, dim in prof.exceptional:
        assert dim > prof.generic_kernel_dim
        mod = br.modulus
        assert mod.monic() == mod
        assert mod.gcd(mod.derivative()).degree == 0  # square-free
        _, rem = prof.certificate.divmod(mod)
        assert rem.is_zero()
        for prev in seen:
            assert prev.gcd(mod).degree == 0  # pairwise coprime
        seen.append(mod)


@given(matrices())
def test_bareiss_and_profile_rank_agree(m):
    rank, cert = bareiss_generic_rank(m)
    prof = kernel_profile(m)
    assert prof.generic_rank == rank
    if rank:
        assert not cert.is_zero()
        assert cert.degree <= rank * m.max_entry_degree()
