import json

import pytest
from hypothesis import given, strategies as st

from lieinv.exactmath import BASE, FieldTower, GaussianRational
from lieinv.liealg import (
    AlgebraError,
    LieAlgebra,
    change_basis,
    direct_sum,
    parse_algebra,
    serialize,
    validate,
)


def sl2():
    return LieAlgebra.from_brackets(
        3, {(1, 2): {1: 1}, (2, 3): {3: 1}, (1, 3): {2: 2}}, name="sl(2,C)"
    )


def g21():
    return LieAlgebra.from_brackets(2, {(1, 2): {1: 1}}, name="g2,1")


def g34(a):
    return LieAlgebra.from_brackets(3, {(1, 3): {1: 1}, (2, 3): {2: a}})


# -- validate -----------------------------------------------------------------


def test_validate_sl2_ok():
    rep = validate(sl2())
    assert rep.ok
    assert "ok" in rep.message()


def test_validate_jacobi_violation():
    # scaling c_23^3 breaks Jacobi: the (1,2,3) sum becomes 2(1-c) e2
    bad = LieAlgebra.from_brackets(3, {(1, 2): {1: 1}, (2, 3): {3: 2}, (1, 3): {2: 2}})
    rep = validate(bad)
    assert not rep.ok
    assert rep.kind == "jacobi"
    assert rep.indices[:3] == (1, 2, 3)
    assert not rep.residual.is_zero()


def test_validate_rescaled_c132_still_lie():
    # c_13^2 can take any value: the (1,2,3) Jacobi sum telescopes to zero
    for t in (1, 5, 0):
        lie = LieAlgebra.from_brackets(
            3, {(1, 2): {1: 1}, (2, 3): {3: 1}, (1, 3): {2: t}}
        )
        assert validate(lie).ok


def test_validate_antisymmetry_violation():
    z = BASE.zero()
    o = BASE.one()
    tab = [
        [[z, z], [o, z]],
        [[o, z], [z, z]],
    ]
    rep = validate(LieAlgebra(2, tab))
    assert not rep.ok
    assert rep.kind == "antisymmetry"
    assert rep.indices == (1, 2, 1)


def test_validate_diagonal_antisymmetry():
    # c_{ii}^k must vanish: caught by the antisymmetry scan at i == j
    z = BASE.zero()
    o = BASE.one()
    tab = [[[o, z], [z, z]], [[z, z], [z, z]]]
    rep = validate(LieAlgebra(2, tab))
    assert not rep.ok
    assert rep.kind == "antisymmetry"
    assert rep.indices == (1, 1, 1)


# -- construction --------------------------------------------------------------


def test_from_brackets_antisymmetric_completion():
    lie = g21()
    assert lie.c(1, 2, 1).is_one()
    assert (lie.c(2, 1, 1) + lie.c(1, 2, 1)).is_zero()
    assert lie.c(1, 1, 1).is_zero()


def test_from_brackets_rejects_bad_keys():
    with pytest.raises(AlgebraError):
        LieAlgebra.from_brackets(2, {(2, 1): {1: 1}})
    with pytest.raises(AlgebraError):
        LieAlgebra.from_brackets(2, {(1, 2): {3: 1}})


def test_abelian_is_abelian():
    assert LieAlgebra.abelian(4).is_abelian()
    assert not sl2().is_abelian()


# -- direct sums ---------------------------------------------------------------


def test_direct_sum_two_copies_g21():
    lie = direct_sum(g21(), g21())
    assert lie.dim == 4
    assert lie.c(1, 2, 1).is_one()
    assert lie.c(3, 4, 3).is_one()
    # cross brackets vanish
    for i in (1, 2):
        for j in (3, 4):
            for k in range(1, 5):
                assert lie.c(i, j, k).is_zero()
    assert validate(lie).ok


def test_direct_sum_zero_dim_identity():
    lie = g34(BASE.scalar(-1))
    assert direct_sum(lie, LieAlgebra.abelian(0)) == lie


def test_direct_sum_g34_minus1_g1():
    lie = direct_sum(g34(BASE.scalar(-1)), LieAlgebra.abelian(1))
    assert lie.dim == 4
    assert lie.c(1, 3, 1).is_one()
    assert (lie.c(2, 3, 2) + BASE.one()).is_zero()
    for j in range(1, 4):
        for k in range(1, 5):
            assert lie.c(j, 4, k).is_zero()
    assert validate(lie).ok


def test_direct_sum_dimension_additive():
    assert direct_sum(sl2(), g21()).dim == 5


# -- change of basis -------------------------------------------------------------


def test_change_basis_identity():
    lie = sl2()
    p = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert change_basis(lie, p) == lie


def test_change_basis_swap_g21():
    # e1' = e2, e2' = e1 turns [e1,e2]=e1 into [e1',e2'] = -e2'
    lie = change_basis(g21(), [[0, 1], [1, 0]])
    assert (lie.c(1, 2, 2) + BASE.one()).is_zero()
    assert lie.c(1, 2, 1).is_zero()
    assert validate(lie).ok


def test_change_basis_singular_rejected():
    with pytest.raises(AlgebraError):
        change_basis(g21(), [[1, 1], [1, 1]])


small_entries = st.integers(min_value=-3, max_value=3)


@given(st.lists(st.lists(small_entries, min_size=3, max_size=3), min_size=3, max_size=3))
def test_change_basis_preserves_validity(rows):
    lie = sl2()
    try:
        moved = change_basis(lie, rows)
    except AlgebraError:
        return  # singular sample
    assert validate(moved).ok


def test_change_basis_round_trip():
    p = [[1, 2, 0], [0, 1, 0], [3, 0, 1]]
    pinv = [[1, -2, 0], [0, 1, 0], [-3, 6, 1]]
    lie = sl2()
    assert change_basis(change_basis(lie, p), pinv) == lie


# -- file format -----------------------------------------------------------------


SL2_TEXT = """{
  "format": 1,
  "name": "sl(2,C)",
  "dim": 3,
  "brackets": {
    "1,2": {"1": 1},
    "1,3": {"2": 2},
    "2,3": {"3": 1}
  }
}
"""


def test_parse_sl2():
    lie = parse_algebra(SL2_TEXT)
    assert lie.dim == 3
    assert lie.name == "sl(2,C)"
    assert lie == sl2()
    assert validate(lie).ok


def test_parse_rejects_ji_key():
    with pytest.raises(AlgebraError, match="1 <= i < j"):
        parse_algebra('{"dim": 2, "brackets": {"2,1": {"1": 1}}}')


def test_parse_rejects_duplicate_key():
    text = '{"dim": 2, "brackets": {"1,2": {"1": 1}, "1,2": {"1": 2}}}'
    with pytest.raises(AlgebraError, match="duplicate"):
        parse_algebra(text)


def test_parse_rejects_float_and_bool():
    with pytest.raises(AlgebraError):
        parse_algebra('{"dim": 2, "brackets": {"1,2": {"1": 0.5}}}')
    with pytest.raises(AlgebraError):
        parse_algebra('{"dim": 2, "brackets": {"1,2": {"1": true}}}')


def test_parse_rejects_bad_component():
    with pytest.raises(AlgebraError, match="out of range"):
        parse_algebra('{"dim": 2, "brackets": {"1,2": {"5": 1}}}')


def test_parse_rejects_bad_json():
    with pytest.raises(AlgebraError, match="invalid JSON"):
        parse_algebra("{")


def test_parse_rejects_unknown_format():
    with pytest.raises(AlgebraError, match="format"):
        parse_algebra('{"format": 2, "dim": 1}')


def test_parse_extension_scalar():
    text = json.dumps(
        {
            "dim": 2,
            "extension": {"generator": "s", "minpoly": "s^2-7"},
            "brackets": {"1,2": {"1": "1/4+1/4*s*i", "2": "s"}},
        }
    )
    lie = parse_algebra(text)
    assert not lie.tower.is_base()
    v = lie.c(1, 2, 1)
    s = lie.tower.gen()
    eye = lie.tower.scalar(GaussianRational(0, 1))
    # (1 + s*i)/4: check by clearing denominators
    assert v + v + v + v == lie.tower.one() + s * eye
    assert lie.c(1, 2, 2) == s


def test_serialize_round_trip_examples():
    for lie in (sl2(), g21(), g34(BASE.scalar(2)), LieAlgebra.abelian(4)):
        again = parse_algebra(serialize(lie))
        assert again == lie


def test_serialize_extension_round_trip():
    t = FieldTower.parse("s", "s^2-7")
    lie = LieAlgebra.from_brackets(2, {(1, 2): {1: t.gen()}}, tower=t)
    again = parse_algebra(serialize(lie))
    assert again == lie


def test_serialize_is_deterministic():
    a = serialize(sl2())
    b = serialize(parse_algebra(serialize(sl2())))
    assert a == b
