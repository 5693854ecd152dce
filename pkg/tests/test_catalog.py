import pytest

from lieinv import catalog, invariant
from lieinv.catalog import CatalogError
from lieinv.exactmath import BASE, FieldTower, parse_scalar
from lieinv.liealg import parse_algebra, serialize, validate


def test_entry_counts():
    assert len(catalog.list_entries()) == 50
    assert len(catalog.list_entries(dim=2)) == 2
    assert len(catalog.list_entries(dim=3)) == 8
    assert len(catalog.list_entries(dim=4)) == 34
    assert len(catalog.list_entries(dim=7)) == 0
    assert len(catalog.list_entries(dim=8)) == 6


def test_entry_order_is_stable():
    names3 = [e.name for e in catalog.list_entries(dim=3)]
    assert names3 == [
        "3g1", "g2.1+g1", "g3.1", "g3.2", "g3.3", "g3.4(-1)", "g3.4(a)", "sl2",
    ]
    names4 = [e.name for e in catalog.list_entries(dim=4)]
    assert names4[:3] == ["4g1", "g2.1+2g1", "g2.1+g2.1"]
    assert names4[16] == "g4.5(a,b)"
    assert names4[-1] == "g4.8(-1/2+1/2*s*i)"
    assert [e.name for e in catalog.list_entries(dim=8)][-1] == "L17.7(a)"


def test_instantiate_g42():
    L = catalog.instantiate("g4.2", {"a": 2})
    assert L.name == "g4.2(2)"
    two = BASE.scalar(2)
    one = BASE.one()
    assert L.c(1, 4, 1) == two
    assert L.c(2, 4, 2) == one
    assert L.c(3, 4, 2) == one and L.c(3, 4, 3) == one
    assert L.c(4, 1, 1) == -two  # antisymmetric completion
    assert validate(L).ok


def test_instantiate_L177():
    L = catalog.instantiate("L17.7", {"a": 1})
    assert L.dim == 8
    assert L.name == "L17.7(1)"
    one = BASE.one()
    assert L.c(1, 3, 5) == -one
    assert L.c(1, 4, 8) == one
    assert L.c(1, 5, 7) == one
    assert L.c(1, 6, 4) == one
    assert L.c(2, 3, 7) == one
    assert L.c(2, 6, 8) == one
    assert L.c(3, 5, 8) == one
    assert sum(1 for i in range(1, 9) for j in range(i + 1, 9)
               for k in range(1, 9) if not L.c(i, j, k).is_zero()) == 7
    assert validate(L).ok


def test_instantiate_refusals():
    with pytest.raises(CatalogError, match=r"a ≠ 0, ±1"):
        catalog.instantiate("g3.4", {"a": 1})
    with pytest.raises(CatalogError, match="excluded"):
        catalog.instantiate("g4.2", {"a": 0})
    with pytest.raises(CatalogError, match="excluded"):
        catalog.instantiate("g4.5", {"a": 2, "b": 2})  # a = b is excluded
    with pytest.raises(CatalogError, match="excluded"):
        catalog.instantiate("L17.7", {"a": 0})
    with pytest.raises(CatalogError, match="unknown"):
        catalog.instantiate("g9.9")
    with pytest.raises(CatalogError, match="takes no parameters"):
        catalog.instantiate("sl2", {"a": 1})
    with pytest.raises(CatalogError, match="needs value"):
        catalog.instantiate("g4.5", {"a": 2})
    with pytest.raises(CatalogError, match="does not take"):
        catalog.instantiate("g4.2", {"a": 3, "z": 1})


def test_instantiate_routes_to_pinned_entries():
    # values excluded from the generic region fall through to their row
    assert catalog.instantiate("g4.2", {"a": 1}).name == "g4.2(1)"
    assert catalog.instantiate("g3.4", {"a": -1}).name == "g3.4(-1)"
    fam = catalog.family("g4.5")
    routed = {}
    for a, b in [(2, 3), (2, -3), (2, 4), (2, 1), (2, -1),
                 (1, 1), (-1, 1), (-2, 1)]:
        _, e, _ = catalog._resolve("g4.5", {"a": a, "b": b})
        routed[(a, b)] = e.name
    assert routed == {
        (2, 3): "g4.5(a,b)",
        (2, -3): "g4.5(a,-1-a)",
        (2, 4): "g4.5(a,a^2)",
        (2, 1): "g4.5(a,1)",
        (2, -1): "g4.5(a,-1)",
        (1, 1): "g4.5(1,1)",
        (-1, 1): "g4.5(-1,1)",
        (-2, 1): "g4.5(-2,1)",
    }
    assert len(fam.entries) == 10


def test_instantiate_by_entry_name():
    L = catalog.instantiate("g4.5(a,1)", {"a": 5})
    assert L.name == "g4.5(5,1)"
    with pytest.raises(CatalogError, match="excluded"):
        catalog.instantiate("g4.5(a,1)", {"a": -2})
    L = catalog.instantiate("g4.2(-2)")
    assert L.name == "g4.2(-2)"


def test_instantiate_quadratic_entries():
    L = catalog.instantiate("g4.5(-1/2+1/2*s*i,-1/2-1/2*s*i)")
    assert L.tower == FieldTower("s", [-3, 0, 1])
    w = L.c(1, 4, 1)
    assert w**3 == 1 and w != 1  # primitive cube root of unity
    assert L.c(2, 4, 2) == w**2
    # same algebra through the family label with literal parameters
    L2 = catalog.instantiate(
        "g4.5", {"a": "-1/2+1/2*s*i", "b": "-1/2-1/2*s*i"}
    )
    assert L2 == L
    L = catalog.instantiate("L17.7(1/4+1/4*s*i)")
    assert L.tower == FieldTower("s", [-7, 0, 1])
    a = -L.c(1, 3, 5)
    assert (4 * a - 1) ** 2 == -7


def test_mixed_extensions_rejected():
    t3 = FieldTower("s", [-3, 0, 1])
    t7 = FieldTower("s", [-7, 0, 1])
    with pytest.raises(CatalogError, match="incompatible"):
        catalog.instantiate("g4.5", {"a": t3.gen(), "b": t7.gen()})


def test_all_instantiations_validate_and_roundtrip():
    for e in catalog.list_entries():
        L = catalog.instantiate(e.name, e.sample_values())
        assert validate(L).ok, e.name
        assert parse_algebra(serialize(L)) == L, e.name


def test_expected_table_g45_spec_point():
    f = catalog.expected_table("g4.5", {"a": 2, "b": 3}, "psi")
    assert f.generic == 4
    assert f.value_at(BASE.scalar(1)) == 6
    for q in ("2", "3", "1/2", "1/3", "2/3", "3/2"):
        assert f.value_at(parse_scalar(q)) == 5
    assert f.value_at(BASE.scalar(7)) == 4
    assert len(f.exceptional) == 7


def test_expected_table_L177_phi():
    f = catalog.expected_table("L17.7", {"a": 2}, "phi")
    assert f.generic == 80
    want = {"0": 104, "1": 82, "-2": 81, "-1/4": 81}
    got = {invariant.format_scalar(p): v for p, v in f.points()}
    assert got == want


def test_expected_table_constants():
    f = catalog.expected_table("2g1", None, "psi")
    assert f.generic == 4 and not f.exceptional and f.cols == 4
    f = catalog.expected_table("4g1", None, "phi0")
    assert f.generic == 24 and f.cols == 24


def test_expected_table_missing_fixture():
    with pytest.raises(CatalogError, match="no phi0 fixture"):
        catalog.expected_table("L17.7", {"a": 2}, "phi0")
    with pytest.raises(CatalogError, match="unknown invariant family"):
        catalog.expected_table("sl2", None, "tau")


def test_sample_values_satisfy_constraints():
    for e in catalog.list_entries():
        if e.params:
            vals = e.sample_values()
            assert set(vals) == set(e.params), e.name
            full = e.resolve(vals)
            assert e.violated(full) is None, e.name


# -- computed functions against fixtures (full sweep is the acceptance
#    suite; this covers every dim <= 3 entry and the exotic dim-4 rows) --

def _check_against_fixtures(name, params=None):
    L = catalog.instantiate(name, params)
    for fam in ("psi", "phi", "phi0"):
        fx = catalog.expected_table(name, params, fam)
        computed = getattr(invariant, fam)(L)
        assert invariant.step_equal(computed, fx), (name, fam)


@pytest.mark.parametrize("name", [e.name for e in catalog.list_entries(dim=2)]
                         + [e.name for e in catalog.list_entries(dim=3)])
def test_low_dim_tables(name):
    params = catalog.entry(name).sample_values()
    _check_against_fixtures(name, params)


@pytest.mark.parametrize("name", [
    "g4.1",
    "g4.7",
    "g4.5(-1/2+1/2*s*i,-1/2-1/2*s*i)",
    "g4.8(-1/2+1/2*s*i)",
    "g4.5(i,-1)",
])
def test_exotic_dim4_tables(name):
    _check_against_fixtures(name)


def test_parametric_dim4_sample_tables():
    _check_against_fixtures("g4.2(a)", {"a": parse_scalar("3")})
    _check_against_fixtures("g4.5(a,b)", {"a": 2, "b": 3})
