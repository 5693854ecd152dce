"""The compiled elimination engine must match the pure one bit for bit."""

import copy
import random

import pytest

from lieinv import catalog
from lieinv.cocycle import SixParams, build_der, build_two_cocycle
from lieinv.exactmath import BASE, FieldTower, Poly
from lieinv.invariant import psi
from lieinv.paramlinalg import _engine, _engine_py, bareiss_generic_rank, kernel_profile
from lieinv.paramlinalg.profile import _EngineCtx

_speedups = pytest.importorskip("lieinv.paramlinalg._speedups")

ENGINE_FUNCS = ("echelon", "poly_mul", "trim_flat", "strip_int_content")


def _with_backend(monkeypatch, impl, thunk):
    for name in ENGINE_FUNCS:
        monkeypatch.setattr(_engine, name, getattr(impl, name))
    return thunk()


def _systems():
    x = Poly.x(BASE)
    one = Poly.constant(1)
    yield build_der(catalog.instantiate("sl2"), x, one, one)
    yield build_der(catalog.instantiate("g3.2"), x, one, one)
    phi_twist = SixParams(1, 1, 1, x, x, x)
    yield build_two_cocycle(catalog.instantiate("g3.4", {"a": "2"}), phi_twist)
    # quadratic tower: exercises the block (stride > 2) arithmetic
    lie = catalog.instantiate("g4.8", {"a": "3"})
    t = lie.tower
    yield build_der(lie, Poly.x(t), Poly.constant(t.one()), Poly.constant(t.one()))


def test_kernel_profiles_match_on_real_systems(monkeypatch):
    for m in _systems():
        prof_pure = _with_backend(monkeypatch, _engine_py, lambda: kernel_profile(m))
        prof_fast = _with_backend(monkeypatch, _speedups, lambda: kernel_profile(m))
        assert prof_pure == prof_fast
        rank_pure = _with_backend(monkeypatch, _engine_py, lambda: bareiss_generic_rank(m))
        rank_fast = _with_backend(monkeypatch, _speedups, lambda: bareiss_generic_rank(m))
        assert rank_pure[0] == rank_fast[0]
        assert rank_pure[1] == rank_fast[1]


def test_step_functions_match_on_a_tower_algebra(monkeypatch):
    lie = catalog.instantiate("g4.5(a,-1-a)", {"a": "2"})  # sqrt(3) tower
    f_pure = _with_backend(monkeypatch, _engine_py, lambda: psi(lie))
    f_fast = _with_backend(monkeypatch, _speedups, lambda: psi(lie))
    assert f_pure.generic == f_fast.generic
    assert [(b.modulus, v) for b, v in f_pure.exceptional] == [
        (b.modulus, v) for b, v in f_fast.exceptional
    ]


def _rand_flat(rng, stride, maxdeg=3):
    n = rng.randint(1, maxdeg + 1) * stride
    p = [rng.randint(-9, 9) for _ in range(n)]
    return _engine_py.trim_flat(p, stride)


def _rand_rows(rng, stride, ncols):
    rows = []
    for _ in range(rng.randint(1, 8)):
        row = {}
        for col in range(ncols):
            if rng.random() < 0.5:
                p = _rand_flat(rng, stride)
                if p:
                    row[col] = p
        rows.append(row)
    return rows


SQRT3 = _EngineCtx(FieldTower.parse("s", "s^2-3"))


@pytest.mark.parametrize("stride,red", [(2, None), (SQRT3.stride, SQRT3.red)])
def test_echelon_bitwise_on_random_rows(stride, red):
    rng = random.Random(1234)
    for _ in range(60):
        ncols = rng.randint(1, 6)
        rows = _rand_rows(rng, stride, ncols)
        out_pure = _engine_py.echelon(copy.deepcopy(rows), ncols, stride, red)
        out_fast = _speedups.echelon(copy.deepcopy(rows), ncols, stride, red)
        assert out_pure == out_fast


@pytest.mark.parametrize("stride,red", [(2, None), (SQRT3.stride, SQRT3.red)])
def test_poly_mul_bitwise(stride, red):
    rng = random.Random(99)
    for _ in range(200):
        p = _rand_flat(rng, stride)
        q = _rand_flat(rng, stride)
        assert _engine_py.poly_mul(list(p), list(q), stride, red) == _speedups.poly_mul(
            list(p), list(q), stride, red
        )


def test_strip_int_content_bitwise():
    rng = random.Random(7)
    for _ in range(200):
        v = {c: [rng.randint(-60, 60) * rng.choice([1, 2, 6]) for _ in range(4)] for c in range(3)}
        v = {c: p for c, p in v.items() if any(p)}
        a, b = copy.deepcopy(v), copy.deepcopy(v)
        assert _engine_py.strip_int_content(a) == _speedups.strip_int_content(b)
        assert a == b


def test_trim_flat_edge_cases():
    for stride in (2, 4):
        for data in ([], [0] * stride, [0] * (3 * stride), [1] + [0] * (2 * stride - 1)):
            assert _engine_py.trim_flat(list(data), stride) == _speedups.trim_flat(
                list(data), stride
            )
