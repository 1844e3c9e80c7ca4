import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fieldred.gf import (
    FiniteField,
    cube_roots_of_unity,
    field_tower,
    frobenius,
    frobenius_matrix,
    multiplication_matrix,
    params_for,
    prime_power,
    theta,
    theta_inv,
)
from fieldred.linalg import matmul

TOWERS = [(3, 1), (2, 2), (5, 1)]


def _poly_mul_mod(F, a, b, modulus):
    """Schoolbook product of coefficient lists reduced by a monic modulus."""
    d = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = int(F.add[prod[i + j], F.mul[x, y]])
    for k in range(len(prod) - 1, d - 1, -1):
        c = prod[k]
        if c:
            for j in range(d + 1):
                prod[k - d + j] = int(F.sub[prod[k - d + j], F.mul[c, modulus[j]]])
    return prod[:d] + [0] * (d - len(prod[:d]))


@pytest.mark.parametrize("p,k", TOWERS)
def test_top_multiplication_matches_polynomial_oracle(p, k):
    spec = field_tower(p, k)
    top, mid = spec.top, spec.mid
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, top.order, size=(200, 2)):
        da, db = list(top.digits[a]), list(top.digits[b])
        want = _poly_mul_mod(mid, da, db, spec.cubic_poly)
        assert list(top.digits[top.mul[a, b]]) == want


@pytest.mark.parametrize("p,k", TOWERS)
def test_cubic_is_primitive_by_brute_force_order(p, k):
    spec = field_tower(p, k)
    top = spec.top
    x, seen = 1, set()
    for _ in range(top.order - 1):
        seen.add(x)
        x = int(top.mul[x, spec.tau])
    assert x == 1 and len(seen) == top.order - 1


def test_recorded_towers():
    assert field_tower(3, 1).cubic_poly == (1, 0, 2, 1)
    assert field_tower(2, 2).base_poly == (1, 1, 1)
    assert field_tower(2, 2).cubic_poly == (2, 1, 1, 1)
    assert field_tower(5, 1).cubic_poly == (2, 0, 1, 1)


@pytest.mark.parametrize("p,k", TOWERS)
def test_field_axioms_exhaustive_on_mid(p, k):
    F = field_tower(p, k).mid
    e = np.arange(F.order)
    assert (F.add == F.add.T).all() and (F.mul == F.mul.T).all()
    assert (F.add[F.add[e[:, None, None], e[None, :, None]], e[None, None, :]]
            == F.add[e[:, None, None], F.add[e[None, :, None], e[None, None, :]]]).all()
    lhs = F.mul[e[:, None, None], F.add[e[None, :, None], e[None, None, :]]]
    rhs = F.add[F.mul[e[:, None, None], e[None, :, None]], F.mul[e[:, None, None], e[None, None, :]]]
    assert (lhs == rhs).all()
    assert (F.mul[e[1:], F.inv[e[1:]]] == 1).all()
    assert (F.add[e, F.neg] == 0).all()


@given(st.data())
@pytest.mark.parametrize("p,k", TOWERS)
def test_top_field_axioms(p, k, data):
    top = field_tower(p, k).top
    a, b, c = (data.draw(st.integers(0, top.order - 1)) for _ in range(3))
    assert top.mul[a, top.add[b, c]] == top.add[top.mul[a, b], top.mul[a, c]]
    assert top.mul[top.mul[a, b], c] == top.mul[a, top.mul[b, c]]
    assert top.sub[top.add[a, b], b] == a
    if a:
        assert top.mul[a, top.inv[a]] == 1


@given(st.data())
@pytest.mark.parametrize("p,k", TOWERS)
def test_frobenius_is_field_automorphism_of_order_three(p, k, data):
    spec = field_tower(p, k)
    top = spec.top
    a = data.draw(st.integers(0, top.order - 1))
    b = data.draw(st.integers(0, top.order - 1))
    f = top.frob
    assert f[top.add[a, b]] == top.add[f[a], f[b]]
    assert f[top.mul[a, b]] == top.mul[f[a], f[b]]
    assert f[f[f[a]]] == a
    assert frobenius(spec, a, 2) == f[f[a]]


@given(st.data())
@pytest.mark.parametrize("p,k", TOWERS)
def test_theta_matrices(p, k, data):
    spec = field_tower(p, k)
    top, mid = spec.top, spec.mid
    x = data.draw(st.integers(0, top.order - 1))
    t = data.draw(st.integers(1, top.order - 1))
    assert theta_inv(spec, theta(spec, x)) == x
    T = multiplication_matrix(spec, t)
    A = frobenius_matrix(spec)
    row = np.array([theta(spec, x)])
    assert tuple(matmul(mid, row, T)[0]) == theta(spec, top.mul[t, x])
    assert tuple(matmul(mid, row, A)[0]) == theta(spec, top.frob[x])


def test_base_field_is_fixed_by_frobenius():
    for p, k in TOWERS:
        spec = field_tower(p, k)
        fixed = [x for x in range(spec.top.order) if spec.top.frob[x] == x]
        assert fixed == list(range(spec.q))


@pytest.mark.parametrize("q,n,g", [(3, 0, 1), (4, 1, 3), (5, -1, 1), (7, 1, 3), (8, -1, 1), (9, 0, 1)])
def test_params(q, n, g):
    P = params_for(q)
    assert (P.n, P.g, P.v) == (n, g, q * q + q + 1)


@pytest.mark.parametrize("p,k", TOWERS)
def test_cube_roots_count_is_g(p, k):
    spec = field_tower(p, k)
    assert len(cube_roots_of_unity(spec.mid)) == spec.params.g


def test_rejects_bad_orders():
    with pytest.raises(ValueError):
        prime_power(6)
    with pytest.raises(ValueError):
        field_tower(4, 1)
    with pytest.raises(ValueError):
        field_tower(2, 1)
    with pytest.raises(ValueError):
        params_for(2)
    with pytest.raises(ValueError):
        FiniteField.extension(FiniteField.prime(3), (2, 0, 1))  # t^2 + 2 = (t-1)(t+1)


def test_power_and_zero():
    F = field_tower(5, 1).top
    assert F.power(0, 0) == 1 and F.power(0, 5) == 0
    with pytest.raises(ZeroDivisionError):
        F.power(0, -1)
    for x in range(1, F.order):
        assert F.power(x, F.order - 1) == 1
        assert F.mul[F.power(x, -1), x] == 1
