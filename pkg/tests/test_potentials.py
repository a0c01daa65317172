from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from closure14 import (MultiplierState, builtin_materials, compute_V, compute_X,
                       eval_potentials, rotate_state)
from closure14.cseries import embed, limit_V, limit_X

from conftest import random_rotation

F = Fraction


def close(a, b, tol=1e-12, scale=1.0):
    return abs(float(a) - float(b)) <= tol * scale


def loop_V(state):
    """Independent oracle: the four generator vectors as raw index loops."""
    r = range(3)
    L = [[float(state.lam_ij[i][j]) for j in r] for i in r]
    u = [float(x) for x in state.lam_ill]
    l = [float(x) for x in state.lam_i]
    s = float(state.lam_ppll)
    L2 = [[sum(L[i][a] * L[a][j] for a in r) for j in r] for i in r]
    L3 = [[sum(L2[i][a] * L[a][j] for a in r) for j in r] for i in r]
    t1 = sum(L[a][a] for a in r)
    t2 = sum(L2[a][a] for a in r)
    t3 = sum(L3[a][a] for a in r)
    uu = sum(u[a] * u[a] for a in r)
    ul = sum(u[a] * l[a] for a in r)
    uLu = sum(u[a] * L[a][b] * u[b] for a in r for b in r)
    lLu = sum(l[a] * L[a][b] * u[b] for a in r for b in r)

    v0 = [-2 * u[k] for k in r]
    v1 = [(-2 * sum(L[k][h] * u[h] for h in r) + 4 * s * l[k] + 0.8 * t1 * u[k])
          for k in r]
    v2 = [(-2 * sum(L2[k][h] * u[h] for h in r)
           + 1.2 * t1 * sum(L[k][a] * u[a] for a in r)
           + 4 * s * sum(L[k][a] * l[a] for a in r)
           - 0.44 * t1 * t1 * u[k]
           - ul * u[k] + uu * l[k] + t2 * u[k]
           - 2.4 * s * t1 * l[k]) for k in r]
    v3 = [(2 * s * (2 * sum(L2[k][h] * l[h] for h in r)
                    - t2 * l[k]
                    - 1.6 * t1 * sum(L[k][a] * l[a] for a in r)
                    + 0.68 * t1 * t1 * l[k])
           + sum(L[k][h] * l[h] for h in r) * uu
           - 0.8 * t1 * uu * l[k]
           - 0.68 * t1 * t1 * sum(L[k][a] * u[a] for a in r)
           - ul * sum(L[k][b] * u[b] for b in r)
           + t2 * sum(L[k][c] * u[c] for c in r)
           + 0.8 * t1 * ul * u[k]
           + 1.6 * t1 * sum(L2[k][h] * u[h] for h in r)
           + (74.0 / 375.0) * t1**3 * u[k]
           - 0.8 * t1 * t2 * u[k]
           + uLu * l[k]
           - lLu * u[k]
           + (2.0 / 3.0) * t3 * u[k]
           - 2 * sum(L3[k][h] * u[h] for h in r)) for k in r]
    return v0, v1, v2, v3


def test_X_single_ppll():
    s = MultiplierState.from_sym6(0, (0,) * 3, (0,) * 6, (0,) * 3, F(5, 7))
    x = compute_X(s).as_tuple()
    assert x == (F(5, 7), 0, 0, 0, 0, 0, 0, 0)


def test_X_single_diagonal_block_frozen_values():
    s = MultiplierState.from_sym6(0, (0,) * 3, (1, 0, 0, 0, 0, 0), (0,) * 3, 0)
    x = compute_X(s).as_tuple()
    assert x[:4] == (0, 0, 0, 0)
    assert x[4:] == (F(8, 5), F(16, 25), F(12, 125), F(16, 3125))


def test_V_zero_state(zero_state):
    v = compute_V(zero_state)
    assert all(all(c == 0 for c in vec) for vec in v.as_tuple())


def test_V_single_lam_ill():
    t = F(3, 4)
    s = MultiplierState.from_sym6(0, (0,) * 3, (0,) * 6, (t, 0, 0), 0)
    v = compute_V(s)
    assert v.v0 == (-2 * t, 0, 0)
    assert v.v1 == (0, 0, 0)
    assert v.v2 == (0, 0, 0)
    assert v.v3 == (0, 0, 0)


def test_V_matches_loop_oracle(random_states):
    for state in random_states:
        got = compute_V(state).as_tuple()
        want = loop_V(state)
        scale = (1.0 + state.magnitude()) ** 5
        for g, w in zip(got, want):
            for a, b in zip(g, w):
                assert close(a, b, 1e-12, scale)


def test_X_cross_checked_against_exact_limits(random_rational_states):
    # the eight scalars equal the order-c^2 coefficients of the published
    # combinations, as exact rational equalities
    for state in random_rational_states:
        xl = limit_X(embed(state, "paper"))
        assert xl.clean
        assert tuple(xl.leading) == compute_X(state).as_tuple()


def test_V_cross_checked_against_exact_limits(random_rational_states):
    for state in random_rational_states:
        vl = limit_V(embed(state, "paper"))
        assert vl.clean
        v = compute_V(state).as_tuple()
        assert all(vl.spatial[j] == tuple(v[j]) for j in range(4))


def test_rotation_invariance_and_equivariance(rng, random_states):
    for state in random_states[:10]:
        r = random_rotation(rng)
        rotated = rotate_state(state, r)
        scale = (1.0 + state.magnitude()) ** 5
        xa = compute_X(state).as_tuple()
        xb = compute_X(rotated).as_tuple()
        assert all(close(a, b, 1e-12, scale) for a, b in zip(xa, xb))
        va = compute_V(state).as_tuple()
        vb = compute_V(rotated).as_tuple()
        for j in range(4):
            rv = tuple(sum(r[i][k] * va[j][k] for k in range(3)) for i in range(3))
            assert all(close(a, b, 1e-12, scale) for a, b in zip(rv, vb[j]))


@pytest.mark.parametrize("t", [F(2), F(1, 3)])
def test_homogeneity_degrees(t, random_rational_states):
    degrees = (1, 2, 3, 4, 2, 3, 4, 5)
    for state in random_rational_states[:4]:
        scaled = state.map_scalars(lambda v: t * v)
        xa = compute_X(state).as_tuple()
        xb = compute_X(scaled).as_tuple()
        assert all(xb[i] == t ** degrees[i] * xa[i] for i in range(8))


def test_potentials_constant_material(random_states):
    mat = builtin_materials("constant0")
    for state in random_states[:5]:
        p = eval_potentials(state, mat)
        x = compute_X(state)
        v = compute_V(state)
        assert close(p.hprime, 8 * x.x1, 1e-14, 1 + abs(float(x.x1)))
        assert p.phiprime == v.v0


def test_potentials_zero_state(zero_state):
    for name in ("constant0", "linear", "quadratic"):
        p = eval_potentials(zero_state, builtin_materials(name))
        assert float(p.hprime) == 0.0
        assert all(float(c) == 0.0 for c in p.phiprime)


def test_potentials_recomposition_oracle(random_states):
    # recombine separately computed X, V and H values by hand
    mat = builtin_materials("quadratic")
    for state in random_states[:10]:
        p = eval_potentials(state, mat)
        x = compute_X(state)
        v = compute_V(state)
        h = mat.evaluate(tuple(float(c) for c in x.as_tuple()))
        hp = (8 * h[0] * float(x.x1) + h[1] * float(x.x2)
              + h[2] * float(x.x3) + h[3] * float(x.x4))
        scale = 1.0 + abs(hp)
        assert close(p.hprime, hp, 1e-13, scale)
        for k in range(3):
            pk = sum(h[j] * float(v.as_tuple()[j][k]) for j in range(4))
            assert close(p.phiprime[k], pk, 1e-13, 1.0 + abs(pk))
