from __future__ import annotations

from fractions import Fraction

import pytest

from closure14 import (MultiplierState, compute_V, compute_X, intermediate_roundtrip,
                       moment_repack_roundtrip, scheme_equivalence)
from closure14.cseries import (COMBO_COEFFS, METRIC, CPoly, RelMoments, SCHEMES,
                               embed, intermediate_from_state, limit_V, limit_X,
                               p_scalars, production_iill, q_scalars,
                               random_rel_moments, repack_moments,
                               unrepack_moments)

F = Fraction


def ppll_state(s=F(1, 2)):
    return MultiplierState.from_sym6(F(0), (F(0),) * 3, (F(0),) * 6, (F(0),) * 3, s)


def generic_state():
    # fixed generic rational state: every block nonzero
    return MultiplierState.from_sym6(
        F(3, 7), (F(1, 2), F(-2, 5), F(1, 3)),
        (F(1, 4), F(-1, 3), F(2, 7), F(1, 5), F(-1, 6), F(1, 9)),
        (F(-3, 8), F(2, 9), F(1, 7)), F(5, 11))


# ---------------------------------------------------------------------------
# CPoly algebra
# ---------------------------------------------------------------------------

def test_cpoly_basic_ring_ops():
    a = CPoly({2: F(1), 0: F(-3)})
    b = CPoly({1: F(2), -2: F(1, 2)})
    assert (a + b).coeffs == {2: F(1), 1: F(2), 0: F(-3), -2: F(1, 2)}
    assert (a * b).coeffs == {3: F(2), 0: F(1, 2), 1: F(-6), -2: F(-3, 2)}
    assert (a - a) == CPoly()
    assert (a**2).coeffs == {4: F(1), 2: F(-6), 0: F(9)}
    assert a.shift(-2).coeffs == {0: F(1), -2: F(-3)}
    assert a.clean_above(2) and not a.clean_above(1)


def test_cpoly_no_zero_coefficients_stored():
    a = CPoly({3: F(1), 1: F(0)})
    assert a.coeffs == {3: F(1)}
    b = a + CPoly({3: F(-1)})
    assert b.coeffs == {} and not b


def test_cpoly_json_roundtrip():
    a = CPoly({4: F(-7, 25), 0: F(3)})
    doc = a.to_json()
    assert doc == {"c_powers": {"0": "3/1", "4": "-7/25"}}
    assert CPoly.from_json(doc) == a


def test_cpoly_rejects_float_state():
    s = MultiplierState.from_sym6(0.25, (0.1, 0, 0), (0,) * 6, (0,) * 3, 0)
    with pytest.raises(TypeError, match="rational"):
        embed(s, "paper")


# ---------------------------------------------------------------------------
# embeddings and scalar invariants
# ---------------------------------------------------------------------------

def test_embed_zero_state():
    e = embed(MultiplierState.zero().to_rational(), "paper")
    assert all(not e.matrix[i][j] for i in range(4) for j in range(4))
    assert all(not e.vector[i] for i in range(4))


def test_embed_pure_ppll_matrix_entries():
    s = F(1, 2)
    e = embed(ppll_state(s), "paper")
    assert e.matrix[0][0] == CPoly({2: -8 * s})
    for i in range(1, 4):
        assert e.matrix[i][i] == CPoly({2: -4 * s})
    assert e.vector[0] == CPoly({3: 8 * s})
    for i in range(1, 4):
        assert not e.vector[i]


def test_embed_vector_leading_agrees_across_schemes():
    state = generic_state()
    leads = []
    for scheme in SCHEMES:
        e = embed(state, scheme)
        leads.append((e.vector[0].coeff(3),
                      tuple(e.vector[i].coeff(2) for i in range(1, 4))))
    assert leads[0] == leads[1] == leads[2]
    assert leads[0][0] == 8 * state.lam_ppll


def test_q1_display():
    # Q1 = c^2(-20 lam_ppll) + (8/3) lam_ll - 4 lam / c^2 for the paper scheme
    state = generic_state()
    q1 = q_scalars(embed(state, "paper"))[0]
    t1 = state.lam_ij[0][0] + state.lam_ij[1][1] + state.lam_ij[2][2]
    assert q1 == CPoly({2: -20 * state.lam_ppll, 0: F(8, 3) * t1, -2: -4 * state.lam})


def test_p0_leading_term():
    # the time component dominates; with the (-,+,+,+) metric the leading
    # coefficient is -64 lam_ppll^2 (the magnitude matches the published 64)
    s = F(1, 2)
    p0 = p_scalars(embed(ppll_state(s), "paper"))[0]
    assert p0.max_power() == 6
    assert p0.coeff(6) == -64 * s * s


def test_metric_flip_breaks_p_side_limits():
    flipped = tuple(-g for g in METRIC)
    state = generic_state()
    e = embed(state, "paper")
    p0 = p_scalars(e, metric=flipped)
    assert p0.coeff(6) == 64 * state.lam_ppll**2
    # with the flipped metric the published combinations are no longer clean
    import closure14.cseries as cs
    orig = cs.METRIC
    try:
        cs.METRIC = flipped
        xl = limit_X(e)
    finally:
        cs.METRIC = orig
    assert not xl.clean and any(name in xl.dirty for name in ("X5", "X6", "X7", "X8"))


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------

def test_limit_X_pure_ppll():
    s = F(3, 4)
    xl = limit_X(embed(ppll_state(s), "paper"))
    assert xl.clean
    assert xl.leading == (s, 0, 0, 0, 0, 0, 0, 0)


def test_limit_V_pure_lam_ill():
    t = F(2, 3)
    state = MultiplierState.from_sym6(F(0), (F(0),) * 3, (F(0),) * 6,
                                      (t, F(0), F(0)), F(0))
    vl = limit_V(embed(state, "paper"))
    assert vl.clean
    assert vl.spatial[0] == (-2 * t, 0, 0)
    assert vl.timelike[0] == 0


def test_limits_match_direct_formulas_all_schemes(random_rational_states):
    for state in random_rational_states[:6]:
        x = compute_X(state).as_tuple()
        v = compute_V(state).as_tuple()
        for scheme in SCHEMES:
            e = embed(state, scheme)
            xl = limit_X(e)
            vl = limit_V(e)
            assert xl.clean and vl.clean, (scheme, xl.dirty, vl.dirty)
            assert tuple(xl.leading) == x
            assert vl.timelike == (8 * state.lam_ppll, x[1], x[2], x[3])
            assert all(vl.spatial[j] == tuple(v[j]) for j in range(4))


def test_limit_timelike_entries_are_the_scalars():
    state = generic_state()
    x = compute_X(state)
    vl = limit_V(embed(state, "paper"))
    assert vl.timelike[1] == x.x2
    assert vl.timelike[2] == x.x3
    assert vl.timelike[3] == x.x4


@pytest.mark.parametrize("name", sorted(COMBO_COEFFS))
def test_corrupting_any_coefficient_breaks_cleanliness(name):
    state = generic_state()
    co = dict(COMBO_COEFFS)
    co[name] = co[name] + F(1, 100)
    e = embed(state, "paper")
    assert not (limit_X(e, co).clean and limit_V(e, co).clean), name


def test_corrupted_k_leaves_c4_coefficient():
    state = ppll_state(F(1))
    co = dict(COMBO_COEFFS)
    co["k"] = co["k"] + F(1, 100)
    xl = limit_X(embed(state, "paper"), co)
    assert not xl.clean and "X2" in xl.dirty


# ---------------------------------------------------------------------------
# intermediate multipliers and repacking
# ---------------------------------------------------------------------------

def test_intermediate_mu_readback():
    state = generic_state()
    im = intermediate_from_state(state)
    # mu_i = 2 c^2 lambda_ill
    for i in range(3):
        assert im.mu_i[i] == CPoly({2: 2 * state.lam_ill[i]})


def test_intermediate_roundtrip_zero_and_random(random_rational_states):
    assert intermediate_roundtrip(MultiplierState.zero().to_rational()).passed
    for state in random_rational_states:
        assert intermediate_roundtrip(state).passed


def test_repack_fiill_row():
    # F_iill = -8 c^4 F2 + 8 c^4 F3 - 4 c^2 F3^ll
    rm = RelMoments(
        f2=CPoly.const(F(2, 3)), f2i=(CPoly(),) * 3, f3=CPoly.const(F(1, 5)),
        f3i=(CPoly(),) * 3,
        f3ij=tuple(tuple(CPoly.const(F(1, 7)) if i == j else CPoly()
                         for j in range(3)) for i in range(3)))
    f, fi, fij, fill, fiill = repack_moments(rm)
    want = CPoly({4: -8 * F(2, 3) + 8 * F(1, 5), 2: -4 * (3 * F(1, 7))})
    assert fiill == want


def test_repack_roundtrip_zero_and_random(rng):
    zero = RelMoments(f2=CPoly(), f2i=(CPoly(),) * 3, f3=CPoly(),
                      f3i=(CPoly(),) * 3,
                      f3ij=tuple((CPoly(),) * 3 for _ in range(3)))
    assert moment_repack_roundtrip(zero).passed
    for _ in range(10):
        assert moment_repack_roundtrip(random_rel_moments(rng)).passed


def test_unrepack_then_repack_identity(rng):
    rm = random_rel_moments(rng)
    blocks = repack_moments(rm)
    rm2 = unrepack_moments(*blocks)
    blocks2 = repack_moments(rm2)
    assert blocks[0] == blocks2[0] and blocks[4] == blocks2[4]


def test_production_trace_relation():
    pll = CPoly.const(F(3, 2))
    assert production_iill(pll) == CPoly({2: F(6)})


# ---------------------------------------------------------------------------
# scheme equivalence
# ---------------------------------------------------------------------------

def test_scheme_equivalence_trivial_states():
    assert scheme_equivalence(MultiplierState.zero().to_rational()).passed
    assert scheme_equivalence(ppll_state()).passed


def test_scheme_equivalence_random(random_rational_states):
    for state in random_rational_states:
        rep = scheme_equivalence(state)
        assert rep.passed, rep.details


def test_literature_scheme_needs_trace_restoration():
    # the raw literature invariants are trace-free: Q1 vanishes identically,
    # so the published combinations only work after xi restores the trace
    state = generic_state()
    e = embed(state, "literature")
    q = q_scalars(e)
    assert not q[0]
    assert e.xi == CPoly({4: 5 * state.lam_ppll,
                          2: -F(2, 3) * (state.lam_ij[0][0] + state.lam_ij[1][1]
                                         + state.lam_ij[2][2]),
                          0: state.lam})
