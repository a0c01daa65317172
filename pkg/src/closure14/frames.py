"""Galilean frame machinery: polynomial-in-velocity lifts of the internal
(rest-frame) moments, the induced boost of the multipliers, and the two
frame-invariance residual operators.

The two residual operators express that the entropy density and the
velocity-stripped entropy flux of the closure do not depend on the frame
velocity; the closure built in closure14.potentials satisfies both
identically, which is the central claim this package machine-checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .derivatives import (FluxSet, MomentSet, _potential_jets, _moments_from_grad,
                          fluxes_from_jets, scalar_gradient_blocks,
                          state_moment_pairing)
from .materials import Material
from .state import MultiplierState
from .tensors import dot, matvec, trace, vadd, vscale


def _zero_vec():
    return (0.0, 0.0, 0.0)


def _zero_mat():
    return tuple((0.0, 0.0, 0.0) for _ in range(3))


def _zero_r3():
    return tuple(_zero_mat() for _ in range(3))


@dataclass(frozen=True)
class InternalMoments:
    """Rest-frame moments (m-blocks) and rest-frame flux moments (M-blocks,
    index k first).  Same symmetries as MomentSet / FluxSet."""

    m: object = 0.0
    m_i: tuple = field(default_factory=_zero_vec)
    m_ij: tuple = field(default_factory=_zero_mat)
    m_ill: tuple = field(default_factory=_zero_vec)
    m_iill: object = 0.0
    M_k: tuple = field(default_factory=_zero_vec)
    M_ki: tuple = field(default_factory=_zero_mat)
    M_kij: tuple = field(default_factory=_zero_r3)
    M_kill: tuple = field(default_factory=_zero_mat)
    M_kiill: tuple = field(default_factory=_zero_vec)


def _lift_blocks(b0, b1, b2, b3, b4, v):
    """The binomial velocity lift for one chain of traced symmetric blocks
    (scalar, vector, matrix, traced vector, doubly traced scalar)."""
    v2 = dot(v, v)
    b2v = matvec(b2, v)
    b2tr = trace(b2)
    f0 = b0
    f1 = vadd(vscale(b0, v), b1)
    f2 = tuple(tuple(b0 * v[i] * v[j] + b2[i][j] + b1[i] * v[j] + b1[j] * v[i]
                     for j in range(3)) for i in range(3))
    f3 = vadd(b3, vscale(b2tr, v), vscale(2, b2v), vscale(b0 * v2, v),
              vscale(v2, b1), vscale(2 * dot(b1, v), v))
    f4 = (b4 + b0 * v2 * v2 + 4 * dot(b1, v) * v2 + 2 * b2tr * v2
          + 4 * dot(v, b2v) + 4 * dot(b3, v))
    return f0, f1, f2, f3, f4


def lift_moments(im: InternalMoments, v) -> MomentSet:
    """Lab-frame densities from rest-frame moments at frame velocity v."""
    f0, f1, f2, f3, f4 = _lift_blocks(im.m, im.m_i, im.m_ij, im.m_ill, im.m_iill, v)
    return MomentSet(f=f0, f_i=f1, f_ij=f2, f_ill=f3, f_iill=f4)


def lift_fluxes(im: InternalMoments, v) -> FluxSet:
    """Lab-frame fluxes: G = v_k F + H, with H the k-spectator lift of the
    rest-frame flux moments."""
    f = lift_moments(im, v)
    h = [_lift_blocks(im.M_k[k], im.M_ki[k], im.M_kij[k], im.M_kill[k],
                      im.M_kiill[k], v) for k in range(3)]
    return FluxSet(
        g_k=tuple(v[k] * f.f + h[k][0] for k in range(3)),
        g_ki=tuple(vadd(vscale(v[k], f.f_i), h[k][1]) for k in range(3)),
        g_kij=tuple(tuple(tuple(v[k] * f.f_ij[i][j] + h[k][2][i][j]
                                for j in range(3)) for i in range(3))
                    for k in range(3)),
        g_kill=tuple(vadd(vscale(v[k], f.f_ill), h[k][3]) for k in range(3)),
        g_kiill=tuple(v[k] * f.f_iill + h[k][4] for k in range(3)),
    )


def unlift_moments(f: MomentSet, v) -> InternalMoments:
    """Inverse of lift_moments (the lift by -v)."""
    neg = vscale(-1, v)
    b0, b1, b2, b3, b4 = _lift_blocks(f.f, f.f_i, f.f_ij, f.f_ill, f.f_iill, neg)
    return InternalMoments(m=b0, m_i=b1, m_ij=b2, m_ill=b3, m_iill=b4)


def unlift_fluxes(f: MomentSet, g: FluxSet, v) -> InternalMoments:
    """Recover the rest-frame M-blocks from lab-frame (F, G) at velocity v."""
    neg = vscale(-1, v)
    mpart = unlift_moments(f, v)
    blocks = []
    for k in range(3):
        h0 = g.g_k[k] - v[k] * f.f
        h1 = vadd(g.g_ki[k], vscale(-v[k], f.f_i))
        h2 = tuple(tuple(g.g_kij[k][i][j] - v[k] * f.f_ij[i][j] for j in range(3))
                   for i in range(3))
        h3 = vadd(g.g_kill[k], vscale(-v[k], f.f_ill))
        h4 = g.g_kiill[k] - v[k] * f.f_iill
        blocks.append(_lift_blocks(h0, h1, h2, h3, h4, neg))
    return InternalMoments(
        m=mpart.m, m_i=mpart.m_i, m_ij=mpart.m_ij, m_ill=mpart.m_ill,
        m_iill=mpart.m_iill,
        M_k=tuple(b[0] for b in blocks),
        M_ki=tuple(b[1] for b in blocks),
        M_kij=tuple(b[2] for b in blocks),
        M_kill=tuple(b[3] for b in blocks),
        M_kiill=tuple(b[4] for b in blocks),
    )


def boost_multipliers(state: MultiplierState, v) -> MultiplierState:
    """Multipliers in the frame moving with velocity v, the dual of the
    moment lift: the pairing lambda_A F_A is invariant."""
    lam, l, L, u, s = (state.lam, state.lam_i, state.lam_ij,
                       state.lam_ill, state.lam_ppll)
    v2 = dot(v, v)
    Lv = matvec(L, v)
    uv = dot(u, v)
    lam_b = lam + dot(l, v) + dot(v, Lv) + uv * v2 + s * v2 * v2
    l_b = vadd(l, vscale(2, Lv), vscale(v2, u), vscale(2 * uv, v),
               vscale(4 * s * v2, v))
    L_b = tuple(tuple(L[i][j] + uv * (1 if i == j else 0)
                      + u[i] * v[j] + u[j] * v[i]
                      + 4 * s * v[i] * v[j]
                      + 2 * s * v2 * (1 if i == j else 0)
                      for j in range(3)) for i in range(3))
    u_b = vadd(u, vscale(4 * s, v))
    return MultiplierState(lam=lam_b, lam_i=l_b, lam_ij=L_b, lam_ill=u_b, lam_ppll=s)


def internal_pairing(state: MultiplierState, im: InternalMoments):
    """lambda^I_A m_A contraction against the rest-frame moments."""
    return state_moment_pairing(state, MomentSet(
        f=im.m, f_i=im.m_i, f_ij=im.m_ij, f_ill=im.m_ill, f_iill=im.m_iill))


# ---------------------------------------------------------------------------
# frame-invariance residual operators
# ---------------------------------------------------------------------------

def _residual_h_terms(state: MultiplierState, b: MomentSet):
    return (
        vscale(b.f, state.lam_i),
        vscale(2, matvec(state.lam_ij, b.f_i)),
        vscale(trace(b.f_ij), state.lam_ill),
        vscale(2, matvec(b.f_ij, state.lam_ill)),
        vscale(4 * state.lam_ppll, b.f_ill),
    )


def residual_h_from_blocks(state: MultiplierState, b: MomentSet) -> tuple:
    return vadd(*_residual_h_terms(state, b))


def galilean_residual_h(state: MultiplierState, fn) -> tuple:
    """Apply the density-side invariance operator to a ring-generic scalar
    function of the state (h' itself, or any single closure scalar)."""
    return residual_h_from_blocks(state, scalar_gradient_blocks(fn, state))


def galilean_residual_h_scaled(state: MultiplierState, fn):
    """(residual, scale): scale is the largest term magnitude entering the
    cancellation, making the relative tolerance meaningful for large states."""
    terms = _residual_h_terms(state, scalar_gradient_blocks(fn, state))
    scale = max(max(abs(float(t[i])) for i in range(3)) for t in terms)
    return vadd(*terms), max(scale, 1e-30)


def _residual_phi_entries(state: MultiplierState, hprime, flux: FluxSet, i, k):
    gkij = flux.g_kij[k]
    yield flux.g_k[k] * state.lam_i[i]
    yield 2 * dot(state.lam_ij[i], flux.g_ki[k])
    yield state.lam_ill[i] * trace(gkij)
    yield 2 * dot(gkij[i], state.lam_ill)
    yield 4 * state.lam_ppll * flux.g_kill[k][i]
    if i == k:
        yield hprime


def residual_phi_from_parts(state: MultiplierState, hprime, flux: FluxSet) -> tuple:
    """The flux-side invariance operator on explicit (h', flux-gradient)
    data; rows are the free index i, columns the flux direction k."""
    return tuple(tuple(sum(_residual_phi_entries(state, hprime, flux, i, k))
                       for k in range(3)) for i in range(3))


def galilean_residual_phi(state: MultiplierState, material: Material) -> tuple:
    h, phi = _potential_jets(state, material)
    return residual_phi_from_parts(state, h.val, fluxes_from_jets(phi))


def galilean_residual_phi_scaled(state: MultiplierState, material: Material):
    h, phi = _potential_jets(state, material)
    flux = fluxes_from_jets(phi)
    res = [[0.0] * 3 for _ in range(3)]
    scale = 1e-30
    for i in range(3):
        for k in range(3):
            terms = list(_residual_phi_entries(state, h.val, flux, i, k))
            res[i][k] = sum(terms)
            scale = max(scale, max(abs(float(t)) for t in terms))
    return tuple(tuple(r) for r in res), scale


def galilean_residuals_for_material(state: MultiplierState, material: Material):
    """((mel-residual-h, scale_h), (mel-residual-phi, scale_phi)) for the
    closure potentials of one material, sharing a single jet pass."""
    h, phi = _potential_jets(state, material)
    hb = _moments_from_grad(h.g)
    terms = _residual_h_terms(state, hb)
    scale_h = max(max(max(abs(float(t[i])) for i in range(3)) for t in terms), 1e-30)
    rh = vadd(*terms)
    flux = fluxes_from_jets(phi)
    res = [[0.0] * 3 for _ in range(3)]
    scale_p = 1e-30
    for i in range(3):
        for k in range(3):
            entries = list(_residual_phi_entries(state, h.val, flux, i, k))
            res[i][k] = sum(entries)
            scale_p = max(scale_p, max(abs(float(t)) for t in entries))
    return (rh, scale_h), (tuple(tuple(r) for r in res), scale_p)
