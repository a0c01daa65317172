"""Moments, fluxes, entropy pair, compatibility residual and the Hessian of
h', all obtained by forward-mode differentiation of the potentials over the
14 multiplier coordinates.

Derivative convention for the symmetric block: the stored off-diagonal
coordinate appears in both (i,j) and (j,i) slots, so the raw coordinate
derivative is twice the tensor-convention entry; gradients are halved on
unpacking so that dh' = (dh'/dlam_ij) dlam_ij holds as a full double-index
contraction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jets import Jet, Jet2
from .materials import Material
from .potentials import compute_X, eval_potentials
from .state import FLAT_DIM, MultiplierState
from .tensors import SYM6_ORDER, dot


@dataclass(frozen=True)
class MomentSet:
    f: object
    f_i: tuple
    f_ij: tuple
    f_ill: tuple
    f_iill: object

    def flat(self) -> tuple:
        return (self.f, *self.f_i,
                *(self.f_ij[i][j] for i, j in SYM6_ORDER),
                *self.f_ill, self.f_iill)


@dataclass(frozen=True)
class FluxSet:
    g_k: tuple        # [k]
    g_ki: tuple       # [k][i], not symmetric
    g_kij: tuple      # [k][i][j], symmetric in (i, j)
    g_kill: tuple     # [k][i]
    g_kiill: tuple    # [k]


def jet_state(state: MultiplierState, order: int = 1) -> MultiplierState:
    """State whose scalars are jets seeded along the 14 flat coordinates."""
    cls = Jet if order == 1 else Jet2
    comps = [cls.seed(float(v), FLAT_DIM, k) for k, v in enumerate(state.flat())]
    return MultiplierState.from_flat(comps)


def _moments_from_grad(g) -> MomentSet:
    f_ij = [[0.0] * 3 for _ in range(3)]
    for k, (i, j) in enumerate(SYM6_ORDER):
        d = g[4 + k] if i == j else g[4 + k] / 2.0
        f_ij[i][j] = d
        f_ij[j][i] = d
    return MomentSet(f=g[0], f_i=tuple(g[1:4]),
                     f_ij=tuple(tuple(r) for r in f_ij),
                     f_ill=tuple(g[10:13]), f_iill=g[13])


def _potential_jets(state: MultiplierState, material: Material, order: int = 1):
    """One differentiation pass: (h' jet, (phi'_1, phi'_2, phi'_3) jets)."""
    if material.supports_jets:
        p = eval_potentials(jet_state(state, order), material)
        return p.hprime, p.phiprime
    # black-box material: chain rule through the X scalars
    if order != 1:
        raise ValueError(
            f"material {material.name!r} has no generic evaluation; "
            "second derivatives need a polynomial material")
    xj = compute_X(jet_state(state, 1)).as_tuple()
    xv = tuple(float(j.val) for j in xj)
    hv = material.evaluate(xv)
    dh = material.gradient(xv)
    hjets = tuple(
        Jet(hv[j], sum((dh[j][i] * xj[i].g for i in range(8)),
                       np.zeros(FLAT_DIM)))
        for j in range(4))
    from .potentials import compute_V, XSet  # late import to keep module load light
    js = jet_state(state, 1)
    x = XSet(*xj)
    v = compute_V(js)
    hprime = 8 * hjets[0] * x.x1 + hjets[1] * x.x2 + hjets[2] * x.x3 + hjets[3] * x.x4
    phi = tuple(hjets[0] * v.v0[k] + hjets[1] * v.v1[k]
                + hjets[2] * v.v2[k] + hjets[3] * v.v3[k] for k in range(3))
    return hprime, phi


def moments_F(state: MultiplierState, material: Material) -> MomentSet:
    h, _ = _potential_jets(state, material)
    return _moments_from_grad(h.g)


def fluxes_G(state: MultiplierState, material: Material) -> FluxSet:
    _, phi = _potential_jets(state, material)
    return fluxes_from_jets(phi)


def fluxes_from_jets(phi) -> FluxSet:
    blocks = [_moments_from_grad(p.g) for p in phi]
    return FluxSet(
        g_k=tuple(b.f for b in blocks),
        g_ki=tuple(b.f_i for b in blocks),
        g_kij=tuple(b.f_ij for b in blocks),
        g_kill=tuple(b.f_ill for b in blocks),
        g_kiill=tuple(b.f_iill for b in blocks),
    )


def compatibility_residual(state: MultiplierState, material: Material) -> tuple:
    """d(phi'_k)/d(lambda) - d(h')/d(lambda_k): zero iff the mass-flux
    equals the momentum density at this state."""
    h, phi = _potential_jets(state, material)
    return tuple(phi[k].g[0] - h.g[1 + k] for k in range(3))


def state_moment_pairing(state: MultiplierState, m: MomentSet):
    """Full contraction lambda_A F_A (the lambda_ij block uses all 9 terms)."""
    acc = state.lam * m.f + dot(state.lam_i, m.f_i) + dot(state.lam_ill, m.f_ill)
    acc = acc + state.lam_ppll * m.f_iill
    for i in range(3):
        for j in range(3):
            acc = acc + state.lam_ij[i][j] * m.f_ij[i][j]
    return acc


def entropy_pair(state: MultiplierState, material: Material):
    """(h, phi_k): entropy density and flux recovered from the potentials by
    the dual (Legendre-type) relation."""
    h, phi = _potential_jets(state, material)
    mom = _moments_from_grad(h.g)
    flux = fluxes_from_jets(phi)
    hval = -h.val + state_moment_pairing(state, mom)
    phik = []
    for k in range(3):
        col = MomentSet(f=flux.g_k[k], f_i=flux.g_ki[k], f_ij=flux.g_kij[k],
                        f_ill=flux.g_kill[k], f_iill=flux.g_kiill[k])
        phik.append(-phi[k].val + state_moment_pairing(state, col))
    return hval, tuple(phik)


@dataclass(frozen=True)
class HessianReport:
    matrix: np.ndarray        # 14x14, second derivatives in flat coordinates
    eigenvalues: np.ndarray
    symmetry_defect: float


def hessian_h(state: MultiplierState, material: Material) -> HessianReport:
    h, _ = _potential_jets(state, material, order=2)
    m = np.asarray(h.h, dtype=float)
    defect = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    sym = 0.5 * (m + m.T)
    return HessianReport(matrix=sym, eigenvalues=np.linalg.eigvalsh(sym),
                         symmetry_defect=defect)


def scalar_gradient_blocks(fn, state: MultiplierState) -> MomentSet:
    """Gradient blocks of an arbitrary ring-generic scalar function of the
    state, in the same tensor convention as moments_F."""
    out = fn(jet_state(state, 1))
    return _moments_from_grad(out.g)


# ---------------------------------------------------------------------------
# central finite differences (the validating oracle for the jet paths)
# ---------------------------------------------------------------------------

def fd_flat_gradient(f, state: MultiplierState, rel_step: float = 1e-6) -> np.ndarray:
    """Central differences of a scalar function along the 14 flat coordinates,
    step 1e-6 * (1 + |component|)."""
    base = [float(v) for v in state.flat()]
    g = np.zeros(FLAT_DIM)
    for k in range(FLAT_DIM):
        h = rel_step * (1.0 + abs(base[k]))
        up = list(base)
        dn = list(base)
        up[k] += h
        dn[k] -= h
        g[k] = (f(MultiplierState.from_flat(tuple(up)))
                - f(MultiplierState.from_flat(tuple(dn)))) / (2.0 * h)
    return g


def fd_moments(state: MultiplierState, material: Material,
               rel_step: float = 1e-6) -> MomentSet:
    g = fd_flat_gradient(lambda s: eval_potentials(s, material).hprime,
                         state, rel_step)
    return _moments_from_grad(g)


def fd_fluxes(state: MultiplierState, material: Material,
              rel_step: float = 1e-6) -> FluxSet:
    grads = [fd_flat_gradient(lambda s: eval_potentials(s, material).phiprime[k],
                              state, rel_step) for k in range(3)]
    blocks = [_moments_from_grad(g) for g in grads]
    return FluxSet(
        g_k=tuple(b.f for b in blocks),
        g_ki=tuple(b.f_i for b in blocks),
        g_kij=tuple(b.f_ij for b in blocks),
        g_kill=tuple(b.f_ill for b in blocks),
        g_kiill=tuple(b.f_iill for b in blocks),
    )


def fd_hessian(state: MultiplierState, material: Material,
               rel_step: float = 1e-6) -> np.ndarray:
    """Finite differences of the moment map: row q is the flat gradient of
    the q-th raw h'-derivative, de-halved back to raw coordinates."""
    base = [float(v) for v in state.flat()]
    m = np.zeros((FLAT_DIM, FLAT_DIM))
    for k in range(FLAT_DIM):
        h = rel_step * (1.0 + abs(base[k]))
        up = list(base)
        dn = list(base)
        up[k] += h
        dn[k] -= h
        gu, _ = _potential_jets(MultiplierState.from_flat(tuple(up)), material)
        gd, _ = _potential_jets(MultiplierState.from_flat(tuple(dn)), material)
        m[k] = (gu.g - gd.g) / (2.0 * h)
    return 0.5 * (m + m.T)
