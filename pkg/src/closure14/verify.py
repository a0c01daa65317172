"""Seeded verification suites with machine-readable reports.

Each suite draws its own per-trial random streams from (seed, suite id,
trial index), so reports are reproducible byte-for-byte for a given (seed,
trials, version) regardless of execution order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._version import __version__
from .cseries import (COMBO_COEFFS, SCHEMES, embed, intermediate_roundtrip,
                      limit_V, limit_X, moment_repack_roundtrip,
                      random_rel_moments, scheme_equivalence)
from .derivatives import (MomentSet, _moments_from_grad, _potential_jets,
                          compatibility_residual, fd_flat_gradient, fd_hessian,
                          hessian_h, jet_state, state_moment_pairing)
from .frames import (InternalMoments, _residual_h_terms, boost_multipliers,
                     galilean_residuals_for_material, internal_pairing,
                     lift_fluxes, lift_moments, unlift_fluxes)
from .materials import ACCEPTANCE_MATERIALS, builtin_materials
from .potentials import compute_V, compute_X, eval_potentials
from .report import ResidualReport
from .state import (MultiplierState, auxiliary_identity_residual,
                    hamilton_cayley_residual, sample_rational_state, sample_state,
                    state_to_json)
from .tensors import max_abs, vadd

SUITE_NAMES = ("compatibility", "equivalence", "galilean", "gradcheck",
               "identities", "limits", "roundtrips")

_SUITE_IDS = {name: i + 1 for i, name in enumerate(SUITE_NAMES)}

_DEFAULT_TRIALS = {
    "galilean": 1000,
    "identities": 500,
    "gradcheck": 100,
    "limits": 100,
    "equivalence": 100,
    "roundtrips": 100,
    "compatibility": 500,
}

_DEFAULT_TOLS = {
    "galilean": 1e-9,
    "identities": 1e-12,
    "gradcheck": 1e-6,
    "compatibility": 1e-10,
}


@dataclass
class SuiteConfig:
    seed: int = 20240817
    trials: int | None = None          # None: per-suite defaults
    tol: float | None = None           # None: per-suite defaults
    scheme: str = "paper"
    suites: tuple = SUITE_NAMES
    corrupt: dict = field(default_factory=dict)   # test hook: name -> delta

    def __post_init__(self):
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.tol is not None and self.tol <= 0:
            raise ValueError("tol must be > 0")
        unknown = set(self.suites) - set(SUITE_NAMES)
        if unknown:
            raise ValueError(f"unknown suite(s) {sorted(unknown)}")
        if self.scheme not in SCHEMES + ("all",):
            raise ValueError(f"unknown scheme {self.scheme!r}")

    def n(self, suite: str) -> int:
        return self.trials if self.trials is not None else _DEFAULT_TRIALS[suite]

    def tolerance(self, suite: str) -> float:
        return self.tol if self.tol is not None else _DEFAULT_TOLS[suite]

    def coefficients(self):
        if not self.corrupt:
            return None
        co = dict(COMBO_COEFFS)
        for name, delta in self.corrupt.items():
            if name not in co:
                raise ValueError(f"unknown coefficient {name!r}")
            co[name] = co[name] + Fraction(delta).limit_denominator(10**6)
        return co


def _rng(config: SuiteConfig, suite: str, trial: int):
    return np.random.default_rng([config.seed, _SUITE_IDS[suite], trial])


class _Worst:
    """Track the largest residual and its witness state."""

    def __init__(self):
        self.value = 0.0
        self.state = None

    def update(self, value: float, state: MultiplierState):
        if value >= self.value:
            self.value = float(value)
            self.state = state

    def report(self, suite, trials, seed, tol, details=None) -> ResidualReport:
        return ResidualReport(
            suite=suite, trials=trials, seed=seed, max_residual=self.value,
            worst_state=None if self.state is None else state_to_json(self.state),
            passed=self.value <= tol, details=details or {})


def run_galilean(config: SuiteConfig) -> ResidualReport:
    """Frame-invariance residuals: both operators for every built-in
    material, the density operator for each closure scalar, the flux
    operator for every unit material."""
    trials = config.n("galilean")
    tol = config.tolerance("galilean")
    materials = [builtin_materials(n) for n in ACCEPTANCE_MATERIALS]
    worst = _Worst()
    for t in range(trials):
        rng = _rng(config, "galilean", t)
        state = sample_state(rng)
        for mat in materials:
            (rh, sh), (rp, sp) = galilean_residuals_for_material(state, mat)
            worst.update(max_abs(rh) / sh, state)
            worst.update(max_abs(rp) / sp, state)
        xs = compute_X(jet_state(state))
        for xj in xs.as_tuple():
            blocks = _moments_from_grad(xj.g)
            terms = _residual_h_terms(state, blocks)
            scale = max(max(abs(float(v)) for v in term) for term in terms)
            worst.update(max_abs(vadd(*terms)) / max(scale, 1e-30), state)
    return worst.report("galilean", trials, config.seed, tol)


def run_identities(config: SuiteConfig) -> ResidualReport:
    """Hamilton-Cayley and the auxiliary matrix identity: exact zero on
    rational states, tolerance-scaled zero on float states.  Also checks the
    invariant scalars against rotations implicitly via the frames suite."""
    trials = config.n("identities")
    tol = config.tolerance("identities")
    worst = _Worst()
    exact_fail = 0
    for t in range(trials):
        rng = _rng(config, "identities", t)
        state = sample_state(rng, magnitude=2.0)
        m = max(1.0, state.magnitude())
        hc = hamilton_cayley_residual(state.lam_ij)
        aux = auxiliary_identity_residual(state)
        worst.update(max_abs(hc) / m**3, state)
        worst.update(max_abs(aux) / m**4, state)
        q = state.to_rational(1000)
        if max_abs(hamilton_cayley_residual(q.lam_ij)) != 0:
            exact_fail += 1
        if max_abs(auxiliary_identity_residual(q)) != 0:
            exact_fail += 1
    rep = worst.report("identities", trials, config.seed, tol,
                       details={"exact_failures": exact_fail} if exact_fail else None)
    rep.passed = rep.passed and exact_fail == 0
    return rep


def run_gradcheck(config: SuiteConfig) -> ResidualReport:
    """Forward-mode gradients and Hessians against central differences."""
    trials = config.n("gradcheck")
    tol = config.tolerance("gradcheck")
    mats = [builtin_materials(n) for n in ACCEPTANCE_MATERIALS]
    worst = _Worst()
    hess_worst = 0.0
    for t in range(trials):
        rng = _rng(config, "gradcheck", t)
        state = sample_state(rng)
        mat = mats[t % len(mats)]
        h, phi = _potential_jets(state, mat)
        fd_h = fd_flat_gradient(lambda s: eval_potentials(s, mat).hprime, state)
        scale = max(1.0, float(np.max(np.abs(fd_h))))
        worst.update(float(np.max(np.abs(h.g - fd_h))) / scale, state)
        for k in range(3):
            fd_p = fd_flat_gradient(
                lambda s, k=k: eval_potentials(s, mat).phiprime[k], state)
            scale = max(1.0, float(np.max(np.abs(fd_p))))
            worst.update(float(np.max(np.abs(phi[k].g - fd_p))) / scale, state)
        if t % 7 == 3:
            hr = hessian_h(state, mat)
            fd = fd_hessian(state, mat)
            scale = max(1.0, float(np.max(np.abs(fd))))
            hess_worst = max(hess_worst, float(np.max(np.abs(hr.matrix - fd))) / scale)
    rep = worst.report("gradcheck", trials, config.seed, tol,
                       details={"hessian_max_residual": hess_worst})
    rep.passed = rep.passed and hess_worst <= 10 * tol
    return rep


def run_limits(config: SuiteConfig) -> ResidualReport:
    """Exact large-c limits: every combination clean, leading coefficients
    equal to compute_X / compute_V, as rational equalities."""
    trials = config.n("limits")
    schemes = SCHEMES if config.scheme == "all" else (config.scheme,)
    coeffs = config.coefficients()
    failures = 0
    detail = {}
    worst_state = None
    for t in range(trials):
        rng = _rng(config, "limits", t)
        state = sample_rational_state(rng)
        x_direct = compute_X(state).as_tuple()
        v_direct = compute_V(state).as_tuple()
        for scheme in schemes:
            e = embed(state, scheme)
            xl = limit_X(e, coeffs)
            vl = limit_V(e, coeffs)
            ok = (xl.clean and vl.clean
                  and tuple(xl.leading) == tuple(x_direct)
                  and vl.timelike == (8 * Fraction(state.lam_ppll),
                                      x_direct[1], x_direct[2], x_direct[3])
                  and all(vl.spatial[j] == tuple(v_direct[j]) for j in range(4)))
            if not ok:
                failures += 1
                worst_state = state
                detail.setdefault(scheme, {"dirty": list(xl.dirty + vl.dirty),
                                           "trial": t})
    return ResidualReport(
        suite="limits", trials=trials, seed=config.seed,
        max_residual=float(failures),
        worst_state=None if worst_state is None else state_to_json(worst_state),
        passed=failures == 0, details=detail)


def run_equivalence(config: SuiteConfig) -> ResidualReport:
    trials = config.n("equivalence")
    failures = 0
    worst_state = None
    detail = {}
    for t in range(trials):
        rng = _rng(config, "equivalence", t)
        state = sample_rational_state(rng)
        rep = scheme_equivalence(state)
        if not rep.passed:
            failures += 1
            worst_state = state
            detail = rep.details
    return ResidualReport(
        suite="equivalence", trials=trials, seed=config.seed,
        max_residual=float(failures),
        worst_state=None if worst_state is None else state_to_json(worst_state),
        passed=failures == 0, details=detail)


def run_roundtrips(config: SuiteConfig) -> ResidualReport:
    """Exact frame algebra: boost composition, pairing invariance, the
    moment/flux lift round-trips and the two intermediate round-trips."""
    trials = config.n("roundtrips")
    failures = 0
    worst_state = None
    for t in range(trials):
        rng = _rng(config, "roundtrips", t)
        state = sample_rational_state(rng)
        v = tuple(Fraction(rng.uniform(-1, 1)).limit_denominator(100) for _ in range(3))
        w = tuple(Fraction(rng.uniform(-1, 1)).limit_denominator(100) for _ in range(3))
        ok = boost_multipliers(boost_multipliers(state, v), w) == \
            boost_multipliers(state, tuple(v[i] + w[i] for i in range(3)))

        im = _random_internal(rng)
        lifted = lift_moments(im, v)
        ok = ok and state_moment_pairing(state, lifted) == \
            internal_pairing(boost_multipliers(state, v), im)
        back = lift_moments(_moment_as_internal(lifted), tuple(-c for c in v))
        ok = ok and _moment_eq(back, MomentSet(im.m, im.m_i, im.m_ij,
                                               im.m_ill, im.m_iill))
        fl = lift_fluxes(im, v)
        rec = unlift_fluxes(lifted, fl, v)
        ok = ok and rec == im

        ok = ok and intermediate_roundtrip(state).passed
        ok = ok and moment_repack_roundtrip(random_rel_moments(rng)).passed
        if not ok:
            failures += 1
            worst_state = state
    return ResidualReport(
        suite="roundtrips", trials=trials, seed=config.seed,
        max_residual=float(failures),
        worst_state=None if worst_state is None else state_to_json(worst_state),
        passed=failures == 0)


def run_compatibility(config: SuiteConfig) -> ResidualReport:
    """Mass-flux compatibility: identically zero for constant materials;
    the X5-coupled material must yield a nonzero witness."""
    trials = config.n("compatibility")
    tol = config.tolerance("compatibility")
    constants = [builtin_materials(f"constant{j}") for j in range(4)]
    x5 = builtin_materials("x5-coupled")
    worst = _Worst()
    witness = 0.0
    witness_state = None
    for t in range(trials):
        rng = _rng(config, "compatibility", t)
        state = sample_state(rng)
        for mat in constants:
            worst.update(max_abs(compatibility_residual(state, mat)), state)
        r = max_abs(compatibility_residual(state, x5))
        if r > witness:
            witness = r
            witness_state = state_to_json(state)
    rep = worst.report("compatibility", trials, config.seed, tol,
                       details={"x5_witness_residual": witness,
                                "x5_witness_state": witness_state})
    rep.passed = rep.passed and witness > 1e-3
    return rep


_RUNNERS = {
    "galilean": run_galilean,
    "identities": run_identities,
    "gradcheck": run_gradcheck,
    "limits": run_limits,
    "equivalence": run_equivalence,
    "roundtrips": run_roundtrips,
    "compatibility": run_compatibility,
}


def run_suites(config: SuiteConfig) -> list:
    """Run the configured suites; reports sorted by suite name."""
    return [_RUNNERS[name](config) for name in sorted(config.suites)]


def report_document(config: SuiteConfig, reports) -> dict:
    return {
        "version": __version__,
        "seed": config.seed,
        "pass": all(r.passed for r in reports),
        "suites": [r.to_json() for r in reports],
    }


def _random_internal(rng) -> InternalMoments:
    def q():
        return Fraction(rng.uniform(-1, 1)).limit_denominator(1000)

    def vec():
        return (q(), q(), q())

    def sym():
        d = [[None] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                d[i][j] = d[j][i] = q()
        return tuple(tuple(r) for r in d)

    return InternalMoments(
        m=q(), m_i=vec(), m_ij=sym(), m_ill=vec(), m_iill=q(),
        M_k=vec(), M_ki=tuple(vec() for _ in range(3)),
        M_kij=tuple(sym() for _ in range(3)),
        M_kill=tuple(vec() for _ in range(3)), M_kiill=vec())


def _moment_as_internal(ms: MomentSet) -> InternalMoments:
    return InternalMoments(m=ms.f, m_i=ms.f_i, m_ij=ms.f_ij,
                           m_ill=ms.f_ill, m_iill=ms.f_iill)


def _moment_eq(a: MomentSet, b: MomentSet) -> bool:
    return a.flat() == b.flat()
