"""The 14-dimensional multiplier state and its tensor algebra.

A state packs the dual (mean-field) variables of the 14-field model:
a scalar, a 3-vector, a symmetric 3x3 block, the trace-contracted
third-order vector and the doubly traced fourth-order scalar.  All public
operations are pure and ring-generic: entries may be floats, Fractions or
jets.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .tensors import (IDENTITY3, SYM6_ORDER, dot, madd, matmul, matvec, mat_to_sym6,
                      mscale, msub, outer, quadform, sym6_to_mat, sym_outer, trace,
                      vscale)

#: flattened coordinate order used for gradients, Hessians and sampling:
#: [lambda, lambda_i(3), lambda_ij(6; xx yy zz xy xz yz), lambda_ill(3), lambda_ppll]
FLAT_DIM = 14


class SchemaError(ValueError):
    """Raised when a JSON document does not match the documented schema."""


@dataclass(frozen=True)
class MultiplierState:
    """Multipliers (lambda, lambda_i, lambda_ij, lambda_ill, lambda_ppll).

    lambda_ij is stored as a full 3x3 nested tuple that is symmetric by
    construction; use from_sym6/from_flat to build one safely.
    """

    lam: object
    lam_i: tuple
    lam_ij: tuple
    lam_ill: tuple
    lam_ppll: object

    @classmethod
    def from_sym6(cls, lam, lam_i, lam_ij6, lam_ill, lam_ppll) -> "MultiplierState":
        return cls(lam, tuple(lam_i), sym6_to_mat(tuple(lam_ij6)),
                   tuple(lam_ill), lam_ppll)

    @classmethod
    def zero(cls) -> "MultiplierState":
        return cls.from_sym6(0.0, (0.0,) * 3, (0.0,) * 6, (0.0,) * 3, 0.0)

    @classmethod
    def from_flat(cls, v) -> "MultiplierState":
        if len(v) != FLAT_DIM:
            raise ValueError(f"expected {FLAT_DIM} components, got {len(v)}")
        return cls.from_sym6(v[0], v[1:4], v[4:10], v[10:13], v[13])

    def flat(self) -> tuple:
        return (self.lam, *self.lam_i, *mat_to_sym6(self.lam_ij),
                *self.lam_ill, self.lam_ppll)

    def sym6(self) -> tuple:
        return mat_to_sym6(self.lam_ij)

    def map_scalars(self, f) -> "MultiplierState":
        return MultiplierState.from_flat(tuple(f(x) for x in self.flat()))

    def to_rational(self, max_denominator: int | None = None) -> "MultiplierState":
        def conv(x):
            q = Fraction(x)
            return q.limit_denominator(max_denominator) if max_denominator else q
        return self.map_scalars(conv)

    def magnitude(self) -> float:
        return max(abs(float(x)) for x in self.flat())


@dataclass(frozen=True)
class Scalar14:
    """The 14 isotropic invariants of a multiplier state.

    u denotes the lambda_ill vector and l the lambda_i vector, so e.g.
    l_lam2_u is lambda_a (lambda^2)_ab lambda_bll.
    """

    lam_ll: object
    tr_lam2: object
    tr_lam3: object
    u_u: object
    u_l: object
    l_l: object
    u_lam_u: object
    l_lam_u: object
    l_lam_l: object
    u_lam2_u: object
    l_lam2_u: object
    l_lam2_l: object
    lam_ppll: object
    lam: object

    def as_tuple(self) -> tuple:
        return (self.lam_ll, self.tr_lam2, self.tr_lam3, self.u_u, self.u_l,
                self.l_l, self.u_lam_u, self.l_lam_u, self.l_lam_l,
                self.u_lam2_u, self.l_lam2_u, self.l_lam2_l,
                self.lam_ppll, self.lam)


def scalar_invariants(state: MultiplierState) -> Scalar14:
    L = state.lam_ij
    L2 = matmul(L, L)
    u = state.lam_ill
    l = state.lam_i
    return Scalar14(
        lam_ll=trace(L),
        tr_lam2=trace(L2),
        tr_lam3=trace(matmul(L2, L)),
        u_u=dot(u, u),
        u_l=dot(u, l),
        l_l=dot(l, l),
        u_lam_u=quadform(u, L, u),
        l_lam_u=quadform(l, L, u),
        l_lam_l=quadform(l, L, l),
        u_lam2_u=quadform(u, L2, u),
        l_lam2_u=quadform(l, L2, u),
        l_lam2_l=quadform(l, L2, l),
        lam_ppll=state.lam_ppll,
        lam=state.lam,
    )


def hamilton_cayley_residual(a) -> tuple:
    """A^3 minus its characteristic-polynomial reduction; identically zero
    for every symmetric 3x3 matrix."""
    a2 = matmul(a, a)
    a3 = matmul(a2, a)
    t1 = trace(a)
    t2 = trace(a2)
    t3 = trace(a3)
    half = _half_of(t1)
    third = _third_of(t1)
    reduced = madd(
        mscale(t1, a2),
        mscale(half * (t2 - t1 * t1), a),
        mscale(third * t3 - half * t1 * t2 + half * third * t1 * t1 * t1, IDENTITY3),
    )
    return msub(a3, reduced)


def auxiliary_identity_residual(state: MultiplierState) -> tuple:
    """The symmetric-matrix identity used when the fourth invariant block is
    reduced through Hamilton-Cayley; identically zero for every state."""
    L = state.lam_ij
    u = state.lam_ill
    L2 = matmul(L, L)
    Lu = matvec(L, u)
    L2u = matvec(L2, u)
    t1 = trace(L)
    t2 = trace(L2)
    uu = dot(u, u)
    uLu = dot(u, Lu)
    uL2u = dot(u, L2u)
    half = _half_of(t1)
    iso = -uL2u + t1 * uLu + half * uu * t2 - half * uu * t1 * t1
    return madd(
        mscale(iso, IDENTITY3),
        mscale(-uLu + t1 * uu, L),
        mscale(-uu, L2),
        mscale(half * (t1 * t1 - t2), outer(u, u)),
        mscale(-t1, sym_outer(u, Lu)),
        outer(Lu, Lu),
        sym_outer(u, L2u),
    )


def rotate_state(state: MultiplierState, r, tol: float = 1e-12) -> MultiplierState:
    """Apply an orthogonal rotation/reflection to all tensorial blocks."""
    r = tuple(tuple(row) for row in r)
    defect = msub(matmul(_transpose(r), r), IDENTITY3)
    worst = max(abs(float(defect[i][j])) for i in range(3) for j in range(3))
    if worst > tol:
        raise ValueError(f"matrix is not orthogonal (R^T R - I has max entry {worst:.3e})")
    return MultiplierState(
        lam=state.lam,
        lam_i=matvec(r, state.lam_i),
        lam_ij=matmul(r, matmul(state.lam_ij, _transpose(r))),
        lam_ill=matvec(r, state.lam_ill),
        lam_ppll=state.lam_ppll,
    )


def _transpose(m):
    return tuple(tuple(m[j][i] for j in range(3)) for i in range(3))


def _half_of(sample):
    """1/2 in the ring of the sample value (Fraction stays exact)."""
    return Fraction(1, 2) if isinstance(sample, (Fraction, int)) else 0.5


def _third_of(sample):
    return Fraction(1, 3) if isinstance(sample, (Fraction, int)) else 1.0 / 3.0


# ---------------------------------------------------------------------------
# sampling and JSON
# ---------------------------------------------------------------------------

def sample_state(rng, magnitude: float = 1.0) -> MultiplierState:
    """Uniform state with all 14 components in [-magnitude, magnitude]."""
    return MultiplierState.from_flat(tuple(rng.uniform(-magnitude, magnitude)
                                           for _ in range(FLAT_DIM)))


def sample_rational_state(rng, magnitude: float = 1.0,
                          max_denominator: int = 1000) -> MultiplierState:
    return sample_state(rng, magnitude).to_rational(max_denominator)


def _num_from_json(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise SchemaError(f"{where}: expected a number, got {type(x).__name__}")
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{where}: bad rational literal {x!r}") from exc
    if isinstance(x, float) and not math.isfinite(x):
        raise SchemaError(f"{where}: non-finite value")
    return x


def _vec_from_json(x, n: int, where: str) -> tuple:
    if not isinstance(x, list) or len(x) != n:
        got = f"length {len(x)}" if isinstance(x, list) else type(x).__name__
        raise SchemaError(f"{where}: expected {n} numbers, got {got}")
    return tuple(_num_from_json(v, f"{where}[{i}]") for i, v in enumerate(x))


def state_from_json(obj, where: str = "state") -> MultiplierState:
    """Parse {"lambda": num, "lambda_i": [3], "lambda_ij": [6], "lambda_ill": [3],
    "lambda_ppll": num}; rationals may be given as "p/q" strings."""
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    keys = {"lambda", "lambda_i", "lambda_ij", "lambda_ill", "lambda_ppll"}
    missing = keys - obj.keys()
    if missing:
        raise SchemaError(f"{where}: missing field(s) {sorted(missing)}")
    unknown = obj.keys() - keys
    if unknown:
        raise SchemaError(f"{where}: unknown field(s) {sorted(unknown)}")
    return MultiplierState.from_sym6(
        _num_from_json(obj["lambda"], f"{where}.lambda"),
        _vec_from_json(obj["lambda_i"], 3, f"{where}.lambda_i"),
        _vec_from_json(obj["lambda_ij"], 6, f"{where}.lambda_ij"),
        _vec_from_json(obj["lambda_ill"], 3, f"{where}.lambda_ill"),
        _num_from_json(obj["lambda_ppll"], f"{where}.lambda_ppll"),
    )


def _num_to_json(x):
    if isinstance(x, Fraction):
        return float(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return float(x)


def state_to_json(state: MultiplierState) -> dict:
    return {
        "lambda": _num_to_json(state.lam),
        "lambda_i": [_num_to_json(x) for x in state.lam_i],
        "lambda_ij": [_num_to_json(x) for x in state.sym6()],
        "lambda_ill": [_num_to_json(x) for x in state.lam_ill],
        "lambda_ppll": _num_to_json(state.lam_ppll),
    }
