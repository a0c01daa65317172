"""Material models: the four free scalar functions H0..H3 of the eight
closure scalars X1..X8.

A material must evaluate (H0..H3) from the eight X values; polynomial
materials do so ring-generically, which is what the differentiation paths
rely on.  Analytic gradients are required for the main code paths; a
finite-difference wrapper exists for black-box functions and is flagged as
such in reports.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .state import SchemaError

_TARGETS = ("H0", "H1", "H2", "H3")


class Material:
    """Interface: evaluate(x8) -> (H0, H1, H2, H3)."""

    name = "material"
    supports_jets = False
    gradient_mode = "analytic"

    def evaluate(self, x):
        raise NotImplementedError

    def gradient(self, x):
        """4x8 matrix of partial derivatives dH_j/dX_i."""
        raise NotImplementedError


@dataclass(frozen=True)
class PolyTerm:
    target: int          # 0..3, which H this term feeds
    coeff: object
    powers: tuple        # 8 nonnegative integer exponents in X1..X8


class PolynomialMaterial(Material):
    """H_j given by multivariate polynomials in X1..X8."""

    supports_jets = True

    def __init__(self, name: str, terms):
        self.name = name
        self.terms = tuple(terms)
        for t in self.terms:
            if t.target not in (0, 1, 2, 3) or len(t.powers) != 8:
                raise ValueError(f"bad polynomial term {t!r}")

    def evaluate(self, x):
        h = [0, 0, 0, 0]
        for t in self.terms:
            v = t.coeff
            for xi, p in zip(x, t.powers):
                if p:
                    v = v * xi**p
            h[t.target] = h[t.target] + v
        return tuple(h)

    def gradient(self, x):
        g = [[0] * 8 for _ in range(4)]
        for t in self.terms:
            for i, p in enumerate(t.powers):
                if not p:
                    continue
                v = t.coeff * p
                for k, (xk, pk) in enumerate(zip(x, t.powers)):
                    e = pk - 1 if k == i else pk
                    if e:
                        v = v * xk**e
                g[t.target][i] = g[t.target][i] + v
        return tuple(tuple(row) for row in g)

    def to_json(self) -> dict:
        return {"kind": "polynomial",
                "terms": [{"target": _TARGETS[t.target],
                           "coeff": float(t.coeff),
                           "powers": list(t.powers)} for t in self.terms]}


class FiniteDifferenceMaterial(Material):
    """Wraps a black-box x8 -> (H0..H3) callable; gradients by central
    differences.  Flagged so reports can distinguish it from analytic ones."""

    gradient_mode = "finite-difference"

    def __init__(self, name: str, fn, rel_step: float = 1e-6):
        self.name = name
        self.fn = fn
        self.rel_step = rel_step

    def evaluate(self, x):
        return tuple(self.fn(tuple(float(v) for v in x)))

    def gradient(self, x):
        x = [float(v) for v in x]
        g = [[0.0] * 8 for _ in range(4)]
        for i in range(8):
            h = self.rel_step * (1.0 + abs(x[i]))
            xp = list(x)
            xm = list(x)
            xp[i] += h
            xm[i] -= h
            fp = self.fn(tuple(xp))
            fm = self.fn(tuple(xm))
            for j in range(4):
                g[j][i] = (fp[j] - fm[j]) / (2.0 * h)
        return tuple(tuple(row) for row in g)


def material_from_json(obj, where: str = "material") -> PolynomialMaterial:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    if obj.get("kind") != "polynomial":
        raise SchemaError(f"{where}.kind: expected \"polynomial\"")
    raw = obj.get("terms")
    if not isinstance(raw, list):
        raise SchemaError(f"{where}.terms: expected a list")
    terms = []
    for i, t in enumerate(raw):
        w = f"{where}.terms[{i}]"
        if not isinstance(t, dict):
            raise SchemaError(f"{w}: expected an object")
        tgt = t.get("target")
        if tgt not in _TARGETS:
            raise SchemaError(f"{w}.target: expected one of {_TARGETS}, got {tgt!r}")
        coeff = t.get("coeff")
        if isinstance(coeff, bool) or not isinstance(coeff, (int, float)):
            raise SchemaError(f"{w}.coeff: expected a number")
        powers = t.get("powers")
        if (not isinstance(powers, list) or len(powers) != 8
                or any(isinstance(p, bool) or not isinstance(p, int) or p < 0
                       for p in powers)):
            raise SchemaError(f"{w}.powers: expected 8 nonnegative integers")
        terms.append(PolyTerm(_TARGETS.index(tgt), coeff, tuple(powers)))
    return PolynomialMaterial(obj.get("name", "user"), terms)


def _t(target, coeff, **pw):
    powers = [0] * 8
    for k, v in pw.items():
        powers[int(k[1]) - 1] = v
    return PolyTerm(target, coeff, tuple(powers))


def constant_material(j: int) -> PolynomialMaterial:
    """H = e_j (unit constant)."""
    return PolynomialMaterial(f"constant{j}", [_t(j, 1)])


def linear_material() -> PolynomialMaterial:
    """Fixed linear fixture: constant offsets plus a full 4x8 coefficient
    matrix of varied dyadic rationals."""
    terms = [_t(0, 1), _t(1, Fraction(1, 2)), _t(2, Fraction(-1, 4)), _t(3, 1)]
    coeffs = {}
    for j in range(4):
        for i in range(8):
            c = Fraction((-1) ** (i + j) * (2 * j + i + 1), 2 ** ((i + j) % 3 + 1))
            coeffs[(j, i)] = c
            terms.append(_t(j, c, **{f"x{i + 1}": 1}))
    m = PolynomialMaterial("linear", terms)
    m.linear_coeffs = coeffs
    return m


def quadratic_material() -> PolynomialMaterial:
    """Fixed quadratic fixture coupling every X into some H."""
    q = Fraction(1, 4)
    terms = [
        _t(0, 1), _t(0, q, x1=2), _t(0, q, x2=1, x5=1), _t(0, -q, x3=1),
        _t(1, Fraction(1, 2)), _t(1, q, x1=1, x4=1), _t(1, q, x6=1),
        _t(2, -q, x2=2), _t(2, q, x7=1), _t(2, q, x1=1),
        _t(3, q, x8=1), _t(3, q, x1=1, x5=1), _t(3, -q, x2=1),
    ]
    return PolynomialMaterial("quadratic", terms)


def x5_coupled_material() -> PolynomialMaterial:
    """H0 = H1 = X5: couples the fifth scalar into the closure.  The H1
    channel violates the mass-flux compatibility constraint at generic
    states (the H0 channel alone satisfies it identically)."""
    return PolynomialMaterial("x5-coupled", [_t(0, 1, x5=1), _t(1, 1, x5=1)])


_BUILTINS = {
    "constant0": lambda: constant_material(0),
    "constant1": lambda: constant_material(1),
    "constant2": lambda: constant_material(2),
    "constant3": lambda: constant_material(3),
    "linear": linear_material,
    "quadratic": quadratic_material,
    "x5-coupled": x5_coupled_material,
}

#: the five materials exercised by the frame-invariance acceptance run
ACCEPTANCE_MATERIALS = ("constant0", "constant3", "linear", "quadratic", "x5-coupled")


def builtin_materials(name: str) -> PolynomialMaterial:
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown material {name!r}; available: {sorted(_BUILTINS)}") from None
    return factory()
