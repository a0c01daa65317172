"""Small ring-generic helpers for 3-vectors and 3x3 matrices.

Everything here works uniformly over floats, exact rationals
(fractions.Fraction) and the forward-mode jets from closure14.jets, so the
same closure formulas can be evaluated numerically, exactly, or
differentiated.  Vectors are length-3 tuples, matrices are 3-tuples of
3-tuples.
"""
from __future__ import annotations

Vec3 = tuple
Mat3 = tuple

IDENTITY3: Mat3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

# symmetric storage order for the 6 independent components of a 3x3 matrix
SYM6_ORDER = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


def dot(a: Vec3, b: Vec3):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def matvec(m: Mat3, v: Vec3) -> Vec3:
    return tuple(dot(row, v) for row in m)


def matmul(a: Mat3, b: Mat3) -> Mat3:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
                 for i in range(3))


def trace(m: Mat3):
    return m[0][0] + m[1][1] + m[2][2]


def transpose(m: Mat3) -> Mat3:
    return tuple(tuple(m[j][i] for j in range(3)) for i in range(3))


def quadform(a: Vec3, m: Mat3, b: Vec3):
    """a_i m_ij b_j."""
    return dot(a, matvec(m, b))


def vadd(*vs: Vec3) -> Vec3:
    return tuple(sum(v[i] for v in vs) for i in range(3))


def vsub(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def vscale(c, v: Vec3) -> Vec3:
    return (c * v[0], c * v[1], c * v[2])


def madd(*ms: Mat3) -> Mat3:
    return tuple(tuple(sum(m[i][j] for m in ms) for j in range(3)) for i in range(3))


def msub(a: Mat3, b: Mat3) -> Mat3:
    return tuple(tuple(a[i][j] - b[i][j] for j in range(3)) for i in range(3))


def mscale(c, m: Mat3) -> Mat3:
    return tuple(tuple(c * m[i][j] for j in range(3)) for i in range(3))


def outer(a: Vec3, b: Vec3) -> Mat3:
    return tuple(tuple(a[i] * b[j] for j in range(3)) for i in range(3))


def sym_outer(a: Vec3, b: Vec3) -> Mat3:
    """a_(i b_j) doubled: a_i b_j + a_j b_i."""
    return tuple(tuple(a[i] * b[j] + a[j] * b[i] for j in range(3)) for i in range(3))


def sym6_to_mat(s) -> Mat3:
    xx, yy, zz, xy, xz, yz = s
    return ((xx, xy, xz), (xy, yy, yz), (xz, yz, zz))


def mat_to_sym6(m: Mat3) -> tuple:
    return (m[0][0], m[1][1], m[2][2], m[0][1], m[0][2], m[1][2])


def max_abs(obj) -> float:
    """Largest absolute entry of a scalar / nested tuple structure (float mode)."""
    if isinstance(obj, (tuple, list)):
        return max((max_abs(x) for x in obj), default=0.0)
    return abs(float(obj))
