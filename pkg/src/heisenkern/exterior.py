"""Alternating tensors on K^4: the Pfaffian form, Klein quadric, GL4 action,
and the line correspondence lambda.

Coordinates are always taken in the fixed basis order s01,s02,s03,s12,s13,s23.
"""

from . import linalg as la
from .linalg import Subspace

# global basis order for coordinates on Lambda^2(K^4)
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}
BASIS_NAMES = ("s01", "s02", "s03", "s12", "s13", "s23")


def wedge(F, v, w):
    """v wedge w as a 6-coordinate tensor."""
    return tuple(F.sub(F.mul(v[i], w[j]), F.mul(v[j], w[i])) for i, j in PAIRS)


def tensor_to_matrix(F, x):
    """The 4x4 skew matrix (zero diagonal) with upper entries x."""
    M = [[F.zero] * 4 for _ in range(4)]
    for idx, (i, j) in enumerate(PAIRS):
        M[i][j] = x[idx]
        M[j][i] = F.neg(x[idx])
    return tuple(tuple(r) for r in M)


def matrix_to_tensor(F, M):
    return tuple(M[i][j] for i, j in PAIRS)


def pfaffian(F, x):
    """pf(x) = x0*x5 - x1*x4 + x2*x3; sign fixed by pf(s01+s23) = 1."""
    return F.add(F.sub(F.mul(x[0], x[5]), F.mul(x[1], x[4])), F.mul(x[2], x[3]))


def polar(F, x, y):
    """Polar form of pf: pf(x+y) - pf(x) - pf(y)."""
    return F.sum((F.mul(x[0], y[5]), F.mul(x[5], y[0]),
                  F.neg(F.mul(x[1], y[4])), F.neg(F.mul(x[4], y[1])),
                  F.mul(x[2], y[3]), F.mul(x[3], y[2])))


class PfaffianContext:
    """pf and its polar form as matrices in the rearranged basis
    s01,s02,s03,s23,-s13,s12."""

    # rearrangement: new coord k = sign * old coord REARRANGE[k]
    REARRANGE = (0, 1, 2, 5, 4, 3)
    SIGNS = (1, 1, 1, 1, -1, 1)

    def __init__(self, F):
        self.field = F
        one, zero = F.one, F.zero
        self.M_pf = tuple(tuple(one if j == i + 3 else zero for j in range(6))
                          for i in range(6))
        self.J = la.mat_add(F, self.M_pf, la.transpose(self.M_pf))

    def to_rearranged(self, x):
        F = self.field
        out = []
        for k in range(6):
            c = x[self.REARRANGE[k]]
            out.append(c if self.SIGNS[k] == 1 else F.neg(c))
        return tuple(out)

    def pf_via_matrix(self, x):
        F = self.field
        v = self.to_rearranged(x)
        return la.vec_dot(F, v, la.mat_vec(F, self.M_pf, v))

    def polar_via_matrix(self, x, y):
        F = self.field
        return la.vec_dot(F, self.to_rearranged(x),
                          la.mat_vec(F, self.J, self.to_rearranged(y)))


def induced_matrix(F, A):
    """The 6x6 matrix of X -> A X A' in s-coordinates (2x2 minors of A)."""
    return tuple(tuple(F.sub(F.mul(A[i][k], A[j][l]), F.mul(A[i][l], A[j][k]))
                       for (k, l) in PAIRS) for (i, j) in PAIRS)


def act(F, A, x):
    """A.X = A X A' on coordinates; A must be invertible."""
    if la.det(F, A) == F.zero:
        raise ZeroDivisionError("action requires an invertible matrix")
    return la.mat_vec(F, induced_matrix(F, A), x)


def act_subspace(F, A, U):
    M6 = induced_matrix(F, A)
    if la.det(F, M6) == F.zero:
        raise ZeroDivisionError("action requires an invertible matrix")
    return Subspace(F, 6, [la.mat_vec(F, M6, b) for b in U.basis])


def perp(U):
    """Orthogonal subspace with respect to the polar form of pf."""
    F = U.field
    # polar(x, y) = sum over pairing: row for each basis vector b of U
    rows = [(b[5], F.neg(b[4]), b[3], b[2], F.neg(b[1]), b[0]) for b in U.basis]
    return Subspace(F, 6, la.kernel_basis(F, tuple(rows)))


def tensor_rank(F, x):
    """Rank of the skew matrix: 0, 2 (decomposable) or 4."""
    if all(c == F.zero for c in x):
        return 0
    return 2 if pfaffian(F, x) == F.zero else 4


def line_to_quadric(F, v, w):
    """lambda: the span of v,w to the quadric point v wedge w (tensor)."""
    x = wedge(F, v, w)
    if all(c == F.zero for c in x):
        raise ValueError("vectors are dependent")
    return x


def quadric_to_line(F, x):
    """Inverse of lambda: column space of the matrix of a rank-2 tensor."""
    if tensor_rank(F, x) != 2:
        raise ValueError("tensor is not a nonzero point of the Klein quadric")
    M = tensor_to_matrix(F, x)
    return Subspace(F, 4, [tuple(M[i][j] for i in range(4)) for j in range(4)])


def lines_confluent(F, x, y):
    """Two quadric points correspond to confluent lines iff polar vanishes."""
    return polar(F, x, y) == F.zero


def restrict_form(F, U):
    """Upper-triangular Gram description m_U of pf restricted to U in its
    echelon basis: q(sum c_i b_i) = sum c_i^2 m[i][i] + sum_{i<j} c_i c_j m[i][j]."""
    k = U.dim
    m = [[F.zero] * k for _ in range(k)]
    for i in range(k):
        m[i][i] = pfaffian(F, U.basis[i])
        for j in range(i + 1, k):
            m[i][j] = polar(F, U.basis[i], U.basis[j])
    return tuple(tuple(r) for r in m)


def eval_restricted(F, m, coords):
    k = len(coords)
    acc = F.zero
    for i in range(k):
        acc = F.add(acc, F.mul(m[i][i], F.mul(coords[i], coords[i])))
        for j in range(i + 1, k):
            acc = F.add(acc, F.mul(m[i][j], F.mul(coords[i], coords[j])))
    return acc


def tensor_from_terms(F, *terms):
    """Build a tensor from (name, coefficient) pairs, e.g. ("s01", 1)."""
    x = [F.zero] * 6
    for name, c in terms:
        x[BASIS_NAMES.index(name)] = F.add(x[BASIS_NAMES.index(name)], F.coerce(c))
    return tuple(x)


def format_tensor(F, x):
    terms = []
    for i, c in enumerate(x):
        if c == F.zero:
            continue
        cs = F.format(c)
        terms.append(BASIS_NAMES[i] if cs == "1" else f"{cs}*{BASIS_NAMES[i]}")
    return " + ".join(terms) if terms else "0"
