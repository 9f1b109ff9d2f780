"""Generic exact linear algebra over any field backend.

Matrices are tuples of row tuples, vectors are tuples; every function takes
the field first.  Canonical subspaces are reduced row echelon bases, so two
equal subspaces compare equal structurally.
"""


def vec(F, entries):
    return tuple(F.coerce(x) for x in entries)


def mat(F, rows):
    return tuple(tuple(F.coerce(x) for x in r) for r in rows)


def zeros(F, n, m):
    return tuple((F.zero,) * m for _ in range(n))


def identity(F, n):
    return tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A))


def mat_add(F, A, B):
    return tuple(tuple(F.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(F, A, B):
    return tuple(tuple(F.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_neg(F, A):
    return tuple(tuple(F.neg(x) for x in r) for r in A)


def mat_scale(F, c, A):
    return tuple(tuple(F.mul(c, x) for x in r) for r in A)


def mat_mul(F, A, B):
    Bc = tuple(zip(*B))
    return tuple(tuple(F.sum(F.mul(a, b) for a, b in zip(row, col)) for col in Bc)
                 for row in A)


def mat_vec(F, A, v):
    return tuple(F.sum(F.mul(a, x) for a, x in zip(row, v)) for row in A)


def vec_add(F, u, v):
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_sub(F, u, v):
    return tuple(F.sub(a, b) for a, b in zip(u, v))


def vec_scale(F, c, v):
    return tuple(F.mul(c, x) for x in v)


def vec_dot(F, u, v):
    return F.sum(F.mul(a, b) for a, b in zip(u, v))


def is_zero_vec(F, v):
    return all(x == F.zero for x in v)


def det(F, A):
    n = len(A)
    M = [list(r) for r in A]
    d = F.one
    for j in range(n):
        piv = next((i for i in range(j, n) if M[i][j] != F.zero), None)
        if piv is None:
            return F.zero
        if piv != j:
            M[j], M[piv] = M[piv], M[j]
            d = F.neg(d)
        d = F.mul(d, M[j][j])
        inv = F.inv(M[j][j])
        for i in range(j + 1, n):
            if M[i][j] != F.zero:
                c = F.mul(M[i][j], inv)
                for k in range(j, n):
                    M[i][k] = F.sub(M[i][k], F.mul(c, M[j][k]))
    return d


def inv(F, A):
    n = len(A)
    M = [list(r) + list(e) for r, e in zip(A, identity(F, n))]
    for j in range(n):
        piv = next((i for i in range(j, n) if M[i][j] != F.zero), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[j], M[piv] = M[piv], M[j]
        c = F.inv(M[j][j])
        M[j] = [F.mul(c, x) for x in M[j]]
        for i in range(n):
            if i != j and M[i][j] != F.zero:
                f = M[i][j]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[j])]
    return tuple(tuple(r[n:]) for r in M)


def rref(F, rows):
    """Reduced row echelon form; returns (rows, pivot columns), zero rows dropped."""
    out, pivots = [], []
    for r in rows:
        r = list(r)
        for q, j in zip(out, pivots):
            if r[j] != F.zero:
                c = r[j]
                r = [F.sub(a, F.mul(c, b)) for a, b in zip(r, q)]
        j = next((i for i, a in enumerate(r) if a != F.zero), None)
        if j is None:
            continue
        c = F.inv(r[j])
        r = [F.mul(c, a) for a in r]
        for q_i in range(len(out)):
            q = list(out[q_i])
            if q[j] != F.zero:
                f = q[j]
                out[q_i] = [F.sub(a, F.mul(f, b)) for a, b in zip(q, r)]
        out.append(r)
        pivots.append(j)
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return tuple(tuple(out[i]) for i in order), tuple(pivots[i] for i in order)


def reduce_vector(F, v, rows, pivots):
    """Residual of v after elimination against an echelon basis."""
    v = list(v)
    for r, j in zip(rows, pivots):
        if v[j] != F.zero:
            c = v[j]
            v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, r)]
    return tuple(v)


def kernel_basis(F, A):
    """Echelon basis of the right kernel of A (rows x cols)."""
    ncols = len(A[0]) if A else 0
    R, piv = rref(F, A)
    free = [j for j in range(ncols) if j not in piv]
    out = []
    for f in free:
        v = [F.zero] * ncols
        v[f] = F.one
        for r, j in zip(R, piv):
            v[j] = F.neg(r[f])
        out.append(tuple(v))
    return out


def solve(F, A, b):
    """One solution x of A x = b, or None."""
    n, m = len(A), len(A[0])
    aug = [list(r) + [x] for r, x in zip(A, b)]
    R, piv = rref(F, aug)
    x = [F.zero] * m
    for r, j in zip(R, piv):
        if j == m:
            return None  # inconsistent row 0 ... 0 | 1
        x[j] = r[m]
    return tuple(x)


class Subspace:
    """Subspace of F^n with canonical reduced-row-echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, vectors):
        self.field = field
        self.ambient_dim = ambient_dim
        rows, piv = rref(field, [vec(field, v) for v in vectors])
        self.basis = rows
        self.pivots = piv

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        return is_zero_vec(self.field, reduce_vector(self.field, v, self.basis, self.pivots))

    def reduce(self, v):
        return reduce_vector(self.field, v, self.basis, self.pivots)

    def free_columns(self):
        return tuple(j for j in range(self.ambient_dim) if j not in self.pivots)

    def coset_coords(self, v):
        """Coordinates of v + self in the complement spanned by free columns."""
        red = self.reduce(v)
        return tuple(red[j] for j in self.free_columns())

    def coset_lift(self, coords):
        v = [self.field.zero] * self.ambient_dim
        for j, c in zip(self.free_columns(), coords):
            v[j] = c
        return tuple(v)

    def add_vector(self, v):
        return Subspace(self.field, self.ambient_dim, list(self.basis) + [v])

    def intersect(self, other):
        # coefficient vectors (a, b) with a . basis1 = b . basis2: right kernel
        # of the matrix whose columns are basis1 and -basis2 vectors
        F = self.field
        k1, k2 = len(self.basis), len(other.basis)
        rows = []
        for j in range(self.ambient_dim):
            rows.append(tuple([self.basis[i][j] for i in range(k1)]
                              + [F.neg(other.basis[i][j]) for i in range(k2)]))
        combo = kernel_basis(F, tuple(rows))
        vecs = []
        for c in combo:
            v = [F.zero] * self.ambient_dim
            for i in range(k1):
                v = [F.add(a, F.mul(c[i], b)) for a, b in zip(v, self.basis[i])]
            vecs.append(tuple(v))
        return Subspace(F, self.ambient_dim, vecs)

    def sum(self, other):
        return Subspace(self.field, self.ambient_dim, list(self.basis) + list(other.basis))

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.field == other.field
                and self.ambient_dim == other.ambient_dim and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.field.label}^{self.ambient_dim})"

    def key(self):
        return self.basis
