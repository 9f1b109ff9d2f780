"""Orbit classification of subspaces of Lambda^2(K^4): the canonical
representatives, the full decision procedure, and witness search over
finite fields.
"""

from dataclasses import dataclass
from typing import Optional

from . import exterior as ext
from . import linalg as la
from .exterior import tensor_from_terms as tt
from .fields import FieldError, Undecidable
from .forms import TernaryClass, classify_ternary_restriction, _square_subfield_coords
from .linalg import Subspace


class ClassifyError(ValueError):
    pass


@dataclass(frozen=True)
class OrbitLabel:
    """Stable orbit tag, optional refinement parameters, optional perp-wrap."""
    kind: str                      # "point:onQ", "line:T", "plane:P2", ...
    params: tuple = ()             # ((name, value), ...) exact field values
    inner: Optional["OrbitLabel"] = None

    def serialize(self, F=None):
        if self.kind == "perp":
            return "perp:" + self.inner.serialize(F)
        if not self.params:
            return self.kind
        fmt = (lambda v: F.format(v)) if F is not None else str
        body = ",".join(f"{k}={fmt(v)}" for k, v in self.params)
        return f"{self.kind}({body})"

    def base(self):
        return self.inner.base() if self.kind == "perp" else self

    @property
    def not_reduced(self):
        if self.kind == "plane:F":
            return True
        if self.kind == "perp" and self.inner.kind in ("line:E", "point:onQ"):
            return True
        return False


# ---------------------------------------------------------------------------
# canonical representatives
# ---------------------------------------------------------------------------

def rep_E(F):
    return Subspace(F, 6, [tt(F, ("s01", 1)), tt(F, ("s02", 1))])


def rep_T(F):
    return Subspace(F, 6, [tt(F, ("s01", 1)), tt(F, ("s03", 1), ("s12", 1))])


def rep_S(F):
    return Subspace(F, 6, [tt(F, ("s01", 1)), tt(F, ("s23", 1))])


def rep_F(F):
    return Subspace(F, 6, [tt(F, ("s01", 1)), tt(F, ("s02", 1)), tt(F, ("s03", 1))])


def rep_JF(F):
    return Subspace(F, 6, [tt(F, ("s12", 1)), tt(F, ("s13", 1)), tt(F, ("s23", 1))])


def rep_ET(F):
    return Subspace(F, 6, [tt(F, ("s01", 1)), tt(F, ("s02", 1)),
                           tt(F, ("s03", 1), ("s12", 1))])


def rep_ES(F):
    return Subspace(F, 6, [tt(F, ("s01", 1)), tt(F, ("s02", 1)), tt(F, ("s23", 1))])


def rep_TS(F):
    return Subspace(F, 6, [tt(F, ("s01", 1)), tt(F, ("s03", 1), ("s12", 1)),
                           tt(F, ("s23", 1))])


def rep_point_onQ(F):
    return Subspace(F, 6, [tt(F, ("s01", 1))])


def rep_point_offQ(F):
    return Subspace(F, 6, [tt(F, ("s01", 1), ("s23", 1))])


def rep_PL(F, t, d):
    """P_L = <d s02 - s13, d s03 + d s12 - t s13> for L = K[X]/(X^2+tX+d)."""
    t, d = F.coerce(t), F.coerce(d)
    return Subspace(F, 6, [tt(F, ("s02", d), ("s13", F.neg(F.one))),
                           tt(F, ("s03", d), ("s12", d), ("s13", F.neg(t)))])


def rep_PL0(F, t, d):
    U = rep_PL(F, t, d)
    return U.add_vector(tt(F, ("s01", 1)))


def rep_W(F, c, d, t=None):
    """W^t_{c,d} = <s03 - s12, c s01 - s23, s13 + d s02 + t s03>."""
    if t is None:
        t = F.one if F.char == 2 else F.zero
    c, d, t = F.coerce(c), F.coerce(d), F.coerce(t)
    return Subspace(F, 6, [tt(F, ("s03", 1), ("s12", F.neg(F.one))),
                           tt(F, ("s01", c), ("s23", F.neg(F.one))),
                           tt(F, ("s13", 1), ("s02", d), ("s03", t))])


def default_irreducible_params(F):
    """A deterministic (t, d) with X^2 + tX + d irreducible over F, 2t = 0;
    None when every quadratic splits."""
    if F.char != 2:
        cands = []
        if F.is_finite:
            cands = [(F.zero, F.coerce(x)) for x in F.elements() if x != F.zero]
        else:
            cands = [(F.zero, F.one), (F.zero, F.coerce(2)), (F.zero, F.coerce(3))]
    else:
        if F.is_finite:
            cands = [(F.one, F.coerce(x)) for x in F.elements() if x != F.zero]
        else:
            cands = [(F.one, F.one), (F.zero, getattr(F, "t", F.one))]
    for t, d in cands:
        if not F.quadratic_roots(t, d):
            return (t, d)
    return None


def representative(F, label):
    """The canonical subspace for a label (base labels; perp handled too)."""
    if label.kind == "perp":
        return ext.perp(representative(F, label.inner))
    table = {"point:onQ": rep_point_onQ, "point:offQ": rep_point_offQ,
             "line:E": rep_E, "line:T": rep_T, "line:S": rep_S,
             "plane:F": rep_F, "plane:JF": rep_JF, "plane:ET": rep_ET,
             "plane:ES": rep_ES, "plane:TS": rep_TS}
    if label.kind in table:
        return table[label.kind](F)
    p = dict(label.params)
    if label.kind == "line:P1":
        return rep_PL(F, p["t"], p["d"])
    if label.kind == "plane:P3":
        return rep_PL0(F, p["t"], p["d"])
    if label.kind == "plane:P2":
        return rep_W(F, p["c"], p["d"], p["t"])
    raise ClassifyError(f"no representative for {label.kind}")


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def classify_subspace(U):
    """Orbit label of a subspace of Lambda^2(K^4), dims 1..5."""
    F = U.field
    if U.ambient_dim != 6:
        raise ClassifyError("subspaces of Lambda^2(K^4) have ambient dimension 6")
    if U.dim == 0 or U.dim == 6:
        raise ClassifyError("classification covers dimensions 1..5 only")
    if U.dim == 1:
        on_q = ext.pfaffian(F, U.basis[0]) == F.zero
        return OrbitLabel("point:onQ" if on_q else "point:offQ")
    if U.dim == 2:
        return _classify_line(U)
    if U.dim == 3:
        return _classify_plane(U)
    return OrbitLabel("perp", inner=classify_subspace(ext.perp(U)))


def _binary_coeffs(F, U):
    m = ext.restrict_form(F, U)
    return m[0][0], m[0][1], m[1][1]


def _classify_line(U):
    F = U.field
    a, b, d = _binary_coeffs(F, U)
    if a == F.zero and b == F.zero and d == F.zero:
        return OrbitLabel("line:E")
    # projective zeros of a x^2 + b xy + d y^2
    zeros = _binary_zero_count(F, a, b, d)
    if zeros == 0:
        t, dd = _normalize_quadratic(F, a, b, d)
        return OrbitLabel("line:P1", params=(("t", t), ("d", dd)))
    return OrbitLabel("line:S" if zeros == 2 else "line:T")


def _binary_zero_count(F, a, b, d):
    """Number of projective zeros (0, 1, or 2) of a nonzero binary form."""
    if a == F.zero and d == F.zero:
        return 2  # b xy
    if a == F.zero or d == F.zero:
        # (1,0) (resp. (0,1)) is a zero; a second exists iff b != 0
        return 2 if b != F.zero else 1
    roots = F.quadratic_roots(F.div(b, a), F.div(d, a))
    return len(roots)


def _normalize_quadratic(F, a, b, d):
    """(t, d) with 2t = 0 for the extension defined by an anisotropic
    a x^2 + b xy + d y^2 (monic X^2 + (b/a) X + (d/a) normalized)."""
    bb = F.div(b, a)
    dd = F.div(d, a)
    if F.char != 2:
        # complete the square: X^2 + (dd - bb^2/4)
        quarter = F.inv(F.coerce(4))
        d0 = F.sub(dd, F.mul(quarter, F.mul(bb, bb)))
        return (F.zero, _canonical_square_class_times(F, d0))
    if bb != F.zero:
        # separable: t = 1, d = a*d/b^2 up to wp
        d0 = F.div(F.mul(a, d), F.mul(b, b))
        return (F.one, _canonical_wp_rep(F, d0))
    # inseparable: t = 0, d up to the square subfield structure
    return (F.zero, dd)


def _canonical_square_class_times(F, d0):
    """Replace d0 by the profile's square-class representative (finite
    fields); exact value kept over infinite fields."""
    if not F.is_finite:
        if hasattr(F, "is_sum_of_two_squares"):  # rationals: squarefree integer
            from fractions import Fraction
            n = d0.numerator * d0.denominator
            sign = 1 if n > 0 else -1
            n = abs(n)
            out, p = 1, 2
            while p * p <= n:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                if e % 2:
                    out *= p
                p += 1
            return Fraction(sign * out * (n if n > 1 else 1))
        return d0
    for r in F.profile().square_class_reps:
        if F.same_square_class(d0, r):
            return r
    raise AssertionError("square class representative not found")


def _canonical_wp_rep(F, d0):
    if not F.is_finite:
        return d0
    for r in F.profile().wp_coset_reps:
        if F.same_wp_coset(d0, r):
            return r
    raise AssertionError("wp representative not found")


def plane_type_F_vs_JF(U):
    """Totally singular planes: F when the three lines share a point,
    JF when they lie in a common plane."""
    F = U.field
    m = ext.restrict_form(F, U)
    if any(x != F.zero for row in m for x in row):
        raise ClassifyError("plane is not totally singular")
    lines = [ext.quadric_to_line(F, b) for b in U.basis]
    meet = lines[0].intersect(lines[1]).intersect(lines[2])
    return "F" if meet.dim == 1 else "JF"


def _classify_plane(U):
    F = U.field
    m = ext.restrict_form(F, U)
    if all(x == F.zero for row in m for x in row):
        return OrbitLabel("plane:F" if plane_type_F_vs_JF(U) == "F" else "plane:JF")
    cls = classify_ternary_restriction(F, m)
    if cls is TernaryClass.RANK_ONE_SQUARE:
        return OrbitLabel("plane:ET")
    if cls is TernaryClass.SPLIT_PAIR:
        return OrbitLabel("plane:ES")
    if cls is TernaryClass.CONIC_NONDEGENERATE:
        return OrbitLabel("plane:TS")
    if cls is TernaryClass.RADICAL_ANISOTROPIC:
        t, d = _p3_params(F, U, m)
        return OrbitLabel("plane:P3", params=(("t", t), ("d", d)))
    t, d, c = _p2_params(F, m)
    return OrbitLabel("plane:P2", params=(("c", c), ("d", d), ("t", t)))


def _p3_params(F, U, m):
    """Extension invariant of the anisotropic quotient line of a P3 plane."""
    # quadratic radical: singular vector r in the radical of the polar form
    rad = _quadratic_radical(F, m)
    u, w = _complement_pair3(F, rad)
    a = ext.eval_restricted(F, m, u)
    b = _polar3(F, m, u, w)
    d = ext.eval_restricted(F, m, w)
    return _normalize_quadratic(F, a, b, d)


def _p2_params(F, m):
    """(t, d, c) such that the plane is congruent-with-scaling to W^t_{c,d}
    (whose restricted form is -(x^2 + t xz + c y^2 + d z^2))."""
    if F.char != 2:
        diag = _diagonalize3(F, m)
        alpha, beta, gamma = diag
        c = F.div(beta, alpha)
        d = F.div(gamma, alpha)
        return (F.zero, d, c)
    # char 2: separable (polar rank 2) or inseparable (polar rank 0)
    f_rank, rad = _polar_radical(F, m)
    if f_rank == 0:
        alpha, beta, gamma = m[0][0], m[1][1], m[2][2]
        return (F.zero, F.div(gamma, alpha), F.div(beta, alpha))
    # radical r has q(r) = c-slot; complement carries x^2 + xz + d z^2
    u, w = _complement_pair3(F, rad)
    a = ext.eval_restricted(F, m, u)
    b = _polar3(F, m, u, w)
    cc = ext.eval_restricted(F, m, w)
    rr = ext.eval_restricted(F, m, rad)
    c = F.div(rr, a)
    d = F.div(F.mul(cc, a), F.mul(b, b))
    return (F.one, d, c)


def _polar3(F, m, u, w):
    acc = F.zero
    for i in range(3):
        for j in range(i + 1, 3):
            acc = F.add(acc, F.mul(m[i][j], F.add(F.mul(u[i], w[j]), F.mul(u[j], w[i]))))
        two = F.add(F.one, F.one)
        acc = F.add(acc, F.mul(two, F.mul(m[i][i], F.mul(u[i], w[i]))))
    return acc


def _polar_radical(F, m):
    f = [[F.zero] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(i + 1, 3):
            f[i][j] = f[j][i] = m[i][j]
    if F.char != 2:
        two = F.coerce(2)
        for i in range(3):
            f[i][i] = F.mul(two, m[i][i])
    R, _ = la.rref(F, tuple(tuple(r) for r in f))
    rank = len(R)
    ker = la.kernel_basis(F, tuple(tuple(r) for r in f))
    return rank, (ker[0] if ker else None)


def _quadratic_radical(F, m):
    """A vector in the radical of the polar form with q = 0 (char 2), or the
    Gram radical vector in odd characteristic."""
    rank, rad = _polar_radical(F, m)
    if rad is not None and ext.eval_restricted(F, m, rad) == F.zero:
        return rad
    if F.char == 2 and rank == 0:
        # the whole space is the polar radical; a singular vector of the
        # additive diagonal form solves a linear system after taking square
        # roots coordinatewise (squaring is additive)
        diag = (m[0][0], m[1][1], m[2][2])
        if F.is_perfect:
            rows = (tuple(F.sqrt(x) for x in diag),)
        else:
            coords = [_square_subfield_coords(F, x) for x in diag]
            rows = tuple(tuple(F.sqrt(coords[i][k]) for i in range(3))
                         for k in range(len(coords[0])))
        for v in la.kernel_basis(F, rows):
            if any(x != F.zero for x in v):
                assert ext.eval_restricted(F, m, v) == F.zero
                return v
    raise ClassifyError("no singular radical vector found")


def _complement_pair3(F, rad):
    import itertools
    for u, w in itertools.combinations(la.identity(F, 3), 2):
        if len(la.rref(F, (rad, u, w))[0]) == 3:
            return u, w
    raise AssertionError("no complement")


def _diagonalize3(F, m):
    from .forms import _diagonalize_ternary_charne2
    diag = _diagonalize_ternary_charne2(F, m)
    assert all(x != F.zero for x in diag)
    return diag


# ---------------------------------------------------------------------------
# label equivalence (same extension / same algebra where decidable)
# ---------------------------------------------------------------------------

def same_extension(F, td1, td2):
    """Do X^2+tX+d and X^2+t'X+d' generate the same quadratic extension?"""
    (t1, d1), (t2, d2) = td1, td2
    if F.char != 2:
        return F.same_square_class(d1, d2)  # both normalized to X^2 + d
    if (t1 == F.zero) != (t2 == F.zero):
        return False
    if t1 != F.zero:
        # separable, normalized X^2+X+d: same iff d1 - d2 in wp
        return F.same_wp_coset(F.div(d1, F.mul(t1, t1)), F.div(d2, F.mul(t2, t2)))
    # inseparable: K(sqrt d1) = K(sqrt d2) iff d2 in K^sq + K^sq d1
    c1 = _square_subfield_coords(F, d1)
    c2 = _square_subfield_coords(F, d2)
    R1, _ = la.rref(F, (c1,))
    R2, _ = la.rref(F, (c1, c2))
    return len(R2) == len(R1)


def labels_equivalent(F, l1, l2):
    """Same orbit?  True/False where decidable, Undecidable otherwise."""
    if l1.kind == "perp" and l2.kind == "perp":
        return labels_equivalent(F, l1.inner, l2.inner)
    if l1.kind != l2.kind:
        return False
    if l1.kind == "line:P1" or l1.kind == "plane:P3":
        p1, p2 = dict(l1.params), dict(l2.params)
        return same_extension(F, (p1["t"], p1["d"]), (p2["t"], p2["d"]))
    if l1.kind == "plane:P2":
        p1, p2 = dict(l1.params), dict(l2.params)
        if p1 == p2:
            return True
        if not same_extension(F, (p1["t"], p1["d"]), (p2["t"], p2["d"])):
            raise Undecidable("P2 labels over different subfields")
        # same L: algebras isomorphic iff c/c' is a norm of L
        from .fields import QuadExtension
        L = QuadExtension(F, p1["t"], p1["d"])
        return L.norm_class_member(F.div(p1["c"], p2["c"]))
    return True


# ---------------------------------------------------------------------------
# witness search (finite fields)
# ---------------------------------------------------------------------------

def gl4_generators(F):
    """Elementary transvections plus a torus generator: generates GL4."""
    gens = []
    for i in range(4):
        for j in range(4):
            if i != j:
                M = [list(r) for r in la.identity(F, 4)]
                M[i][j] = F.one
                gens.append(tuple(tuple(r) for r in M))
    if F.is_finite and F.order > 2:
        g = _unit_generator(F)
        M = [list(r) for r in la.identity(F, 4)]
        M[0][0] = g
        gens.append(tuple(tuple(r) for r in M))
    return gens


def _unit_generator(F):
    if hasattr(F, "multiplicative_generator"):
        return F.multiplicative_generator()
    # prime field: search
    for g in F.units():
        seen, cur, cnt = g, g, 1
        while cur != F.one:
            cur = F.mul(cur, g)
            cnt += 1
        if cnt == F.order - 1:
            return g
    raise FieldError("no multiplicative generator")


def find_witness(U, label, budget=2 * 10 ** 6):
    """BFS a matrix B with B.(representative) = U over a finite field."""
    F = U.field
    if not F.is_finite:
        raise ClassifyError("witness search requires a finite field")
    rep = representative(F, label)
    if rep == U:
        return la.identity(F, 4)
    gens = gl4_generators(F)
    gens6 = [(g, ext.induced_matrix(F, g)) for g in gens]
    seen = {rep.key(): la.identity(F, 4)}
    frontier = [rep]
    steps = 0
    while frontier:
        nxt = []
        for V in frontier:
            mat_v = seen[V.key()]
            for g, g6 in gens6:
                steps += 1
                if steps > budget:
                    raise ClassifyError("witness search budget exhausted "
                                        "(classification bug?)")
                W = Subspace(F, 6, [la.mat_vec(F, g6, b) for b in V.basis])
                if W.key() not in seen:
                    seen[W.key()] = la.mat_mul(F, g, mat_v)
                    if W == U:
                        B = seen[W.key()]
                        assert ext.act_subspace(F, B, rep) == U
                        return B
                    nxt.append(W)
        frontier = nxt
    return None
