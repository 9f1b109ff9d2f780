"""Quaternion algebras H_K^{-d,-c} in every characteristic.

Basis 1, h1, h2, h3 with h1^2 = -t*h1 - d, h2^2 = -c, h2*h1 = h3,
h1*h2 = t*h2 - h3, where t = 0 unless char K = 2 and the extension
K[X]/(X^2+tX+d) is separable (then t = 1).  Quaternions are 4-tuples of
base-field values.
"""

from dataclasses import dataclass
from fractions import Fraction
import itertools

from . import linalg as la
from .fields import FieldError, Undecidable, Rationals, QuadExtension
from .forms import _legendre_isotropic


class SplitAlgebraError(ValueError):
    """Raised where a construction is only valid in a division algebra."""


def _four_squares(n):
    """A four-square decomposition of a nonnegative integer (Lagrange)."""
    from math import isqrt
    assert n >= 0
    for a in range(isqrt(n), -1, -1):
        r1 = n - a * a
        for b in range(isqrt(r1), -1, -1):
            r2 = r1 - b * b
            for c in range(isqrt(r2), -1, -1):
                d2 = r2 - c * c
                d = isqrt(d2)
                if d * d == d2:
                    return (a, b, c, d)
    raise AssertionError("unreachable by Lagrange's theorem")


class QuatAlgebra:
    """H_K^{-d,-c}; commutative K(sqrt d, sqrt c) when char 2 and t = 0."""

    def __init__(self, field, d, c, t=None):
        F = field
        d = F.coerce(d)
        c = F.coerce(c)
        if d == F.zero or c == F.zero:
            raise FieldError("quaternion parameters must be nonzero")
        if t is None:
            t = F.one if F.char == 2 else F.zero
        t = F.coerce(t)
        if F.add(t, t) != F.zero:
            raise FieldError("parameter t must satisfy 2t = 0")
        self.field = F
        self.d = d
        self.c = c
        self.t = t
        self.is_commutative = (F.char == 2 and t == F.zero)
        self.zero = (F.zero,) * 4
        self.one = (F.one, F.zero, F.zero, F.zero)
        self.h1 = (F.zero, F.one, F.zero, F.zero)
        self.h2 = (F.zero, F.zero, F.one, F.zero)
        self.h3 = (F.zero, F.zero, F.zero, F.one)
        self._table = self._build_table()
        self._check_associativity()
        self._division = None

    @classmethod
    def from_extension(cls, L, c):
        """H_{L/K}^c for a quadratic extension L of its base."""
        if not isinstance(L, QuadExtension):
            raise FieldError("from_extension needs a QuadExtension")
        return cls(L.base, L.d, c, L.t)

    def _build_table(self):
        F, d, c, t = self.field, self.d, self.c, self.t
        o, z = F.one, F.zero
        n = F.neg
        e = lambda *cs: tuple(F.coerce(x) for x in cs)
        tbl = {}
        tbl[1, 1] = e(n(d), n(t), z, z)                 # h1 h1
        tbl[1, 2] = (z, z, t, n(o))                     # h1 h2 = t h2 - h3
        tbl[1, 3] = (z, z, d, z)                        # h1 h3 = d h2
        tbl[2, 1] = (z, z, z, o)                        # h2 h1 = h3
        tbl[2, 2] = (n(c), z, z, z)                     # h2 h2
        tbl[2, 3] = (z, n(c), z, z)                     # h2 h3 = -c h1
        tbl[3, 1] = (z, z, n(d), n(t))                  # h3 h1 = -t h3 - d h2
        tbl[3, 2] = (F.neg(F.mul(t, c)), c, z, z)       # h3 h2 = -tc + c h1
        tbl[3, 3] = (F.neg(F.mul(c, d)), z, z, z)       # h3 h3
        return tbl

    def _check_associativity(self):
        basis = (self.one, self.h1, self.h2, self.h3)
        for x in basis:
            for y in basis:
                for z in basis:
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                        raise AssertionError("multiplication table is not associative")

    # --- arithmetic ---

    def coerce(self, x):
        if isinstance(x, tuple) and len(x) == 4:
            return tuple(self.field.coerce(v) for v in x)
        return (self.field.coerce(x), self.field.zero, self.field.zero, self.field.zero)

    def scalar(self, s):
        return (self.field.coerce(s), self.field.zero, self.field.zero, self.field.zero)

    def add(self, x, y):
        F = self.field
        return tuple(F.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        F = self.field
        return tuple(F.sub(a, b) for a, b in zip(x, y))

    def neg(self, x):
        return tuple(self.field.neg(a) for a in x)

    def smul(self, s, x):
        F = self.field
        return tuple(F.mul(s, a) for a in x)

    def mul(self, x, y):
        F = self.field
        out = [F.zero] * 4
        out[0] = F.mul(x[0], y[0])
        for k in range(1, 4):
            out[k] = F.add(F.mul(x[0], y[k]), F.mul(x[k], y[0]))
        for i in range(1, 4):
            if x[i] == F.zero:
                continue
            for j in range(1, 4):
                if y[j] == F.zero:
                    continue
                coef = F.mul(x[i], y[j])
                prod = self._table[i, j]
                for k in range(4):
                    out[k] = F.add(out[k], F.mul(coef, prod[k]))
        return tuple(out)

    def conj(self, x):
        """The standard involution x -> x~."""
        F = self.field
        return (F.add(x[0], F.mul(self.t, x[1])), F.neg(x[1]), F.neg(x[2]), F.neg(x[3]))

    def norm(self, x):
        n = self.mul(self.conj(x), x)
        assert n[1] == n[2] == n[3] == self.field.zero
        return n[0]

    def trace(self, x):
        F = self.field
        return F.add(F.add(x[0], x[0]), F.mul(self.t, x[1]))

    def polar(self, x, y):
        """f_N(x, y) = tr(conj(y) x)."""
        return self.trace(self.mul(self.conj(y), x))

    def inv(self, x):
        n = self.norm(x)
        if n == self.field.zero:
            raise ZeroDivisionError("non-invertible quaternion (norm 0)")
        return self.smul(self.field.inv(n), self.conj(x))

    def norm_diagonal(self):
        """N(x) = x0^2 + t x0 x1 + d x1^2 + c x2^2 + tc x2 x3 + cd x3^2 as an
        upper 4x4 matrix."""
        F, d, c, t = self.field, self.d, self.c, self.t
        m = [[F.zero] * 4 for _ in range(4)]
        m[0][0] = F.one
        m[0][1] = t
        m[1][1] = d
        m[2][2] = c
        m[2][3] = F.mul(t, c)
        m[3][3] = F.mul(c, d)
        return tuple(tuple(r) for r in m)

    # --- pure part ---

    def pure_basis(self):
        if self.field.char != 2:
            return (self.h1, self.h2, self.h3)
        return (self.one, self.h2, self.h3)  # K + I*L

    def is_pure(self, x):
        F = self.field
        if F.char != 2:
            return x[0] == F.zero
        return x[1] == F.zero

    # --- splitness ---

    def is_division(self):
        """Norm form anisotropic: exact over finite fields and Q; bounded
        search + Undecidable elsewhere."""
        if self._division is None:
            self._division = self._decide_division()
        return self._division

    def _decide_division(self):
        F = self.field
        w = self.isotropic_vector()
        return w is None

    def isotropic_vector(self):
        """A nonzero quaternion of norm 0, or None when the algebra is a
        division algebra (exact for finite fields and Q)."""
        F = self.field
        if F.is_finite:
            for x in itertools.product(F.elements(), repeat=4):
                if any(v != F.zero for v in x) and self.norm(x) == F.zero:
                    return x
            return None
        if isinstance(F, Rationals):
            # division <=> the pure ternary <d, c, cd> is anisotropic
            d, c = self.d, self.c
            vals = [d, c, c * d]
            lcm = 1
            import math
            for v in vals:
                lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
            ints = [int(v * lcm) for v in vals]
            if not _legendre_isotropic(*ints):
                return None
            bound = 1
            while bound < 10000:
                rng = [Fraction(k) for k in range(-bound, bound + 1)]
                for y in itertools.product(rng, repeat=3):
                    if all(v == 0 for v in y):
                        continue
                    cand = (F.zero, y[0], y[1], y[2])
                    if self.norm(cand) == F.zero:
                        return cand
                bound *= 2
            raise AssertionError("Legendre predicted an isotropic vector; search bound hit")
        # bounded search only
        sample = [F.zero, F.one, F.neg(F.one)]
        if hasattr(F, "t") and not isinstance(F, QuadExtension):
            sample.append(F.t)
        for x in itertools.product(sample, repeat=4):
            if any(v != F.zero for v in x) and self.norm(x) == F.zero:
                return x
        raise Undecidable(f"splitness of quaternion algebra over {F.label}")

    def is_split(self):
        return not self.is_division()

    # --- conjugacy solvers (division algebras only) ---

    def _require_division(self):
        if self.is_commutative:
            raise SplitAlgebraError("conjugacy solvers are disabled in the "
                                    "commutative (inseparable) case")
        if not self.is_division():
            raise SplitAlgebraError("conjugacy construction is only valid in a "
                                    "division algebra (see the split counterexample)")

    def conjugate_solver(self, v, x):
        """a with a v a^-1 = x, or None if norms/traces differ."""
        self._require_division()
        F = self.field
        if self.norm(v) != self.norm(x) or self.trace(v) != self.trace(x):
            return None
        if x == v:
            return self.one
        vt = self.conj(v)
        if x != vt:
            a = self.sub(x, vt)
        else:
            a = self._perp_element([self.one, v])
        assert self.mul(self.mul(a, v), self.inv(a)) == x
        return a

    def _perp_element(self, elems):
        """A nonzero element orthogonal (polar form of N) to all of elems."""
        F = self.field
        rows = tuple(tuple(self.polar(b, e) for b in (self.one, self.h1, self.h2, self.h3))
                     for e in elems)
        for k in la.kernel_basis(F, rows):
            if any(c != F.zero for c in k):
                return k
        raise AssertionError("no orthogonal element found")

    def pair_conjugate_solver(self, v, w, x, y):
        """a with a v a^-1 = x and a w a^-1 = y, or (None, reason)."""
        self._require_division()
        F = self.field
        if len(la.rref(F, (v, w))[0]) < 2:
            return None, "w in K*v"
        if len(la.rref(F, (x, y))[0]) < 2:
            return None, "y in K*x"
        checks = (("N(v)=N(x)", self.norm(v) == self.norm(x)),
                  ("N(w)=N(y)", self.norm(w) == self.norm(y)),
                  ("tr(v)=tr(x)", self.trace(v) == self.trace(x)),
                  ("tr(w)=tr(y)", self.trace(w) == self.trace(y)),
                  ("f_N(v,w)=f_N(x,y)", self.polar(v, w) == self.polar(x, y)))
        for name, ok in checks:
            if not ok:
                return None, f"condition {name} fails"
        a1 = self.conjugate_solver(v, x)
        y1 = self.mul(self.mul(self.inv(a1), y), a1)   # pull back: need (v,w)->(v,y1)
        if y1 == w:
            a = a1
        else:
            cc = self.sub(y1, w)
            b = self._perp_element([self.one, v, y1])
            a = self.mul(a1, self.mul(b, cc))
        ainv = self.inv(a)
        assert self.mul(self.mul(a, v), ainv) == x
        assert self.mul(self.mul(a, w), ainv) == y
        return a, None

    def z_action_solver(self, v, x, box=None):
        """(a, b) with a v conj(a) N(b) = x, via a candidate z with
        N(x) = N(v) N(z)^2 and tr(x) = tr(v) N(z).

        Returns (a, b), or (None, "impossible") when the necessary norm-ratio
        square condition fails, or (None, "bounded") when the search box for
        z was exhausted.
        """
        self._require_division()
        F = self.field
        if x == v:
            return self.one, self.one
        ratio = F.div(self.norm(x), self.norm(v))
        n = F.sqrt(ratio)
        if n is None:
            return None, "impossible"   # N(z)^2 = N(x)/N(v) has no solution
        cands = [n] if n == F.neg(n) else [n, F.neg(n)]
        cands = [m for m in cands
                 if F.mul(self.trace(v), m) == self.trace(x)]
        if not cands:
            return None, "impossible"
        bounded_hit = False
        for m in cands:
            z, flag = self._find_norm_witness(m, box)
            if z is None:
                bounded_hit = bounded_hit or (flag == "bounded")
                continue
            vn = self.smul(m, v)
            a = self.conjugate_solver(vn, x)
            assert a is not None  # norms and traces match by construction
            b = self.mul(z, self.inv(a))
            got = self.smul(self.norm(b), self.mul(self.mul(a, v), self.conj(a)))
            assert got == x
            return a, b
        return None, ("bounded" if bounded_hit else "impossible")

    def _find_norm_witness(self, m, box=None):
        """z with N(z) = m, or (None, "impossible"/"bounded")."""
        F = self.field
        if m == F.zero:
            return None, "impossible"
        if F.is_finite:
            for z in self._candidate_box(None):
                if self.norm(z) == m:
                    return z, None
            return None, "impossible"  # exhaustive over a finite field
        if isinstance(F, Rationals):
            if self.d > 0 and self.c > 0 and m < 0:
                return None, "impossible"  # positive definite norm
            if (self.d, self.c) == (Fraction(1), Fraction(1)) and m > 0:
                # Lagrange: N(w) = m.num * m.den always has an integer solution
                n = m.numerator * m.denominator
                w = _four_squares(n)
                z = tuple(Fraction(k, m.denominator) for k in w)
                assert self.norm(z) == m
                return z, None
        for z in self._candidate_box(box):
            if self.norm(z) == m:
                return z, None
        return None, "bounded"

    def _candidate_box(self, box):
        F = self.field
        if box is None:
            if F.is_finite:
                coords = list(F.elements())
            elif isinstance(F, Rationals):
                coords = [Fraction(n, d) for n in range(-10, 11) for d in (1, 2, 3)]
            else:
                coords = [F.zero, F.one, F.neg(F.one)]
        else:
            coords = [F.coerce(c) for c in box]
        return (q for q in itertools.product(coords, repeat=4)
                if any(c != F.zero for c in q))

    # --- inner automorphisms ---

    def inner_auto(self, a):
        if self.norm(a) == self.field.zero:
            raise ZeroDivisionError("inner automorphism needs a unit")
        ainv = self.inv(a)
        return lambda x: self.mul(self.mul(a, x), ainv)

    def pure_part_matrix(self, auto):
        """3x3 matrix of the automorphism restricted to Pu H."""
        F = self.field
        basis = self.pure_basis()
        full = (self.one, self.h1, self.h2, self.h3)
        idx = [full.index(b) for b in basis]
        other = [i for i in range(4) if i not in idx]
        cols = []
        for b in basis:
            img = auto(b)
            if any(img[i] != F.zero for i in other):
                raise AssertionError("automorphism does not preserve Pu H")
            cols.append(tuple(img[i] for i in idx))
        return tuple(zip(*cols))

    def so_check(self, auto):
        return la.det(self.field, self.pure_part_matrix(auto)) == self.field.one

    # --- norm group cosets ---

    def norm_group_member(self, x):
        """x in N(H^x)?  Exact for finite fields, split algebras, and
        H_Q^{-1,-1}; bounded search + Undecidable elsewhere."""
        F = self.field
        x = F.coerce(x)
        if x == F.zero:
            raise FieldError("norm group membership is defined on K^x")
        if F.is_finite:
            return True  # norms are onto (exhaustively verified in tests)
        try:
            split = self.is_split()
        except Undecidable:
            split = None
        if split:
            return True  # N = det on M2(K) is onto K
        if isinstance(F, Rationals) and (self.d, self.c) == (Fraction(1), Fraction(1)):
            return x > 0  # Lagrange four-square
        for q in self._candidate_box(None):
            if self.norm(q) == x:
                return True
        raise Undecidable(f"norm-group membership for {F.format(x)} over {F.label}")

    def norm_square_group_member(self, x):
        """x in N(H^{sq,x}) = {N(y)^2 : y in H^x}?"""
        F = self.field
        x = F.coerce(x)
        if x == F.zero:
            raise FieldError("defined on K^x")
        r = F.sqrt(x)
        if r is None:
            return False
        if F.is_finite:
            return True
        try:
            return self.norm_group_member(r) or self.norm_group_member(F.neg(r))
        except Undecidable:
            raise

    def format(self, x):
        F = self.field
        names = ("", "h1", "h2", "h3")
        terms = []
        for i, c in enumerate(x):
            if c == F.zero:
                continue
            cs = F.format(c)
            if i == 0:
                terms.append(cs)
            else:
                terms.append(names[i] if cs == "1" else f"{cs}*{names[i]}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        F = self.field
        return f"H_{F.label}^(-{F.format(self.d)},-{F.format(self.c)})"


# ---------------------------------------------------------------------------
# matrix models: left/right multiplications as elements of GL4(K)
# ---------------------------------------------------------------------------

def quat_extension(H):
    """The quadratic extension L = K(u) inside H (u = h1)."""
    return QuadExtension(H.field, H.t, H.d)


def left_mult_matrix(H, q):
    """Matrix of x -> q x in the basis (1, u, I, Iu): [[A, -c conj(B)], [B, conj(A)]]."""
    L = quat_extension(H)
    K = H.field
    A = (q[0], q[1])
    B = (q[2], q[3])
    c = H.c
    eA, eB = L.embed_matrix(A), L.embed_matrix(B)
    eAc = L.embed_matrix(L.conj(A))
    eBc = L.embed_matrix(L.conj(B))
    top = tuple(tuple(list(r1) + [K.neg(K.mul(c, v)) for v in r2]) for r1, r2 in zip(eA, eBc))
    bot = tuple(tuple(list(r1) + list(r2)) for r1, r2 in zip(eB, eAc))
    return top + bot


def right_mult_matrix(H, q):
    """Matrix of x -> x q in the same basis: [[A, -c B xi], [B xi, A]]."""
    L = quat_extension(H)
    K = H.field
    A = (q[0], q[1])
    B = (q[2], q[3])
    c = H.c
    eA = L.embed_matrix(A)
    eBxi = la.mat_mul(K, L.embed_matrix(B), L.xi_matrix)
    top = tuple(tuple(list(r1) + [K.neg(K.mul(c, v)) for v in r2]) for r1, r2 in zip(eA, eBxi))
    bot = tuple(tuple(list(r1) + list(r2)) for r1, r2 in zip(eBxi, eA))
    return top + bot
