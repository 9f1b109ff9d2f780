"""Exact field backends: Q, GF(p), GF(p^k), GF(p)(t), and quadratic extensions.

Elements are plain hashable canonical values (Fraction, int, coefficient
tuples); the field object supplies the arithmetic.  Canonical representation
makes == structural equality everywhere.
"""

from fractions import Fraction
from math import isqrt
import itertools


class FieldError(ValueError):
    pass


class Undecidable(Exception):
    """No exact decision procedure is implemented for this backend/input."""


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p): tuples of ints, lowest degree first, trimmed
# ---------------------------------------------------------------------------

def _ptrim(c):
    c = tuple(c)
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _ptrim(((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                  for i in range(n))


def _pneg(a, p):
    return tuple((-x) % p for x in a)


def _psub(a, b, p):
    return _padd(a, _pneg(b, p), p)


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    binv = pow(b[-1], p - 2, p)
    while len(_ptrim(a)) >= len(b):
        a = list(_ptrim(a))
        k = len(a) - len(b)
        c = (a[-1] * binv) % p
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - c * y) % p
    return _ptrim(q), _ptrim(a)


def _pgcd(a, b, p):
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = tuple((x * inv) % p for x in a)
    return a


def _pmonic(a, p):
    if not a or a[-1] == 1:
        return a, 1
    lc = a[-1]
    inv = pow(lc, p - 2, p)
    return tuple((x * inv) % p for x in a), lc


def _peval(a, x, p):
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def _poly_sqrt(a, p, sqrt_coeff):
    """Exact square root of a polynomial over GF(p), or None.

    sqrt_coeff: square root function for the coefficient field.
    """
    if not a:
        return ()
    if (len(a) - 1) % 2:
        return None
    if p == 2:
        # squaring is coefficientwise with doubled exponents
        if any(a[i] for i in range(1, len(a), 2)):
            return None
        root = []
        for i in range(0, len(a), 2):
            r = sqrt_coeff(a[i])
            if r is None:
                return None
            root.append(r)
        return _ptrim(root)
    m = (len(a) - 1) // 2
    lead = sqrt_coeff(a[-1])
    if lead is None:
        return None
    s = [0] * (m + 1)
    s[m] = lead
    inv2lead = pow((2 * lead) % p, p - 2, p)
    for k in range(m - 1, -1, -1):
        # coefficient of x^(k+m) in s^2 must equal a[k+m]
        acc = 0
        for i in range(k + 1, m):
            j = k + m - i
            if 0 <= j <= m:
                acc = (acc + s[i] * s[j]) % p
        s[k] = ((a[k + m] - acc) * inv2lead) % p
    cand = _ptrim(s)
    return cand if _pmul(cand, cand, p) == _ptrim(a) else None


def _irreducible(poly, p):
    """Irreducibility over GF(p) by absence of factors of degree <= deg/2."""
    deg = len(poly) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    if any(_peval(poly, x, p) == 0 for x in range(p)):
        return False
    if deg <= 3:
        return True
    # brute force over monic factors (desk-scale moduli only)
    for d in range(2, deg // 2 + 1):
        for coeffs in itertools.product(range(p), repeat=d):
            f = coeffs + (1,)
            if _pdivmod(poly, f, p)[1] == ():
                return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


# ---------------------------------------------------------------------------
# symbolic marker for infinite representative sets
# ---------------------------------------------------------------------------

class SymbolicReps:
    """Marker for an infinite set of coset representatives.

    Carries a membership-style predicate same_class(a, b) instead of an
    iterator; callers must not expect enumeration.
    """

    def __init__(self, description, same_class):
        self.description = description
        self.same_class = same_class
        self.finite = False

    def __repr__(self):
        return f"SymbolicReps({self.description!r})"


class FieldProfile:
    """Characteristic, perfectness, and coset-representative data of a field."""

    def __init__(self, field):
        self.field = field
        self.characteristic = field.char
        self.is_finite = field.is_finite
        self.is_perfect = field.is_perfect
        self.square_class_reps = field._square_class_reps()
        if field.char == 2:
            self.wp_coset_reps = field._wp_coset_reps()
            self.rplus_reps = field._rplus_reps()
        else:
            self.wp_coset_reps = None
            self.rplus_reps = None
        self._verify()

    def _verify(self):
        F = self.field
        if not F.is_finite:
            return
        els = list(F.elements())
        units = [x for x in els if x != F.zero]
        # square class reps exactly tile K^x / squares
        reps = self.square_class_reps
        for u in units:
            hits = [r for r in reps if F.same_square_class(u, r)]
            if len(hits) != 1:
                raise FieldError(f"square class reps do not tile K^x for {F.label}")
        if F.char == 2:
            for x in els:
                hits = [r for r in self.wp_coset_reps if F.same_wp_coset(x, r)]
                if len(hits) != 1:
                    raise FieldError(f"wp coset reps do not tile K for {F.label}")
            rp = self.rplus_reps
            for x in els:
                hits = [r for r in rp if F.same_rplus_class(x, r)]
                if len(hits) != 1:
                    raise FieldError(f"R+ reps do not tile K/K^sq for {F.label}")


# ---------------------------------------------------------------------------
# base class: shared derived operations
# ---------------------------------------------------------------------------

class Field:
    is_finite = False
    is_perfect = True
    order = None

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, n):
        if n < 0:
            return self.power(self.inv(a), -n)
        acc, base = self.one, a
        while n:
            if n & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            n >>= 1
        return acc

    def sum(self, xs):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def prod(self, xs):
        acc = self.one
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def same_square_class(self, a, b):
        if a == self.zero or b == self.zero:
            raise FieldError("square classes are defined on K^x")
        return self.is_square(self.div(a, b))

    # --- char-2 structure ---

    def in_wp(self, x):
        """x in wp = {y + y^2}?"""
        if self.char != 2:
            raise FieldError("wp is defined only in characteristic 2")
        return self.artin_schreier_root(x) is not None

    def same_wp_coset(self, a, b):
        return self.in_wp(self.sub(a, b))

    def same_rplus_class(self, a, b):
        """Same orbit of squares-of-units acting on K/K^sq (char 2)."""
        if self.char != 2:
            raise FieldError("R+ classes are defined only in characteristic 2")
        for u in self._rplus_scaling_units():
            if self.frobenius_root(self.sub(a, self.mul(self.mul(u, u), b))) is not None:
                return True
        return False

    def frobenius_root(self, x):
        """y with y^p = x, or None (p = char)."""
        raise NotImplementedError

    def profile(self):
        return FieldProfile(self)

    def quadratic_roots(self, t, d):
        """Roots in K of X^2 + tX + d."""
        if self.char != 2:
            disc = self.sub(self.mul(t, t), self.mul(self.coerce(4), d))
            r = self.sqrt(disc)
            if r is None:
                return []
            half = self.inv(self.coerce(2))
            x1 = self.mul(self.sub(self.neg(t), r), half)
            x2 = self.mul(self.add(self.neg(t), r), half)
            return [x1] if x1 == x2 else [x1, x2]
        if t == self.zero:
            r = self.frobenius_root(self.neg(d))
            return [] if r is None else [r]
        # X = tY turns X^2+tX+d into Y^2+Y+d/t^2
        c = self.div(d, self.mul(t, t))
        y = self.artin_schreier_root(self.neg(c))
        if y is None:
            return []
        x1 = self.mul(t, y)
        x2 = self.add(x1, t)
        return [x1, x2]

    def format(self, x):
        return str(x)

    def __repr__(self):
        return self.label

    def __eq__(self, other):
        return isinstance(other, Field) and self.label == other.label

    def __hash__(self):
        return hash(self.label)


# ---------------------------------------------------------------------------
# the rationals
# ---------------------------------------------------------------------------

class Rationals(Field):
    char = 0
    is_finite = False
    is_perfect = True
    label = "Q"
    spec = "q"

    zero = Fraction(0)
    one = Fraction(1)

    def is_value(self, x):
        return isinstance(x, Fraction)

    def coerce(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def is_square(self, x):
        if x < 0:
            return False
        n, d = x.numerator, x.denominator
        return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d

    def sqrt(self, x):
        if x < 0:
            return None
        n, d = x.numerator, x.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn == n and rd * rd == d:
            return Fraction(rn, rd)
        return None

    def artin_schreier_root(self, x):
        raise FieldError("Artin-Schreier roots require characteristic 2")

    def _square_class_reps(self):
        return SymbolicReps("signed squarefree integers", self.same_square_class)

    def random_element(self, rng, size=10):
        return Fraction(rng.randint(-size, size), rng.randint(1, size))

    def parse(self, s):
        return Fraction(s.replace(" ", ""))

    def format(self, x):
        return str(x)

    @staticmethod
    def factor_int(n):
        """Trial-division factorization of a positive int (desk scale)."""
        out = {}
        m = n
        d = 2
        while d * d <= m:
            while m % d == 0:
                out[d] = out.get(d, 0) + 1
                m //= d
            d += 1 if d == 2 else 2
        if m > 1:
            out[m] = out.get(m, 0) + 1
        return out

    def is_sum_of_two_squares(self, x):
        """Fermat: q > 0 is a sum of two rational squares iff every prime
        = 3 mod 4 divides numerator*denominator with even multiplicity."""
        if x < 0:
            return False
        if x == 0:
            return True
        m = x.numerator * x.denominator
        for prime, e in self.factor_int(m).items():
            if prime % 4 == 3 and e % 2:
                return False
        return True


# ---------------------------------------------------------------------------
# prime fields GF(p)
# ---------------------------------------------------------------------------

class PrimeField(Field):
    is_finite = True
    is_perfect = True

    def __init__(self, p):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.order = p
        self.zero = 0
        self.one = 1
        self.label = f"GF({p})"
        self.spec = f"gf:{p}"

    def is_value(self, x):
        return isinstance(x, int) and 0 <= x < self.p

    def coerce(self, n):
        if isinstance(n, Fraction):
            return (n.numerator * pow(n.denominator, self.p - 2, self.p)) % self.p
        return int(n) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)

    def units(self):
        return range(1, self.p)

    def is_square(self, x):
        if x == 0 or self.p == 2:
            return True
        return pow(x, (self.p - 1) // 2, self.p) == 1

    def sqrt(self, x):
        if self.p == 2 or x == 0:
            return x
        if not self.is_square(x):
            return None
        if self.p % 4 == 3:
            return pow(x, (self.p + 1) // 4, self.p)
        for r in range(self.p):  # desk-scale fields
            if (r * r) % self.p == x:
                return r
        return None

    def frobenius_root(self, x):
        # Frobenius is bijective on GF(p): y^p = y
        return x

    def artin_schreier_root(self, x):
        if self.p != 2:
            raise FieldError("Artin-Schreier roots require characteristic 2")
        return 0 if x == 0 else None

    def _square_class_reps(self):
        if self.p == 2:
            return [1]
        nonsq = next(x for x in range(2, self.p) if not self.is_square(x))
        return [1, nonsq]

    def _wp_coset_reps(self):
        return [0, 1]

    def _rplus_scaling_units(self):
        return [1]

    def _rplus_reps(self):
        return [0]

    def random_element(self, rng):
        return rng.randrange(self.p)

    def parse(self, s):
        return int(s) % self.p

    def format(self, x):
        return str(x)


# ---------------------------------------------------------------------------
# extension fields GF(p^k)
# ---------------------------------------------------------------------------

def _default_modulus(p, k):
    """Lexicographically first monic irreducible of degree k over GF(p)."""
    for coeffs in itertools.product(range(p), repeat=k):
        poly = coeffs + (1,)
        if _irreducible(poly, p):
            return poly
    raise FieldError("no irreducible polynomial found")


class ExtField(Field):
    """GF(p^k) as coefficient vectors modulo a fixed irreducible modulus."""

    is_finite = True
    is_perfect = True

    def __init__(self, p, k, modulus=None, var="x"):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 2:
            raise FieldError("extension degree must be >= 2")
        if modulus is None:
            modulus = _default_modulus(p, k)
        modulus = _ptrim(tuple(c % p for c in modulus))
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if not _irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.char = p
        self.order = p ** k
        self.modulus = modulus
        self.var = var
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)
        self.gen = (0, 1) + (0,) * (k - 2)
        self.label = f"GF({p}^{k})"
        self.spec = f"gf:{p}^{k}:" + ",".join(map(str, modulus))

    def is_value(self, x):
        return (isinstance(x, tuple) and len(x) == self.k
                and all(isinstance(c, int) and 0 <= c < self.p for c in x))

    def _pad(self, c):
        c = _ptrim(c)
        return c + (0,) * (self.k - len(c))

    def coerce(self, n):
        if isinstance(n, tuple):
            return self._pad(tuple(x % self.p for x in n))
        if isinstance(n, Fraction):
            v = (n.numerator * pow(n.denominator, self.p - 2, self.p)) % self.p
            return self._pad((v,))
        return self._pad((int(n) % self.p,))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = _pmul(_ptrim(a), _ptrim(b), self.p)
        return self._pad(_pdivmod(prod, self.modulus, self.p)[1])

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of 0")
        # extended Euclid in GF(p)[x]
        r0, r1 = self.modulus, _ptrim(a)
        s0, s1 = (), (1,)
        while r1:
            q, r = _pdivmod(r0, r1, self.p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, self.p), self.p)
        lc_inv = pow(r0[-1], self.p - 2, self.p)
        return self._pad(tuple((x * lc_inv) % self.p for x in s0))

    def elements(self):
        for coeffs in itertools.product(range(self.p), repeat=self.k):
            yield coeffs

    def units(self):
        return (x for x in self.elements() if x != self.zero)

    def is_square(self, x):
        if x == self.zero or self.p == 2:
            return True
        return self.power(x, (self.order - 1) // 2) == self.one

    def sqrt(self, x):
        if self.p == 2:
            return self.power(x, self.order // 2)  # inverse Frobenius
        if x == self.zero:
            return x
        if not self.is_square(x):
            return None
        if self.order % 4 == 3:
            return self.power(x, (self.order + 1) // 4)
        for r in self.elements():  # desk-scale fields
            if self.mul(r, r) == x:
                return r
        return None

    def frobenius_root(self, x):
        return self.power(x, self.order // self.p)

    def absolute_trace(self, x):
        acc, cur = self.zero, x
        for _ in range(self.k):
            acc = self.add(acc, cur)
            cur = self.power(cur, self.p)
        return acc[0]

    def artin_schreier_root(self, x):
        if self.p != 2:
            raise FieldError("Artin-Schreier roots require characteristic 2")
        if self.absolute_trace(x) != 0:
            return None
        for y in self.elements():
            if self.add(self.mul(y, y), y) == x:
                return y
        return None

    def multiplicative_generator(self):
        n = self.order - 1
        for g in self.units():
            if g == self.one:
                continue
            seen, cur, cnt = {g}, g, 1
            while cur != self.one:
                cur = self.mul(cur, g)
                cnt += 1
            if cnt == n:
                return g
        raise FieldError("no generator found")

    def _square_class_reps(self):
        if self.p == 2:
            return [self.one]
        g = self.multiplicative_generator()
        return [self.one, g]

    def _wp_coset_reps(self):
        # trace-0 elements form wp; any trace-1 element represents the other coset
        nontrivial = next(x for x in self.elements() if self.absolute_trace(x) == 1)
        return [self.zero, nontrivial]

    def _rplus_scaling_units(self):
        return list(self.units())

    def _rplus_reps(self):
        return [self.zero]  # perfect: K/K^sq is trivial

    def random_element(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def parse(self, s):
        return self._pad(_parse_poly(s, self.var, self.p))

    def format(self, x):
        return _format_poly(_ptrim(x), self.var)


# ---------------------------------------------------------------------------
# rational function fields GF(p)(t)
# ---------------------------------------------------------------------------

class RationalFunctionField(Field):
    """GF(p)(t): reduced fractions of polynomials, monic denominator."""

    is_finite = False
    is_perfect = False

    def __init__(self, p, var="t"):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.var = var
        self.zero = ((), (1,))
        self.one = ((1,), (1,))
        self.t = ((0, 1), (1,))
        self.label = f"GF({p})({var})"
        self.spec = f"fp_t:{p}"

    def is_value(self, x):
        return (isinstance(x, tuple) and len(x) == 2
                and all(isinstance(part, tuple) for part in x)
                and all(isinstance(c, int) for part in x for c in part))

    def _make(self, num, den):
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return self.zero
        g = _pgcd(num, den, self.p)
        if len(g) > 1 or g != (1,):
            num = _pdivmod(num, g, self.p)[0]
            den = _pdivmod(den, g, self.p)[0]
        den, lc = _pmonic(den, self.p)
        if lc != 1:
            inv = pow(lc, self.p - 2, self.p)
            num = tuple((x * inv) % self.p for x in num)
        return (num, den)

    def coerce(self, n):
        if isinstance(n, tuple) and len(n) == 2 and isinstance(n[0], tuple):
            return self._make(_ptrim(tuple(c % self.p for c in n[0])),
                              _ptrim(tuple(c % self.p for c in n[1])))
        if isinstance(n, Fraction):
            v = (n.numerator * pow(n.denominator, self.p - 2, self.p)) % self.p
            return ((v,), (1,)) if v else self.zero
        v = int(n) % self.p
        return ((v,), (1,)) if v else self.zero

    def from_poly(self, coeffs):
        return self._make(_ptrim(tuple(c % self.p for c in coeffs)), (1,))

    def add(self, a, b):
        (an, ad), (bn, bd) = a, b
        num = _padd(_pmul(an, bd, self.p), _pmul(bn, ad, self.p), self.p)
        return self._make(num, _pmul(ad, bd, self.p))

    def neg(self, a):
        return (_pneg(a[0], self.p), a[1])

    def mul(self, a, b):
        return self._make(_pmul(a[0], b[0], self.p), _pmul(a[1], b[1], self.p))

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of 0")
        return self._make(a[1], a[0])

    def _coeff_sqrt(self, c):
        base = PrimeField(self.p)
        return base.sqrt(c)

    def is_square(self, x):
        return self.sqrt(x) is not None

    def sqrt(self, x):
        rn = _poly_sqrt(x[0], self.p, self._coeff_sqrt)
        if rn is None:
            return None
        rd = _poly_sqrt(x[1], self.p, self._coeff_sqrt)
        if rd is None:
            return None
        return self._make(rn, rd)

    def frobenius_root(self, x):
        """y with y^p = x, or None.  x = f^p iff both num and den are p-th powers."""
        if self.p == 2:
            return self.sqrt(x)
        rn = self._proot(x[0])
        rd = self._proot(x[1])
        if rn is None or rd is None:
            return None
        return self._make(rn, rd)

    def _proot(self, poly):
        if not poly:
            return ()
        if (len(poly) - 1) % self.p:
            return None
        base = PrimeField(self.p)
        out = []
        for i in range(0, len(poly)):
            if i % self.p == 0:
                out.append(poly[i])  # c^p = c in GF(p)
            elif poly[i]:
                return None
        cand = _ptrim(out)
        check = cand
        for _ in range(self.p - 1):
            check = _pmul(check, cand, self.p)
        return cand if check == _ptrim(poly) else None

    def artin_schreier_root(self, x):
        """Solve y^2 + y = x over GF(2)(t) for polynomial x by degree descent.

        Non-polynomial arguments are not decided here (callers must surface
        this), except that poles of odd order certify non-membership.
        """
        if self.p != 2:
            raise FieldError("Artin-Schreier roots require characteristic 2")
        num, den = x
        if den != (1,):
            raise Undecidable(f"wp-membership for non-polynomial {self.format(x)}")
        # any rational solution of y^2+y = f (f polynomial) is a polynomial
        f = list(num)
        y = ()
        while True:
            f = _ptrim(f)
            if not f:
                return (y, (1,))
            deg = len(f) - 1
            if deg == 0:
                return (_padd(y, (f[0],), 2), (1,)) if f[0] == 0 else None
            if deg % 2:
                return None
            half = deg // 2
            mono = (0,) * half + (1,)
            y = _padd(y, mono, 2)
            f = _psub(_psub(f, _pmul(mono, mono, 2), 2), mono, 2)

    def _square_class_reps(self):
        return SymbolicReps("squarefree polynomials times unit classes",
                            self.same_square_class)

    def _wp_coset_reps(self):
        def same(a, b):
            return self.in_wp(self.sub(a, b))
        return SymbolicReps("wp-cosets of GF(2)(t)", same)

    def _rplus_scaling_units(self):
        raise Undecidable("R+ classes over an imperfect field form an infinite set")

    def _rplus_reps(self):
        return SymbolicReps("K^sq-orbit classes on K/K^sq (infinite: imperfect field)",
                            lambda a, b: self.same_rplus_class(a, b))

    def random_element(self, rng, deg=3):
        num = tuple(rng.randrange(self.p) for _ in range(rng.randint(1, deg + 1)))
        den = tuple(rng.randrange(self.p) for _ in range(rng.randint(1, deg))) + (1,)
        return self._make(_ptrim(num), _ptrim(den))

    def parse(self, s):
        s = s.replace(" ", "")
        num, den = s, "1"
        depth = 0
        for i, ch in enumerate(s):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                num, den = s[:i], s[i + 1:]
                break
        def strip(part):
            if part.startswith("(") and part.endswith(")"):
                return part[1:-1]
            return part
        return self._make(_parse_poly(strip(num), self.var, self.p),
                          _parse_poly(strip(den), self.var, self.p))

    def format(self, x):
        num, den = x
        ns = _format_poly(num, self.var)
        if den == (1,):
            return ns
        ds = _format_poly(den, self.var)
        if "+" in ns or "-" in ns[1:]:
            ns = f"({ns})"
        if "+" in ds or "-" in ds[1:]:
            ds = f"({ds})"
        return f"{ns}/{ds}"


# ---------------------------------------------------------------------------
# polynomial string helpers
# ---------------------------------------------------------------------------

def _parse_poly(s, var, p):
    s = s.replace(" ", "").replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    if not s:
        raise FieldError("empty polynomial")
    coeffs = {}
    for term in s.split("+"):
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        if var in term:
            cpart, _, epart = term.partition(var)
            cpart = cpart.rstrip("*")
            c = int(cpart) if cpart else 1
            e = int(epart[1:]) if epart.startswith("^") else (1 if not epart else int(epart))
        else:
            c, e = int(term), 0
        if neg:
            c = -c
        coeffs[e] = coeffs.get(e, 0) + c
    deg = max(coeffs) if coeffs else 0
    return _ptrim(tuple(coeffs.get(i, 0) % p for i in range(deg + 1)))


def _format_poly(coeffs, var):
    if not coeffs:
        return "0"
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            terms.append(f"{head}{var}" + (f"^{e}" if e > 1 else ""))
    return "+".join(terms)


# ---------------------------------------------------------------------------
# quadratic extensions L = K[X]/(X^2 + tX + d)
# ---------------------------------------------------------------------------

class QuadExtension(Field):
    """L = K(u), u^2 + tu + d = 0 with 2t = 0; elements are pairs (a, b) = a + bu.

    Provides the Galois-style conjugation a+bu -> a+tb-bu, the norm
    N(x) = conj(x)*x in K, and the 2x2 matrix model of the paper.
    """

    def __init__(self, base, t, d):
        t = base.coerce(t)
        d = base.coerce(d)
        if base.add(t, t) != base.zero:
            raise FieldError("parameter t must satisfy 2t = 0")
        if base.quadratic_roots(t, d):
            raise FieldError(
                f"X^2 + {base.format(t)}X + {base.format(d)} is reducible over {base.label}")
        self.base = base
        self.t = t
        self.d = d
        self.char = base.char
        self.is_finite = base.is_finite
        self.order = None if base.order is None else base.order ** 2
        self.is_perfect = base.is_perfect
        self.separable = (base.char != 2) or (t != base.zero)
        self.zero = (base.zero, base.zero)
        self.one = (base.one, base.zero)
        self.u = (base.zero, base.one)
        self.label = f"{base.label}(u:u^2+{base.format(t)}u+{base.format(d)})"
        self.spec = f"quad:{base.spec}:{base.format(t)},{base.format(d)}"
        self.u_matrix = ((base.zero, base.neg(d)), (base.one, t))
        self.xi_matrix = ((base.one, t), (base.zero, base.neg(base.one)))
        self.delta_matrix = ((d, base.zero), (base.zero, base.neg(base.one)))

    def is_value(self, x):
        return (isinstance(x, tuple) and len(x) == 2
                and self.base.is_value(x[0]) and self.base.is_value(x[1]))

    def coerce(self, n):
        if self.is_value(n):
            return n
        if self.base.is_value(n):
            return (n, self.base.zero)
        if isinstance(n, tuple) and len(n) == 2 and not isinstance(n, Fraction):
            try:
                return (self.base.coerce(n[0]), self.base.coerce(n[1]))
            except (TypeError, ValueError):
                pass
        return (self.base.coerce(n), self.base.zero)

    def embed(self, a):
        return (a, self.base.zero)

    def add(self, x, y):
        return (self.base.add(x[0], y[0]), self.base.add(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        B = self.base
        a, b = x
        c, e = y
        be = B.mul(b, e)
        return (B.sub(B.mul(a, c), B.mul(self.d, be)),
                B.sub(B.add(B.mul(a, e), B.mul(b, c)), B.mul(self.t, be)))

    def conj(self, x):
        a, b = x
        return (self.base.add(a, self.base.mul(self.t, b)), self.base.neg(b))

    def norm(self, x):
        n = self.mul(self.conj(x), x)
        assert n[1] == self.base.zero
        return n[0]

    def trace_to_base(self, x):
        s = self.add(self.conj(x), x)
        assert s[1] == self.base.zero
        return s[0]

    def inv(self, x):
        if x == self.zero:
            raise ZeroDivisionError("inverse of 0")
        n = self.norm(x)
        ninv = self.base.inv(n)
        c = self.conj(x)
        return (self.base.mul(c[0], ninv), self.base.mul(c[1], ninv))

    def elements(self):
        for a in self.base.elements():
            for b in self.base.elements():
                yield (a, b)

    def units(self):
        return (x for x in self.elements() if x != self.zero)

    def embed_matrix(self, x):
        """The 2x2 matrix [[a, -bd], [b, a+bt]] representing a + bu."""
        B = self.base
        a, b = x
        return ((a, B.neg(B.mul(b, self.d))), (b, B.add(a, B.mul(b, self.t))))

    def from_matrix(self, M):
        return (M[0][0], M[1][0])

    def is_square(self, x):
        return self.sqrt(x) is not None

    def sqrt(self, x):
        if x == self.zero:
            return x
        if self.is_finite:
            q = self.order
            if self.char == 2:
                # Frobenius inverse by repeated squaring: x^(q/2)
                return self.power(x, q // 2)
            if self.power(x, (q - 1) // 2) != self.one:
                return None
            if q % 4 == 3:
                return self.power(x, (q + 1) // 4)
            for r in self.elements():
                if self.mul(r, r) == x:
                    return r
            return None
        # (a+bu)^2 = x: solve over the base exactly
        B = self.base
        a, b = x
        if b == B.zero:
            r = B.sqrt(a)
            if r is not None:
                return (r, B.zero)
            # sqrt may be b*u shaped: (bu)^2 = -b^2 d (t=0 only)
            if self.t == B.zero:
                s = B.sqrt(B.neg(B.div(a, self.d)))
                if s is not None:
                    return (B.zero, s)
            return None
        if self.char == 2:
            raise Undecidable("sqrt in infinite characteristic-2 quadratic extension")
        # char 0: (p+qu)^2 = p^2 - q^2 d + 2pq u
        # 2pq = b, p^2 - q^2 d = a -> p^2 solves z^2 - a z - d b^2/4 = 0
        four = B.coerce(4)
        disc = B.add(B.mul(a, a), B.mul(self.d, B.mul(b, b)))
        rd = B.sqrt(disc)
        if rd is None:
            return None
        half = B.inv(B.coerce(2))
        for sign in (rd, B.neg(rd)):
            z = B.mul(B.add(a, sign), half)  # candidate p^2
            pr = B.sqrt(z)
            if pr is not None and pr != B.zero:
                q = B.div(B.mul(b, half), pr)
                cand = (pr, q)
                if self.mul(cand, cand) == x:
                    return cand
        return None

    def frobenius_root(self, x):
        if not self.is_finite:
            raise Undecidable("Frobenius root in infinite quadratic extension")
        return self.power(x, self.order // self.char)

    def artin_schreier_root(self, x):
        if self.char != 2:
            raise FieldError("Artin-Schreier roots require characteristic 2")
        if self.is_finite:
            for y in self.elements():
                if self.add(self.mul(y, y), y) == x:
                    return y
            return None
        raise Undecidable("Artin-Schreier over infinite quadratic extension")

    def norm_class_member(self, x):
        """Is x in N(L^x)?  Exact for finite fields and Q(i); else Undecidable."""
        x = self.base.coerce(x)
        if x == self.base.zero:
            raise FieldError("norm classes are defined on K^x")
        if self.is_finite:
            return True  # norm is onto (verified in tests by exhaustion)
        if isinstance(self.base, Rationals) and self.char == 0:
            if self.t == self.base.zero and self.d == Fraction(1):
                return self.base.is_sum_of_two_squares(x)  # N(a+bi) = a^2+b^2
        # bounded search for a witness before giving up
        small = [Fraction(n, m) for n in range(-6, 7) for m in range(1, 4)]
        if isinstance(self.base, Rationals):
            for a in small:
                for b in small:
                    if (a, b) != (0, 0) and self.norm((a, b)) == x:
                        return True
        raise Undecidable(f"norm-class membership over {self.label}")

    def same_norm_class(self, x, y):
        return self.norm_class_member(self.base.div(x, y))

    def _square_class_reps(self):
        if self.is_finite:
            if self.char == 2:
                return [self.one]
            for g in self.units():
                if not self.is_square(g):
                    return [self.one, g]
        return SymbolicReps("square classes of a quadratic extension",
                            self.same_square_class)

    def _wp_coset_reps(self):
        if self.is_finite:
            zero_like = [x for x in self.elements() if self.in_wp(x)]
            other = next(x for x in self.elements() if x not in zero_like)
            return [self.zero, other]
        def same(a, b):
            return self.in_wp(self.sub(a, b))
        return SymbolicReps("wp-cosets", same)

    def _rplus_scaling_units(self):
        if self.is_finite:
            return list(self.units())
        raise Undecidable("R+ classes over an infinite field")

    def _rplus_reps(self):
        if self.is_perfect and self.is_finite:
            return [self.zero]
        return SymbolicReps("R+ classes", lambda a, b: self.same_rplus_class(a, b))

    def random_element(self, rng):
        return (self.base.random_element(rng), self.base.random_element(rng))

    def parse(self, s):
        return tuple_pair(_parse_quad(s, self.base))

    def format(self, x):
        a, b = x
        B = self.base
        if b == B.zero:
            return B.format(a)
        bu = "u" if b == B.one else f"{B.format(b)}u"
        if a == B.zero:
            return bu
        return f"{bu}+{B.format(a)}"


def tuple_pair(x):
    return (x[0], x[1])


def _parse_quad(s, base):
    s = s.replace(" ", "")
    a, b = base.zero, base.zero
    s = s.replace("-", "+-")
    if s.startswith("+"):
        s = s[1:]
    for term in s.split("+"):
        if not term:
            continue
        if "u" in term:
            c = term.replace("u", "").rstrip("*")
            if c in ("", "-"):
                c += "1"
            b = base.add(b, base.parse(c))
        else:
            a = base.add(a, base.parse(term))
    return (a, b)


# ---------------------------------------------------------------------------
# field spec grammar:  q | gf:p | gf:p^k[:c0,c1,...,ck] | fp_t:p | quad:<base>:<t>,<d>
# ---------------------------------------------------------------------------

def make_field(spec):
    """Build a field from its CLI spec string (idempotent on Field objects)."""
    if isinstance(spec, Field):
        return spec
    s = spec.strip()
    if s == "q":
        return Rationals()
    if s.startswith("gf:"):
        body = s[3:]
        if ":" in body:
            size, mod = body.split(":", 1)
            coeffs = tuple(int(c) for c in mod.split(","))
        else:
            size, coeffs = body, None
        if "^" in size:
            p, k = size.split("^")
            return ExtField(int(p), int(k), coeffs)
        if coeffs is not None:
            raise FieldError("modulus given for a prime field")
        return PrimeField(int(size))
    if s.startswith("fp_t:"):
        return RationalFunctionField(int(s[5:]))
    if s.startswith("quad:"):
        body = s[5:]
        base_spec, _, params = body.rpartition(":")
        t_str, _, d_str = params.partition(",")
        if not d_str:
            raise FieldError(f"bad quad spec {spec!r}: need quad:<base>:<t>,<d>")
        base = make_field(base_spec)
        return QuadExtension(base, base.parse(t_str), base.parse(d_str))
    raise FieldError(f"unrecognized field spec {spec!r}")
