"""Brute-force oracle over finite fields: orbit enumeration under generator
sets, full-group stabilizer scans (GL4(F2) directly, GL4(F3) as a vectorized
streaming pass), omega counts, and verification of the orbit-count table.
"""

from dataclasses import dataclass, field as dc_field
import itertools
import os

import numpy as np

from . import classify as cl
from . import exterior as ext
from . import linalg as la
from .fields import FieldError, PrimeField
from .heisenberg import sigma_generators, membership_predicate
from .linalg import Subspace

DEFAULT_BUDGET = int(os.environ.get("HEIS_BUDGET", 10 ** 7))


@dataclass
class OrbitReport:
    orbit_count: int
    orbit_reps: tuple
    orbit_sizes: tuple
    space_size: int

    def check_partition(self):
        assert sum(self.orbit_sizes) == self.space_size


# ---------------------------------------------------------------------------
# BFS orbit enumeration with generators
# ---------------------------------------------------------------------------

def orbit_of(F, mats, start):
    seen = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for M in mats:
            y = la.mat_vec(F, M, x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def enumerate_orbits(F, mats, dim, budget=None):
    """Orbit partition of F^dim under the group generated by mats."""
    if not F.is_finite:
        raise FieldError("orbit enumeration requires a finite field")
    budget = budget or DEFAULT_BUDGET
    if F.order ** dim > budget:
        raise FieldError("space exceeds the enumeration budget")
    remaining = set(itertools.product(F.elements(), repeat=dim))
    reps, sizes = [], []
    while remaining:
        start = min(remaining)
        orb = orbit_of(F, mats, start)
        assert orb <= remaining, "orbits must partition the space"
        remaining -= orb
        reps.append(min(orb))
        sizes.append(len(orb))
    report = OrbitReport(len(reps), tuple(reps), tuple(sizes), F.order ** dim)
    report.check_partition()
    return report


def quotient_action_matrix(F, kernel, M4):
    """Induced matrix on Lambda^2/kernel in coset coordinates."""
    M6 = ext.induced_matrix(F, M4)
    cols = []
    for j in kernel.free_columns():
        e = [F.zero] * 6
        e[j] = F.one
        cols.append(kernel.coset_coords(la.mat_vec(F, M6, tuple(e))))
    return tuple(zip(*cols))


def omega_counts(F, kernel, generators=None, budget=None):
    """(omega_V, omega_Z, omega) for a reduced kernel over a finite field.

    omega_V: orbits of Sigma_beta on V minus the zero orbit; omega_Z likewise
    on Z = Lambda^2/kernel; omega = omega_V + omega_Z + 1.
    """
    from .heisenberg import HeisenbergAlgebra
    alg = HeisenbergAlgebra(kernel)
    if not alg.is_reduced:
        raise ValueError("omega counts are defined for reduced kernels")
    label = cl.classify_subspace(kernel)
    if generators is None:
        rep = cl.representative(F, label.base())
        if kernel == rep or (label.kind == "perp" and kernel == cl.representative(F, label)):
            gens = sigma_generators(F, label).matrices
            if label.kind == "perp" and kernel != rep:
                pass  # stabilizer of U and U^perp coincide
        else:
            B = cl.find_witness(kernel, label if label.kind != "perp" else label.inner,
                                budget=budget or DEFAULT_BUDGET)
            if B is None:
                # kernel is the perp of a witnessed representative
                B = cl.find_witness(ext.perp(kernel), label.base(), budget=budget or DEFAULT_BUDGET)
            base_gens = sigma_generators(F, label).matrices
            Binv = la.inv(F, B)
            gens = tuple(la.mat_mul(F, la.mat_mul(F, B, g), Binv) for g in base_gens)
        generators = gens
    for g in generators:
        if ext.act_subspace(F, g, kernel) != kernel:
            raise AssertionError("generator does not stabilize the kernel")
    repV = enumerate_orbits(F, generators, 4, budget)
    qmats = [quotient_action_matrix(F, kernel, g) for g in generators]
    repZ = enumerate_orbits(F, qmats, 6 - kernel.dim, budget)
    omega_v = repV.orbit_count - 1
    omega_z = repZ.orbit_count - 1
    return omega_v, omega_z, omega_v + omega_z + 1


# ---------------------------------------------------------------------------
# full-group stabilizer scans
# ---------------------------------------------------------------------------

_GL4_F2_CACHE = None


def gl4_f2():
    """All 20160 invertible 4x4 matrices over GF(2) (cached)."""
    global _GL4_F2_CACHE
    if _GL4_F2_CACHE is None:
        F = PrimeField(2)
        out = []
        for bits in itertools.product((0, 1), repeat=16):
            A = (bits[0:4], bits[4:8], bits[8:12], bits[12:16])
            if la.det(F, A) != 0:
                out.append(A)
        _GL4_F2_CACHE = tuple(out)
    return _GL4_F2_CACHE


def brute_stabilizer_f2(U):
    """The full stabilizer of a subspace over GF(2), as a tuple of matrices."""
    F = U.field
    assert F.order == 2
    out = []
    for A in gl4_f2():
        M6 = ext.induced_matrix(F, A)
        if all(U.contains(la.mat_vec(F, M6, b)) for b in U.basis):
            out.append(A)
    return tuple(out)


def brute_stabilizer_order(U):
    F = U.field
    if F.order == 2:
        return len(brute_stabilizer_f2(U))
    if F.order == 3:
        report = gl4_f3_scan({"U": U})
        return report["U"]["stabilizer_order"]
    raise FieldError("full stabilizer scans support GF(2) and GF(3)")


def generated_group(F, gens, cap=10 ** 7):
    """Closure of a generator set (matrices) under multiplication."""
    gens = [la.mat(F, g) for g in gens]
    seen = set(gens) | {la.identity(F, 4)}
    frontier = list(seen)
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = la.mat_mul(F, g, x)
            if y not in seen:
                if len(seen) >= cap:
                    raise FieldError("generated group exceeds the cap")
                seen.add(y)
                frontier.append(y)
    return seen


# ---------------------------------------------------------------------------
# vectorized GL4(F3) streaming scan
# ---------------------------------------------------------------------------

_PAIRS = ext.PAIRS


def _digits3(codes):
    out = np.empty(codes.shape + (16,), dtype=np.int64)
    c = codes.copy()
    for i in range(16):
        out[..., i] = c % 3
        c //= 3
    return out


def _det4_batch(A):
    def det3(M, cols):
        c = cols
        return (M[:, 1, c[0]] * (M[:, 2, c[1]] * M[:, 3, c[2]] - M[:, 2, c[2]] * M[:, 3, c[1]])
                - M[:, 1, c[1]] * (M[:, 2, c[0]] * M[:, 3, c[2]] - M[:, 2, c[2]] * M[:, 3, c[0]])
                + M[:, 1, c[2]] * (M[:, 2, c[0]] * M[:, 3, c[1]] - M[:, 2, c[1]] * M[:, 3, c[0]]))
    d = np.zeros(A.shape[0], dtype=np.int64)
    for j in range(4):
        cols = [k for k in range(4) if k != j]
        term = A[:, 0, j] * det3(A, cols)
        d += term if j % 2 == 0 else -term
    return d % 3


def _induced6_batch(A):
    n = A.shape[0]
    M = np.empty((n, 6, 6), dtype=np.int64)
    for a, (i, j) in enumerate(_PAIRS):
        for b, (k, l) in enumerate(_PAIRS):
            M[:, a, b] = (A[:, i, k] * A[:, j, l] - A[:, i, l] * A[:, j, k]) % 3
    return M


def _stab_mask(M6, U):
    mask = np.ones(M6.shape[0], dtype=bool)
    pivs = [(np.array([int(x) for x in r], dtype=np.int64), j)
            for r, j in zip(U.basis, U.pivots)]
    for b in U.basis:
        img = (M6 @ np.array([int(x) for x in b], dtype=np.int64)) % 3
        for row, pj in pivs:
            coef = img[:, pj].copy()
            img = (img - coef[:, None] * row[None, :]) % 3
        mask &= ~img.any(axis=1)
    return mask


def gl4_f3_scan(kernels, predicates=None, chunk=3 ** 11, progress=None):
    """One streaming pass over all of GL4(F3).

    kernels: name -> Subspace over GF(3).  predicates (optional):
    name -> vectorized predicate(A, M6) -> bool array.  Returns per-name
    counts and predicate/stabilization mismatch counts.
    """
    report = {name: {"checked": 0, "stabilizer_order": 0, "predicate_count": 0,
                     "mismatches": 0, "first_mismatch": None}
              for name in kernels}
    n_all = 3 ** 16
    for start in range(0, n_all, chunk):
        codes = np.arange(start, min(start + chunk, n_all), dtype=np.int64)
        A = _digits3(codes).reshape(-1, 4, 4)
        keep = _det4_batch(A) != 0
        A = A[keep]
        codes = codes[keep]
        M6 = _induced6_batch(A)
        for name, U in kernels.items():
            stab = _stab_mask(M6, U)
            rec = report[name]
            rec["checked"] += A.shape[0]
            rec["stabilizer_order"] += int(stab.sum())
            if predicates and name in predicates:
                pred = predicates[name](A, M6)
                rec["predicate_count"] += int(pred.sum())
                bad = stab != pred
                if bad.any():
                    rec["mismatches"] += int(bad.sum())
                    if rec["first_mismatch"] is None:
                        rec["first_mismatch"] = int(codes[np.nonzero(bad)[0][0]])
        if progress:
            progress(min(start + chunk, n_all), n_all)
    return report


# vectorized predicates over GF(3), mirroring membership_predicate ---------

def _np_blocks(A):
    return A[:, 0:2, 0:2], A[:, 0:2, 2:4], A[:, 2:4, 0:2], A[:, 2:4, 2:4]


def _np_zero(X):
    return ~(X % 3).any(axis=(1, 2))


def _np_scalar_nonzero(X):
    X = X % 3
    return (X[:, 0, 1] == 0) & (X[:, 1, 0] == 0) & (X[:, 0, 0] == X[:, 1, 1]) & (X[:, 0, 0] != 0)


def _np_adj2(X):
    out = np.empty_like(X)
    out[:, 0, 0] = X[:, 1, 1]
    out[:, 1, 1] = X[:, 0, 0]
    out[:, 0, 1] = -X[:, 0, 1]
    out[:, 1, 0] = -X[:, 1, 0]
    return out % 3


def np_predicates_f3():
    """Vectorized twins of membership_predicate for the GF(3) table kernels."""
    sg = np.diag([1, -1]).astype(np.int64) % 3
    perm = np.zeros((4, 4), dtype=np.int64)
    for i, im in enumerate((0, 2, 1, 3)):
        perm[im, i] = 1
    perm_inv = perm.T  # permutation matrices are orthogonal
    M1 = np.array([[1, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
                  dtype=np.int64) % 3
    M1_inv = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]],
                      dtype=np.int64) % 3
    xi = np.diag([1, -1, 1, -1]).astype(np.int64) % 3  # Xi for t=0: diag(xi, xi)
    xi_inv = xi

    def p_s01(A, M6):
        return _np_zero(A[:, 2:4, 0:2])

    def p_offq(A, M6):
        B = (perm_inv @ A @ perm) % 3
        Ab, Bb, Cb, Db = _np_blocks(B)
        c1 = _np_zero((Ab @ Bb.transpose(0, 2, 1) - Bb @ Ab.transpose(0, 2, 1)) % 3)
        c2 = _np_zero((Cb @ Db.transpose(0, 2, 1) - Db @ Cb.transpose(0, 2, 1)) % 3)
        S = (Ab @ Db.transpose(0, 2, 1) - Bb @ Cb.transpose(0, 2, 1)) % 3
        return c1 & c2 & _np_scalar_nonzero(S)

    def p_e(A, M6):
        return ((A[:, 1, 0] % 3 == 0) & (A[:, 2, 0] % 3 == 0) & (A[:, 3, 0] % 3 == 0)
                & (A[:, 3, 1] % 3 == 0) & (A[:, 3, 2] % 3 == 0))

    def p_t(A, M6):
        Ab, Bb, Cb, Db = _np_blocks(A)
        X = (Db @ sg @ _np_adj2(Ab) @ sg) % 3
        return _np_zero(Cb) & _np_scalar_nonzero(X)

    def p_s(A, M6):
        Ab, Bb, Cb, Db = _np_blocks(A)
        return (_np_zero(Bb) & _np_zero(Cb)) | (_np_zero(Ab) & _np_zero(Db))

    def p_jf(A, M6):
        return (A[:, 0, 1] % 3 == 0) & (A[:, 0, 2] % 3 == 0) & (A[:, 0, 3] % 3 == 0)

    def p_et(A, M6):
        detD = (A[:, 1, 1] * A[:, 2, 2] - A[:, 1, 2] * A[:, 2, 1]) % 3
        return p_e(A, M6) & ((A[:, 0, 0] * A[:, 3, 3]) % 3 == detD)

    def p_es(A, M6):
        allowed1 = {(0, 0), (0, 1), (0, 3), (1, 1), (2, 1), (2, 2), (2, 3), (3, 3)}
        allowed2 = {(0, 1), (0, 2), (0, 3), (1, 3), (2, 0), (2, 1), (2, 3), (3, 1)}
        ok1 = np.ones(A.shape[0], dtype=bool)
        ok2 = np.ones(A.shape[0], dtype=bool)
        for i in range(4):
            for j in range(4):
                col = A[:, i, j] % 3 == 0
                if (i, j) not in allowed1:
                    ok1 &= col
                if (i, j) not in allowed2:
                    ok2 &= col
        return ok1 | ok2

    def p_ts(A, M6):
        B = (M1 @ A @ M1_inv) % 3
        T = np.empty((A.shape[0], 4, 4), dtype=np.int64)
        for br in range(2):
            for bc in range(2):
                for i in range(2):
                    for j in range(2):
                        T[:, 2 * br + bc, 2 * i + j] = B[:, 2 * br + i, 2 * bc + j]
        ok = np.ones(A.shape[0], dtype=bool)
        for r in range(4):
            for s in range(r + 1, 4):
                for c in range(4):
                    for d in range(c + 1, 4):
                        ok &= ((T[:, r, c] * T[:, s, d] - T[:, r, d] * T[:, s, c]) % 3 == 0)
        return ok

    def _in_L(X):  # t=0, d=1: X11 == X00, X01 == -X10
        return ((X[:, 1, 1] % 3 == X[:, 0, 0] % 3)
                & (X[:, 0, 1] % 3 == (-X[:, 1, 0]) % 3))

    def p_pl(A, M6):
        def all_blocks(B):
            Ab, Bb, Cb, Db = _np_blocks(B)
            return _in_L(Ab) & _in_L(Bb) & _in_L(Cb) & _in_L(Db)
        return all_blocks(A) | all_blocks((A @ xi_inv) % 3)

    def p_pl0(A, M6):
        def shape(B):
            Ab, Bb, Cb, Db = _np_blocks(B)
            return _np_zero(Cb) & _in_L(Ab) & _in_L(Db)
        return shape(A) | shape((A @ xi_inv) % 3)

    return {"point:onQ": p_s01, "point:offQ": p_offq, "line:E": p_e,
            "line:T": p_t, "line:S": p_s, "plane:JF": p_jf, "plane:ET": p_et,
            "plane:ES": p_es, "plane:TS": p_ts, "line:P1": p_pl,
            "plane:P3": p_pl0}


# ---------------------------------------------------------------------------
# the omega table
# ---------------------------------------------------------------------------

def table_rows(F):
    """(row name, kernel subspace, expected omega from the printed formulas)
    for every representative realizable over the finite field F."""
    from .forms import hermitian_class_count
    from .fields import QuadExtension
    prof = F.profile()
    n_star = len(prof.square_class_reps)
    td = cl.default_irreducible_params(F)
    t, d = td
    L = QuadExtension(F, t, d)
    hf = hermitian_class_count(L)
    # R_N: cosets of K^x mod N(L^x)<-1>: norms are onto over finite fields
    r_n = 1
    if F.char == 2:
        n_wp = len(prof.wp_coset_reps)
        n_plus = len(prof.rplus_reps)
        off_q = 4 + n_plus + n_wp
        ts = 4 + n_star + n_wp
    else:
        off_q = 3 + n_star
        ts = 4 + n_star
    rows = [
        ("<s01>", cl.rep_point_onQ(F), 6),
        ("<s01+s23>^perp", ext.perp(cl.rep_point_offQ(F)), 3),
        ("<s01+s23>", cl.rep_point_offQ(F), off_q),
        ("E", cl.rep_E(F), 7),
        ("T", cl.rep_T(F), 6),
        ("T^perp", ext.perp(cl.rep_T(F)), 5),
        ("S", cl.rep_S(F), 5),
        ("S^perp", ext.perp(cl.rep_S(F)), 5),
        ("J(F)", cl.rep_JF(F), 4),
        ("E+T", cl.rep_ET(F), 6),
        ("E+S", cl.rep_ES(F), 8),
        ("T+S", cl.rep_TS(F), ts),
        ("P_L^perp", ext.perp(cl.rep_PL(F, t, d)), 3),
        ("P_L", cl.rep_PL(F, t, d), 2 + hf),
        ("P_L^0", cl.rep_PL0(F, t, d), 4 + r_n),
    ]
    return rows


def verify_table(F, budget=None):
    """Compute omega by BFS for every realizable kernel and compare with the
    paper's table formulas.  Returns a report with one entry per row."""
    if not F.is_finite or F.order not in (2, 3, 4):
        raise FieldError("table verification supports GF(2), GF(3), GF(4)")
    rows = []
    for name, kernel, expected in table_rows(F):
        ov, oz, om = omega_counts(F, kernel, budget=budget)
        rows.append({"kernel_label": name, "omega_v": ov, "omega_z": oz,
                     "omega": om, "expected": expected, "pass": om == expected})
    return {"field": F.spec, "rows": rows,
            "failures": [r["kernel_label"] for r in rows if not r["pass"]]}


# ---------------------------------------------------------------------------
# exhaustive bracket-automorphism scan over GF(2) (vectorized)
# ---------------------------------------------------------------------------

def exhaustive_bracket_automorphism_count(algebra):
    """Count ALL linear bijections of a 6-dimensional GF(2) algebra V x Z
    (dim Z = 2) preserving the bracket: level-wise exhaustive search over the
    images of the 6 standard basis elements with incremental constraints.
    Independent of the (sigma, tau) description."""
    F = algebra.field
    assert F.order == 2 and algebra.z_dim == 2 and not algebra.abelian_dim
    # element codes 0..63: low 4 bits = V part, bits 4..5 = Z part
    beta_tab = np.zeros((16, 16), dtype=np.uint64)
    for a in range(16):
        va = tuple((a >> k) & 1 for k in range(4))
        for b in range(16):
            vb = tuple((b >> k) & 1 for k in range(4))
            z = algebra.beta(va, vb)
            beta_tab[a, b] = z[0] | (z[1] << 1)

    # basis order: e0, e1 = Z basis; e2..e5 = V basis b0..b3
    base_v = {2: (1, 0, 0, 0), 3: (0, 1, 0, 0), 4: (0, 0, 1, 0), 5: (0, 0, 0, 1)}

    def target_z(i, j):
        """z-code of [e_i, e_j] (zero when either index is a Z index)."""
        if i < 2 or j < 2:
            return 0
        z = algebra.beta(base_v[i], base_v[j])
        return z[0] | (z[1] << 1)

    def xor_shift(spans, c):
        """Bitmask of {m ^ c : m in span} for a fixed code c (bit permute)."""
        out = spans.copy()
        for k in range(6):
            if (c >> k) & 1:
                bit = np.uint64(1 << k)
                width = np.uint64(1 << k)
                maskA = np.uint64(0)
                for pos in range(64):
                    if not (pos >> k) & 1:
                        maskA |= np.uint64(1) << np.uint64(pos)
                maskB = ~maskA
                out = ((out & maskA) << width) | ((out & maskB) >> width)
        return out

    codes = np.zeros((1, 0), dtype=np.uint64)
    spans = np.array([1], dtype=np.uint64)  # span of {} contains only 0
    for level in range(6):
        n = codes.shape[0]
        cand = np.arange(64, dtype=np.uint64)
        new_codes = np.concatenate(
            [np.repeat(codes, 64, axis=0), np.tile(cand, n)[:, None]], axis=1)
        new_spans = np.repeat(spans, 64, axis=0)
        this = new_codes[:, level]
        keep = ((new_spans >> this) & np.uint64(1)) == 0  # independence
        for i in range(level):
            br = beta_tab[(new_codes[:, i] & np.uint64(15)).astype(np.int64),
                          (this & np.uint64(15)).astype(np.int64)]
            zt = target_z(i, level)
            fz = np.zeros(len(this), dtype=np.uint64)
            if zt & 1:
                fz ^= new_codes[:, 0]
            if zt & 2:
                fz ^= new_codes[:, 1]
            keep &= (br << np.uint64(4)) == fz
        new_codes = new_codes[keep]
        new_spans = new_spans[keep]
        if new_codes.shape[0] == 0:
            return 0
        # span update grouped by candidate value
        this = new_codes[:, level]
        upd = new_spans.copy()
        for c in range(64):
            sel = this == c
            if sel.any():
                shifted = xor_shift(new_spans[sel], c)
                upd[sel] = new_spans[sel] | shifted
        codes, spans = new_codes, upd
    return codes.shape[0]
