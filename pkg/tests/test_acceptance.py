"""Acceptance suite: one test per criterion, exact arithmetic, zero tolerance.

Each test prints a single PASS/FAIL line (run with `pytest -s` to see them
all).  Criteria 1 and 2 assert the stated target values verbatim; the four
orbit-count rows that contradict the brute-force oracle (see the decisions
ledger) make those two tests fail honestly.
"""

import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

from heisenkern import classify as cl
from heisenkern import exterior as ext
from heisenkern import linalg as la
from heisenkern import orbits as ob
from heisenkern.fields import ExtField, PrimeField, Rationals
from heisenkern.heisenberg import (make_algebra, membership_predicate,
                                   sigma_generators)
from heisenkern.linalg import Subspace
from heisenkern.quaternion import QuatAlgebra, SplitAlgebraError

F2 = PrimeField(2)
F3 = PrimeField(3)
F4 = ExtField(2, 2)
Q = Rationals()


def announce(num, ok, detail=""):
    line = f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'}{' - ' + detail if detail else ''}"
    print(line, file=sys.__stdout__, flush=True)


def gf2_labels():
    return [cl.OrbitLabel("point:onQ"), cl.OrbitLabel("point:offQ"),
            cl.OrbitLabel("line:E"), cl.OrbitLabel("line:T"),
            cl.OrbitLabel("line:S"), cl.OrbitLabel("plane:JF"),
            cl.OrbitLabel("plane:ET"), cl.OrbitLabel("plane:ES"),
            cl.OrbitLabel("plane:TS"),
            cl.OrbitLabel("line:P1", params=(("t", F2.one), ("d", F2.one))),
            cl.OrbitLabel("plane:P3", params=(("t", F2.one), ("d", F2.one)))]


def test_criterion_1_table_gf3():
    """verify-table over GF(3): every realizable row at its stated value."""
    stated = {"<s01>": 6, "<s01+s23>": 5, "E": 7, "T": 6, "T^perp": 5,
              "S": 5, "S^perp": 5, "J(F)": 4, "E+T": 6, "E+S": 8, "T+S": 6,
              "P_L^perp": 3, "P_L": 4, "P_L^0": 5, "<s01+s23>^perp": 3}
    t0 = time.time()
    rep = ob.verify_table(F3)
    dt = time.time() - t0
    bad = []
    for row in rep["rows"]:
        if row["omega"] != stated[row["kernel_label"]]:
            bad.append((row["kernel_label"], row["omega"],
                        stated[row["kernel_label"]]))
    ok = not bad and dt < 120
    announce(1, ok, f"GF(3) table rows ({dt:.1f}s)" +
             (f"; oracle disagrees on {bad}" if bad else ""))
    assert dt < 120
    assert not bad, (f"BFS oracle contradicts the stated values on {bad}; "
                     "see decisions ledger (paper table errata for E, T)")


def test_criterion_2_table_gf2():
    """verify-table over GF(2): stated char-2 values."""
    stated = {"<s01>": 6, "<s01+s23>": 7, "E": 7, "T": 6, "T^perp": 5,
              "S": 5, "S^perp": 5, "J(F)": 4, "E+T": 6, "E+S": 8, "T+S": 7,
              "P_L^perp": 3, "P_L": 4, "P_L^0": 5, "<s01+s23>^perp": 3}
    t0 = time.time()
    rep = ob.verify_table(F2)
    dt = time.time() - t0
    bad = []
    for row in rep["rows"]:
        if row["omega"] != stated[row["kernel_label"]]:
            bad.append((row["kernel_label"], row["omega"],
                        stated[row["kernel_label"]]))
    ok = not bad and dt < 60
    announce(2, ok, f"GF(2) table rows ({dt:.1f}s)" +
             (f"; oracle disagrees on {bad}" if bad else ""))
    assert dt < 60
    assert not bad, (f"BFS oracle contradicts the stated values on {bad}; "
                     "see decisions ledger (char-2 miscounts and E/T errata)")


def test_criterion_3_stabilizers_as_oracle():
    """GF(2): generated groups equal brute-force stabilizers exactly for the
    nine direct kernels plus P_L, P_L^0.  GF(3): membership predicates agree
    with direct stabilization on a full streaming scan of GL4(F3)."""
    t0 = time.time()
    for lab in gf2_labels():
        gens = sigma_generators(F2, lab).matrices
        generated = ob.generated_group(F2, gens)
        brute = set(ob.brute_stabilizer_f2(cl.representative(F2, lab)))
        assert generated == brute, lab.serialize(F2)
    gf2_dt = time.time() - t0

    t0 = time.time()
    kernels, predicates = {}, {}
    np_preds = ob.np_predicates_f3()
    for lab in gf2_labels():
        kind = lab.kind
        f3lab = (cl.OrbitLabel(kind) if not lab.params else
                 cl.OrbitLabel(kind, params=(("t", F3.zero), ("d", F3.one))))
        kernels[kind] = cl.representative(F3, f3lab)
        predicates[kind] = np_preds[kind]
    report = ob.gl4_f3_scan(kernels, predicates=predicates)
    gf3_dt = time.time() - t0
    mismatches = {k: r["mismatches"] for k, r in report.items() if r["mismatches"]}
    checked = {r["checked"] for r in report.values()}
    ok = (not mismatches and checked == {24261120} and gf3_dt < 900)
    announce(3, ok, f"GF(2) set equality ({gf2_dt:.0f}s) + GF(3) full scan of "
                    f"24261120 matrices ({gf3_dt:.0f}s)")
    assert checked == {24261120}
    assert not mismatches
    assert gf3_dt < 900


def test_criterion_4_automorphism_completeness():
    """Exhaustive bracket-preserving bijections of the 64-element algebras
    equal the assembled (sigma, tau) family (kernels S^perp and T^perp; the
    spec's 'T' is dimensionally inconsistent with 64 elements, see ledger)."""
    results = {}
    for name, kernel in (("S^perp", ext.perp(cl.rep_S(F2))),
                         ("T^perp", ext.perp(cl.rep_T(F2)))):
        alg = make_algebra(kernel)
        exhaustive = ob.exhaustive_bracket_automorphism_count(alg)
        sigma_order = len(ob.brute_stabilizer_f2(kernel))
        assembled = sigma_order * (2 ** alg.z_dim) ** 4
        results[name] = (exhaustive, assembled)
    ok = all(a == b for a, b in results.values())
    announce(4, ok, f"counts {results}")
    for name, (a, b) in results.items():
        assert a == b, name


def test_criterion_5_quaternion_suite():
    H = QuatAlgebra(Q, 1, 1)
    rng = random.Random(20260810)
    solved = 0
    while solved < 200:
        v = tuple(Fraction(rng.randint(-5, 5)) for _ in range(4))
        b = tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
        if H.norm(b) == 0:
            continue
        x = H.mul(H.mul(b, v), H.inv(b))
        a = H.conjugate_solver(v, x)
        assert a is not None
        assert H.mul(H.mul(a, v), H.inv(a)) == x
        solved += 1

    # the split counterexample is pinned: refusal plus bounded-box search
    Hs = QuatAlgebra(Q, -1, -1)
    assert Hs.is_split()
    with pytest.raises(SplitAlgebraError):
        Hs.conjugate_solver(Hs.one, Hs.coerce((1, 3, 4, 5)))
    x = Hs.coerce((1, 3, 4, 5))
    assert Hs.norm(x) == Hs.norm(Hs.one) and Hs.trace(x) == Hs.trace(Hs.one)
    box = [Fraction(n) for n in range(-4, 5)]
    for a in itertools.product(box, repeat=4):
        if Hs.norm(a) == 0:
            continue
        assert Hs.mul(Hs.mul(a, Hs.one), Hs.inv(a)) != x

    # inner automorphisms act with pure-part determinant 1
    checked = 0
    while checked < 100:
        a = tuple(Fraction(rng.randint(-6, 6)) for _ in range(4))
        if H.norm(a) == 0:
            continue
        assert H.so_check(H.inner_auto(a))
        checked += 1
    announce(5, True, "200 conjugacies, split counterexample, 100 inner autos")


def test_criterion_6_char2_binary_forms():
    """Brute-force congruence classes equal the (Arf, shared-value) criterion
    over GF(2) and GF(4), exhaustively."""
    from heisenkern.forms import BinaryQForm, binary_equivalent_char2
    from .test_forms import congruence_partition
    total = 0
    for F in (F2, F4):
        els = list(F.elements())
        nondiag = [BinaryQForm(F, a, b, d)
                   for a in els for b in els for d in els if b != F.zero]
        cls = congruence_partition(F, nondiag)
        for q in nondiag:
            for r in nondiag:
                crit = binary_equivalent_char2(q, r)
                brute = cls[(q.a, q.b, q.d)] == cls[(r.a, r.b, r.d)]
                assert crit == brute, (F.label, q, r)
                total += 1
    announce(6, True, f"{total} form pairs, zero mismatches")


def test_criterion_7_classification_invariance():
    """Exhaustive over GF(2) (labels = BFS orbits on every Grassmannian);
    100 random images per representative over GF(3) and GF(4)."""
    from .test_classify import all_subspaces_gf2, paper_representatives
    by_dim = all_subspaces_gf2()
    label_counts = {}
    label_of = {}
    for d, subs in by_dim.items():
        for U in subs:
            lab = cl.classify_subspace(U).serialize(F2)
            label_of[U.key()] = lab
            label_counts[(d, lab)] = label_counts.get((d, lab), 0) + 1
    # independent BFS orbit counts per dimension
    gens6 = [ext.induced_matrix(F2, g) for g in cl.gl4_generators(F2)]
    for d, subs in by_dim.items():
        remaining = {U.key(): U for U in subs}
        orbit_count = 0
        while remaining:
            _, start = remaining.popitem()
            orbit_count += 1
            lab = label_of[start.key()]
            frontier = [start]
            seen = {start.key()}
            while frontier:
                V = frontier.pop()
                for g6 in gens6:
                    W = Subspace(F2, 6, [la.mat_vec(F2, g6, b) for b in V.basis])
                    if W.key() in seen:
                        continue
                    seen.add(W.key())
                    assert label_of[W.key()] == lab  # constant on the orbit
                    remaining.pop(W.key(), None)
                    frontier.append(W)
        n_labels = len([1 for (dd, _l) in label_counts if dd == d])
        assert orbit_count == n_labels, (d, orbit_count, n_labels)

    rng = random.Random(117)
    for F in (F3, F4):
        for kind, U in paper_representatives(F):
            base = cl.classify_subspace(U)
            for _ in range(100):
                while True:
                    A = tuple(tuple(F.random_element(rng) for _ in range(4))
                              for _ in range(4))
                    if la.det(F, A) != F.zero:
                        break
                lab = cl.classify_subspace(ext.act_subspace(F, A, U))
                assert lab.kind == base.kind
    announce(7, True, "GF(2) exhaustive + 100 random images/rep over GF(3), GF(4)")


def test_criterion_8_pfaffian_identities():
    rng = random.Random(314159)
    for F in (F2, F3, F4, Q):
        for _ in range(1000):
            while True:
                A = tuple(tuple(F.random_element(rng) for _ in range(4))
                          for _ in range(4))
                if la.det(F, A) != F.zero:
                    break
            x = tuple(F.random_element(rng) for _ in range(6))
            assert ext.pfaffian(F, ext.act(F, A, x)) == \
                F.mul(la.det(F, A), ext.pfaffian(F, x))
    # lambda round trips
    for F in (F2, F3):
        cnt = 0
        while cnt < 100:
            v = tuple(F.random_element(rng) for _ in range(4))
            w = tuple(F.random_element(rng) for _ in range(4))
            t = ext.wedge(F, v, w)
            if all(c == F.zero for c in t):
                continue
            assert ext.quadric_to_line(F, t) == Subspace(F, 4, [v, w])
            cnt += 1
    # confluence iff polar vanishes: all line pairs over GF(2)
    pts = [v for v in itertools.product((0, 1), repeat=4) if any(v)]
    lines = set()
    for v in pts:
        for w in pts:
            S = Subspace(F2, 4, [v, w])
            if S.dim == 2:
                lines.add(S)
    lines = sorted(lines, key=lambda L: L.key())
    assert len(lines) == 35
    for L1 in lines:
        x1 = ext.line_to_quadric(F2, *L1.basis)
        for L2 in lines:
            x2 = ext.line_to_quadric(F2, *L2.basis)
            assert (L1.intersect(L2).dim >= 1) == ext.lines_confluent(F2, x1, x2)
    announce(8, True, "similitude law x4 fields, lambda round trips, confluence")
