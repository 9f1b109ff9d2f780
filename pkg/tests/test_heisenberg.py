import itertools
import random
from fractions import Fraction

import pytest

from heisenkern import classify as cl
from heisenkern import exterior as ext
from heisenkern import linalg as la
from heisenkern.exterior import tensor_from_terms as tt
from heisenkern.fields import ExtField, PrimeField, Rationals
from heisenkern.heisenberg import (GeneratorSet, HeisenbergAlgebra, NotInSigmaError,
                                   NotReducedError, aut_order, induced_sigma_prime,
                                   make_algebra, make_automorphism,
                                   membership_predicate, isomorphic,
                                   sigma_generators)
from heisenkern.linalg import Subspace

F2 = PrimeField(2)
F3 = PrimeField(3)
Q = Rationals()


def rand_gl4(F, rng):
    while True:
        A = tuple(tuple(F.random_element(rng) for _ in range(4)) for _ in range(4))
        if la.det(F, A) != F.zero:
            return A


# --- the algebra -------------------------------------------------------------

def test_bracket_shape_and_jacobi():
    alg = make_algebra(cl.rep_T(F3))
    rng = random.Random(5)
    zeroz = (F3.zero,) * alg.z_dim
    els = [((tuple(F3.random_element(rng) for _ in range(4))),
            tuple(F3.random_element(rng) for _ in range(alg.z_dim)))
           for _ in range(12)]
    for x in els:
        assert alg.bracket(x, x) == alg.zero_element()
        for y in els:
            xy = alg.bracket(x, y)
            yx = alg.bracket(y, x)
            assert xy[1] == tuple(F3.neg(c) for c in yx[1])
            for z in els:
                # class 2: all double brackets vanish
                assert alg.bracket(alg.bracket(x, y), z) == alg.zero_element()


def test_reduced_flags():
    assert not make_algebra(cl.rep_F(F3)).is_reduced
    assert not make_algebra(ext.perp(cl.rep_E(F3))).is_reduced
    assert not make_algebra(ext.perp(cl.rep_point_onQ(F3))).is_reduced
    assert make_algebra(ext.perp(cl.rep_S(F3))).is_reduced
    assert make_algebra(cl.rep_T(F3)).is_reduced
    zero_kernel = Subspace(F3, 6, [])
    alg = make_algebra(zero_kernel)
    assert alg.is_reduced and alg.z_dim == 6
    e = la.identity(F3, 4)
    assert alg.beta(e[0], e[1]) == tt(F3, ("s01", 1))


def test_center_and_commutator():
    for kernel, reduced in [(cl.rep_T(F3), True), (cl.rep_F(F3), False),
                            (ext.perp(cl.rep_S(F3)), True)]:
        alg = make_algebra(kernel)
        c = alg.center()
        assert alg.commutator_dim() == alg.z_dim  # beta_hat is onto
        assert (c["center_dim"] == alg.z_dim) == reduced


def test_s_perp_is_squared_heisenberg():
    """Kernel S^perp gives h(K^2,K,det) x h(K^2,K,det): the bracket splits on
    the two obvious 2+1-dimensional subalgebras."""
    alg = make_algebra(ext.perp(cl.rep_S(F3)))
    assert alg.is_reduced and alg.z_dim == 2
    e = la.identity(F3, 4)
    z01 = alg.beta(e[0], e[1])
    z23 = alg.beta(e[2], e[3])
    R, _ = la.rref(F3, (z01, z23))
    assert len(R) == 2                      # the two determinant factors
    assert alg.beta(e[0], e[2]) == (F3.zero,) * 2
    assert alg.beta(e[1], e[3]) == (F3.zero,) * 2


# --- induced sigma' and automorphisms ---------------------------------------

def test_induced_sigma_prime():
    alg = make_algebra(cl.rep_point_onQ(F3))
    assert induced_sigma_prime(la.identity(F3, 4), alg) == la.identity(F3, 5)
    sig = la.mat(F3, [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    sp = induced_sigma_prime(sig, alg)
    e = la.identity(F3, 4)
    for i in range(4):
        for j in range(4):
            lhs = la.mat_vec(F3, sp, alg.beta(e[i], e[j]))
            rhs = alg.beta(la.mat_vec(F3, sig, e[i]), la.mat_vec(F3, sig, e[j]))
            assert lhs == rhs
    swap = la.mat(F3, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    with pytest.raises(NotInSigmaError):
        induced_sigma_prime(swap, alg)      # s01 -> s02 leaves the kernel


def test_automorphism_group_laws():
    alg = make_algebra(cl.rep_T(F3))
    rng = random.Random(33)
    gens = sigma_generators(F3, cl.OrbitLabel("line:T")).matrices

    def rand_aut():
        sig = gens[rng.randrange(len(gens))]
        tau = tuple(tuple(F3.random_element(rng) for _ in range(4))
                    for _ in range(alg.z_dim))
        return make_automorphism(alg, sig, tau)
    for _ in range(50):
        f, g, h = rand_aut(), rand_aut(), rand_aut()
        assert f.compose(g).compose(h).sigma == f.compose(g.compose(h)).sigma
        assert f.compose(g).compose(h).tau == f.compose(g.compose(h)).tau
        inv = f.invert()
        ident = f.compose(inv)
        assert ident.sigma == la.identity(F3, 4)
        assert all(x == F3.zero for row in ident.tau for x in row)


def test_tau_only_automorphism():
    alg = make_algebra(cl.rep_S(F3))
    tau = tuple(tuple(F3.one if j == 0 else F3.zero for j in range(4))
                for _ in range(alg.z_dim))
    f = make_automorphism(alg, la.identity(F3, 4), tau)
    v = (F3.one, F3.zero, F3.zero, F3.zero)
    z = (F3.zero,) * alg.z_dim
    out = f((v, z))
    assert out[0] == v and out[1] != z


def test_automorphism_rejects_non_member():
    alg = make_algebra(cl.rep_point_onQ(F3))
    swap = la.mat(F3, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
    with pytest.raises(NotInSigmaError):
        make_automorphism(alg, swap)


def test_refuses_non_reduced():
    alg = make_algebra(cl.rep_F(F3))
    with pytest.raises(NotReducedError):
        make_automorphism(alg, la.identity(F3, 4))


def test_abelian_factor():
    alg = make_algebra(cl.rep_S(F3), abelian_dim=1)
    f = make_automorphism(alg, la.identity(F3, 4),
                          zeta=((1,), (0,)), xi=((1, 0, 0, 0),), alpha=((2,),))
    v = (F3.one, F3.zero, F3.zero, F3.zero)
    z = (F3.zero, F3.zero)
    a = (F3.one,)
    nv, nz, na = f((v, z, a))
    assert nv == v and nz == (F3.one, F3.zero) and na == (F3.zero,)


def test_aut_order_formula_gf2():
    alg = make_algebra(ext.perp(cl.rep_S(F2)))
    assert aut_order(alg) == 72 * 2 ** 8


# --- generator sets and membership predicates --------------------------------

def all_labels(F):
    td = cl.default_irreducible_params(F)
    labs = [cl.OrbitLabel("point:onQ"), cl.OrbitLabel("point:offQ"),
            cl.OrbitLabel("line:E"), cl.OrbitLabel("line:T"), cl.OrbitLabel("line:S"),
            cl.OrbitLabel("plane:JF"), cl.OrbitLabel("plane:ET"),
            cl.OrbitLabel("plane:ES"), cl.OrbitLabel("plane:TS")]
    if td:
        labs.append(cl.OrbitLabel("line:P1", params=(("t", td[0]), ("d", td[1]))))
        labs.append(cl.OrbitLabel("plane:P3", params=(("t", td[0]), ("d", td[1]))))
    return labs


@pytest.mark.parametrize("F", [F2, F3], ids=lambda F: F.label)
def test_generators_stabilize(F):
    for lab in all_labels(F):
        gs = sigma_generators(F, lab)
        rep = cl.representative(F, lab)
        for g in gs.matrices:
            assert ext.act_subspace(F, g, rep) == rep


def test_ts_factors_centralize():
    """The two GL2 factors of the T+S stabilizer commute elementwise."""
    for F in (F2, F3, Q):
        gs = sigma_generators(F, cl.OrbitLabel("plane:TS"))
        mats = gs.matrices
        phis = mats[0::2]
        deltas = mats[1::2]
        for a in phis:
            for b in deltas:
                assert la.mat_mul(F, a, b) == la.mat_mul(F, b, a)


def test_p2_generators_over_q():
    lab = cl.OrbitLabel("plane:P2", params=(("c", Q.one), ("d", Q.one), ("t", Q.zero)))
    gs = sigma_generators(Q, lab)
    W = cl.representative(Q, lab)
    assert len(gs.matrices) >= 8
    for g in gs.matrices:
        assert ext.act_subspace(Q, g, W) == W
    # membership: products of generators pass, a non-stabilizing matrix fails
    m = la.mat_mul(Q, gs.matrices[0], gs.matrices[3])
    assert membership_predicate(Q, lab, m)
    bad = la.mat(Q, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    assert membership_predicate(Q, lab, bad) == \
        (ext.act_subspace(Q, bad, W) == W)


def test_membership_examples():
    for F in (F2, F3):
        for lab in all_labels(F):
            assert membership_predicate(F, lab, la.identity(F, 4))
    J = la.mat(F3, [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])
    assert membership_predicate(F3, cl.OrbitLabel("point:offQ"), J)
    # stabT shape with C not in K^x sigma A sigma
    M = la.mat(F3, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [0, 0, 0, 1]])
    assert not membership_predicate(F3, cl.OrbitLabel("line:T"), M)


def test_membership_random_agreement_gf3():
    """Predicate == direct stabilization on random GL4(F3) samples (the full
    streaming scan is acceptance criterion 3)."""
    rng = random.Random(777)
    labs = all_labels(F3)
    reps = {lab.kind: cl.representative(F3, lab) for lab in labs}
    for _ in range(300):
        A = rand_gl4(F3, rng)
        for lab in labs:
            rep = reps[lab.kind]
            stab = ext.act_subspace(F3, A, rep) == rep
            assert membership_predicate(F3, lab, A) == stab


def test_membership_predicate_vs_orbit_sampling_offq():
    """Sampled membership both ways for the point-off-quadric stabilizer:
    random generator words all satisfy the predicate, and random GL4 samples
    satisfy it exactly when they stabilize."""
    gs = sigma_generators(F3, cl.OrbitLabel("point:offQ"))
    rng = random.Random(8)
    rep = cl.representative(F3, cl.OrbitLabel("point:offQ"))
    for _ in range(500):
        word = la.identity(F3, 4)
        for _ in range(rng.randrange(1, 6)):
            word = la.mat_mul(F3, word, gs.matrices[rng.randrange(len(gs.matrices))])
        assert membership_predicate(F3, cl.OrbitLabel("point:offQ"), word)
        assert ext.act_subspace(F3, word, rep) == rep


# --- orbit representative spot checks from the propositions ------------------

def test_proposition_orbit_reps_on_v():
    """The listed K^4-orbit representatives are pairwise inequivalent and
    jointly exhaustive under the generated stabilizer (GF(2), GF(3))."""
    from heisenkern.orbits import enumerate_orbits
    cases = {
        "point:onQ": [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 1, 0)],
        "line:E": [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)],
        "line:T": [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1)],
        "line:S": [(0, 0, 0, 0), (1, 0, 0, 0), (1, 0, 1, 0)],
        "plane:JF": [(0, 0, 0, 0), (0, 1, 0, 0), (1, 0, 0, 0)],
        "plane:ET": [(0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 0, 1)],
        "plane:ES": [(0, 0, 0, 0), (1, 0, 0, 0), (1, 0, 1, 0), (1, 0, 1, 1),
                     (0, 1, 0, 1)],
        "plane:TS": [(0, 0, 0, 0), (1, 0, 0, 0), (1, 0, 0, 1)],
    }
    for F in (F2, F3):
        for kind, reps in cases.items():
            gens = sigma_generators(F, cl.OrbitLabel(kind)).matrices
            rep_report = enumerate_orbits(F, gens, 4)
            assert rep_report.orbit_count == len(reps), kind
            canon = {min(_orbit(F, gens, tuple(F.coerce(c) for c in r)))
                     for r in reps}
            assert len(canon) == len(reps), kind
            assert canon == set(rep_report.orbit_reps), kind


def _orbit(F, gens, start):
    from heisenkern.orbits import orbit_of
    return orbit_of(F, gens, start)


# --- isomorphism --------------------------------------------------------------

def test_isomorphic():
    rng = random.Random(55)
    A = rand_gl4(F3, rng)
    U = ext.act_subspace(F3, A, cl.rep_T(F3))
    assert isomorphic(make_algebra(cl.rep_T(F3)), make_algebra(U))
    assert not isomorphic(make_algebra(cl.rep_T(F3)), make_algebra(cl.rep_S(F3)))
    PL = cl.rep_PL(F3, 0, 1)
    assert not isomorphic(make_algebra(PL), make_algebra(ext.perp(PL)))
    with pytest.raises(NotReducedError):
        isomorphic(make_algebra(cl.rep_F(F3)), make_algebra(cl.rep_T(F3)))
