import random

import pytest

import dsx
from dsx import exact
from dsx.homology import HomologyGroup


# ---------------------------------------------------------------------------
# chain complexes
# ---------------------------------------------------------------------------

def test_chain_complex_boundary_squares_to_zero(corpus):
    for K in corpus.values():
        C = dsx.chain_complex(K)
        assert C.verify() == []


def test_chain_complex_of_boundary_two():
    C = dsx.chain_complex(dsx.standard("boundary", 2))
    assert [C.rank(k) for k in (0, 1)] == [3, 3]
    groups = dsx.homology(C)
    assert str(groups[0]) == "Z" and str(groups[1]) == "Z"


def test_reduced_complex_of_circle():
    C = dsx.chain_complex(dsx.circle(), reduced=True)
    assert C.rank(1) == 1 and C.rank(0) == 0
    assert str(dsx.homology(C)[1]) == "Z"


def test_based_unreduced_adds_base_component():
    C = dsx.chain_complex(dsx.circle(), reduced=False)
    groups = dsx.homology(C)
    assert str(groups[0]) == "Z" and str(groups[1]) == "Z"


def test_augmented_complex_of_point():
    C = dsx.chain_complex(dsx.standard("simplex", 0), reduced=True)
    groups = dsx.homology(C)
    assert all(g.is_trivial() for g in groups.values())


def test_moore_reduced_homology(moore3):
    groups = dsx.homology_of(moore3.M, reduced=True)
    assert str(groups[2]) == "Z/3"
    assert all(g.is_trivial() for k, g in groups.items() if k != 2)
    C = dsx.chain_complex(moore3.M, reduced=True)
    assert C.euler_characteristic() == 0


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def test_smith_hand_examples():
    S = dsx.smith([[2, 0], [0, 3]])
    assert S.diagonal() == [1, 6]
    assert S.verify([[2, 0], [0, 3]])
    Z = dsx.smith([[0, 0], [0, 0]])
    assert Z.diagonal() == [0, 0]
    assert Z.verify([[0, 0], [0, 0]])
    P = dsx.smith([[7]])
    assert P.diagonal() == [7]
    assert P.verify([[7]])


def test_smith_rectangular_and_empty():
    A = [[1, 2, 3], [4, 5, 6]]
    S = dsx.smith(A)
    assert S.verify(A)
    assert S.diagonal() == [1, 3]
    E = dsx.smith([])
    assert E.verify([])


def test_smith_random_with_inverse_witnesses():
    rng = random.Random(7)
    for _ in range(40):
        m, n = rng.randint(1, 12), rng.randint(1, 12)
        A = [[rng.randint(-9, 9) if rng.random() < 0.5 else 0
              for _ in range(n)] for _ in range(m)]
        S = exact.smith(A)
        assert S.verify(A)


def test_sparse_factors_agree_with_dense():
    rng = random.Random(11)
    for _ in range(30):
        m, n = rng.randint(1, 10), rng.randint(1, 10)
        A = [[rng.randint(-6, 6) if rng.random() < 0.4 else 0
              for _ in range(n)] for _ in range(m)]
        coo = {(i, j): A[i][j] for i in range(m) for j in range(n)
               if A[i][j]}
        sp = exact.SparseMat.from_entries(m, n, coo)
        rank, factors = exact.sparse_rank_and_factors(sp)
        S = exact.smith(A, with_transforms=False)
        assert rank == S.rank()
        assert sorted(factors) == sorted(S.invariant_factors())


def test_morse_reduction_preserves_homology(corpus):
    for name in ("RP2", "torus", "bdD3", "cone_bdD2"):
        C = dsx.chain_complex(corpus[name])
        W = C.morse_reduced()
        assert W.total_rank() <= C.total_rank()
        for coeff, p in (("Z", None), ("F", 2), ("F", 3), ("Q", None)):
            a = {k: str(g) for k, g in
                 dsx.homology(C, coeff=coeff, p=p, use_morse=False).items()
                 if not g.is_trivial()}
            b = {k: str(g) for k, g in
                 dsx.homology(W, coeff=coeff, p=p, use_morse=False).items()
                 if not g.is_trivial()}
            assert a == b, (name, coeff, p)


# ---------------------------------------------------------------------------
# homology over fields and universal coefficients
# ---------------------------------------------------------------------------

def test_field_homology_of_moore(moore3):
    f3 = dsx.homology_of(moore3.M, coeff="F", p=3, reduced=True)
    dims = {k: g.free_rank for k, g in f3.items()}
    assert dims == {0: 0, 1: 0, 2: 1, 3: 1}
    for coeff, p in (("F", 2), ("Q", None)):
        groups = dsx.homology_of(moore3.M, coeff=coeff, p=p, reduced=True)
        assert all(g.is_trivial() for g in groups.values())


def test_point_homology():
    groups = dsx.homology_of(dsx.standard("simplex", 0))
    assert str(groups[0]) == "Z"


def test_homology_rejects_nonprime():
    with pytest.raises(ValueError):
        dsx.homology_of(dsx.circle(), coeff="F", p=6)


def test_universal_coefficients(corpus):
    for name, K in corpus.items():
        hz = dsx.homology_of(K)
        for p in (2, 3, 5):
            hp = dsx.homology_of(K, coeff="F", p=p)
            for k, g in hp.items():
                zk = hz.get(k, HomologyGroup(k, 0))
                zk1 = hz.get(k - 1, HomologyGroup(k - 1, 0))
                want = zk.free_rank \
                    + sum(1 for t in zk.torsion if t % p == 0) \
                    + sum(1 for t in zk1.torsion if t % p == 0)
                assert g.free_rank == want, (name, p, k)


def test_homology_invariant_under_certificate_replay(corpus):
    K = corpus["bdD2"]
    CK, incl, cert = dsx.cone(K)
    stages = [cert.base]
    partial = []
    for mv in cert.moves:
        partial.append(mv)
        stages.append(dsx.ExpansionCertificate(cert.base, partial,
                                               None).replay())
    for X in stages:
        groups = dsx.homology_of(X)
        nontrivial = {k: str(g) for k, g in groups.items()
                      if not g.is_trivial()}
        assert nontrivial == {0: "Z"}


# ---------------------------------------------------------------------------
# induced maps
# ---------------------------------------------------------------------------

def test_induced_identity(moore3):
    m = dsx.induced_map(dsx.based_identity(moore3.M))
    for k, entry in m.items():
        n = len(entry["source_orders"])
        assert entry["source_orders"] == entry["target_orders"]
        assert entry["matrix"] == [[1 if i == j else 0 for j in range(n)]
                                   for i in range(n)]
        assert dsx.integral_map_is_iso(entry)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_nabla_and_psi_induced_maps(p):
    nabla_h1 = dsx.induced_map(dsx.nabla(p))[1]
    assert nabla_h1["matrix"] == [[p]]
    assert nabla_h1["source_orders"] == [0]
    assert nabla_h1["target_orders"] == [0]
    for i in range(p):
        psi_h1 = dsx.induced_map(dsx.psi(i, p))[1]
        assert psi_h1["matrix"] == [[1]]


def test_induced_maps_respect_composition():
    # psi_1 followed by the identity; and nabla through a quotient square
    f = dsx.psi(1, 3)
    idc = dsx.based_identity(dsx.circle())
    comp = dsx.induced_map(idc.compose(f))
    direct = dsx.induced_map(f)
    for k in comp:
        assert comp[k]["matrix"] == direct[k]["matrix"]


def test_integral_iso_detection():
    ok = {"matrix": [[1]], "source_orders": [3], "target_orders": [3]}
    assert dsx.integral_map_is_iso(ok)
    two_mod_three = {"matrix": [[2]], "source_orders": [3],
                     "target_orders": [3]}
    assert dsx.integral_map_is_iso(two_mod_three)
    zero = {"matrix": [[0]], "source_orders": [3], "target_orders": [3]}
    assert not dsx.integral_map_is_iso(zero)
    wrong_groups = {"matrix": [[1]], "source_orders": [0],
                    "target_orders": [3]}
    assert not dsx.integral_map_is_iso(wrong_groups)
    by_three = {"matrix": [[3]], "source_orders": [0], "target_orders": [0]}
    assert not dsx.integral_map_is_iso(by_three)


# ---------------------------------------------------------------------------
# Bockstein
# ---------------------------------------------------------------------------

def test_bockstein_vanishes_on_torsion_free():
    b = dsx.bockstein(dsx.circle(), 3, 1)
    assert b["source_dim"] == 1 and b["target_dim"] == 0
    assert all(not any(row) for row in b["matrix"])


def test_bockstein_of_moore_is_iso(moore3):
    b = dsx.bockstein(moore3.M, 3, 3)
    assert b["source_dim"] == b["target_dim"] == 1
    assert dsx.fp_matrix_is_iso(b)


def test_bockstein_squares_to_zero(moore3):
    objs = [moore3.M, dsx.sphere2(), dsx.s_bracket(4)]
    for K in objs:
        for p in (2, 3):
            top = K.top_dim
            for k in range(1, top + 1):
                b1 = dsx.bockstein(K, p, k)
                b2 = dsx.bockstein(K, p, k - 1)
                if not b1["matrix"] or not b2["matrix"]:
                    continue
                prod = exact.mat_mul(b2["matrix"], b1["matrix"])
                assert all(v % p == 0 for row in prod for v in row), (p, k)


# ---------------------------------------------------------------------------
# Moore certification
# ---------------------------------------------------------------------------

def test_certify_moore_accepts_moore(moore3):
    ok, table = dsx.certify_moore(moore3.M, 3, 2)
    assert ok
    assert table[2] == "Z/3"


def test_certify_moore_rejects_circle():
    ok, table = dsx.certify_moore(dsx.circle(), 3, 2)
    assert not ok
    assert table[1] == "Z"


def test_certify_moore_with_wrong_modulus(moore3):
    ok, _ = dsx.certify_moore(moore3.M, 2, 2)
    assert not ok
    ok, _ = dsx.certify_moore(moore3.M, 3, 3)
    assert not ok
