"""Exact chain complexes and homology of (based) Delta-sets.

Boundary matrices are stored sparsely (COO dicts) with arbitrary-precision
integer entries; there is no fixed-width arithmetic anywhere on the exact
path, so entry blow-up during Smith reduction is impossible by construction.

Integral homology is computed from Smith forms of consecutive boundaries;
for large complexes the boundaries are first shrunk by an integral
Morse-style reduction (exact.morse_reduce) which preserves homology with
all coefficients.  Field homology uses ranks; isomorphism verdicts for
large chain maps go through acyclicity of the mapping cone, which needs
ranks and invariant factors only.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import exact
from .delta import DeltaSet
from .based import BasedDeltaSet


def is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# chain complexes
# ---------------------------------------------------------------------------

class ChainComplex:
    """Finitely supported complex of free Z-modules with sparse boundaries.

    ranks[k] is the rank in degree k; d[k] is a COO dict {(row, col): v}
    for the boundary C_k -> C_{k-1}.  `basis[k]`, when present, names the
    generators (used to align induced maps with Delta-set cells).
    """

    __slots__ = ("lo", "hi", "ranks", "d", "basis")

    def __init__(self, lo, hi, ranks, d, basis=None, check=True):
        self.lo = lo
        self.hi = hi
        self.ranks = {k: int(ranks.get(k, 0)) for k in range(lo, hi + 1)}
        self.d = {}
        for k in range(lo, hi + 1):
            coo = {kv: int(v) for kv, v in d.get(k, {}).items() if v}
            if self.ranks.get(k, 0) and self.ranks.get(k - 1, 0):
                self.d[k] = coo
            elif coo:
                raise ValueError(f"boundary in degree {k} has no room")
            else:
                self.d[k] = {}
        self.basis = basis
        if check:
            bad = self.verify()
            if bad:
                raise ValueError(f"d o d != 0 in degrees {bad}")

    def rank(self, k):
        return self.ranks.get(k, 0)

    def verify(self):
        """Degrees k where d_{k-1} o d_k != 0 (empty for a valid complex)."""
        bad = []
        for k in range(self.lo + 1, self.hi + 1):
            lower = self.d.get(k - 1, {})
            cols_lower = {}
            for (r, c), v in lower.items():
                cols_lower.setdefault(c, []).append((r, v))
            acc = {}
            for (r, c), v in self.d.get(k, {}).items():
                for (r2, v2) in cols_lower.get(r, ()):
                    key = (r2, c)
                    acc[key] = acc.get(key, 0) + v * v2
            if any(val for val in acc.values()):
                bad.append(k)
        return bad

    def boundary_dense(self, k):
        m, n = self.rank(k - 1), self.rank(k)
        A = exact.zeros(m, n)
        for (r, c), v in self.d.get(k, {}).items():
            A[r][c] = v
        return A

    def euler_characteristic(self):
        return sum((-1) ** k * r for k, r in self.ranks.items())

    def total_rank(self):
        return sum(self.ranks.values())

    def morse_reduced(self):
        """A homotopy-equivalent complex with unit boundary entries
        cancelled (same homology for every coefficient ring)."""
        ranks, bnd = exact.morse_reduce(self.ranks, self.d)
        return ChainComplex(self.lo, self.hi, ranks, bnd, check=False)

    def __repr__(self):
        rk = [self.ranks.get(k, 0) for k in range(self.lo, self.hi + 1)]
        return f"ChainComplex({self.lo}..{self.hi}, ranks={rk})"


def chain_complex(K, reduced=False):
    """Cellular chain complex of a Delta-set, or the reduced complex of a
    based Delta-set (one generator per non-basepoint simplex, basepoint
    faces contributing zero).

    For an unbased Delta-set, reduced=True augments the complex by Z in
    degree -1; for a based Delta-set, reduced=False adds a basepoint
    generator in degree 0 (the unreduced homology of the reduced
    realization).
    """
    based = isinstance(K, BasedDeltaSet)
    if not based and not isinstance(K, DeltaSet):
        raise TypeError("expected a DeltaSet or BasedDeltaSet")
    top = K.top_dim
    basis = {}
    index = {}
    for k in range(0, top + 1):
        cells = K.cells(k)
        basis[k] = tuple(cells)
        for i, s in enumerate(cells):
            index[s] = i
    ranks = {k: len(basis.get(k, ())) for k in range(0, top + 1)}
    d = {}
    for k in range(1, top + 1):
        coo = {}
        for c, s in enumerate(basis.get(k, ())):
            for i, f in enumerate(K.faces[s]):
                if f is None:
                    continue
                key = (index[f], c)
                coo[key] = coo.get(key, 0) + (-1) ** i
        d[k] = {key: v for key, v in coo.items() if v}
    lo = 0
    if not based and reduced:
        lo = -1
        ranks[-1] = 1
        d[0] = {(0, c): 1 for c in range(ranks.get(0, 0))}
    if based and not reduced:
        ranks[0] = ranks.get(0, 0) + 1  # disjoint basepoint component
    hi = max(top, 0)
    return ChainComplex(lo, hi, ranks, d, basis=basis)


# ---------------------------------------------------------------------------
# Smith normal form (operation wrapper)
# ---------------------------------------------------------------------------

def smith(matrix):
    """Smith decomposition U*D*V of an integer matrix (list of rows).

    All arithmetic is arbitrary precision; there is no fixed-width path to
    overflow.  The decomposition records U^-1 and V^-1 as unimodularity
    witnesses and re-verification is a method call away.
    """
    return exact.smith(matrix)


# ---------------------------------------------------------------------------
# homology groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    free_rank: int
    torsion: tuple = ()

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def _sparse_of(coo, m, n):
    return exact.SparseMat.from_entries(m, n, coo)


def homology(C, coeff="Z", p=None, use_morse=True):
    """Per-degree homology of a ChainComplex.

    coeff is "Z", "Q" or "F" (with p prime).  Integral homology reports
    free rank and the divisibility-ordered torsion coefficients; field
    homology reports dimensions.
    """
    if coeff == "F":
        if p is None or not is_prime(p):
            raise ValueError(f"field coefficient needs a prime, got {p!r}")
    elif coeff not in ("Z", "Q"):
        raise ValueError(f"unknown coefficients {coeff!r}")
    W = C.morse_reduced() if use_morse and C.total_rank() > 64 else C
    ranks = {}
    factors = {}
    for k in range(W.lo, W.hi + 2):
        m, n = W.rank(k - 1), W.rank(k)
        coo = W.d.get(k, {})
        if m == 0 or n == 0 or not coo:
            ranks[k] = 0
            factors[k] = []
            continue
        sp = _sparse_of(coo, m, n)
        if coeff == "F":
            ranks[k] = exact.sparse_rank_mod_p(sp, p)
            factors[k] = []
        else:
            r, fs = exact.sparse_rank_and_factors(sp)
            ranks[k] = r
            factors[k] = fs
    out = {}
    for k in range(W.lo, W.hi + 1):
        n = W.rank(k)
        free = n - ranks.get(k, 0) - ranks.get(k + 1, 0)
        if coeff == "Z":
            tors = tuple(d for d in factors.get(k + 1, []) if d > 1)
        elif coeff == "F":
            # dim over F_p: rank part plus torsion contributions are already
            # folded into the mod-p ranks of the boundaries
            tors = ()
        else:
            tors = ()
        out[k] = HomologyGroup(k, free, tors)
    return out


def homology_of(K, coeff="Z", p=None, reduced=None):
    """Homology directly from a (based) Delta-set; reduced defaults to True
    for based inputs and False otherwise."""
    if reduced is None:
        reduced = isinstance(K, BasedDeltaSet)
    return homology(chain_complex(K, reduced=reduced), coeff=coeff, p=p)


def homology_table(groups, lo=None, hi=None):
    ks = sorted(groups)
    lo = ks[0] if lo is None else lo
    hi = ks[-1] if hi is None else hi
    return {k: str(groups.get(k, HomologyGroup(k, 0))) for k in range(lo, hi + 1)}


def is_acyclic(C, coeff="Z", p=None):
    groups = homology(C, coeff=coeff, p=p)
    return all(g.is_trivial() for g in groups.values())


# ---------------------------------------------------------------------------
# chain maps, cones, homology isomorphism verdicts
# ---------------------------------------------------------------------------

def chain_map_matrices(f, reduced=None):
    """Per-degree COO matrices (target x source) of the chain map induced
    by a (based) Delta-morphism; basepoint images contribute zero."""
    based = isinstance(f.source, BasedDeltaSet)
    if reduced is None:
        reduced = based
    CS = chain_complex(f.source, reduced=reduced)
    CT = chain_complex(f.target, reduced=reduced)
    mats = {}
    for k in range(max(CS.lo, CT.lo), min(CS.hi, CT.hi) + 1):
        if k == -1:  # augmentation degree: identity
            mats[-1] = {(0, 0): 1}
            continue
        coo = {}
        tindex = {s: i for i, s in enumerate(CT.basis.get(k, ()))}
        for c, s in enumerate(CS.basis.get(k, ())):
            t = f.mapping.get(s)
            if t is None:
                continue
            coo[(tindex[t], c)] = 1
        mats[k] = coo
    return CS, CT, mats


def mapping_cone_complex(CS, CT, mats):
    """Cone of a chain map F : CS -> CT; acyclic iff F is a homology iso.

    Degree k is CT_k (+) CS_{k-1} with d(y, x) = (dy + Fx, -dx).
    """
    lo = min(CS.lo, CT.lo)
    hi = max(CS.hi, CT.hi) + 1
    ranks = {}
    for k in range(lo, hi + 1):
        ranks[k] = CT.rank(k) + CS.rank(k - 1)
    d = {}
    for k in range(lo, hi + 1):
        coo = {}
        for (r, c), v in CT.d.get(k, {}).items():
            coo[(r, c)] = v
        off_row = CT.rank(k - 1)
        off_col = CT.rank(k)
        for (r, c), v in mats.get(k - 1, {}).items():
            coo[(r, off_col + c)] = coo.get((r, off_col + c), 0) + v
        for (r, c), v in CS.d.get(k - 1, {}).items():
            coo[(off_row + r, off_col + c)] = -v
        d[k] = {key: v for key, v in coo.items() if v}
    return ChainComplex(lo, hi, ranks, d, check=False)


def is_homology_iso(f, coeff="Z", p=None, reduced=None):
    """Whether a (based) Delta-morphism induces an isomorphism on homology
    in every degree, decided by acyclicity of its mapping cone."""
    CS, CT, mats = chain_map_matrices(f, reduced=reduced)
    cone = mapping_cone_complex(CS, CT, mats)
    return is_acyclic(cone, coeff=coeff, p=p)


# ---------------------------------------------------------------------------
# homology with generators (dense; for induced-map matrices)
# ---------------------------------------------------------------------------

class HomologyBasis:
    """Generators of H_k with their orders plus a coordinate function.

    orders[i] is 0 for a free generator and d > 1 for a Z/d generator;
    gens[i] is an integer cycle vector.  coords(w) expresses a cycle in
    these generators (reduced modulo the orders).
    """

    def __init__(self, degree, orders, gens, coord_fn):
        self.degree = degree
        self.orders = orders
        self.gens = gens
        self._coord_fn = coord_fn

    def coords(self, w):
        return self._coord_fn(w)

    def group(self):
        free = sum(1 for o in self.orders if o == 0)
        tors = tuple(sorted((o for o in self.orders if o > 1),
                            key=lambda x: (x,)))
        return HomologyGroup(self.degree, free, tors)


def _mat_vec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def homology_with_generators(C, k):
    """HomologyBasis in degree k via dense Smith forms with transforms."""
    n = C.rank(k)
    m = C.rank(k - 1)
    if n == 0:
        return HomologyBasis(k, [], [], lambda w: [])
    A = C.boundary_dense(k)
    if m == 0:
        kernel = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        rankA = 0
        VA = exact.eye(n)
    else:
        SA = exact.smith(A)
        rankA = SA.rank()
        VA = SA.V
        kernel = [[SA.V_inv[i][j] for j in range(rankA, n)] for i in range(n)]
    z = n - rankA

    def kernel_coords(w):
        y = _mat_vec(VA, w)
        if any(y[i] for i in range(rankA)):
            raise ValueError("vector is not a cycle")
        return y[rankA:]

    nup = C.rank(k + 1)
    img_gens = []
    if nup and C.d.get(k + 1):
        B = C.boundary_dense(k + 1)
        SB = exact.smith(B)
        diag = SB.diagonal()
        for i in range(SB.rank()):
            img_gens.append([diag[i] * SB.U[r][i] for r in range(n)])
    Q = [[0] * len(img_gens) for _ in range(z)]
    for j, g in enumerate(img_gens):
        cc = kernel_coords(g)
        for i in range(z):
            Q[i][j] = cc[i]
    if z == 0:
        return HomologyBasis(k, [], [], lambda w: [])
    if img_gens:
        SQ = exact.smith(Q)
        rQ = SQ.rank()
        dq = SQ.diagonal()
        UQ, UQinv = SQ.U, SQ.U_inv
    else:
        rQ = 0
        dq = []
        UQ = exact.eye(z)
        UQinv = exact.eye(z)
    orders = []
    gens = []
    kept = []
    for idx in range(z):
        order = dq[idx] if idx < rQ else 0
        if order == 1:
            continue
        kept.append(idx)
        orders.append(order)
        gens.append([sum(kernel[r][t] * UQ[t][idx] for t in range(z))
                     for r in range(n)])

    def coords(w):
        y = kernel_coords(w)
        full = _mat_vec(UQinv, y)
        out = []
        for pos, idx in enumerate(kept):
            val = full[idx]
            if orders[pos] > 1:
                val %= orders[pos]
            out.append(val)
        return out

    return HomologyBasis(k, orders, gens, coords)


def induced_map(f, coeff="Z", p=None, reduced=None):
    """Per-degree matrices of the induced map on homology.

    Integral coefficients express images of source generators in target
    generators (entries reduced modulo the target orders); field
    coefficients use mod-p bases.  Intended for small complexes: dense
    Smith transforms are computed per degree.
    """
    CS, CT, mats = chain_map_matrices(f, reduced=reduced)
    out = {}
    degrees = sorted(set(range(CS.lo, CS.hi + 1)) | set(range(CT.lo, CT.hi + 1)))
    for k in degrees:
        if coeff == "Z":
            hs = homology_with_generators(CS, k)
            ht = homology_with_generators(CT, k)
            F = mats.get(k, {})
            matrix = []
            for j, g in enumerate(hs.gens):
                w = [0] * CT.rank(k)
                for (r, c), v in F.items():
                    if g[c]:
                        w[r] += v * g[c]
                col = ht.coords(w)
                matrix.append(col)
            matrix = [list(row) for row in zip(*matrix)] if matrix else \
                [[] for _ in ht.orders]
            out[k] = {
                "matrix": matrix,
                "source_orders": list(hs.orders),
                "target_orders": list(ht.orders),
            }
        else:
            if p is None or not is_prime(p):
                raise ValueError("field induced maps need a prime p")
            bs = fp_homology_basis(CS, k, p)
            bt = fp_homology_basis(CT, k, p)
            F = mats.get(k, {})
            matrix = []
            for g in bs[0]:
                w = [0] * CT.rank(k)
                for (r, c), v in F.items():
                    if g[c]:
                        w[r] = (w[r] + v * g[c]) % p
                matrix.append(bt[1](w))
            matrix = [list(row) for row in zip(*matrix)] if matrix else \
                [[] for _ in bt[0]]
            out[k] = {"matrix": matrix, "p": p,
                      "source_dim": len(bs[0]), "target_dim": len(bt[0])}
    return out


def integral_map_is_iso(entry):
    """Decide whether an induced-map entry (from induced_map, coeff="Z")
    is an isomorphism of finitely generated abelian groups.

    Isomorphy holds iff the groups have equal invariant chains and the map
    is surjective (finitely generated abelian groups are Hopfian).
    """
    src = sorted(entry["source_orders"])
    tgt = sorted(entry["target_orders"])
    if src != tgt:
        return False
    t = len(entry["target_orders"])
    if t == 0:
        return True
    cols = []
    M = entry["matrix"]
    for j in range(len(entry["source_orders"])):
        cols.append([M[i][j] for i in range(t)])
    for i, o in enumerate(entry["target_orders"]):
        if o > 1:
            rel = [0] * t
            rel[i] = o
            cols.append(rel)
    A = [[cols[j][i] for j in range(len(cols))] for i in range(t)]
    S = exact.smith(A, with_transforms=False)
    diag = S.invariant_factors()
    return len(diag) == t and all(d == 1 for d in diag)


# ---------------------------------------------------------------------------
# mod-p homology bases and the Bockstein
# ---------------------------------------------------------------------------

def fp_homology_basis(C, k, p):
    """(basis cycles, coords) for H_k(C; F_p), dense (small complexes)."""
    n = C.rank(k)
    if n == 0:
        return [], lambda w: []
    if C.rank(k - 1) == 0:
        kernel = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    else:
        kernel = exact.fp_kernel_basis(C.boundary_dense(k), p)
    image = []
    if C.rank(k + 1) and C.d.get(k + 1):
        B = C.boundary_dense(k + 1)
        for j in range(C.rank(k + 1)):
            col = [B[i][j] % p for i in range(n)]
            if any(col):
                image.append(col)
    # echelonize the image, then pick kernel residues as homology basis
    ech = exact.FpEchelon(p)
    for v in image:
        ech.add(v)
    basis = []
    for v in kernel:
        res = ech.reduce_full(v)
        if any(res):
            ech.add(res)
            basis.append([x % p for x in v])

    span = []  # columns: basis then image echelon vectors
    for v in basis:
        span.append(v)
    for v in image:
        span.append(v)

    def coords(w):
        # solve span * x = w mod p; return the basis coefficients
        cols = len(span)
        A = [[span[j][i] % p for j in range(cols)] + [w[i] % p]
             for i in range(n)]
        piv = exact.fp_rref(A, p)
        x = [0] * cols
        for row, col in enumerate(piv):
            if col == cols:
                raise ValueError("vector is not a cycle mod p")
            x[col] = A[row][cols]
        return x[:len(basis)]

    return basis, coords


def bockstein(K, p, k, reduced=True):
    """Matrix of the Bockstein H~_k(-; F_p) -> H~_{k-1}(-; F_p).

    Connecting map of 0 -> Z/p -> Z/p^2 -> Z/p -> 0: lift a mod-p cycle to
    an integer chain, take the boundary, divide by p, reduce mod p.  The
    complex is Morse-reduced first (a chain homotopy equivalence over Z,
    so the Bockstein is unchanged).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    C = chain_complex(K, reduced=reduced)
    W = C.morse_reduced() if C.total_rank() > 64 else C
    bk, coords_k = fp_homology_basis(W, k, p)
    bk1, coords_k1 = fp_homology_basis(W, k - 1, p)
    cols = []
    for z in bk:
        dz = [0] * W.rank(k - 1)
        for (r, c), v in W.d.get(k, {}).items():
            if z[c]:
                dz[r] += v * z[c]
        if any(x % p for x in dz):
            raise AssertionError("lift of a mod-p cycle has non-divisible boundary")
        w = [(x // p) % p for x in dz]
        cols.append(coords_k1(w))
    matrix = [list(row) for row in zip(*cols)] if cols else \
        [[] for _ in bk1]
    return {"matrix": matrix, "source_dim": len(bk), "target_dim": len(bk1),
            "p": p, "degree": k}


def fp_matrix_is_iso(entry):
    M = entry["matrix"]
    p = entry["p"]
    sd, td = entry["source_dim"], entry["target_dim"]
    if sd != td:
        return False
    if sd == 0:
        return True
    return exact.fp_rank([row[:] for row in M], p) == sd


# ---------------------------------------------------------------------------
# Moore certification
# ---------------------------------------------------------------------------

def certify_moore(K, n, d):
    """PASS iff reduced integral homology is Z/n in degree d, 0 elsewhere.

    Returns (passed, table).  Simple connectivity is not checked; the
    verdict is a homology-level certificate only.
    """
    groups = homology_of(K, coeff="Z", reduced=True)
    want = HomologyGroup(d, 0, (n,))
    ok = True
    for k, g in groups.items():
        if k == d:
            if (g.free_rank, g.torsion) != (want.free_rank, want.torsion):
                ok = False
        elif not g.is_trivial():
            ok = False
    if d not in groups:
        ok = False
    return ok, homology_table(groups)
