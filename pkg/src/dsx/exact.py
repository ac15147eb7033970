"""Exact integer and mod-p linear algebra.

All integer arithmetic uses Python's arbitrary-precision ints; entry blow-up
during Smith reduction is therefore harmless.  The routines here are the
computational backbone for every homology verdict in the package:

* dense Smith normal form with recorded unimodular transforms and their
  inverses (self-verifying),
* sparse integer elimination producing ranks and invariant factors without
  transforms (for medium chain complexes),
* an integral Morse-style reduction that cancels unit entries of boundary
  matrices, shrinking a chain complex to a homotopy-equivalent one,
* dense mod-p kernels/ranks for field-coefficient homology.
"""

from __future__ import annotations

import heapq


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# dense helpers (lists of lists of python ints)
# ---------------------------------------------------------------------------

def zeros(m, n):
    return [[0] * n for _ in range(m)]


def eye(n):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = 1
    return M


def mat_mul(A, B):
    if not A:
        return []
    n_inner = len(B)
    if A and len(A[0]) != n_inner:
        raise ValueError("shape mismatch in mat_mul")
    if not B:
        return [[] for _ in A]
    Bt = list(zip(*B))
    out = []
    for row in A:
        out.append([sum(x * y for x, y in zip(row, col)) for col in Bt])
    return out


def mat_add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * x for x in row] for row in A]


def mat_eq(A, B):
    return len(A) == len(B) and all(ra == rb for ra, rb in zip(A, B))


def is_zero_matrix(A):
    return all(all(x == 0 for x in row) for row in A)


def mat_copy(A):
    return [row[:] for row in A]


# ---------------------------------------------------------------------------
# Smith normal form with transforms
# ---------------------------------------------------------------------------

class SmithDecomposition:
    """U * D * V == A with U, V unimodular and D = diag(d1 | d2 | ...).

    The inverses of U and V are recorded at construction time; unimodularity
    is thereby witnessed without any determinant computation.
    """

    __slots__ = ("U", "D", "V", "U_inv", "V_inv", "shape")

    def __init__(self, U, D, V, U_inv, V_inv, shape):
        self.U = U
        self.D = D
        self.V = V
        self.U_inv = U_inv
        self.V_inv = V_inv
        self.shape = shape

    def diagonal(self):
        m, n = self.shape
        return [self.D[i][i] for i in range(min(m, n))]

    def rank(self):
        return sum(1 for d in self.diagonal() if d != 0)

    def invariant_factors(self):
        return [d for d in self.diagonal() if d != 0]

    def verify_product(self, A):
        """Check U*D*V == A, D diagonal, and the divisibility chain."""
        m, n = self.shape
        if len(A) != m or (m and len(A[0]) != n):
            return False
        # U*D is a column scaling, so only one full matrix product is needed
        r = min(m, n)
        UD = [[row[j] * self.D[j][j] if j < r else 0 for j in range(n)]
              for row in self.U]
        if not mat_eq(mat_mul(UD, self.V), A):
            return False
        diag = self.diagonal()
        for i, d in enumerate(diag):
            if d < 0:
                return False
            if i + 1 < len(diag) and diag[i + 1] != 0 and d != 0 \
                    and diag[i + 1] % d != 0:
                return False
            if d == 0 and i + 1 < len(diag) and diag[i + 1] != 0:
                return False
        for i in range(m):
            for j in range(n):
                if i != j and self.D[i][j] != 0:
                    return False
        return True

    def verify_inverses(self):
        """Check the recorded unimodularity witnesses U^-1 and V^-1."""
        m, n = self.shape
        return mat_eq(mat_mul(self.U, self.U_inv), eye(m)) and \
            mat_eq(mat_mul(self.V, self.V_inv), eye(n))

    def verify(self, A):
        """Full check: product, chain, shape, and recorded inverses."""
        return self.verify_product(A) and self.verify_inverses()


def _pivot_search(D, t, m, n):
    """Smallest-magnitude pivot (entry growth control), Markowitz fill-in
    estimate as tie-break, then position, over the trailing submatrix."""
    row_nnz = [0] * m
    col_nnz = [0] * n
    for i in range(t, m):
        Di = D[i]
        for j in range(t, n):
            if Di[j]:
                row_nnz[i] += 1
                col_nnz[j] += 1
    best = None
    best_key = None
    for i in range(t, m):
        Di = D[i]
        for j in range(t, n):
            v = Di[j]
            if v:
                key = (abs(v), (row_nnz[i] - 1) * (col_nnz[j] - 1), i, j)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (i, j)
                    if key[0] == 1 and key[1] == 0:
                        return best
    return best


def smith(A, with_transforms=True):
    """Smith normal form of an integer matrix (list of rows).

    Returns a SmithDecomposition; `verify` against the input will pass.
    With `with_transforms=False` the U/V matrices are skipped (cheaper);
    the diagonal is still the true invariant-factor chain.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    for row in D:
        if len(row) != n:
            raise ValueError("ragged matrix")
    wt = with_transforms
    U = eye(m) if wt else None
    Ui = eye(m) if wt else None
    V = eye(n) if wt else None
    Vi = eye(n) if wt else None

    def row_swap(i, k):
        D[i], D[k] = D[k], D[i]
        if wt:
            for r in U:
                r[i], r[k] = r[k], r[i]
            Ui[i], Ui[k] = Ui[k], Ui[i]

    def col_swap(j, k):
        for r in D:
            r[j], r[k] = r[k], r[j]
        if wt:
            V[j], V[k] = V[k], V[j]
            for r in Vi:
                r[j], r[k] = r[k], r[j]

    def row_axpy(k, i, q):
        # row_k += q * row_i
        Dk, Di = D[k], D[i]
        for j in range(n):
            if Di[j]:
                Dk[j] += q * Di[j]
        if wt:
            for r in U:
                r[i] -= q * r[k]
            Uik, Uii = Ui[k], Ui[i]
            for j in range(m):
                if Uii[j]:
                    Uik[j] += q * Uii[j]

    def col_axpy(k, i, q):
        # col_k += q * col_i
        for r in D:
            if r[i]:
                r[k] += q * r[i]
        if wt:
            Vi_, Vk_ = V[i], V[k]
            for j in range(n):
                if Vk_[j]:
                    Vi_[j] -= q * Vk_[j]
            for r in Vi:
                if r[i]:
                    r[k] += q * r[i]

    def row_gcd_op(i, k, x, y, u, w):
        # rows (i,k) <- (x*Ri + y*Rk, u*Ri + w*Rk), det = x*w - y*u = 1
        Di, Dk = D[i], D[k]
        for j in range(n):
            a, b = Di[j], Dk[j]
            Di[j] = x * a + y * b
            Dk[j] = u * a + w * b
        if wt:
            # U <- U * L^{-1}, L^{-1} = [[w, -y], [-u, x]]
            for r in U:
                a, b = r[i], r[k]
                r[i] = w * a - u * b
                r[k] = -y * a + x * b
            Uii, Uik = Ui[i], Ui[k]
            for j in range(m):
                a, b = Uii[j], Uik[j]
                Uii[j] = x * a + y * b
                Uik[j] = u * a + w * b

    def col_gcd_op(j, k, x, y, u, w):
        # cols (j,k) <- (x*Cj + y*Ck, u*Cj + w*Ck)
        for r in D:
            a, b = r[j], r[k]
            r[j] = x * a + y * b
            r[k] = u * a + w * b
        if wt:
            Vj, Vk = V[j], V[k]
            for c in range(n):
                a, b = Vj[c], Vk[c]
                Vj[c] = w * a - u * b
                Vk[c] = -y * a + x * b
            for r in Vi:
                a, b = r[j], r[k]
                r[j] = x * a + y * b
                r[k] = u * a + w * b

    def negate_row(i):
        D[i] = [-x for x in D[i]]
        if wt:
            for r in U:
                r[i] = -r[i]
            Ui[i] = [-x for x in Ui[i]]

    rank = 0
    for t in range(min(m, n)):
        piv = _pivot_search(D, t, m, n)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        # Euclidean descent: divide with remainder against the pivot; any
        # leftover remainder is strictly smaller, so re-pivoting terminates.
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                a = D[i][t]
                if a:
                    q = a // p
                    if q:
                        row_axpy(i, t, -q)
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                b = D[t][j]
                if b:
                    q = b // p
                    if q:
                        col_axpy(j, t, -q)
                    if D[t][j]:
                        dirty = True
            if not dirty:
                break
            piv = _pivot_search(D, t, m, n)
            pi, pj = piv
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
        if D[t][t] < 0:
            negate_row(t)
        rank = t + 1

    # enforce the divisibility chain d1 | d2 | ...
    changed = True
    while changed:
        changed = False
        for t in range(rank - 1):
            a, b = D[t][t], D[t + 1][t + 1]
            if b % a != 0:
                changed = True
                col_axpy(t, t + 1, 1)  # puts b into position (t+1, t)
                g, x, y = xgcd(a, b)
                row_gcd_op(t, t + 1, x, y, -(b // g), a // g)
                # row op may leave entry at (t, t+1); clear both off-diagonals
                q = D[t][t + 1] // D[t][t]
                col_axpy(t + 1, t, -q)
                q = D[t + 1][t] // D[t][t] if D[t + 1][t] else 0
                if q:
                    row_axpy(t + 1, t, -q)
                if D[t + 1][t + 1] < 0:
                    negate_row(t + 1)

    return SmithDecomposition(U, D, V, Ui, Vi, (m, n))


def kernel_basis(A):
    """Integral basis of ker(A) (columns), saturated in Z^n."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    S = smith(A)
    r = S.rank()
    return [[S.V_inv[i][j] for i in range(n)] for j in range(r, n)]


# ---------------------------------------------------------------------------
# sparse integer / mod-p elimination (no transforms)
# ---------------------------------------------------------------------------

class SparseMat:
    """Column-major sparse integer matrix: cols[c][r] = value, rows[r] = {c}."""

    __slots__ = ("cols", "rows", "nrows", "ncols")

    def __init__(self, nrows, ncols):
        self.cols = {}
        self.rows = {}
        self.nrows = nrows
        self.ncols = ncols

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        M = cls(nrows, ncols)
        for (r, c), v in entries.items():
            if v:
                M.cols.setdefault(c, {})[r] = v
                M.rows.setdefault(r, set()).add(c)
        return M

    def nnz(self):
        return sum(len(col) for col in self.cols.values())

    def remove_col(self, c):
        col = self.cols.pop(c, None)
        if col:
            for r in col:
                s = self.rows.get(r)
                if s is not None:
                    s.discard(c)
                    if not s:
                        del self.rows[r]

    def remove_row(self, r):
        cs = self.rows.pop(r, None)
        if cs:
            for c in list(cs):
                col = self.cols.get(c)
                if col is not None:
                    col.pop(r, None)
                    if not col:
                        del self.cols[c]

    def col_axpy(self, j, c, q):
        """col_j += q * col_c (updates row index)."""
        if q == 0:
            return
        colc = self.cols.get(c, {})
        colj = self.cols.setdefault(j, {})
        for r, v in colc.items():
            nv = colj.get(r, 0) + q * v
            if nv:
                colj[r] = nv
                self.rows.setdefault(r, set()).add(j)
            elif r in colj:
                del colj[r]
                s = self.rows.get(r)
                if s is not None:
                    s.discard(j)
                    if not s:
                        del self.rows[r]
        if not colj:
            self.cols.pop(j, None)


def _dense_from_sparse(M):
    """Extract the remaining entries as a dense matrix plus index maps."""
    live_rows = sorted(M.rows)
    live_cols = sorted(M.cols)
    ri = {r: i for i, r in enumerate(live_rows)}
    ci = {c: i for i, c in enumerate(live_cols)}
    A = zeros(len(live_rows), len(live_cols))
    for c, col in M.cols.items():
        for r, v in col.items():
            A[ri[r]][ci[c]] = v
    return A


def sparse_rank_and_factors(M):
    """(rank, invariant factors) of a SparseMat over Z.  Destroys M.

    Unit (+-1) pivots are eliminated sparsely with Markowitz ordering; the
    unit-free residue is handed to dense Smith reduction.
    """
    heap = []
    for c, col in M.cols.items():
        for r, v in col.items():
            if v == 1 or v == -1:
                cost = (len(M.rows[r]) - 1) * (len(col) - 1)
                heap.append((cost, r, c))
    heapq.heapify(heap)
    rank = 0
    while heap:
        cost, r, c = heapq.heappop(heap)
        col = M.cols.get(c)
        if col is None or r not in col:
            continue
        v = col[r]
        if v != 1 and v != -1:
            continue
        cur = (len(M.rows[r]) - 1) * (len(col) - 1)
        if cur > cost:
            heapq.heappush(heap, (cur, r, c))
            continue
        # eliminate: clear row r from all other columns, drop row/col
        for j in list(M.rows[r]):
            if j == c:
                continue
            q = -M.cols[j][r] * v
            M.col_axpy(j, c, q)
            colj = M.cols.get(j)
            if colj:
                for r2, v2 in colj.items():
                    if v2 == 1 or v2 == -1:
                        c2 = (len(M.rows[r2]) - 1) * (len(colj) - 1)
                        heapq.heappush(heap, (c2, r2, j))
        M.remove_col(c)
        M.remove_row(r)
        rank += 1
    if not M.cols:
        return rank, [1] * rank
    A = _dense_from_sparse(M)
    S = smith(A, with_transforms=False)
    rest = S.invariant_factors()
    return rank + len(rest), [1] * rank + rest


def sparse_rank_mod_p(M, p):
    """Rank of a SparseMat over F_p.  Destroys M."""
    for c in list(M.cols):
        col = M.cols[c]
        dead = []
        for r in col:
            col[r] %= p
            if col[r] == 0:
                dead.append(r)
        for r in dead:
            del col[r]
            s = M.rows.get(r)
            if s is not None:
                s.discard(c)
                if not s:
                    del M.rows[r]
        if not col:
            del M.cols[c]
    rank = 0
    while M.cols:
        # cheapest live pivot
        best = None
        best_key = None
        for c, col in M.cols.items():
            for r, v in col.items():
                key = ((len(M.rows[r]) - 1) * (len(col) - 1), r, c)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (r, c)
                if best_key[0] == 0:
                    break
            if best_key is not None and best_key[0] == 0:
                break
        r, c = best
        v = M.cols[c][r]
        vinv = pow(v, -1, p)
        for j in list(M.rows[r]):
            if j == c:
                continue
            q = (-M.cols[j][r] * vinv) % p
            colc = M.cols[c]
            colj = M.cols.setdefault(j, {})
            for rr, vv in colc.items():
                nv = (colj.get(rr, 0) + q * vv) % p
                if nv:
                    colj[rr] = nv
                    M.rows.setdefault(rr, set()).add(j)
                elif rr in colj:
                    del colj[rr]
                    s = M.rows.get(rr)
                    if s is not None:
                        s.discard(j)
                        if not s:
                            del M.rows[rr]
            if not colj:
                M.cols.pop(j, None)
        M.remove_col(c)
        M.remove_row(r)
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# integral Morse-style reduction of a chain complex
# ---------------------------------------------------------------------------

def morse_reduce(ranks, boundaries):
    """Cancel +-1 entries of the boundary matrices of a complex.

    `ranks` maps degree -> number of cells, `boundaries` maps degree k to a
    COO dict {(row, col): v} for d_k : C_k -> C_{k-1}.  Returns reduced
    (ranks, boundaries) of a complex with identical homology (any
    coefficients): each cancellation is a basis change followed by removal
    of an acyclic two-cell direct summand.
    """
    mats = {}
    for k, coo in boundaries.items():
        m = SparseMat(ranks.get(k - 1, 0), ranks.get(k, 0))
        for (r, c), v in coo.items():
            if v:
                m.cols.setdefault(c, {})[r] = v
                m.rows.setdefault(r, set()).add(c)
        mats[k] = m
    alive = {k: set(range(n)) for k, n in ranks.items()}

    heap = []
    for k, m in mats.items():
        for c, col in m.cols.items():
            for r, v in col.items():
                if v == 1 or v == -1:
                    cost = (len(m.rows[r]) - 1) * (len(col) - 1)
                    heap.append((cost, k, r, c))
    heapq.heapify(heap)

    while heap:
        cost, k, r, c = heapq.heappop(heap)
        m = mats.get(k)
        if m is None:
            continue
        col = m.cols.get(c)
        if col is None or r not in col:
            continue
        v = col[r]
        if v != 1 and v != -1:
            continue
        cur = (len(m.rows[r]) - 1) * (len(col) - 1)
        if cur > cost:
            heapq.heappush(heap, (cur, k, r, c))
            continue
        # cancel cell pair (c in degree k, r in degree k-1)
        for j in list(m.rows[r]):
            if j == c:
                continue
            q = -m.cols[j][r] * v
            m.col_axpy(j, c, q)
            colj = m.cols.get(j)
            if colj:
                for r2, v2 in colj.items():
                    if v2 == 1 or v2 == -1:
                        c2 = (len(m.rows[r2]) - 1) * (len(colj) - 1)
                        heapq.heappush(heap, (c2, k, r2, j))
        m.remove_col(c)
        m.remove_row(r)
        up = mats.get(k + 1)
        if up is not None:
            up.remove_row(c)
        down = mats.get(k - 1)
        if down is not None:
            down.remove_col(r)
        alive[k].discard(c)
        alive[k - 1].discard(r)

    new_index = {}
    new_ranks = {}
    for k, cells in alive.items():
        ordered = sorted(cells)
        new_index[k] = {old: i for i, old in enumerate(ordered)}
        new_ranks[k] = len(ordered)
    new_boundaries = {}
    for k, m in mats.items():
        coo = {}
        idx_lo = new_index.get(k - 1, {})
        idx_hi = new_index.get(k, {})
        for c, col in m.cols.items():
            for r, v in col.items():
                coo[(idx_lo[r], idx_hi[c])] = v
        new_boundaries[k] = coo
    return new_ranks, new_boundaries


# ---------------------------------------------------------------------------
# dense mod-p linear algebra (small matrices)
# ---------------------------------------------------------------------------

def fp_rref(A, p):
    """Row-reduce A mod p in place; return pivot column list."""
    m = len(A)
    n = len(A[0]) if m else 0
    for i in range(m):
        A[i] = [x % p for x in A[i]]
    pivots = []
    row = 0
    for col in range(n):
        piv = None
        for i in range(row, m):
            if A[i][col]:
                piv = i
                break
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = pow(A[row][col], -1, p)
        A[row] = [(x * inv) % p for x in A[row]]
        for i in range(m):
            if i != row and A[i][col]:
                q = A[i][col]
                A[i] = [(x - q * y) % p for x, y in zip(A[i], A[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    return pivots


def fp_kernel_basis(A, p):
    """Basis of ker(A) over F_p, as column vectors (lists)."""
    m = len(A)
    n = len(A[0]) if m else 0
    B = [row[:] for row in A]
    pivots = fp_rref(B, p)
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = []
    for f in free:
        vec = [0] * n
        vec[f] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-B[i][f]) % p
        basis.append(vec)
    return basis


def fp_rank(A, p):
    B = [row[:] for row in A]
    return len(fp_rref(B, p))


class FpEchelon:
    """Incremental echelon store over F_p keyed by leading index.

    reduce(v) returns the residue of v against the stored vectors; add(v)
    inserts a (nonzero) residue.  Used to build quotient-space bases.
    """

    def __init__(self, p):
        self.p = p
        self.lead = {}

    def reduce(self, v):
        p = self.p
        v = [x % p for x in v]
        for i in range(len(v)):
            if v[i]:
                base = self.lead.get(i)
                if base is None:
                    break
                q = v[i]
                v = [(x - q * y) % p for x, y in zip(v, base)]
        return v

    def reduce_full(self, v):
        """Residue with all stored leads eliminated (not just the first)."""
        p = self.p
        v = [x % p for x in v]
        i = 0
        while i < len(v):
            if v[i]:
                base = self.lead.get(i)
                if base is None:
                    i += 1
                    continue
                q = v[i]
                v = [(x - q * y) % p for x, y in zip(v, base)]
            else:
                i += 1
        return v

    def add(self, v):
        p = self.p
        v = self.reduce_full(v)
        for i in range(len(v)):
            if v[i]:
                inv = pow(v[i], -1, p)
                v = [(x * inv) % p for x in v]
                self.lead[i] = v
                return i
        return None
