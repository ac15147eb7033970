"""Chain-level dg constructions: shifts, cones, cylinders, the exterior
mod-n reduction t(X), the u/v adjunction identities, and n-order witness
towers.

Sign conventions are pinned by the universal-cycle relations rather than by
any textbook choice, and every constructor asserts its defining relation at
build time:

    hom differential   d(f) = d_Y o f - (-1)^{|f|} f o d_X
    cone               d(u) = i o f,  p o (i, u) = (0, 1_X)
    cylinder           d(s) = 1 - j o q
    reduction          d(eta) = 0,  d(g) = n * eta,
                       r o eta = 1,  p o g = 1,  eta o r + g o p = 1

The exterior operator of t(X) is e = g o r; it satisfies e o e = 0 and
d o e + e o d = n (that is, d(e) = n in the hom complex), which is exactly
the Z[e]-module structure the order towers need.
"""

from __future__ import annotations

from random import Random

from . import exact
from .homology import ChainComplex

FreeComplex = ChainComplex


def complex_from_matrices(lo, hi, ranks, mats, check=True):
    """Build a ChainComplex from dense boundary matrices d[k] : C_k -> C_{k-1}."""
    d = {}
    for k, A in mats.items():
        coo = {}
        for r, row in enumerate(A):
            for c, v in enumerate(row):
                if v:
                    coo[(r, c)] = v
        d[k] = coo
    return ChainComplex(lo, hi, ranks, d, check=check)


def point_complex(degree=0, rank=1):
    return ChainComplex(degree, degree, {degree: rank}, {})


class GradedMap:
    """Graded map of homogeneous degree r between complexes.

    mats[k] is the dense matrix X_k -> Y_{k+r}; degrees where either side
    vanishes are omitted.
    """

    __slots__ = ("source", "target", "degree", "mats")

    def __init__(self, source, target, degree, mats):
        self.source = source
        self.target = target
        self.degree = int(degree)
        self.mats = {}
        for k, A in mats.items():
            m = target.rank(k + self.degree)
            n = source.rank(k)
            if m == 0 or n == 0:
                if A and any(any(row) for row in A):
                    raise ValueError(f"matrix in empty degree {k}")
                continue
            if len(A) != m or any(len(row) != n for row in A):
                raise ValueError(f"matrix shape mismatch in degree {k}")
            self.mats[k] = [list(map(int, row)) for row in A]

    def mat(self, k):
        m = self.target.rank(k + self.degree)
        n = self.source.rank(k)
        return self.mats.get(k, exact.zeros(m, n))

    def __eq__(self, other):
        if not isinstance(other, GradedMap):
            return NotImplemented
        if self.degree != other.degree:
            return False
        ks = set(self.mats) | set(other.mats)
        return all(exact.mat_eq(self.mat(k), other.mat(k)) for k in ks)

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        ks = set(self.mats) | set(other.mats)
        return GradedMap(self.source, self.target, self.degree,
                         {k: exact.mat_add(self.mat(k), other.mat(k))
                          for k in ks})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return GradedMap(self.source, self.target, self.degree,
                         {k: exact.mat_scale(c, A)
                          for k, A in self.mats.items()})

    def compose(self, other):
        """self o other (other applied first)."""
        mats = {}
        for k in range(other.source.lo, other.source.hi + 1):
            n = other.source.rank(k)
            mid = other.target.rank(k + other.degree)
            m = self.target.rank(k + other.degree + self.degree)
            if n == 0 or m == 0:
                continue
            if mid == 0:
                continue
            A = exact.mat_mul(self.mat(k + other.degree), other.mat(k))
            if any(any(row) for row in A):
                mats[k] = A
        return GradedMap(other.source, self.target,
                         self.degree + other.degree, mats)

    def is_zero(self):
        return all(not any(any(row) for row in A) for A in self.mats.values())

    def apply(self, k, vec):
        return [sum(a * b for a, b in zip(row, vec)) for row in self.mat(k)]


def zero_map(source, target, degree=0):
    return GradedMap(source, target, degree, {})


def identity_map(X):
    return GradedMap(X, X, 0, {k: exact.eye(X.rank(k))
                               for k in range(X.lo, X.hi + 1)
                               if X.rank(k)})


def scalar_map(X, c):
    return identity_map(X).scale(c)


def differential_map(X):
    return GradedMap(X, X, -1, {k: X.boundary_dense(k)
                                for k in range(X.lo, X.hi + 1)
                                if X.rank(k) and X.rank(k - 1)})


def hom_differential(f):
    """d(f) = d_Y o f - (-1)^{|f|} f o d_X in the hom complex."""
    dY = differential_map(f.target)
    dX = differential_map(f.source)
    sign = -1 if f.degree % 2 else 1
    return dY.compose(f) - f.compose(dX).scale(sign)


def is_chain_map(f):
    return f.degree == 0 and hom_differential(f).is_zero()


# ---------------------------------------------------------------------------
# shift, cone, cylinder
# ---------------------------------------------------------------------------

def shift(X, r):
    """(X[r])_k = X_{k-r} with differential (-1)^r d; shifts compose
    additively, including the signs."""
    sign = -1 if r % 2 else 1
    ranks = {k + r: X.rank(k) for k in range(X.lo, X.hi + 1)}
    mats = {k + r: exact.mat_scale(sign, X.boundary_dense(k))
            for k in range(X.lo, X.hi + 1)
            if X.rank(k) and X.rank(k - 1)}
    return complex_from_matrices(X.lo + r, X.hi + r, ranks, mats, check=False)


class ConeResult:
    """Mapping cone of a chain map f : X -> Y.

    Cf_k = Y_k (+) X_{k-1}; i : Y -> Cf and the degree +1 map u : X -> Cf
    are the universal cycle, and p : Cf -> X (degree -1) projects onto the
    shifted part.  pbar is p viewed as a chain map Cf -> X[1].
    """

    __slots__ = ("cone", "i", "u", "p", "pbar", "shifted")

    def __init__(self, cone, i, u, p, pbar, shifted):
        self.cone = cone
        self.i = i
        self.u = u
        self.p = p
        self.pbar = pbar
        self.shifted = shifted


def cone_dg(f):
    """Cone of a chain map, with its universal-cycle relations asserted:
    d(i) = 0, d(u) = i o f, p o i = 0, p o u = 1, and pbar a chain map."""
    if not is_chain_map(f):
        raise ValueError("cone_dg needs a chain map (degree 0, d(f) = 0)")
    X, Y = f.source, f.target
    lo = min(Y.lo, X.lo + 1)
    hi = max(Y.hi, X.hi + 1)
    ranks = {k: Y.rank(k) + X.rank(k - 1) for k in range(lo, hi + 1)}
    mats = {}
    for k in range(lo, hi + 1):
        m = ranks.get(k - 1, 0)
        n = ranks.get(k, 0)
        if m == 0 or n == 0:
            continue
        A = exact.zeros(m, n)
        dY = Y.boundary_dense(k)
        for r in range(Y.rank(k - 1)):
            for c in range(Y.rank(k)):
                A[r][c] = dY[r][c]
        F = f.mat(k - 1)
        for r in range(Y.rank(k - 1)):
            for c in range(X.rank(k - 1)):
                A[r][Y.rank(k) + c] = F[r][c]
        dX = X.boundary_dense(k - 1)
        for r in range(X.rank(k - 2)):
            for c in range(X.rank(k - 1)):
                A[Y.rank(k - 1) + r][Y.rank(k) + c] = -dX[r][c]
        mats[k] = A
    C = complex_from_matrices(lo, hi, ranks, mats, check=True)
    i = GradedMap(Y, C, 0, {
        k: [[1 if rr == cc else 0 for cc in range(Y.rank(k))]
            for rr in range(C.rank(k))]
        for k in range(Y.lo, Y.hi + 1) if Y.rank(k)})
    u = GradedMap(X, C, 1, {
        k: [[1 if rr == Y.rank(k + 1) + cc else 0 for cc in range(X.rank(k))]
            for rr in range(C.rank(k + 1))]
        for k in range(X.lo, X.hi + 1) if X.rank(k)})
    p = GradedMap(C, X, -1, {
        k: [[1 if Y.rank(k) + cc == rr_src else 0
             for rr_src in range(C.rank(k))]
            for cc in range(X.rank(k - 1))]
        for k in range(lo, hi + 1) if C.rank(k) and X.rank(k - 1)})
    Xs = shift(X, 1)
    pbar = GradedMap(C, Xs, 0, {k: p.mat(k) for k in p.mats})
    if not hom_differential(i).is_zero():
        raise AssertionError("cone: d(i) != 0")
    if hom_differential(u) != i.compose(f):
        raise AssertionError("cone: d(u) != i o f")
    if not p.compose(i).is_zero():
        raise AssertionError("cone: p o i != 0")
    if p.compose(u) != identity_map(X):
        raise AssertionError("cone: p o u != 1")
    if not is_chain_map(pbar):
        raise AssertionError("cone: pbar is not a chain map")
    return ConeResult(C, i, u, p, pbar, Xs)


class CylinderResult:
    __slots__ = ("cyl", "i", "j", "q", "s")

    def __init__(self, cyl, i, j, q, s):
        self.cyl = cyl
        self.i = i
        self.j = j
        self.q = q
        self.s = s


def cylinder_dg(f):
    """Mapping cylinder Zf_k = X_k (+) Y_k (+) X_{k-1}, with
    d(a, b, c) = (da + c, db - fc, -dc); asserts q o i = f, q o j = 1 and
    d(s) = 1 - j o q (so j and q are inverse homotopy equivalences)."""
    if not is_chain_map(f):
        raise ValueError("cylinder_dg needs a chain map")
    X, Y = f.source, f.target
    lo = min(X.lo, Y.lo)
    hi = max(X.hi + 1, Y.hi)
    ranks = {k: X.rank(k) + Y.rank(k) + X.rank(k - 1)
             for k in range(lo, hi + 1)}
    mats = {}
    for k in range(lo, hi + 1):
        m, n = ranks.get(k - 1, 0), ranks.get(k, 0)
        if m == 0 or n == 0:
            continue
        A = exact.zeros(m, n)
        dX = X.boundary_dense(k)
        dY = Y.boundary_dense(k)
        dX1 = X.boundary_dense(k - 1)
        F = f.mat(k - 1)
        xo_r, yo_r = 0, X.rank(k - 1)
        so_r = X.rank(k - 1) + Y.rank(k - 1)
        xo_c, yo_c = 0, X.rank(k)
        so_c = X.rank(k) + Y.rank(k)
        for r in range(X.rank(k - 1)):
            for c in range(X.rank(k)):
                A[xo_r + r][xo_c + c] = dX[r][c]
            for c in range(X.rank(k - 1)):
                if r == c:
                    A[xo_r + r][so_c + c] = 1
        for r in range(Y.rank(k - 1)):
            for c in range(Y.rank(k)):
                A[yo_r + r][yo_c + c] = dY[r][c]
            for c in range(X.rank(k - 1)):
                A[yo_r + r][so_c + c] = -F[r][c]
        for r in range(X.rank(k - 2)):
            for c in range(X.rank(k - 1)):
                A[so_r + r][so_c + c] = -dX1[r][c]
        mats[k] = A
    Z = complex_from_matrices(lo, hi, ranks, mats, check=True)

    def block_map(src, offset_fn):
        mats = {}
        for k in range(src.lo, src.hi + 1):
            n = src.rank(k)
            if n == 0:
                continue
            A = exact.zeros(Z.rank(k), n)
            off = offset_fn(k)
            for c in range(n):
                A[off + c][c] = 1
            mats[k] = A
        return mats

    i = GradedMap(X, Z, 0, block_map(X, lambda k: 0))
    j = GradedMap(Y, Z, 0, block_map(Y, lambda k: X.rank(k)))
    # q(a, b, c) = (f a + b)
    qm = {}
    for k in range(lo, hi + 1):
        if Z.rank(k) == 0 or Y.rank(k) == 0:
            continue
        A = exact.zeros(Y.rank(k), Z.rank(k))
        F = f.mat(k)
        for r in range(Y.rank(k)):
            for c in range(X.rank(k)):
                A[r][c] = F[r][c]
            A[r][X.rank(k) + r] = 1
        qm[k] = A
    q = GradedMap(Z, Y, 0, qm)
    # s(a, b, c) = (0, 0, a), degree +1
    sm = {}
    for k in range(lo, hi + 1):
        if Z.rank(k) == 0 or Z.rank(k + 1) == 0 or X.rank(k) == 0:
            continue
        A = exact.zeros(Z.rank(k + 1), Z.rank(k))
        off = X.rank(k + 1) + Y.rank(k + 1)
        for c in range(X.rank(k)):
            A[off + c][c] = 1
        sm[k] = A
    s = GradedMap(Z, Z, 1, sm)
    if not (is_chain_map(i) and is_chain_map(j) and is_chain_map(q)):
        raise AssertionError("cylinder: structure maps are not chain maps")
    if q.compose(i) != f:
        raise AssertionError("cylinder: q o i != f")
    if q.compose(j) != identity_map(Y):
        raise AssertionError("cylinder: q o j != 1")
    if hom_differential(s) != identity_map(Z) - j.compose(q):
        raise AssertionError("cylinder: d(s) != 1 - j o q")
    return CylinderResult(Z, i, j, q, s)


# ---------------------------------------------------------------------------
# exterior modules and the mod-n reduction
# ---------------------------------------------------------------------------

class ExteriorModule:
    """A complex with a degree +1 operator e satisfying e o e = 0 and
    d o e + e o d = n (the chain-level Z[e]-module structure)."""

    __slots__ = ("complex", "e", "n")

    def __init__(self, complex_, e, n):
        self.complex = complex_
        self.e = e
        self.n = int(n)
        problems = self.check()
        if problems:
            raise AssertionError(f"exterior module invariants fail: {problems}")

    def check(self):
        problems = []
        if self.e.degree != 1:
            problems.append("e must have degree +1")
            return problems
        if not self.e.compose(self.e).is_zero():
            problems.append("e o e != 0")
        de = hom_differential(self.e)
        if de != scalar_map(self.complex, self.n):
            problems.append("d o e + e o d != n")
        return problems


class ModnReduction:
    """t(X) = cone(n * 1_X) with its retraction data and e-operator.

    Fields: ext (the ExteriorModule), eta : X -> t(X) (chain map),
    g : X -> t(X) degree +1, r, p : t(X) -> X graded retractions, and
    pi : t(X) -> X[1], the projection of the split sequence
    0 -> X -> t(X) -> X[1] -> 0.
    """

    __slots__ = ("ext", "eta", "g", "r", "p", "pi", "shifted", "n")

    def __init__(self, ext, eta, g, r, p, pi, shifted, n):
        self.ext = ext
        self.eta = eta
        self.g = g
        self.r = r
        self.p = p
        self.pi = pi
        self.shifted = shifted
        self.n = n

    @property
    def complex(self):
        return self.ext.complex


def reduce_mod_n(X, n):
    """The mod-n reduction t(X), asserting d(eta) = 0, d(g) = n * eta,
    r o eta = 1, p o g = 1 and eta o r + g o p = 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    res = cone_dg(scalar_map(X, n))
    t = res.cone
    eta, g, p = res.i, res.u, res.p
    # r projects onto the unshifted block
    rm = {}
    for k in range(t.lo, t.hi + 1):
        if t.rank(k) == 0 or X.rank(k) == 0:
            continue
        A = exact.zeros(X.rank(k), t.rank(k))
        for r_ in range(X.rank(k)):
            A[r_][r_] = 1
        rm[k] = A
    r = GradedMap(t, X, 0, rm)
    if r.compose(eta) != identity_map(X):
        raise AssertionError("reduction: r o eta != 1")
    if p.compose(g) != identity_map(X):
        raise AssertionError("reduction: p o g != 1")
    if eta.compose(r) + g.compose(p) != identity_map(t):
        raise AssertionError("reduction: eta o r + g o p != 1")
    if not hom_differential(eta).is_zero():
        raise AssertionError("reduction: d(eta) != 0")
    if hom_differential(g) != eta.scale(n):
        raise AssertionError("reduction: d(g) != n * eta")
    e = g.compose(r)
    ext = ExteriorModule(t, e, n)
    return ModnReduction(ext, eta, g, r, p, res.pbar, res.shifted, n)


# ---------------------------------------------------------------------------
# the u/v adjunction identities
# ---------------------------------------------------------------------------

def u_of(red, phi, psi):
    """u(1 (x) phi + e (x) psi) = eta o phi + g o psi.

    phi : Y -> X of degree k and psi of degree k - 1 encode an element of
    (Z[e] (x) Hom)(Y, X); the value is a graded map Y -> t(X) of degree k.
    """
    return red.eta.compose(phi) + red.g.compose(psi)


def v_of(red, a):
    """v(a) = (r o a, p o a): the inverse of u.

    With the sign-free retractions (p o g = +1) fixed by reduce_mod_n, the
    e-component of the inverse is +p o a; u and v are then mutually inverse
    chain isomorphisms, which is the tested identity.
    """
    return red.r.compose(a), red.p.compose(a)


def pair_differential(red, phi, psi):
    """Differential of 1 (x) phi + e (x) psi in Z[e] (x) Hom(Y, X):
    (d phi + n psi, -d psi)."""
    return (hom_differential(phi) + psi.scale(red.n),
            hom_differential(psi).scale(-1))


def random_graded_map(rng, source, target, degree, bound=4):
    mats = {}
    for k in range(source.lo, source.hi + 1):
        m = target.rank(k + degree)
        n = source.rank(k)
        if m and n:
            mats[k] = [[rng.randint(-bound, bound) for _ in range(n)]
                       for _ in range(m)]
    return GradedMap(source, target, degree, mats)


def uv_identities(X, Y, n, trials=100, seed=0):
    """Randomized exact check that u and v are mutually inverse chain maps
    between Hom(Y, t(X)) and (Z[e] (x) Hom)(Y, X)."""
    red = reduce_mod_n(X, n)
    rng = Random(seed)
    t = red.complex
    checked = 0
    for _ in range(trials):
        deg = rng.randint(-2, 3)
        phi = random_graded_map(rng, Y, X, deg)
        psi = random_graded_map(rng, Y, X, deg - 1)
        a = random_graded_map(rng, Y, t, deg)
        # v o u = id
        phi2, psi2 = v_of(red, u_of(red, phi, psi))
        if phi2 != phi or psi2 != psi:
            return {"pass": False, "reason": "v o u != id", "trials": checked}
        # u o v = id
        if u_of(red, *v_of(red, a)) != a:
            return {"pass": False, "reason": "u o v != id", "trials": checked}
        # u is a chain map: u(d(phi, psi)) = d(u(phi, psi))
        dphi, dpsi = pair_differential(red, phi, psi)
        if u_of(red, dphi, dpsi) != hom_differential(u_of(red, phi, psi)):
            return {"pass": False, "reason": "u not a chain map",
                    "trials": checked}
        checked += 1
    return {"pass": True, "trials": checked}


# ---------------------------------------------------------------------------
# extensions over t and order towers
# ---------------------------------------------------------------------------

def extend_over_mod_n(f, target_ext, n=None):
    """Extend a chain map f : K -> E over eta : K -> t(K).

    E must carry an exterior operator (d e + e d = n); the extension is
    fbar = f o r + e o f o p, and the postcondition identities
    fbar o eta = f, fbar o e_{t(K)} = e o fbar are the oracle: the
    construction raises if they fail.  Returns (fbar, reduction of K).
    """
    if n is None:
        n = target_ext.n
    if n != target_ext.n:
        raise ValueError("modulus mismatch")
    if f.target is not target_ext.complex and f.target != target_ext.complex:
        raise ValueError("f must land in the exterior module's complex")
    if not is_chain_map(f):
        raise ValueError("extend_over_mod_n needs a chain map")
    redK = reduce_mod_n(f.source, n)
    fbar = f.compose(redK.r) + target_ext.e.compose(f).compose(redK.p)
    if fbar.compose(redK.eta) != f:
        raise AssertionError("extension: fbar o eta != f")
    if not is_chain_map(fbar):
        raise AssertionError("extension: fbar is not a chain map")
    if fbar.compose(redK.ext.e) != target_ext.e.compose(fbar):
        raise AssertionError("extension: fbar is not e-equivariant")
    return fbar, redK


def cone_exterior(h, ext_source, ext_target):
    """Cone of an e-equivariant chain map between exterior modules,
    with the inherited operator e(b, a) = (e_B b, -e_A a)."""
    if ext_source.n != ext_target.n:
        raise ValueError("modulus mismatch")
    if h.compose(ext_source.e) != ext_target.e.compose(h):
        raise ValueError("cone_exterior needs an e-equivariant map")
    res = cone_dg(h)
    C = res.cone
    A, B = h.source, h.target
    em = {}
    for k in range(C.lo, C.hi + 1):
        m, n_ = C.rank(k + 1), C.rank(k)
        if m == 0 or n_ == 0:
            continue
        E = exact.zeros(m, n_)
        eB = ext_target.e.mat(k)
        for r in range(B.rank(k + 1)):
            for c in range(B.rank(k)):
                E[r][c] = eB[r][c]
        eA = ext_source.e.mat(k - 1)
        for r in range(A.rank(k)):
            for c in range(A.rank(k - 1)):
                E[B.rank(k + 1) + r][B.rank(k) + c] = -eA[r][c]
        em[k] = E
    e = GradedMap(C, C, 1, em)
    return ExteriorModule(C, e, ext_target.n), res


class OrderTower:
    """Chain-level witness ladder for n-order >= k.

    levels[m] is an ExteriorModule; its operator e is the recorded
    homotopy h with d h + h d = n, witnessing n * 1 ~ 0 at every level.
    connecting[m] is the cone inclusion of level m into level m + 1.
    """

    __slots__ = ("n", "levels", "connecting")

    def __init__(self, n, levels, connecting):
        self.n = n
        self.levels = levels
        self.connecting = connecting

    def homotopies(self):
        return [lvl.e for lvl in self.levels]

    def verify(self):
        """Re-check every level's exterior-module invariants."""
        return all(not lvl.check() for lvl in self.levels)


def order_tower(X, n, k, test_maps=None):
    """Build k levels: level 1 is t(X); level m + 1 is the cone of the
    extension over t of a test map into level m (the identity by default),
    with the inherited e-operator.

    Every level's invariant d e + e d = n is asserted on construction;
    this is the chain-level inductive step of the n-order definition.
    """
    if k < 1:
        raise ValueError("tower needs k >= 1 levels")
    red = reduce_mod_n(X, n)
    levels = [red.ext]
    connecting = []
    for m in range(1, k):
        ext = levels[-1]
        if test_maps is not None and m - 1 < len(test_maps):
            f = test_maps[m - 1]
            if f.target is not ext.complex and f.target != ext.complex:
                raise ValueError(f"test map {m} must land in level {m}")
        else:
            f = identity_map(ext.complex)
        fbar, redK = extend_over_mod_n(f, ext, n)
        new_ext, res = cone_exterior(fbar, redK.ext, ext)
        levels.append(new_ext)
        connecting.append(res.i)
    return OrderTower(n, levels, connecting)
