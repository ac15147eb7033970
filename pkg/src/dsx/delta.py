"""Finite semisimplicial sets (Delta-sets): representation and validation.

A Delta-set is stored by its simplex identifiers per dimension together with
a face table.  Face maps must satisfy the semisimplicial identity

    face(face(x, j), i) == face(face(x, i), j - 1)   for i < j.

Objects are immutable after construction; every operation returns new
values.  Constructors check referential integrity (faces exist and have the
right dimension, identifiers are unique) and raise ValueError on garbage;
`validate` reports semisimplicial-identity violations as diagnostics without
raising, so deliberately broken face tables can be built and inspected.
"""

from __future__ import annotations

from itertools import combinations


def safe_key(k):
    """Total order on nested int/str/tuple sort keys across mixed shapes."""
    if isinstance(k, tuple):
        return (2, tuple(safe_key(x) for x in k))
    if isinstance(k, bool) or isinstance(k, int):
        return (0, (int(k),))
    return (1, (str(k),))


class DeltaSet:
    """Finite Delta-set: per-dimension simplex lists plus a face table.

    faces[name] is the tuple (x d_0, ..., x d_n) for an n-simplex x; the
    face entries of vertices are empty tuples.
    """

    __slots__ = ("simplices", "faces", "dim_of", "top_dim", "_sort_keys")

    def __init__(self, simplices, faces, sort_keys=None):
        """simplices: dict dim -> iterable of names; faces: name -> tuple.

        sort_keys optionally maps names to orderable keys encoding the
        canonical construction data; simplex lists are sorted by them
        (by name otherwise) so that repeated runs are bit-identical.
        """
        keyed = dict(sort_keys) if sort_keys else {}
        self._sort_keys = keyed
        key = lambda s: safe_key(keyed.get(s, (s,)))
        self.simplices = {}
        self.dim_of = {}
        for d in sorted(simplices):
            names = sorted(simplices[d], key=key)
            if not names:
                continue
            self.simplices[d] = tuple(names)
            for s in names:
                if s in self.dim_of:
                    raise ValueError(f"duplicate simplex identifier {s!r}")
                self.dim_of[s] = d
        self.top_dim = max(self.simplices) if self.simplices else -1
        self.faces = {}
        for s, d in self.dim_of.items():
            fs = tuple(faces.get(s, ()))
            if len(fs) != (d + 1 if d > 0 else 0) and d > 0:
                raise ValueError(f"simplex {s!r} of dim {d} has {len(fs)} faces")
            for f in fs:
                if self.dim_of.get(f) != d - 1:
                    raise ValueError(
                        f"face {f!r} of {s!r} is not a simplex of dim {d - 1}")
            self.faces[s] = fs if d > 0 else ()

    # -- basic queries ----------------------------------------------------

    def cells(self, d):
        return self.simplices.get(d, ())

    def all_cells(self):
        for d in sorted(self.simplices):
            for s in self.simplices[d]:
                yield d, s

    def n_cells(self, d=None):
        if d is not None:
            return len(self.simplices.get(d, ()))
        return sum(len(v) for v in self.simplices.values())

    def counts(self):
        """Simplex counts per dimension 0..top_dim."""
        return tuple(len(self.simplices.get(d, ()))
                     for d in range(self.top_dim + 1))

    def face(self, s, i):
        return self.faces[s][i]

    def iterated_face(self, s, missing):
        """Apply the injective monotone map skipping `missing` (a set of
        indices): faces are taken in decreasing index order."""
        for i in sorted(missing, reverse=True):
            s = self.faces[s][i]
        return s

    def sort_key(self, s):
        return self._sort_keys.get(s, (s,))

    def euler_characteristic(self):
        return sum((-1) ** d * len(v) for d, v in self.simplices.items())

    def __eq__(self, other):
        if not isinstance(other, DeltaSet):
            return NotImplemented
        return self.simplices == other.simplices and self.faces == other.faces

    def __hash__(self):
        return hash((tuple(sorted(self.simplices.items())),))

    def __repr__(self):
        return f"DeltaSet(counts={self.counts()})"


EMPTY = DeltaSet({}, {})


def validate(K):
    """Diagnostic report for the semisimplicial identity.

    Returns a list of violation records; empty iff K is a valid Delta-set.
    Referential integrity is already enforced by the constructor.
    """
    report = []
    for d, x in K.all_cells():
        if d < 2:
            continue
        fx = K.faces[x]
        for i, j in combinations(range(d + 1), 2):
            left = K.faces[fx[j]][i]
            right = K.faces[fx[i]][j - 1]
            if left != right:
                report.append({
                    "simplex": x, "i": i, "j": j,
                    "face_ji": left, "face_ij1": right,
                })
    return report


def is_valid(K):
    return not validate(K)


# ---------------------------------------------------------------------------
# standard complexes
# ---------------------------------------------------------------------------

def _tuple_name(t):
    return ",".join(str(v) for v in t)


def standard(kind, n, i=None):
    """Delta[n], its boundary, or the horn missing face i.

    Simplices of Delta[n] are the injective monotone maps [k] -> [n],
    identified with their image tuples; there are C(n+1, k+1) of them in
    dimension k.  The boundary omits the identity; the horn additionally
    omits d_i (the codimension-1 face skipping vertex i).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if kind not in ("simplex", "boundary", "horn"):
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "horn":
        if i is None or not 0 <= i <= n:
            raise ValueError(f"horn index {i!r} out of range for n={n}")
    verts = tuple(range(n + 1))
    excluded = set()
    if kind in ("boundary", "horn"):
        excluded.add(verts)
    if kind == "horn":
        excluded.add(tuple(v for v in verts if v != i))
    simplices = {}
    faces = {}
    keys = {}
    for k in range(n + 1):
        for sub in combinations(verts, k + 1):
            if sub in excluded:
                continue
            name = _tuple_name(sub)
            simplices.setdefault(k, []).append(name)
            keys[name] = sub
            if k > 0:
                faces[name] = tuple(
                    _tuple_name(sub[:j] + sub[j + 1:]) for j in range(k + 1))
    return DeltaSet(simplices, faces, sort_keys=keys)


def cycle_graph(n):
    """The n-gon: n vertices v0..v_{n-1}, n edges with boundary
    (v_{k+1}, v_k), indices mod n.  Realizes to a circle for n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    simplices = {0: [f"v{k}" for k in range(n)],
                 1: [f"w{k}" for k in range(n)]}
    faces = {f"w{k}": (f"v{(k + 1) % n}", f"v{k}") for k in range(n)}
    keys = {f"v{k}": (0, k) for k in range(n)}
    keys.update({f"w{k}": (1, k) for k in range(n)})
    return DeltaSet(simplices, faces, sort_keys=keys)


def from_simplicial_complex(maximal):
    """Delta-set of an abstract simplicial complex given by its simplices
    (iterables of comparable vertices); all subsets are filled in.  Face
    order follows sorted vertices, so the identity holds automatically."""
    closure = set()
    for s in maximal:
        s = tuple(sorted(set(s)))
        for k in range(1, len(s) + 1):
            closure.update(combinations(s, k))
    simplices = {}
    faces = {}
    keys = {}
    for s in closure:
        name = _tuple_name(s)
        simplices.setdefault(len(s) - 1, []).append(name)
        keys[name] = s
        if len(s) > 1:
            faces[name] = tuple(
                _tuple_name(s[:j] + s[j + 1:]) for j in range(len(s)))
    return DeltaSet(simplices, faces, sort_keys=keys)


# ---------------------------------------------------------------------------
# sub-Delta-sets and skeleta
# ---------------------------------------------------------------------------

class SubDeltaSet:
    """A face-closed subset of a parent Delta-set's simplices."""

    __slots__ = ("parent", "members")

    def __init__(self, parent, members):
        members = frozenset(members)
        for s in members:
            if s not in parent.dim_of:
                raise ValueError(f"{s!r} is not a simplex of the parent")
            for f in parent.faces[s]:
                if f not in members:
                    raise ValueError(
                        f"members not face-closed: {s!r} has face {f!r} outside")
        self.parent = parent
        self.members = members

    def as_delta_set(self):
        simplices = {}
        faces = {}
        keys = {}
        for s in self.members:
            d = self.parent.dim_of[s]
            simplices.setdefault(d, []).append(s)
            faces[s] = self.parent.faces[s]
            keys[s] = self.parent.sort_key(s)
        return DeltaSet(simplices, faces, sort_keys=keys)

    def __contains__(self, s):
        return s in self.members

    def __len__(self):
        return len(self.members)


def skeleton(K, m):
    """The m-skeleton as a SubDeltaSet (empty for m < 0)."""
    members = [s for s, d in K.dim_of.items() if d <= m]
    return SubDeltaSet(K, members)


def sub_complex(K, members):
    return SubDeltaSet(K, members)


# ---------------------------------------------------------------------------
# morphisms
# ---------------------------------------------------------------------------

class DeltaMorphism:
    """Dimension-preserving simplex map commuting with all faces."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source, target, mapping, check=True):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if check:
            problems = self.validate()
            if problems:
                raise ValueError(f"invalid morphism: {problems[:3]}")

    def validate(self):
        problems = []
        for d, s in self.source.all_cells():
            t = self.mapping.get(s)
            if t is None:
                problems.append(f"no image for {s!r}")
                continue
            if self.target.dim_of.get(t) != d:
                problems.append(f"image of {s!r} has wrong dimension")
                continue
            for i in range(d + 1) if d else ():
                if self.mapping.get(self.source.faces[s][i]) != \
                        self.target.faces[t][i]:
                    problems.append(f"face {i} of {s!r} does not commute")
        return problems

    def __call__(self, s):
        return self.mapping[s]

    def compose(self, other):
        """self o other (other applied first)."""
        if other.target is not self.source and other.target != self.source:
            raise ValueError("composition mismatch")
        return DeltaMorphism(
            other.source, self.target,
            {s: self.mapping[t] for s, t in other.mapping.items()},
            check=False)

    def is_injective(self):
        for d in self.source.simplices:
            imgs = [self.mapping[s] for s in self.source.simplices[d]]
            if len(set(imgs)) != len(imgs):
                return False
        return True

    def is_isomorphism(self):
        if not self.is_injective():
            return False
        for d in set(self.source.simplices) | set(self.target.simplices):
            if len(self.source.cells(d)) != len(self.target.cells(d)):
                return False
        return not self.validate()


def identity_morphism(K):
    return DeltaMorphism(K, K, {s: s for s in K.dim_of}, check=False)


def inclusion_morphism(sub, ambient=None):
    """Inclusion of a SubDeltaSet (as a standalone Delta-set) into its
    parent, or of one Delta-set into a larger one containing its names."""
    if isinstance(sub, SubDeltaSet):
        K = sub.as_delta_set()
        return DeltaMorphism(K, sub.parent, {s: s for s in K.dim_of},
                             check=False)
    return DeltaMorphism(sub, ambient, {s: s for s in sub.dim_of})


# ---------------------------------------------------------------------------
# pushouts
# ---------------------------------------------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent
        root = x
        while p.setdefault(root, root) != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


class PushoutResult:
    """Pushout of B <-j- A -f-> C along a monomorphism j.

    Attributes: delta (the pushout Delta-set), leg_b : B -> P,
    leg_c : C -> P (always injective).  `induced(u, v)` produces the unique
    morphism P -> T given a test cocone u : B -> T, v : C -> T.
    """

    __slots__ = ("delta", "leg_b", "leg_c")

    def __init__(self, delta, leg_b, leg_c):
        self.delta = delta
        self.leg_b = leg_b
        self.leg_c = leg_c

    def induced(self, u, v):
        mapping = {}
        for b, pb in self.leg_b.mapping.items():
            t = u.mapping[b]
            if mapping.setdefault(pb, t) != t:
                raise ValueError(f"cocone not compatible at {pb!r}")
        for c, pc in self.leg_c.mapping.items():
            t = v.mapping[c]
            if mapping.setdefault(pc, t) != t:
                raise ValueError(f"cocone not compatible at {pc!r}")
        return DeltaMorphism(self.delta, u.target, mapping)


def pushout(j, f):
    """Set-level pushout in each dimension with induced faces.

    j must be injective; j and f share their source.  Computed by
    union-find on the disjoint union of the simplex sets of j.target and
    f.target; class representatives prefer the f.target (C-side) name, so
    the leg opposite j is injective.
    """
    if j.source is not f.source and j.source != f.source:
        raise ValueError("pushout legs must share their source")
    if not j.is_injective():
        raise ValueError("pushout requires the first leg to be injective")
    B, C = j.target, f.target
    uf = _UnionFind()
    for a in j.source.dim_of:
        uf.union(("B", j.mapping[a]), ("C", f.mapping[a]))

    class_name = {}
    class_key = {}
    for s in C.dim_of:
        root = uf.find(("C", s))
        class_name[root] = s
        class_key[root] = (0, C.sort_key(s))
    for s in B.dim_of:
        root = uf.find(("B", s))
        if root not in class_name:
            # B-only classes are singletons (merges always pass through C);
            # disambiguate against C-side names if needed.
            name = s
            while name in C.dim_of:
                name = "B:" + name
            class_name[root] = name
            class_key[root] = (1, B.sort_key(s))

    def rep(side, s):
        return class_name[uf.find((side, s))]

    simplices = {}
    faces = {}
    keys = {}
    for side, K in (("C", C), ("B", B)):
        for d, s in K.all_cells():
            name = rep(side, s)
            if name in keys:
                continue
            simplices.setdefault(d, []).append(name)
            keys[name] = class_key[uf.find((side, s))]
            faces[name] = tuple(rep(side, fc) for fc in K.faces[s])
    P = DeltaSet(simplices, faces, sort_keys=keys)
    leg_b = DeltaMorphism(B, P, {s: rep("B", s) for s in B.dim_of},
                          check=False)
    leg_c = DeltaMorphism(C, P, {s: rep("C", s) for s in C.dim_of},
                          check=False)
    return PushoutResult(P, leg_b, leg_c)


def disjoint_union(K, L, tags=("L:", "R:")):
    """Coproduct with tagged names (tags avoid identifier clashes)."""
    simplices = {}
    faces = {}
    keys = {}
    for tag, X, side in ((tags[0], K, 0), (tags[1], L, 1)):
        for d, s in X.all_cells():
            name = tag + s
            simplices.setdefault(d, []).append(name)
            faces[name] = tuple(tag + f for f in X.faces[s])
            keys[name] = (side, X.sort_key(s))
    return DeltaSet(simplices, faces, sort_keys=keys)
