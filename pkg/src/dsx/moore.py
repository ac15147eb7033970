"""The named based Delta-sets (I, S1, S<n>, the extended circle, the mod-n
Moore set M, S2), their comparison morphisms and combinatorial homotopy,
symmetric powers with canonical projections, and coherence verification.

The Moore set is the pushout of the cone inclusion of S1 /\\ S<n> against
S1 /\\ nabla into S2 = S1 /\\ S1; its reduced integral homology is Z/n
concentrated in degree 2, which is certified on construction.  Symmetric
powers are orbit Delta-sets of n-ary smash powers: the symmetric group
permutes factor slots and chart coordinates simultaneously, which preserves
canonical representatives, so orbits are named by their lexicographically
least member and faces are representative-independent (checked cell by
cell, not assumed).
"""

from __future__ import annotations

from itertools import permutations

from .delta import DeltaSet, DeltaMorphism, standard
from .based import (BasedDeltaSet, BasedMorphism, based_pushout,
                    based_quotient, finite_model, basepoint_name)
from .products import (smash, n_ary_smash, n_ary_product, cell_name,
                       cell_data, smash_morphism, smash_morphism_left)
from .moves import ExpansionCertificate, Move
from .homology import (certify_moore, is_homology_iso, induced_map,
                       chain_map_matrices, mapping_cone_complex, homology)


# ---------------------------------------------------------------------------
# basic based Delta-sets
# ---------------------------------------------------------------------------

def interval():
    """I: one non-basepoint edge z with z d_0 = *, z d_1 = v."""
    return BasedDeltaSet({0: ["v"], 1: ["z"]}, {"z": (None, "v")},
                         sort_keys={"v": (0,), "z": (0,)})


def circle():
    """S1: a single non-basepoint 1-simplex with both faces at the basepoint."""
    return BasedDeltaSet({1: ["z"]}, {"z": (None, None)},
                         sort_keys={"z": (0,)})


def sphere2():
    """S2 = S1 /\\ S1."""
    return smash(circle(), circle())


def s_bracket(n):
    """S<n>: vertices e_1..e_{n-1} (e_0 is the basepoint) and edges
    f_0..f_{n-1} with boundary (e_i, e_{i+1}) read modulo n."""
    if n < 2:
        raise ValueError("s_bracket needs n >= 2")
    simplices = {0: [f"e{k}" for k in range(1, n)],
                 1: [f"f{k}" for k in range(n)]}
    faces = {}
    for k in range(n):
        lo = f"e{k}" if k != 0 else None
        hi = f"e{(k + 1) % n}" if (k + 1) % n != 0 else None
        faces[f"f{k}"] = (lo, hi)
    keys = {f"e{k}": (0, k) for k in range(1, n)}
    keys.update({f"f{k}": (1, k) for k in range(n)})
    return BasedDeltaSet(simplices, faces, sort_keys=keys)


def psi(i, n):
    """psi_i : S<n> -> S1, sending f_i to z and every other cell to *."""
    S, C = s_bracket(n), circle()
    i %= n
    mapping = {f"f{k}": ("z" if k == i else None) for k in range(n)}
    mapping.update({f"e{k}": None for k in range(1, n)})
    return BasedMorphism(S, C, mapping)


def nabla(n):
    """nabla : S<n> -> S1, sending every f_k to z."""
    S, C = s_bracket(n), circle()
    mapping = {f"f{k}": "z" for k in range(n)}
    mapping.update({f"e{k}": None for k in range(1, n)})
    return BasedMorphism(S, C, mapping)


def psi_quotient_square(i, n):
    """The pushout square of psi_i: collapsing S<n> - {f_i} yields S1,
    simplexwise.  Returns (quotient, comparison iso onto circle())."""
    S = s_bracket(n)
    i %= n
    collapse = [s for s in S.dim_of if s != f"f{i}"]
    Q = based_quotient(S, collapse)
    comparison = BasedMorphism(Q, circle(), {f"f{i}": "z"})
    return Q, comparison


# ---------------------------------------------------------------------------
# cone inclusion in the based world
# ---------------------------------------------------------------------------

def based_cone(X):
    """(I /\\ X, the monomorphism i_X : X -> I /\\ X).

    i_X sends x to [v, x; chart] over the non-basepoint end of I; the
    smash I /\\ X is weakly contractible (its reduced homology vanishes)."""
    IX = smash(interval(), X)
    mapping = {}
    for d, x in X.all_cells():
        pts = tuple((0, k) for k in range(d + 1))
        mapping[x] = cell_name(("v", x), pts)
    return IX, BasedMorphism(X, IX, mapping)


# ---------------------------------------------------------------------------
# the extended circle and the combinatorial homotopy
# ---------------------------------------------------------------------------

def hat_circle():
    """S1 extended by g, g', c, c' with dc = (*, g, z), dc' = (z, g', *)."""
    simplices = {1: ["z", "g", "g'"], 2: ["c", "c'"]}
    faces = {"z": (None, None), "g": (None, None), "g'": (None, None),
             "c": (None, "g", "z"), "c'": ("z", "g'", None)}
    keys = {"z": (0,), "g": (1,), "g'": (2,), "c": (0,), "c'": (1,)}
    return BasedDeltaSet(simplices, faces, sort_keys=keys)


def hat_circle_expansion_certificate():
    """The inclusion S1 -> S1^ as two elementary expansions, on the finite
    models (explicit basepoint cells up to dimension 2)."""
    hat = finite_model(hat_circle(), up_to=2)
    base_cells = [basepoint_name(0), basepoint_name(1), basepoint_name(2), "z"]
    base = DeltaSet(
        {0: [basepoint_name(0)], 1: [basepoint_name(1), "z"],
         2: [basepoint_name(2)]},
        {basepoint_name(1): (basepoint_name(0), basepoint_name(0)),
         basepoint_name(2): (basepoint_name(1),) * 3,
         "z": (basepoint_name(0), basepoint_name(0))},
        sort_keys={s: hat.sort_key(s) for s in base_cells})
    moves = [
        Move("expand", "c", 1, hat.faces["c"], hat.faces["g"]),
        Move("expand", "c'", 1, hat.faces["c'"], hat.faces["g'"]),
    ]
    return ExpansionCertificate(base, moves, hat)


def circle_segments(n):
    """The unbased 1-dimensional sub-Delta-set S of S<n>: all vertices
    e_0..e_{n-1} (including e_0) and all edges f_0..f_{n-1}."""
    simplices = {0: [f"e{k}" for k in range(n)],
                 1: [f"f{k}" for k in range(n)]}
    faces = {f"f{k}": (f"e{k}", f"e{(k + 1) % n}") for k in range(n)}
    keys = {f"e{k}": (0, k) for k in range(n)}
    keys.update({f"f{k}": (1, k) for k in range(n)})
    return DeltaSet(simplices, faces, sort_keys=keys)


def hat_circle_homotopy(i, n):
    """The combinatorial homotopy H : S (x) Delta[1] -> S1^ between the
    unbased lifts of j psi_i and j psi_{i+1}.

    The generating 2-simplices are A_k = [f_k, Id; phi] and
    B_k = [f_k, Id; phi'], subject to A_k d_1 = B_k d_1 and
    A_k d_2 = B_{k+1} d_0; H sends both A_k and B_k to c for k = i, to c'
    for k = i + 1, and to the basepoint otherwise.  Returns (S1^ based,
    H as a Delta-morphism into the 2-skeleton model, verification record).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    i %= n
    hat = hat_circle()
    hat_skel = finite_model(hat, up_to=2)
    S = circle_segments(n)
    delta1 = standard("simplex", 1)
    SI = n_ary_product([S, delta1])

    phi = ((0, 0), (0, 1), (1, 1))
    phi_prime = ((0, 0), (1, 0), (1, 1))
    edge = delta1.cells(1)[0]

    def a_cell(k):
        return cell_name((f"f{k % n}", edge), phi)

    def b_cell(k):
        return cell_name((f"f{k % n}", edge), phi_prime)

    mapping = {}
    for k in range(n):
        if k == i:
            img = "c"
        elif k == (i + 1) % n:
            img = "c'"
        else:
            img = basepoint_name(2)
        mapping[a_cell(k)] = img
        mapping[b_cell(k)] = img
    # lower cells are determined by face compatibility with any parent
    for d in (1, 0):
        for s in SI.cells(d):
            if s in mapping:
                continue
            for parent in SI.cells(d + 1):
                if parent not in mapping:
                    continue
                for idx, fc in enumerate(SI.faces[parent]):
                    if fc == s:
                        mapping[s] = hat_skel.faces[mapping[parent]][idx]
                        break
                if s in mapping:
                    break
    H = DeltaMorphism(SI, hat_skel, mapping)

    record = {"i": i, "n": n, "valid_morphism": not H.validate()}
    record["boundary_c"] = hat_skel.faces["c"]
    record["boundary_c_prime"] = hat_skel.faces["c'"]
    record["generator_relations"] = all(
        SI.faces[a_cell(k)][1] == SI.faces[b_cell(k)][1]
        and SI.faces[a_cell(k)][2] == SI.faces[b_cell((k + 1) % n)][0]
        for k in range(n))

    # front/back inclusions and the lifted psi maps
    v0, v1 = delta1.cells(0)
    i0 = DeltaMorphism(
        S, SI, {x: cell_name((x, v0), tuple((k, 0) for k in range(d + 1)))
                for d, x in S.all_cells()})
    i1 = DeltaMorphism(
        S, SI, {x: cell_name((x, v1), tuple((k, 0) for k in range(d + 1)))
                for d, x in S.all_cells()})

    def lift_of_psi(idx):
        m = {f"e{k}": basepoint_name(0) for k in range(n)}
        for k in range(n):
            m[f"f{k}"] = "z" if k == idx else basepoint_name(1)
        return m

    record["front_matches_psi_i"] = all(
        mapping[i0.mapping[s]] == lift_of_psi(i)[s] for s in S.dim_of)
    record["back_matches_psi_i_plus_1"] = all(
        mapping[i1.mapping[s]] == lift_of_psi((i + 1) % n)[s]
        for s in S.dim_of)
    cert = hat_circle_expansion_certificate()
    record["circle_inclusion_expansions"] = len(cert)
    record["circle_inclusion_certified"] = cert.verify()
    record["pass"] = all(
        record[k] for k in ("valid_morphism", "generator_relations",
                            "front_matches_psi_i",
                            "back_matches_psi_i_plus_1",
                            "circle_inclusion_certified"))
    return hat, H, record


# ---------------------------------------------------------------------------
# the Moore Delta-set
# ---------------------------------------------------------------------------

def moore_space(n):
    """The mod-n Moore based Delta-set M and its structure maps.

    M is the pushout of the cone inclusion of S1 /\\ S<n> against
    S1 /\\ nabla into S2; reduced integral homology is certified to be Z/n
    in degree 2 and zero elsewhere.  Returns (M, iota : S2 -> M, table).
    """
    if n < 2:
        raise ValueError("moore_space needs n >= 2")
    S1 = circle()
    X = smash(S1, s_bracket(n))
    CX, iX = based_cone(X)
    f = smash_morphism_left(S1, nabla(n))  # S1 /\ S<n> -> S2
    po = based_pushout(iX, f)
    M, iota = po.delta, po.leg_c
    ok, table = certify_moore(M, n, 2)
    if not ok:
        raise AssertionError(f"Moore certification failed: {table}")
    return M, iota, table


# ---------------------------------------------------------------------------
# symmetric powers
# ---------------------------------------------------------------------------

def _orbit_rep(xs, pts, perms):
    best = None
    for sigma in perms:
        nxs = tuple(xs[t] for t in sigma)
        npts = tuple(tuple(p[t] for t in sigma) for p in pts)
        cand = (nxs, npts)
        if best is None or cand < best:
            best = cand
    return best


def orbit_cell_name(rep):
    return "O" + cell_name(*rep)


def symmetric_power_of(X, i, verify=True):
    """The orbit Delta-set X^(/\\ i) / Sigma_i.

    Returns (P, orbit_map, W) where W is the smash power and orbit_map
    sends W-cells to orbit names.  With verify=True the face tuples of all
    members of each orbit are compared after projection: a mismatch would
    mean the action fails to commute with faces and is a hard error.
    """
    if i < 1:
        raise ValueError("power index must be >= 1")
    if i == 1:
        return X, {s: s for s in X.dim_of}, X
    W = n_ary_smash([X] * i)
    perms = list(permutations(range(i)))
    orbit_map = {}
    reps = {}
    for d, s in W.all_cells():
        xs, pts = cell_data(W, s)
        rep = _orbit_rep(xs, pts, perms)
        name = orbit_cell_name(rep)
        orbit_map[s] = name
        if name not in reps:
            reps[name] = (d, rep, s)
    simplices = {}
    faces = {}
    keys = {}
    for name, (d, rep, member) in reps.items():
        simplices.setdefault(d, []).append(name)
        keys[name] = rep
        if d > 0:
            faces[name] = tuple(
                None if f is None else orbit_map[f]
                for f in W.faces[member])
    P = BasedDeltaSet(simplices, faces, sort_keys=keys)
    if verify:
        for d, s in W.all_cells():
            if d == 0:
                continue
            projected = tuple(None if f is None else orbit_map[f]
                              for f in W.faces[s])
            if projected != P.faces[orbit_map[s]]:
                raise AssertionError(
                    f"orbit face depends on the representative at {s!r}")
    return P, orbit_map, W


class PowerSystem:
    """Symmetric powers P^i of a based Delta-set with cached canonical
    projections mu_{i,j} : P^i /\\ P^j -> P^{i+j}."""

    def __init__(self, X):
        self.X = X
        self._powers = {1: X}
        self._orbit_maps = {1: {s: s for s in X.dim_of}}
        self._smash_powers = {1: X}
        self._projections = {}

    def power(self, i):
        if i not in self._powers:
            P, om, W = symmetric_power_of(self.X, i)
            self._powers[i] = P
            self._orbit_maps[i] = om
            self._smash_powers[i] = W
        return self._powers[i]

    def power_rep(self, i, cell):
        """(factor tuple, chart) of the orbit representative of a P^i cell."""
        P = self.power(i)
        if i == 1:
            d = P.dim_of[cell]
            return (cell,), tuple((k,) for k in range(d + 1))
        return P.sort_key(cell)

    def orbit_name(self, i, xs, pts):
        if i == 1:
            return xs[0]
        rep = _orbit_rep(xs, pts, list(permutations(range(i))))
        return orbit_cell_name(rep)

    def projection(self, i, j):
        """mu_{i,j}, the canonical projection P^i /\\ P^j -> P^{i+j}."""
        key = (i, j)
        if key in self._projections:
            return self._projections[key]
        Pi, Pj = self.power(i), self.power(j)
        target = self.power(i + j)
        if (i, j) == (1, 1):
            source = self._smash_powers[2]
        else:
            source = smash(Pi, Pj)
        mapping = {}
        for d, s in source.all_cells():
            (a, b), psi = cell_data(source, s)
            ra_xs, ra_pts = self.power_rep(i, a)
            rb_xs, rb_pts = self.power_rep(j, b)
            xs = ra_xs + rb_xs
            pts = tuple(ra_pts[u] + rb_pts[v] for (u, v) in psi)
            mapping[s] = self.orbit_name(i + j, xs, pts)
        mu = BasedMorphism(source, target, mapping)
        self._projections[key] = mu
        return mu

    def assoc_square_commutes(self, i, j, k):
        """mu_{i+j,k} o (mu_{i,j} /\\ P^k) == mu_{i,j+k} o (P^i /\\ mu_{j,k}),
        compared cellwise on (P^i /\\ P^j) /\\ P^k.

        The left route runs through the actual morphisms; the right route
        regroups to the flattened (i+j+k)-ary data and projects (orbits of
        the nested projection agree with the flat orbit because
        Sigma_{j+k} embeds in Sigma_{i+j+k})."""
        mu_ij = self.projection(i, j)
        mu_ij_k = self.projection(i + j, k)
        Pk = self.power(k)
        left1 = smash_morphism(mu_ij, Pk)       # (Pi^Pj)^Pk -> P{i+j}^Pk
        src = left1.source
        for d, s in src.all_cells():
            (ab, c), psi = cell_data(src, s)
            t1 = left1.mapping[s]
            v1 = None if t1 is None else mu_ij_k.mapping[t1]
            (a, b), phi = cell_data(mu_ij.source, ab)
            ra = self.power_rep(i, a)
            rb = self.power_rep(j, b)
            rc = self.power_rep(k, c)
            xs = ra[0] + rb[0] + rc[0]
            pts = tuple(ra[1][phi[u][0]] + rb[1][phi[u][1]] + rc[1][v]
                        for (u, v) in psi)
            v2 = self.orbit_name(i + j + k, xs, pts)
            if v1 != v2:
                return False
        return True


# ---------------------------------------------------------------------------
# Moore systems
# ---------------------------------------------------------------------------

class MooreSystem:
    """The Moore Delta-set M at modulus p with its symmetric powers,
    canonical projections, and coherence verdicts."""

    def __init__(self, p):
        if p < 2:
            raise ValueError("modulus must be >= 2")
        self.p = p
        self.M, self.iota, self.table = moore_space(p)
        self.S2 = self.iota.source
        self.powers = PowerSystem(self.M)

    def power(self, i):
        return self.powers.power(i)

    def projection(self, i, j):
        return self.powers.projection(i, j)

    def coherence_map(self, i):
        """The composite S2 /\\ P^{i-1} -> M /\\ P^{i-1} -> P^i."""
        if i < 2:
            raise ValueError("coherence needs i >= 2")
        P = self.power(i - 1)
        mu = self.projection(1, i - 1)
        src = smash(self.S2, P)
        mapping = {}
        for d, s in src.all_cells():
            (x, y), pts = cell_data(src, s)
            mx = self.iota.mapping[x]
            mid = cell_name((mx, y), pts)
            mapping[s] = mu.mapping[mid]
        return BasedMorphism(src, self.power(i), mapping)

    def coherence_composite(self, i, coeff="Z", p=None):
        """(map, verdict): whether the coherence composite induces an
        isomorphism on reduced homology in every degree."""
        f = self.coherence_map(i)
        verdict = is_homology_iso(f, coeff=coeff, p=p)
        return f, verdict

    def free_module_report(self, K, k, field_only=False):
        """Coherence of the free module on K: for 2 <= j <= k, check that
        S2 /\\ P^{j-1} /\\ K -> P^j /\\ K is a homology isomorphism.

        Verification is integral via mapping-cone acyclicity when feasible;
        with field_only=True (or for large instances) the fields
        F2, F3, F5 and Q are used instead.  Returns a CoherenceReport.
        """
        if not 1 <= k <= self.p - 1:
            raise ValueError("coherence level out of range")
        levels = {}
        for j in range(2, k + 1):
            g = self.coherence_map(j)
            gK = smash_morphism(g, K)
            CS, CT, mats = chain_map_matrices(gK)
            cone = mapping_cone_complex(CS, CT, mats)
            big = cone.total_rank() > 300000
            entry = {"j": j, "source_cells": gK.source.n_cells(),
                     "target_cells": gK.target.n_cells()}
            if field_only or big:
                fields = {}
                red = cone.morse_reduced()
                for label, pp in (("F2", 2), ("F3", 3), ("F5", 5), ("Q", None)):
                    if pp is None:
                        groups = homology(red, coeff="Q")
                    else:
                        groups = homology(red, coeff="F", p=pp)
                    fields[label] = all(g_.is_trivial()
                                        for g_ in groups.values())
                entry["method"] = "fields"
                entry["field_verdicts"] = fields
                entry["iso"] = all(fields.values())
            else:
                groups = homology(cone, coeff="Z")
                entry["method"] = "integral-cone"
                entry["iso"] = all(g_.is_trivial() for g_ in groups.values())
            if gK.source.n_cells() + gK.target.n_cells() <= 800:
                # dense per-degree bases: only worthwhile on small instances
                mats_small = induced_map(gK, coeff="F", p=self.p)
                entry["induced_matrices_mod_p"] = {
                    deg: m["matrix"] for deg, m in mats_small.items()}
            levels[j] = entry
        return CoherenceReport(self.p, k, levels)


class CoherenceReport:
    """Per-level verdicts for the coherence composites of a free module."""

    def __init__(self, p, k, levels):
        self.p = p
        self.k = k
        self.levels = levels

    def all_pass(self):
        return all(entry["iso"] for entry in self.levels.values())

    def as_dict(self):
        return {"p": self.p, "k": self.k,
                "levels": {str(j): e for j, e in self.levels.items()}}
