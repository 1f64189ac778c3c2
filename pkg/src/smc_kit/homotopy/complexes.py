"""Bounded complexes of indecomposable projectives and their chain maps.

A complex stores, per degree, the ordered multiset of projective indices
(= vertices) and a differential matrix whose (t, s) entry is an algebra
element of e_{j_t} A e_{i_s}, acting on e_{i_s}A by left multiplication.
Sign conventions, fixed once:

* shift by one negates the differential: d_{X[1]} = -d_X;
* the cone of f: X -> Y has degree-k term X^{k+1} (+) Y^k and differential
  [[-d_X, 0], [f, d_Y]].

Minimal representatives come from Gaussian cancellation of unit entries
(possible because every corner e_i A e_i is local), which is what makes
Krull-Schmidt comparisons computable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .. import exactla as la
from ..algebra import Algebra, Vec
from ..config import InputError
from ..exactla import Mat

Entries = List[List[Vec]]  # rows = target summands, cols = source summands


def ent_zeros(A: Algebra, m: int, n: int) -> Entries:
    z = A.zero_vec()
    return [[z] * n for _ in range(m)]


def ent_matmul(A: Algebra, left: Entries, right: Entries) -> Entries:
    """Entry matrix of the composite map 'right first, then left'."""
    m = len(left)
    k = len(left[0]) if left else 0
    n = len(right[0]) if right else 0
    if m and len(right) != k:
        raise InputError("entry matmul shape mismatch")
    out = ent_zeros(A, m, n)
    for t in range(m):
        for s in range(n):
            acc = A.zero_vec()
            for u in range(k):
                x, y = left[t][u], right[u][s]
                if A.is_zero_vec(x) or A.is_zero_vec(y):
                    continue
                acc = A.add_vec(acc, A.mul_vec(x, y))
            out[t][s] = acc
    return out


def ent_add(A: Algebra, x: Entries, y: Entries) -> Entries:
    return [[A.add_vec(a, b) for a, b in zip(r, s)] for r, s in zip(x, y)]


def ent_sub(A: Algebra, x: Entries, y: Entries) -> Entries:
    return [[A.sub_vec(a, b) for a, b in zip(r, s)] for r, s in zip(x, y)]


def ent_neg(A: Algebra, x: Entries) -> Entries:
    return [[A.neg_vec(a) for a in r] for r in x]


def ent_scale(A: Algebra, c, x: Entries) -> Entries:
    return [[A.scale_vec(c, a) for a in r] for r in x]


def ent_is_zero(A: Algebra, x: Entries) -> bool:
    return all(A.is_zero_vec(a) for r in x for a in r)


def ent_identity(A: Algebra, verts: Sequence[int]) -> Entries:
    n = len(verts)
    out = ent_zeros(A, n, n)
    for i, v in enumerate(verts):
        out[i][i] = A.basis_vec(v)
    return out


class ProjComplex:
    """Bounded complex of projectives P_i = e_i A over a fixed algebra."""

    def __init__(self, algebra: Algebra, terms: Dict[int, Sequence[int]],
                 diffs: Optional[Dict[int, Entries]] = None, validate: bool = True):
        self.algebra = algebra
        self.terms: Dict[int, Tuple[int, ...]] = {
            k: tuple(v) for k, v in terms.items() if len(v) > 0}
        diffs = diffs or {}
        self.diffs: Dict[int, Entries] = {}
        for k in self.terms:
            if k + 1 in self.terms:
                d = diffs.get(k)
                if d is None:
                    d = ent_zeros(algebra, len(self.terms[k + 1]), len(self.terms[k]))
                self.diffs[k] = [[tuple(e) for e in row] for row in d]
        self._lrow_cache: Dict[Tuple[int, int, int], Mat] = {}
        self._shift_cache: Dict[int, "ProjComplex"] = {}
        self._minimal_cache = None
        self._module_cache = None
        if validate:
            self._validate()

    def _validate(self):
        A = self.algebra
        for k, d in self.diffs.items():
            src, tgt = self.terms[k], self.terms[k + 1]
            if len(d) != len(tgt) or any(len(row) != len(src) for row in d):
                raise InputError(f"differential at degree {k} has wrong shape")
            for t, row in enumerate(d):
                for s, e in enumerate(row):
                    corner = set(A.corner_indices(tgt[t], src[s]))
                    if any(c != A.field.zero and i not in corner
                           for i, c in enumerate(e)):
                        raise InputError(
                            f"entry ({t},{s}) at degree {k} is not in "
                            f"e_{tgt[t]} A e_{src[s]}")
        for k in self.diffs:
            if k + 1 in self.diffs:
                sq = ent_matmul(A, self.diffs[k + 1], self.diffs[k])
                if not ent_is_zero(A, sq):
                    raise InputError(f"d^2 != 0 between degrees {k} and {k + 2}")

    # -- structure -----------------------------------------------------------

    @property
    def support(self) -> Optional[Tuple[int, int]]:
        if not self.terms:
            return None
        ks = self.terms.keys()
        return (min(ks), max(ks))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> List[int]:
        return sorted(self.terms)

    def term(self, k: int) -> Tuple[int, ...]:
        return self.terms.get(k, ())

    def diff(self, k: int) -> Optional[Entries]:
        return self.diffs.get(k)

    def total_terms(self) -> int:
        return sum(len(v) for v in self.terms.values())

    def term_profile(self) -> Dict[int, Tuple[int, ...]]:
        """Degree -> sorted vertex multiset; the Krull-Schmidt fingerprint
        once the complex is minimal."""
        return {k: tuple(sorted(v)) for k, v in self.terms.items()}

    def euler_class(self) -> Tuple[int, ...]:
        """Alternating sum of term multiplicities per vertex (integers)."""
        out = [0] * self.algebra.nvert
        for k, verts in self.terms.items():
            sgn = 1 if k % 2 == 0 else -1
            for v in verts:
                out[v] += sgn
        return tuple(out)

    def is_minimal(self) -> bool:
        A = self.algebra
        return all(A.is_radical_vec(e) for d in self.diffs.values()
                   for row in d for e in row)

    def same_shape(self, other: "ProjComplex") -> bool:
        return (self.algebra is other.algebra and self.terms == other.terms
                and all(self.diffs[k] == other.diffs[k] for k in self.diffs)
                and self.diffs.keys() == other.diffs.keys())

    def shift(self, n: int) -> "ProjComplex":
        """Degrees translated by -n; differential picks up (-1)^n."""
        if n == 0:
            return self
        if n in self._shift_cache:
            return self._shift_cache[n]
        A = self.algebra
        terms = {k - n: v for k, v in self.terms.items()}
        sign_flip = n % 2 == 1
        diffs = {}
        for k, d in self.diffs.items():
            diffs[k - n] = ent_neg(A, d) if sign_flip else d
        out = ProjComplex(A, terms, diffs, validate=False)
        self._shift_cache[n] = out
        return out

    # -- realization helpers (used by hom computations) ------------------------

    def entry_lrow(self, k: int, t: int, s: int) -> Mat:
        """Row-convention left-multiplication matrix of the (t,s) entry of d^k."""
        key = (k, t, s)
        if key not in self._lrow_cache:
            self._lrow_cache[key] = self.algebra.lrow(self.diffs[k][t][s])
        return self._lrow_cache[key]

    def __repr__(self):
        if self.is_zero():
            return "ProjComplex(0)"
        parts = [f"{k}:{list(v)}" for k, v in sorted(self.terms.items())]
        return f"ProjComplex({', '.join(parts)})"


def zero_complex(A: Algebra) -> ProjComplex:
    return ProjComplex(A, {}, {}, validate=False)


def stalk(A: Algebra, vertex: int, degree: int = 0) -> ProjComplex:
    return ProjComplex(A, {degree: (vertex,)}, validate=False)


def shift(X: ProjComplex, n: int) -> ProjComplex:
    return X.shift(n)


class ChainMap:
    """Degreewise map of complexes with entries in the hom corners."""

    def __init__(self, source: ProjComplex, target: ProjComplex,
                 comps: Dict[int, Entries], validate: bool = True):
        self.source = source
        self.target = target
        self.comps: Dict[int, Entries] = {}
        A = source.algebra
        for k, m in comps.items():
            if source.term(k) and target.term(k) and not ent_is_zero(A, m):
                self.comps[k] = [[tuple(e) for e in row] for row in m]
        if validate:
            self._validate()

    def _validate(self):
        X, Y, A = self.source, self.target, self.source.algebra
        if Y.algebra is not A:
            raise InputError("chain map between different algebras")
        for k, m in self.comps.items():
            if len(m) != len(Y.term(k)) or any(len(r) != len(X.term(k)) for r in m):
                raise InputError(f"component at degree {k} has wrong shape")
        for k in set(X.terms) | set(Y.terms):
            lhs = None  # d_Y^k f^k
            if k in self.comps and Y.diff(k) is not None:
                lhs = ent_matmul(A, Y.diff(k), self.comps[k])
            rhs = None  # f^{k+1} d_X^k
            if k + 1 in self.comps and X.diff(k) is not None:
                rhs = ent_matmul(A, self.comps[k + 1], X.diff(k))
            if lhs is None and rhs is None:
                continue
            shape = (len(Y.term(k + 1)), len(X.term(k)))
            if shape[0] == 0 or shape[1] == 0:
                continue
            lhs = lhs if lhs is not None else ent_zeros(A, *shape)
            rhs = rhs if rhs is not None else ent_zeros(A, *shape)
            if not ent_is_zero(A, ent_sub(A, lhs, rhs)):
                raise InputError(f"chain map does not commute at degree {k}")

    def component(self, k: int) -> Entries:
        if k in self.comps:
            return self.comps[k]
        return ent_zeros(self.source.algebra, len(self.target.term(k)),
                         len(self.source.term(k)))

    def is_zero(self) -> bool:
        return not self.comps

    def __add__(self, other: "ChainMap") -> "ChainMap":
        A = self.source.algebra
        comps = dict(self.comps)
        for k, m in other.comps.items():
            comps[k] = ent_add(A, self.component(k), m) if k in comps else m
        return ChainMap(self.source, self.target, comps, validate=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return self + (-other)

    def __neg__(self) -> "ChainMap":
        A = self.source.algebra
        return ChainMap(self.source, self.target,
                        {k: ent_neg(A, m) for k, m in self.comps.items()},
                        validate=False)

    def scale(self, c) -> "ChainMap":
        A = self.source.algebra
        return ChainMap(self.source, self.target,
                        {k: ent_scale(A, c, m) for k, m in self.comps.items()},
                        validate=False)

    def shift(self, n: int) -> "ChainMap":
        return ChainMap(self.source.shift(n), self.target.shift(n),
                        {k - n: m for k, m in self.comps.items()}, validate=False)

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def identity_map(X: ProjComplex) -> ChainMap:
    A = X.algebra
    comps = {k: ent_identity(A, v) for k, v in X.terms.items()}
    return ChainMap(X, X, comps, validate=False)


def compose(f: ChainMap, g: ChainMap) -> ChainMap:
    """f then g (defined when target(f) = source(g) up to shape)."""
    if not f.target.same_shape(g.source):
        raise InputError("compose: target of f does not match source of g")
    A = f.source.algebra
    comps = {}
    for k in set(f.comps) & set(g.comps):
        comps[k] = ent_matmul(A, g.comps[k], f.comps[k])
    return ChainMap(f.source, g.target, comps, validate=False)


@dataclass
class Triangle:
    """x --u--> y --v--> z --w--> x[1]; z is the cone of u or certified so."""

    x: ProjComplex
    y: ProjComplex
    z: ProjComplex
    u: ChainMap
    v: ChainMap
    w: ChainMap
    certificate: str = "cone"


def cone(f: ChainMap) -> Tuple[ProjComplex, Triangle]:
    """Mapping cone with its standard triangle X -> Y -> C -> X[1]."""
    X, Y = f.source, f.target
    A = X.algebra
    terms: Dict[int, List[int]] = {}
    for k in set(x - 1 for x in X.terms) | set(Y.terms):
        verts = list(X.term(k + 1)) + list(Y.term(k))
        if verts:
            terms[k] = verts
    diffs: Dict[int, Entries] = {}
    for k in terms:
        if k + 1 not in terms:
            continue
        nx, ny = len(X.term(k + 1)), len(Y.term(k))
        mx, my = len(X.term(k + 2)), len(Y.term(k + 1))
        d = ent_zeros(A, mx + my, nx + ny)
        dX = X.diff(k + 1)
        if dX is not None:
            for t in range(mx):
                for s in range(nx):
                    d[t][s] = A.neg_vec(dX[t][s])
        fc = f.comps.get(k + 1)
        if fc is not None:
            for t in range(my):
                for s in range(nx):
                    d[mx + t][s] = fc[t][s]
        dY = Y.diff(k)
        if dY is not None:
            for t in range(my):
                for s in range(ny):
                    d[mx + t][nx + s] = dY[t][s]
        diffs[k] = d
    C = ProjComplex(A, terms, diffs, validate=False)
    # inclusion Y -> C and projection C -> X[1]
    v_comps = {}
    for k in Y.terms:
        if k not in C.terms:
            continue
        nx = len(X.term(k + 1))
        m = ent_zeros(A, len(C.term(k)), len(Y.term(k)))
        for i, vert in enumerate(Y.term(k)):
            m[nx + i][i] = A.basis_vec(vert)
        v_comps[k] = m
    X1 = X.shift(1)
    w_comps = {}
    for k in C.terms:
        if not X1.term(k):
            continue
        m = ent_zeros(A, len(X1.term(k)), len(C.term(k)))
        for i, vert in enumerate(X1.term(k)):
            m[i][i] = A.basis_vec(vert)
        w_comps[k] = m
    v = ChainMap(Y, C, v_comps, validate=False)
    w = ChainMap(C, X1, w_comps, validate=False)
    return C, Triangle(X, Y, C, f, v, w, certificate="cone")


def cocone(f: ChainMap) -> Tuple[ProjComplex, ChainMap, Triangle]:
    """C with triangle C -> X --f--> Y -> C[1]; returns (C, C -> X, triangle)."""
    X, Y = f.source, f.target
    A = X.algebra
    C0, tri = cone(f)
    C = C0.shift(-1)
    p_comps = {}
    for k in C.terms:
        if not X.term(k):
            continue
        m = ent_zeros(A, len(X.term(k)), len(C.term(k)))
        for i, vert in enumerate(X.term(k)):
            m[i][i] = A.basis_vec(vert)
        p_comps[k] = m
    p = ChainMap(C, X, p_comps, validate=False)
    third = ChainMap(Y, C.shift(1), tri.v.comps, validate=False)
    return C, p, Triangle(C, X, Y, p, f, third, certificate="cone-rotation")


def direct_sum(complexes: Sequence[ProjComplex]) -> Tuple[ProjComplex, List[ChainMap], List[ChainMap]]:
    """Sum with injections and projections."""
    complexes = list(complexes)
    A = complexes[0].algebra
    terms: Dict[int, List[int]] = {}
    offsets: List[Dict[int, int]] = []
    for Xi in complexes:
        offs = {}
        for k, v in Xi.terms.items():
            offs[k] = len(terms.get(k, []))
            terms.setdefault(k, []).extend(v)
        offsets.append(offs)
    diffs: Dict[int, Entries] = {}
    for k in terms:
        if k + 1 not in terms:
            continue
        d = ent_zeros(A, len(terms[k + 1]), len(terms[k]))
        for Xi, offs in zip(complexes, offsets):
            di = Xi.diff(k)
            if di is None:
                continue
            r0, c0 = offs[k + 1], offs[k]
            for t, row in enumerate(di):
                for s, e in enumerate(row):
                    d[r0 + t][c0 + s] = e
        diffs[k] = d
    S = ProjComplex(A, terms, diffs, validate=False)
    injs, projs = [], []
    for Xi, offs in zip(complexes, offsets):
        inj_comps, proj_comps = {}, {}
        for k, v in Xi.terms.items():
            m = ent_zeros(A, len(S.term(k)), len(v))
            q = ent_zeros(A, len(v), len(S.term(k)))
            for i, vert in enumerate(v):
                m[offs[k] + i][i] = A.basis_vec(vert)
                q[i][offs[k] + i] = A.basis_vec(vert)
            inj_comps[k] = m
            proj_comps[k] = q
        injs.append(ChainMap(Xi, S, inj_comps, validate=False))
        projs.append(ChainMap(S, Xi, proj_comps, validate=False))
    return S, injs, projs


def minimalize(X: ProjComplex) -> Tuple[ProjComplex, ChainMap, ChainMap]:
    """Homotopy-equivalent complex with radical differentials.

    Returns (X_min, X -> X_min, X_min -> X); the equivalences compose to
    the identity on X_min on the nose and to a map homotopic to the
    identity on X.  Relies on the corners e_i A e_i being local.
    """
    if X._minimal_cache is not None:
        return X._minimal_cache
    A = X.algebra
    f_field = A.field
    terms = {k: list(v) for k, v in X.terms.items()}
    diffs = {k: [list(row) for row in d] for k, d in X.diffs.items()}
    to_comps: Dict[int, Entries] = {k: ent_identity(A, v) for k, v in X.terms.items()}
    from_comps: Dict[int, Entries] = {k: ent_identity(A, v) for k, v in X.terms.items()}

    def find_unit():
        for k, d in diffs.items():
            src, tgt = terms[k], terms[k + 1]
            for t in range(len(tgt)):
                for s in range(len(src)):
                    if src[s] == tgt[t] and d[t][s][src[s]] != f_field.zero:
                        return k, t, s
        return None

    while True:
        hit = find_unit()
        if hit is None:
            break
        k, t, s = hit
        vert = terms[k][s]
        u = diffs[k][t][s]
        uinv = A.invert_in_corner(u, vert)
        old_src, old_tgt = terms[k], terms[k + 1]
        keep_s = [i for i in range(len(old_src)) if i != s]
        keep_t = [i for i in range(len(old_tgt)) if i != t]
        b_row = [diffs[k][t][y] for y in keep_s]          # others^k -> P_t
        c_col = [diffs[k][x][s] for x in keep_t]          # P_s -> others^{k+1}

        # corrected block: e - c * u^{-1} * b
        new_d = ent_zeros(A, len(keep_t), len(keep_s))
        for xi, x in enumerate(keep_t):
            cu = A.mul_vec(c_col[xi], uinv)
            for yi, y in enumerate(keep_s):
                corr = A.mul_vec(cu, b_row[yi])
                new_d[xi][yi] = A.sub_vec(diffs[k][x][y], corr)
        # step equivalences (identity outside degrees k, k+1)
        f_k = ent_zeros(A, len(keep_s), len(old_src))
        for yi, y in enumerate(keep_s):
            f_k[yi][y] = A.basis_vec(old_src[y])
        f_k1 = ent_zeros(A, len(keep_t), len(old_tgt))
        for xi, x in enumerate(keep_t):
            f_k1[xi][x] = A.basis_vec(old_tgt[x])
            f_k1[xi][t] = A.neg_vec(A.mul_vec(c_col[xi], uinv))
        g_k = ent_zeros(A, len(old_src), len(keep_s))
        for yi, y in enumerate(keep_s):
            g_k[y][yi] = A.basis_vec(old_src[y])
            g_k[s][yi] = A.neg_vec(A.mul_vec(uinv, b_row[yi]))
        g_k1 = ent_zeros(A, len(old_tgt), len(keep_t))
        for xi, x in enumerate(keep_t):
            g_k1[x][xi] = A.basis_vec(old_tgt[x])

        # update running equivalences
        if k in to_comps:
            to_comps[k] = ent_matmul(A, f_k, to_comps[k])
        if k + 1 in to_comps:
            to_comps[k + 1] = ent_matmul(A, f_k1, to_comps[k + 1])
        if k in from_comps:
            from_comps[k] = ent_matmul(A, from_comps[k], g_k)
        if k + 1 in from_comps:
            from_comps[k + 1] = ent_matmul(A, from_comps[k + 1], g_k1)

        # shrink the terms and the neighbouring differentials
        terms[k] = [old_src[i] for i in keep_s]
        terms[k + 1] = [old_tgt[i] for i in keep_t]
        diffs[k] = new_d
        if k - 1 in diffs:
            diffs[k - 1] = [[diffs[k - 1][x][y] for y in range(len(diffs[k - 1][0]))]
                            for x in keep_s]
        if k + 1 in diffs:
            diffs[k + 1] = [[row[y] for y in keep_t] for row in diffs[k + 1]]
        for deg in (k, k + 1):
            if not terms[deg]:
                del terms[deg]
                diffs.pop(deg, None)
                diffs.pop(deg - 1, None)

    clean_terms = {k: tuple(v) for k, v in terms.items() if v}
    clean_diffs = {k: d for k, d in diffs.items()
                   if k in clean_terms and k + 1 in clean_terms}
    Xmin = ProjComplex(A, clean_terms, clean_diffs, validate=False)
    to_min = ChainMap(X, Xmin, {k: m for k, m in to_comps.items()
                                if k in clean_terms and X.term(k)}, validate=False)
    from_min = ChainMap(Xmin, X, {k: m for k, m in from_comps.items()
                                  if k in clean_terms and X.term(k)}, validate=False)
    assert Xmin.is_minimal()
    X._minimal_cache = (Xmin, to_min, from_min)
    Xmin._minimal_cache = (Xmin, identity_map(Xmin), identity_map(Xmin))
    return X._minimal_cache


def is_contractible(X: ProjComplex) -> bool:
    return minimalize(X)[0].is_zero()
