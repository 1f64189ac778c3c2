"""Complexes of modules and their replacement by complexes of projectives.

The resolver works down from the top degree, covering at each step the
pullback of "cycles compatible with the part already built":

    Z^k = {(m, p) in M^k (+) P^{k+1} : m d_M = p eps,  p delta = 0}

with P^k a projective cover of Z^k.  Cycles of M lift through Z (so the
comparison map is surjective on cohomology) and liftable boundaries die
(injective), giving a quasi-isomorphism without any higher-homotopy
bookkeeping.  Termination below the support is the finiteness of the
projective dimension of the last syzygy.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .. import exactla as la
from ..algebra import (
    Algebra,
    Module,
    direct_sum_modules,
    dual_module,
    projectives_module,
    submodule_from_rows,
    zero_module,
)
from ..config import BoundExceeded, InputError
from ..exactla import Mat
from .complexes import ChainMap, Entries, ProjComplex, minimalize, zero_complex


class ModComplex:
    """Bounded complex of finite-dimensional right modules (scalar maps)."""

    def __init__(self, algebra: Algebra, terms: Dict[int, Module],
                 diffs: Dict[int, Mat], validate: bool = True):
        self.algebra = algebra
        self.terms = {k: m for k, m in terms.items() if m.dim > 0}
        self.diffs = {k: d for k, d in diffs.items()
                      if k in self.terms and k + 1 in self.terms}
        if validate:
            self._validate()

    def _validate(self):
        f = self.algebra.field
        for k, d in self.diffs.items():
            if d.shape != (self.terms[k].dim, self.terms[k + 1].dim):
                raise InputError(f"module differential shape at {k}")
            for b in range(self.algebra.dim):
                lhs = self.terms[k].action[b] @ d
                rhs = d @ self.terms[k + 1].action[b]
                if lhs != rhs:
                    raise InputError(f"module differential at {k} is not a module map")
        for k in self.diffs:
            if k + 1 in self.diffs:
                if not (self.diffs[k] @ self.diffs[k + 1]).is_zero():
                    raise InputError(f"module d^2 != 0 at degree {k}")

    @property
    def support(self) -> Optional[Tuple[int, int]]:
        if not self.terms:
            return None
        return (min(self.terms), max(self.terms))

    def dim(self, k: int) -> int:
        return self.terms[k].dim if k in self.terms else 0

    def module(self, k: int) -> Module:
        return self.terms.get(k) or zero_module(self.algebra)

    def diff(self, k: int) -> Optional[Mat]:
        return self.diffs.get(k)

    def cohomology_dims(self) -> Dict[int, int]:
        out = {}
        for k in self.terms:
            d_out = la.rank(self.diffs[k]) if k in self.diffs else 0
            d_in = la.rank(self.diffs[k - 1]) if k - 1 in self.diffs else 0
            h = self.terms[k].dim - d_out - d_in
            if h:
                out[k] = h
        return out


def stalk_complex(M: Module, degree: int = 0) -> ModComplex:
    return ModComplex(M.algebra, {degree: M}, {}, validate=False)


def module_realization(X: ProjComplex) -> Tuple[ModComplex, Dict[int, List[Tuple[int, int]]]]:
    """The complex of modules underlying X, with summand slices per degree."""
    if X._module_cache is not None:
        return X._module_cache
    A = X.algebra
    terms: Dict[int, Module] = {}
    slices: Dict[int, List[Tuple[int, int]]] = {}
    for k, verts in X.terms.items():
        mod, sl = projectives_module(A, verts)
        terms[k] = mod
        slices[k] = sl
    diffs: Dict[int, Mat] = {}
    for k, d in X.diffs.items():
        diffs[k] = realize_entry_matrix(A, X.term(k), X.term(k + 1), d)
    out = (ModComplex(A, terms, diffs, validate=False), slices)
    X._module_cache = out
    return out


def realize_entry_matrix(A: Algebra, src_verts: Sequence[int],
                         tgt_verts: Sequence[int], entries: Entries) -> Mat:
    """Scalar matrix of an entry matrix on the direct sums of projectives."""
    f = A.field
    src_bases = [A.projective_module(i).basis_in_algebra for i in src_verts]
    tgt_bases = [A.projective_module(j).basis_in_algebra for j in tgt_verts]
    nrows = sum(len(b) for b in src_bases)
    ncols = sum(len(b) for b in tgt_bases)
    out = Mat.zeros(f, nrows, ncols)
    r0 = 0
    for s, sbasis in enumerate(src_bases):
        c0 = 0
        for t, tbasis in enumerate(tgt_bases):
            e = entries[t][s]
            if not A.is_zero_vec(e):
                block = A.lrow(e).submatrix(sbasis, tbasis)
                for r in range(len(sbasis)):
                    row = out.rows[r0 + r]
                    brow = block.rows[r]
                    for c in range(len(tbasis)):
                        if brow[c] != f.zero:
                            row[c0 + c] = brow[c]
            c0 += len(tbasis)
        r0 += len(sbasis)
    return out


def realize_chain_map(g: ChainMap) -> Dict[int, Mat]:
    A = g.source.algebra
    out = {}
    for k in set(g.source.terms) & set(g.target.terms):
        out[k] = realize_entry_matrix(A, g.source.term(k), g.target.term(k),
                                      g.component(k))
    return out


def entries_from_realized(A: Algebra, src_verts: Sequence[int],
                          tgt_verts: Sequence[int], mat: Mat) -> Entries:
    """Recover the entry matrix of a module map between sums of projectives.

    The (t, s) entry is read off the image of the generator e_{i_s}: the
    corresponding row of mat, sliced to the t-th block, is the coefficient
    vector of an element of e_{j_t} A e_{i_s}.
    """
    f = A.field
    src_bases = [A.projective_module(i).basis_in_algebra for i in src_verts]
    tgt_bases = [A.projective_module(j).basis_in_algebra for j in tgt_verts]
    out = [[A.zero_vec() for _ in src_verts] for _ in tgt_verts]
    r0 = 0
    for s, i in enumerate(src_verts):
        gen_row = r0 + src_bases[s].index(i)  # position of e_i in P_i
        c0 = 0
        for t, j in enumerate(tgt_verts):
            vec = [f.zero] * A.dim
            for c, bidx in enumerate(tgt_bases[t]):
                val = mat.rows[gen_row][c0 + c]
                if val != f.zero:
                    vec[bidx] = val
            out[t][s] = tuple(vec)
            c0 += len(tgt_bases[t])
        r0 += len(src_bases[s])
    return out


def dual_mod_complex(C: ModComplex) -> ModComplex:
    """K-linear dual: degree k becomes -k, over the opposite algebra."""
    opp = C.algebra.op()
    terms = {-k: dual_module(m) for k, m in C.terms.items()}
    diffs = {}
    for k, d in C.diffs.items():
        diffs[-k - 1] = d.transpose()
    return ModComplex(opp, terms, diffs, validate=False)


def corner_positions(A: Algebra, verts: Sequence[int], subset: Sequence[int]) -> List[int]:
    """Positions, inside the realization of (+) P_i, of basis vectors with
    target in the idempotent subset (= the e-corner of the module)."""
    sub = set(subset)
    pos = []
    offset = 0
    for i in verts:
        basis = A.projective_module(i).basis_in_algebra
        for r, b in enumerate(basis):
            if A.target[b] in sub:
                pos.append(offset + r)
        offset += len(basis)
    return pos


def corner_of_proj_complex(X: ProjComplex, B: Algebra, embed: Sequence[int],
                           subset: Sequence[int]) -> Tuple[ModComplex, Dict[int, List[int]]]:
    """X * e as a complex of eAe-modules, with the positions used to slice."""
    A = X.algebra
    real, _ = module_realization(X)
    pos: Dict[int, List[int]] = {}
    terms: Dict[int, Module] = {}
    for k in X.terms:
        pk = corner_positions(A, X.term(k), subset)
        pos[k] = pk
        action = [real.terms[k].action[embed[c]].submatrix(pk, pk)
                  for c in range(B.dim)]
        terms[k] = Module(B, len(pk), action)
    diffs = {}
    for k, d in real.diffs.items():
        diffs[k] = d.submatrix(pos[k], pos[k + 1])
    return ModComplex(B, terms, diffs, validate=False), pos


def cohomology_dims(X: ProjComplex) -> Dict[int, int]:
    real, _ = module_realization(X)
    return real.cohomology_dims()


def resolve_complex(C: ModComplex, pd_bound: int = 32,
                    minimal: bool = True) -> Tuple[ProjComplex, Dict[int, Mat]]:
    """Complex of projectives quasi-isomorphic to C, plus the comparison map.

    The second component maps the realization of the result onto C degreewise
    (a surjection onto cycles-and-lifts, quasi-iso overall).
    """
    A = C.algebra
    sup = C.support
    if sup is None:
        return zero_complex(A), {}
    lo, hi = sup
    verts: Dict[int, List[int]] = {}
    pmods: Dict[int, Module] = {}
    eps: Dict[int, Mat] = {}
    delta: Dict[int, Mat] = {}
    k = hi
    while True:
        Mk = C.module(k)
        Pk1 = pmods.get(k + 1) or zero_module(A)
        sum_mod, _ = direct_sum_modules(A, [Mk, Pk1])
        ncols = C.dim(k + 1) + (pmods[k + 2].dim if k + 2 in pmods else 0)
        cond = Mat.zeros(A.field, Mk.dim + Pk1.dim, ncols)
        dM = C.diff(k)
        if dM is not None:
            for r in range(Mk.dim):
                for c in range(C.dim(k + 1)):
                    cond.rows[r][c] = dM.rows[r][c]
        if Pk1.dim:
            ek1 = eps.get(k + 1)
            if ek1 is not None and C.dim(k + 1):
                f = A.field
                for r in range(Pk1.dim):
                    for c in range(C.dim(k + 1)):
                        cond.rows[Mk.dim + r][c] = f.neg(ek1.rows[r][c])
            dk1 = delta.get(k + 1)
            if dk1 is not None:
                off = C.dim(k + 1)
                for r in range(Pk1.dim):
                    for c in range(dk1.ncols):
                        cond.rows[Mk.dim + r][off + c] = dk1.rows[r][c]
        zrows = la.left_kernel_basis(cond)
        zmat = Mat(A.field, zrows, ncols=sum_mod.dim) if zrows \
            else Mat.zeros(A.field, 0, sum_mod.dim)
        Z, _ = submodule_from_rows(sum_mod, zmat)
        if Z.dim == 0 and k <= lo:
            break
        if k < lo - pd_bound:
            raise BoundExceeded(
                f"hyperprojective resolution exceeds pd bound {pd_bound}")
        if Z.dim == 0:
            k -= 1
            continue
        vlist, cover = Z.projective_cover()
        Pk, _ = projectives_module(A, vlist)
        into_sum = cover @ zmat  # P_k -> M_k (+) P_{k+1}
        eps[k] = into_sum.submatrix(range(Pk.dim), range(Mk.dim))
        if Pk1.dim:
            delta[k] = into_sum.submatrix(range(Pk.dim),
                                          range(Mk.dim, Mk.dim + Pk1.dim))
        verts[k] = vlist
        pmods[k] = Pk
        k -= 1

    entries: Dict[int, Entries] = {}
    for deg, dmat in delta.items():
        entries[deg] = entries_from_realized(A, verts[deg], verts[deg + 1], dmat)
    P = ProjComplex(A, {d: tuple(v) for d, v in verts.items()}, entries)
    aug = {d: eps[d] for d in verts if d in eps and C.dim(d)}
    _assert_quasi_iso(P, C, aug)
    if not minimal:
        return P, aug
    Pmin, _, from_min = minimalize(P)
    real_from = realize_chain_map(from_min)
    aug_min = {}
    for d in Pmin.terms:
        if d in aug and d in real_from:
            aug_min[d] = real_from[d] @ aug[d]
    return Pmin, aug_min


def _assert_quasi_iso(P: ProjComplex, C: ModComplex, aug: Dict[int, Mat]):
    real, _ = module_realization(P)
    hP = real.cohomology_dims()
    hC = C.cohomology_dims()
    assert hP == hC, f"resolution changed cohomology: {hP} vs {hC}"
    # the comparison map is a chain map
    for k, a in aug.items():
        dP = real.diff(k)
        dC = C.diff(k)
        lhs = dP @ aug[k + 1] if (dP is not None and k + 1 in aug) else None
        rhs = a @ dC if dC is not None else None
        if lhs is None and rhs is None:
            continue
        shape = (real.dim(k), C.dim(k + 1))
        if 0 in shape:
            continue
        lhs = lhs if lhs is not None else Mat.zeros(a.field, *shape)
        rhs = rhs if rhs is not None else Mat.zeros(a.field, *shape)
        assert lhs == rhs, f"comparison map fails to commute at degree {k}"
