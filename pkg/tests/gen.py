"""Shared builders for the test suite: small algebras, random complexes,
and an independent oracle for graded Hom dimensions."""

import random

from smc_kit import exactla as la
from smc_kit.algebra import Algebra, Quiver, module_hom_space
from smc_kit.exactla import Mat, PrimeField
from smc_kit.homotopy import (
    ProjComplex,
    cone,
    minimalize,
    module_realization,
    resolve_complex,
    stalk_complex,
)
from smc_kit.homotopy.complexes import stalk
from smc_kit.homotopy.homs import chain_maps_basis

FP = PrimeField(32003)


def a2_algebra(field=FP):
    return Algebra.from_quiver(field, Quiver(("1", "2"), (("a", "1", "2"),)))


def two_cycle_algebra(field=FP):
    q = Quiver(("1", "2"), (("alpha", "2", "1"), ("beta", "1", "2")))
    return Algebra.from_quiver(field, q, relations=[("beta", "alpha")])


def resolved_simple(A, i, degree=0):
    P, _ = resolve_complex(stalk_complex(A.simple_module(i), degree))
    return P


def random_complex(A, rng: random.Random, steps: int = 2) -> ProjComplex:
    """Iterated cones of random maps between shifted stalks: a cheap source
    of valid complexes (d^2 = 0 by construction)."""
    pool = [stalk(A, rng.randrange(A.nvert), rng.randrange(-1, 2))
            for _ in range(2)]
    for _ in range(steps):
        x = rng.choice(pool)
        y = rng.choice(pool)
        n = rng.randrange(-1, 2)
        basis = chain_maps_basis(x, y.shift(n))
        if basis:
            f = basis[rng.randrange(len(basis))]
            c, _ = cone(f)
            cm, _, _ = minimalize(c)
            if not cm.is_zero() and cm.total_terms() <= 8:
                pool.append(cm)
        else:
            pool.append(stalk(A, rng.randrange(A.nvert), rng.randrange(-2, 3)))
    out = pool[-1]
    return out


def hom_dim_oracle(X: ProjComplex, Y: ProjComplex, n: int) -> int:
    """Graded Hom dimension via module-level intertwiner solves: an
    independent route (module_hom_space) to the same number."""
    if X.is_zero() or Y.is_zero():
        return 0
    A = X.algebra
    f = A.field
    rx, _ = module_realization(X)
    ry, _ = module_realization(Y)

    def hom_block_basis(k, shiftn):
        mk = rx.module(k)
        nk = ry.module(k + shiftn)
        if mk.dim == 0 or nk.dim == 0:
            return []
        return module_hom_space(mk, nk)

    def space(shiftn):
        # list of (degree, basis list); coordinates concatenated
        out = []
        for k in sorted(X.terms):
            basis = hom_block_basis(k, shiftn)
            if basis:
                out.append((k, basis))
        return out

    def d_matrix(shiftn, dom, cod):
        # D(f)^k = d_Y f^k - (-1)^n f^{k+1} d_X
        sign = f.from_int(-1 if shiftn % 2 else 1)
        ncols = sum(len(b) for _, b in dom)
        nrows_blocks = [(k, len(b)) for k, b in cod]
        nrows = sum(c for _, c in nrows_blocks)
        mat = Mat.zeros(f, nrows, ncols)
        col = 0
        cod_basis = {k: b for k, b in cod}
        cod_offset = {}
        off = 0
        for k, b in cod:
            cod_offset[k] = off
            off += len(b)
        for k, basis in dom:
            for fb in basis:
                img = {}
                dy = ry.diff(k + shiftn)
                if dy is not None and (k in cod_basis):
                    img[k] = fb @ dy
                dx = rx.diff(k - 1)
                if dx is not None and (k - 1) in cod_basis:
                    contrib = dx @ fb
                    prev = img.get(k - 1)
                    m = contrib.scale(f.neg(sign))
                    img[k - 1] = m if prev is None else prev + m
                for kk, mat_img in img.items():
                    coords = coords_in_basis(mat_img, cod_basis[kk])
                    for i, c in enumerate(coords):
                        mat.rows[cod_offset[kk] + i][col] = c
                col += 1
        return mat

    def coords_in_basis(m, basis):
        flat = [x for row in m.rows for x in row]
        bmat = Mat(f, [[x for row in b.rows for x in row] for b in basis],
                   ncols=len(flat))
        res = la.express_rows(bmat, Mat(f, [flat], ncols=len(flat)))
        assert res is not None
        return res.rows[0]

    dom = space(n)
    cod = space(n + 1)
    below = space(n - 1)
    d_n = d_matrix(n, dom, cod)
    d_prev = d_matrix(n - 1, below, dom)
    total = sum(len(b) for _, b in dom)
    return (total - la.rank(d_n)) - la.rank(d_prev)
