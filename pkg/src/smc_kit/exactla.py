"""Exact dense linear algebra over a prime field or the rationals.

Every computation upstream (module homs, homotopy classes, truncation
triangles) bottoms out in the row reductions here, so arithmetic is exact:
ints reduced mod p, or Fractions.  For the prime field there is a vectorized
numpy path (int64 is safe: p < 2^16, so pivoting products never overflow);
the generic path handles the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import InputError

DEFAULT_PRIME = 32003

Element = Union[int, Fraction]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """F_p with elements stored as reduced Python ints."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p):
            raise InputError(f"{p} is not prime")
        self.p = p

    zero = 0
    one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def rand(self, rng):
        return rng.randrange(self.p)

    def rand_nonzero(self, rng):
        return rng.randrange(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"F_{self.p}"


class RationalField:
    """Exact rationals via fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def from_int(self, n: int):
        return Fraction(n)

    def rand(self, rng):
        return Fraction(rng.randrange(-20, 21))

    def rand_nonzero(self, rng):
        n = rng.randrange(1, 41)
        return Fraction(n if rng.random() < 0.5 else -n)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


Field = Union[PrimeField, RationalField]


def get_field(spec) -> Field:
    """'rationals'/'Q' or a prime number."""
    if isinstance(spec, (PrimeField, RationalField)):
        return spec
    if isinstance(spec, str):
        if spec.lower() in ("q", "qq", "rational", "rationals"):
            return RationalField()
        if spec.isdigit():
            return PrimeField(int(spec))
        raise InputError(f"unknown field spec {spec!r}")
    if isinstance(spec, int):
        return PrimeField(spec)
    raise InputError(f"unknown field spec {spec!r}")


class Mat:
    """Dense matrix over a Field; rows is a list of lists of elements."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: List[List[Element]], ncols: Optional[int] = None):
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        if rows:
            self.ncols = len(rows[0])
            for r in rows:
                if len(r) != self.ncols:
                    raise InputError("ragged matrix")
        else:
            if ncols is None:
                raise InputError("empty matrix needs explicit ncols")
            self.ncols = ncols

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, field, m, n):
        z = field.zero
        return cls(field, [[z] * n for _ in range(m)], ncols=n)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_int_rows(cls, field, rows, ncols=None):
        return cls(field, [[field.from_int(x) for x in r] for r in rows], ncols=ncols)

    def copy(self):
        return Mat(self.field, [list(r) for r in self.rows], ncols=self.ncols)

    # -- arithmetic --------------------------------------------------------

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise InputError(f"matmul shape mismatch {self.shape} @ {other.shape}")
        f = self.field
        if self.nrows == 0 or other.ncols == 0:
            return Mat.zeros(f, self.nrows, other.ncols)
        if isinstance(f, PrimeField):
            a = np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)
            b = np.array(other.rows, dtype=np.int64).reshape(other.nrows, other.ncols)
            c = (a @ b) % f.p
            return Mat(f, c.tolist(), ncols=other.ncols)
        out = []
        for row in self.rows:
            acc = [f.zero] * other.ncols
            for k, x in enumerate(row):
                if x == f.zero:
                    continue
                orow = other.rows[k]
                for j in range(other.ncols):
                    acc[j] = f.add(acc[j], f.mul(x, orow[j]))
            out.append(acc)
        return Mat(f, out, ncols=other.ncols)

    def __add__(self, other):
        f = self.field
        if self.shape != other.shape:
            raise InputError("shape mismatch in add")
        return Mat(f, [[f.add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                   ncols=self.ncols)

    def __sub__(self, other):
        f = self.field
        if self.shape != other.shape:
            raise InputError("shape mismatch in sub")
        return Mat(f, [[f.sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                   ncols=self.ncols)

    def __neg__(self):
        f = self.field
        return Mat(f, [[f.neg(a) for a in r] for r in self.rows], ncols=self.ncols)

    def scale(self, c):
        f = self.field
        return Mat(f, [[f.mul(c, a) for a in r] for r in self.rows], ncols=self.ncols)

    def transpose(self):
        return Mat(self.field, [[self.rows[i][j] for i in range(self.nrows)]
                                for j in range(self.ncols)], ncols=self.nrows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]):
        return Mat(self.field, [[self.rows[i][j] for j in col_idx] for i in row_idx],
                   ncols=len(col_idx))

    # -- misc --------------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def row(self, i):
        return list(self.rows[i])

    def col(self, j):
        return [self.rows[i][j] for i in range(self.nrows)]

    def is_zero(self):
        z = self.field.zero
        return all(x == z for r in self.rows for x in r)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.shape == other.shape
                and self.rows == other.rows)

    def __repr__(self):
        return f"Mat({self.nrows}x{self.ncols} over {self.field})"


def hstack(mats: Sequence[Mat]) -> Mat:
    mats = list(mats)
    f = mats[0].field
    m = mats[0].nrows
    rows = [[] for _ in range(m)]
    for mat in mats:
        if mat.nrows != m:
            raise InputError("hstack row mismatch")
        for i in range(m):
            rows[i].extend(mat.rows[i])
    return Mat(f, rows, ncols=sum(mat.ncols for mat in mats))


def vstack(mats: Sequence[Mat]) -> Mat:
    mats = list(mats)
    f = mats[0].field
    n = mats[0].ncols
    rows = []
    for mat in mats:
        if mat.ncols != n:
            raise InputError("vstack col mismatch")
        rows.extend([list(r) for r in mat.rows])
    return Mat(f, rows, ncols=n)


# -- row reduction ----------------------------------------------------------


@dataclass
class RRef:
    """Reduced row echelon data: T @ original = reduced, pivot columns."""

    reduced: Mat
    pivots: Tuple[int, ...]
    transform: Mat


def _rref_modp(p: int, m: Mat) -> RRef:
    nr, nc = m.shape
    a = np.array(m.rows, dtype=np.int64).reshape(nr, nc) % p
    t = np.eye(nr, dtype=np.int64)
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
            t[[r, k]] = t[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        t[r] = (t[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        if np.any(col):
            a -= np.outer(col, a[r])
            t -= np.outer(col, t[r])
            a %= p
            t %= p
        pivots.append(c)
        r += 1
    fld = m.field
    return RRef(Mat(fld, a.tolist(), ncols=nc), tuple(pivots),
                Mat(fld, t.tolist(), ncols=nr))


def _rref_generic(m: Mat) -> RRef:
    f = m.field
    nr, nc = m.shape
    a = [list(r) for r in m.rows]
    t = [[f.one if i == j else f.zero for j in range(nr)] for i in range(nr)]
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        k = next((i for i in range(r, nr) if a[i][c] != f.zero), None)
        if k is None:
            continue
        if k != r:
            a[r], a[k] = a[k], a[r]
            t[r], t[k] = t[k], t[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(inv, x) for x in a[r]]
        t[r] = [f.mul(inv, x) for x in t[r]]
        for i in range(nr):
            if i == r or a[i][c] == f.zero:
                continue
            factor = a[i][c]
            a[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[i], a[r])]
            t[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(t[i], t[r])]
        pivots.append(c)
        r += 1
    return RRef(Mat(f, a, ncols=nc), tuple(pivots), Mat(f, t, ncols=nr))


def rref(m: Mat) -> RRef:
    if isinstance(m.field, PrimeField) and m.nrows and m.ncols:
        return _rref_modp(m.field.p, m)
    return _rref_generic(m)


def rank(m: Mat) -> int:
    """Rank over the matrix's field, by exact Gaussian elimination."""
    return len(rref(m).pivots)


def kernel_basis(m: Mat) -> List[List[Element]]:
    """Basis of the right null space: vectors v with m @ v = 0."""
    f = m.field
    red = rref(m)
    piv = set(red.pivots)
    free = [j for j in range(m.ncols) if j not in piv]
    basis = []
    pivot_list = list(red.pivots)
    for j in free:
        v = [f.zero] * m.ncols
        v[j] = f.one
        for i, pc in enumerate(pivot_list):
            v[pc] = f.neg(red.reduced.rows[i][j])
        basis.append(v)
    return basis


def left_kernel_basis(m: Mat) -> List[List[Element]]:
    """Row vectors x with x @ m = 0."""
    return kernel_basis(m.transpose())


@dataclass
class SolveResult:
    solution: Optional[List[Element]]
    kernel: List[List[Element]]


def solve(m: Mat, b: Sequence[Element]) -> SolveResult:
    """Solve m @ x = b; solution is None when the system is inconsistent."""
    if len(b) != m.nrows:
        raise InputError(f"rhs length {len(b)} != nrows {m.nrows}")
    f = m.field
    red = rref(m)
    tb = [sum_prod(f, red.transform.rows[i], b) for i in range(m.nrows)]
    nr_pivots = len(red.pivots)
    for i in range(nr_pivots, m.nrows):
        if tb[i] != f.zero:
            return SolveResult(None, kernel_basis(m))
    x = [f.zero] * m.ncols
    for i, pc in enumerate(red.pivots):
        x[pc] = tb[i]
    return SolveResult(x, kernel_basis(m))


def solve_matrix(m: Mat, b: Mat) -> Optional[Mat]:
    """X with m @ X = b, or None if any column is inconsistent."""
    if b.nrows != m.nrows:
        raise InputError("solve_matrix shape mismatch")
    f = m.field
    red = rref(m)
    tb = red.transform @ b
    for i in range(len(red.pivots), m.nrows):
        if any(x != f.zero for x in tb.rows[i]):
            return None
    out = Mat.zeros(f, m.ncols, b.ncols)
    for i, pc in enumerate(red.pivots):
        out.rows[pc] = list(tb.rows[i])
    return out


def express_rows(basis: Mat, vecs: Mat) -> Optional[Mat]:
    """Coordinates X with X @ basis = vecs, or None when not in the span."""
    sol = solve_matrix(basis.transpose(), vecs.transpose())
    return None if sol is None else sol.transpose()


def row_space_basis(m: Mat) -> Mat:
    red = rref(m)
    return Mat(m.field, [red.reduced.rows[i] for i in range(len(red.pivots))],
               ncols=m.ncols)


def det(m: Mat) -> Element:
    """Determinant of a square matrix (fraction-free enough at desk scale)."""
    if m.nrows != m.ncols:
        raise InputError("det needs a square matrix")
    f = m.field
    n = m.nrows
    a = [list(r) for r in m.rows]
    d = f.one
    for c in range(n):
        k = next((i for i in range(c, n) if a[i][c] != f.zero), None)
        if k is None:
            return f.zero
        if k != c:
            a[c], a[k] = a[k], a[c]
            d = f.neg(d)
        d = f.mul(d, a[c][c])
        inv = f.inv(a[c][c])
        for i in range(c + 1, n):
            if a[i][c] == f.zero:
                continue
            factor = f.mul(a[i][c], inv)
            a[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[i], a[c])]
    return d


def sum_prod(f: Field, xs, ys) -> Element:
    acc = f.zero
    for x, y in zip(xs, ys):
        if x != f.zero and y != f.zero:
            acc = f.add(acc, f.mul(x, y))
    return acc


# -- vectors (plain lists of field elements) --------------------------------


def vec_add(f: Field, a, b):
    return [f.add(x, y) for x, y in zip(a, b)]


def vec_sub(f: Field, a, b):
    return [f.sub(x, y) for x, y in zip(a, b)]


def vec_scale(f: Field, c, a):
    return [f.mul(c, x) for x in a]


def vec_neg(f: Field, a):
    return [f.neg(x) for x in a]


def vec_is_zero(f: Field, a):
    return all(x == f.zero for x in a)


def random_matrix(field: Field, m: int, n: int, rng) -> Mat:
    return Mat(field, [[field.rand(rng) for _ in range(n)] for _ in range(m)], ncols=n)
