"""Finite-dimensional basic algebras and their finite-dimensional modules.

Algebras come from a quiver with monomial relations (basis = surviving
paths) or from an explicit structure-constant table.  Conventions, fixed
once here and relied on everywhere downstream:

* paths compose left to right: ``a*b`` traverses the arrow ``a`` first,
  so ``a*b`` is defined when target(a) = source(b);
* modules are right modules, elements are row vectors, the action of a
  basis element ``b`` is ``m -> m @ action[b]``;
* maps of right modules multiply on the right of row vectors, so the
  composite "f then g" has matrix ``F @ G``;
* Hom(e_i A, e_j A) = e_j A e_i acting by left multiplication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import exactla as la
from .config import BoundExceeded, InputError
from .exactla import Field, Mat

Vec = Tuple  # coefficient tuple over the algebra basis


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Tuple[str, str, str], ...]  # (label, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex labels")
        labels = [a[0] for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise InputError("duplicate arrow labels")
        for lab, s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise InputError(f"arrow {lab}: undeclared vertex")
            if lab in self.vertices:
                raise InputError(f"arrow label {lab} clashes with a vertex")

    def vertex_index(self, v: str) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise InputError(f"unknown vertex {v!r}") from None


def linear_quiver(n: int) -> Quiver:
    """1 -> 2 -> ... -> n with arrows a1, ..., a(n-1)."""
    verts = tuple(str(i + 1) for i in range(n))
    arrows = tuple((f"a{i + 1}", verts[i], verts[i + 1]) for i in range(n - 1))
    return Quiver(verts, arrows)


class Algebra:
    """Basic algebra with corner-homogeneous basis.

    basis element b satisfies e_{source[b]} * b = b = b * e_{target[b]};
    the first nvert basis elements are the primitive idempotents, the rest
    span the radical.
    """

    def __init__(self, field: Field, vertex_labels: Sequence[str],
                 basis_labels: Sequence[str], source: Sequence[int],
                 target: Sequence[int], mult: List[List[Vec]],
                 quiver: Optional[Quiver] = None,
                 path_arrows: Optional[List[Tuple[int, ...]]] = None,
                 validate: bool = True):
        self.field = field
        self.vertex_labels = tuple(vertex_labels)
        self.nvert = len(self.vertex_labels)
        self.basis_labels = tuple(basis_labels)
        self.dim = len(self.basis_labels)
        self.source = tuple(source)
        self.target = tuple(target)
        self.mult = mult
        self.quiver = quiver
        self.path_arrows = path_arrows  # arrow index tuples, when from a quiver
        self._label_index = {lab: i for i, lab in enumerate(self.basis_labels)}
        self._corner_cache: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        self._op: Optional[Algebra] = None
        self._module_cache: Dict[Tuple, "Module"] = {}
        self._resolution_cache: Dict = {}
        if validate:
            self.validate()

    # -- basic structure ---------------------------------------------------

    @property
    def radical_indices(self) -> range:
        return range(self.nvert, self.dim)

    def zero_vec(self) -> Vec:
        return (self.field.zero,) * self.dim

    def basis_vec(self, i: int) -> Vec:
        f = self.field
        return tuple(f.one if j == i else f.zero for j in range(self.dim))

    def unit_vec(self) -> Vec:
        f = self.field
        return tuple(f.one if j < self.nvert else f.zero for j in range(self.dim))

    def add_vec(self, x: Vec, y: Vec) -> Vec:
        f = self.field
        return tuple(f.add(a, b) for a, b in zip(x, y))

    def sub_vec(self, x: Vec, y: Vec) -> Vec:
        f = self.field
        return tuple(f.sub(a, b) for a, b in zip(x, y))

    def neg_vec(self, x: Vec) -> Vec:
        f = self.field
        return tuple(f.neg(a) for a in x)

    def scale_vec(self, c, x: Vec) -> Vec:
        f = self.field
        return tuple(f.mul(c, a) for a in x)

    def is_zero_vec(self, x: Vec) -> bool:
        z = self.field.zero
        return all(a == z for a in x)

    def mul_vec(self, x: Vec, y: Vec) -> Vec:
        f = self.field
        acc = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if xi == f.zero:
                continue
            row = self.mult[i]
            for j, yj in enumerate(y):
                if yj == f.zero:
                    continue
                prod = row[j]
                c = f.mul(xi, yj)
                for k, pk in enumerate(prod):
                    if pk != f.zero:
                        acc[k] = f.add(acc[k], f.mul(c, pk))
        return tuple(acc)

    def lrow(self, x: Vec) -> Mat:
        """Row-convention left multiplication: row_b = coords of x * b."""
        f = self.field
        rows = [[f.zero] * self.dim for _ in range(self.dim)]
        for i, xi in enumerate(x):
            if xi == f.zero:
                continue
            for b in range(self.dim):
                prod = self.mult[i][b]
                row = rows[b]
                for k, pk in enumerate(prod):
                    if pk != f.zero:
                        row[k] = f.add(row[k], f.mul(xi, pk))
        return Mat(f, rows, ncols=self.dim)

    def rrow(self, x: Vec) -> Mat:
        """Row-convention right multiplication: row_b = coords of b * x."""
        f = self.field
        rows = [[f.zero] * self.dim for _ in range(self.dim)]
        for j, xj in enumerate(x):
            if xj == f.zero:
                continue
            for b in range(self.dim):
                prod = self.mult[b][j]
                row = rows[b]
                for k, pk in enumerate(prod):
                    if pk != f.zero:
                        row[k] = f.add(row[k], f.mul(xj, pk))
        return Mat(f, rows, ncols=self.dim)

    def corner_indices(self, i: int, j: int) -> Tuple[int, ...]:
        """Basis indices of e_i A e_j (source i, target j)."""
        key = (i, j)
        if key not in self._corner_cache:
            self._corner_cache[key] = tuple(
                b for b in range(self.dim)
                if self.source[b] == i and self.target[b] == j)
        return self._corner_cache[key]

    def hom_corner(self, i: int, j: int) -> Tuple[int, ...]:
        """Basis indices parametrizing maps P_i -> P_j (= e_j A e_i)."""
        return self.corner_indices(j, i)

    def scalar_coeff(self, x: Vec, vertex: int):
        """Coefficient of e_vertex in x."""
        return x[vertex]

    def is_radical_vec(self, x: Vec) -> bool:
        z = self.field.zero
        return all(x[i] == z for i in range(self.nvert))

    def invert_in_corner(self, x: Vec, vertex: int) -> Vec:
        """Inverse of x in the local algebra e_v A e_v; x must be a unit."""
        f = self.field
        idx = self.corner_indices(vertex, vertex)
        r = self.rrow(x)  # row_b = b*x
        sub = r.submatrix(idx, idx)
        e_local = [f.one if b == vertex else f.zero for b in idx]
        sol = la.solve(sub.transpose(), e_local)  # y @ sub = e  <=>  sub^T y^T = e^T
        if sol.solution is None:
            raise InputError("element is not invertible in its corner")
        y = list(self.zero_vec())
        for pos, b in enumerate(idx):
            y[b] = sol.solution[pos]
        y = tuple(y)
        assert self.mul_vec(x, y)[vertex] == f.one
        return y

    def parse_element(self, text: str) -> Vec:
        """Linear combination string, e.g. '2*alpha + beta*alpha - 3*e_1'."""
        f = self.field
        acc = list(self.zero_vec())
        text = text.strip()
        if text in ("0", ""):
            return tuple(acc)
        # split into signed terms
        terms = []
        cur, sign = "", 1
        for ch in text:
            if ch in "+-":
                if cur.strip():
                    terms.append((sign, cur.strip()))
                cur, sign = "", (1 if ch == "+" else -1)
            else:
                cur += ch
        if cur.strip():
            terms.append((sign, cur.strip()))
        for sign, term in terms:
            parts = [p.strip() for p in term.split("*")]
            coeff = f.from_int(sign)
            start = 0
            if parts and _is_number(parts[0]):
                num = parts[0]
                if "/" in num:
                    a, b = num.split("/")
                    coeff = f.mul(coeff, f.mul(f.from_int(int(a)), f.inv(f.from_int(int(b)))))
                else:
                    coeff = f.mul(coeff, f.from_int(int(num)))
                start = 1
            label = "*".join(parts[start:])
            if label not in self._label_index:
                raise InputError(f"unknown basis label {label!r}")
            b = self._label_index[label]
            acc[b] = f.add(acc[b], coeff)
        return tuple(acc)

    def element_str(self, x: Vec) -> str:
        f = self.field
        parts = []
        for i, c in enumerate(x):
            if c == f.zero:
                continue
            if c == f.one:
                parts.append(self.basis_labels[i])
            else:
                parts.append(f"{c}*{self.basis_labels[i]}")
        return " + ".join(parts) if parts else "0"

    # -- validation ----------------------------------------------------------

    def validate(self):
        f = self.field
        if self.dim == 0:
            if self.nvert != 0:
                raise InputError("zero algebra cannot have vertices")
            return
        if not (len(self.source) == len(self.target) == self.dim):
            raise InputError("source/target length mismatch")
        for i in range(self.nvert):
            if self.source[i] != i or self.target[i] != i:
                raise InputError("idempotent e_i must sit in corner (i, i)")
        # orthogonal idempotents summing to 1, corner homogeneity
        for i in range(self.nvert):
            for j in range(self.nvert):
                expect = self.basis_vec(i) if i == j else self.zero_vec()
                if self.mult[i][j] != expect:
                    raise InputError("idempotents not orthogonal")
        for b in range(self.dim):
            ei = self.basis_vec(self.source[b])
            left = self.mul_vec(ei, self.basis_vec(b))
            if left != self.basis_vec(b):
                raise InputError(f"basis {b} not left-homogeneous")
            ej = self.basis_vec(self.target[b])
            right = self.mul_vec(self.basis_vec(b), ej)
            if right != self.basis_vec(b):
                raise InputError(f"basis {b} not right-homogeneous")
        # unitality
        one = self.unit_vec()
        for b in range(self.dim):
            bb = self.basis_vec(b)
            if self.mul_vec(one, bb) != bb or self.mul_vec(bb, one) != bb:
                raise InputError("unit fails")
        # associativity on basis triples (sampled beyond desk scale)
        triples = itertools.product(range(self.dim), repeat=3)
        if self.dim > 24:
            import random as _random
            r = _random.Random(0)
            triples = (tuple(r.randrange(self.dim) for _ in range(3)) for _ in range(5000))
        for i, j, k in triples:
            left = self.mul_vec(self.mult[i][j], self.basis_vec(k))
            right = self.mul_vec(self.basis_vec(i), self.mult[j][k])
            if left != right:
                raise InputError(f"associativity fails at ({i},{j},{k})")
        # radical spanned by the non-idempotent basis: closed under mult,
        # nilpotent, and the corners e_i A e_i are local
        z = f.zero
        for b in self.radical_indices:
            for c in range(self.dim):
                for prod in (self.mult[b][c], self.mult[c][b]):
                    if any(prod[v] != z for v in range(self.nvert)) and c >= self.nvert:
                        raise InputError("radical not an ideal")
        if not self._radical_nilpotent():
            raise InputError("radical is not nilpotent")

    def _radical_nilpotent(self) -> bool:
        f = self.field
        layer = [self.basis_vec(b) for b in self.radical_indices]
        for _ in range(self.dim + 1):
            if not layer:
                return True
            nxt = []
            for x in layer:
                for b in self.radical_indices:
                    y = self.mul_vec(x, self.basis_vec(b))
                    if not self.is_zero_vec(y):
                        nxt.append(y)
            if not nxt:
                return True
            basis = la.row_space_basis(Mat(f, [list(v) for v in nxt], ncols=self.dim))
            layer = [tuple(r) for r in basis.rows]
        return False

    # -- constructions -------------------------------------------------------

    @classmethod
    def zero_algebra(cls, field: Field) -> "Algebra":
        return cls(field, (), (), (), (), [], validate=False)

    @classmethod
    def from_quiver(cls, field: Field, quiver: Quiver,
                    relations: Sequence[Sequence[str]] = (),
                    path_cap: int = 4096) -> "Algebra":
        """Path algebra modulo monomial relations (paths of length >= 2)."""
        nv = len(quiver.vertices)
        arrow_src = [quiver.vertex_index(a[1]) for a in quiver.arrows]
        arrow_tgt = [quiver.vertex_index(a[2]) for a in quiver.arrows]
        arrow_idx = {a[0]: i for i, a in enumerate(quiver.arrows)}
        rels: List[Tuple[int, ...]] = []
        for rel in relations:
            if len(rel) < 2:
                raise InputError("relations must be paths of length >= 2")
            try:
                path = tuple(arrow_idx[lab] for lab in rel)
            except KeyError as exc:
                raise InputError(f"unknown arrow in relation: {exc}") from None
            for u, v in zip(path, path[1:]):
                if arrow_tgt[u] != arrow_src[v]:
                    raise InputError(f"relation {'*'.join(rel)} is not a path")
            rels.append(path)
        rel_set = set(rels)
        max_rel = max((len(r) for r in rels), default=0)

        def dies(path: Tuple[int, ...]) -> bool:
            # only suffix windows can become a relation after one extension
            for ln in range(2, min(max_rel, len(path)) + 1):
                if path[-ln:] in rel_set:
                    return True
            return False

        paths: List[Tuple[int, ...]] = [() for _ in range(nv)]
        trivial_vertex = list(range(nv))
        src = list(range(nv))
        tgt = list(range(nv))
        alive: List[Tuple[Tuple[int, ...], int, int]] = [
            ((a,), arrow_src[a], arrow_tgt[a]) for a in range(len(quiver.arrows))]
        length = 1
        while alive:
            for p, s, t in alive:
                paths.append(p)
                src.append(s)
                tgt.append(t)
            if len(paths) > path_cap:
                raise BoundExceeded(
                    f"path algebra exceeds {path_cap} basis paths; "
                    "infinite-dimensional or raise path_cap")
            nxt = []
            for p, s, t in alive:
                for a in range(len(quiver.arrows)):
                    if arrow_src[a] != t:
                        continue
                    q = p + (a,)
                    if not dies(q):
                        nxt.append((q, s, arrow_tgt[a]))
            alive = nxt
            length += 1
            if length > path_cap:
                raise BoundExceeded("path length cap exceeded (cycle without relations?)")

        index_of = {}
        labels = []
        for i, p in enumerate(paths):
            if p == ():
                lab = f"e_{quiver.vertices[trivial_vertex[i]]}" if i < nv else "?"
            else:
                lab = "*".join(quiver.arrows[a][0] for a in p)
            labels.append(lab)
            index_of[(p, src[i])] = i

        dimail = len(paths)
        f = field
        zero = tuple(f.zero for _ in range(dimail))
        mult: List[List[Vec]] = [[zero] * dimail for _ in range(dimail)]
        for i in range(dimail):
            for j in range(dimail):
                if tgt[i] != src[j]:
                    continue
                concat = paths[i] + paths[j]
                key = (concat, src[i])
                if key in index_of:
                    k = index_of[key]
                    mult[i][j] = tuple(
                        f.one if m == k else f.zero for m in range(dimail))
                # else: the concatenation hits a relation and the product is 0
        return cls(field, quiver.vertices, labels, src, tgt, mult,
                   quiver=quiver, path_arrows=paths)

    def op(self) -> "Algebra":
        """Opposite algebra; shares the basis index set, op().op() is self."""
        if self._op is None:
            mult_op = [[self.mult[j][i] for j in range(self.dim)]
                       for i in range(self.dim)]
            opp = Algebra(self.field, self.vertex_labels, self.basis_labels,
                          self.target, self.source, mult_op,
                          validate=False)
            opp._op = self
            self._op = opp
        return self._op

    def corner(self, subset: Sequence[int]) -> Tuple["Algebra", Tuple[int, ...]]:
        """eAe for e = sum of the selected idempotents, with basis embedding."""
        subset = sorted(set(subset))
        for i in subset:
            if not 0 <= i < self.nvert:
                raise InputError(f"vertex index {i} out of range")
        if not subset:
            return Algebra.zero_algebra(self.field), ()
        keep = [b for b in range(self.dim)
                if self.source[b] in subset and self.target[b] in subset]
        vert_new = {v: k for k, v in enumerate(subset)}
        pos = {b: k for k, b in enumerate(keep)}
        f = self.field
        mult = []
        for b in keep:
            row = []
            for c in keep:
                prod = self.mult[b][c]
                vec = [f.zero] * len(keep)
                for m, pm in enumerate(prod):
                    if pm != f.zero:
                        if m not in pos:
                            raise InputError("corner not closed; basis not aligned")
                        vec[pos[m]] = pm
                row.append(tuple(vec))
            mult.append(row)
        sub_alg = Algebra(f, [self.vertex_labels[v] for v in subset],
                          [self.basis_labels[b] for b in keep],
                          [vert_new[self.source[b]] for b in keep],
                          [vert_new[self.target[b]] for b in keep],
                          mult, validate=False)
        return sub_alg, tuple(keep)

    def quotient(self, subset: Sequence[int]) -> Tuple["Algebra", Tuple[Optional[int], ...]]:
        """A/AeA for e = sum of selected idempotents, with basis projection."""
        subset = sorted(set(subset))
        for i in subset:
            if not 0 <= i < self.nvert:
                raise InputError(f"vertex index {i} out of range")
        if not subset:
            return self, tuple(range(self.dim))
        f = self.field
        # span of b * e_i * c over basis pairs and selected idempotents
        gens = []
        for i in subset:
            ei = self.basis_vec(i)
            for b in range(self.dim):
                left = self.mul_vec(self.basis_vec(b), ei)
                if self.is_zero_vec(left):
                    continue
                for c in range(self.dim):
                    v = self.mul_vec(left, self.basis_vec(c))
                    if not self.is_zero_vec(v):
                        gens.append(list(v))
        if not gens:
            return self, tuple(range(self.dim))
        basis = la.row_space_basis(Mat(f, gens, ncols=self.dim))
        in_ideal = set()
        for row in basis.rows:
            support = [k for k, x in enumerate(row) if x != f.zero]
            if len(support) != 1 or row[support[0]] != f.one:
                raise InputError(
                    "AeA is not spanned by basis elements; supply explicit "
                    "structure constants for the quotient")
            in_ideal.add(support[0])
        keep = [b for b in range(self.dim) if b not in in_ideal]
        vert_keep = [v for v in range(self.nvert) if v not in in_ideal]
        vert_new = {v: k for k, v in enumerate(vert_keep)}
        pos = {b: k for k, b in enumerate(keep)}
        proj: List[Optional[int]] = [pos.get(b) for b in range(self.dim)]
        mult = []
        for b in keep:
            row = []
            for c in keep:
                prod = self.mult[b][c]
                vec = [f.zero] * len(keep)
                for m, pm in enumerate(prod):
                    if pm != f.zero and m in pos:
                        vec[pos[m]] = pm
                row.append(tuple(vec))
            mult.append(row)
        q_alg = Algebra(f, [self.vertex_labels[v] for v in vert_keep],
                        [self.basis_labels[b] for b in keep],
                        [vert_new[self.source[b]] for b in keep],
                        [vert_new[self.target[b]] for b in keep],
                        mult, validate=False)
        return q_alg, tuple(proj)

    # -- distinguished modules ------------------------------------------------

    def projective_module(self, i: int) -> "Module":
        key = ("proj", i)
        if key not in self._module_cache:
            idx = [b for b in range(self.dim) if self.source[b] == i]
            pos = {b: k for k, b in enumerate(idx)}
            f = self.field
            action = []
            for c in range(self.dim):
                rows = []
                for b in idx:
                    prod = self.mult[b][c]
                    vec = [f.zero] * len(idx)
                    for m, pm in enumerate(prod):
                        if pm != f.zero:
                            vec[pos[m]] = pm
                    rows.append(vec)
                action.append(Mat(f, rows, ncols=len(idx)))
            self._module_cache[key] = Module(self, len(idx), action,
                                             basis_in_algebra=tuple(idx))
        return self._module_cache[key]

    def simple_module(self, i: int) -> "Module":
        key = ("simple", i)
        if key not in self._module_cache:
            f = self.field
            action = []
            for c in range(self.dim):
                val = f.one if c == i else f.zero
                action.append(Mat(f, [[val]], ncols=1))
            self._module_cache[key] = Module(self, 1, action)
        return self._module_cache[key]

    def injective_module(self, i: int) -> "Module":
        # dual of the left projective A e_i, computed through the opposite algebra
        key = ("inj", i)
        if key not in self._module_cache:
            self._module_cache[key] = dual_module(self.op().projective_module(i))
        return self._module_cache[key]

    def __repr__(self):
        return f"Algebra(dim={self.dim}, vertices={list(self.vertex_labels)})"


def _is_number(s: str) -> bool:
    s = s.strip()
    if not s:
        return False
    body = s[1:] if s[0] in "+-" else s
    return body.replace("/", "", 1).isdigit()


class Module:
    """Finite-dimensional right module: action matrices in row convention."""

    def __init__(self, algebra: Algebra, dim: int, action: List[Mat],
                 basis_in_algebra: Optional[Tuple[int, ...]] = None,
                 validate: bool = False):
        self.algebra = algebra
        self.dim = dim
        self.action = action
        self.basis_in_algebra = basis_in_algebra
        if validate:
            self.validate()

    def validate(self):
        A, f = self.algebra, self.algebra.field
        if len(self.action) != A.dim:
            raise InputError("need one action matrix per algebra basis element")
        for m in self.action:
            if m.shape != (self.dim, self.dim):
                raise InputError("action matrix shape mismatch")
        one = Mat.zeros(f, self.dim, self.dim)
        for i in range(A.nvert):
            one = one + self.action[i]
        if one != Mat.identity(f, self.dim):
            raise InputError("unit does not act as identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] @ self.action[j]
                rhs = Mat.zeros(f, self.dim, self.dim)
                for k, c in enumerate(A.mult[i][j]):
                    if c != f.zero:
                        rhs = rhs + self.action[k].scale(c)
                if lhs != rhs:
                    raise InputError(f"action violates structure constants at ({i},{j})")

    def act(self, v: Sequence, x: Vec) -> List:
        """Row vector v times the action of the algebra element x."""
        f = self.algebra.field
        out = [f.zero] * self.dim
        for i, xi in enumerate(x):
            if xi == f.zero:
                continue
            mat = self.action[i]
            for r, vr in enumerate(v):
                if vr == f.zero:
                    continue
                c = f.mul(vr, xi)
                row = mat.rows[r]
                for k in range(self.dim):
                    if row[k] != f.zero:
                        out[k] = f.add(out[k], f.mul(c, row[k]))
        return out

    def e_weight_positions(self, i: int) -> List[int]:
        """Positions where the idempotent projection is a coordinate unit.

        All modules constructed in this package have e-diagonal bases; this is
        asserted rather than assumed.
        """
        f = self.algebra.field
        mat = self.action[i]
        pos = []
        for r in range(self.dim):
            row = mat.rows[r]
            if row[r] == f.one:
                if any(row[c] != f.zero for c in range(self.dim) if c != r):
                    raise InputError("module basis is not idempotent-diagonal")
                pos.append(r)
            elif any(x != f.zero for x in row):
                raise InputError("module basis is not idempotent-diagonal")
        return pos

    def radical_rows(self) -> Mat:
        """Basis of M * rad as rows."""
        A, f = self.algebra, self.algebra.field
        rows = []
        for b in A.radical_indices:
            rows.extend(self.action[b].rows)
        if not rows:
            return Mat.zeros(f, 0, self.dim)
        return la.row_space_basis(Mat(f, [list(r) for r in rows], ncols=self.dim))

    def top_generators(self) -> List[Tuple[int, List]]:
        """(vertex, row vector) lifts of a basis of M / M rad, e-homogeneous."""
        A, f = self.algebra, self.algebra.field
        rad = self.radical_rows()
        gens = []
        for i in range(A.nvert):
            pos = self.e_weight_positions(i)
            if not pos:
                continue
            rad_i = la.vstack([rad @ self.action[i], Mat.zeros(f, 0, self.dim)]) \
                if rad.nrows else Mat.zeros(f, 0, self.dim)
            current = la.row_space_basis(rad_i) if rad_i.nrows else Mat.zeros(f, 0, self.dim)
            rows = [list(current.rows[k]) for k in range(current.nrows)]
            base_rank = len(rows)
            for r in pos:
                cand = [f.one if k == r else f.zero for k in range(self.dim)]
                test = Mat(f, rows + [cand], ncols=self.dim)
                if la.rank(test) > len(rows):
                    gens.append((i, cand))
                    rows.append(cand)
            del base_rank
        return gens

    def projective_cover(self) -> Tuple[List[int], Mat]:
        """Vertices of the cover and the (surjective) cover map as a matrix."""
        A, f = self.algebra, self.algebra.field
        gens = self.top_generators()
        verts = [i for i, _ in gens]
        blocks = []
        for i, v in gens:
            blocks.append(yoneda_map(A, i, self, v))
        if not blocks:
            return [], Mat.zeros(f, 0, self.dim)
        cover = la.vstack(blocks)
        assert la.rank(cover) == self.dim, "cover is not surjective"
        return verts, cover

    def __repr__(self):
        return f"Module(dim={self.dim} over {self.algebra!r})"


def yoneda_map(A: Algebra, i: int, target: Module, v: Sequence) -> Mat:
    """The module map P_i -> target sending the generator to the row v."""
    P = A.projective_module(i)
    rows = []
    for b in P.basis_in_algebra:
        rows.append(target.act(v, A.basis_vec(b)))
    return Mat(A.field, rows, ncols=target.dim)


def zero_module(A: Algebra) -> Module:
    return Module(A, 0, [Mat.zeros(A.field, 0, 0) for _ in range(A.dim)])


def direct_sum_modules(A: Algebra, mods: Sequence[Module]) -> Tuple[Module, List[Tuple[int, int]]]:
    """Direct sum and the (start, stop) block slices of the summands."""
    f = A.field
    dims = [m.dim for m in mods]
    total = sum(dims)
    slices = []
    start = 0
    for d in dims:
        slices.append((start, start + d))
        start += d
    action = []
    for b in range(A.dim):
        big = Mat.zeros(f, total, total)
        for m, (s, _) in zip(mods, slices):
            mat = m.action[b]
            for r in range(m.dim):
                row = big.rows[s + r]
                src = mat.rows[r]
                for c in range(m.dim):
                    row[s + c] = src[c]
        action.append(big)
    return Module(A, total, action), slices


def projectives_module(A: Algebra, verts: Sequence[int]) -> Tuple[Module, List[Tuple[int, int]]]:
    mods = [A.projective_module(i) for i in verts]
    return direct_sum_modules(A, mods)


def dual_module(M: Module) -> Module:
    """Right module over the opposite algebra on the dual space."""
    A = M.algebra
    opp = A.op()
    action = [M.action[b].transpose() for b in range(A.dim)]
    return Module(opp, M.dim, action)


def submodule_from_rows(M: Module, rows: Mat) -> Tuple[Module, Mat]:
    """Module structure on a row space closed under the action."""
    A, f = M.algebra, M.algebra.field
    k = rows.nrows
    action = []
    for b in range(A.dim):
        img = rows @ M.action[b]
        coords = la.express_rows(rows, img)
        if coords is None:
            raise InputError("row space is not a submodule")
        action.append(coords)
    return Module(A, k, action), rows


def kernel_module(M: Module, F: Mat, N: Module) -> Tuple[Module, Mat]:
    """Kernel of the module map F: M -> N with its inclusion rows."""
    f = M.algebra.field
    if F.shape != (M.dim, N.dim):
        raise InputError("map shape mismatch")
    rows = la.left_kernel_basis(F)
    mat = Mat(f, rows, ncols=M.dim) if rows else Mat.zeros(f, 0, M.dim)
    return submodule_from_rows(M, mat)


def module_hom_space(M: Module, N: Module) -> List[Mat]:
    """Basis of Hom_A(M, N): matrices F with action_M(b) @ F = F @ action_N(b)."""
    A, f = M.algebra, M.algebra.field
    if N.algebra is not A:
        raise InputError("modules over different algebras")
    nvars = M.dim * N.dim
    if nvars == 0:
        return []
    rows = []
    for b in range(A.dim):
        am, an = M.action[b], N.action[b]
        # equation (am @ F - F @ an)[r][c] = 0
        for r in range(M.dim):
            for c in range(N.dim):
                coeff = [f.zero] * nvars
                for k in range(M.dim):
                    if am.rows[r][k] != f.zero:
                        coeff[k * N.dim + c] = f.add(coeff[k * N.dim + c], am.rows[r][k])
                for k in range(N.dim):
                    if an.rows[k][c] != f.zero:
                        coeff[r * N.dim + k] = f.sub(coeff[r * N.dim + k], an.rows[k][c])
                rows.append(coeff)
    sys = Mat(f, rows, ncols=nvars) if rows else Mat.zeros(f, 0, nvars)
    basis = []
    for v in la.kernel_basis(sys):
        basis.append(Mat(f, [[v[r * N.dim + c] for c in range(N.dim)]
                             for r in range(M.dim)], ncols=N.dim))
    return basis


@dataclass
class Resolution:
    """Minimal projective resolution ... -> P_1 -> P_0 -> M -> 0.

    maps[i] is the module map P_{i+1} -> P_i; aug maps P_0 onto M.
    """

    module: Module
    verts: List[List[int]]          # vertices of each projective term
    modules: List[Module]           # the projective terms as modules
    maps: List[Mat]
    aug: Mat

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def check_exact(self) -> bool:
        ranks = [la.rank(m) for m in self.maps]
        dims = [m.dim for m in self.modules]
        # exactness at P_i: rank(d_{i+1}) + rank(d_i) = dim P_i, with
        # d_0 = aug; at the far end the last map must be injective
        aug_rank = la.rank(self.aug)
        if aug_rank != self.module.dim:
            return False
        chain = [aug_rank] + ranks
        for i in range(len(self.modules)):
            incoming = chain[i + 1] if i + 1 < len(chain) else 0
            if incoming + chain[i] != dims[i]:
                return False
        return True


def projective_resolution(M: Module, max_len: int = 32) -> Resolution:
    """Minimal resolution by iterated covers; raises when max_len is hit."""
    A = M.algebra
    verts0, cover = M.projective_cover()
    P0, _ = projectives_module(A, verts0)
    verts, modules, maps = [verts0], [P0], []
    current, incl_target, target_mod = P0, cover, M
    cur_map = cover
    while True:
        K, incl = kernel_module(current, cur_map, target_mod)
        if K.dim == 0:
            break
        if len(modules) > max_len:
            raise BoundExceeded(
                f"resolution exceeds {max_len}: possibly infinite projective dimension")
        kverts, kcover = K.projective_cover()
        Pn, _ = projectives_module(A, kverts)
        step = kcover @ incl  # P_n -> K -> current
        verts.append(kverts)
        modules.append(Pn)
        maps.append(step)
        target_mod, cur_map, current = current, step, Pn
    res = Resolution(M, verts, modules, maps, cover)
    assert res.check_exact()
    return res


def projective_dimension(M: Module, bound: int = 32) -> Optional[int]:
    if M.dim == 0:
        return 0
    try:
        return projective_resolution(M, max_len=bound).length
    except BoundExceeded:
        return None


def global_dimension(A: Algebra, bound: int = 32) -> Optional[int]:
    """Max projective dimension over the simples; None when the bound is hit."""
    if A.dim == 0:
        return 0
    worst = 0
    for i in range(A.nvert):
        pd = projective_dimension(A.simple_module(i), bound)
        if pd is None:
            return None
        worst = max(worst, pd)
    return worst
