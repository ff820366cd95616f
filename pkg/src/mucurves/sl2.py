"""Finite-dimensional sl2 weight modules with explicit raising/lowering.

A RepSpace is an ordered weighted basis plus exact matrices for e and f; the
commutator [e, f] must reproduce the diagonal weight action, e must raise
weights by exactly 2 and f lower them by 2.  Derived modules (dual, Sym^2,
wedge^2, tensor) get their actions from the Leibniz rule.

Dual convention: the dual action used throughout is the plain transpose,
e_dual = e^T and f_dual = f^T with weights negated.  The transpose-negate
alternative fails to reproduce the dual action table this model is required
to match (e.g. it gives e.du_m1 = -3 du_m3 where +3 du_m3 is required), so
the table wins and the flip is recorded in the pipeline report.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import linalg
from .poly import MultiPoly, PolyRing


class RepSpace:
    """Weight module with basis labels, integer weights, and exact e/f.

    Action matrices are stored column-wise: act_e[j] is the coordinate
    vector of e . basis_j."""

    def __init__(self, labels: Sequence[str], weights: Sequence[int],
                 act_e, act_f, pairs=None, base=None, kind="atomic"):
        self.labels = tuple(labels)
        self.weights = tuple(weights)
        self.dim = len(self.labels)
        self.act_e = [list(map(Fraction, col)) for col in act_e]
        self.act_f = [list(map(Fraction, col)) for col in act_f]
        self.pairs = pairs      # for sym2/wedge2/tensor: index pairs into base
        self.base = base
        self.kind = kind
        self._check()

    def _check(self):
        n = self.dim
        for name, mat, jump in (("e", self.act_e, 2), ("f", self.act_f, -2)):
            if len(mat) != n or any(len(col) != n for col in mat):
                raise ValueError(f"act_{name} has wrong shape")
            for j, col in enumerate(mat):
                for i, c in enumerate(col):
                    if c != 0 and self.weights[i] != self.weights[j] + jump:
                        raise ValueError(
                            f"act_{name} violates the weight-{jump} structure at "
                            f"({self.labels[i]}, {self.labels[j]})")
        # [e, f] = h, exactly
        for j in range(n):
            ef = self._apply(self.act_e, self.act_f[j])
            fe = self._apply(self.act_f, self.act_e[j])
            for i in range(n):
                expect = Fraction(self.weights[j]) if i == j else Fraction(0)
                if ef[i] - fe[i] != expect:
                    raise ValueError(f"[e,f] != h at column {self.labels[j]}")

    @staticmethod
    def _apply(mat, vec):
        n = len(vec)
        out = [Fraction(0)] * n
        for j, c in enumerate(vec):
            if c:
                col = mat[j]
                for i in range(n):
                    if col[i]:
                        out[i] += c * col[i]
        return out

    def vector(self, coords) -> "RepVector":
        return RepVector(self, coords)

    def basis_vector(self, i: int) -> "RepVector":
        coords = [Fraction(0)] * self.dim
        coords[i] = Fraction(1)
        return RepVector(self, coords)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def e(self, v: "RepVector") -> "RepVector":
        return RepVector(self, self._apply(self.act_e, v.coords))

    def f(self, v: "RepVector") -> "RepVector":
        return RepVector(self, self._apply(self.act_f, v.coords))

    def h(self, v: "RepVector") -> "RepVector":
        return RepVector(self, [Fraction(w) * c for w, c in zip(self.weights, v.coords)])

    def weight_indices(self, wt: int):
        return [i for i, w in enumerate(self.weights) if w == wt]

    def __repr__(self):
        return f"RepSpace(dim={self.dim}, weights={self.weights})"


@dataclass
class RepVector:
    space: RepSpace
    coords: list

    def __init__(self, space, coords):
        coords = list(map(Fraction, coords))
        if len(coords) != space.dim:
            raise ValueError("coordinate length mismatch")
        self.space = space
        self.coords = coords

    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def weight(self):
        wts = {self.space.weights[i] for i, c in enumerate(self.coords) if c != 0}
        if len(wts) != 1:
            raise ValueError(f"not weight-homogeneous: weights {sorted(wts)}")
        return wts.pop()

    def __add__(self, other):
        return RepVector(self.space, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return RepVector(self.space, [a - b for a, b in zip(self.coords, other.coords)])

    def __mul__(self, c):
        return RepVector(self.space, [a * Fraction(c) for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, RepVector) and self.space is other.space \
            and self.coords == other.coords

    def __str__(self):
        parts = []
        for c, lab in zip(self.coords, self.space.labels):
            if c:
                parts.append(f"{c}*{lab}")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def proportionality(v: RepVector, w: RepVector):
    """The scalar c with v = c*w, or None."""
    c = None
    for a, b in zip(v.coords, w.coords):
        if (a == 0) != (b == 0):
            return None
        if b != 0:
            if c is None:
                c = a / b
            elif a / b != c:
                return None
    return c


def sym_power_std(d: int) -> RepSpace:
    """W_d = Sym^d(C^2) with basis u_d, u_{d-2}, ..., u_{-d} and
    e.u_{d-2i} = i u_{d-2(i-1)}, f.u_{d-2i} = (d-i) u_{d-2(i+1)},
    h.u_{d-2i} = (d-2i) u_{d-2i}."""
    if d < 0:
        raise ValueError("d must be >= 0")
    n = d + 1
    labels = []
    weights = []
    for i in range(n):
        w = d - 2 * i
        labels.append(f"u{w}" if w >= 0 else f"u_m{-w}")
        weights.append(w)
    act_e = [[Fraction(0)] * n for _ in range(n)]
    act_f = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if i - 1 >= 0:
            act_e[i][i - 1] = Fraction(i)
        if i + 1 < n:
            act_f[i][i + 1] = Fraction(d - i)
    return RepSpace(labels, weights, act_e, act_f)


def construct(kind: str, base: RepSpace, other: RepSpace | None = None) -> RepSpace:
    """Derived module: dual | sym2 | wedge2 | tensor, Leibniz-induced."""
    if kind == "dual":
        n = base.dim
        act_e = [[base.act_e[i][j] for i in range(n)] for j in range(n)]
        act_f = [[base.act_f[i][j] for i in range(n)] for j in range(n)]
        labels = tuple("d" + l for l in base.labels)
        weights = tuple(-w for w in base.weights)
        return RepSpace(labels, weights, act_e, act_f, base=base, kind="dual")
    if kind in ("sym2", "wedge2"):
        sym = kind == "sym2"
        if sym:
            pairs = [(i, j) for i in range(base.dim) for j in range(i, base.dim)]
        else:
            pairs = [(i, j) for i in range(base.dim) for j in range(i + 1, base.dim)]
        index = {p: k for k, p in enumerate(pairs)}
        sep = "*" if sym else "^"
        labels = [f"{base.labels[i]}{sep}{base.labels[j]}" for i, j in pairs]
        weights = [base.weights[i] + base.weights[j] for i, j in pairs]
        n = len(pairs)

        def leibniz(mat):
            out = [[Fraction(0)] * n for _ in range(n)]
            for k, (i, j) in enumerate(pairs):
                # g.(b_i b_j) = (g.b_i) b_j + b_i (g.b_j)
                for t in range(base.dim):
                    c = mat[i][t]
                    if c:
                        _add_pair(out[k], index, t, j, c, sym)
                    c = mat[j][t]
                    if c:
                        _add_pair(out[k], index, i, t, c, sym)
            return out

        return RepSpace(labels, weights, leibniz(base.act_e), leibniz(base.act_f),
                        pairs=pairs, base=base, kind=kind)
    if kind == "tensor":
        if other is None:
            raise ValueError("tensor needs two spaces")
        pairs = [(i, j) for i in range(base.dim) for j in range(other.dim)]
        index = {p: k for k, p in enumerate(pairs)}
        labels = [f"{base.labels[i]}(x){other.labels[j]}" for i, j in pairs]
        weights = [base.weights[i] + other.weights[j] for i, j in pairs]
        n = len(pairs)

        def act(matb, mato):
            out = [[Fraction(0)] * n for _ in range(n)]
            for k, (i, j) in enumerate(pairs):
                for t in range(base.dim):
                    if matb[i][t]:
                        out[k][index[(t, j)]] += matb[i][t]
                for t in range(other.dim):
                    if mato[j][t]:
                        out[k][index[(i, t)]] += mato[j][t]
            return out

        return RepSpace(labels, weights, act(base.act_e, other.act_e),
                        act(base.act_f, other.act_f), pairs=pairs, base=base,
                        kind="tensor")
    raise ValueError(f"unknown construction {kind!r}")


def _add_pair(col, index, i, j, c, sym):
    if sym:
        if i > j:
            i, j = j, i
        col[index[(i, j)]] += c
    else:
        if i == j:
            return
        if i < j:
            col[index[(i, j)]] += c
        else:
            col[index[(j, i)]] -= c


def highest_weight_vectors(space: RepSpace, wt: int) -> list[RepVector]:
    """Basis of ker(e) inside the weight-wt eigenspace, in reduced echelon
    form for determinism."""
    idx = space.weight_indices(wt)
    if not idx:
        return []
    rows = []
    for i in range(space.dim):
        row = [space.act_e[j][i] for j in idx]
        if any(row):
            rows.append(row)
    if not rows:
        basis = [[Fraction(1) if k == t else Fraction(0) for k in range(len(idx))]
                 for t in range(len(idx))]
    else:
        basis = linalg.nullspace(rows, len(idx))
    out = []
    red, _ = linalg.rref(basis) if basis else ([], [])
    for v in red:
        coords = [Fraction(0)] * space.dim
        for k, i in enumerate(idx):
            coords[i] = v[k]
        out.append(RepVector(space, coords))
    return out


def lowering_orbit(v: RepVector) -> list[RepVector]:
    """[v, f.v, f^2.v, ...] truncated before the first zero; spans the
    irreducible submodule generated by v when v is highest weight."""
    if v.is_zero():
        raise ValueError("lowering_orbit of the zero vector")
    out = [v]
    cur = v
    for _ in range(v.space.dim + 1):
        cur = v.space.f(cur)
        if cur.is_zero():
            return out
        out.append(cur)
    raise RuntimeError("f-orbit failed to terminate")


def subrepresentation(space: RepSpace, vectors: Sequence[RepVector],
                      labels: Sequence[str]) -> RepSpace:
    """Restrict the action to the span of independent vectors; raises if the
    span is not e/f-closed."""
    mat = [list(v.coords) for v in vectors]
    cols = [list(c) for c in zip(*mat)]

    def express(w: RepVector):
        sol = linalg.solve(cols, w.coords)
        if sol is None:
            raise ValueError("span is not closed under the action")
        return sol

    act_e = [express(space.e(v)) for v in vectors]
    act_f = [express(space.f(v)) for v in vectors]
    weights = [v.weight() for v in vectors]
    return RepSpace(labels, weights, act_e, act_f, base=space, kind="sub")


def invariant_bilinear_form(space: RepSpace):
    """The sl2-invariant bilinear form on an irreducible module, as a matrix
    in the given basis, unique up to scalar: B(e.x, y) + B(x, e.y) = 0 and
    the same for f.  Normalized so the first nonzero entry is 1."""
    n = space.dim
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    rows = []
    for mat in (space.act_e, space.act_f):
        for a in range(n):
            for b in range(n):
                row = [Fraction(0)] * (n * n)
                for k in range(n):
                    if mat[a][k]:
                        row[idx[(k, b)]] += mat[a][k]
                    if mat[b][k]:
                        row[idx[(a, k)]] += mat[b][k]
                if any(row):
                    rows.append(row)
    basis = linalg.nullspace(rows, n * n)
    if len(basis) != 1:
        raise ValueError(f"invariant form space has dimension {len(basis)}")
    v = basis[0]
    first = next(x for x in v if x != 0)
    v = [x / first for x in v]
    return [[v[idx[(i, j)]] for j in range(n)] for i in range(n)]


# -- apolarity on Sym^2 -------------------------------------------------------

def sym2_pairing_value(pair_dual, pair_primal) -> Fraction:
    """<du_i du_j, u_k u_l> = delta * binom(2, multiindex)^{-1}: mixed pairs
    pair to 1/2, squares to 1."""
    if tuple(sorted(pair_dual)) != tuple(sorted(pair_primal)):
        return Fraction(0)
    i, j = pair_dual
    return Fraction(1) if i == j else Fraction(1, 2)


def apolar_annihilator(S: Sequence[RepVector], sym2_primal: RepSpace) -> list[RepVector]:
    """Annihilator in Sym^2 W of a subspace S of Sym^2 W* under the polar
    pairing; dimension = dim Sym^2 - rank of the restricted pairing."""
    if not S:
        return [sym2_primal.basis_vector(i) for i in range(sym2_primal.dim)]
    dual_space = S[0].space
    rows = []
    for s in S:
        row = []
        for pp in sym2_primal.pairs:
            val = Fraction(0)
            for k, c in enumerate(s.coords):
                if c:
                    val += c * sym2_pairing_value(dual_space.pairs[k], pp)
            row.append(val)
        rows.append(row)
    basis = linalg.nullspace(rows, sym2_primal.dim)
    red, _ = linalg.rref(basis) if basis else ([], [])
    return [RepVector(sym2_primal, v) for v in red]


# -- polynomial views ---------------------------------------------------------

def atomic_poly_map(space: RepSpace, ring: PolyRing) -> Callable[[RepVector], MultiPoly]:
    """Vectors of an atomic space as linear forms in a ring whose variable
    names match the basis labels."""
    def to_poly(v: RepVector) -> MultiPoly:
        out = ring.zero()
        for c, lab in zip(v.coords, space.labels):
            if c:
                out = out + ring.var(lab) * c
        return out
    return to_poly


def pair_poly_map(space: RepSpace, ring: PolyRing) -> Callable[[RepVector], MultiPoly]:
    """Vectors of a sym2 space as quadrics: basis pair (i, j) maps to the
    product of the base labels as ring variables."""
    base = space.base

    def to_poly(v: RepVector) -> MultiPoly:
        out = ring.zero()
        for c, (i, j) in zip(v.coords, space.pairs):
            if c:
                out = out + ring.var(base.labels[i]) * ring.var(base.labels[j]) * c
        return out
    return to_poly
