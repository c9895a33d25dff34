"""Structure-constant Lie algebras over the Gaussian rationals.

Elements are coordinate vectors in a fixed basis; subspaces carry a
reduced-echelon basis so membership and equality are exact.  Provides
brackets, Jacobi verification, derived series, adjoint matrices,
simultaneous eigenspace decompositions with rational spectra, and
relative normalizers.
"""

from __future__ import annotations

from fractions import Fraction

from .exact_core import (
    ExactMatrix,
    G_ONE,
    G_ZERO,
    GaussianScalar,
    format_rational,
    gvec,
    rational_roots,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
)


class NonCommutingError(Exception):
    """The given elements do not have commuting adjoint actions."""


class NonRationalSpectrumError(Exception):
    """An adjoint map is not diagonalizable with rational eigenvalues."""


class LieAlgebraData:
    """A Lie algebra given by its structure constants.

    [e_i, e_j] = sum_k c[i][j][k] e_k, antisymmetry is enforced at
    construction and the Jacobi identity can be verified exactly on all
    basis triples.
    """

    def __init__(self, basis, table, check=True):
        """table: dict (i, j) -> {k: scalar} for i < j; rest inferred."""
        self.basis = tuple(basis)
        n = len(self.basis)
        self.dim = n
        full = [[[G_ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j), row in table.items():
            if i == j:
                raise ValueError("diagonal structure constants must be zero")
            for k, c in row.items():
                c = GaussianScalar.coerce(c)
                full[i][j][k] = c
                full[j][i][k] = -c
        self.c = full
        self.real_flag = all(
            full[i][j][k].is_real() for i in range(n) for j in range(n) for k in range(n)
        )
        if check:
            w = self.check_jacobi()
            if w is not None:
                raise ValueError(f"Jacobi identity fails on basis triple {w}")

    # -- core operations -----------------------------------------------------
    def bracket_basis(self, i, j):
        return list(self.c[i][j])

    def bracket(self, x, y):
        x = gvec(x)
        y = gvec(y)
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("element dimension mismatch")
        out = [G_ZERO] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                cij = self.c[i][j]
                f = xi * yj
                for k in range(self.dim):
                    if cij[k]:
                        out[k] = out[k] + cij[k] * f
        return out

    def ad(self, x):
        """Matrix of ad(x) = [x, .] in the algebra basis."""
        cols = [self.bracket(x, self.unit(j)) for j in range(self.dim)]
        return ExactMatrix.from_columns(cols)

    def unit(self, i):
        v = [G_ZERO] * self.dim
        v[i] = G_ONE
        return v

    def element(self, coeffs):
        """Element from a {label: scalar} mapping."""
        v = [G_ZERO] * self.dim
        for name, c in coeffs.items():
            v[self.basis.index(name)] = GaussianScalar.coerce(c)
        return v

    def describe(self, v):
        parts = []
        for name, c in zip(self.basis, v):
            if c:
                parts.append(f"{c}*{name}" if c != G_ONE else name)
        return " + ".join(parts).replace(" + -", " - ") if parts else "0"

    # -- verification ----------------------------------------------------------
    def check_jacobi(self):
        """None if the Jacobi identity holds on all basis triples, else the
        first failing triple (i, j, k)."""
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                bij = self.c[i][j]
                for k in range(j + 1, self.dim):
                    s = self.bracket(bij, self.unit(k))
                    s = vec_add(s, self.bracket(self.c[j][k], self.unit(i)))
                    s = vec_add(s, self.bracket(self.c[k][i], self.unit(j)))
                    if not vec_is_zero(s):
                        return (i, j, k)
        return None

    # -- series ---------------------------------------------------------------
    def derived_series(self):
        chain = [Subspace.full(self)]
        while True:
            cur = chain[-1]
            vecs = []
            for a in range(cur.dim):
                for b in range(a + 1, cur.dim):
                    vecs.append(self.bracket(cur.vectors[a], cur.vectors[b]))
            nxt = Subspace.span(self, vecs)
            chain.append(nxt)
            if nxt.dim == cur.dim or nxt.dim == 0:
                break
        return chain

    def is_solvable(self):
        return self.derived_series()[-1].dim == 0

    # -- serialization ----------------------------------------------------------
    def to_sparse_triples(self):
        out = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(self.dim):
                    c = self.c[i][j][k]
                    if c:
                        out.append([i, j, k, str(c)])
        return out

    @classmethod
    def from_sparse_triples(cls, basis, triples, check=True):
        from .exact_core import parse_gaussian

        table = {}
        for t in triples:
            if len(t) != 4:
                raise ValueError(f"bad structure constant entry: {t!r}")
            i, j, k, s = t
            table.setdefault((i, j), {})[k] = parse_gaussian(s)
        return cls(basis, table, check=check)

    def __repr__(self):
        return f"LieAlgebraData(dim={self.dim}, basis={self.basis})"


class Subspace:
    """A subspace of a LieAlgebraData, stored with an RREF basis."""

    def __init__(self, parent, vectors):
        self.parent = parent
        vectors = [gvec(v) for v in vectors]
        if vectors:
            M = ExactMatrix(vectors)
            R, pivots = M.rref()
            if len(pivots) != len(vectors):
                raise ValueError("basis vectors are linearly dependent")
            self.vectors = [R.row(i) for i in range(len(pivots))]
            self.pivots = pivots
        else:
            self.vectors = []
            self.pivots = []
        self.dim = len(self.vectors)

    @classmethod
    def full(cls, parent):
        return cls(parent, [parent.unit(i) for i in range(parent.dim)])

    @classmethod
    def span(cls, parent, vectors):
        vectors = [gvec(v) for v in vectors if not vec_is_zero(gvec(v))]
        if not vectors:
            return cls(parent, [])
        R, pivots = ExactMatrix(vectors).rref()
        return cls(parent, [R.row(i) for i in range(len(pivots))])

    def residual(self, v):
        """v minus its projection onto the span; zero iff v is a member."""
        v = gvec(v)
        for row, p in zip(self.vectors, self.pivots):
            if v[p]:
                v = vec_sub(v, vec_scale(row, v[p]))
        return v

    def contains(self, v):
        return vec_is_zero(self.residual(v))

    def contains_space(self, other):
        return all(self.contains(v) for v in other.vectors)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.dim == other.dim and self.contains_space(other)

    def coordinates(self, v):
        """Coordinates of v in this subspace basis; NoSolutionError if outside."""
        M = ExactMatrix.from_columns(self.vectors)
        x, _ = M.solve(v)
        return x

    def sum_with(self, other):
        return Subspace.span(self.parent, self.vectors + other.vectors)

    def intersection(self, other):
        # kernel trick on stacked coordinates
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.parent, [])
        A = ExactMatrix.from_columns(
            [v for v in self.vectors] + [vec_scale(v, -1) for v in other.vectors]
        )
        vecs = []
        for k in A.kernel():
            comb = [G_ZERO] * self.parent.dim
            for c, v in zip(k[: self.dim], self.vectors):
                comb = vec_add(comb, vec_scale(v, c))
            vecs.append(comb)
        return Subspace.span(self.parent, vecs)

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.parent.dim})"


def sub_algebra(L, indices, labels=None, check=True):
    """Restrict L to the span of the given basis indices.

    The span must be bracket-closed; structure constants are re-expressed in
    the restricted basis.
    """
    idx = list(indices)
    labels = labels or [L.basis[i] for i in idx]
    pos = {g: a for a, g in enumerate(idx)}
    table = {}
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            if a >= b:
                continue
            v = L.c[i][j]
            row = {}
            for k in range(L.dim):
                if v[k]:
                    if k not in pos:
                        raise ValueError(
                            f"span of {labels} is not bracket-closed: "
                            f"[{L.basis[i]},{L.basis[j]}] leaves it"
                        )
                    row[pos[k]] = v[k]
            if row:
                table[(a, b)] = row
    return LieAlgebraData(labels, table, check=check)


def simultaneous_eigenspaces(L, elements):
    """Joint eigenspace decomposition of L under ad of commuting elements.

    Returns a list of (weight, Subspace) pairs where each weight is a tuple
    of Fractions, one per given element, sorted by weight.  Raises
    NonCommutingError / NonRationalSpectrumError as appropriate.
    """
    elements = [gvec(e) for e in elements]
    if not elements:
        return [((), Subspace.full(L))]
    ads = [L.ad(e) for e in elements]
    for a in range(len(ads)):
        for b in range(a + 1, len(ads)):
            if ads[a] * ads[b] != ads[b] * ads[a]:
                raise NonCommutingError(f"ad of elements {a} and {b} do not commute")

    blocks = [((), Subspace.full(L))]
    for A in ads:
        new_blocks = []
        for weight, S in blocks:
            # restriction of A to S in the S basis
            cols = []
            for v in S.vectors:
                img = A.apply(v)
                if not S.contains(img):
                    raise NonRationalSpectrumError(
                        "adjoint action does not preserve a previous eigenspace"
                    )
                cols.append(S.coordinates(img))
            M = ExactMatrix.from_columns(cols)
            cp = M.char_poly()
            if not all(c.is_real() for c in cp):
                raise NonRationalSpectrumError("characteristic polynomial is not real")
            roots, split = rational_roots([c.re for c in cp])
            if not split:
                raise NonRationalSpectrumError(
                    "characteristic polynomial has irrational roots"
                )
            total = 0
            for lam in sorted(set(roots)):
                shifted = M - ExactMatrix.identity(M.rows).scale(GaussianScalar(lam))
                kern = shifted.kernel()
                if not kern:
                    continue
                total += len(kern)
                vecs = []
                for kv in kern:
                    comb = [G_ZERO] * L.dim
                    for c, v in zip(kv, S.vectors):
                        comb = vec_add(comb, vec_scale(v, c))
                    vecs.append(comb)
                new_blocks.append((weight + (lam,), Subspace.span(L, vecs)))
            if total != S.dim:
                raise NonRationalSpectrumError("adjoint map is not diagonalizable")
        blocks = new_blocks
    blocks.sort(key=lambda t: t[0])
    return blocks


def relative_normalizer(L, V, W):
    """{x in V : [x, W] subset of W}, by exact linear solving."""
    if V.dim == 0:
        return Subspace(L, [])
    # linear residual map: x -> (residual of [x, w] mod W) for each w basis
    rows = []
    for w in W.vectors:
        for r in range(L.dim):
            # coefficient of the r-th coordinate of residual([x, w]) in terms
            # of the V coordinates of x
            row = []
            for v in V.vectors:
                res = W.residual(L.bracket(v, w))
                row.append(res[r])
            rows.append(row)
    if not rows:
        return V
    M = ExactMatrix(rows)
    vecs = []
    for k in M.kernel():
        comb = [G_ZERO] * L.dim
        for c, v in zip(k, V.vectors):
            comb = vec_add(comb, vec_scale(v, c))
        vecs.append(comb)
    return Subspace.span(L, vecs)


def weight_str(weight):
    return "(" + ", ".join(format_rational(w) for w in weight) + ")"
