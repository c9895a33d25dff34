"""Siegel domain data attached to a normal j-algebra.

The domain is D(Omega, Q) = {(U, V) : Im U - Q(V, V) in Omega} where Omega
is the orbit of E = E_1 + ... + E_r under the grade-zero group and
Q(V, V') = ([jV, V'] + i [V, V']) / 4.  The cone is handled through
"peeling": an algorithmic inverse of the simply-transitive orbit map that
reads one pivot per idempotent root and eliminates the mixed components,
the homogeneous-cone analogue of a Cholesky decomposition.
"""

from __future__ import annotations

import cmath
from fractions import Fraction

from .exact_core import (
    ExactMatrix,
    G_I,
    G_ONE,
    G_ZERO,
    GaussianScalar,
    gvec,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
)
from .lie_core import Subspace


class PivotNotPositiveError(Exception):
    """A real peel pivot is not positive: the point is outside the cone."""


class PivotZeroError(Exception):
    """A complex peel pivot vanishes: outside the holomorphic continuation."""


class DomainViolationError(Exception):
    """An affine action produced a point outside the domain."""


def _pseudo_inverse_rows(rows):
    """For independent rows B (as vectors), a matrix P with P (B^T x) = x."""
    B = ExactMatrix(rows)
    Bt = B.transpose()
    M = B * Bt
    n = M.rows
    cols = []
    for k in range(n):
        rhs = [G_ONE if i == k else G_ZERO for i in range(n)]
        x, _ = M.solve(rhs)
        cols.append(x)
    Minv = ExactMatrix.from_columns(cols)
    return Minv * B


class ConeDecomposition:
    """Result of peeling a cone (or complexified tube) point.

    pivots[k] is the lambda_k^2 read at the k-th idempotent root; lowers[k]
    is the nilpotent parameter vector, in the coordinates of the
    difference-root basis of the domain spec.  Replaying the decomposition
    reproduces the peeled point exactly for exact inputs.
    """

    def __init__(self, pivots, lowers, exact):
        self.pivots = list(pivots)
        self.lowers = [list(v) for v in lowers]
        self.exact = exact

    @property
    def lambdas(self):
        """Square roots of the pivots, positive-real-part branch (floats)."""
        out = []
        for p in self.pivots:
            z = cmath.sqrt(complex(p))
            if z.real < 0:
                z = -z
            out.append(z)
        return out

    def replay(self, S):
        """Ad(exp n_1) ... Ad(exp n_r) applied to sum_k pivots[k] E_k."""
        if self.exact:
            W = [G_ZERO] * S.U_dim
            for k, p in enumerate(self.pivots):
                W[k] = GaussianScalar.coerce(p)
        else:
            W = [0j] * S.U_dim
            for k, p in enumerate(self.pivots):
                W[k] = complex(p)
        for k in range(S.N.r - 1, -1, -1):
            W = S.ad_exp_u(self.lowers[k], W, exact=self.exact)
        return W


class SiegelDomainSpec:
    """Coordinates, Hermitian map, and cone machinery for one domain."""

    def __init__(self, N):
        self.N = N
        b = N.b
        self.b = b
        r = N.r

        # ordered basis of b(1): E_1..E_r, then the sum blocks by (k, l)
        self.U_basis = list(N.E_vecs)
        self.u_block = [("E", k) for k in range(r)]
        for key in sorted(N.sum_blocks):
            for v in N.sum_blocks[key].vectors:
                self.U_basis.append(v)
                self.u_block.append(("sum", key))
        self.U_dim = len(self.U_basis)
        self._u_proj = _pseudo_inverse_rows(self.U_basis)

        # complex basis of b(1/2): pairs (f, jf) inside each half block
        self.V_pairs = []
        self.v_block = []
        for k in sorted(N.half_blocks):
            S = N.half_blocks[k]
            chosen = []
            span = Subspace(b, [])
            for v in S.vectors:
                if span.contains(v):
                    continue
                jv = N.japply(v)
                chosen.append((v, jv))
                span = span.sum_with(Subspace.span(b, [v, jv]))
                if span.dim == S.dim:
                    break
            if span.dim != S.dim:
                raise ValueError("could not split a half block into j-pairs")
            for pair in chosen:
                self.V_pairs.append(pair)
                self.v_block.append(k)
        self.V_half = len(self.V_pairs)
        self.V_dim = 2 * self.V_half
        v_rows = []
        for f, jf in self.V_pairs:
            v_rows.append(f)
            v_rows.append(jf)
        self._v_proj = _pseudo_inverse_rows(v_rows) if v_rows else None

        self.coords = tuple(f"z{i+1}" for i in range(self.U_dim + self.V_half))

        # nilpotent (difference-root) basis, grouped by pivot index k
        self.n_basis = []
        self.n_block = []
        for key in sorted(N.diff_blocks):
            for v in N.diff_blocks[key].vectors:
                self.n_basis.append(v)
                self.n_block.append(key)
        self.n_dim = len(self.n_basis)
        self._adU = [self._ad_on_U(v) for v in self.n_basis]
        self._adV = [self._ad_on_V(v) for v in self.n_basis]
        self._adU_float = None
        self._adV_float = None

        # root weights of A_k on the U and V coordinates
        self.weight_U = []
        self.weight_V = []
        for k in range(r):
            wu = []
            for blk in self.u_block:
                if blk[0] == "E":
                    wu.append(Fraction(1) if blk[1] == k else Fraction(0))
                else:
                    a, c = blk[1]
                    wu.append(Fraction(1, 2) * ((a == k) + (c == k)))
            self.weight_U.append(wu)
            self.weight_V.append(
                [Fraction(1, 2) if m == k else Fraction(0) for m in self.v_block]
            )

        # Hermitian tableau H[i][j] = Q(f_i, f_j) in U coordinates
        self.H = [
            [self._q_bracket(self.V_pairs[i], self.V_pairs[j]) for j in range(self.V_half)]
            for i in range(self.V_half)
        ]
        self._H_float = [
            [[complex(x) for x in cell] for cell in row] for row in self.H
        ]
        self._check_hermitian()

        self.E_ucoord = [G_ONE if q < r else G_ZERO for q in range(self.U_dim)]
        self.reference_point = (
            [G_I if q < r else G_ZERO for q in range(self.U_dim)],
            [G_ZERO] * self.V_half,
        )
        self._check_positivity_spot()

    # -- coordinate helpers ------------------------------------------------
    def u_coords(self, v):
        """U coordinates of a vector in b(1) (exact)."""
        c = self._u_proj.apply(v)
        back = [G_ZERO] * self.b.dim
        for ci, bv in zip(c, self.U_basis):
            back = vec_add(back, vec_scale(bv, ci))
        if back != gvec(v):
            raise ValueError("vector is not in b(1)")
        return c

    def v_coords(self, v):
        """Complex V coordinates of a vector in b(1/2) (exact)."""
        if self.V_half == 0:
            if not vec_is_zero(gvec(v)):
                raise ValueError("vector is not in b(1/2)")
            return []
        c = self._v_proj.apply(v)
        out = []
        for jj in range(self.V_half):
            out.append(c[2 * jj] + G_I * c[2 * jj + 1])
        return out

    def v_to_b(self, vc):
        """Real b-vector from complex V coordinates."""
        out = [G_ZERO] * self.b.dim
        for j, z in enumerate(vc):
            z = GaussianScalar.coerce(z)
            f, jf = self.V_pairs[j]
            out = vec_add(out, vec_scale(f, z.re))
            out = vec_add(out, vec_scale(jf, z.im))
        return out

    def u_to_b(self, uc):
        """Real b-vector from real U coordinates."""
        out = [G_ZERO] * self.b.dim
        for q, x in enumerate(uc):
            out = vec_add(out, vec_scale(self.U_basis[q], x))
        return out

    def _ad_on_U(self, x):
        cols = [self.u_coords(self.b.bracket(x, u)) for u in self.U_basis]
        return ExactMatrix.from_columns(cols)

    def _ad_on_V(self, x):
        if self.V_half == 0:
            return ExactMatrix.zero(0, 0)
        cols = []
        for f, _ in self.V_pairs:
            cols.append(self.v_coords(self.b.bracket(x, f)))
        return ExactMatrix.from_columns(cols)

    def _q_bracket(self, pair_i, pair_j):
        f_i = pair_i[0]
        f_j, jf_j = pair_j[0], pair_j[1]
        jf_i = pair_i[1]
        br1 = self.b.bracket(jf_i, f_j)
        br2 = self.b.bracket(f_i, f_j)
        quarter = GaussianScalar(Fraction(1, 4))
        u1 = self.u_coords(br1)
        u2 = self.u_coords(br2)
        return [quarter * (a + G_I * c) for a, c in zip(u1, u2)]

    def _check_hermitian(self):
        for i in range(self.V_half):
            for j in range(self.V_half):
                lhs = self.H[i][j]
                rhs = [x.conjugate() for x in self.H[j][i]]
                if lhs != rhs:
                    raise ValueError("Q is not Hermitian symmetric")
        # sesquilinearity w.r.t. j on the chosen pairs
        for i in range(self.V_half):
            for j in range(self.V_half):
                fi, jfi = self.V_pairs[i]
                fj, jfj = self.V_pairs[j]
                q = self.H[i][j]
                q_jf_left = self._q_bracket((jfi, vec_scale(fi, -1)), (fj, jfj))
                if q_jf_left != [G_I * x for x in q]:
                    raise ValueError("Q is not complex-linear in its first argument")
                q_jf_right = self._q_bracket((fi, jfi), (jfj, vec_scale(fj, -1)))
                if q_jf_right != [(-G_I) * x for x in q]:
                    raise ValueError("Q is not conjugate-linear in its second argument")

    def _check_positivity_spot(self):
        for i in range(self.V_half):
            q = self.H[i][i]
            if all(not x for x in q):
                raise ValueError("Q(f, f) vanishes on a basis vector")
            if any(not x.is_real() for x in q):
                raise ValueError("Q(f, f) is not real")
            for t in (Fraction(1), Fraction(10**6)):
                probe = [x.re * t for x in q]
                shifted = vec_add(gvec(probe), self.E_ucoord)
                peel(shifted, self)  # raises if outside the cone

    # -- Q evaluation ----------------------------------------------------------
    def q_exact(self, v, w):
        """Q(v, w) in U coordinates for exact complex V coordinates."""
        out = [G_ZERO] * self.U_dim
        for i in range(self.V_half):
            vi = GaussianScalar.coerce(v[i])
            if not vi:
                continue
            for j in range(self.V_half):
                wj = GaussianScalar.coerce(w[j]).conjugate()
                if not wj:
                    continue
                f = vi * wj
                cell = self.H[i][j]
                for q in range(self.U_dim):
                    if cell[q]:
                        out[q] = out[q] + cell[q] * f
        return out

    def q_float(self, v, w):
        out = [0j] * self.U_dim
        for i in range(self.V_half):
            vi = complex(v[i])
            if vi == 0:
                continue
            for j in range(self.V_half):
                wj = complex(w[j]).conjugate()
                if wj == 0:
                    continue
                f = vi * wj
                cell = self._H_float[i][j]
                for q in range(self.U_dim):
                    out[q] += cell[q] * f
        return out

    # -- nilpotent adjoint exponentials -----------------------------------------
    def _n_combination_U(self, nvec, exact):
        if exact:
            M = ExactMatrix.zero(self.U_dim, self.U_dim)
            for c, A in zip(nvec, self._adU):
                if GaussianScalar.coerce(c):
                    M = M + A.scale(c)
            return M
        if self._adU_float is None:
            self._adU_float = [A.to_float() for A in self._adU]
        M = [[0j] * self.U_dim for _ in range(self.U_dim)]
        for c, A in zip(nvec, self._adU_float):
            c = complex(c)
            if c == 0:
                continue
            for i in range(self.U_dim):
                for j in range(self.U_dim):
                    M[i][j] += c * A[i][j]
        return M

    def ad_exp_u(self, nvec, W, exact):
        """exp(ad(n)) applied to a b(1) coordinate vector, n from the
        difference-root coordinates (nilpotent, so the series is finite)."""
        if exact:
            M = self._n_combination_U(nvec, True)
            out = list(W)
            term = list(W)
            k = 1
            while True:
                term = vec_scale(M.apply(term), Fraction(1, k))
                if vec_is_zero(term):
                    break
                out = vec_add(out, term)
                k += 1
                if k > self.U_dim + 2:
                    raise AssertionError("nilpotent series did not terminate")
            return out
        M = self._n_combination_U(nvec, False)
        out = list(W)
        term = list(W)
        for k in range(1, self.U_dim + 2):
            term = [sum(M[i][j] * term[j] for j in range(self.U_dim)) / k for i in range(self.U_dim)]
            if all(abs(t) == 0 for t in term):
                break
            out = [a + t for a, t in zip(out, term)]
        return out

    def ad_exp_v(self, nvec, V, exact):
        if self.V_half == 0:
            return list(V)
        if exact:
            M = ExactMatrix.zero(self.V_half, self.V_half)
            for c, A in zip(nvec, self._adV):
                if GaussianScalar.coerce(c):
                    M = M + A.scale(c)
            out = list(V)
            term = [GaussianScalar.coerce(x) for x in V]
            k = 1
            while True:
                term = vec_scale(M.apply(term), Fraction(1, k))
                if vec_is_zero(term):
                    break
                out = vec_add(gvec(out), term)
                k += 1
                if k > self.V_half + 2:
                    raise AssertionError("nilpotent series did not terminate")
            return out
        if self._adV_float is None:
            self._adV_float = [A.to_float() for A in self._adV]
        M = [[0j] * self.V_half for _ in range(self.V_half)]
        for c, A in zip(nvec, self._adV_float):
            c = complex(c)
            if c == 0:
                continue
            for i in range(self.V_half):
                for j in range(self.V_half):
                    M[i][j] += c * A[i][j]
        out = [complex(x) for x in V]
        term = list(out)
        for k in range(1, self.V_half + 2):
            term = [sum(M[i][j] * term[j] for j in range(self.V_half)) / k for i in range(self.V_half)]
            if all(t == 0 for t in term):
                break
            out = [a + t for a, t in zip(out, term)]
        return out

    def __repr__(self):
        return f"SiegelDomainSpec(U_dim={self.U_dim}, V_dim={self.V_dim}, r={self.N.r})"


def build_siegel(N):
    """Assemble the Siegel domain spec for a graded normal j-algebra."""
    if N.r is None:
        raise ValueError("normal j-algebra has no grading; run compute_grading")
    return SiegelDomainSpec(N)


def _is_exact_vector(U):
    return all(isinstance(x, (GaussianScalar, int, Fraction)) for x in U)


def peel(U, S, tol=1e-12):
    """Decompose a cone point (or a complexified tube argument).

    Real exact inputs must have positive pivots (PivotNotPositiveError);
    complex inputs must keep all pivots away from zero (PivotZeroError).
    For float inputs the positivity/zero threshold is `tol`.
    """
    exact = _is_exact_vector(U)
    if exact:
        W = [GaussianScalar.coerce(x) for x in U]
        real_input = all(x.is_real() for x in W)
    else:
        W = [complex(x) for x in U]
        real_input = all(abs(x.imag) <= tol for x in W)
    r = S.N.r
    pivots = []
    lowers = []
    scale = 1.0 if exact else max([abs(x) for x in W] + [1.0])
    for k in range(r):
        piv = W[k]
        if exact:
            if real_input:
                if not piv.is_real() or piv.re <= 0:
                    raise PivotNotPositiveError(f"pivot {k + 1} = {piv} is not positive")
            elif not piv:
                raise PivotZeroError(f"pivot {k + 1} vanishes")
        else:
            if real_input:
                if piv.real <= tol:
                    raise PivotNotPositiveError(f"pivot {k + 1} = {piv} is not positive")
            elif abs(piv) <= tol:
                raise PivotZeroError(f"pivot {k + 1} vanishes")
        # solve for the nilpotent parameter killing the (l,k) sum blocks
        if exact:
            nvec = [G_ZERO] * S.n_dim
        else:
            nvec = [0j] * S.n_dim
        for key in sorted(S.N.diff_blocks):
            if key[0] != k:
                continue
            idx = [p for p, blk in enumerate(S.n_block) if blk == key]
            cols_u = [q for q, blk in enumerate(S.u_block) if blk == ("sum", key)]
            # target: pivot * [n, E_k] matches the current sum-block part
            A = ExactMatrix(
                [[S._adU[p].entries[q][k] for p in idx] for q in cols_u]
            )
            target = [W[q] for q in cols_u]
            if exact:
                sol, _ = A.solve([GaussianScalar.coerce(t) / piv for t in target])
                for p, c in zip(idx, sol):
                    nvec[p] = c
            else:
                Af = A.to_float()
                sol = _solve_float(Af, [t / piv for t in target])
                for p, c in zip(idx, sol):
                    nvec[p] = c
        W = S.ad_exp_u([-c for c in nvec], W, exact=exact)
        if exact:
            W[k] = W[k] - piv
        else:
            W[k] = W[k] - piv
        # all index-k components must now vanish
        for q, blk in enumerate(S.u_block):
            involved = (blk[0] == "E" and blk[1] == k) or (
                blk[0] == "sum" and k in blk[1]
            )
            if not involved:
                continue
            if exact:
                if W[q]:
                    raise AssertionError("peel elimination left a residue")
            elif abs(W[q]) > 1e-7 * scale * (1 + abs(piv) + 1 / abs(piv)):
                raise AssertionError("peel elimination left a residue")
        pivots.append(piv)
        lowers.append(nvec)
    if exact and any(W):
        raise AssertionError("peel did not exhaust the point")
    return ConeDecomposition(pivots, lowers, exact)


def _solve_float(A, b):
    """Gaussian elimination with partial pivoting over complex floats."""
    n = len(b)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for c in range(n):
        p = max(range(c, n), key=lambda i: abs(M[i][c]))
        if abs(M[p][c]) == 0:
            raise ZeroDivisionError("singular float system")
        M[c], M[p] = M[p], M[c]
        M[c] = [x / M[c][c] for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [M[i][n] for i in range(n)]


def in_cone(U, S, tol=1e-12):
    try:
        peel(U, S, tol=tol)
        return True
    except (PivotNotPositiveError, PivotZeroError):
        return False


class BWord:
    """An ordered word in the affine group generators.

    Letters (applied left to right as group composition, so the first
    letter acts last):
      ("translate", u0)  u0 real U coordinates, exp of an element of b(1)
      ("shear", v0)      v0 complex V coordinates, exp of an element of b(1/2)
      ("scale", k, t)    exp(t A_k)
      ("lower", nvec, s) exp(s n), n in difference-root coordinates
    """

    def __init__(self, letters=()):
        self.letters = list(letters)

    @classmethod
    def identity(cls):
        return cls([])

    def then(self, letter):
        return BWord(self.letters + [letter])

    def __mul__(self, other):
        return BWord(self.letters + other.letters)

    @staticmethod
    def _combine(vectors, coeffs):
        """Linear combination of exact b vectors; exact when the
        coefficients are exact, complex floats otherwise."""
        exact = all(isinstance(c, (int, Fraction, GaussianScalar)) for c in coeffs)
        dim = len(vectors[0])
        if exact:
            out = [G_ZERO] * dim
            for c, v in zip(coeffs, vectors):
                out = vec_add(out, vec_scale(v, c))
            return out
        out = [0j] * dim
        for c, v in zip(coeffs, vectors):
            c = complex(c)
            for i, x in enumerate(v):
                out[i] += c * complex(x)
        return out

    def b_elements(self, S):
        """The Lie algebra element of each letter, as a b coordinate vector
        (exact when the parameters are exact, complex floats otherwise)."""
        out = []
        for letter in self.letters:
            kind = letter[0]
            if kind == "translate":
                out.append(self._combine(S.U_basis, list(letter[1])))
            elif kind == "shear":
                coeffs = []
                vecs = []
                for z, (f, jf) in zip(letter[1], S.V_pairs):
                    if isinstance(z, (int, Fraction, GaussianScalar)):
                        z = GaussianScalar.coerce(z)
                        coeffs += [z.re, z.im]
                    else:
                        z = complex(z)
                        coeffs += [z.real, z.imag]
                    vecs += [f, jf]
                out.append(self._combine(vecs, coeffs))
            elif kind == "scale":
                _, k, t = letter
                out.append(self._combine([S.N.A_vecs[k]], [t]))
            elif kind == "lower":
                _, nvec, s = letter
                exact = all(
                    isinstance(c, (int, Fraction, GaussianScalar)) for c in nvec
                ) and isinstance(s, (int, Fraction, GaussianScalar))
                if exact:
                    coeffs = [GaussianScalar.coerce(c) * GaussianScalar.coerce(s) for c in nvec]
                else:
                    coeffs = [complex(c) * complex(s) for c in nvec]
                out.append(self._combine(S.n_basis, coeffs))
            else:
                raise ValueError(f"unknown letter {kind!r}")
        return out

    def to_json(self):
        out = []
        for letter in self.letters:
            if letter[0] == "translate":
                out.append({"kind": "translate", "u0": [str(complex(x)) for x in letter[1]]})
            elif letter[0] == "shear":
                out.append({"kind": "shear", "v0": [str(complex(x)) for x in letter[1]]})
            elif letter[0] == "scale":
                out.append({"kind": "scale", "k": letter[1], "t": letter[2]})
            else:
                out.append({"kind": "lower", "n": [str(complex(x)) for x in letter[1]], "s": letter[2]})
        return out


def _apply_letter(letter, point, S):
    import math

    U, V = point
    kind = letter[0]
    if kind == "translate":
        u0 = [complex(x) for x in letter[1]]
        return [a + b for a, b in zip(U, u0)], list(V)
    if kind == "shear":
        v0 = [complex(x) for x in letter[1]]
        qv = S.q_float(V, v0)
        q0 = S.q_float(v0, v0)
        U2 = [u + 2j * a + 1j * b for u, a, b in zip(U, qv, q0)]
        return U2, [a + b for a, b in zip(V, v0)]
    if kind == "scale":
        _, k, t = letter
        t = float(t)
        U2 = [u * math.exp(t * float(w)) for u, w in zip(U, S.weight_U[k])]
        V2 = [v * math.exp(t * float(w)) for v, w in zip(V, S.weight_V[k])]
        return U2, V2
    if kind == "lower":
        _, nvec, s = letter
        scaled = [complex(c) * complex(s) for c in nvec]
        return S.ad_exp_u(scaled, [complex(u) for u in U], exact=False), S.ad_exp_v(
            scaled, [complex(v) for v in V], exact=False
        )
    raise ValueError(f"unknown letter {kind!r}")


def point_in_domain(point, S, tol=1e-12):
    U, V = point
    U = [complex(x) for x in U]
    V = [complex(x) for x in V]
    q = S.q_float(V, V)
    w = [u.imag - qq.real for u, qq in zip(U, q)]
    return in_cone(w, S, tol=tol)


def cone_action(word, W, S):
    """Apply a grade-zero word (scale/lower letters only) to a cone vector
    in U coordinates, float arithmetic."""
    import math

    W = [complex(x) for x in W]
    for letter in reversed(word.letters):
        if letter[0] == "scale":
            _, k, t = letter
            W = [w * math.exp(float(t) * float(wt)) for w, wt in zip(W, S.weight_U[k])]
        elif letter[0] == "lower":
            _, nvec, s = letter
            scaled = [complex(c) * complex(s) for c in nvec]
            W = S.ad_exp_u(scaled, W, exact=False)
        else:
            raise ValueError("cone_action accepts scale and lower letters only")
    return W


def affine_action(word, point, S, tol=1e-12):
    """Apply a BWord to a domain point (floats); group composition is left
    to right, so the last letter acts first."""
    if not point_in_domain(point, S, tol=tol):
        raise DomainViolationError("input point is outside the domain")
    U = [complex(x) for x in point[0]]
    V = [complex(x) for x in point[1]]
    for letter in reversed(word.letters):
        U, V = _apply_letter(letter, (U, V), S)
    if not point_in_domain((U, V), S, tol=tol):
        raise DomainViolationError("action left the domain; invalid word data")
    return U, V
