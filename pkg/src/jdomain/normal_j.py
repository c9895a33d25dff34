"""Normal j-algebra structure.

A normal j-algebra is a real split solvable Lie algebra b together with a
complex structure j and a linear form omega such that

    [X,Y] + j[jX,Y] + j[X,jY] = [jX,jY]

and <X,Y> = omega([jX,Y]) is a j-invariant inner product.  This module
validates the axioms, computes the root grading b(0) + b(1/2) + b(1) with
the distinguished pairs (A_k, E_k), the Koszul form, and the algebraic
connection used for the b(1) calculus.
"""

from __future__ import annotations

from fractions import Fraction

from .exact_core import ExactMatrix, G_ONE, G_ZERO, GaussianScalar, gvec, vec_add, vec_is_zero, vec_scale, vec_sub
from .lie_core import LieAlgebraData, Subspace, simultaneous_eigenspaces


class GradingShapeError(Exception):
    """The root pattern does not match the normal j-algebra normal form."""


class ValidationReport:
    """Named axiom checks with pass/fail and a witness message on failure."""

    def __init__(self):
        self.entries = []

    def add(self, name, ok, witness=""):
        self.entries.append((name, bool(ok), witness))

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.entries)

    def failures(self):
        return [(n, w) for n, ok, w in self.entries if not ok]

    def to_json(self):
        return [
            {"check": n, "ok": ok, "witness": w} for n, ok, w in self.entries
        ]

    def __str__(self):
        lines = []
        for n, ok, w in self.entries:
            mark = "pass" if ok else "FAIL"
            lines.append(f"[{mark}] {n}" + (f": {w}" if w and not ok else ""))
        return "\n".join(lines)


def _j_apply(j, v):
    return j.apply(v)


def _omega_apply(omega, v):
    return sum((GaussianScalar.coerce(o) * x for o, x in zip(omega, v)), G_ZERO)


def inner_product(b, j, omega, x, y):
    """<x,y> = omega([jx, y])."""
    return _omega_apply(omega, b.bracket(_j_apply(j, x), y))


def gram_matrix(b, j, omega):
    n = b.dim
    return ExactMatrix(
        [
            [inner_product(b, j, omega, b.unit(i), b.unit(k)) for k in range(n)]
            for i in range(n)
        ]
    )


def sylvester_positive_definite(G):
    """(ok, witness index) for a real symmetric exact matrix, by leading
    principal minors."""
    minors = G.leading_principal_minors()
    for k, m in enumerate(minors):
        if not m.is_real() or m.re <= 0:
            return False, k
    return True, None


def validate_normal_j(b, j, omega):
    """Check all normal j-algebra axioms; failures become report entries."""
    rep = ValidationReport()
    n = b.dim
    if j.rows != n or j.cols != n:
        raise ValueError("j must be square of the algebra dimension")
    if len(omega) != n:
        raise ValueError("omega must be a covector of the algebra dimension")

    rep.add("real_structure_constants", b.real_flag)
    rep.add("j_real", j.is_real())
    omega_real = all(GaussianScalar.coerce(o).is_real() for o in omega)
    rep.add("omega_real", omega_real)

    jj = j * j
    rep.add("j_squared_is_minus_identity", jj == ExactMatrix.identity(n).scale(-1))

    rep.add("solvable", b.is_solvable())

    split_ok, split_w = True, ""
    from .exact_core import rational_roots

    for i in range(n):
        cp = b.ad(b.unit(i)).char_poly()
        if not all(c.is_real() for c in cp):
            split_ok, split_w = False, f"ad({b.basis[i]}) has non-real char poly"
            break
        _, full = rational_roots([c.re for c in cp])
        if not full:
            split_ok, split_w = False, f"ad({b.basis[i]}) has irrational roots"
            break
    rep.add("split_rational_ad_spectra", split_ok, split_w)

    integ_ok, integ_w = True, ""
    for i in range(n):
        for k in range(i + 1, n):
            x, y = b.unit(i), b.unit(k)
            lhs = b.bracket(x, y)
            lhs = vec_add(lhs, _j_apply(j, b.bracket(_j_apply(j, x), y)))
            lhs = vec_add(lhs, _j_apply(j, b.bracket(x, _j_apply(j, y))))
            rhs = b.bracket(_j_apply(j, x), _j_apply(j, y))
            if lhs != rhs:
                integ_ok = False
                integ_w = f"pair ({b.basis[i]}, {b.basis[k]})"
                break
        if not integ_ok:
            break
    rep.add("integrability_identity", integ_ok, integ_w)

    G = gram_matrix(b, j, omega)
    sym_ok, sym_w = True, ""
    for i in range(n):
        for k in range(i + 1, n):
            if G[i, k] != G[k, i]:
                sym_ok, sym_w = False, f"pair ({b.basis[i]}, {b.basis[k]})"
                break
        if not sym_ok:
            break
    rep.add("inner_product_symmetric", sym_ok, sym_w)

    jinv_ok, jinv_w = True, ""
    for i in range(n):
        for k in range(n):
            lhs = inner_product(b, j, omega, _j_apply(j, b.unit(i)), _j_apply(j, b.unit(k)))
            if lhs != G[i, k]:
                jinv_ok, jinv_w = False, f"pair ({b.basis[i]}, {b.basis[k]})"
                break
        if not jinv_ok:
            break
    rep.add("inner_product_j_invariant", jinv_ok, jinv_w)

    pd_ok, pd_w = sylvester_positive_definite(G)
    rep.add(
        "inner_product_positive_definite",
        pd_ok,
        "" if pd_ok else f"leading principal minor {pd_w + 1} is not positive",
    )
    return rep


def koszul_form(b, j):
    """omega'(X) = tr(ad(jX) - j ad(X)), as an exact covector."""
    out = []
    for i in range(b.dim):
        x = b.unit(i)
        t = (b.ad(_j_apply(j, x)) - j * b.ad(x)).trace()
        out.append(t)
    return out


class NormalJAlgebra:
    """A validated normal j-algebra with its computed root grading.

    Attributes populated by compute_grading:
      r            rank (= dim of the Cartan part a)
      a_space      Subspace a = orthogonal complement of [b,b]
      roots        list of (weight tuple over the a basis, Subspace)
      A_vecs/E_vecs  the distinguished elements, ordered
      b0, bhalf, b1  the Piatetski-Shapiro grading pieces
      sum_blocks/diff_blocks  (k,l) -> Subspace for the mixed roots (0-based)
      half_blocks  k -> Subspace
    """

    def __init__(self, b, j, omega):
        self.b = b
        self.j = j
        self.omega = [GaussianScalar.coerce(o) for o in omega]
        self.gram = gram_matrix(b, j, omega)
        self.r = None

    # -- basic maps ------------------------------------------------------------
    def japply(self, v):
        return self.j.apply(v)

    def inner(self, x, y):
        return _omega_apply(self.omega, self.b.bracket(self.japply(x), y))

    def omega_of(self, v):
        return _omega_apply(self.omega, v)

    def orthogonal_complement(self, S):
        """Orthogonal complement of a Subspace w.r.t. <.,.>."""
        if S.dim == 0:
            return Subspace.full(self.b)
        rows = [self.gram.apply(v) for v in S.vectors]
        return Subspace.span(self.b, ExactMatrix(rows).kernel())

    @property
    def E_vector(self):
        v = [G_ZERO] * self.b.dim
        for e in self.E_vecs:
            v = vec_add(v, e)
        return v

    @property
    def jE_vector(self):
        return self.japply(self.E_vector)


def _dual_basis_in(a_vectors, root_covs):
    """Elements of span(a_vectors) dual to the given covectors on that span.

    root_covs[k] is a tuple of values on the a basis; returns vectors A_k in
    algebra coordinates with root_l(A_k) = delta_{lk}.
    """
    r = len(root_covs)
    M = ExactMatrix([[GaussianScalar.coerce(w) for w in cov] for cov in root_covs])
    out = []
    for k in range(r):
        rhs = [G_ONE if l == k else G_ZERO for l in range(r)]
        x, _ = M.solve(rhs)
        v = [G_ZERO] * len(a_vectors[0])
        for c, av in zip(x, a_vectors):
            v = vec_add(v, vec_scale(av, c))
        out.append(v)
    return out


def compute_grading(b, j, omega):
    """Full root analysis of a validated normal j-algebra.

    Raises GradingShapeError when the weights do not match the
    alpha_k / alpha_k/2 / (alpha_l +- alpha_k)/2 pattern.
    """
    rep = validate_normal_j(b, j, omega)
    if not rep.passed:
        raise ValueError(f"normal j-algebra axioms fail: {rep.failures()}")
    N = NormalJAlgebra(b, j, omega)

    derived = b.derived_series()[1]
    a_space = N.orthogonal_complement(derived)
    N.a_space = a_space
    r_dim = a_space.dim

    blocks = simultaneous_eigenspaces(b, a_space.vectors)
    zero_w = tuple(Fraction(0) for _ in range(r_dim))
    root_blocks = [(w, S) for w, S in blocks if w != zero_w]
    zero_block = next((S for w, S in blocks if w == zero_w), Subspace(b, []))
    if not (zero_block == a_space):
        raise GradingShapeError("the zero-weight space is not the Cartan part")

    # full roots: j maps their root space into a
    full = []
    for w, S in root_blocks:
        jS = Subspace.span(b, [N.japply(v) for v in S.vectors])
        if a_space.contains_space(jS):
            if S.dim != 1:
                raise GradingShapeError(f"idempotent root space has dim {S.dim} != 1")
            full.append((w, S))
    if len(full) != r_dim:
        raise GradingShapeError(
            f"found {len(full)} idempotent roots for rank {r_dim}"
        )

    # orient pairs: beta' comes before beta when (beta - beta')/2 is a root
    weights = {w for w, _ in root_blocks}
    order_after = {w: set() for w, _ in full}
    for wa, _ in full:
        for wb, _ in full:
            if wa == wb:
                continue
            diff = tuple((x - y) / 2 for x, y in zip(wa, wb))
            if diff in weights:
                order_after[wa].add(wb)  # wa strictly after wb

    ordered = []
    remaining = [w for w, _ in full]
    while remaining:
        ready = [w for w in remaining if order_after[w] <= set(ordered)]
        if not ready:
            raise GradingShapeError("cyclic ordering among idempotent roots")
        # deterministic tie-break: lexicographically largest covector first
        ready.sort(reverse=True)
        ordered.append(ready[0])
        remaining.remove(ready[0])

    full_map = dict(full)
    A_vecs = _dual_basis_in(a_space.vectors, ordered)
    E_vecs = [vec_scale(N.japply(a), -1) for a in A_vecs]
    r = r_dim

    # E_k must generate the idempotent root lines and satisfy [A_k,E_l]=d_kl E_l
    for k in range(r):
        if not full_map[ordered[k]].contains(E_vecs[k]):
            raise GradingShapeError("-j(A_k) does not lie in the expected root line")
    for k in range(r):
        for l in range(r):
            got = b.bracket(A_vecs[k], E_vecs[l])
            want = E_vecs[l] if k == l else [G_ZERO] * b.dim
            if got != want:
                raise GradingShapeError(f"[A_{k+1}, E_{l+1}] != delta * E_{l+1}")

    # classify every root against the ordered duals
    def weight_on_A(w):
        # values of the weight on A_1..A_r: w is on the a-basis; A_k are
        # rational combinations, so evaluate by linearity
        vals = []
        for a in A_vecs:
            coords = a_space.coordinates(a)
            v = sum((GaussianScalar.coerce(wi) * c for wi, c in zip(w, coords)), G_ZERO)
            if not v.is_real():
                raise GradingShapeError("non-real weight value")
            vals.append(v.re)
        return tuple(vals)

    sum_blocks = {}
    diff_blocks = {}
    half_blocks = {}
    roots = []
    for w, S in root_blocks:
        vals = weight_on_A(w)
        roots.append((vals, S))
        nz = [(k, v) for k, v in enumerate(vals) if v != 0]
        if len(nz) == 1:
            k, v = nz[0]
            if v == 1:
                if S.dim != 1 or not S.contains(E_vecs[k]):
                    raise GradingShapeError(
                        f"the alpha_{k+1} root space is not the line through E_{k+1}"
                    )
                continue
            if v == Fraction(1, 2):
                half_blocks[k] = S
                continue
            raise GradingShapeError(f"unexpected single-index weight value {v}")
        if len(nz) == 2:
            (k, vk), (l, vl) = nz
            if vk == vl == Fraction(1, 2):
                sum_blocks[(k, l)] = S
                continue
            if vk == -Fraction(1, 2) and vl == Fraction(1, 2):
                diff_blocks[(k, l)] = S
                continue
            if vk == Fraction(1, 2) and vl == -Fraction(1, 2):
                diff_blocks[(l, k)] = S
                continue
        raise GradingShapeError(f"root {vals} does not match the expected pattern")

    for (k, l) in diff_blocks:
        if k >= l:
            raise GradingShapeError(
                "difference root oriented against the chosen ordering"
            )

    # j exchanges difference and sum blocks, and preserves half blocks
    for (k, l), S in diff_blocks.items():
        jS = Subspace.span(b, [N.japply(v) for v in S.vectors])
        if (k, l) not in sum_blocks or not (jS == sum_blocks[(k, l)]):
            raise GradingShapeError(f"j does not map the ({l},{k}) difference block onto the sum block")
    for (k, l), S in sum_blocks.items():
        if (k, l) not in diff_blocks or sum_blocks[(k, l)].dim != diff_blocks[(k, l)].dim:
            raise GradingShapeError(f"sum block ({l},{k}) has no matching difference block")
    for k, S in half_blocks.items():
        jS = Subspace.span(b, [N.japply(v) for v in S.vectors])
        if not (jS == S):
            raise GradingShapeError(f"j does not preserve the alpha_{k+1}/2 block")

    b0_vecs = list(a_space.vectors)
    for key in sorted(diff_blocks):
        b0_vecs += diff_blocks[key].vectors
    bhalf_vecs = []
    for k in sorted(half_blocks):
        bhalf_vecs += half_blocks[k].vectors
    b1_vecs = list(E_vecs)
    for key in sorted(sum_blocks):
        b1_vecs += sum_blocks[key].vectors

    N.r = r
    N.roots = sorted(roots, key=lambda t: t[0])
    N.A_vecs = A_vecs
    N.E_vecs = E_vecs
    N.sum_blocks = sum_blocks
    N.diff_blocks = diff_blocks
    N.half_blocks = half_blocks
    N.b0 = Subspace(b, b0_vecs)
    N.bhalf = Subspace(b, bhalf_vecs) if bhalf_vecs else Subspace(b, [])
    N.b1 = Subspace(b, b1_vecs)
    if N.b0.dim + N.bhalf.dim + N.b1.dim != b.dim:
        raise GradingShapeError("grading pieces do not fill the algebra")

    # grading multiplication law on all basis pairs
    pieces = [(Fraction(0), N.b0), (Fraction(1, 2), N.bhalf), (Fraction(1), N.b1)]
    for g1, S1 in pieces:
        for g2, S2 in pieces:
            target = g1 + g2
            T = next((S for g, S in pieces if g == target), None)
            for v in S1.vectors:
                for w in S2.vectors:
                    br = b.bracket(v, w)
                    if T is None:
                        if not vec_is_zero(br):
                            raise GradingShapeError("bracket escapes the grading range")
                    elif not T.contains(br):
                        raise GradingShapeError(
                            f"[b({g1}), b({g2})] not inside b({target})"
                        )
    return N


def nabla_tilde(x, y, N):
    """The element solving -2<nabla_x y, z> = <[x,y],z> - <[z,x],y> - <x,[z,y]>
    against all basis z, via the exact Gram system."""
    b = N.b
    rhs = []
    for i in range(b.dim):
        z = b.unit(i)
        val = (
            N.inner(b.bracket(x, y), z)
            - N.inner(b.bracket(z, x), y)
            - N.inner(x, b.bracket(z, y))
        )
        rhs.append(val / GaussianScalar(-2))
    # <w, z_i> = sum_m w_m G[m][i]
    x_sol, _ = N.gram.transpose().solve(rhs)
    return x_sol
