"""Polynomial holomorphic vector fields on a Siegel domain.

A field is a tuple of polynomials in the holomorphic coordinates, one per
complex coordinate of b(1)_C + b(1/2).  The bracket is [X,Y] = D_X Y - D_Y X.
Constructors cover the five graded families (constant, half-constant,
linear, the Phi/c family of grade 1/2 and the a/b family of grade 1), and
the module computes grades, the psi/phi contraction maps, isotropy at the
reference point, the antiholomorphic-evaluation subalgebra, and the complex
structure induced at the reference point.
"""

from __future__ import annotations

from fractions import Fraction

from .exact_core import (
    ExactMatrix,
    G_I,
    G_ONE,
    G_ZERO,
    GaussianScalar,
    MultiPoly,
    gvec,
    vec_add,
    vec_is_zero,
    vec_scale,
)
from .lie_core import LieAlgebraData, Subspace


class WrongGradeError(Exception):
    pass


class NotInvertibleAtReferenceError(Exception):
    pass


class _NotHomogeneous:
    def __repr__(self):
        return "NOT_HOMOGENEOUS"

    def __bool__(self):
        return False


NOT_HOMOGENEOUS = _NotHomogeneous()


class PolyVectorField:
    """Holomorphic polynomial vector field in domain coordinates."""

    __slots__ = ("domain", "components", "label")

    def __init__(self, domain, components, label=None):
        components = tuple(components)
        n = domain.U_dim + domain.V_half
        if len(components) != n:
            raise ValueError("component count does not match the domain")
        for c in components:
            if c.variables != domain.coords:
                raise ValueError("component variables do not match the domain")
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "label", label)

    def __setattr__(self, *a):
        raise AttributeError("PolyVectorField is immutable")

    @classmethod
    def zero(cls, domain):
        n = domain.U_dim + domain.V_half
        return cls(domain, [MultiPoly.zero(domain.coords)] * n)

    def with_label(self, label):
        return PolyVectorField(self.domain, self.components, label)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def __add__(self, other):
        self._check(other)
        return PolyVectorField(
            self.domain, [a + b for a, b in zip(self.components, other.components)]
        )

    def __sub__(self, other):
        self._check(other)
        return PolyVectorField(
            self.domain, [a - b for a, b in zip(self.components, other.components)]
        )

    def __neg__(self):
        return PolyVectorField(self.domain, [-c for c in self.components])

    def scale(self, c):
        return PolyVectorField(self.domain, [p * c for p in self.components])

    def _check(self, other):
        if other.domain is not self.domain:
            raise ValueError("fields live on different domains")

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.domain is other.domain and self.components == other.components

    def evaluate(self, point):
        return [c.evaluate(point) for c in self.components]

    def evaluate_complex(self, point):
        return [c.evaluate_complex(point) for c in self.components]

    def directional(self, other):
        """D_self other: derivative of each component of other along self."""
        self._check(other)
        out = []
        for comp in other.components:
            acc = MultiPoly.zero(self.domain.coords)
            for name, x in zip(self.domain.coords, self.components):
                acc = acc + comp.diff(name) * x
            out.append(acc)
        return PolyVectorField(self.domain, out)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        name = self.label or "field"
        return f"PolyVectorField<{name}>{self}"


def vf_bracket(X, Y):
    """[X, Y] = D_X Y - D_Y X."""
    return X.directional(Y) - Y.directional(X)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def _const(domain, value):
    return MultiPoly.constant(domain.coords, value)


def _zvar(domain, i):
    return MultiPoly.var(domain.coords, domain.coords[i])


def d_u(S, u0):
    """Constant field (u0, 0) for u0 in real U coordinates."""
    u0 = gvec(u0)
    comps = [_const(S, c) for c in u0]
    comps += [MultiPoly.zero(S.coords)] * S.V_half
    return PolyVectorField(S, comps)


def d_tilde(S, v0):
    """(2iQ(v, v0), v0) for v0 in complex V coordinates."""
    v0 = gvec(v0)
    comps = []
    two_i = GaussianScalar(0, 2)
    for q in range(S.U_dim):
        acc = MultiPoly.zero(S.coords)
        for j in range(S.V_half):
            coeff = G_ZERO
            for k in range(S.V_half):
                coeff = coeff + two_i * S.H[j][k][q] * v0[k].conjugate()
            if coeff:
                acc = acc + _zvar(S, S.U_dim + j) * coeff
        comps.append(acc)
    for j in range(S.V_half):
        comps.append(_const(S, v0[j]))
    return PolyVectorField(S, comps)


def linear_field(S, A, B=None):
    """(A u, B v) for complex matrices acting on the coordinates."""
    A = ExactMatrix(A) if not isinstance(A, ExactMatrix) else A
    if S.V_half:
        if B is None:
            B = ExactMatrix.zero(S.V_half, S.V_half)
        elif not isinstance(B, ExactMatrix):
            B = ExactMatrix(B)
    comps = []
    for i in range(S.U_dim):
        acc = MultiPoly.zero(S.coords)
        for k in range(S.U_dim):
            if A[i, k]:
                acc = acc + _zvar(S, k) * A[i, k]
        comps.append(acc)
    for j in range(S.V_half):
        acc = MultiPoly.zero(S.coords)
        for k in range(S.V_half):
            if B[j, k]:
                acc = acc + _zvar(S, S.U_dim + k) * B[j, k]
        comps.append(acc)
    return PolyVectorField(S, comps)


def euler_field(S):
    """The grading field (u, v/2)."""
    A = ExactMatrix.identity(S.U_dim)
    B = ExactMatrix.identity(S.V_half).scale(Fraction(1, 2)) if S.V_half else None
    return linear_field(S, A, B)


def rotation_field(S):
    """(0, iv), the extra grade-zero generator used by the psi map."""
    A = ExactMatrix.zero(S.U_dim, S.U_dim)
    B = ExactMatrix.identity(S.V_half).scale(G_I) if S.V_half else None
    return linear_field(S, A, B)


def y_field(S, Phi, c=None):
    """The grade 1/2 family (2iQ(v, Phi(conj u)), Phi(u) + c(v, v)).

    Phi is a complex V_half x U_dim matrix; the conjugate dependence on u is
    realized polynomially because Q is conjugate-linear in its second slot:
    the components only involve conj(Phi).  c is a symmetric tableau
    c[j1][j2] -> complex V vector.
    """
    Phi = ExactMatrix(Phi) if not isinstance(Phi, ExactMatrix) else Phi
    if Phi.rows != S.V_half or Phi.cols != S.U_dim:
        raise ValueError("Phi must map U coordinates to V coordinates")
    comps = []
    two_i = GaussianScalar(0, 2)
    for q in range(S.U_dim):
        acc = MultiPoly.zero(S.coords)
        for j in range(S.V_half):
            for k in range(S.V_half):
                hq = S.H[j][k][q]
                if not hq:
                    continue
                for l in range(S.U_dim):
                    co = two_i * hq * Phi[k, l].conjugate()
                    if co:
                        acc = acc + _zvar(S, S.U_dim + j) * _zvar(S, l) * co
        comps.append(acc)
    for j in range(S.V_half):
        acc = MultiPoly.zero(S.coords)
        for l in range(S.U_dim):
            if Phi[j, l]:
                acc = acc + _zvar(S, l) * Phi[j, l]
        if c is not None:
            for j1 in range(S.V_half):
                for j2 in range(S.V_half):
                    co = GaussianScalar.coerce(c[j1][j2][j])
                    if co:
                        acc = acc + _zvar(S, S.U_dim + j1) * _zvar(S, S.U_dim + j2) * co
        comps.append(acc)
    return PolyVectorField(S, comps)


def z_field(S, a, b=None):
    """The grade 1 family (a(u,u), b(u,v)).

    a is a symmetric tableau a[i1][i2] -> real U vector; b[i][j] -> complex
    V vector.
    """
    comps = []
    for q in range(S.U_dim):
        acc = MultiPoly.zero(S.coords)
        for i1 in range(S.U_dim):
            for i2 in range(S.U_dim):
                co = GaussianScalar.coerce(a[i1][i2][q])
                if co:
                    acc = acc + _zvar(S, i1) * _zvar(S, i2) * co
        comps.append(acc)
    for j in range(S.V_half):
        acc = MultiPoly.zero(S.coords)
        if b is not None:
            for i in range(S.U_dim):
                for j2 in range(S.V_half):
                    co = GaussianScalar.coerce(b[i][j2][j])
                    if co:
                        acc = acc + _zvar(S, i) * _zvar(S, S.U_dim + j2) * co
        comps.append(acc)
    return PolyVectorField(S, comps)


def make_field(kind, S, **kw):
    """Spec surface for the field constructors."""
    if kind == "d_u":
        return d_u(S, kw["u0"])
    if kind == "dtilde_v":
        return d_tilde(S, kw["v0"])
    if kind == "linear":
        return linear_field(S, kw["A"], kw.get("B"))
    if kind == "euler":
        return euler_field(S)
    if kind == "Y":
        return y_field(S, kw["Phi"], kw.get("c"))
    if kind == "Z":
        return z_field(S, kw["a"], kw.get("b"))
    raise ValueError(f"unknown field kind {kind!r}")


def b_field(S, x):
    """The fundamental field of an element of b: grade-zero parts act
    linearly through ad, b(1) parts translate, b(1/2) parts shear."""
    N = S.N
    b = S.b
    x = gvec(x)
    # decompose x along b0 / bhalf / b1
    basis = N.b0.vectors + N.bhalf.vectors + N.b1.vectors
    M = ExactMatrix.from_columns(basis)
    coeffs, _ = M.solve(x)
    n0 = N.b0.dim
    nh = N.bhalf.dim
    t_part = [G_ZERO] * b.dim
    for c, v in zip(coeffs[:n0], N.b0.vectors):
        t_part = vec_add(t_part, vec_scale(v, c))
    v_part = [G_ZERO] * b.dim
    for c, v in zip(coeffs[n0 : n0 + nh], N.bhalf.vectors):
        v_part = vec_add(v_part, vec_scale(v, c))
    u_part = [G_ZERO] * b.dim
    for c, v in zip(coeffs[n0 + nh :], N.b1.vectors):
        u_part = vec_add(u_part, vec_scale(v, c))

    out = PolyVectorField.zero(S)
    if not vec_is_zero(u_part):
        out = out + d_u(S, S.u_coords(u_part))
    if not vec_is_zero(v_part):
        out = out + d_tilde(S, S.v_coords(v_part))
    if not vec_is_zero(t_part):
        A = S._ad_on_U(t_part)
        B = S._ad_on_V(t_part) if S.V_half else None
        out = out + linear_field(S, A, B)
    return out


# ---------------------------------------------------------------------------
# grading
# ---------------------------------------------------------------------------


def grade_classify(X, S=None):
    """The Kaup grade gamma with [euler, X] = gamma X, or NOT_HOMOGENEOUS."""
    S = S or X.domain
    if X.is_zero():
        return Fraction(0)
    W = vf_bracket(euler_field(S), X)
    # match coefficients on the first nonzero term of X
    for i, comp in enumerate(X.components):
        for exp, c in comp.terms.items():
            w = W.components[i].terms.get(exp, G_ZERO)
            gamma = w / c
            if not gamma.is_real():
                return NOT_HOMOGENEOUS
            if W == X.scale(gamma):
                return Fraction(gamma.re)
            return NOT_HOMOGENEOUS
    return NOT_HOMOGENEOUS


def decompose_by_grade(X, S=None):
    """Split a field into its homogeneous grade components."""
    S = S or X.domain
    p = S.U_dim
    pieces = {}
    for i, comp in enumerate(X.components):
        base = Fraction(1) if i < p else Fraction(1, 2)
        for exp, c in comp.terms.items():
            du = sum(exp[:p])
            dv = sum(exp[p:])
            gamma = Fraction(du) + Fraction(dv, 2) - base
            tgt = pieces.setdefault(gamma, [MultiPoly.zero(S.coords) for _ in X.components])
            tgt[i] = tgt[i] + MultiPoly(S.coords, {exp: c})
    return {g: PolyVectorField(S, comps) for g, comps in sorted(pieces.items())}


def psi_map(Y, S=None):
    """ad(rotation) ad(d_E) on the grade 1/2 part."""
    S = S or Y.domain
    if not Y.is_zero() and grade_classify(Y, S) != Fraction(1, 2):
        raise WrongGradeError("psi expects a field of grade 1/2")
    dE = d_u(S, S.E_ucoord)
    return vf_bracket(rotation_field(S), vf_bracket(dE, Y))


def phi_map(Z, S=None):
    """(1/2) ad(d_E)^2 on the grade 1 part."""
    S = S or Z.domain
    if not Z.is_zero() and grade_classify(Z, S) != Fraction(1):
        raise WrongGradeError("phi expects a field of grade 1")
    dE = d_u(S, S.E_ucoord)
    return vf_bracket(dE, vf_bracket(dE, Z)).scale(Fraction(1, 2))


# ---------------------------------------------------------------------------
# condition checkers for the grade 1/2 and grade 1 normal forms
# ---------------------------------------------------------------------------


class ConditionReport:
    def __init__(self):
        self.entries = []

    def add(self, name, ok, witness=""):
        self.entries.append((name, bool(ok), witness))

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.entries)

    def __str__(self):
        return "\n".join(
            f"[{'pass' if ok else 'FAIL'}] {n}" + (f": {w}" if w and not ok else "")
            for n, ok, w in self.entries
        )


def cone_algebra_span(S):
    """Span of ad(T)|_{b(1)} over T in b(0): the linear maps used as the
    membership surrogate for the cone's automorphism algebra.  The span is
    automatically bracket-closed since b(0) is a subalgebra; its dimension
    is recorded on the spec."""
    if getattr(S, "_cone_alg", None) is None:
        rows = []
        for t in S.N.b0.vectors:
            M = S._ad_on_U(t)
            rows.append([M[i, j] for i in range(S.U_dim) for j in range(S.U_dim)])
        R, pivots = ExactMatrix(rows).rref()
        S._cone_alg = Subspace.span(
            _FlatSpace(S.U_dim * S.U_dim), [R.row(i) for i in range(len(pivots))]
        )
        S.cone_alg_dim = S._cone_alg.dim
    return S._cone_alg


class _FlatSpace:
    """Minimal parent stub so Subspace can hold flattened matrices."""

    def __init__(self, dim):
        self.dim = dim

    def unit(self, i):
        v = [G_ZERO] * self.dim
        v[i] = G_ONE
        return v


def _in_cone_algebra(S, M):
    flat = [M[i, j] for i in range(S.U_dim) for j in range(S.U_dim)]
    return cone_algebra_span(S).contains(flat)


def _q_vec(S, x, y):
    """Q(x, y) as a list of GaussianScalar for complex coordinate vectors."""
    return S.q_exact(x, y)


def _im_part(vec):
    return [GaussianScalar(x.im) for x in vec]


def check_Y_conditions(Phi, c, S):
    """Report on the two admissibility conditions of the grade 1/2 family."""
    Phi = ExactMatrix(Phi) if not isinstance(Phi, ExactMatrix) else Phi
    rep = ConditionReport()
    m, p = S.V_half, S.U_dim

    # (1) for each v0, the real-linear map u -> Im Q(Phi(u), v0) preserves the cone algebra
    ok, wit = True, ""
    v0_samples = []
    for j in range(m):
        e = [G_ZERO] * m
        e[j] = G_ONE
        v0_samples.append((f"f{j+1}", e))
        ei = [G_ZERO] * m
        ei[j] = G_I
        v0_samples.append((f"i*f{j+1}", ei))
    for name, v0 in v0_samples:
        cols = []
        for l in range(p):
            u = [G_ZERO] * p
            u[l] = G_ONE
            phiu = Phi.apply(u)
            cols.append(_im_part(_q_vec(S, phiu, v0)))
        M = ExactMatrix.from_columns(cols)
        if not _in_cone_algebra(S, M):
            ok, wit = False, f"v0 = {name}"
            break
    rep.add("Y1_membership_in_cone_algebra", ok, wit)

    # (2) Q(c(v',v'), v) = 2i Q(v', Phi(Q(v, v')))
    ok, wit = True, ""

    def c_eval(v1, v2):
        out = [G_ZERO] * m
        if c is None:
            return out
        for j1 in range(m):
            for j2 in range(m):
                f = GaussianScalar.coerce(v1[j1]) * GaussianScalar.coerce(v2[j2])
                if not f:
                    continue
                for j in range(m):
                    co = GaussianScalar.coerce(c[j1][j2][j])
                    if co:
                        out[j] = out[j] + co * f
        return out

    vp_samples = []
    for a in range(m):
        e = [G_ZERO] * m
        e[a] = G_ONE
        vp_samples.append(e)
        for bidx in range(a + 1, m):
            e2 = [G_ZERO] * m
            e2[a] = G_ONE
            e2[bidx] = G_ONE
            vp_samples.append(e2)
    two_i = GaussianScalar(0, 2)
    for vj in range(m):
        v = [G_ZERO] * m
        v[vj] = G_ONE
        for vp in vp_samples:
            lhs = _q_vec(S, c_eval(vp, vp), v)
            qvvp = _q_vec(S, v, vp)
            phi_q = Phi.apply(qvvp)
            rhs = [two_i * x for x in _q_vec(S, vp, phi_q)]
            if lhs != rhs:
                ok, wit = False, f"v = f{vj+1}, v' = {vp}"
                break
        if not ok:
            break
    rep.add("Y2_compatibility", ok, wit)
    return rep


def check_Z_conditions(a, b, S):
    """Report on the four admissibility conditions of the grade 1 family."""
    rep = ConditionReport()
    p, m = S.U_dim, S.V_half

    def a_map(u0):
        cols = []
        for l in range(p):
            col = [G_ZERO] * p
            for i0 in range(p):
                if not u0[i0]:
                    continue
                for q in range(p):
                    col[q] = col[q] + GaussianScalar.coerce(a[i0][l][q]) * u0[i0]
            cols.append(col)
        return ExactMatrix.from_columns(cols)

    # (1) A_{u0} in the cone algebra span
    ok, wit = True, ""
    for i0 in range(p):
        u0 = [G_ZERO] * p
        u0[i0] = G_ONE
        if not _in_cone_algebra(S, a_map(u0)):
            ok, wit = False, f"u0 = e{i0+1}"
            break
    rep.add("Z1_membership_in_cone_algebra", ok, wit)

    def b_apply(u, v):
        out = [G_ZERO] * m
        if b is None:
            return out
        for i in range(p):
            ui = GaussianScalar.coerce(u[i])
            if not ui:
                continue
            for j2 in range(m):
                vj = GaussianScalar.coerce(v[j2])
                if not vj:
                    continue
                for j in range(m):
                    co = GaussianScalar.coerce(b[i][j2][j])
                    if co:
                        out[j] = out[j] + co * ui * vj
        return out

    # (2) B_{u0} = b(u0, .)/2 is associated with A_{u0} and has real trace
    ok, wit = True, ""
    half = GaussianScalar(Fraction(1, 2))
    for i0 in range(p):
        u0 = [G_ZERO] * p
        u0[i0] = G_ONE
        A0 = a_map(u0)
        trace_im = Fraction(0)
        for j in range(m):
            e = [G_ZERO] * m
            e[j] = G_ONE
            bv = [half * x for x in b_apply(u0, e)]
            trace_im += bv[j].im
        if trace_im != 0:
            ok, wit = False, f"Im tr B_u0 != 0 at u0 = e{i0+1}"
            break
        for j1 in range(m):
            v1 = [G_ZERO] * m
            v1[j1] = G_ONE
            bv1 = [half * x for x in b_apply(u0, v1)]
            for j2 in range(m):
                v2 = [G_ZERO] * m
                v2[j2] = G_ONE
                bv2 = [half * x for x in b_apply(u0, v2)]
                lhs = A0.apply(_q_vec(S, v1, v2))
                rhs = vec_add(_q_vec(S, bv1, v2), _q_vec(S, v1, bv2))
                if lhs != rhs:
                    ok, wit = False, f"u0 = e{i0+1}, pair (f{j1+1}, f{j2+1})"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("Z2_associated_pair", ok, wit)

    # (3) u -> Im Q(b(u, v), v') lies in the cone algebra
    ok, wit = True, ""
    v_samples = []
    for j in range(m):
        e = [G_ZERO] * m
        e[j] = G_ONE
        v_samples.append(e)
        ei = [G_ZERO] * m
        ei[j] = G_I
        v_samples.append(ei)
    for v in v_samples:
        for vp in v_samples:
            cols = []
            for l in range(p):
                u = [G_ZERO] * p
                u[l] = G_ONE
                cols.append(_im_part(_q_vec(S, b_apply(u, v), vp)))
            if not _in_cone_algebra(S, ExactMatrix.from_columns(cols)):
                ok, wit = False, "witness in the (v, v') sample grid"
                break
        if not ok:
            break
    rep.add("Z3_membership_in_cone_algebra", ok, wit)

    # (4) Q(b(Q(v'',v'),v''),v) = Q(v'', b(Q(v,v''),v'))
    ok, wit = True, ""
    vpp_samples = []
    for a1 in range(m):
        e = [G_ZERO] * m
        e[a1] = G_ONE
        vpp_samples.append(e)
        for a2 in range(a1 + 1, m):
            e2 = [G_ZERO] * m
            e2[a1] = G_ONE
            e2[a2] = G_ONE
            vpp_samples.append(e2)
    for vj in range(m):
        v = [G_ZERO] * m
        v[vj] = G_ONE
        for pj in range(m):
            vp = [G_ZERO] * m
            vp[pj] = G_ONE
            for vpp in vpp_samples:
                q1 = _q_vec(S, vpp, vp)
                lhs = _q_vec(S, b_apply(q1, vpp), v)
                q2 = _q_vec(S, v, vpp)
                rhs = _q_vec(S, vpp, b_apply(q2, vp))
                if lhs != rhs:
                    ok, wit = False, f"(v, v', v'') = (f{vj+1}, f{pj+1}, {vpp})"
                    break
            if not ok:
                break
        if not ok:
            break
    rep.add("Z4_symmetry", ok, wit)
    return rep


# ---------------------------------------------------------------------------
# evaluation-based subspaces
# ---------------------------------------------------------------------------


def _real_evaluation_rows(fields, point):
    """Rows of the real 2N x n evaluation matrix at an exact point."""
    n = len(fields)
    N = len(point)
    rows = []
    evals = [f.evaluate(point) for f in fields]
    for comp in range(N):
        rows.append([evals[i][comp].re for i in range(n)])
    for comp in range(N):
        rows.append([evals[i][comp].im for i in range(n)])
    return rows, evals


def isotropy_at_reference(fields, S):
    """Real combinations of the fields vanishing at the reference point;
    returns coefficient vectors over the field list."""
    point = list(S.reference_point[0]) + list(S.reference_point[1])
    rows, _ = _real_evaluation_rows(fields, point)
    M = ExactMatrix([[GaussianScalar(x) for x in r] for r in rows])
    return M.kernel()


def compute_g_minus(fields, S):
    """Complex basis of {X + iY : Y(p) = i X(p)} over the field span.

    Returns a list of complex coefficient vectors (GaussianScalar entries)
    over the given field list; multiplication by i stays inside the span.
    """
    point = list(S.reference_point[0]) + list(S.reference_point[1])
    n = len(fields)
    N = len(point)
    evals = [f.evaluate(point) for f in fields]
    # unknowns (a_1..a_n, b_1..b_n) real with sum b_i e_i = i * sum a_i e_i
    rows = []
    for comp in range(N):
        # real part: sum b Re(e) - sum a Re(i e) = 0
        rows.append(
            [GaussianScalar(-(G_I * evals[i][comp]).re) for i in range(n)]
            + [GaussianScalar(evals[i][comp].re) for i in range(n)]
        )
        rows.append(
            [GaussianScalar(-(G_I * evals[i][comp]).im) for i in range(n)]
            + [GaussianScalar(evals[i][comp].im) for i in range(n)]
        )
    M = ExactMatrix(rows)
    kernel = M.kernel()
    reals = [[GaussianScalar(x.re) for x in k[:n]] for k in kernel]
    imags = [[GaussianScalar(x.re) for x in k[n:]] for k in kernel]
    complex_vecs = [
        [a + G_I * b for a, b in zip(re, im)] for re, im in zip(reals, imags)
    ]
    # the set is i-stable; reduce to a complex RREF basis
    if not complex_vecs:
        return []
    R, pivots = ExactMatrix(complex_vecs).rref()
    return [R.row(i) for i in range(len(pivots))]


def infer_j(fields, point):
    """Matrix of the complex structure pulled back through evaluation:
    (jX)(p) = i X(p) solved exactly on the span of the given fields."""
    n = len(fields)
    evals = [f.evaluate(point) for f in fields]
    N = len(point)
    rows = []
    rhs_cols = []
    for comp in range(N):
        rows.append([GaussianScalar(evals[i][comp].re) for i in range(n)])
        rows.append([GaussianScalar(evals[i][comp].im) for i in range(n)])
    M = ExactMatrix(rows)
    if len(M.kernel()) > 0:
        raise NotInvertibleAtReferenceError(
            "evaluation at the reference point is not injective on the span"
        )
    cols = []
    for i in range(n):
        target = [G_I * evals[i][comp] for comp in range(N)]
        b = []
        for comp in range(N):
            b.append(GaussianScalar(target[comp].re))
            b.append(GaussianScalar(target[comp].im))
        x, _ = M.solve(b)
        if any(not c.is_real() for c in x):
            raise NotInvertibleAtReferenceError("solved j column is not real")
        cols.append(x)
    return ExactMatrix.from_columns(cols)


# ---------------------------------------------------------------------------
# graded span of fields with abstract structure constants
# ---------------------------------------------------------------------------


class GradedAlgebraOfFields:
    """A labeled list of fields closed under bracket, with the abstract Lie
    algebra extracted through the anti-homomorphism convention
    [X, Y]_abstract corresponds to [Y_field, X_field]."""

    def __init__(self, S, labeled_fields):
        self.S = S
        self.labels = [l for l, _ in labeled_fields]
        self.fields = [f for _, f in labeled_fields]
        self._monomials = None
        self._span_matrix = None
        self._build()

    def _field_vector(self, f):
        vec = []
        for comp_index, monos in self._monomials:
            comp = f.components[comp_index]
            for m in monos:
                vec.append(comp.terms.get(m, G_ZERO))
        return vec

    def _build(self):
        # collect the monomial support across all fields and their brackets
        support = {}
        ncomp = len(self.fields[0].components)
        brackets = {}
        for i in range(len(self.fields)):
            for j in range(len(self.fields)):
                if i < j:
                    brackets[(i, j)] = vf_bracket(self.fields[i], self.fields[j])
        for f in list(self.fields) + list(brackets.values()):
            for ci, comp in enumerate(f.components):
                support.setdefault(ci, set()).update(comp.terms)
        self._monomials = [
            (ci, sorted(support.get(ci, ()), key=lambda e: (sum(e), e)))
            for ci in range(ncomp)
        ]
        vecs = [self._field_vector(f) for f in self.fields]
        M = ExactMatrix.from_columns(vecs)
        if len(M.kernel()) > 0:
            raise ValueError("fields are linearly dependent")
        self._span_matrix = M
        n = len(self.fields)
        self.bracket_coords = {}
        for (i, j), br in brackets.items():
            try:
                x, _ = M.solve(self._field_vector(br))
            except Exception as e:
                raise ValueError(
                    f"[{self.labels[i]}, {self.labels[j]}] leaves the span"
                ) from e
            self.bracket_coords[(i, j)] = x

        table = {}
        for (i, j), x in self.bracket_coords.items():
            # abstract [X_i, X_j] is carried by the field [X_j, X_i]
            row = {k: -c for k, c in enumerate(x) if c}
            if row:
                table[(i, j)] = row
        self.algebra = LieAlgebraData(self.labels, table)

    def field_coordinates(self, f):
        """Coordinates of a field in the stored span."""
        x, _ = self._span_matrix.solve(self._field_vector(f))
        return x

    def abstract_to_field(self, v):
        out = PolyVectorField.zero(self.S)
        for c, f in zip(gvec(v), self.fields):
            if c:
                out = out + f.scale(c)
        return out

    def grade_of(self, label):
        i = self.labels.index(label)
        return grade_classify(self.fields[i], self.S)
