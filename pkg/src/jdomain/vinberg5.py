"""Built-in datasets and their end-to-end verification suites.

Ships three domains:
  * vinberg5   - the five-dimensional non-symmetric tube domain over the
                 Vinberg cone of constrained symmetric 3x3 matrices, with
                 its twelve automorphism generators and the xi(x,y,n,n')
                 character family;
  * dI21       - the rank-one type I matrix-ball domain with a nontrivial
                 half grade, carrying the Phi/c and a/b field families;
  * halfplane  - the upper half plane with its three Moebius generators.

run_suite replays every generic check against the golden data frozen here.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exact_core import G_I, G_ONE, G_ZERO, GaussianScalar, MultiPoly, gvec
from .lie_core import Subspace, sub_algebra
from .normal_j import compute_grading, koszul_form, validate_normal_j
from .reps_class import (
    ThetaChar,
    XiParam,
    characters_space,
    check_zero_extension,
    chi_value,
    delta_eval,
    is_unitarizable,
    kernel_eval,
    partition_label,
    tau,
)
from .siegel import (
    BWord,
    ConeDecomposition,
    PivotNotPositiveError,
    affine_action,
    build_siegel,
    cone_action,
    peel,
)
from .vfields import (
    GradedAlgebraOfFields,
    PolyVectorField,
    b_field,
    compute_g_minus,
    infer_j,
    isotropy_at_reference,
)


class _ProtoDomain:
    """Coordinate stub so fields can be built before the real domain spec."""

    def __init__(self, n_u, n_v=0):
        self.U_dim = n_u
        self.V_half = n_v
        self.coords = tuple(f"z{i+1}" for i in range(n_u + n_v))


@dataclass
class BuiltinExample:
    name: str
    domain_spec: object
    normal_j: object
    g_fields: GradedAlgebraOfFields
    b_labels: list
    k_labels: list
    expected: dict = field(default_factory=dict)

    @property
    def algebra(self):
        return self.g_fields.algebra

    @property
    def b_embed(self):
        """Ambient coordinate vectors of the b basis, in b order."""
        g = self.algebra
        return [g.unit(g.basis.index(l)) for l in self.b_labels]

    def embed_b_vector(self, v):
        """Lift a b coordinate vector into ambient g coordinates."""
        g = self.algebra
        out = [G_ZERO] * g.dim
        for c, l in zip(gvec(v), self.b_labels):
            out[g.basis.index(l)] = c
        return out

    def restrict_to_b(self, xi_cov):
        """Restriction of an ambient covector to the b coordinates."""
        g = self.algebra
        return [xi_cov[g.basis.index(l)] for l in self.b_labels]

    @property
    def k_span(self):
        g = self.algebra
        return Subspace.span(g, [g.unit(g.basis.index(l)) for l in self.k_labels])

    @property
    def b_span(self):
        return Subspace.span(self.algebra, self.b_embed)


def _parse_fields(proto, spec):
    out = []
    for label, comps in spec:
        polys = [MultiPoly.parse(proto.coords, c) for c in comps]
        out.append((label, PolyVectorField(proto, polys, label)))
    return out


def _rebind(S, labeled):
    return [(l, PolyVectorField(S, f.components, l)) for l, f in labeled]


# ---------------------------------------------------------------------------
# vinberg5
# ---------------------------------------------------------------------------

_V5_FIELDS = [
    ("A1", ("z1", "0", "0", "1/2*z4", "0")),
    ("A2", ("0", "z2", "0", "0", "1/2*z5")),
    ("A3", ("0", "0", "z3", "1/2*z4", "1/2*z5")),
    ("A31", ("0", "0", "2*z4", "z1", "0")),
    ("A32", ("0", "0", "2*z5", "0", "z2")),
    ("E1", ("1", "0", "0", "0", "0")),
    ("E2", ("0", "1", "0", "0", "0")),
    ("E3", ("0", "0", "1", "0", "0")),
    ("E31", ("0", "0", "0", "1", "0")),
    ("E32", ("0", "0", "0", "0", "1")),
    ("W1", ("-z1^2 - 1", "0", "-z4^2", "-z1*z4", "0")),
    ("W2", ("0", "-z2^2 - 1", "-z5^2", "0", "-z2*z5")),
]

_V5_B_LABELS = [l for l, _ in _V5_FIELDS[:10]]
_V5_EXPECTED = {
    "dims": {"g": 12, "b": 10, "k": 2},
    "rank": 3,
    "grading_dims": {"b0": 5, "bhalf": 0, "b1": 5},
    # (k, l) 0-based pairs -> dimension of the difference/sum blocks; the
    # missing (1,2) pair is the non-symmetry signature
    "mixed_block_dims": {(0, 2): 1, (1, 2): 1},
    "isotropy": ["W1", "W2"],
    "b_minus_pairs": [("E1", "A1"), ("E2", "A2"), ("E3", "A3"), ("E31", "A31"), ("E32", "A32")],
    "grades": {
        "A1": Fraction(0), "A2": Fraction(0), "A3": Fraction(0),
        "A31": Fraction(0), "A32": Fraction(0),
        "E1": Fraction(-1), "E2": Fraction(-1), "E3": Fraction(-1),
        "E31": Fraction(-1), "E32": Fraction(-1),
        "W1": None, "W2": None,  # mixed
    },
    "characters_dim": 4,
    "bracket_table_sha256": "PLACEHOLDER",
}


def v5_xi_covector(xi, g):
    """xi(x,y,n,n') = x E3* + y A3* + n/2 (2 W1* - E1*) + n'/2 (2 W2* - E2*)
    as a covector on the ambient basis."""
    cov = [Fraction(0)] * g.dim
    idx = {l: g.basis.index(l) for l in ("E1", "E2", "E3", "A3", "W1", "W2")}
    cov[idx["E3"]] = Fraction(xi.x)
    cov[idx["A3"]] = Fraction(xi.y)
    cov[idx["E1"]] = -Fraction(xi.n, 2)
    cov[idx["E2"]] = -Fraction(xi.nprime, 2)
    cov[idx["W1"]] = Fraction(xi.n)
    cov[idx["W2"]] = Fraction(xi.nprime)
    return cov


def v5_matrix_from_ucoords(u):
    """The constrained symmetric 3x3 matrix carried by U coordinates."""
    x1, x2, x3, x4, x5 = u
    return [[x1, 0 * x1, x4], [0 * x1, x2, x5], [x4, x5, x3]]


def v5_sylvester_pd(u):
    """Leading-principal-minor oracle for cone membership, exact."""
    x1, x2, x3, x4, x5 = [Fraction(v) if not isinstance(v, Fraction) else v for v in u]
    m1 = x1
    m2 = x1 * x2
    m3 = x1 * x2 * x3 - x1 * x5 * x5 - x2 * x4 * x4
    return m1 > 0 and m2 > 0 and m3 > 0


def build_vinberg5():
    proto = _ProtoDomain(5)
    labeled = _parse_fields(proto, _V5_FIELDS)
    boot = GradedAlgebraOfFields(proto, labeled)
    g0 = boot.algebra
    if not g0.real_flag:
        raise AssertionError("the twelve generators produced non-real constants")

    b_lie = sub_algebra(g0, range(10), labels=_V5_B_LABELS)
    p = [G_I, G_I, G_I, G_ZERO, G_ZERO]
    j = infer_j([f for _, f in labeled[:10]], p)
    omega = koszul_form(b_lie, j)
    N = compute_grading(b_lie, j, omega)
    S = build_siegel(N)
    if S.coords != proto.coords:
        raise AssertionError("domain coordinates drifted from the field coordinates")

    gf = GradedAlgebraOfFields(S, _rebind(S, labeled))
    return BuiltinExample(
        name="vinberg5",
        domain_spec=S,
        normal_j=N,
        g_fields=gf,
        b_labels=_V5_B_LABELS,
        k_labels=["W1", "W2"],
        expected=dict(_V5_EXPECTED),
    )


# ---------------------------------------------------------------------------
# dI21: rank one, one complex half coordinate
# ---------------------------------------------------------------------------

_DI21_FIELDS = [
    ("A", ("z1", "1/2*z2")),
    ("E", ("1", "0")),
    ("V1", ("i*z2", "1")),
    ("V2", ("z2", "i")),
    ("Dp", ("0", "i*z2")),
    ("Y1", ("i*z1*z2", "z1 + i*z2^2")),
    ("Yi", ("z1*z2", "i*z1 + z2^2")),
    ("Z1", ("z1^2", "z1*z2")),
]

_DI21_EXPECTED = {
    "dims": {"g": 8, "b": 4, "k": 4},
    "rank": 1,
    "grading_dims": {"b0": 1, "bhalf": 2, "b1": 1},
    "mixed_block_dims": {},
    "b_minus_pairs": [("E", "A"), ("V1", "V2")],
    "grades": {
        "A": Fraction(0), "E": Fraction(-1),
        "V1": Fraction(-1, 2), "V2": Fraction(-1, 2),
        "Dp": Fraction(0),
        "Y1": Fraction(1, 2), "Yi": Fraction(1, 2),
        "Z1": Fraction(1),
    },
    "bracket_table_sha256": "PLACEHOLDER",
}


def build_dI21():
    proto = _ProtoDomain(1, 1)
    labeled = _parse_fields(proto, _DI21_FIELDS)
    boot = GradedAlgebraOfFields(proto, labeled)
    g0 = boot.algebra
    if not g0.real_flag:
        raise AssertionError("field generators produced non-real constants")

    b_lie = sub_algebra(g0, range(4))
    pref = [G_I, G_ZERO]
    j = infer_j([f for _, f in labeled[:4]], pref)
    omega = koszul_form(b_lie, j)
    N = compute_grading(b_lie, j, omega)
    S = build_siegel(N)

    gf = GradedAlgebraOfFields(S, _rebind(S, labeled))
    # the compact part is not basis-aligned here; the suite recovers it as
    # the isotropy span
    return BuiltinExample(
        name="dI21",
        domain_spec=S,
        normal_j=N,
        g_fields=gf,
        b_labels=["A", "E", "V1", "V2"],
        k_labels=[],
        expected=dict(_DI21_EXPECTED),
    )


# ---------------------------------------------------------------------------
# halfplane: the rank-one two-dimensional algebra
# ---------------------------------------------------------------------------

_HP_FIELDS = [
    ("A", ("z1",)),
    ("E", ("1",)),
    ("W", ("-z1^2 - 1",)),
]

_HP_EXPECTED = {
    "dims": {"g": 3, "b": 2, "k": 1},
    "rank": 1,
    "grading_dims": {"b0": 1, "bhalf": 0, "b1": 1},
    "mixed_block_dims": {},
    "b_minus_pairs": [("E", "A")],
    "grades": {"A": Fraction(0), "E": Fraction(-1), "W": None},
    "characters_dim": 1,
    "bracket_table_sha256": "PLACEHOLDER",
}


def build_halfplane():
    proto = _ProtoDomain(1)
    labeled = _parse_fields(proto, _HP_FIELDS)
    boot = GradedAlgebraOfFields(proto, labeled)
    g0 = boot.algebra
    b_lie = sub_algebra(g0, range(2))
    j = infer_j([f for _, f in labeled[:2]], [G_I])
    omega = koszul_form(b_lie, j)
    N = compute_grading(b_lie, j, omega)
    S = build_siegel(N)
    gf = GradedAlgebraOfFields(S, _rebind(S, labeled))
    return BuiltinExample(
        name="halfplane",
        domain_spec=S,
        normal_j=N,
        g_fields=gf,
        b_labels=["A", "E"],
        k_labels=["W"],
        expected=dict(_HP_EXPECTED),
    )


_BUILDERS = {
    "vinberg5": build_vinberg5,
    "dI21": build_dI21,
    "halfplane": build_halfplane,
}


def builtin_names():
    return sorted(_BUILDERS)


def builtin(name):
    if name not in _BUILDERS:
        raise KeyError(f"unknown builtin {name!r}; have {builtin_names()}")
    return _BUILDERS[name]()


# ---------------------------------------------------------------------------
# canonical bracket table
# ---------------------------------------------------------------------------


def bracket_table_text(g):
    lines = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lines.append(
                f"[{g.basis[i]},{g.basis[j]}] = {g.describe(g.bracket_basis(i, j))}"
            )
    return "\n".join(lines) + "\n"


def bracket_table_sha(g):
    return hashlib.sha256(bracket_table_text(g).encode()).hexdigest()


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------


class SuiteReport:
    def __init__(self, name):
        self.name = name
        self.entries = []

    def add(self, check, ok, detail=""):
        self.entries.append({"check": check, "ok": bool(ok), "detail": str(detail)})

    @property
    def passed(self):
        return all(e["ok"] for e in self.entries)

    def to_json(self):
        return json.dumps(
            {"name": self.name, "passed": self.passed, "checks": self.entries},
            sort_keys=True,
            indent=1,
        )

    def __str__(self):
        lines = [f"suite: {self.name}"]
        for e in self.entries:
            mark = "pass" if e["ok"] else "FAIL"
            detail = f" ({e['detail']})" if e["detail"] and not e["ok"] else ""
            lines.append(f"  [{mark}] {e['check']}{detail}")
        lines.append(f"result: {'all pass' if self.passed else 'FAILURES'}")
        return "\n".join(lines)


def random_cone_decomposition(S, rng, exact=True):
    """A random element of the cone orbit parameterization."""
    r = S.N.r
    if exact:
        pivots = [GaussianScalar(Fraction(rng.randint(1, 12), rng.randint(1, 6))) for _ in range(r)]
        lowers = [
            [
                GaussianScalar(Fraction(rng.randint(-8, 8), rng.randint(1, 5)))
                if S.n_block[p][0] == k
                else G_ZERO
                for p in range(S.n_dim)
            ]
            for k in range(r)
        ]
    else:
        pivots = [complex(rng.uniform(0.2, 3.0)) for _ in range(r)]
        lowers = [
            [
                complex(rng.uniform(-1.5, 1.5)) if S.n_block[p][0] == k else 0j
                for p in range(S.n_dim)
            ]
            for k in range(r)
        ]
    return ConeDecomposition(pivots, lowers, exact)


def random_domain_point(S, rng):
    """A float point of the domain: U = x + i(W + Q(V,V)), W in the cone."""
    V = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(S.V_half)]
    W = random_cone_decomposition(S, rng, exact=False).replay(S)
    q = S.q_float(V, V)
    U = [
        complex(rng.uniform(-2, 2), w.real + qq.real)
        for w, qq in zip(W, q)
    ]
    return U, V


def random_b0_word(S, rng, letters=3):
    w = BWord()
    for _ in range(letters):
        if S.n_dim and rng.random() < 0.5:
            nvec = [rng.uniform(-1, 1) for _ in range(S.n_dim)]
            w = w.then(("lower", nvec, rng.uniform(-1, 1)))
        else:
            w = w.then(("scale", rng.randrange(S.N.r), rng.uniform(-0.7, 0.7)))
    return w


def random_b_word(S, rng, letters=3):
    w = BWord()
    for _ in range(letters):
        c = rng.random()
        if c < 0.4:
            w = w.then(("translate", [rng.uniform(-1, 1) for _ in range(S.U_dim)]))
        elif c < 0.6 and S.V_half:
            w = w.then(
                ("shear", [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(S.V_half)])
            )
        elif c < 0.8:
            w = w.then(("scale", rng.randrange(S.N.r), rng.uniform(-0.7, 0.7)))
        elif S.n_dim:
            w = w.then(("lower", [rng.uniform(-1, 1) for _ in range(S.n_dim)], rng.uniform(-1, 1)))
        else:
            w = w.then(("scale", rng.randrange(S.N.r), rng.uniform(-0.7, 0.7)))
    return w


def _suite_xi_b_cov(ex):
    """A generic exact weight on b for the Delta/kernel numerics."""
    g = ex.algebra
    if ex.name == "vinberg5":
        xi = XiParam.make(Fraction(-3, 2), Fraction(1, 2), 1, 2)
        return ex.restrict_to_b(v5_xi_covector(xi, g))
    N = ex.normal_j
    # a weight supported on the E coordinates, through the inner product
    cov = [Fraction(0)] * N.b.dim
    for k, e in enumerate(N.E_vecs):
        for i, c in enumerate(e):
            cov[i] += Fraction(k + 1) * Fraction(c.re)
    return cov


def run_suite(ex, samples=200, tol=1e-9, seed=20260810, threads=1):
    """Execute every applicable check for a builtin and report pass/fail."""
    rep = SuiteReport(ex.name)
    g = ex.algebra
    N = ex.normal_j
    S = ex.domain_spec
    exp = ex.expected
    rng = random.Random(seed)

    # --- structure ---------------------------------------------------------
    w = g.check_jacobi()
    rep.add("jacobi_all_triples", w is None, w)

    dims = exp["dims"]
    k_span = ex.k_span if ex.k_labels else Subspace.span(
        g, [gvec(v) for v in isotropy_at_reference([f for f in ex.g_fields.fields], S)]
    )
    rep.add(
        "dimensions",
        g.dim == dims["g"] and N.b.dim == dims["b"] and k_span.dim == dims["k"],
        f"got g={g.dim}, b={N.b.dim}, k={k_span.dim}",
    )

    rep.add("bracket_table_sha256", bracket_table_sha(g) == exp["bracket_table_sha256"],
            bracket_table_sha(g))

    # --- normal j-algebra axioms -------------------------------------------
    vr = validate_normal_j(N.b, N.j, N.omega)
    rep.add("normal_j_axioms", vr.passed, "; ".join(n for n, _ in vr.failures()))

    gd = exp["grading_dims"]
    rep.add(
        "grading_dimensions",
        N.r == exp["rank"]
        and N.b0.dim == gd["b0"]
        and N.bhalf.dim == gd["bhalf"]
        and N.b1.dim == gd["b1"],
        f"r={N.r} dims=({N.b0.dim},{N.bhalf.dim},{N.b1.dim})",
    )

    got_blocks = {k: v.dim for k, v in N.sum_blocks.items()}
    rep.add(
        "mixed_root_blocks",
        got_blocks == exp["mixed_block_dims"]
        and {k: v.dim for k, v in N.diff_blocks.items()} == exp["mixed_block_dims"],
        str(got_blocks),
    )

    # --- fields respect the abstract data -----------------------------------
    ok = True
    wit = ""
    for bi, lab in enumerate(ex.b_labels):
        want = ex.g_fields.fields[ex.g_fields.labels.index(lab)]
        got = b_field(S, N.b.unit(bi))
        if got != want:
            ok, wit = False, lab
            break
    rep.add("fundamental_field_reconstruction", ok, wit)

    ok = True
    wit = ""
    for lab in ex.g_fields.labels:
        got = ex.g_fields.grade_of(lab)
        gotv = got if isinstance(got, Fraction) else None
        if gotv != exp["grades"][lab]:
            ok, wit = False, f"{lab}: {got}"
            break
    rep.add("grade_table", ok, wit)

    # --- isotropy and the antiholomorphic subalgebra ------------------------
    iso = isotropy_at_reference(list(ex.g_fields.fields), S)
    iso_span = Subspace.span(g, iso)
    if "isotropy" in exp:
        want = Subspace.span(g, [g.unit(g.basis.index(l)) for l in exp["isotropy"]])
        rep.add("isotropy_at_reference", iso_span == want, f"dim={iso_span.dim}")
    else:
        rep.add("isotropy_at_reference", iso_span.dim == dims["k"], f"dim={iso_span.dim}")

    gm = compute_g_minus(list(ex.g_fields.fields), S)
    gm_span = Subspace.span(g, gm)
    pairs = exp["b_minus_pairs"]
    want_bm = Subspace.span(
        g,
        [
            vec_pair(g, e_lab, a_lab)
            for (e_lab, a_lab) in pairs
        ],
    )
    b_c = Subspace.span(g, ex.b_embed)
    got_bm = gm_span.intersection(b_c)
    rep.add("b_minus_matches", got_bm == want_bm, f"dim={got_bm.dim}")
    rep.add("k_inside_g_minus", gm_span.contains_space(k_span), "")

    # --- tau / chi ------------------------------------------------------------
    ok, wit = True, ""
    for i in range(N.b.dim):
        ti = tau(N.b.unit(i), N)
        if not got_bm.contains(ex.embed_b_vector(ti)):
            ok, wit = False, N.b.basis[i]
            break
        for j2 in range(N.b.dim):
            lhs = tau(N.b.bracket(N.b.unit(i), N.b.unit(j2)), N)
            rhs = N.b.bracket(tau(N.b.unit(i), N), tau(N.b.unit(j2), N))
            if lhs != rhs:
                ok, wit = False, f"pair ({N.b.basis[i]}, {N.b.basis[j2]})"
                break
        if not ok:
            break
    rep.add("tau_homomorphism_into_b_minus", ok, wit)

    xi_b = _suite_xi_b_cov(ex)
    c_cov = _i_xi_tau_cov(xi_b, N)
    ok, wit = True, ""
    for t in range(max(10, samples // 4)):
        word = random_b_word(S, rng, letters=4)
        cut = rng.randrange(len(word.letters) + 1)
        w1, w2 = BWord(word.letters[:cut]), BWord(word.letters[cut:])
        full = _chi_word(c_cov, word, S)
        split = _chi_word(c_cov, w1, S) * _chi_word(c_cov, w2, S)
        if abs(full - split) > 1e-12 * max(1.0, abs(full)):
            ok, wit = False, f"sample {t}"
            break
        x = [rng.uniform(-1, 1) for _ in range(N.b.dim)]
        s, t2 = rng.uniform(-1, 1), rng.uniform(-1, 1)
        one = chi_value(c_cov, [c * (s + t2) for c in x])
        two = chi_value(c_cov, [c * s for c in x]) * chi_value(c_cov, [c * t2 for c in x])
        if abs(one - two) > 1e-12 * max(1.0, abs(one)):
            ok, wit = False, f"one-parameter sample {t}"
            break
    rep.add("chi_multiplicativity", ok, wit)

    # --- peel / replay ---------------------------------------------------------
    ok, wit = True, ""
    for t in range(samples):
        d = random_cone_decomposition(S, rng, exact=True)
        U = d.replay(S)
        d2 = peel(U, S)
        if d2.pivots != d.pivots or d2.lowers != d.lowers:
            ok, wit = False, f"sample {t}"
            break
    rep.add("peel_replay_identity", ok, wit)

    if ex.name == "vinberg5":
        ok, wit = True, ""
        for t in range(samples):
            u = [Fraction(rng.randint(-12, 12), rng.randint(1, 4)) for _ in range(5)]
            want = v5_sylvester_pd(u)
            try:
                peel(gvec(u), S)
                got = True
            except PivotNotPositiveError:
                got = False
            if got != want:
                ok, wit = False, f"sample {t}: {u}"
                break
        rep.add("peel_matches_sylvester_oracle", ok, wit)

    # --- Delta / kernel numerics -----------------------------------------------
    ok, wit = True, ""
    for t in range(samples):
        word = random_b0_word(S, rng)
        W = random_cone_decomposition(S, rng, exact=False).replay(S)
        lhs = delta_eval(xi_b, cone_action(word, W, S), S)
        chi = _chi_word(c_cov, word, S)
        rhs = abs(chi) ** 2 * delta_eval(xi_b, W, S)
        if abs(lhs - rhs) > tol * max(1.0, abs(rhs)):
            ok, wit = False, f"sample {t}: {lhs} vs {rhs}"
            break
    rep.add("delta_transformation_law", ok, wit)

    ok, wit = True, ""
    for t in range(samples):
        word = random_b_word(S, rng)
        z = random_domain_point(S, rng)
        w2 = random_domain_point(S, rng)
        try:
            bz = affine_action(word, z, S)
            bw = affine_action(word, w2, S)
        except Exception as e:  # pragma: no cover - domain noise
            ok, wit = False, f"sample {t}: {e}"
            break
        chi = _chi_word(c_cov, word, S)
        lhs = kernel_eval(xi_b, bz, bw, S)
        rhs = chi * kernel_eval(xi_b, z, w2, S) * chi.conjugate()
        if abs(lhs - rhs) > tol * max(1.0, abs(rhs)):
            ok, wit = False, f"sample {t}: {lhs} vs {rhs}"
            break
    rep.add("kernel_b_invariance", ok, wit)

    # --- classification ---------------------------------------------------------
    if ex.name == "vinberg5":
        gm_basis = [list(v) for v in gm_span.vectors]
        chars = characters_space(g, gm_basis)
        ok = len(chars) == exp["characters_dim"]
        if ok:
            want_span = Subspace.span(
                g,
                [
                    [GaussianScalar.coerce(c) for c in v5_xi_covector(xi, g)]
                    for xi in (
                        XiParam.make(1, 0, 0, 0),
                        XiParam.make(0, 1, 0, 0),
                        XiParam.make(0, 0, 1, 0),
                        XiParam.make(0, 0, 0, 1),
                    )
                ],
            )
            ok = Subspace.span(g, chars) == want_span
        rep.add("characters_space_normalization", ok, f"dim={len(chars)}")

        xi_ok = XiParam.make(Fraction(-1), 0, 1, 1)
        theta_pass = ThetaChar.from_covector(
            v5_xi_covector(XiParam.make(Fraction(-1), Fraction(2), 0, 0), g),
            gm_basis,
        )
        z_rep = check_zero_extension(theta_pass, g, ex.b_embed,
                                     [g.unit(g.basis.index(l)) for l in ex.k_labels], N)
        theta_fail = ThetaChar.from_covector(
            v5_xi_covector(XiParam.make(Fraction(-1), 0, 1, 0), g), gm_basis
        )
        z_rep2 = check_zero_extension(theta_fail, g, ex.b_embed,
                                      [g.unit(g.basis.index(l)) for l in ex.k_labels], N)
        rep.add(
            "zero_extension_check",
            z_rep["ok"] and not z_rep2["precondition_ok"],
            f"{z_rep} / {z_rep2}",
        )

        cls_ok = (
            is_unitarizable(xi_ok)
            and is_unitarizable(XiParam.make(0, 5, 0, 0))
            and not is_unitarizable(XiParam.make(-1, 0, 0, 1))
            and not is_unitarizable(XiParam.make(1, 0, 1, 1))
            and partition_label(XiParam.make(-1, 0, 2, 3), "G")
            == partition_label(XiParam.make(-2, 7, 2, 3), "G")
            and partition_label(XiParam.make(-1, 0, 1, 1), "B")
            == partition_label(XiParam.make(-2, 3, 4, 5), "B")
            and partition_label(XiParam.make(0, 1, 0, 0), "B")
            != partition_label(XiParam.make(0, 2, 0, 0), "B")
            and partition_label(XiParam.make(0, 1, 0, 0), "G")
            != partition_label(XiParam.make(0, 2, 0, 0), "G")
        )
        rep.add("classification_samples", cls_ok, "")

    return rep


def vec_pair(g, e_lab, a_lab):
    """E + iA as an ambient complex coordinate vector."""
    v = [G_ZERO] * g.dim
    v[g.basis.index(e_lab)] = G_ONE
    v[g.basis.index(a_lab)] = G_I
    return v


def _i_xi_tau_cov(xi_b, N):
    """The covector i*xi(tau(.)) on the b basis."""
    out = []
    for i in range(N.b.dim):
        t = tau(N.b.unit(i), N)
        v = sum((GaussianScalar.coerce(c) * x for c, x in zip(xi_b, t)), G_ZERO)
        out.append(G_I * v)
    return out


def _chi_word(c_cov, word, S):
    out = 1 + 0j
    for x in word.b_elements(S):
        out *= chi_value(c_cov, x)
    return out
