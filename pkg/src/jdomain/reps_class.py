"""Multiplier characters, kernel functions, and the unitarizability
classification.

The Rossi-Vergne projection tau(U + V + T) = (V + ijV)/2 + T + ijT turns a
one-dimensional representation theta of the antiholomorphic subalgebra into
the character chi^theta(exp X) = e^{theta(tau(X))} of the solvable group.
Delta functions on the cone come from |chi|^2 through the peeling
decomposition and extend holomorphically to complexified arguments; the
reproducing kernel is Delta evaluated at (U - conj(U'))/i - 2Q(V, V').
The classification layer implements the worked five-dimensional family
xi(x, y, n, n') with its two partition levels.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
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
)
from .lie_core import Subspace
from .siegel import peel


class NotUnitarizableError(Exception):
    pass


# ---------------------------------------------------------------------------
# tau and characters
# ---------------------------------------------------------------------------


def tau(x, N):
    """(V + ijV)/2 + T + ijT for x = U + V + T in the grading of N.

    Input and output are coordinate vectors over the real basis; the output
    has GaussianScalar entries (an element of the complexified algebra).
    """
    basis = N.b0.vectors + N.bhalf.vectors + N.b1.vectors
    M = ExactMatrix.from_columns(basis)
    coeffs, _ = M.solve(gvec(x))
    n0, nh = N.b0.dim, N.bhalf.dim
    t_part = [G_ZERO] * N.b.dim
    for c, v in zip(coeffs[:n0], N.b0.vectors):
        t_part = vec_add(t_part, vec_scale(v, c))
    v_part = [G_ZERO] * N.b.dim
    for c, v in zip(coeffs[n0 : n0 + nh], N.bhalf.vectors):
        v_part = vec_add(v_part, vec_scale(v, c))
    jv = N.japply(v_part)
    jt = N.japply(t_part)
    half = GaussianScalar(Fraction(1, 2))
    out = [
        (v + G_I * jv_i) * half + t + G_I * jt_i
        for v, jv_i, t, jt_i in zip(v_part, jv, t_part, jt)
    ]
    return out


@dataclass(frozen=True)
class ThetaChar:
    """A one-dimensional representation of the antiholomorphic subalgebra,
    stored as its values on a chosen basis of that subalgebra."""

    basis: tuple  # complex vectors over the ambient algebra coordinates
    values: tuple  # GaussianScalar value per basis vector
    source: str = ""

    @classmethod
    def from_covector(cls, xi_cov, g_minus_basis, source=""):
        """theta = i * xi restricted to the antiholomorphic subalgebra, for a
        real covector xi on the ambient algebra."""
        xi = [GaussianScalar.coerce(c) for c in xi_cov]
        vals = []
        for z in g_minus_basis:
            v = sum((c * x for c, x in zip(xi, z)), G_ZERO)
            vals.append(G_I * v)
        return cls(tuple(tuple(z) for z in g_minus_basis), tuple(vals), source)

    def of(self, z):
        """Value on an element of the subalgebra (exact coordinate solve)."""
        M = ExactMatrix.from_columns([list(v) for v in self.basis])
        x, _ = M.solve(gvec(z))
        return sum((c * v for c, v in zip(x, self.values)), G_ZERO)

    def check_one_dimensional(self, algebra):
        """None when theta kills all brackets of its basis, else a witness
        pair of basis indices."""
        for i in range(len(self.basis)):
            for j in range(i + 1, len(self.basis)):
                br = algebra.bracket(list(self.basis[i]), list(self.basis[j]))
                if self.of(br):
                    return (i, j)
        return None


def chi_covector(theta, N):
    """The covector c = theta o tau on the real basis of b; chi(exp X) is
    then e^{c(X)} evaluated multiplicatively over word letters."""
    return [theta.of(tau(N.b.unit(i), N)) for i in range(N.b.dim)]


def chi_value(c_cov, x):
    """e^{c(x)} for a b coordinate vector x; exactly 1 when c(x) = 0."""
    val = G_ZERO
    exact = True
    for ci, xi in zip(c_cov, x):
        if isinstance(xi, (GaussianScalar, int, Fraction)):
            val = val + ci * GaussianScalar.coerce(xi)
        else:
            exact = False
            break
    if exact:
        if not val:
            return 1 + 0j
        return cmath.exp(complex(val))
    total = 0j
    for ci, xi in zip(c_cov, x):
        total += complex(ci) * complex(xi)
    return cmath.exp(total)


def chi_theta(word, theta, N, S):
    """Multiplicative character value of a BWord."""
    c = chi_covector(theta, N)
    out = 1 + 0j
    for x in word.b_elements(S):
        out *= chi_value(c, x)
    return out


def check_zero_extension(theta, algebra, b_embed, k_basis, N):
    """Zero-extension test: extend theta o tau by zero on the compact part
    and verify the extension kills all brackets of the ambient algebra.

    b_embed lists the ambient coordinate vectors of the N.b basis, in the
    same order; k_basis spans the complement.  Returns a dict report:
    precondition theta(k) = 0, then either pass or a witness bracket pair.
    """
    report = {"precondition_ok": True, "ok": False, "witness": None}
    for idx, kv in enumerate(k_basis):
        if theta.of(kv):
            report["precondition_ok"] = False
            report["witness"] = f"theta does not vanish on compact generator {idx}"
            return report

    split = ExactMatrix.from_columns(list(b_embed) + list(k_basis))
    n_b = len(b_embed)

    def mu(v):
        coeffs, _ = split.solve(v)
        out = G_ZERO
        for bi, c in enumerate(coeffs[:n_b]):
            if c:
                out = out + c * theta.of(tau(N.b.unit(bi), N))
        return out

    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            if mu(algebra.bracket_basis(i, j)):
                report["witness"] = (algebra.basis[i], algebra.basis[j])
                return report
    report["ok"] = True
    return report


# ---------------------------------------------------------------------------
# Delta functions and the kernel
# ---------------------------------------------------------------------------


def _exponent_covectors(c_cov, S, kind):
    """Per-pivot exponents and the nilpotent-coordinate covector for the
    Delta evaluation; kind is "abs2" (|chi|^2) or "conj" (two-weight)."""
    N = S.N
    if kind == "abs2":
        sigma = []
        for a in N.A_vecs:
            v = sum((ci * x for ci, x in zip(c_cov, a)), G_ZERO)
            sigma.append(2 * v.re)  # 2 Re c(A_k)
        rho = []
        for nb in S.n_basis:
            v = sum((ci * x for ci, x in zip(c_cov, nb)), G_ZERO)
            rho.append(GaussianScalar(2 * v.re))
        return sigma, rho
    if kind == "conj":
        sigma = []
        for a in N.A_vecs:
            v = sum((ci * x for ci, x in zip(c_cov, a)), G_ZERO)
            sigma.append(v.conjugate())
        rho = []
        for nb in S.n_basis:
            v = sum((ci * x for ci, x in zip(c_cov, nb)), G_ZERO)
            rho.append(v.conjugate())
        return sigma, rho
    raise ValueError(kind)


def _delta_from_peel(decomp, sigma, rho):
    out = 0j + 1
    for piv, s in zip(decomp.pivots, sigma):
        out *= cmath.exp(complex(s) * cmath.log(complex(piv)))
    for nvec in decomp.lowers:
        acc = 0j
        for c, r in zip(nvec, rho):
            acc += complex(r) * complex(c)
        out *= cmath.exp(acc)
    return out


def delta_eval(xi_cov, W, S, xi2_cov=None, tol=1e-12):
    """Delta at a cone (or complexified tube) argument W in U coordinates.

    With one weight: the holomorphic extension of |chi^{i xi}(t0)|^2 on the
    orbit parameterization.  With a second weight: the two-weight variant
    conj(chi^{i xi}(t0) chi^{-i xi'}(t0)).  Weights are real covectors on
    the basis of b.
    """
    N = S.N
    xi = [GaussianScalar.coerce(c) for c in xi_cov]

    def c_of(cov):
        # i * cov composed with tau, as a covector on b
        vals = []
        for i in range(N.b.dim):
            t = tau(N.b.unit(i), N)
            v = sum((GaussianScalar.coerce(ci) * x for ci, x in zip(cov, t)), G_ZERO)
            vals.append(G_I * v)
        return vals

    decomp = peel(W, S, tol=tol)
    if xi2_cov is None:
        sigma, rho = _exponent_covectors(c_of(xi), S, "abs2")
    else:
        xi2 = [GaussianScalar.coerce(c) for c in xi2_cov]
        diff = [a - b for a, b in zip(xi, xi2)]
        sigma, rho = _exponent_covectors(c_of(diff), S, "conj")
    return _delta_from_peel(decomp, sigma, rho)


def kernel_eval(xi_cov, z, w, S, tol=1e-12):
    """K^xi(z, w) = Delta_xi((U - conj(U'))/i - 2 Q(V, V'))."""
    Uz = [complex(x) for x in z[0]]
    Vz = [complex(x) for x in z[1]]
    Uw = [complex(x) for x in w[0]]
    Vw = [complex(x) for x in w[1]]
    q = S.q_float(Vz, Vw)
    arg = [(a - b.conjugate()) / 1j - 2 * c for a, b, c in zip(Uz, Uw, q)]
    return delta_eval(xi_cov, arg, S, tol=tol)


# ---------------------------------------------------------------------------
# character parameter space
# ---------------------------------------------------------------------------


def characters_space(algebra, g_minus_basis):
    """Basis of the real covectors killing all brackets of the
    antiholomorphic subalgebra; returned as covector rows."""
    rows = []
    for i in range(len(g_minus_basis)):
        for j in range(i + 1, len(g_minus_basis)):
            br = algebra.bracket(list(g_minus_basis[i]), list(g_minus_basis[j]))
            rows.append([GaussianScalar(x.re) for x in br])
            rows.append([GaussianScalar(x.im) for x in br])
    if not rows:
        return [
            [G_ONE if i == k else G_ZERO for i in range(algebra.dim)]
            for k in range(algebra.dim)
        ]
    return ExactMatrix(rows).kernel()


# ---------------------------------------------------------------------------
# classification of the xi(x, y, n, n') family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class XiParam:
    """Parameter quadruple of the shipped five-dimensional family."""

    x: Fraction
    y: Fraction
    n: int
    nprime: int

    @classmethod
    def make(cls, x, y, n, nprime):
        n = int(n)
        nprime = int(nprime)
        return cls(Fraction(x), Fraction(y), n, nprime)

    def as_list(self):
        return [self.x, self.y, self.n, self.nprime]


@dataclass(frozen=True)
class PartitionLabel:
    """Equivalence class tag at the B or G level."""

    level: str  # "B" or "G"
    kind: str  # "minus" or "zero"
    key: tuple

    def __str__(self):
        if self.kind == "minus":
            if self.level == "B":
                return "B:minus"
            n, np_ = self.key
            return f"G:minus(n={n},n'={np_})"
        y, n, np_ = self.key
        return f"{self.level}:zero(y={y},n={n},n'={np_})"


def is_unitarizable(xi):
    """x < 0 with n, n' > 0, or x = 0 with n, n' >= 0."""
    if not isinstance(xi.n, int) or not isinstance(xi.nprime, int):
        raise ValueError("n and n' must be integers")
    if xi.x < 0:
        return xi.n > 0 and xi.nprime > 0
    if xi.x == 0:
        return xi.n >= 0 and xi.nprime >= 0
    return False


def partition_label(xi, level):
    """The unitary-equivalence class of a unitarizable parameter.

    B level: one class for all x < 0; singletons keyed (y, n, n') at x = 0.
    G level: x < 0 classes keyed (n, n'); x = 0 singletons as at B level.
    """
    if level not in ("B", "G"):
        raise ValueError("level must be 'B' or 'G'")
    if not is_unitarizable(xi):
        raise NotUnitarizableError(f"{xi} is not unitarizable")
    if xi.x < 0:
        if level == "B":
            return PartitionLabel("B", "minus", ())
        return PartitionLabel("G", "minus", (xi.n, xi.nprime))
    key = (str(xi.y), xi.n, xi.nprime)
    return PartitionLabel(level, "zero", key)


def classify_report(xis):
    """Machine-readable classification rows for a list of XiParam."""
    rows = []
    for xi in xis:
        uni = is_unitarizable(xi)
        row = {
            "xi": [str(xi.x), str(xi.y), xi.n, xi.nprime],
            "unitarizable": uni,
            "B_class": str(partition_label(xi, "B")) if uni else None,
            "G_class": str(partition_label(xi, "G")) if uni else None,
        }
        rows.append(row)
    return rows
