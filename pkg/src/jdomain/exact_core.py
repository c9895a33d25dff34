"""Exact arithmetic ground layer.

Gaussian rational scalars, multivariate polynomials with Gaussian-rational
coefficients, and dense exact linear algebra (RREF, solving, kernels,
characteristic polynomials, rational root extraction).  Everything in this
module is immutable after construction and all operations are pure, so
values can be shared freely.
"""

from __future__ import annotations

import re
from fractions import Fraction

# The rational scalar is the stdlib Fraction: arbitrary precision, always
# reduced, positive denominator.
ExactScalar = Fraction


class NoSolutionError(Exception):
    """Raised by solve_linear on an inconsistent system."""


_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(s):
    s = s.strip()
    if not _RAT_RE.match(s):
        raise ValueError(f"not a rational literal: {s!r}")
    return Fraction(s)


def format_rational(q):
    q = Fraction(q)
    return str(q)


class GaussianScalar:
    """A Gaussian rational a + b*i with exact Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianScalar is immutable")

    # -- coercion helpers -------------------------------------------------
    @staticmethod
    def coerce(x):
        if isinstance(x, GaussianScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianScalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to GaussianScalar")

    # -- predicates --------------------------------------------------------
    def is_zero(self):
        return not self.re and not self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = GaussianScalar.coerce(other)
        return GaussianScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianScalar.coerce(other)
        return GaussianScalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianScalar.coerce(other) - self

    def __mul__(self, other):
        other = GaussianScalar.coerce(other)
        return GaussianScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianScalar.coerce(other)
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero GaussianScalar")
        return GaussianScalar(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return GaussianScalar.coerce(other) / self

    def __neg__(self):
        return GaussianScalar(-self.re, -self.im)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = G_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussianScalar(self.re, -self.im)

    def abs2(self):
        """|z|^2 as an exact Fraction."""
        return self.re * self.re + self.im * self.im

    # -- comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        try:
            other = GaussianScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    # -- printing ----------------------------------------------------------
    def __str__(self):
        if not self.im:
            return format_rational(self.re)
        im = format_rational(abs(self.im)) + "i"
        if im == "1i":
            im = "i"
        sign = "-" if self.im < 0 else "+"
        if not self.re:
            return im if sign == "+" else "-" + im
        return f"({format_rational(self.re)}{sign}{im})"

    def __repr__(self):
        return f"GaussianScalar({self.re!r}, {self.im!r})"

    def to_json(self):
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @staticmethod
    def from_json(d):
        if set(d) - {"re", "im"}:
            raise ValueError(f"unknown keys in scalar: {sorted(set(d) - {'re', 'im'})}")
        return GaussianScalar(parse_rational(d.get("re", "0")), parse_rational(d.get("im", "0")))


G_ZERO = GaussianScalar(0)
G_ONE = GaussianScalar(1)
G_I = GaussianScalar(0, 1)

_GAUSS_RE = re.compile(
    r"^\(?(?P<re>[+-]?\d+(?:/\d+)?)?(?P<im>[+-](?:\d+(?:/\d+)?)?i|[+-]?(?:\d+(?:/\d+)?)?i)?\)?$"
)


def parse_gaussian(s):
    """Parse the canonical forms produced by GaussianScalar.__str__.

    Accepts "p/q", "p/qi", "i", "-i", "(a+bi)", "(a-bi)".
    """
    s = s.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if s.endswith("i"):
        body = s[:-1]
        # split a real part off the front if there is an interior sign
        m = re.match(r"^([+-]?\d+(?:/\d+)?)([+-](?:\d+(?:/\d+)?)?)$", body)
        if m:
            re_part = Fraction(m.group(1))
            im_s = m.group(2)
            im_part = Fraction(im_s) if im_s not in ("+", "-") else Fraction(im_s + "1")
            return GaussianScalar(re_part, im_part)
        if body in ("", "+"):
            return G_I
        if body == "-":
            return GaussianScalar(0, -1)
        return GaussianScalar(0, Fraction(body))
    return GaussianScalar(parse_rational(s))


# ---------------------------------------------------------------------------
# Multivariate polynomials
# ---------------------------------------------------------------------------


def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """Multivariate polynomial over the Gaussian rationals.

    Terms are a map exponent-vector -> coefficient with zero coefficients
    never stored, so equality is structural; the canonical term order for
    printing and serialization is graded lexicographic, highest first.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        object.__setattr__(self, "variables", tuple(variables))
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = GaussianScalar.coerce(c)
                if len(exp) != len(self.variables):
                    raise ValueError("exponent length does not match variables")
                if c:
                    exp = tuple(int(e) for e in exp)
                    clean[exp] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def constant(cls, variables, c):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): GaussianScalar.coerce(c)})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        exp = tuple(1 if k == i else 0 for k in range(len(variables)))
        return cls(variables, {exp: G_ONE})

    # -- structure -----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def _check_same_vars(self, other):
        if self.variables != other.variables:
            raise ValueError(
                f"variable lists differ: {self.variables} vs {other.variables}"
            )

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianScalar)):
            other = MultiPoly.constant(self.variables, other)
        self._check_same_vars(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, G_ZERO) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianScalar)):
            other = MultiPoly.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianScalar)):
            c = GaussianScalar.coerce(other)
            if not c:
                return MultiPoly.zero(self.variables)
            return MultiPoly(self.variables, {e: k * c for e, k in self.terms.items()})
        self._check_same_vars(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(exp, G_ZERO) + c1 * c2
                if s:
                    terms[exp] = s
                else:
                    terms.pop(exp, None)
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def diff(self, name):
        """Partial derivative with respect to the named variable."""
        i = self.variables.index(name)
        terms = {}
        for exp, c in self.terms.items():
            if exp[i] == 0:
                continue
            new = list(exp)
            new[i] -= 1
            terms[tuple(new)] = c * exp[i]
        return MultiPoly(self.variables, terms)

    def evaluate(self, point):
        """Exact evaluation at a sequence of GaussianScalar values."""
        point = [GaussianScalar.coerce(p) for p in point]
        if len(point) != len(self.variables):
            raise ValueError("point length does not match variables")
        out = G_ZERO
        for exp, c in self.terms.items():
            v = c
            for p, e in zip(point, exp):
                for _ in range(e):
                    v = v * p
            out = out + v
        return out

    def evaluate_complex(self, point):
        """Float evaluation at a sequence of Python complex values."""
        if len(point) != len(self.variables):
            raise ValueError("point length does not match variables")
        out = 0j
        for exp, c in self.terms.items():
            v = complex(c)
            for p, e in zip(point, exp):
                v *= p**e
            out += v
        return out

    # -- comparison / printing -----------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def _term_str(self, exp, c):
        mono = "*".join(
            v if e == 1 else f"{v}^{e}"
            for v, e in zip(self.variables, exp)
            if e
        )
        cs = str(c)
        if not mono:
            return cs
        if cs == "1":
            return mono
        if cs == "-1":
            return "-" + mono
        return f"{cs}*{mono}"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = [self._term_str(e, c) for e, c in self.sorted_terms()]
        return " + ".join(parts).replace(" + -", " - ")

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    @classmethod
    def parse(cls, variables, s):
        """Parse the canonical string form produced by __str__."""
        variables = tuple(variables)
        s = s.strip()
        if s == "0":
            return cls.zero(variables)
        s = s.replace(" - ", " + -")
        poly = cls.zero(variables)
        for part in s.split(" + "):
            part = part.strip()
            neg = False
            if part.startswith("-") and not part[1:2].isdigit() and not part.startswith("-("):
                # "-z1" form: leading bare minus on a monomial
                if re.match(r"^-[A-Za-z]", part):
                    neg = True
                    part = part[1:]
            pieces = part.split("*")
            coef = G_ONE
            exp = [0] * len(variables)
            for piece in pieces:
                m = re.match(r"^([A-Za-z]\w*)(?:\^(\d+))?$", piece)
                if m and m.group(1) in variables:
                    exp[variables.index(m.group(1))] += int(m.group(2) or 1)
                else:
                    coef = coef * parse_gaussian(piece)
            if neg:
                coef = -coef
            poly = poly + cls(variables, {tuple(exp): coef})
        return poly


def poly_arith(p, q, op, var=None):
    """Spec-surface wrapper: add/mul/partial derivative for MultiPoly."""
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "partial_derivative":
        return p.diff(var)
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Exact matrices and linear solving
# ---------------------------------------------------------------------------


def gvec(xs):
    return [GaussianScalar.coerce(x) for x in xs]


def vec_add(a, b):
    return [x + y for x, y in zip(a, b)]


def vec_sub(a, b):
    return [x - y for x, y in zip(a, b)]


def vec_scale(a, c):
    c = GaussianScalar.coerce(c)
    return [x * c for x in a]


def vec_is_zero(a):
    return all(not x for x in a)


class ExactMatrix:
    """Dense matrix of GaussianScalar entries with exact linear algebra."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = [gvec(row) for row in entries]
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *a):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def identity(cls, n):
        return cls([[G_ONE if i == j else G_ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows, cols):
        return cls([[G_ZERO] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, cols):
        cols = [gvec(c) for c in cols]
        n = len(cols[0]) if cols else 0
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return list(self.entries[i])

    def col(self, j):
        return [self.entries[i][j] for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __add__(self, other):
        return ExactMatrix(
            [vec_add(r1, r2) for r1, r2 in zip(self.entries, other.entries)]
        )

    def __sub__(self, other):
        return ExactMatrix(
            [vec_sub(r1, r2) for r1, r2 in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return ExactMatrix([[-x for x in r] for r in self.entries])

    def scale(self, c):
        return ExactMatrix([vec_scale(r, c) for r in self.entries])

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            return ExactMatrix(
                [
                    [
                        sum(
                            (self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                            G_ZERO,
                        )
                        for j in range(other.cols)
                    ]
                    for i in range(self.rows)
                ]
            )
        raise TypeError("use .apply for matrix-vector products")

    def apply(self, v):
        v = gvec(v)
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [
            sum((self.entries[i][k] * v[k] for k in range(self.cols)), G_ZERO)
            for i in range(self.rows)
        ]

    def transpose(self):
        return ExactMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def conj(self):
        return ExactMatrix([[x.conjugate() for x in r] for r in self.entries])

    def is_real(self):
        return all(x.is_real() for r in self.entries for x in r)

    def trace(self):
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))), G_ZERO)

    def to_float(self):
        return [[complex(x) for x in r] for r in self.entries]

    # -- elimination ---------------------------------------------------------
    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        m = [list(r) for r in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            inv = G_ONE / m[r][c]
            m[r] = vec_scale(m[r], inv)
            for i in range(self.rows):
                if i != r and m[i][c]:
                    m[i] = vec_sub(m[i], vec_scale(m[r], m[i][c]))
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return ExactMatrix(m), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel(self):
        """Basis of the right kernel, one vector per free column, RREF-normalized."""
        R, pivots = self.rref()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for f in free:
            v = [G_ZERO] * self.cols
            v[f] = G_ONE
            for r, p in enumerate(pivots):
                v[p] = -R.entries[r][f]
            basis.append(v)
        return basis

    def solve(self, b):
        """Solve A x = b exactly.

        Returns (particular solution, kernel basis); raises NoSolutionError
        on an inconsistent system.  The solution is verified by
        back-substitution.
        """
        b = gvec(b)
        if len(b) != self.rows:
            raise ValueError("dimension mismatch")
        aug = ExactMatrix([self.entries[i] + [b[i]] for i in range(self.rows)])
        R, pivots = aug.rref()
        if self.cols in pivots:
            raise NoSolutionError("inconsistent linear system")
        x = [G_ZERO] * self.cols
        for r, p in enumerate(pivots):
            x[p] = R.entries[r][self.cols]
        if self.apply(x) != b:
            raise AssertionError("back-substitution check failed")
        return x, self.kernel()

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        m = [list(r) for r in self.entries]
        n = self.rows
        det = G_ONE
        for c in range(n):
            pr = next((i for i in range(c, n) if m[i][c]), None)
            if pr is None:
                return G_ZERO
            if pr != c:
                m[c], m[pr] = m[pr], m[c]
                det = -det
            det = det * m[c][c]
            inv = G_ONE / m[c][c]
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = vec_sub(m[i], vec_scale(m[c], f))
        return det

    def leading_principal_minors(self):
        return [
            ExactMatrix([r[: k + 1] for r in self.entries[: k + 1]]).det()
            for k in range(min(self.rows, self.cols))
        ]

    def char_poly(self):
        """Coefficients c_0..c_n of det(xI - A), ascending, via Faddeev-LeVerrier."""
        if self.rows != self.cols:
            raise ValueError("characteristic polynomial of non-square matrix")
        n = self.rows
        coeffs = [G_ZERO] * (n + 1)
        coeffs[n] = G_ONE
        M = ExactMatrix.identity(n)
        A = self
        for k in range(1, n + 1):
            AM = A * M
            c = AM.trace() / GaussianScalar(-k)
            coeffs[n - k] = c
            M = AM + ExactMatrix.identity(n).scale(c)
        return coeffs

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"ExactMatrix[{self.rows}x{self.cols}: {body}]"


def solve_linear(A, b):
    """Spec surface: exact solve returning a dict, or raising NoSolutionError."""
    x, k = A.solve(b)
    return {"solution": x, "kernel": k}


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(coeffs):
    """All rational roots (with multiplicity) of a polynomial with rational
    coefficients, ascending coefficient order.

    Returns (roots, fully_split) where fully_split is True when the
    polynomial factors completely into linear rational factors.
    """
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        raise ValueError("zero polynomial")
    roots = []
    # strip powers of x
    while cs[0] == 0:
        roots.append(Fraction(0))
        cs = cs[1:]
    if len(cs) == 1:
        return roots, True
    # clear denominators
    from math import lcm

    den = 1
    for c in cs:
        den = lcm(den, c.denominator)
    ics = [int(c * den) for c in cs]

    def eval_at(poly, r):
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * r + c
        return acc

    def deflate(poly, r):
        # synthetic division by (x - r); exact when r is a root
        out = []
        acc = Fraction(0)
        for c in reversed(poly):
            acc = acc * r + c
            out.append(acc)
        assert out[-1] == 0
        return list(reversed(out[:-1]))

    poly = [Fraction(c) for c in ics]
    candidates = set()
    for p in _divisors(ics[0]):
        for q in _divisors(ics[-1]):
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    found = True
    while len(poly) > 1 and found:
        found = False
        for r in sorted(candidates):
            if eval_at(poly, r) == 0:
                roots.append(r)
                poly = deflate(poly, r)
                found = True
                break
    return sorted(roots), len(poly) == 1
