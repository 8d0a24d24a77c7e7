"""Scalar field backends and exact rank/kernel linear algebra.

Two interchangeable backends feed every cohomology computation:

* ``CyclotomicBackend(M)`` -- exact arithmetic in Q(zeta_M).  An element is
  a coefficient tuple of length phi(M), coding a polynomial in zeta_M
  reduced modulo the M-th cyclotomic polynomial.  Coefficients are Python
  ints or Fractions; zero testing is exact.
* ``ComplexBackend(eps)`` -- plain complex floats with an absolute zero
  tolerance ``eps``.

Rank computations over the cyclotomic backend run fraction-free (Bareiss)
on integer coefficient vectors, so no rational blowup occurs.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache


def _poly_div_exact(num, den):
    """Divide integer polynomials (dense, constant term first); den monic."""
    num = list(num)
    dden = len(den) - 1
    quot = [0] * (len(num) - dden)
    for k in range(len(num) - 1, dden - 1, -1):
        coeff = num[k]
        if coeff:
            quot[k - dden] = coeff
            for j in range(dden + 1):
                num[k - dden + j] -= coeff * den[j]
    if any(num):
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(order):
    """The order-th cyclotomic polynomial as a tuple of int coefficients.

    >>> cyclotomic_polynomial(1)
    (-1, 1)
    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if order < 1:
        raise ValueError("order must be a positive integer")
    poly = [-1] + [0] * (order - 1) + [1]
    for d in range(1, order):
        if order % d == 0:
            poly = _poly_div_exact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _ext_inverse(poly, modulus):
    """Inverse of poly modulo the irreducible monic `modulus`, over Q[x].

    poly and modulus are dense Fraction/int lists, constant first.  Returns
    Fraction coefficient list of length < deg(modulus).
    """

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def divmod_q(a, b):
        a = [Fraction(x) for x in a]
        q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
        inv_lead = 1 / Fraction(b[-1])
        for k in range(len(a) - 1, len(b) - 2, -1):
            coeff = a[k] * inv_lead
            if coeff:
                q[k - len(b) + 1] = coeff
                for j in range(len(b)):
                    a[k - len(b) + 1 + j] -= coeff * b[j]
        return trim(q), trim(a)

    r0, r1 = [Fraction(c) for c in modulus], trim([Fraction(c) for c in poly])
    t0, t1 = [Fraction(0)], [Fraction(1)]
    if not r1:
        raise ZeroDivisionError("inverse of zero")
    while len(r1) > 1:
        q, r = divmod_q(r0, r1)
        # t_next = t0 - q*t1
        prod = [Fraction(0)] * (len(q) + len(t1) - 1)
        for i, qi in enumerate(q):
            if qi:
                for j, tj in enumerate(t1):
                    prod[i + j] += qi * tj
        tnext = [
            (t0[k] if k < len(t0) else 0) - (prod[k] if k < len(prod) else 0)
            for k in range(max(len(t0), len(prod)))
        ]
        r0, r1 = r1, (r if r else [Fraction(0)])
        t0, t1 = t1, trim(tnext) or [Fraction(0)]
        if not any(r1):
            raise ZeroDivisionError("element not invertible modulo the given polynomial")
    g = r1[0]
    return [c / g for c in t1]


class CyclotomicBackend:
    """Exact arithmetic in the cyclotomic field Q(zeta_order)."""

    kind = "cyclotomic"

    def __init__(self, order):
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        d = len(self.modulus) - 1
        self.degree = d
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)
        # x^k reduced modulo the cyclotomic polynomial, for 0 <= k < top
        top = max(order, 2 * d - 1)
        pows = [list(self.one)]
        for _ in range(1, top):
            prev = pows[-1]
            cur = [0] + prev[: d - 1]
            lead = prev[d - 1]
            if lead:
                for j in range(d):
                    cur[j] -= lead * self.modulus[j]
            pows.append(cur)
        self._pow = [tuple(p) for p in pows]

    def __repr__(self):
        return f"CyclotomicBackend({self.order})"

    def root(self, k):
        """zeta_order ** k as a backend element."""
        return self._pow[k % self.order]

    def from_rational(self, r):
        return (r,) + (0,) * (self.degree - 1)

    def add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def sub(self, u, v):
        return tuple(a - b for a, b in zip(u, v))

    def neg(self, u):
        return tuple(-a for a in u)

    def mul(self, u, v):
        d = self.degree
        conv = [0] * (2 * d - 1)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        conv[i + j] += ui * vj
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                pw = self._pow[k]
                for j in range(d):
                    if pw[j]:
                        out[j] += ck * pw[j]
        return tuple(out)

    def scale(self, r, u):
        return tuple(r * a for a in u)

    def inv(self, u):
        if self.is_zero(u):
            raise ZeroDivisionError("inverse of zero")
        coeffs = _ext_inverse(list(u), list(self.modulus))
        coeffs += [Fraction(0)] * (self.degree - len(coeffs))
        return tuple(coeffs[: self.degree])

    def div(self, u, v):
        return self.mul(u, self.inv(v))

    def is_zero(self, u):
        return not any(u)

    def is_one(self, u):
        return self.is_zero(self.sub(u, self.one))

    def eq(self, u, v):
        return self.is_zero(self.sub(u, v))

    def to_complex(self, u):
        return sum(
            float(c) * cmath.exp(2j * cmath.pi * k / self.order)
            for k, c in enumerate(u)
            if c
        )

    def format(self, u):
        """Human-readable polynomial in z = zeta_order."""
        terms = []
        for k, c in enumerate(u):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mon = "z" if k == 1 else f"z^{k}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append(f"-{mon}")
                else:
                    terms.append(f"{c}*{mon}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" + {t}" if not t.startswith("-") else f" - {t[1:]}"
        return out


class ComplexBackend:
    """Floating point complex numbers with an absolute zero tolerance."""

    kind = "complex"

    def __init__(self, eps=1e-9):
        self.eps = eps
        self.zero = 0j
        self.one = 1 + 0j

    def __repr__(self):
        return f"ComplexBackend(eps={self.eps!r})"

    def unit_root(self, k, order):
        return cmath.exp(2j * cmath.pi * k / order)

    def from_rational(self, r):
        return complex(r)

    def add(self, u, v):
        return u + v

    def sub(self, u, v):
        return u - v

    def neg(self, u):
        return -u

    def mul(self, u, v):
        return u * v

    def scale(self, r, u):
        return complex(r) * u

    def inv(self, u):
        if self.is_zero(u):
            raise ZeroDivisionError("inverse of (numerically) zero")
        return 1 / u

    def div(self, u, v):
        return u / v

    def is_zero(self, u):
        return abs(u) <= self.eps

    def is_one(self, u):
        return abs(u - 1) <= self.eps

    def eq(self, u, v):
        return abs(u - v) <= self.eps

    def to_complex(self, u):
        return complex(u)

    def format(self, u):
        return format(u, ".6g")


class Matrix:
    """Rectangular matrix over one scalar backend."""

    def __init__(self, backend, rows, ncols=None):
        self.backend = backend
        self.rows = [list(r) for r in rows]
        if self.rows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged matrix")
        else:
            self.ncols = 0 if ncols is None else ncols
        self.nrows = len(self.rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.backend.kind})"

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self):
        return Matrix(
            self.backend,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def is_zero(self):
        bz = self.backend.is_zero
        return all(bz(e) for row in self.rows for e in row)


def matmul(a, b):
    if a.ncols != b.nrows:
        raise ValueError("shape mismatch")
    bk = a.backend
    out = []
    for i in range(a.nrows):
        row = []
        for j in range(b.ncols):
            acc = bk.zero
            for k in range(a.ncols):
                acc = bk.add(acc, bk.mul(a.rows[i][k], b.rows[k][j]))
            row.append(acc)
        out.append(row)
    return Matrix(bk, out, ncols=b.ncols)


def _int_rows(backend, rows):
    """Clear denominators rowwise, returning integer coefficient tuples."""
    out = []
    for row in rows:
        den = 1
        for e in row:
            for c in e:
                if isinstance(c, Fraction):
                    den = den * c.denominator // math.gcd(den, c.denominator)
        if den == 1:
            out.append([tuple(int(c) for c in e) for e in row])
        else:
            out.append([tuple(int(c * den) for c in e) for e in row])
    return out


def _rank_cyclotomic(mat):
    """Fraction-free row elimination over Z[zeta]; division never needed.

    Row updates are multiply-and-subtract (rank preserving since pivots are
    nonzero in an integral domain); rowwise integer content is stripped to
    keep coefficients small.
    """
    bk = mat.backend
    rows = _int_rows(bk, mat.rows)
    m, n = len(rows), mat.ncols
    mul, sub = bk.mul, bk.sub
    rank = 0
    for col in range(n):
        piv = None
        for i in range(rank, m):
            if any(rows[i][col]):
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        p = prow[col]
        for i in range(rank + 1, m):
            ri = rows[i]
            f = ri[col]
            if not any(f):
                continue
            g = 0
            for k in range(col, n):
                t = sub(mul(p, ri[k]), mul(f, prow[k]))
                ri[k] = t
                for c in t:
                    if c:
                        g = math.gcd(g, c)
            if g > 1:
                for k in range(col, n):
                    ri[k] = tuple(c // g for c in ri[k])
        rank += 1
    return rank


def _rank_complex(mat):
    eps = mat.backend.eps
    rows = [[complex(e) for e in row] for row in mat.rows]
    m, n = len(rows), mat.ncols
    scale = max((abs(e) for row in rows for e in row), default=0.0)
    if scale == 0.0:
        return 0
    thresh = eps * scale
    rank = 0
    for col in range(n):
        piv, best = None, thresh
        for i in range(rank, m):
            a = abs(rows[i][col])
            if a > best:
                piv, best = i, a
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        pval = prow[col]
        for i in range(rank + 1, m):
            f = rows[i][col] / pval
            if f:
                ri = rows[i]
                for k in range(col, n):
                    ri[k] -= f * prow[k]
        rank += 1
    return rank


def rank(mat):
    """Rank of the matrix over its backend field."""
    if mat.nrows == 0 or mat.ncols == 0:
        return 0
    if mat.backend.kind == "cyclotomic":
        return _rank_cyclotomic(mat)
    return _rank_complex(mat)


def kernel_dimension(mat):
    return mat.ncols - rank(mat)


def kernel_basis(mat):
    """Basis of the right kernel, one coefficient list per basis vector."""
    bk = mat.backend
    m, n = mat.nrows, mat.ncols
    if n == 0:
        return []
    rows = [list(r) for r in mat.rows]
    if bk.kind == "complex":
        scale = max((abs(e) for row in rows for e in row), default=0.0)
        thresh = bk.eps * scale if scale else bk.eps

        def pick(col, start):
            best, who = thresh, None
            for i in range(start, m):
                if abs(rows[i][col]) > best:
                    best, who = abs(rows[i][col]), i
            return who

    else:

        def pick(col, start):
            for i in range(start, m):
                if not bk.is_zero(rows[i][col]):
                    return i
            return None

    piv_cols = []
    r = 0
    for col in range(n):
        piv = pick(col, r)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv_p = bk.inv(rows[r][col])
        rows[r] = [bk.mul(inv_p, e) for e in rows[r]]
        for i in range(m):
            if i != r and not bk.is_zero(rows[i][col]):
                f = rows[i][col]
                rows[i] = [bk.sub(e, bk.mul(f, p)) for e, p in zip(rows[i], rows[r])]
        piv_cols.append(col)
        r += 1
    basis = []
    piv_set = set(piv_cols)
    for free in range(n):
        if free in piv_set:
            continue
        vec = [bk.zero] * n
        vec[free] = bk.one
        for i, pc in enumerate(piv_cols):
            vec[pc] = bk.neg(rows[i][free])
        basis.append(vec)
    return basis
