"""Twisted polynomial rings R[tau] with scalar or matrix coefficients over
any domain in the system, under the rule tau * c = c^{(1)} * tau, together
with the small dense-matrix toolkit the rest of the package runs on.

Matrices are tuples of row tuples of domain values.  Everything is exact;
sizes never exceed a handful of rows at desk scale.
"""

from .errors import RingMismatchError, ShapeError, SingularError


# ---------------------------------------------------------------------------
# Matrix helpers over a domain.


def mat_zero(dom, rows, cols):
    return tuple((dom.zero,) * cols for _ in range(rows))


def mat_eye(dom, n):
    return tuple(tuple(dom.one if i == j else dom.zero for j in range(n))
                 for i in range(n))


def mat_shape(m):
    return (len(m), len(m[0]) if m else 0)


def mat_add(dom, a, b):
    if mat_shape(a) != mat_shape(b):
        raise ShapeError("matrix shapes %r vs %r" % (mat_shape(a), mat_shape(b)))
    return tuple(tuple(dom.add(x, y) for x, y in zip(ra, rb))
                 for ra, rb in zip(a, b))


def mat_sub(dom, a, b):
    return mat_add(dom, a, mat_neg(dom, b))


def mat_neg(dom, a):
    return tuple(tuple(dom.neg(x) for x in row) for row in a)


def mat_scale(dom, a, c):
    return tuple(tuple(dom.mul(x, c) for x in row) for row in a)


def mat_mul(dom, a, b):
    ra, ca = mat_shape(a)
    rb, cb = mat_shape(b)
    if ca != rb:
        raise ShapeError("cannot multiply %dx%d by %dx%d" % (ra, ca, rb, cb))
    bt = tuple(zip(*b))
    out = []
    for row in a:
        orow = []
        for col in bt:
            acc = dom.zero
            for x, y in zip(row, col):
                acc = dom.add(acc, dom.mul(x, y))
            orow.append(acc)
        out.append(tuple(orow))
    return tuple(out)


def mat_vec(dom, a, x):
    ra, ca = mat_shape(a)
    if len(x) != ca:
        raise ShapeError("matrix is %dx%d, vector has length %d" % (ra, ca, len(x)))
    out = []
    for row in a:
        acc = dom.zero
        for m, v in zip(row, x):
            acc = dom.add(acc, dom.mul(m, v))
        out.append(acc)
    return tuple(out)


def mat_transpose(a):
    return tuple(zip(*a))


def mat_twist(dom, a, ell):
    if ell == 0:
        return a
    return tuple(tuple(dom.twist(x, ell) for x in row) for row in a)


def mat_det(dom, a):
    """Cofactor expansion: division-free, valid over any commutative domain.
    Fine for the tiny matrices this package ever sees."""
    n, m = mat_shape(a)
    if n != m:
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return dom.one
    if n == 1:
        return a[0][0]
    if n == 2:
        return dom.sub(dom.mul(a[0][0], a[1][1]), dom.mul(a[0][1], a[1][0]))
    det = dom.zero
    for j in range(n):
        if a[0][j] == dom.zero:
            continue
        minor = tuple(row[:j] + row[j + 1:] for row in a[1:])
        term = dom.mul(a[0][j], mat_det(dom, minor))
        det = dom.add(det, term) if j % 2 == 0 else dom.sub(det, term)
    return det


def mat_inv(dom, a):
    """Gauss-Jordan over a field-like domain (dom.inv on pivots)."""
    n, m = mat_shape(a)
    if n != m:
        raise ShapeError("inverse of a non-square matrix")
    work = [list(row) + [dom.one if i == j else dom.zero for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if work[r][col] != dom.zero:
                piv = r
                break
        if piv is None:
            raise SingularError("matrix has no pivot in column %d" % col)
        work[col], work[piv] = work[piv], work[col]
        inv = dom.inv(work[col][col])
        work[col] = [dom.mul(x, inv) for x in work[col]]
        for r in range(n):
            if r == col or work[r][col] == dom.zero:
                continue
            f = work[r][col]
            work[r] = [dom.sub(x, dom.mul(f, y)) for x, y in zip(work[r], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def mat_solve(dom, a, b):
    """Solve a·x = b for a vector b over a field-like domain."""
    inv = mat_inv(dom, a)
    return mat_vec(dom, inv, b)


# ---------------------------------------------------------------------------
# Ore polynomials.


class OrePolynomial:
    """Sum of A_i tau^i with A_i matrices (or 1x1 scalars) over a domain."""

    __slots__ = ("dom", "rows", "cols", "terms")

    def __init__(self, dom, rows, cols, terms):
        terms = [tuple(tuple(row) for row in m) for m in terms]
        for m in terms:
            if mat_shape(m) != (rows, cols):
                raise ShapeError("term of shape %r in a %dx%d Ore polynomial"
                                 % (mat_shape(m), rows, cols))
        z = mat_zero(dom, rows, cols)
        while terms and terms[-1] == z:
            terms.pop()
        self.dom = dom
        self.rows = rows
        self.cols = cols
        self.terms = tuple(terms)

    @classmethod
    def scalar(cls, dom, coeffs):
        """1x1 Ore polynomial from a sequence of domain values by tau-degree."""
        return cls(dom, 1, 1, [((c,),) for c in coeffs])

    @classmethod
    def zero(cls, dom, rows=1, cols=1):
        return cls(dom, rows, cols, [])

    @classmethod
    def identity(cls, dom, n=1):
        return cls(dom, n, n, [mat_eye(dom, n)])

    @property
    def degree(self):
        return len(self.terms) - 1

    @property
    def is_zero(self):
        return not self.terms

    def coeff(self, i):
        if 0 <= i < len(self.terms):
            return self.terms[i]
        return mat_zero(self.dom, self.rows, self.cols)

    def scalar_coeff(self, i):
        if (self.rows, self.cols) != (1, 1):
            raise ShapeError("not a scalar Ore polynomial")
        return self.coeff(i)[0][0]

    def _check_ring(self, other):
        if self.dom != other.dom:
            raise RingMismatchError("Ore polynomials over different rings: %r vs %r"
                                    % (self.dom, other.dom))

    def __add__(self, other):
        if not isinstance(other, OrePolynomial):
            return NotImplemented
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("adding Ore polynomials of different shapes")
        n = max(len(self.terms), len(other.terms))
        return OrePolynomial(self.dom, self.rows, self.cols,
                             [mat_add(self.dom, self.coeff(i), other.coeff(i))
                              for i in range(n)])

    def __neg__(self):
        return OrePolynomial(self.dom, self.rows, self.cols,
                             [mat_neg(self.dom, m) for m in self.terms])

    def __sub__(self, other):
        if not isinstance(other, OrePolynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, OrePolynomial):
            return NotImplemented
        self._check_ring(other)
        if self.cols != other.rows:
            raise ShapeError("Ore product shape mismatch: %dx%d times %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        dom = self.dom
        if self.is_zero or other.is_zero:
            return OrePolynomial.zero(dom, self.rows, other.cols)
        out = [mat_zero(dom, self.rows, other.cols)
               for _ in range(len(self.terms) + len(other.terms) - 1)]
        for i, a in enumerate(self.terms):
            for j, b in enumerate(other.terms):
                prod = mat_mul(dom, a, mat_twist(dom, b, i))
                out[i + j] = mat_add(dom, out[i + j], prod)
        return OrePolynomial(dom, self.rows, other.cols, out)

    def __pow__(self, n):
        if self.rows != self.cols:
            raise ShapeError("power of a non-square Ore polynomial")
        if n < 0:
            raise ValueError("negative Ore power")
        result = OrePolynomial.identity(self.dom, self.rows)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, OrePolynomial):
            return NotImplemented
        return (self.dom == other.dom and self.rows == other.rows
                and self.cols == other.cols and self.terms == other.terms)

    def __hash__(self):
        return hash((self.rows, self.cols, self.terms))

    def scale(self, c):
        """Left-multiply every coefficient by a domain value."""
        return OrePolynomial(self.dom, self.rows, self.cols,
                             [mat_scale(self.dom, m, c) for m in self.terms])

    def apply(self, x, target=None, embed=None):
        """Evaluate at a vector: sum of A_i x^{(i)}.  The vector may live in
        a larger domain; `embed` maps coefficient values into it."""
        if len(x) != self.cols:
            raise ShapeError("vector length %d, Ore polynomial has %d columns"
                             % (len(x), self.cols))
        dom = target if target is not None else self.dom
        emb = embed if embed is not None else (lambda v: v)
        out = [dom.zero] * self.rows
        xs = tuple(x)
        for i, m in enumerate(self.terms):
            xi = tuple(dom.twist(v, i) for v in xs) if i else xs
            for r in range(self.rows):
                acc = out[r]
                for c in range(self.cols):
                    acc = dom.add(acc, dom.mul(emb(m[r][c]), xi[c]))
                out[r] = acc
        return tuple(out)

    def __repr__(self):
        if self.is_zero:
            return "Ore(0)"
        if (self.rows, self.cols) == (1, 1):
            parts = []
            for i, m in enumerate(self.terms):
                c = m[0][0]
                if c == self.dom.zero:
                    continue
                parts.append("(%r)τ^%d" % (c, i) if i else "(%r)" % (c,))
            return "Ore(%s)" % " + ".join(parts)
        return "Ore(%dx%d, deg %d)" % (self.rows, self.cols, self.degree)

    def to_jsonable(self, entry):
        return {"shape": [self.rows, self.cols],
                "terms": [[[entry(x) for x in row] for row in m] for m in self.terms]}


def ore_mul(a, b):
    return a * b


def ore_apply(a, x, target=None, embed=None):
    return a.apply(x, target=target, embed=embed)


def d_part(a):
    """The constant (tau-degree zero) matrix coefficient."""
    return a.coeff(0)
