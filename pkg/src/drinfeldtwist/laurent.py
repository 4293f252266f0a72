"""Truncated Laurent series in 1/theta over a constant field: the numerical
home of the completion at infinity and its constant-field extensions.

A LaurentNumber knows its coefficients from the leading term downward over a
window of `precision` theta-degrees; everything above the window is exactly
zero, everything below is unknown.  The value zero is represented exactly
(sentinel top degree), and a difference that cancels through its whole
window is represented with an empty coefficient tuple meaning "degree at
most top_degree, nothing further known".  The uniformizer is 1/theta and
deg = -v_infinity throughout.
"""

from .errors import DescentError, ZeroSignError

DEFAULT_PRECISION = 64

# top_degree sentinel for the exact zero, and the matching valuation
# reported when a difference vanishes identically.
ZERO_TOP = -(10 ** 9)
INF_VAL = 10 ** 9


class LaurentNumber:
    __slots__ = ("field", "top", "coeffs")

    def __init__(self, field, top, coeffs):
        coeffs = tuple(coeffs)
        # trim leading zeros, shrinking the window honestly
        while coeffs and coeffs[0] == field.zero:
            coeffs = coeffs[1:]
            top -= 1
        self.field = field
        self.top = top
        self.coeffs = coeffs

    # constructors ----------------------------------------------------------
    @classmethod
    def exact_zero(cls, field):
        return cls(field, ZERO_TOP, ())

    @classmethod
    def const(cls, field, code, prec=DEFAULT_PRECISION):
        if code == field.zero:
            return cls.exact_zero(field)
        return cls(field, 0, (code,) + (field.zero,) * (prec - 1))

    @classmethod
    def one(cls, field, prec=DEFAULT_PRECISION):
        return cls.const(field, field.one, prec)

    @classmethod
    def from_apoly(cls, a, prec=DEFAULT_PRECISION):
        if a.is_zero:
            return cls.exact_zero(a.field)
        cs = list(reversed(a.coeffs))
        cs += [a.field.zero] * (prec - len(cs))
        return cls(a.field, a.degree, cs[:prec])

    # properties -------------------------------------------------------------
    @property
    def precision(self):
        return len(self.coeffs)

    @property
    def is_exact_zero(self):
        return self.top == ZERO_TOP

    @property
    def lo(self):
        """Lowest theta-degree with a known coefficient (top+1 when none)."""
        return self.top - len(self.coeffs) + 1

    def coeff_at(self, d):
        """Known coefficient of theta^d, or None when below the window."""
        if self.is_exact_zero or d > self.top:
            return self.field.zero
        i = self.top - d
        if i < len(self.coeffs):
            return self.coeffs[i]
        return None

    # arithmetic -------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, LaurentNumber):
            if other.field != self.field:
                raise ValueError("Laurent numbers over different constant fields")
            return other
        if isinstance(other, int):
            return LaurentNumber.const(self.field, other % self.field.size,
                                       max(self.precision, 1))
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if self.is_exact_zero:
            return o
        if o.is_exact_zero:
            return self
        F = self.field
        top = max(self.top, o.top)
        lo = max(self.lo, o.lo)
        if lo > top:
            # no commonly known coefficients; only a degree bound survives
            return LaurentNumber(F, lo - 1, ())
        out = []
        for d in range(top, lo - 1, -1):
            a = self.coeff_at(d)
            b = o.coeff_at(d)
            out.append(F.add(a, b))
        res = LaurentNumber(F, top, out)
        if not res.coeffs and res.top <= ZERO_TOP // 2:
            return LaurentNumber.exact_zero(F)
        return res

    __radd__ = __add__

    def __neg__(self):
        if self.is_exact_zero:
            return self
        return LaurentNumber(self.field, self.top,
                             tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        F = self.field
        if self.is_exact_zero or o.is_exact_zero:
            return LaurentNumber.exact_zero(F)
        top = self.top + o.top
        prec = min(self.precision, o.precision)
        if prec == 0:
            return LaurentNumber(F, top, ())
        out = [F.zero] * prec
        for i, a in enumerate(self.coeffs):
            if i >= prec:
                break
            if a == F.zero:
                continue
            jmax = min(len(o.coeffs), prec - i)
            for j in range(jmax):
                b = o.coeffs[j]
                if b != F.zero:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
        return LaurentNumber(F, top, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.invert() ** (-n)
        result = LaurentNumber.one(self.field, max(self.precision, 1))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def invert(self):
        """Multiplicative inverse to the working precision."""
        if self.is_exact_zero or not self.coeffs:
            raise ZeroDivisionError("inverse of (numerically) zero Laurent number")
        F = self.field
        sgn, deg, unit = self.sign_decompose()
        prec = self.precision
        # unit = 1 + v with v supported in negative degrees; geometric series
        v = LaurentNumber(F, unit.top, unit.coeffs) - 1
        inv_unit = LaurentNumber.one(F, prec)
        for _ in range(prec - 1):
            inv_unit = LaurentNumber.one(F, prec) - v * inv_unit
        lead = F.inv(sgn)
        out = inv_unit * LaurentNumber.const(F, lead, prec)
        return LaurentNumber(F, out.top - deg, out.coeffs)

    def truncate(self, prec):
        if self.is_exact_zero:
            return self
        return LaurentNumber(self.field, self.top, self.coeffs[:prec])

    def twist_coeffs(self, ell):
        """Coefficientwise Frobenius q^ell (theta fixed)."""
        if self.is_exact_zero:
            return self
        F = self.field
        return LaurentNumber(F, self.top, tuple(F.twist(c, ell) for c in self.coeffs))

    def qpower(self, k):
        """The exact q^k-th power: coefficients twist, degrees scale."""
        if k == 0 or self.is_exact_zero:
            return self
        F = self.field
        step = F.q ** k
        if not self.coeffs:
            return LaurentNumber(F, self.top * step, ())
        out = [F.zero] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            out[i * step] = F.twist(c, k)
        return LaurentNumber(F, self.top * step, out)

    def sign_decompose(self):
        """x = sgn * theta^deg * one_unit, one_unit = 1 + O(1/theta)."""
        if self.is_exact_zero or not self.coeffs:
            raise ZeroSignError("no leading coefficient to read the sign from")
        F = self.field
        sgn = self.coeffs[0]
        inv = F.inv(sgn)
        unit = LaurentNumber(F, 0, tuple(F.mul(c, inv) for c in self.coeffs))
        return sgn, self.top, unit

    # comparisons ------------------------------------------------------------
    def __eq__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if self.is_exact_zero and o.is_exact_zero:
            return True
        lo = max(self.lo, o.lo) if not (self.is_exact_zero or o.is_exact_zero) else \
            (o.lo if self.is_exact_zero else self.lo)
        top = max(self.top, o.top)
        if top < lo:
            return True
        for d in range(top, lo - 1, -1):
            a = self.coeff_at(d)
            b = o.coeff_at(d)
            if a is None or b is None:
                break
            if a != b:
                return False
        return True

    def __hash__(self):
        raise TypeError("LaurentNumber compares up to precision; not hashable")

    def to_jsonable(self):
        """Stable dict form: leading exponent and coefficient codes from the
        top of the window down."""
        if self.is_exact_zero:
            return {"zero": True}
        return {"top": self.top, "coeffs": list(self.coeffs)}

    def __repr__(self):
        if self.is_exact_zero:
            return "Laurent(0)"
        parts = []
        for i, c in enumerate(self.coeffs[:8]):
            if c == self.field.zero:
                continue
            d = self.top - i
            if d == 0:
                parts.append("%s" % c)
            else:
                head = "" if c == self.field.one else "%s*" % c
                parts.append("%sθ^%d" % (head, d))
        if not parts:
            parts.append("0")
        return "Laurent(%s + O(θ^%d))" % (" + ".join(parts), self.lo - 1)


def embed_rational(x, prec=DEFAULT_PRECISION):
    """The 1/theta-expansion of an element of K, to prec coefficients."""
    F = x.field
    if x.is_zero:
        return LaurentNumber.exact_zero(F)
    num, den = x.num, x.den
    dn, dd = num.degree, den.degree
    # reversed coefficient sequences: series in z = 1/theta
    nrev = list(reversed(num.coeffs))
    drev = list(reversed(den.coeffs))
    d0_inv = F.inv(drev[0])
    out = []
    for j in range(prec):
        acc = nrev[j] if j < len(nrev) else F.zero
        kmax = min(j, len(drev) - 1)
        for k in range(1, kmax + 1):
            acc = F.sub(acc, F.mul(drev[k], out[j - k]))
        out.append(F.mul(acc, d0_inv))
    return LaurentNumber(F, dn - dd, out)


def agreement_valuation(x, y):
    """theta^{-1}-valuation of x - y; INF_VAL when the difference vanishes
    exactly.  Larger means closer."""
    d = x - y
    if d.is_exact_zero:
        return INF_VAL
    return -d.top


def norm_down(x):
    """Product of the coefficientwise-Frobenius conjugates over F_q; asserts
    the result's coefficients descend to F_q."""
    E = x.field
    d = getattr(E, "d", 1)
    if d == 1:
        return x
    acc = x
    for i in range(1, d):
        acc = acc * x.twist_coeffs(i)
    if acc.is_exact_zero:
        return LaurentNumber.exact_zero(E.spec)
    down = []
    for c in acc.coeffs:
        b = E.in_base(c)
        if b is None:
            raise DescentError("norm coefficient %r lies outside F_q" % (c,))
        down.append(b)
    return LaurentNumber(E.spec, acc.top, down)
