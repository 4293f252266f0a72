"""Exact arithmetic for the base objects of the system: the constant field
F_q and its small extensions F_{q^d}, the polynomial ring A = F_q[theta],
the rational function field K = F_q(theta), residue fields A/(wp), and the
n-th power residue symbol.

Constant-field elements are integer codes: the code's little-endian base-p
(resp. base-q) digits are the coordinates on the monomial basis of the
defining modulus.  Code arithmetic is table-driven; every constant field at
desk scale is tiny.  Serialization decodes codes into little-endian
coordinate arrays of integers in [0, p).

The module also hosts a small polynomial engine generic over a "domain"
(any object with zero/one attributes and add/sub/mul/neg/inv methods on
opaque element values).  Constant fields, residue fields, K, and tower
levels all satisfy the protocol, so one implementation serves every layer.
"""

from .errors import (
    BadOrderError,
    DividesError,
    ReducibleError,
)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    if n < 2:
        return False
    for d in _SMALL_PRIMES:
        if n == d:
            return True
        if n % d == 0:
            return False
    d = 41
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _digits(code, base, width):
    out = []
    for _ in range(width):
        out.append(code % base)
        code //= base
    return out


def _undigits(digits, base):
    code = 0
    for d in reversed(digits):
        code = code * base + d
    return code


# ---------------------------------------------------------------------------
# Polynomial engine over an arbitrary domain.
#
# Polynomials are trimmed little-endian tuples of domain values; the zero
# polynomial is the empty tuple.  p_deg returns -1 for it (sentinel for
# degree minus infinity).


def p_trim(dom, cs):
    cs = list(cs)
    while cs and cs[-1] == dom.zero:
        cs.pop()
    return tuple(cs)


def _padded(cs, n):
    return tuple(cs) + (0,) * (n - len(cs))


def p_deg(a):
    return len(a) - 1


def p_add(dom, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = dom.add(out[i], c)
    return p_trim(dom, out)


def p_neg(dom, a):
    return tuple(dom.neg(c) for c in a)


def p_sub(dom, a, b):
    return p_add(dom, a, p_neg(dom, b))


def p_scale(dom, a, c):
    if c == dom.zero:
        return ()
    return p_trim(dom, [dom.mul(x, c) for x in a])


def p_mul(dom, a, b):
    if not a or not b:
        return ()
    out = [dom.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == dom.zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = dom.add(out[i + j], dom.mul(x, y))
    return p_trim(dom, out)


def p_divmod(dom, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lc_inv = dom.inv(b[-1])
    rem = list(a)
    qdeg = len(a) - len(b)
    if qdeg < 0:
        return (), tuple(a)
    quo = [dom.zero] * (qdeg + 1)
    for k in range(qdeg, -1, -1):
        c = rem[k + len(b) - 1]
        if c == dom.zero:
            continue
        f = dom.mul(c, lc_inv)
        quo[k] = f
        for i, bc in enumerate(b):
            rem[k + i] = dom.sub(rem[k + i], dom.mul(f, bc))
    return p_trim(dom, quo), p_trim(dom, rem)


def p_mod(dom, a, b):
    return p_divmod(dom, a, b)[1]


def p_exact_div(dom, a, b):
    q, r = p_divmod(dom, a, b)
    if r:
        raise ArithmeticError("polynomial division was not exact")
    return q


def p_monic(dom, a):
    if not a:
        return a
    return p_scale(dom, a, dom.inv(a[-1]))


def p_gcd(dom, a, b):
    while b:
        a, b = b, p_mod(dom, a, b)
    return p_monic(dom, a)


def p_xgcd(dom, a, b):
    """Extended Euclid: (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = a, b
    s0, s1 = (dom.one,), ()
    t0, t1 = (), (dom.one,)
    while r1:
        q, r = p_divmod(dom, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, p_sub(dom, s0, p_mul(dom, q, s1))
        t0, t1 = t1, p_sub(dom, t0, p_mul(dom, q, t1))
    if r0:
        c = dom.inv(r0[-1])
        r0 = p_scale(dom, r0, c)
        s0 = p_scale(dom, s0, c)
        t0 = p_scale(dom, t0, c)
    return r0, s0, t0


def p_eval(dom, a, x):
    acc = dom.zero
    for c in reversed(a):
        acc = dom.add(dom.mul(acc, x), c)
    return acc


def p_powmod(dom, a, n, m):
    result = (dom.one,)
    a = p_mod(dom, a, m)
    while n:
        if n & 1:
            result = p_mod(dom, p_mul(dom, result, a), m)
        a = p_mod(dom, p_mul(dom, a, a), m)
        n >>= 1
    return result


def p_deriv(dom, a, char):
    out = []
    for i in range(1, len(a)):
        c = a[i]
        k = i % char
        acc = dom.zero
        for _ in range(k):
            acc = dom.add(acc, c)
        out.append(acc)
    return p_trim(dom, out)


def _p_is_irreducible(dom, m, size):
    """Trial division over a finite domain with `size` elements, encoded by
    enumerate_codes/decode_code on the domain.  Desk-scale degrees only."""
    d = p_deg(m)
    if d <= 0:
        return False
    if d == 1:
        return True
    for gdeg in range(1, d // 2 + 1):
        for code in range(size ** gdeg, 2 * size ** gdeg):
            g = _poly_from_code(dom, code, size)
            if not p_mod(dom, m, g):
                return False
    return True


def _poly_from_code(dom, code, size):
    ds = []
    while code:
        ds.append(dom.decode(code % size))
        code //= size
    return tuple(ds)


# ---------------------------------------------------------------------------
# Constant fields.


class FieldSpec:
    """The field F_q with q = p^e.  Elements are integer codes 0..q-1 whose
    little-endian base-p digits are the coordinates over F_p.

    For e > 1 the field is F_p[x]/(modulus); the default modulus is the
    lexicographically least monic irreducible of degree e over F_p.
    """

    _TABLE_LIMIT = 256

    def __init__(self, p, e=1, modulus=None):
        if not _is_prime(p):
            raise ValueError("p must be prime, got %r" % (p,))
        if e < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.e = e
        self.q = p ** e
        self.char = p
        self.size = self.q
        self.zero = 0
        self.one = 1
        self.is_field = True
        if self.q > self._TABLE_LIMIT:
            raise ValueError("constant field too large for desk scale: q = %d" % self.q)
        if e == 1:
            self.modulus = None
            self._build_prime_tables()
        else:
            base = FieldSpec(p, 1)
            if modulus is None:
                modulus = default_irreducible(base, e)
            else:
                modulus = p_trim(base, tuple(int(c) % p for c in modulus))
                if p_deg(modulus) != e or modulus[-1] != 1:
                    raise ValueError("modulus must be monic of degree e")
                if not _p_is_irreducible(base, modulus, p):
                    raise ReducibleError("modulus is reducible over F_p")
            self.modulus = tuple(modulus)
            self._build_ext_tables(base)
        self._frob = [self.pow_(x, p) for x in range(self.q)]

    def _build_prime_tables(self):
        p = self.p
        self._add = [[(a + b) % p for b in range(p)] for a in range(p)]
        self._mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        self._neg = [(-a) % p for a in range(p)]
        self._inv = [None] + [pow(a, p - 2, p) for a in range(1, p)]

    def _build_ext_tables(self, base):
        p, e, q = self.p, self.e, self.q
        m = self.modulus
        polys = [tuple(c for c in _digits(code, p, e) if True) for code in range(q)]
        polys = [p_trim(base, cs) for cs in polys]

        def enc(cs):
            return _undigits(list(cs) + [0] * (e - len(cs)), p)

        self._add = [[enc(p_add(base, polys[a], polys[b])) for b in range(q)]
                     for a in range(q)]
        self._mul = [[enc(p_mod(base, p_mul(base, polys[a], polys[b]), m))
                      for b in range(q)] for a in range(q)]
        self._neg = [enc(p_neg(base, polys[a])) for a in range(q)]
        inv = [None] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv

    # domain protocol ------------------------------------------------------
    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in F_q")
        return self._inv[a]

    def pow_(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def frob(self, a):
        """x -> x^p, the absolute Frobenius."""
        return self._frob[a]

    def twist(self, a, ell):
        """x -> x^{q^ell}; the identity on F_q, kept for protocol uniformity."""
        return a

    def decode(self, code):
        return code

    # conversions ----------------------------------------------------------
    def coords(self, a):
        return tuple(_digits(a, self.p, self.e))

    def from_coords(self, coords):
        coords = list(coords)
        if len(coords) > self.e:
            raise ValueError("too many coordinates")
        coords += [0] * (self.e - len(coords))
        return _undigits([c % self.p for c in coords], self.p)

    def elements(self):
        return range(self.q)

    def serialize(self, a):
        return list(self.coords(a))

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.p == other.p
                and self.e == other.e and self.modulus == other.modulus)

    def __hash__(self):
        return hash(("FieldSpec", self.p, self.e, self.modulus))

    def __repr__(self):
        return "FieldSpec(q=%d)" % self.q


class ExtConstField:
    """F_{q^d} over a FieldSpec (or, with allow_reducible=True, the quotient
    ring F_q[x]/(modulus) for a possibly reducible squarefree-or-not modulus;
    inverses then exist only for units).  Elements are integer codes whose
    little-endian base-q digits are the coordinates over F_q."""

    _TABLE_LIMIT = 2048

    def __init__(self, spec, d, modulus=None, allow_reducible=False):
        if d < 1:
            raise ValueError("extension degree must be >= 1")
        self.spec = spec
        self.d = d
        self.q = spec.q
        self.char = spec.char
        self.size = self.q ** d
        self.zero = 0
        self.one = 1
        if self.size > self._TABLE_LIMIT:
            raise ValueError("constant extension too large for desk scale")
        if modulus is None:
            modulus = default_irreducible(spec, d)
            irreducible = True
        else:
            modulus = p_trim(spec, tuple(int(c) % self.q for c in modulus))
            if p_deg(modulus) != d or modulus[-1] != spec.one:
                raise ValueError("modulus must be monic of degree d")
            irreducible = _p_is_irreducible(spec, modulus, self.q)
            if not irreducible and not allow_reducible:
                raise ReducibleError("modulus is reducible over F_q")
        self.modulus = tuple(modulus)
        self.is_field = irreducible
        self._build_tables()

    def _build_tables(self):
        q, d, size = self.q, self.d, self.size
        spec, m = self.spec, self.modulus
        polys = [p_trim(spec, _digits(code, q, d)) for code in range(size)]

        def enc(cs):
            return _undigits(list(cs) + [0] * (d - len(cs)), q)

        self._add = [[enc(p_add(spec, polys[a], polys[b])) for b in range(size)]
                     for a in range(size)]
        self._mul = [[enc(p_mod(spec, p_mul(spec, polys[a], polys[b]), m))
                      for b in range(size)] for a in range(size)]
        self._neg = [enc(p_neg(spec, polys[a])) for a in range(size)]
        inv = [None] * size
        for a in range(1, size):
            for b in range(1, size):
                if self._mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv
        # x -> x^q is F_q-linear; a permutation exactly when the modulus is
        # irreducible.  Precompute its iterates for twisting.
        frobq = [self.pow_(a, self.q) for a in range(size)]
        self._twists = [list(range(size))]
        for _ in range(1, d):
            prev = self._twists[-1]
            self._twists.append([frobq[a] for a in prev])

    # domain protocol ------------------------------------------------------
    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        v = self._inv[a] if a else None
        if v is None:
            raise ZeroDivisionError("element is not a unit")
        return v

    def pow_(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = 1
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def twist(self, a, ell):
        return self._twists[ell % self.d][a]

    def decode(self, code):
        return code

    # conversions ----------------------------------------------------------
    def embed(self, c):
        """F_q code -> F_{q^d} code (the coordinate-0 embedding)."""
        if not 0 <= c < self.q:
            raise ValueError("not an F_q code")
        return c

    def in_base(self, a):
        """Return the F_q code when a lies in F_q, else None."""
        return a if a < self.q else None

    def coords(self, a):
        return tuple(_digits(a, self.q, self.d))

    def from_coords(self, coords):
        coords = list(coords)
        if len(coords) > self.d:
            raise ValueError("too many coordinates")
        coords += [0] * (self.d - len(coords))
        return _undigits(coords, self.q)

    def elements(self):
        return range(self.size)

    def serialize(self, a):
        return [self.spec.serialize(c) for c in self.coords(a)]

    def __eq__(self, other):
        return (isinstance(other, ExtConstField) and self.spec == other.spec
                and self.d == other.d and self.modulus == other.modulus)

    def __hash__(self):
        return hash(("ExtConstField", self.spec, self.d, self.modulus))

    def __repr__(self):
        kind = "F_%d" % self.size if self.is_field else "ring(%d)" % self.size
        return "ExtConstField(%s over F_%d)" % (kind, self.q)


class ECElem:
    """A constant-extension element carrying its field, for the public API."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = int(code)

    def _coerce(self, other):
        if isinstance(other, ECElem):
            if other.field != self.field:
                raise ValueError("elements of different constant fields")
            return other.code
        return self.field.embed(int(other))

    def __add__(self, other):
        return ECElem(self.field, self.field.add(self.code, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return ECElem(self.field, self.field.sub(self.code, self._coerce(other)))

    def __mul__(self, other):
        return ECElem(self.field, self.field.mul(self.code, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return ECElem(self.field, self.field.neg(self.code))

    def __truediv__(self, other):
        return ECElem(self.field,
                      self.field.mul(self.code, self.field.inv(self._coerce(other))))

    def __pow__(self, n):
        return ECElem(self.field, self.field.pow_(self.code, n))

    def __eq__(self, other):
        if isinstance(other, ECElem):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __repr__(self):
        return "ECElem(%d over %r)" % (self.code, self.field)


def default_irreducible(field, d):
    """The lexicographically least monic irreducible of degree d over a
    constant field (codes compared as integers, which for monic polynomials
    of equal degree is exactly the leading-digit-first lexicographic order)."""
    if d == 1:
        return (field.zero, field.one)
    size = field.size
    for code in range(size ** d, 2 * size ** d):
        m = p_trim(field, _digits(code, size, d + 1))
        if _p_is_irreducible(field, m, size):
            return m
    raise AssertionError("no irreducible of degree %d found" % d)


# ---------------------------------------------------------------------------
# A = F_q[theta] and K = F_q(theta).


class APoly:
    """A polynomial in theta over a constant field, in canonical trimmed
    little-endian form.  The degree of the zero polynomial is reported as -1
    (the sentinel for minus infinity)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = p_trim(field, tuple(int(c) for c in coeffs))

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (field.one,))

    @classmethod
    def const(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def gen(cls, field):
        """theta."""
        return cls(field, (field.zero, field.one))

    @classmethod
    def from_code(cls, field, code):
        return cls(field, _digits(code, field.size, _code_width(code, field.size)))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    @property
    def code(self):
        return _undigits(self.coeffs, self.field.size)

    def _check(self, other):
        if isinstance(other, APoly):
            if other.field != self.field:
                raise ValueError("polynomials over different fields")
            return other
        if isinstance(other, int):
            return APoly.const(self.field, other % self.field.size)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return APoly(self.field, p_add(self.field, self.coeffs, o.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return APoly(self.field, p_sub(self.field, self.coeffs, o.coeffs))

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return APoly(self.field, p_sub(self.field, o.coeffs, self.coeffs))

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return APoly(self.field, p_mul(self.field, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        return APoly(self.field, p_neg(self.field, self.coeffs))

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = APoly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = self._check(other)
        q, r = p_divmod(self.field, self.coeffs, o.coeffs)
        return APoly(self.field, q), APoly(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, APoly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == APoly.const(self.field, other % self.field.size)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def scale(self, c):
        return APoly(self.field, p_scale(self.field, self.coeffs, c))

    def monic(self):
        return APoly(self.field, p_monic(self.field, self.coeffs))

    def shift(self, k):
        """Multiply by theta^k."""
        if self.is_zero:
            return self
        return APoly(self.field, (self.field.zero,) * k + self.coeffs)

    def derivative(self):
        return APoly(self.field, p_deriv(self.field, self.coeffs, self.field.char))

    def frob_q(self, ell=1):
        """The q^ell-th power: coefficients twist, exponents scale by q^ell."""
        if ell == 0 or self.is_zero:
            return self
        qell = self.field.q ** ell
        out = [self.field.zero] * (self.degree * qell + 1)
        for i, c in enumerate(self.coeffs):
            out[i * qell] = self.field.twist(c, ell)
        return APoly(self.field, out)

    def eval_code(self, x):
        return p_eval(self.field, self.coeffs, x)

    def eval_with(self, dom, embed, x):
        """Horner evaluation in another domain: coefficients pass through
        `embed`, the point x is a domain value."""
        acc = dom.zero
        for c in reversed(self.coeffs):
            acc = dom.add(dom.mul(acc, x), embed(c))
        return acc

    def gcd(self, other):
        o = self._check(other)
        return APoly(self.field, p_gcd(self.field, self.coeffs, o.coeffs))

    def to_coeff_arrays(self):
        return [self.field.serialize(c) for c in self.coeffs]

    @classmethod
    def from_coeff_arrays(cls, field, arrays):
        return cls(field, [field.from_coords(a) for a in arrays])

    def __repr__(self):
        return poly_string(self)


def _code_width(code, base):
    w = 0
    while code:
        w += 1
        code //= base
    return w


def poly_string(a, var="θ"):
    if a.is_zero:
        return "0"
    parts = []
    for i in range(a.degree, -1, -1):
        c = a.coeffs[i]
        if c == a.field.zero:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            head = "" if c == a.field.one else "%d*" % c
            parts.append("%s%s^%d" % (head, var, i) if i > 1 else "%s%s" % (head, var))
    return "+".join(parts)


class KElem:
    """An element of K = F_q(theta): a reduced fraction of APolys with monic
    denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = APoly.one(num.field)
        if num.field != den.field:
            raise ValueError("numerator and denominator over different fields")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator in K")
        field = num.field
        if den.degree == 0:
            num = num.scale(field.inv(den.coeffs[0]))
            den = APoly.one(field)
        elif not num.is_zero:
            g = num.gcd(den)
            if g.degree > 0:
                num = num // g
                den = den // g
            c = field.inv(den.lc)
            num = num.scale(c)
            den = den.scale(c)
        else:
            den = APoly.one(field)
        self.num = num
        self.den = den

    @property
    def field(self):
        return self.num.field

    @classmethod
    def theta(cls, field):
        return cls(APoly.gen(field))

    @classmethod
    def const(cls, field, c):
        return cls(APoly.const(field, c))

    @classmethod
    def zero(cls, field):
        return cls(APoly.zero(field))

    @classmethod
    def one(cls, field):
        return cls(APoly.one(field))

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_integral(self):
        return self.den.degree == 0

    def _coerce(self, other):
        if isinstance(other, KElem):
            if other.field != self.field:
                raise ValueError("elements of different K")
            return other
        if isinstance(other, APoly):
            return KElem(other)
        if isinstance(other, int):
            return KElem.const(self.field, other % self.field.size)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KElem(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KElem(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return KElem(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __neg__(self):
        return KElem(-self.num, self.den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def inv(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero in K")
        return KElem(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = KElem.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def twist(self, ell=1):
        """The q^ell-th power, computed by coefficient spreading."""
        if ell == 0:
            return self
        return KElem(self.num.frob_q(ell), self.den.frob_q(ell))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_integral:
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)

    def to_jsonable(self):
        return {"num": self.num.to_coeff_arrays(), "den": self.den.to_coeff_arrays()}

    @classmethod
    def from_jsonable(cls, field, data):
        return cls(APoly.from_coeff_arrays(field, data["num"]),
                   APoly.from_coeff_arrays(field, data["den"]))


class KDomain:
    """Domain-protocol adapter for K (used by the polynomial engine and by
    matrices/Ore polynomials with K coefficients)."""

    def __init__(self, field):
        self.field = field
        self.char = field.char
        self.zero = KElem.zero(field)
        self.one = KElem.one(field)
        self.theta = KElem.theta(field)
        self.is_field = True

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inv()

    def pow_(self, a, n):
        return a ** n

    def twist(self, a, ell=1):
        return a.twist(ell)

    def decode(self, code):
        return KElem.const(self.field, code)

    def __eq__(self, other):
        return isinstance(other, KDomain) and self.field == other.field

    def __hash__(self):
        return hash(("KDomain", self.field))

    def __repr__(self):
        return "KDomain(F_%d(θ))" % self.field.size


class PolyDomain:
    """Polynomials over a domain, themselves as a domain (trimmed little-
    endian tuples).  Twisting maps coefficients and fixes the variable; this
    is the F_wp[t] with t-fixed twist used by reduced motives."""

    def __init__(self, dom):
        self.dom = dom
        self.char = dom.char
        self.zero = ()
        self.one = (dom.one,)
        self.is_field = False

    def add(self, a, b):
        return p_add(self.dom, a, b)

    def sub(self, a, b):
        return p_sub(self.dom, a, b)

    def mul(self, a, b):
        return p_mul(self.dom, a, b)

    def neg(self, a):
        return p_neg(self.dom, a)

    def inv(self, a):
        if len(a) != 1:
            raise ZeroDivisionError("only constants are units in a polynomial ring")
        return (self.dom.inv(a[0]),)

    def twist(self, a, ell=1):
        if ell == 0:
            return a
        return p_trim(self.dom, tuple(self.dom.twist(c, ell) for c in a))

    def const(self, c):
        return p_trim(self.dom, (c,))

    def gen(self):
        return (self.dom.zero, self.dom.one)

    def decode(self, code):
        return self.const(self.dom.decode(code))

    def __eq__(self, other):
        return isinstance(other, PolyDomain) and self.dom == other.dom

    def __hash__(self):
        return hash(("PolyDomain", self.dom))

    def __repr__(self):
        return "PolyDomain(%r)" % (self.dom,)


# ---------------------------------------------------------------------------
# Primes of A and residue fields.


class PrimeIdeal:
    """A maximal ideal of A, stored by its monic irreducible generator."""

    __slots__ = ("generator", "degree")

    def __init__(self, generator, _validated=False):
        if not generator.is_monic:
            raise ValueError("prime generator must be monic")
        if not _validated and not is_irreducible(generator):
            raise ReducibleError("generator factors: %r" % (generator,))
        self.generator = generator
        self.degree = generator.degree

    @property
    def code(self):
        return self.generator.code

    @property
    def field(self):
        return self.generator.field

    def sort_key(self):
        return (self.degree, self.code)

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.generator == other.generator

    def __hash__(self):
        return hash(("PrimeIdeal", self.generator))

    def __repr__(self):
        return "PrimeIdeal(%r)" % (self.generator,)


def is_irreducible(a):
    """Trial-division irreducibility over the constant field (desk scale)."""
    if a.degree <= 0:
        return False
    return _p_is_irreducible(a.field, a.coeffs, a.field.size)


def moebius(n):
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def necklace_count(q, m):
    """Number of monic irreducibles of degree m over F_q."""
    total = 0
    d = 1
    while d * d <= m:
        if m % d == 0:
            total += moebius(d) * q ** (m // d)
            if d != m // d:
                total += moebius(m // d) * q ** d
        d += 1
    return total // m


def enumerate_monic_irreducibles(spec, max_deg):
    """All monic irreducibles of degree <= max_deg in the canonical order
    (degree, then integer code, i.e. leading-coefficient-first lex)."""
    if max_deg < 1:
        raise ValueError("max_deg must be >= 1")
    q = spec.size
    primes = []
    for d in range(1, max_deg + 1):
        composite = set()
        for wp in primes:
            pd = wp.degree
            if pd > d // 2:
                break
            gdeg = d - pd
            pc = wp.generator.coeffs
            for gcode in range(q ** gdeg, 2 * q ** gdeg):
                g = _digits(gcode, q, gdeg + 1)
                composite.add(_undigits(p_mul(spec, pc, tuple(g)), q))
        found = []
        for code in range(q ** d, 2 * q ** d):
            if code not in composite:
                found.append(PrimeIdeal(APoly.from_code(spec, code), _validated=True))
        count = necklace_count(q, d)
        assert len(found) == count, "irreducible sieve miscount at degree %d" % d
        primes.extend(found)
    return primes


class ResidueField:
    """F_wp = A/(wp).  Raw element representations: an int bitmask of
    coefficients when q = 2 (fast kernel), otherwise a trimmed little-endian
    tuple of F_q codes.  The RFElem wrapper carries the field for public use."""

    def __init__(self, prime):
        self.prime = prime
        self.spec = prime.field
        self.m = prime.degree
        self.q = self.spec.size
        self.size = self.q ** self.m
        self.char = self.spec.char
        self.is_field = True
        self._bits = (self.q == 2)
        if self._bits:
            self.zero = 0
            self.one = 1
            self._genmask = prime.code
            self.theta_raw = self.reduce_apoly(APoly.gen(self.spec))
        else:
            self.zero = ()
            self.one = (self.spec.one,)
            self._gen = prime.generator.coeffs
            self.theta_raw = self.reduce_apoly(APoly.gen(self.spec))
            self._red_rows = tuple(
                _padded(p_mod(self.spec, (self.spec.zero,) * k + (self.spec.one,),
                              self._gen), self.m)
                for k in range(self.m, 2 * self.m - 1))
        self.theta = self.theta_raw
        self._frob_tabs = []

    # raw kernels ----------------------------------------------------------
    def add(self, a, b):
        if self._bits:
            return a ^ b
        return p_add(self.spec, a, b)

    def sub(self, a, b):
        if self._bits:
            return a ^ b
        return p_sub(self.spec, a, b)

    def neg(self, a):
        if self._bits:
            return a
        return p_neg(self.spec, a)

    def mul(self, a, b):
        if self._bits:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
            g, m = self._genmask, self.m
            for i in range(r.bit_length() - 1, m - 1, -1):
                if (r >> i) & 1:
                    r ^= g << (i - m)
            return r
        # fused schoolbook product and reduction by the cached rows
        # x^k mod wp, all on raw tables; this is the hottest kernel
        if not a or not b:
            return ()
        mulrows = self.spec._mul
        add = self.spec._add
        m = self.m
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                row = mulrows[x]
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add[out[i + j]][row[y]]
        red = self._red_rows
        for k in range(len(out) - 1, m - 1, -1):
            c = out[k]
            if c:
                row = mulrows[c]
                for j, d in enumerate(red[k - m]):
                    if d:
                        out[j] = add[out[j]][row[d]]
        del out[m:]
        while out and not out[-1]:
            out.pop()
        return tuple(out)

    def pow_(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in residue field")
        return self.pow_(a, self.size - 2)

    def _frobenius_table(self, ell):
        """Monomial-basis images under x -> x^{q^ell} for 1 <= ell < m;
        x^{q^ell} is F_q-linear, so a cached table turns every twist into
        one linear combination."""
        tabs = self._frob_tabs
        while len(tabs) < ell:
            if not tabs:
                beta = self.pow_(self.theta_raw, self.q)
            else:
                beta = self.twist(self.twist(self.theta_raw, len(tabs)), 1)
            tab = [self.one]
            for _ in range(self.m - 1):
                tab.append(self.mul(tab[-1], beta))
            tabs.append(tab)
        return tabs[ell - 1]

    def twist(self, a, ell):
        """a^{q^ell}."""
        if a == self.zero:
            return a
        ell %= self.m
        if ell == 0:
            return a
        tab = self._frobenius_table(ell)
        if self._bits:
            r = 0
            i = 0
            while a:
                if a & 1:
                    r ^= tab[i]
                a >>= 1
                i += 1
            return r
        add = self.spec._add
        mul = self.spec._mul
        out = [0] * self.m
        for i, c in enumerate(a):
            if c:
                row = mul[c]
                for j, d in enumerate(tab[i]):
                    if d:
                        out[j] = add[out[j]][row[d]]
        return p_trim(self.spec, out)

    def decode(self, code):
        return self.embed_const(code)

    # conversions ----------------------------------------------------------
    def reduce_apoly(self, a):
        if a.field != self.spec:
            raise ValueError("polynomial over the wrong constant field")
        if self._bits:
            rem = a % self.prime.generator
            return rem.code
        return p_mod(self.spec, a.coeffs, self._gen)

    def to_apoly(self, raw):
        if self._bits:
            return APoly.from_code(self.spec, raw)
        return APoly(self.spec, raw)

    def embed_const(self, c):
        if self._bits:
            return c & 1
        return p_trim(self.spec, (c,))

    def in_base(self, raw):
        """The F_q code when raw lies in the prime field copy F_q, else None."""
        if self._bits:
            return raw if raw in (0, 1) else None
        if raw == ():
            return 0
        if len(raw) == 1:
            return raw[0]
        return None

    def elements(self):
        if self._bits:
            return range(self.size)
        spec, m, q = self.spec, self.m, self.q
        return (p_trim(spec, _digits(code, q, m)) for code in range(self.size))

    def norm(self, raw):
        """Norm to F_q, computed as the product of the q-power conjugates."""
        acc = self.one
        for i in range(self.m):
            acc = self.mul(acc, self.twist(raw, i))
        code = self.in_base(acc)
        assert code is not None, "norm landed outside F_q"
        return code

    def __eq__(self, other):
        return isinstance(other, ResidueField) and self.prime == other.prime

    def __hash__(self):
        return hash(("ResidueField", self.prime))

    def __repr__(self):
        return "ResidueField(%r)" % (self.prime,)


class RFElem:
    """A residue-field element carrying its field."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, RFElem):
            if other.field != self.field:
                raise ValueError("elements of different residue fields")
            return other.raw
        if isinstance(other, int):
            return self.field.embed_const(other % self.field.q)
        raise TypeError("cannot coerce %r" % (other,))

    def __add__(self, other):
        return RFElem(self.field, self.field.add(self.raw, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return RFElem(self.field, self.field.sub(self.raw, self._coerce(other)))

    def __mul__(self, other):
        return RFElem(self.field, self.field.mul(self.raw, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return RFElem(self.field, self.field.neg(self.raw))

    def __truediv__(self, other):
        return RFElem(self.field,
                      self.field.mul(self.raw, self.field.inv(self._coerce(other))))

    def __pow__(self, n):
        return RFElem(self.field, self.field.pow_(self.raw, n))

    def __eq__(self, other):
        if isinstance(other, RFElem):
            return self.field == other.field and self.raw == other.raw
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __repr__(self):
        return "RFElem(%r mod %r)" % (self.field.to_apoly(self.raw), self.field.prime.generator)


# ---------------------------------------------------------------------------
# The operations of the module contract.


def power_residue_symbol(f, wp, n):
    """The n-th power residue symbol: f^{(q^m - 1)/n} mod wp, as an element
    of mu_n inside F_q^*."""
    spec = f.field
    q = spec.size
    if n < 1 or (q - 1) % n:
        raise BadOrderError("n = %d does not divide q - 1 = %d" % (n, q - 1))
    field = ResidueField(wp)
    raw = field.reduce_apoly(f)
    if raw == field.zero:
        raise DividesError("%r divides %r" % (wp.generator, f))
    val = field.pow_(raw, (field.size - 1) // n)
    code = field.in_base(val)
    assert code is not None, "symbol landed outside F_q"
    assert spec.pow_(code, n) == spec.one, "symbol is not an n-th root of unity"
    return code


def residue_norm(x):
    """Norm of a residue-field element down to F_q."""
    return x.field.norm(x.raw)


def frobenius_twist_const(x, ell):
    """x^{q^{ell mod d}} for a constant-extension element."""
    return ECElem(x.field, x.field.twist(x.code, ell))
