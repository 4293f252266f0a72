"""Reduction of modules at primes, Frobenius characteristic polynomials on
the reduced motive, local factors, truncated Goss L-series, character
L-series, and the brute-force module-structure oracle.

Conventions fixed here, used everywhere downstream:

  * The motive basis over F_wp[t] is {eps_j tau^i : 1 <= j <= N, 0 <= i < r};
    tau acts by a block matrix T whose subdiagonal blocks are identities and
    whose last block column is assembled from the reduced coefficients.  For
    a prime of degree m the matrix of tau^m is the twisted product
    T^(m-1) ... T^(1) T^(0), where twisting raises F_wp entries to the q-th
    power and fixes t.
  * P(X) = det(X*I - Mat(tau^m)).  Its coefficients always descend to
    F_q[t]; failure raises DescentError and means a bug, not bad input.
  * The dual local factor is L_wp(s) = P(0) / P(wp(theta)^{-s}) with t
    evaluated at theta.  At good primes of the in-scope family this is an
    F_q^*-unit times a 1-unit, so degree-D truncated products carry
    valuation-(D+1) accuracy.
"""

from .base import (
    APoly,
    ExtConstField,
    KElem,
    PolyDomain,
    PrimeIdeal,
    ResidueField,
    enumerate_monic_irreducibles,
    is_irreducible,
    p_trim,
    poly_string,
    power_residue_symbol,
)
from .errors import (
    BadOrderError,
    BadPrimeError,
    ConvergenceError,
    DescentError,
    ReducibleError,
)
from .laurent import DEFAULT_PRECISION, LaurentNumber, embed_rational, norm_down
from .ore import OrePolynomial, mat_det, mat_inv, mat_mul


# ---------------------------------------------------------------------------
# Bad primes.


class BadPrimeSet:
    """Primes excluded from an Euler product, each with the reason it was
    excluded ("denominator", "leading-singular", or "ramified")."""

    def __init__(self, entries=()):
        self._reasons = {}
        for wp, reason in entries:
            self.add(wp, reason)

    def add(self, wp, reason):
        # first reason wins; a prime is excluded once
        if wp not in self._reasons:
            self._reasons[wp] = reason

    def reason(self, wp):
        return self._reasons.get(wp)

    def union(self, other):
        out = BadPrimeSet()
        for wp in self:
            out.add(wp, self._reasons[wp])
        for wp in other:
            out.add(wp, other.reason(wp))
        return out

    def primes(self):
        return sorted(self._reasons, key=PrimeIdeal.sort_key)

    def __contains__(self, wp):
        return wp in self._reasons

    def __iter__(self):
        return iter(self.primes())

    def __len__(self):
        return len(self._reasons)

    def __eq__(self, other):
        return isinstance(other, BadPrimeSet) and self._reasons == other._reasons

    def to_jsonable(self):
        return [{"prime": poly_string(wp.generator), "reason": self._reasons[wp]}
                for wp in self]

    def __repr__(self):
        return "BadPrimeSet(%r)" % (self.to_jsonable(),)


def _pth_root(a):
    """The p-th root of a polynomial whose derivative vanishes: every
    exponent is a multiple of p, and constants have p-th roots in F_q."""
    spec = a.field
    p = spec.char
    root_pow = p ** (spec.e - 1)
    coeffs = a.coeffs
    return APoly(spec, tuple(spec.pow_(coeffs[i], root_pow)
                             for i in range(0, len(coeffs), p)))


def _radical(a):
    """The product of the distinct monic irreducible factors of a.  Keeps
    the degree being trial-divided small even when a is a high power."""
    a = a.monic()
    rad = APoly.one(a.field)
    while a.degree > 0:
        d = a.derivative()
        if d.is_zero:
            a = _pth_root(a)
            continue
        g = a.gcd(d)
        fresh = a // g
        rad = rad * (fresh // fresh.gcd(rad))
        a = g
    return rad


def prime_factors(a):
    """The distinct monic irreducible factors of a nonzero polynomial, in
    canonical (degree, code) order.  The squarefree radical is computed
    first; trial division by all irreducibles of degree up to half the
    radical leaves an irreducible cofactor."""
    if a.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    a = _radical(a)
    if a.degree == 0:
        return []
    found = []
    half = a.degree // 2
    for wp in (enumerate_monic_irreducibles(a.field, half) if half else ()):
        g = wp.generator
        quo, rem = divmod(a, g)
        if rem.is_zero:
            found.append(wp)
            a = quo
        if a.degree == 0:
            break
    if a.degree > 0:
        found.append(PrimeIdeal(a, _validated=True))
    found.sort(key=PrimeIdeal.sort_key)
    return found


def detect_bad_primes(module, ramified=()):
    """Primes of A at which the module fails to reduce: divisors of any
    coefficient denominator, divisors of det(leading matrix), and any
    caller-declared ramified primes."""
    dom = module.dom
    bad = BadPrimeSet()
    for term in module.ore_t.terms:
        for row in term:
            for entry in row:
                if entry.den.degree > 0:
                    for wp in prime_factors(entry.den):
                        bad.add(wp, "denominator")
    lead = module.ore_t.coeff(module.ore_t.degree)
    det = mat_det(dom, lead)
    if det.num.degree > 0:
        for wp in prime_factors(det.num):
            bad.add(wp, "leading-singular")
    for wp in ramified:
        bad.add(wp, "ramified")
    return bad


# ---------------------------------------------------------------------------
# Reduction at a good prime.


class ReducedModule:
    """A module with coefficients reduced modulo a good prime: an Ore matrix
    polynomial over the residue field F_wp, with invertible leading matrix."""

    def __init__(self, prime, field, ore_t):
        self.prime = prime
        self.field = field
        self.ore_t = ore_t
        self.dim = ore_t.rows
        self.rank = ore_t.degree
        self.leading = ore_t.coeff(ore_t.degree)

    def __repr__(self):
        return ("ReducedModule(N=%d, r=%d at %r)"
                % (self.dim, self.rank, self.prime))


def reduce_module(module, wp):
    """Reduce every coefficient mod wp.  BadPrimeError if a denominator
    vanishes or the leading matrix degenerates."""
    ore = module.ore_t
    F = ResidueField(wp)

    def red(x):
        den = F.reduce_apoly(x.den)
        if den == F.zero:
            raise BadPrimeError("denominator vanishes modulo %r" % (wp,))
        return F.mul(F.reduce_apoly(x.num), F.inv(den))

    terms = tuple(tuple(tuple(red(e) for e in row) for row in m)
                  for m in ore.terms)
    reduced = OrePolynomial(F, ore.rows, ore.cols, terms)
    if reduced.degree != ore.degree:
        raise BadPrimeError("leading matrix vanishes modulo %r" % (wp,))
    if mat_det(F, reduced.coeff(ore.degree)) == F.zero:
        raise BadPrimeError("leading matrix is singular modulo %r" % (wp,))
    return ReducedModule(wp, F, reduced)


# ---------------------------------------------------------------------------
# Frobenius characteristic polynomial on the reduced motive.


class CharpolyRecord:
    """The characteristic polynomial P(X) of tau^{deg wp} on the reduced
    motive, with coefficients descended to A, plus the F_q^* unit with
    P(0) = unit * wp^N."""

    __slots__ = ("prime", "coefficients", "unit", "rank", "dim")

    def __init__(self, prime, coefficients, unit, rank, dim):
        self.prime = prime
        self.coefficients = tuple(coefficients)
        self.unit = unit
        self.rank = rank
        self.dim = dim

    @property
    def x_degree(self):
        return len(self.coefficients) - 1

    def p_zero(self):
        """P(0) as an element of A."""
        return self.coefficients[0]

    def p_one(self):
        """P(1) as an element of A."""
        spec = self.prime.field
        total = APoly.zero(spec)
        for c in self.coefficients:
            total = total + c
        return total

    def eval_at_theta(self, x):
        """P(x) for x in K, after the substitution t -> theta."""
        spec = self.prime.field
        acc = KElem.zero(spec)
        for c in reversed(self.coefficients):
            acc = acc * x + KElem(c)
        return acc

    @property
    def reciprocal_coefficients(self):
        """Coefficients of X^{rN} P(1/X): the non-dual side.  Exposed for
        inspection only; no convergence guarantee is attached to it."""
        return tuple(reversed(self.coefficients))

    def to_jsonable(self):
        return {
            "prime": poly_string(self.prime.generator),
            "coefficients": [poly_string(c, var="t") for c in self.coefficients],
            "unit": self.unit,
        }

    def __repr__(self):
        return ("CharpolyRecord(%r, deg_X %d)"
                % (self.prime, self.x_degree))


def frobenius_charpoly(Em):
    """P(X) = det(X*I - Mat(tau^m)) on the motive of a reduced module, with
    the coefficient descent to F_q[t] enforced."""
    F = Em.field
    spec = F.spec
    Rt = PolyDomain(F)
    r, N = Em.rank, Em.dim
    size = r * N

    # tau-action matrix T, block form: identity blocks below the diagonal,
    # the reduced coefficients assembled in the last block column
    ainv = mat_inv(F, Em.leading)
    T = [[Rt.zero] * size for _ in range(size)]
    for bi in range(r - 1):
        for j in range(N):
            T[(bi + 1) * N + j][bi * N + j] = Rt.one
    a0 = Em.ore_t.coeff(0)
    m0 = mat_mul(F, ainv, a0)
    for i in range(N):
        for j in range(N):
            T[i][(r - 1) * N + j] = p_trim(F, (F.neg(m0[j][i]), ainv[j][i]))
    for k in range(1, r):
        mk = mat_mul(F, ainv, Em.ore_t.coeff(k))
        for i in range(N):
            for j in range(N):
                T[k * N + i][(r - 1) * N + j] = Rt.const(F.neg(mk[j][i]))
    T = tuple(tuple(row) for row in T)

    # Mat(tau^m) = T^(0) T^(1) ... T^(m-1): composing v -> T v^(q) stacks the
    # later twists on the right.  Accumulating as T * twist(acc, 1) keeps
    # every step a single twist-by-q instead of a twist-by-q^i
    acc = T
    for _ in range(1, Em.prime.degree):
        acc = mat_mul(Rt, T, tuple(tuple(Rt.twist(x, 1) for x in row) for row in acc))

    # bivariate characteristic polynomial det(X*I - acc)
    RtX = PolyDomain(Rt)
    xm = tuple(tuple(
        p_trim(Rt, (Rt.neg(acc[i][j]), Rt.one if i == j else Rt.zero))
        for j in range(size)) for i in range(size))
    char_x = mat_det(RtX, xm)

    # descend every F_wp[t] coefficient to F_q[t]
    coeffs = []
    for cx in char_x:
        codes = []
        for ct in cx:
            b = F.in_base(ct)
            if b is None:
                raise DescentError(
                    "charpoly coefficient %r at %r lies outside F_q"
                    % (ct, Em.prime))
            codes.append(b)
        coeffs.append(APoly(spec, tuple(codes)))
    while len(coeffs) < size + 1:
        coeffs.append(APoly.zero(spec))
    assert coeffs[size] == APoly.one(spec), "charpoly is not monic in X"

    # P(0) is an F_q^* multiple of wp^N at every good prime: the constant
    # part of the reduced module is theta*I plus a nilpotent
    p0 = coeffs[0]
    unit = p0.lc
    assert p0 == (Em.prime.generator ** N).scale(unit), \
        "P(0) is not an F_q^* multiple of wp^N"
    return CharpolyRecord(Em.prime, coeffs, unit, r, N)


# ---------------------------------------------------------------------------
# Local factors and the truncated Goss L-series.


def local_factor(cp, s, prec=DEFAULT_PRECISION):
    """L_wp(dual, s) = P(0)/P(wp(theta)^{-s}), computed as one exact element
    of K and embedded into the Laurent window once."""
    num = KElem(cp.p_zero())
    x = KElem(cp.prime.generator) ** (-s)
    den = cp.eval_at_theta(x)
    if den.is_zero:
        raise ConvergenceError("local factor pole at %r, s=%d" % (cp.prime, s))
    ratio = num / den
    if ratio.num.degree != ratio.den.degree:
        raise ConvergenceError(
            "local factor at %r, s=%d is not a unit at infinity"
            % (cp.prime, s))
    return embed_rational(ratio, prec)


def goss_L(module, s, deg_max, prec=DEFAULT_PRECISION, ramified=(), collect=None):
    """Product of local factors over all good primes of degree <= deg_max in
    canonical (degree, code) order.  Returns (value, excluded primes).  Pass
    a list as `collect` to receive (prime, record, factor) triples."""
    spec = module.dom.field
    bad = detect_bad_primes(module, ramified)
    value = LaurentNumber.one(spec, prec)
    if deg_max < 1:
        return value, bad
    for wp in enumerate_monic_irreducibles(spec, deg_max):
        if wp in bad:
            continue
        record = frobenius_charpoly(reduce_module(module, wp))
        factor = local_factor(record, s, prec)
        value = value * factor
        if collect is not None:
            collect.append((wp, record, factor))
    return value, bad


# ---------------------------------------------------------------------------
# Characters of A and their L-series.


class PowerResidueCharacter:
    """chi(wp) = the n-th power residue symbol of f modulo wp, an element of
    mu_n in F_q^*; extended multiplicatively to monic a coprime to f."""

    def __init__(self, f, n):
        spec = f.field
        if n < 1 or (spec.size - 1) % n:
            raise BadOrderError("n = %d does not divide q - 1 = %d"
                                % (n, spec.size - 1))
        if f.is_zero:
            raise ValueError("the twisting polynomial must be nonzero")
        self.f = f
        self.n = n
        self.conductor = f.monic()
        self.field = spec
        self._values = {}

    def value_at_prime(self, wp):
        """Symbol at a prime; None when wp divides the conductor.  Values
        are memoized so the Euler and Dirichlet routes share one symbol
        computation per prime."""
        if (self.conductor % wp.generator).is_zero:
            return None
        got = self._values.get(wp)
        if got is None:
            got = power_residue_symbol(self.f, wp, self.n)
            self._values[wp] = got
        return got

    def __repr__(self):
        return ("PowerResidueCharacter(%s, n=%d)"
                % (poly_string(self.f), self.n))


class CyclotomicCharacter:
    """chi(a) = a(xi) for xi the class of theta in F_q[theta]/(f), f monic
    irreducible.  Values live in the degree-(deg f) constant extension."""

    def __init__(self, f):
        f = f.monic()
        if not is_irreducible(f):
            raise ReducibleError(
                "cyclotomic character needs an irreducible conductor, got %s"
                % poly_string(f))
        self.conductor = f
        self.field = ExtConstField(f.field, f.degree,
                                   modulus=tuple(f.coeffs))
        if f.degree > 1:
            self._xi = f.field.size
        else:
            self._xi = self.field.embed(f.field.neg(f.coeffs[0]))

    def value(self, a):
        """a(xi); None when a is divisible by the conductor."""
        E = self.field
        v = a.eval_with(E, E.embed, self._xi)
        return None if v == E.zero else v

    def value_at_prime(self, wp):
        return self.value(wp.generator)

    def __repr__(self):
        return "CyclotomicCharacter(%s)" % (poly_string(self.conductor),)


def smallest_factor_table(spec, deg_max):
    """Map from the code of every monic polynomial of degree 1..deg_max to a
    PrimeIdeal dividing it (the first in canonical order)."""
    q = spec.size
    table = {}
    for wp in enumerate_monic_irreducibles(spec, deg_max):
        g = wp.generator
        for cd in range(deg_max - g.degree + 1):
            for cof in range(q ** cd, 2 * q ** cd):
                code = (g * APoly.from_code(spec, cof)).code
                if code not in table:
                    table[code] = wp
    return table


def character_values(chi, deg_max):
    """chi on every monic polynomial of degree <= deg_max, keyed by code;
    monics sharing a factor with the conductor are absent."""
    spec = chi.conductor.field
    q = spec.size
    vals = {APoly.one(spec).code: chi.field.one}
    if deg_max < 1:
        return vals
    factor_of = smallest_factor_table(spec, deg_max)
    missing = set()
    for d in range(1, deg_max + 1):
        for code in range(q ** d, 2 * q ** d):
            wp = factor_of[code]
            if wp.code == code:
                v = chi.value_at_prime(wp)
            else:
                rest = (APoly.from_code(spec, code) // wp.generator).code
                if wp.code in missing or rest in missing:
                    v = None
                else:
                    v = chi.field.mul(vals[wp.code], vals[rest])
            if v is None:
                missing.add(code)
            else:
                vals[code] = v
    return vals


def _embed_over(field, a):
    """Rebuild a polynomial over the constant field `field` (an extension of
    a's prime field), coefficientwise."""
    if field == a.field:
        return a
    return APoly(field, tuple(field.embed(c) for c in a.coeffs))


def character_L(chi, s, deg_max, method="euler", prec=DEFAULT_PRECISION):
    """Truncated character L-series over the character's value field:
    euler = prod over good primes of (1 - chi(wp) wp^{-s})^{-1};
    dirichlet = sum over coprime monics of chi(a) a^{-s}."""
    field = chi.field
    if method == "euler":
        value = LaurentNumber.one(field, prec)
        if deg_max < 1:
            return value
        spec = chi.conductor.field
        for wp in enumerate_monic_irreducibles(spec, deg_max):
            c = chi.value_at_prime(wp)
            if c is None:
                continue
            g = _embed_over(field, wp.generator)
            num = g ** s
            den = num - APoly.const(field, c)
            if den.is_zero:
                raise ConvergenceError(
                    "character Euler factor pole at %r, s=%d" % (wp, s))
            value = value * embed_rational(KElem(num, den), prec)
        return value
    if method == "dirichlet":
        total = LaurentNumber.exact_zero(field)
        for code, c in sorted(character_values(chi, deg_max).items()):
            spec = chi.conductor.field
            a = _embed_over(field, APoly.from_code(spec, code))
            term = embed_rational(KElem(a) ** (-s), prec)
            if c != field.one:
                term = LaurentNumber(field, term.top,
                                     tuple(field.mul(c, x) for x in term.coeffs))
            total = total + term
        return total
    raise ValueError("unknown method %r" % (method,))


# ---------------------------------------------------------------------------
# Module structure at a prime, by brute-force linear algebra over F_q.


def _rf_basis(F):
    if F._bits:
        return [1 << k for k in range(F.m)]
    return [p_trim(F.spec, (F.spec.zero,) * k + (F.spec.one,))
            for k in range(F.m)]


def _rf_coords(F, raw):
    if F._bits:
        return [(raw >> k) & 1 for k in range(F.m)]
    padded = tuple(raw) + (F.spec.zero,) * (F.m - len(raw))
    return list(padded)


def _charpoly_over_base(spec, mat):
    """Monic char poly det(t*I - mat) of a square matrix of F_q codes."""
    n = len(mat)
    Rt = PolyDomain(spec)
    entries = tuple(tuple(
        p_trim(spec, (spec.neg(mat[i][j]), spec.one if i == j else spec.zero))
        for j in range(n)) for i in range(n))
    det = mat_det(Rt, entries)
    out = APoly(spec, det)
    assert out.is_monic, "characteristic polynomial came out non-monic"
    return out


def module_structure_oracle(Em):
    """(lie_bracket, point_bracket): the monic characteristic polynomials, in
    t over F_q, of d(E_t) and of the full map x -> E_t(x) on F_wp^N viewed as
    an F_q-space.  The first is the Fitting generator of Lie, the second of
    the group of points; lie_bracket = wp^N always."""
    F = Em.field
    spec = F.spec
    N = Em.dim
    basis = _rf_basis(F)
    dim = F.m * N

    def columns(op):
        cols = []
        for pos in range(N):
            for b in basis:
                vec = tuple(b if i == pos else F.zero for i in range(N))
                out = op(vec)
                col = []
                for component in out:
                    col.extend(_rf_coords(F, component))
                cols.append(col)
        return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))

    a0 = Em.ore_t.coeff(0)

    def d_map(vec):
        return tuple(
            _dot(F, a0[i], vec) for i in range(N))

    lie = _charpoly_over_base(spec, columns(d_map))
    point = _charpoly_over_base(spec, columns(Em.ore_t.apply))
    return lie, point


def _dot(dom, row, vec):
    acc = dom.zero
    for a, b in zip(row, vec):
        acc = dom.add(acc, dom.mul(a, b))
    return acc


# ---------------------------------------------------------------------------
# Constant Frobenius eigenvalues and the normed-down factorization.


def constant_eigenvalue_data(cp):
    """For a dim-2 record whose eigenvalues are gamma*wp and gamma^q*wp with
    gamma constant: the trace and norm of gamma, as F_q codes.  DescentError
    when the record does not have that shape."""
    if cp.x_degree != 2:
        raise DescentError("constant-eigenvalue split needs deg_X = 2")
    spec = cp.prime.field
    g = cp.prime.generator
    c1, c0 = cp.coefficients[1], cp.coefficients[0]
    quo, rem = divmod(-c1, g)
    if not rem.is_zero or quo.degree > 0:
        raise DescentError("trace at %r is not a constant multiple of wp"
                           % (cp.prime,))
    tr = quo.coeffs[0] if quo.coeffs else spec.zero
    quo, rem = divmod(c0, g * g)
    if not rem.is_zero or quo.degree != 0:
        raise DescentError("norm at %r is not a constant multiple of wp^2"
                           % (cp.prime,))
    det = quo.coeffs[0]
    return tr, det


def dual_eigenvalue(cp, ext):
    """The canonical constant eigenvalue in the quadratic constant extension:
    the lex-least root of Y^2 - tr*Y + det.  The root set is closed under
    inversion, so this is a consistent dual-side convention."""
    tr, det = constant_eigenvalue_data(cp)
    tr_e, det_e = ext.embed(tr), ext.embed(det)
    for code in range(ext.size):
        if ext.add(ext.mul(code, ext.sub(code, tr_e)), det_e) == ext.zero:
            return code
    raise DescentError("eigenvalues at %r do not lie in the quadratic "
                       "constant extension" % (cp.prime,))


def norm_factored_L(module, s, deg_max, prec=DEFAULT_PRECISION, ramified=()):
    """The same L-value as goss_L(module, s, ...), reassembled prime by prime
    from constant Frobenius eigenvalues: over the quadratic constant
    extension take prod (1 - beta(wp) wp^{-(s+1)})^{-1}, then norm down.
    Returns (value over F_q, excluded primes)."""
    spec = module.dom.field
    ext = ExtConstField(spec, 2)
    bad = detect_bad_primes(module, ramified)
    value = LaurentNumber.one(ext, prec)
    if deg_max < 1:
        return norm_down(value), bad
    for wp in enumerate_monic_irreducibles(spec, deg_max):
        if wp in bad:
            continue
        record = frobenius_charpoly(reduce_module(module, wp))
        beta = dual_eigenvalue(record, ext)
        g = _embed_over(ext, wp.generator)
        num = g ** (s + 1)
        den = num - APoly.const(ext, beta)
        if den.is_zero:
            raise ConvergenceError(
                "eigenvalue factor pole at %r, s=%d" % (wp, s))
        value = value * embed_rational(KElem(num, den), prec)
    return norm_down(value), bad
