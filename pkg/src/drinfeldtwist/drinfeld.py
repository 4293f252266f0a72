"""Drinfeld and Anderson module descriptors, exponential/logarithm
coefficient recursions, Carlitz factorials, and truncated evaluation of
entire series at infinity."""

from collections import namedtuple

from .base import APoly, KDomain
from .errors import CharacteristicError, DivergenceError, ShapeError
from .laurent import INF_VAL, LaurentNumber, embed_rational
from .ore import OrePolynomial, mat_eye, mat_mul, mat_sub, mat_zero


class DrinfeldModule:
    """phi_t = theta + a_1 tau + ... + a_r tau^r over a domain carrying
    theta; rank r, with a_r nonzero."""

    def __init__(self, dom, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs or coeffs[-1] == dom.zero:
            raise ValueError("the top coefficient a_r must be nonzero")
        self.dom = dom
        self.rank = len(coeffs)
        self.coeffs = coeffs
        self.ore_t = OrePolynomial.scalar(dom, (dom.theta,) + coeffs)

    @property
    def dim(self):
        return 1

    def __repr__(self):
        return "DrinfeldModule(rank %d over %r)" % (self.rank, self.dom)


class AndersonModule:
    """An N-dimensional module: E_t an NxN matrix Ore polynomial whose
    constant part is theta*I plus a nilpotent."""

    def __init__(self, dom, ore_t):
        if ore_t.rows != ore_t.cols:
            raise ShapeError("E_t must be square")
        n = ore_t.rows
        d0 = ore_t.coeff(0)
        nil = mat_sub(dom, d0, _theta_eye(dom, n))
        power = mat_eye(dom, n)
        for _ in range(n):
            power = mat_mul(dom, power, nil)
        if power != mat_zero(dom, n, n):
            raise ValueError("dE_t - theta*I is not nilpotent")
        self.dom = dom
        self.dim = n
        self.ore_t = ore_t
        self.leading = ore_t.coeff(ore_t.degree)
        self.rank = ore_t.degree

    def __repr__(self):
        return ("AndersonModule(N=%d, tau-degree %d over %r)"
                % (self.dim, self.ore_t.degree, self.dom))


def _theta_eye(dom, n):
    return tuple(tuple(dom.theta if i == j else dom.zero for j in range(n))
                 for i in range(n))


def carlitz(spec):
    """The rank-1 module with t acting as theta + tau."""
    dom = KDomain(spec)
    return DrinfeldModule(dom, (dom.one,))


def image_of(a, module):
    """a(phi_t) in the Ore ring, for a polynomial a in the variable t over
    F_q; a ring homomorphism in a."""
    ore_t = module.ore_t
    dom = ore_t.dom
    n = ore_t.rows
    result = OrePolynomial.zero(dom, n, n)
    ident = OrePolynomial.identity(dom, n)
    for c in reversed(a.coeffs):
        result = result * ore_t + ident.scale(dom.decode(c))
    return result


class EntireSeries:
    """Coefficients c_0, c_1, ... of the map x -> sum c_k x^{(k)}, with the
    normalization c_0 = 1."""

    def __init__(self, dom, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs or coeffs[0] != dom.one:
            raise ValueError("entire series must start with the identity")
        self.dom = dom
        self.coeffs = coeffs

    def coeff(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def __repr__(self):
        return "EntireSeries(%d coefficients over %r)" % (len(self.coeffs), self.dom)


def _bracket(dom, k):
    """theta^{q^k} - theta in the domain."""
    return dom.sub(dom.twist(dom.theta, k), dom.theta)


def exp_coefficients(module, k_max):
    """e_k [k] = sum_{i=1}^{min(r,k)} a_i e_{k-i}^{(i)}, e_0 = 1."""
    dom = module.dom
    r = module.rank
    es = [dom.one]
    for k in range(1, k_max + 1):
        br = _bracket(dom, k)
        if br == dom.zero:
            raise CharacteristicError("theta^{q^%d} = theta in %r" % (k, dom))
        acc = dom.zero
        for i in range(1, min(r, k) + 1):
            acc = dom.add(acc, dom.mul(module.coeffs[i - 1], dom.twist(es[k - i], i)))
        es.append(dom.mul(acc, dom.inv(br)))
    return EntireSeries(dom, es)


def log_coefficients(module, k_max):
    """l_k = -(sum_{i=1}^{min(r,k)} l_{k-i} a_i^{(k-i)}) / [k], l_0 = 1."""
    dom = module.dom
    r = module.rank
    ls = [dom.one]
    for k in range(1, k_max + 1):
        br = _bracket(dom, k)
        if br == dom.zero:
            raise CharacteristicError("theta^{q^%d} = theta in %r" % (k, dom))
        acc = dom.zero
        for i in range(1, min(r, k) + 1):
            acc = dom.add(acc, dom.mul(ls[k - i], dom.twist(module.coeffs[i - 1], k - i)))
        ls.append(dom.neg(dom.mul(acc, dom.inv(br))))
    return EntireSeries(dom, ls)


def carlitz_factorials(spec, k):
    """([k], D_k, L_k) as exact polynomials; the bracket is None at k = 0."""
    if k < 0:
        raise ValueError("k must be >= 0")
    q = spec.q
    t = APoly.gen(spec)
    one = APoly.one(spec)
    if k == 0:
        return (None, one, one)
    dk, lk = one, one
    bracket = None
    for j in range(1, k + 1):
        bracket = t ** (q ** j) - t
        dk = bracket * dk.frob_q(1)
        lk = bracket * lk
    return (bracket, dk, lk)


EvalResult = namedtuple("EvalResult", ["values", "tail_valuation"])


def eval_entire(series, xs, k_max):
    """Partial sum of sum_k c_k x^{(k)} through k_max, componentwise on a
    vector of Laurent numbers; x^{(k)} is the exact q^k-power.  Returns the
    values and the theta-valuation of the last added term."""
    if k_max >= len(series):
        raise ValueError("series has only %d coefficients" % len(series))
    if not xs:
        raise ShapeError("empty evaluation vector")
    lfield = xs[0].field
    prec = max(max((x.precision for x in xs), default=0), 1)
    values = [LaurentNumber.exact_zero(lfield) for _ in xs]
    term_degs = []
    for k in range(k_max + 1):
        ck = embed_rational(series.coeff(k), prec)
        deg_k = None
        for i, x in enumerate(xs):
            term = ck * x.qpower(k)
            if not term.is_exact_zero:
                deg_k = term.top if deg_k is None else max(deg_k, term.top)
            values[i] = values[i] + term
        term_degs.append(deg_k)
    known = [d for d in term_degs if d is not None]
    if len(known) >= 2 and known[-1] >= known[-2]:
        raise DivergenceError("term degrees do not decrease: %r" % (known[-2:],))
    tail = INF_VAL if not known or term_degs[-1] is None else -term_degs[-1]
    return EvalResult(tuple(values), tail)
