"""The power-twist special-value pipeline: the twisted rank-1 module, its
logarithm's convergence radius, the exact partial sum of log at 1, and the
three-way comparison of Euler-product, Dirichlet-sum, and logarithm values.

Only the h = 1 case is checked here: the unit module of the twist is
generated by log(1), so the L-value, the character sum, and the logarithm
must agree.  General regulators and class modules are out of scope.
"""

from fractions import Fraction

from .base import APoly, KDomain, KElem
from .drinfeld import DrinfeldModule, carlitz_factorials
from .errors import BadOrderError, NotPowerFreeError, RadiusError
from .laurent import DEFAULT_PRECISION, agreement_valuation, embed_rational
from .lseries import PowerResidueCharacter, character_L, goss_L


class PowerTwist:
    """E_t = theta + f^{(q-1)/n} tau for n dividing q-1 and f free of n-th
    power factors: the rank-1 module whose dual L-value at 0 is L(chi_f, 1)."""

    __slots__ = ("f", "n", "module", "d")

    def __init__(self, f, n, module):
        self.f = f
        self.n = n
        self.module = module
        self.d = f.degree


def _has_nth_power_factor(f, n):
    """True when some irreducible divides f at least n times."""
    from .lseries import prime_factors
    for wp in prime_factors(f):
        g = wp.generator
        power = g ** n
        if (f % power).is_zero:
            return True
    return False


def power_twist_module(f, n):
    """Build the twist, validating the order and power-freeness."""
    spec = f.field
    q = spec.size
    if n < 1 or (q - 1) % n:
        raise BadOrderError("n = %d does not divide q - 1 = %d" % (n, q - 1))
    if f.is_zero:
        raise NotPowerFreeError("the twisting polynomial must be nonzero")
    if f.degree > 0 and _has_nth_power_factor(f, n):
        raise NotPowerFreeError(
            "f has an irreducible factor of multiplicity >= n = %d" % n)
    module = DrinfeldModule(KDomain(spec), (KElem(f ** ((q - 1) // n)),))
    return PowerTwist(f, n, module)


def convergence_radius(tw):
    """(exponent, gate): the radius of the twisted logarithm is
    q^(1 + 1/(q-1) - d/n); the gate is the deg f <= n hypothesis under which
    1 lies inside the radius and log(1) makes sense."""
    q = tw.f.field.size
    exponent = 1 + Fraction(1, q - 1) - Fraction(tw.d, tw.n)
    return exponent, tw.d <= tw.n


def log_at_one(tw, k_max, prec=DEFAULT_PRECISION):
    """Partial sum 1 + sum_{k=1}^{k_max} (-1)^k f^{(q^k-1)/n} / L_k,
    accumulated exactly in K and embedded once.  Term degrees must decrease
    strictly; that is the convergence certificate at the point 1."""
    _, gate = convergence_radius(tw)
    if not gate:
        raise RadiusError("deg f = %d > n = %d: 1 is outside the radius"
                          % (tw.d, tw.n))
    spec = tw.f.field
    q = spec.size
    total = KElem.one(spec)
    last_degree = 0
    for k in range(1, k_max + 1):
        _, _, lk = carlitz_factorials(spec, k)
        term = KElem(tw.f ** ((q ** k - 1) // tw.n)) / KElem(lk)
        degree = term.num.degree - term.den.degree
        assert degree < last_degree, \
            "log term %d does not shrink: degree %d" % (k, degree)
        last_degree = degree
        if k % 2:
            total = total - term
        else:
            total = total + term
    return embed_rational(total, prec)


class SpecialValueReport:
    """The three special values of one power twist and their pairwise
    discrepancy valuations; PASS means every discrepancy is at least the
    truncation degree."""

    __slots__ = ("euler", "dirichlet", "log_value",
                 "disc_euler_dirichlet", "disc_euler_log",
                 "disc_dirichlet_log", "passed", "deg_max", "k_max", "prec")

    def __init__(self, euler, dirichlet, log_value, deg_max, k_max, prec):
        self.euler = euler
        self.dirichlet = dirichlet
        self.log_value = log_value
        self.deg_max = deg_max
        self.k_max = k_max
        self.prec = prec
        self.disc_euler_dirichlet = agreement_valuation(euler, dirichlet)
        self.disc_euler_log = agreement_valuation(euler, log_value)
        self.disc_dirichlet_log = agreement_valuation(dirichlet, log_value)
        self.passed = (self.disc_euler_dirichlet >= deg_max
                       and self.disc_euler_log >= deg_max
                       and self.disc_dirichlet_log >= deg_max)

    def to_jsonable(self):
        return {
            "euler": self.euler.to_jsonable(),
            "dirichlet": self.dirichlet.to_jsonable(),
            "log": self.log_value.to_jsonable(),
            "disc_euler_dirichlet": self.disc_euler_dirichlet,
            "disc_euler_log": self.disc_euler_log,
            "disc_dirichlet_log": self.disc_dirichlet_log,
            "pass": self.passed,
            "deg_max": self.deg_max,
            "k_max": self.k_max,
            "prec": self.prec,
        }

    def __repr__(self):
        return ("SpecialValueReport(pass=%r, discs=(%d, %d, %d))"
                % (self.passed, self.disc_euler_dirichlet,
                   self.disc_euler_log, self.disc_dirichlet_log))


def taelman_check(f, n, deg_max=8, k_max=4, prec=DEFAULT_PRECISION):
    """Compute the truncated L-value three independent ways and compare:
    the Euler product over the twist's good primes, the Dirichlet sum of the
    residue character at s = 1, and the logarithm partial sum at 1.  The
    module-side and character-side Euler products must agree exactly factor
    by factor; that identity is asserted, not reported."""
    tw = power_twist_module(f, n)
    euler, _ = goss_L(tw.module, 0, deg_max, prec)
    chi = PowerResidueCharacter(f, n)
    assert euler == character_L(chi, 1, deg_max, method="euler", prec=prec), \
        "module-side and character-side Euler products disagree"
    dirichlet = character_L(chi, 1, deg_max, method="dirichlet", prec=prec)
    log_value = log_at_one(tw, k_max, prec)
    return SpecialValueReport(euler, dirichlet, log_value, deg_max, k_max, prec)
