"""Solution matrices, Moore determinants, the f-vector descent, companion
matrices, the explicit twisted Anderson model, denominator clearing, and the
separable-closure isomorphism check.

Conventions.  A solution is an n x d matrix u of tower elements (rows indexed
by the representation dimension, columns by the constant-field basis alpha);
it flattens row-major to length N = n*d.  The defining membership condition,
for every group element g and every 0 <= ell < d, is

    rho^{(ell)}(g) . g(u) . alpha^{(ell)} = u . alpha^{(ell)},

with the action applied entrywise and the representation entries viewed as
tower constants.
"""

from .base import APoly, KDomain, KElem
from .drinfeld import AndersonModule
from .errors import (
    NotFundamentalError,
    ZeroAverageError,
)
from .ore import (
    OrePolynomial,
    mat_det,
    mat_eye,
    mat_inv,
    mat_mul,
    mat_scale,
    mat_solve,
    mat_transpose,
    mat_twist,
)
from .tower import GaloisActionTable, RepresentationTable, TowerElement


class SolutionMatrix:
    """A candidate solution: the tower it lives in, the acting group, the
    representation, the constant basis, and the n x d entries."""

    def __init__(self, tower, act, rho, alpha, entries):
        if rho.field != tower.const_field:
            raise ValueError("representation entries and tower constants disagree")
        if act.tower != tower:
            raise ValueError("action table is attached to a different tower")
        if len(alpha) != rho.d:
            raise ValueError("basis has %d entries, representation generates degree %d"
                             % (len(alpha), rho.d))
        entries = tuple(tuple(row) for row in entries)
        if len(entries) != rho.n or any(len(row) != len(alpha) for row in entries):
            raise ValueError("solution must be %d x %d" % (rho.n, len(alpha)))
        self.tower = tower
        self.act = act
        self.rho = rho
        self.alpha = tuple(alpha)
        self.entries = entries
        self.n = rho.n
        self.d = len(alpha)
        self.N = self.n * self.d

    @property
    def flat(self):
        return tuple(e for row in self.entries for e in row)

    def with_entries(self, entries):
        return SolutionMatrix(self.tower, self.act, self.rho, self.alpha, entries)

    def twisted(self, ell=1):
        return self.with_entries([[e.twist(ell) for e in row] for row in self.entries])

    def __repr__(self):
        return "SolutionMatrix(%dx%d over %r)" % (self.n, self.d, self.tower)


class FlatSolution:
    """Solution entries without representation data, for pipelines whose
    solution was written down by hand.  Anything downstream of the Moore
    matrix only needs .tower and .flat."""

    def __init__(self, tower, entries):
        self.tower = tower
        self.flat = tuple(entries)
        self.N = len(self.flat)

    def __repr__(self):
        return "FlatSolution(%d entries over %r)" % (self.N, self.tower)


def trivial_solution(tower, entry):
    """A one-entry solution for the trivial character of the trivial group."""
    rho = RepresentationTable.trivial(tower.const_field, ["e"])
    act = GaloisActionTable(
        tower,
        {"e": [tower.gen(i) for i in range(tower.depth)]},
        relations=[("e",)],
        elements=[()],
    )
    return SolutionMatrix(tower, act, rho, (tower.const_field.one,), [[entry]])


def average_solution(rho, act, y):
    """u = sum over g of rho(g).g(y) for a constant-field representation
    (d = 1); nonzero averages of irreducible representations are fundamental."""
    if rho.d != 1:
        raise ValueError("averaging is defined for representations with d = 1")
    if len(y) != rho.n:
        raise ValueError("seed vector must have %d entries" % rho.n)
    tower = act.tower
    dom = tower.dom
    y_raw = [tower._coerce_raw(v) for v in y]
    out = [dom.zero] * rho.n
    for word in act.elements:
        mat = rho.image_of_word(word)
        gy = [act.apply_word(word, v) for v in y_raw]
        for i in range(rho.n):
            acc = out[i]
            for j in range(rho.n):
                acc = dom.add(acc, dom.mul(dom.decode(mat[i][j]), gy[j]))
            out[i] = acc
    if all(v == dom.zero for v in out):
        raise ZeroAverageError("the averaged solution vanishes; pick another seed")
    entries = [[TowerElement(tower, v)] for v in out]
    return SolutionMatrix(tower, act, rho, (tower.const_field.one,), entries)


def verify_solution(sol, failures=None):
    """Check the membership condition for every group element and every
    basis twist; failing (word, ell) pairs are appended to `failures`."""
    tower, dom = sol.tower, sol.tower.dom
    field = tower.const_field
    u = [[e.raw for e in row] for row in sol.entries]
    ok = True
    for word in sol.act.elements:
        gu = [[sol.act.apply_word(word, v) for v in row] for row in u]
        for ell in range(sol.d):
            rho_mat = sol.rho.twisted_image(word, ell)
            alpha = [dom.decode(field.twist(a, ell)) for a in sol.alpha]
            for i in range(sol.n):
                lhs = dom.zero
                for k in range(sol.n):
                    inner = dom.zero
                    for j in range(sol.d):
                        inner = dom.add(inner, dom.mul(gu[k][j], alpha[j]))
                    lhs = dom.add(lhs, dom.mul(dom.decode(rho_mat[i][k]), inner))
                rhs = dom.zero
                for j in range(sol.d):
                    rhs = dom.add(rhs, dom.mul(u[i][j], alpha[j]))
                if lhs != rhs:
                    ok = False
                    if failures is not None:
                        failures.append((word, ell))
                    break
    return ok


def moore_raw(tower, flats):
    """Moore matrix of a flat tuple of tower elements: column j is the j-th
    twist.  Returns (matrix of raws, determinant raw)."""
    dom = tower.dom
    n = len(flats)
    raws = [f.raw for f in flats]
    m = tuple(tuple(dom.twist(raws[i], j) for j in range(n)) for i in range(n))
    return m, mat_det(dom, m)


def moore_matrix(sol):
    """The N x N Moore matrix of the flattened solution and the
    fundamentality flag (nonzero determinant, equivalently F_q-linear
    independence of the entries)."""
    m, det = moore_raw(sol.tower, sol.flat)
    wrapped = tuple(tuple(TowerElement(sol.tower, x) for x in row) for row in m)
    return wrapped, det != sol.tower.dom.zero


class FVector:
    """K-rational recursion constants: u^{(N)} = sum of f_i u^{(i)}."""

    def __init__(self, entries):
        self.entries = tuple(entries)
        self.N = len(self.entries)
        self.field = self.entries[0].field

    @property
    def f0(self):
        return self.entries[0]

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        if isinstance(other, FVector):
            return self.entries == other.entries
        return self.entries == tuple(other)

    def __repr__(self):
        return "FVector(%s)" % ", ".join(repr(e) for e in self.entries)


def f_vector(sol):
    """Solve M(u) f = u^{(N)} and descend every entry to K; asserts the sign
    law f0 = (-1)^{N-1} (det M)^{q-1} after descent."""
    from .tower import descend_to_base
    tower, dom = sol.tower, sol.tower.dom
    m, det = moore_raw(tower, sol.flat)
    if det == dom.zero:
        raise NotFundamentalError("Moore determinant vanishes; the entries are "
                                  "F_q-linearly dependent")
    n = sol.N
    rhs = tuple(dom.twist(f.raw, n) for f in sol.flat)
    coeffs = mat_solve(dom, m, rhs)
    entries = [descend_to_base(TowerElement(tower, c)) for c in coeffs]
    q = tower.const_field.q
    law = dom.pow_(det, q - 1)
    if n % 2 == 0:
        law = dom.neg(law)
    assert descend_to_base(TowerElement(tower, law)) == entries[0], \
        "sign law violated; the solution matrix is inconsistent"
    return FVector(entries)


def companion_matrices(fv):
    """Phi: companion matrix with subdiagonal ones and last column the
    f-vector; Psi = (Phi^T)^{-1}."""
    dom = KDomain(fv.field)
    n = fv.N
    phi = tuple(
        tuple(
            fv[i] if j == n - 1 else (dom.one if i == j + 1 else dom.zero)
            for j in range(n)
        )
        for i in range(n)
    )
    psi = mat_inv(dom, mat_transpose(phi))
    return phi, psi


def twist_model(phi, psi):
    """E_t = theta I_N + a_1 Psi tau + a_2 Psi Psi^{(1)} tau^2 + ... built
    from the base module's coefficients and the companion inverse."""
    dom = phi.dom
    n = len(psi)
    theta_eye = tuple(
        tuple(dom.theta if i == j else dom.zero for j in range(n)) for i in range(n)
    )
    terms = [theta_eye]
    prod = None
    for m, a in enumerate(phi.coeffs, start=1):
        prod = psi if prod is None else mat_mul(dom, prod, mat_twist(dom, psi, m - 1))
        terms.append(mat_scale(dom, prod, a))
    return AndersonModule(dom, OrePolynomial(dom, n, n, terms))


def clear_denominators(module):
    """Conjugate by a scalar c (the monic lcm of entry denominators) so all
    coefficients are integral: A_m goes to c^{q^m - 1} A_m.  Returns the new
    module and c."""
    dom = module.dom
    field = dom.field
    q = field.q
    c = APoly.one(field)
    for _ in range(8):
        leftover = APoly.one(field)
        new_terms = []
        for m_idx, mat in enumerate(module.ore_t.terms):
            scale = KElem(c) ** (q ** m_idx - 1)
            rows = []
            for row in mat:
                out = []
                for x in row:
                    v = x * scale
                    out.append(v)
                    if v.den.degree > 0:
                        g = leftover.gcd(v.den)
                        leftover = (leftover * v.den) // g
                rows.append(tuple(out))
            new_terms.append(tuple(rows))
        if leftover.degree == 0:
            cleared = AndersonModule(
                dom, OrePolynomial(dom, module.dim, module.dim, new_terms))
            return cleared, c
        c = (c * leftover).monic()
    raise ArithmeticError("denominator clearing did not stabilize")


def verify_sep_isomorphism(module, phi, sol):
    """P E_t = phi_t^{(+N)} P with P = (M(u)^T)^{-1}, as an exact identity of
    Ore polynomials with tower coefficients."""
    tower, dom = sol.tower, sol.tower.dom
    n = sol.N
    m, det = moore_raw(tower, sol.flat)
    if det == dom.zero:
        raise NotFundamentalError("Moore determinant vanishes")

    def emb(x):
        return tower.embed_k(x).raw

    p = mat_inv(dom, mat_transpose(m))
    p_ore = OrePolynomial(dom, n, n, [p])
    e_terms = [tuple(tuple(emb(x) for x in row) for row in mat)
               for mat in module.ore_t.terms]
    e_ore = OrePolynomial(dom, n, n, e_terms)
    phi_terms = []
    for a in (phi.dom.theta,) + phi.coeffs:
        ar = emb(a)
        phi_terms.append(tuple(
            tuple(ar if i == j else dom.zero for j in range(n)) for i in range(n)))
    phi_ore = OrePolynomial(dom, n, n, phi_terms)
    return p_ore * e_ore == phi_ore * p_ore
