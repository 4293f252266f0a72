"""Finite separable extensions of K built as chains of quotient rings, with
exact arithmetic, q-power twisting, explicit Galois actions given by
generator images, descent back to K, and the Carlitz cyclotomic tower.

A tower element is stored fully reduced in the multi-level monomial basis:
the raw value at level k is a trimmed little-endian tuple over the level
k-1 domain, with KElem leaves at level 0 (so the zero element is () at
every positive level).  Arithmetic is the generic polynomial engine
working modulo each level polynomial.
"""

from .base import (
    APoly,
    KDomain,
    KElem,
    is_irreducible,
    p_add,
    p_deriv,
    p_gcd,
    p_mod,
    p_mul,
    p_neg,
    p_sub,
    p_trim,
    p_xgcd,
)
from .drinfeld import carlitz, image_of
from .errors import (
    BadWordError,
    InseparableError,
    NotRationalError,
    ReducibleError,
)


class QuotientDomain:
    """below[x]/(m) as a domain of trimmed coefficient tuples."""

    def __init__(self, below, m, qbase):
        self.below = below
        self.m = m
        self.deg = len(m) - 1
        self.char = below.char
        self.qbase = qbase
        self.zero = ()
        self.one = (below.one,)
        self.is_field = True

    def add(self, a, b):
        return p_add(self.below, a, b)

    def sub(self, a, b):
        return p_sub(self.below, a, b)

    def mul(self, a, b):
        return p_mod(self.below, p_mul(self.below, a, b), self.m)

    def neg(self, a):
        return p_neg(self.below, a)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in tower level")
        g, s, _ = p_xgcd(self.below, a, self.m)
        if len(g) != 1:
            raise ZeroDivisionError("element is not a unit modulo the level polynomial")
        c = self.below.inv(g[0])
        return p_mod(self.below, tuple(self.below.mul(x, c) for x in s), self.m)

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

    def twist(self, a, ell=1):
        """a^{q^ell} by square-and-multiply reduction."""
        if ell == 0:
            return a
        return self.pow_(a, self.qbase ** ell)

    def const(self, c):
        return () if c == self.below.zero else (c,)

    def gen(self):
        return p_mod(self.below, (self.below.zero, self.below.one), self.m)

    def decode(self, code):
        return self.const(self.below.decode(code))

    def __eq__(self, other):
        return (isinstance(other, QuotientDomain) and self.below == other.below
                and self.m == other.m)

    def __hash__(self):
        return hash(("QuotientDomain", self.deg))

    def __repr__(self):
        return "QuotientDomain(deg %d over %r)" % (self.deg, self.below)


class Tower:
    """K, or a chain of quotient extensions over it.  Immutable; extend()
    returns a new tower sharing the lower levels."""

    def __init__(self, const_field, _levels=None, _doms=None):
        self.const_field = const_field
        self.levels = _levels or []
        self.doms = _doms or [KDomain(const_field)]
        self.kdom = self.doms[0]
        self.degree = 1
        for m in self.levels:
            self.degree *= len(m) - 1

    @property
    def dom(self):
        return self.doms[-1]

    @property
    def depth(self):
        return len(self.levels)

    @property
    def theta(self):
        return self.embed_k(KElem.theta(self.const_field))

    @property
    def zero(self):
        return TowerElement(self, self.dom.zero)

    @property
    def one(self):
        return TowerElement(self, self.dom.one)

    def extend(self, coeffs):
        """Append a level with the given monic squarefree polynomial
        (coefficients coerced into the current top level)."""
        dom = self.dom
        m = p_trim(dom, tuple(self._coerce_raw(c) for c in coeffs))
        if len(m) < 2:
            raise ValueError("level polynomial must have positive degree")
        if m[-1] != dom.one:
            raise ValueError("level polynomial must be monic")
        dm = p_deriv(dom, m, dom.char)
        if p_gcd(dom, m, dm) != (dom.one,):
            raise InseparableError("level polynomial is not squarefree")
        new_dom = QuotientDomain(dom, m, self.const_field.q)
        return Tower(self.const_field, self.levels + [m], self.doms + [new_dom])

    def _coerce_raw(self, x):
        if isinstance(x, TowerElement):
            if x.tower == self:
                return x.raw
            return self.lift_from(x)
        if isinstance(x, KElem):
            return self.embed_k(x).raw
        if isinstance(x, APoly):
            return self.embed_k(KElem(x)).raw
        if isinstance(x, int):
            return self.dom.decode(x % self.const_field.size)
        raise TypeError("cannot coerce %r into the tower" % (x,))

    def lift_from(self, e):
        """Raw of an element of an ancestor tower, lifted to this one."""
        if (self.depth < e.tower.depth
                or self.levels[:e.tower.depth] != e.tower.levels
                or self.const_field != e.tower.const_field):
            raise ValueError("element does not come from an ancestor tower")
        raw = e.raw
        for lvl in range(e.tower.depth, self.depth):
            raw = () if raw == self.doms[lvl].zero else (raw,)
        return raw

    def element(self, raw):
        return TowerElement(self, raw)

    def embed_k(self, x):
        """K -> L."""
        if isinstance(x, APoly):
            x = KElem(x)
        if x.field != self.const_field:
            raise ValueError("element over the wrong constant field")
        raw = x
        for lvl in range(self.depth):
            raw = () if raw == self.doms[lvl].zero else (raw,)
        return TowerElement(self, raw)

    def gen(self, i=None):
        """The generator of level i (default: top level), as an element."""
        if not self.levels:
            raise ValueError("the trivial tower has no generators")
        if i is None:
            i = self.depth - 1
        raw = self.doms[i + 1].gen()
        for _ in range(i + 1, self.depth):
            raw = (raw,)
        return TowerElement(self, raw)

    def __eq__(self, other):
        return (isinstance(other, Tower) and self.const_field == other.const_field
                and self.levels == other.levels)

    def __hash__(self):
        return hash(("Tower", self.const_field, self.depth, self.degree))

    def __repr__(self):
        return "Tower(degree %d over F_%d(θ))" % (self.degree, self.const_field.size)


class TowerElement:
    __slots__ = ("tower", "raw")

    def __init__(self, tower, raw):
        self.tower = tower
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, TowerElement) and other.tower == self.tower:
            return other.raw
        return self.tower._coerce_raw(other)

    def __add__(self, other):
        return TowerElement(self.tower, self.tower.dom.add(self.raw, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        d = self.tower.dom
        return TowerElement(self.tower, d.sub(self.raw, self._coerce(other)))

    def __rsub__(self, other):
        d = self.tower.dom
        return TowerElement(self.tower, d.sub(self._coerce(other), self.raw))

    def __mul__(self, other):
        return TowerElement(self.tower, self.tower.dom.mul(self.raw, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return TowerElement(self.tower, self.tower.dom.neg(self.raw))

    def __truediv__(self, other):
        d = self.tower.dom
        return TowerElement(self.tower, d.mul(self.raw, d.inv(self._coerce(other))))

    def __pow__(self, n):
        return TowerElement(self.tower, self.tower.dom.pow_(self.raw, n))

    def twist(self, ell=1):
        return TowerElement(self.tower, self.tower.dom.twist(self.raw, ell))

    @property
    def is_zero(self):
        return self.raw == self.tower.dom.zero

    def __eq__(self, other):
        if isinstance(other, TowerElement):
            return self.tower == other.tower and self.raw == other.raw
        try:
            return self.raw == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.tower, _hashable(self.raw)))

    def __repr__(self):
        return "TowerElement(%r)" % (self.raw,)


def _hashable(raw):
    if isinstance(raw, tuple):
        return tuple(_hashable(r) for r in raw)
    return raw


def frobenius_twist(e, ell):
    """e^{q^ell} in the tower."""
    return e.twist(ell)


def descend_to_base(e):
    """The K-value of a tower element; NotRationalError when any
    higher-level coordinate is nonzero."""
    raw = e.raw
    for _ in range(e.tower.depth):
        if raw == ():
            return KElem.zero(e.tower.const_field)
        if len(raw) > 1:
            raise NotRationalError("element is irrational over the next level down",
                                   coordinates=raw)
        raw = raw[0]
    return raw


class GaloisActionTable:
    """A finite group acting on a tower: generator names, the image of every
    tower generator under each group generator, relation words, and the
    explicit list of group elements as words.  Words act right-to-left:
    (g, h) sends x to g(h(x))."""

    def __init__(self, tower, images, relations, elements):
        self.tower = tower
        self.images = {name: tuple(tower._coerce_raw(img) for img in imgs)
                       for name, imgs in images.items()}
        for name, imgs in self.images.items():
            if len(imgs) != tower.depth:
                raise ValueError("generator %r must map all %d tower generators"
                                 % (name, tower.depth))
        self.relations = [tuple(w) for w in relations]
        self.elements = [tuple(w) for w in elements]
        self._validate()

    @property
    def order(self):
        return len(self.elements)

    def _lift(self, raw, level):
        """Lift a doms[level] value to the top."""
        for lvl in range(level, self.tower.depth):
            raw = () if raw == self.tower.doms[lvl].zero else (raw,)
        return raw

    def apply_gen(self, name, raw):
        """Apply one group generator to a top-level raw value."""
        if name not in self.images:
            raise BadWordError("unknown generator %r" % (name,))
        return self._apply(name, raw, self.tower.depth)

    def _apply(self, name, raw, level):
        if level == 0:
            return self._lift(raw, 0)  # K is fixed pointwise
        dom = self.tower.dom
        img = self.images[name][level - 1]
        acc = dom.zero
        for c in reversed(raw):
            acc = dom.add(dom.mul(acc, img), self._apply(name, c, level - 1))
        return acc

    def apply_word(self, word, raw):
        for name in reversed(tuple(word)):
            raw = self.apply_gen(name, raw)
        return raw

    def _validate(self):
        tower = self.tower
        for name in self.images:
            for i, m in enumerate(tower.levels):
                # the image must be a root of the level polynomial with the
                # action applied to its coefficients
                img = self.images[name][i]
                dom = tower.dom
                acc = dom.zero
                for c in reversed(m):
                    gc = self._apply(name, self._lift(c, i), tower.depth)
                    acc = dom.add(dom.mul(acc, img), gc)
                if acc != dom.zero:
                    raise ValueError("image of level-%d generator under %r is not a root"
                                     % (i, name))
        for rel in self.relations:
            for i in range(tower.depth):
                g = tower.gen(i).raw
                if self.apply_word(rel, g) != g:
                    raise ValueError("relation %r does not act as the identity" % (rel,))

    def __repr__(self):
        return ("GaloisActionTable(%d generators, order %d)"
                % (len(self.images), self.order))


def galois_apply(act, word, e):
    """Apply a group word (sequence of generator names) to a tower element."""
    if isinstance(word, str):
        word = (word,)
    return TowerElement(act.tower, act.apply_word(word, e.raw))


def carlitz_cyclotomic_tower(f):
    """K(lambda) for lambda a generator of the f-torsion of the rank-1
    theta + tau module, f irreducible: one level with polynomial C_f(x)/x,
    and (A/f)* acting through a |-> C_a(lambda)."""
    if not is_irreducible(f):
        raise ReducibleError("cyclotomic construction needs an irreducible f")
    return torsion_tower(f.field, f.monic())


def torsion_tower(spec, f):
    """Tower from the reduced torsion polynomial C_f(x)/x of a monic f and
    the action of the unit classes of A/(f); requires C_f(x)/x squarefree.
    Shared by the cyclotomic construction and the prime-power example."""
    C = carlitz(spec)
    cf = image_of(f, C)
    q = spec.q
    kdom = KDomain(spec)
    psi = [kdom.zero] * (q ** f.degree)
    for i in range(cf.degree + 1):
        psi[q ** i - 1] = cf.scalar_coeff(i)
    tower = Tower(spec).extend(psi)
    lam = tower.gen(0)
    dom = tower.dom

    units = []
    for code in range(1, q ** f.degree):
        a = APoly.from_code(spec, code)
        if a.gcd(f).degree == 0:
            units.append(a)

    images = {}
    relations = []
    for a in units:
        image = image_of(a, C).apply((lam.raw,), target=dom,
                                     embed=lambda v: tower.embed_k(v).raw)[0]
        name = "s%d" % a.code
        images[name] = [tower.element(image)]
        acc = a % f
        order = 1
        while not (acc - 1).is_zero:
            acc = (acc * a) % f
            order += 1
        relations.append((name,) * order)
    elements = [("s%d" % a.code,) for a in units]
    act = GaloisActionTable(tower, images, relations, elements)
    return tower, act


class RepresentationTable:
    """A matrix representation of the presented group: one invertible matrix
    of constant-field codes per generator name.  d is the degree over F_q of
    the subfield the entries generate (the declared ambient degree when the
    constants ring is not a field)."""

    def __init__(self, field, images, relations=()):
        from .ore import mat_eye, mat_inv
        self.field = field
        self.images = {}
        self.n = None
        for name, rows in images.items():
            m = tuple(tuple(int(c) % field.size for c in row) for row in rows)
            if self.n is None:
                self.n = len(m)
            if len(m) != self.n or any(len(row) != self.n for row in m):
                raise ValueError("generator %r image must be %dx%d" % (name, self.n, self.n))
            mat_inv(field, m)
            self.images[name] = m
        if not self.images:
            raise ValueError("a representation needs at least one generator")
        self.relations = [tuple(w) for w in relations]
        eye = mat_eye(field, self.n)
        for rel in self.relations:
            if self.image_of_word(rel) != eye:
                raise ValueError("relation %r does not map to the identity" % (rel,))
        self.d = self._entry_degree()

    def _entry_degree(self):
        field = self.field
        ambient = getattr(field, "d", 1)
        entries = [c for m in self.images.values() for row in m for c in row]
        for e in range(1, ambient):
            if ambient % e:
                continue
            if all(field.twist(c, e) == c for c in entries):
                return e
        return ambient

    @classmethod
    def trivial(cls, field, names):
        return cls(field, {name: ((field.one,),) for name in names})

    def image_of_word(self, word):
        from .ore import mat_eye, mat_mul
        if isinstance(word, str):
            word = (word,)
        m = mat_eye(self.field, self.n)
        for name in word:
            if name not in self.images:
                raise BadWordError("unknown generator %r" % (name,))
            m = mat_mul(self.field, m, self.images[name])
        return m

    def twisted_image(self, word, ell):
        """rho^{(ell)}(word): entrywise q^ell power of the image matrix."""
        m = self.image_of_word(word)
        if ell == 0:
            return m
        return tuple(tuple(self.field.twist(c, ell) for c in row) for row in m)

    def __repr__(self):
        return ("RepresentationTable(n=%d, d=%d, %d generators)"
                % (self.n, self.d, len(self.images)))


def rebase_constants(tower, d):
    """The same tower with constants enlarged to F_{q^d} (or to an explicit
    constants ring passed in place of d); returns the new tower and the
    embedding of old elements."""
    from .base import ExtConstField
    if isinstance(d, int):
        if d == 1:
            return tower, lambda e: e
        E = ExtConstField(tower.const_field, d)
    else:
        E = d

    def embed_k_elem(x):
        return KElem(APoly(E, x.num.coeffs), APoly(E, x.den.coeffs))

    def embed_raw(raw, depth):
        if depth == 0:
            return embed_k_elem(raw)
        return tuple(embed_raw(c, depth - 1) for c in raw)

    new = Tower(E)
    for i, m in enumerate(tower.levels):
        coeffs = [new.element(embed_raw(c, i)) for c in m]
        try:
            new = new.extend(coeffs)
        except InseparableError:
            raise InseparableError("level %d becomes non-squarefree over F_{q^%d}"
                                   % (i + 1, d))

    def embed(e):
        return new.element(embed_raw(e.raw, tower.depth))

    return new, embed
