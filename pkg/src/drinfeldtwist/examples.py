"""The two worked twist configurations used across tests and the CLI: the
degree-six splitting tower with its two-dimensional standard representation,
and the order-two torsion character with formal constants.

Both are returned as frozen bundles so every consumer (tests, the verify
subcommand, the acceptance gate) reconstructs them identically.
"""

from collections import namedtuple

from .base import APoly, ExtConstField, FieldSpec, KElem
from .tower import (
    GaloisActionTable,
    RepresentationTable,
    Tower,
    rebase_constants,
)
from .twist import FlatSolution, SolutionMatrix


S3Config = namedtuple("S3Config", ["tower", "act", "rho", "y", "zetas"])

TorsionConfig = namedtuple(
    "TorsionConfig",
    ["tower", "act", "lam", "solution", "ring", "rebased", "verified"])


def s3_configuration(q=5):
    """Splitting tower of x^3 + theta*x + 1 with the full symmetric group of
    the three roots acting, the two-dimensional standard representation on
    the generators r (3-cycle) and s (transposition of the first two roots),
    and the averaging seed (zeta1, 0)."""
    spec = FieldSpec(q)
    th = KElem.theta(spec)
    t1 = Tower(spec).extend([1, th, 0, 1])
    z1 = t1.gen(0)
    tower = t1.extend([z1 * z1 + th, z1, 1])
    z1 = tower.gen(0)
    z2 = tower.gen(1)
    z3 = -(z1 + z2)
    act = GaloisActionTable(
        tower,
        {"r": [z2, z3], "s": [z2, z1]},
        relations=[("r", "r", "r"), ("s", "s"), ("s", "r", "s", "r")],
        elements=[(), ("r",), ("r", "r"), ("s",), ("s", "r"), ("s", "r", "r")],
    )
    m1 = q - 1
    rho = RepresentationTable(
        spec,
        {"r": ((0, m1), (1, m1)), "s": ((m1, 1), (0, 1))},
        relations=[("r", "r", "r"), ("s", "s"), ("s", "r", "s", "r")],
    )
    y = (z1, tower.zero)
    return S3Config(tower, act, rho, y, (z1, z2, z3))


def torsion_character_configuration():
    """The q=2 order-two torsion setup: lambda generates the quadratic field
    cut out by y^2 + (theta+1)y + (theta+1) (the non-rational factor of the
    reduced torsion polynomial of theta^2+1), the Galois generator sends
    lambda to theta*lambda + lambda^2, and the character takes it to the
    formal square root of one in F_2[x]/(x^2+1).  The hand-built solution is
    u = (lambda, sigma(lambda)) against the basis (1, x)."""
    spec = FieldSpec(2)
    th = KElem.theta(spec)
    tower = Tower(spec).extend([th + 1, th + 1, 1])
    lam = tower.gen(0)
    thel = tower.theta
    sigma_lam = thel * lam + lam * lam
    act = GaloisActionTable(
        tower,
        {"s": [sigma_lam]},
        relations=[("s", "s")],
        elements=[(), ("s",)],
    )
    solution = FlatSolution(tower, (lam, sigma_lam))

    ring = ExtConstField(spec, 2, modulus=(1, 0, 1), allow_reducible=True)
    rebased, embed = rebase_constants(tower, ring)
    act_f = GaloisActionTable(
        rebased,
        {"s": [embed(sigma_lam)]},
        relations=[("s", "s")],
        elements=[(), ("s",)],
    )
    rho = RepresentationTable(ring, {"s": ((2,),)}, relations=[("s", "s")])
    verified = SolutionMatrix(
        rebased, act_f, rho, (1, 2),
        [[embed(lam), embed(sigma_lam)]])
    return TorsionConfig(tower, act, lam, solution, ring, rebased, verified)


def expected_f_vectors():
    """The frozen f-vector constants for both configurations."""
    f2 = FieldSpec(2)
    f5 = FieldSpec(5)
    th2 = APoly.gen(f2)
    th5 = APoly.gen(f5)
    torsion = (KElem(th2 ** 2 + 1), KElem(th2 ** 2 + th2))
    s3 = (
        KElem(4 * th5 ** 6 + 4 * th5 ** 3 + 1),
        KElem(th5 ** 10 + th5 ** 4 + 2 * th5),
    )
    return {"torsion": torsion, "s3": s3}
