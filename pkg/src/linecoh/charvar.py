"""Character torus scans and component membership for first cohomology jump
loci, with the built-in eight-line deleted-B3 arrangement and its known
thirteen-component decomposition.

A torus point assigns a root of unity to every projective line subject to
the product-one constraint; scanning enumerates the affine exponents and
derives the infinity exponent.  h^1 at a nontrivial point is computed by
moving some line with q != 1 to infinity and running the band kernel there.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd

from .geometry import ProjArrangement
from .localsystem import make_local_system
from .resband import h1_via_bands


class BudgetExceededError(RuntimeError):
    """The requested enumeration is larger than the configured budget."""


def _lcm(a, b):
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class TorusPoint:
    """Exponent vector over all projective lines, mod `order`, summing to 0."""

    exponents: tuple
    order: int

    def is_trivial(self):
        return all(e % self.order == 0 for e in self.exponents)

    def key(self):
        return (self.order, tuple(e % self.order for e in self.exponents))


@dataclass(frozen=True)
class ComponentFamily:
    """A parametrized family of torus points.

    Coordinate i is (-1)^signs[i] * prod_j s_j^powers[i][j] for parameters
    s_j in the unit torus.  Power columns sum to zero and the sign vector
    has even weight, so every produced point satisfies the product-one
    constraint.  Every parameter must be pinned by some coordinate equal to
    s_j on the nose; membership testing relies on that.
    """

    name: str
    signs: tuple
    powers: tuple

    def __post_init__(self):
        k = self.nparams
        if sum(self.signs) % 2 != 0:
            raise ValueError(f"{self.name}: sign vector breaks the torus constraint")
        for j in range(k):
            if sum(row[j] for row in self.powers) != 0:
                raise ValueError(f"{self.name}: power column {j} breaks the constraint")
            if not any(
                abs(row[j]) == 1 and all(v == 0 for jj, v in enumerate(row) if jj != j)
                for row in self.powers
            ):
                raise ValueError(f"{self.name}: parameter {j} is not pinned")

    @property
    def nparams(self):
        return len(self.powers[0])

    @property
    def nlines(self):
        return len(self.powers)

    def point(self, params, order):
        """The torus point at parameters s_j = zeta_order^{params[j]}."""
        if len(params) != self.nparams:
            raise ValueError("wrong number of parameters")
        n = order if not any(self.signs) else _lcm(order, 2)
        step = n // order
        exps = []
        for i in range(self.nlines):
            e = self.signs[i] * (n // 2) if self.signs[i] else 0
            e += step * sum(m * t for m, t in zip(self.powers[i], params))
            exps.append(e % n)
        pt = TorusPoint(tuple(exps), n)
        if sum(pt.exponents) % n != 0:
            raise ValueError(f"{self.name}: parametrization violates the constraint")
        return pt

    def contains(self, point):
        """Exponent-linear solve: is the torus point in the family?"""
        n = point.order
        m = n if not any(self.signs) else _lcm(n, 2)
        lift = m // n
        exps = [e * lift % m for e in point.exponents]
        if len(exps) != self.nlines:
            return False
        params = [None] * self.nparams
        for j in range(self.nparams):
            for i, row in enumerate(self.powers):
                if abs(row[j]) == 1 and all(
                    v == 0 for jj, v in enumerate(row) if jj != j
                ):
                    t = exps[i] - self.signs[i] * (m // 2)
                    params[j] = (row[j] * t) % m
                    break
        for i in range(self.nlines):
            want = (
                self.signs[i] * (m // 2)
                + sum(r * t for r, t in zip(self.powers[i], params))
            ) % m
            if want != exps[i]:
                return False
        return True


def deleted_b3():
    """The eight-line projective arrangement (line 8 at infinity) whose jump
    locus decomposes into six triple-point families, one quadruple-point
    family, five three-orbit families, and one translated curve."""
    proj = ProjArrangement(
        [
            (0, 1, 0),  # H1: y = 0
            (0, 1, -1),  # H2: y = z
            (1, 0, 0),  # H3: x = 0
            (1, 0, -1),  # H4: x = z
            (1, -1, 1),  # H5: x - y + z = 0
            (1, -1, 0),  # H6: x = y
            (1, -1, -1),  # H7: x - y - z = 0
            (0, 0, 1),  # H8: z = 0
        ],
        infinity_index=7,
    )

    def local(name, triple):
        powers = [(0, 0)] * 8
        powers[triple[0]] = (1, 0)
        powers[triple[1]] = (0, 1)
        powers[triple[2]] = (-1, -1)
        return ComponentFamily(name=name, signs=(0,) * 8, powers=tuple(powers))

    def braid(name, pairs):
        powers = [(0, 0)] * 8
        cols = ((1, 0), (0, 1), (-1, -1))
        for col, (i, j) in zip(cols, pairs):
            powers[i] = col
            powers[j] = col
        return ComponentFamily(name=name, signs=(0,) * 8, powers=tuple(powers))

    quad = [(0, 0, 0)] * 8
    quad[4], quad[5], quad[6], quad[7] = (1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)
    catalog = (
        local("C_136", (0, 2, 5)),
        local("C_147", (0, 3, 6)),
        local("C_235", (1, 2, 4)),
        local("C_128", (0, 1, 7)),
        local("C_246", (1, 3, 5)),
        local("C_348", (2, 3, 7)),
        ComponentFamily(name="C_5678", signs=(0,) * 8, powers=tuple(quad)),
        braid("C_(14|23|68)", ((0, 3), (1, 2), (5, 7))),
        braid("C_(28|36|45)", ((1, 7), (2, 5), (3, 4))),
        braid("C_(15|26|38)", ((0, 4), (1, 5), (2, 7))),
        braid("C_(18|37|46)", ((0, 7), (2, 6), (3, 5))),
        braid("C_(16|27|48)", ((0, 5), (1, 6), (3, 7))),
        ComponentFamily(
            name="Omega",
            signs=(0, 1, 1, 0, 0, 1, 0, 1),
            powers=((1,), (-1,), (-1,), (1,), (2,), (0,), (-2,), (0,)),
        ),
    )
    return proj, catalog


def h1_at_point(proj, point, backend="cyclotomic", eps=1e-9):
    """h^1 at a nontrivial torus point, through the chart of the first line
    with q != 1 (there the infinity monodromy is that q, hence nontrivial)."""
    n = point.order
    pivot = next(
        (j for j in range(proj.n) if point.exponents[j] % n != 0), None
    )
    if pivot is None:
        raise ValueError("trivial point: every monodromy equals 1")
    chart = proj.chart(pivot)
    exps = [point.exponents[old] for old in chart.to_old]
    system = make_local_system(exps, order=n, backend=backend, eps=eps)
    return h1_via_bands(system, chart.arrangement).dim


@dataclass(frozen=True)
class ScanHit:
    point: TorusPoint
    h1: int
    families: tuple


def torsion_scan(proj, order, budget=2_000_000, catalog=None, backend="cyclotomic"):
    """All torus points of order dividing `order` with h^1 >= 1.

    Enumerates exponents of the non-infinity lines (infinity is derived),
    skips the trivial character, and reports hits sorted by exponent
    vector.  ``catalog`` attaches the names of matching families.
    """
    if order < 2:
        return []
    affine = proj.affine_ids()
    total = order ** len(affine)
    if total > budget:
        raise BudgetExceededError(
            f"{total} points at order {order} exceeds the budget {budget}"
        )
    inf = proj.infinity_index
    hits = []
    for combo in product(range(order), repeat=len(affine)):
        if not any(combo):
            continue
        exps = [0] * proj.n
        for j, e in zip(affine, combo):
            exps[j] = e
        exps[inf] = -sum(combo) % order
        point = TorusPoint(tuple(exps), order)
        dim = h1_at_point(proj, point, backend=backend)
        if dim >= 1:
            names = ()
            if catalog is not None:
                names = tuple(f.name for f in catalog if f.contains(point))
            hits.append(ScanHit(point=point, h1=dim, families=names))
    return hits


@dataclass(frozen=True)
class MembershipRecord:
    params: tuple
    point: TorusPoint
    h1: int


@dataclass(frozen=True)
class MembershipReport:
    family: str
    records: tuple
    supported: bool  # every sampled point has h^1 >= 1


def component_membership(family, samples, proj, order, backend="cyclotomic"):
    """Evaluate h^1 at sampled parameter values of the family.

    ``samples`` is a list of exponent tuples; parameter j takes the value
    zeta_order^{t_j}.  The family is supported when every sample confirms
    h^1 >= 1.
    """
    records = []
    ok = True
    for params in samples:
        point = family.point(tuple(params), order)
        if point.is_trivial():
            raise ValueError("sample hits the trivial character")
        dim = h1_at_point(proj, point, backend=backend)
        records.append(MembershipRecord(params=tuple(params), point=point, h1=dim))
        ok = ok and dim >= 1
    return MembershipReport(family=family.name, records=tuple(records), supported=ok)
