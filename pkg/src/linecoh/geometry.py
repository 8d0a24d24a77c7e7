"""Exact rational geometry of affine and projective line arrangements.

Lines carry Fraction coefficients of a*x + b*y + c = 0.  Chambers are
enumerated as sign vectors with exact Fourier-Motzkin feasibility tests,
boundedness and opposite-chamber pairing come from recession cones, and a
generic flag is realized by an explicit rational change of coordinates.
Projective arrangements support coning and moving any member to infinity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

MAX_LINES = 16


class ArrangementError(ValueError):
    """Malformed or unsupported arrangement input."""


class ArrangementTooLargeError(ArrangementError):
    """More lines than the exact chamber enumeration handles (see MAX_LINES)."""


class FlagError(ArrangementError):
    """No valid generic flag; requires at least one intersection point."""


def _fraction(token):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ArrangementError(f"malformed rational {token!r}") from exc


def canonical_triple(a, b, c):
    """Scale (a, b, c) so its first nonzero entry equals 1."""
    for lead in (a, b, c):
        if lead:
            return (a / lead, b / lead, c / lead)
    raise ArrangementError("all-zero coefficient triple")


@dataclass(frozen=True)
class Line:
    """The line a*x + b*y + c = 0 with (a, b) != (0, 0)."""

    a: Fraction
    b: Fraction
    c: Fraction
    id: int

    @classmethod
    def canonical(cls, a, b, c, id):
        a, b, c = Fraction(a), Fraction(b), Fraction(c)
        if a == 0 and b == 0:
            raise ArrangementError(f"degenerate line 0*x + 0*y + {c} = 0")
        return cls(*canonical_triple(a, b, c), id)

    def evaluate(self, x, y):
        return self.a * x + self.b * y + self.c

    def triple(self):
        return (self.a, self.b, self.c)

    def direction_key(self):
        """Canonical normal direction; equal keys <=> parallel lines."""
        return canonical_triple(self.a, self.b, 0)[:2]


@dataclass(eq=False)
class Chamber:
    """Open region cut out by the arrangement, encoded by its sign vector.

    signs[k] is +1 or -1: the sign of line k's equation on the region.
    ``opposite`` points to the antipodal unbounded chamber (None when
    bounded); ``flag_degree`` is filled in by the flag classification.
    """

    signs: tuple
    bounded: bool
    opposite: "Chamber | None" = field(default=None, repr=False)
    flag_degree: int | None = None
    index: int = -1

    def sign_string(self):
        return "".join("+" if s > 0 else "-" for s in self.signs)


@dataclass(frozen=True)
class AffinePoint:
    x: Fraction
    y: Fraction
    incident: frozenset

    @property
    def multiplicity(self):
        return len(self.incident)


@dataclass(frozen=True)
class IntersectionPoint:
    """Projective intersection point with its full incidence set."""

    coords: tuple
    incident: frozenset

    @property
    def multiplicity(self):
        return len(self.incident)

    @property
    def is_multiple(self):
        return len(self.incident) >= 3


def _strictly_feasible(constraints):
    """Is the open set {a*x + b*y + c > 0 for all rows} nonempty?

    Fourier-Motzkin elimination of x, then interval arithmetic in y; exact.
    """
    lows, ups, ycons = [], [], []
    for a, b, c in constraints:
        if a > 0:
            lows.append((-b / a, -c / a))
        elif a < 0:
            ups.append((-b / a, -c / a))
        else:
            ycons.append((b, c))
    for pl, ql in lows:
        for pu, qu in ups:
            ycons.append((pu - pl, qu - ql))
    ylow = yup = None
    for alpha, beta in ycons:
        if alpha > 0:
            v = -beta / alpha
            if ylow is None or v > ylow:
                ylow = v
        elif alpha < 0:
            v = -beta / alpha
            if yup is None or v < yup:
                yup = v
        elif beta <= 0:
            return False
    return ylow is None or yup is None or ylow < yup


def _enumerate_sign_vectors(lines):
    """All feasible sign vectors, by depth-first prefix pruning."""
    n = len(lines)
    if n > MAX_LINES:
        raise ArrangementTooLargeError(f"{n} lines exceeds the bound {MAX_LINES}")
    found = []
    cons = []
    signs = []

    def rec(k):
        if k == n:
            found.append(tuple(signs))
            return
        ln = lines[k]
        for s in (1, -1):
            cons.append((s * ln.a, s * ln.b, s * ln.c))
            signs.append(s)
            if _strictly_feasible(cons):
                rec(k + 1)
            cons.pop()
            signs.pop()

    rec(0)
    return sorted(found)


def _canonical_direction(d):
    for lead in d:
        if lead:
            t = abs(lead)
            return (d[0] / t, d[1] / t)
    return None


def _recession_rays(lines, signs):
    """Directions d with sign_k * <normal_k, d> >= 0 for all k, among the
    finitely many candidate rays parallel to some line."""
    seen = set()
    rays = []
    for ln in lines:
        for d in ((-ln.b, ln.a), (ln.b, -ln.a)):
            dd = _canonical_direction(d)
            if dd in seen:
                continue
            seen.add(dd)
            if all(
                s * (lk.a * dd[0] + lk.b * dd[1]) >= 0
                for s, lk in zip(signs, lines)
            ):
                rays.append(dd)
    return rays


def _compute_chambers(lines):
    vectors = _enumerate_sign_vectors(lines)
    chambers = []
    rays_of = []
    by_signs = {}
    for idx, signs in enumerate(vectors):
        rays = _recession_rays(lines, signs)
        ch = Chamber(signs=signs, bounded=not rays, index=idx)
        chambers.append(ch)
        rays_of.append(rays)
        by_signs[signs] = ch
    for ch, rays in zip(chambers, rays_of):
        if ch.bounded:
            continue
        neg = tuple(-s for s in ch.signs)
        cand = by_signs.get(neg)
        if cand is not None and not cand.bounded:
            ch.opposite = cand
            continue
        # 1-dimensional recession cone (band end): keep the signs of lines
        # parallel to the ray, flip the rest.
        d = rays[0]
        target = tuple(
            s if ln.a * d[0] + ln.b * d[1] == 0 else -s
            for s, ln in zip(ch.signs, lines)
        )
        opp = by_signs.get(target)
        if opp is None or opp.bounded:
            raise ArrangementError("opposite chamber pairing failed")
        ch.opposite = opp
    return chambers


def sep(c1, c2, lines):
    """Ids of the lines separating two chambers of the same arrangement."""
    return frozenset(
        lines[k].id for k in range(len(lines)) if c1.signs[k] != c2.signs[k]
    )


def _affine_intersections(lines):
    coords = set()
    for l1, l2 in combinations(lines, 2):
        det = l1.a * l2.b - l2.a * l1.b
        if det == 0:
            continue
        x = (l2.c * l1.b - l1.c * l2.b) / det
        y = (l1.c * l2.a - l2.c * l1.a) / det
        coords.add((x, y))
    pts = []
    for x, y in sorted(coords):
        inc = frozenset(ln.id for ln in lines if ln.evaluate(x, y) == 0)
        pts.append(AffinePoint(x, y, inc))
    return tuple(pts)


class Arrangement:
    """A finite list of distinct affine lines; ids equal list positions."""

    def __init__(self, coefficients):
        lines = []
        seen = {}
        for i, (a, b, c) in enumerate(coefficients):
            ln = Line.canonical(a, b, c, id=i)
            key = ln.triple()
            if key in seen:
                raise ArrangementError(f"duplicate line (rows {seen[key]} and {i})")
            seen[key] = i
            lines.append(ln)
        if not lines:
            raise ArrangementError("empty arrangement")
        self.lines = tuple(lines)
        self._chambers = None
        self._points = None
        self._flags = {}

    @property
    def n(self):
        return len(self.lines)

    def __repr__(self):
        return f"Arrangement({self.n} lines)"

    def chambers(self):
        if self._chambers is None:
            self._chambers = tuple(_compute_chambers(self.lines))
        return self._chambers

    def intersection_points(self):
        if self._points is None:
            self._points = _affine_intersections(self.lines)
        return self._points

    def point_index_sum(self):
        """Sum of (multiplicity - 1) over all affine intersection points."""
        return sum(p.multiplicity - 1 for p in self.intersection_points())

    def flagged(self, variant=0):
        if variant not in self._flags:
            self._flags[variant] = choose_flag(self, variant)
        return self._flags[variant]


def chambers(arrangement):
    return arrangement.chambers()


# ---------------------------------------------------------------------------
# generic flag


@dataclass(frozen=True)
class FlagFrame:
    """Rational coordinate change p' = matrix @ p + offset realizing the flag,
    plus the induced renumbering and sign normalization of the lines."""

    matrix: tuple
    offset: tuple
    order: tuple  # flag position -> original line id
    sign_flips: tuple  # per flag position

    def apply(self, x, y):
        (m00, m01), (m10, m11) = self.matrix
        return (m00 * x + m01 * y + self.offset[0], m10 * x + m11 * y + self.offset[1])


class FlaggedArrangement:
    """An arrangement in flag coordinates.

    Lines are renumbered so their positive x-axis intercepts increase, each
    equation is normalized to be negative at the origin, and every
    intersection point lies strictly above the x-axis.  Chambers carry flag
    degrees; ``u_index[p]`` is the chamber index of the p-th chamber met
    along the axis (U_0 at the origin, then U_1, ..., U_{n-1}, and finally
    the chamber opposite U_0).
    """

    def __init__(self, frame, lines, chambers, u_index, ch2, intercepts):
        self.frame = frame
        self.lines = lines
        self.chambers = chambers
        self.u_index = u_index
        self.ch2 = ch2
        self.intercepts = intercepts
        self._structure = None

    @property
    def n(self):
        return len(self.lines)

    def __repr__(self):
        return f"FlaggedArrangement({self.n} lines, {len(self.chambers)} chambers)"

    @property
    def ch0(self):
        return (self.u_index[0],)

    @property
    def ch1(self):
        return tuple(self.u_index[1:])


def _mu_candidates(limit):
    yield Fraction(0)
    k = 1
    while k <= limit:
        yield Fraction(k)
        yield Fraction(-k)
        yield Fraction(1, k + 1)
        yield Fraction(-1, k + 1)
        k += 1


def choose_flag(arrangement, variant=0):
    """Realize a generic flag and classify the chambers by flag degree."""
    lines = arrangement.lines
    pts = arrangement.intersection_points()
    if not pts:
        raise FlagError("arrangement has no intersection point")
    n = len(lines)
    # shear (x, y) -> (x, y - mu*x): afterwards no line may be parallel to
    # the x-axis, i.e. a + mu*b != 0 for every line.
    mu = None
    skip = variant
    for cand in _mu_candidates(2 * (n + variant + 2)):
        if all(ln.a + cand * ln.b != 0 for ln in lines):
            if skip == 0:
                mu = cand
                break
            skip -= 1
    if mu is None:
        raise FlagError("shear search exhausted")
    sheared = [(ln.a + mu * ln.b, ln.b, ln.c) for ln in lines]
    spts = [(p.x, p.y - mu * p.x) for p in pts]
    ty = min(v for _, v in spts) - 1
    shifted = [(a, b, c + b * ty) for a, b, c in sheared]
    intercepts = [-c / a for a, b, c in shifted]
    tx = min(intercepts) - 1
    placed = [(a, b, c + a * tx) for a, b, c in shifted]
    intercepts = [x - tx for x in intercepts]
    order = sorted(range(n), key=lambda k: intercepts[k])
    flags = []
    flagged_lines = []
    for pos, k in enumerate(order):
        a, b, c = placed[k]
        flip = c > 0
        if flip:
            a, b, c = -a, -b, -c
        flags.append(flip)
        flagged_lines.append(Line(a, b, c, id=lines[k].id))
    sorted_intercepts = [intercepts[k] for k in order]
    # verify the flag conditions outright
    if any(ln.a == 0 for ln in flagged_lines):
        raise FlagError("a line is parallel to the flag axis")
    if any(v - ty <= 0 for _, v in spts):
        raise FlagError("an intersection point is not above the flag axis")
    if any(
        x2 <= x1 for x1, x2 in zip(sorted_intercepts, sorted_intercepts[1:])
    ) or sorted_intercepts[0] <= 0:
        raise FlagError("axis intercepts are not strictly increasing and positive")
    if any(ln.c >= 0 for ln in flagged_lines):
        raise FlagError("origin is not in every negative half-plane")

    frame = FlagFrame(
        matrix=((Fraction(1), Fraction(0)), (-mu, Fraction(1))),
        offset=(Fraction(-tx), Fraction(-ty)),
        order=tuple(lines[k].id for k in order),
        sign_flips=tuple(flags),
    )
    chs = _compute_chambers(flagged_lines)
    by_signs = {ch.signs: ch for ch in chs}
    u_index = []
    for p in range(n + 1):
        target = tuple(1 if k < p else -1 for k in range(n))
        ch = by_signs.get(target)
        if ch is None:
            raise FlagError("expected axis chamber is infeasible")
        u_index.append(ch.index)
    u_set = set(u_index)
    ch2 = tuple(ch.index for ch in chs if ch.index not in u_set)
    for ch in chs:
        if ch.index == u_index[0]:
            ch.flag_degree = 0
        elif ch.index in u_set:
            ch.flag_degree = 1
        else:
            ch.flag_degree = 2
    fa = FlaggedArrangement(
        frame=frame,
        lines=tuple(flagged_lines),
        chambers=tuple(chs),
        u_index=tuple(u_index),
        ch2=ch2,
        intercepts=tuple(sorted_intercepts),
    )
    # chamber count bookkeeping: |ch^2| must equal sum over points of (mult-1)
    expected = sum(p.multiplicity - 1 for p in pts)
    if len(ch2) != expected:
        raise FlagError(
            f"flag classification mismatch: |ch2| = {len(ch2)}, expected {expected}"
        )
    return fa


# ---------------------------------------------------------------------------
# projective arrangements


class ProjArrangement:
    """Projective line arrangement: canonical triples plus a designated line
    at infinity (always one of the members)."""

    def __init__(self, triples, infinity_index):
        canon = []
        seen = {}
        for i, (a, b, c) in enumerate(triples):
            t = canonical_triple(Fraction(a), Fraction(b), Fraction(c))
            if t in seen:
                raise ArrangementError(
                    f"projectively equal lines (rows {seen[t]} and {i})"
                )
            seen[t] = i
            canon.append(t)
        if not 0 <= infinity_index < len(canon):
            raise ArrangementError("infinity index out of range")
        self.lines = tuple(canon)
        self.infinity_index = infinity_index
        self._points = None
        self._charts = {}

    @property
    def n(self):
        return len(self.lines)

    def __repr__(self):
        return f"ProjArrangement({self.n} lines, infinity={self.infinity_index})"

    def affine_position(self, j):
        """Position of projective line j in the affine (non-infinity) list."""
        if j == self.infinity_index:
            raise ValueError("the infinity line has no affine position")
        return j if j < self.infinity_index else j - 1

    def affine_ids(self):
        return tuple(j for j in range(self.n) if j != self.infinity_index)

    def intersections(self, restrict_to_infinity=False):
        if self._points is None:
            self._points = _proj_intersections(self.lines)
        if not restrict_to_infinity:
            return self._points
        inf = self.infinity_index
        return tuple(p for p in self._points if inf in p.incident)

    def multiple_points(self, restrict_to_infinity=False):
        return tuple(
            p for p in self.intersections(restrict_to_infinity) if p.is_multiple
        )

    def chart(self, h):
        """Cached affine chart with line h at infinity."""
        if h not in self._charts:
            self._charts[h] = move_to_infinity(self, h)
        return self._charts[h]


def _proj_intersections(triples):
    coords = set()
    for t1, t2 in combinations(triples, 2):
        p = (
            t1[1] * t2[2] - t1[2] * t2[1],
            t1[2] * t2[0] - t1[0] * t2[2],
            t1[0] * t2[1] - t1[1] * t2[0],
        )
        coords.add(canonical_triple(*p))
    pts = []
    for p in sorted(coords):
        inc = frozenset(
            k
            for k, t in enumerate(triples)
            if t[0] * p[0] + t[1] * p[1] + t[2] * p[2] == 0
        )
        pts.append(IntersectionPoint(p, inc))
    return tuple(pts)


def cone(arrangement):
    """Projective closure: the affine lines plus the line at infinity z = 0."""
    triples = [ln.triple() for ln in arrangement.lines]
    triples.append((Fraction(0), Fraction(0), Fraction(1)))
    return ProjArrangement(triples, infinity_index=len(triples) - 1)


@dataclass(frozen=True)
class Chart:
    """Affine picture of a projective arrangement after a coordinate change
    sending one member to infinity."""

    arrangement: Arrangement
    to_old: tuple  # affine position -> line index in the source
    moved: int

    def to_new(self, old):
        return self.to_old.index(old)


def _mat3_inverse(rows):
    (a, b, c), (d, e, f), (g, h, i) = rows
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        raise ArrangementError("singular projective change of coordinates")
    adj = (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )
    return tuple(tuple(x / det for x in row) for row in adj)


def move_to_infinity(proj, h):
    """Rational projective change putting line h at infinity.

    Returns the affine forms of the remaining lines (in their original
    relative order) together with the position -> old-index correspondence.
    """
    if not 0 <= h < proj.n:
        raise ArrangementError("line index out of range")
    keep = [k for k in range(proj.n) if k != h]
    if h == proj.infinity_index:
        coeffs = [proj.lines[k] for k in keep]
        return Chart(Arrangement(coeffs), tuple(keep), moved=h)
    hrow = proj.lines[h]
    units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for (i, j), piv in (((0, 1), hrow[2]), ((0, 2), -hrow[1]), ((1, 2), hrow[0])):
        if piv != 0:
            t = (units[i], units[j], hrow)
            break
    tinv = _mat3_inverse(t)
    coeffs = []
    for k in keep:
        row = proj.lines[k]
        new = tuple(sum(row[r] * tinv[r][c] for r in range(3)) for c in range(3))
        if new[0] == 0 and new[1] == 0:
            raise ArrangementError("coordinate change degenerated a line")
        coeffs.append(new)
    return Chart(Arrangement(coeffs), tuple(keep), moved=h)


# ---------------------------------------------------------------------------
# parsing


def parse_arrangement(text):
    """Parse the plain text arrangement format.

    Affine: one line per row, three rationals "a b c" for a*x + b*y + c = 0.
    Projective: rows "P a b c" plus a header "infinity: k" (1-based row
    number of the line at infinity).  "#" starts a comment.
    """
    rows = []
    projective = False
    infinity = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        src = raw.split("#", 1)[0].strip()
        if not src:
            continue
        if src.lower().startswith("infinity:"):
            try:
                infinity = int(src.split(":", 1)[1])
            except ValueError as exc:
                raise ArrangementError(f"bad infinity header on line {lineno}") from exc
            projective = True
            continue
        tokens = src.split()
        if tokens and tokens[0].upper() == "P":
            projective = True
            tokens = tokens[1:]
        if len(tokens) != 3:
            raise ArrangementError(f"expected three coefficients on line {lineno}")
        rows.append(tuple(_fraction(t) for t in tokens))
    if not rows:
        raise ArrangementError("no lines in input")
    if projective:
        if infinity is None:
            raise ArrangementError('projective input needs an "infinity: k" header')
        if not 1 <= infinity <= len(rows):
            raise ArrangementError("infinity header out of range")
        return ProjArrangement(rows, infinity - 1)
    return Arrangement(rows)
