"""Bands between consecutive parallel lines, standing waves, and the kernel
computation of first cohomology, plus the combinatorial certificates that
decide or bound h^1 without any linear algebra.

For monodromies whose product over all lines (infinity included) differs
from 1 at infinity, h^1 equals the number of linear relations among the
standing waves of the resonant bands; that kernel is computed here.  The
certificate routines cover the cases where a line with q != 1 sees zero or
one resonant multiple point, and the sharp pair upper bound.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

from .geometry import sep
from .scalars import Matrix, kernel_basis, rank


class TheoremInapplicableError(ValueError):
    """The band kernel computes h^1 only when the infinity monodromy is
    nontrivial; callers should relabel a non-resonant line to infinity or
    fall back to the full chamber complex."""


@dataclass(frozen=True)
class Band:
    """Strip between two consecutive parallel lines.

    ``u1``/``u2`` are the chamber indices of the two unbounded ends (u1 has
    the lexicographically smaller sign vector); ``inner`` lists all chambers
    inside the strip; ``parallel_ids`` is the full parallel class of the
    boundary direction, whose point at infinity the band converges to.
    """

    lower: int
    upper: int
    u1: int
    u2: int
    inner: tuple
    parallel_ids: frozenset

    def label(self):
        return f"B({self.lower + 1},{self.upper + 1})"


@dataclass(frozen=True)
class StandingWave:
    band: Band
    coefficients: dict  # chamber index -> backend element


@dataclass(frozen=True)
class _BandData:
    band: Band
    sep_ends: tuple  # ids separating the two unbounded ends
    wave_seps: tuple  # (chamber index, ids of Sep(U1, chamber))


def bands(arrangement):
    """All bands, sorted by direction and position along the normal."""
    return tuple(bd.band for bd in _band_structure(arrangement))


def _band_structure(arrangement):
    cached = getattr(arrangement, "_band_data", None)
    if cached is not None:
        return cached
    lines = arrangement.lines
    if any(ln.id != k for k, ln in enumerate(lines)):
        raise ValueError("bands need a position-indexed arrangement, not a flagged one")
    chs = arrangement.chambers()
    groups = {}
    for ln in lines:
        groups.setdefault((ln.a, ln.b), []).append(ln)
    data = []
    for key in sorted(groups):
        cls = sorted(groups[key], key=lambda ln: ln.c, reverse=True)
        if len(cls) < 2:
            continue
        class_ids = frozenset(ln.id for ln in cls)
        for low, up in zip(cls, cls[1:]):
            inner = tuple(
                ch.index
                for ch in chs
                if ch.signs[low.id] > 0 and ch.signs[up.id] < 0
            )
            ends = sorted(
                (i for i in inner if not chs[i].bounded),
                key=lambda i: chs[i].signs,
            )
            if len(ends) != 2:
                raise ValueError("band does not have exactly two unbounded ends")
            u1, u2 = ends
            if chs[u1].opposite is not chs[u2]:
                raise ValueError("band ends are not opposite chambers")
            band = Band(
                lower=low.id,
                upper=up.id,
                u1=u1,
                u2=u2,
                inner=inner,
                parallel_ids=class_ids,
            )
            wave_seps = tuple(
                (ci, tuple(sorted(sep(chs[u1], chs[ci], lines)))) for ci in inner
            )
            data.append(
                _BandData(
                    band=band,
                    sep_ends=tuple(sorted(sep(chs[u1], chs[u2], lines))),
                    wave_seps=wave_seps,
                )
            )
    arrangement._band_data = tuple(data)
    return arrangement._band_data


def _is_resonant(system, data):
    """Vanishing of the weight between the band ends; cross-checked against
    the resonance of the band's point at infinity."""
    by_delta = system.prod_is_one(data.sep_ends)
    by_point = system.prod_is_one(data.band.parallel_ids, with_infinity=True)
    if by_delta != by_point:
        raise AssertionError("band resonance criteria disagree")
    return by_delta


def resonant_bands(system, arrangement):
    return tuple(
        bd.band
        for bd in _band_structure(arrangement)
        if _is_resonant(system, bd)
    )


def standing_wave(system, arrangement, band, end=1):
    """The chamber combination Delta(U_end, C) . [C] over chambers C in the
    band. Meaningful for resonant bands; computable (with a warning) always."""
    for bd in _band_structure(arrangement):
        if bd.band is band or bd.band == band:
            if not _is_resonant(system, bd):
                warnings.warn("standing wave of a non-resonant band", stacklevel=2)
            if end == 1:
                coeffs = {ci: system.delta_ids(ids) for ci, ids in bd.wave_seps}
            else:
                chs = arrangement.chambers()
                lines = arrangement.lines
                u2 = chs[bd.band.u2]
                coeffs = {
                    ci: system.delta_ids(sorted(sep(u2, chs[ci], lines)))
                    for ci in bd.band.inner
                }
            return StandingWave(band=bd.band, coefficients=coeffs)
    raise ValueError("band does not belong to this arrangement")


@dataclass(frozen=True)
class BandKernel:
    """h^1 together with the kernel of the standing wave map."""

    dim: int
    bands: tuple  # the resonant bands, in matrix column order
    kernel: tuple  # basis vectors, coefficients per band
    chamber_rows: tuple


def h1_via_bands(system, arrangement):
    """First cohomology from linear relations among standing waves.

    Requires a nontrivial infinity monodromy; raises otherwise.
    """
    if system.infinity_is_one():
        raise TheoremInapplicableError(
            "infinity monodromy is trivial; move a non-resonant line to "
            "infinity or use the chamber complex"
        )
    res = [
        bd for bd in _band_structure(arrangement) if _is_resonant(system, bd)
    ]
    if not res:
        return BandKernel(dim=0, bands=(), kernel=(), chamber_rows=())
    row_ids = sorted({ci for bd in res for ci, _ in bd.wave_seps})
    row_pos = {ci: k for k, ci in enumerate(row_ids)}
    bk = system.backend
    rows = [[bk.zero] * len(res) for _ in row_ids]
    for col, bd in enumerate(res):
        for ci, ids in bd.wave_seps:
            rows[row_pos[ci]][col] = system.delta_ids(ids)
    mat = Matrix(bk, rows, ncols=len(res))
    dim = mat.ncols - rank(mat)
    basis = tuple(tuple(vec) for vec in kernel_basis(mat))
    if len(basis) != dim:
        raise AssertionError("kernel dimension mismatch")
    return BandKernel(
        dim=dim,
        bands=tuple(bd.band for bd in res),
        kernel=basis,
        chamber_rows=tuple(row_ids),
    )


# ---------------------------------------------------------------------------
# combinatorial certificates


@dataclass(frozen=True)
class Certificate:
    """Conclusion drawn from one line with nontrivial monodromy.

    kind "no_resonant_point": no resonant multiple point on the line, so
    h^1 = 0.  kind "unique_resonant_point": exactly one, so h^1 equals
    (number of lines through it) - 2 when every line missing the point has
    trivial monodromy, and 0 otherwise.
    """

    line: int
    kind: str
    h1: int | None
    point: object = None
    off_lines_trivial: bool | None = None


@dataclass(frozen=True)
class CertificateReport:
    certificates: tuple
    h1: int | None  # resolved dimension, when some certificate applies

    def certified(self):
        return tuple(c for c in self.certificates if c.kind != "none")


def vanishing_certificates(system, proj):
    """Scan every line with q != 1 for the zero/one resonant point
    certificates; certificates from different lines must agree."""
    multiple = proj.multiple_points()
    certs = []
    dims = set()
    for h in range(proj.n):
        if system.q_is_one_at(proj, h):
            continue
        resonant = [
            p
            for p in multiple
            if h in p.incident and system.q_point_is_one(proj, p)
        ]
        if not resonant:
            certs.append(Certificate(line=h, kind="no_resonant_point", h1=0))
            dims.add(0)
        elif len(resonant) == 1:
            point = resonant[0]
            off = [j for j in range(proj.n) if j not in point.incident]
            trivial = all(system.q_is_one_at(proj, j) for j in off)
            dim = len(point.incident) - 2 if trivial else 0
            certs.append(
                Certificate(
                    line=h,
                    kind="unique_resonant_point",
                    h1=dim,
                    point=point,
                    off_lines_trivial=trivial,
                )
            )
            dims.add(dim)
        else:
            certs.append(Certificate(line=h, kind="none", h1=None))
    if len(dims) > 1:
        raise AssertionError(f"contradictory certificates: {sorted(dims)}")
    return CertificateReport(
        certificates=tuple(certs), h1=dims.pop() if dims else None
    )


@dataclass(frozen=True)
class SharpPair:
    """Two lines with q != 1 bounding a region without further intersection
    points.  Under the hypothesis that every line with q != 1 carries at
    least two resonant multiple points, h^1 <= 1; and h^1 = 0 outright when
    the crossing point of the pair is a plain double point or non-resonant.
    """

    pair: tuple
    hypothesis_holds: bool
    bound: int | None


def _dot(triple, coords):
    return triple[0] * coords[0] + triple[1] * coords[1] + triple[2] * coords[2]


def sharp_pairs(system, proj):
    points = proj.intersections()
    multiple = [p for p in points if p.is_multiple]
    nonres = [h for h in range(proj.n) if not system.q_is_one_at(proj, h)]
    hypothesis = all(
        sum(
            1
            for p in multiple
            if h in p.incident and system.q_point_is_one(proj, p)
        )
        >= 2
        for h in nonres
    )
    out = []
    for h1, h2 in combinations(nonres, 2):
        regions = set()
        sharp = True
        for p in points:
            if len(p.incident - {h1, h2}) < 2:
                continue  # not a crossing of the other lines
            s1 = _dot(proj.lines[h1], p.coords)
            s2 = _dot(proj.lines[h2], p.coords)
            if s1 == 0 or s2 == 0:
                continue  # on the pair itself
            regions.add((s1 > 0) == (s2 > 0))
            if len(regions) == 2:
                sharp = False
                break
        if not sharp:
            continue
        crossing = next(p for p in points if h1 in p.incident and h2 in p.incident)
        forces_zero = crossing.incident == frozenset(
            (h1, h2)
        ) or not system.q_point_is_one(proj, crossing)
        bound = (0 if forces_zero else 1) if hypothesis else None
        out.append(
            SharpPair(pair=(h1, h2), hypothesis_holds=hypothesis, bound=bound)
        )
    return tuple(out)
