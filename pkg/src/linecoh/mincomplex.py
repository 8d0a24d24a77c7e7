"""The chamber cochain complex computing local system cohomology.

Once a flag is chosen, degree-0/1/2 cochains have bases U_0; U_1, ...,
U_{n-1}, U_0^op; and the degree-2 chambers.  Both differentials have
entries +-(prod h - prod h^{-1}) over separating sets that depend only on
the arrangement, so the combinatorial structure is computed once per flag
and evaluated cheaply per local system.  The resulting (h^0, h^1, h^2) is
the reference oracle for the faster band computation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import Arrangement, FlaggedArrangement, sep
from .scalars import Matrix, matmul, rank


@dataclass(frozen=True)
class ComplexStructure:
    """Local-system-independent skeleton of the two differentials.

    d0 is a list over basis-1 positions of (sign, separating ids).
    d1 holds (row, col, sign, separating ids) for its nonzero entries;
    rows run over the degree-2 chambers in sign vector order.
    """

    flagged: FlaggedArrangement
    d0: tuple
    d1: tuple
    basis2: tuple

    @property
    def n(self):
        return self.flagged.n


def complex_structure(flagged):
    if flagged._structure is not None:
        return flagged._structure
    n = flagged.n
    chs = flagged.chambers
    lines = flagged.lines
    u = flagged.u_index
    u0 = chs[u[0]]
    basis1 = list(u[1:])  # chamber indices of U_1, ..., U_{n-1}, U_0^op
    basis2 = tuple(sorted(flagged.ch2, key=lambda i: chs[i].signs))
    d0 = tuple(
        (1, tuple(sorted(sep(u0, chs[ci], lines)))) for ci in basis1
    )
    entries = []
    for row, c2 in enumerate(basis2):
        cham = chs[c2]
        for col in range(n - 1):
            p = col + 1  # column of U_p
            sp, sq = cham.signs[p - 1], cham.signs[p]
            if sp > 0 and sq < 0:
                sign = -1
            elif sp < 0 and sq > 0:
                sign = 1
            else:
                continue
            ids = tuple(sorted(sep(chs[u[p]], cham, lines)))
            entries.append((row, col, sign, ids))
        if cham.signs[n - 1] > 0:
            ids = tuple(sorted(sep(chs[u[n]], cham, lines)))
            entries.append((row, n - 1, -1, ids))
    structure = ComplexStructure(
        flagged=flagged, d0=d0, d1=tuple(entries), basis2=basis2
    )
    flagged._structure = structure
    return structure


def _evaluate_d0(system, structure):
    bk = system.backend
    rows = []
    for sign, ids in structure.d0:
        val = system.delta_ids(ids)
        rows.append([bk.neg(val) if sign < 0 else val])
    return Matrix(bk, rows, ncols=1)


def _evaluate_d1(system, structure):
    bk = system.backend
    n = structure.n
    rows = [[bk.zero] * n for _ in structure.basis2]
    for row, col, sign, ids in structure.d1:
        val = system.delta_ids(ids)
        rows[row][col] = bk.neg(val) if sign < 0 else val
    return Matrix(bk, rows, ncols=n)


def build_d0(system, flagged):
    """Column vector of the degree-0 differential in the U_p basis."""
    return _evaluate_d0(system, complex_structure(flagged))


def build_d1(system, flagged):
    """Matrix of the degree-1 differential (degree-2 chambers x U_p basis)."""
    return _evaluate_d1(system, complex_structure(flagged))


@dataclass(frozen=True)
class TwistedComplex:
    """Evaluated cochain complex for one local system."""

    structure: ComplexStructure
    d0: Matrix
    d1: Matrix

    @property
    def flagged(self):
        return self.structure.flagged

    def cochain_ok(self):
        """Exact check that d1 . d0 = 0."""
        return matmul(self.d1, self.d0).is_zero()

    def dims(self):
        n = self.structure.n
        r0 = rank(self.d0)
        r1 = rank(self.d1)
        h0 = 1 - r0
        h1 = (n - r1) - r0
        h2 = len(self.structure.basis2) - r1
        return (h0, h1, h2)


def build_complex(system, arrangement, variant=0):
    flagged = (
        arrangement
        if isinstance(arrangement, FlaggedArrangement)
        else arrangement.flagged(variant)
    )
    structure = complex_structure(flagged)
    return TwistedComplex(
        structure=structure,
        d0=_evaluate_d0(system, structure),
        d1=_evaluate_d1(system, structure),
    )


def cohomology_dims(system, arrangement, variant=0):
    """(h^0, h^1, h^2) of the arrangement complement with the given
    monodromies, via the chamber complex."""
    if isinstance(arrangement, Arrangement):
        if system.n != arrangement.n:
            raise ValueError("local system size does not match the arrangement")
    return build_complex(system, arrangement, variant).dims()


def format_entry(system, sign, ids, symbolic):
    """One matrix entry, either symbolically (D{ids} is the weight of the
    separating set, 1-based in reports) or as a backend scalar."""
    if not ids and symbolic:
        return "0"
    if symbolic:
        label = "".join(str(i + 1) for i in ids) if len(ids) <= 9 else ",".join(
            str(i + 1) for i in ids
        )
        body = f"D({label})"
        return f"-{body}" if sign < 0 else body
    val = system.delta_ids(ids)
    if sign < 0:
        val = system.backend.neg(val)
    return system.backend.format(val)
