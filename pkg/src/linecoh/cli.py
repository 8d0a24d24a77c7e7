"""Command line front end.

Subcommands: chambers, complex, h1, certify, scan, b3.  Reports are
deterministic (byte-identical across runs for the same inputs).  Exit
codes: 0 success, 2 precondition failure, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import charvar, mincomplex, resband
from .geometry import (
    Arrangement,
    ArrangementError,
    ProjArrangement,
    cone,
    parse_arrangement,
)
from .localsystem import LocalSystemError, make_local_system, resonance_report
from .resband import TheoremInapplicableError


class _CliError(ValueError):
    pass


def _load_arrangement(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_arrangement(fh.read())
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}") from exc


def _as_affine(obj):
    """Affine arrangement and its projective closure, from either input."""
    if isinstance(obj, Arrangement):
        return obj, cone(obj)
    chart = obj.chart(obj.infinity_index)
    return chart.arrangement, obj


def _parse_system(spec, n, backend, eps):
    head, _, rest = spec.partition(";")
    head = head.split()
    if not head:
        raise LocalSystemError('local system spec must start with "torsion" or "complex"')
    values = rest.split()
    if len(values) != n:
        raise LocalSystemError(
            f"local system lists {len(values)} monodromies for {n} lines"
        )
    if head[0] == "torsion":
        if len(head) != 2:
            raise LocalSystemError('torsion spec is "torsion N; e1 ... en"')
        order = int(head[1])
        return make_local_system(
            [int(v) for v in values], order=order, backend=backend, eps=eps
        )
    if head[0] == "complex":
        return make_local_system(values=[complex(v) for v in values], eps=eps)
    raise LocalSystemError(f"unknown local system kind {head[0]!r}")


def _emit(out, text):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sign_header(arr):
    return [
        f"lines ({arr.n}):",
        *(
            f"  H{ln.id + 1}: {ln.a}*x + {ln.b}*y + {ln.c} = 0"
            for ln in arr.lines
        ),
    ]


def cmd_chambers(args):
    arr, _ = _as_affine(_load_arrangement(args.arrangement))
    rows = _sign_header(arr)
    flagged = arr.flagged()
    rows.append(f"flag line order: {' '.join(f'H{i + 1}' for i in flagged.frame.order)}")
    rows.append("chambers (signs in flag order):")
    chs = flagged.chambers
    for ch in chs:
        opp = ch.opposite.sign_string() if ch.opposite is not None else "-"
        rows.append(
            f"  {ch.sign_string()}  bounded={'y' if ch.bounded else 'n'}"
            f"  degree={ch.flag_degree}  opposite={opp}"
        )
    counts = (1, len(flagged.ch1), len(flagged.ch2))
    rows.append(f"counts by degree: {counts[0]} {counts[1]} {counts[2]}")
    _emit(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_complex(args):
    arr, _ = _as_affine(_load_arrangement(args.arrangement))
    system = _parse_system(args.local_system, arr.n, args.backend, args.eps)
    flagged = arr.flagged()
    structure = mincomplex.complex_structure(flagged)
    symbolic = system.mode == "torsion" and args.backend == "cyclotomic"
    rows = _sign_header(arr)
    rows.append("d0 (column over U_1 ... U_0^op):")
    for sign, ids in structure.d0:
        rows.append("  " + mincomplex.format_entry(system, sign, ids, symbolic))
    rows.append("d1 (rows = degree-2 chambers):")
    n = flagged.n
    sym = {}
    for r, c, sign, ids in structure.d1:
        sym[(r, c)] = (sign, ids)
    for r, ci in enumerate(structure.basis2):
        cells = []
        for c in range(n):
            if (r, c) in sym:
                cells.append(mincomplex.format_entry(system, *sym[(r, c)], symbolic))
            else:
                cells.append("0")
        rows.append(f"  {flagged.chambers[ci].sign_string()}: " + "  ".join(cells))
    cx = mincomplex.build_complex(system, arr)
    rows.append(f"cochain check d1*d0 = 0: {'ok' if cx.cochain_ok() else 'FAILED'}")
    h0, h1, h2 = cx.dims()
    rows.append(f"h0 h1 h2 = {h0} {h1} {h2}")
    _emit(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_h1(args):
    arr, proj = _as_affine(_load_arrangement(args.arrangement))
    system = _parse_system(args.local_system, arr.n, args.backend, args.eps)
    rows = []
    if not system.infinity_is_one():
        result = resband.h1_via_bands(system, arr)
        rows.append(f"resonant bands: {len(result.bands)}")
        rows.append(f"h1 = {result.dim}")
    else:
        pivot = next(
            (j for j in range(arr.n) if not system.prod_is_one((j,))), None
        )
        if pivot is None:
            rows.append(
                "infinity monodromy and all line monodromies are trivial; "
                "falling back to the chamber complex"
            )
            h0, h1, h2 = mincomplex.cohomology_dims(system, arr)
            rows.append(f"h1 = {h1}")
            _emit(args.out, "\n".join(rows) + "\n")
            return 0
        rows.append(
            f"infinity monodromy is trivial; relabeling H{pivot + 1} to infinity"
        )
        chart = proj.chart(pivot)
        if system.mode == "torsion":
            exps = []
            for old in chart.to_old:
                if old == proj.infinity_index:
                    exps.append(-sum(system.half_exponents) % (2 * system.order))
                else:
                    exps.append(system.half_exponents[proj.affine_position(old)])
            moved = make_local_system(
                exps, order=system.order, backend=args.backend, eps=args.eps
            )
        else:
            vals = []
            for old in chart.to_old:
                if old == proj.infinity_index:
                    vals.append(system.monodromy_infinity())
                else:
                    vals.append(system.monodromy(proj.affine_position(old)))
            moved = make_local_system(values=vals, eps=args.eps)
        result = resband.h1_via_bands(moved, chart.arrangement)
        rows.append(f"resonant bands: {len(result.bands)}")
        rows.append(f"h1 = {result.dim}")
    if args.check:
        h0, h1, h2 = mincomplex.cohomology_dims(system, arr)
        rows.append(f"chamber complex check: h0 h1 h2 = {h0} {h1} {h2}")
        if h1 != result.dim:
            rows.append("MISMATCH between band kernel and chamber complex")
            _emit(args.out, "\n".join(rows) + "\n")
            return 2
    _emit(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_certify(args):
    arr, proj = _as_affine(_load_arrangement(args.arrangement))
    system = _parse_system(args.local_system, arr.n, args.backend, args.eps)
    report = resband.vanishing_certificates(system, proj)
    rows = []
    rep = resonance_report(system, proj)
    rows.append(
        "resonant lines: "
        + (" ".join(f"H{j + 1}" for j in sorted(rep.resonant_lines)) or "none")
    )
    for cert in report.certificates:
        if cert.kind == "no_resonant_point":
            rows.append(
                f"H{cert.line + 1}: no resonant multiple point -> h1 = 0"
            )
        elif cert.kind == "unique_resonant_point":
            names = "".join(str(j + 1) for j in sorted(cert.point.incident))
            rows.append(
                f"H{cert.line + 1}: unique resonant point {names} -> h1 = {cert.h1}"
            )
        else:
            rows.append(f"H{cert.line + 1}: no certificate")
    rows.append(
        f"certified h1: {report.h1 if report.h1 is not None else 'undetermined'}"
    )
    pairs = resband.sharp_pairs(system, proj)
    if pairs:
        for sp in pairs:
            i, j = sp.pair
            claim = (
                "no bound (hypothesis fails)"
                if sp.bound is None
                else f"h1 <= {sp.bound}"
            )
            rows.append(f"sharp pair (H{i + 1}, H{j + 1}): {claim}")
    else:
        rows.append("sharp pairs: none")
    _emit(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_scan(args):
    obj = _load_arrangement(args.arrangement)
    proj = obj if isinstance(obj, ProjArrangement) else cone(obj)
    hits = charvar.torsion_scan(
        proj, args.order, budget=args.budget, backend=args.backend
    )
    rows = [f"scan order={args.order} lines={proj.n} hits={len(hits)}"]
    rows.append("trivial character: skipped (h1 equals the first Betti number)")
    for hit in hits:
        exps = ",".join(str(e) for e in hit.point.exponents)
        rows.append(f"hit e=({exps}) N={hit.point.order} h1={hit.h1}")
    _emit(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_b3(args):
    proj, catalog = charvar.deleted_b3()
    rows = ["deleted B3 arrangement (8 lines, H8 at infinity)"]
    rows.append("multiple points per line:")
    for h in range(proj.n):
        pts = [
            "".join(str(j + 1) for j in sorted(p.incident))
            for p in proj.multiple_points()
            if h in p.incident
        ]
        rows.append(f"  H{h + 1}: {' '.join(pts)}")
    rows.append(f"catalog ({len(catalog)} families):")
    for fam in catalog:
        rows.append(f"  {fam.name} ({fam.nparams} parameters)")
    hits = charvar.torsion_scan(
        proj, args.order, budget=args.budget, catalog=catalog, backend=args.backend
    )
    rows.append(f"order-{args.order} scan: {len(hits)} hits")
    unmatched = 0
    for hit in hits:
        exps = ",".join(str(e) for e in hit.point.exponents)
        fams = " ".join(hit.families) if hit.families else "UNMATCHED"
        if not hit.families:
            unmatched += 1
        rows.append(f"  e=({exps}) h1={hit.h1} in {fams}")
    rows.append(f"hits outside the catalog: {unmatched}")
    _emit(args.out, "\n".join(rows) + "\n")
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="linecoh",
        description="Local system cohomology of real line arrangements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, system=False, order=False):
        p.add_argument("--arrangement", required=True, help="arrangement file")
        if system:
            p.add_argument(
                "--local-system",
                required=True,
                help='"torsion N; e1 ... en" or "complex; q1 ... qn"',
            )
        if order:
            p.add_argument("--order", type=int, required=True)
            p.add_argument("--budget", type=int, default=2_000_000)
        p.add_argument("--backend", choices=("cyclotomic", "complex"), default="cyclotomic")
        p.add_argument("--eps", type=float, default=1e-9)
        p.add_argument("--out", default=None)

    p = sub.add_parser("chambers", help="chambers and flag classification")
    common(p)
    p.set_defaults(func=cmd_chambers)

    p = sub.add_parser("complex", help="print the twisted chamber complex")
    common(p, system=True)
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("h1", help="first cohomology via resonant bands")
    common(p, system=True)
    p.add_argument("--check", action="store_true", help="cross-check with the complex")
    p.set_defaults(func=cmd_h1)

    p = sub.add_parser("certify", help="combinatorial certificates and sharp pairs")
    common(p, system=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", help="torsion points with h1 >= 1")
    common(p, order=True)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("b3", help="deleted B3 catalog verification table")
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--backend", choices=("cyclotomic", "complex"), default="cyclotomic")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_b3)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except charvar.BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (
        ArrangementError,
        LocalSystemError,
        TheoremInapplicableError,
        _CliError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
