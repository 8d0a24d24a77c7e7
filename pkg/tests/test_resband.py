import random
import warnings

import pytest

import corpus
from linecoh import cone, make_local_system
from linecoh.mincomplex import cohomology_dims
from linecoh.resband import (
    TheoremInapplicableError,
    bands,
    h1_via_bands,
    resonant_bands,
    sharp_pairs,
    standing_wave,
    vanishing_certificates,
)
from linecoh.scalars import Matrix, rank


def test_bands_figure_five_lines():
    arr = corpus.figure_five_lines()
    bs = bands(arr)
    assert [(b.lower, b.upper) for b in bs] == [(1, 2), (2, 3)]
    for b in bs:
        chs = arr.chambers()
        assert not chs[b.u1].bounded and not chs[b.u2].bounded
        assert chs[b.u1].signs < chs[b.u2].signs
        assert chs[b.u1].opposite is chs[b.u2]
        assert len(b.inner) == 3
        assert b.parallel_ids == frozenset({1, 2, 3})


def test_bands_deleted_b3_chart():
    proj, _ = corpus.b3()
    arr = proj.chart(7).arrangement
    bs = bands(arr)
    assert len(bs) == 4
    classes = sorted(tuple(sorted(b.parallel_ids)) for b in bs)
    assert classes == [(0, 1), (2, 3), (4, 5, 6), (4, 5, 6)]


def test_no_bands_without_parallels():
    assert bands(corpus.triangle()) == ()


def test_resonance_iff_crossing_product_one():
    arr = corpus.figure_five_lines()
    # the two bands are resonant exactly when q1*q5 = 1
    resonant_cases = [
        make_local_system([0, 1, 3, 2, 0], order=4),
        make_local_system([1, 2, 0, 0, 3], order=4),
    ]
    for system in resonant_cases:
        assert len(resonant_bands(system, arr)) == 2
    off = make_local_system([1, 0, 0, 0, 1], order=4)  # q1*q5 = -1
    assert resonant_bands(off, arr) == ()
    trivial = make_local_system([0] * 5, order=1)
    assert len(resonant_bands(trivial, arr)) == 2


def test_resonant_bands_all_four_at_order_two():
    proj, _ = corpus.b3()
    arr = proj.chart(7).arrangement
    qplus = make_local_system([0, 1, 1, 0, 0, 1, 0], order=2)
    assert len(resonant_bands(qplus, arr)) == 4


def test_qplus_wave_values():
    # three waves concentrate 2i on one chamber, the fourth spreads 2i
    # over three chambers (up to a global sign per wave)
    proj, _ = corpus.b3()
    arr = proj.chart(7).arrangement
    system = make_local_system([0, 1, 1, 0, 0, 1, 0], order=2)
    bk = system.backend
    two_i = bk.scale(2, bk.root(1))
    supports = []
    for band in resonant_bands(system, arr):
        wave = standing_wave(system, arr, band)
        nonzero = {
            c: v for c, v in wave.coefficients.items() if not bk.is_zero(v)
        }
        values = set()
        for v in nonzero.values():
            assert bk.eq(v, two_i) or bk.eq(v, bk.neg(two_i))
            values.add(bk.eq(v, two_i))
        assert len(values) == 1  # constant across the wave
        supports.append(frozenset(nonzero))
    sizes = sorted(len(s) for s in supports)
    assert sizes == [1, 1, 1, 3]
    singles = {s for s in supports if len(s) == 1}
    assert len(singles) == 1  # the three one-chamber waves coincide


def test_standing_wave_supported_on_bounded_chamber():
    arr = corpus.figure_five_lines()
    # q1*q5 = 1 keeps the band resonant; q1 != 1 keeps the wave nonzero
    system = make_local_system([1, 1, 3, 2, 3], order=4)
    bk = system.backend
    band = bands(arr)[0]
    wave = standing_wave(system, arr, band)
    chs = arr.chambers()
    nonzero = {c for c, v in wave.coefficients.items() if not bk.is_zero(v)}
    bounded = [c for c in band.inner if chs[c].bounded]
    assert nonzero == set(bounded)
    coeff = wave.coefficients[bounded[0]]
    delta1 = system.delta_ids((0,))
    assert bk.eq(coeff, delta1) or bk.eq(coeff, bk.neg(delta1))


def test_standing_wave_opposite_end_is_signed_multiple():
    proj, _ = corpus.b3()
    arr = proj.chart(7).arrangement
    rng = random.Random(19)
    checked = 0
    while checked < 12:
        order = rng.randrange(2, 5)
        system = make_local_system(corpus.random_exponents(rng, 7, order), order=order)
        bk = system.backend
        for band in resonant_bands(system, arr):
            w1 = standing_wave(system, arr, band, end=1)
            w2 = standing_wave(system, arr, band, end=2)
            # epsilon is the square root of the product over the lines
            # through the band's point at infinity, which is +-1 here
            s = sum(system.half_exponents[i] for i in band.parallel_ids)
            s -= sum(system.half_exponents)
            eps = bk.root(s)
            assert bk.eq(eps, bk.one) or bk.eq(eps, bk.neg(bk.one))
            for c in band.inner:
                lhs = w1.coefficients[c]
                rhs = bk.neg(bk.mul(eps, w2.coefficients[c]))
                assert bk.eq(lhs, rhs)
            checked += 1


def test_standing_wave_warns_when_not_resonant():
    arr = corpus.figure_five_lines()
    system = make_local_system([1, 0, 0, 0, 1], order=4)
    with pytest.warns(UserWarning, match="non-resonant"):
        standing_wave(system, arr, bands(arr)[0])


def test_h1_requires_nontrivial_infinity():
    arr = corpus.figure_five_lines()
    system = make_local_system([0] * 5, order=1)
    with pytest.raises(TheoremInapplicableError):
        h1_via_bands(system, arr)


def test_h1_zero_without_resonant_bands():
    arr = corpus.figure_five_lines()
    system = make_local_system([1, 0, 0, 0, 1], order=4)
    result = h1_via_bands(system, arr)
    assert result.dim == 0 and result.bands == ()


def test_h1_figure_five_lines():
    arr = corpus.figure_five_lines()
    system = make_local_system([0, 1, 3, 2, 0], order=4)
    assert h1_via_bands(system, arr).dim == 2


def _equal_wave_groups(system, arr):
    bk = system.backend
    groups = []
    for band in resonant_bands(system, arr):
        wave = standing_wave(system, arr, band)
        support = {
            c: v for c, v in wave.coefficients.items() if not bk.is_zero(v)
        }
        for grp in groups:
            ref = grp["wave"]
            if set(ref) == set(support) and all(
                bk.eq(ref[c], support[c]) for c in ref
            ):
                grp["bands"].append(band)
                break
        else:
            groups.append({"wave": support, "bands": [band]})
    return groups


def test_qplus_kernel_spans_differences_of_equal_waves():
    proj, _ = corpus.b3()
    arr = proj.chart(7).arrangement
    for exps in ([0, 1, 1, 0, 0, 1, 0], [1, 0, 0, 1, 0, 1, 0]):
        system = make_local_system(exps, order=2)
        result = h1_via_bands(system, arr)
        assert result.dim == 2
        groups = _equal_wave_groups(system, arr)
        sizes = sorted(len(g["bands"]) for g in groups)
        assert sizes == [1, 3]
        triple = next(g["bands"] for g in groups if len(g["bands"]) == 3)
        cols = {band: k for k, band in enumerate(result.bands)}
        bk = system.backend
        target = []
        for u, v in zip(triple, triple[1:]):
            vec = [bk.zero] * len(result.bands)
            vec[cols[u]] = bk.one
            vec[cols[v]] = bk.neg(bk.one)
            target.append(vec)
        got = [list(vec) for vec in result.kernel]
        r_target = rank(Matrix(bk, target))
        r_got = rank(Matrix(bk, got))
        r_union = rank(Matrix(bk, target + got))
        assert r_target == r_got == r_union == 2


def test_h1_matches_oracle_randomly():
    rng = random.Random(55)
    arr = corpus.figure_five_lines()
    for _ in range(40):
        order = rng.randrange(2, 6)
        system = make_local_system(corpus.random_exponents(rng, 5, order), order=order)
        if system.infinity_is_one():
            continue
        assert h1_via_bands(system, arr).dim == cohomology_dims(system, arr)[1]


# ---------------------------------------------------------------------------
# certificates


def test_certificate_no_resonant_point():
    proj, _ = corpus.b3()
    # q on fifth line nontrivial, both its multiple points non-resonant
    system = make_local_system([1, 0, 0, 0, 1, 0, 0], order=5)
    report = vanishing_certificates(system, proj)
    assert report.h1 == 0
    kinds = {c.line: c.kind for c in report.certificates}
    assert kinds[4] == "no_resonant_point"
    assert cohomology_dims(system, proj.chart(7).arrangement)[1] == 0


def test_certificate_unique_point_dimension_two():
    proj, _ = corpus.b3()
    # quadruple point resonant, first four lines trivial
    system = make_local_system([0, 0, 0, 0, 1, 1, 1], order=5)
    report = vanishing_certificates(system, proj)
    assert report.h1 == 2
    cert = next(c for c in report.certificates if c.line == 4)
    assert cert.kind == "unique_resonant_point"
    assert cert.point.incident == frozenset({4, 5, 6, 7})
    assert cert.off_lines_trivial
    chart = proj.chart(4)
    exps = [[0, 0, 0, 0, 1, 1, 1][o] if o != 7 else 2 for o in chart.to_old]
    moved = make_local_system(exps, order=5)
    assert cohomology_dims(moved, chart.arrangement)[1] == 2


def test_certificate_unique_point_not_all_trivial():
    proj, _ = corpus.b3()
    # same resonant point but a line missing it is nontrivial
    system = make_local_system([1, 0, 0, 0, 1, 1, 1], order=5)
    report = vanishing_certificates(system, proj)
    assert report.h1 == 0


def test_certificate_triple_point_dimension_one():
    proj, _ = corpus.b3()
    # q2*q3*q5 = 1 with all lines off that point trivial
    system = make_local_system([0, 1, 1, 0, 3, 0, 0], order=5)
    report = vanishing_certificates(system, proj)
    assert report.h1 == 1


def test_certificates_never_contradict_oracle():
    proj, _ = corpus.b3()
    chart = proj.chart(7)
    rng = random.Random(71)
    seen = 0
    for _ in range(120):
        order = rng.randrange(2, 5)
        exps = corpus.random_exponents(rng, 7, order)
        system = make_local_system(exps, order=order)
        report = vanishing_certificates(system, proj)
        if report.h1 is None:
            continue
        seen += 1
        assert cohomology_dims(system, chart.arrangement)[1] == report.h1
    assert seen > 20


def test_unique_resonant_point_gives_disjoint_wave_supports():
    proj, _ = corpus.b3()
    chart = proj.chart(4)
    exps = [[0, 0, 0, 0, 1, 1, 1, 2][o] for o in chart.to_old]
    system = make_local_system(exps, order=5)
    res = resonant_bands(system, chart.arrangement)
    assert len(res) == 2
    supports = [set(b.inner) for b in res]
    assert supports[0].isdisjoint(supports[1])
    assert h1_via_bands(system, chart.arrangement).dim == 2


# ---------------------------------------------------------------------------
# sharp pairs


def test_sharp_pair_first_vertical_and_infinity():
    fig2 = corpus.sharp_pair_arrangement()
    proj = cone(fig2)
    system = make_local_system([1] + [0] * 10, order=3)
    pairs = sharp_pairs(system, proj)
    assert [sp.pair for sp in pairs] == [(0, 11)]


def test_two_lines_sharp_trivially():
    proj = cone(corpus.triangle())
    system = make_local_system([1, 1, 1], order=3)
    pairs = sharp_pairs(system, proj)
    assert pairs  # every pair of nontrivial lines bounds an empty region


def test_sharp_pair_bound_attained():
    fig2 = corpus.sharp_pair_arrangement()
    proj = cone(fig2)
    system = make_local_system([1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1], order=2)
    pairs = sharp_pairs(system, proj)
    match = [sp for sp in pairs if sp.hypothesis_holds and sp.bound is not None]
    assert match and all(sp.bound == 1 for sp in match)
    assert cohomology_dims(system, fig2)[1] == 1


def test_sharp_pair_forced_zero():
    fig2 = corpus.sharp_pair_arrangement()
    proj = cone(fig2)
    system = make_local_system([0, 0, 1, 0, 1, 1, 1, 1, 1, 0, 1], order=2)
    pairs = sharp_pairs(system, proj)
    zero = [sp for sp in pairs if sp.bound == 0]
    assert any(sp.pair == (7, 8) for sp in zero)
    assert cohomology_dims(system, fig2)[1] == 0


def test_no_sharp_pairs_when_h1_is_two():
    proj, _ = corpus.b3()
    qplus = make_local_system([0, 1, 1, 0, 0, 1, 0], order=2)
    assert sharp_pairs(qplus, proj) == ()
