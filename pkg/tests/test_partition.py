import pytest

from conftest import NAMES, bits, labels, model
from fctheory.cyclo import Cyclotomic
from fctheory.fcsets import members
from fctheory.fusion import with_rho
from fctheory.partition import (ClassPartition, OverlapTable, blocks, classes, extent, overlap_eigen,
                                overlap_rank, overlap_sum, overlaps, verify_partition_identities,
                                verify_reciprocity)
from frozen import MODELS


def _close(x, y):
    return abs(float(x) - y) < 1e-8


@pytest.mark.parametrize("name", NAMES)
def test_classes_extents_and_duals_match_frozen(name):
    md, lat = model(name)
    want = MODELS[name]["sets"]
    assert sorted(labels(md, g) for g in lat) == sorted(want)
    for g in lat:
        rec = want[labels(md, g)]
        cp = classes(md, g)
        got = sorted(labels(md, b) for b in cp.bits)
        assert got == rec["classes"]
        for i, b in enumerate(cp.bits):
            assert _close(cp.extents[i], rec["extents"][labels(md, b)])
        assert labels(md, lat.dual(g)) == rec["dual"]


@pytest.mark.parametrize("name", NAMES)
def test_overlaps_match_frozen(name):
    md, lat = model(name)
    for g in lat:
        rec = MODELS[name]["sets"][labels(md, g)]["overlaps"]
        cp, bp, ov = classes(md, g), blocks(md, g), overlaps(md, g)
        for bi, b in enumerate(bp.bits):
            for ci, c in enumerate(cp.bits):
                assert ov[bi, ci] == rec[(labels(md, b), labels(md, c))]


@pytest.mark.parametrize("name", NAMES)
def test_quantum_dims_match_frozen(name):
    md, _ = model(name)
    for d, want in zip(md.qdims, MODELS[name]["dims"]):
        assert _close(d, want)


@pytest.mark.parametrize("name", NAMES)
def test_identity_suite_on_every_fc_set(name):
    md, lat = model(name)
    for g in lat:
        rep = verify_partition_identities(md, g)
        assert rep.ok, [c for c in rep.failures()]
    assert verify_reciprocity(md, lat).ok


def test_identity_suite_names_cover_the_required_checks(ising):
    md, lat = ising
    names = set(verify_partition_identities(md, lat.top).names())
    for n in ("classno", "extsumrule", "ortho1", "ortho2", "classsize", "classcharfun", "wmatelms",
              "spread", "recip", "product_rule", "blocksize", "clsize", "trivoverlap",
              "overlap_cross_check", "ovbound"):
        assert n in names


def test_three_overlap_methods_agree(ds3):
    md, lat = ds3
    for g in lat:
        cp, bp = classes(md, g), blocks(md, g)
        for b in bp.classes:
            for i, c in enumerate(cp.classes):
                s = overlap_sum(md, b, c)
                assert s == overlap_rank(md, b, c) == overlap_eigen(md, cp, b, i)


def test_ising_sigma_extent_is_two(ising):
    md, lat = ising
    cp = classes(md, lat.top)
    assert cp.extents[cp.find(bits(md, "sigma"))] == Cyclotomic.rational(2)
    assert extent(md, bits(md, "0")) == Cyclotomic.rational(4)


def test_fibonacci_extent_is_irrational():
    md, lat = model("fibonacci")
    x = extent(md, 1)
    assert not x.is_rational()
    assert abs(float(x) - (5 + 5 ** 0.5) / 2) < 1e-12


def test_partition_is_cached(ising):
    md, lat = ising
    assert classes(md, lat.top) is classes(md, lat.top)
    assert isinstance(classes(md, lat.top), ClassPartition)
    assert isinstance(overlaps(md, lat.top), OverlapTable)


def test_integral_overlaps_are_plain_ints(ds3):
    md, lat = ds3
    ov = overlaps(md, lat.top)
    assert all(type(ov[bi, ci]) is int for bi in range(len(blocks(md, lat.top)))
               for ci in range(len(classes(md, lat.top))))


def test_corrupted_irreps_are_detected():
    md, lat = model("toric_code")
    rho = [list(row) for row in md.rho]
    # swap two values in one row: still roots of unity, but orthogonality breaks
    rho[1][1], rho[1][2] = rho[1][2], rho[1][1]
    bad = with_rho(md, rho)
    g = bits(bad, "1", "e")
    rep = verify_partition_identities(bad, g)
    assert not rep.ok
