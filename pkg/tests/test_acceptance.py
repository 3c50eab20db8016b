"""The nine acceptance criteria, one test each.

Every test prints one line "PASS criterion N: ..." or "FAIL criterion N: ...".
The lines are repeated in the pytest terminal summary; running this file
directly with python prints them too.
"""
import io
import sys
import time

import pytest

from fctheory import center, fcsets, galois, local, partition
from fctheory.cli import main
from fctheory.conjectures import run_suites
from fctheory.cyclo import cyc
from fctheory.fcsets import dual, enumerate_fcsets, lattice_props, members, set_label
from fctheory.fusion import build_modular_data
from fctheory.io import builtin_catalog, canonicalize, get_model, parse_model, write_model

LINES = []


def _model(name):
    mf = get_model(name)
    md = build_modular_data(mf.to_fusion_data(), mf.smatrix)
    return md, enumerate_fcsets(md)


def _all():
    return [_model(mf.name) for mf in builtin_catalog()]


def _b(md, *labels):
    return sum(1 << md.index(x) for x in labels)


def _report(n, ok, what, t0):
    line = "%s criterion %d: %s (%.1fs)" % ("PASS" if ok else "FAIL", n, what, time.time() - t0)
    LINES.append(line)
    print(line)
    return ok


def criterion_1():
    t0 = time.time()
    md, lat = _model("ising")
    g = _b(md, "0", "eps")
    cp = partition.classes(md, g)
    d = md.qdims[md.index("sigma")]
    checks = [
        len(lat) == 3,
        local.is_local(md, g),
        not local.is_twister(md, g),
        cp.label(local.ramond_class(md, g)) == "{sigma}",
        center.nilpotent_chain(md, lat.top) == [_b(md, "0"), g, lat.top],
        d * d == cyc(2),
    ]
    return _report(1, all(checks), "Ising: 3 FC sets, {0,eps} local non-twister with Ramond class "
                   "{sigma}, full set nilpotent via {0} < {0,eps} < full, d_sigma^2 = 2", t0)


def criterion_2():
    t0 = time.time()
    md, lat = _model("so16_lvl1")
    rep = lattice_props(lat)
    w = rep.distributive_witness
    ok = len(lat) == 5 and rep.modular and not rep.distributive and w is not None
    if ok:
        a, b, c = w
        ok = a & lat.join(b, c) != lat.join(a & b, a & c)
    return _report(2, ok, "SO(16)_1: 5 FC sets, modular, not distributive (witness %s)"
                   % rep.get("distributive_witness"), t0)


def criterion_3():
    t0 = time.time()
    md, _ = _model("toric_code")
    d = local.deconstruct(md, _b(md, "1", "e"))
    ok = (d.is_twister and len(d.sectors) == 2 and all(len(s.blocks) == 1 for s in d.sectors)
          and d.twist_group_order.is_integer() and d.twist_group_order == 2 and d.checks.ok)
    return _report(3, ok, "toric code {1,e}: twister, 2 sectors x 1 block, twist group order %s"
                   % d.twist_group_order, t0)


def criterion_4():
    t0 = time.time()
    bad, n = [], 0
    for md, lat in _all():
        for g in lat:
            n += 1
            r = partition.verify_partition_identities(md, g)
            bad += ["%s %s %s" % (md.name, set_label(md, g), c.name) for c in r.failures()]
        bad += ["%s %s" % (md.name, c.name) for c in partition.verify_reciprocity(md, lat).failures()]
    return _report(4, not bad, "exact class/block identity suite on %d FC sets%s"
                   % (n, "" if not bad else ": " + "; ".join(bad[:3])), t0)


def criterion_5():
    t0 = time.time()
    bad, n = [], 0
    for md, lat in _all():
        for g in lat:
            n += 1
            for r in (center.verify_center(md, g, lat), center.verify_quotients(md, g)):
                bad += ["%s %s %s" % (md.name, set_label(md, g), c.name) for c in r.failures()]
            Z = center.center_of(md, g)
            for H in Z.subgroups():
                r = center.quotient_structure(md, g, H).verify()
                bad += ["%s %s" % (r.title, c.name) for c in r.failures()]
    return _report(5, not bad, "center group laws, products, quotient/extension roundtrip and "
                   "character blocks on %d FC sets%s" % (n, "" if not bad else ": " + "; ".join(bad[:3])), t0)


def criterion_6():
    t0 = time.time()
    bad = []
    for md, lat in _all():
        ga = galois.galois_action(md)
        reps = [galois.verify_galois(ga)]
        for l in ga.residues:
            reps.append(galois.verify_theta(ga, l))
            th = galois.theta_sets(ga, l)[0]
            reps += [galois.dimratio_check(ga, g, l) for g in lat if g & th == g]
        for g in lat:
            reps.append(galois.int_lattice_membership(ga, g))
            reps.append(galois.verify_galois_classes(ga, g))
        bad += ["%s %s" % (r.title, c.name) for r in reps for c in r.failures()]
    md, _ = _model("fibonacci")
    ga = galois.galois_action(md)
    fib = ga.cycles(2) == "(0 tau)" and ga.eps(2, md.index("tau")) == -1
    return _report(6, not bad and fib, "Galois permutations, signs, Theta sets, integrality "
                   "agreement and dimension ratios; Fibonacci pi(2) = (0 tau), eps = -1", t0)


def criterion_7():
    t0 = time.time()
    bad, nloc = [], 0
    for md, lat in _all():
        for g in local.local_sets(md, lat):
            nloc += 1
            if not all(md.qdims[a].is_integer() for a in members(g)):
                bad.append("%s %s" % (md.name, set_label(md, g)))
    md, _ = _model("ds3")
    g = _b(md, "0.0", "0.1", "0.2")
    cp = partition.classes(md, g)
    perp = partition.extent(md, dual(md, g))
    ring = local.char_ring_checks(md, g)
    items = ("extent_divides", "vanishing_iff_nonlinear", "center_dim_divides", "coprime_vanishing")
    ok = (not bad and local.is_twister(md, g)
          and [md.qdims[a] for a in members(g)] == [cyc(1), cyc(1), cyc(2)]
          and perp == cyc(6)
          and sorted(int(x.to_fraction()) for x in cp.extents) == [2, 3, 6]
          and all(6 % int(x.to_fraction()) == 0 for x in cp.extents)
          and all(ring[i].passed for i in items))
    return _report(7, ok, "%d local FC sets all with integer dims; D(S3) vacuum twister dims (1,1,2), "
                   "ext(g^perp) = 6, class extents {6,3,2}, character-ring items pass" % nloc, t0)


def criterion_8():
    t0 = time.time()
    total, bad = 0, []
    for md, lat in _all():
        for r in run_suites(md, lat, ("algint", "spect", "lagrange")):
            total += r.get("counterexamples")
            bad += ["%s: %s" % (r.title, c.detail) for c in r.failures()]
    return _report(8, total == 0 and not bad, "conjecture harness (algint, spect, lagrange) over the "
                   "catalog: %d counterexamples" % total, t0)


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def criterion_9():
    t0 = time.time()
    ok = True
    for mf in builtin_catalog():
        text = write_model(mf)
        ok &= canonicalize(text) == text and write_model(parse_model(text)) == text
        for cmd in (("verify",), ("conjectures",), ("fcsets",)):
            a = _cli("--format", "records", *cmd, "catalog:" + mf.name)
            b = _cli("--format", "records", *cmd, "catalog:" + mf.name)
            ok &= a == b and a[0] == 0
    return _report(9, ok, "parse/write idempotence and byte-identical reports on repeated runs", t0)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


@pytest.mark.parametrize("crit", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(crit):
    assert crit()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
