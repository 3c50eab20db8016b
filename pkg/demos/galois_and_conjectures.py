"""Galois symmetry of the irreps and the conjecture harness over the catalog.

Run with:  python demos/galois_and_conjectures.py
"""
from fctheory.conjectures import SUITES, run_suites
from fctheory.fcsets import enumerate_fcsets, set_label
from fctheory.fusion import build_modular_data
from fctheory.galois import galois_action, theta_sets
from fctheory.io import builtin_catalog, get_model

mf = get_model("fibonacci")
md = build_modular_data(mf.to_fusion_data())
ga = galois_action(md)
for l in ga.residues:
    th, thp = theta_sets(ga, l)
    print("l=%d  pi=%-8s signs=%s  Theta=%s Theta+=%s" % (
        l, ga.cycles(l), [ga.eps(l, p) for p in range(md.rank)], set_label(md, th), set_label(md, thp)))

print("\nconjectures over the catalog (a counterexample would be printed with its witness):")
for mf in builtin_catalog():
    md = build_modular_data(mf.to_fusion_data(), mf.smatrix)
    lat = enumerate_fcsets(md)
    found = {r.title.split()[0]: r.get("counterexamples") for r in run_suites(md, lat, SUITES)}
    print("  %-12s %2d FC sets  %s" % (mf.name, len(lat), "  ".join("%s=%s" % kv for kv in found.items())))
