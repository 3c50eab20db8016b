"""Deconstructing twisters: the toric code and the double of S3.

A twister (a local FC set with integral weights) is the vacuum block of an
orbifold.  Its classes are the twisted sectors and the extent of its dual is
the order of the twist group.

Run with:  python demos/orbifold_deconstruction.py
"""
from fctheory.fcsets import enumerate_fcsets, parse_set, set_label
from fctheory.fusion import build_modular_data
from fctheory.io import get_model
from fctheory.local import char_ring_checks, deconstruct, is_twister, local_sets


def load(name):
    mf = get_model(name)
    md = build_modular_data(mf.to_fusion_data(), mf.smatrix)
    return md, enumerate_fcsets(md)


for name in ("toric_code", "ds3"):
    md, lat = load(name)
    print("=" * 60)
    print(name, "local FC sets:")
    for g in local_sets(md, lat):
        print("  %-30s %s" % (set_label(md, g), "twister" if is_twister(md, g) else "fermionic"))

md, _ = load("toric_code")
print()
print(deconstruct(md, parse_set(md, "1,e")).to_report().render_text())

md, _ = load("ds3")
g = parse_set(md, "0.0,0.1,0.2")
print()
print(deconstruct(md, g).to_report().render_text())
print()
print(char_ring_checks(md, g).render_text())
