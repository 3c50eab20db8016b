"""A walk through the Ising model: FC sets, classes, the center and nilpotency.

Run with:  python demos/ising_tour.py
"""
from fctheory import center, local, partition
from fctheory.fcsets import enumerate_fcsets, set_label
from fctheory.fusion import build_modular_data
from fctheory.io import get_model

mf = get_model("ising")
md = build_modular_data(mf.to_fusion_data())
print("quantum dimensions:", ", ".join("%s=%s" % (l, d) for l, d in zip(md.labels, md.qdims)))

lat = enumerate_fcsets(md)
print("\nFC sets (with duals):")
for g in lat:
    print("  %-16s dual %s" % (set_label(md, g), set_label(md, lat.dual(g))))

# the classes of an FC set play the role of conjugacy classes
for g in lat:
    cp = partition.classes(md, g)
    Z = center.center_of(md, g)
    print("\n%s" % set_label(md, g))
    for i in range(len(cp)):
        print("  class %-16s extent %-4s %s" % (cp.label(i), cp.extents[i], "central" if i in Z else ""))

# the full set is nilpotent although sigma has dimension sqrt 2
chain = center.nilpotent_chain(md, lat.top)
print("\nnilpotent chain of the full set:", " < ".join(set_label(md, h) for h in chain))

g = lat.sets[1]
print("\n%s is local: %s, twister: %s" % (set_label(md, g), local.is_local(md, g), local.is_twister(md, g)))
print(local.deconstruct(md, g).to_report().render_text())
