"""Classes, blocks, extents and overlaps of an FC set, with the exact identity suite."""
from .cyclo import ONE, ZERO, compare_real, rank as cyc_rank
from .fcsets import bits_of, card, dual, members, set_label
from .report import Report


class ClassPartition:
    """The g-classes: primaries grouped by their restricted irreps on g.

    classes[i] is a tuple of primaries (ordered by smallest member), values[i][k]
    is alpha_k(C_i) for the k-th member alpha_k of g, extents[i] = 1/sum s2.
    """

    def __init__(self, md, g):
        self.md = md
        self.g = g
        self.gm = members(g)
        groups = {}
        order = []
        for p in range(md.rank):
            key = tuple(md.rho[p][a] for a in self.gm)
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(p)
        self.classes = [tuple(groups[k]) for k in order]
        self.values = [k for k in order]
        self.bits = [bits_of(c) for c in self.classes]
        self.class_of = {}
        for i, c in enumerate(self.classes):
            for p in c:
                self.class_of[p] = i
        self.extents = [(sum((md.s2[p] for p in c), ZERO)).inverse() for c in self.classes]
        self.trivial = self.class_of[0]
        self._pos = {a: k for k, a in enumerate(self.gm)}

    def __len__(self):
        return len(self.classes)

    def value(self, i, alpha):
        """alpha(C_i)."""
        return self.values[i][self._pos[alpha]]

    def find(self, bits):
        """Index of the class with the given member bitset, or None."""
        try:
            return self.bits.index(bits)
        except ValueError:
            return None

    def find_by_values(self, vals):
        vals = tuple(vals)
        for i, v in enumerate(self.values):
            if v == vals:
                return i
        return None

    def label(self, i):
        return set_label(self.md, self.bits[i])


def _cache(md):
    c = getattr(md, "_partition_cache", None)
    if c is None:
        c = md._partition_cache = {}
    return c


def classes(md, g):
    key = ("cl", g)
    c = _cache(md)
    if key not in c:
        c[key] = ClassPartition(md, g)
    return c[key]


def blocks(md, g):
    """The g-blocks, i.e. the classes of the dual FC set."""
    return classes(md, dual(md, g))


def extent(md, bits):
    return sum((md.s2[p] for p in members(bits)), ZERO).inverse()


def trace_N(md, a, within=None):
    ps = range(md.rank) if within is None else within
    return sum(md.N(a, p, p) for p in ps)


def abs_S2(md, p, q):
    """|S_pq|^2 = |rho_q(p)|^2 S_0q^2."""
    return md.rho[q][p].abs_squared() * md.s2[q]


# overlaps, three ways -------------------------------------------------------

def overlap_sum(md, b, C):
    return sum((abs_S2(md, p, q) for p in b for q in C), ZERO)


def overlap_eigen(md, cp, b, i):
    """Multiplicity of the class irrep i in the restricted fusion matrices on block b."""
    b = list(b)
    rows = []
    for a in cp.gm:
        lam = cp.value(i, a)
        for p in b:
            rows.append([md.N(a, p, q) - (lam if p == q else ZERO) for q in b])
    return len(b) - cyc_rank(rows)


def overlap_rank(md, b, C):
    """Rank of the S-minor S_bC; column scaling by S_0q does not change it."""
    return cyc_rank([[md.rho[q][p] for q in C] for p in b])


class OverlapTable:
    def __init__(self, md, g):
        self.md = md
        self.g = g
        self.cl = classes(md, g)
        self.bl = blocks(md, g)
        self.table = []
        for b in self.bl.classes:
            row = []
            for C in self.cl.classes:
                x = overlap_sum(md, b, C)
                row.append(int(x.to_fraction()) if x.is_integer() else x)
            self.table.append(row)

    def __getitem__(self, key):
        bi, ci = key
        return self.table[bi][ci]

    def cross_check(self):
        """[(block, class, sum, eigen, rank)] for every disagreement."""
        bad = []
        for bi, b in enumerate(self.bl.classes):
            for ci, C in enumerate(self.cl.classes):
                s = self.table[bi][ci]
                e = overlap_eigen(self.md, self.cl, b, ci)
                r = overlap_rank(self.md, b, C)
                if not (isinstance(s, int) and s == e == r):
                    bad.append((bi, ci, s, e, r))
        return bad


def overlaps(md, g):
    key = ("ov", g)
    c = _cache(md)
    if key not in c:
        c[key] = OverlapTable(md, g)
    return c[key]


# identity suite --------------------------------------------------------------

def verify_partition_identities(md, g, prec=192):
    """Exact check of the class/block identities for one FC set."""
    rep = Report("partition %s %s" % (md.name, set_label(md, g)))
    cp = classes(md, g)
    bp = blocks(md, g)
    gm = cp.gm
    n = md.rank
    gd = dual(md, g)
    rep.put("classes", len(cp))
    rep.put("blocks", len(bp))
    rep.put("extents", " ".join(str(x) for x in cp.extents))

    rep.add("classno", len(cp) == card(g), "%d classes for |g|=%d" % (len(cp), card(g)))
    rep.add("extsumrule", sum((x.inverse() for x in cp.extents), ZERO) == ONE)

    ok = True
    for a in gm:
        for b in gm:
            s = sum((cp.value(i, a) * cp.value(i, b).conj() / cp.extents[i]
                     for i in range(len(cp))), ZERO)
            ok &= s == (1 if a == b else 0)
    rep.add("ortho1", ok)

    ok = True
    for i in range(len(cp)):
        for j in range(len(cp)):
            s = sum((cp.value(i, a) * cp.value(j, a).conj() for a in gm), ZERO)
            ok &= s == (cp.extents[i] if i == j else ZERO)
    rep.add("ortho2", ok)

    traces = {a: trace_N(md, a) for a in gm}
    ok = all(sum((cp.value(i, a).conj() * traces[a] for a in gm), ZERO) / cp.extents[i]
             == len(cp.classes[i]) for i in range(len(cp)))
    rep.add("classsize", ok)

    ok = True
    for i in range(len(cp)):
        inv = cp.extents[i].inverse()
        for p in range(n):
            s = sum((cp.value(i, a).conj() * md.rho[p][a] for a in gm), ZERO) * inv
            ok &= s == (1 if cp.class_of[p] == i else 0)
    rep.add("classcharfun", ok)

    ok = True
    for i, C in enumerate(cp.classes):
        inv = cp.extents[i].inverse()
        for p in range(n):
            for q in range(n):
                lhs = sum((md.rho[w][p] * md.rho[w][q].conj() * md.s2[w] for w in C), ZERO)
                rhs = sum((cp.value(i, a).conj() * md.N(a, p, q) for a in gm), ZERO) * inv
                ok &= lhs == rhs
    rep.add("wmatelms", ok)

    triv = cp.classes[cp.trivial]
    rep.add("trivial_class_is_dual", bits_of(triv) == gd)
    spread = sum((md.qdims[a] ** 2 for a in gm), ZERO)
    rep.add("spread", cp.extents[cp.trivial] == spread, "ext(g^perp)=%s" % spread)
    ext_g = extent(md, g)
    rep.add("recip", ext_g * cp.extents[cp.trivial] == md.global_dim)
    rep.add("block_of_vacuum_is_g", bp.bits[bp.trivial] == g)

    ok = True
    for p in members(gd):
        for q in range(n):
            for r, _m in md.products(p, q):
                ok &= cp.class_of[q] == cp.class_of[r]
    rep.add("product_rule", ok)

    # blocks via fusion connectivity: p ~ q iff N_ap^q > 0 for some a in g
    ok = True
    for p in range(n):
        reach = {q for a in gm for q, _m in md.products(a, p)}
        ok &= reach == set(bp.classes[bp.class_of[p]])
    rep.add("blcrit2", ok)

    ov = overlaps(md, g)
    bad = ov.cross_check()
    rep.add("overlap_cross_check", not bad,
            "; ".join("b%d C%d sum=%s eig=%s rank=%s" % x for x in bad[:3]))
    rep.add("blocksize", all(sum((ov[bi, ci] for ci in range(len(cp))), ZERO) == len(b)
                             for bi, b in enumerate(bp.classes)))
    rep.add("clsize", all(sum((ov[bi, ci] for bi in range(len(bp))), ZERO) == len(C)
                          for ci, C in enumerate(cp.classes)))
    gi = bp.find(g)
    rep.add("trivoverlap", gi is not None and all(ov[gi, ci] == 1 for ci in range(len(cp)))
            and all(ov[bi, cp.trivial] == 1 for bi in range(len(bp))))

    ext_perp = cp.extents[cp.trivial]
    ok = True
    for bi in range(len(bp)):
        for ci in range(len(cp)):
            bound1 = ext_perp / cp.extents[ci]
            bound2 = ext_g / bp.extents[bi]
            ok &= compare_real(ov[bi, ci], bound1, prec) <= 0
            ok &= compare_real(ov[bi, ci], bound2, prec) <= 0
    rep.add("ovbound", ok)
    rep.add("extbound", all(compare_real(x, ext_perp, prec) <= 0 for x in cp.extents)
            and all(compare_real(x, ext_g, prec) <= 0 for x in bp.extents))
    rep.add("sizebound1", all(compare_real(len(C), ext_g, prec) <= 0 for C in cp.classes)
            and all(compare_real(len(b), ext_perp, prec) <= 0 for b in bp.classes))
    rep.add("sizebound2", all(compare_real(len(C) * cp.extents[i], len(triv) * ext_perp, prec) <= 0
                              for i, C in enumerate(cp.classes)))
    return rep


def verify_reciprocity(md, lat):
    """Overlap reciprocity for every nested pair g <= h of FC sets."""
    rep = Report("reciprocity %s" % md.name)
    bad = []
    pairs = 0
    for g in lat:
        for h in lat:
            if g & h != g:
                continue
            pairs += 1
            og, oh = overlaps(md, g), overlaps(md, h)
            for bi, b in enumerate(oh.bl.bits):
                for ci, C in enumerate(og.cl.bits):
                    lhs = sum((og[bj, ci] for bj, b2 in enumerate(og.bl.bits) if b2 & b == b2), ZERO)
                    rhs = sum((oh[bi, cj] for cj, C2 in enumerate(oh.cl.bits) if C2 & C == C2), ZERO)
                    if lhs != rhs:
                        bad.append((g, h, b, C))
    rep.put("pairs", pairs)
    rep.add("reciprocity", not bad,
            "; ".join("%s<=%s" % (set_label(md, x[0]), set_label(md, x[1])) for x in bad[:3]))
    return rep
