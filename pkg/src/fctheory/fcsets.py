"""Fusion-closed (FC) sets of primaries and their lattice.

Sets of primaries are bitsets (int), bit p set when primary p is a member.
"""
from itertools import product

from .errors import BudgetExceeded, PreconditionError
from .report import Report


def bits_of(indices):
    b = 0
    for i in indices:
        b |= 1 << i
    return b


def members(bits):
    out, i = [], 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def card(bits):
    return bin(bits).count("1")


def set_label(md, bits):
    return "{" + ",".join(md.labels[i] for i in members(bits)) + "}"


def parse_set(md, text):
    labels = [t.strip() for t in text.split(",") if t.strip()]
    if not labels:
        raise PreconditionError("empty set of labels")
    return bits_of(md.index(l) for l in labels)


def _product_masks(md):
    cache = getattr(md, "_product_masks", None)
    if cache is None:
        n = md.rank
        cache = [[bits_of(r for r, _ in md.products(p, q)) for q in range(n)] for p in range(n)]
        md._product_masks = cache
    return cache


def closure(md, bits):
    """Smallest FC set containing bits (and the vacuum)."""
    masks = _product_masks(md)
    s = bits | 1
    todo = members(s)
    while todo:
        p = todo.pop()
        for q in members(s):
            new = masks[p][q] & ~s
            if new:
                s |= new
                todo.extend(members(new))
    return s


def is_fc(md, bits):
    return bool(bits & 1) and closure(md, bits) == bits


def dual(md, g):
    """g^perp = {p : rho_p(a) = d_a for all a in g}."""
    gm = members(g)
    d = md.qdims
    return bits_of(p for p in range(md.rank) if all(md.rho[p][a] == d[a] for a in gm))


def meet(g, h):
    return g & h


def join(md, g, h):
    return dual(md, dual(md, g) & dual(md, h))


def enumerate_fcsets(md, budget=100000):
    """All FC sets by breadth-first closure, sorted by (cardinality, bitset)."""
    start = closure(md, 1)
    seen = {start}
    frontier = [start]
    n = md.rank
    while frontier:
        nxt = []
        for s in frontier:
            for p in range(n):
                if s >> p & 1:
                    continue
                t = closure(md, s | (1 << p))
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
                    if len(seen) > budget:
                        raise BudgetExceeded("more than %d FC sets" % budget)
        frontier = nxt
    return FCLattice(md, sorted(seen, key=lambda b: (card(b), b)))


class FCLattice:
    def __init__(self, md, sets):
        self.md = md
        self.sets = list(sets)
        self.index = {s: i for i, s in enumerate(self.sets)}
        self._dual = {s: dual(md, s) for s in self.sets}

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, g):
        return g in self.index

    @property
    def bottom(self):
        return self.sets[0]

    @property
    def top(self):
        return self.sets[-1]

    def dual(self, g):
        return self._dual[g] if g in self._dual else dual(self.md, g)

    def meet(self, g, h):
        return g & h

    def join(self, g, h):
        return self.dual(self.dual(g) & self.dual(h))

    def leq(self, g, h):
        return g & h == g

    def hasse_edges(self):
        """Covering pairs (g, h) with g < h and nothing strictly between."""
        out = []
        for g in self.sets:
            ups = [h for h in self.sets if h != g and self.leq(g, h)]
            for h in ups:
                if not any(k != h and self.leq(k, h) for k in ups):
                    out.append((g, h))
        return out

    def to_dot(self):
        md = self.md
        lines = ["digraph fcsets {", "  rankdir=BT;"]
        for i, s in enumerate(self.sets):
            lines.append('  n%d [label="%s"];' % (i, set_label(md, s)))
        for g, h in self.hasse_edges():
            lines.append("  n%d -> n%d;" % (self.index[g], self.index[h]))
        lines.append("}")
        return "\n".join(lines) + "\n"


def verify_duality(lat):
    """Duality is an order-reversing involution on FC sets; join matches closure of union."""
    rep = Report("duality")
    md = lat.md
    bad_fc = [g for g in lat if lat.dual(g) not in lat]
    rep.add("dual_is_fc", not bad_fc, ", ".join(set_label(md, g) for g in bad_fc))
    bad_inv = [g for g in lat if lat.dual(lat.dual(g)) != g]
    rep.add("dual_involution", not bad_inv, ", ".join(set_label(md, g) for g in bad_inv))
    bad_ord = [(g, h) for g in lat for h in lat
               if lat.leq(g, h) and not lat.leq(lat.dual(h), lat.dual(g))]
    rep.add("dual_order_reversing", not bad_ord)
    bad_join = [(g, h) for g in lat for h in lat if lat.join(g, h) != closure(md, g | h)]
    rep.add("join_is_least_upper_bound", not bad_join)
    rep.add("dual_bottom_top", lat.dual(lat.bottom) == lat.top and lat.dual(lat.top) == lat.bottom)
    return rep


def arguesian_violation(lat):
    """First sextuple violating the Arguesian law (Jonsson's form), or None."""
    J, M = lat.join, lat.meet
    sets = lat.sets
    for a0, a1, a2, b0, b1, b2 in product(sets, repeat=6):
        c2 = M(J(a0, a1), J(b0, b1))
        c0 = M(J(a1, a2), J(b1, b2))
        c1 = M(J(a0, a2), J(b0, b2))
        c = M(c2, J(c0, c1))
        lhs = M(M(J(a0, b0), J(a1, b1)), J(a2, b2))
        rhs = J(a0, M(b0, J(c, b1)))
        if not lat.leq(lhs, rhs):
            return (a0, a1, a2, b0, b1, b2)
    return None


def lattice_props(lat, arguesian=False):
    """Modularity and distributivity over all triples, with violating witnesses."""
    md = lat.md
    rep = Report("lattice %s" % md.name)
    J = lat.join
    mod_w = None
    for x, a, b in product(lat.sets, repeat=3):
        if lat.leq(x, b) and J(x, a & b) != (J(x, a) & b):
            mod_w = (x, a, b)
            break
    dist_w = None
    for a, b, c in product(lat.sets, repeat=3):
        if a & J(b, c) != J(a & b, a & c):
            dist_w = (a, b, c)
            break
    rep.put("fc_sets", len(lat))
    rep.put("modular", "yes" if mod_w is None else "no")
    rep.put("distributive", "yes" if dist_w is None else "no")
    if mod_w:
        rep.put("modular_witness", " ".join(set_label(md, s) for s in mod_w))
    if dist_w:
        rep.put("distributive_witness", " ".join(set_label(md, s) for s in dist_w))
    if arguesian:
        w = arguesian_violation(lat)
        rep.put("arguesian", "yes" if w is None else "no")
        if w:
            rep.put("arguesian_witness", " ".join(set_label(md, s) for s in w))
    rep.modular = mod_w is None
    rep.distributive = dist_w is None
    rep.modular_witness, rep.distributive_witness = mod_w, dist_w
    return rep
