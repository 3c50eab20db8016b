"""The center of an FC set: central classes, central characters, quotients and extensions.

Central classes are identified by their index in the ClassPartition; the group
law z1*z2 is the class z1 acting on the class z2.
"""
from fractions import Fraction
from itertools import product

from .cyclo import ONE, ZERO, Cyclotomic, lcm, prime_factors
from .errors import PreconditionError, VerificationError
from .fcsets import bits_of, card, dual, members, set_label
from .partition import classes, blocks, extent, overlaps
from .report import Report


def central_character(md, cp, i, alpha):
    """(ext(g^perp) / ext(C)) * alpha(C) / d_alpha, defined for every class."""
    return cp.extents[cp.trivial] / cp.extents[i] * cp.value(i, alpha) / md.qdims[alpha]


class Center:
    def __init__(self, md, cp):
        self.md = md
        self.cp = cp
        top = cp.extents[cp.trivial]
        by_extent = [i for i in range(len(cp)) if cp.extents[i] == top]
        by_modulus = [i for i in range(len(cp))
                      if all(cp.value(i, a).abs_squared() == md.qdims[a] ** 2 for a in cp.gm)]
        if by_extent != by_modulus:
            raise VerificationError("centrality criteria disagree: %s vs %s" % (by_extent, by_modulus))
        self.indices = by_extent
        self.identity = cp.trivial
        self.char = {z: {a: central_character(md, cp, z, a) for a in cp.gm} for z in self.indices}
        self.action = {z: [self._shift(z, c, 1) for c in range(len(cp))] for z in self.indices}

    def _shift(self, z, c, sign):
        cp = self.cp
        vals = [(self.char[z][a] if sign > 0 else self.char[z][a].inverse()) * cp.value(c, a)
                for a in cp.gm]
        j = cp.find_by_values(vals)
        if j is None:
            raise VerificationError("no class matches z*C for z=%s, C=%s" % (cp.label(z), cp.label(c)))
        return j

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __contains__(self, i):
        return i in self.char

    def mul(self, z1, z2):
        return self.action[z1][z2]

    def inv(self, z):
        return self._shift(z, self.identity, -1)

    def power(self, z, k):
        out = self.identity
        for _ in range(k % self.order(z)):
            out = self.mul(z, out)
        return out

    def order_of_group(self):
        return len(self.indices)

    def order(self, z):
        k, x = 1, z
        while x != self.identity:
            x = self.mul(z, x)
            k += 1
        return k

    def subgroup_closure(self, gens):
        s = {self.identity}
        todo = list(gens)
        while todo:
            x = todo.pop()
            if x in s:
                continue
            s.add(x)
            todo.extend(self.mul(x, y) for y in list(s))
        return frozenset(s)

    def subgroups(self):
        """All subgroups, as frozensets of class indices, by breadth-first closure."""
        start = frozenset([self.identity])
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for H in frontier:
                for z in self.indices:
                    if z not in H:
                        K = self.subgroup_closure(set(H) | {z})
                        if K not in seen:
                            seen.add(K)
                            nxt.append(K)
            frontier = nxt
        return sorted(seen, key=lambda H: (len(H), sorted(H)))

    def order_profile(self, H=None):
        """Sorted (element order, count) pairs; determines a finite abelian group up to isomorphism."""
        counts = {}
        for z in (self.indices if H is None else H):
            k = self.order(z)
            counts[k] = counts.get(k, 0) + 1
        return tuple(sorted(counts.items()))

    def label(self, z):
        return self.cp.label(z)


def _cache(md):
    c = getattr(md, "_center_cache", None)
    if c is None:
        c = md._center_cache = {}
    return c


def center_of(md, g):
    c = _cache(md)
    if g not in c:
        c[g] = Center(md, classes(md, g))
    return c[g]


def abelian_profile(factors):
    """Order profile of Z_{n1} x ... x Z_{nk}."""
    counts = {}
    for elem in product(*[range(n) for n in factors]):
        k = 1
        for x, n in zip(elem, factors):
            k = lcm(k, n // _gcd(x, n))
        counts[k] = counts.get(k, 0) + 1
    return tuple(sorted(counts.items()))


def _gcd(a, b):
    from math import gcd
    return gcd(a, b)


def parse_group(text):
    """'2,2' -> [2, 2]; '' or '1' -> trivial group."""
    text = text.strip()
    if not text:
        return []
    vals = [int(t) for t in text.replace("x", ",").split(",") if t.strip()]
    if any(v < 1 for v in vals):
        raise PreconditionError("invariant factors must be positive")
    return [v for v in vals if v > 1]


def _check_subgroup(Z, H):
    H = frozenset(H)
    if Z.identity not in H or any(z not in Z for z in H):
        raise PreconditionError("not a subset of the center containing the identity")
    if any(Z.mul(a, b) not in H for a in H for b in H):
        raise PreconditionError("not a subgroup of the center")
    return H


# quotients and extensions ----------------------------------------------------

def central_quotient(md, g, H):
    """g/H = {alpha in g : alpha(z) = d_alpha for z in H}."""
    Z = center_of(md, g)
    H = _check_subgroup(Z, H)
    cp = Z.cp
    return bits_of(a for a in cp.gm if all(cp.value(z, a) == md.qdims[a] for z in H))


def characters(Z, H):
    """All characters of the subgroup H as dicts z -> root of unity."""
    H = sorted(H)
    gens = []
    span = frozenset([Z.identity])
    for z in H:
        if z not in span:
            gens.append(z)
            span = Z.subgroup_closure(set(span) | {z})
    out = []
    for vals in product(*[range(Z.order(z)) for z in gens]):
        xi = {Z.identity: ONE}
        frontier = [Z.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for z, k in zip(gens, vals):
                    y = Z.mul(z, x)
                    v = xi[x] * Cyclotomic.zeta(Z.order(z), k)
                    if y in xi:
                        if xi[y] != v:
                            ok = False
                            break
                    else:
                        xi[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok:
            out.append(xi)
    return out


class QuotientStructure:
    def __init__(self, md, g, H):
        self.md = md
        self.g = g
        self.Z = center_of(md, g)
        self.H = _check_subgroup(self.Z, H)
        self.quotient = central_quotient(md, g, self.H)
        self.chars = characters(self.Z, self.H)
        Z, cp = self.Z, self.Z.cp
        self.xi_blocks = []
        for xi in self.chars:
            self.xi_blocks.append(bits_of(a for a in cp.gm if all(Z.char[z][a] == xi[z] for z in self.H)))
        # orbits of H on classes: ZC with stabilizer sizes
        self.orbits = []
        seen = set()
        for c in range(len(cp)):
            if c in seen:
                continue
            orb = sorted({Z.action[z][c] for z in self.H})
            seen.update(orb)
            stab = [z for z in self.H if Z.action[z][c] == c]
            self.orbits.append((c, orb, stab))

    def verify(self):
        md, g, Z, H, cp = self.md, self.g, self.Z, self.H, self.Z.cp
        q = self.quotient
        rep = Report("quotient %s %s by %s" % (md.name, set_label(md, g),
                                               "{" + ",".join(Z.label(z) for z in sorted(H)) + "}"))
        rep.put("quotient", set_label(md, q))
        rep.add("quotient_is_fc", _is_fc(md, q))
        union = 0
        for z in H:
            union |= cp.bits[z]
        rep.add("quotient_dual_is_union", dual(md, q) == union)
        rep.add("characters", len(self.chars) == len(H), "%d characters" % len(self.chars))
        rep.add("xi_partition", sum(card(b) for b in self.xi_blocks) == card(g)
                and _union(self.xi_blocks) == g)
        triv = [i for i, xi in enumerate(self.chars) if all(v == ONE for v in xi.values())]
        rep.add("trivial_xi_is_quotient", len(triv) == 1 and self.xi_blocks[triv[0]] == q)
        bq = blocks(md, q)
        rep.add("xi_are_blocks", all(bq.find(b) is not None for b in self.xi_blocks))
        fix = {z: sum(1 for c in range(len(cp)) if Z.action[z][c] == c) for z in H}
        rep.add("fixed_points_trace", all(sum((Z.char[z][a] for a in cp.gm), ZERO) == fix[z] for z in H))
        ok = True
        for xi, b in zip(self.chars, self.xi_blocks):
            s = sum((xi[z].conj() * fix[z] for z in H), ZERO) / len(H)
            ok &= s == card(b)
        rep.add("xi_cardinality", ok)
        eg = extent(md, g)
        rep.add("xi_extent", all(extent(md, b) == len(H) * eg for b in self.xi_blocks))
        zq = center_of(md, dual(md, q))
        idx = [zq.cp.find(b) for b in self.xi_blocks]
        rep.add("xi_central_in_dual", all(i is not None and i in zq for i in idx))
        ok = True
        for (xi, b), (eta, b2) in product(zip(self.chars, self.xi_blocks), repeat=2):
            prod = {z: xi[z] * eta[z] for z in H}
            k = next(i for i, x in enumerate(self.chars) if all(x[z] == prod[z] for z in H))
            for a in members(b):
                for c in members(b2):
                    ok &= all((self.xi_blocks[k] >> r) & 1 for r, _m in md.products(a, c))
        rep.add("xi_product", ok)
        if all(i is not None for i in idx):
            back = central_quotient(md, dual(md, q), frozenset(idx))
            rep.add("dual_roundtrip", back == dual(md, g))
        cq = classes(md, q)
        ok_cls, ok_ext, ok_ov = True, True, True
        ov = overlaps(md, q)
        for c, orb, stab in self.orbits:
            zc = _union(cp.bits[o] for o in orb)
            j = cq.find(zc)
            if j is None:
                ok_cls = False
                continue
            ok_ext &= cp.extents[c] == Fraction(len(H), len(stab)) * cq.extents[j]
            for xi, b in zip(self.chars, self.xi_blocks):
                expect = 1 if all(xi[z] == ONE for z in stab) else 0
                ok_ov &= ov[bq.find(b), j] == expect
        ok_cls &= len(self.orbits) == len(cq)
        rep.add("quotient_classes_are_orbits", ok_cls)
        rep.add("orbit_extent", ok_ext)
        rep.add("xi_overlap", ok_ov)
        return rep


def _union(bitsets):
    out = 0
    for b in bitsets:
        out |= b
    return out


def _is_fc(md, b):
    from .fcsets import is_fc
    return is_fc(md, b)


def quotient_structure(md, g, H):
    return QuotientStructure(md, g, H)


def central_extensions(md, g, factors=()):
    """FC sets h with h/Z = g for a central Z of h isomorphic to the given abelian group."""
    gd = dual(md, g)
    Z = center_of(md, gd)
    want = abelian_profile(list(factors))
    out = []
    for H in Z.subgroups():
        if Z.order_profile(H) == want:
            out.append(dual(md, central_quotient(md, gd, H)))
    return sorted(set(out), key=lambda b: (card(b), b))


def maximal_central_extension(md, g):
    gd = dual(md, g)
    Z = center_of(md, gd)
    return dual(md, central_quotient(md, gd, frozenset(Z.indices)))


# structural checks -----------------------------------------------------------

def verify_center(md, g, lat=None):
    """Group axioms, central character laws and product rules for the center of g."""
    Z = center_of(md, g)
    cp = Z.cp
    rep = Report("center %s %s" % (md.name, set_label(md, g)))
    rep.put("center", " ".join(Z.label(z) for z in Z))
    rep.put("center_order", len(Z))
    e = Z.identity
    rep.add("identity_central", e in Z)
    rep.add("closure", all(Z.mul(a, b) in Z for a in Z for b in Z))
    rep.add("identity_law", all(Z.mul(e, a) == a for a in Z) and all(Z.action[e][c] == c for c in range(len(cp))))
    rep.add("commutative", all(Z.mul(a, b) == Z.mul(b, a) for a in Z for b in Z))
    rep.add("associative", all(Z.action[Z.mul(a, b)][c] == Z.action[a][Z.action[b][c]]
                               for a in Z for b in Z for c in range(len(cp))))
    rep.add("inverses", all(Z.mul(a, Z.inv(a)) == e for a in Z))
    rep.add("action_is_permutation", all(sorted(Z.action[z]) == list(range(len(cp))) for z in Z))
    rep.add("centprodext", all(cp.extents[Z.action[z][c]] == cp.extents[c] for z in Z for c in range(len(cp))))
    rep.add("central_char_root_of_unity", all(Z.char[z][a].is_root_of_unity() for z in Z for a in cp.gm))
    rep.add("trivial_char_is_one", all(v == ONE for v in Z.char[e].values()))
    ok = True
    for z in Z:
        for c in range(len(cp)):
            zc = Z.action[z][c]
            ok &= all(central_character(md, cp, zc, a) == Z.char[z][a] * central_character(md, cp, c, a)
                      for a in cp.gm)
    rep.add("cechprod", ok)
    ok = True
    for z in Z:
        for a in cp.gm:
            for b in cp.gm:
                for r, _m in md.products(a, b):
                    ok &= Z.char[z][r] == Z.char[z][a] * Z.char[z][b]
    rep.add("central_char_multiplicative", ok)
    ok = True
    for z in Z:
        for q in cp.classes[z]:
            for c in range(len(cp)):
                target = cp.classes[Z.action[z][c]]
                for p in cp.classes[c]:
                    ok &= all(r in target for r, _m in md.products(p, q))
    rep.add("genprodrule", ok)
    # omega_a omega_p / omega_q = central character, for N_ap^q > 0 and p central
    ok = True
    for z in Z:
        for p in cp.classes[z]:
            for a in cp.gm:
                for q, _m in md.products(a, p):
                    ok &= md.omegas[a] * md.omegas[p] / md.omegas[q] == Z.char[z][a]
    rep.add("centralchar", ok)
    triv = bits_of(p for p in range(md.rank)
                   if all(md.omegas[q] == md.omegas[a] * md.omegas[p]
                          for a in cp.gm for q, _m in md.products(a, p)))
    rep.add("trivclass", triv == dual(md, g))
    ok = True
    for z in Z:
        for c in range(len(cp)):
            ok &= Z.mul(Z.inv(z), Z.action[z][c]) == c or Z.action[Z.inv(z)][Z.action[z][c]] == c
    rep.add("inverse_action", ok)
    if lat is not None:
        ok = True
        for H in Z.subgroups():
            q = central_quotient(md, g, H)
            ok &= q in lat
        rep.add("quotients_in_lattice", ok)
        # every h between g/Z(g) and g is a quotient by some subgroup
        full = central_quotient(md, g, frozenset(Z.indices))
        quots = {central_quotient(md, g, H) for H in Z.subgroups()}
        rep.add("intermediate_sets_are_quotients",
                all(h in quots for h in lat if full & h == full and h & g == h))
    return rep


def verify_quotients(md, g):
    """Theorem-level checks for every central subgroup, plus the extension roundtrip."""
    Z = center_of(md, g)
    rep = Report("quotients %s %s" % (md.name, set_label(md, g)))
    subs = Z.subgroups()
    rep.put("subgroups", len(subs))
    fails = []
    for H in subs:
        qs = quotient_structure(md, g, H)
        r = qs.verify()
        if not r.ok:
            fails.append("%s: %s" % (r.title, ",".join(c.name for c in r.failures())))
        q = qs.quotient
        factors = _invariant_factors(Z, H)
        if g not in central_extensions(md, q, factors):
            fails.append("roundtrip %s" % set_label(md, q))
    rep.add("quotient_structure", not fails, "; ".join(fails[:3]))
    return rep


def _invariant_factors(Z, H):
    """Invariant factors of the subgroup H, matched by order profile."""
    n = len(H)
    prof = Z.order_profile(H)
    for fac in _factorizations(n):
        if abelian_profile(fac) == prof:
            return fac
    raise VerificationError("subgroup is not abelian of order %d" % n)


def _factorizations(n, smallest=2):
    """Lists [n1, ..., nk] with n1 | n2 | ... | nk and product n."""
    if n == 1:
        return [[]]
    out = []
    for d in range(smallest, n + 1):
        if n % d == 0:
            for rest in _factorizations(n // d, d):
                if not rest or rest[0] % d == 0:
                    out.append([d] + rest)
    return out


# classifiers -----------------------------------------------------------------

def is_abelian(md, g):
    cp = classes(md, g)
    Z = center_of(md, g)
    by_classes = len(Z) == len(cp)
    by_dims = all(md.qdims[a] == ONE for a in members(g))
    if by_classes != by_dims:
        raise VerificationError("abelian criteria disagree for %s" % set_label(md, g))
    return by_classes


def nilpotent_chain(md, g, lat=None, _memo=None):
    """A chain {0} = g0 < g1 < ... < g of central extensions, or None."""
    memo = _memo if _memo is not None else getattr(md, "_nil_memo", None)
    if memo is None:
        memo = md._nil_memo = {}
    if g in memo:
        return memo[g]
    if g == 1:
        memo[g] = [g]
        return memo[g]
    memo[g] = None       # guards against cycles; quotients are strictly smaller anyway
    Z = center_of(md, g)
    for H in Z.subgroups():
        if len(H) == 1:
            continue
        q = central_quotient(md, g, H)
        chain = nilpotent_chain(md, q, lat, memo)
        if chain is not None:
            memo[g] = chain + [g]
            break
    return memo[g]


def is_nilpotent(md, g):
    return nilpotent_chain(md, g) is not None


def _prime_power(n):
    """Prime p when n = p^k with k >= 1, else None."""
    if n < 2:
        return None
    ps = prime_factors(n)
    return ps[0] if len(ps) == 1 else None


def solvable_chain(md, g, lat, supersolvable=False):
    """Chain {0} = g0 < ... < g with ext(g_{i-1}) / ext(g_i) a prime power (a prime).

    Only defined on FC sets with integral ext(g^perp); returns None otherwise.
    """
    if not _integral(extent(md, dual(md, g)).inverse().inverse()):
        return None
    below = [h for h in lat if h & g == h]
    ext = {h: extent(md, h) for h in below}
    best = {1: [1]}
    for h in sorted(below, key=lambda b: (card(b), b)):
        if h == 1 or h in best:
            continue
        for k in sorted(best, key=lambda b: (card(b), b)):
            if k == h or k & h != k:
                continue
            r = ext[k] / ext[h]
            if not r.is_integer():
                continue
            n = int(r.to_fraction())
            p = _prime_power(n)
            if p is None or (supersolvable and n != p):
                continue
            best[h] = best[k] + [h]
            break
    return best.get(g)


def _integral(x):
    return x.is_integer()


def classify(md, g, lat):
    """Abelian / nilpotent / solvable / supersolvable flags with certificates."""
    rep = Report("classify %s %s" % (md.name, set_label(md, g)))
    name = lambda ch: " < ".join(set_label(md, x) for x in ch) if ch else "-"
    perp = extent(md, dual(md, g))
    rep.put("ext_dual", perp)
    rep.put("ext", extent(md, g))
    ab = is_abelian(md, g)
    rep.put("abelian", "yes" if ab else "no")
    nil = nilpotent_chain(md, g)
    rep.put("nilpotent", "yes" if nil else "no")
    rep.put("nilpotent_chain", name(nil))
    if nil is not None:
        rep.add("nilpotent_implies_integral", perp.is_integer())
    if ab:
        rep.add("abelian_implies_nilpotent", nil is not None)
    sol = solvable_chain(md, g, lat)
    sup = solvable_chain(md, g, lat, supersolvable=True)
    rep.put("solvable", "yes" if sol else ("n/a" if not perp.is_integer() else "no"))
    rep.put("solvable_chain", name(sol))
    rep.put("supersolvable", "yes" if sup else ("n/a" if not perp.is_integer() else "no"))
    rep.put("supersolvable_chain", name(sup))
    rep.put("solvability_reading", "ext(g_{i-1})/ext(g_i) is a prime power")
    for key, x in (("ext_dual_odd", perp), ("ext_odd", extent(md, g))):
        rep.put(key, ("yes" if x.to_fraction() % 2 == 1 else "no") if x.is_integer() else "n/a")
    return rep


def conjecture_algint(md, g):
    """Every central character value is an algebraic integer; so is ext(g^perp)/ext(C)."""
    cp = classes(md, g)
    rep = Report("algint %s %s" % (md.name, set_label(md, g)))
    bad, bad_lag = [], []
    top = cp.extents[cp.trivial]
    for i in range(len(cp)):
        r = top / cp.extents[i]
        if not r.is_algebraic_integer():
            bad_lag.append("C=%s ratio=%s" % (cp.label(i), r))
        for a in cp.gm:
            w = central_character(md, cp, i, a)
            if not w.is_algebraic_integer():
                bad.append("C=%s alpha=%s value=%s" % (cp.label(i), md.labels[a], w))
    rep.add("algint", not bad, "; ".join(bad))
    rep.add("class_lagrange", not bad_lag, "; ".join(bad_lag))
    rep.put("counterexamples", len(bad) + len(bad_lag))
    return rep
