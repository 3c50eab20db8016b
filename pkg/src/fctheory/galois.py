"""Galois permutations of primaries, the FC sets Theta_l, and Galois-related checks."""
from math import gcd

from .center import center_of
from .cyclo import ONE, ZERO, compare_real, units
from .errors import PreconditionError, VerificationError
from .fcsets import bits_of, closure, dual, members, set_label
from .fusion import conductor_of
from .partition import blocks, classes, extent, overlaps
from .report import Report


class GaloisAction:
    """perms[l][p] = pi(l)p and signs[l][p] = eps_l(p) for l prime to the conductor.

    The conductor N comes from the weights.  When the irrep values need a
    larger field (conductor M), l is lifted to a residue mod M that is
    congruent to l mod N and coprime to M.
    """

    def __init__(self, md):
        self.md = md
        self.N = conductor_of(md.weights)
        self.M = md.conductor
        self.residues = units(self.N)
        self._lift = {l: self._lift_residue(l) for l in self.residues}
        rows = {r: p for p, r in enumerate(md.rho)}
        self.perms, self.signs = {}, {}
        d = md.qdims
        for l in self.residues:
            perm = []
            for p in range(md.rank):
                img = tuple(x.galois(self._lift[l]) for x in md.rho[p])
                if img not in rows:
                    raise VerificationError("no irrep matches sigma_%d(rho_%s)" % (l, md.labels[p]))
                perm.append(rows[img])
            self.perms[l] = perm
            signs = []
            for p in range(md.rank):
                e = self.sigma(l, d[p]) * d[perm[0]] / d[perm[p]]
                if e == ONE:
                    signs.append(1)
                elif e == -ONE:
                    signs.append(-1)
                else:
                    raise VerificationError("sigma_%d(d_%s) is not +-d ratio" % (l, md.labels[p]))
            self.signs[l] = signs

    def _lift_residue(self, l):
        L = l % self.N if self.N > 1 else 1
        while gcd(L, self.M) != 1:
            L += self.N
        return L

    def sigma(self, l, x):
        return x.galois(self._lift[l % self.N if self.N > 1 else 1])

    def pi(self, l, p):
        return self.perms[self._res(l)][p]

    def eps(self, l, p):
        return self.signs[self._res(l)][p]

    def _res(self, l):
        r = l % self.N if self.N > 1 else 1
        if r not in self.perms:
            raise PreconditionError("%d is not a unit mod %d" % (l, self.N))
        return r

    def image(self, l, bits):
        return bits_of(self.pi(l, p) for p in members(bits))

    def cycles(self, l):
        """Permutation pi(l) in cycle notation over labels, fixed points omitted."""
        perm = self.perms[self._res(l)]
        seen, out = set(), []
        for p in range(len(perm)):
            if p in seen or perm[p] == p:
                continue
            cyc, x = [], p
            while x not in seen:
                seen.add(x)
                cyc.append(self.md.labels[x])
                x = perm[x]
            out.append("(" + " ".join(cyc) + ")")
        return "".join(out) or "()"


def galois_action(md):
    ga = getattr(md, "_galois", None)
    if ga is None:
        ga = md._galois = GaloisAction(md)
    return ga


def verify_galois(ga):
    md = ga.md
    n = md.rank
    rep = Report("galois %s" % md.name)
    rep.put("conductor", ga.N)
    rep.put("field_conductor", ga.M)
    R = ga.residues
    rep.add("identity", ga.perms[1] == list(range(n)))
    rep.add("homomorphism", all(
        [ga.perms[l][ga.perms[m][p]] for p in range(n)] == ga.perms[(l * m) % ga.N if ga.N > 1 else 1]
        for l in R for m in R))
    rep.add("galact", all(tuple(ga.sigma(l, x) for x in md.rho[p]) == md.rho[ga.perms[l][p]]
                          for l in R for p in range(n)))
    rep.add("galact3", all(ga.sigma(l, md.qdims[p]) == ga.signs[l][p] * md.qdims[ga.perms[l][p]]
                           / md.qdims[ga.perms[l][0]] for l in R for p in range(n)))
    minus = (-1) % ga.N if ga.N > 1 else 1
    rep.add("charge_conjugation", ga.perms[minus] == [md.charge_conj(p) for p in range(n)])
    bad = []
    for l in R:
        for p in range(n):
            q, z = ga.perms[l][p], ga.perms[l][0]
            if (md.weights[q] - md.weights[z] - l * l * md.weights[p]).denominator != 1:
                bad.append("l=%d p=%s" % (l, md.labels[p]))
    rep.add("omgalpi", not bad, "; ".join(bad[:4]))
    return rep


# Theta sets ------------------------------------------------------------------

def theta_sets(ga, l):
    """(Theta_l, Theta_l^+): dims fixed up to sign / exactly by sigma_l."""
    md = ga.md
    th, thp = [], []
    for p in range(md.rank):
        s = ga.sigma(l, md.qdims[p])
        if s == md.qdims[p]:
            th.append(p)
            thp.append(p)
        elif s == -md.qdims[p]:
            th.append(p)
    return bits_of(th), bits_of(thp)


def verify_theta(ga, l):
    md = ga.md
    th, thp = theta_sets(ga, l)
    rep = Report("theta %s l=%d" % (md.name, l))
    rep.put("theta", set_label(md, th))
    rep.put("theta_plus", set_label(md, thp))
    rep.add("theta_is_fc", closure(md, th) == th)
    rep.add("theta_plus_is_fc", closure(md, thp) == thp)
    sgn = {p: (1 if ga.sigma(l, md.qdims[p]) == md.qdims[p] else -1) for p in members(th)}
    rep.add("sign_multiplicative", all(sgn[r] == sgn[p] * sgn[q]
                                       for p in members(th) for q in members(th)
                                       for r, _m in md.products(p, q)))
    if th != thp:
        from .center import center_of, central_quotient
        Z = center_of(md, th)
        ok = any(len(H) == 2 and central_quotient(md, th, H) == thp for H in Z.subgroups())
        rep.add("theta_z2_extension", ok)
    return rep


def integral_sets(md):
    """(Theta, Theta^+): d^2 integral / d integral."""
    return (bits_of(p for p in range(md.rank) if (md.qdims[p] ** 2).is_integer()),
            bits_of(p for p in range(md.rank) if md.qdims[p].is_integer()))


def int_lattice_membership(ga, g):
    """Four equivalent conditions per l, plus membership in L_int and L_int^+."""
    md = ga.md
    cp = classes(md, g)
    Z = center_of(md, g)
    gm = cp.gm
    perp = extent(md, dual(md, g))
    rep = Report("intspread %s %s" % (md.name, set_label(md, g)))
    all_a = True
    for l in ga.residues:
        th, thp = theta_sets(ga, l)
        a = g & th == g
        b = all(ga.sigma(l, md.qdims[x] ** 2) == md.qdims[x] ** 2 for x in gm)
        c = ga.sigma(l, perp) == perp
        img = ga.image(l, cp.bits[cp.trivial])
        j = cp.find(img)
        d = j is not None and j in Z
        if len({a, b, c, d}) != 1:
            raise VerificationError("intspread conditions disagree for l=%d: %s" % (l, (a, b, c, d)))
        # g inside Theta_l^+ iff pi(l) fixes g^perp
        if (g & thp == g) != (img == cp.bits[cp.trivial]):
            raise VerificationError("galdef fails for l=%d" % l)
        all_a &= a
    in_int = perp.is_integer()
    in_plus = all(md.qdims[x].is_integer() for x in gm)
    rep.put("ext_dual", perp)
    rep.put("in_L_int", "yes" if in_int else "no")
    rep.put("in_L_int_plus", "yes" if in_plus else "no")
    rep.add("intspread_agree", True)
    rep.add("int_iff_all_theta", in_int == all_a)
    T, Tp = integral_sets(md)
    rep.add("int_iff_inside_theta", in_int == (g & T == g))
    rep.add("int_plus_iff_inside_theta_plus", in_plus == (g & Tp == g))
    rep.in_L_int, rep.in_L_int_plus = in_int, in_plus
    return rep


# classes and blocks under Galois ----------------------------------------------

def verify_galois_classes(ga, g):
    """Classes and blocks map to classes and blocks; overlaps and extents transform correctly."""
    md = ga.md
    cp, bp = classes(md, g), blocks(md, g)
    Z = center_of(md, g)
    ov = overlaps(md, g)
    rep = Report("galois classes %s %s" % (md.name, set_label(md, g)))
    ok_c = ok_z = ok_ov = ok_ext = ok_b = ok_bov = ok_bext = True
    for l in ga.residues:
        cimg = [cp.find(ga.image(l, b)) for b in cp.bits]
        bimg = [bp.find(ga.image(l, b)) for b in bp.bits]
        if None in cimg:
            ok_c = False
            continue
        if None in bimg:
            ok_b = False
            continue
        for i in range(len(cp)):
            ok_ext &= cp.extents[cimg[i]] == ga.sigma(l, cp.extents[i])
            ok_ov &= all(ov[bi, cimg[i]] == ov[bi, i] for bi in range(len(bp)))
        for z in Z:
            zl = Z.power(z, l)
            ok_z &= all(cimg[Z.action[z][c]] == Z.action[zl][cimg[c]] for c in range(len(cp)))
        for bi in range(len(bp)):
            ok_bext &= bp.extents[bimg[bi]] == ga.sigma(l, bp.extents[bi])
            ok_bov &= all(ov[bimg[bi], ci] == ov[bi, ci] for ci in range(len(cp)))
    rep.add("classes_to_classes", ok_c)
    rep.add("center_twisted_equivariance", ok_z)
    rep.add("class_overlap_invariance", ok_ov)
    rep.add("class_extent_conjugation", ok_ext)
    rep.add("blocks_to_blocks", ok_b)
    rep.add("block_overlap_invariance", ok_bov)
    rep.add("block_extent_conjugation", ok_bext)
    rep.add("self_conjugate", all(((g >> md.charge_conj(a)) & 1) for a in members(g)))
    return rep


def dimratio_check(ga, g, l, prec=192):
    md = ga.md
    th, thp = theta_sets(ga, l)
    if g & th != g:
        raise PreconditionError("%s is not inside Theta_%d" % (set_label(md, g), l))
    bp = blocks(md, g)
    plus = g & thp == g
    rep = Report("dimratio %s %s l=%d" % (md.name, set_label(md, g), l))
    d = md.qdims
    const = sq = True
    for bi, b in enumerate(bp.classes):
        ratios = [ga.sigma(l, d[p]) / d[p] for p in b]
        if plus:
            const &= len(set(ratios)) == 1
        else:
            const &= len({r * r for r in ratios}) == 1
        img = bp.find(ga.image(l, bp.bits[bi]))
        if img is None:
            sq = False
            continue
        target = bp.extents[bi] / bp.extents[img]
        sq &= all((d[ga.pi(l, p)] / d[p]) ** 2 == target for p in b)
    rep.add("ratio_constant_on_blocks" if plus else "squared_ratio_constant_on_blocks", const)
    rep.add("dimratio_squared", sq)
    if all(d[a].is_integer() for a in members(g)):
        ok = True
        for b in bp.classes:
            db = min((d[p] for p in b), key=lambda x: x.real_value(prec))
            ok &= all((d[p] / db).is_rational() for p in b)
        rep.add("rational_multiples_of_block_min", ok)
    return rep


# spectrum polynomials ----------------------------------------------------------

def _polymul(a, b):
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def spectrum_poly(md, C):
    """Coefficients (constant term first) of prod_{p in C} (x - 1/S_0p^2)."""
    P = [ONE]
    for p in C:
        P = _polymul(P, [-md.s2[p].inverse(), ONE])
    return P


def format_poly(P):
    terms = []
    for k in range(len(P) - 1, -1, -1):
        c = P[k]
        if c.is_zero():
            continue
        s = str(c)
        if k and c == ONE:
            s = ""
        elif k and c == -ONE:
            s = "-"
        elif k and (" " in s):
            s = "(%s)" % s
        terms.append(s + ("x^%d" % k if k > 1 else ("x" if k == 1 else "")))
    return " + ".join(terms).replace("+ -", "- ") or "0"


def conjecture_spect(ga, g):
    """P_{lC} = P_C when g lies in Theta_l; plus the companion and rescaling identities."""
    md = ga.md
    cp = classes(md, g)
    gd = dual(md, g)
    polys = [spectrum_poly(md, C) for C in cp.classes]
    rep = Report("spect %s %s" % (md.name, set_label(md, g)))
    bad, bad_comp, bad_trans = [], [], []
    tested = 0
    for l in ga.residues:
        th, _ = theta_sets(ga, l)
        for i in range(len(cp)):
            j = cp.find(ga.image(l, cp.bits[i]))
            if j is None:
                bad_comp.append("l=%d C=%s image is not a class" % (l, cp.label(i)))
                continue
            if [ga.sigma(l, c) for c in polys[i]] != polys[j]:
                bad_comp.append("l=%d C=%s" % (l, cp.label(i)))
            if g & th == g:
                tested += 1
                if polys[i] != polys[j]:
                    bad.append("l=%d C=%s P_C=%s P_lC=%s" % (l, cp.label(i), format_poly(polys[i]),
                                                             format_poly(polys[j])))
            if gd & th == gd:
                r = cp.extents[j] / cp.extents[i]
                n = len(cp.classes[i])
                scaled = [polys[i][k] * r ** (n - k) for k in range(n + 1)]
                if scaled != polys[j]:
                    bad_trans.append("l=%d C=%s" % (l, cp.label(i)))
    rep.put("tested_pairs", tested)
    rep.add("spect", not bad, "; ".join(bad))
    rep.add("spect_galois_companion", not bad_comp, "; ".join(bad_comp[:3]))
    rep.add("spptrans", not bad_trans, "; ".join(bad_trans[:3]))
    if extent(md, gd).is_integer():
        rep.put("integer_coefficients", "yes" if all(c.is_integer() for P in polys for c in P) else "no")
    rep.put("counterexamples", len(bad))
    return rep
