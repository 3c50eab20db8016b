"""Local FC sets, twisters, the Ramond class and orbifold deconstruction."""
from dataclasses import dataclass, field
from math import gcd

from .center import center_of, central_extensions
from .cyclo import ONE
from .errors import PreconditionError, VerificationError
from .fcsets import bits_of, closure, dual, members, set_label
from .partition import blocks, classes, extent, overlaps
from .report import Report


def is_local(md, g):
    """g inside its dual; cross-checked against omega_c = omega_a omega_b on fusion triples."""
    by_dual = g & dual(md, g) == g
    gm = members(g)
    by_weights = all(md.omegas[r] == md.omegas[a] * md.omegas[b]
                     for a in gm for b in gm for r, _m in md.products(a, b))
    if by_dual != by_weights:
        raise VerificationError("locality criteria disagree for %s" % set_label(md, g))
    return by_dual


def _require_local(md, g):
    if not is_local(md, g):
        raise PreconditionError("%s is not local" % set_label(md, g))
    bad = [md.labels[a] for a in members(g) if (2 * md.weights[a]).denominator != 1]
    if bad:
        raise VerificationError("local set with non-half-integral weights: %s" % ",".join(bad))


def is_twister(md, g):
    _require_local(md, g)
    return all(md.weights[a].denominator == 1 for a in members(g))


def twister_core(md, g):
    """{a in g : omega_a = 1}; g is this core or a Z2 central extension of it."""
    _require_local(md, g)
    core = bits_of(a for a in members(g) if md.omegas[a] == ONE)
    if closure(md, core) != core or not all(md.weights[a].denominator == 1 for a in members(core)):
        raise VerificationError("twister core of %s is not a twister" % set_label(md, g))
    if core != g and g not in central_extensions(md, core, [2]):
        raise VerificationError("%s is not a Z2 extension of its twister core" % set_label(md, g))
    return core


def ramond_class(md, g):
    """Index of the central class R with rho_R(a) = omega_a d_a for a in g."""
    _require_local(md, g)
    cp = classes(md, g)
    R = cp.find_by_values([md.omegas[a] * md.qdims[a] for a in cp.gm])
    if R is None:
        raise VerificationError("no Ramond class for %s" % set_label(md, g))
    Z = center_of(md, g)
    if R not in Z:
        raise VerificationError("Ramond class is not central")
    if Z.mul(R, R) != Z.identity:
        raise VerificationError("Ramond class does not square to the trivial class")
    return R


@dataclass
class Sector:
    index: int
    label: str
    extent: object
    central: bool
    blocks: list = field(default_factory=list)       # block labels inside the class
    overlaps: list = field(default_factory=list)     # <b, C> for those blocks


@dataclass
class DeconstructionReport:
    model: str
    g: str
    is_local: bool
    is_twister: bool
    ramond_class: str
    twister_core: str
    twist_group_order: object
    twist_group_order_integral: bool
    boson_block_count: int
    fermion_block_count: int
    sectors: list
    checks: Report

    def to_report(self):
        rep = Report("deconstruct %s %s" % (self.model, self.g))
        rep.put("local", "yes" if self.is_local else "no")
        rep.put("twister", "yes" if self.is_twister else "no")
        rep.put("twister_core", self.twister_core)
        rep.put("ramond_class", self.ramond_class)
        rep.put("twist_group_order", self.twist_group_order)
        rep.put("twist_group_order_integral", "yes" if self.twist_group_order_integral else "no")
        rep.put("sectors", len(self.sectors))
        for s in self.sectors:
            rep.put("sector.%d" % s.index, "class=%s extent=%s central=%s blocks=%s overlaps=%s" % (
                s.label, s.extent, "yes" if s.central else "no", " ".join(s.blocks),
                ",".join(str(x) for x in s.overlaps)))
        rep.put("boson_blocks", self.boson_block_count)
        rep.put("fermion_blocks", self.fermion_block_count)
        rep.extend(self.checks)
        return rep


def deconstruct(md, g):
    _require_local(md, g)
    cp, bp = classes(md, g), blocks(md, g)
    Z = center_of(md, g)
    ov = overlaps(md, g)
    R = ramond_class(md, g)
    twister = is_twister(md, g)
    core = twister_core(md, g)
    chk = Report("deconstruction checks")
    home = []
    for b in bp.bits:
        inside = [i for i, c in enumerate(cp.bits) if b & c == b]
        home.append(inside[0] if len(inside) == 1 else None)
    chk.add("blocks_inside_classes", None not in home)
    sectors = []
    t = cp.trivial
    for i in range(len(cp)):
        inner = [bi for bi in range(len(bp)) if home[bi] == i]
        sectors.append(Sector(i, cp.label(i), cp.extents[i], i in Z,
                              [bp.label(bi) for bi in inner], [ov[bi, i] for bi in inner]))
        n_blocks = len(inner)
        s1 = sum(ov[bi, t] for bi in inner)
        s2 = sum(ov[bi, i] for bi in range(len(bp)) if home[bi] == t)
        chk.add("blockcount[%s]" % cp.label(i), n_blocks == s1 == s2,
                "%d blocks, sums %s and %s" % (n_blocks, s1, s2))
    ok = True
    for z in Z:
        n = Z.order(Z.mul(z, R))
        for bi in range(len(bp)):
            if home[bi] != z:
                continue
            ws = [md.weights[p] for p in bp.classes[bi]]
            ok &= all((n * (w - ws[0])).denominator == 1 for w in ws)
    chk.add("trivblocks", ok)
    chk.add("ramond_overlap", all(ov[bi, Z.action[R][home[bi]]] >= 1 for bi in range(len(bp))
                                  if home[bi] is not None))
    bos = sum(1 for h in home if h == t)
    fer = sum(1 for h in home if h == R)
    chk.add("ramond_trivial_iff_twister", (R == t) == twister)
    if R != t:
        chk.add("boson_fermion_balance", bos == fer)
        chk.add("ramond_overlap_one", all(ov[bi, R] == 1 for bi in range(len(bp)) if home[bi] == t))
    chk.add("integer_dims", all(md.qdims[a].is_integer() for a in members(g)))
    order = extent(md, dual(md, g))
    return DeconstructionReport(
        md.name, set_label(md, g), True, twister, cp.label(R), set_label(md, core),
        order, order.is_integer(), bos, fer if R != t else 0, sectors, chk)


def local_sets(md, lat):
    return [g for g in lat if is_local(md, g)]


def char_ring_checks(md, g):
    """Character-ring divisibility properties of an FC set with integral ext(g^perp)."""
    perp = extent(md, dual(md, g))
    if not perp.is_integer():
        raise PreconditionError("%s is not in L_int (ext(g^perp) = %s)" % (set_label(md, g), perp))
    cp = classes(md, g)
    Z = center_of(md, g)
    G = int(perp.to_fraction())
    rep = Report("charring %s %s" % (md.name, set_label(md, g)))
    rep.put("ext_dual", G)
    rep.put("extents", " ".join(str(x) for x in cp.extents))
    ints = all(x.is_integer() for x in cp.extents)
    bad = [cp.label(i) for i, x in enumerate(cp.extents)
           if not x.is_integer() or G % int(x.to_fraction()) != 0]
    rep.add("extent_divides", not bad, ", ".join(bad))
    bad = []
    for a in cp.gm:
        vanishes = any(cp.value(i, a).is_zero() for i in range(len(cp)))
        big = md.qdims[a] != ONE
        if vanishes != big:
            bad.append(md.labels[a])
    rep.add("vanishing_iff_nonlinear", not bad, ", ".join(bad))
    bad = []
    for a in cp.gm:
        d2 = md.qdims[a] ** 2
        if not d2.is_integer() or (G * G) % (len(Z) ** 2 * int(d2.to_fraction())) != 0:
            bad.append(md.labels[a])
    rep.add("center_dim_divides", not bad, ", ".join(bad))
    bad = []
    if ints:
        for a in cp.gm:
            d2 = int((md.qdims[a] ** 2).to_fraction())
            for i in range(len(cp)):
                k = G // int(cp.extents[i].to_fraction())
                v = cp.value(i, a)
                if gcd(d2, k) == 1 and not (v.is_zero() or v.abs_squared() == d2):
                    bad.append("%s on %s" % (md.labels[a], cp.label(i)))
        rep.add("coprime_vanishing", not bad, "; ".join(bad))
    else:
        rep.add("coprime_vanishing", False, "extents not integral")
    if is_local(md, g):
        rep.add("local_integer_dims", all(md.qdims[a].is_integer() for a in cp.gm))
    return rep
