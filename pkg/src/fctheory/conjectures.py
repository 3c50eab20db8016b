"""Conjecture harness: runs the open conjectures over a whole FC lattice.

Counterexamples are reported with full witnesses, never raised.
"""
from .center import conjecture_algint, nilpotent_chain
from .fcsets import dual, set_label
from .galois import conjecture_spect, galois_action
from .local import char_ring_checks
from .partition import extent
from .report import Report

SUITES = ("algint", "spect", "lagrange", "charring", "nilpdiv")
DEFAULT_SUITES = ("algint", "spect", "lagrange", "charring")


def lagrange(md, lat):
    """ext(g^perp) / ext(h^perp) is an algebraic integer for every nested pair h <= g."""
    rep = Report("lagrange %s" % md.name)
    perp = {g: extent(md, dual(md, g)) for g in lat}
    bad = []
    pairs = 0
    for g in lat:
        for h in lat:
            if h & g != h:
                continue
            pairs += 1
            r = perp[g] / perp[h]
            if not r.is_algebraic_integer():
                bad.append("h=%s g=%s ratio=%s" % (set_label(md, h), set_label(md, g), r))
    rep.put("pairs", pairs)
    rep.put("counterexamples", len(bad))
    rep.add("lagrange", not bad, "; ".join(bad))
    return rep


def nilpotent_divisors(md, lat):
    """For nilpotent g and every divisor d of ext(g^perp), some h <= g has ext(h^perp) = d."""
    rep = Report("nilpdiv %s" % md.name)
    perp = {g: extent(md, dual(md, g)) for g in lat}
    bad = []
    tested = 0
    for g in lat:
        if nilpotent_chain(md, g) is None:
            continue
        tested += 1
        n = int(perp[g].to_fraction())
        have = {int(perp[h].to_fraction()) for h in lat if h & g == h and perp[h].is_integer()}
        for d in range(1, n + 1):
            if n % d == 0 and d not in have:
                bad.append("g=%s missing divisor %d of %d" % (set_label(md, g), d, n))
    rep.put("nilpotent_sets", tested)
    rep.put("counterexamples", len(bad))
    rep.add("nilpdiv", not bad, "; ".join(bad))
    return rep


def run_suites(md, lat, suites=DEFAULT_SUITES):
    """One summary report per suite, each with per-set detail folded into its checks."""
    out = []
    for name in suites:
        if name not in SUITES:
            raise ValueError("unknown suite %r" % name)
        if name == "lagrange":
            out.append(lagrange(md, lat))
        elif name == "nilpdiv":
            out.append(nilpotent_divisors(md, lat))
        else:
            rep = Report("%s %s" % (name, md.name))
            total = 0
            ga = galois_action(md) if name == "spect" else None
            for g in lat:
                if name == "algint":
                    r = conjecture_algint(md, g)
                elif name == "spect":
                    r = conjecture_spect(ga, g)
                else:
                    if not extent(md, dual(md, g)).is_integer():
                        continue
                    r = char_ring_checks(md, g)
                bad = r.failures()
                total += len(bad)
                rep.add(set_label(md, g), not bad,
                        "; ".join("%s: %s" % (c.name, c.detail) for c in bad))
            rep.put("sets", len(rep.checks))
            rep.put("counterexamples", total)
            out.append(rep)
    return out
