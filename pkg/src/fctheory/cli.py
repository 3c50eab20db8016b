"""Command-line front end.

Exit codes: 0 success, 1 parse/validation failure, 2 identity-check failure,
3 reconstruction failure, 4 precondition failure.
"""
import argparse
import os
import sys
from dataclasses import dataclass

from . import center, fcsets, galois, local, partition
from .conjectures import DEFAULT_SUITES, SUITES, run_suites
from .errors import (BudgetExceeded, ModelParseError, PreconditionError, ReconstructionError,
                     ValidationError, VerificationError)
from .fcsets import enumerate_fcsets, parse_set, set_label
from .fusion import build_modular_data, omch_check, validate, verlinde_check
from .io import builtin_catalog, get_model, parse_model, write_model
from .io.drinfeld import DEFAULT_SEED
from .report import Report

EXIT_OK, EXIT_PARSE, EXIT_IDENTITY, EXIT_RECON, EXIT_PRECOND = 0, 1, 2, 3, 4

ENV = {"precision_bits": "FCTHEORY_PRECISION", "denom_bound": "FCTHEORY_DENOM_BOUND",
       "budget": "FCTHEORY_BUDGET", "format": "FCTHEORY_FORMAT", "seed": "FCTHEORY_SEED"}


@dataclass
class RunConfig:
    precision_bits: int = 192
    denom_bound: int = 10 ** 6
    budget: int = 100000
    format: str = "text"
    seed: int = DEFAULT_SEED

    def check(self):
        if self.precision_bits < 64:
            raise PreconditionError("precision must be at least 64 bits")
        if self.denom_bound < 1 or self.budget < 1:
            raise PreconditionError("denominator bound and budget must be positive")
        if self.format not in ("text", "records"):
            raise PreconditionError("format must be text or records")
        return self


def config_from(args, environ=None):
    env = os.environ if environ is None else environ
    cfg = RunConfig()
    for fld, var in ENV.items():
        if var in env:
            val = env[var]
            setattr(cfg, fld, val if fld == "format" else int(val))
        v = getattr(args, fld, None)
        if v is not None:
            setattr(cfg, fld, v)
    return cfg.check()


def load_model(path, cfg=None):
    """A model from a file path, or from the bundled catalog as 'catalog:NAME'."""
    if path.startswith("catalog:"):
        try:
            return get_model(path.split(":", 1)[1])
        except KeyError:
            raise PreconditionError("no catalog model %r" % path) from None
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise PreconditionError("cannot read %s: %s" % (path, e.strerror)) from None
    return parse_model(text)


def modular_data(mf, cfg):
    fd = mf.to_fusion_data()
    problems = validate(fd)
    if problems:
        raise ValidationError("; ".join(problems))
    return build_modular_data(fd, mf.smatrix, cfg.precision_bits, cfg.denom_bound)


def emit(reports, cfg, out):
    for r in reports:
        out.write((r.render_text() if cfg.format == "text" else r.render_records()) + "\n")


# full exact suite ---------------------------------------------------------------

def verify_all(md, lat):
    """Every exact identity suite over every FC set; one report per area."""
    reports = [fcsets.verify_duality(lat)]
    part = Report("partition identities %s" % md.name)
    cen = Report("center %s" % md.name)
    quo = Report("central quotients %s" % md.name)
    for g in lat:
        lbl = set_label(md, g)
        r = partition.verify_partition_identities(md, g)
        part.add(lbl, r.ok, ",".join(c.name for c in r.failures()))
        r = center.verify_center(md, g, lat)
        cen.add(lbl, r.ok, ",".join(c.name for c in r.failures()))
        r = center.verify_quotients(md, g)
        quo.add(lbl, r.ok, ",".join(c.detail for c in r.failures()))
    reports += [part, partition.verify_reciprocity(md, lat), cen, quo]
    ga = galois.galois_action(md)
    gal = galois.verify_galois(ga)
    for l in ga.residues:
        r = galois.verify_theta(ga, l)
        gal.add("theta[%d]" % l, r.ok, ",".join(c.name for c in r.failures()))
    for g in lat:
        lbl = set_label(md, g)
        r = galois.int_lattice_membership(ga, g)
        r2 = galois.verify_galois_classes(ga, g)
        fails = [c.name for c in r.failures() + r2.failures()]
        for l in ga.residues:
            if g & galois.theta_sets(ga, l)[0] == g:
                fails += ["%s[l=%d]" % (c.name, l) for c in galois.dimratio_check(ga, g, l).failures()]
        gal.add(lbl, not fails, ",".join(fails))
    reports.append(gal)
    loc = Report("local %s" % md.name)
    for g in lat:
        if local.is_local(md, g):
            d = local.deconstruct(md, g)
            fails = [c.name for c in d.checks.failures()]
            loc.add(set_label(md, g), not fails, ",".join(fails))
    reports.append(loc)
    return reports


# commands --------------------------------------------------------------------------

def cmd_validate(args, cfg, out):
    mf = load_model(args.file, cfg)
    fd = mf.to_fusion_data()
    rep = Report("validate %s" % mf.name)
    problems = validate(fd)
    for p in problems:
        rep.add(p.split(":", 1)[0], False, p)
    if problems:
        emit([rep], cfg, out)
        return EXIT_PARSE
    rep.add("axioms", True)
    md = build_modular_data(fd, mf.smatrix, cfg.precision_bits, cfg.denom_bound)
    rep.add("verlinde", verlinde_check(md))
    rep.add("omch", omch_check(md))
    if md.ver3_consistent is not None:
        rep.add("smatrix_matches_weights", md.ver3_consistent)
    emit([rep], cfg, out)
    return EXIT_OK if rep.ok else EXIT_IDENTITY


def cmd_info(args, cfg, out):
    mf = load_model(args.file, cfg)
    md = modular_data(mf, cfg)
    rep = Report("info %s" % md.name)
    rep.put("rank", md.rank)
    rep.put("conductor", galois.conductor_of(md.weights))
    rep.put("field_conductor", md.conductor)
    rep.put("global_dim", md.global_dim)
    for p in range(md.rank):
        rep.put("primary.%s" % md.labels[p], "h=%s d=%s conj=%s" % (
            md.weights[p], md.qdims[p], md.labels[md.charge_conj(p)]))
    for n in md.notes:
        rep.put("note", n)
    emit([rep], cfg, out)
    return EXIT_OK


def cmd_fcsets(args, cfg, out):
    md = modular_data(load_model(args.file, cfg), cfg)
    lat = enumerate_fcsets(md, cfg.budget)
    rep = fcsets.lattice_props(lat, arguesian=args.arguesian)
    for i, g in enumerate(lat):
        rep.put("set.%d" % i, "%s dual=%s" % (set_label(md, g), set_label(md, lat.dual(g))))
    dual_rep = fcsets.verify_duality(lat)
    if args.lattice_out:
        with open(args.lattice_out, "w", encoding="utf-8") as fh:
            fh.write(lat.to_dot())
    emit([rep, dual_rep], cfg, out)
    return EXIT_OK if dual_rep.ok else EXIT_IDENTITY


def _fc_set(md, text):
    g = parse_set(md, text)
    if not fcsets.is_fc(md, g):
        raise PreconditionError("%s is not fusion closed" % set_label(md, g))
    return g


def cmd_classes(args, cfg, out):
    md = modular_data(load_model(args.file, cfg), cfg)
    g = _fc_set(md, args.set)
    cp, bp = partition.classes(md, g), partition.blocks(md, g)
    Z = center.center_of(md, g)
    ov = partition.overlaps(md, g)
    rep = Report("classes %s %s" % (md.name, set_label(md, g)))
    rep.put("dual", set_label(md, fcsets.dual(md, g)))
    for i in range(len(cp)):
        rep.put("class.%d" % i, "%s extent=%s central=%s" % (cp.label(i), cp.extents[i],
                                                             "yes" if i in Z else "no"))
    for i in range(len(bp)):
        rep.put("block.%d" % i, "%s extent=%s overlaps=%s" % (
            bp.label(i), bp.extents[i], ",".join(str(ov[i, j]) for j in range(len(cp)))))
    rep.put("center", " ".join(Z.label(z) for z in Z))
    ident = partition.verify_partition_identities(md, g)
    cen = center.verify_center(md, g)
    emit([rep, ident, cen], cfg, out)
    return EXIT_OK if ident.ok and cen.ok else EXIT_IDENTITY


def cmd_deconstruct(args, cfg, out):
    md = modular_data(load_model(args.file, cfg), cfg)
    g = _fc_set(md, args.twister)
    d = local.deconstruct(md, g)
    rep = d.to_report()
    emit([rep], cfg, out)
    return EXIT_OK if rep.ok else EXIT_IDENTITY


def cmd_galois(args, cfg, out):
    md = modular_data(load_model(args.file, cfg), cfg)
    ga = galois.galois_action(md)
    ells = [args.ell] if args.ell is not None else ga.residues
    rep = galois.verify_galois(ga)
    reps = [rep]
    for l in ells:
        ga._res(l)
        r = galois.verify_theta(ga, l)
        r.put("permutation", ga.cycles(l))
        r.put("signs", " ".join("%s:%+d" % (md.labels[p], ga.eps(l, p)) for p in range(md.rank)))
        reps.append(r)
    emit(reps, cfg, out)
    return EXIT_OK if all(r.ok for r in reps) else EXIT_IDENTITY


def cmd_conjectures(args, cfg, out):
    md = modular_data(load_model(args.file, cfg), cfg)
    lat = enumerate_fcsets(md, cfg.budget)
    suites = [s.strip() for s in args.suite.split(",") if s.strip()]
    for s in suites:
        if s not in SUITES:
            raise PreconditionError("unknown suite %r (choose from %s)" % (s, ",".join(SUITES)))
    reps = run_suites(md, lat, suites)
    emit(reps, cfg, out)
    return EXIT_OK


def cmd_verify(args, cfg, out):
    md = modular_data(load_model(args.file, cfg), cfg)
    lat = enumerate_fcsets(md, cfg.budget)
    reps = verify_all(md, lat)
    emit(reps, cfg, out)
    return EXIT_OK if all(r.ok for r in reps) else EXIT_IDENTITY


def cmd_catalog(args, cfg, out):
    rep = Report("catalog")
    for mf in builtin_catalog():
        rep.put(mf.name, "rank=%d" % mf.rank)
        if args.emit:
            os.makedirs(args.emit, exist_ok=True)
            with open(os.path.join(args.emit, mf.name + ".model"), "w", encoding="utf-8") as fh:
                fh.write(write_model(mf))
    emit([rep], cfg, out)
    return EXIT_OK


def _group_table(text):
    from .io import cyclic_group, dihedral_group, symmetric_group
    text = text.strip().lower()
    try:
        kind, n = text[0], int(text[1:])
    except (IndexError, ValueError):
        raise PreconditionError("group must look like z4, s3 or d4") from None
    if kind == "z" and n >= 1:
        return cyclic_group(n)
    if kind == "s" and n >= 1:
        return symmetric_group(n)
    if kind == "d" and n >= 3:
        return dihedral_group(n)
    raise PreconditionError("unknown group %r" % text)


def cmd_double(args, cfg, out):
    from .io import drinfeld_double_data
    mf = drinfeld_double_data(_group_table(args.group), name=args.name or "double_" + args.group.lower(),
                              seed=cfg.seed, precision_bits=cfg.precision_bits)
    text = write_model(mf)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="fctheory", description="Fusion-closed sets of a rational model.")
    p.add_argument("--precision", dest="precision_bits", type=int, help="working precision in bits")
    p.add_argument("--denom-bound", dest="denom_bound", type=int, help="reconstruction denominator bound")
    p.add_argument("--budget", type=int, help="maximum number of FC sets to enumerate")
    p.add_argument("--format", choices=("text", "records"), help="report format")
    p.add_argument("--seed", type=int, help="seed for randomized internals")
    sub = p.add_subparsers(dest="command", required=True)
    model_help = "model file, or catalog:NAME"

    s = sub.add_parser("validate", help="check fusion axioms and the Verlinde formula")
    s.add_argument("file", help=model_help)
    s.set_defaults(func=cmd_validate)
    s = sub.add_parser("info", help="dimensions, weights and conductor")
    s.add_argument("file", help=model_help)
    s.set_defaults(func=cmd_info)
    s = sub.add_parser("fcsets", help="enumerate the lattice of FC sets")
    s.add_argument("file", help=model_help)
    s.add_argument("--lattice-out", help="write the Hasse diagram as DOT")
    s.add_argument("--arguesian", action="store_true", help="also test the Arguesian law")
    s.set_defaults(func=cmd_fcsets)
    s = sub.add_parser("classes", help="classes, blocks, overlaps and center of an FC set")
    s.add_argument("file", help=model_help)
    s.add_argument("--set", required=True, help="comma-separated labels")
    s.set_defaults(func=cmd_classes)
    s = sub.add_parser("deconstruct", help="sector structure of a local FC set")
    s.add_argument("file", help=model_help)
    s.add_argument("--twister", required=True, help="comma-separated labels of a local FC set")
    s.set_defaults(func=cmd_deconstruct)
    s = sub.add_parser("galois", help="Galois permutations, signs and Theta sets")
    s.add_argument("file", help=model_help)
    s.add_argument("--ell", type=int, help="a single residue prime to the conductor")
    s.set_defaults(func=cmd_galois)
    s = sub.add_parser("conjectures", help="run the conjecture harness over all FC sets")
    s.add_argument("file", help=model_help)
    s.add_argument("--suite", default=",".join(DEFAULT_SUITES),
                   help="comma-separated subset of %s" % ",".join(SUITES))
    s.set_defaults(func=cmd_conjectures)
    s = sub.add_parser("verify", help="run every exact identity suite over all FC sets")
    s.add_argument("file", help=model_help)
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("double", help="modular data of the Drinfeld double of a small group")
    s.add_argument("--group", required=True, help="z<n>, s<n> or d<n> (order at most 12)")
    s.add_argument("--name", help="model name")
    s.add_argument("-o", "--output", help="output file (default: standard output)")
    s.set_defaults(func=cmd_double)
    s = sub.add_parser("catalog", help="list or write the bundled models")
    s.add_argument("--emit", metavar="DIR", help="write NAME.model files into DIR")
    s.set_defaults(func=cmd_catalog)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from(args)
        return args.func(args, cfg, out)
    except (ModelParseError, ValidationError) as e:
        err.write("error: %s\n" % e)
        return EXIT_PARSE
    except VerificationError as e:
        err.write("identity failure: %s\n" % e)
        return EXIT_IDENTITY
    except ReconstructionError as e:
        err.write("reconstruction failure: %s\n" % e)
        return EXIT_RECON
    except (PreconditionError, BudgetExceeded) as e:
        err.write("precondition failure: %s\n" % e)
        return EXIT_PRECOND


if __name__ == "__main__":
    sys.exit(main())
