"""Fusion rings, quantum dimensions and the exact table of Verlinde-algebra irreps."""
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import mpmath
import numpy as np

from .cyclo import ONE, ZERO, Cyclotomic, compare_real, cyc, lcm, reconstruct
from .errors import PreconditionError, ReconstructionError, ValidationError, VerificationError


@dataclass(frozen=True, eq=False)
class FusionData:
    labels: tuple
    weights: tuple          # Fractions h_p
    fusion: np.ndarray      # fusion[p, q, r] = N_pq^r
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "weights", tuple(Fraction(h) for h in self.weights))
        object.__setattr__(self, "fusion", np.asarray(self.fusion, dtype=np.int64))

    @property
    def rank(self):
        return len(self.labels)

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise PreconditionError("unknown primary label %r" % (label,)) from None

    def products(self, p, q):
        """[(r, N_pq^r)] with nonzero multiplicity."""
        row = self.fusion[p, q]
        return [(int(r), int(row[r])) for r in np.nonzero(row)[0]]


def conductor_of(weights):
    return reduce(lcm, (Fraction(h).denominator for h in weights), 1)


def validate(fd):
    """List of violated fusion-ring axioms (empty when the data is valid)."""
    out = []
    n = fd.rank
    N = fd.fusion
    if N.shape != (n, n, n):
        return ["shape: fusion tensor has shape %s, expected %s" % (N.shape, (n, n, n))]
    if len(fd.weights) != n:
        out.append("weights: %d weights for rank %d" % (len(fd.weights), n))
    if len(set(fd.labels)) != n:
        out.append("labels: duplicate labels")
    if (N < 0).any():
        out.append("nonnegative: negative fusion multiplicity")
    if not np.array_equal(N[0], np.eye(n, dtype=np.int64)):
        out.append("vacuum: N(0) is not the identity matrix")
    if not np.array_equal(N, N.transpose(1, 0, 2)):
        out.append("commutativity: N_pq^r != N_qp^r")
    # (p*q)*r versus p*(q*r)
    lhs = np.einsum("pqs,srt->pqrt", N, N)
    rhs = np.einsum("qrs,pst->pqrt", N, N)
    if not np.array_equal(lhs, rhs):
        bad = np.argwhere(lhs != rhs)[0]
        out.append("associativity: fails at (p,q,r,t)=%s" % (tuple(int(i) for i in bad),))
    for p in range(n):
        col = N[p, :, 0]
        if sorted(col.tolist()) != [0] * (n - 1) + [1]:
            out.append("conjugation: primary %s has no unique conjugate" % fd.labels[p])
    if fd.weights and fd.weights[0] != 0:
        out.append("vacuum weight: h_0 != 0")
    return out


def _check_valid(fd):
    v = validate(fd)
    if v:
        raise ValidationError("; ".join(v))


def _pf_vector(fd, prec):
    with mpmath.mp.workprec(prec + 32):
        n = fd.rank
        M = mpmath.matrix(n, n)
        total = fd.fusion.sum(axis=0)
        for q in range(n):
            for r in range(n):
                M[q, r] = int(total[q, r])
        E, ER = mpmath.eig(M)
        k = max(range(n), key=lambda i: E[i].real)
        v = [ER[i, k] for i in range(n)]
        v = [x / v[0] for x in v]
        if any(x.real <= 0 for x in v):
            raise PreconditionError("Perron-Frobenius vector is not positive (non-unitary input)")
        return v


def _dims_verified(fd, d):
    n = fd.rank
    if d[0] != ONE:
        return False
    for p in range(n):
        for q in range(p, n):
            s = ZERO
            for r, m in fd.products(p, q):
                s = s + m * d[r]
            if s != d[p] * d[q]:
                return False
    return True


def quantum_dims(fd, precision_bits=192, denom_bound=10 ** 6, precision_cap=None,
                 conductor_multiples=(1, 2, 3, 4), report=None):
    """Exact quantum dimensions, verified against d_p d_q = sum_r N_pq^r d_r."""
    _check_valid(fd)
    N = conductor_of(fd.weights)
    cap = precision_cap or 4 * precision_bits
    for mult in conductor_multiples:
        M = N * mult
        prec = precision_bits
        while prec <= cap:
            approx = _pf_vector(fd, prec)
            try:
                d = [reconstruct(a, M, denom_bound, prec) for a in approx]
            except ReconstructionError:
                prec *= 2
                continue
            if _dims_verified(fd, d):
                if report is not None and (mult != 1 or prec != precision_bits):
                    report.append("dims escalated: conductor %d, precision %d" % (M, prec))
                return tuple(d)
            prec *= 2
    raise ReconstructionError("quantum dimensions could not be reconstructed")


class ModularData:
    """Certified exact irreps rho_w of the Verlinde algebra.

    rho[w][q] = rho_w(q) = S_qw / S_0w, qdims[q] = rho[0][q],
    s2[p] = S_0p^2 = d_p^2 / sum d^2.
    """

    def __init__(self, base, rho, qdims, s2, conductor, ver3_consistent=None, notes=()):
        self.base = base
        self.rho = tuple(tuple(r) for r in rho)
        self.qdims = tuple(qdims)
        self.s2 = tuple(s2)
        self.conductor = conductor
        self.global_dim = sum(self.qdims[p] ** 2 for p in range(base.rank)) if base.rank else ONE
        self.omegas = tuple(Cyclotomic.root_of_unity(h) for h in base.weights)
        self.ver3_consistent = ver3_consistent
        self.notes = tuple(notes)
        self._conj = tuple(int(np.nonzero(base.fusion[p, :, 0])[0][0]) for p in range(base.rank))

    @property
    def rank(self):
        return self.base.rank

    @property
    def labels(self):
        return self.base.labels

    @property
    def name(self):
        return self.base.name

    @property
    def weights(self):
        return self.base.weights

    def N(self, p, q, r):
        return int(self.base.fusion[p, q, r])

    def products(self, p, q):
        return self.base.products(p, q)

    def charge_conj(self, p):
        return self._conj[p]

    def index(self, label):
        return self.base.index(label)

    def d(self, p):
        return self.qdims[p]

    def omega(self, p):
        return self.omegas[p]

    def verlinde_check(self):
        return verlinde_check(self)

    def omch_check(self):
        return omch_check(self)


def _ver3_table(fd, d, omegas):
    n = fd.rank
    inv = [w.inverse() for w in omegas]
    X = [[None] * n for _ in range(n)]
    for p in range(n):
        for q in range(p, n):
            s = ZERO
            for r, m in fd.products(p, q):
                s = s + m * d[r] * inv[r]
            X[p][q] = X[q][p] = s * omegas[p] * omegas[q]
    return X


def _verify_irreps(fd, rho, precision_bits):
    n = fd.rank
    for w in range(n):
        if rho[w][0] != ONE:
            raise VerificationError("rho_%s(0) != 1" % fd.labels[w])
        for q in range(n):
            if not rho[w][q].is_algebraic_integer():
                raise VerificationError("rho_%s(%s) is not an algebraic integer"
                                        % (fd.labels[w], fd.labels[q]))
        for p in range(n):
            for q in range(p, n):
                s = ZERO
                for r, m in fd.products(p, q):
                    s = s + m * rho[w][r]
                if s != rho[w][p] * rho[w][q]:
                    raise VerificationError(
                        "rho_%s is not a representation at (%s, %s)"
                        % (fd.labels[w], fd.labels[p], fd.labels[q]))
    if len(set(map(tuple, rho))) != n:
        raise VerificationError("duplicate irreps: input is not modular data of a rational model")
    d = rho[0]
    for w in range(n):
        for q in range(n):
            if compare_real(rho[w][q].abs_squared(), d[q] ** 2, precision_bits) > 0:
                raise VerificationError("|rho_%s(%s)| exceeds d" % (fd.labels[w], fd.labels[q]))


def build_modular_data(fd, smatrix=None, precision_bits=192, denom_bound=10 ** 6,
                       precision_cap=None):
    """Exact irreps of the Verlinde algebra from fusion rules and weights.

    S_pq / S_00 = sum_r N_pq^r d_r w_p w_q / w_r is evaluated exactly over the
    cyclotomic field once d is known.  An explicit S-matrix, when given, is
    used instead and the formula above becomes a consistency flag.
    """
    notes = []
    d = quantum_dims(fd, precision_bits, denom_bound, precision_cap, report=notes)
    n = fd.rank
    omegas = [Cyclotomic.root_of_unity(h) for h in fd.weights]
    X = _ver3_table(fd, d, omegas)
    ver3_ok = None
    if smatrix is None:
        dinv = [x.inverse() for x in d]
        rho = [[X[q][w] * dinv[w] for q in range(n)] for w in range(n)]
        total = sum(d[p] ** 2 for p in range(n))
        s2 = [d[p] ** 2 / total for p in range(n)]
    else:
        S = [[cyc(v) for v in row] for row in smatrix]
        if len(S) != n or any(len(r) != n for r in S):
            raise ValidationError("S-matrix shape does not match rank")
        if any(S[0][w].is_zero() for w in range(n)):
            raise VerificationError("S-matrix has a zero in the vacuum row")
        rho = [[S[q][w] / S[0][w] for q in range(n)] for w in range(n)]
        s2 = [S[0][p].abs_squared() for p in range(n)]
        if any(rho[0][q] != d[q] for q in range(n)):
            raise VerificationError("S-matrix vacuum row disagrees with quantum dimensions")
        s00 = S[0][0]
        ver3_ok = all(S[p][q] / s00 == X[p][q] for p in range(n) for q in range(n))
        if not ver3_ok:
            notes.append("explicit S-matrix does not match the fusion/weight formula")
        if sum(s2, ZERO) != ONE:
            raise VerificationError("S-matrix vacuum row is not normalized")
    _verify_irreps(fd, rho, precision_bits)
    N = conductor_of(fd.weights)
    cond = reduce(lcm, (x.N for row in rho for x in row), N)
    if cond != N:
        notes.append("irrep values need conductor %d (weights give %d)" % (cond, N))
    return ModularData(fd, rho, d, s2, cond, ver3_ok, notes)


def verlinde_check(md):
    """N_pq^r == sum_w s2[w] rho_w(p) rho_w(q) conj(rho_w(r)) for all triples."""
    n = md.rank
    conj = [[x.conj() for x in row] for row in md.rho]
    for p in range(n):
        for q in range(p, n):
            pq = [md.s2[w] * md.rho[w][p] * md.rho[w][q] for w in range(n)]
            for r in range(n):
                s = ZERO
                for w in range(n):
                    s = s + pq[w] * conj[w][r]
                if s != md.N(p, q, r):
                    return False
    return True


def omch_check(md):
    """When |rho_p(q)| = d_q, every r with N_pq^r > 0 has w_p w_q / w_r = rho_p(q) / d_q.

    The converse fails in general (unrelated r may share the phase), so only
    this direction is checked.
    """
    return not omch_violations(md)


def omch_violations(md):
    n = md.rank
    out = []
    for p in range(n):
        for q in range(n):
            x = md.rho[p][q]
            if x.abs_squared() != md.qdims[q] ** 2:
                continue
            phase = x / md.qdims[q]
            for r, _m in md.products(p, q):
                if md.omegas[p] * md.omegas[q] / md.omegas[r] != phase:
                    out.append((p, q, r))
    return out


def with_rho(md, rho):
    """Copy of md with a replaced rho table (unverified; for testing checks)."""
    return ModularData(md.base, rho, md.qdims, md.s2, md.conductor, md.ver3_consistent, md.notes)
