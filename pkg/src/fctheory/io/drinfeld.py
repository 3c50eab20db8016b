"""Modular data of the Drinfeld double D(G) of a small finite group.

Groups are given by multiplication tables: table[a][b] = index of a*b.
Character tables of centralizers come from Burnside's class-matrix method:
a seeded generic combination of class matrices is diagonalized numerically,
the character values are reconstructed as cyclotomic numbers, and the
orthogonality relations are then verified exactly.
"""
from fractions import Fraction
from itertools import permutations

import mpmath
import numpy as np

from ..cyclo import ONE, ZERO, Cyclotomic, lcm, reconstruct
from ..errors import PreconditionError, VerificationError
from .modelfile import model_from_fusion

DEFAULT_SEED = 20240601
ORDER_CAP = 12


class Group:
    def __init__(self, table):
        t = [list(map(int, row)) for row in table]
        n = len(t)
        if n == 0 or any(len(r) != n for r in t):
            raise PreconditionError("multiplication table must be square and non-empty")
        if any(not 0 <= x < n for r in t for x in r):
            raise PreconditionError("table entries out of range")
        ids = [e for e in range(n) if t[e] == list(range(n)) and [r[e] for r in t] == list(range(n))]
        if not ids:
            raise PreconditionError("no identity element")
        self.e = ids[0]
        self.n = n
        self.t = t
        self.inv = []
        for a in range(n):
            b = [b for b in range(n) if t[a][b] == self.e]
            if len(b) != 1 or t[b[0]][a] != self.e:
                raise PreconditionError("element %d has no two-sided inverse" % a)
            self.inv.append(b[0])
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise PreconditionError("table is not associative")

    def mul(self, a, b):
        return self.t[a][b]

    def conj(self, g, a):
        """g a g^-1"""
        return self.t[self.t[g][a]][self.inv[g]]

    def order_of(self, a):
        k, x = 1, a
        while x != self.e:
            x = self.t[x][a]
            k += 1
        return k

    def exponent(self, elems=None):
        out = 1
        for a in (range(self.n) if elems is None else elems):
            out = lcm(out, self.order_of(a))
        return out

    def classes_in(self, elems):
        """Conjugacy classes of the subgroup elems, identity class first."""
        elems = sorted(elems)
        seen, out = set(), []
        for a in elems:
            if a in seen:
                continue
            cls = sorted({self.conj(g, a) for g in elems})
            seen.update(cls)
            out.append(cls)
        out.sort(key=lambda c: (c[0] != self.e, c[0]))
        return out

    def centralizer(self, a):
        return [g for g in range(self.n) if self.t[g][a] == self.t[a][g]]


def cyclic_group(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group(k):
    perms = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (a*b)(x) = a(b(x))
    return [[index[tuple(a[b[x]] for x in range(k))] for b in perms] for a in perms]


def dihedral_group(m):
    # elements r^i s^j encoded as 2*i + j
    def mul(x, y):
        i, j = divmod(x, 2)
        k, l = divmod(y, 2)
        r = (i + (k if j == 0 else -k)) % m
        return 2 * r + ((j + l) % 2)
    return [[mul(x, y) for y in range(2 * m)] for x in range(2 * m)]


def character_table(G, elems, seed=DEFAULT_SEED, precision_bits=192):
    """Irreducible characters of the subgroup elems as dicts element -> Cyclotomic."""
    classes = G.classes_in(elems)
    k = len(classes)
    order = len(elems)
    where = {}
    for i, c in enumerate(classes):
        for x in c:
            where[x] = i
    reps = [c[0] for c in classes]
    # C[i][j][l] = #{(x, y) in K_i x K_j : x y = rep_l}
    C = np.zeros((k, k, k), dtype=np.int64)
    for i, Ki in enumerate(classes):
        for x in Ki:
            for j, Kj in enumerate(classes):
                for y in Kj:
                    z = G.mul(x, y)
                    l = where[z]
                    if z == reps[l]:
                        C[i, j, l] += 1
    expo = G.exponent(elems)
    rng = np.random.default_rng(seed)
    for _attempt in range(8):
        coeffs = rng.integers(1, 1000, size=k)
        with mpmath.mp.workprec(precision_bits + 32):
            A = mpmath.matrix(k, k)
            for i in range(k):
                for j in range(k):
                    for l in range(k):
                        A[j, l] += int(coeffs[i]) * int(C[i, j, l])
            E, ER = mpmath.eig(A)
            gaps = [abs(E[a] - E[b]) for a in range(k) for b in range(a)]
            if gaps and min(gaps) < mpmath.mpf(2) ** (-precision_bits // 4):
                continue
            chars = []
            for col in range(k):
                v = [ER[j, col] for j in range(k)]
                v = [x / v[0] for x in v]           # central character, omega(K_1) = 1
                norm = sum(abs(v[j]) ** 2 / len(classes[j]) for j in range(k))
                dim = int(mpmath.nint(mpmath.sqrt(order / norm)))
                vals = [v[j] * dim / len(classes[j]) for j in range(k)]
                chars.append([reconstruct(x, expo, 10 ** 6, precision_bits) for x in vals])
        break
    else:
        raise VerificationError("could not separate central characters")
    # exact verification of the orthogonality relations
    for a in range(k):
        for b in range(k):
            s = ZERO
            for j in range(k):
                s = s + len(classes[j]) * chars[a][j] * chars[b][j].conj()
            if s != (order if a == b else 0):
                raise VerificationError("character orthogonality failed")
    chars.sort(key=lambda ch: (ch != [ONE] * k, ch[0].to_fraction(),
                               [complex(x).real for x in ch], [complex(x).imag for x in ch]))
    return [{x: ch[where[x]] for x in elems} for ch in chars]


def _phase_of(x):
    """h in [0, 1) with x = exp(2 pi i h) for a root of unity x."""
    m = x.root_order()
    if m is None:
        raise VerificationError("twist is not a root of unity")
    z = Cyclotomic.zeta(m)
    y = ONE
    for k in range(m):
        if y == x:
            return Fraction(k, m)
        y = y * z
    raise VerificationError("twist phase not found")


def drinfeld_double_data(table, name="double", seed=DEFAULT_SEED, order_cap=ORDER_CAP,
                         precision_bits=192):
    G = Group(table)
    if G.n > order_cap:
        raise PreconditionError("group order %d exceeds cap %d" % (G.n, order_cap))
    classes = G.classes_in(range(G.n))
    reps = [c[0] for c in classes]
    cents = [G.centralizer(a) for a in reps]
    tables = [character_table(G, c, seed, precision_bits) for c in cents]
    # x_g with g = x_g a x_g^-1 for each class member g
    transversal = []
    for a, cls in zip(reps, classes):
        tr = {}
        for x in range(G.n):
            g = G.conj(x, a)
            tr.setdefault(g, x)
        transversal.append(tr)
    prims = [(i, j) for i in range(len(classes)) for j in range(len(tables[i]))]
    labels = ["%d.%d" % p for p in prims]
    weights = []
    for i, j in prims:
        chi = tables[i][j]
        weights.append(_phase_of(chi[reps[i]] / chi[G.e]))
    n = len(prims)
    S = [[None] * n for _ in range(n)]
    for u, (i, j) in enumerate(prims):
        for v, (k, l) in enumerate(prims):
            if v < u:
                S[u][v] = S[v][u]
                continue
            s = ZERO
            for g in classes[i]:
                xg = transversal[i][g]
                for h in classes[k]:
                    if G.mul(g, h) != G.mul(h, g):
                        continue
                    yh = transversal[k][h]
                    a_el = G.conj(G.inv[xg], h)       # x_g^-1 h x_g in C(a)
                    b_el = G.conj(G.inv[yh], g)       # y_h^-1 g y_h in C(b)
                    s = s + (tables[i][j][a_el] * tables[k][l][b_el]).conj()
            S[u][v] = s / G.n
    # fusion from the Verlinde formula
    N = np.zeros((n, n, n), dtype=np.int64)
    Sc = [[x.conj() for x in row] for row in S]
    inv0 = [S[0][w].inverse() for w in range(n)]
    for p in range(n):
        for q in range(p, n):
            pq = [S[p][w] * S[q][w] * inv0[w] for w in range(n)]
            for r in range(n):
                s = ZERO
                for w in range(n):
                    s = s + pq[w] * Sc[r][w]
                if not (s.is_integer() and s.to_fraction() >= 0):
                    raise VerificationError("Verlinde output %s is not a non-negative integer" % s)
                N[p, q, r] = N[q, p, r] = int(s.to_fraction())
    cond = 1
    for row in S:
        for x in row:
            cond = lcm(cond, x.N)
    for h in weights:
        cond = lcm(cond, h.denominator)
    return model_from_fusion(name, labels, weights, N, S, cond)


__all__ = ["Group", "cyclic_group", "symmetric_group", "dihedral_group", "character_table",
           "drinfeld_double_data"]
