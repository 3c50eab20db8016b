"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(phi(N)-1) modulo the
N-th cyclotomic polynomial, as integer numerators over one common positive
denominator.  Every result is normalized to the smallest conductor that
contains it, so equal values have identical representations and equality and
hashing are plain tuple comparisons.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .errors import ReconstructionError


def lcm(a, b):
    return a // gcd(a, b) * b


@lru_cache(maxsize=None)
def prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def totient(n):
    r = n
    for p in prime_factors(n):
        r -= r // p
    return r


def units(n):
    return [k for k in range(1, n + 1) if gcd(k, n) == 1] if n > 1 else [1]


def _poly_divexact(a, b):
    # a / b for integer polynomials (low -> high), b monic
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    assert not any(a[: len(b) - 1]), "inexact division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n):
    """Coefficients (low -> high) of the n-th cyclotomic polynomial."""
    f = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            f = _poly_divexact(f, cyclotomic_poly(d))
    return tuple(f)


@lru_cache(maxsize=None)
def _powers(n):
    """Reduced power-basis vectors of z^e for e = 0..n-1."""
    phi = totient(n)
    f = cyclotomic_poly(n)
    vecs = []
    v = [1] + [0] * (phi - 1)
    for _ in range(n):
        vecs.append(tuple(v))
        top = v[-1]
        v = [0] + v[:-1]
        if top:
            for j in range(phi):
                v[j] -= top * f[j]
    return tuple(vecs)


def _from_exponents(n, terms):
    """Integer vector for sum c * z^e with e taken mod n."""
    phi = totient(n)
    pw = _powers(n)
    out = [0] * phi
    for e, c in terms:
        if c:
            v = pw[e % n]
            for j in range(phi):
                if v[j]:
                    out[j] += c * v[j]
    return out


def _mul_raw(n, a, b):
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    phi = len(a)
    if len(prod) <= phi:
        return prod + [0] * (phi - len(prod))
    return _from_exponents(n, enumerate(prod))


def _galois_raw(n, a, l):
    return _from_exponents(n, ((k * l, c) for k, c in enumerate(a)))


def _lift_raw(n, a, m):
    s = m // n
    return _from_exponents(m, ((k * s, c) for k, c in enumerate(a)))


def _descend(n, a, p):
    """Coordinates over Q(zeta_{n/p}) of an element fixed by Gal(Q(zeta_n)/Q(zeta_{n/p})).

    Uses x = (1/|H|) * sum_k a_k Tr_H(z^k); returns (vector, divisor).
    """
    m = n // p
    terms = []
    if m % p == 0:
        for k, c in enumerate(a):
            if c and k % p == 0:
                terms.append((k // p, c * p))
        size = p
    else:
        pinv = pow(p, -1, m) if m > 1 else 0
        for k, c in enumerate(a):
            if not c:
                continue
            k1 = p * ((k * pinv) % m) if m > 1 else 0
            t = ((k - k1) % n) // m
            terms.append((k1 // p, c * (p - 1) if t % p == 0 else -c))
        size = p - 1
    return _from_exponents(m, terms), size


def _is_fixed(n, a, p):
    m = n // p
    for j in range(1, p):
        h = 1 + j * m
        if gcd(h, n) == 1 and _galois_raw(n, a, h) != list(a):
            return False
    return True


def _normalize(n, num, den):
    num = list(num)
    if den < 0:
        den, num = -den, [-c for c in num]
    g = den
    for c in num:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        den //= g
        num = [c // g for c in num]
    return num, den


def _canonical(n, num, den, minimize=True):
    num, den = _normalize(n, num, den)
    if minimize and n > 1:
        if not any(num[1:]):
            return 1, (num[0],), den
        changed = True
        while changed and n > 1:
            changed = False
            for p in prime_factors(n):
                if _is_fixed(n, num, p):
                    num, size = _descend(n, num, p)
                    n //= p
                    num, den = _normalize(n, num, den * size)
                    changed = True
                    break
            if n > 1 and not any(num[1:]):
                return 1, (num[0],), den
    return n, tuple(num), den


class Cyclotomic:
    """An element of Q(zeta_N) in canonical minimal-conductor form."""

    __slots__ = ("N", "num", "den")

    def __init__(self, N, num, den=1, _raw=False):
        if _raw:
            self.N, self.num, self.den = N, num, den
        else:
            if len(num) != totient(N):
                raise ValueError("coefficient vector must have length phi(N)")
            self.N, self.num, self.den = _canonical(N, num, den)

    # constructors
    @classmethod
    def from_fractions(cls, N, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        d = 1
        for c in coeffs:
            d = lcm(d, c.denominator)
        return cls(N, [int(c * d) for c in coeffs], d)

    @classmethod
    def rational(cls, q):
        q = Fraction(q)
        return cls(1, (q.numerator,), q.denominator, _raw=True)

    @classmethod
    def zeta(cls, N, k=1):
        return cls(N, _from_exponents(N, [(k, 1)]))

    @classmethod
    def from_exponents(cls, N, terms):
        """sum of c * zeta_N^e over (e, c) pairs with rational c."""
        terms = [(e, Fraction(c)) for e, c in terms]
        d = 1
        for _, c in terms:
            d = lcm(d, c.denominator)
        return cls(N, _from_exponents(N, [(e, int(c * d)) for e, c in terms]), d)

    @classmethod
    def root_of_unity(cls, q):
        """exp(2 pi i q) for rational q."""
        q = Fraction(q)
        return cls.zeta(q.denominator, q.numerator % q.denominator)

    # access
    @property
    def conductor(self):
        return self.N

    def coeffs(self):
        return tuple(Fraction(c, self.den) for c in self.num)

    def coeffs_at(self, M):
        """Power-basis coordinates in Q(zeta_M); M must be a multiple of the conductor."""
        if M % self.N:
            raise ValueError("conductor %d does not divide %d" % (self.N, M))
        v = _lift_raw(self.N, self.num, M) if M != self.N else list(self.num)
        return tuple(Fraction(c, self.den) for c in v)

    def key(self):
        return (self.N, self.num, self.den)

    # predicates
    def is_zero(self):
        return not any(self.num)

    def is_rational(self):
        return self.N == 1

    def is_integer(self):
        return self.N == 1 and self.den == 1

    def is_algebraic_integer(self):
        return self.den == 1

    def is_real(self):
        return self == self.conj()

    def is_root_of_unity(self):
        return self.root_order() is not None

    def root_order(self):
        if self.is_zero():
            return None
        e = lcm(2, self.N)
        if self ** e != ONE:
            return None
        for d in sorted(k for k in range(1, e + 1) if e % k == 0):
            if self ** d == ONE:
                return d
        return None

    def to_fraction(self):
        if self.N != 1:
            raise ValueError("not rational: %s" % self)
        return Fraction(self.num[0], self.den)

    def __bool__(self):
        return not self.is_zero()

    # arithmetic
    @staticmethod
    def _coerce(y):
        if isinstance(y, Cyclotomic):
            return y
        if isinstance(y, (int, Fraction)):
            return Cyclotomic.rational(y)
        return NotImplemented

    def _common(self, y):
        if self.N == y.N:
            return self.N, list(self.num), list(y.num)
        L = lcm(self.N, y.N)
        a = _lift_raw(self.N, self.num, L) if self.N != L else list(self.num)
        b = _lift_raw(y.N, y.num, L) if y.N != L else list(y.num)
        return L, a, b

    def __add__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return y
        if self.N == 1 and y.N == 1:
            return Cyclotomic.rational(self.to_fraction() + y.to_fraction())
        L, a, b = self._common(y)
        d = lcm(self.den, y.den)
        sa, sb = d // self.den, d // y.den
        return Cyclotomic(L, [sa * u + sb * v for u, v in zip(a, b)], d)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, tuple(-c for c in self.num), self.den, _raw=True)

    def __sub__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, y):
        return (-self) + y

    def __mul__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return y
        if self.N == 1 and y.N == 1:
            return Cyclotomic.rational(self.to_fraction() * y.to_fraction())
        if y.N == 1 or self.N == 1:
            x, q = (self, y) if y.N == 1 else (y, self)
            return Cyclotomic(x.N, [c * q.num[0] for c in x.num], x.den * q.den)
        L, a, b = self._common(y)
        return Cyclotomic(L, _mul_raw(L, a, b), self.den * y.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("cyclotomic division by zero")
        if self.N == 1:
            return Cyclotomic.rational(1 / self.to_fraction())
        n = self.N
        y = [1] + [0] * (totient(n) - 1)
        for l in units(n):
            if l != 1:
                y = _mul_raw(n, y, _galois_raw(n, self.num, l))
        norm = _mul_raw(n, list(self.num), y)
        assert not any(norm[1:])
        # self = a/den and a*y = norm, so 1/self = den*y/norm
        return Cyclotomic(n, [c * self.den for c in y], norm[0])

    def __truediv__(self, y):
        y = self._coerce(y)
        if y is NotImplemented:
            return y
        return self * y.inverse()

    def __rtruediv__(self, y):
        return self.inverse() * y

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, y):
        if isinstance(y, (int, Fraction)):
            y = Cyclotomic.rational(y)
        if not isinstance(y, Cyclotomic):
            return NotImplemented
        return self.N == y.N and self.den == y.den and self.num == y.num

    def __hash__(self):
        if self.N == 1:
            return hash(Fraction(self.num[0], self.den))
        return hash((self.N, self.num, self.den))

    # Galois theory
    def galois(self, l):
        """Image under zeta_N -> zeta_N^l."""
        n = self.N
        if gcd(l, n) != 1:
            raise ValueError("l=%d not coprime to conductor %d" % (l, n))
        if n == 1:
            return self
        return Cyclotomic(n, tuple(_galois_raw(n, self.num, l % n)), self.den, _raw=True)

    def conj(self):
        return self.galois(-1)

    def abs_squared(self):
        return self * self.conj()

    # numerics
    def embed(self, precision_bits=192):
        with mpmath.mp.workprec(precision_bits + 16):
            s = mpmath.mpc(0)
            for k, c in enumerate(self.num):
                if c:
                    s += c * mpmath.expjpi(mpmath.mpf(2 * k) / self.N)
            return s / self.den

    def __complex__(self):
        return complex(self.embed(64))

    def __float__(self):
        z = complex(self)
        return z.real

    def real_value(self, precision_bits=192):
        return self.embed(precision_bits).real

    # text
    def literal(self, M=None):
        """Text form c0 + c1*z + c2*z^2 with z = zeta_M (default: own conductor)."""
        M = M or self.N
        parts = []
        for k, c in enumerate(self.coeffs_at(M)):
            if c == 0:
                continue
            s = "%d/%d" % (c.numerator, c.denominator)
            if k == 1:
                s += "*z"
            elif k > 1:
                s += "*z^%d" % k
            parts.append(s)
        if not parts:
            return "0/1"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __str__(self):
        if self.N == 1:
            return str(self.to_fraction())
        terms = []
        for k, c in enumerate(self.coeffs()):
            if c == 0:
                continue
            z = "1" if k == 0 else ("z%d" % self.N if k == 1 else "z%d^%d" % (self.N, k))
            if k == 0:
                terms.append(str(c))
            elif c == 1:
                terms.append(z)
            elif c == -1:
                terms.append("-" + z)
            else:
                terms.append("%s*%s" % (c, z))
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return "Cyclotomic(%s)" % self


ZERO = Cyclotomic.rational(0)
ONE = Cyclotomic.rational(1)


def cyc(x):
    """Coerce an int, Fraction or Cyclotomic to Cyclotomic."""
    if isinstance(x, Cyclotomic):
        return x
    if isinstance(x, str):
        return Cyclotomic.rational(Fraction(x))
    return Cyclotomic.rational(x)


def sqrt2():
    return Cyclotomic.zeta(8) - Cyclotomic.zeta(8, 3)


def compare_real(x, y, precision_bits=192):
    """Sign of x - y for totally real or real-embedded values; exact on equality."""
    d = cyc(x) - cyc(y)
    if d.is_zero():
        return 0
    v = d.real_value(precision_bits)
    return 1 if v > 0 else -1


def sign(x, precision_bits=192):
    return compare_real(x, ZERO, precision_bits)


# exact linear algebra --------------------------------------------------------

def rank(rows):
    """Rank of a matrix of Cyclotomic values (fraction-free elimination)."""
    m = [[cyc(v) for v in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        pinv = p.inverse()
        prow = [v * pinv for v in m[r]]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            if not a.is_zero():
                m[i] = [u - a * v for u, v in zip(m[i], prow)]
        r += 1
        if r == len(m):
            break
    return r


# reconstruction --------------------------------------------------------------

def _mpf_to_fraction(x):
    sgn, man, exp, _ = x._mpf_
    f = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -f if sgn else f


def reconstruct(approx, conductor, denom_bound=10 ** 6, precision_bits=192):
    """Find an element of Q(zeta_conductor) with denominators <= denom_bound
    whose embedding is within 2^(-precision_bits/2) of approx.

    Rationals are tried first; otherwise an integer relation between the
    target and the embedded power basis is searched with PSLQ.  The result
    is only a candidate and must be verified exactly by the caller.
    """
    with mpmath.mp.workprec(precision_bits):
        z = mpmath.mpc(approx)
        tol = mpmath.mpf(2) ** (-(precision_bits // 2))
        if abs(z.imag) < tol:
            if z.real == 0:
                return ZERO
            f = _mpf_to_fraction(z.real).limit_denominator(denom_bound)
            if abs(mpmath.mpf(f.numerator) / f.denominator - z.real) < tol:
                return Cyclotomic.rational(f)
        n = conductor
        phi = totient(n)
        if phi == 1:
            raise ReconstructionError("no rational within bound for %s" % mpmath.nstr(z, 20))
        maxcoeff = max(denom_bound, 10 ** 6) * 10 ** 3
        if abs(z.imag) < tol and phi > 2:
            # real target: search the real subfield, basis powers of c = 2 cos(2 pi / n)
            c = 2 * mpmath.cos(2 * mpmath.pi / n)
            rel = mpmath.pslq([z.real] + [c ** k for k in range(phi // 2)], tol=tol,
                              maxcoeff=maxcoeff, maxsteps=20000)
            if rel is not None and rel[0] != 0:
                cc = Cyclotomic.zeta(n) + Cyclotomic.zeta(n, n - 1)
                x, pw = ZERO, ONE
                for r in rel[1:]:
                    x = x + pw * Fraction(-r, rel[0])
                    pw = pw * cc
                try:
                    return _checked(x, z, tol, denom_bound, precision_bits)
                except ReconstructionError:
                    pass
        t = mpmath.pi
        basis = []
        for k in range(phi):
            w = mpmath.expjpi(mpmath.mpf(2 * k) / n)
            basis.append(w.real + t * w.imag)
        y = z.real + t * z.imag
        rel = mpmath.pslq([y] + basis, tol=tol, maxcoeff=maxcoeff, maxsteps=20000)
    if rel is None or rel[0] == 0:
        raise ReconstructionError(
            "no relation found in Q(zeta_%d) for %s" % (n, mpmath.nstr(z, 20)))
    coeffs = [Fraction(-c, rel[0]) for c in rel[1:]]
    return _checked(Cyclotomic.from_fractions(n, coeffs), z, tol, denom_bound, precision_bits)


def _checked(x, z, tol, denom_bound, precision_bits):
    if any(c.denominator > denom_bound for c in x.coeffs()):
        raise ReconstructionError("denominator bound exceeded")
    with mpmath.mp.workprec(precision_bits):
        if abs(x.embed(precision_bits) - z) >= tol:
            raise ReconstructionError("candidate does not match approximation")
    return x
