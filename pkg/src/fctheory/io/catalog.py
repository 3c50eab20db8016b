"""Bundled model catalog."""
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .drinfeld import cyclic_group, drinfeld_double_data, symmetric_group
from .modelfile import model_from_fusion


def _group_fusion(n, mul):
    N = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            N[a, b, mul(a, b)] = 1
    return N


def _from_rules(labels, rules):
    """Fusion tensor from {(p, q): {r: m}} given on labels; vacuum rules implied."""
    n = len(labels)
    idx = {l: i for i, l in enumerate(labels)}
    N = np.zeros((n, n, n), dtype=np.int64)
    for p in range(n):
        N[0, p, p] = N[p, 0, p] = 1
    for (a, b), out in rules.items():
        for c, m in out.items():
            N[idx[a], idx[b], idx[c]] = N[idx[b], idx[a], idx[c]] = m
    return N


def trivial():
    return model_from_fusion("trivial", ["0"], [0], np.ones((1, 1, 1), dtype=np.int64))


def fibonacci():
    labels = ["0", "tau"]
    return model_from_fusion("fibonacci", labels, [0, Fraction(2, 5)],
                             _from_rules(labels, {("tau", "tau"): {"0": 1, "tau": 1}}))


def ising():
    labels = ["0", "eps", "sigma"]
    rules = {("eps", "eps"): {"0": 1}, ("eps", "sigma"): {"sigma": 1},
             ("sigma", "sigma"): {"0": 1, "eps": 1}}
    return model_from_fusion("ising", labels, [0, Fraction(1, 2), Fraction(1, 16)],
                             _from_rules(labels, rules))


def toric_code():
    # Z2 x Z2 with 1=(0,0), e=(1,0), m=(0,1), f=(1,1)
    return model_from_fusion("toric_code", ["1", "e", "m", "f"], [0, 0, 0, Fraction(1, 2)],
                             _group_fusion(4, lambda a, b: a ^ b))


def so16_lvl1():
    # vacuum, vector, spinor, conjugate spinor; Z2 x Z2 fusion
    return model_from_fusion("so16_lvl1", ["0", "v", "s", "c"], [0, Fraction(1, 2), 1, 1],
                             _group_fusion(4, lambda a, b: a ^ b))


def zn_anyons(n):
    """Abelian anyons on Z_n with h_a = a^2/n (n odd) or a^2/(2n) (n even)."""
    den = n if n % 2 else 2 * n
    weights = [Fraction(a * a, den) % 1 for a in range(n)]
    name = "z%d_anyons" % n
    return model_from_fusion(name, [str(a) for a in range(n)], weights,
                             _group_fusion(n, lambda a, b: (a + b) % n))


@lru_cache(maxsize=None)
def _ds3():
    return drinfeld_double_data(symmetric_group(3), name="ds3")


@lru_cache(maxsize=None)
def _dz2():
    return drinfeld_double_data(cyclic_group(2), name="dz2")


def ds3():
    return _copy(_ds3())


def _copy(mf):
    from copy import deepcopy
    return deepcopy(mf)


def builtin_catalog():
    models = [trivial(), fibonacci(), ising(), toric_code(), so16_lvl1()]
    models += [zn_anyons(n) for n in (2, 3, 4, 5)]
    models.append(ds3())
    return models


def catalog_names():
    return [m.name for m in builtin_catalog()]


def get_model(name):
    for m in builtin_catalog():
        if m.name == name:
            return m
    raise KeyError(name)
