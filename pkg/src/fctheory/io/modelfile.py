"""Model file parsing and canonical serialization (grammar in docs/model_format.md)."""
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..cyclo import Cyclotomic
from ..errors import ModelParseError
from ..fusion import FusionData

_KEYS = ("name", "labels", "weights", "fusion", "conductor", "smatrix")
_LABEL = re.compile(r"^[A-Za-z0-9_.:'^+\-]+$")
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")
_INT = re.compile(r"^-?\d+$")
_NAME = re.compile(r"^[A-Za-z0-9_.\-]+$")


@dataclass
class ModelFile:
    name: str
    labels: list
    weights: list                                 # Fractions
    fusion: dict = field(default_factory=dict)    # (i, j, k) -> m, explicit entries with i <= j
    conductor: int = None
    smatrix: list = None                          # rank x rank Cyclotomic

    @property
    def rank(self):
        return len(self.labels)

    def fusion_tensor(self):
        n = self.rank
        N = np.zeros((n, n, n), dtype=np.int64)
        for (i, j, k), m in self.fusion.items():
            N[i, j, k] = N[j, i, k] = m
        for p in range(n):
            if (0, p, p) not in self.fusion:
                N[0, p, p] = N[p, 0, p] = 1
        return N

    def to_fusion_data(self):
        return FusionData(self.labels, self.weights, self.fusion_tensor(), self.name)


def canonical_fusion(N):
    """Explicit-entry dict for a fusion tensor, omitting the implied vacuum entries."""
    n = N.shape[0]
    out = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                m = int(N[i, j, k])
                if i == 0 and k == j and m == 1:
                    continue
                if m:
                    out[(i, j, k)] = m
    for p in range(n):
        if int(N[0, p, p]) != 1 and (0, p, p) not in out:
            raise ValueError("vacuum multiplicity N_0%d^%d = 0 is not representable" % (p, p))
    return out


# tokenizer -------------------------------------------------------------------

class _Src:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg, pos=None, field=None):
        line, col = self.where(pos)
        return ModelParseError(msg, line, col, field)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self, newlines=True):
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c == "#":
                while self.pos < len(t) and t[self.pos] != "\n":
                    self.pos += 1
            elif c in " \t\r" or (newlines and c == "\n"):
                self.pos += 1
            else:
                break


def _parse_value(src, key):
    src.skip_ws()
    if src.peek() == "[":
        start = src.pos
        src.pos += 1
        items = []
        src.skip_ws()
        if src.peek() == "]":
            src.pos += 1
            return ("list", items, start)
        while True:
            items.append(_parse_value(src, key))
            src.skip_ws()
            c = src.peek()
            if c == ",":
                src.pos += 1
                continue
            if c == "]":
                src.pos += 1
                return ("list", items, start)
            if c == "":
                raise src.error("unterminated list", start, key)
            raise src.error("expected ',' or ']'", field=key)
    start = src.pos
    t = src.text
    while src.pos < len(t) and t[src.pos] not in ",[]\n#":
        src.pos += 1
    s = t[start:src.pos].strip()
    if not s:
        raise src.error("expected a value", start, key)
    return ("atom", s, start)


def _atoms(src, value, key):
    kind, items, pos = value
    if kind != "list":
        raise src.error("expected a list", pos, key)
    for it in items:
        if it[0] != "atom":
            raise src.error("expected a scalar list item", it[2], key)
    return [(s, p) for _, s, p in items]


def _atom(src, value, key):
    kind, s, pos = value
    if kind != "atom":
        raise src.error("expected a scalar", pos, key)
    return s, pos


def parse_literal(s, conductor):
    """Cyclotomic literal 'c0 + c1*z + c2*z^2' with z = zeta_conductor."""
    body = s.replace(" ", "")
    if not body:
        raise ValueError("empty literal")
    terms = re.findall(r"[+-]?[^+-]+", body)
    if "".join(terms) != body:
        raise ValueError("malformed literal %r" % s)
    pairs = []
    for term in terms:
        m = re.fullmatch(r"([+-]?)(\d+(?:/\d+)?)?(\*?z(?:\^(\d+))?)?", term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise ValueError("malformed term %r" % term)
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3) and m.group(3).startswith("*") and not m.group(2):
            raise ValueError("malformed term %r" % term)
        if m.group(1) == "-":
            c = -c
        e = 0
        if m.group(3):
            e = int(m.group(4)) if m.group(4) else 1
        pairs.append((e, c))
    return Cyclotomic.from_exponents(conductor, pairs)


def parse_model(text):
    src = _Src(text)
    raw = {}
    while True:
        src.skip_ws()
        if src.pos >= len(text):
            break
        start = src.pos
        m = re.compile(r"[A-Za-z_]+").match(text, src.pos)
        if not m:
            raise src.error("expected a key")
        key = m.group(0)
        if key not in _KEYS:
            raise src.error("unknown key %r" % key)
        if key in raw:
            raise src.error("duplicate key %r" % key)
        src.pos = m.end()
        src.skip_ws(newlines=False)
        if src.peek() != "=":
            raise src.error("expected '='", field=key)
        src.pos += 1
        raw[key] = (_parse_value(src, key), start)
        src.skip_ws(newlines=False)
        if src.peek() not in ("", "\n"):
            raise src.error("unexpected text after value", field=key)
    for key in ("name", "labels", "weights"):
        if key not in raw:
            raise ModelParseError("missing required key %r" % key, field=key)

    name, pos = _atom(src, raw["name"][0], "name")
    if not _NAME.match(name):
        raise src.error("invalid model name %r" % name, pos, "name")
    labels = []
    for s, pos in _atoms(src, raw["labels"][0], "labels"):
        if not _LABEL.match(s):
            raise src.error("invalid label %r" % s, pos, "labels")
        if s in labels:
            raise src.error("duplicate label %r" % s, pos, "labels")
        labels.append(s)
    n = len(labels)
    if n == 0:
        raise src.error("empty label list", raw["labels"][1], "labels")
    weights = []
    for s, pos in _atoms(src, raw["weights"][0], "weights"):
        if not _RATIONAL.match(s):
            raise src.error("non-rational weight %r" % s, pos, "weights")
        weights.append(Fraction(s))
    if len(weights) != n:
        raise src.error("%d weights for %d labels" % (len(weights), n), raw["weights"][1], "weights")

    fusion = {}
    if "fusion" in raw:
        kind, items, pos = raw["fusion"][0]
        if kind != "list":
            raise src.error("expected a list of [i, j, k, m]", pos, "fusion")
        for item in items:
            quad = _atoms(src, item, "fusion")
            if len(quad) != 4:
                raise src.error("fusion entry needs 4 integers", item[2], "fusion")
            vals = []
            for s, p in quad:
                if not _INT.match(s):
                    raise src.error("non-integer %r" % s, p, "fusion")
                vals.append(int(s))
            i, j, k, m = vals
            for v, (s, p) in zip((i, j, k), quad):
                if not 0 <= v < n:
                    raise src.error("index %d out of range" % v, p, "fusion")
            if m <= 0:
                raise src.error("multiplicity must be positive", quad[3][1], "fusion")
            key = (min(i, j), max(i, j), k)
            if key in fusion and fusion[key] != m:
                raise src.error("conflicting duplicate fusion entry", item[2], "fusion")
            fusion[key] = m

    conductor, smatrix = None, None
    if ("conductor" in raw) != ("smatrix" in raw):
        raise ModelParseError("conductor and smatrix must be given together", field="smatrix")
    if "conductor" in raw:
        s, pos = _atom(src, raw["conductor"][0], "conductor")
        if not _INT.match(s) or int(s) < 1:
            raise src.error("conductor must be a positive integer", pos, "conductor")
        conductor = int(s)
        kind, rows, pos = raw["smatrix"][0]
        if kind != "list" or len(rows) != n:
            raise src.error("smatrix must have %d rows" % n, pos, "smatrix")
        smatrix = []
        for row in rows:
            entries = _atoms(src, row, "smatrix")
            if len(entries) != n:
                raise src.error("smatrix row must have %d entries" % n, row[2], "smatrix")
            out = []
            for s, p in entries:
                try:
                    out.append(parse_literal(s, conductor))
                except ValueError as e:
                    raise src.error(str(e), p, "smatrix") from None
            smatrix.append(out)
    return ModelFile(name, labels, weights, fusion, conductor, smatrix)


def _frac(q):
    q = Fraction(q)
    return "%d/%d" % (q.numerator, q.denominator)


def write_model(mf):
    lines = ["name = %s" % mf.name,
             "labels = [%s]" % ", ".join(mf.labels),
             "weights = [%s]" % ", ".join(_frac(h) for h in mf.weights)]
    entries = sorted(mf.fusion.items())
    if entries:
        lines.append("fusion = [")
        body = ["  [%d, %d, %d, %d]" % (i, j, k, m) for (i, j, k), m in entries]
        lines.append(",\n".join(body))
        lines.append("]")
    else:
        lines.append("fusion = []")
    if mf.smatrix is not None:
        lines.append("conductor = %d" % mf.conductor)
        lines.append("smatrix = [")
        rows = ["  [%s]" % ", ".join(x.literal(mf.conductor) for x in row) for row in mf.smatrix]
        lines.append(",\n".join(rows))
        lines.append("]")
    return "\n".join(lines) + "\n"


def canonicalize(text):
    return write_model(parse_model(text))


def model_from_fusion(name, labels, weights, N, smatrix=None, conductor=None):
    N = np.asarray(N, dtype=np.int64)
    return ModelFile(name, list(labels), [Fraction(h) for h in weights], canonical_fusion(N),
                     conductor, smatrix)


__all__ = ["ModelFile", "parse_model", "write_model", "canonicalize", "parse_literal",
           "model_from_fusion"]
