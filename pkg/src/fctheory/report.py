"""Check reports with text and key=value record rendering."""
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: list = field(default_factory=list)   # ordered (key, value) pairs

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def put(self, key, value):
        self.data.append((key, value))

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))
        for k, v in other.data:
            self.data.append((prefix + k, v))

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def get(self, key, default=None):
        for k, v in self.data:
            if k == key:
                return v
        return default

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self):
        return [c.name for c in self.checks]

    def render_text(self):
        lines = ["== %s ==" % self.title]
        for k, v in self.data:
            lines.append("%s: %s" % (k, v))
        for c in self.checks:
            line = "[%s] %s" % ("PASS" if c.passed else "FAIL", c.name)
            if c.detail:
                line += "  (%s)" % c.detail
            lines.append(line)
        return "\n".join(lines)

    def render_records(self):
        lines = []
        for k, v in self.data:
            lines.append("report=%s key=%s value=%s" % (_esc(self.title), _esc(k), _esc(v)))
        for c in self.checks:
            line = "report=%s check=%s status=%s" % (_esc(self.title), _esc(c.name),
                                                      "pass" if c.passed else "fail")
            if c.detail:
                line += " detail=%s" % _esc(c.detail)
            lines.append(line)
        return "\n".join(lines)


def _esc(v):
    s = str(v)
    if any(ch in s for ch in ' ="\\') or not s:
        s = '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return s
