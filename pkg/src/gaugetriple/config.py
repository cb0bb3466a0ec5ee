"""
Problem description files.

INI syntax (read with :mod:`configparser`).  Generators are labelled
``e1 .. en`` in files and reports, chart indices start at 0::

    [problem]
    dim = 2
    metric = + +

    [algebra]
    builtin = so3              ; or abelian(k), or the two keys below
    # dim = 3
    # structure = 1 2 3 1; 1 3 2 -1     ; "a b c v" means c^a_{bc} = v
    # pairing = 1 0 0; 0 1 0; 0 0 1     ; default identity

    [connection]
    e1.1 = x0                  ; A^1_1, coefficient of dq1 (x) e1
    e2.0 = x1

    [momentum]                 ; optional; components of an (m-2)-form
    e1 = 1                     ; m = 2: no indices

    [lagrangian]
    kind = yang-mills          ; or custom with body = <poly>

    [check]
    seed = 0
    trials = 10

    [jet]
    point = 1, 1
"""

from __future__ import annotations

import configparser
import os
import re
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import List, Optional, Tuple

from .algebra import LieAlgebra, builtin, identity_matrix
from .errors import AlgebraError, ConfigError, PolyParseError, ShapeError
from .forms import DUAL, GForm, Metric, ScalarForm
from .gauge import connection
from .poly import Poly
from .triple import LagrangianDensity
from .ym import ym_density

ENV_VAR = "GAUGETRIPLE_CONFIG"
_KEY = re.compile(r"^e(\d+)((?:\.\d+)*)$")


@dataclass
class ProblemConfig:
    source: str
    dim: int
    metric: Metric
    algebra: LieAlgebra
    connection: GForm
    momentum: Optional[GForm]
    lagrangian: LagrangianDensity
    lagrangian_kind: str
    seed: int
    trials: int
    point: Optional[Tuple[Fraction, ...]]


def bundled_names() -> List[str]:
    root = resources.files("gaugetriple") / "configs"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".ini"))


def bundled_text(name: str) -> str:
    path = resources.files("gaugetriple") / "configs" / f"{name}.ini"
    if not path.is_file():
        raise ConfigError(f"no bundled config {name!r}; available: {', '.join(bundled_names())}")
    return path.read_text(encoding="utf-8")


def resolve(path: Optional[str]) -> Tuple[str, str]:
    """(source label, text) for a path, a ``bundled:<name>`` reference or the env default."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        raise ConfigError(f"no config given; pass --config or set {ENV_VAR}")
    if path.startswith("bundled:"):
        name = path.split(":", 1)[1]
        return path, bundled_text(name)
    try:
        with open(path, encoding="utf-8") as fh:
            return path, fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None


def _line_of(text: str, section: str, key: str) -> Optional[int]:
    current = None
    for n, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            current = s[1:-1].strip()
        elif current == section and re.match(rf"{re.escape(key)}\s*[=:]", s, re.IGNORECASE):
            return n
    return None


class _Reader:
    def __init__(self, text: str, source: str):
        self.text = text
        self.source = source
        self.cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"), interpolation=None)
        try:
            self.cp.read_string(text, source=source)
        except configparser.Error as exc:
            raise ConfigError(f"{source}: {exc}") from None

    def fail(self, section: str, key: Optional[str], message: str):
        where = self.source
        if key is not None:
            line = _line_of(self.text, section, key)
            where += f", line {line}" if line else ""
            where += f" [{section}] {key}"
        else:
            where += f" [{section}]"
        raise ConfigError(f"{where}: {message}")

    def get(self, section, key, default=None, required=False):
        if self.cp.has_option(section, key):
            return self.cp.get(section, key).strip()
        if required:
            self.fail(section, None, f"missing required key {key!r}")
        return default

    def integer(self, section, key, default):
        raw = self.get(section, key)
        if raw is None:
            return default
        try:
            return int(raw)
        except ValueError:
            self.fail(section, key, f"expected an integer, got {raw!r}")

    def poly(self, section, key, nvars):
        raw = self.get(section, key)
        try:
            return Poly.parse(raw, nvars)
        except PolyParseError as exc:
            self.fail(section, key, str(exc))


def _rationals(text: str) -> List[Fraction]:
    return [Fraction(t) for t in text.replace(",", " ").split()]


def _read_algebra(r: _Reader) -> LieAlgebra:
    if not r.cp.has_section("algebra"):
        r.fail("algebra", None, "section missing")
    name = r.get("algebra", "builtin")
    if name:
        try:
            return builtin(name)
        except AlgebraError as exc:
            r.fail("algebra", "builtin", str(exc))
    n = r.integer("algebra", "dim", None)
    if n is None or n < 1:
        r.fail("algebra", None, "need 'builtin' or a positive 'dim'")
    quads = []
    for chunk in (r.get("algebra", "structure", "") or "").split(";"):
        if not chunk.strip():
            continue
        parts = chunk.split()
        try:
            a, b, c = (int(v) - 1 for v in parts[:3])
            value = Fraction(parts[3])
            if len(parts) != 4:
                raise ValueError
        except (ValueError, IndexError, ZeroDivisionError):
            r.fail("algebra", "structure", f"entry {chunk.strip()!r} is not 'a b c value'")
        quads.append((a, b, c, value))
    pairing = identity_matrix(n)
    raw = r.get("algebra", "pairing")
    if raw:
        try:
            pairing = [_rationals(row) for row in raw.split(";") if row.strip()]
        except (ValueError, ZeroDivisionError):
            r.fail("algebra", "pairing", "rows must contain rationals")
    try:
        return LieAlgebra.from_quadruples(n, quads, pairing, name="custom")
    except ShapeError as exc:
        r.fail("algebra", "structure", str(exc))


def _keyed(r: _Reader, section: str, n: int, nidx: int, m: int):
    """Yield (key, generator, index tuple) for every key of a generator-indexed section."""
    for key in r.cp.options(section):
        mt = _KEY.match(key)
        if not mt:
            r.fail(section, key, "keys look like e<generator>.<index>...")
        gen = int(mt.group(1)) - 1
        idx = tuple(int(v) for v in mt.group(2).split(".")[1:])
        if not 0 <= gen < n:
            r.fail(section, key, f"generator out of range 1..{n}")
        if len(idx) != nidx:
            r.fail(section, key, f"expected {nidx} chart indices")
        if any(not 0 <= i < m for i in idx) or len(set(idx)) != len(idx):
            r.fail(section, key, f"chart indices must be distinct and in 0..{m - 1}")
        yield key, gen, idx


def _read_connection(r: _Reader, alg: LieAlgebra, m: int) -> GForm:
    comps = [[Poly.zero(m) for _ in range(m)] for _ in range(alg.dim)]
    if r.cp.has_section("connection"):
        for key, gen, (mu,) in _keyed(r, "connection", alg.dim, 1, m):
            comps[gen][mu] = r.poly("connection", key, m)
    return connection(alg, comps)


def _read_momentum(r: _Reader, alg: LieAlgebra, m: int) -> Optional[GForm]:
    if not r.cp.has_section("momentum"):
        return None
    coeffs = [dict() for _ in range(alg.dim)]
    for key, gen, idx in _keyed(r, "momentum", alg.dim, m - 2, m):
        order = tuple(sorted(idx))
        sign = 1
        for i, j in combinations(range(len(idx)), 2):
            if idx[i] > idx[j]:
                sign = -sign
        p = r.poly("momentum", key, m) * sign
        coeffs[gen][order] = coeffs[gen].get(order, Poly.zero(m)) + p
    return GForm(alg, DUAL, [ScalarForm(m, m - 2, c) for c in coeffs])


def load_text(text: str, source: str = "<string>") -> ProblemConfig:
    r = _Reader(text, source)
    m = r.integer("problem", "dim", None)
    if m is None:
        r.fail("problem", None, "missing required key 'dim'")
    if m < 2:
        r.fail("problem", "dim", "dimension must be at least 2")
    raw_metric = r.get("problem", "metric") or " ".join("+" * m)
    try:
        metric = Metric.parse(raw_metric)
    except ShapeError as exc:
        r.fail("problem", "metric", str(exc))
    if metric.dim != m:
        r.fail("problem", "metric", f"signature has {metric.dim} entries, dim is {m}")
    alg = _read_algebra(r)
    conn = _read_connection(r, alg, m)
    mom = _read_momentum(r, alg, m)
    kind = (r.get("lagrangian", "kind") or "yang-mills").lower()
    if kind == "yang-mills":
        lag = ym_density(alg, metric)
    elif kind == "custom":
        probe = ym_density(alg, metric)
        body = r.get("lagrangian", "body")
        if body is None:
            r.fail("lagrangian", None, "custom Lagrangian needs a 'body'")
        lag = LagrangianDensity(alg, m, metric, r.poly("lagrangian", "body", probe.nvars))
    else:
        r.fail("lagrangian", "kind", f"expected 'yang-mills' or 'custom', got {kind!r}")
    point = None
    raw = r.get("jet", "point")
    if raw:
        try:
            point = tuple(_rationals(raw))
        except (ValueError, ZeroDivisionError):
            r.fail("jet", "point", f"malformed point {raw!r}")
        if len(point) != m:
            r.fail("jet", "point", f"point needs {m} entries")
    return ProblemConfig(
        source, m, metric, alg, conn, mom, lag, kind,
        r.integer("check", "seed", 0), r.integer("check", "trials", 10), point,
    )


def load(path: Optional[str]) -> ProblemConfig:
    source, text = resolve(path)
    return load_text(text, source)


def parse_point(text: str, m: int) -> Tuple[Fraction, ...]:
    try:
        pt = tuple(_rationals(text))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"malformed point {text!r}") from None
    if len(pt) != m:
        raise ConfigError(f"point needs {m} entries, got {len(pt)}")
    return pt
