"""The identity suite behind ``gaugetriple check``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, List, Optional

from . import sampling
from .config import ProblemConfig
from .errors import AlgebraError
from .forms import ALGEBRA, DUAL, GForm, ScalarForm, ext_d, pair
from .gauge import bianchi_residual, cov_d, cov_d_star
from .jets import curvature_matrix, jet_of, reconstruct, sardanashvily_check, split_jet
from .triple import alpha_bar, beta_bar, r_bar

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""
    witness: Optional[str] = None

    def to_json(self):
        return {"name": self.name, "status": self.status, "detail": self.detail, "witness": self.witness}


def _witness_scalar(f: ScalarForm) -> Optional[str]:
    for idx, s in f.serialize():
        return f"dq{''.join(map(str, idx))}: {s}"
    return None


def _witness(g: GForm) -> Optional[str]:
    tag = "e" if g.valence == ALGEBRA else "e*"
    for a, idx, s in g.serialize():
        return f"{tag}{a + 1}[{''.join(map(str, idx))}]: {s}"
    return None


def _connections(cfg: ProblemConfig, rng: random.Random):
    yield cfg.connection
    pdeg = 2 if cfg.dim <= 3 else 1
    for _ in range(cfg.trials):
        yield sampling.random_connection(rng, cfg.algebra, cfg.dim, pdeg)


def check_algebra(cfg, rng) -> CheckResult:
    bad = cfg.algebra.validate()
    if bad:
        return CheckResult("lie-algebra", FAIL, f"{len(bad)} violation(s)", str(bad[0]))
    return CheckResult("lie-algebra", PASS, f"{cfg.algebra.name}: antisymmetry, Jacobi, invariant nondegenerate pairing")


def check_dd(cfg, rng) -> CheckResult:
    forms = [c for c in cfg.connection]
    for _ in range(cfg.trials):
        k = rng.randrange(cfg.dim + 1)
        forms.append(sampling.scalar_form(rng, cfg.dim, k, 3))
    for f in forms:
        dd = ext_d(ext_d(f))
        if not dd.is_zero():
            return CheckResult("d-squared", FAIL, f"degree {f.degree}", _witness_scalar(dd))
    return CheckResult("d-squared", PASS, f"{len(forms)} forms")


def check_bianchi(cfg, rng) -> CheckResult:
    count = 0
    for a in _connections(cfg, rng):
        res = bianchi_residual(a)
        count += 1
        if not res.is_zero():
            return CheckResult("bianchi", FAIL, "D_A F_A != 0", _witness(res))
    return CheckResult("bianchi", PASS, f"{count} connections")


def check_leibniz(cfg, rng) -> CheckResult:
    m = cfg.dim
    sign = -1 if m % 2 else 1
    count = 0
    for omega in _connections(cfg, rng):
        p = sampling.gform(rng, cfg.algebra, DUAL, m, m - 2, 1)
        tau = sampling.gform(rng, cfg.algebra, ALGEBRA, m, 1, 1)
        lhs = ext_d(pair(p, tau))
        rhs = pair(cov_d_star(omega, p), tau) + pair(p, cov_d(omega, tau)).scale(sign)
        count += 1
        if lhs != rhs:
            return CheckResult("leibniz", FAIL, "d<p,t> != <D#p,t> + (-1)^m <p,Dt>", _witness_scalar(lhs - rhs))
    return CheckResult("leibniz", PASS, f"{count} triples")


def check_jet_curvature(cfg, rng) -> CheckResult:
    count = 0
    for a in _connections(cfg, rng):
        x = sampling.point(rng, cfg.dim)
        j = jet_of(a, x)
        s = split_jet(j, cfg.algebra)
        expected = curvature_matrix(a, x)
        if s.F != expected:
            return CheckResult("curvature-consistency", FAIL, f"at x = {_fmt_point(x)}",
                               f"split F {_fmt(s.F)} vs curvature {_fmt(expected)}")
        if reconstruct(s, cfg.algebra) != j:
            return CheckResult("curvature-consistency", FAIL, "reconstruct(split_jet(j)) != j", _fmt_point(x))
        count += 1
    for _ in range(cfg.trials):
        j = sampling.jet(rng, cfg.algebra.dim, cfg.dim)
        if reconstruct(split_jet(j, cfg.algebra), cfg.algebra) != j:
            return CheckResult("curvature-consistency", FAIL, "roundtrip failed on a random jet", _fmt_point(j.x))
    return CheckResult("curvature-consistency", PASS, f"{count} connections, {cfg.trials} random jets")


def check_beta(cfg, rng) -> CheckResult:
    m = cfg.dim
    count = 0
    for omega in _connections(cfg, rng):
        p = cfg.momentum if count == 0 and cfg.momentum is not None else \
            sampling.gform(rng, cfg.algebra, DUAL, m, m - 2, 1)
        lhs = beta_bar(omega, p)
        rhs = r_bar(alpha_bar(omega, p))
        count += 1
        for slot, (u, v) in enumerate(zip(lhs, rhs)):
            if u != v:
                return CheckResult("beta-composition", FAIL, f"slot {slot} differs", _witness(u - v))
    return CheckResult("beta-composition", PASS, f"{count} inputs")


def check_sardanashvily(cfg, rng) -> CheckResult:
    if cfg.algebra.is_abelian():
        return CheckResult("sardanashvily", SKIPPED, "abelian algebra: the claimed summand is symmetric")
    try:
        report = sardanashvily_check(cfg.algebra)
    except AlgebraError as exc:
        return CheckResult("sardanashvily", FAIL, str(exc))
    if not report.refuted:
        return CheckResult("sardanashvily", FAIL, "no asymmetry found")
    a, mu, lam, v1, v2 = report.violations[0]
    return CheckResult("sardanashvily", PASS, "claimed symmetric summand is not symmetric (counterexample found)",
                       f"a={a + 1} (mu,lam)=({mu},{lam}): {v1} != {v2}")


CHECKS: List[Callable] = [
    check_algebra, check_dd, check_bianchi, check_leibniz, check_jet_curvature, check_beta, check_sardanashvily,
]
_NAMES = ["lie-algebra", "d-squared", "bianchi", "leibniz", "curvature-consistency", "beta-composition",
          "sardanashvily"]


def run_checks(cfg: ProblemConfig, seed: Optional[int] = None) -> List[CheckResult]:
    """Run every check with its own seeded stream so results do not depend on order."""
    seed = cfg.seed if seed is None else seed
    first = check_algebra(cfg, random.Random(seed))
    out = [first]
    for i, (name, fn) in enumerate(zip(_NAMES[1:], CHECKS[1:]), 1):
        if first.status == FAIL:
            out.append(CheckResult(name, SKIPPED, "invalid Lie algebra"))
        else:
            out.append(fn(cfg, random.Random(seed * 1000 + i)))
    return out


def _fmt(arr) -> str:
    if isinstance(arr, tuple):
        return "[" + ", ".join(_fmt(v) for v in arr) + "]"
    return str(arr)


def _fmt_point(x) -> str:
    return "(" + ", ".join(str(v) for v in x) + ")"
