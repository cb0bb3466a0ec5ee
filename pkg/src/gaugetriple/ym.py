"""
Yang-Mills instance: the Lagrangian 1/2 K_ab F^a ^ *F^b, its field-equation
residual D#_A *K~F, the Maxwell reduction and a small library of examples.

Minkowski space uses the signature (-, +, +, +).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from .algebra import LieAlgebra, abelian, so3
from .errors import AlgebraError
from .forms import GForm, Metric, ScalarForm, ext_d, hodge, hodge_g, k_sharp, wedge
from .gauge import connection, cov_d_star, curvature
from .poly import Poly
from .triple import LagrangianDensity, dynamics_residuals, legendre


@dataclass(frozen=True)
class YMProblem:
    algebra: LieAlgebra
    metric: Metric
    A: GForm

    @property
    def dim(self) -> int:
        return self.metric.dim


def ym_lagrangian(prob: YMProblem) -> ScalarForm:
    F = curvature(prob.A)
    K = prob.algebra.pairing
    m = prob.dim
    stars = [hodge(f, prob.metric) for f in F]
    acc = ScalarForm.zero(m, m)
    for a, fa in enumerate(F):
        if fa.is_zero():
            continue
        for b, sb in enumerate(stars):
            if K[a][b] and not sb.is_zero():
                acc = acc + wedge(fa, sb).scale(K[a][b])
    return acc.scale(Fraction(1, 2))


def ym_density(algebra: LieAlgebra, metric: Metric) -> LagrangianDensity:
    """1/2 K_ab sum_{mu<nu} g_mu g_nu F^a_{mu nu} F^b_{mu nu} as a density body."""
    m = metric.dim
    probe = LagrangianDensity(algebra, m, metric, Poly.zero(_nvars(algebra, m)))
    nv = probe.nvars
    body = Poly.zero(nv)
    K = algebra.pairing
    for a in range(algebra.dim):
        for b in range(algebra.dim):
            if not K[a][b]:
                continue
            for mu, nu in probe.pairs:
                g = metric.signs[mu] * metric.signs[nu]
                term = Poly.var(nv, probe.f_var(a, mu, nu)) * Poly.var(nv, probe.f_var(b, mu, nu))
                body = body + term * (K[a][b] * g / 2)
    return LagrangianDensity(algebra, m, metric, body)


def _nvars(algebra, m):
    n = algebra.dim
    return m + n * m + n * (m * (m - 1) // 2)


def ym_momentum(prob: YMProblem) -> GForm:
    """p = *K~F."""
    return hodge_g(k_sharp(curvature(prob.A)), prob.metric)


def ym_residual(prob: YMProblem) -> GForm:
    return cov_d_star(prob.A, ym_momentum(prob))


@dataclass
class MaxwellReport:
    equal: bool
    residual: GForm
    maxwell: GForm


def maxwell_check(prob: YMProblem) -> MaxwellReport:
    """Compare the YM residual with d*F for an abelian algebra."""
    if not prob.algebra.is_abelian():
        raise AlgebraError("the Maxwell reduction needs an abelian algebra")
    res = ym_residual(prob)
    F = curvature(prob.A)
    maxwell = k_sharp(F.map(lambda f: ext_d(hodge(f, prob.metric))))
    return MaxwellReport(res == maxwell, res, maxwell)


@dataclass
class ConsistencyReport:
    consistent: bool
    momentum_residual: GForm
    field_residual: GForm
    ym_residual: GForm
    sign: int  # field_residual == sign * ym_residual

    def on_shell(self) -> bool:
        return self.momentum_residual.is_zero() and self.field_residual.is_zero()


def triple_consistency(prob: YMProblem) -> ConsistencyReport:
    """Run the generic triple machinery on the YM density and compare with ym_residual."""
    L = ym_density(prob.algebra, prob.metric)
    F = curvature(prob.A)
    p = legendre(L, prob.A, F)
    res = dynamics_residuals(L, prob.A, p)
    direct = ym_residual(prob)
    sign = -1 if prob.dim % 2 else 1
    ok = res.momentum.is_zero() and res.field == direct.scale(sign) and p.scale(sign) == ym_momentum(prob)
    return ConsistencyReport(ok, res.momentum, res.field, direct, sign)


# -- example library -----------------------------------------------------------


def vacuum(algebra: LieAlgebra | None = None, metric: Metric | None = None) -> YMProblem:
    algebra = algebra or so3()
    metric = metric or Metric.minkowski(4)
    m = metric.dim
    A = connection(algebra, [[Poly.zero(m)] * m for _ in range(algebra.dim)])
    return YMProblem(algebra, metric, A)


def plane_wave(profile: Poly) -> YMProblem:
    """A = f(q0 - q1) dq2 (x) e0 on abelian Minkowski R^4; ``profile`` is f in one variable."""
    if profile.nvars != 1:
        raise ValueError("the profile is a polynomial in one variable")
    u = Poly.var(4, 0) - Poly.var(4, 1)
    f = profile.compose([u], 4)
    z = Poly.zero(4)
    return YMProblem(abelian(1), Metric.minkowski(4), connection(abelian(1), [[z, z, f, z]]))


def offshell_witness() -> YMProblem:
    """A = (q1)^2 dq0 on abelian Minkowski R^4; its residual is a nonzero constant."""
    z = Poly.zero(4)
    q1 = Poly.var(4, 1)
    return YMProblem(abelian(1), Metric.minkowski(4), connection(abelian(1), [[q1 * q1, z, z, z]]))


def so3_sample() -> YMProblem:
    """A = x0 e0 dq1 + x1 e1 dq0 on Euclidean R^2."""
    x0, x1, z = Poly.var(2, 0), Poly.var(2, 1), Poly.zero(2)
    return YMProblem(so3(), Metric.euclidean(2), connection(so3(), [[z, x0], [x1, z], [z, z]]))


EXAMPLES: Dict[str, Callable[[], YMProblem]] = {
    "vacuum": vacuum,
    "plane-wave": lambda: plane_wave(Poly.parse("x0^3 - 2*x0", 1)),
    "offshell": offshell_witness,
    "so3-sample": so3_sample,
}


def example(name: str) -> YMProblem:
    try:
        return EXAMPLES[name]()
    except KeyError:
        raise ValueError(f"unknown example {name!r}; choose from {sorted(EXAMPLES)}") from None


def example_names() -> List[str]:
    return sorted(EXAMPLES)
