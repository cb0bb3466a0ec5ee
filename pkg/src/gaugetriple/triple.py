"""
Reduced phase-space maps for gauge fields: alpha-bar, R-bar and
beta-bar, vertical differentials of Lagrangian densities in (omega, F),
dynamics residuals, the Legendre map and the reduced Hamiltonian.

A Lagrangian density is the coefficient of dq^0 ^ ... ^ dq^{m-1}, written as
one Poly over the variables

    x^0 .. x^{m-1}                    chart coordinates
    A^a_mu        at m + a*m + mu     connection values
    F^a_{mu nu}   at m + n*m + a*P + k  curvature values, (mu, nu) the k-th
                                      pair of combinations(range(m), 2), P = C(m, 2)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, NamedTuple, Tuple

from .algebra import LieAlgebra, determinant
from .errors import ShapeError
from .forms import ALGEBRA, DUAL, GForm, Metric, ScalarForm, complement, pair, permutation_sign
from .gauge import components, cov_d_star, curvature
from .poly import Poly


def _sign(m: int) -> int:
    return -1 if m % 2 else 1


@dataclass(frozen=True)
class LagrangianDensity:
    algebra: LieAlgebra
    dim: int
    metric: Metric
    body: Poly

    def __post_init__(self):
        if self.metric.dim != self.dim:
            raise ShapeError(f"metric on R^{self.metric.dim} for a density on R^{self.dim}")
        if self.body.nvars != self.nvars:
            raise ShapeError(f"density body has {self.body.nvars} variables, expected {self.nvars}")

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return list(combinations(range(self.dim), 2))

    @property
    def nvars(self) -> int:
        m, n = self.dim, self.algebra.dim
        return m + n * m + n * len(self.pairs)

    def a_var(self, a: int, mu: int) -> int:
        return self.dim + a * self.dim + mu

    def f_var(self, a: int, mu: int, nu: int) -> int:
        m, n = self.dim, self.algebra.dim
        return m + n * m + a * len(self.pairs) + self.pairs.index((mu, nu))

    def var_names(self) -> List[str]:
        names = [f"x{i}" for i in range(self.dim)]
        names += [f"A{a}_{mu}" for a in range(self.algebra.dim) for mu in range(self.dim)]
        names += [f"F{a}_{mu}{nu}" for a in range(self.algebra.dim) for mu, nu in self.pairs]
        return names

    def scale(self, c) -> "LagrangianDensity":
        return LagrangianDensity(self.algebra, self.dim, self.metric, self.body * Fraction(c))

    def substitutions(self, omega: GForm, F: GForm) -> List[Poly]:
        """Polys in the chart variables to substitute for every density variable."""
        m = self.dim
        if omega.algebra != self.algebra or omega.dim != m or F.dim != m or F.degree != 2:
            raise ShapeError("connection or curvature does not match the density")
        subs = [Poly.var(m, i) for i in range(m)]
        subs += [p for row in components(omega) for p in row]
        subs += [F[a].coeff(pq) for a in range(self.algebra.dim) for pq in self.pairs]
        return subs

    def evaluate(self, omega: GForm, F: GForm) -> Poly:
        return self.body.compose(self.substitutions(omega, F), self.dim)


def _check_momentum(omega: GForm, p: GForm):
    if p.valence != DUAL or p.algebra != omega.algebra or p.dim != omega.dim:
        raise ShapeError("momentum must be a dual-valued form over the connection's algebra and chart")
    if p.degree != omega.dim - 2:
        raise ShapeError(f"momentum must have degree {omega.dim - 2}, got {p.degree}")


class PhaseTuple(NamedTuple):
    """(omega, F, D#_omega p, (-1)^m p): the image of the reduced alpha."""

    omega: GForm
    F: GForm
    sigma: GForm
    momentum: GForm


def alpha_bar(omega: GForm, p: GForm) -> PhaseTuple:
    _check_momentum(omega, p)
    return PhaseTuple(omega, curvature(omega), cov_d_star(omega, p), p.scale(_sign(omega.dim)))


def r_bar(t) -> tuple:
    """(omega, F, b, X) -> (omega, X, b, -F)."""
    if len(t) != 4:
        raise ShapeError("R-bar acts on 4-slot tuples")
    omega, f, b, x = t
    m = omega.dim
    if b.degree != m - 1 or sorted((f.degree, x.degree)) != sorted((2, m - 2)):
        raise ShapeError("slot degrees are inconsistent")
    if any(s.dim != m or s.algebra != omega.algebra for s in (f, b, x)):
        raise ShapeError("slots disagree in chart or algebra")
    return (omega, x, b, -f)


def beta_bar(omega: GForm, p: GForm) -> tuple:
    """(omega, (-1)^m p, D#_omega p, -F)."""
    _check_momentum(omega, p)
    return (omega, p.scale(_sign(omega.dim)), cov_d_star(omega, p), -curvature(omega))


def _musical(dim: int, idx: Tuple[int, ...], coeff: Poly) -> ScalarForm:
    # coeff * dq^J with dq^J ^ dq^idx = +dq^0 ^ ... ^ dq^{m-1}
    j = complement(idx, dim)
    return ScalarForm.basis(dim, j, coeff * permutation_sign(j + tuple(idx)))


def vertical_diff(L: LagrangianDensity, omega: GForm, F: GForm) -> Tuple[GForm, GForm]:
    """(dL/dA, dL/dF) as dual-valued (m-1)- and (m-2)-forms evaluated at (omega, F).

    The partial with respect to A^a_mu sits on the monomial dq^J with
    dq^J ^ dq^mu = vol, and the partial with respect to F^a_{mu nu} on dq^J
    with dq^J ^ dq^mu ^ dq^nu = vol.  Pairing these against a variation
    then reproduces the directional derivative of L times vol.
    """
    m, n = L.dim, L.algebra.dim
    subs = L.substitutions(omega, F)
    da, df = [], []
    for a in range(n):
        acc = ScalarForm.zero(m, m - 1)
        for mu in range(m):
            c = L.body.partial(L.a_var(a, mu)).compose(subs, m)
            if c:
                acc = acc + _musical(m, (mu,), c)
        da.append(acc)
        acc = ScalarForm.zero(m, m - 2)
        for mu, nu in L.pairs:
            c = L.body.partial(L.f_var(a, mu, nu)).compose(subs, m)
            if c:
                acc = acc + _musical(m, (mu, nu), c)
        df.append(acc)
    return GForm(L.algebra, DUAL, da), GForm(L.algebra, DUAL, df)


class Residuals(NamedTuple):
    momentum: GForm  # (-1)^m p - dL/dF
    field: GForm  # D#_omega p - dL/dA

    def is_zero(self) -> bool:
        return self.momentum.is_zero() and self.field.is_zero()

    def report(self) -> List[Tuple[str, int, Tuple[int, ...], str]]:
        """Nonzero components as (slot, generator, index tuple, polynomial); empty means on-shell."""
        out = [("momentum",) + t for t in self.momentum.serialize()]
        out += [("field",) + t for t in self.field.serialize()]
        return out


def dynamics_residuals(L: LagrangianDensity, omega: GForm, p: GForm) -> Residuals:
    _check_momentum(omega, p)
    F = curvature(omega)
    dl_da, dl_df = vertical_diff(L, omega, F)
    return Residuals(p.scale(_sign(L.dim)) - dl_df, cov_d_star(omega, p) - dl_da)


def legendre(L: LagrangianDensity, omega: GForm, F: GForm) -> GForm:
    """The momentum p with (-1)^m p = dL/dF, i.e. the one making res_momentum vanish."""
    return vertical_diff(L, omega, F)[1].scale(_sign(L.dim))


def hamiltonian(L: LagrangianDensity, omega: GForm, F: GForm, b: GForm) -> ScalarForm:
    """L(omega, F) vol - <b, F>, with b taken from the momentum slot of beta-bar."""
    if b.valence != DUAL or b.degree != L.dim - 2:
        raise ShapeError(f"momentum must be a dual-valued {L.dim - 2}-form")
    if F.valence != ALGEBRA or F.degree != 2:
        raise ShapeError("curvature must be an algebra-valued 2-form")
    vol = ScalarForm.basis(L.dim, tuple(range(L.dim)), L.evaluate(omega, F))
    return vol - pair(b, F)


def legendre_regularity(L: LagrangianDensity) -> str:
    """'invertible', 'singular' or 'nonconstant' for the Hessian of the body in the F-variables."""
    fv = [L.f_var(a, mu, nu) for a in range(L.algebra.dim) for mu, nu in L.pairs]
    if not fv:
        return "singular"
    hess = [[L.body.partial(i).partial(j) for j in fv] for i in fv]
    if any(not h.is_constant() for row in hess for h in row):
        return "nonconstant"
    det = determinant([[h.constant_value() for h in row] for row in hess])
    return "invertible" if det else "singular"
