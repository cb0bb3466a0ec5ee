"""
Connections in a fixed global trivialization, their curvature and the
covariant exterior derivatives on algebra- and dual-valued forms.

The coefficient of dq^mu ^ dq^nu (mu < nu) in the curvature is
d_mu A_nu - d_nu A_mu + [A_mu, A_nu].
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import LieAlgebra, Matrix
from .errors import AlgebraError, ShapeError
from .forms import ALGEBRA, DUAL, GForm, ScalarForm, ext_d, graded_bracket, wedge
from .poly import Poly


def connection(algebra: LieAlgebra, components: Sequence[Sequence[Poly]]) -> GForm:
    """Build A = A^a_mu dq^mu (x) e_a from ``components[a][mu]``."""
    if len(components) != algebra.dim:
        raise ShapeError(f"need {algebra.dim} generator components, got {len(components)}")
    forms = []
    for row in components:
        m = len(row)
        forms.append(ScalarForm(m, 1, {(mu,): p for mu, p in enumerate(row)}))
    return GForm(algebra, ALGEBRA, forms)


def _require_connection(a: GForm):
    if a.valence != ALGEBRA or a.degree != 1:
        raise ShapeError("a connection is an algebra-valued one-form")


def components(a: GForm):
    """A^a_mu as a nested list of Polys."""
    return [[comp.coeff((mu,)) for mu in range(a.dim)] for comp in a]


def curvature(a: GForm) -> GForm:
    """F = dA + 1/2 [A ^ A]."""
    _require_connection(a)
    return a.ext_d() + graded_bracket(a, a).scale(Fraction(1, 2))


def cov_d(omega: GForm, zeta: GForm) -> GForm:
    """D_omega zeta = d zeta + [omega ^ zeta] for algebra-valued zeta."""
    _require_connection(omega)
    if zeta.valence != ALGEBRA:
        raise ShapeError("cov_d acts on algebra-valued forms; use cov_d_star for dual-valued ones")
    return zeta.ext_d() + graded_bracket(omega, zeta)


def cov_d_star(omega: GForm, xi: GForm) -> GForm:
    """(D#_omega xi)_a = d xi_a - c^c_{ba} omega^b ^ xi_c."""
    _require_connection(omega)
    if xi.valence != DUAL:
        raise ShapeError("cov_d_star acts on dual-valued forms")
    if omega.algebra != xi.algebra or omega.dim != xi.dim:
        raise ShapeError("connection and form disagree in algebra or chart")
    alg = omega.algebra
    n = alg.dim
    wedges = {}
    for b in range(n):
        if omega[b].is_zero():
            continue
        for c in range(n):
            if xi[c].is_zero():
                continue
            if any(alg.structure[c][b][a] for a in range(n)):
                wedges[b, c] = wedge(omega[b], xi[c])
    out = []
    for a in range(n):
        acc = ext_d(xi[a])
        for (b, c), w in wedges.items():
            k = alg.structure[c][b][a]
            if k:
                acc = acc - w.scale(k)
        out.append(acc)
    return GForm(alg, DUAL, out)


def gauge_shift_abelian(a: GForm, chi: Sequence[Poly]) -> GForm:
    """A -> A + d chi, generator by generator; abelian algebras only."""
    _require_connection(a)
    if not a.algebra.is_abelian():
        raise AlgebraError("additive gauge shift is only a gauge transformation for abelian algebras")
    if len(chi) != a.algebra.dim:
        raise ShapeError(f"need {a.algebra.dim} gauge functions, got {len(chi)}")
    shift = GForm(a.algebra, ALGEBRA, [ext_d(ScalarForm.function(f)) for f in chi])
    return a + shift


def gauge_rotate_constant(a: GForm, r: Matrix) -> GForm:
    """A'^a = R^a_b A^b for a constant automorphism R of the algebra."""
    _require_connection(a)
    if not a.algebra.is_automorphism(r):
        raise AlgebraError("matrix is not an automorphism of the Lie algebra")
    return a.transform(r)


def bianchi_residual(a: GForm) -> GForm:
    """D_A F_A; identically zero for every connection."""
    return cov_d(a, curvature(a))
