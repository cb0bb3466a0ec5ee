"""
First jets of connections and their split into a symmetric (holonomic) part
and the curvature, plus the coordinate maps of the unreduced first-order
field-theory triple for a trivial vector bundle R^m x R^n.

Index convention: ``K[a][mu][lam]`` is d_lam A^a_mu, the outer index being
the form index and the inner one the derivative direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

from .algebra import LieAlgebra
from .errors import AlgebraError, ShapeError
from .forms import GForm
from .gauge import components, curvature
from .poly import Poly

Array2 = Tuple[Tuple[Fraction, ...], ...]
Array3 = Tuple[Tuple[Tuple[Fraction, ...], ...], ...]


def _freeze(rows):
    if isinstance(rows, (list, tuple)):
        return tuple(_freeze(r) for r in rows)
    return Fraction(rows)


def _zeros3(n, m):
    return tuple(tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(m)) for _ in range(n))


@dataclass(frozen=True)
class JetPoint:
    x: Tuple[Fraction, ...]
    A: Array2
    K: Array3

    def __post_init__(self):
        object.__setattr__(self, "x", _freeze(self.x))
        object.__setattr__(self, "A", _freeze(self.A))
        object.__setattr__(self, "K", _freeze(self.K))
        m = len(self.x)
        n = len(self.A)
        if any(len(row) != m for row in self.A):
            raise ShapeError("A must be n x m")
        if len(self.K) != n or any(len(r) != m or any(len(s) != m for s in r) for r in self.K):
            raise ShapeError("K must be n x m x m")

    @property
    def shape(self):
        return len(self.A), len(self.x)

    def __add__(self, other: "JetPoint") -> "JetPoint":
        # fiberwise translation along the K-directions; base data must agree
        if self.x != other.x or self.A != other.A:
            raise ShapeError("jets over different points of C cannot be translated into each other")
        n, m = self.shape
        return JetPoint(self.x, self.A, [
            [[self.K[a][i][j] + other.K[a][i][j] for j in range(m)] for i in range(m)] for a in range(n)
        ])


@dataclass(frozen=True)
class SplitJet:
    x: Tuple[Fraction, ...]
    A: Array2
    S: Array3
    F: Array3

    def __post_init__(self):
        for name in ("x", "A", "S", "F"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))

    def violations(self) -> List[str]:
        out = []
        n, m = len(self.A), len(self.x)
        for a, i, j in product(range(n), range(m), range(m)):
            if self.S[a][i][j] != self.S[a][j][i]:
                out.append(f"S[{a}][{i}][{j}] not symmetric")
            if self.F[a][i][j] != -self.F[a][j][i]:
                out.append(f"F[{a}][{i}][{j}] not antisymmetric")
        return out


def _check_alg(j: JetPoint, alg: LieAlgebra):
    if j.shape[0] != alg.dim:
        raise ShapeError(f"jet has {j.shape[0]} generators, algebra has {alg.dim}")


def jet_of(a: GForm, x: Sequence) -> JetPoint:
    """Values and first partials of the connection coefficients at x."""
    if len(x) != a.dim:
        raise ShapeError(f"point has {len(x)} entries, chart has {a.dim}")
    comps = components(a)
    m = a.dim
    vals = [[p.evaluate(x) for p in row] for row in comps]
    ders = [[[row[mu].partial(lam).evaluate(x) for lam in range(m)] for mu in range(m)] for row in comps]
    return JetPoint(tuple(x), vals, ders)


def _half_bracket(alg: LieAlgebra, A, a, mu, lam):
    # 1/2 c^a_{bc} A^b_lam A^c_mu
    n = alg.dim
    s = Fraction(0)
    for b in range(n):
        if not A[b][lam]:
            continue
        for c in range(n):
            k = alg.structure[a][b][c]
            if k and A[c][mu]:
                s += k * A[b][lam] * A[c][mu]
    return s / 2


def gamma_map(j: JetPoint, alg: LieAlgebra) -> JetPoint:
    """K'^a_{mu lam} = k^a_{mu lam} + 1/2 c^a_{bc} A^b_lam A^c_mu."""
    _check_alg(j, alg)
    n, m = j.shape
    K = [[[j.K[a][mu][lam] + _half_bracket(alg, j.A, a, mu, lam) for lam in range(m)]
          for mu in range(m)] for a in range(n)]
    return JetPoint(j.x, j.A, K)


def split_jet(j: JetPoint, alg: LieAlgebra) -> SplitJet:
    """Apply gamma, then split into symmetric part S and curvature F.

    F^a_{mu lam} = K'^a_{lam mu} - K'^a_{mu lam}, i.e. twice the
    antisymmetric part of K' with the indices swapped, which equals the
    curvature coefficient d_mu A_lam - d_lam A_mu + [A_mu, A_lam].
    """
    g = gamma_map(j, alg)
    n, m = j.shape
    K = g.K
    S = [[[(K[a][i][k] + K[a][k][i]) / 2 for k in range(m)] for i in range(m)] for a in range(n)]
    F = [[[K[a][k][i] - K[a][i][k] for k in range(m)] for i in range(m)] for a in range(n)]
    return SplitJet(j.x, j.A, S, F)


def reconstruct(s: SplitJet, alg: LieAlgebra) -> JetPoint:
    """Inverse of :func:`split_jet`."""
    bad = s.violations()
    if bad:
        raise ShapeError("split jet violates symmetry: " + "; ".join(bad[:3]))
    n, m = len(s.A), len(s.x)
    if n != alg.dim:
        raise ShapeError(f"split jet has {n} generators, algebra has {alg.dim}")
    K = [[[s.S[a][i][k] - s.F[a][i][k] / 2 - _half_bracket(alg, s.A, a, i, k) for k in range(m)]
          for i in range(m)] for a in range(n)]
    return JetPoint(s.x, s.A, K)


def curvature_matrix(a: GForm, x: Sequence) -> Array3:
    """Full antisymmetric array F^a_{mu nu} of the curvature at x."""
    F = curvature(a)
    m = a.dim
    out = []
    for comp in F:
        vals = comp.at(x)
        mat = [[Fraction(0)] * m for _ in range(m)]
        for (mu, nu), v in vals.items():
            mat[mu][nu] = v
            mat[nu][mu] = -v
        out.append(mat)
    return _freeze(out)


@dataclass
class SardanashvilyReport:
    algebra: str
    jet: JetPoint
    degenerate: bool
    # (a, mu, lam, claimed_{mu lam}, claimed_{lam mu})
    violations: List[Tuple[int, int, int, Fraction, Fraction]] = field(default_factory=list)
    # asymmetry claimed_{mu lam} - claimed_{lam mu} as a polynomial in the
    # A-coordinates (variable a*m + mu stands for A^a_mu)
    asymmetry: List[Tuple[int, int, int, Poly]] = field(default_factory=list)

    @property
    def refuted(self) -> bool:
        return bool(self.violations)

    def lines(self) -> List[str]:
        out = [f"algebra {self.algebra}: claimed symmetric summand "
               "1/2 (k_{mu lam} + k_{lam mu} + c^a_{bc} k^b_lam k^c_mu)"]
        if self.degenerate:
            out.append("jet has vanishing connection values: degenerate, no violation possible")
        for a, mu, lam, v1, v2 in self.violations:
            out.append(f"a={a} (mu,lam)=({mu},{lam}): {v1} != {v2} = value at (lam,mu)")
        for a, mu, lam, p in self.asymmetry:
            out.append(f"generic asymmetry a={a} (mu,lam)=({mu},{lam}): {p}")
        return out


def _claimed_symmetric(alg, j, a, mu, lam):
    # 1/2 (k_{mu lam} + k_{lam mu} + c^a_{bc} k^b_lam k^c_mu)
    return (j.K[a][mu][lam] + j.K[a][lam][mu]) / 2 + _half_bracket(alg, j.A, a, mu, lam)


def sardanashvily_witness(alg: LieAlgebra, m: int = 2) -> JetPoint:
    """A jet with K = 0 whose values realize a nonzero bracket [A_0, A_1]."""
    n = alg.dim
    for b, c in product(range(n), repeat=2):
        if any(alg.structure[a][b][c] for a in range(n)):
            A = [[Fraction(0)] * m for _ in range(n)]
            A[b][0] = Fraction(1)
            A[c][1] += Fraction(1)
            return JetPoint([0] * m, A, _zeros3(n, m))
    raise AlgebraError("abelian algebra: every bracket vanishes, no counterexample exists")


def sardanashvily_check(alg: LieAlgebra, jet: JetPoint | None = None) -> SardanashvilyReport:
    """Test the symmetry of the summand claimed to lie in the holonomic part."""
    if alg.is_abelian():
        raise AlgebraError("abelian algebra: the claimed formula is symmetric, no counterexample exists")
    if jet is None:
        jet = sardanashvily_witness(alg)
    _check_alg(jet, alg)
    n, m = jet.shape
    report = SardanashvilyReport(alg.name, jet, degenerate=not any(v for row in jet.A for v in row))
    for a in range(n):
        for mu in range(m):
            for lam in range(mu + 1, m):
                v1 = _claimed_symmetric(alg, jet, a, mu, lam)
                v2 = _claimed_symmetric(alg, jet, a, lam, mu)
                if v1 != v2:
                    report.violations.append((a, mu, lam, v1, v2))
    # symbolic: the k_{mu lam} terms cancel, leaving c^a_{bc}(A^b_lam A^c_mu - A^b_mu A^c_lam)/2
    nv = n * m
    var = lambda b, mu: Poly.var(nv, b * m + mu)
    for a in range(n):
        for mu in range(m):
            for lam in range(mu + 1, m):
                p = Poly.zero(nv)
                for b, c in product(range(n), repeat=2):
                    k = alg.structure[a][b][c]
                    if k:
                        p = p + (var(b, lam) * var(c, mu) - var(b, mu) * var(c, lam)) * (k / 2)
                if p:
                    report.asymmetry.append((a, mu, lam, p))
    return report


# -- unreduced first-order field theory on E = R^m x R^n ---------------------


@dataclass(frozen=True)
class FieldJet:
    """Point of J^1 P for the phase bundle P = V*E (x) Omega^{m-1}.

    ``p[b][j]`` is p^j_b, ``v[c][k]`` is y^c_k and ``dp[d][l][s]`` is
    the jet coordinate p^l_{d s} = d_s p^l_d.
    """

    q: Tuple[Fraction, ...]
    y: Tuple[Fraction, ...]
    p: Array2
    v: Array2
    dp: Array3

    def __post_init__(self):
        for name in ("q", "y", "p", "v", "dp"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))
        m, n = len(self.q), len(self.y)
        if len(self.p) != n or any(len(r) != m for r in self.p):
            raise ShapeError("p must be n x m")
        if len(self.v) != n or any(len(r) != m for r in self.v):
            raise ShapeError("velocities must be n x m")
        if len(self.dp) != n or any(len(r) != m or any(len(s) != m for s in r) for r in self.dp):
            raise ShapeError("momentum jet must be n x m x m")


@dataclass(frozen=True)
class AlphaImage:
    """(q, y, y^c_k, sum_l p^l_{dl}, p^j_b) in V*J^1E (x) Omega^m."""

    q: tuple
    y: tuple
    velocities: Array2
    divergence: Tuple[Fraction, ...]
    momenta: Array2


@dataclass(frozen=True)
class BetaImage:
    """(q, y, p^j_b, sum_k p^k_{ck}, y^c_k) in the affine phase bundle."""

    q: tuple
    y: tuple
    momenta: Array2
    divergence: Tuple[Fraction, ...]
    velocities: Array2


def _divergence(j: FieldJet):
    m = len(j.q)
    return tuple(sum((j.dp[d][l][l] for l in range(m)), Fraction(0)) for d in range(len(j.y)))


def field_alpha(j: FieldJet) -> AlphaImage:
    return AlphaImage(j.q, j.y, j.v, _divergence(j), j.p)


def field_beta(j: FieldJet) -> BetaImage:
    return BetaImage(j.q, j.y, j.p, _divergence(j), j.v)


def swap_r(a: AlphaImage) -> BetaImage:
    """The coordinate R-map taking the Lagrangian-side image to the Hamiltonian side."""
    return BetaImage(a.q, a.y, a.momenta, a.divergence, a.velocities)


@dataclass(frozen=True)
class FieldLayout:
    """Variable layout for a Lagrangian density in the formal slots (q, y^a, y^a_j)."""

    m: int
    n: int

    @property
    def nvars(self) -> int:
        return self.m + self.n + self.n * self.m

    def q(self, i: int) -> int:
        return i

    def y(self, a: int) -> int:
        return self.m + a

    def v(self, a: int, j: int) -> int:
        return self.m + self.n + a * self.m + j


@dataclass
class LagrangeResiduals:
    divergence: List[Poly]  # sum_j d_j p^j_b - dL/dy^b
    momentum: List[List[Poly]]  # p^j_b - dL/dy^b_j

    def is_zero(self) -> bool:
        return not any(self.divergence) and not any(p for row in self.momentum for p in row)


def _along_section(layout: FieldLayout, y: Sequence[Poly]):
    m, n = layout.m, layout.n
    subs = [Poly.var(m, i) for i in range(m)]
    subs += list(y)
    subs += [y[a].partial(j) for a in range(n) for j in range(m)]
    return subs


def lagrange_equations(lagrangian: Poly, layout: FieldLayout, y: Sequence[Poly],
                       p: Sequence[Sequence[Poly]] | None = None) -> LagrangeResiduals:
    """Residuals of the Lagrange field equations for polynomial sections y(q), p(q).

    ``p[b][j]`` is p^j_b.  When ``p`` is omitted it is taken from the second
    family itself, p^j_b = dL/dy^b_j along the section, so only the first
    family can be nonzero.
    """
    m, n = layout.m, layout.n
    if lagrangian.nvars != layout.nvars:
        raise ShapeError(f"Lagrangian has {lagrangian.nvars} variables, layout needs {layout.nvars}")
    if len(y) != n or any(f.nvars != m for f in y):
        raise ShapeError(f"need {n} field components in {m} variables")
    subs = _along_section(layout, y)
    dl_dv = [[lagrangian.partial(layout.v(b, j)).compose(subs, m) for j in range(m)] for b in range(n)]
    if p is None:
        p = dl_dv
    if len(p) != n or any(len(row) != m for row in p):
        raise ShapeError("momenta must be n x m")
    div = []
    for b in range(n):
        lhs = Poly.zero(m)
        for j in range(m):
            lhs = lhs + p[b][j].partial(j)
        div.append(lhs - lagrangian.partial(layout.y(b)).compose(subs, m))
    mom = [[p[b][j] - dl_dv[b][j] for j in range(m)] for b in range(n)]
    return LagrangeResiduals(div, mom)
