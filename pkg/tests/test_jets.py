from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import points, rng_from, seeds
from gaugetriple import sampling
from gaugetriple.algebra import abelian, so3
from gaugetriple.errors import AlgebraError, ShapeError
from gaugetriple.gauge import connection
from gaugetriple.jets import (
    FieldJet, FieldLayout, JetPoint, SplitJet, curvature_matrix, field_alpha, field_beta, gamma_map, jet_of,
    lagrange_equations, reconstruct, sardanashvily_check, split_jet, swap_r,
)
from gaugetriple.poly import Poly
from test_poly import to_sympy


def P(text, m=2):
    return Poly.parse(text, m)


def zeros(n, m):
    return [[[0] * m for _ in range(m)] for _ in range(n)]


def so3_witness():
    # A^1_0 = A^2_1 = 1 in the 1-based labels, i.e. generators 0 and 1 here
    return JetPoint([0, 0], [[1, 0], [0, 1], [0, 0]], zeros(3, 2))


class TestJetOf:
    def test_constant(self):
        a = connection(so3(), [[P("2"), P("1/3")], [P("0"), P("-1")], [P("5"), P("0")]])
        assert jet_of(a, [1, 2]).K == JetPoint([1, 2], [[0, 0]] * 3, zeros(3, 2)).K

    def test_linear_coordinate(self):
        a = connection(abelian(1), [[P("x1"), P("0")]])
        j = jet_of(a, [0, 0])
        assert j.A == ((0, 0),)
        assert j.K == (((0, 1), (0, 0)),)

    @given(seeds, points(3))
    def test_linear_in_connection(self, seed, x):
        rng = rng_from(seed)
        a = sampling.random_connection(rng, so3(), 3)
        b = sampling.random_connection(rng, so3(), 3)
        ja, jb, jab = jet_of(a, x), jet_of(b, x), jet_of(a + b, x)
        assert jab.K == tuple(tuple(tuple(u + v for u, v in zip(r1, r2)) for r1, r2 in zip(p1, p2))
                              for p1, p2 in zip(ja.K, jb.K))

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            jet_of(connection(abelian(1), [[P("x1"), P("0")]]), [0])

    def test_shape_validation(self):
        with pytest.raises(ShapeError):
            JetPoint([0, 0], [[1, 0]], zeros(1, 3))


class TestGamma:
    @given(seeds)
    def test_abelian_identity(self, seed):
        j = sampling.jet(rng_from(seed), 2, 3)
        assert gamma_map(j, abelian(2)) == j

    def test_zero_values_identity(self):
        j = JetPoint([0, 0], [[0, 0]] * 3, [[[1, 2], [3, 4]]] * 3)
        assert gamma_map(j, so3()) == j

    def test_so3_example(self):
        g = gamma_map(so3_witness(), so3())
        assert g.K[2] == ((0, Fraction(-1, 2)), (Fraction(1, 2), 0))
        assert g.K[0] == g.K[1] == ((0, 0), (0, 0))

    @given(seeds, seeds)
    def test_affine_identity_linear_part(self, s1, s2):
        j = sampling.jet(rng_from(s1), 3, 3)
        dk = sampling.jet(rng_from(s2), 3, 3)
        shifted = JetPoint(j.x, j.A, dk.K)
        delta = j + shifted
        base = gamma_map(j, so3())
        moved = gamma_map(delta, so3())
        assert all(moved.K[a][i][k] - base.K[a][i][k] == dk.K[a][i][k]
                   for a, i, k in product(range(3), range(3), range(3)))


class TestSplit:
    def test_abelian_curvature(self):
        a = connection(abelian(1), [[P("-x1"), P("0")]])
        s = split_jet(jet_of(a, [3, -2]), abelian(1))
        assert s.F == (((0, 1), (-1, 0)),)
        assert s.S == (((0, Fraction(-1, 2)), (Fraction(-1, 2), 0)),)

    def test_symmetric_jet(self):
        j = JetPoint([0, 0], [[0, 0]] * 3, [[[1, 2], [2, 5]]] * 3)
        s = split_jet(j, so3())
        assert s.F == tuple([((0, 0), (0, 0))] * 3)
        assert s.S == j.K

    def test_so3_worked_at_point(self):
        a = connection(so3(), [[P("0"), P("x0")], [P("x1"), P("0")], [P("0"), P("0")]])
        s = split_jet(jet_of(a, [1, 1]), so3())
        assert [s.F[e][0][1] for e in range(3)] == [1, -1, -1]

    @given(seeds, st.sampled_from([2, 3, 4]))
    def test_curvature_consistency(self, seed, m):
        rng = rng_from(seed)
        a = sampling.random_connection(rng, so3(), m, 2)
        x = sampling.point(rng, m)
        s = split_jet(jet_of(a, x), so3())
        assert s.F == curvature_matrix(a, x)
        assert not s.violations()

    @given(seeds)
    def test_roundtrip(self, seed):
        j = sampling.jet(rng_from(seed), 3, 3)
        s = split_jet(j, so3())
        assert reconstruct(s, so3()) == j
        assert split_jet(reconstruct(s, so3()), so3()) == s

    def test_zero(self):
        s = SplitJet([0, 0], [[0, 0]] * 3, zeros(3, 2), zeros(3, 2))
        assert reconstruct(s, so3()) == JetPoint([0, 0], [[0, 0]] * 3, zeros(3, 2))

    @given(seeds)
    def test_abelian_plain_sum(self, seed):
        j = sampling.jet(rng_from(seed), 1, 3)
        s = split_jet(j, abelian(1))
        # K = S - F/2 where F_{mu lam} = K_{lam mu} - K_{mu lam}
        for i, k in product(range(3), repeat=2):
            assert j.K[0][i][k] == s.S[0][i][k] - s.F[0][i][k] / 2

    def test_reconstruct_rejects_asymmetric(self):
        s = SplitJet([0, 0], [[0, 0]], [[[0, 1], [0, 0]]], zeros(1, 2))
        with pytest.raises(ShapeError):
            reconstruct(s, abelian(1))

    def test_algebra_mismatch(self):
        with pytest.raises(ShapeError):
            split_jet(so3_witness(), abelian(1))


class TestSardanashvily:
    def test_so3_counterexample(self):
        r = sardanashvily_check(so3(), so3_witness())
        assert r.refuted and not r.degenerate
        assert r.violations == [(2, 0, 1, Fraction(-1, 2), Fraction(1, 2))]

    def test_default_witness(self):
        r = sardanashvily_check(so3())
        assert r.refuted
        assert any("!=" in line for line in r.lines())

    def test_symbolic_asymmetry(self):
        r = sardanashvily_check(so3())
        polys = {a: p for a, _, _, p in r.asymmetry}
        # variable b*m + mu stands for A^b_mu (m = 2)
        assert str(polys[2]) == "-x0*x3 + x1*x2"

    def test_abelian(self):
        with pytest.raises(AlgebraError):
            sardanashvily_check(abelian(2))

    def test_degenerate(self):
        j = JetPoint([0, 0], [[0, 0]] * 3, [[[1, 2], [3, 4]]] * 3)
        r = sardanashvily_check(so3(), j)
        assert r.degenerate and not r.refuted


def field_jet(seed, m, n):
    rng = rng_from(seed)
    r = lambda: sampling.rational(rng)
    return FieldJet(
        [r() for _ in range(m)], [r() for _ in range(n)],
        [[r() for _ in range(m)] for _ in range(n)],
        [[r() for _ in range(m)] for _ in range(n)],
        [[[r() for _ in range(m)] for _ in range(m)] for _ in range(n)],
    )


class TestFieldMaps:
    def test_zero_momenta(self):
        j = FieldJet([1, 2], [3], [[0, 0]], [[5, 6]], zeros(1, 2))
        assert field_alpha(j).divergence == (0,)
        assert field_beta(j).divergence == (0,)

    def test_trace(self):
        j = FieldJet([0, 0], [0], [[0, 0]], [[0, 0]], [[[1, 0], [0, 1]]])
        assert field_alpha(j).divergence == (2,)
        assert field_beta(j).divergence == (2,)

    @given(seeds)
    def test_slots_copied(self, seed):
        j = field_jet(seed, 3, 2)
        a = field_alpha(j)
        assert (a.q, a.y, a.velocities, a.momenta) == (j.q, j.y, j.v, j.p)

    @given(seeds)
    def test_alpha_beta_swap(self, seed):
        j = field_jet(seed, 2, 2)
        assert swap_r(field_alpha(j)) == field_beta(j)

    def test_zero(self):
        j = FieldJet([0, 0], [0, 0], [[0, 0]] * 2, [[0, 0]] * 2, zeros(2, 2))
        b = field_beta(j)
        assert not any(b.divergence) and not any(v for r in b.momenta for v in r)


class TestLagrangeEquations:
    lay = FieldLayout(2, 1)

    def free_scalar(self):
        v0, v1 = Poly.var(5, self.lay.v(0, 0)), Poly.var(5, self.lay.v(0, 1))
        return (v0 * v0 + v1 * v1) * Fraction(1, 2)

    def test_harmonic_solves(self):
        res = lagrange_equations(self.free_scalar(), self.lay, [P("x0*x1")])
        assert res.is_zero()

    def test_non_harmonic(self):
        res = lagrange_equations(self.free_scalar(), self.lay, [P("x0^2")])
        assert res.divergence == [P("2")]

    def test_constant_field(self):
        res = lagrange_equations(Poly.var(5, self.lay.v(0, 0)) * 3, self.lay, [P("7")])
        assert res.is_zero()

    def test_explicit_wrong_momentum(self):
        res = lagrange_equations(self.free_scalar(), self.lay, [P("x0*x1")], [[P("0"), P("0")]])
        assert res.momentum == [[P("-x1"), P("-x0")]]

    def test_malformed(self):
        with pytest.raises(ShapeError):
            lagrange_equations(Poly.zero(4), self.lay, [P("x0")])

    @given(seeds)
    def test_euler_lagrange_oracle(self, seed):
        rng = rng_from(seed)
        lay = FieldLayout(2, 2)
        L = sampling.poly(rng, lay.nvars, 2, 6)
        ys = [sampling.poly(rng, 2, 3, 3) for _ in range(2)]
        res = lagrange_equations(L, lay, ys)
        assert not any(p for row in res.momentum for p in row)

        q = sympy.symbols("x0:2")
        f = [sympy.Function(f"y{a}")(*q) for a in range(2)]
        slots = list(q) + f + [sympy.diff(f[a], q[j]) for a in range(2) for j in range(2)]
        sym = sympy.symbols(f"x0:{lay.nvars}")
        lagr = to_sympy_n(L, sym).subs(dict(zip(sym, slots)), simultaneous=True)
        cand = {f[a]: to_sympy(ys[a]) for a in range(2)}
        for a in range(2):
            # textbook form: sum_j D_j(dL/dy_j) - dL/dy, with sympy's chain rule doing D_j
            el = sum(sympy.diff(sympy.diff(lagr, sympy.Derivative(f[a], q[j])), q[j]) for j in range(2))
            el -= sympy.diff(lagr, f[a])
            expected = sympy.expand(el.subs(cand).doit())
            assert to_sympy(res.divergence[a]) == expected


def to_sympy_n(p, syms):
    return sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([syms[i] ** e for i, e in enumerate(exps)])
                for exps, c in p.terms.items()), sympy.Integer(0))
