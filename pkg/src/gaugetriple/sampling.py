"""Seeded random generators for polynomials, forms, connections and jets."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .algebra import LieAlgebra
from .forms import ALGEBRA, GForm, ScalarForm
from .gauge import connection
from .jets import JetPoint
from .poly import Poly


def rational(rng: random.Random, bound: int = 5, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def poly(rng: random.Random, nvars: int, degree: int = 2, nterms: int = 3, bound: int = 5) -> Poly:
    terms = {}
    for _ in range(nterms):
        total = rng.randint(0, degree)
        exps = [0] * nvars
        for _ in range(total):
            exps[rng.randrange(nvars)] += 1
        terms[tuple(exps)] = rational(rng, bound)
    return Poly(nvars, terms)


def scalar_form(rng: random.Random, dim: int, degree: int, pdeg: int = 2, density: float = 0.6) -> ScalarForm:
    coeffs = {}
    for idx in combinations(range(dim), degree):
        if rng.random() < density:
            coeffs[idx] = poly(rng, dim, pdeg)
    return ScalarForm(dim, degree, coeffs)


def gform(rng: random.Random, algebra: LieAlgebra, valence: str, dim: int, degree: int, pdeg: int = 2) -> GForm:
    return GForm(algebra, valence, [scalar_form(rng, dim, degree, pdeg) for _ in range(algebra.dim)])


def random_connection(rng: random.Random, algebra: LieAlgebra, dim: int, pdeg: int = 2, density: float = 0.7) -> GForm:
    comps = [[poly(rng, dim, pdeg) if rng.random() < density else Poly.zero(dim) for _ in range(dim)]
             for _ in range(algebra.dim)]
    return connection(algebra, comps)


def point(rng: random.Random, dim: int) -> tuple:
    return tuple(rational(rng) for _ in range(dim))


def jet(rng: random.Random, n: int, m: int) -> JetPoint:
    return JetPoint(
        point(rng, m),
        [[rational(rng) for _ in range(m)] for _ in range(n)],
        [[[rational(rng) for _ in range(m)] for _ in range(m)] for _ in range(n)],
    )


__all__ = ["rational", "poly", "scalar_form", "gform", "random_connection", "point", "jet", "ALGEBRA"]
