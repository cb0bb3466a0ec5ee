"""
Finite-dimensional real Lie algebras given by structure constants.

``structure[a][b][c]`` is c^a_{bc}, i.e. ``[e_b, e_c] = c^a_{bc} e_a``, and
``pairing[a][b]`` is the invariant scalar product K_ab.  Vectors over the
algebra (and its dual) are plain tuples of Fractions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Sequence, Tuple

from .errors import AlgebraError, ShapeError

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]


def _frac_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(v) for v in row) for row in rows)


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def mat_vec(m: Matrix, v: Sequence) -> Vector:
    return tuple(sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in m)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k = len(a), len(b[0])
    return tuple(
        tuple(sum((a[i][j] * b[j][l] for j in range(len(b))), Fraction(0)) for l in range(k))
        for i in range(n)
    )


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m)) if m else ()


def _eliminate(m: Matrix):
    """Gauss-Jordan on [m | I]; returns (det, inverse or None)."""
    n = len(m)
    rows = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0), None
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        p = rows[col][col]
        det *= p
        rows[col] = [v / p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return det, tuple(tuple(row[n:]) for row in rows)


def determinant(m: Matrix) -> Fraction:
    return _eliminate(m)[0]


def inverse(m: Matrix) -> Matrix:
    det, inv = _eliminate(m)
    if inv is None:
        raise AlgebraError("matrix is singular")
    return inv


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" | "jacobi" | "pairing-symmetry" | "pairing-degenerate" | "pairing-invariance"
    indices: Tuple[int, ...]
    value: Fraction

    def __str__(self):
        idx = ",".join(str(i) for i in self.indices)
        return f"{self.kind} violated at ({idx}): residual {self.value}"


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    structure: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    pairing: Matrix
    name: str = "custom"

    def __post_init__(self):
        n = self.dim
        c = tuple(tuple(tuple(Fraction(v) for v in row) for row in plane) for plane in self.structure)
        if len(c) != n or any(len(pl) != n or any(len(r) != n for r in pl) for pl in c):
            raise ShapeError(f"structure constants must be {n}x{n}x{n}")
        k = _frac_matrix(self.pairing)
        if len(k) != n or any(len(r) != n for r in k):
            raise ShapeError(f"pairing must be {n}x{n}")
        object.__setattr__(self, "structure", c)
        object.__setattr__(self, "pairing", k)

    @classmethod
    def from_quadruples(cls, dim: int, quads, pairing=None, name="custom") -> "LieAlgebra":
        """Build from (a, b, c, value) entries meaning c^a_{bc} = value; others zero."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for a, b, cc, value in quads:
            if not all(0 <= i < dim for i in (a, b, cc)):
                raise ShapeError(f"structure index ({a},{b},{cc}) out of range for dim {dim}")
            c[a][b][cc] = Fraction(value)
        return cls(dim, c, pairing if pairing is not None else identity_matrix(dim), name)

    def is_abelian(self) -> bool:
        return not any(v for plane in self.structure for row in plane for v in row)

    def _check(self, *vecs):
        for v in vecs:
            if len(v) != self.dim:
                raise ShapeError(f"vector of length {len(v)} for algebra of dim {self.dim}")

    def bracket(self, x: Sequence, y: Sequence) -> Vector:
        self._check(x, y)
        n = self.dim
        return tuple(
            sum((self.structure[a][b][c] * x[b] * y[c] for b in range(n) for c in range(n)), Fraction(0))
            for a in range(n)
        )

    def coad(self, x: Sequence, xi: Sequence) -> Vector:
        """Coadjoint action: (coad(X) xi)_a = -c^c_{ba} X^b xi_c."""
        self._check(x, xi)
        n = self.dim
        return tuple(
            -sum((self.structure[c][b][a] * x[b] * xi[c] for b in range(n) for c in range(n)), Fraction(0))
            for a in range(n)
        )

    def lower(self, x: Sequence) -> Vector:
        """Index lowering with the pairing, (K x)_a = K_ab x^b."""
        self._check(x)
        return mat_vec(self.pairing, x)

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return sum((a * b for a, b in zip(self.lower(x), y)), Fraction(0))

    def basis(self, i: int) -> Vector:
        return tuple(Fraction(int(i == j)) for j in range(self.dim))

    def validate(self) -> List[Violation]:
        n = self.dim
        c = self.structure
        k = self.pairing
        out: List[Violation] = []
        for a, b, cc in product(range(n), repeat=3):
            if b < cc and c[a][b][cc] + c[a][cc][b] != 0:
                out.append(Violation("antisymmetry", (a, b, cc), c[a][b][cc] + c[a][cc][b]))
            if b == cc and c[a][b][b] != 0:
                out.append(Violation("antisymmetry", (a, b, b), 2 * c[a][b][b]))
        for e, a, b, cc in product(range(n), repeat=4):
            if not a < b < cc:
                continue
            s = sum(
                (c[e][a][d] * c[d][b][cc] + c[e][b][d] * c[d][cc][a] + c[e][cc][d] * c[d][a][b] for d in range(n)),
                Fraction(0),
            )
            if s:
                out.append(Violation("jacobi", (e, a, b, cc), s))
        for a, b in product(range(n), repeat=2):
            if a < b and k[a][b] != k[b][a]:
                out.append(Violation("pairing-symmetry", (a, b), k[a][b] - k[b][a]))
        if n and determinant(k) == 0:
            out.append(Violation("pairing-degenerate", (), Fraction(0)))
        # K([e_x, e_y], e_z) + K(e_y, [e_x, e_z]) = 0
        for x, y, z in product(range(n), repeat=3):
            s = sum((c[a][x][y] * k[a][z] + k[y][a] * c[a][x][z] for a in range(n)), Fraction(0))
            if s:
                out.append(Violation("pairing-invariance", (x, y, z), s))
        return out

    def require_valid(self) -> "LieAlgebra":
        bad = self.validate()
        if bad:
            raise AlgebraError("invalid Lie algebra: " + "; ".join(str(v) for v in bad[:5]))
        return self

    def automorphism_defect(self, r: Matrix) -> List[Tuple[int, int, int]]:
        """Index triples (d, b, c) where R[e_b, e_c] != [R e_b, R e_c]."""
        r = _frac_matrix(r)
        n = self.dim
        if len(r) != n or any(len(row) != n for row in r):
            raise ShapeError(f"automorphism must be {n}x{n}")
        cols = [tuple(r[i][j] for i in range(n)) for j in range(n)]
        bad = []
        for b, cc in product(range(n), repeat=2):
            lhs = mat_vec(r, self.bracket(self.basis(b), self.basis(cc)))
            rhs = self.bracket(cols[b], cols[cc])
            for d in range(n):
                if lhs[d] != rhs[d]:
                    bad.append((d, b, cc))
        return bad

    def is_automorphism(self, r: Matrix) -> bool:
        r = _frac_matrix(r)
        return determinant(r) != 0 and not self.automorphism_defect(r)


def abelian(k: int) -> LieAlgebra:
    if k < 1:
        raise AlgebraError("abelian algebra needs dimension >= 1")
    zero = [[[0] * k for _ in range(k)] for _ in range(k)]
    return LieAlgebra(k, zero, identity_matrix(k), f"abelian({k})")


def levi_civita(a: int, b: int, c: int) -> int:
    if len({a, b, c}) < 3:
        return 0
    return 1 if (a, b, c) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


def so3() -> LieAlgebra:
    c = [[[levi_civita(a, b, cc) for cc in range(3)] for b in range(3)] for a in range(3)]
    return LieAlgebra(3, c, identity_matrix(3), "so3")


_ABELIAN = re.compile(r"^abelian\((\d+)\)$")


def builtin(name: str) -> LieAlgebra:
    name = name.strip().replace(" ", "").lower()
    if name in ("so3", "so(3)"):
        return so3()
    m = _ABELIAN.match(name)
    if m:
        return abelian(int(m.group(1)))
    raise AlgebraError(f"unknown builtin algebra {name!r}; expected 'so3' or 'abelian(k)'")


def plane_rotation(n: int, i: int, j: int, cos: Fraction, sin: Fraction) -> Matrix:
    """Rational rotation in the (e_i, e_j) plane; cos^2 + sin^2 must equal 1."""
    cos, sin = Fraction(cos), Fraction(sin)
    if cos * cos + sin * sin != 1:
        raise AlgebraError("rotation needs cos^2 + sin^2 = 1")
    m = [list(row) for row in identity_matrix(n)]
    m[i][i], m[i][j] = cos, -sin
    m[j][i], m[j][j] = sin, cos
    return _frac_matrix(m)


def contragredient(r: Matrix) -> Matrix:
    """Matrix acting on dual coefficient vectors: (R^-1)^T."""
    return transpose(inverse(_frac_matrix(r)))
