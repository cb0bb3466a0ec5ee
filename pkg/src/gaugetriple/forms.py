"""
Exterior calculus on the chart R^m with polynomial coefficients.

A :class:`ScalarForm` of degree k stores one :class:`Poly` per strictly
increasing index tuple I, meaning sum_I f_I dq^I.  A :class:`GForm` carries
one scalar form per generator of a Lie algebra, either as an algebra-valued
form zeta^a (x) e_a or a dual-valued form xi_a (x) e*^a.

Evaluation of dq^0 ^ dq^1 on (d_0, d_1) is +1 (determinant convention), so
a 2-form with coefficient F_{01} on dq^0 ^ dq^1 satisfies F(d_0, d_1) = F_{01}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Sequence, Tuple

from .algebra import LieAlgebra
from .errors import ShapeError
from .poly import Poly, Scalar

Index = Tuple[int, ...]

ALGEBRA = "algebra"
DUAL = "dual"


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def complement(idx: Index, m: int) -> Index:
    s = set(idx)
    return tuple(i for i in range(m) if i not in s)


@dataclass(frozen=True)
class Metric:
    """Constant diagonal metric; ``signs[i]`` is g_ii = +-1."""

    signs: Tuple[int, ...]

    def __post_init__(self):
        if not self.signs:
            raise ShapeError("metric needs at least one dimension")
        if any(s not in (1, -1) for s in self.signs):
            raise ShapeError(f"metric signs must be +-1, got {self.signs}")

    @property
    def dim(self) -> int:
        return len(self.signs)

    @classmethod
    def euclidean(cls, m: int) -> "Metric":
        return cls((1,) * m)

    @classmethod
    def minkowski(cls, m: int = 4) -> "Metric":
        return cls((-1,) + (1,) * (m - 1))

    @classmethod
    def parse(cls, text: str) -> "Metric":
        signs = []
        for ch in text.replace(",", " ").split():
            if ch in ("+", "+1", "1"):
                signs.append(1)
            elif ch in ("-", "-1"):
                signs.append(-1)
            else:
                raise ShapeError(f"bad metric sign {ch!r}")
        return cls(tuple(signs))

    def det_sign(self) -> int:
        out = 1
        for s in self.signs:
            out *= s
        return out

    def __str__(self):
        return " ".join("+" if s > 0 else "-" for s in self.signs)


class ScalarForm:
    __slots__ = ("dim", "degree", "coeffs")

    def __init__(self, dim: int, degree: int, coeffs: Dict[Index, Poly] | None = None):
        # degree > dim is allowed only as the canonical zero form (no index tuple fits)
        if degree < 0 or dim < 0:
            raise ShapeError(f"negative degree {degree} or dim {dim}")
        clean = {}
        for idx, p in (coeffs or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(b <= a for a, b in zip(idx, idx[1:])):
                raise ShapeError(f"index tuple {idx} is not strictly increasing of length {degree}")
            if idx and not (0 <= idx[0] and idx[-1] < dim):
                raise ShapeError(f"index tuple {idx} out of range for dim {dim}")
            if p.nvars != dim:
                raise ShapeError(f"coefficient lives in {p.nvars} variables, chart has {dim}")
            if p:
                clean[idx] = p
        self.dim = dim
        self.degree = degree
        self.coeffs = clean

    @classmethod
    def zero(cls, dim: int, degree: int) -> "ScalarForm":
        return cls(dim, degree)

    @classmethod
    def function(cls, f: Poly) -> "ScalarForm":
        return cls(f.nvars, 0, {(): f})

    @classmethod
    def basis(cls, dim: int, idx: Index, coeff: Poly | Scalar = 1) -> "ScalarForm":
        """coeff * dq^{idx}, with idx in any order (sign absorbed)."""
        sign = permutation_sign(idx)
        if not isinstance(coeff, Poly):
            coeff = Poly.const(dim, coeff)
        if sign == 0:
            return cls(dim, len(idx))
        return cls(dim, len(idx), {tuple(sorted(idx)): coeff * sign})

    @classmethod
    def volume(cls, dim: int) -> "ScalarForm":
        return cls.basis(dim, tuple(range(dim)))

    def coeff(self, idx: Index) -> Poly:
        return self.coeffs.get(tuple(idx), Poly.zero(self.dim))

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self):
        return sorted(self.coeffs.items())

    def _same(self, other: "ScalarForm"):
        if not isinstance(other, ScalarForm):
            raise TypeError(f"expected ScalarForm, got {type(other).__name__}")
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise ShapeError(
                f"form mismatch: dim {self.dim} degree {self.degree} vs dim {other.dim} degree {other.degree}"
            )

    def __add__(self, other: "ScalarForm") -> "ScalarForm":
        self._same(other)
        out = dict(self.coeffs)
        for idx, p in other.coeffs.items():
            out[idx] = out[idx] + p if idx in out else p
        return ScalarForm(self.dim, self.degree, out)

    def __neg__(self) -> "ScalarForm":
        return ScalarForm(self.dim, self.degree, {i: -p for i, p in self.coeffs.items()})

    def __sub__(self, other: "ScalarForm") -> "ScalarForm":
        return self + (-other)

    def scale(self, c: Poly | Scalar) -> "ScalarForm":
        """Multiply by a function (Poly) or a rational constant."""
        if isinstance(c, Poly) and c.nvars != self.dim:
            raise ShapeError("scaling function lives in the wrong chart")
        return ScalarForm(self.dim, self.degree, {i: p * c for i, p in self.coeffs.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ScalarForm):
            return NotImplemented
        return (self.dim, self.degree, self.coeffs) == (other.dim, other.degree, other.coeffs)

    def __hash__(self):
        return hash((self.dim, self.degree, frozenset(self.coeffs.items())))

    def at(self, point: Sequence[Scalar]) -> Dict[Index, Fraction]:
        """Coefficient values at a point of the chart."""
        return {i: p.evaluate(point) for i, p in self.coeffs.items()}

    def on_vectors(self, dirs: Sequence[int]) -> Poly:
        """Evaluate on coordinate vectors d_{dirs[0]}, ..., as a function."""
        if len(dirs) != self.degree:
            raise ShapeError(f"{self.degree}-form evaluated on {len(dirs)} vectors")
        sign = permutation_sign(dirs)
        if not sign:
            return Poly.zero(self.dim)
        return self.coeff(tuple(sorted(dirs))) * sign

    def serialize(self) -> List[Tuple[Index, str]]:
        return [(i, str(p)) for i, p in self.items()]

    def __repr__(self):
        if not self.coeffs:
            return f"ScalarForm(dim={self.dim}, degree={self.degree}, 0)"
        body = " + ".join(f"({p}) dq{list(i)}" for i, p in self.items())
        return f"ScalarForm(dim={self.dim}, degree={self.degree}, {body})"


def wedge(a: ScalarForm, b: ScalarForm) -> ScalarForm:
    if a.dim != b.dim:
        raise ShapeError(f"wedge of forms on R^{a.dim} and R^{b.dim}")
    deg = a.degree + b.degree
    if deg > a.dim:
        return ScalarForm.zero(a.dim, deg)
    out: Dict[Index, Poly] = {}
    for i, f in a.coeffs.items():
        for j, g in b.coeffs.items():
            joined = i + j
            sign = permutation_sign(joined)
            if not sign:
                continue
            key = tuple(sorted(joined))
            term = f * g if sign > 0 else -(f * g)
            out[key] = out[key] + term if key in out else term
    return ScalarForm(a.dim, deg, out)


def ext_d(a: ScalarForm) -> ScalarForm:
    """Exterior derivative: d(f dq^I) = sum_i d_i f dq^i ^ dq^I."""
    if a.degree >= a.dim:
        return ScalarForm.zero(a.dim, a.degree + 1)
    out: Dict[Index, Poly] = {}
    for idx, f in a.coeffs.items():
        for i in range(a.dim):
            if i in idx:
                continue
            df = f.partial(i)
            if not df:
                continue
            joined = (i,) + idx
            sign = permutation_sign(joined)
            key = tuple(sorted(joined))
            term = df if sign > 0 else -df
            out[key] = out[key] + term if key in out else term
    return ScalarForm(a.dim, a.degree + 1, out)


def hodge_sign(idx: Index, metric: Metric) -> int:
    """s(I) with *dq^I = s(I) dq^{I^c}."""
    s = permutation_sign(tuple(idx) + complement(idx, metric.dim))
    for i in idx:
        s *= metric.signs[i]
    return s


def hodge(a: ScalarForm, metric: Metric) -> ScalarForm:
    if a.dim != metric.dim:
        raise ShapeError(f"form on R^{a.dim} with a metric on R^{metric.dim}")
    out = {}
    for idx, f in a.coeffs.items():
        s = hodge_sign(idx, metric)
        out[complement(idx, a.dim)] = f if s > 0 else -f
    return ScalarForm(a.dim, a.dim - a.degree, out)


class GForm:
    """Lie-algebra-valued (valence ``algebra``) or dual-valued (``dual``) form."""

    __slots__ = ("algebra", "valence", "components")

    def __init__(self, algebra: LieAlgebra, valence: str, components: Sequence[ScalarForm]):
        if valence not in (ALGEBRA, DUAL):
            raise ValueError(f"valence must be {ALGEBRA!r} or {DUAL!r}")
        components = tuple(components)
        if len(components) != algebra.dim:
            raise ShapeError(f"{len(components)} components for an algebra of dim {algebra.dim}")
        if len({(c.dim, c.degree) for c in components}) > 1:
            raise ShapeError("components disagree in dim or degree")
        self.algebra = algebra
        self.valence = valence
        self.components = components

    @classmethod
    def zero(cls, algebra: LieAlgebra, valence: str, dim: int, degree: int) -> "GForm":
        return cls(algebra, valence, [ScalarForm.zero(dim, degree)] * algebra.dim)

    @classmethod
    def single(cls, algebra: LieAlgebra, valence: str, generator: int, form: ScalarForm) -> "GForm":
        comps = [ScalarForm.zero(form.dim, form.degree)] * algebra.dim
        comps[generator] = form
        return cls(algebra, valence, comps)

    @property
    def dim(self) -> int:
        return self.components[0].dim

    @property
    def degree(self) -> int:
        return self.components[0].degree

    def __getitem__(self, a: int) -> ScalarForm:
        return self.components[a]

    def __iter__(self) -> Iterator[ScalarForm]:
        return iter(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _same(self, other: "GForm"):
        if self.algebra != other.algebra or self.valence != other.valence:
            raise ShapeError("forms take values in different spaces")
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise ShapeError("forms differ in dim or degree")

    def map(self, fn) -> "GForm":
        return GForm(self.algebra, self.valence, [fn(c) for c in self.components])

    def __add__(self, other: "GForm") -> "GForm":
        self._same(other)
        return GForm(self.algebra, self.valence, [a + b for a, b in zip(self, other)])

    def __sub__(self, other: "GForm") -> "GForm":
        self._same(other)
        return GForm(self.algebra, self.valence, [a - b for a, b in zip(self, other)])

    def __neg__(self) -> "GForm":
        return self.map(lambda c: -c)

    def scale(self, c) -> "GForm":
        return self.map(lambda f: f.scale(c))

    __mul__ = scale
    __rmul__ = scale

    def transform(self, r) -> "GForm":
        """Apply a constant matrix to the generator index: comp'^a = r[a][b] comp^b."""
        n = self.algebra.dim
        out = []
        for a in range(n):
            acc = ScalarForm.zero(self.dim, self.degree)
            for b in range(n):
                if r[a][b]:
                    acc = acc + self.components[b].scale(Fraction(r[a][b]))
            out.append(acc)
        return GForm(self.algebra, self.valence, out)

    def ext_d(self) -> "GForm":
        return self.map(ext_d)

    def at(self, point) -> List[Dict[Index, Fraction]]:
        return [c.at(point) for c in self.components]

    def __eq__(self, other):
        if not isinstance(other, GForm):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.valence == other.valence
            and (self.dim, self.degree) == (other.dim, other.degree)
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.valence, self.components))

    def serialize(self) -> List[Tuple[int, Index, str]]:
        """(generator, index tuple, polynomial string) triples in canonical order."""
        return [(a, i, s) for a, comp in enumerate(self.components) for i, s in comp.serialize()]

    def __repr__(self):
        tag = "e" if self.valence == ALGEBRA else "e*"
        body = ", ".join(f"{tag}{a}{list(i)}: {s}" for a, i, s in self.serialize()) or "0"
        return f"GForm({self.valence}, dim={self.dim}, degree={self.degree}, {{{body}}})"


def graded_bracket(a: GForm, b: GForm) -> GForm:
    """[a ^ b]^e = c^e_{fg} a^f ^ b^g."""
    if a.valence != ALGEBRA or b.valence != ALGEBRA:
        raise ShapeError("graded bracket needs algebra-valued forms")
    if a.algebra != b.algebra or a.dim != b.dim:
        raise ShapeError("graded bracket of forms over different algebras or charts")
    alg = a.algebra
    n = alg.dim
    deg = a.degree + b.degree
    products = {}
    for f in range(n):
        if a[f].is_zero():
            continue
        for g in range(n):
            if b[g].is_zero():
                continue
            if any(alg.structure[e][f][g] for e in range(n)):
                products[f, g] = wedge(a[f], b[g])
    out = []
    for e in range(n):
        acc = ScalarForm.zero(a.dim, deg)
        for (f, g), w in products.items():
            c = alg.structure[e][f][g]
            if c:
                acc = acc + w.scale(c)
        out.append(acc)
    return GForm(alg, ALGEBRA, out)


def pair(p: GForm, t: GForm) -> ScalarForm:
    """<p, t> = p_a ^ t^a."""
    if p.valence != DUAL or t.valence != ALGEBRA:
        raise ShapeError("pair needs (dual-valued, algebra-valued) forms")
    if p.algebra != t.algebra or p.dim != t.dim:
        raise ShapeError("pairing forms over different algebras or charts")
    acc = ScalarForm.zero(p.dim, p.degree + t.degree)
    for pa, ta in zip(p, t):
        if not pa.is_zero() and not ta.is_zero():
            acc = acc + wedge(pa, ta)
    return acc


def k_sharp(f: GForm) -> GForm:
    """Lower the algebra index with the pairing K: (K~F)_a = K_ab F^b."""
    if f.valence != ALGEBRA:
        raise ShapeError("index lowering needs an algebra-valued form")
    lowered = f.transform(f.algebra.pairing)
    return GForm(f.algebra, DUAL, lowered.components)


def hodge_g(f: GForm, metric: Metric) -> GForm:
    return f.map(lambda c: hodge(c, metric))


def all_indices(m: int, k: int) -> List[Index]:
    return list(combinations(range(m), k))
