"""2-step nilpotent Lie algebras N_H = V + W built from directed colored graphs.

All scalars are :class:`fractions.Fraction`.  Basis vectors are named by
:class:`BasisIndex`; in flat (matrix) coordinates the V block comes first,
then W.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Sequence

from .automorphism import SignedColor, enumerate_gla, gla_witness
from .graph import DirectedEdgeColoredGraph
from .groups import Perm, compose

__all__ = [
    "LieError",
    "BasisIndex",
    "AlgebraVector",
    "LieAlgebra2Step",
    "LinearMap",
    "from_graph",
    "bracket",
    "check_two_step",
    "check_jacobi",
    "derived_subalgebra",
    "extend_gla",
    "is_lie_automorphism",
    "gla_image_group",
    "rank",
]

V, W = "V", "W"


class LieError(ValueError):
    pass


class BasisIndex(NamedTuple):
    part: str
    index: int

    def __repr__(self):
        return f"{self.part}{self.index}"


class AlgebraVector:
    """Immutable sparse vector; zero coefficients are never stored."""

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Mapping[BasisIndex, object] | None = None):
        clean = {}
        for key, val in (coefficients or {}).items():
            key = BasisIndex(*key)
            if key.part not in (V, W):
                raise LieError(f"unknown basis part {key.part!r}")
            q = _to_fraction(val)
            if q:
                clean[key] = q
        self._coeffs = MappingProxyType(dict(sorted(clean.items())))

    @classmethod
    def basis(cls, part: str, index: int) -> "AlgebraVector":
        return cls({BasisIndex(part, index): 1})

    @property
    def coefficients(self) -> Mapping[BasisIndex, Fraction]:
        return self._coeffs

    def __getitem__(self, key) -> Fraction:
        return self._coeffs.get(BasisIndex(*key), Fraction(0))

    def support(self) -> frozenset[BasisIndex]:
        return frozenset(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "AlgebraVector") -> "AlgebraVector":
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return AlgebraVector(out)

    def __neg__(self):
        return AlgebraVector({k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar) -> "AlgebraVector":
        s = _to_fraction(scalar)
        return AlgebraVector({k: s * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AlgebraVector):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __repr__(self):
        if not self._coeffs:
            return "0"
        return " + ".join(f"{v}*{k!r}" for k, v in self._coeffs.items())


def _to_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise LieError("floating point scalars are not allowed; use int or Fraction")
    return Fraction(x)


@dataclass(frozen=True, eq=False)
class LieAlgebra2Step:
    """Bracket table on V x V with values in W.

    Only pairs ``(i, j)`` with ``i < j`` are stored; ``[j, i]`` is the
    negation and every bracket involving W vanishes.  ``source`` is the
    graph the algebra was built from, if any.
    """

    dim_v: int
    dim_w: int
    brackets: Mapping[tuple[int, int], Mapping[int, Fraction]]
    source: DirectedEdgeColoredGraph | None = None

    def __post_init__(self):
        if self.dim_v < 0 or self.dim_w < 0:
            raise LieError("dimensions must be non-negative")
        table = {}
        for (i, j), value in self.brackets.items():
            if not (0 <= i < j < self.dim_v):
                raise LieError(f"bracket key ({i}, {j}) must satisfy 0 <= i < j < dim_v={self.dim_v}")
            row = {}
            for w, coeff in value.items():
                if not 0 <= w < self.dim_w:
                    raise LieError(f"bracket [{i}, {j}] has component outside W: {w}")
                q = _to_fraction(coeff)
                if q:
                    row[w] = q
            if row:
                table[(i, j)] = MappingProxyType(dict(sorted(row.items())))
        object.__setattr__(self, "brackets", MappingProxyType(dict(sorted(table.items()))))

    @property
    def dimension(self) -> int:
        return self.dim_v + self.dim_w

    def basis(self) -> list[BasisIndex]:
        return [BasisIndex(V, i) for i in range(self.dim_v)] + [BasisIndex(W, k) for k in range(self.dim_w)]

    def flat(self, b: BasisIndex) -> int:
        return b.index if b.part == V else self.dim_v + b.index

    def v(self, i: int) -> AlgebraVector:
        return AlgebraVector.basis(V, i)

    def w(self, k: int) -> AlgebraVector:
        return AlgebraVector.basis(W, k)

    def basis_bracket(self, i: int, j: int) -> AlgebraVector:
        """[v_i, v_j] read from the table."""
        if i == j:
            return AlgebraVector()
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        row = self.brackets.get((i, j), {})
        return AlgebraVector({BasisIndex(W, w): sign * c for w, c in row.items()})

    def check_vector(self, x: AlgebraVector):
        for b in x.support():
            bound = self.dim_v if b.part == V else self.dim_w
            if not 0 <= b.index < bound:
                raise LieError(f"basis element {b!r} outside algebra of shape ({self.dim_v}, {self.dim_w})")

    def to_dict(self) -> dict:
        return {
            "dim_v": self.dim_v,
            "dim_w": self.dim_w,
            "brackets": [
                {
                    "i": i,
                    "j": j,
                    "value": [{"w": w, "num": c.numerator, "den": c.denominator} for w, c in row.items()],
                }
                for (i, j), row in self.brackets.items()
            ],
        }

    @classmethod
    def from_dict(cls, data) -> "LieAlgebra2Step":
        table = {}
        for entry in data["brackets"]:
            i, j = entry["i"], entry["j"]
            if i >= j:
                raise LieError(f"bracket entry ({i}, {j}) must have i < j")
            if (i, j) in table:
                raise LieError(f"duplicate bracket entry ({i}, {j})")
            table[(i, j)] = {t["w"]: Fraction(t["num"], t["den"]) for t in entry["value"]}
        return cls(data["dim_v"], data["dim_w"], table)


def from_graph(H: DirectedEdgeColoredGraph) -> LieAlgebra2Step:
    table = {}
    for (a, b), c in H.coloring.items():
        if a < b:
            table[(a, b)] = {c: Fraction(1)}
        else:
            table[(b, a)] = {c: Fraction(-1)}
    return LieAlgebra2Step(H.n_vertices, H.n_colors, table, source=H)


def bracket(L: LieAlgebra2Step, x: AlgebraVector, y: AlgebraVector) -> AlgebraVector:
    L.check_vector(x)
    L.check_vector(y)
    out: dict[BasisIndex, Fraction] = {}
    xv = [(b.index, c) for b, c in x.coefficients.items() if b.part == V]
    yv = [(b.index, c) for b, c in y.coefficients.items() if b.part == V]
    for i, a in xv:
        for j, b in yv:
            for key, val in L.basis_bracket(i, j).coefficients.items():
                out[key] = out.get(key, 0) + a * b * val
    return AlgebraVector(out)


def _basis_vectors(L: LieAlgebra2Step) -> list[AlgebraVector]:
    return [AlgebraVector.basis(*b) for b in L.basis()]


def check_two_step(L: LieAlgebra2Step) -> bool:
    """Every triple bracket [b_i, [b_j, b_k]] of basis vectors vanishes."""
    basis = _basis_vectors(L)
    inner = [[bracket(L, y, z) for z in basis] for y in basis]
    return all(bracket(L, x, inner[j][k]).is_zero() for x in basis for j in range(len(basis)) for k in range(len(basis)))


def check_jacobi(L: LieAlgebra2Step) -> bool:
    basis = _basis_vectors(L)
    d = len(basis)
    inner = [[bracket(L, y, z) for z in basis] for y in basis]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                total = (
                    bracket(L, basis[i], inner[j][k])
                    + bracket(L, basis[j], inner[k][i])
                    + bracket(L, basis[k], inner[i][j])
                )
                if not total.is_zero():
                    return False
    return True


def derived_subalgebra(L: LieAlgebra2Step) -> frozenset[BasisIndex]:
    """W basis vectors lying in the span of all brackets [b_i, b_j]."""
    rows = [[row.get(k, Fraction(0)) for k in range(L.dim_w)] for row in L.brackets.values()]
    base = rank(rows)
    inside = set()
    for k in range(L.dim_w):
        unit = [Fraction(int(t == k)) for t in range(L.dim_w)]
        if rank(rows + [unit]) == base:
            inside.add(BasisIndex(W, k))
    return frozenset(inside)


# -- exact linear algebra ----------------------------------------------------

def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    mat = []
    for row in rows:
        qs = [Fraction(x) for x in row]
        den = 1
        for q in qs:
            den = den * q.denominator // _gcd(den, q.denominator)
        mat.append([int(q * den) for q in qs])
    if not mat:
        return 0
    n_rows, n_cols = len(mat), len(mat[0])
    r = 0
    prev = 1
    for col in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        for i in range(r + 1, n_rows):
            for j in range(col + 1, n_cols):
                mat[i][j] = (mat[i][j] * mat[r][col] - mat[i][col] * mat[r][j]) // prev
            mat[i][col] = 0
        prev = mat[r][col]
        r += 1
        if r == n_rows:
            break
    return r


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class LinearMap:
    """Square matrix over Q; column j is the image of flat basis vector j."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: Iterable[Iterable]):
        rows = tuple(tuple(_to_fraction(x) for x in row) for row in matrix)
        if any(len(r) != len(rows) for r in rows):
            raise LieError("linear map must be a square matrix")
        self.matrix = rows

    @classmethod
    def identity(cls, dim: int) -> "LinearMap":
        return cls([[int(i == j) for j in range(dim)] for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.dim != other.dim:
            raise LieError("dimension mismatch")
        d = self.dim
        cols = list(zip(*other.matrix))
        out = []
        for row in self.matrix:
            nz = [(k, a) for k, a in enumerate(row) if a]
            out.append([sum((a * cols[j][k] for k, a in nz), Fraction(0)) for j in range(d)])
        return LinearMap(out)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinearMap(dim={self.dim})"

    def rank(self) -> int:
        return rank(self.matrix)

    def is_invertible(self) -> bool:
        return self.rank() == self.dim

    def apply(self, L: LieAlgebra2Step, x: AlgebraVector) -> AlgebraVector:
        if self.dim != L.dimension:
            raise LieError(f"map of dimension {self.dim} on algebra of dimension {L.dimension}")
        L.check_vector(x)
        basis = L.basis()
        out: dict[BasisIndex, Fraction] = {}
        for b, c in x.coefficients.items():
            j = L.flat(b)
            for i in range(self.dim):
                m = self.matrix[i][j]
                if m:
                    out[basis[i]] = out.get(basis[i], 0) + m * c
        return AlgebraVector(out)

    def to_list(self) -> list[list[dict]]:
        return [[{"num": q.numerator, "den": q.denominator} for q in row] for row in self.matrix]

    @classmethod
    def from_list(cls, rows) -> "LinearMap":
        return cls([[Fraction(e["num"], e["den"]) for e in row] for row in rows])


def _signed_perm_matrix(L: LieAlgebra2Step, chi: Sequence[int], phi: Sequence[SignedColor]) -> LinearMap:
    d = L.dimension
    m = [[0] * d for _ in range(d)]
    for i, image in enumerate(chi):
        m[image][i] = 1
    for k, (color, sign) in enumerate(phi):
        m[L.dim_v + color][L.dim_v + k] = sign
    return LinearMap(m)


def extend_gla(chi: Sequence[int], phi: Sequence[SignedColor], L: LieAlgebra2Step) -> LinearMap:
    """Extend a graph Lie automorphism to N_H: chi on V, signed phi on W.

    The pair is verified first: against the source graph when L has one,
    otherwise by checking the resulting map is a Lie automorphism.
    """
    chi = tuple(chi)
    phi = tuple(SignedColor(*p) for p in phi)
    if len(chi) != L.dim_v or len(phi) != L.dim_w:
        raise LieError("chi/phi sizes do not match the algebra")
    if L.source is not None:
        if gla_witness(chi, L.source) != phi:
            raise LieError(f"({list(chi)}, phi) is not a graph Lie automorphism pair of the source graph")
        return _signed_perm_matrix(L, chi, phi)
    M = _signed_perm_matrix(L, chi, phi)
    if not is_lie_automorphism(M, L):
        raise LieError(f"({list(chi)}, phi) does not extend to a Lie automorphism")
    return M


def is_lie_automorphism(M: LinearMap, L: LieAlgebra2Step) -> bool:
    """Invertible and M[b_i, b_j] = [M b_i, M b_j] on every basis pair."""
    if M.dim != L.dimension:
        raise LieError(f"map of dimension {M.dim} on algebra of dimension {L.dimension}")
    if not M.is_invertible():
        return False
    basis = _basis_vectors(L)
    images = [M.apply(L, b) for b in basis]
    for i, x in enumerate(basis):
        for j in range(i + 1, len(basis)):
            if M.apply(L, bracket(L, x, basis[j])) != bracket(L, images[i], images[j]):
                return False
    return True


def gla_image_group(H: DirectedEdgeColoredGraph, method: str = "brute", cap: int | None = None) -> dict[Perm, LinearMap]:
    """Extend every element of GLA(H) to a Lie automorphism of N_H.

    Returns the extensions keyed by vertex permutation, in canonical
    order.  Raises LieError unless the matrices are distinct, closed
    under product and inverse, and the extension is a homomorphism.
    """
    L = from_graph(H)
    gla = enumerate_gla(H, method, cap=cap)
    image = {chi: extend_gla(chi, gla_witness(chi, H), L) for chi in gla.elements}
    mats = set(image.values())
    if len(mats) != len(image):
        raise LieError("extension is not injective")
    ident = LinearMap.identity(L.dimension)
    for a, Ma in image.items():
        has_inverse = False
        for b, Mb in image.items():
            prod = Ma @ Mb
            if prod != image[compose(a, b)]:
                raise LieError(f"extension is not a homomorphism at {list(a)}, {list(b)}")
            has_inverse = has_inverse or prod == ident
        if not has_inverse:
            raise LieError(f"no inverse for the extension of {list(a)}")
    return image
