"""Exact rational affine geometry for flat pairs.

The model submanifold is the coordinate flat Z^(n-q) x {0}^q inside Z^n
with an orientation sign attached to the trailing normal frame.  A chain
tuple is filled to the affine simplex on its vertices, and the Thom class
of the flat evaluates on a q-simplex as the signed crossing number of the
normal projection at the origin: +-1 when the origin is interior to the
projected simplex, 0 when it is outside, and DegeneratePosition when it
sits on the boundary (no silent tie-breaking; a symbolic lexicographic
perturbation of the flat is available as an explicit opt-in).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .coeffs import CoefficientGroup, Element, INTEGERS

Coord = int | Fraction
Vertex = tuple[Coord, ...]


class DegeneratePosition(ValueError):
    """The configuration meets the flat's affine hull non-transversally.

    Raised instead of guessing a sign: the offending simplex (and, when
    known, the chain tuple it was filled from) is attached for reporting.
    """

    def __init__(self, message: str, simplex: "AffineSimplex | None" = None,
                 chain_tuple: tuple | None = None) -> None:
        super().__init__(message)
        self.simplex = simplex
        self.chain_tuple = chain_tuple


def _coord_to_json(c: Coord) -> str:
    f = Fraction(c)
    return f"{f.numerator}/{f.denominator}"


def _coord_from_json(v) -> Coord:
    if isinstance(v, str):
        num, _, den = v.partition("/")
        f = Fraction(int(num), int(den) if den else 1)
    else:
        f = Fraction(int(v))
    return int(f) if f.denominator == 1 else f


@dataclass(frozen=True)
class AffineSimplex:
    """Ordered affine simplex with exact rational vertices."""

    ambient_dim: int
    vertices: tuple[Vertex, ...]

    def __post_init__(self) -> None:
        for v in self.vertices:
            if len(v) != self.ambient_dim:
                raise ValueError(f"vertex {v!r} not in dimension {self.ambient_dim}")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def face(self, j: int) -> "AffineSimplex":
        if not 0 <= j <= self.dim:
            raise IndexError(f"face index {j} out of range")
        return AffineSimplex(self.ambient_dim, self.vertices[:j] + self.vertices[j + 1:])

    def faces(self) -> list[tuple[int, "AffineSimplex"]]:
        """Signed face list [(+1, face_0), (-1, face_1), ...]."""
        return [((-1) ** j, self.face(j)) for j in range(self.dim + 1)]

    def diameter(self) -> Fraction:
        best = Fraction(0)
        vs = self.vertices
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                d = max(abs(Fraction(a) - Fraction(b)) for a, b in zip(vs[i], vs[j]))
                if d > best:
                    best = d
        return best

    def barycentric_point(self, weights: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(weights) != len(self.vertices) or sum(weights) != 1:
            raise ValueError("weights must match the vertex count and sum to 1")
        return tuple(
            sum(w * Fraction(v[i]) for w, v in zip(weights, self.vertices))
            for i in range(self.ambient_dim)
        )

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "vertices": [[_coord_to_json(c) for c in v] for v in self.vertices],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AffineSimplex":
        return cls(
            int(data["ambient_dim"]),
            tuple(tuple(_coord_from_json(c) for c in v) for v in data["vertices"]),
        )


def fill(points: Sequence[Sequence[Coord]]) -> AffineSimplex:
    """Affine simplex with the given ordered vertices.

    In a convex ambient space the inductive filling of a tuple by geodesics
    is exactly the affine simplex, so faces of the filled simplex are the
    fillings of the vertex-dropped tuples and the diameter equals the
    tuple's spread.
    """
    if not points:
        raise ValueError("cannot fill an empty tuple")
    dim = len(points[0])
    return AffineSimplex(dim, tuple(tuple(p) for p in points))


@dataclass(frozen=True)
class FlatPair:
    """Ambient lattice Z^n with the oriented coordinate flat Z^(n-q) x {0}^q."""

    ambient_dim: int
    codim: int
    normal_orientation: int = 1

    def __post_init__(self) -> None:
        if not 1 <= self.codim <= self.ambient_dim:
            raise ValueError(f"codimension must satisfy 1 <= q <= n, got {self.codim}")
        if self.normal_orientation not in (-1, 1):
            raise ValueError("normal_orientation must be +1 or -1")

    @property
    def flat_dim(self) -> int:
        return self.ambient_dim - self.codim

    def normal_part(self, p: Sequence[Coord]) -> tuple[Coord, ...]:
        return tuple(p[self.flat_dim:])

    def tangential_part(self, p: Sequence[Coord]) -> tuple[Coord, ...]:
        return tuple(p[: self.flat_dim])

    def flat_distance(self, p: Sequence[Coord]):
        """Sup-distance from a point to the flat (= sup-norm of the normal part)."""
        return max((abs(c) for c in self.normal_part(p)), default=0)

    def to_json(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "codim": self.codim,
            "normal_orientation": self.normal_orientation,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FlatPair":
        return cls(int(data["ambient_dim"]), int(data["codim"]),
                   int(data.get("normal_orientation", 1)))


# -- exact determinants --------------------------------------------------

def _det(rows: list[list[Coord]]) -> Coord:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if n == 3:
        a, b, c = rows[0]
        d, e, f = rows[1]
        g, h, i = rows[2]
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    # Fraction Gaussian elimination for the (rare) larger sizes.
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return int(det) if det.denominator == 1 else det


def _minor_det(rows: list[list[Coord]], drop_row: int, drop_col: int) -> Coord:
    sub = [
        [x for j, x in enumerate(row) if j != drop_col]
        for i, row in enumerate(rows)
        if i != drop_row
    ]
    return _det(sub)


def _adjugate(rows: list[list[Coord]]) -> list[list[Coord]]:
    """adj(D) with D * adj(D) = det(D) * I; exact."""
    n = len(rows)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sign = -1 if (i + j) % 2 else 1
            adj[j][i] = sign * _minor_det(rows, i, j)
    return adj


def _sign(x: Coord) -> int:
    return (x > 0) - (x < 0)


def _lex_sign(seq: Sequence[Coord]) -> int:
    for x in seq:
        s = _sign(x)
        if s:
            return s
    return 0


def _matrix_rank(rows: list[list[Coord]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows if any(row)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col] * inv
                m[r] = [x - factor * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def orientation_sign(vectors: Sequence[Sequence[Coord]]) -> int:
    """Sign of the determinant of the square matrix with the given columns."""
    q = len(vectors)
    for v in vectors:
        if len(v) != q:
            raise ValueError("need q vectors of dimension q")
    rows = [[vectors[j][i] for j in range(q)] for i in range(q)]
    return _sign(_det(rows))


# -- Thom evaluation -----------------------------------------------------

def _crossing_number(normals: list[Vertex], perturb: bool) -> int:
    """Signed crossing of the affine simplex on `normals` at the origin of R^q.

    With perturb=True the origin is displaced by the infinitesimal vector
    (eps, eps^2, ..., eps^q); signs of the barycentric coordinates are then
    decided lexicographically, which resolves every boundary tie in a way
    that is consistent across all simplices of a computation.
    """
    q = len(normals) - 1
    v0 = normals[0]
    # Columns of D are the edge vectors v_i - v_0.
    rows = [[normals[i + 1][r] - v0[r] for i in range(q)] for r in range(q)]
    det = _det(rows)

    if det == 0:
        if perturb:
            return 0
        rhs = [-c for c in v0]
        aug = [rows[r] + [rhs[r]] for r in range(q)]
        if _matrix_rank(aug) == _matrix_rank(rows):
            raise DegeneratePosition(
                "projected simplex is degenerate with the origin in its affine hull")
        return 0

    # Cramer numerators of the barycentric coordinates of the origin:
    # lambda_i = num_i / det for i >= 1 and lambda_0 = (det - sum num_i) / det.
    rhs = [-c for c in v0]
    nums = []
    for i in range(q):
        col_backup = [rows[r][i] for r in range(q)]
        for r in range(q):
            rows[r][i] = rhs[r]
        nums.append(_det(rows))
        for r in range(q):
            rows[r][i] = col_backup[r]
    num0 = det - sum(nums)

    sdet = _sign(det)
    if not perturb:
        signs = [sdet * _sign(n) for n in (num0, *nums)]
        if any(s < 0 for s in signs):
            return 0
        if any(s == 0 for s in signs):
            raise DegeneratePosition("origin lies on the boundary of the projected simplex")
        return sdet

    # Perturbed origin o = (eps, eps^2, ...): each numerator becomes
    # num_i + sum_j adj(D)[i][j] * eps^j, compared lexicographically.
    adj = _adjugate(rows)
    grad0 = [-sum(adj[i][j] for i in range(q)) for j in range(q)]
    seqs = [[num0, *grad0]] + [[nums[i], *adj[i]] for i in range(q)]
    for seq in seqs:
        if sdet * _lex_sign(seq) < 0:
            return 0
    return sdet


def thom_crossing(simplex: AffineSimplex, pair: FlatPair, perturb: bool = False) -> int:
    """Integer value of the flat Thom cocycle on a q-simplex: -1, 0 or +1."""
    if simplex.ambient_dim != pair.ambient_dim:
        raise ValueError("simplex and pair live in different ambient dimensions")
    if simplex.dim != pair.codim:
        raise ValueError(
            f"Thom evaluation needs a {pair.codim}-simplex, got dimension {simplex.dim}")
    try:
        crossing = _crossing_number(
            [pair.normal_part(v) for v in simplex.vertices], perturb)
    except DegeneratePosition as exc:
        raise DegeneratePosition(str(exc), simplex=simplex) from None
    return pair.normal_orientation * crossing


def thom_evaluate(simplex: AffineSimplex, pair: FlatPair,
                  group: CoefficientGroup = INTEGERS, perturb: bool = False) -> Element:
    """Evaluate the flat Thom cocycle on a q-simplex in a coefficient group.

    The value is the signed crossing number of the normal projection at
    the origin, times the pair's orientation; mod 2 the sign disappears.
    """
    return group.scale(thom_crossing(simplex, pair, perturb), group.coerce(1))


def cocycle_check(simplex: AffineSimplex, pair: FlatPair,
                  group: CoefficientGroup = INTEGERS, perturb: bool = False) -> Element:
    """Alternating sum of Thom values over the faces of a (q+1)-simplex.

    The flat Thom representative is a cocycle, so this vanishes on every
    general-position input; callers treat a nonzero value as a defect.
    """
    if simplex.dim != pair.codim + 1:
        raise ValueError(
            f"cocycle check needs a {pair.codim + 1}-simplex, got dimension {simplex.dim}")
    total = group.zero
    for sign, face in simplex.faces():
        value = thom_evaluate(face, pair, group, perturb)
        total = group.add(total, group.scale(sign, value))
    return total
