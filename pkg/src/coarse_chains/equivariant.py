"""Chains equivariant under translation-lattice actions, and their quotients.

A chain invariant under a sublattice of Z^n is stored by canonical orbit
representatives (first vertex normalized into the half-open fundamental
parallelepiped).  Full-rank actions admit finite quotient complexes of
bounded-spread tuples whose integral homology is computed by Smith normal
form; this is the desk-scale route from equivariant chains to the homology
of the quotient torus.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .chains import ChainTuple, UfChain, tuple_length
from .coeffs import CoefficientGroup, Element, INTEGERS, group_by_name
from .geometry import DegeneratePosition, FlatPair, fill, thom_crossing
from .intlinalg import (
    SparseIntMatrix,
    kernel_basis,
    mat_vec,
    snf_with_transforms,
    solve_int,
)
from .spaces import LatticeSpace, Point, Window
from .wrongway import WrongWayContext

Vector = tuple[int, ...]


class TruncationError(ValueError):
    """A spread/radius bound was too small to represent the requested data."""


def _frac_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    m = [row[:] + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


@dataclass(frozen=True)
class TranslationAction:
    """Free isometric action of a sublattice of Z^n by translations.

    generators are linearly independent integer vectors; the action is
    automatically free, isometric and uniformly proper.  Rank below n is
    allowed (e.g. the tangential lattice of a flat pair); quotient
    complexes additionally require full rank (cocompactness).
    """

    space: LatticeSpace
    generators: tuple[Vector, ...]
    _pivot_rows: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _coord_matrix: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.space.dim
        gens = tuple(tuple(int(c) for c in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if len(g) != n:
                raise ValueError(f"generator {g} not in Z^{n}")
        r = len(gens)
        # Pick the first r coordinate rows on which the generators are
        # independent; they define exact rational lattice coordinates.
        pivot_rows: list[int] = []
        basis: list[list[Fraction]] = []
        for row_idx in range(n):
            if len(pivot_rows) == r:
                break
            candidate = basis + [[Fraction(g[row_idx]) for g in gens]]
            if _frac_rank(candidate) == len(candidate):
                basis = candidate
                pivot_rows.append(row_idx)
        if len(pivot_rows) != r:
            raise ValueError("generators are linearly dependent")
        inverse = _frac_inverse(basis) if r else []
        object.__setattr__(self, "_pivot_rows", tuple(pivot_rows))
        object.__setattr__(self, "_coord_matrix",
                           tuple(tuple(row) for row in inverse))

    @property
    def rank(self) -> int:
        return len(self.generators)

    def is_full_rank(self) -> bool:
        return self.rank == self.space.dim

    def coords(self, v: Sequence[int]) -> tuple[Fraction, ...]:
        """Rational lattice coordinates of v along the generators."""
        picked = [Fraction(v[i]) for i in self._pivot_rows]
        return tuple(
            sum(row[j] * picked[j] for j in range(self.rank))
            for row in self._coord_matrix
        )

    def vector_from_coeffs(self, m: Sequence[int]) -> Vector:
        return tuple(
            sum(g[i] * c for g, c in zip(self.generators, m))
            for i in range(self.space.dim)
        )

    def canonical_shift(self, p: Point) -> tuple[int, ...]:
        """Coefficients m with p - G m in the fundamental parallelepiped."""
        return tuple(c.numerator // c.denominator for c in self.coords(p))

    def translate_point(self, p: Point, offset: Vector) -> Point:
        return tuple(a + b for a, b in zip(p, offset))

    def translate_tuple(self, tup: ChainTuple, offset: Vector) -> ChainTuple:
        return tuple(self.translate_point(p, offset) for p in tup)

    def normalize_tuple(self, tup: ChainTuple) -> ChainTuple:
        m = self.canonical_shift(tup[0])
        if not any(m):
            return tuple(tuple(p) for p in tup)
        offset = tuple(-c for c in self.vector_from_coeffs(m))
        return self.translate_tuple(tup, offset)

    def is_canonical(self, tup: ChainTuple) -> bool:
        return not any(self.canonical_shift(tup[0]))

    def fundamental_points(self) -> list[Point]:
        """Lattice points inside the half-open fundamental parallelepiped."""
        if not self.is_full_rank():
            raise ValueError("fundamental domain is infinite for a non-cocompact action")
        n = self.space.dim
        corners = [
            tuple(sum(g[i] * e for g, e in zip(self.generators, eps)) for i in range(n))
            for eps in itertools.product((0, 1), repeat=n)
        ]
        lo = [min(c[i] for c in corners) for i in range(n)]
        hi = [max(c[i] for c in corners) for i in range(n)]
        out = []
        for p in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
            if all(0 <= c < 1 for c in self.coords(p)):
                out.append(tuple(p))
        return sorted(out)

    def lattice_vectors_in_box(self, lo: Sequence[int], hi: Sequence[int]) -> list[Vector]:
        """All lattice vectors o = G m with lo <= o <= hi componentwise."""
        if any(a > b for a, b in zip(lo, hi)):
            return []
        if self.rank == 0:
            zero = (0,) * self.space.dim
            return [zero] if all(a <= 0 <= b for a, b in zip(lo, hi)) else []
        # Bound m by the coordinate image of the pivot-row sub-box corners.
        corners = itertools.product(
            *[(Fraction(lo[i]), Fraction(hi[i])) for i in self._pivot_rows])
        mlo = [None] * self.rank
        mhi = [None] * self.rank
        for corner in corners:
            for j, row in enumerate(self._coord_matrix):
                val = sum(r * c for r, c in zip(row, corner))
                if mlo[j] is None or val < mlo[j]:
                    mlo[j] = val
                if mhi[j] is None or val > mhi[j]:
                    mhi[j] = val
        ranges = [
            range(-((-a.numerator) // a.denominator), b.numerator // b.denominator + 1)
            for a, b in zip(mlo, mhi)
        ]
        out = []
        for m in itertools.product(*ranges):
            o = self.vector_from_coeffs(m)
            if all(a <= c <= b for a, c, b in zip(lo, o, hi)):
                out.append(o)
        return sorted(out)

    def to_json(self) -> dict:
        return {"space": self.space.to_json(),
                "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "TranslationAction":
        return cls(LatticeSpace.from_json(data["space"]),
                   tuple(tuple(int(c) for c in g) for g in data["generators"]))

    @classmethod
    def standard(cls, dim: int) -> "TranslationAction":
        gens = tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))
        return cls(LatticeSpace(dim), gens)

    @classmethod
    def tangential(cls, pair: FlatPair) -> "TranslationAction":
        """The sublattice of translations preserving the flat: Z^(n-q) x {0}."""
        n = pair.ambient_dim
        gens = tuple(
            tuple(1 if i == j else 0 for j in range(n)) for i in range(pair.flat_dim)
        )
        return cls(LatticeSpace(n), gens)


def _frac_rank(rows: list[list[Fraction]]) -> int:
    m = [row[:] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
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


class EquivariantChain:
    """Chain invariant under a translation action, stored on orbit reps."""

    __slots__ = ("degree", "action", "group", "terms")

    def __init__(
        self,
        degree: int,
        action: TranslationAction,
        group: CoefficientGroup,
        terms: Mapping[ChainTuple, Element] | Iterable[tuple[ChainTuple, Element]] = (),
    ) -> None:
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.degree = degree
        self.action = action
        self.group = group
        space = action.space
        clean: dict[ChainTuple, Element] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for tup, coeff in items:
            tup = tuple(space.check_point(tuple(p)) for p in tup)
            if len(tup) != degree + 1:
                raise ValueError(f"tuple arity {len(tup)} does not match degree {degree}")
            rep = action.normalize_tuple(tup)
            coeff = group.add(clean.get(rep, group.zero), group.coerce(coeff))
            if group.is_zero(coeff):
                clean.pop(rep, None)
            else:
                clean[rep] = coeff
        self.terms = clean

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EquivariantChain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.action == other.action
            and self.group == other.group
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        parts = [f"{c}*{t}" for t, c in self.sorted_terms()]
        body = " + ".join(parts) if parts else "0"
        return f"EquivariantChain(deg={self.degree}, rank={self.action.rank}: {body})"

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[ChainTuple, Element]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def propagation(self) -> int:
        return max(
            (tuple_length(self.action.space, t) for t in self.terms), default=0)

    def __add__(self, other: "EquivariantChain") -> "EquivariantChain":
        if (self.degree, self.action, self.group) != (other.degree, other.action, other.group):
            raise ValueError("equivariant chains not compatible for addition")
        merged = list(self.terms.items()) + list(other.terms.items())
        return EquivariantChain(self.degree, self.action, self.group, merged)

    def __neg__(self) -> "EquivariantChain":
        return self.scale(-1)

    def __sub__(self, other: "EquivariantChain") -> "EquivariantChain":
        return self + (-other)

    def scale(self, m: int) -> "EquivariantChain":
        return EquivariantChain(
            self.degree, self.action, self.group,
            ((t, self.group.scale(m, c)) for t, c in self.terms.items()))

    def expand(self, window: Window) -> UfChain:
        """Orbit sum restricted to translates lying entirely in the window."""
        space = self.action.space
        out: list[tuple[ChainTuple, Element]] = []
        for tup, coeff in self.terms.items():
            lo = [min(p[i] for p in tup) for i in range(space.dim)]
            hi = [max(p[i] for p in tup) for i in range(space.dim)]
            box_lo = [a - b for a, b in zip(window.lo, lo)]
            box_hi = [a - b for a, b in zip(window.hi, hi)]
            for offset in self.action.lattice_vectors_in_box(box_lo, box_hi):
                out.append((self.action.translate_tuple(tup, offset), coeff))
        return UfChain(self.degree, space, self.group, out)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "action": self.action.to_json(),
            "group": self.group.name,
            "terms": [
                {"coeff": self.group.to_json(c), "tuple": [list(p) for p in t]}
                for t, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "EquivariantChain":
        action = TranslationAction.from_json(data["action"])
        group = group_by_name(data["group"])
        terms = []
        for item in data["terms"]:
            tup = tuple(tuple(int(c) for c in p) for p in item["tuple"])
            terms.append((tup, group.from_json(item["coeff"])))
        return cls(int(data["degree"]), action, group, terms)


def orbit_normalize(tup: ChainTuple, action: TranslationAction) -> ChainTuple:
    """Canonical orbit representative: the first vertex is translated into
    the half-open fundamental parallelepiped of the action."""
    return action.normalize_tuple(tup)


def equivariant_boundary(c: EquivariantChain) -> EquivariantChain:
    """Boundary on orbit representatives, re-normalized orbit-wise."""
    if c.degree == 0:
        raise ValueError("boundary of a degree-0 chain is undefined")
    terms: list[tuple[ChainTuple, Element]] = []
    for tup, coeff in c.terms.items():
        for j in range(len(tup)):
            face = tup[:j] + tup[j + 1:]
            terms.append((face, c.group.scale(-1 if j % 2 else 1, coeff)))
    return EquivariantChain(c.degree - 1, c.action, c.group, terms)


def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def kuhn_fundamental_cycle(n: int, group: CoefficientGroup = INTEGERS) -> EquivariantChain:
    """Fundamental n-cycle of the torus: the unit cube cut into n! simplices.

    Each permutation contributes the staircase simplex walking the cube's
    edges in that order, weighted by the permutation sign; the orbit sum
    under Z^n is a cycle representing the fundamental class.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    action = TranslationAction.standard(n)
    terms: list[tuple[ChainTuple, Element]] = []
    for perm in itertools.permutations(range(n)):
        vertices = [(0,) * n]
        for axis in perm:
            last = vertices[-1]
            vertices.append(tuple(c + (1 if i == axis else 0) for i, c in enumerate(last)))
        terms.append((tuple(vertices), group.coerce(_permutation_sign(perm) % 2
                                                    if group.name == "Z/2"
                                                    else _permutation_sign(perm))))
    return EquivariantChain(n, action, group, terms)


def restrict_equivariance(
    c: EquivariantChain,
    sub: TranslationAction,
    pair: FlatPair,
    radius: int,
) -> EquivariantChain:
    """Forget equivariance from the full action down to a tangential sublattice.

    Each orbit representative is expanded over the coset space of sub in
    the chain's action, keeping the finitely many translates whose tuples
    stay within the given distance of the flat.  The radius must dominate
    the chain's propagation, else translates carrying nonzero Thom values
    could be cut off.
    """
    action = c.action
    n = action.space.dim
    if pair.ambient_dim != n or sub.space.dim != n:
        raise ValueError("pair, action and sublattice must share the ambient lattice")
    if radius < c.propagation():
        raise TruncationError(
            f"radius {radius} below chain propagation {c.propagation()}")
    if sub == action:
        return EquivariantChain(c.degree, sub, c.group, c.terms)
    for g in sub.generators:
        if any(pair.normal_part(g)):
            raise ValueError(f"sublattice generator {g} does not preserve the flat")
        if any(x.denominator != 1 for x in action.coords(g)):
            raise ValueError(f"sublattice generator {g} is not in the acting lattice")
    if sub.rank + pair.codim != action.rank:
        raise ValueError("sublattice must be the full tangential part of the action")

    # Cosets are classified by the normal image of the acting lattice, but
    # only when the sublattice is exactly the tangential kernel; a proper
    # finite-index subgroup would make each normal class cover several
    # cosets and the expansion would under-count.
    q = pair.codim
    normal_matrix = [
        [pair.normal_part(g)[i] for g in action.generators] for i in range(q)
    ]
    for coeffs in kernel_basis(normal_matrix):
        vec = action.vector_from_coeffs(coeffs)
        if any(x.denominator != 1 for x in sub.coords(vec)):
            raise ValueError(
                f"tangential lattice vector {vec} is not in the sublattice")
    normal_image = TranslationAction(
        LatticeSpace(q), tuple(_lattice_basis_of_columns(normal_matrix)))
    if normal_image.rank != q:
        raise ValueError("action does not move the flat transversally")

    out: list[tuple[ChainTuple, Element]] = []
    for tup, coeff in c.terms.items():
        normals = [pair.normal_part(p) for p in tup]
        # Normal shifts z keeping every vertex within `radius` of the flat.
        z_lo = [-radius - min(v[i] for v in normals) for i in range(q)]
        z_hi = [radius - max(v[i] for v in normals) for i in range(q)]
        for z in normal_image.lattice_vectors_in_box(z_lo, z_hi):
            coeffs = solve_int(normal_matrix, list(z))
            assert coeffs is not None, "normal image enumeration left the lattice"
            offset = action.vector_from_coeffs(coeffs)
            out.append((action.translate_tuple(tup, offset), coeff))
    return EquivariantChain(c.degree, sub, c.group, out)


def _lattice_basis_of_columns(matrix: list[list[int]]) -> list[Vector]:
    """Basis of the lattice generated by the columns of an integer matrix."""
    if not matrix or not matrix[0]:
        return []
    d, u, _ = snf_with_transforms(matrix)
    uinv_needed = len([x for x in (d[i][i] for i in range(min(len(d), len(d[0])))) if x])
    # Column lattice of A equals that of U^{-1} D; solve U y = d_i e_i.
    basis: list[Vector] = []
    m = len(matrix)
    for i in range(uinv_needed):
        target = [d[i][i] if r == i else 0 for r in range(m)]
        col = solve_int(u, target)
        assert col is not None
        basis.append(tuple(col))
    return basis


def equivariant_wrong_way(c: EquivariantChain, ctx: WrongWayContext) -> EquivariantChain:
    """Wrong-way map applied representative-wise to a tangential-equivariant chain.

    Filling, Thom evaluation and the flat projection all commute with the
    tangential translations, so the value on one representative determines
    the whole orbit; the image action is the induced lattice on the flat.
    """
    pair = ctx.pair
    action = c.action
    q = pair.codim
    if c.group != ctx.group:
        raise ValueError("chain coefficient group does not match the context")
    if action.space.dim != pair.ambient_dim:
        raise ValueError("chain does not live on the pair's ambient lattice")
    if c.degree < q:
        raise ValueError(f"cannot cap a degree-{c.degree} chain with a degree-{q} class")
    for g in action.generators:
        if any(pair.normal_part(g)):
            raise ValueError(f"action generator {g} does not preserve the flat")
    target_action = TranslationAction(
        LatticeSpace(pair.flat_dim),
        tuple(pair.tangential_part(g) for g in action.generators),
    )
    group = c.group
    out: list[tuple[ChainTuple, Element]] = []
    for tup, coeff in c.terms.items():
        try:
            theta = thom_crossing(fill(tup[: q + 1]), pair, ctx.perturb)
        except DegeneratePosition as exc:
            raise DegeneratePosition(str(exc), simplex=exc.simplex, chain_tuple=tup) from None
        if theta == 0:
            continue
        image = tuple(pair.tangential_part(p) for p in tup[q:])
        out.append((image, group.scale(theta, coeff)))
    return EquivariantChain(c.degree - q, target_action, group, out)


# -- quotient complexes ----------------------------------------------------

@dataclass
class QuotientComplex:
    """Finite chain complex of bounded-spread orbit representatives."""

    action: TranslationAction
    r_max: int
    degrees: tuple[int, ...]
    bases: dict[int, list[ChainTuple]]
    index: dict[int, dict[ChainTuple, int]]
    matrices: dict[int, SparseIntMatrix]  # d -> boundary C_d -> C_{d-1}
    include_degenerate: bool = True

    def basis_size(self, degree: int) -> int:
        return len(self.bases.get(degree, []))

    def composition_is_zero(self) -> bool:
        for d in self.degrees:
            if d in self.matrices and d + 1 in self.matrices:
                if not self.matrices[d].multiply(self.matrices[d + 1]).is_zero():
                    return False
        return True


def build_quotient_complex(
    action: TranslationAction,
    r_max: int,
    degrees: Iterable[int],
    include_degenerate: bool = True,
) -> QuotientComplex:
    """Enumerate canonical tuples of spread <= r_max and their boundary maps.

    The default basis in degree d consists of the orbit representatives of
    all ordered (d+1)-tuples whose pairwise sup-distance is at most r_max,
    repeated vertices included; faces of basis tuples normalize back into
    the lower basis, so the boundary matrices close up exactly.

    include_degenerate=False switches to the oriented basis: one sorted
    injective tuple per vertex set.  (Merely deleting repeated-vertex
    tuples from the ordered basis would change the homology, e.g. the two
    orientations of an edge would become independent cycles; the oriented
    reduction is the correct lean variant and gives the same betti
    numbers.)
    """
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    if not action.is_full_rank():
        raise ValueError("quotient complexes need a full-rank (cocompact) action")
    degrees = tuple(sorted(set(int(d) for d in degrees)))
    if degrees and degrees != tuple(range(degrees[0], degrees[-1] + 1)):
        raise ValueError("degrees must form a contiguous range")
    n = action.space.dim
    base_points = action.fundamental_points()

    bases: dict[int, list[ChainTuple]] = {}
    for d in degrees:
        tuples: list[ChainTuple] = []
        for v0 in base_points:
            stack: list[list[Point]] = [[v0]]
            while stack:
                chosen = stack.pop()
                if len(chosen) == d + 1:
                    tuples.append(tuple(chosen))
                    continue
                lo = [max(p[i] for p in chosen) - r_max for i in range(n)]
                hi = [min(p[i] for p in chosen) + r_max for i in range(n)]
                for nxt in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
                    if include_degenerate or tuple(nxt) > chosen[-1]:
                        stack.append(chosen + [tuple(nxt)])
        bases[d] = sorted(tuples)

    index = {d: {t: i for i, t in enumerate(basis)} for d, basis in bases.items()}
    matrices: dict[int, SparseIntMatrix] = {}
    for d in degrees:
        if d - 1 not in bases or d == 0:
            continue
        entries: list[tuple[int, int, int]] = []
        lower = index[d - 1]
        for col, tup in enumerate(bases[d]):
            for j in range(len(tup)):
                face = action.normalize_tuple(tup[:j] + tup[j + 1:])
                row = lower.get(face)
                assert row is not None, "face escaped the quotient basis"
                entries.append((row, col, -1 if j % 2 else 1))
        matrices[d] = SparseIntMatrix(len(bases[d - 1]), len(bases[d]), entries)

    return QuotientComplex(action, r_max, degrees, bases, index, matrices,
                           include_degenerate)


@dataclass(frozen=True)
class DegreeHomology:
    degree: int
    betti: int
    torsion: tuple[int, ...]


@dataclass
class HomologyReport:
    """Betti numbers and torsion per degree, with optional class coordinates."""

    entries: list[DegreeHomology]
    classes: dict[int, list[int]] = field(default_factory=dict)

    def betti(self) -> dict[int, int]:
        return {e.degree: e.betti for e in self.entries}

    def to_json(self) -> list[dict]:
        out = []
        for e in self.entries:
            item = {"degree": e.degree, "betti": e.betti, "torsion": list(e.torsion)}
            if e.degree in self.classes:
                item["class"] = list(self.classes[e.degree])
            out.append(item)
        return out


def snf_homology(complex_: QuotientComplex) -> HomologyReport:
    """Integral homology of the quotient complex via Smith normal form.

    Degree d is reportable when the complex carries the boundary from
    degree d+1; the top truncation degree only serves as relations.
    """
    if not complex_.composition_is_zero():
        raise ValueError("boundary matrices do not compose to zero; not a complex")
    ranks: dict[int, int] = {}
    factors: dict[int, list[int]] = {}
    for d, matrix in complex_.matrices.items():
        r, f = matrix.rank_and_factors()
        ranks[d] = r
        factors[d] = f
    entries = []
    for d in complex_.degrees:
        if d + 1 not in complex_.matrices:
            continue
        dim = complex_.basis_size(d)
        betti = dim - ranks.get(d, 0) - ranks.get(d + 1, 0)
        torsion = tuple(x for x in factors.get(d + 1, []) if x > 1)
        entries.append(DegreeHomology(d, betti, torsion))
    return HomologyReport(entries)


def identify_class(cycle: EquivariantChain, complex_: QuotientComplex) -> list[int]:
    """Coordinates of an integral cycle's homology class in the SNF basis.

    Returns the free-part coordinates (torsion-free quotients here); the
    basis is deterministic, so signs are stable run to run.
    """
    if cycle.group != INTEGERS:
        raise ValueError("class identification works with integer coefficients")
    if cycle.action != complex_.action:
        raise ValueError("cycle and complex use different actions")
    d = cycle.degree
    if d not in complex_.bases or d + 1 not in complex_.matrices:
        raise ValueError(f"complex does not cover degree {d} (need degree {d + 1} too)")
    if d >= 1 and not equivariant_boundary(cycle).is_zero():
        raise ValueError("chain is not a cycle")
    # On an oriented-basis complex, project ordered tuples to their sorted
    # representative with the permutation sign; repeated vertices project
    # to zero.  This is the classical chain map from ordered to oriented
    # chains, so classes are preserved.
    terms: dict[ChainTuple, int] = {}
    for tup, coeff in cycle.terms.items():
        if complex_.include_degenerate:
            terms[tup] = terms.get(tup, 0) + coeff
            continue
        if len(set(tup)) != len(tup):
            continue
        order = sorted(range(len(tup)), key=lambda i: tup[i])
        sign = _permutation_sign(order)
        rep = complex_.action.normalize_tuple(tuple(tup[i] for i in order))
        terms[rep] = terms.get(rep, 0) + sign * coeff

    idx = complex_.index[d]
    dim = complex_.basis_size(d)
    z = [0] * dim
    for tup, coeff in terms.items():
        if coeff == 0:
            continue
        pos = idx.get(tup)
        if pos is None:
            raise TruncationError(
                f"cycle tuple {tup} exceeds the complex spread bound {complex_.r_max}")
        z[pos] = coeff

    # Integral basis of the cycle lattice in degree d (everything if the
    # complex carries no boundary out of this degree).
    if d in complex_.matrices:
        kernel_cols = kernel_basis(complex_.matrices[d].to_dense())
    else:
        kernel_cols = [[1 if i == j else 0 for i in range(dim)] for j in range(dim)]
    k = len(kernel_cols)
    kmat = [[kernel_cols[j][i] for j in range(k)] for i in range(dim)]
    w = solve_int(kmat, z)
    if w is None:
        raise ValueError("cycle is not an integral combination of the kernel basis")

    # Express the boundary image in kernel coordinates and diagonalize.
    bnd = complex_.matrices[d + 1].to_dense()
    n_cols = len(bnd[0]) if bnd else 0
    y_matrix = [[0] * n_cols for _ in range(k)]
    for j in range(n_cols):
        col = [bnd[i][j] for i in range(len(bnd))]
        y = solve_int(kmat, col)
        assert y is not None, "boundary image escaped the cycle lattice"
        for i in range(k):
            y_matrix[i][j] = y[i]

    if n_cols:
        dsnf, u, _ = snf_with_transforms(y_matrix)
        diag = [dsnf[i][i] for i in range(min(k, n_cols))]
    else:
        u = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        diag = []
    h = mat_vec(u, w)
    rank_im = len([x for x in diag if x])
    free = [h[i] for i in range(rank_im, k)]
    torsion = [(h[i] % diag[i], diag[i]) for i in range(rank_im) if diag[i] > 1]
    if any(t for t, _ in torsion):
        raise ValueError(f"class has torsion coordinates {torsion}; free part {free}")
    return free
