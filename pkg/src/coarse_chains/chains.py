"""Uniformly finite chains as sparse tuple-indexed coefficient maps.

A degree-k chain assigns a nonzero coefficient to finitely many
(k+1)-tuples of lattice points.  Tuples are ordered and may repeat
vertices; the boundary operator handles the cancellation of degenerate
tuples on its own.  All operations return canonical chains: zero
coefficients are dropped and serialization orders terms lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .coeffs import CoefficientGroup, Element, group_by_name
from .spaces import LatticeSpace, Point

ChainTuple = tuple[Point, ...]


def tuple_length(space: LatticeSpace, tup: ChainTuple) -> int:
    """Maximal pairwise sup-distance among the tuple's points (0 for singletons)."""
    m = 0
    for i in range(len(tup)):
        for j in range(i + 1, len(tup)):
            d = space.distance(tup[i], tup[j])
            if d > m:
                m = d
    return m


def tuple_distance(space: LatticeSpace, a: ChainTuple, b: ChainTuple) -> int:
    """Sup-product distance between two tuples of equal arity."""
    if len(a) != len(b):
        raise ValueError("tuples of different arity")
    return max(space.distance(p, q) for p, q in zip(a, b))


class UfChain:
    """Sparse chain: finite map from (degree+1)-tuples to nonzero coefficients."""

    __slots__ = ("degree", "space", "group", "terms")

    def __init__(
        self,
        degree: int,
        space: LatticeSpace,
        group: CoefficientGroup,
        terms: Mapping[ChainTuple, Element] | Iterable[tuple[ChainTuple, Element]] = (),
    ) -> None:
        if degree < 0:
            raise ValueError("degree must be >= 0")
        self.degree = degree
        self.space = space
        self.group = group
        clean: dict[ChainTuple, Element] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for tup, coeff in items:
            tup = tuple(space.check_point(tuple(p)) for p in tup)
            if len(tup) != degree + 1:
                raise ValueError(f"tuple arity {len(tup)} does not match degree {degree}")
            coeff = group.add(clean.get(tup, group.zero), group.coerce(coeff))
            if group.is_zero(coeff):
                clean.pop(tup, None)
            else:
                clean[tup] = coeff
        self.terms = clean

    # -- value semantics -------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UfChain):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.space == other.space
            and self.group == other.group
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.degree, self.space, self.group, tuple(self.sorted_terms())))

    def __repr__(self) -> str:
        parts = [f"{c}*{t}" for t, c in self.sorted_terms()]
        body = " + ".join(parts) if parts else "0"
        return f"UfChain(deg={self.degree}, Z^{self.space.dim}, {self.group.name}: {body})"

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[ChainTuple, Element]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def support(self) -> set[Point]:
        return {p for tup in self.terms for p in tup}

    def propagation(self) -> int:
        """Maximal tuple spread over the support; 0 for the zero chain."""
        return max((tuple_length(self.space, t) for t in self.terms), default=0)

    # -- module structure -------------------------------------------------

    def _like(self, terms: Iterable[tuple[ChainTuple, Element]]) -> "UfChain":
        return UfChain(self.degree, self.space, self.group, terms)

    def __add__(self, other: "UfChain") -> "UfChain":
        if (self.degree, self.space, self.group) != (other.degree, other.space, other.group):
            raise ValueError("chains not compatible for addition")
        out = dict(self.terms)
        for tup, coeff in other.terms.items():
            s = self.group.add(out.get(tup, self.group.zero), coeff)
            if self.group.is_zero(s):
                out.pop(tup, None)
            else:
                out[tup] = s
        return self._like(out.items())

    def __neg__(self) -> "UfChain":
        return self._like((t, self.group.neg(c)) for t, c in self.terms.items())

    def __sub__(self, other: "UfChain") -> "UfChain":
        return self + (-other)

    def scale(self, m: int) -> "UfChain":
        return self._like((t, self.group.scale(m, c)) for t, c in self.terms.items())

    @classmethod
    def zero(cls, degree: int, space: LatticeSpace, group: CoefficientGroup) -> "UfChain":
        return cls(degree, space, group)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "space": self.space.to_json(),
            "group": self.group.name,
            "terms": [
                {"coeff": self.group.to_json(c), "tuple": [list(p) for p in t]}
                for t, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "UfChain":
        space = LatticeSpace.from_json(data["space"])
        group = group_by_name(data["group"])
        terms = []
        for item in data["terms"]:
            tup = tuple(tuple(int(c) for c in p) for p in item["tuple"])
            terms.append((tup, group.from_json(item["coeff"])))
        return cls(int(data["degree"]), space, group, terms)


def boundary(c: UfChain) -> UfChain:
    """Simplicial boundary: alternating sum of vertex-dropped tuples."""
    if c.degree == 0:
        raise ValueError("boundary of a degree-0 chain is undefined")
    group = c.group
    out: dict[ChainTuple, Element] = {}
    for tup, coeff in c.terms.items():
        for j in range(len(tup)):
            face = tup[:j] + tup[j + 1:]
            val = group.scale(-1 if j % 2 else 1, coeff)
            s = group.add(out.get(face, group.zero), val)
            if group.is_zero(s):
                out.pop(face, None)
            else:
                out[face] = s
    return UfChain(c.degree - 1, c.space, group, out)


def uf_norm(c: UfChain, n: int) -> Fraction:
    """sup over terms of |coeff| * length(tuple)^n, with 0^0 = 1.

    For n = 0 this is the plain sup-norm of the coefficients; singleton
    tuples have length 0 and so contribute nothing once n >= 1.
    """
    if n < 0:
        raise ValueError("norm weight must be >= 0")
    best = Fraction(0)
    for tup, coeff in c.terms.items():
        length = tuple_length(c.space, tup)
        if length == 0:
            value = c.group.norm(coeff) if n == 0 else Fraction(0)
        else:
            value = c.group.norm(coeff) * Fraction(length) ** n
        if value > best:
            best = value
    return best


def frechet_seminorm(c: UfChain, n: int) -> Fraction:
    """uf_norm of the chain plus uf_norm of its boundary (0 in degree 0)."""
    extra = uf_norm(boundary(c), n) if c.degree >= 1 else Fraction(0)
    return uf_norm(c, n) + extra


@dataclass(frozen=True)
class ChainStats:
    """Recorded finiteness statistics of a chain.

    multiplicity[r] is the largest number of supported tuples within
    sup-product distance r of a supported tuple (the center counts itself).
    """

    propagation: int
    sup_norm: Fraction
    multiplicity: dict[int, int]

    def to_json(self) -> dict:
        return {
            "propagation": self.propagation,
            "sup_norm": f"{self.sup_norm.numerator}/{self.sup_norm.denominator}",
            "multiplicity": {str(r): k for r, k in sorted(self.multiplicity.items())},
        }


def chain_stats(c: UfChain, radii: Iterable[int] = (0, 1, 2)) -> ChainStats:
    tuples = list(c.terms)
    radii = sorted(set(radii))
    mult = {r: 0 for r in radii}
    if tuples:
        dists = [[tuple_distance(c.space, a, b) for b in tuples] for a in tuples]
        for r in radii:
            mult[r] = max(sum(1 for d in row if d <= r) for row in dists)
    return ChainStats(
        propagation=c.propagation(),
        sup_norm=uf_norm(c, 0),
        multiplicity=mult,
    )


def push_tuplewise(c: UfChain, f: Callable[[Point], Point],
                   target: LatticeSpace | None = None) -> UfChain:
    """Apply a point map to every tuple coordinate and recombine.

    Degenerate image tuples are kept; their boundary terms cancel on
    their own, so pushforward commutes with the boundary exactly.
    """
    target = target or c.space
    group = c.group
    out: dict[ChainTuple, Element] = {}
    for tup, coeff in c.terms.items():
        image = tuple(target.check_point(tuple(f(p))) for p in tup)
        s = group.add(out.get(image, group.zero), coeff)
        if group.is_zero(s):
            out.pop(image, None)
        else:
            out[image] = s
    return UfChain(c.degree, target, group, out)
