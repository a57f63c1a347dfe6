"""Discrete model spaces: integer lattices with the sup metric.

All ambient geometry in this package happens on Z^n with the l-infinity
metric, so every distance is an integer and every comparison is exact.
Enumeration always happens inside an explicit finite window.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

Point = tuple[int, ...]


@dataclass(frozen=True)
class LatticeSpace:
    """The lattice Z^dim with the sup metric.

    dim == 0 is allowed as the degenerate single-point lattice; it occurs
    as the target of codimension-n projections.
    """

    dim: int

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError(f"lattice dimension must be >= 0, got {self.dim}")

    def check_point(self, p: Point) -> Point:
        if len(p) != self.dim or not all(isinstance(c, int) for c in p):
            raise ValueError(f"not a point of Z^{self.dim}: {p!r}")
        return p

    def distance(self, p: Point, q: Point) -> int:
        if len(p) != self.dim or len(q) != self.dim:
            raise ValueError("points of wrong dimension")
        if self.dim == 0:
            return 0
        return max(abs(a - b) for a, b in zip(p, q))

    def ball(self, center: Point, r: int) -> list[Point]:
        """All points within sup-distance r of center, lexicographically."""
        if r < 0:
            raise ValueError("radius must be >= 0")
        self.check_point(center)
        ranges = [range(c - r, c + r + 1) for c in center]
        return [tuple(p) for p in itertools.product(*ranges)]

    def to_json(self) -> dict:
        return {"kind": "lattice", "dim": self.dim}

    @classmethod
    def from_json(cls, data: dict) -> "LatticeSpace":
        if data.get("kind") != "lattice":
            raise ValueError(f"unknown space kind: {data.get('kind')!r}")
        return cls(int(data["dim"]))


@dataclass(frozen=True)
class Window:
    """Finite axis-aligned box {p : lo <= p <= hi componentwise}."""

    lo: Point
    hi: Point

    def __post_init__(self) -> None:
        if len(self.lo) != len(self.hi):
            raise ValueError("window bounds of different dimension")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError(f"empty window: lo={self.lo}, hi={self.hi}")

    @property
    def dim(self) -> int:
        return len(self.lo)

    def contains(self, p: Point) -> bool:
        return all(a <= c <= b for a, c, b in zip(self.lo, p, self.hi))

    def contains_tuple(self, tup: Sequence[Point]) -> bool:
        return all(self.contains(p) for p in tup)

    def points(self) -> Iterator[Point]:
        """Lexicographic enumeration of the window."""
        ranges = [range(a, b + 1) for a, b in zip(self.lo, self.hi)]
        for p in itertools.product(*ranges):
            yield tuple(p)

    def size(self) -> int:
        n = 1
        for a, b in zip(self.lo, self.hi):
            n *= b - a + 1
        return n

    def shrink(self, margin: int) -> "Window":
        lo = tuple(a + margin for a in self.lo)
        hi = tuple(b - margin for b in self.hi)
        return Window(lo, hi)

    def to_json(self) -> dict:
        return {"lo": list(self.lo), "hi": list(self.hi)}

    @classmethod
    def from_json(cls, data: dict) -> "Window":
        return cls(tuple(int(c) for c in data["lo"]), tuple(int(c) for c in data["hi"]))

    @classmethod
    def cube(cls, dim: int, radius: int) -> "Window":
        return cls((-radius,) * dim, (radius,) * dim)


@dataclass(frozen=True)
class NetSpec:
    """Separation parameter and enumeration window for net construction."""

    separation: Fraction
    window: Window

    def __post_init__(self) -> None:
        if self.separation <= 0:
            raise ValueError("separation must be positive")


def greedy_net(space: LatticeSpace, spec: NetSpec) -> list[Point]:
    """Maximal c-separated subset of the window, by greedy lexicographic scan.

    A point is kept iff its distance to every previously kept point exceeds
    the separation.  Greedy scan makes the result maximal and deterministic.
    """
    c = spec.separation
    kept: list[Point] = []
    for p in spec.window.points():
        if all(Fraction(space.distance(p, g)) > c for g in kept):
            kept.append(p)
    return kept


def nearest_in_net(space: LatticeSpace, net: Sequence[Point], x: Point) -> Point:
    """Net point at minimal distance from x; ties go to the lexicographic minimum."""
    if not net:
        raise ValueError("net is empty")
    return min(net, key=lambda g: (space.distance(x, g), g))
