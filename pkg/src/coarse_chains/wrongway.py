"""Chain-level wrong-way map over a flat pair.

The map caps a degree-k chain with the flat's Thom class (evaluating the
crossing number of each tuple's leading q-simplex), then pushes the
truncated tuples to the flat by nearest-point projection and re-indexes
to the intrinsic lattice of the flat.  The sign identity checker computes
both sides of the boundary-commutation identity independently so the
contract "residual is the zero chain" is a genuine cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .chains import ChainTuple, UfChain, boundary, push_tuplewise
from .coeffs import CoefficientGroup, Element, INTEGERS
from .geometry import DegeneratePosition, FlatPair, fill, thom_crossing
from .spaces import LatticeSpace, Point, Window


@dataclass(frozen=True)
class WrongWayContext:
    """A flat pair together with coefficients and evaluation options.

    When a window is given, the support of every input chain must lie in
    it (scenario runs always set one); None skips the check, which is how
    the equivariant layer calls in with orbit representatives.
    """

    pair: FlatPair
    group: CoefficientGroup = INTEGERS
    perturb: bool = False
    window: Window | None = None

    def check_chain(self, c: UfChain) -> None:
        if c.space.dim != self.pair.ambient_dim:
            raise ValueError("chain does not live on the pair's ambient lattice")
        if c.group != self.group:
            raise ValueError("chain coefficient group does not match the context")
        if self.window is not None:
            for p in c.support():
                if not self.window.contains(p):
                    raise ValueError(f"chain support leaves the window: {p}")


def flat_projection(x: Point, pair: FlatPair) -> Point:
    """Nearest point of the flat in the sup metric: zero the normal block.

    Nearest points are not unique in the sup metric; the coordinate
    projection is the canonical deterministic choice.
    """
    return pair.tangential_part(x) + (0,) * pair.codim


def cap_thom(c: UfChain, ctx: WrongWayContext) -> UfChain:
    """Cap a degree-k chain with the Thom class: degree drops by q.

    Each tuple contributes its crossing number times the truncated tuple
    (x_q, ..., x_k), still indexed by the ambient lattice.
    """
    q = ctx.pair.codim
    if c.degree < q:
        raise ValueError(f"cannot cap a degree-{c.degree} chain with a degree-{q} class")
    ctx.check_chain(c)
    group = ctx.group
    radius = c.propagation()
    out: dict[ChainTuple, Element] = {}
    for tup, coeff in c.terms.items():
        try:
            theta = thom_crossing(fill(tup[: q + 1]), ctx.pair, ctx.perturb)
        except DegeneratePosition as exc:
            raise DegeneratePosition(str(exc), simplex=exc.simplex, chain_tuple=tup) from None
        if theta == 0:
            continue
        tail = tup[q:]
        assert all(ctx.pair.flat_distance(p) <= radius for p in tail), \
            "capped tuple escaped the propagation neighbourhood of the flat"
        value = group.add(out.get(tail, group.zero), group.scale(theta, coeff))
        if group.is_zero(value):
            out.pop(tail, None)
        else:
            out[tail] = value
    return UfChain(c.degree - q, c.space, group, out)


def wrong_way(c: UfChain, ctx: WrongWayContext) -> UfChain:
    """The composite map: cap with the Thom class, project, re-index.

    Output lives on the intrinsic (n-q)-dimensional lattice of the flat.
    """
    capped = cap_thom(c, ctx)
    target = LatticeSpace(ctx.pair.flat_dim)
    return push_tuplewise(capped, ctx.pair.tangential_part, target)


def sign_identity_residual(c: UfChain, ctx: WrongWayContext) -> UfChain:
    """boundary(wrong_way(c)) - (-1)^q * wrong_way(boundary(c)).

    Both sides are computed independently term-by-term; the contract is
    that the residual is the zero chain on every general-position input.
    """
    q = ctx.pair.codim
    if c.degree < q + 1:
        raise ValueError("sign identity needs degree >= q + 1")
    lhs = boundary(wrong_way(c, ctx))
    rhs = wrong_way(boundary(c), ctx).scale(-1 if q % 2 else 1)
    return lhs - rhs


def rough_map_profile(f: Callable[[Point], Point], space: LatticeSpace,
                      window: Window, radii: Iterable[int],
                      target: LatticeSpace | None = None) -> dict:
    """Empirical expansion and co-expansion of a point map on a window.

    expansion[r]    = max d(f(x), f(y)) over window pairs with d(x, y) <= r
    co_expansion[r] = max d(x, y) over window pairs with d(f(x), f(y)) <= r

    Finite-window stand-ins for the two defining bounds of a rough map; a
    polynomial bound on these tables is the strengthened (polynomially
    rough) condition.
    """
    target = target or space
    pts = list(window.points())
    images = {p: target.check_point(tuple(f(p))) for p in pts}
    radii = sorted(set(radii))
    expansion = {r: 0 for r in radii}
    co_expansion = {r: 0 for r in radii}
    for i, x in enumerate(pts):
        for y in pts[i:]:
            d = space.distance(x, y)
            df = target.distance(images[x], images[y])
            for r in radii:
                if d <= r and df > expansion[r]:
                    expansion[r] = df
                if df <= r and d > co_expansion[r]:
                    co_expansion[r] = d
    return {"expansion": expansion, "co_expansion": co_expansion}
