"""Scenario files: reproducible pipelines with machine-readable reports.

A scenario fixes every knob explicitly (pair, group, window, spread bound,
seed, perturbation) and lists a pipeline of operations.  Reports echo the
full configuration and are byte-stable across reruns; wall-clock timing
goes to stderr, never into the report.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from .chains import UfChain, boundary, chain_stats, frechet_seminorm, uf_norm
from .coeffs import group_by_name
from .equivariant import (
    EquivariantChain,
    TranslationAction,
    TruncationError,
    build_quotient_complex,
    equivariant_wrong_way,
    identify_class,
    kuhn_fundamental_cycle,
    restrict_equivariance,
    snf_homology,
)
from .geometry import DegeneratePosition, FlatPair
from .spaces import LatticeSpace, Window
from .wrongway import WrongWayContext, sign_identity_residual, wrong_way

REQUIRED_KEYS = ("name", "pair", "group", "window", "r_max", "seed", "perturb", "pipeline")


class ScenarioError(ValueError):
    """Malformed scenario file or configuration."""


def canonical_dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _frac_str(x: Fraction) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def load_scenario(source: str | Path) -> dict:
    """Load a scenario from a path or a bundled scenario name."""
    text = None
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        try:
            text = path.read_text()
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario {source}: {exc}") from None
    else:
        bundled = resources.files("coarse_chains").joinpath("scenarios", f"{source}.json")
        try:
            text = bundled.read_text()
        except (FileNotFoundError, OSError):
            raise ScenarioError(f"no scenario file or bundled scenario named {source!r}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario {source} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    missing = [k for k in REQUIRED_KEYS if k not in data]
    if missing:
        raise ScenarioError(f"scenario is missing required keys: {missing}")
    return data


def _chain_summary(obj: UfChain | EquivariantChain) -> dict:
    if isinstance(obj, EquivariantChain):
        return {
            "kind": "equivariant-chain",
            "degree": obj.degree,
            "orbit_terms": len(obj.terms),
            "propagation": obj.propagation(),
        }
    return {
        "kind": "chain",
        "degree": obj.degree,
        "terms": len(obj.terms),
        "propagation": obj.propagation(),
        "sup_norm": _frac_str(uf_norm(obj, 0)),
    }


class ScenarioRun:
    """Executes one scenario's pipeline, collecting the report."""

    def __init__(self, config: dict) -> None:
        self.config = config
        try:
            self.pair = FlatPair.from_json(config["pair"])
            self.group = group_by_name(config["group"])
            self.window = Window.from_json(config["window"])
            self.r_max = int(config["r_max"])
            self.seed = int(config["seed"])
            self.perturb = bool(config["perturb"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"bad scenario configuration: {exc}") from None
        self.rng = random.Random(self.seed)
        self.current: UfChain | EquivariantChain | None = None
        self.steps: list[dict] = []

    def run(self) -> dict:
        for i, step in enumerate(self.config["pipeline"]):
            if not isinstance(step, dict) or "op" not in step:
                raise ScenarioError(f"pipeline step {i} must be an object with an 'op'")
            op = step["op"]
            handler = getattr(self, f"_op_{op.replace('-', '_')}", None)
            if handler is None:
                raise ScenarioError(f"unknown pipeline op {op!r}")
            try:
                record = handler(step)
            except (DegeneratePosition, TruncationError, ScenarioError):
                raise
            except (KeyError, TypeError, ValueError) as exc:
                raise ScenarioError(f"step {i} ({op}): {exc}") from None
            entry = {"op": op, **record}
            if self.current is not None:
                entry["current"] = _chain_summary(self.current)
            self.steps.append(entry)
        return {
            "report_version": 1,
            "scenario": self.config,
            "steps": self.steps,
            "result": self.steps[-1] if self.steps else {},
        }

    # -- pipeline ops ------------------------------------------------------

    def _ctx(self, window: Window | None = None) -> WrongWayContext:
        return WrongWayContext(self.pair, self.group, self.perturb, window)

    def _op_kuhn_cycle(self, step: dict) -> dict:
        self.current = kuhn_fundamental_cycle(self.pair.ambient_dim, self.group)
        return {}

    def _op_restrict_equivariance(self, step: dict) -> dict:
        if not isinstance(self.current, EquivariantChain):
            raise ScenarioError("restrict_equivariance needs an equivariant chain")
        radius = int(step["radius"])
        sub = TranslationAction.tangential(self.pair)
        self.current = restrict_equivariance(self.current, sub, self.pair, radius)
        return {"radius": radius}

    def _op_equivariant_wrong_way(self, step: dict) -> dict:
        if not isinstance(self.current, EquivariantChain):
            raise ScenarioError("equivariant_wrong_way needs an equivariant chain")
        self.current = equivariant_wrong_way(self.current, self._ctx())
        return {}

    def _op_identify_class(self, step: dict) -> dict:
        if not isinstance(self.current, EquivariantChain):
            raise ScenarioError("identify_class needs an equivariant chain")
        degree = self.current.degree
        complex_ = build_quotient_complex(
            TranslationAction.standard(self.current.action.space.dim),
            self.r_max, range(0, degree + 2))
        coords = identify_class(self.current, complex_)
        return {"class": coords, "degree": degree}

    def _op_homology(self, step: dict) -> dict:
        dim = int(step["torus"])
        complex_ = build_quotient_complex(
            TranslationAction.standard(dim), self.r_max, range(0, dim + 2))
        report = snf_homology(complex_)
        return {"homology": report.to_json()}

    def _op_load_chain(self, step: dict) -> dict:
        self.current = UfChain.from_json(step["chain"])
        return {}

    def _op_boundary(self, step: dict) -> dict:
        if not isinstance(self.current, UfChain):
            raise ScenarioError("boundary needs a plain chain")
        self.current = boundary(self.current)
        return {}

    def _op_wrong_way(self, step: dict) -> dict:
        if not isinstance(self.current, UfChain):
            raise ScenarioError("wrong_way needs a plain chain")
        source = self.current
        self.current = wrong_way(source, self._ctx(self.window))
        norms_in = {p: uf_norm(source, p) for p in range(4)}
        norms_out = {p: uf_norm(self.current, p) for p in range(4)}
        return {
            "input_uf_norms": {str(p): _frac_str(v) for p, v in norms_in.items()},
            "output_uf_norms": {str(p): _frac_str(v) for p, v in norms_out.items()},
            "norm_nonincreasing": all(norms_out[p] <= norms_in[p] for p in norms_in),
        }

    def _op_chain_stats(self, step: dict) -> dict:
        if not isinstance(self.current, UfChain):
            raise ScenarioError("chain_stats needs a plain chain")
        radii = [int(r) for r in step.get("radii", [0, 1, 2])]
        return {"stats": chain_stats(self.current, radii).to_json()}

    def _op_norms(self, step: dict) -> dict:
        if not isinstance(self.current, UfChain):
            raise ScenarioError("norms needs a plain chain")
        max_power = int(step.get("max_power", 3))
        return {
            "uf_norms": {str(p): _frac_str(uf_norm(self.current, p))
                         for p in range(max_power + 1)},
            "frechet_seminorms": {str(p): _frac_str(frechet_seminorm(self.current, p))
                                  for p in range(max_power + 1)},
        }

    def _op_expand(self, step: dict) -> dict:
        if not isinstance(self.current, EquivariantChain):
            raise ScenarioError("expand needs an equivariant chain")
        self.current = self.current.expand(self.window)
        return {"window": self.window.to_json()}

    def _op_sign_identity(self, step: dict) -> dict:
        count = int(step["count"])
        degree = int(step["degree"])
        n_terms = int(step.get("terms", 4))
        spread = int(step.get("spread", 2))
        box = int(step.get("box", 3))
        space = LatticeSpace(self.pair.ambient_dim)
        ctx = self._ctx()
        q = self.pair.codim
        if degree < q + 1:
            raise ScenarioError("sign_identity needs degree >= codim + 1")
        checked = attempts = 0
        max_residual = Fraction(0)
        while checked < count:
            attempts += 1
            terms: list = []
            for _ in range(n_terms):
                base = tuple(self.rng.randint(-box, box) for _ in range(space.dim))
                tup = tuple(
                    tuple(b + self.rng.randint(-spread, spread) for b in base)
                    for _ in range(degree + 1)
                )
                coeff = self.rng.choice([-2, -1, 1, 2])
                terms.append((tup, 1 if self.group.name == "Z/2" else coeff))
            chain = UfChain(degree, space, self.group, terms)
            try:
                residual = sign_identity_residual(chain, ctx)
            except DegeneratePosition:
                if self.perturb:
                    raise
                continue
            norm = uf_norm(residual, 0)
            if norm > max_residual:
                max_residual = norm
            checked += 1
        return {
            "chains": checked,
            "attempts": attempts,
            "max_residual_sup_norm": _frac_str(max_residual),
        }


def run_scenario(source: str | Path) -> dict:
    return ScenarioRun(load_scenario(source)).run()
