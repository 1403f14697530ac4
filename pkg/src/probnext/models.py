"""Finite dynamic Markov models: checking, validation, (de)serialization
and seeded random generation for refutation searches.

The state space is finite and the sigma-algebra is the full powerset, so
every measurability condition is automatic.  Kernel entries are exact
rationals and each row must sum to exactly 1.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .formula import And, AtLeast, Formula, Next, Not, Prop


class UnknownWorld(KeyError):
    pass


@dataclass
class FiniteDMM:
    worlds: list[str]
    valuation: dict[int, set[str]] = field(default_factory=dict)
    kernel: dict[str, dict[str, Fraction]] = field(default_factory=dict)
    successor: dict[str, str] = field(default_factory=dict)

    def extension(self, f: Formula, _cache: dict | None = None) -> frozenset[str]:
        """Worlds where f holds."""
        if _cache is None:
            _cache = {}
        if f in _cache:
            return _cache[f]
        if isinstance(f, Prop):
            result = frozenset(self.valuation.get(f.index, set()))
        elif isinstance(f, Not):
            result = frozenset(self.worlds) - self.extension(f.body, _cache)
        elif isinstance(f, And):
            result = self.extension(f.left, _cache) & self.extension(f.right, _cache)
        elif isinstance(f, AtLeast):
            body_ext = self.extension(f.body, _cache)
            result = frozenset(
                w
                for w in self.worlds
                if sum(
                    (m for u, m in self.kernel.get(w, {}).items() if u in body_ext),
                    Fraction(0),
                )
                >= f.bound
            )
        elif isinstance(f, Next):
            body_ext = self.extension(f.body, _cache)
            result = frozenset(w for w in self.worlds if self.successor[w] in body_ext)
        else:
            raise TypeError(f"not a formula: {f!r}")
        _cache[f] = result
        return result

    def check(self, world: str, f: Formula) -> bool:
        if world not in self.worlds:
            raise UnknownWorld(world)
        return world in self.extension(f)

    def validate(self) -> list[str]:
        """Empty list when the model is well formed, else diagnostics."""
        problems = []
        world_set = set(self.worlds)
        if len(world_set) != len(self.worlds):
            problems.append("duplicate world ids")
        for w in self.worlds:
            row = self.kernel.get(w)
            if row is None:
                problems.append(f"missing kernel row for {w}")
                continue
            mass = Fraction(0)
            for u, m in row.items():
                if u not in world_set:
                    problems.append(f"kernel row {w} targets unknown world {u}")
                if m < 0:
                    problems.append(f"negative mass {m} in row {w}")
                mass += m
            if mass != 1:
                problems.append(f"row mass {mass} != 1 in row {w}")
        for w in self.worlds:
            succ = self.successor.get(w)
            if succ is None:
                problems.append(f"missing successor for {w}")
            elif succ not in world_set:
                problems.append(f"successor of {w} is unknown world {succ}")
        for p, ws in self.valuation.items():
            for w in ws:
                if w not in world_set:
                    problems.append(f"valuation of p{p} contains unknown world {w}")
        return problems


def random_model(seed: int, n_worlds: int, n_props: int, denom_bound: int) -> FiniteDMM:
    """Deterministic-in-seed random model that always validates."""
    if n_worlds < 1:
        raise ValueError("need at least one world")
    rng = random.Random(seed)
    worlds = [f"w{i}" for i in range(n_worlds)]
    valuation = {
        p: {w for w in worlds if rng.random() < 0.5} for p in range(n_props)
    }
    kernel = {}
    for w in worlds:
        denom = rng.randint(1, denom_bound)
        counts = [0] * n_worlds
        for _ in range(denom):
            counts[rng.randrange(n_worlds)] += 1
        kernel[w] = {
            worlds[i]: Fraction(c, denom) for i, c in enumerate(counts) if c
        }
    successor = {w: rng.choice(worlds) for w in worlds}
    return FiniteDMM(worlds, valuation, kernel, successor)


def _fraction_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _fraction_from_str(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den)) if den else Fraction(int(num))


def model_to_dict(m: FiniteDMM) -> dict:
    return {
        "worlds": list(m.worlds),
        "valuation": {
            f"p{p}": sorted(ws) for p, ws in sorted(m.valuation.items()) if ws
        },
        "kernel": {
            w: {u: _fraction_to_str(mass) for u, mass in sorted(row.items())}
            for w, row in m.kernel.items()
        },
        "successor": dict(m.successor),
    }


def model_from_dict(data: dict) -> FiniteDMM:
    valuation = {
        int(p.lstrip("p")): set(ws) for p, ws in data.get("valuation", {}).items()
    }
    kernel = {
        w: {u: _fraction_from_str(s) for u, s in row.items()}
        for w, row in data.get("kernel", {}).items()
    }
    return FiniteDMM(
        worlds=list(data["worlds"]),
        valuation=valuation,
        kernel=kernel,
        successor=dict(data.get("successor", {})),
    )


def save_model(m: FiniteDMM, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(model_to_dict(m), fh, indent=2)


def load_model(path: str) -> FiniteDMM:
    with open(path) as fh:
        return model_from_dict(json.load(fh))
