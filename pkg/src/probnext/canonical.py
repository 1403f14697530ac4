"""Computable canonical-model toolkit: staged saturated-set prefixes, the
disagreement ultrametric, kernel value bounds, the basis intersection
function and the satisfaction function.

A prefix is built by the staged completion procedure: stage l decides the
l-th enumerated formula by the derivability oracle, adding the formula or
its negation, with a special case for next-prefixed probability-bound
stacks where a strictly smaller witness bound is refuted as well (its
existence is guaranteed by the generalized Archimedean rule).

Membership queries beyond the built budget are answered exactly whenever
the current stage set already entails the formula or its negation (this
provably agrees with the staged bit), and otherwise by actually running
the remaining stages -- but only up to a configurable extension cap,
because stage indices grow exponentially with formula size.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .decide import sat_status
from .enumeration import (
    class_count,
    enum_formula,
    enum_rational,
    formula_index,
    weight,
)
from .formula import And, AtLeast, Formula, Next, Not
from .parser import parse, render


class InconsistentSeed(ValueError):
    pass


class ExtensionLimitExceeded(RuntimeError):
    """Deciding the query needs more construction stages than allowed."""


@dataclass(frozen=True)
class Interval:
    lower: Fraction
    upper: Fraction


@dataclass(frozen=True)
class StageRecord:
    index: int
    case: int  # 1 = derivable, 2 = negation added, 3 = negation + witness bound
    formula: Formula
    extra: Optional[Formula] = None


def _bound_stack_pattern(f: Formula):
    """Decompose ◯^n L_{r1} ... L_{rk} L_r theta with a maximal bound stack
    (theta not bound-rooted); returns (n, outer_indices, r, theta) or None."""
    steps = 0
    while isinstance(f, Next):
        steps += 1
        f = f.body
    indices = []
    while isinstance(f, AtLeast):
        indices.append(f.bound)
        f = f.body
    if not indices:
        return None
    return steps, tuple(indices[:-1]), indices[-1], f


def _rebuild_stack(steps: int, outer, bound: Fraction, theta: Formula) -> Formula:
    f = AtLeast(bound, theta)
    for r in reversed(outer):
        f = AtLeast(r, f)
    for _ in range(steps):
        f = Next(f)
    return f


class SaturatedPrefix:
    """Finite decided initial segment of a computable saturated set."""

    def __init__(self, seed: Formula, max_extension: int = 4096):
        if not sat_status(seed):
            raise InconsistentSeed(render(seed))
        self.seed = seed
        self.budget = 0
        self.decided: list[bool] = []
        self.extras: list[Formula] = []
        self.stage_log: list[StageRecord] = []
        self.max_extension = max_extension
        # running conjunction of the stage set; extended left-nested so the
        # memoized DNF of each prefix is reused across stages
        self._gamma: Formula = seed

    # -- staged construction ------------------------------------------------

    def _entails(self, f: Formula) -> bool:
        return not sat_status(And(self._gamma, Not(f)))

    def extend(self, budget: int) -> "SaturatedPrefix":
        for l in range(self.budget, budget):
            f = enum_formula(l)
            if self._entails(f):
                self.decided.append(True)
                self.stage_log.append(StageRecord(l, 1, f))
                self._gamma = And(self._gamma, f)
            else:
                pattern = _bound_stack_pattern(f)
                if pattern is not None:
                    steps, outer, r, theta = pattern
                    extra = Not(self._witness_refutation(steps, outer, r, theta))
                    self.decided.append(False)
                    self.extras.append(extra)
                    self.stage_log.append(StageRecord(l, 3, f, extra))
                    self._gamma = And(And(self._gamma, Not(f)), extra)
                else:
                    self.decided.append(False)
                    self.stage_log.append(StageRecord(l, 2, f))
                    self._gamma = And(self._gamma, Not(f))
        self.budget = max(self.budget, budget)
        return self

    def _witness_refutation(self, steps, outer, r, theta) -> Formula:
        """First bound s (in rational-enumeration order) with s < r whose
        stack is not derivable; exists because the stage set is consistent
        and does not derive the r-stack."""
        k = 0
        while True:
            s = enum_rational(k)
            if s < r and not self._entails(_rebuild_stack(steps, outer, s, theta)):
                return _rebuild_stack(steps, outer, s, theta)
            k += 1
            if k > 100_000:
                raise AssertionError("no witness bound found; stage set broken")

    # -- queries ------------------------------------------------------------

    def stage_set(self, upto: Optional[int] = None) -> list[Formula]:
        """The stage set after `upto` stages (default: all built stages)."""
        out = [self.seed]
        for rec in self.stage_log[: upto if upto is not None else self.budget]:
            out.append(rec.formula if rec.case == 1 else Not(rec.formula))
            if rec.extra is not None:
                out.append(rec.extra)
        return out

    def member(self, f: Formula) -> bool:
        """Whether f belongs to the saturated set this prefix approximates."""
        # fast path: agreement with the staged bit is guaranteed whenever the
        # current stage set decides f
        if self._entails(f):
            return True
        if self._entails(Not(f)):
            return False
        # exact path: run the remaining stages up to the formula's index
        w = weight(f)
        below = sum(class_count(n) for n in range(1, w))
        if below - self.budget > self.max_extension:
            raise ExtensionLimitExceeded(
                f"index of {render(f)} needs more than "
                f"{self.max_extension} further stages"
            )
        idx = formula_index(f)
        if idx - self.budget > self.max_extension:
            raise ExtensionLimitExceeded(
                f"index {idx} of {render(f)} exceeds the extension cap"
            )
        self.extend(idx + 1)
        return self.decided[idx]

    def member_or(self, f: Formula, default: bool = False) -> bool:
        """member(), with undecidable-within-cap queries mapped to default."""
        try:
            return self.member(f)
        except ExtensionLimitExceeded:
            return default


def lindenbaum(seed: Formula, budget: int, max_extension: int = 4096) -> SaturatedPrefix:
    """Run the staged construction for `budget` stages from a consistent seed."""
    return SaturatedPrefix(seed, max_extension).extend(budget)


@dataclass(frozen=True)
class Distance:
    """d_c query result: exact value, or only an upper bound at this budget."""

    exact: bool
    value: Fraction


def metric_dc(w1: SaturatedPrefix, w2: SaturatedPrefix, budget: int) -> Distance:
    """First-disagreement distance 2^-n0, scanning indices below `budget`."""
    w1.extend(budget)
    w2.extend(budget)
    for n in range(budget):
        if w1.decided[n] != w2.decided[n]:
            return Distance(True, Fraction(1, 2**n))
    return Distance(False, Fraction(1, 2**budget))


def kernel_bounds(w: SaturatedPrefix, f: Formula, grid: int) -> Interval:
    """Rational-grid bracket of the canonical kernel value of [f] at w.

    Queries the prefix on the grid bounds m/grid; queries that cannot be
    decided within the extension cap are treated as non-members, which can
    only widen the bracket (the true value always lies inside it).
    """
    lower = Fraction(0)
    for m in range(grid, -1, -1):
        r = Fraction(m, grid)
        if w.member_or(AtLeast(r, f)):
            lower = r
            break
    upper = Fraction(1)
    for m in range(grid + 1):
        r = Fraction(m, grid)
        if w.member_or(Not(AtLeast(r, f))):
            upper = r
            break
    return Interval(lower, max(lower, upper))


class NotFoundWithinBound(RuntimeError):
    def __init__(self, bound: int):
        self.bound = bound
        super().__init__(f"no equivalent formula below index {bound}")


def basis_intersection(i: int, j: int, search_bound: int) -> int:
    """Least l below the bound with phi_l provably equivalent to
    phi_i & phi_j."""
    target = And(enum_formula(i), enum_formula(j))
    for l in range(search_bound):
        candidate = enum_formula(l)
        if not sat_status(And(candidate, Not(target))) and not sat_status(
            And(target, Not(candidate))
        ):
            return l
    raise NotFoundWithinBound(search_bound)


def sat_function(w: SaturatedPrefix, i: int) -> int:
    """Canonical-model satisfaction bit of the i-th formula at w."""
    return 1 if w.member(enum_formula(i)) else 0


# -- serialization ----------------------------------------------------------


def prefix_to_dict(w: SaturatedPrefix) -> dict:
    return {
        "seed": render(w.seed),
        "budget": w.budget,
        "decided": [1 if bit else 0 for bit in w.decided],
        "extras": [render(f) for f in w.extras],
    }


def prefix_from_dict(data: dict, max_extension: int = 4096) -> SaturatedPrefix:
    """Rebuild by re-running the (deterministic) construction and checking
    the stored bits against it."""
    w = lindenbaum(parse(data["seed"]), data["budget"], max_extension)
    stored = [bool(b) for b in data["decided"]]
    if stored != w.decided:
        raise ValueError("stored bits disagree with the deterministic rebuild")
    return w


def save_prefix(w: SaturatedPrefix, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(prefix_to_dict(w), fh, indent=2)


def load_prefix(path: str) -> SaturatedPrefix:
    with open(path) as fh:
        return prefix_from_dict(json.load(fh))
