"""Exact-rational linear constraint systems and Fourier-Motzkin elimination.

Constraints are kept in the normalized forms  term >= 0,  term > 0  and
term = 0;  "<=" and "<" are represented by negating the term.  All
arithmetic is closed over `fractions.Fraction` -- no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional


class Rel(Enum):
    GE = ">= 0"
    GT = "> 0"
    EQ = "= 0"


@dataclass(frozen=True)
class LinearTerm:
    """Sum of coeff * var plus a constant; zero coefficients are not stored."""

    coeffs: tuple[tuple[int, Fraction], ...]
    constant: Fraction

    @staticmethod
    def make(coeffs: dict[int, Fraction], constant=Fraction(0)) -> "LinearTerm":
        items = tuple(
            sorted((v, Fraction(c)) for v, c in coeffs.items() if c != 0)
        )
        return LinearTerm(items, Fraction(constant))

    def coeff(self, var: int) -> Fraction:
        for v, c in self.coeffs:
            if v == var:
                return c
        return Fraction(0)

    def scale(self, k: Fraction) -> "LinearTerm":
        if k == 0:
            return LinearTerm((), Fraction(0))
        return LinearTerm(
            tuple((v, c * k) for v, c in self.coeffs), self.constant * k
        )

    def add(self, other: "LinearTerm") -> "LinearTerm":
        acc = dict(self.coeffs)
        for v, c in other.coeffs:
            s = acc.get(v, Fraction(0)) + c
            if s == 0:
                acc.pop(v, None)
            else:
                acc[v] = s
        return LinearTerm(tuple(sorted(acc.items())), self.constant + other.constant)

    def drop(self, var: int) -> "LinearTerm":
        return LinearTerm(
            tuple((v, c) for v, c in self.coeffs if v != var), self.constant
        )

    def is_constant(self) -> bool:
        return not self.coeffs

    def evaluate(self, assignment: dict[int, Fraction]) -> Fraction:
        return self.constant + sum(
            (c * assignment[v] for v, c in self.coeffs), Fraction(0)
        )

    def __str__(self):
        parts = [f"{c}*x{v}" for v, c in self.coeffs]
        parts.append(str(self.constant))
        return " + ".join(parts)


@dataclass(frozen=True)
class Constraint:
    term: LinearTerm
    relation: Rel

    def canonical(self) -> "Constraint":
        """Scale so the leading coefficient has absolute value 1 (for dedup)."""
        if not self.term.coeffs:
            return self
        lead = abs(self.term.coeffs[0][1])
        if lead == 1:
            return self
        return Constraint(self.term.scale(1 / lead), self.relation)

    def __str__(self):
        return f"{self.term} {self.relation.value}"


@dataclass
class LinearSystem:
    constraints: list[Constraint] = field(default_factory=list)
    num_vars: int = 0

    def variables(self) -> set[int]:
        return {v for c in self.constraints for v, _ in c.term.coeffs}

    def dump(self) -> str:
        """Debug dump; format is non-contractual."""
        lines = [f"vars: {self.num_vars}"]
        lines.extend(str(c) for c in self.constraints)
        return "\n".join(lines)


def ge(coeffs: dict[int, Fraction], constant=Fraction(0)) -> Constraint:
    return Constraint(LinearTerm.make(coeffs, constant), Rel.GE)


def gt(coeffs: dict[int, Fraction], constant=Fraction(0)) -> Constraint:
    return Constraint(LinearTerm.make(coeffs, constant), Rel.GT)


def eq(coeffs: dict[int, Fraction], constant=Fraction(0)) -> Constraint:
    return Constraint(LinearTerm.make(coeffs, constant), Rel.EQ)


def _constant_holds(c: Constraint) -> bool:
    k = c.term.constant
    if c.relation is Rel.GE:
        return k >= 0
    if c.relation is Rel.GT:
        return k > 0
    return k == 0


def _tidy(constraints) -> list[Constraint]:
    """Drop constant-true constraints and exact duplicates."""
    out = []
    seen = set()
    for c in constraints:
        if c.term.is_constant() and _constant_holds(c):
            continue
        canon = c.canonical()
        key = (canon.term, canon.relation)
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    return out


def _substitute(constraints, var: int, expr: LinearTerm) -> list[Constraint]:
    out = []
    for c in constraints:
        a = c.term.coeff(var)
        if a == 0:
            out.append(c)
        else:
            out.append(Constraint(c.term.drop(var).add(expr.scale(a)), c.relation))
    return out


def _solve_equality_for(c: Constraint, var: int) -> LinearTerm:
    """From term = 0 containing var, return the expression equal to var."""
    a = c.term.coeff(var)
    return c.term.drop(var).scale(-1 / a)


def eliminate(system: LinearSystem, var: int) -> LinearSystem:
    """Project `var` out; the result is feasible iff the input is."""
    rest, eqs_with_var = [], []
    for c in system.constraints:
        if c.relation is Rel.EQ and c.term.coeff(var) != 0:
            eqs_with_var.append(c)
        else:
            rest.append(c)

    if eqs_with_var:
        expr = _solve_equality_for(eqs_with_var[0], var)
        new = _substitute(rest + eqs_with_var[1:], var, expr)
        return LinearSystem(_tidy(new), system.num_vars)

    keep, lowers, uppers = [], [], []
    for c in system.constraints:
        a = c.term.coeff(var)
        if a == 0:
            keep.append(c)
        elif a > 0:
            lowers.append(c)  # var >= -(rest)/a  (or strict)
        else:
            uppers.append(c)
    for lo in lowers:
        a = lo.term.coeff(var)
        lo_scaled = lo.term.scale(1 / a)
        for up in uppers:
            b = up.term.coeff(var)
            combined = lo_scaled.add(up.term.scale(-1 / b)).drop(var)
            strict = lo.relation is Rel.GT or up.relation is Rel.GT
            keep.append(Constraint(combined, Rel.GT if strict else Rel.GE))
    return LinearSystem(_tidy(keep), system.num_vars)


def feasible(system: LinearSystem) -> bool:
    """Decide whether a rational point satisfies every constraint."""
    sys_ = LinearSystem(_tidy(system.constraints), system.num_vars)
    while True:
        for c in sys_.constraints:
            if c.term.is_constant() and not _constant_holds(c):
                return False
        remaining = sys_.variables()
        if not remaining:
            return True
        # cheapest-first heuristic: smallest lower*upper pairing product
        def cost(v: int) -> int:
            lo = hi = 0
            for c in sys_.constraints:
                a = c.term.coeff(v)
                if c.relation is Rel.EQ and a != 0:
                    return -1
                if a > 0:
                    lo += 1
                elif a < 0:
                    hi += 1
            return lo * hi

        var = min(remaining, key=cost)
        sys_ = eliminate(sys_, var)


def solve(system: LinearSystem) -> Optional[dict[int, Fraction]]:
    """A satisfying rational point, or None when infeasible.

    Variables are eliminated in ascending id order; back-substitution
    assigns each variable the midpoint of its residual interval (one-sided
    bounds: bound +- 1; no bounds: 0), which lands strictly inside open
    intervals so strict constraints are always respected.
    """
    order = sorted(system.variables())
    sys_ = LinearSystem(_tidy(system.constraints), system.num_vars)
    trace = []
    for var in order:
        eq_c = next(
            (
                c
                for c in sys_.constraints
                if c.relation is Rel.EQ and c.term.coeff(var) != 0
            ),
            None,
        )
        if eq_c is not None:
            trace.append(("eq", var, _solve_equality_for(eq_c, var)))
        else:
            lowers, uppers = [], []
            for c in sys_.constraints:
                a = c.term.coeff(var)
                if a > 0:
                    lowers.append((c.term.scale(-1 / a).drop(var), c.relation))
                elif a < 0:
                    uppers.append((c.term.scale(-1 / a).drop(var), c.relation))
            trace.append(("ineq", var, lowers, uppers))
        sys_ = eliminate(sys_, var)
    if not feasible(sys_):
        return None

    assignment: dict[int, Fraction] = {}
    for entry in reversed(trace):
        if entry[0] == "eq":
            _, var, expr = entry
            assignment[var] = expr.evaluate(assignment)
        else:
            _, var, lowers, uppers = entry
            lo = max((e.evaluate(assignment) for e, _ in lowers), default=None)
            hi = min((e.evaluate(assignment) for e, _ in uppers), default=None)
            if lo is not None and hi is not None:
                assignment[var] = (lo + hi) / 2
            elif lo is not None:
                assignment[var] = lo + 1
            elif hi is not None:
                assignment[var] = hi - 1
            else:
                assignment[var] = Fraction(0)
    return assignment


def satisfies(system: LinearSystem, assignment: dict[int, Fraction]) -> bool:
    """Exact substitution check."""
    for c in system.constraints:
        value = c.term.evaluate(assignment)
        if c.relation is Rel.GE and not value >= 0:
            return False
        if c.relation is Rel.GT and not value > 0:
            return False
        if c.relation is Rel.EQ and value != 0:
            return False
    return True
