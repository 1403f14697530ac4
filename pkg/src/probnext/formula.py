"""Abstract syntax for probability-next formulas.

The core grammar has five constructors: propositional variables,
negation, conjunction, the probability bound operator ("the probability
of the body is at least r") and the next-time operator.  Everything
else (disjunction, implication, the dual "at most" operator, the
constants) is desugared into this core by the parser.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm


class IndexOutOfRange(ValueError):
    """Probability index outside [0, 1]."""


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Prop(Formula):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("proposition ids are naturals")


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class AtLeast(Formula):
    """Probability of `body` is at least `bound`."""

    bound: Fraction
    body: Formula

    def __post_init__(self):
        bound = Fraction(self.bound)
        if not 0 <= bound <= 1:
            raise IndexOutOfRange(f"probability index {bound} outside [0, 1]")
        object.__setattr__(self, "bound", bound)


@dataclass(frozen=True)
class Next(Formula):
    body: Formula


# Fixed encodings of the constants; the bottom constant must be expressible
# in the core grammar so that the L_0-bottom axiom has a concrete instance.
BOTTOM = And(Prop(0), Not(Prop(0)))
TOP = Not(BOTTOM)


def lor(a: Formula, b: Formula) -> Formula:
    return Not(And(Not(a), Not(b)))


def implies(a: Formula, b: Formula) -> Formula:
    return Not(And(a, Not(b)))


def iff(a: Formula, b: Formula) -> Formula:
    return And(implies(a, b), implies(b, a))


def at_most(bound, body: Formula) -> Formula:
    """The dual operator: probability of `body` is at most `bound`."""
    return AtLeast(1 - Fraction(bound), Not(body))


def conj(formulas) -> Formula:
    """Left fold of a non-empty iterable into a conjunction; TOP if empty."""
    it = iter(formulas)
    try:
        acc = next(it)
    except StopIteration:
        return TOP
    for f in it:
        acc = And(acc, f)
    return acc


def prob_depth(f: Formula) -> int:
    """Nesting depth of probability operators; negation and next are
    transparent."""
    if isinstance(f, Prop):
        return 0
    if isinstance(f, (Not, Next)):
        return prob_depth(f.body)
    if isinstance(f, And):
        return max(prob_depth(f.left), prob_depth(f.right))
    if isinstance(f, AtLeast):
        return prob_depth(f.body) + 1
    raise TypeError(f"not a formula: {f!r}")


def dyn_depth(f: Formula) -> int:
    """Nesting depth of next operators; negation and probability bounds are
    transparent."""
    if isinstance(f, Prop):
        return 0
    if isinstance(f, (Not, AtLeast)):
        return dyn_depth(f.body)
    if isinstance(f, And):
        return max(dyn_depth(f.left), dyn_depth(f.right))
    if isinstance(f, Next):
        return dyn_depth(f.body) + 1
    raise TypeError(f"not a formula: {f!r}")


def props_of(f: Formula) -> frozenset[int]:
    if isinstance(f, Prop):
        return frozenset((f.index,))
    if isinstance(f, (Not, Next, AtLeast)):
        return props_of(f.body)
    if isinstance(f, And):
        return props_of(f.left) | props_of(f.right)
    raise TypeError(f"not a formula: {f!r}")


def _index_denominators(f: Formula) -> set[int]:
    if isinstance(f, Prop):
        return set()
    if isinstance(f, (Not, Next)):
        return _index_denominators(f.body)
    if isinstance(f, And):
        return _index_denominators(f.left) | _index_denominators(f.right)
    if isinstance(f, AtLeast):
        return {f.bound.denominator} | _index_denominators(f.body)
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class LanguageProfile:
    """Finite-language parameters of a formula: occurring propositions,
    index accuracy (lcm of denominators), depth bounds and the index grid."""

    props: frozenset[int]
    accuracy: int
    prob_depth_bound: int
    dyn_depth_bound: int
    index_set: tuple[Fraction, ...]


def profile(f: Formula) -> LanguageProfile:
    denoms = _index_denominators(f)
    q = lcm(*denoms) if denoms else 1
    return LanguageProfile(
        props=props_of(f),
        accuracy=q,
        prob_depth_bound=prob_depth(f),
        dyn_depth_bound=dyn_depth(f),
        index_set=tuple(Fraction(m, q) for m in range(q + 1)),
    )
