"""Axiom-scheme recognition, finitary Hilbert-derivation checking, and the
semantic derivability oracle.

Derivability from a finite hypothesis set is decided through the decision
procedure (soundness plus weak completeness make the two coincide), so no
proof search is ever performed.  The two infinitary rules are not
representable as checkable steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional

from .decide import sat_status, valid
from .enumeration import enum_formula
from .formula import And, AtLeast, Formula, Next, Not, conj, implies
from .parser import parse


# ---------------------------------------------------------------------------
# Pattern helpers over the desugared core grammar


def match_implies(f: Formula) -> Optional[tuple[Formula, Formula]]:
    """a -> b is encoded as !(a & !b)."""
    if (
        isinstance(f, Not)
        and isinstance(f.body, And)
        and isinstance(f.body.right, Not)
    ):
        return f.body.left, f.body.right.body
    return None


def match_iff(f: Formula) -> Optional[tuple[Formula, Formula]]:
    """a <-> b is encoded as (a -> b) & (b -> a)."""
    if not isinstance(f, And):
        return None
    fwd = match_implies(f.left)
    bwd = match_implies(f.right)
    if fwd and bwd and fwd == (bwd[1], bwd[0]):
        return fwd
    return None


# ---------------------------------------------------------------------------
# Axiom schemes


def _boolean_atoms(f: Formula, acc: list[Formula]) -> None:
    # maximal subformulas that are not boolean combinations
    if isinstance(f, Not):
        _boolean_atoms(f.body, acc)
    elif isinstance(f, And):
        _boolean_atoms(f.left, acc)
        _boolean_atoms(f.right, acc)
    elif f not in acc:
        acc.append(f)


def _eval_boolean(f: Formula, env: dict[Formula, bool]) -> bool:
    if isinstance(f, Not):
        return not _eval_boolean(f.body, env)
    if isinstance(f, And):
        return _eval_boolean(f.left, env) and _eval_boolean(f.right, env)
    return env[f]


def is_tautology(f: Formula) -> bool:
    atoms: list[Formula] = []
    _boolean_atoms(f, atoms)
    for values in product((False, True), repeat=len(atoms)):
        if not _eval_boolean(f, dict(zip(atoms, values))):
            return False
    return True


def _is_fa1(f: Formula) -> bool:
    # L_0 applied to the canonical bottom shape (a & !a)
    return (
        isinstance(f, AtLeast)
        and f.bound == 0
        and isinstance(f.body, And)
        and isinstance(f.body.right, Not)
        and f.body.left == f.body.right.body
    )


def _is_fa2(f: Formula) -> bool:
    m = match_implies(f)
    if not m:
        return False
    left, right = m
    if not (isinstance(left, AtLeast) and isinstance(left.body, Not)):
        return False
    if not (isinstance(right, Not) and isinstance(right.body, AtLeast)):
        return False
    return (
        left.body.body == right.body.body
        and left.bound + right.body.bound > 1
    )


def _split_additivity(f: Formula):
    """Common shape of the two finite-additivity schemes:
    (L_r(a & b) & L_s(a & !b), L_{r+s} a)  with r + s <= 1."""
    m = match_implies(f)
    if not m:
        return None
    left, right = m
    if not isinstance(left, And):
        return None
    return left.left, left.right, right


def _additivity_parts(c1: Formula, c2: Formula, concl: Formula) -> bool:
    if not (
        isinstance(c1, AtLeast)
        and isinstance(c2, AtLeast)
        and isinstance(concl, AtLeast)
    ):
        return False
    if not (isinstance(c1.body, And) and isinstance(c2.body, And)):
        return False
    if not isinstance(c2.body.right, Not):
        return False
    same_a = c1.body.left == c2.body.left == concl.body
    same_b = c1.body.right == c2.body.right.body
    return (
        same_a
        and same_b
        and c1.bound + c2.bound <= 1
        and concl.bound == c1.bound + c2.bound
    )


def _is_fa3(f: Formula) -> bool:
    parts = _split_additivity(f)
    return parts is not None and _additivity_parts(*parts)


def _is_fa4(f: Formula) -> bool:
    parts = _split_additivity(f)
    if parts is None:
        return False
    c1, c2, concl = parts
    if not (
        isinstance(c1, Not) and isinstance(c2, Not) and isinstance(concl, Not)
    ):
        return False
    return _additivity_parts(c1.body, c2.body, concl.body)


def _is_mono(f: Formula) -> bool:
    m = match_implies(f)
    if not m:
        return False
    left, right = m
    if not (isinstance(left, AtLeast) and left.bound == 1):
        return False
    inner = match_implies(left.body)
    outer = match_implies(right)
    if not (inner and outer):
        return False
    a, b = inner
    la, lb = outer
    return (
        isinstance(la, AtLeast)
        and isinstance(lb, AtLeast)
        and la.bound == lb.bound
        and la.body == a
        and lb.body == b
    )


def _is_func(f: Formula) -> bool:
    m = match_iff(f)
    if not m:
        return False
    left, right = m
    return (
        isinstance(left, Next)
        and isinstance(left.body, Not)
        and isinstance(right, Not)
        and isinstance(right.body, Next)
        and left.body.body == right.body.body
    )


def _is_conj(f: Formula) -> bool:
    m = match_iff(f)
    if not m:
        return False
    left, right = m
    return (
        isinstance(left, Next)
        and isinstance(left.body, And)
        and isinstance(right, And)
        and isinstance(right.left, Next)
        and isinstance(right.right, Next)
        and left.body.left == right.left.body
        and left.body.right == right.right.body
    )


_SCHEMES = (
    ("Taut", is_tautology),
    ("FA1", _is_fa1),
    ("FA2", _is_fa2),
    ("FA3", _is_fa3),
    ("FA4", _is_fa4),
    ("Mono", _is_mono),
    ("Func", _is_func),
    ("Conj", _is_conj),
)

SCHEME_NAMES = tuple(name for name, _ in _SCHEMES)


def axiom_instance(f: Formula) -> Optional[str]:
    """Name of the first axiom scheme matching f, if any."""
    for name, matcher in _SCHEMES:
        if matcher(f):
            return name
    return None


def matches_scheme(f: Formula, name: str) -> bool:
    for scheme, matcher in _SCHEMES:
        if scheme == name:
            return matcher(f)
    raise ValueError(f"unknown axiom scheme {name!r}")


# ---------------------------------------------------------------------------
# Derivations


@dataclass(frozen=True)
class Justification:
    kind: str  # "axiom" | "mp" | "nec_l1" | "nec_next" | "hyp"
    scheme: Optional[str] = None
    refs: tuple[int, ...] = ()


@dataclass(frozen=True)
class Derivation:
    steps: tuple[tuple[Formula, Justification], ...]
    hypotheses: Optional[frozenset[Formula]] = None  # None = theorem mode


@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    step: Optional[int] = None
    reason: Optional[str] = None


def check_derivation(d: Derivation) -> CheckResult:
    from_hypotheses = d.hypotheses is not None
    for idx, (formula, just) in enumerate(d.steps):
        earlier = [f for f, _ in d.steps[:idx]]
        if any(r >= idx for r in just.refs):
            return CheckResult(False, idx, "reference to a later step")
        if just.kind == "axiom":
            if just.scheme not in SCHEME_NAMES:
                return CheckResult(False, idx, f"unknown scheme {just.scheme}")
            if not matches_scheme(formula, just.scheme):
                return CheckResult(
                    False, idx, f"not an instance of {just.scheme}"
                )
        elif just.kind == "mp":
            if len(just.refs) != 2:
                return CheckResult(False, idx, "mp needs two premises")
            i, j = just.refs
            m = match_implies(earlier[i])
            if m is None:
                return CheckResult(False, idx, f"step {i} is not an implication")
            if m != (earlier[j], formula):
                return CheckResult(False, idx, "mp premises do not match")
        elif just.kind in ("nec_l1", "nec_next"):
            if from_hypotheses:
                return CheckResult(
                    False, idx, "necessitation is forbidden under hypotheses"
                )
            if len(just.refs) != 1:
                return CheckResult(False, idx, "necessitation needs one premise")
            (i,) = just.refs
            if just.kind == "nec_l1":
                expected = AtLeast(Fraction(1), earlier[i])
            else:
                expected = Next(earlier[i])
            if formula != expected:
                return CheckResult(False, idx, f"{just.kind} shape mismatch")
        elif just.kind == "hyp":
            if not from_hypotheses or formula not in d.hypotheses:
                return CheckResult(False, idx, "not a hypothesis")
        else:
            return CheckResult(False, idx, f"unknown justification {just.kind}")
    return CheckResult(True)


def parse_derivation(text: str, hypotheses=None) -> Derivation:
    """Line-oriented format: one "formula ; justification" per line, with
    justifications  axiom:<name>  mp:<i>,<j>  nec_l1:<i>  nec_next:<i>  hyp."""
    steps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        formula_text, sep, just_text = line.rpartition(";")
        if not sep:
            raise ValueError(f"line {lineno}: missing ';'")
        formula = parse(formula_text.strip())
        just_text = just_text.strip()
        kind, _, arg = just_text.partition(":")
        kind = kind.strip()
        if kind == "axiom":
            just = Justification("axiom", scheme=arg.strip())
        elif kind == "mp":
            i, j = (int(x) for x in arg.split(","))
            just = Justification("mp", refs=(i, j))
        elif kind in ("nec_l1", "nec_next"):
            just = Justification(kind, refs=(int(arg),))
        elif kind == "hyp":
            just = Justification("hyp")
        else:
            raise ValueError(f"line {lineno}: unknown justification {just_text!r}")
        steps.append((formula, just))
    hyp_set = None if hypotheses is None else frozenset(hypotheses)
    return Derivation(tuple(steps), hyp_set)


# ---------------------------------------------------------------------------
# Derivability oracle and the computable index sets


def derives(gamma, f: Formula) -> bool:
    """Finite-hypothesis derivability, decided semantically."""
    gamma = list(gamma)
    if not gamma:
        return valid(f)
    return valid(implies(conj(gamma), f))


def computable_sets(i: int, j: int) -> tuple[bool, bool, bool]:
    """(phi_i is a theorem, phi_i is consistent, phi_i derives phi_j)."""
    fi = enum_formula(i)
    fj = enum_formula(j)
    return valid(fi), sat_status(fi), derives([fi], fj)
