"""Deterministic enumerations of rationals in [0, 1] and of all formulas.

The rational enumeration walks the Calkin-Wilf sequence and keeps the
values below 1, with 0 and 1 placed first.  The formula enumeration
orders formulas by a weighted symbol count and breaks ties
lexicographically over the prefix (Polish) spelling with the symbol
order  not < and < atleast < next < p0 < p1 < ...

Weights (documented contract; a plain symbol count would leave each
size class infinite and no size-then-lex bijection with the naturals
would exist):

    weight(p_i)          = i + 1
    weight(!f) = weight(X f) = 1 + weight(f)
    weight(f & g)        = 1 + weight(f) + weight(g)
    weight(L[r] f)       = 1 + rational_index(r) + weight(f)

Both enumerations are total bijections and are deterministic across
runs and platforms.
"""

from __future__ import annotations

from fractions import Fraction

from .formula import And, AtLeast, Formula, Next, Not, Prop

_RATIONALS: list[Fraction] = [Fraction(0), Fraction(1)]
_RATIONAL_INDEX: dict[Fraction, int] = {Fraction(0): 0, Fraction(1): 1}
_CW_STATE = [Fraction(1)]  # last emitted Calkin-Wilf value


def _extend_rationals() -> None:
    q = _CW_STATE[0]
    while True:
        q = 1 / (2 * (q.numerator // q.denominator) - q + 1)
        if q < 1:
            break
    _CW_STATE[0] = q
    _RATIONAL_INDEX[q] = len(_RATIONALS)
    _RATIONALS.append(q)


def enum_rational(i: int) -> Fraction:
    """The i-th rational of the fixed enumeration of Q in [0, 1]."""
    if i < 0:
        raise ValueError("index must be a natural")
    while len(_RATIONALS) <= i:
        _extend_rationals()
    return _RATIONALS[i]


def rational_index(r) -> int:
    """Position of r in the fixed enumeration (inverse of enum_rational)."""
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise ValueError(f"{r} outside [0, 1]")
    while r not in _RATIONAL_INDEX:
        _extend_rationals()
    return _RATIONAL_INDEX[r]


def weight(f: Formula) -> int:
    if isinstance(f, Prop):
        return f.index + 1
    if isinstance(f, (Not, Next)):
        return 1 + weight(f.body)
    if isinstance(f, And):
        return 1 + weight(f.left) + weight(f.right)
    if isinstance(f, AtLeast):
        return 1 + rational_index(f.bound) + weight(f.body)
    raise TypeError(f"not a formula: {f!r}")


def sort_key(f: Formula) -> tuple[int, ...]:
    """Flattened prefix spelling used for the lexicographic tie break."""
    out: list[int] = []

    def emit(g: Formula) -> None:
        if isinstance(g, Not):
            out.append(0)
            emit(g.body)
        elif isinstance(g, And):
            out.append(1)
            emit(g.left)
            emit(g.right)
        elif isinstance(g, AtLeast):
            out.append(2)
            out.append(rational_index(g.bound))
            emit(g.body)
        elif isinstance(g, Next):
            out.append(3)
            emit(g.body)
        else:
            out.append(4 + g.index)

    emit(f)
    return tuple(out)


_CLASSES: dict[int, list[Formula]] = {}
_COUNTS: dict[int, int] = {}


def class_count(n: int) -> int:
    """Number of formulas of weight n, computed without materializing them."""
    if n < 1:
        return 0
    if n not in _COUNTS:
        total = 1  # the proposition p_{n-1}
        total += 2 * class_count(n - 1)  # negation and next
        total += sum(class_count(m) for m in range(1, n))  # probability bounds
        total += sum(class_count(k) * class_count(n - 1 - k) for k in range(1, n - 1))
        _COUNTS[n] = total
    return _COUNTS[n]


def _weight_class(n: int) -> list[Formula]:
    if n < 1:
        return []
    if n not in _CLASSES:
        out: list[Formula] = [Prop(n - 1)]
        for sub in _weight_class(n - 1):
            out.append(Not(sub))
            out.append(Next(sub))
        for j in range(n - 1):
            r = enum_rational(j)
            for sub in _weight_class(n - 1 - j):
                out.append(AtLeast(r, sub))
        for k in range(1, n - 1):
            rights = _weight_class(n - 1 - k)
            for a in _weight_class(k):
                for b in rights:
                    out.append(And(a, b))
        out.sort(key=sort_key)
        _CLASSES[n] = out
    return _CLASSES[n]


def enum_formula(i: int) -> Formula:
    """The i-th formula of the fixed enumeration."""
    if i < 0:
        raise ValueError("index must be a natural")
    n = 1
    while True:
        c = class_count(n)
        if i < c:
            return _weight_class(n)[i]
        i -= c
        n += 1


def formula_index(f: Formula) -> int:
    """Position of f in the fixed enumeration (inverse of enum_formula)."""
    w = weight(f)
    base = sum(class_count(n) for n in range(1, w))
    cls = _weight_class(w)
    lo, hi = 0, len(cls)
    key = sort_key(f)
    while lo < hi:
        mid = (lo + hi) // 2
        if sort_key(cls[mid]) < key:
            lo = mid + 1
        else:
            hi = mid
    if lo >= len(cls) or cls[lo] != f:
        raise ValueError(f"formula not found in its weight class: {f!r}")
    return base + lo
