"""Discrete Morse functions: validation, critical cells, gradient field,
sublevel complexes, filtrations, and the perfectness check.

Function values are exact rationals throughout; sublevel membership is
decided by exact comparison, never by floats.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .complexes import (SimplicialComplex, Simplex, betti_numbers, close_under_faces,
                        is_subcomplex)

Rational = Fraction | int | str


class NotMorseError(ValueError):
    """The function violates the discrete Morse conditions."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
        super().__init__(f"not a discrete Morse function: {lines}{more}")


@dataclass(frozen=True)
class MorseViolation:
    """One offending cell. kind is 'excess_cofacets', 'excess_facets', or
    'both_exceptional' (one exceptional relation on each side, flagged for
    diagnosis rather than silently resolved)."""

    cell: Simplex
    kind: str
    witnesses: tuple[Simplex, ...]

    def __str__(self):
        return f"{self.kind} at {tuple(self.cell)} (witnesses {[tuple(w) for w in self.witnesses]})"


class MorseFunction:
    """A total assignment of rational values to the cells of one complex."""

    __slots__ = ("complex", "_values")

    def __init__(self, complex: SimplicialComplex, values: Mapping[Simplex, Rational]):
        table = {}
        for s, v in values.items():
            s = s if isinstance(s, Simplex) else Simplex(s)
            table[s] = Fraction(v)
        missing = [s for s in complex.simplices() if s not in table]
        if missing:
            raise ValueError(f"function not total: no value for {tuple(missing[0])} "
                             f"(+{len(missing) - 1} more)")
        extra = [s for s in table if s not in complex]
        if extra:
            raise ValueError(f"value given for a simplex outside the complex: {tuple(extra[0])}")
        object.__setattr__(self, "complex", complex)
        object.__setattr__(self, "_values", table)

    def __setattr__(self, name, value):
        raise AttributeError("MorseFunction is immutable")

    def __call__(self, s: Simplex) -> Fraction:
        return self._values[s]

    def items(self):
        return [(s, self._values[s]) for s in self.complex.simplices()]

    @property
    def max_value(self) -> Fraction:
        return max(self._values.values())

    @property
    def min_value(self) -> Fraction:
        return min(self._values.values())

    def restrict(self, sub: SimplicialComplex) -> "MorseFunction":
        """Value restriction to a subcomplex.

        Restrictions are not re-validated; a warning is emitted if the result
        violates the Morse conditions on the subcomplex.
        """
        if not is_subcomplex(sub, self.complex):
            raise ValueError("can only restrict to a subcomplex")
        g = MorseFunction(sub, {s: self._values[s] for s in sub.simplices()})
        bad = validate_morse(sub, g)
        if bad:
            warnings.warn(f"restriction is not a Morse function on the subcomplex "
                          f"({len(bad)} violations)", stacklevel=2)
        return g


def _cofacet_table(K: SimplicialComplex) -> dict[Simplex, list[Simplex]]:
    table: dict[Simplex, list[Simplex]] = {s: [] for s in K.simplices()}
    for s in K.simplices():
        for f in s.facets():
            table[f].append(s)
    return table


def validate_morse(K: SimplicialComplex, f: MorseFunction) -> tuple[MorseViolation, ...]:
    """Check the two at-most-one conditions cell by cell; empty result means OK.

    A cell with exactly one exceptional facet and one exceptional cofacet is
    reported as its own violation class ('both_exceptional'); the exclusivity
    of the two conditions is surfaced, not assumed.
    """
    cofacets = _cofacet_table(K)
    violations = []
    for s in K.simplices():
        up = tuple(t for t in cofacets[s] if f(t) <= f(s))
        down = tuple(n for n in s.facets() if f(n) >= f(s))
        if len(up) > 1:
            violations.append(MorseViolation(s, "excess_cofacets", up))
        if len(down) > 1:
            violations.append(MorseViolation(s, "excess_facets", down))
        if len(up) == 1 and len(down) == 1:
            violations.append(MorseViolation(s, "both_exceptional", up + down))
    return tuple(violations)


def require_morse(K: SimplicialComplex, f: MorseFunction) -> None:
    bad = validate_morse(K, f)
    if bad:
        raise NotMorseError(bad)


def critical_cells(K: SimplicialComplex, f: MorseFunction) -> tuple[Simplex, ...]:
    """Cells with no exceptional facet and no exceptional cofacet."""
    require_morse(K, f)
    cofacets = _cofacet_table(K)
    out = []
    for s in K.simplices():
        if any(f(t) <= f(s) for t in cofacets[s]):
            continue
        if any(f(n) >= f(s) for n in s.facets()):
            continue
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class GradientField:
    """The pairing (regular cell, cofacet) induced by a discrete Morse function."""

    pairs: frozenset[tuple[Simplex, Simplex]]

    def cells(self) -> frozenset[Simplex]:
        return frozenset(c for pair in self.pairs for c in pair)


def gradient_field(K: SimplicialComplex, f: MorseFunction) -> GradientField:
    require_morse(K, f)
    pairs = set()
    cofacets = _cofacet_table(K)
    for s in K.simplices():
        for t in cofacets[s]:
            if f(t) <= f(s):
                pairs.add((s, t))
    return GradientField(frozenset(pairs))


def sublevel(K: SimplicialComplex, f: MorseFunction, u: Rational) -> SimplicialComplex:
    """Face closure of every cell with value at most u."""
    u = Fraction(u)
    return close_under_faces([s for s in K.simplices() if f(s) <= u])


class Filtration:
    """Strictly increasing thresholds with the nested sublevel complexes at each."""

    __slots__ = ("thresholds", "steps")

    def __init__(self, thresholds: Sequence[Rational], steps: Sequence[SimplicialComplex]):
        ts = tuple(Fraction(t) for t in thresholds)
        if len(ts) != len(steps) or not ts:
            raise ValueError("thresholds and steps must be equal-length and non-empty")
        if any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValueError("thresholds must be strictly increasing")
        for earlier, later in zip(steps, steps[1:]):
            if not is_subcomplex(earlier, later):
                raise ValueError("filtration steps are not nested")
        object.__setattr__(self, "thresholds", ts)
        object.__setattr__(self, "steps", tuple(steps))

    def __setattr__(self, name, value):
        raise AttributeError("Filtration is immutable")

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def complex(self) -> SimplicialComplex:
        return self.steps[-1]

    def index_of(self, label: Rational) -> int:
        t = Fraction(label)
        try:
            return self.thresholds.index(t)
        except ValueError:
            raise KeyError(f"no filtration step labelled {label}") from None

    def labels(self) -> tuple[str, ...]:
        return tuple(str(t) for t in self.thresholds)

    def restrict_to(self, A: SimplicialComplex) -> "Filtration":
        """The induced filtration of a subcomplex: each step intersected with A."""
        from .complexes import intersect
        if not is_subcomplex(A, self.complex):
            raise ValueError("A is not a subcomplex of the filtered complex")
        return Filtration(self.thresholds, [intersect(step, A) for step in self.steps])


def sublevel_filtration(K: SimplicialComplex, f: MorseFunction,
                        thresholds: Iterable[Rational]) -> Filtration:
    """Sublevel complexes of f at the given thresholds (sorted, deduplicated).

    If the last threshold does not capture all of K, a final step at max f is
    appended so the filtration always terminates in the full complex.
    """
    ts = sorted({Fraction(t) for t in thresholds})
    if not ts:
        raise ValueError("at least one threshold is required")
    if ts[-1] < f.max_value:
        ts.append(f.max_value)
    return Filtration(ts, [sublevel(K, f, t) for t in ts])


def filtration_from_morse(K: SimplicialComplex, f: MorseFunction,
                          thresholds: Optional[Iterable[Rational]] = None) -> Filtration:
    """Filtration at the distinct critical values of f, or at explicit thresholds.

    Either way a final max-f step is appended when needed, so the last step
    equals K. Steps that repeat between consecutive thresholds are retained.
    """
    crit = critical_cells(K, f)  # validates f
    if thresholds is None:
        thresholds = {f(s) for s in crit}
    return sublevel_filtration(K, f, thresholds)


@dataclass(frozen=True)
class PerfectnessReport:
    perfect: bool
    critical_counts: tuple[int, ...]
    betti: tuple[int, ...]

    def __bool__(self):
        return self.perfect


def is_perfect(K: SimplicialComplex, f: MorseFunction, p: int) -> PerfectnessReport:
    """True when per-degree critical cell counts equal the Betti numbers over F_p."""
    crit = critical_cells(K, f)
    counts = [0] * (K.dim + 1)
    for s in crit:
        counts[s.dim] += 1
    betti = betti_numbers(K, p)
    return PerfectnessReport(counts == betti, tuple(counts), tuple(betti))
