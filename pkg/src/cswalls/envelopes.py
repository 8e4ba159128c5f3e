"""Piecewise-linear envelope models bracketing the section-count function.

The section-count function of a genus-g curve (sup of h^0/rk over
semistable sheaves of a given slope, upper-semicontinuously regularized)
is not computable exactly in general.  This module represents what *is*
known about it: exact piecewise-linear lower and upper envelopes, a
Mercat-type refinement of the upper bound for g >= 4, and the one family
where the function is classically known exactly (g = 1).  Region
membership against these envelopes is decided with exact rational
arithmetic and a three-valued verdict.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import DomainError, GenusOutOfRange, InvalidEnvelope
from .lattice import Genus, GenusLike, genus_value

Rat = Fraction


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"floats are not exact; got {x!r}")
    return Fraction(x)


class RegionVerdict(str, Enum):
    IN = "In"
    OUT = "Out"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class PLFunction:
    """Piecewise-linear function with left-closed pieces.

    `pieces` is an ascending list of (breakpoint x_i, slope s_i, value v_i);
    piece i covers [x_i, x_{i+1}) as v_i + s_i*(x - x_i), the last piece
    extends to +infinity.  For x below the first breakpoint the left tail
    `left_value + left_slope*(x - x_1)` applies, where `left_value` is the
    left limit at x_1 (a jump at x_1 is allowed).  `point_values` lists
    isolated overrides (x, value) for upper-semicontinuous spikes that a
    piece list cannot express.
    """

    pieces: Tuple[Tuple[Fraction, Fraction, Fraction], ...]
    left_slope: Fraction
    left_value: Fraction
    point_values: Tuple[Tuple[Fraction, Fraction], ...] = ()
    continuous: bool = field(init=False, default=False)
    convex: bool = field(init=False, default=False)

    def __post_init__(self):
        pieces = tuple(
            (_frac(x), _frac(s), _frac(v)) for x, s, v in self.pieces
        )
        if not pieces:
            raise InvalidEnvelope("a PLFunction needs at least one piece")
        xs = [p[0] for p in pieces]
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise InvalidEnvelope(f"breakpoints must strictly increase: {xs}")
        overrides = tuple(
            sorted((_frac(x), _frac(v)) for x, v in self.point_values)
        )
        seen = [x for x, _ in overrides]
        if len(set(seen)) != len(seen):
            raise InvalidEnvelope("duplicate point-value overrides")
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "left_slope", _frac(self.left_slope))
        object.__setattr__(self, "left_value", _frac(self.left_value))
        object.__setattr__(self, "point_values", overrides)
        object.__setattr__(self, "continuous", self._check_continuous())
        object.__setattr__(self, "convex", self._check_convex())

    def _check_continuous(self) -> bool:
        if self.point_values:
            return False
        if self.left_value != self.pieces[0][2]:
            return False
        for (x0, s0, v0), (x1, _, v1) in zip(self.pieces, self.pieces[1:]):
            if v0 + s0 * (x1 - x0) != v1:
                return False
        return True

    def _check_convex(self) -> bool:
        # Slope monotonicity; point overrides break the certificate.
        if self.point_values:
            return False
        slopes = [self.left_slope] + [s for _, s, _ in self.pieces]
        return all(a <= b for a, b in zip(slopes, slopes[1:]))

    @property
    def breakpoints(self) -> Tuple[Fraction, ...]:
        return tuple(x for x, _, _ in self.pieces)

    def __call__(self, x) -> Fraction:
        x = _frac(x)
        for xo, vo in self.point_values:
            if xo == x:
                return vo
        x1 = self.pieces[0][0]
        if x < x1:
            return self.left_value + self.left_slope * (x - x1)
        i = bisect_right(self.breakpoints, x) - 1
        xi, si, vi = self.pieces[i]
        return vi + si * (x - xi)

    def affine_parts(self):
        """Yield (lo, hi, slope, value_at_ref, ref) covering the whole line.

        lo/hi are Fractions or None for an unbounded side; on [lo, hi) the
        function is value_at_ref + slope*(x - ref), ignoring point
        overrides (query `point_values` for those).
        """
        x1 = self.pieces[0][0]
        yield (None, x1, self.left_slope, self.left_value, x1)
        for i, (xi, si, vi) in enumerate(self.pieces):
            hi = self.pieces[i + 1][0] if i + 1 < len(self.pieces) else None
            yield (xi, hi, si, vi, xi)

    def to_json(self) -> dict:
        return {
            "left": [str(self.left_slope), str(self.left_value)],
            "pieces": [[str(x), str(s), str(v)] for x, s, v in self.pieces],
            "point_values": [[str(x), str(v)] for x, v in self.point_values],
        }


def pl_equal(f: PLFunction, g_fn: PLFunction) -> bool:
    """Exact pointwise equality of two piecewise-linear functions."""
    if f.left_slope != g_fn.left_slope:
        return False
    grid = sorted(set(f.breakpoints) | set(g_fn.breakpoints)
                  | {x for x, _ in f.point_values}
                  | {x for x, _ in g_fn.point_values})
    probes = set(grid)
    lo = grid[0]
    probes.add(lo - 1)
    probes.add(grid[-1] + 1)
    for a, b in zip(grid, grid[1:]):
        probes.add(Fraction(a + b, 2))
    # Two affines agreeing at two points of an interval agree on it, so
    # breakpoints + midpoints + one point beyond each tail are sufficient.
    for i, x in enumerate(sorted(probes)):
        if f(x) != g_fn(x):
            return False
    strictly_after = grid[-1] + 2
    return f(strictly_after) == g_fn(strictly_after)


@dataclass(frozen=True)
class BNModel:
    """Bracketing envelopes (lower <= Phi <= upper) for one curve model."""

    lower: PLFunction
    upper: PLFunction
    exact: bool
    genus: Genus
    name: str

    def __post_init__(self):
        g = self.genus.g
        _check_forced_tails(self.lower, g, "lower")
        _check_forced_tails(self.upper, g, "upper")
        probes = sorted(
            set(self.lower.breakpoints) | set(self.upper.breakpoints)
            | {x for x, _ in self.lower.point_values}
            | {x for x, _ in self.upper.point_values}
        )
        extended = list(probes)
        extended.append(probes[0] - 1)
        extended.append(probes[-1] + 1)
        for a, b in zip(probes, probes[1:]):
            extended.append(Fraction(a + b, 2))
        for x in extended:
            if self.lower(x) > self.upper(x):
                raise InvalidEnvelope(
                    f"lower({x}) = {self.lower(x)} exceeds "
                    f"upper({x}) = {self.upper(x)}"
                )
        if self.exact and not pl_equal(self.lower, self.upper):
            raise InvalidEnvelope("exact model requires lower == upper")

    def fingerprint(self) -> str:
        doc = {
            "name": self.name,
            "genus": self.genus.g,
            "exact": self.exact,
            "lower": self.lower.to_json(),
            "upper": self.upper.to_json(),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _check_forced_tails(f: PLFunction, g: int, which: str):
    """Envelopes must be 0 on x<0 and x+1-g on x>2g-2, exactly."""

    def bad(msg):
        raise InvalidEnvelope(f"{which} envelope: {msg}")

    top = Fraction(2 * g - 2)
    for lo, hi, s, v, ref in f.affine_parts():
        # Overlap of [lo, hi) with the open negative axis.
        neg_hi = Fraction(0) if hi is None else min(hi, Fraction(0))
        if lo is None or lo < neg_hi:
            if s != 0 or v != 0:
                bad(f"must vanish on x<0, found slope {s}, value {v}")
        # Overlap of [lo, hi) with the open region x > 2g-2.
        pos_lo = top if lo is None else max(lo, top)
        if hi is None or pos_lo < hi:
            if s != 1 or v != ref + 1 - g:
                bad(
                    f"must equal x+1-g beyond {top}, found slope {s}, "
                    f"value {v} anchored at {ref}"
                )
    for x, v in f.point_values:
        if x < 0 and v != 0:
            bad(f"point value at {x} must be 0")
        if x > top and v != x + 1 - g:
            bad(f"point value at {x} must be {x + 1 - g}")


def general_upper(x, g: GenusLike) -> Fraction:
    """Generic upper envelope: 0 / Clifford bound x/2 + 1 / x + 1 - g."""
    gg = genus_value(g)
    x = _frac(x)
    if x < 0:
        return Fraction(0)
    if x > 2 * gg - 2:
        return x + 1 - gg
    if gg == 1:
        return Fraction(1)  # interval collapses to {0}
    return x / 2 + 1


def lower_envelope(x, g: GenusLike) -> Fraction:
    """Riemann-Roch floor: 0 for x < 0, max(0, x + 1 - g) for x >= 0."""
    gg = genus_value(g)
    x = _frac(x)
    if x < 0:
        return Fraction(0)
    return max(Fraction(0), x + 1 - gg)


def _mercat_breaks(g: int):
    b1 = 2 + Fraction(2, g - 2)
    b2 = 2 * g - 4 - Fraction(2, g - 2)
    b3 = Fraction(3 * g - 3)
    return b1, b2, b3


def mercat_upper(x, g: GenusLike) -> Fraction:
    """Mercat-type four-piece upper bound f(b), defined for b > 0, g >= 4.

    The g >= 4 gate orders the printed breakpoints correctly; the Clifford
    index hypothesis behind the bound is a caller responsibility since it
    is not a function of g alone.
    """
    gg = genus_value(g)
    if gg <= 3:
        raise GenusOutOfRange(f"mercat bound needs genus >= 4, got {gg}")
    x = _frac(x)
    if x <= 0:
        raise DomainError(f"mercat bound is defined for b > 0, got {x}")
    b1, b2, b3 = _mercat_breaks(gg)
    if x < b1:
        return Fraction(1, gg) * x + 1 - Fraction(1, gg)
    if x < b2:
        return x / 2
    if x < b3:
        return (1 - Fraction(1, gg)) * x + 4 - gg - Fraction(3, gg)
    return x + 1 - gg


def _lower_pl(g: int) -> PLFunction:
    if g == 1:
        pieces = ((Fraction(0), Fraction(1), Fraction(0)),)
    else:
        pieces = (
            (Fraction(0), Fraction(0), Fraction(0)),
            (Fraction(g - 1), Fraction(1), Fraction(0)),
        )
    return PLFunction(pieces, Fraction(0), Fraction(0))


def _general_upper_pl(g: int) -> PLFunction:
    if g == 1:
        pieces = ((Fraction(0), Fraction(1), Fraction(0)),)
        overrides = ((Fraction(0), Fraction(1)),)
    else:
        top = Fraction(2 * g - 2)
        pieces = (
            (Fraction(0), Fraction(1, 2), Fraction(1)),
            (top, Fraction(1), Fraction(g - 1)),
        )
        overrides = ((top, Fraction(g)),)
    return PLFunction(pieces, Fraction(0), Fraction(0), overrides)


def _mercat_upper_pl(g: int) -> PLFunction:
    # Pointwise min of the general and Mercat bounds on b > 0: the Mercat
    # bound wins on (0, 2g-2], the forced tail x+1-g wins beyond.  The
    # value at b = 0 stays the general one (Mercat needs b > 0).
    b1, b2, _ = _mercat_breaks(g)
    top = Fraction(2 * g - 2)
    inv_g = Fraction(1, g)
    pieces = [
        (Fraction(0), inv_g, 1 - inv_g),
        (b1, Fraction(1, 2), b1 / 2),
        (b2, 1 - inv_g, b2 / 2),
        (top, Fraction(1), Fraction(g - 1)),
    ]
    # at g = 4 the middle piece is empty (b1 == b2); drop empty pieces
    pieces = [
        p for i, p in enumerate(pieces)
        if i + 1 >= len(pieces) or p[0] < pieces[i + 1][0]
    ]
    overrides = (
        (Fraction(0), Fraction(1)),
        (top, g - inv_g),
    )
    return PLFunction(tuple(pieces), Fraction(0), Fraction(0), overrides)


def _elliptic_pl() -> PLFunction:
    pieces = ((Fraction(0), Fraction(1), Fraction(0)),)
    return PLFunction(pieces, Fraction(0), Fraction(0),
                      ((Fraction(0), Fraction(1)),))


MODEL_KINDS = ("general", "mercat", "elliptic", "user")


def make_model(kind: str, g: GenusLike,
               user_data: Optional[tuple] = None) -> BNModel:
    """Build a named envelope model.

    kind "general": Riemann-Roch floor vs Clifford-bounded ceiling, any g.
    kind "mercat": ceiling sharpened by the Mercat bound, g >= 4.
    kind "elliptic": the exact g = 1 function (0 / 1 at 0 / x), whose
      values come from Riemann-Roch plus the classification of semistable
      bundles on an elliptic curve.
    kind "user": user_data = (lower, upper, exact) with PLFunctions.
    """
    genus = g if isinstance(g, Genus) else Genus(g)
    gg = genus.g
    if kind == "general":
        return BNModel(_lower_pl(gg), _general_upper_pl(gg), False, genus,
                       "general")
    if kind == "mercat":
        if gg <= 3:
            raise GenusOutOfRange(f"mercat model needs genus >= 4, got {gg}")
        return BNModel(_lower_pl(gg), _mercat_upper_pl(gg), False, genus,
                       "mercat")
    if kind == "elliptic":
        if gg != 1:
            raise GenusOutOfRange(f"elliptic model needs genus 1, got {gg}")
        pl = _elliptic_pl()
        return BNModel(pl, pl, True, genus, "elliptic")
    if kind == "user":
        if user_data is None:
            raise InvalidEnvelope("user model needs (lower, upper, exact)")
        lower, upper, exact = user_data
        return BNModel(lower, upper, bool(exact), genus, "user")
    raise DomainError(f"unknown model kind {kind!r}")


def _pl_from_json(rows: Sequence) -> PLFunction:
    """Decode a triple list; the first triple is the left tail."""
    if len(rows) < 2:
        raise InvalidEnvelope("need a left-tail triple plus >= 1 piece")
    parsed = [(Fraction(x), Fraction(s), Fraction(v)) for x, s, v in rows]
    _, ls, lv = parsed[0]
    return PLFunction(tuple(parsed[1:]), ls, lv)


def model_from_json(doc: dict, g: GenusLike) -> BNModel:
    """Load a user model from {"lower": [[b, slope, value], ...],
    "upper": [...], "exact": bool} with rationals as "p/q" strings."""
    try:
        lower = _pl_from_json(doc["lower"])
        upper = _pl_from_json(doc["upper"])
        exact = bool(doc["exact"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidEnvelope(f"malformed user model: {exc}") from exc
    return make_model("user", g, (lower, upper, exact))


def region_uc(point: tuple, model: BNModel) -> RegionVerdict:
    """Membership of (b, w) in the region above the section-count function.

    In when w > upper(b), Out when w <= lower(b), Unknown in the band
    between; exact models never answer Unknown.
    """
    b, w = _frac(point[0]), _frac(point[1])
    if w > model.upper(b):
        return RegionVerdict.IN
    if w <= model.lower(b):
        return RegionVerdict.OUT
    return RegionVerdict.UNKNOWN


def region_uf(point: tuple, g: GenusLike) -> bool:
    """Exact membership in the convex region above the Mercat bound."""
    gg = genus_value(g)
    if gg <= 3:
        raise GenusOutOfRange(f"the convex region needs genus >= 4, got {gg}")
    b, w = _frac(point[0]), _frac(point[1])
    if b <= 0:
        return False
    return w > mercat_upper(b, gg)
