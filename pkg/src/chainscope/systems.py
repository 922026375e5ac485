"""Finite metric systems and grid discretizations of interval/circle maps.

A :class:`FiniteSystem` is an exact desk-scale model of a dynamical system: a
finite point set with a rational metric and a total self-map.  All metric
axioms are checked at construction, and all comparisons downstream are exact
rational comparisons (never float thresholds).

Grid front-ends discretize a one-dimensional map by cell-center
representatives.  This is a heuristic model by design: exact claims are
reserved for finite systems and symbolic models, not for the continuous maps
the grids approximate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import MetricViolation, PartialMap, SpecError

# Full triple sweeps are quadratic/cubic; beyond this size loading refuses
# rather than silently skipping axiom checks.
MAX_EXHAUSTIVE_POINTS = 512

Rational = Fraction


def as_fraction(value) -> Fraction:
    """Parse a rational from int, Fraction, or a 'p/q' string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecError(f"bad rational literal {value!r}") from exc
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    raise SpecError(f"cannot interpret {value!r} as a rational")


@dataclass(frozen=True)
class FiniteSystem:
    """Finite metric space with a total self-map.

    ``metric`` holds the full symmetric table including zero diagonal;
    ``map`` sends every point to its image.
    """

    points: tuple[str, ...]
    metric: Mapping[tuple[str, str], Fraction]
    map: Mapping[str, str]
    labels: Mapping[str, str] = field(default_factory=dict)

    def distance(self, u: str, v: str) -> Fraction:
        return self.metric[(u, v)]

    def apply(self, u: str) -> str:
        return self.map[u]

    def orbit(self, x: str, steps: int) -> list[str]:
        out = [x]
        for _ in range(steps):
            out.append(self.map[out[-1]])
        return out


def _validate_metric(points, metric) -> None:
    if len(points) > MAX_EXHAUSTIVE_POINTS:
        raise SpecError(
            f"system has {len(points)} points; exhaustive metric validation "
            f"is capped at {MAX_EXHAUSTIVE_POINTS}"
        )
    for u in points:
        if metric[(u, u)] != 0:
            raise MetricViolation("definiteness", (u, u))
    for i, u in enumerate(points):
        for v in points[i + 1:]:
            duv = metric[(u, v)]
            if duv <= 0:
                raise MetricViolation("definiteness", (u, v))
            if duv != metric[(v, u)]:
                raise MetricViolation("symmetry", (u, v))
    for u in points:
        for v in points:
            duv = metric[(u, v)]
            for w in points:
                if duv > metric[(u, w)] + metric[(w, v)]:
                    raise MetricViolation("triangle", (u, v, w))


def finite_system(points, mapping, metric, labels=None) -> FiniteSystem:
    """Build and validate a FiniteSystem from plain containers.

    ``metric`` may list each unordered pair once; it is symmetrized and the
    zero diagonal is filled in.
    """
    pts = tuple(str(p) for p in points)
    if len(set(pts)) != len(pts):
        raise SpecError("duplicate point identifiers")
    table: dict[tuple[str, str], Fraction] = {}
    for (u, v), d in metric.items():
        if u not in pts or v not in pts:
            raise SpecError(f"metric entry for unknown pair ({u!r}, {v!r})")
        d = as_fraction(d)
        for key in ((u, v), (v, u)):
            if key in table and table[key] != d:
                raise MetricViolation("symmetry", key)
            table[key] = d
    for u in pts:
        table[(u, u)] = Fraction(0)
    for i, u in enumerate(pts):
        for v in pts[i + 1:]:
            if (u, v) not in table:
                raise SpecError(f"metric is missing the pair ({u!r}, {v!r})")
    fmap: dict[str, str] = {}
    for u in pts:
        if u not in mapping:
            raise PartialMap(u)
        img = str(mapping[u])
        if img not in pts:
            raise PartialMap(u)
        fmap[u] = img
    _validate_metric(pts, table)
    return FiniteSystem(pts, table, fmap, dict(labels or {}))


def compile_finite(desc: Mapping) -> FiniteSystem:
    """Compile a finite-system description (parsed JSON object).

    Recognized keys: ``points``, ``map``, ``metric`` (list of
    ``[u, v, "p/q"]`` triples), optional ``metric_default`` for unlisted
    distinct pairs, optional ``labels``.
    """
    try:
        points = [str(p) for p in desc["points"]]
        raw_map = dict(desc["map"])
    except (KeyError, TypeError) as exc:
        raise SpecError(f"finite system spec missing field: {exc}") from exc
    metric: dict[tuple[str, str], Fraction] = {}
    for entry in desc.get("metric", []):
        if len(entry) != 3:
            raise SpecError(f"bad metric entry {entry!r}")
        u, v, d = entry
        metric[(str(u), str(v))] = as_fraction(d)
    default = desc.get("metric_default")
    if default is not None:
        dd = as_fraction(default)
        for i, u in enumerate(points):
            for v in points[i + 1:]:
                metric.setdefault((u, v), metric.get((v, u), dd))
    return finite_system(points, raw_map, metric, desc.get("labels"))


# -- grid discretization -------------------------------------------------------

GRID_FAMILIES = ("tent", "rotation", "piecewise-linear")


@dataclass(frozen=True)
class GridMapSpec:
    """Parameters of a 1-D map to discretize on cell centers.

    families:
      tent(slope)               on the interval [0, 1]
      rotation(alpha)           on the circle R/Z
      piecewise-linear(breaks)  on the interval, breaks = ((x, y), ...)
    """

    family: str
    cell_count: int
    geometry: str = "interval"
    slope: Fraction | None = None
    alpha: Fraction | float | None = None
    breakpoints: tuple[tuple[Fraction, Fraction], ...] | None = None

    def __post_init__(self):
        if self.family not in GRID_FAMILIES:
            raise SpecError(f"unknown map family {self.family!r}")
        if self.cell_count < 2:
            raise SpecError("cell_count must be at least 2")
        if self.geometry not in ("interval", "circle"):
            raise SpecError(f"unknown geometry {self.geometry!r}")
        if self.family == "tent":
            if self.slope is None or not 0 < self.slope <= 2:
                raise SpecError("tent slope must lie in (0, 2]")
            if self.geometry != "interval":
                raise SpecError("tent map is an interval map")
        if self.family == "rotation":
            if self.alpha is None:
                raise SpecError("rotation needs alpha")
            if self.geometry != "circle":
                raise SpecError("rotation is a circle map")
        if self.family == "piecewise-linear":
            brk = self.breakpoints
            if not brk or len(brk) < 2:
                raise SpecError("piecewise-linear needs at least two breakpoints")
            xs = [b[0] for b in brk]
            if xs[0] != 0 or xs[-1] != 1 or any(a >= b for a, b in zip(xs, xs[1:])):
                raise SpecError("breakpoint x-values must ascend from 0 to 1")
            if any(not 0 <= b[1] <= 1 for b in brk):
                raise SpecError("breakpoint values must lie in [0, 1]")


def _tent(slope: Fraction, x: Fraction) -> Fraction:
    return slope * x if x <= Fraction(1, 2) else slope * (1 - x)


def _piecewise(brk, x: Fraction) -> Fraction:
    for (x0, y0), (x1, y1) in zip(brk, brk[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    raise SpecError(f"breakpoints do not cover {x}")


def _evaluate(spec: GridMapSpec, x: Fraction):
    if spec.family == "tent":
        return _tent(spec.slope, x)
    if spec.family == "rotation":
        if isinstance(spec.alpha, Fraction):
            return (x + spec.alpha) % 1
        return (float(x) + float(spec.alpha)) % 1.0
    return _piecewise(spec.breakpoints, x)


def discretize(spec: GridMapSpec) -> FiniteSystem:
    """Discretize a 1-D map onto cell-center representatives.

    Points are cell centers, the metric is the geometry distance between
    centers, and the image of a cell is the cell containing the image of its
    center.  Exact rational arithmetic is used whenever the parameters are
    rational; irrational parameters fall back to floats (the model is a
    non-rigorous representative-point discretization either way).
    """
    n = spec.cell_count
    names = tuple(f"c{i}" for i in range(n))
    centers = [Fraction(2 * i + 1, 2 * n) for i in range(n)]
    mapping: dict[str, str] = {}
    for i, c in enumerate(centers):
        y = _evaluate(spec, c)
        if isinstance(y, Fraction):
            # half-open cells [j/n, (j+1)/n); the right endpoint 1 belongs
            # to the last cell
            j = min(int(y * n), n - 1) if y >= 0 else 0
        else:
            j = min(int(y * n), n - 1)
        mapping[names[i]] = names[j]
    metric: dict[tuple[str, str], Fraction] = {}
    for i in range(n):
        for j in range(i + 1, n):
            gap = abs(centers[i] - centers[j])
            if spec.geometry == "circle":
                gap = min(gap, 1 - gap)
            metric[(names[i], names[j])] = gap
    return finite_system(names, mapping, metric)
