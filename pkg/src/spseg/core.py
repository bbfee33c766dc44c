"""Exact data model: valuation grids, markets, segmentations, welfare.

Every quantity is a :class:`fractions.Fraction`. Markets are stored in
canonical form, i.e. as the vector of consumer masses at each valuation,
which is all the pricing and deviation logic ever needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from spseg.errors import GridMismatch, InvalidMarket

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"floats are not accepted as exact quantities: {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class ValuationGrid:
    """Ordered valuations v_1 < ... < v_K, all strictly positive."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_rational(v) for v in self.values)
        if not vals:
            raise InvalidMarket("valuation grid must contain at least one value")
        if vals[0] <= 0:
            raise InvalidMarket(f"valuations must be positive, got {vals[0]}")
        for a, b in zip(vals, vals[1:]):
            if not a < b:
                raise InvalidMarket(f"valuations must be strictly increasing ({a} >= {b})")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, j: int) -> Fraction:
        return self.values[j]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    @property
    def K(self) -> int:
        return len(self.values)

    def index(self, value: RationalLike) -> int:
        """Position of ``value`` in the grid; ValueError if absent."""
        return self.values.index(as_rational(value))

    def market(self, masses: Iterable[RationalLike]) -> "MarketVector":
        return MarketVector(self, tuple(masses))


@dataclass(frozen=True)
class MarketVector:
    """One market in canonical form: ``masses[j]`` consumers value ``grid[j]``."""

    grid: ValuationGrid
    masses: tuple[Fraction, ...]

    def __post_init__(self):
        masses = tuple(as_rational(x) for x in self.masses)
        if len(masses) != len(self.grid):
            raise InvalidMarket(
                f"market has {len(masses)} masses but the grid has {len(self.grid)} values"
            )
        for j, x in enumerate(masses):
            if x < 0:
                raise InvalidMarket(f"negative mass {x} at valuation index {j}")
        object.__setattr__(self, "masses", masses)

    @classmethod
    def zeros(cls, grid: ValuationGrid) -> "MarketVector":
        return cls(grid, (Fraction(0),) * len(grid))

    @classmethod
    def unit(cls, grid: ValuationGrid, k: int, mass: RationalLike = 1) -> "MarketVector":
        masses = [Fraction(0)] * len(grid)
        masses[k] = as_rational(mass)
        return cls(grid, tuple(masses))

    def __len__(self) -> int:
        return len(self.masses)

    def __getitem__(self, j: int) -> Fraction:
        return self.masses[j]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.masses)

    def _check_grid(self, other: "MarketVector") -> None:
        if other.grid != self.grid:
            raise GridMismatch("markets live on different valuation grids")

    def __add__(self, other: "MarketVector") -> "MarketVector":
        self._check_grid(other)
        return MarketVector(self.grid, tuple(a + b for a, b in zip(self.masses, other.masses)))

    def __sub__(self, other: "MarketVector") -> "MarketVector":
        # raises InvalidMarket if the difference goes negative
        self._check_grid(other)
        return MarketVector(self.grid, tuple(a - b for a, b in zip(self.masses, other.masses)))

    def scale(self, factor: RationalLike) -> "MarketVector":
        f = as_rational(factor)
        return MarketVector(self.grid, tuple(f * x for x in self.masses))

    def __rmul__(self, factor: RationalLike) -> "MarketVector":
        return self.scale(factor)

    def support(self) -> frozenset[int]:
        return frozenset(j for j, x in enumerate(self.masses) if x > 0)

    def total_mass(self) -> Fraction:
        return sum(self.masses, Fraction(0))

    @property
    def is_empty(self) -> bool:
        return all(x == 0 for x in self.masses)

    def is_dominated_by(self, other: "MarketVector") -> bool:
        """Componentwise ``self <= other``."""
        self._check_grid(other)
        return all(a <= b for a, b in zip(self.masses, other.masses))


def support(m: MarketVector) -> frozenset[int]:
    """Indices of valuations carried with positive mass."""
    return m.support()


def total_mass(m: MarketVector) -> Fraction:
    return m.total_mass()


def market_sum(grid: ValuationGrid, markets: Iterable[MarketVector]) -> MarketVector:
    acc = MarketVector.zeros(grid)
    for m in markets:
        acc = acc + m
    return acc


@dataclass(frozen=True)
class Segmentation:
    """A list of markets over a common grid. All-zero markets act as padding slots."""

    grid: ValuationGrid
    markets: tuple[MarketVector, ...]

    def __post_init__(self):
        markets = tuple(self.markets)
        for m in markets:
            if m.grid != self.grid:
                raise GridMismatch("every market must share the segmentation's grid")
        object.__setattr__(self, "markets", markets)

    @classmethod
    def from_masses(
        cls, grid: ValuationGrid, rows: Iterable[Sequence[RationalLike]]
    ) -> "Segmentation":
        return cls(grid, tuple(MarketVector(grid, tuple(r)) for r in rows))

    def __len__(self) -> int:
        return len(self.markets)

    def __getitem__(self, i: int) -> MarketVector:
        return self.markets[i]

    def __iter__(self) -> Iterator[MarketVector]:
        return iter(self.markets)

    @property
    def n(self) -> int:
        return len(self.markets)

    @property
    def aggregate(self) -> MarketVector:
        return market_sum(self.grid, self.markets)

    def nonempty_indices(self) -> list[int]:
        return [i for i, m in enumerate(self.markets) if not m.is_empty]

    def padded(self, n: int) -> "Segmentation":
        """Append empty markets until there are ``n`` slots (never truncates)."""
        extra = max(0, n - self.n)
        return Segmentation(self.grid, self.markets + (MarketVector.zeros(self.grid),) * extra)

    def canonical(self) -> "Segmentation":
        """Markets sorted lexicographically descending; labels are exchangeable."""
        return Segmentation(
            self.grid, tuple(sorted(self.markets, key=lambda m: m.masses, reverse=True))
        )


@dataclass(frozen=True)
class SegmentationCheck:
    ok: bool
    component: int | None = None
    expected: Fraction | None = None
    actual: Fraction | None = None

    def __bool__(self) -> bool:
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "ok"
        return (
            f"mass mismatch at valuation index {self.component}: "
            f"markets sum to {self.actual}, aggregate has {self.expected}"
        )


def validate_segmentation(s: Segmentation, aggregate: MarketVector) -> SegmentationCheck:
    """Check that the markets of ``s`` add up exactly to ``aggregate``.

    Raises GridMismatch when the two objects use different grids. A mismatch
    in masses is not an exception; it is reported through the returned
    :class:`SegmentationCheck`, pointing at the first offending component.
    """
    if aggregate.grid != s.grid:
        raise GridMismatch("segmentation and aggregate use different valuation grids")
    total = s.aggregate
    for j, (got, want) in enumerate(zip(total.masses, aggregate.masses)):
        if got != want:
            return SegmentationCheck(False, j, want, got)
    return SegmentationCheck(True)


@dataclass(frozen=True)
class WelfareOutcome:
    producer_surplus: Fraction
    consumer_surplus: Fraction
    total_surplus: Fraction = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        pi = as_rational(self.producer_surplus)
        u = as_rational(self.consumer_surplus)
        w = pi + u if self.total_surplus is None else as_rational(self.total_surplus)
        if w != pi + u:
            raise ValueError(f"total surplus {w} != {pi} + {u}")
        if pi < 0 or u < 0:
            raise ValueError("surpluses must be nonnegative")
        object.__setattr__(self, "producer_surplus", pi)
        object.__setattr__(self, "consumer_surplus", u)
        object.__setattr__(self, "total_surplus", w)

    @property
    def point(self) -> tuple[Fraction, Fraction]:
        return (self.producer_surplus, self.consumer_surplus)


@dataclass(frozen=True, order=True)
class DeviationWitness:
    """A type that strictly gains, net of cost, by moving between two markets.

    Indices are zero-based. ``target_market`` may equal the segmentation's
    length, which denotes a fresh empty slot.
    """

    source_market: int
    valuation_index: int
    target_market: int
    gain: Fraction

    def __post_init__(self):
        if self.gain <= 0:
            raise ValueError("a deviation witness needs a strictly positive gain")
        if self.source_market == self.target_market:
            raise ValueError("source and target market must differ")

    def label(self) -> str:
        return (
            f"X{self.source_market + 1}: v{self.valuation_index + 1} "
            f"-> X{self.target_market + 1} (gain {self.gain})"
        )
