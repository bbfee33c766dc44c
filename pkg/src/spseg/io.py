"""JSON market/segmentation files with exact rational strings.

Market file::

    {"values": ["1", "2", "3"], "masses": ["1/3", "1/3", "1/3"]}

Segmentation file::

    {"values": ["1", "2", "3"], "markets": [["1/3", "0", "1/6"], ["0", "1/3", "1/6"]]}

A segmentation file may also carry ``"aggregate"`` (checked against the
market sum) and ``"prices"`` (an on-path price per market, used by the SPE
checks). Missing empty markets are padded on load.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from spseg.core import MarketVector, Segmentation, ValuationGrid, validate_segmentation
from spseg.errors import InputFormatError, SegmentationError

_RATIONAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text: Any, where: str = "value") -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` (lowest terms, q > 0)."""
    if not isinstance(text, str):
        raise InputFormatError(f"{where}: expected a rational string, got {text!r}")
    match = _RATIONAL.match(text.strip())
    if not match:
        raise InputFormatError(f"{where}: malformed rational {text!r}")
    num, den = match.group(1), match.group(2)
    if den is None:
        return Fraction(int(num))
    p, q = int(num), int(den)
    if q == 0:
        raise InputFormatError(f"{where}: zero denominator in {text!r}")
    value = Fraction(p, q)
    if value.numerator != p or value.denominator != q:
        raise InputFormatError(f"{where}: {text!r} is not in lowest terms (use {format_rational(value)!r})")
    return value


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _load_json(source: str | Path) -> dict:
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFormatError(f"cannot read {source}: {exc}") from exc
    return loads_document(text)


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputFormatError("top level must be a JSON object")
    return doc


def _rational_list(doc: dict, key: str, prefix: str = "") -> list[Fraction]:
    name = prefix or key
    if key not in doc:
        raise InputFormatError(f"missing field {name!r}")
    seq = doc[key]
    if not isinstance(seq, list):
        raise InputFormatError(f"{name}: expected a list")
    return [parse_rational(x, f"{name}[{i}]") for i, x in enumerate(seq)]


def _grid(doc: dict) -> ValuationGrid:
    values = _rational_list(doc, "values")
    if not values:
        raise InputFormatError("values: at least one valuation required")
    for i, v in enumerate(values):
        if v <= 0:
            raise InputFormatError(f"values[{i}]: valuations must be positive, got {format_rational(v)}")
    for i in range(1, len(values)):
        if values[i] <= values[i - 1]:
            raise InputFormatError(
                f"values[{i}]: values not increasing ({format_rational(values[i - 1])} then {format_rational(values[i])})"
            )
    return ValuationGrid(tuple(values))


def _masses(doc: dict, key: str, grid: ValuationGrid, name: str) -> MarketVector:
    masses = _rational_list(doc, key, name)
    if len(masses) != len(grid):
        raise InputFormatError(f"{name}: length {len(masses)} does not match {len(grid)} values")
    for i, x in enumerate(masses):
        if x < 0:
            raise InputFormatError(f"{name}[{i}]: negative mass {format_rational(x)}")
    return MarketVector(grid, tuple(masses))


def market_from_dict(doc: dict) -> MarketVector:
    grid = _grid(doc)
    m = _masses(doc, "masses", grid, "masses")
    if m.total_mass() <= 0:
        raise InputFormatError("masses: total mass must be positive")
    return m


def segmentation_from_dict(doc: dict) -> tuple[Segmentation, tuple[Fraction, ...] | None]:
    """Segmentation plus optional on-path prices."""
    grid = _grid(doc)
    rows = doc.get("markets")
    if not isinstance(rows, list) or not rows:
        raise InputFormatError("markets: expected a nonempty list of mass vectors")
    markets = tuple(_masses({"m": row}, "m", grid, f"markets[{i}]") for i, row in enumerate(rows))
    seg = Segmentation(grid, markets)
    if "aggregate" in doc:
        agg = _masses(doc, "aggregate", grid, "aggregate")
        check = validate_segmentation(seg, agg)
        if not check:
            raise InputFormatError(f"aggregate: {check.describe()}")
    prices = None
    if "prices" in doc:
        prices = tuple(_rational_list(doc, "prices"))
        if len(prices) != len(markets):
            raise InputFormatError(f"prices: {len(prices)} prices for {len(markets)} markets")
    seg = seg.padded(len(grid))
    if prices is not None:
        prices = prices + (grid[0],) * (seg.n - len(prices))
    return seg, prices


def parse_market_file(path: str | Path) -> MarketVector:
    try:
        return market_from_dict(_load_json(path))
    except InputFormatError:
        raise
    except SegmentationError as exc:
        raise InputFormatError(str(exc)) from exc


def parse_segmentation_file(path: str | Path) -> tuple[Segmentation, tuple[Fraction, ...] | None]:
    try:
        return segmentation_from_dict(_load_json(path))
    except InputFormatError:
        raise
    except SegmentationError as exc:
        raise InputFormatError(str(exc)) from exc


def market_to_dict(m: MarketVector) -> dict:
    return {
        "values": [format_rational(v) for v in m.grid],
        "masses": [format_rational(x) for x in m.masses],
    }


def segmentation_to_dict(s: Segmentation, prices: Sequence[Fraction] | None = None) -> dict:
    doc: dict[str, Any] = {
        "values": [format_rational(v) for v in s.grid],
        "markets": [[format_rational(x) for x in m.masses] for m in s.markets],
    }
    if prices is not None:
        doc["prices"] = [format_rational(p) for p in prices]
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"
