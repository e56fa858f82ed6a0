"""Construction of the finite element sets the counting code runs over.

An ElementSet is an ordered collection of distinct nonzero scalars from one
field.  Sets are either given explicitly or materialized from a parametric
family; families are what the growth experiments scale along the size knob.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from pathlib import Path

from .scalars import Q, QI, Scalar, parse_scalar


class FamilyError(ValueError):
    """Raised for ill-formed family parameters or empty materializations."""


@dataclass(frozen=True)
class Geometric:
    """Powers base^s for start <= s <= stop."""

    base: Scalar
    start: int
    stop: int


@dataclass(frozen=True)
class SignedGeometric:
    """Both signs of base^s for 0 <= s < count."""

    base: Scalar
    count: int


@dataclass(frozen=True)
class GaussianUnitsScaled:
    """Each scale multiplied by the four Gaussian units 1, -1, i, -i."""

    scales: tuple[Scalar, ...]


@dataclass(frozen=True)
class LatticeBox:
    """Seeded sample of products gen_j^{e_j} with e_j drawn from integer ranges."""

    generators: tuple[Scalar, ...]
    ranges: tuple[tuple[int, int], ...]
    sample_size: int
    seed: int


@dataclass(frozen=True)
class Explicit:
    elements: tuple[Scalar, ...]


FamilySpec = Geometric | SignedGeometric | GaussianUnitsScaled | LatticeBox | Explicit


class ElementSet:
    """Ordered, duplicate-free, zero-free set of scalars from a single field.

    Construction is strict: duplicates or zeros are errors here.  Family
    materialization deduplicates before constructing and reports how many
    collisions it absorbed.
    """

    __slots__ = ("field", "elements", "provenance", "collisions", "_positions", "_scaled")

    def __init__(
        self,
        elements: tuple[Scalar, ...] | list[Scalar],
        provenance: FamilySpec | str = "explicit",
        collisions: int = 0,
    ):
        elements = tuple(elements)
        if not elements:
            raise FamilyError("element set is empty")
        field = elements[0].field
        positions: dict[Scalar, int] = {}
        for pos, value in enumerate(elements):
            if not isinstance(value, Scalar):
                raise TypeError(f"expected Scalar, got {type(value).__name__}")
            if value.field != field:
                raise FamilyError("element set mixes fields")
            if value.is_zero():
                raise FamilyError("element set contains zero")
            if value in positions:
                raise FamilyError(f"duplicate element {value}")
            positions[value] = pos
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "provenance", provenance)
        object.__setattr__(self, "collisions", collisions)
        object.__setattr__(self, "_positions", positions)
        object.__setattr__(self, "_scaled", None)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("ElementSet is immutable")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, index: int) -> Scalar:
        return self.elements[index]

    def __contains__(self, value: Scalar) -> bool:
        return value in self._positions

    def index(self, value: Scalar) -> int:
        return self._positions[value]

    def scaled_integers(self) -> tuple[int, list, int]:
        """Clear denominators: (L, scaled values, max magnitude).

        L is the lcm of all denominators.  For field Q the scaled values are
        ints x*L; for field Qi they are (re, im) int pairs.  The max magnitude
        bounds every scaled component and feeds kernel overflow preflight.
        """
        cached = self._scaled
        if cached is not None:
            return cached
        lcm = 1
        for value in self.elements:
            lcm = lcm * value.den // math.gcd(lcm, value.den)
        if self.field == Q:
            scaled = [value.re * (lcm // value.den) for value in self.elements]
            bound = max(abs(v) for v in scaled)
        else:
            scaled = [
                (value.re * (lcm // value.den), value.im * (lcm // value.den))
                for value in self.elements
            ]
            bound = max(max(abs(a), abs(b)) for a, b in scaled)
        result = (lcm, scaled, bound)
        object.__setattr__(self, "_scaled", result)
        return result

    def __repr__(self) -> str:
        shown = ", ".join(v.text() for v in self.elements[:6])
        if len(self.elements) > 6:
            shown += ", ..."
        return f"ElementSet({self.field}, [{shown}], size={len(self)})"


def _dedupe(values: list[Scalar]) -> tuple[list[Scalar], int]:
    seen: set[Scalar] = set()
    kept: list[Scalar] = []
    collisions = 0
    for value in values:
        if value in seen:
            collisions += 1
            continue
        seen.add(value)
        kept.append(value)
    return kept, collisions


def materialize(spec: FamilySpec) -> ElementSet:
    """Build the element set a family describes, deduplicating silently."""
    if isinstance(spec, Geometric):
        if spec.base.is_zero():
            raise FamilyError("geometric family with zero base")
        values = [spec.base**s for s in range(spec.start, spec.stop + 1)]
    elif isinstance(spec, SignedGeometric):
        if spec.base.is_zero():
            raise FamilyError("signed geometric family with zero base")
        if spec.count < 1:
            raise FamilyError("signed geometric family needs count >= 1")
        values = []
        for s in range(spec.count):
            power = spec.base**s
            values.append(power)
            values.append(-power)
    elif isinstance(spec, GaussianUnitsScaled):
        one = Scalar.one(QI)
        i_unit = Scalar.imaginary_unit()
        values = []
        for scale in spec.scales:
            if scale.field != QI:
                raise FamilyError("unit-scaled family requires Qi scales")
            if scale.is_zero():
                raise FamilyError("unit-scaled family with zero scale")
            values.extend([scale, -scale, i_unit * scale, -(i_unit * scale)])
    elif isinstance(spec, LatticeBox):
        if len(spec.generators) != len(spec.ranges):
            raise FamilyError("lattice box needs one range per generator")
        if not spec.generators:
            raise FamilyError("lattice box needs at least one generator")
        for gen in spec.generators:
            if gen.is_zero():
                raise FamilyError("lattice box with zero generator")
        for lo, hi in spec.ranges:
            if lo > hi:
                raise FamilyError(f"empty exponent range ({lo}, {hi})")
        if spec.sample_size < 1:
            raise FamilyError("lattice box needs sample_size >= 1")
        rng = random.Random(spec.seed)
        field = spec.generators[0].field
        values = []
        for _ in range(spec.sample_size):
            value = Scalar.one(field)
            for gen, (lo, hi) in zip(spec.generators, spec.ranges):
                value = value * gen ** rng.randint(lo, hi)
            values.append(value)
    elif isinstance(spec, Explicit):
        values = list(spec.elements)
    else:
        raise TypeError(f"unknown family spec {type(spec).__name__}")

    kept, collisions = _dedupe(values)
    if not kept:
        raise FamilyError("family materialized to an empty set")
    return ElementSet(tuple(kept), provenance=spec, collisions=collisions)


def tight_equation_coeffs(n: int) -> tuple[Scalar, ...]:
    """Coefficient vector whose homogeneous solution count meets the
    general upper bound's growth order.

    Even n = 2k: k ones then k minus-ones, so any pairing x_i = x_{k+i}
    solves.  Odd n = 2k+1: k-1 ones, k+1 minus-ones, and a final 2.
    """
    if n < 2:
        raise ValueError("need at least two coefficients")
    one = Scalar.one(Q)
    if n % 2 == 0:
        k = n // 2
        return tuple([one] * k + [-one] * k)
    k = n // 2
    return tuple([one] * (k - 1) + [-one] * (k + 1) + [Scalar.rational(2)])


# -- JSON forms ---------------------------------------------------------------

_VARIANTS = {
    Geometric: "geometric",
    SignedGeometric: "signed_geometric",
    GaussianUnitsScaled: "gaussian_units_scaled",
    LatticeBox: "lattice_box",
    Explicit: "explicit",
}


def family_to_json(spec: FamilySpec, field: str) -> dict:
    obj: dict = {"variant": _VARIANTS[type(spec)]}
    if isinstance(spec, Geometric):
        obj.update(base=spec.base.text(), start=spec.start, stop=spec.stop, field=field)
    elif isinstance(spec, SignedGeometric):
        obj.update(base=spec.base.text(), count=spec.count, field=field)
    elif isinstance(spec, GaussianUnitsScaled):
        obj.update(scales=[s.text() for s in spec.scales])
    elif isinstance(spec, LatticeBox):
        obj.update(
            generators=[g.text() for g in spec.generators],
            ranges=[list(r) for r in spec.ranges],
            sample_size=spec.sample_size,
            seed=spec.seed,
            field=field,
        )
    else:
        obj.update(elements=[e.text() for e in spec.elements], field=field)
    return obj


def family_from_json(obj: dict) -> FamilySpec:
    if not isinstance(obj, dict) or "variant" not in obj:
        raise FamilyError("family object needs a 'variant' key")
    variant = obj["variant"]
    field = obj.get("field", Q)
    try:
        if variant == "geometric":
            return Geometric(
                base=parse_scalar(obj["base"], field),
                start=int(obj["start"]),
                stop=int(obj["stop"]),
            )
        if variant == "signed_geometric":
            return SignedGeometric(
                base=parse_scalar(obj["base"], field), count=int(obj["count"])
            )
        if variant == "gaussian_units_scaled":
            return GaussianUnitsScaled(
                scales=tuple(parse_scalar(s, QI) for s in obj["scales"])
            )
        if variant == "lattice_box":
            return LatticeBox(
                generators=tuple(parse_scalar(g, field) for g in obj["generators"]),
                ranges=tuple((int(lo), int(hi)) for lo, hi in obj["ranges"]),
                sample_size=int(obj["sample_size"]),
                seed=int(obj["seed"]),
            )
        if variant == "explicit":
            return Explicit(
                elements=tuple(parse_scalar(e, field) for e in obj["elements"])
            )
    except KeyError as exc:
        raise FamilyError(f"family variant {variant!r} missing key {exc}") from exc
    raise FamilyError(f"unknown family variant {variant!r}")


def set_to_json(elements: ElementSet) -> dict:
    return {
        "field": elements.field,
        "elements": [value.text() for value in elements.elements],
    }


def set_from_json(obj: dict) -> ElementSet:
    if not isinstance(obj, dict):
        raise FamilyError("set object must be a JSON object")
    if "family" in obj:
        return materialize(family_from_json(obj["family"]))
    if "elements" not in obj:
        raise FamilyError("set object needs 'elements' or 'family'")
    field = obj.get("field", Q)
    return ElementSet(tuple(parse_scalar(e, field) for e in obj["elements"]))


def load_set(path: str | Path) -> ElementSet:
    with open(path, "r", encoding="utf-8") as handle:
        return set_from_json(json.load(handle))


def save_set(elements: ElementSet, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(set_to_json(elements), handle, indent=2, sort_keys=True)
        handle.write("\n")
