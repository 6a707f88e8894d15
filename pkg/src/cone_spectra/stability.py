"""Stability indices of associative cones, in exact rational arithmetic.

With d_lambda the homogeneous-kernel dimensions of the (possibly
disconnected) link, the three indices are

    s-ind-  =  d_(-1)/2 + sum_{-1<lambda<1} d_lambda - 7
    s-ind   =  d_(-1)/2 + sum_{-1<lambda<=1} d_lambda - 7 - sum_j dim Z_j
    s-ind+  =  d_(-1)/2 + sum_{-1<lambda<=1} d_lambda - 7 - sum_j (14 - dim H_j)

where H_j is the G2 symmetry group of the j-th link component and Z_j the
stratum of its moduli of holomorphic links.  Results are Fractions, never
floats: index formulas admit no tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import (
    CutoffExceeded,
    MissingStratumData,
    MissingSymmetryData,
    NonPositiveArea,
)
from .indicial import (
    IndicialRoot,
    KernelTable,
    Rate,
    SLConeSpec,
    Window,
    d_lambda,
    indicial_roots,
)
from .spectra import LinkTopology, _is_exact

DIM_G2 = 14

OPEN_UNIT = Window(-1, 1, include_lo=False, include_hi=False)
HALF_OPEN_UNIT = Window(-1, 1, include_lo=False, include_hi=True)


@dataclass(frozen=True)
class DLambdaTable:
    """User-supplied rate -> dimension table, complete inside ``coverage``."""

    rows: tuple[tuple[Rate, int], ...]
    coverage: Window

    def __post_init__(self):
        for lam, d in self.rows:
            if d < 0:
                raise ValueError("dimensions must be nonnegative")
            if not self.coverage.contains(float(lam), Fraction(lam) if _is_exact(lam) else None):
                raise ValueError(f"table row {lam} outside coverage {self.coverage}")

    def _require(self, window: Window) -> None:
        if float(window.lo) < float(self.coverage.lo) or float(window.hi) > float(
            self.coverage.hi
        ):
            raise CutoffExceeded(
                f"user d-table only covers {self.coverage}, asked for {window}"
            )

    def d_at(self, lam: Rate) -> int:
        self._require(Window(lam, lam))
        for row_lam, d in self.rows:
            if _is_exact(lam) and _is_exact(row_lam):
                if Fraction(lam) == Fraction(row_lam):
                    return d
            elif abs(float(lam) - float(row_lam)) <= 1e-9:
                return d
        return 0

    def roots_in(self, window: Window) -> list[tuple[float, int]]:
        self._require(window)
        out = []
        for lam, d in self.rows:
            if d > 0 and window.contains(
                float(lam), Fraction(lam) if _is_exact(lam) else None
            ):
                out.append((float(lam), d))
        out.sort()
        return out


KernelSource = Union[SLConeSpec, DLambdaTable]


@dataclass(frozen=True)
class ConeComponent:
    """One connected link component plus its optional group/stratum data."""

    kernel_source: KernelSource
    symmetry_group_dim: int | None = None
    stratum_dim: int | None = None
    is_plane: bool = False

    def __post_init__(self):
        if self.symmetry_group_dim is not None and not (
            0 <= self.symmetry_group_dim <= DIM_G2
        ):
            raise ValueError("symmetry group dimension must lie in [0, 14]")
        if (
            self.symmetry_group_dim is not None
            and self.stratum_dim is not None
            and self.stratum_dim < DIM_G2 - self.symmetry_group_dim
        ):
            raise ValueError("stratum_dim must be >= 14 - symmetry_group_dim")

    def d_at(self, lam: Rate) -> int:
        if isinstance(self.kernel_source, SLConeSpec):
            return d_lambda(self.kernel_source, lam)
        return self.kernel_source.d_at(lam)

    def d_sum(self, window: Window) -> int:
        if isinstance(self.kernel_source, SLConeSpec):
            return indicial_roots(self.kernel_source, window).total_dimension()
        return sum(d for _, d in self.kernel_source.roots_in(window))

    def roots_in(self, window: Window) -> list[tuple[float, int]]:
        if isinstance(self.kernel_source, SLConeSpec):
            return [
                (r.value, r.total_dimension)
                for r in indicial_roots(self.kernel_source, window).roots
            ]
        return self.kernel_source.roots_in(window)

    def rate_coverage(self) -> tuple[float, float]:
        """The closed rate interval on which d_lambda data is complete."""
        if isinstance(self.kernel_source, SLConeSpec):
            root = math.sqrt(1.0 + 4.0 * self.kernel_source.spectrum.cutoff)
            return ((-1.0 - root) / 2.0, (-3.0 + root) / 2.0)
        cov = self.kernel_source.coverage
        return (float(cov.lo), float(cov.hi))


@dataclass(frozen=True)
class ConeData:
    """An associative cone as a disjoint union of link components."""

    components: tuple[ConeComponent, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("a cone needs at least one component")

    def d_at(self, lam: Rate) -> int:
        return sum(c.d_at(lam) for c in self.components)

    def d_sum(self, window: Window) -> int:
        return sum(c.d_sum(window) for c in self.components)

    def roots_in(self, window: Window) -> list[tuple[float, int]]:
        merged: dict[float, int] = {}
        for c in self.components:
            for lam, d in c.roots_in(window):
                found = next((k for k in merged if abs(k - lam) <= 1e-9), None)
                if found is None:
                    merged[lam] = d
                else:
                    merged[found] += d
        return sorted(merged.items())

    def rate_coverage(self) -> tuple[float, float]:
        covs = [c.rate_coverage() for c in self.components]
        return (max(c[0] for c in covs), min(c[1] for c in covs))


def _base_sum(cone: ConeData, window: Window) -> Fraction:
    return Fraction(cone.d_at(-1), 2) + cone.d_sum(window) - 7


def s_ind_minus(cone: ConeData) -> Fraction:
    """Lower stability index d_(-1)/2 + sum_{-1<lambda<1} d_lambda - 7."""
    return _base_sum(cone, OPEN_UNIT)


def _orbit_codims(cone: ConeData) -> list[int]:
    dims = []
    for c in cone.components:
        if c.symmetry_group_dim is None:
            raise MissingSymmetryData(
                "every component needs symmetry_group_dim for this index"
            )
        dims.append(DIM_G2 - c.symmetry_group_dim)
    return dims


def s_ind_plus(cone: ConeData) -> Fraction:
    """Upper stability index, subtracting the G2-orbit dimensions."""
    return _base_sum(cone, HALF_OPEN_UNIT) - sum(_orbit_codims(cone))


def is_rigid(cone: ConeData) -> bool:
    """d_1 = sum_j (14 - dim H_j): all rate-1 deformations come from G2."""
    return cone.d_at(1) == sum(_orbit_codims(cone))


def s_ind(cone: ConeData) -> Fraction:
    """Stability index, subtracting the stratum dimensions (rigid default)."""
    strata = []
    for c in cone.components:
        if c.stratum_dim is not None:
            strata.append(c.stratum_dim)
        else:
            strata.append(None)
    if any(s is None for s in strata):
        # rigid cones default the stratum to the G2 orbit
        try:
            rigid = is_rigid(cone)
        except MissingSymmetryData:
            raise MissingStratumData(
                "components lack stratum_dim and rigidity cannot be decided"
            ) from None
        if not rigid:
            raise MissingStratumData(
                "non-rigid cone: stratum_dim must be supplied per component"
            )
        codims = _orbit_codims(cone)
        strata = [s if s is not None else codims[i] for i, s in enumerate(strata)]
    return _base_sum(cone, HALF_OPEN_UNIT) - sum(strata)


@dataclass(frozen=True)
class NullTorsionBound:
    b: float
    bound: float
    meets_minimal_area: bool


def null_torsion_bound(area: float) -> NullTorsionBound:
    """Lower stability-index bound 2b - 7 with b = Area/(4 pi).

    ``meets_minimal_area`` records whether Area >= 24 pi, the smallest area a
    null-torsion curve can have; below it the formula is still evaluated but
    the input is outside the theorem's hypotheses.
    """
    if not area > 0:
        raise NonPositiveArea(f"area must be positive, got {area}")
    b = area / (4.0 * math.pi)
    return NullTorsionBound(
        b=b,
        bound=2.0 * b - 7.0,
        meets_minimal_area=area >= 24.0 * math.pi * (1.0 - 1e-12),
    )


def sl_lower_bound(topology: LinkTopology) -> Fraction:
    """b^1/2 + b^0 - 1, the sharp SL-cone lower bound for s-ind-."""
    return Fraction(topology.b1, 2) + topology.b0 - 1


def stability_report(cone: ConeData, window: Window | None = None) -> dict:
    """JSON-ready report; exact rationals are serialized as "p/q" strings."""
    window = window or Window(-3, 1)

    def rat(x: Fraction) -> str:
        return str(x)

    report: dict = {
        "d_table": [
            {"lambda": lam, "dimension": d} for lam, d in cone.roots_in(window)
        ],
        "s_ind_minus": rat(s_ind_minus(cone)),
    }
    try:
        report["s_ind_plus"] = rat(s_ind_plus(cone))
        report["rigid"] = is_rigid(cone)
    except MissingSymmetryData:
        report["s_ind_plus"] = None
        report["rigid"] = None
    try:
        report["s_ind"] = rat(s_ind(cone))
    except (MissingStratumData, MissingSymmetryData):
        report["s_ind"] = None
    if any(c.is_plane for c in cone.components):
        report["note"] = (
            "contains a 3-plane component: excluded from the s-ind >= 0 guarantee"
        )
    return report
