"""Laplace-Beltrami spectra of cone links as (eigenvalue, multiplicity) lists.

Analytic spectra (flat tori, round spheres) carry exact integer or rational
eigenvalues; numeric mesh spectra live in :mod:`cone_spectra.mesh`.  All links
are normalized to the unit sphere, so the Clifford-torus parametrization
carries its 1/sqrt(3) factor and the induced metric is (1/3)[[2,1],[1,2]].
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NonPositiveDefinite

Number = int | float | Fraction


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class Spectrum:
    """Ordered (eigenvalue, multiplicity) pairs, complete for eigenvalues <= cutoff."""

    entries: tuple[tuple[Number, int], ...]
    cutoff: float
    exact: bool

    def __post_init__(self):
        prev = None
        for ev, mult in self.entries:
            if mult < 1:
                raise ValueError("multiplicities must be >= 1")
            if prev is not None and not ev > prev:
                raise ValueError("eigenvalues must be strictly increasing")
            prev = ev
        if self.entries:
            first = self.entries[0][0]
            if self.exact and first != 0:
                raise ValueError("exact spectra must start at eigenvalue 0")
            if not self.exact and abs(float(first)) > 1e-6:
                raise ValueError("numeric spectra must start near eigenvalue 0")

    def eigenvalues(self) -> list[float]:
        """Eigenvalues repeated with multiplicity."""
        out: list[float] = []
        for ev, mult in self.entries:
            out.extend([float(ev)] * mult)
        return out

    def multiplicity(self, value, tol: float = 1e-9) -> int:
        """Multiplicity at ``value`` (0 if absent or negative)."""
        if value < 0:
            return 0
        for ev, mult in self.entries:
            if self.exact and _is_exact(value) and _is_exact(ev):
                if ev == value:
                    return mult
            else:
                fv, fe = float(value), float(ev)
                if abs(fv - fe) <= tol * max(1.0, abs(fv)):
                    return mult
        return 0

    def to_json(self) -> str:
        return json.dumps(
            [{"eigenvalue": float(ev), "multiplicity": m} for ev, m in self.entries]
        )


@dataclass(frozen=True)
class LinkTopology:
    """Betti data of the link surface."""

    b0: int
    b1: int
    genus_per_component: tuple[int, ...] = ()

    def __post_init__(self):
        if self.b0 < 0 or self.b1 < 0:
            raise ValueError("Betti numbers must be nonnegative")
        if self.genus_per_component:
            if len(self.genus_per_component) != self.b0:
                raise ValueError("need one genus per component")
            if sum(2 * g for g in self.genus_per_component) != self.b1:
                raise ValueError("b1 must equal sum of 2*genus for closed oriented links")


@dataclass(frozen=True)
class TorusMetric:
    """Flat metric in angle coordinates (theta_1, theta_2) of period 2 pi."""

    g11: Number
    g12: Number
    g22: Number

    def __post_init__(self):
        det = self.g11 * self.g22 - self.g12 * self.g12
        if not (self.g11 > 0 and det > 0):
            raise NonPositiveDefinite(f"metric {self.matrix()} is not SPD")

    def matrix(self):
        return ((self.g11, self.g12), (self.g12, self.g22))

    def det(self) -> Number:
        return self.g11 * self.g22 - self.g12 * self.g12

    def inverse(self):
        """Entries of g^{-1} (exact Fractions when the metric is exact)."""
        d = self.det()
        if _is_exact(self.g11) and _is_exact(self.g12) and _is_exact(self.g22):
            d = Fraction(d)
            return (Fraction(self.g22) / d, -Fraction(self.g12) / d, Fraction(self.g11) / d)
        d = float(d)
        return (float(self.g22) / d, -float(self.g12) / d, float(self.g11) / d)

    def area(self) -> float:
        return 4.0 * math.pi**2 * math.sqrt(float(self.det()))

    def is_exact(self) -> bool:
        return _is_exact(self.g11) and _is_exact(self.g12) and _is_exact(self.g22)


def clifford_torus_metric() -> TorusMetric:
    """Induced metric of the unit-norm link (1/sqrt 3)(e^{i t1}, e^{i t2}, e^{-i(t1+t2)})."""
    third = Fraction(1, 3)
    return TorusMetric(2 * third, third, 2 * third)


def torus_spectrum(metric: TorusMetric, cutoff: float) -> Spectrum:
    """Flat-torus spectrum: eigenvalue q(m,n) = g^{ab} k_a k_b over integer (m, n).

    Enumerates the lattice inside the exact bounding box of the ellipse
    q <= cutoff, so the result is complete below the cutoff.  Eigenvalues are
    exact integers whenever the inverse metric is rational and all enumerated
    q-values are integral.
    """
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    a, b, c = metric.inverse()  # q(m,n) = a m^2 + 2 b m n + c n^2
    exact_in = metric.is_exact()
    cut = Fraction(cutoff) if exact_in else float(cutoff)
    # bounding box: max m^2 = cutoff * g11, max n^2 = cutoff * g22
    m_max = math.isqrt(math.floor(float(cutoff) * float(metric.g11))) + 1
    n_max = math.isqrt(math.floor(float(cutoff) * float(metric.g22))) + 1
    counts: dict = {}
    for m in range(-m_max, m_max + 1):
        for n in range(-n_max, n_max + 1):
            q = a * m * m + 2 * b * m * n + c * n * n
            if q <= cut:
                counts[q] = counts.get(q, 0) + 1
    exact_out = exact_in and all(Fraction(q).denominator == 1 for q in counts)
    if exact_out:
        entries = tuple(sorted((int(q), mult) for q, mult in counts.items()))
    else:
        entries = tuple(sorted((float(q), mult) for q, mult in counts.items()))
    return Spectrum(entries=entries, cutoff=float(cutoff), exact=exact_out)


def sphere_spectrum(cutoff: float) -> Spectrum:
    """Round unit 2-sphere: eigenvalue l(l+1) with multiplicity 2l+1."""
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    entries = []
    ell = 0
    while ell * (ell + 1) <= cutoff:
        entries.append((ell * (ell + 1), 2 * ell + 1))
        ell += 1
    return Spectrum(entries=tuple(entries), cutoff=float(cutoff), exact=True)


def eigenvalue_count_below(spectrum: Spectrum, bound: float) -> int:
    """Number of eigenvalues (with multiplicity) strictly below ``bound``."""
    return sum(m for ev, m in spectrum.entries if float(ev) < bound)


def merge_spectra(parts: Sequence[Spectrum]) -> Spectrum:
    """Spectrum of a disjoint union of links (multiplicities add)."""
    if not parts:
        raise ValueError("need at least one spectrum")
    cutoff = min(p.cutoff for p in parts)
    exact = all(p.exact for p in parts)
    counts: dict = {}
    for p in parts:
        for ev, m in p.entries:
            if float(ev) <= cutoff:
                counts[ev] = counts.get(ev, 0) + m
    entries = tuple(sorted(counts.items(), key=lambda t: float(t[0])))
    return Spectrum(entries=entries, cutoff=cutoff, exact=exact)
