"""Fredholm index arithmetic for the Fueter operator on AC/CS associatives.

In weighted spaces the operator is Fredholm away from the wall of critical
rates, and for an AC submanifold with ends modeled on cones C_i at rates
lambda_i the index is

    ind = sum_{lambda_i >= -1} ( d_(-1),i / 2 + sum_{zeta in D_i, -1 < zeta < lambda_i} d_zeta )
        - sum_{lambda_i <  -1} ( d_(-1),i / 2 + sum_{zeta in D_i, lambda_i < zeta < -1} d_zeta ).

The CS index is its negation, and crossing a root lambda changes the AC
index by d_lambda (wall crossing).  Half-integer bookkeeping is exact; only
the final sum is demanded integral.

Only index identities are exposed here.  The theory also identifies the
cokernel at rate lambda with the kernel at the conjugate rate -2 - lambda;
since no kernels are constructed as function spaces, that identification is
recorded in this note and not computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .errors import CutoffExceeded, NonIntegerIndex, RateOnWall
from .indicial import Window
from .stability import ConeData, s_ind

AC = "ac"
CS = "cs"
WALL_TOL = 1e-9


@dataclass(frozen=True)
class EndSpec:
    """One conical end: its model cone and the weight rate used there."""

    cone: ConeData
    rate: float

    def __post_init__(self):
        _check_off_wall(self.cone, self.rate)


@dataclass(frozen=True)
class OperatorSpec:
    kind: Literal["ac", "cs"]
    ends: tuple[EndSpec, ...]

    def __post_init__(self):
        if self.kind not in (AC, CS):
            raise ValueError("kind must be 'ac' or 'cs'")
        if not self.ends:
            raise ValueError("need at least one end")


def _check_off_wall(cone: ConeData, rate: float) -> None:
    cov_lo, cov_hi = cone.rate_coverage()
    if not cov_lo <= rate <= cov_hi:
        raise CutoffExceeded(
            f"rate {rate} outside the covered rate interval "
            f"[{cov_lo:g}, {cov_hi:g}]"
        )
    lo, hi = max(rate - 0.5, cov_lo), min(rate + 0.5, cov_hi)
    for lam, _ in cone.roots_in(Window(lo, hi)):
        if abs(lam - rate) <= WALL_TOL:
            raise RateOnWall(f"rate {rate} lies on the indicial root {lam}")


def _end_contribution(end: EndSpec) -> Fraction:
    half = Fraction(end.cone.d_at(-1), 2)
    if end.rate >= -1.0:
        between = Window(-1, end.rate, include_lo=False, include_hi=False)
        return half + end.cone.d_sum(between)
    between = Window(end.rate, -1, include_lo=False, include_hi=False)
    return -(half + end.cone.d_sum(between))


def _as_integer(total: Fraction) -> int:
    if total.denominator != 1:
        raise NonIntegerIndex(
            f"end contributions sum to {total}; an odd d_(-1) was left unpaired"
        )
    return int(total)


def index(op: OperatorSpec) -> int:
    """Fredholm index of the weighted Fueter operator (AC; negated for CS)."""
    total = sum((_end_contribution(e) for e in op.ends), Fraction(0))
    value = _as_integer(total)
    return value if op.kind == AC else -value


def crossed_roots(
    op: OperatorSpec, rate_from: float, rate_to: float, end: int | None = None
) -> list[tuple[float, int]]:
    """Indicial roots strictly between the two (off-wall) rates."""
    ends = op.ends if end is None else (op.ends[end],)
    for e in ends:
        _check_off_wall(e.cone, rate_from)
        _check_off_wall(e.cone, rate_to)
    lo, hi = min(rate_from, rate_to), max(rate_from, rate_to)
    window = Window(lo, hi, include_lo=False, include_hi=False)
    out: list[tuple[float, int]] = []
    for e in ends:
        out.extend(e.cone.roots_in(window))
    return sorted(out)


def wall_crossing(
    op: OperatorSpec, rate_from: float, rate_to: float, end: int | None = None
) -> int:
    """Index jump when moving rates from ``rate_from`` to ``rate_to``.

    Computed as the signed sum of d_lambda over the crossed roots; equals
    index(at rate_to) - index(at rate_from).  Applies to the single end
    ``end`` when given, otherwise to every end simultaneously.
    """
    crossed = sum(d for _, d in crossed_roots(op, rate_from, rate_to, end))
    direction = 1 if rate_to > rate_from else -1
    sign = direction if op.kind == AC else -direction
    return sign * crossed


def with_rates(op: OperatorSpec, rates: Sequence[float] | float) -> OperatorSpec:
    """A copy of ``op`` with new weight rates."""
    if isinstance(rates, (int, float)):
        rates = [float(rates)] * len(op.ends)
    if len(rates) != len(op.ends):
        raise ValueError("need one rate per end")
    return OperatorSpec(
        kind=op.kind,
        ends=tuple(EndSpec(e.cone, float(r)) for e, r in zip(op.ends, rates)),
    )


def cs_moduli_virtual_dim(cones: Sequence[ConeData], one_parameter: bool = False) -> int:
    """-sum_i s-ind(C_i), plus 1 inside a one-parameter family."""
    total = -sum((s_ind(c) for c in cones), Fraction(0))
    if one_parameter:
        total += 1
    return _as_integer(total)


def ac_sl_kernel_dim(b1_of_L: int, b0_of_link: int) -> int:
    """dim ker at rate -1 for an AC special Lagrangian: b^1(L) + b^0(link) - 1."""
    if b1_of_L < 0:
        raise ValueError("b1 must be nonnegative")
    if b0_of_link < 1:
        raise ValueError("the link of a nonempty cone has b0 >= 1")
    return b1_of_L + b0_of_link - 1


def chamber(cone: ConeData, rate: float, span: float = 4.0) -> tuple[float, float]:
    """The open interval of off-wall rates around ``rate``.

    Clipped to +-span and to the rate interval the cone's kernel data covers,
    so chamber detection never asks for eigenvalues beyond the cutoff.
    """
    _check_off_wall(cone, rate)
    cov_lo, cov_hi = cone.rate_coverage()
    lo, hi = max(rate - span, cov_lo), min(rate + span, cov_hi)
    for lam, _ in cone.roots_in(Window(lo, hi)):
        if lam < rate:
            lo = max(lo, lam)
        elif lam > rate:
            hi = min(hi, lam)
    return lo, hi


def index_report(op: OperatorSpec) -> dict:
    """JSON-ready report with per-end contributions and chamber walls."""
    ends = []
    for e in op.ends:
        contrib = _end_contribution(e)
        lo, hi = chamber(e.cone, e.rate)
        ends.append(
            {
                "rate": e.rate,
                "contribution_ac": str(contrib),
                "chamber": [lo, hi],
                "d_minus_one": e.cone.d_at(-1),
            }
        )
    return {"kind": op.kind, "index": index(op), "ends": ends}
