"""Built-in cones covering the worked examples: Harvey-Lawson T^2-cone,
single SL plane, transverse SL plane pair, and synthetic flat-torus links."""

from __future__ import annotations

from .indicial import SLConeSpec
from .spectra import (
    LinkTopology,
    TorusMetric,
    clifford_torus_metric,
    sphere_spectrum,
    torus_spectrum,
)
from .stability import ConeComponent, ConeData

DEFAULT_CUTOFF = 12.0

#: dim of the G2 symmetry groups of the built-in links
HL_SYMMETRY_DIM = 2  # H = U(1)^2
PLANE_SYMMETRY_DIM = 6  # H = SO(4)


def hl_cone_spec(cutoff: float = DEFAULT_CUTOFF) -> SLConeSpec:
    """The Harvey-Lawson T^2-cone: flat Clifford-torus link, genus 1."""
    return SLConeSpec(
        spectrum=torus_spectrum(clifford_torus_metric(), cutoff),
        topology=LinkTopology(b0=1, b1=2, genus_per_component=(1,)),
        label="harvey-lawson",
    )


def plane_cone_spec(cutoff: float = DEFAULT_CUTOFF) -> SLConeSpec:
    """A single SL 3-plane: totally geodesic S^2 link."""
    return SLConeSpec(
        spectrum=sphere_spectrum(cutoff),
        topology=LinkTopology(b0=1, b1=0, genus_per_component=(0,)),
        label="sl-plane",
    )


def torus_cone_spec(metric: TorusMetric, cutoff: float = DEFAULT_CUTOFF) -> SLConeSpec:
    """Synthetic cone with a flat-torus link of the given metric."""
    return SLConeSpec(
        spectrum=torus_spectrum(metric, cutoff),
        topology=LinkTopology(b0=1, b1=2, genus_per_component=(1,)),
        label=f"torus({metric.g11},{metric.g12},{metric.g22})",
    )


def hl_cone(cutoff: float = DEFAULT_CUTOFF, symmetry_dim: int | None = HL_SYMMETRY_DIM) -> ConeData:
    return ConeData(
        components=(
            ConeComponent(hl_cone_spec(cutoff), symmetry_group_dim=symmetry_dim),
        )
    )


def plane_cone(cutoff: float = DEFAULT_CUTOFF, symmetry_dim: int | None = PLANE_SYMMETRY_DIM) -> ConeData:
    return ConeData(
        components=(
            ConeComponent(
                plane_cone_spec(cutoff), symmetry_group_dim=symmetry_dim, is_plane=True
            ),
        )
    )


def plane_pair_cone(cutoff: float = DEFAULT_CUTOFF, symmetry_dim: int | None = PLANE_SYMMETRY_DIM) -> ConeData:
    """A transverse pair of SL planes: two totally geodesic S^2 components."""
    comp = ConeComponent(
        plane_cone_spec(cutoff), symmetry_group_dim=symmetry_dim, is_plane=True
    )
    return ConeData(components=(comp, comp))


def torus_cone(metric: TorusMetric, cutoff: float = DEFAULT_CUTOFF) -> ConeData:
    return ConeData(components=(ConeComponent(torus_cone_spec(metric, cutoff)),))


PRESET_PROVENANCE = {
    "hl": "Harvey-Lawson T^2-cone, Clifford-torus link, H = U(1)^2",
    "plane": "special Lagrangian 3-plane, totally geodesic S^2 link, H = SO(4)",
    "plane-pair": "transverse pair of SL planes (two S^2 link components)",
    "torus": "synthetic flat-torus link (user metric)",
    "table": "user-supplied d-lambda table",
}
