"""Triangle meshes and the numeric Laplace spectrum fallback.

The discrete operator is the cotangent-weight Laplacian with lumped
(barycentric diagonal) mass; the generalized problem L x = lambda M x is
reduced by M^{-1/2} to a dense symmetric eigenproblem, which is exact enough
at desk scale (< 5k vertices).  Only intrinsic data (triangle edge lengths)
enter, so vertices may live in any ambient R^d with d >= 3; the flat
Clifford-torus sample needs d = 6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidMesh
from .spectra import Spectrum

AREA_TOL = 1e-14
CLUSTER_REL_GAP = 1e-3


@dataclass(frozen=True)
class TriMesh:
    """Closed oriented manifold triangle mesh."""

    vertices: np.ndarray  # (nv, d), d >= 3
    faces: np.ndarray  # (nf, 3) int

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        f = np.asarray(self.faces, dtype=int)
        object.__setattr__(self, "vertices", v)
        object.__setattr__(self, "faces", f)
        if v.ndim != 2 or v.shape[1] < 3:
            raise InvalidMesh("vertices must be an (nv, d>=3) array")
        if f.ndim != 2 or f.shape[1] != 3:
            raise InvalidMesh("faces must be an (nf, 3) array")
        if f.size and (f.min() < 0 or f.max() >= len(v)):
            raise InvalidMesh("face index out of range")
        self._check_structure()

    def _check_structure(self):
        if len(self.faces) == 0:
            raise InvalidMesh("mesh has no faces")
        if np.any(self.face_areas() <= AREA_TOL):
            raise InvalidMesh("degenerate face (area <= 1e-14)")
        directed: set[tuple[int, int]] = set()
        for a, b, c in self.faces:
            if a == b or b == c or a == c:
                raise InvalidMesh("face with repeated vertex")
            for e in ((a, b), (b, c), (c, a)):
                if e in directed:
                    raise InvalidMesh("non-manifold or inconsistently oriented edge")
                directed.add(e)
        # closed and oriented: every directed edge is matched by its reverse
        for a, b in directed:
            if (b, a) not in directed:
                raise InvalidMesh("open boundary edge")

    def face_areas(self) -> np.ndarray:
        p = self.vertices
        a = p[self.faces[:, 1]] - p[self.faces[:, 0]]
        b = p[self.faces[:, 2]] - p[self.faces[:, 0]]
        # Gram determinant works in any ambient dimension
        aa = np.einsum("ij,ij->i", a, a)
        bb = np.einsum("ij,ij->i", b, b)
        ab = np.einsum("ij,ij->i", a, b)
        g = np.maximum(aa * bb - ab * ab, 0.0)
        return 0.5 * np.sqrt(g)


def load_off(path) -> TriMesh:
    """Read an OFF file ("OFF", counts, vertex lines, face lines "3 i j k")."""
    with open(path, "r", encoding="utf-8") as fh:
        tokens: list[str] = []
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                tokens.extend(line.split())
    if not tokens or tokens[0] != "OFF":
        raise InvalidMesh("not an OFF file (missing header)")
    nv, nf = int(tokens[1]), int(tokens[2])
    pos = 4  # skip edge count
    verts = np.array(tokens[pos : pos + 3 * nv], dtype=float).reshape(nv, 3)
    pos += 3 * nv
    faces = []
    for _ in range(nf):
        k = int(tokens[pos])
        if k != 3:
            raise InvalidMesh("only triangle faces are supported")
        faces.append([int(t) for t in tokens[pos + 1 : pos + 4]])
        pos += 4
    return TriMesh(verts, np.array(faces, dtype=int))


def save_off(mesh: TriMesh, path) -> None:
    if mesh.vertices.shape[1] != 3:
        raise InvalidMesh("OFF export requires 3D vertices")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("OFF\n")
        fh.write(f"{len(mesh.vertices)} {len(mesh.faces)} 0\n")
        for v in mesh.vertices:
            fh.write(f"{float(v[0])!r} {float(v[1])!r} {float(v[2])!r}\n")
        for f in mesh.faces:
            fh.write(f"3 {f[0]} {f[1]} {f[2]}\n")


def cotangent_laplacian(mesh: TriMesh) -> tuple[np.ndarray, np.ndarray]:
    """Dense cotangent-weight stiffness matrix and lumped mass vector."""
    nv = len(mesh.vertices)
    p = mesh.vertices
    L = np.zeros((nv, nv))
    mass = np.zeros(nv)
    areas = mesh.face_areas()
    for (i, j, k), area in zip(mesh.faces, areas):
        idx = (i, j, k)
        for c in range(3):
            a, b, o = idx[c], idx[(c + 1) % 3], idx[(c + 2) % 3]
            # cot of the angle at o, opposite the edge (a, b)
            u = p[a] - p[o]
            v = p[b] - p[o]
            cot = float(np.dot(u, v)) / (2.0 * area)
            w = 0.5 * cot
            L[a, b] -= w
            L[b, a] -= w
            L[a, a] += w
            L[b, b] += w
        third = area / 3.0
        mass[i] += third
        mass[j] += third
        mass[k] += third
    return L, mass


def _cluster(eigenvalues: np.ndarray) -> tuple[tuple[float, int], ...]:
    entries: list[tuple[float, int]] = []
    group: list[float] = []
    for ev in eigenvalues:
        if group and ev - group[-1] > CLUSTER_REL_GAP * max(1.0, abs(ev)):
            entries.append((float(np.mean(group)), len(group)))
            group = []
        group.append(float(ev))
    if group:
        entries.append((float(np.mean(group)), len(group)))
    return tuple(entries)


def mesh_spectrum(mesh: TriMesh, count: int) -> Spectrum:
    """Lowest ``count`` Laplace eigenvalues of a closed mesh.

    Multiplicities are clustered with relative gap 1e-3; the result is
    marked inexact and its cutoff is the largest computed eigenvalue.
    """
    nv = len(mesh.vertices)
    if not 1 <= count <= nv:
        raise ValueError("count must be between 1 and the vertex count")
    L, mass = cotangent_laplacian(mesh)
    L = 0.5 * (L + L.T)
    s = 1.0 / np.sqrt(mass)
    A = L * s[:, None] * s[None, :]
    A = 0.5 * (A + A.T)
    vals = scipy.linalg.eigh(A, eigvals_only=True, subset_by_index=(0, count - 1))
    vals = np.asarray(vals, dtype=float)
    if vals[0] < -1e-9:
        raise InvalidMesh(f"negative eigenvalue {vals[0]:g}; mesh badly conditioned")
    vals = np.maximum(vals, 0.0)
    return Spectrum(entries=_cluster(vals), cutoff=float(vals[-1]), exact=False)


# ---------------------------------------------------------------------------
# built-in meshes
# ---------------------------------------------------------------------------

def icosphere(refinements: int) -> TriMesh:
    """Unit sphere obtained by subdividing the icosahedron ``refinements`` times."""
    t = (1.0 + math.sqrt(5.0)) / 2.0
    verts = [
        (-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
        (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
        (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1),
    ]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    verts = [np.array(v, dtype=float) / np.linalg.norm(v) for v in verts]
    for _ in range(refinements):
        midpoint: dict[tuple[int, int], int] = {}

        def mid(i, j):
            key = (min(i, j), max(i, j))
            if key not in midpoint:
                m = verts[i] + verts[j]
                verts.append(m / np.linalg.norm(m))
                midpoint[key] = len(verts) - 1
            return midpoint[key]

        new_faces = []
        for a, b, c in faces:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            new_faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = new_faces
    return TriMesh(np.array(verts), np.array(faces, dtype=int))


def clifford_torus_mesh(n: int = 64) -> TriMesh:
    """Regular n x n grid sample of the unit-norm Clifford torus link in R^6."""
    if n < 3:
        raise ValueError("need n >= 3")
    thetas = 2.0 * math.pi * np.arange(n) / n
    verts = np.zeros((n * n, 6))
    inv_sqrt3 = 1.0 / math.sqrt(3.0)
    for i, t1 in enumerate(thetas):
        for j, t2 in enumerate(thetas):
            z = inv_sqrt3 * np.array(
                [np.exp(1j * t1), np.exp(1j * t2), np.exp(-1j * (t1 + t2))]
            )
            verts[i * n + j] = np.concatenate([z.real, z.imag])
    faces = []
    for i in range(n):
        for j in range(n):
            a = i * n + j
            b = ((i + 1) % n) * n + j
            c = ((i + 1) % n) * n + (j + 1) % n
            d = i * n + (j + 1) % n
            faces.append((a, b, c))
            faces.append((a, c, d))
    return TriMesh(verts, np.array(faces, dtype=int))
