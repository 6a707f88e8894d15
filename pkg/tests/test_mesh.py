"""Cotangent-Laplacian spectra on triangle meshes."""

import numpy as np
import pytest

from cone_spectra.errors import InvalidMesh
from cone_spectra.mesh import (
    TriMesh,
    clifford_torus_mesh,
    icosphere,
    load_off,
    mesh_spectrum,
    save_off,
)
from cone_spectra.spectra import clifford_torus_metric, torus_spectrum

SPHERE_TARGET = np.array([0.0, 2, 2, 2, 6, 6, 6, 6, 6])


def _relative_errors(values, target):
    values = np.asarray(values)
    errs = []
    for v, t in zip(values, target):
        errs.append(abs(v - t) if t == 0 else abs(v - t) / t)
    return np.array(errs)


def test_icosphere_counts():
    mesh = icosphere(2)
    assert len(mesh.vertices) == 162
    assert len(mesh.faces) == 320
    assert np.allclose(np.linalg.norm(mesh.vertices, axis=1), 1.0)


def test_icosphere_spectrum_refinement_4():
    sp = mesh_spectrum(icosphere(4), 9)
    vals = sp.eigenvalues()
    errs = _relative_errors(vals, SPHERE_TARGET)
    assert errs[0] < 1e-6
    assert np.all(errs[1:] < 0.05)
    assert not sp.exact


def test_sphere_convergence_is_monotone():
    worst = []
    for refinement in (2, 3, 4):
        vals = mesh_spectrum(icosphere(refinement), 9).eigenvalues()
        worst.append(_relative_errors(vals, SPHERE_TARGET)[1:].max())
    assert worst[0] > worst[1] > worst[2]


def test_clifford_mesh_spectrum():
    target = [float(e) for e in torus_spectrum(clifford_torus_metric(), 2).eigenvalues()][:7]
    vals = mesh_spectrum(clifford_torus_mesh(48), 7).eigenvalues()
    errs = _relative_errors(vals, target)
    assert errs[0] < 1e-6
    assert np.all(errs[1:] < 0.05)


def test_single_eigenvalue_is_constant_mode():
    sp = mesh_spectrum(icosphere(1), 1)
    assert len(sp.eigenvalues()) == 1
    assert abs(sp.eigenvalues()[0]) < 1e-6


def test_eigenvalues_nonnegative():
    sp = mesh_spectrum(icosphere(2), 20)
    assert all(v >= -1e-9 for v in sp.eigenvalues())
    assert sp.eigenvalues()[0] < 1e-6


def test_open_boundary_rejected():
    mesh = icosphere(1)
    with pytest.raises(InvalidMesh):
        TriMesh(mesh.vertices, mesh.faces[:-1])


def test_degenerate_face_rejected():
    verts = np.array([[0, 0, 0], [1, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=float)
    faces = np.array([[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]])
    with pytest.raises(InvalidMesh):
        TriMesh(verts, faces)


def test_non_manifold_rejected():
    mesh = icosphere(0)
    faces = np.vstack([mesh.faces, mesh.faces[0]])
    with pytest.raises(InvalidMesh):
        TriMesh(mesh.vertices, faces)


def test_bad_index_rejected():
    with pytest.raises(InvalidMesh):
        TriMesh(np.eye(3), np.array([[0, 1, 3]]))


def test_off_round_trip(tmp_path):
    mesh = icosphere(1)
    path = tmp_path / "ico.off"
    save_off(mesh, path)
    back = load_off(path)
    assert np.allclose(back.vertices, mesh.vertices)
    assert np.array_equal(back.faces, mesh.faces)


def test_off_rejects_garbage(tmp_path):
    path = tmp_path / "bad.off"
    path.write_text("PLY\n3 1 0\n")
    with pytest.raises(InvalidMesh):
        load_off(path)


def test_count_validation():
    mesh = icosphere(0)
    with pytest.raises(ValueError):
        mesh_spectrum(mesh, 0)
    with pytest.raises(ValueError):
        mesh_spectrum(mesh, len(mesh.vertices) + 1)
