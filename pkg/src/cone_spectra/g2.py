"""Exact G2 linear algebra on R^7 and the SU(3) calibration data on C^3.

Conventions.  ``e_1 .. e_7`` is the oriented orthonormal frame in which the
associative 3-form has the monomial expansion

    phi = e^123 - e^145 - e^167 - e^246 - e^275 - e^347 - e^356.

The structure constants of the cross product, the associator and the
coassociative 4-form ``psi(u,v,w,z) = <[u,v,w], z>`` are all generated from
these seven monomials by antisymmetrization; nothing is hand-entered.

R^7 splits as R.e_1 + C^3.  The complex structure on the C^3 factor is
``J = e_1 x (.)`` and the complex coordinate axes are chosen so that

    phi = e^1 ^ omega + Re(Omega),      Omega = dz1 ^ dz2 ^ dz3,

which forces the real axes X = (e_2, -e_4, e_6) and the imaginary axes
Y = J X = (e_3, e_5, -e_7).  With this pairing the real locus
span(e_2, e_4, e_6) is the model special Lagrangian plane; this is asserted
at import time.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .errors import DegenerateFrame

Vec7 = np.ndarray  # shape (7,), float entries

#: monomials of phi as (i, j, k, sign), 1-based indices as in the expansion
PHI_MONOMIALS = (
    (1, 2, 3, +1),
    (1, 4, 5, -1),
    (1, 6, 7, -1),
    (2, 4, 6, -1),
    (2, 7, 5, -1),
    (3, 4, 7, -1),
    (3, 5, 6, -1),
)


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _build_phi() -> np.ndarray:
    phi = np.zeros((7, 7, 7))
    for i, j, k, s in PHI_MONOMIALS:
        base = (i - 1, j - 1, k - 1)
        # sign relative to the monomial's own index order
        for perm in itertools.permutations(range(3)):
            phi[base[perm[0]], base[perm[1]], base[perm[2]]] = s * _perm_sign(perm)
    return phi


PHI = _build_phi()
PHI.setflags(write=False)


def cross(u: Vec7, v: Vec7) -> Vec7:
    """Seven-dimensional cross product, g(u x v, w) = phi(u, v, w)."""
    return np.einsum("ijk,i,j->k", PHI, u, v)


def phi3(u: Vec7, v: Vec7, w: Vec7) -> float:
    """The associative 3-form phi(u, v, w)."""
    return float(np.einsum("ijk,i,j,k->", PHI, u, v, w))


def associator(u: Vec7, v: Vec7, w: Vec7) -> Vec7:
    """[u,v,w] = (u x v) x w + <v,w> u - <u,w> v; vanishes on associative planes."""
    return cross(cross(u, v), w) + np.dot(v, w) * u - np.dot(u, w) * v


def _build_psi() -> np.ndarray:
    # psi(e_i,e_j,e_k,e_l) = g([e_i,e_j,e_k], e_l)
    eye = np.eye(7)
    psi = np.zeros((7, 7, 7, 7))
    for i in range(7):
        for j in range(7):
            for k in range(7):
                psi[i, j, k, :] = associator(eye[i], eye[j], eye[k])
    return psi


PSI = _build_psi()
PSI.setflags(write=False)


def psi4(u: Vec7, v: Vec7, w: Vec7, z: Vec7) -> float:
    """The coassociative 4-form psi(u,v,w,z) = g([u,v,w], z)."""
    return float(np.einsum("ijkl,i,j,k,l->", PSI, u, v, w, z))


# ---------------------------------------------------------------------------
# the G2 identity  iota_u phi ^ iota_v phi ^ phi = 6 g(u,v) vol
# ---------------------------------------------------------------------------

def _build_perm7():
    perms = np.array(list(itertools.permutations(range(7))), dtype=np.intp)
    signs = np.array([_perm_sign(p) for p in perms], dtype=np.float64)
    return perms, signs


_PERMS7, _SIGNS7 = _build_perm7()


def g2_identity_residual(u: Vec7, v: Vec7) -> float:
    """Coefficient of iota_u phi ^ iota_v phi ^ phi - 6 g(u,v) vol.

    Zero (to rounding) for every pair; exercised as a structure-constant
    self-check.
    """
    a = np.einsum("ijk,i->jk", PHI, u)  # 2-form iota_u phi
    b = np.einsum("ijk,i->jk", PHI, v)
    p = _PERMS7
    terms = (
        a[p[:, 0], p[:, 1]]
        * b[p[:, 2], p[:, 3]]
        * PHI[p[:, 4], p[:, 5], p[:, 6]]
    )
    # wedge of a 2-, 2- and 3-form evaluated on (e_1,...,e_7)
    coeff = float(np.dot(_SIGNS7, terms)) / (2.0 * 2.0 * 6.0)
    return coeff - 6.0 * float(np.dot(u, v))


# ---------------------------------------------------------------------------
# frames
# ---------------------------------------------------------------------------

RANK_TOL = 1e-10


def orthonormalize(vectors, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Modified Gram-Schmidt; raises DegenerateFrame below full rank."""
    out = []
    for v in vectors:
        w = np.array(v, dtype=float)
        for q in out:
            w = w - np.dot(q, w) * q
        # second pass stabilizes nearly dependent inputs
        for q in out:
            w = w - np.dot(q, w) * q
        n = float(np.linalg.norm(w))
        if n < rank_tol:
            raise DegenerateFrame(f"frame has rank < {len(vectors)} (tol {rank_tol})")
        out.append(w / n)
    return np.array(out)


def is_associative_frame(frame, tol: float = 1e-8) -> bool:
    """True iff the 3-plane spanned by ``frame`` is associative.

    The frame is orthonormalized first; raises DegenerateFrame on rank < 3.
    """
    f = orthonormalize(frame)
    if len(f) != 3:
        raise DegenerateFrame("associativity test needs exactly 3 vectors")
    return float(np.linalg.norm(associator(f[0], f[1], f[2]))) < tol


# ---------------------------------------------------------------------------
# SU(3) data on C^3 = span(e_2,...,e_7)
# ---------------------------------------------------------------------------

E = np.eye(7)
E1 = E[0]

#: real and imaginary coordinate axes of (z_1, z_2, z_3)
X_AXES = np.array([E[1], -E[3], E[5]])
Y_AXES = np.array([cross(E1, x) for x in X_AXES])


def complex_structure(v: Vec7) -> Vec7:
    """J v = e_1 x v (the ambient complex structure of C^3 inside R^7)."""
    return cross(E1, v)


def from_c3(z) -> Vec7:
    """Embed (z_1, z_2, z_3) in C^3 as a Vec7 with zero e_1 part."""
    z = np.asarray(z, dtype=complex)
    return z.real @ X_AXES + z.imag @ Y_AXES


def to_c3(v: Vec7) -> np.ndarray:
    """Complex coordinates of the C^3 part of v (the e_1 part is dropped)."""
    return X_AXES @ v + 1j * (Y_AXES @ v)


def kahler_form(u: Vec7, v: Vec7) -> float:
    """omega(u, v) = g(Ju, v) = phi(e_1, u, v) on C^3 vectors."""
    return phi3(E1, u, v)


def re_omega(u: Vec7, v: Vec7, w: Vec7) -> float:
    """Re Omega = phi restricted to C^3 (phi = e^1 ^ omega + Re Omega)."""
    return phi3(u, v, w)


def im_omega(u: Vec7, v: Vec7, w: Vec7) -> float:
    """Im Omega = -iota_{e_1} psi on C^3 (psi = omega^2/2 - e^1 ^ Im Omega)."""
    return -psi4(E1, u, v, w)


def holomorphic_volume(u: Vec7, v: Vec7, w: Vec7) -> complex:
    """Omega(u, v, w) as a complex number."""
    return complex(re_omega(u, v, w), im_omega(u, v, w))


def lagrangian_residual(frame) -> float:
    """max |omega(f_i, f_j)| over an orthonormalized frame (2 or 3 vectors)."""
    f = orthonormalize(frame)
    return max(
        abs(kahler_form(f[i], f[j]))
        for i in range(len(f))
        for j in range(i + 1, len(f))
    )


def sl_residual(frame, phase: float = 0.0) -> tuple[float, float]:
    """(max |omega(f_i,f_j)|, |Im(e^{i phase} Omega)(f_1,f_2,f_3)|).

    Both vanish iff the orthonormalized 3-frame spans a special Lagrangian
    plane of the given phase (up to orientation).
    """
    f = orthonormalize(frame)
    if len(f) != 3:
        raise DegenerateFrame("sl_residual needs exactly 3 vectors")
    omega_res = lagrangian_residual(f)
    vol = holomorphic_volume(f[0], f[1], f[2]) * complex(math.cos(phase), math.sin(phase))
    return omega_res, abs(vol.imag)


def _check_conventions() -> None:
    # the complex pairing must make the real locus span(e_2, e_4, e_6)
    # an associative (indeed special Lagrangian) plane
    if not is_associative_frame(X_AXES, tol=1e-12):
        raise AssertionError("G2/SU(3) convention broken: R^3 is not associative")
    if abs(re_omega(*X_AXES) - 1.0) > 1e-12:
        raise AssertionError("G2/SU(3) convention broken: Re Omega(R^3) != 1")


_check_conventions()
