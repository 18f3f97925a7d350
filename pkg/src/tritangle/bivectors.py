"""Bivector algebra on the Klein quadric.

Conventions: epsilon_1234 = +1, indices raised and lowered with the
identity metric, and Q(P1, P2) = (1/2) eps_mnrs P1^mn P2^rs.  With this
normalization Q(P, P) equals four times the quadric residual
P12 P34 - P13 P24 + P23 P14, and 2|Q(P, *P)| reproduces the genuine
tripartite tangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import ConsistencyError, InvalidStateError
from .twistor import TwistorPair, bilinear_dot, linearly_dependent


def _epsilon() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in permutations(range(4)):
        mat = np.zeros((4, 4))
        mat[range(4), perm] = 1.0
        eps[perm] = np.linalg.det(mat)
    eps.setflags(write=False)
    return eps


EPSILON = _epsilon()

# (row, col) pairs of the six independent components, mu < nu
_UPPER = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@dataclass(frozen=True)
class Bivector:
    """Antisymmetric 4x4 complex array of Plucker coordinates P^mu_nu."""

    components: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.components, dtype=complex)
        if mat.shape != (4, 4):
            raise InvalidStateError(f"bivector must be 4x4, got {mat.shape}")
        scale = np.max(np.abs(mat))
        if scale > 0 and np.max(np.abs(mat + mat.T)) > 1e-12 * scale:
            raise InvalidStateError("bivector input is not antisymmetric")
        canon = np.zeros((4, 4), dtype=complex)
        for i, j in _UPPER:
            canon[i, j] = mat[i, j]
            canon[j, i] = -mat[i, j]
        canon.setflags(write=False)
        object.__setattr__(self, "components", canon)

    @classmethod
    def from_upper(cls, p12, p13, p14, p23, p24, p34) -> "Bivector":
        mat = np.zeros((4, 4), dtype=complex)
        for (i, j), val in zip(_UPPER, (p12, p13, p14, p23, p24, p34)):
            mat[i, j] = val
            mat[j, i] = -val
        return cls(mat)

    def upper(self) -> np.ndarray:
        """The six independent components (P12, P13, P14, P23, P24, P34)."""
        return np.array([self.components[i, j] for i, j in _UPPER])

    @property
    def norm_squared(self) -> float:
        """Frobenius norm squared of the 4x4 array."""
        return float(np.sum(np.abs(self.components) ** 2))

    def is_zero(self, rtol: float = 0.0, scale: float = 1.0) -> bool:
        return bool(np.max(np.abs(self.components)) <= rtol * scale)


def plucker(pair: TwistorPair) -> Bivector:
    """Separable bivector P^mn = Z^m W^n - Z^n W^m of a twistor pair."""
    z, w = pair.z, pair.w
    return Bivector.from_upper(
        z[0] * w[1] - z[1] * w[0],
        z[0] * w[2] - z[2] * w[0],
        z[0] * w[3] - z[3] * w[0],
        z[1] * w[2] - z[2] * w[1],
        z[1] * w[3] - z[3] * w[1],
        z[2] * w[3] - z[3] * w[2],
    )


def plucker_residual(p: Bivector) -> complex:
    """Left-hand side of the quadric relation; zero iff P is separable."""
    c = p.components
    return complex(c[0, 1] * c[2, 3] - c[0, 2] * c[1, 3] + c[1, 2] * c[0, 3])


def hodge_dual(p: Bivector) -> Bivector:
    """(*P)_mn = (1/2) eps_mnrs P^rs; an involution."""
    c = p.components
    return Bivector.from_upper(
        c[2, 3], -c[1, 3], c[1, 2], c[0, 3], -c[0, 2], c[0, 1]
    )


def q_form(p1: Bivector, p2: Bivector) -> complex:
    """Q(P1, P2) = (1/2) eps_mnrs P1^mn P2^rs."""
    a, b = p1.components, p2.components
    return complex(
        2.0
        * (
            a[0, 1] * b[2, 3]
            + a[2, 3] * b[0, 1]
            - a[0, 2] * b[1, 3]
            - a[1, 3] * b[0, 2]
            + a[0, 3] * b[1, 2]
            + a[1, 2] * b[0, 3]
        )
    )


def planes_intersect(
    pair1: TwistorPair, pair2: TwistorPair, tol: float = 1e-10
) -> tuple[bool, int]:
    """Whether two 2-planes meet nontrivially, plus the intersection dimension.

    The boolean comes from the Q-form criterion; the dimension from the
    rank of the stacked spanning vectors.  The two answers must agree.
    """
    for pair in (pair1, pair2):
        if linearly_dependent(pair):
            raise InvalidStateError("plane is degenerate: spanning vectors are dependent")
    p1, p2 = plucker(pair1), plucker(pair2)
    q = q_form(p1, p2)
    q_zero = abs(q) <= tol * np.sqrt(p1.norm_squared * p2.norm_squared)
    stack = np.vstack([pair1.stack(), pair2.stack()])
    sv = np.linalg.svd(stack, compute_uv=False)
    rank = int(np.sum(sv > 1e-10 * sv[0]))
    dimension = 4 - rank
    if q_zero != (dimension >= 1):
        raise ConsistencyError(
            f"Q-form criterion (|Q| = {abs(q):.3e}) disagrees with rank oracle "
            f"(intersection dimension {dimension})"
        )
    return q_zero, dimension


def _plane_flags(pair: TwistorPair, tol: float):
    p = plucker(pair)
    dual = hodge_dual(p)
    scale = np.sqrt(p.norm_squared)
    anti = bool(np.max(np.abs(dual.components + p.components)) <= tol * scale)
    self_dual = bool(np.max(np.abs(dual.components - p.components)) <= tol * scale)
    zn = np.sqrt(np.sum(np.abs(pair.z) ** 2))
    wn = np.sqrt(np.sum(np.abs(pair.w) ** 2))
    orthogonal = bool(abs(bilinear_dot(pair.z, pair.w)) <= tol * zn * wn)
    return anti, self_dual, orthogonal, zn, wn


def _check_null_vectors(pair: TwistorPair, tol: float, kind: str):
    zn2 = np.sum(np.abs(pair.z) ** 2)
    wn2 = np.sum(np.abs(pair.w) ** 2)
    if abs(bilinear_dot(pair.z, pair.z)) > 10 * tol * zn2 or abs(
        bilinear_dot(pair.w, pair.w)
    ) > 10 * tol * wn2:
        raise ConsistencyError(f"{kind}-plane membership without null spanning vectors")


def is_beta_plane(pair: TwistorPair, tol: float = 1e-10) -> bool:
    """Anti-self-dual plane with orthogonal spanning vectors."""
    anti, _, orthogonal, _, _ = _plane_flags(pair, tol)
    member = anti and orthogonal
    if member:
        _check_null_vectors(pair, tol, "beta")
    return member


def is_alpha_plane(pair: TwistorPair, tol: float = 1e-10) -> bool:
    """Self-dual plane with orthogonal spanning vectors."""
    _, self_dual, orthogonal, _, _ = _plane_flags(pair, tol)
    member = self_dual and orthogonal
    if member:
        _check_null_vectors(pair, tol, "alpha")
    return member


def null_line_check(p: Bivector, tol: float = 1e-10) -> bool:
    """True when the line through P and *P lies entirely in the quadric.

    Decided by the three coefficients Q(P,P), Q(P,*P), Q(*P,*P) of
    Q(L(t), L(t)) all vanishing.  Requires a separable input.
    """
    scale = p.norm_squared
    if abs(plucker_residual(p)) > 1e-10 * max(scale, 1e-300):
        raise InvalidStateError("null-line check requires a separable bivector")
    dual = hodge_dual(p)
    coeffs = (q_form(p, p), q_form(p, dual), q_form(dual, dual))
    return all(abs(c) <= tol * scale for c in coeffs)


@dataclass(frozen=True)
class PrincipalDirections:
    """Null directions of the (Z, W) plane and the discriminant phase.

    Each nonzero direction is an eigenvector of D -> P^mn D_n with
    eigenvalue +-(1/2) sqrt(tau) e^{i phi/2}.  When the discriminant
    vanishes the two branches coincide and multiplicity is 2.
    """

    u_plus: np.ndarray
    u_minus: np.ndarray
    v_plus: np.ndarray
    v_minus: np.ndarray
    phi: float
    eigenvalue_magnitude: float
    multiplicity: int

    @property
    def eigenvalue(self) -> complex:
        return self.eigenvalue_magnitude * np.exp(0.5j * self.phi)


def principal_null_directions(pair: TwistorPair) -> PrincipalDirections:
    """Solve the root equation of the plane pencil lambda Z + kappa W.

    U_+- = Z_n P^nm +- (1/2) sqrt(tau) e^{i phi/2} Z^m and
    V_+- = P^mn W_n +- (1/2) sqrt(tau) e^{i phi/2} W^m, with
    phi = arg[(Z.W)^2 - (Z.Z)(W.W)].
    """
    if linearly_dependent(pair):
        raise InvalidStateError("principal directions need independent Z, W")
    z, w = pair.z, pair.w
    disc = bilinear_dot(z, w) ** 2 - bilinear_dot(z, z) * bilinear_dot(w, w)
    tau = 4.0 * abs(disc)
    phi = float(np.angle(disc))
    scale = pair.norm_squared
    p = plucker(pair).components
    pz = p @ z
    pw = p @ w
    if abs(disc) <= 1e-12 * scale**2:
        return PrincipalDirections(-pz, -pz, pw, pw, phi, 0.0, 2)
    eig = 0.5 * np.sqrt(tau) * np.exp(0.5j * phi)
    return PrincipalDirections(
        -pz + eig * z, -pz - eig * z, pw + eig * w, pw - eig * w,
        phi, float(0.5 * np.sqrt(tau)), 1,
    )
