"""Magic-basis correspondence between amplitude slices and a pair of 4-vectors.

The basis matrices are E_k = -i sigma_k for k = 1, 2, 3 and E_4 = I.  A
state with slices C_0, C_1 defines vectors Z, W through
C_0 = Z^mu E_mu / sqrt(2) and C_1 = W^mu E_mu / sqrt(2); trace
orthogonality Tr(E_mu E_nu+) = 2 delta_mu_nu makes the map invertible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidOperatorError, InvalidStateError
from .states import SIGMA_X, SIGMA_Y, SIGMA_Z, PureState, SlicePair, from_slices, slices


def _basis_stack() -> np.ndarray:
    stack = np.stack(
        [-1j * SIGMA_X, -1j * SIGMA_Y, -1j * SIGMA_Z, np.eye(2, dtype=complex)]
    )
    stack.setflags(write=False)
    return stack


@dataclass(frozen=True)
class MagicBasis:
    """The four basis matrices, stacked with index mu = 1..4 on axis 0."""

    matrices: np.ndarray = field(default_factory=_basis_stack)

    @property
    def e1(self) -> np.ndarray:
        return self.matrices[0]

    @property
    def e2(self) -> np.ndarray:
        return self.matrices[1]

    @property
    def e3(self) -> np.ndarray:
        return self.matrices[2]

    @property
    def e4(self) -> np.ndarray:
        return self.matrices[3]

    def gram(self) -> np.ndarray:
        """Tr(E_mu E_nu+); equals 2I exactly for the stored constants."""
        return np.einsum("mbc,ncb->mn", self.matrices, self.matrices.conj().transpose(0, 2, 1))


MAGIC_BASIS = MagicBasis()

# unitary change of basis: column mu is the normalized magic vector E_mu/sqrt(2)
# flattened over (b, c); maps computational-basis BC vectors to magic coordinates
MAGIC_COLUMNS = MAGIC_BASIS.matrices.reshape(4, 4).T / np.sqrt(2.0)
MAGIC_COLUMNS.setflags(write=False)


@dataclass(frozen=True)
class TwistorPair:
    """The two complex 4-vectors extracted from the A-slices of a state."""

    z: np.ndarray
    w: np.ndarray

    def __post_init__(self):
        for name in ("z", "w"):
            arr = np.asarray(getattr(self, name), dtype=complex)
            if arr.shape != (4,):
                raise InvalidStateError(f"{name} must be a 4-vector, got shape {arr.shape}")
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def norm_squared(self) -> float:
        """||Z||^2 + ||W||^2; equals the squared norm of the source state."""
        return float(np.sum(np.abs(self.z) ** 2) + np.sum(np.abs(self.w) ** 2))

    def stack(self) -> np.ndarray:
        return np.stack([self.z, self.w])


def to_twistor(state: PureState) -> TwistorPair:
    """Extract (Z, W) via Z^nu = Tr(C0 E_nu+) / sqrt(2), same for W with C1."""
    pair = slices(state)
    edag = MAGIC_BASIS.matrices.conj().transpose(0, 2, 1)
    z = np.einsum("bc,mcb->m", pair.c0, edag) / np.sqrt(2.0)
    w = np.einsum("bc,mcb->m", pair.c1, edag) / np.sqrt(2.0)
    return TwistorPair(z, w)


def from_twistor(pair: TwistorPair) -> PureState:
    """Inverse map: C0 = Z^mu E_mu / sqrt(2), C1 = W^mu E_mu / sqrt(2)."""
    c0 = np.tensordot(pair.z, MAGIC_BASIS.matrices, axes=(0, 0)) / np.sqrt(2.0)
    c1 = np.tensordot(pair.w, MAGIC_BASIS.matrices, axes=(0, 0)) / np.sqrt(2.0)
    return from_slices(SlicePair(c0, c1))


def bilinear_dot(x, y) -> complex:
    """Sum x^mu y^mu with no conjugation (indices moved with the identity)."""
    return complex(np.sum(np.asarray(x) * np.asarray(y)))


def hermitian_dot(x, y) -> complex:
    """Sum conj(x^mu) y^mu."""
    return complex(np.sum(np.conj(x) * np.asarray(y)))


def det_rho_a(pair: TwistorPair) -> float:
    """||Z||^2 ||W||^2 - |<Z|W>|^2; the determinant of the reduced rho_A."""
    zz = np.sum(np.abs(pair.z) ** 2)
    ww = np.sum(np.abs(pair.w) ** 2)
    zw = hermitian_dot(pair.z, pair.w)
    return float(zz * ww - abs(zw) ** 2)


def linearly_dependent(pair: TwistorPair, rtol: float = 1e-10) -> bool:
    """True when the smaller singular value of the 2x4 stack is below rtol times the larger."""
    sv = np.linalg.svd(pair.stack(), compute_uv=False)
    return bool(sv[1] <= rtol * sv[0])


@dataclass(frozen=True)
class GaugeElement:
    """Invertible 2x2 matrix mixing (Z, W); the A-side SLOCC gauge action."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (2, 2):
            raise InvalidOperatorError(f"gauge element must be 2x2, got {mat.shape}")
        norm2 = np.sum(np.abs(mat) ** 2)
        if abs(np.linalg.det(mat)) <= 1e-12 * norm2:
            raise InvalidOperatorError("gauge element is singular")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def identity(cls) -> "GaugeElement":
        return cls(np.eye(2, dtype=complex))

    @property
    def det(self) -> complex:
        return complex(np.linalg.det(self.matrix))


def gauge_act(g: GaugeElement, pair: TwistorPair) -> TwistorPair:
    """Z' = alpha Z + beta W, W' = gamma Z + delta W; P scales by det(g)."""
    m = g.matrix
    return TwistorPair(m[0, 0] * pair.z + m[0, 1] * pair.w,
                       m[1, 0] * pair.z + m[1, 1] * pair.w)
