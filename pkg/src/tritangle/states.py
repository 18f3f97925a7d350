"""Three-qubit pure states at the amplitude level.

Amplitudes are stored in binary order ``000, 001, ..., 111`` where the
first bit labels qubit A (most significant), the second qubit B and the
third qubit C.  States are never normalized implicitly; every invariant
built on top of this module documents its homogeneity degree instead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, InvalidOperatorError, InvalidStateError

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# sigma_y (x) sigma_y; real symmetric, conjugates two-qubit spin flips
SPIN_FLIP = np.kron(SIGMA_Y, SIGMA_Y).real

_SUBSYSTEMS = ("A", "B", "C", "AB", "AC", "BC")
_KEEP_AXES = {"A": (0,), "B": (1,), "C": (2,), "AB": (0, 1), "AC": (0, 2), "BC": (1, 2)}

# eigenvalues of sqrt(rho) rho~ sqrt(rho) below this (relative to Tr(rho)^2)
# are pure round-off for rank-2 inputs and would poison the Wootters sum
_EIG_CLIP = 1e-13


def _as_c128(values, shape, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=complex)
    if arr.shape != shape:
        raise InvalidStateError(f"{what} must have shape {shape}, got {arr.shape}")
    return arr


@dataclass(frozen=True)
class PureState:
    """Eight complex amplitudes of an (unnormalized) three-qubit vector."""

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = _as_c128(self.amplitudes, (8,), "amplitudes")
        bad = np.flatnonzero(~np.isfinite(arr.real) | ~np.isfinite(arr.imag))
        if bad.size:
            raise InvalidStateError(f"non-finite amplitude at index {bad[0]}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to (a, b, c)."""
        return self.amplitudes.reshape(2, 2, 2)

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    @property
    def is_null(self) -> bool:
        return bool(np.all(self.amplitudes == 0))

    def normalized(self) -> "PureState":
        n = self.norm_squared
        if n == 0.0:
            raise InvalidStateError("cannot normalize the null state")
        return PureState(self.amplitudes / np.sqrt(n))


@dataclass(frozen=True)
class SlicePair:
    """The two 2x2 slices C_a of the amplitude tensor, split on the A index."""

    c0: np.ndarray
    c1: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "c0", _as_c128(self.c0, (2, 2), "c0"))
        object.__setattr__(self, "c1", _as_c128(self.c1, (2, 2), "c1"))


@dataclass(frozen=True)
class DensityMatrix:
    """Reduced density matrix of one or two qubits, labelled by subsystem."""

    matrix: np.ndarray
    label: str

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] not in (2, 4):
            raise InvalidStateError(f"density matrix must be 2x2 or 4x4, got {mat.shape}")
        scale = np.max(np.abs(mat))
        if scale > 0 and np.max(np.abs(mat - mat.conj().T)) > 1e-12 * scale:
            raise InvalidStateError(f"density matrix {self.label!r} is not Hermitian")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


def state_from_amplitudes(raw) -> PureState:
    """Build a PureState from eight complex numbers in abc binary order."""
    return PureState(np.asarray(raw, dtype=complex))


def from_slices(pair: SlicePair) -> PureState:
    """Reassemble a PureState from its A-slices."""
    return PureState(np.concatenate([pair.c0.ravel(), pair.c1.ravel()]))


def slices(state: PureState) -> SlicePair:
    """Split the amplitude tensor on the A index: (C_a)[b][c] = C_abc."""
    t = state.tensor
    return SlicePair(t[0], t[1])


def reduced_density(state: PureState, subsystem: str) -> DensityMatrix:
    """Partial trace of |psi><psi| onto one of A, B, C, AB, AC, BC."""
    if subsystem not in _SUBSYSTEMS:
        raise InvalidStateError(f"unknown subsystem {subsystem!r}")
    keep = _KEEP_AXES[subsystem]
    drop = tuple(ax for ax in range(3) if ax not in keep)
    t = state.tensor
    rho = np.tensordot(t, t.conj(), axes=(drop, drop))
    d = 2 ** len(keep)
    rho = rho.reshape(d, d)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityMatrix(rho, subsystem)


def spin_flip(rho: DensityMatrix) -> DensityMatrix:
    """Two-qubit spin flip (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y)."""
    if rho.dim != 4:
        raise InvalidStateError("spin flip is defined for two-qubit density matrices")
    flipped = SPIN_FLIP @ rho.matrix.conj() @ SPIN_FLIP
    return DensityMatrix(flipped, rho.label)


def pair_tangle(rho: DensityMatrix) -> tuple[np.ndarray, float]:
    """Wootters eigenvalues of rho rho~ and the squared concurrence.

    The eigenvalues are computed from the Hermitian PSD matrix
    sqrt(rho) rho~ sqrt(rho), which shares the spectrum of rho rho~.
    Returns them in descending order together with
    max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))^2.
    """
    if rho.dim != 4:
        raise InvalidStateError("pair tangle is defined for two-qubit density matrices")
    evals, evecs = np.linalg.eigh(rho.matrix)
    evals = np.clip(evals, 0.0, None)
    root = (evecs * np.sqrt(evals)) @ evecs.conj().T
    flipped = SPIN_FLIP @ rho.matrix.conj() @ SPIN_FLIP
    herm = root @ flipped @ root
    herm = 0.5 * (herm + herm.conj().T)
    lam = np.linalg.eigvalsh(herm)[::-1]
    lam[lam < _EIG_CLIP * rho.trace**2] = 0.0
    sq = np.sqrt(lam)
    tangle = max(0.0, sq[0] - sq[1] - sq[2] - sq[3]) ** 2
    return lam, float(tangle)


def kempe_xi(state: PureState) -> float:
    """Degree-6 local-unitary invariant from the slice products.

    Uses A = C0 C0+, B = C1 C1+, C = C0 C1+ and returns
    Tr(A^3 + B^3 + 3 C+CA + 3 CC+B).
    """
    pair = slices(state)
    a = pair.c0 @ pair.c0.conj().T
    b = pair.c1 @ pair.c1.conj().T
    c = pair.c0 @ pair.c1.conj().T
    val = np.trace(a @ a @ a + b @ b @ b + 3 * (c.conj().T @ c @ a) + 3 * (c @ c.conj().T @ b))
    n3 = state.norm_squared**3
    if abs(val.imag) > 1e-12 * max(n3, 1e-300):
        raise ConsistencyError(f"Kempe invariant has imaginary part {val.imag:.3e}")
    return float(val.real)


_KINDS = ("unitary", "special-linear", "general")


def _infer_kind(op: np.ndarray) -> str:
    if np.linalg.norm(op.conj().T @ op - np.eye(2)) <= 1e-10:
        return "unitary"
    if abs(np.linalg.det(op) - 1.0) <= 1e-10:
        return "special-linear"
    return "general"


@dataclass(frozen=True)
class LocalOperator:
    """One invertible 2x2 operator per party, with a kind flag per factor."""

    op_a: np.ndarray
    op_b: np.ndarray
    op_c: np.ndarray
    kinds: tuple[str, str, str] = None

    def __post_init__(self):
        mats = []
        for name in ("op_a", "op_b", "op_c"):
            mats.append(_as_c128(getattr(self, name), (2, 2), name))
        kinds = self.kinds
        if kinds is None:
            kinds = tuple(_infer_kind(m) for m in mats)
        kinds = tuple(kinds)
        if len(kinds) != 3 or any(k not in _KINDS for k in kinds):
            raise InvalidOperatorError(f"kinds must be three of {_KINDS}, got {kinds}")
        for name, mat, kind in zip("ABC", mats, kinds):
            det = np.linalg.det(mat)
            norm2 = np.sum(np.abs(mat) ** 2)
            if abs(det) <= 1e-12 * norm2:
                raise InvalidOperatorError(f"factor {name} is singular (|det| = {abs(det):.3e})")
            if kind == "unitary" and np.linalg.norm(mat.conj().T @ mat - np.eye(2)) > 1e-10:
                raise InvalidOperatorError(f"factor {name} flagged unitary but is not")
            if kind == "special-linear" and abs(det - 1.0) > 1e-10:
                raise InvalidOperatorError(f"factor {name} flagged special-linear but det = {det}")
        for name, mat in zip(("op_a", "op_b", "op_c"), mats):
            mat = mat.copy()
            mat.setflags(write=False)
            object.__setattr__(self, name, mat)
        object.__setattr__(self, "kinds", kinds)

    @classmethod
    def identity(cls) -> "LocalOperator":
        eye = np.eye(2, dtype=complex)
        return cls(eye, eye, eye, ("unitary", "unitary", "unitary"))

    @classmethod
    def on_party(cls, party: str, op) -> "LocalOperator":
        """Operator acting on one party only, identity elsewhere."""
        eye = np.eye(2, dtype=complex)
        mats = {"A": eye, "B": eye, "C": eye}
        if party not in mats:
            raise InvalidOperatorError(f"party must be A, B or C, got {party!r}")
        mats[party] = np.asarray(op, dtype=complex)
        return cls(mats["A"], mats["B"], mats["C"])

    def dagger(self) -> "LocalOperator":
        return LocalOperator(
            self.op_a.conj().T, self.op_b.conj().T, self.op_c.conj().T
        )


def apply_local(state: PureState, op: LocalOperator) -> PureState:
    """Act with op_A (x) op_B (x) op_C on the amplitude tensor."""
    out = np.einsum("ai,bj,ck,ijk->abc", op.op_a, op.op_b, op.op_c, state.tensor)
    return PureState(out.ravel())
