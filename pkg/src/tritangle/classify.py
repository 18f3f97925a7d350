"""SLOCC class decision and the five-parameter canonical decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bivectors import is_alpha_plane, is_beta_plane, null_line_check, plucker
from .errors import InvalidStateError
from .invariants import three_tangle
from .states import LocalOperator, PureState, apply_local, reduced_density, slices
from .twistor import linearly_dependent, to_twistor

LABELS = (
    "Null",
    "FullySeparable",
    "Biseparable_A_BC",
    "Biseparable_B_AC",
    "Biseparable_C_AB",
    "WClass",
    "GHZClass",
)


@dataclass
class SloccClass:
    """Classification verdict with the numeric witnesses that justified it."""

    label: str
    witnesses: dict
    tol: float
    diagnostics: list[str] = field(default_factory=list)


def classify(state: PureState, tol: float = 1e-8) -> SloccClass:
    """Decide the SLOCC class of a state from its tangle pattern.

    The decision runs on an internally normalized copy; geometric
    witnesses (null line for the W class, plane flags for the
    biseparable classes) are attached and conflicts reported as
    diagnostics rather than silently ignored.
    """
    if state.is_null:
        return SloccClass("Null", {}, tol)
    norm = state.normalized()
    pair = to_twistor(norm)
    tau_abc = three_tangle(norm)
    taus = {
        party: 4.0 * float(np.linalg.det(reduced_density(norm, party).matrix).real)
        for party in "ABC"
    }
    witnesses = {"tau_abc": tau_abc, **{f"tau_{k}": v for k, v in taus.items()}}
    diagnostics: list[str] = []

    if tau_abc > tol:
        return SloccClass("GHZClass", witnesses, tol, diagnostics)

    vanished = [party for party in "ABC" if taus[party] <= tol]
    if not vanished:
        label = "WClass"
        line = null_line_check(plucker(pair), tol)
        witnesses["null_line"] = line
        if not line:
            diagnostics.append("WClass verdict without a null line through P and *P")
    elif len(vanished) == 3:
        label = "FullySeparable"
    elif len(vanished) == 1:
        party = vanished[0]
        label = f"Biseparable_{party}_{''.join(p for p in 'ABC' if p != party)}"
        if party == "A":
            dependent = linearly_dependent(pair)
            witnesses["pair_dependent"] = dependent
            if not dependent:
                diagnostics.append("A-separable verdict with independent Z, W")
        elif party == "B":
            beta = is_beta_plane(pair, tol)
            witnesses["beta_plane"] = beta
            if not beta:
                diagnostics.append("B-separable verdict without a beta plane")
        else:
            alpha = is_alpha_plane(pair, tol)
            witnesses["alpha_plane"] = alpha
            if not alpha:
                diagnostics.append("C-separable verdict without an alpha plane")
    else:
        # two vanishing one-vs-rest tangles cannot happen exactly; treat as
        # a separable state with a recorded conflict
        label = "FullySeparable"
        diagnostics.append(f"inconsistent tangle pattern: {sorted(vanished)} vanish")
    return SloccClass(label, witnesses, tol, diagnostics)


@dataclass
class CanonicalForm:
    """Five-parameter normal form reachable from the state by local unitaries.

    The amplitudes are lambda0|000> + lambda1 e^{i phase}|100> +
    lambda2|101> + lambda3|110> + lambda4|111>.  The phase of each form
    is rigid (it is the one gauge-invariant phase combination of the
    five amplitudes) and lies in (-pi, pi]; generically exactly one of
    the two forms of a state has it in [0, pi], recorded by
    phase_in_standard_range.  transform maps the canonical amplitudes
    back to the input state.
    """

    lambdas: np.ndarray
    phase: float
    root_index: int
    multiplicity: int
    transform: LocalOperator
    residual: float
    phase_in_standard_range: bool = False

    def amplitudes(self) -> np.ndarray:
        amps = np.zeros(8, dtype=complex)
        amps[0] = self.lambdas[0]
        amps[4] = self.lambdas[1] * np.exp(1j * self.phase)
        amps[5] = self.lambdas[2]
        amps[6] = self.lambdas[3]
        amps[7] = self.lambdas[4]
        return amps

    def state(self) -> PureState:
        return PureState(self.amplitudes())


def _pencil_roots(c0, c1, n, tol):
    """Projective roots (x : y) of Det(x C0 + y C1), largest-first stable form."""
    d0 = complex(np.linalg.det(c0))
    d1 = complex(np.linalg.det(c1))
    mixed = complex(np.trace(c0) * np.trace(c1) - np.trace(c0 @ c1))
    disc = mixed * mixed - 4.0 * d0 * d1
    degenerate_pencil = max(abs(d0), abs(d1), abs(mixed)) <= 1e-14 * n
    double = 4.0 * abs(disc) <= tol * n * n
    if degenerate_pencil:
        # every slice combination is singular: product-state short circuit
        root = (1.0 + 0j, 0j) if np.linalg.norm(c0) >= np.linalg.norm(c1) else (0j, 1.0 + 0j)
        return [root], True
    r = np.sqrt(disc)
    s = -(mixed + r) / 2.0 if abs(mixed + r) >= abs(mixed - r) else -(mixed - r) / 2.0
    if abs(s) == 0.0:
        # mixed = 0 and one determinant zero: a double root on an axis
        root = (1.0 + 0j, 0j) if abs(d0) <= abs(d1) else (0j, 1.0 + 0j)
        return [root], True
    roots = [(s, d0), (d1, s)]
    if double:
        return roots[:1], True
    return roots, False


def _phase_gauge(t00, t01, t10, t11, eps):
    """Diagonal phases (a1, b1, c1) making the large slots real nonnegative.

    Zeroes the phases of the |101>, |110>, |111> slots when they carry
    weight, leaving the rigid residual phase on |100>; slots below eps
    are released so the remaining system is solved exactly and the
    reported phase becomes 0.
    """
    th = np.angle
    if abs(t11) > eps and abs(t01) > eps and abs(t10) > eps and abs(t00) > eps:
        a1 = th(t11) - th(t01) - th(t10)
        b1 = th(t01) - th(t11)
        c1 = th(t10) - th(t11)
    elif abs(t11) <= eps:
        a1 = -th(t00) if abs(t00) > eps else 0.0
        b1 = -a1 - th(t10) if abs(t10) > eps else 0.0
        c1 = -a1 - th(t01) if abs(t01) > eps else 0.0
    elif abs(t01) <= eps:
        a1 = -th(t00) if abs(t00) > eps else 0.0
        b1 = -a1 - th(t10) if abs(t10) > eps else 0.0
        c1 = -a1 - b1 - th(t11)
    elif abs(t10) <= eps:
        a1 = -th(t00) if abs(t00) > eps else 0.0
        c1 = -a1 - th(t01)
        b1 = -a1 - c1 - th(t11)
    else:  # t00 negligible: the rigid phase sits on a slot of weight ~0
        a1 = th(t11) - th(t01) - th(t10)
        b1 = th(t01) - th(t11)
        c1 = th(t10) - th(t11)
    return a1, b1, c1


def _aligned_residual(candidate: np.ndarray, target: np.ndarray) -> float:
    overlap = np.vdot(candidate, target)
    if abs(overlap) > 0:
        candidate = candidate * (overlap / abs(overlap))
    return float(np.linalg.norm(candidate - target))


def acin_canonical(state: PureState, tol: float = 1e-8) -> list[CanonicalForm]:
    """All canonical decompositions of the state, one per pencil root.

    Solves Det(x C0 + y C1) = 0, rotates party A so the degenerate
    combination becomes the top slice, aligns it by singular values with
    party B/C unitaries and fixes the remaining phases.  Two forms when
    the tripartite tangle is resolvably nonzero, otherwise one form of
    multiplicity two.
    """
    if state.is_null:
        raise InvalidStateError("cannot canonicalize the null state")
    n = state.norm_squared
    pair = slices(state)
    roots, double = _pencil_roots(pair.c0, pair.c1, n, tol)
    forms = []
    for index, (x, y) in enumerate(roots, start=1):
        nr = np.hypot(abs(x), abs(y))
        x, y = x / nr, y / nr
        u_a = np.array([[x, y], [-np.conj(y), np.conj(x)]])
        c0p = u_a[0, 0] * pair.c0 + u_a[0, 1] * pair.c1
        c1p = u_a[1, 0] * pair.c0 + u_a[1, 1] * pair.c1
        left, sv, right_h = np.linalg.svd(c0p)
        u_b = left.conj().T
        u_c = right_h.conj()
        c1pp = u_b @ c1p @ u_c.T
        eps = 1e-12 * np.sqrt(n)
        a1, b1, c1 = _phase_gauge(c1pp[0, 0], c1pp[0, 1], c1pp[1, 0], c1pp[1, 1], eps)
        u_a = np.diag([1.0, np.exp(1j * a1)]) @ u_a
        u_b = np.diag([1.0, np.exp(1j * b1)]) @ u_b
        u_c = np.diag([1.0, np.exp(1j * c1)]) @ u_c
        forward = LocalOperator(u_a, u_b, u_c)
        canonical = apply_local(state, forward).amplitudes
        lambdas = np.abs(canonical[[0, 4, 5, 6, 7]])
        phase = float(np.angle(canonical[4])) if lambdas[1] > eps else 0.0
        form = CanonicalForm(
            lambdas=lambdas,
            phase=phase,
            root_index=index,
            multiplicity=2 if double else 1,
            transform=forward.dagger(),
            residual=0.0,
            phase_in_standard_range=bool(0.0 <= phase <= np.pi),
        )
        back = apply_local(form.state(), form.transform).amplitudes
        form.residual = _aligned_residual(back, state.amplitudes)
        forms.append(form)
    forms.sort(key=lambda f: (-f.lambdas[0], -f.lambdas[4], f.root_index))
    return forms
