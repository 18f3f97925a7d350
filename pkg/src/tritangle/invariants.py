"""Scalar entanglement invariants of a three-qubit pure state.

Every quantity is homogeneous in the amplitudes; vanishing tests compare
a degree-d quantity against tol * N^(d/2) so that unnormalized states
behave the same as normalized ones.  Operations that admit two
computation paths evaluate both and raise ConsistencyError when the
paths disagree beyond tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bivectors import hodge_dual, plucker
from .errors import ConsistencyError, InvalidStateError
from .states import (
    PureState,
    kempe_xi,
    pair_tangle,
    reduced_density,
    slices,
    spin_flip,
)
from .twistor import TwistorPair, bilinear_dot, to_twistor

PATH_RTOL = 1e-10

#: degree in the amplitudes of each report field (|s|^degree under psi -> s psi)
HOMOGENEITY_DEGREE = {
    "n": 2,
    "hyperdet": 4,
    "tau_abc": 4,
    "tau_a_bc": 4,
    "tau_b_ac": 4,
    "tau_c_ab": 4,
    "tau_ab": 4,
    "tau_ac": 4,
    "tau_bc": 4,
    "xi": 6,
    "omega": 6,
    "lambda_sum": 6,
    "sigma": 6,
    "phi": 0,
    "ckw_residual": 4,
}


@dataclass
class InvariantReport:
    """All scalar invariants of one state plus internal cross-check results."""

    n: float
    hyperdet: complex
    tau_abc: float
    tau_a_bc: float
    tau_b_ac: float
    tau_c_ab: float
    tau_ab: float
    tau_ac: float
    tau_bc: float
    xi: float
    omega: float
    lambda_sum: float
    sigma: float
    phi: float
    ckw_residual: float
    is_null: bool = False
    diagnostics: list[str] = field(default_factory=list)


def _scale(state: PureState, degree: int) -> float:
    return max(state.norm_squared ** (degree / 2.0), 1e-300)


def hyperdeterminant(state: PureState) -> complex:
    """Degree-4 hyperdeterminant of the amplitude tensor.

    Computed both as the explicit quartic polynomial and as the
    discriminant of Det(x C0 + y C1); the two must agree and the
    discriminant value is returned.
    """
    c = state.tensor
    poly = (
        c[0, 0, 0] ** 2 * c[1, 1, 1] ** 2
        + c[0, 0, 1] ** 2 * c[1, 1, 0] ** 2
        + c[0, 1, 0] ** 2 * c[1, 0, 1] ** 2
        + c[0, 1, 1] ** 2 * c[1, 0, 0] ** 2
        - 2.0
        * (
            c[0, 0, 0] * c[0, 0, 1] * c[1, 1, 0] * c[1, 1, 1]
            + c[0, 0, 0] * c[0, 1, 0] * c[1, 0, 1] * c[1, 1, 1]
            + c[0, 0, 0] * c[0, 1, 1] * c[1, 0, 0] * c[1, 1, 1]
            + c[0, 0, 1] * c[0, 1, 0] * c[1, 0, 1] * c[1, 1, 0]
            + c[0, 0, 1] * c[0, 1, 1] * c[1, 1, 0] * c[1, 0, 0]
            + c[0, 1, 0] * c[0, 1, 1] * c[1, 0, 1] * c[1, 0, 0]
        )
        + 4.0
        * (
            c[0, 0, 0] * c[0, 1, 1] * c[1, 0, 1] * c[1, 1, 0]
            + c[0, 0, 1] * c[0, 1, 0] * c[1, 0, 0] * c[1, 1, 1]
        )
    )
    pair = slices(state)
    mixed = np.trace(pair.c0) * np.trace(pair.c1) - np.trace(pair.c0 @ pair.c1)
    disc = mixed * mixed - 4.0 * np.linalg.det(pair.c0) * np.linalg.det(pair.c1)
    if abs(poly - disc) > PATH_RTOL * _scale(state, 4):
        raise ConsistencyError(
            f"hyperdeterminant paths disagree: polynomial {poly}, discriminant {disc}"
        )
    return complex(disc)


def three_tangle(state: PureState) -> float:
    """Genuine tripartite tangle 2|P^mn P_mn|; must equal 4|hyperdet|."""
    pair = to_twistor(state)
    pp = 2.0 * (
        bilinear_dot(pair.z, pair.z) * bilinear_dot(pair.w, pair.w)
        - bilinear_dot(pair.z, pair.w) ** 2
    )
    tau = 2.0 * abs(pp)
    if abs(tau - 4.0 * abs(hyperdeterminant(state))) > PATH_RTOL * _scale(state, 4):
        raise ConsistencyError("tangle paths disagree: twistor vs hyperdeterminant")
    return float(tau)


def _flip_trace_direct(state: PureState, pair_label: str) -> float:
    rho = reduced_density(state, pair_label)
    return float(np.trace(rho.matrix @ spin_flip(rho).matrix).real)


def _bivector_pieces(pair: TwistorPair):
    p = plucker(pair)
    dual = hodge_dual(p)
    pbar = p.components.conj()
    plus = float(np.sum((p.components + dual.components) * pbar).real)
    minus = float(np.sum((p.components - dual.components) * pbar).real)
    first3 = float(
        abs(bilinear_dot(pair.z, pair.z)) ** 2
        + abs(bilinear_dot(pair.w, pair.w)) ** 2
        + 2.0 * abs(bilinear_dot(pair.z, pair.w)) ** 2
    )
    return p, dual, plus, minus, first3


def tau_one_vs_rest(state: PureState, party: str) -> float:
    """Squared concurrence between one qubit and the remaining pair.

    Party A uses 2 P^mn conj(P_mn); parties B and C use the dual-shifted
    contractions.  Each value is checked against 4 Det(rho_party).
    """
    if party not in ("A", "B", "C"):
        raise InvalidStateError(f"party must be A, B or C, got {party!r}")
    pair = to_twistor(state)
    p, _, plus, minus, first3 = _bivector_pieces(pair)
    if party == "A":
        value = 2.0 * float(np.sum(p.components * p.components.conj()).real)
    elif party == "B":
        value = first3 + plus
    else:
        value = first3 + minus
    oracle = 4.0 * float(np.linalg.det(reduced_density(state, party).matrix).real)
    if abs(value - oracle) > PATH_RTOL * _scale(state, 4):
        raise ConsistencyError(
            f"tau_{party} twistor route {value} disagrees with 4 Det(rho_{party}) {oracle}"
        )
    return value


def pair_flip_trace(state: PureState, pair_label: str) -> float:
    """Tr(rho rho~) of a two-qubit reduction, via the bivector contractions.

    BC uses |Z.Z|^2 + |W.W|^2 + 2|Z.W|^2; AB and AC the dual-shifted
    contractions.  Each value is checked against the direct matrix trace.
    """
    if pair_label not in ("AB", "AC", "BC"):
        raise InvalidStateError(f"pair must be AB, AC or BC, got {pair_label!r}")
    tp = to_twistor(state)
    _, _, plus, minus, first3 = _bivector_pieces(tp)
    value = {"BC": first3, "AB": plus, "AC": minus}[pair_label]
    oracle = _flip_trace_direct(state, pair_label)
    if abs(value - oracle) > PATH_RTOL * _scale(state, 4):
        raise ConsistencyError(
            f"flip trace {pair_label} bivector route {value} disagrees with matrix trace {oracle}"
        )
    return value


def two_tangles(state: PureState) -> tuple[float, float, float]:
    """Wootters two-tangles of the three reduced pairs, as (AB, AC, BC)."""
    return (
        pair_tangle(reduced_density(state, "AB"))[1],
        pair_tangle(reduced_density(state, "AC"))[1],
        pair_tangle(reduced_density(state, "BC"))[1],
    )


def omega_lambda(state: PureState) -> tuple[float, float, float]:
    """(omega, Lambda, N): the degree-6 companions of the Kempe invariant.

    omega = 4 Tr(rho_BC P+ P) with rho_BC in magic-basis coordinates,
    which reduces to 4(||P Z||^2 + ||P W||^2); Lambda = N(tau_A + tau_B + tau_C).
    """
    pair = to_twistor(state)
    p = plucker(pair).components
    omega = 4.0 * float(
        np.sum(np.abs(p @ pair.z) ** 2) + np.sum(np.abs(p @ pair.w) ** 2)
    )
    n = state.norm_squared
    taus = [
        4.0 * float(np.linalg.det(reduced_density(state, party).matrix).real)
        for party in "ABC"
    ]
    return omega, n * sum(taus), n


def kempe_identity_residual(state: PureState) -> float:
    """|xi - N^3 - (3/8)(omega - Lambda)|."""
    omega, lam, n = omega_lambda(state)
    xi = kempe_xi(state)
    return abs(xi - n**3 - 0.375 * (omega - lam))


def sigma(state: PureState) -> float:
    """GHZ-class detector |omega - N tau_ABC|.

    The magnitude is taken so that the calibration anchors hold on all
    states: the value vanishes on the generalized-GHZ orbit and stays in
    [0, N^3]; the signed combination dips below zero on roughly a quarter
    of random states.  See sigma_comparison for the signed value.
    """
    omega, _, n = omega_lambda(state)
    return abs(omega - n * three_tangle(state))


def sigma_comparison(state: PureState) -> dict:
    """Side-by-side values for the GHZ-class detector conventions.

    Returns the calibrated magnitude, the signed combination
    omega - N tau, and the principal-direction norm form
    (||U+||^2 + ||U-||^2 + ||V+||^2 + ||V-||^2)/2, which does not agree
    with the calibrated value (it is (omega + N tau)/4); the table is
    reported, nothing is asserted.
    """
    omega, _, n = omega_lambda(state)
    tau = three_tangle(state)
    signed = omega - n * tau
    pair = to_twistor(state)
    p = plucker(pair).components
    disc = (
        bilinear_dot(pair.z, pair.w) ** 2
        - bilinear_dot(pair.z, pair.z) * bilinear_dot(pair.w, pair.w)
    )
    eig = 0.5 * np.sqrt(4.0 * abs(disc)) * np.exp(0.5j * np.angle(disc))
    pz, pw = p @ pair.z, p @ pair.w
    norms = (
        np.sum(np.abs(-pz + eig * pair.z) ** 2)
        + np.sum(np.abs(-pz - eig * pair.z) ** 2)
        + np.sum(np.abs(pw + eig * pair.w) ** 2)
        + np.sum(np.abs(pw - eig * pair.w) ** 2)
    )
    return {
        "sigma": abs(signed),
        "sigma_signed": float(signed),
        "sigma_direction_norms": float(0.5 * norms),
    }


def full_report(state: PureState) -> InvariantReport:
    """Evaluate every invariant with all internal cross-checks enabled.

    Cross-check failures are collected as named diagnostics instead of
    raising, so a pathological state still yields a (flagged) report.
    """
    if state.is_null:
        return InvariantReport(
            0.0, 0j, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
            is_null=True,
        )
    diagnostics: list[str] = []

    def guarded(name, fn, fallback):
        try:
            return fn()
        except ConsistencyError as exc:
            diagnostics.append(f"{name}: {exc}")
            return fallback

    n = state.norm_squared
    det = guarded("hyperdeterminant", lambda: hyperdeterminant(state), 0j)
    tau_abc = guarded("three_tangle", lambda: three_tangle(state), 4.0 * abs(det))
    tau_a = guarded("tau_A", lambda: tau_one_vs_rest(state, "A"), np.nan)
    tau_b = guarded("tau_B", lambda: tau_one_vs_rest(state, "B"), np.nan)
    tau_c = guarded("tau_C", lambda: tau_one_vs_rest(state, "C"), np.nan)
    for label in ("AB", "AC", "BC"):
        guarded(f"flip_{label}", lambda lab=label: pair_flip_trace(state, lab), np.nan)
    tau_ab, tau_ac, tau_bc = two_tangles(state)
    xi = guarded("kempe_xi", lambda: kempe_xi(state), np.nan)
    omega, lam, _ = omega_lambda(state)
    kempe_res = abs(xi - n**3 - 0.375 * (omega - lam))
    if not kempe_res <= 1e-9 * max(n**3, abs(xi)):
        diagnostics.append(f"kempe_identity: residual {kempe_res:.3e}")
    tp = to_twistor(state)
    disc = (
        bilinear_dot(tp.z, tp.w) ** 2
        - bilinear_dot(tp.z, tp.z) * bilinear_dot(tp.w, tp.w)
    )
    phi = float(np.angle(disc))
    ckw = abs(tau_a - tau_abc - tau_ab - tau_ac)
    if not ckw <= 1e-8 * n**2:
        diagnostics.append(f"ckw: residual {ckw:.3e}")
    if tau_abc > tau_a + 1e-10 * n**2:
        diagnostics.append("monogamy: tau_ABC exceeds tau_A(BC)")
    return InvariantReport(
        n=n,
        hyperdet=det,
        tau_abc=tau_abc,
        tau_a_bc=tau_a,
        tau_b_ac=tau_b,
        tau_c_ab=tau_c,
        tau_ab=tau_ab,
        tau_ac=tau_ac,
        tau_bc=tau_bc,
        xi=xi,
        omega=omega,
        lambda_sum=lam,
        sigma=abs(omega - n * tau_abc),
        phi=phi,
        ckw_residual=ckw,
        diagnostics=diagnostics,
    )
