"""Anchor-value table: closed-form invariants of the reference states.

Every expected number here was either worked out by hand from the
defining formulas or double-checked with an independent oracle; the
table runs in well under a second and is the first thing to consult
when anything looks off.
"""

from __future__ import annotations

import numpy as np

from .bivectors import hodge_dual, plucker
from .invariants import full_report, sigma_comparison, tau_one_vs_rest
from .states import PureState
from .twistor import to_twistor

_R2 = 1.0 / np.sqrt(2.0)
_R3 = 1.0 / np.sqrt(3.0)

GHZ = PureState(np.array([_R2, 0, 0, 0, 0, 0, 0, _R2], dtype=complex))
W_STATE = PureState(np.array([0, _R3, _R3, 0, _R3, 0, 0, 0], dtype=complex))
PSI_MINUS = PureState(np.array([0, _R2, 0, 0, _R2, 0, 0, 0], dtype=complex))
PSI_PLUS = PureState(np.array([0, 0, _R2, 0, _R2, 0, 0, 0], dtype=complex))

ATOL = 1e-12


def _dual_gap(state: PureState, sign: float) -> float:
    """max |(*P) - sign * P| over components."""
    p = plucker(to_twistor(state))
    return float(np.max(np.abs(hodge_dual(p).components - sign * p.components)))


def _p34(state: PureState) -> complex:
    return complex(plucker(to_twistor(state)).components[2, 3])


def anchor_rows():
    """(name, computed, expected) triples of the anchor table."""
    ghz = full_report(GHZ)
    w = full_report(W_STATE)
    rows = [
        ("GHZ tau_ABC", ghz.tau_abc, 1.0),
        ("GHZ tau_A(BC)", ghz.tau_a_bc, 1.0),
        ("GHZ tau_B(AC)", ghz.tau_b_ac, 1.0),
        ("GHZ tau_C(AB)", ghz.tau_c_ab, 1.0),
        ("GHZ tau_AB", ghz.tau_ab, 0.0),
        ("GHZ tau_AC", ghz.tau_ac, 0.0),
        ("GHZ xi", ghz.xi, 0.25),
        ("GHZ omega", ghz.omega, 1.0),
        ("GHZ Lambda", ghz.lambda_sum, 3.0),
        ("GHZ sigma", ghz.sigma, 0.0),
        ("GHZ P^34", _p34(GHZ), 0.5j),
        ("W tau_ABC", w.tau_abc, 0.0),
        ("W tau_A(BC)", w.tau_a_bc, 8.0 / 9.0),
        ("W tau_B(AC)", w.tau_b_ac, 8.0 / 9.0),
        ("W tau_C(AB)", w.tau_c_ab, 8.0 / 9.0),
        ("W tau_AB", w.tau_ab, 4.0 / 9.0),
        ("W tau_AC", w.tau_ac, 4.0 / 9.0),
        ("W xi", w.xi, 2.0 / 9.0),
        ("W omega", w.omega, 16.0 / 27.0),
        ("W sigma", w.sigma, 16.0 / 27.0),
        ("psi- dual gap vs -P", _dual_gap(PSI_MINUS, -1.0), 0.0),
        ("psi- tau_B(AC)", tau_one_vs_rest(PSI_MINUS, "B"), 0.0),
        ("psi- tau_C(AB)", tau_one_vs_rest(PSI_MINUS, "C"), 1.0),
        ("psi+ dual gap vs +P", _dual_gap(PSI_PLUS, +1.0), 0.0),
        ("psi+ tau_C(AB)", tau_one_vs_rest(PSI_PLUS, "C"), 0.0),
    ]
    return rows


def run_selftest(verbose: bool = True) -> bool:
    """Check every anchor at absolute tolerance 1e-12; report one line each."""
    ok = True
    for name, computed, expected in anchor_rows():
        good = abs(computed - expected) <= ATOL
        ok = ok and good
        if verbose:
            status = "PASS" if good else "FAIL"
            print(f"[{status}] {name}: {computed} (expected {expected})")
    if verbose:
        print()
        print("sigma convention comparison (informational, not asserted):")
        for name, state in (("GHZ", GHZ), ("W", W_STATE)):
            table = sigma_comparison(state)
            print(
                f"  {name}: sigma = {table['sigma']:.12g}, "
                f"signed = {table['sigma_signed']:.12g}, "
                f"direction-norm form = {table['sigma_direction_norms']:.12g}"
            )
    return ok
