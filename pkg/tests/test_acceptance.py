"""Acceptance criteria, one test per criterion, at their stated tolerances.

Each test prints one ACCEPTANCE line.  The large ensembles run through
the batch kernel; per-state subsamples are cross-checked against the
high-level operations inside the unit suite (tests/test_kernels.py), so
the two layers cannot drift apart silently.
"""

import time

import numpy as np
import pytest

import tritangle as tt
from tritangle import kernels
from tritangle.bivectors import plucker, principal_null_directions
from tritangle.classify import acin_canonical, classify
from tritangle.ensembles import EnsembleSpec, run_sweep, sample_state
from tritangle.kernels import COL
from tritangle.selftest import run_selftest
from tritangle.twistor import TwistorPair, to_twistor

N_BIG = 100_000
N_PAIRS = 10_000
N_SHARED = 1_000
N_LU_STATES = 1_000
N_LU_DRAWS = 10
N_CLASS = 1_000
N_CANONICAL = 10_000


def _report(num: int, ok: bool, detail: str):
    print(f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


@pytest.fixture(scope="module")
def gauss():
    rng = np.random.default_rng(11_000)
    amps = rng.standard_normal((N_BIG, 8)) + 1j * rng.standard_normal((N_BIG, 8))
    t0 = time.perf_counter()
    rows = kernels.invariant_rows(amps)
    elapsed = time.perf_counter() - t0
    return amps, rows, elapsed


@pytest.fixture(scope="module")
def sphere():
    rng = np.random.default_rng(12_000)
    amps = rng.standard_normal((N_BIG, 8)) + 1j * rng.standard_normal((N_BIG, 8))
    amps /= np.linalg.norm(amps, axis=1)[:, None]
    return amps, kernels.invariant_rows(amps)


def _haar_batch(rng, m):
    g = rng.standard_normal((m, 2, 2)) + 1j * rng.standard_normal((m, 2, 2))
    q, r = np.linalg.qr(g)
    d = np.einsum("nii->ni", r)
    return q * (d / np.abs(d))[:, None, :]


def _bounded_batch(rng, m, special_linear, max_cond):
    """Invertible 2x2 batch with condition number <= max_cond."""
    out = np.empty((m, 2, 2), dtype=complex)
    need = np.arange(m)
    while need.size:
        g = rng.standard_normal((need.size, 2, 2)) + 1j * rng.standard_normal(
            (need.size, 2, 2)
        )
        if special_linear:
            det = g[:, 0, 0] * g[:, 1, 1] - g[:, 0, 1] * g[:, 1, 0]
            g = g / np.sqrt(det)[:, None, None]
        sv = np.linalg.svd(g, compute_uv=False)
        good = sv[:, 0] <= max_cond * sv[:, 1]
        out[need[good]] = g[good]
        need = need[~good]
    return out


def _apply_batch(amps, op_a, op_b, op_c):
    t = amps.reshape(-1, 2, 2, 2)
    return np.einsum("nai,nbj,nck,nijk->nabc", op_a, op_b, op_c, t).reshape(-1, 8)


def test_criterion_01_anchor_table():
    t0 = time.perf_counter()
    ok = run_selftest(verbose=False)
    elapsed = time.perf_counter() - t0
    _report(1, ok and elapsed < 1.0, f"anchor table in {elapsed:.3f} s, tolerance 1e-12")


def test_criterion_02_hyperdeterminant_paths(gauss):
    _, rows, elapsed = gauss
    n2 = rows[:, COL["n"]] ** 2
    d_s = rows[:, COL["re_d_schlafli"]] + 1j * rows[:, COL["im_d_schlafli"]]
    d_p = rows[:, COL["re_d_poly"]] + 1j * rows[:, COL["im_d_poly"]]
    path_gap = np.max(np.abs(d_s - d_p) / n2)
    tangle_gap = np.max(np.abs(rows[:, COL["tau_abc"]] - 4.0 * np.abs(d_s)) / n2)
    worst = max(path_gap, tangle_gap)
    _report(
        2,
        worst <= 1e-10 and elapsed < 10.0,
        f"max relative disagreement {worst:.2e} over {N_BIG} states in {elapsed:.2f} s",
    )


def test_criterion_03_tau_pm_and_flip_traces(gauss):
    _, rows, _ = gauss
    rows = rows[:10_000]
    n2 = rows[:, COL["n"]] ** 2
    worst = 0.0
    for tw, dm in (("tau_a_tw", "tau_a_dm"), ("tau_b_tw", "tau_b_dm"),
                   ("tau_c_tw", "tau_c_dm"), ("flip_bc_tw", "flip_bc_dm"),
                   ("flip_ab_tw", "flip_ab_dm"), ("flip_ac_tw", "flip_ac_dm")):
        worst = max(worst, np.max(np.abs(rows[:, COL[tw]] - rows[:, COL[dm]]) / n2))
    # Tr(rho_BC rho~_BC) = 2(Det rho_B + Det rho_C - Det rho_A)
    cross = 0.5 * (rows[:, COL["tau_b_dm"]] + rows[:, COL["tau_c_dm"]]
                   - rows[:, COL["tau_a_dm"]])
    worst_cross = np.max(np.abs(rows[:, COL["flip_bc_dm"]] - cross) / n2)
    ok = worst <= 1e-10 and worst_cross <= 1e-10
    _report(3, ok, f"oracle gap {worst:.2e}, flip-trace identity gap {worst_cross:.2e}")


def test_criterion_04_kempe_identity(gauss):
    _, rows, elapsed = gauss
    n3 = rows[:, COL["n"]] ** 3
    residual = rows[:, COL["kempe_residual"]] / n3
    violations = int(np.sum(residual > 1e-9))
    _report(
        4,
        violations == 0 and elapsed < 30.0,
        f"{violations} violations, max residual {residual.max():.2e} (tol 1e-9) "
        f"over {N_BIG} states in {elapsed:.2f} s",
    )


def test_criterion_05_ckw_and_monogamy(gauss):
    _, rows, _ = gauss
    n2 = rows[:, COL["n"]] ** 2
    ckw = rows[:, COL["ckw_residual"]] / n2
    mono = (rows[:, COL["tau_abc"]] - rows[:, COL["tau_a_dm"]]) / n2
    ckw_bad = int(np.sum(ckw > 1e-8))
    mono_bad = int(np.sum(mono > 1e-10))
    _report(
        5,
        ckw_bad == 0 and mono_bad == 0,
        f"CKW max {ckw.max():.2e} ({ckw_bad} > 1e-8), "
        f"monogamy max excess {mono.max():.2e} ({mono_bad} > 1e-10)",
    )


def test_criterion_06_plucker_and_intersection(gauss):
    _, rows, _ = gauss
    scale = np.maximum(rows[:, COL["p_frob2"]], 1e-300)
    residual = rows[:, COL["plucker_residual"]] / scale
    res_bad = int(np.sum(residual > 1e-12))

    rng = np.random.default_rng(6_000)
    agree = 0
    for _ in range(N_PAIRS):
        pair1 = TwistorPair(rng.standard_normal(4) + 1j * rng.standard_normal(4),
                            rng.standard_normal(4) + 1j * rng.standard_normal(4))
        pair2 = TwistorPair(rng.standard_normal(4) + 1j * rng.standard_normal(4),
                            rng.standard_normal(4) + 1j * rng.standard_normal(4))
        # planes_intersect raises on Q/rank disagreement
        meets, dim = tt.planes_intersect(pair1, pair2)
        assert meets == (dim >= 1)
        agree += 1
    for _ in range(N_SHARED):
        shared = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        pair1 = TwistorPair(shared, rng.standard_normal(4) + 1j * rng.standard_normal(4))
        pair2 = TwistorPair(shared, rng.standard_normal(4) + 1j * rng.standard_normal(4))
        meets, dim = tt.planes_intersect(pair1, pair2)
        assert meets and dim >= 1
        agree += 1
    ok = res_bad == 0 and agree == N_PAIRS + N_SHARED
    _report(
        6,
        ok,
        f"plucker residual max {residual.max():.2e} ({res_bad} > 1e-12), "
        f"Q-vs-rank agreement {agree}/{N_PAIRS + N_SHARED}",
    )


_INVARIANT_COLS = (
    ("n", 2), ("tau_abc", 4), ("tau_a_tw", 4), ("tau_b_tw", 4), ("tau_c_tw", 4),
    ("tau_ab", 4), ("tau_ac", 4), ("tau_bc", 4),
    ("xi", 6), ("omega", 6), ("lambda_sum", 6), ("sigma", 6),
)


def test_criterion_07_invariance_suite():
    rng = np.random.default_rng(7_000)
    amps = rng.standard_normal((N_LU_STATES, 8)) + 1j * rng.standard_normal((N_LU_STATES, 8))
    rows = kernels.invariant_rows(amps)
    n = rows[:, COL["n"]]

    lu_drift = 0.0
    for _ in range(N_LU_DRAWS):
        moved = _apply_batch(amps, _haar_batch(rng, N_LU_STATES),
                             _haar_batch(rng, N_LU_STATES), _haar_batch(rng, N_LU_STATES))
        rows_m = kernels.invariant_rows(moved)
        for col, degree in _INVARIANT_COLS:
            gap = np.abs(rows_m[:, COL[col]] - rows[:, COL[col]]) / n ** (degree / 2)
            lu_drift = max(lu_drift, float(gap.max()))
        d_gap = np.abs(
            np.hypot(rows_m[:, COL["re_d_schlafli"]], rows_m[:, COL["im_d_schlafli"]])
            - np.hypot(rows[:, COL["re_d_schlafli"]], rows[:, COL["im_d_schlafli"]])
        ) / n**2
        lu_drift = max(lu_drift, float(d_gap.max()))

    sl_drift = 0.0
    for _ in range(3):
        moved = _apply_batch(
            amps,
            _bounded_batch(rng, N_LU_STATES, True, 9.0),
            _bounded_batch(rng, N_LU_STATES, True, 9.0),
            _bounded_batch(rng, N_LU_STATES, True, 9.0),
        )
        rows_m = kernels.invariant_rows(moved)
        gap = np.abs(rows_m[:, COL["tau_abc"]] - rows[:, COL["tau_abc"]]) / n**2
        sl_drift = max(sl_drift, float(gap.max()))

    gl_drift = 0.0
    for _ in range(3):
        g = _bounded_batch(rng, N_LU_STATES, False, 10.0)
        det2 = np.abs(g[:, 0, 0] * g[:, 1, 1] - g[:, 0, 1] * g[:, 1, 0]) ** 2
        eye = np.broadcast_to(np.eye(2, dtype=complex), (N_LU_STATES, 2, 2))
        rows_m = kernels.invariant_rows(_apply_batch(amps, g, eye, eye))
        for col in ("tau_abc", "tau_a_tw"):
            gap = np.abs(rows_m[:, COL[col]] - det2 * rows[:, COL[col]]) / (det2 * n**2)
            gl_drift = max(gl_drift, float(gap.max()))

    ok = lu_drift <= 1e-9 and sl_drift <= 1e-8 and gl_drift <= 1e-9
    _report(
        7,
        ok,
        f"LU drift {lu_drift:.2e} (tol 1e-9), SL(2,C)^3 drift {sl_drift:.2e} "
        f"(tol 1e-8), GL-on-A scaling drift {gl_drift:.2e} (tol 1e-9)",
    )


def test_criterion_08_classifier_confusion():
    labels = ("FullySeparable", "Biseparable_B_AC", "Biseparable_C_AB",
              "WClass", "GHZClass")
    correct = 0
    witnesses_ok = True
    for li, label in enumerate(labels):
        spec = EnsembleSpec("class-conditioned", N_CLASS, seed=8_000 + li,
                            class_label=label, condition_bound=10.0)
        for i in range(N_CLASS):
            verdict = classify(sample_state(spec, i), tol=1e-8)
            if verdict.label == label:
                correct += 1
            if label == "WClass":
                witnesses_ok = witnesses_ok and verdict.witnesses.get("null_line") is True
            elif label == "Biseparable_B_AC":
                witnesses_ok = witnesses_ok and verdict.witnesses.get("beta_plane") is True
            elif label == "Biseparable_C_AB":
                witnesses_ok = witnesses_ok and verdict.witnesses.get("alpha_plane") is True
    total = len(labels) * N_CLASS
    _report(
        8,
        correct == total and witnesses_ok,
        f"{correct}/{total} labels correct, geometric witnesses all present",
    )


def test_criterion_09_sigma_properties(sphere):
    rng = np.random.default_rng(9_000)
    # LU-scrambled generalized GHZ states
    pair = rng.standard_normal((N_LU_STATES, 2)) + 1j * rng.standard_normal((N_LU_STATES, 2))
    pair /= np.linalg.norm(pair, axis=1)[:, None]
    ghz_amps = np.zeros((N_LU_STATES, 8), dtype=complex)
    ghz_amps[:, 0] = pair[:, 0]
    ghz_amps[:, 7] = pair[:, 1]
    moved = _apply_batch(ghz_amps, _haar_batch(rng, N_LU_STATES),
                         _haar_batch(rng, N_LU_STATES), _haar_batch(rng, N_LU_STATES))
    sig_ghz = kernels.invariant_rows(moved)[:, COL["sigma"]]
    ghz_ok = float(sig_ghz.max()) <= 1e-9

    _, rows = sphere
    sig = rows[:, COL["sigma"]]
    bounds_ok = sig.min() >= 0.0 and sig.max() <= 1.0 + 1e-9
    signed_min = rows[:, COL["sigma_signed"]].min()

    eig_worst = 0.0
    for k in range(200):
        state = tt.PureState(moved[k])
        pair_t = to_twistor(state)
        dirs = principal_null_directions(pair_t)
        p = plucker(pair_t).components
        eig = dirs.eigenvalue
        for vec in (dirs.u_plus, dirs.u_minus, dirs.v_plus, dirs.v_minus):
            norm = np.linalg.norm(vec)
            if norm <= 1e-12:
                continue
            res = min(np.linalg.norm(p @ vec - eig * vec),
                      np.linalg.norm(p @ vec + eig * vec)) / norm
            eig_worst = max(eig_worst, float(res))
    eig_ok = eig_worst <= 1e-10

    _report(
        9,
        ghz_ok and bounds_ok and eig_ok,
        f"max sigma on GHZ orbit {sig_ghz.max():.2e}, sphere bounds "
        f"[{sig.min():.2e}, {sig.max():.6f}] (signed min {signed_min:.3f}), "
        f"eigen-relation residual {eig_worst:.2e}",
    )


def test_criterion_10_canonical_decomposition():
    rng = np.random.default_rng(10_000)
    amps = []
    gaussian = rng.standard_normal((7_000, 8)) + 1j * rng.standard_normal((7_000, 8))
    amps.extend(gaussian)
    for li, label in enumerate(("WClass", "Biseparable_B_AC", "GHZClass")):
        spec = EnsembleSpec("class-conditioned", 1_000, seed=10_100 + li,
                            class_label=label)
        amps.extend(sample_state(spec, i).amplitudes for i in range(1_000))
    assert len(amps) == N_CANONICAL

    worst_residual = 0.0
    count_ok = True
    originals, canonicals = [], []
    for raw in amps:
        state = tt.PureState(raw)
        # same discriminant arithmetic as the canonical pencil solver
        tau_rel = 4.0 * abs(tt.hyperdeterminant(state)) / state.norm_squared**2
        forms = acin_canonical(state, tol=1e-8)
        expected = 2 if tau_rel > 1e-8 else 1
        count_ok = count_ok and len(forms) == expected
        if expected == 1:
            count_ok = count_ok and forms[0].multiplicity == 2
        for form in forms:
            worst_residual = max(
                worst_residual, form.residual / np.sqrt(state.norm_squared)
            )
        originals.append(raw)
        canonicals.append(forms[0].amplitudes())
    rows_in = kernels.invariant_rows(np.array(originals))
    rows_can = kernels.invariant_rows(np.array(canonicals))
    n = rows_in[:, COL["n"]]
    inv_drift = 0.0
    for col, degree in _INVARIANT_COLS:
        gap = np.abs(rows_can[:, COL[col]] - rows_in[:, COL[col]]) / n ** (degree / 2)
        inv_drift = max(inv_drift, float(gap.max()))
    ok = worst_residual <= 1e-10 and count_ok and inv_drift <= 1e-9
    _report(
        10,
        ok,
        f"max reconstruction residual {worst_residual:.2e} (tol 1e-10), "
        f"form counts consistent: {count_ok}, invariant drift {inv_drift:.2e} (tol 1e-9)",
    )


def test_criterion_11_sweep_determinism(tmp_path):
    spec = EnsembleSpec("gaussian", 2_500, seed=31_415)
    blobs = []
    for workers in (1, 2):
        out = tmp_path / f"sweep_{workers}.csv"
        result = run_sweep(spec, checks=("kempe", "ckw", "monogamy"),
                           out=str(out), workers=workers, chunk_size=512)
        assert result.total_violations == 0
        blobs.append(out.read_bytes())
    ok = blobs[0] == blobs[1] and len(blobs[0]) > 0
    _report(11, ok, f"CSV byte-identical across worker counts ({len(blobs[0])} bytes)")
