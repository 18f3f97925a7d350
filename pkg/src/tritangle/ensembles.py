"""Random-state sampling, Monte Carlo identity sweeps, and CSV output.

Sampling is keyed by (seed, index) through a counter-based generator so
that a sweep is bit-for-bit reproducible for a fixed spec no matter how
the work is chunked across workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .classify import classify
from .errors import InvalidStateError
from .kernels import COL
from .states import LocalOperator, PureState

KINDS = ("gaussian", "sphere-uniform", "class-conditioned")

_R2 = 1.0 / np.sqrt(2.0)
_R3 = 1.0 / np.sqrt(3.0)

REPRESENTATIVES = {
    "FullySeparable": np.array([1, 0, 0, 0, 0, 0, 0, 0], dtype=complex),
    "Biseparable_A_BC": np.array([_R2, 0, 0, _R2, 0, 0, 0, 0], dtype=complex),
    "Biseparable_B_AC": np.array([0, _R2, 0, 0, _R2, 0, 0, 0], dtype=complex),
    "Biseparable_C_AB": np.array([0, 0, _R2, 0, _R2, 0, 0, 0], dtype=complex),
    "WClass": np.array([0, _R3, _R3, 0, _R3, 0, 0, 0], dtype=complex),
    "GHZClass": np.array([_R2, 0, 0, 0, 0, 0, 0, _R2], dtype=complex),
}

CHECK_NAMES = ("kempe", "ckw", "monogamy", "plucker", "paths", "sigma", "sigma-zero", "lu")

CSV_HEADER = "index,N,tau_ABC,tau_A,tau_B,tau_C,tau_AB,tau_AC,xi,omega,sigma,class"


@dataclass(frozen=True)
class EnsembleSpec:
    """What to sample: ensemble kind, size, seed, and class conditioning.

    operator_kind selects the scrambling operators for class-conditioned
    sampling: "general" explores the full SLOCC orbit, "unitary"
    restricts to the LU orbit (where also sigma and xi are preserved).
    """

    kind: str
    count: int
    seed: int
    class_label: str | None = None
    condition_bound: float = 10.0
    operator_kind: str = "general"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidStateError(f"ensemble kind must be one of {KINDS}, got {self.kind!r}")
        if self.count < 1:
            raise InvalidStateError("count must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidStateError("seed must fit in 64 unsigned bits")
        if self.kind == "class-conditioned":
            if self.class_label not in REPRESENTATIVES:
                raise InvalidStateError(
                    f"class-conditioned sampling needs a label from "
                    f"{sorted(REPRESENTATIVES)}, got {self.class_label!r}"
                )
        if self.operator_kind not in ("general", "special-linear", "unitary"):
            raise InvalidStateError(f"unknown operator kind {self.operator_kind!r}")
        if self.condition_bound < 1.0:
            raise InvalidStateError("condition bound must be >= 1")


def state_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for one state: counter-based, keyed by (seed, index)."""
    bits = np.random.Philox(
        key=np.array([seed, 0], dtype=np.uint64),
        counter=np.array([0, 0, 0, index], dtype=np.uint64),
    )
    return np.random.Generator(bits)


def _haar_unitary(rng: np.random.Generator) -> np.ndarray:
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(g)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _condition_number(mat: np.ndarray) -> float:
    sv = np.linalg.svd(mat, compute_uv=False)
    return float(sv[0] / sv[1]) if sv[1] > 0 else np.inf


def _draw_factor(kind: str, rng: np.random.Generator, bound: float, max_tries: int):
    if kind == "unitary":
        return _haar_unitary(rng)
    for _ in range(max_tries):
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        det = np.linalg.det(g)
        if abs(det) <= 1e-12 * np.sum(np.abs(g) ** 2):
            continue
        if kind == "special-linear":
            g = g / np.sqrt(det)
        if _condition_number(g) <= bound:
            return g
    raise RuntimeError(f"no {kind} factor within condition bound {bound} after {max_tries} tries")


def random_local(
    kind: str,
    rng: np.random.Generator,
    condition_bound: float = 10.0,
    max_tries: int = 1000,
) -> LocalOperator:
    """Random one-operator-per-party transformation of the requested kind."""
    if kind not in ("unitary", "special-linear", "general"):
        raise InvalidStateError(f"unknown operator kind {kind!r}")
    mats = [_draw_factor(kind, rng, condition_bound, max_tries) for _ in range(3)]
    kinds = {"unitary": "unitary", "special-linear": "special-linear", "general": "general"}[kind]
    return LocalOperator(*mats, kinds=(kinds, kinds, kinds))


def _apply_operator_amps(amps: np.ndarray, op: LocalOperator) -> np.ndarray:
    t = amps.reshape(2, 2, 2)
    return np.einsum("ai,bj,ck,ijk->abc", op.op_a, op.op_b, op.op_c, t).ravel()


def _sample_from_rng(spec: EnsembleSpec, rng: np.random.Generator) -> np.ndarray:
    if spec.kind == "class-conditioned":
        base = REPRESENTATIVES[spec.class_label]
        op = random_local(spec.operator_kind, rng, spec.condition_bound)
        return _apply_operator_amps(base, op)
    amps = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    if spec.kind == "sphere-uniform":
        amps = amps / np.linalg.norm(amps)
    return amps


def sample_amplitudes(spec: EnsembleSpec, index: int) -> np.ndarray:
    """Amplitudes of sample number `index`; depends only on (seed, index)."""
    if not 0 <= index < spec.count:
        raise InvalidStateError(f"index {index} outside ensemble of {spec.count}")
    return _sample_from_rng(spec, state_rng(spec.seed, index))


def sample_state(spec: EnsembleSpec, index: int) -> PureState:
    return PureState(sample_amplitudes(spec, index))


@dataclass
class SweepResult:
    """Aggregated residuals of one Monte Carlo verification sweep."""

    spec: EnsembleSpec
    checks: tuple[str, ...]
    violations: dict[str, int]
    max_residuals: dict[str, float]
    wall_time_s: float
    workers: int
    csv_path: str | None = None

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())


# normalized residual threshold per check; residuals are scaled by the
# homogeneity power of N (or by ||P||^2 for the quadric relation)
CHECK_TOLERANCES = {
    "kempe": 1e-9,
    "ckw": 1e-8,
    "monogamy": 1e-10,
    "plucker": 1e-12,
    "paths": 1e-10,
    "sigma": 1e-9,
    "sigma-zero": 1e-9,
    "lu": 1e-9,
}

# report fields compared under the LU-drift check: (column, homogeneity degree)
_LU_COLUMNS = (
    ("n", 2),
    ("tau_abc", 4),
    ("tau_a_tw", 4),
    ("tau_b_tw", 4),
    ("tau_c_tw", 4),
    ("tau_ab", 4),
    ("tau_ac", 4),
    ("tau_bc", 4),
    ("xi", 6),
    ("omega", 6),
    ("lambda_sum", 6),
    ("sigma", 6),
)


def _check_residuals(rows: np.ndarray, name: str, lu_drift: np.ndarray | None):
    """Normalized residual array for one named check."""
    n = rows[:, COL["n"]]
    n2 = np.maximum(n * n, 1e-300)
    n3 = np.maximum(n * n2, 1e-300)
    if name == "kempe":
        return rows[:, COL["kempe_residual"]] / n3
    if name == "ckw":
        return rows[:, COL["ckw_residual"]] / n2
    if name == "monogamy":
        return np.maximum(rows[:, COL["tau_abc"]] - rows[:, COL["tau_a_dm"]], 0.0) / n2
    if name == "plucker":
        scale = np.maximum(rows[:, COL["p_frob2"]], 1e-300)
        return rows[:, COL["plucker_residual"]] / scale
    if name == "paths":
        d_s = rows[:, COL["re_d_schlafli"]] + 1j * rows[:, COL["im_d_schlafli"]]
        d_p = rows[:, COL["re_d_poly"]] + 1j * rows[:, COL["im_d_poly"]]
        res = np.abs(d_s - d_p)
        res = np.maximum(res, np.abs(rows[:, COL["tau_abc"]] - 4.0 * np.abs(d_s)))
        for tw, dm in (("tau_a_tw", "tau_a_dm"), ("tau_b_tw", "tau_b_dm"),
                       ("tau_c_tw", "tau_c_dm"), ("flip_bc_tw", "flip_bc_dm"),
                       ("flip_ab_tw", "flip_ab_dm"), ("flip_ac_tw", "flip_ac_dm")):
            res = np.maximum(res, np.abs(rows[:, COL[tw]] - rows[:, COL[dm]]))
        half = 0.5 * (rows[:, COL["tau_b_dm"]] + rows[:, COL["tau_c_dm"]]
                      - rows[:, COL["tau_a_dm"]])
        res = np.maximum(res, np.abs(rows[:, COL["flip_bc_dm"]] - half))
        return res / n2
    if name == "sigma":
        sig = rows[:, COL["sigma"]]
        return np.maximum(sig - n3, 0.0) / n3
    if name == "sigma-zero":
        # for ensembles whose class makes sigma vanish (LU-scrambled GHZ)
        return rows[:, COL["sigma"]] / n3
    if name == "lu":
        return lu_drift
    raise InvalidStateError(f"unknown check {name!r}")


def _format_value(x: float) -> str:
    return format(x, ".17g")


def _sweep_chunk(spec: EnsembleSpec, checks: tuple[str, ...], start: int, stop: int,
                 want_csv: bool):
    indices = range(start, stop)
    amps = np.empty((stop - start, 8), dtype=complex)
    lu_amps = np.empty_like(amps) if "lu" in checks else None
    for k, idx in enumerate(indices):
        rng = state_rng(spec.seed, idx)
        amps[k] = _sample_from_rng(spec, rng)
        if lu_amps is not None:
            op = random_local("unitary", rng)
            lu_amps[k] = _apply_operator_amps(amps[k], op)
    rows = kernels.invariant_rows(amps)
    lu_drift = None
    if lu_amps is not None:
        rows_lu = kernels.invariant_rows(lu_amps)
        n = rows[:, COL["n"]]
        drift = np.zeros(rows.shape[0])
        for col, degree in _LU_COLUMNS:
            scale = np.maximum(n ** (degree / 2.0), 1e-300)
            drift = np.maximum(
                drift, np.abs(rows_lu[:, COL[col]] - rows[:, COL[col]]) / scale
            )
        lu_drift = drift
    counts = {}
    maxima = {}
    for name in checks:
        residuals = _check_residuals(rows, name, lu_drift)
        counts[name] = int(np.sum(residuals > CHECK_TOLERANCES[name]))
        maxima[name] = float(residuals.max()) if residuals.size else 0.0
    lines = []
    if want_csv:
        for k, idx in enumerate(indices):
            label = classify(PureState(amps[k])).label
            vals = [
                rows[k, COL["n"]],
                rows[k, COL["tau_abc"]],
                rows[k, COL["tau_a_tw"]],
                rows[k, COL["tau_b_tw"]],
                rows[k, COL["tau_c_tw"]],
                rows[k, COL["tau_ab"]],
                rows[k, COL["tau_ac"]],
                rows[k, COL["xi"]],
                rows[k, COL["omega"]],
                rows[k, COL["sigma"]],
            ]
            lines.append(
                f"{idx}," + ",".join(_format_value(v) for v in vals) + f",{label}"
            )
    return counts, maxima, lines


def run_sweep(
    spec: EnsembleSpec,
    checks=CHECK_NAMES,
    out: str | None = None,
    workers: int = 1,
    chunk_size: int = 4096,
) -> SweepResult:
    """Evaluate identity checks over the ensemble; optionally write CSV rows.

    Deterministic for fixed (spec, checks, out) regardless of `workers`.
    """
    checks = tuple(checks)
    if not checks:
        raise InvalidStateError("check list must not be empty")
    for name in checks:
        if name not in CHECK_NAMES:
            raise InvalidStateError(f"unknown check {name!r}; known: {CHECK_NAMES}")
    t0 = time.perf_counter()
    bounds = [(s, min(s + chunk_size, spec.count)) for s in range(0, spec.count, chunk_size)]
    want_csv = out is not None
    results = []
    if workers <= 1 or len(bounds) == 1:
        for start, stop in bounds:
            results.append(_sweep_chunk(spec, checks, start, stop, want_csv))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_sweep_chunk, spec, checks, start, stop, want_csv)
                for start, stop in bounds
            ]
            results = [f.result() for f in futures]
    violations = {name: 0 for name in checks}
    maxima = {name: 0.0 for name in checks}
    for counts, chunk_max, _ in results:
        for name in checks:
            violations[name] += counts[name]
            maxima[name] = max(maxima[name], chunk_max[name])
    if want_csv:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(CSV_HEADER + "\n")
            for _, _, lines in results:
                for line in lines:
                    fh.write(line + "\n")
    return SweepResult(
        spec=spec,
        checks=checks,
        violations=violations,
        max_residuals=maxima,
        wall_time_s=time.perf_counter() - t0,
        workers=workers,
        csv_path=out,
    )
