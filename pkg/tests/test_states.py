import numpy as np
import pytest

from tritangle import (
    DensityMatrix,
    InvalidOperatorError,
    InvalidStateError,
    LocalOperator,
    apply_local,
    kempe_xi,
    pair_tangle,
    reduced_density,
    slices,
    spin_flip,
    state_from_amplitudes,
    three_tangle,
)
from tritangle.states import SPIN_FLIP, from_slices
from tritangle.twistor import MAGIC_COLUMNS

from conftest import R2, R3, random_state

SUBSYSTEMS = ("A", "B", "C", "AB", "AC", "BC")


def test_state_from_amplitudes_basis():
    s = state_from_amplitudes([1, 0, 0, 0, 0, 0, 0, 0])
    assert s.norm_squared == 1.0
    assert s.tensor[0, 0, 0] == 1.0


def test_state_norms(ghz, w_state):
    assert ghz.norm_squared == pytest.approx(1.0, abs=1e-15)
    assert w_state.norm_squared == pytest.approx(1.0, abs=1e-15)


def test_state_rejects_non_finite():
    with pytest.raises(InvalidStateError, match="index 3"):
        state_from_amplitudes([0, 0, 0, np.inf, 0, 0, 0, 0])
    with pytest.raises(InvalidStateError, match="index 5"):
        state_from_amplitudes([0, 0, 0, 0, 0, np.nan * 1j, 0, 0])


def test_slices_ghz(ghz):
    pair = slices(ghz)
    assert np.allclose(pair.c0, [[R2, 0], [0, 0]])
    assert np.allclose(pair.c1, [[0, 0], [0, R2]])


def test_slices_w(w_state):
    pair = slices(w_state)
    assert np.allclose(pair.c0, [[0, R3], [R3, 0]])
    assert np.allclose(pair.c1, [[R3, 0], [0, 0]])


def test_slices_psi_minus(psi_minus):
    pair = slices(psi_minus)
    assert np.allclose(pair.c0, [[0, R2], [0, 0]])
    assert np.allclose(pair.c1, [[R2, 0], [0, 0]])


def test_slices_round_trip(rng):
    state = random_state(rng)
    assert np.array_equal(from_slices(slices(state)).amplitudes, state.amplitudes)


def test_reduced_density_ghz(ghz):
    rho = reduced_density(ghz, "A")
    assert np.allclose(rho.matrix, np.diag([0.5, 0.5]), atol=1e-15)


def test_reduced_density_w(w_state):
    rho = reduced_density(w_state, "A")
    assert np.allclose(rho.matrix, np.diag([2 / 3, 1 / 3]), atol=1e-15)


def test_reduced_density_product_state():
    rho = reduced_density(state_from_amplitudes([1, 0, 0, 0, 0, 0, 0, 0]), "BC")
    expected = np.zeros((4, 4))
    expected[0, 0] = 1.0
    assert np.allclose(rho.matrix, expected, atol=1e-15)


@pytest.mark.parametrize("subsystem", SUBSYSTEMS)
def test_partial_trace_consistency(rng, subsystem):
    for _ in range(25):
        state = random_state(rng)
        rho = reduced_density(state, subsystem)
        assert rho.trace == pytest.approx(state.norm_squared, rel=1e-12)
        evals = np.linalg.eigvalsh(rho.matrix)
        assert evals.min() >= -1e-12 * rho.trace


def test_spin_flip_bell_invariant():
    bell = np.zeros(4, dtype=complex)
    bell[0] = bell[3] = R2
    rho = DensityMatrix(np.outer(bell, bell.conj()), "AB")
    assert np.allclose(spin_flip(rho).matrix, rho.matrix, atol=1e-15)


def test_spin_flip_psi_minus_ab(psi_minus):
    rho = reduced_density(psi_minus, "AB")
    flipped = spin_flip(rho)
    # |00><00| + |10><10| flips to |11><11| + |01><01|, so the overlap dies
    expected = 0.5 * np.diag([0.0, 1.0, 0.0, 1.0])
    assert np.allclose(flipped.matrix, expected, atol=1e-15)
    assert abs(np.trace(rho.matrix @ flipped.matrix)) <= 1e-15


def test_spin_flip_involution_and_magic_conjugation(rng):
    for _ in range(10):
        state = random_state(rng)
        rho = reduced_density(state, "BC")
        again = spin_flip(spin_flip(rho))
        assert np.allclose(again.matrix, rho.matrix, atol=1e-14)
        # in magic coordinates the flip is entrywise conjugation
        magic = MAGIC_COLUMNS.conj().T @ rho.matrix @ MAGIC_COLUMNS
        magic_flipped = MAGIC_COLUMNS.conj().T @ spin_flip(rho).matrix @ MAGIC_COLUMNS
        assert np.allclose(magic_flipped, magic.conj(), atol=1e-13)


def test_spin_flip_rejects_single_qubit(ghz):
    with pytest.raises(InvalidStateError):
        spin_flip(reduced_density(ghz, "A"))


def test_pair_tangle_w(w_state):
    _, tangle = pair_tangle(reduced_density(w_state, "AB"))
    assert tangle == pytest.approx(4 / 9, abs=1e-13)


def test_pair_tangle_ghz(ghz):
    _, tangle = pair_tangle(reduced_density(ghz, "AB"))
    assert tangle == pytest.approx(0.0, abs=1e-13)


def test_pair_tangle_bell_pair(psi_minus):
    evals, tangle = pair_tangle(reduced_density(psi_minus, "AC"))
    assert tangle == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(evals, [1, 0, 0, 0], atol=1e-12)
    assert np.all(evals[:-1] >= evals[1:])


def test_pair_tangle_local_unitary_invariance(rng):
    for _ in range(10):
        state = random_state(rng)
        rho = reduced_density(state, "AB")
        _, tangle = pair_tangle(rho)
        q1, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        q2, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        u = np.kron(q1, q2)
        _, tangle2 = pair_tangle(DensityMatrix(u @ rho.matrix @ u.conj().T, "AB"))
        assert tangle2 == pytest.approx(tangle, rel=1e-9, abs=1e-9 * rho.trace**2)


def test_kempe_xi_anchors(ghz, w_state):
    assert kempe_xi(ghz) == pytest.approx(0.25, abs=1e-14)
    assert kempe_xi(w_state) == pytest.approx(2 / 9, abs=1e-14)
    assert kempe_xi(state_from_amplitudes([1, 0, 0, 0, 0, 0, 0, 0])) == pytest.approx(1.0)


def test_flip_trace_identity(rng):
    # Tr(rho_BC rho~_BC) = 2(Det rho_B + Det rho_C - Det rho_A)
    for _ in range(50):
        state = random_state(rng)
        rho = reduced_density(state, "BC")
        lhs = np.trace(rho.matrix @ spin_flip(rho).matrix).real
        dets = [np.linalg.det(reduced_density(state, p).matrix).real for p in "ABC"]
        rhs = 2 * (dets[1] + dets[2] - dets[0])
        assert lhs == pytest.approx(rhs, abs=1e-10 * state.norm_squared**2)


def test_apply_local_identity(ghz):
    assert np.allclose(apply_local(ghz, LocalOperator.identity()).amplitudes, ghz.amplitudes)


def test_apply_local_bit_flip(ghz):
    flip = LocalOperator.on_party("A", [[0, 1], [1, 0]])
    out = apply_local(ghz, flip)
    expected = np.zeros(8, dtype=complex)
    expected[4] = R2  # |100>
    expected[3] = R2  # |011>
    assert np.allclose(out.amplitudes, expected)


def test_apply_local_scaling_homogeneity(rng):
    state = random_state(rng)
    scaled = apply_local(state, LocalOperator.on_party("A", 2.0 * np.eye(2)))
    assert three_tangle(scaled) == pytest.approx(16.0 * three_tangle(state), rel=1e-12)


def test_apply_local_unitary_preserves_norm(rng):
    from tritangle.ensembles import random_local

    for _ in range(10):
        state = random_state(rng)
        op = random_local("unitary", rng)
        assert apply_local(state, op).norm_squared == pytest.approx(
            state.norm_squared, rel=1e-12
        )


def test_local_operator_rejects_singular():
    with pytest.raises(InvalidOperatorError):
        LocalOperator.on_party("B", [[1, 0], [0, 0]])


def test_local_operator_kind_validation():
    with pytest.raises(InvalidOperatorError):
        LocalOperator(
            2 * np.eye(2), np.eye(2), np.eye(2), kinds=("unitary", "unitary", "unitary")
        )
    with pytest.raises(InvalidOperatorError):
        LocalOperator(
            2 * np.eye(2), np.eye(2), np.eye(2),
            kinds=("special-linear", "unitary", "unitary"),
        )
    op = LocalOperator(2 * np.eye(2), np.eye(2), np.eye(2))
    assert op.kinds == ("general", "unitary", "unitary")


def test_spin_flip_matrix_constant():
    expected = np.zeros((4, 4))
    expected[0, 3] = expected[3, 0] = -1.0
    expected[1, 2] = expected[2, 1] = 1.0
    assert np.array_equal(SPIN_FLIP, expected)
