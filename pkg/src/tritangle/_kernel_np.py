"""Pure-numpy batch kernel; vectorized twin of the compiled extension."""

import numpy as np

from .states import SPIN_FLIP

_SQRT2 = np.sqrt(2.0)


def fill_rows(amps: np.ndarray, out: np.ndarray) -> None:
    """Fill out[(n, NCOLS)] with per-state invariants; see kernels.COLUMNS."""
    t = amps.reshape(-1, 2, 2, 2)
    c0, c1 = t[:, 0], t[:, 1]
    n = np.sum(np.abs(amps) ** 2, axis=1)

    # magic-basis vectors from the slices
    def vecs(c):
        v1 = 1j * (c[:, 0, 1] + c[:, 1, 0]) / _SQRT2
        v2 = (c[:, 1, 0] - c[:, 0, 1]) / _SQRT2
        v3 = 1j * (c[:, 0, 0] - c[:, 1, 1]) / _SQRT2
        v4 = (c[:, 0, 0] + c[:, 1, 1]) / _SQRT2
        return v1, v2, v3, v4

    z1, z2, z3, z4 = vecs(c0)
    w1, w2, w3, w4 = vecs(c1)

    p12 = z1 * w2 - z2 * w1
    p13 = z1 * w3 - z3 * w1
    p14 = z1 * w4 - z4 * w1
    p23 = z2 * w3 - z3 * w2
    p24 = z2 * w4 - z4 * w2
    p34 = z3 * w4 - z4 * w3
    # dual components under eps_1234 = +1
    q12, q13, q14 = p34, -p24, p23
    q23, q24, q34 = p14, -p13, p12

    zz = z1 * z1 + z2 * z2 + z3 * z3 + z4 * z4
    ww = w1 * w1 + w2 * w2 + w3 * w3 + w4 * w4
    zw = z1 * w1 + z2 * w2 + z3 * w3 + z4 * w4
    disc = zw * zw - zz * ww

    pp = 2.0 * (p12 * p12 + p13 * p13 + p14 * p14 + p23 * p23 + p24 * p24 + p34 * p34)
    tau_abc = 2.0 * np.abs(pp)

    ps = (p12, p13, p14, p23, p24, p34)
    qs = (q12, q13, q14, q23, q24, q34)
    p_frob2 = 2.0 * sum(np.abs(p) ** 2 for p in ps)
    tau_a_tw = 2.0 * p_frob2  # 2 P^mn conj(P_mn)
    first3 = np.abs(zz) ** 2 + np.abs(ww) ** 2 + 2.0 * np.abs(zw) ** 2
    plusc = 2.0 * sum(((p + q) * p.conj()).real for p, q in zip(ps, qs))
    minusc = 2.0 * sum(((p - q) * p.conj()).real for p, q in zip(ps, qs))
    tau_b_tw = first3 + plusc
    tau_c_tw = first3 + minusc

    # one-qubit reductions, directly from the amplitudes
    a00 = np.sum(np.abs(c0) ** 2, axis=(1, 2))
    a11 = np.sum(np.abs(c1) ** 2, axis=(1, 2))
    a01 = np.sum(c0 * c1.conj(), axis=(1, 2))
    tau_a_dm = 4.0 * (a00 * a11 - np.abs(a01) ** 2)
    b00 = np.sum(np.abs(t[:, :, 0, :]) ** 2, axis=(1, 2))
    b11 = np.sum(np.abs(t[:, :, 1, :]) ** 2, axis=(1, 2))
    b01 = np.sum(t[:, :, 0, :] * t[:, :, 1, :].conj(), axis=(1, 2))
    tau_b_dm = 4.0 * (b00 * b11 - np.abs(b01) ** 2)
    g00 = np.sum(np.abs(t[:, :, :, 0]) ** 2, axis=(1, 2))
    g11 = np.sum(np.abs(t[:, :, :, 1]) ** 2, axis=(1, 2))
    g01 = np.sum(t[:, :, :, 0] * t[:, :, :, 1].conj(), axis=(1, 2))
    tau_c_dm = 4.0 * (g00 * g11 - np.abs(g01) ** 2)

    # two-qubit purifications: columns indexed by the traced-out qubit
    v_ab = t.reshape(-1, 4, 2)
    v_ac = t.transpose(0, 1, 3, 2).reshape(-1, 4, 2)
    v_bc = t.reshape(-1, 2, 4).transpose(0, 2, 1)

    def flip_direct(v):
        rho = np.einsum("nic,njc->nij", v, v.conj())
        flipped = np.einsum("ij,njk,kl->nil", SPIN_FLIP, rho.conj(), SPIN_FLIP)
        return np.einsum("nij,nji->n", rho, flipped).real

    flip_ab_dm = flip_direct(v_ab)
    flip_ac_dm = flip_direct(v_ac)
    flip_bc_dm = flip_direct(v_bc)

    def wootters(v):
        m = np.einsum("nia,ij,njb->nab", v, SPIN_FLIP, v)
        frob = np.sum(np.abs(m) ** 2, axis=(1, 2))
        dtm = np.abs(m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0])
        gap = np.sqrt(np.clip(frob * frob - 4.0 * dtm * dtm, 0.0, None))
        sp = np.sqrt((frob + gap) / 2.0)
        sm = np.divide(dtm, sp, out=np.zeros_like(sp), where=sp > 0)
        return (sp - sm) ** 2

    tau_ab = wootters(v_ab)
    tau_ac = wootters(v_ac)
    tau_bc = wootters(v_bc)

    # Kempe invariant from the slice products
    a_m = np.matmul(c0, c0.conj().transpose(0, 2, 1))
    b_m = np.matmul(c1, c1.conj().transpose(0, 2, 1))
    c_m = np.matmul(c0, c1.conj().transpose(0, 2, 1))
    c_md = c_m.conj().transpose(0, 2, 1)
    xi = (
        np.einsum("nij,njk,nki->n", a_m, a_m, a_m)
        + np.einsum("nij,njk,nki->n", b_m, b_m, b_m)
        + 3.0 * np.einsum("nij,njk,nki->n", c_md, c_m, a_m)
        + 3.0 * np.einsum("nij,njk,nki->n", c_m, c_md, b_m)
    ).real

    pz1 = p12 * z2 + p13 * z3 + p14 * z4
    pz2 = -p12 * z1 + p23 * z3 + p24 * z4
    pz3 = -p13 * z1 - p23 * z2 + p34 * z4
    pz4 = -p14 * z1 - p24 * z2 - p34 * z3
    pw1 = p12 * w2 + p13 * w3 + p14 * w4
    pw2 = -p12 * w1 + p23 * w3 + p24 * w4
    pw3 = -p13 * w1 - p23 * w2 + p34 * w4
    pw4 = -p14 * w1 - p24 * w2 - p34 * w3
    omega = 4.0 * (
        np.abs(pz1) ** 2 + np.abs(pz2) ** 2 + np.abs(pz3) ** 2 + np.abs(pz4) ** 2
        + np.abs(pw1) ** 2 + np.abs(pw2) ** 2 + np.abs(pw3) ** 2 + np.abs(pw4) ** 2
    )
    lambda_sum = n * (tau_a_dm + tau_b_dm + tau_c_dm)
    sigma_signed = omega - n * tau_abc

    tr0 = c0[:, 0, 0] + c0[:, 1, 1]
    tr1 = c1[:, 0, 0] + c1[:, 1, 1]
    tr01 = np.einsum("nij,nji->n", c0, c1)
    det0 = c0[:, 0, 0] * c0[:, 1, 1] - c0[:, 0, 1] * c0[:, 1, 0]
    det1 = c1[:, 0, 0] * c1[:, 1, 1] - c1[:, 0, 1] * c1[:, 1, 0]
    mixed = tr0 * tr1 - tr01
    d_schlafli = mixed * mixed - 4.0 * det0 * det1

    c = t
    d_poly = (
        c[:, 0, 0, 0] ** 2 * c[:, 1, 1, 1] ** 2
        + c[:, 0, 0, 1] ** 2 * c[:, 1, 1, 0] ** 2
        + c[:, 0, 1, 0] ** 2 * c[:, 1, 0, 1] ** 2
        + c[:, 0, 1, 1] ** 2 * c[:, 1, 0, 0] ** 2
        - 2.0
        * (
            c[:, 0, 0, 0] * c[:, 0, 0, 1] * c[:, 1, 1, 0] * c[:, 1, 1, 1]
            + c[:, 0, 0, 0] * c[:, 0, 1, 0] * c[:, 1, 0, 1] * c[:, 1, 1, 1]
            + c[:, 0, 0, 0] * c[:, 0, 1, 1] * c[:, 1, 0, 0] * c[:, 1, 1, 1]
            + c[:, 0, 0, 1] * c[:, 0, 1, 0] * c[:, 1, 0, 1] * c[:, 1, 1, 0]
            + c[:, 0, 0, 1] * c[:, 0, 1, 1] * c[:, 1, 1, 0] * c[:, 1, 0, 0]
            + c[:, 0, 1, 0] * c[:, 0, 1, 1] * c[:, 1, 0, 1] * c[:, 1, 0, 0]
        )
        + 4.0
        * (
            c[:, 0, 0, 0] * c[:, 0, 1, 1] * c[:, 1, 0, 1] * c[:, 1, 1, 0]
            + c[:, 0, 0, 1] * c[:, 0, 1, 0] * c[:, 1, 0, 0] * c[:, 1, 1, 1]
        )
    )

    out[:, 0] = n
    out[:, 1] = d_schlafli.real
    out[:, 2] = d_schlafli.imag
    out[:, 3] = d_poly.real
    out[:, 4] = d_poly.imag
    out[:, 5] = tau_abc
    out[:, 6] = tau_a_tw
    out[:, 7] = tau_b_tw
    out[:, 8] = tau_c_tw
    out[:, 9] = tau_a_dm
    out[:, 10] = tau_b_dm
    out[:, 11] = tau_c_dm
    out[:, 12] = first3
    out[:, 13] = plusc
    out[:, 14] = minusc
    out[:, 15] = flip_bc_dm
    out[:, 16] = flip_ab_dm
    out[:, 17] = flip_ac_dm
    out[:, 18] = tau_ab
    out[:, 19] = tau_ac
    out[:, 20] = tau_bc
    out[:, 21] = xi
    out[:, 22] = omega
    out[:, 23] = lambda_sum
    out[:, 24] = np.abs(sigma_signed)
    out[:, 25] = sigma_signed
    out[:, 26] = np.angle(disc)
    out[:, 27] = np.abs(p12 * p34 - p13 * p24 + p23 * p14)
    out[:, 28] = p_frob2
    out[:, 29] = np.abs(tau_a_dm - tau_abc - tau_ab - tau_ac)
    out[:, 30] = np.abs(xi - n**3 - 0.375 * (omega - lambda_sum))
