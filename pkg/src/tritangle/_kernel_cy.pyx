# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernel; scalar twin of the numpy implementation."""

import numpy as np

cimport cython
from libc.math cimport atan2, fabs, sqrt

ctypedef double complex dc

# spin flip conjugator sigma_y (x) sigma_y maps basis index i to 3 - i with
# signs (-1, +1, +1, -1); (S v)[i] = sign[i] * v[3 - i]
cdef double _FLIP_SIGN[4]
_FLIP_SIGN[0] = -1.0
_FLIP_SIGN[1] = 1.0
_FLIP_SIGN[2] = 1.0
_FLIP_SIGN[3] = -1.0


cdef inline double cabs2(dc z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef inline double cmod(dc z) noexcept nogil:
    return sqrt(cabs2(z))


@cython.boundscheck(False)
@cython.wraparound(False)
def fill_rows(const dc[:, ::1] amps, double[:, ::1] out):
    """Fill out[(n, NCOLS)] with per-state invariants; see kernels.COLUMNS."""
    cdef Py_ssize_t nrows = amps.shape[0]
    cdef Py_ssize_t i
    with nogil:
        for i in range(nrows):
            _one_state(&amps[i, 0], &out[i, 0])


cdef double _flip_trace(const dc* v) noexcept nogil:
    """Tr(rho rho~) for rho = V V+, V the 4x2 purification (row-major)."""
    cdef dc rho[16]
    cdef dc rho_f[16]
    cdef Py_ssize_t i, j
    cdef dc acc
    for i in range(4):
        for j in range(4):
            rho[4 * i + j] = (v[2 * i] * v[2 * j].conjugate()
                              + v[2 * i + 1] * v[2 * j + 1].conjugate())
    for i in range(4):
        for j in range(4):
            rho_f[4 * i + j] = (_FLIP_SIGN[i] * _FLIP_SIGN[j]
                                * rho[4 * (3 - i) + (3 - j)].conjugate())
    acc = 0
    for i in range(4):
        for j in range(4):
            acc = acc + rho[4 * i + j] * rho_f[4 * j + i]
    return acc.real


cdef double _wootters(const dc* v) noexcept nogil:
    """Squared concurrence from singular values of M = V^T S V (2x2 symmetric)."""
    cdef dc sv[8]
    cdef dc m[4]
    cdef Py_ssize_t i, a, b
    for i in range(4):
        sv[2 * i] = _FLIP_SIGN[i] * v[2 * (3 - i)]
        sv[2 * i + 1] = _FLIP_SIGN[i] * v[2 * (3 - i) + 1]
    for a in range(2):
        for b in range(2):
            m[2 * a + b] = (v[0 + a] * sv[0 + b] + v[2 + a] * sv[2 + b]
                            + v[4 + a] * sv[4 + b] + v[6 + a] * sv[6 + b])
    cdef double frob = cabs2(m[0]) + cabs2(m[1]) + cabs2(m[2]) + cabs2(m[3])
    cdef double det = cmod(m[0] * m[3] - m[1] * m[2])
    cdef double gap2 = frob * frob - 4.0 * det * det
    if gap2 < 0.0:
        gap2 = 0.0
    cdef double sp = sqrt((frob + sqrt(gap2)) / 2.0)
    cdef double sm = det / sp if sp > 0.0 else 0.0
    return (sp - sm) * (sp - sm)


cdef double _trace_cube(const dc* m) noexcept nogil:
    """Tr(M^3) for a 2x2 matrix (row-major)."""
    cdef dc m2[4]
    m2[0] = m[0] * m[0] + m[1] * m[2]
    m2[1] = m[0] * m[1] + m[1] * m[3]
    m2[2] = m[2] * m[0] + m[3] * m[2]
    m2[3] = m[2] * m[1] + m[3] * m[3]
    cdef dc tr = m2[0] * m[0] + m2[1] * m[2] + m2[2] * m[1] + m2[3] * m[3]
    return tr.real


cdef double _trace_dag_product(const dc* c, const dc* a) noexcept nogil:
    """Tr(C+ C A) for 2x2 matrices."""
    cdef dc h[4]
    cdef Py_ssize_t i, j
    cdef dc acc
    for i in range(2):
        for j in range(2):
            h[2 * i + j] = (c[i].conjugate() * c[j]
                            + c[2 + i].conjugate() * c[2 + j])
    acc = 0
    for i in range(2):
        for j in range(2):
            acc = acc + h[2 * i + j] * a[2 * j + i]
    return acc.real


cdef double _trace_product_dag(const dc* c, const dc* b) noexcept nogil:
    """Tr(C C+ B) for 2x2 matrices."""
    cdef dc h[4]
    cdef Py_ssize_t i, j
    cdef dc acc
    for i in range(2):
        for j in range(2):
            h[2 * i + j] = (c[2 * i] * c[2 * j].conjugate()
                            + c[2 * i + 1] * c[2 * j + 1].conjugate())
    acc = 0
    for i in range(2):
        for j in range(2):
            acc = acc + h[2 * i + j] * b[2 * j + i]
    return acc.real


cdef void _one_state(const dc* c, double* row) noexcept nogil:
    # slice entries: c0[b][c] = c[2b + c], c1[b][c] = c[4 + 2b + c]
    cdef dc c000 = c[0], c001 = c[1], c010 = c[2], c011 = c[3]
    cdef dc c100 = c[4], c101 = c[5], c110 = c[6], c111 = c[7]
    cdef double n = (cabs2(c000) + cabs2(c001) + cabs2(c010) + cabs2(c011)
                     + cabs2(c100) + cabs2(c101) + cabs2(c110) + cabs2(c111))
    cdef double rt2 = sqrt(2.0)

    # magic-basis vectors
    cdef dc z1 = 1j * (c001 + c010) / rt2
    cdef dc z2 = (c010 - c001) / rt2
    cdef dc z3 = 1j * (c000 - c011) / rt2
    cdef dc z4 = (c000 + c011) / rt2
    cdef dc w1 = 1j * (c101 + c110) / rt2
    cdef dc w2 = (c110 - c101) / rt2
    cdef dc w3 = 1j * (c100 - c111) / rt2
    cdef dc w4 = (c100 + c111) / rt2

    cdef dc p12 = z1 * w2 - z2 * w1
    cdef dc p13 = z1 * w3 - z3 * w1
    cdef dc p14 = z1 * w4 - z4 * w1
    cdef dc p23 = z2 * w3 - z3 * w2
    cdef dc p24 = z2 * w4 - z4 * w2
    cdef dc p34 = z3 * w4 - z4 * w3
    cdef dc q12 = p34
    cdef dc q13 = -p24
    cdef dc q14 = p23
    cdef dc q23 = p14
    cdef dc q24 = -p13
    cdef dc q34 = p12

    cdef dc zz = z1 * z1 + z2 * z2 + z3 * z3 + z4 * z4
    cdef dc ww = w1 * w1 + w2 * w2 + w3 * w3 + w4 * w4
    cdef dc zw = z1 * w1 + z2 * w2 + z3 * w3 + z4 * w4
    cdef dc disc = zw * zw - zz * ww

    cdef dc pp = 2.0 * (p12 * p12 + p13 * p13 + p14 * p14
                        + p23 * p23 + p24 * p24 + p34 * p34)
    cdef double tau_abc = 2.0 * cmod(pp)

    cdef double p_frob2 = 2.0 * (cabs2(p12) + cabs2(p13) + cabs2(p14)
                                 + cabs2(p23) + cabs2(p24) + cabs2(p34))
    cdef double tau_a_tw = 2.0 * p_frob2
    cdef double first3 = cabs2(zz) + cabs2(ww) + 2.0 * cabs2(zw)
    cdef double plusc = 2.0 * (((p12 + q12) * p12.conjugate()).real
                               + ((p13 + q13) * p13.conjugate()).real
                               + ((p14 + q14) * p14.conjugate()).real
                               + ((p23 + q23) * p23.conjugate()).real
                               + ((p24 + q24) * p24.conjugate()).real
                               + ((p34 + q34) * p34.conjugate()).real)
    cdef double minusc = 2.0 * (((p12 - q12) * p12.conjugate()).real
                                + ((p13 - q13) * p13.conjugate()).real
                                + ((p14 - q14) * p14.conjugate()).real
                                + ((p23 - q23) * p23.conjugate()).real
                                + ((p24 - q24) * p24.conjugate()).real
                                + ((p34 - q34) * p34.conjugate()).real)
    cdef double tau_b_tw = first3 + plusc
    cdef double tau_c_tw = first3 + minusc

    # one-qubit reductions, directly from the amplitudes
    cdef double a00 = cabs2(c000) + cabs2(c001) + cabs2(c010) + cabs2(c011)
    cdef double a11 = cabs2(c100) + cabs2(c101) + cabs2(c110) + cabs2(c111)
    cdef dc a01 = (c000 * c100.conjugate() + c001 * c101.conjugate()
                   + c010 * c110.conjugate() + c011 * c111.conjugate())
    cdef double tau_a_dm = 4.0 * (a00 * a11 - cabs2(a01))
    cdef double b00 = cabs2(c000) + cabs2(c001) + cabs2(c100) + cabs2(c101)
    cdef double b11 = cabs2(c010) + cabs2(c011) + cabs2(c110) + cabs2(c111)
    cdef dc b01 = (c000 * c010.conjugate() + c001 * c011.conjugate()
                   + c100 * c110.conjugate() + c101 * c111.conjugate())
    cdef double tau_b_dm = 4.0 * (b00 * b11 - cabs2(b01))
    cdef double g00 = cabs2(c000) + cabs2(c010) + cabs2(c100) + cabs2(c110)
    cdef double g11 = cabs2(c001) + cabs2(c011) + cabs2(c101) + cabs2(c111)
    cdef dc g01 = (c000 * c001.conjugate() + c010 * c011.conjugate()
                   + c100 * c101.conjugate() + c110 * c111.conjugate())
    cdef double tau_c_dm = 4.0 * (g00 * g11 - cabs2(g01))

    # two-qubit flip traces and Wootters tangles from the 4x2 purifications
    cdef dc v[8]
    cdef double flip_ab_dm, flip_ac_dm, flip_bc_dm
    cdef double tau_ab, tau_ac, tau_bc

    # pair AB: rows over (a, b), columns over c
    v[0] = c000; v[1] = c001
    v[2] = c010; v[3] = c011
    v[4] = c100; v[5] = c101
    v[6] = c110; v[7] = c111
    flip_ab_dm = _flip_trace(v)
    tau_ab = _wootters(v)

    # pair AC: rows over (a, c), columns over b
    v[0] = c000; v[1] = c010
    v[2] = c001; v[3] = c011
    v[4] = c100; v[5] = c110
    v[6] = c101; v[7] = c111
    flip_ac_dm = _flip_trace(v)
    tau_ac = _wootters(v)

    # pair BC: rows over (b, c), columns over a
    v[0] = c000; v[1] = c100
    v[2] = c001; v[3] = c101
    v[4] = c010; v[5] = c110
    v[6] = c011; v[7] = c111
    flip_bc_dm = _flip_trace(v)
    tau_bc = _wootters(v)

    # Kempe invariant from the 2x2 slice products
    cdef dc am[4]
    cdef dc bm[4]
    cdef dc cm[4]
    am[0] = c000 * c000.conjugate() + c001 * c001.conjugate()
    am[1] = c000 * c010.conjugate() + c001 * c011.conjugate()
    am[2] = c010 * c000.conjugate() + c011 * c001.conjugate()
    am[3] = c010 * c010.conjugate() + c011 * c011.conjugate()
    bm[0] = c100 * c100.conjugate() + c101 * c101.conjugate()
    bm[1] = c100 * c110.conjugate() + c101 * c111.conjugate()
    bm[2] = c110 * c100.conjugate() + c111 * c101.conjugate()
    bm[3] = c110 * c110.conjugate() + c111 * c111.conjugate()
    cm[0] = c000 * c100.conjugate() + c001 * c101.conjugate()
    cm[1] = c000 * c110.conjugate() + c001 * c111.conjugate()
    cm[2] = c010 * c100.conjugate() + c011 * c101.conjugate()
    cm[3] = c010 * c110.conjugate() + c011 * c111.conjugate()
    cdef double xi = (_trace_cube(am) + _trace_cube(bm)
                      + 3.0 * _trace_dag_product(cm, am)
                      + 3.0 * _trace_product_dag(cm, bm))

    cdef dc pz1 = p12 * z2 + p13 * z3 + p14 * z4
    cdef dc pz2 = -p12 * z1 + p23 * z3 + p24 * z4
    cdef dc pz3 = -p13 * z1 - p23 * z2 + p34 * z4
    cdef dc pz4 = -p14 * z1 - p24 * z2 - p34 * z3
    cdef dc pw1 = p12 * w2 + p13 * w3 + p14 * w4
    cdef dc pw2 = -p12 * w1 + p23 * w3 + p24 * w4
    cdef dc pw3 = -p13 * w1 - p23 * w2 + p34 * w4
    cdef dc pw4 = -p14 * w1 - p24 * w2 - p34 * w3
    cdef double omega = 4.0 * (cabs2(pz1) + cabs2(pz2) + cabs2(pz3) + cabs2(pz4)
                               + cabs2(pw1) + cabs2(pw2) + cabs2(pw3) + cabs2(pw4))
    cdef double lambda_sum = n * (tau_a_dm + tau_b_dm + tau_c_dm)
    cdef double sigma_signed = omega - n * tau_abc

    cdef dc tr0 = c000 + c011
    cdef dc tr1 = c100 + c111
    cdef dc tr01 = c000 * c100 + c001 * c110 + c010 * c101 + c011 * c111
    cdef dc det0 = c000 * c011 - c001 * c010
    cdef dc det1 = c100 * c111 - c101 * c110
    cdef dc mixed = tr0 * tr1 - tr01
    cdef dc d_schlafli = mixed * mixed - 4.0 * det0 * det1

    cdef dc d_poly = (c000 * c000 * c111 * c111 + c001 * c001 * c110 * c110
                      + c010 * c010 * c101 * c101 + c011 * c011 * c100 * c100
                      - 2.0 * (c000 * c001 * c110 * c111
                               + c000 * c010 * c101 * c111
                               + c000 * c011 * c100 * c111
                               + c001 * c010 * c101 * c110
                               + c001 * c011 * c110 * c100
                               + c010 * c011 * c101 * c100)
                      + 4.0 * (c000 * c011 * c101 * c110
                               + c001 * c010 * c100 * c111))

    row[0] = n
    row[1] = d_schlafli.real
    row[2] = d_schlafli.imag
    row[3] = d_poly.real
    row[4] = d_poly.imag
    row[5] = tau_abc
    row[6] = tau_a_tw
    row[7] = tau_b_tw
    row[8] = tau_c_tw
    row[9] = tau_a_dm
    row[10] = tau_b_dm
    row[11] = tau_c_dm
    row[12] = first3
    row[13] = plusc
    row[14] = minusc
    row[15] = flip_bc_dm
    row[16] = flip_ab_dm
    row[17] = flip_ac_dm
    row[18] = tau_ab
    row[19] = tau_ac
    row[20] = tau_bc
    row[21] = xi
    row[22] = omega
    row[23] = lambda_sum
    row[24] = fabs(sigma_signed)
    row[25] = sigma_signed
    row[26] = atan2(disc.imag, disc.real)
    row[27] = cmod(p12 * p34 - p13 * p24 + p23 * p14)
    row[28] = p_frob2
    row[29] = fabs(tau_a_dm - tau_abc - tau_ab - tau_ac)
    row[30] = fabs(xi - n * n * n - 0.375 * (omega - lambda_sum))
