# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled blade product kernels for the orthonormal basis.

Same contract as _blades_py; selected automatically by the package
__init__ when the extension is importable.
"""

import numpy as np

cimport numpy as cnp

from . import _tables

cnp.import_array()

cdef double[256] _SG
cdef double[256] _SW
cdef double[256] _SC
cdef Py_ssize_t[256] _TG


def _load_tables():
    sg = _tables.SIGN_GEO
    sw = _tables.SIGN_WEDGE
    sc = _tables.SIGN_CONTRACT
    tg = _tables.TARGET
    for a in range(16):
        for b in range(16):
            _SG[16 * a + b] = sg[a, b]
            _SW[16 * a + b] = sw[a, b]
            _SC[16 * a + b] = sc[a, b]
            _TG[16 * a + b] = tg[a, b]


_load_tables()


cdef inline void _product(const double* sign, const double[::1] a,
                          const double[::1] b, double[::1] out) noexcept nogil:
    cdef Py_ssize_t i, j, k
    cdef double av, s
    for i in range(16):
        av = a[i]
        if av == 0.0:
            continue
        k = 16 * i
        for j in range(16):
            s = sign[k + j]
            if s != 0.0:
                out[_TG[k + j]] += av * b[j] * s


def geometric_eta(const double[::1] a, const double[::1] b):
    out = np.zeros(16)
    cdef double[::1] o = out
    _product(_SG, a, b, o)
    return out


def wedge(const double[::1] a, const double[::1] b):
    out = np.zeros(16)
    cdef double[::1] o = out
    _product(_SW, a, b, o)
    return out


def contract_left_eta(const double[::1] a, const double[::1] b):
    out = np.zeros(16)
    cdef double[::1] o = out
    _product(_SC, a, b, o)
    return out


def geometric_eta_batch(const double[:, ::1] a, const double[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], r
    out = np.zeros((n, 16))
    cdef double[:, ::1] o = out
    for r in range(n):
        _product(_SG, a[r], b[r], o[r])
    return out


def wedge_batch(const double[:, ::1] a, const double[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], r
    out = np.zeros((n, 16))
    cdef double[:, ::1] o = out
    for r in range(n):
        _product(_SW, a[r], b[r], o[r])
    return out


def contract_left_eta_batch(const double[:, ::1] a, const double[:, ::1] b):
    cdef Py_ssize_t n = a.shape[0], r
    out = np.zeros((n, 16))
    cdef double[:, ::1] o = out
    for r in range(n):
        _product(_SC, a[r], b[r], o[r])
    return out
