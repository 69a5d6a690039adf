"""Blade index conventions and precomputed sign tables.

A multivector on a 4-dimensional chart is a length-16 array of float64
components. Component index I is a bitmask: bit mu is set iff the basis
1-form dx^mu appears in the blade. Grade = popcount(I); blades of equal
grade are ordered by ascending bitmask.

All tables below refer to the orthonormal signature (+,-,-,-). Products
with a general metric are obtained by congruence transform in mv.py, so
the kernels only ever see these fixed tables.
"""

from __future__ import annotations

import numpy as np

DIM = 4
N_BLADES = 16

# signature (+,-,-,-) on 1-forms
ETA_DIAG = (1.0, -1.0, -1.0, -1.0)

GRADE = tuple(bin(i).count("1") for i in range(N_BLADES))

# blades of each grade in ascending bitmask order
BLADES_BY_GRADE = tuple(
    tuple(i for i in range(N_BLADES) if GRADE[i] == g) for g in range(DIM + 1)
)

# sign picked up by reversing a grade-p blade: (-1)^(p(p-1)/2)
REVERSION_SIGN = np.array(
    [(-1.0) ** (GRADE[i] * (GRADE[i] - 1) // 2) for i in range(N_BLADES)]
)

# grade involution, needed only rarely
INVOLUTION_SIGN = np.array([(-1.0) ** GRADE[i] for i in range(N_BLADES)])


def bits_of(mask: int) -> tuple[int, ...]:
    return tuple(mu for mu in range(DIM) if mask & (1 << mu))


def reorder_sign(a: int, b: int) -> int:
    """Permutation sign for merging blade b after blade a into sorted order."""
    swaps = 0
    for mu in bits_of(b):
        swaps += bin(a >> (mu + 1)).count("1")
    return -1 if swaps & 1 else 1


def _build_tables():
    target = np.zeros((N_BLADES, N_BLADES), dtype=np.intp)
    sign_geo = np.zeros((N_BLADES, N_BLADES))
    sign_wedge = np.zeros((N_BLADES, N_BLADES))
    sign_contract = np.zeros((N_BLADES, N_BLADES))
    for a in range(N_BLADES):
        for b in range(N_BLADES):
            target[a, b] = a ^ b
            s = float(reorder_sign(a, b))
            for mu in bits_of(a & b):
                s *= ETA_DIAG[mu]
            sign_geo[a, b] = s
            sign_wedge[a, b] = 0.0 if (a & b) else s
            # left contraction keeps only the a-inside-b part of the product
            sign_contract[a, b] = s if (a & ~b) == 0 else 0.0
    return target, sign_geo, sign_wedge, sign_contract


TARGET, SIGN_GEO, SIGN_WEDGE, SIGN_CONTRACT = _build_tables()


def _structure(sign_table: np.ndarray) -> np.ndarray:
    """(16, 256) matrix mapping the flattened outer product a_A b_B to components."""
    c = np.zeros((N_BLADES, N_BLADES, N_BLADES))
    for a in range(N_BLADES):
        for b in range(N_BLADES):
            c[TARGET[a, b], a, b] = sign_table[a, b]
    return c.reshape(N_BLADES, N_BLADES * N_BLADES)


FLAT_GEO = _structure(SIGN_GEO)
FLAT_WEDGE = _structure(SIGN_WEDGE)
FLAT_CONTRACT = _structure(SIGN_CONTRACT)

# index helpers for the outermorphism (minor determinant) matrix
_PAIRS = ((0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3))
_TRIPLES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
MASK1 = np.array([1, 2, 4, 8], dtype=np.intp)
MASK2 = np.array([3, 5, 6, 9, 10, 12], dtype=np.intp)
MASK3 = np.array([7, 11, 13, 14], dtype=np.intp)

_P0 = np.array([p[0] for p in _PAIRS], dtype=np.intp)
_P1 = np.array([p[1] for p in _PAIRS], dtype=np.intp)
_T0 = np.array([t[0] for t in _TRIPLES], dtype=np.intp)
_T1 = np.array([t[1] for t in _TRIPLES], dtype=np.intp)
_T2 = np.array([t[2] for t in _TRIPLES], dtype=np.intp)


def exterior_rep(s: np.ndarray) -> np.ndarray:
    """Outermorphism matrix of a 4x4 linear map on 1-form components.

    Entry [K, L] is the minor det(s[rows(K), cols(L)]) for same-grade
    blades K, L; off-grade blocks vanish. The grade-1 block is s itself,
    the grade-4 block is det(s). Used for basis changes, pullbacks and
    extensor actions on full multivectors.
    """
    r = np.zeros((N_BLADES, N_BLADES))
    r[0, 0] = 1.0
    r[np.ix_(MASK1, MASK1)] = s

    a = s[_P0[:, None], _P0[None, :]]
    b = s[_P0[:, None], _P1[None, :]]
    c = s[_P1[:, None], _P0[None, :]]
    d = s[_P1[:, None], _P1[None, :]]
    r[np.ix_(MASK2, MASK2)] = a * d - b * c

    # 3x3 minors via cofactor expansion along the first row
    s00 = s[_T0[:, None], _T0[None, :]]
    s01 = s[_T0[:, None], _T1[None, :]]
    s02 = s[_T0[:, None], _T2[None, :]]
    s10 = s[_T1[:, None], _T0[None, :]]
    s11 = s[_T1[:, None], _T1[None, :]]
    s12 = s[_T1[:, None], _T2[None, :]]
    s20 = s[_T2[:, None], _T0[None, :]]
    s21 = s[_T2[:, None], _T1[None, :]]
    s22 = s[_T2[:, None], _T2[None, :]]
    det3 = (
        s00 * (s11 * s22 - s12 * s21)
        - s01 * (s10 * s22 - s12 * s20)
        + s02 * (s10 * s21 - s11 * s20)
    )
    r[np.ix_(MASK3, MASK3)] = det3

    r[15, 15] = float(np.linalg.det(s))
    return r
