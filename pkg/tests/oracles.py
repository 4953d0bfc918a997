"""Independent reference computations used only by the tests.

Nothing here imports the package's algebra.  Jordan and FTS quantities are
evaluated from closed forms specific to the three-slot diagonal algebra with
sympy, the game from explicit Kronecker products, flattening ranks from
numpy's SVD.
"""

from __future__ import annotations

import itertools
from functools import reduce

import numpy as np
import sympy as sp


def to_sympy(v):
    """Bridge a library scalar into sympy without using its arithmetic."""
    if hasattr(v, "re") and hasattr(v, "im"):
        return sp.Rational(int(v.re.numerator), int(v.re.denominator)) + sp.I * sp.Rational(
            int(v.im.numerator), int(v.im.denominator))
    if isinstance(v, complex):
        return sp.nsimplify(v.real) + sp.I * sp.nsimplify(v.imag)
    return sp.nsimplify(v)


# -- Jordan algebra C + C + C -------------------------------------------------

def j_norm(A):
    return sp.expand(A[0] * A[1] * A[2])


def j_sharp(A):
    return (sp.expand(A[1] * A[2]), sp.expand(A[0] * A[2]), sp.expand(A[0] * A[1]))


def j_trace(A, B):
    return sp.expand(sum(a * b for a, b in zip(A, B)))


def j_trilinear(X, Y, Z):
    """Mixed third derivative of N(sX + tY + uZ), over 6."""
    s, t, u = sp.symbols("s t u")
    w = [s * x + t * y + u * z for x, y, z in zip(X, Y, Z)]
    return sp.expand(sp.diff(j_norm(w), s, t, u) / 6)


# -- Freudenthal triple system --------------------------------------------

def fts_form(x, y):
    a, b, A, B = x
    c, d, C, D = y
    return sp.expand(a * d - b * c + j_trace(A, D) - j_trace(B, C))


def fts_q(x):
    a, b, A, B = x
    return sp.expand(-2 * (a * b - j_trace(A, B)) ** 2
                     - 8 * (a * j_norm(A) + b * j_norm(B) - j_trace(j_sharp(A), j_sharp(B))))


def _comb(coeffs, elems):
    a = sum(c * e[0] for c, e in zip(coeffs, elems))
    b = sum(c * e[1] for c, e in zip(coeffs, elems))
    A = tuple(sum(c * e[2][i] for c, e in zip(coeffs, elems)) for i in range(3))
    B = tuple(sum(c * e[3][i] for c, e in zip(coeffs, elems)) for i in range(3))
    return (a, b, A, B)


def fts_q4(x, y, w, z):
    """Full linearization: mixed fourth derivative over 4!."""
    s = sp.symbols("s0:4")
    return sp.expand(sp.diff(fts_q(_comb(s, (x, y, w, z))), *s) / 24)


def _unit(i):
    v = [0] * 8
    v[i] = 1
    return (v[0], v[1], tuple(v[2:5]), tuple(v[5:8]))


def fts_cubic_map(x):
    """``T(x, x, x)`` from ``{T, e_j} = D_{e_j} q(x) / 4`` and a Gram solve."""
    eps = sp.Symbol("eps")
    units = [_unit(i) for i in range(8)]
    gram = sp.Matrix(8, 8, lambda i, j: fts_form(units[i], units[j]))
    rhs = sp.Matrix([sp.diff(fts_q(_comb((1, eps), (x, e))), eps).subs(eps, 0) / 4
                     for e in units])
    return [sp.nsimplify(sp.expand(v)) for v in gram.T.LUsolve(rhs)]


def fts_triple(x, y, w):
    """Polarize the cubic map: ``6 T(x,y,w)`` by inclusion-exclusion."""
    parts = (x, y, w)
    total = [0] * 8
    for r in (1, 2, 3):
        for subset in itertools.combinations(range(3), r):
            sign = (-1) ** (3 - r)
            p = fts_cubic_map(_comb([1] * r, [parts[i] for i in subset]))
            total = [t + sign * v for t, v in zip(total, p)]
    return [sp.nsimplify(sp.expand(v / 6)) for v in total]


def fts_tuple(x):
    """(alpha, beta, A, B) of a library FtsElement as sympy numbers."""
    return (to_sympy(x.alpha), to_sympy(x.beta),
            tuple(to_sympy(v) for v in x.A.c), tuple(to_sympy(v) for v in x.B.c))


def flat(x):
    a, b, A, B = x
    return [a, b, *A, *B]


# -- qubit states --------------------------------------------------------

def hyperdet(a):
    """Cayley hyperdeterminant from the discriminant of det(a_0.. + t a_1..)."""
    t = sp.symbols("t")
    m = sp.Matrix([[a["000"] + t * a["100"], a["001"] + t * a["101"]],
                   [a["010"] + t * a["110"], a["011"] + t * a["111"]]])
    poly = sp.Poly(sp.expand(m.det()), t)
    c2, c1, c0 = [poly.coeff_monomial(t ** k) for k in (2, 1, 0)]
    return sp.expand(c1 ** 2 - 4 * c2 * c0)


def kron_apply(vector, matrices):
    op = reduce(np.kron, [np.asarray(m, dtype=complex) for m in matrices])
    return op @ np.asarray(vector, dtype=complex)


def flattening_ranks(vector, n=3, tol=1e-9):
    psi = np.asarray(vector, dtype=complex).reshape((2,) * n)
    out = []
    for q in range(n):
        m = np.moveaxis(psi, q, 0).reshape(2, -1)
        out.append(int(np.linalg.matrix_rank(m, tol=tol * max(1.0, np.abs(m).max()))))
    return tuple(out)


# -- the parity game -----------------------------------------------------------

QUESTIONS = ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0))


def game_win(qs, ans):
    return (ans[0] ^ ans[1] ^ ans[2]) == (qs[0] | qs[1] | qs[2])


def projector(theta, phi, outcome):
    if outcome == 0:
        v = np.array([np.cos(theta), np.exp(1j * phi) * np.sin(theta)])
    else:
        v = np.array([-np.exp(-1j * phi) * np.sin(theta), np.cos(theta)])
    return np.outer(v, v.conj())


def game_value(vector, angles):
    """``angles[p][q] = (theta, phi)``; Born rule with explicit projectors."""
    psi = np.asarray(vector, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    total = 0.0
    for qs in QUESTIONS:
        for ans in itertools.product((0, 1), repeat=3):
            if not game_win(qs, ans):
                continue
            op = reduce(np.kron, [projector(*angles[p][qs[p]], ans[p]) for p in range(3)])
            total += float(np.real(psi.conj() @ op @ psi))
    return total / 4
