"""Symbolic audit that the six-function order-2-symmetric frame system is
exactly closed (every d^2 identity holds and the flat structure equations are
satisfied by the shipped coefficient laws).

The integrator's correctness rests on these identities: they are what makes
the reconstruction path-independent in exact arithmetic.  The audit passes
sympy symbols through the same functions the RK4 stepper uses, so the shipped
laws themselves are pinned, not a transcription.
"""

import sympy as sp

from slag3.structure_laws import (
    z2_auxiliary,
    z2_scalar_rates,
    z2_coframe_rates,
    z2_connection,
    z2_second_form,
)

STATE = sp.symbols("r s t1 t2 t3 u1", real=True)


def _rates():
    G = z2_scalar_rates(STATE)
    T = z2_coframe_rates(STATE)
    return G, T


def _derive(f, G, j):
    """Directional derivative D_j f: differentiate through the scalar laws."""
    return sum(sp.diff(f, q) * G[m][j] for m, q in enumerate(STATE))


def _d_oneform(f, G, T):
    """Exterior derivative of f = f_i w_i as (w1^w2, w1^w3, w2^w3) coeffs."""
    F12 = _derive(f[1], G, 0) - _derive(f[0], G, 1) \
        + sum(f[k] * T[k][0] for k in range(3))
    F13 = _derive(f[2], G, 0) - _derive(f[0], G, 2) \
        + sum(f[k] * T[k][1] for k in range(3))
    F23 = _derive(f[2], G, 1) - _derive(f[1], G, 2) \
        + sum(f[k] * T[k][2] for k in range(3))
    return (F12, F13, F23)


def _d_twoform(F, G, T):
    """Exterior derivative of a 2-form, as the w1^w2^w3 coefficient."""
    F12, F13, F23 = F
    vol = _derive(F12, G, 2) - _derive(F13, G, 1) + _derive(F23, G, 0)
    vol += F12 * (-T[0][1] - T[1][2])
    vol += F13 * (T[0][0] - T[2][2])
    vol += F23 * (T[1][0] + T[2][1])
    return vol


def _wedge(f, g):
    """Wedge of two 1-forms as (w1^w2, w1^w3, w2^w3) coefficients."""
    return (f[0] * g[1] - f[1] * g[0],
            f[0] * g[2] - f[2] * g[0],
            f[1] * g[2] - f[2] * g[1])


def _is_zero(expr):
    return sp.expand(expr) == 0


def test_scalar_laws_close():
    G, T = _rates()
    for m, name in enumerate(("r", "s", "t1", "t2", "t3", "u1")):
        ddq = _d_oneform(G[m], G, T)
        for comp, coeff in zip(("w1^w2", "w1^w3", "w2^w3"), ddq):
            assert _is_zero(coeff), f"d(d{name}) has nonzero {comp} part"


def test_coframe_laws_close():
    G, T = _rates()
    for k in range(3):
        vol = _d_twoform(T[k], G, T)
        assert _is_zero(vol), f"d(dw{k + 1}) != 0"


def test_flat_structure_equations():
    """d(alpha) = -alpha^alpha + beta^beta and d(beta) = -beta^alpha - alpha^beta."""
    G, T = _rates()
    A = z2_connection(STATE)
    B = z2_second_form(STATE)
    for i in range(3):
        for j in range(3):
            dA = _d_oneform(A[i][j], G, T)
            rhsA = [0, 0, 0]
            for k in range(3):
                for c, val in enumerate(_wedge(A[i][k], A[k][j])):
                    rhsA[c] -= val
                for c, val in enumerate(_wedge(B[i][k], B[k][j])):
                    rhsA[c] += val
            for c in range(3):
                assert _is_zero(dA[c] - rhsA[c]), f"alpha[{i}][{j}] comp {c}"

            dB = _d_oneform(B[i][j], G, T)
            rhsB = [0, 0, 0]
            for k in range(3):
                for c, val in enumerate(_wedge(B[i][k], A[k][j])):
                    rhsB[c] -= val
                for c, val in enumerate(_wedge(A[i][k], B[k][j])):
                    rhsB[c] -= val
            for c in range(3):
                assert _is_zero(dB[c] - rhsB[c]), f"beta[{i}][{j}] comp {c}"


def test_corrupted_law_fails_closure():
    """Negative control: perturbing one term in the du1 row breaks closure."""
    r, s, t1, t2, t3, u1 = STATE
    G = [list(row) for row in z2_scalar_rates(STATE)]
    T = z2_coframe_rates(STATE)
    # replace the -3(r t2 + s t3)(1+t1^2) term of du1's w3 row
    # by -3(r t2 + s t2)(1+t1^2)
    G[5][2] = u1 * (s * t2 + r * t3) \
        - 3 * (r * t2 + s * t2) * (1 + t1 ** 2)
    broken = False
    for m in range(6):
        ddq = _d_oneform(tuple(G[m]), G, T)
        if any(not _is_zero(c) for c in ddq):
            broken = True
            break
    assert broken, "corrupted law unexpectedly still closes"


def test_auxiliary_values_at_rest_state():
    """At t_i = u1 = 0 the eliminated auxiliaries reduce to u2 = -r, u3 = s."""
    r, s = STATE[0], STATE[1]
    u2, u3 = z2_auxiliary(STATE)
    rest = {STATE[2]: 0, STATE[3]: 0, STATE[4]: 0, STATE[5]: 0}
    assert sp.simplify(u2.subs(rest) + r) == 0
    assert sp.simplify(u3.subs(rest) - s) == 0
