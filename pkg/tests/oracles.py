"""Independent reference computations in sympy, used only by tests."""

import sympy as sp


def structure_tensor(g):
    n = g.dim
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (i, j), coeffs in g.sc.items():
        for k, v in coeffs.items():
            c[i][j][k] = sp.Rational(v.numerator, v.denominator)
            c[j][i][k] = -sp.Rational(v.numerator, v.denominator)
    return c


def sym_bracket(c, x, y):
    n = len(c)
    return sp.Matrix([sum(c[i][j][k] * x[i] * y[j] for i in range(n) for j in range(n)) for k in range(n)])


def derivation_dim(g, q=None):
    """Dimension of the (q-skew) derivation space by solving the symbolic system."""
    n = g.dim
    c = structure_tensor(g)
    d = sp.Matrix(n, n, lambda a, b: sp.Symbol(f"d_{a}_{b}"))
    eqs = []
    e = [sp.eye(n)[:, i] for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = d * sym_bracket(c, e[i], e[j])
            rhs = sym_bracket(c, d * e[i], e[j]) + sym_bracket(c, e[i], d * e[j])
            eqs.extend(lhs - rhs)
    if q is not None:
        qm = sp.Matrix(q.rows, q.cols, [sp.Rational(x.numerator, x.denominator) for x in q.entries])
        eqs.extend(d.T * qm + qm * d)
    eqs = [eq for eq in eqs if eq != 0]
    if not eqs:
        return n * n
    a, _ = sp.linear_eq_to_matrix(eqs, list(d))
    return n * n - a.rank()


def ad_is_nilpotent(g, x):
    c = structure_tensor(g)
    n = g.dim
    xs = [sp.Rational(v.numerator, v.denominator) for v in x]
    m = sp.Matrix(n, n, lambda k, j: sum(c[i][j][k] * xs[i] for i in range(n)))
    return (m ** n).is_zero_matrix if n else True
