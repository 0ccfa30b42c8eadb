"""Shared helpers for the test suite."""

import random

from exactip import IntMatrix, StandardIP


def random_standard(rng, m, n, delta, rhs_bound, cost_bound=4, positive_row=False):
    """Random standard-form instance; entries by magnitude caps, rows nonzero."""
    rows = []
    for i in range(m):
        if positive_row and i == 0:
            row = [rng.randint(1, delta) for _ in range(n)]
        else:
            row = [0] * n
            while all(v == 0 for v in row):
                row = [rng.randint(-delta, delta) for _ in range(n)]
        rows.append(row)
    b = []
    for i in range(m):
        if positive_row and i == 0:
            b.append(rng.randint(0, rhs_bound))
        else:
            b.append(rng.randint(-rhs_bound, rhs_bound))
    c = tuple(rng.randint(-cost_bound, cost_bound) for _ in range(n))
    return StandardIP(IntMatrix(rows), tuple(b), c)


def random_int_matrix(rng, rows, cols, bound):
    return IntMatrix(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    )


def random_nonsingular(rng, n, bound):
    from exactip import det

    while True:
        m = random_int_matrix(rng, n, n, bound)
        if det(m) != 0:
            return m


def resubstitutes_standard(ip, x):
    return ip.a.mat_vec(x) == tuple(ip.b)


def resubstitutes_inequality(ip, x):
    return all(l <= bi for l, bi in zip(ip.a.mat_vec(x), ip.b))
