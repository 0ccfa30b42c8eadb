import random
from fractions import Fraction
from itertools import combinations

from exactip import IntMatrix, RationalLP, Status, rank, rational_simplex


def test_slack_form_half():
    # max x subject to 2x + s = 3
    res = rational_simplex(RationalLP(((2, 1),), (3,), (1, 0)))
    assert res.status is Status.OPTIMAL
    assert res.value == Fraction(3, 2)


def test_unit_simplex():
    res = rational_simplex(RationalLP(((1, 1),), (1,), (1, 1)))
    assert res.status is Status.OPTIMAL and res.value == 1


def test_unbounded_ray():
    res = rational_simplex(RationalLP(((1, -1),), (0,), (1, 0)))
    assert res.status is Status.UNBOUNDED
    ray = res.ray
    assert ray is not None and any(v > 0 for v in ray)
    assert ray[0] - ray[1] == 0


def test_infeasible():
    res = rational_simplex(RationalLP(((1, 1),), (-1,), (0, 0)))
    assert res.status is Status.INFEASIBLE


def test_redundant_rows():
    res = rational_simplex(RationalLP(((1, 1), (2, 2)), (1, 2), (1, 0)))
    assert res.status is Status.OPTIMAL and res.value == 1


def best_vertex(rows, rhs, obj):
    """Oracle: enumerate all basic solutions, keep feasible ones, maximize."""
    m = len(rows)
    n = len(obj)
    best = None
    for cols in combinations(range(n), m):
        block = [[Fraction(rows[i][j]) for j in cols] for i in range(m)]
        aug = [row[:] + [Fraction(rhs[i])] for i, row in enumerate(block)]
        sol = _gauss(aug, m)
        if sol is None:
            continue
        if any(v < 0 for v in sol):
            continue
        x = [Fraction(0)] * n
        for j, v in zip(cols, sol):
            x[j] = v
        value = sum(Fraction(c) * v for c, v in zip(obj, x))
        if best is None or value > best:
            best = value
    return best


def _gauss(aug, n):
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c]
        aug[c] = [v / inv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


def test_matches_basis_enumeration():
    rng = random.Random(55)
    done = 0
    while done < 150:
        m = rng.randint(1, 3)
        n = rng.randint(m, 6)
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(m)]
        if rank(IntMatrix(rows)) < m:
            continue
        rhs = [rng.randint(-4, 4) for _ in range(m)]
        obj = [rng.randint(-3, 3) for _ in range(n)]
        res = rational_simplex(RationalLP(tuple(map(tuple, rows)), tuple(rhs), tuple(obj)))
        vertex = best_vertex(rows, rhs, obj)
        if res.status is Status.OPTIMAL:
            assert vertex is not None and res.value == vertex, (rows, rhs, obj, res, vertex)
            assert all(v >= 0 for v in res.point)
            for i in range(m):
                assert sum(Fraction(rows[i][j]) * res.point[j] for j in range(n)) == rhs[i]
        elif res.status is Status.INFEASIBLE:
            assert vertex is None
        else:
            ray = res.ray
            assert all(v >= 0 for v in ray) and any(v > 0 for v in ray)
            for i in range(m):
                assert sum(Fraction(rows[i][j]) * ray[j] for j in range(n)) == 0
            assert sum(Fraction(c) * v for c, v in zip(obj, ray)) > 0
        done += 1
