import random

import pytest

import exactip.dp as dp_module
from exactip import (
    IntMatrix,
    StandardIP,
    Status,
    brute_standard,
    build_rhs_table,
    dp_solve,
    papadimitriou_bound,
    small_component_bound,
)
from util import random_standard


class TestBounds:
    @pytest.mark.parametrize(
        "n,m,delta_b,expected", [(2, 1, 2, 6), (1, 1, 1, 2), (3, 2, 3, 144)]
    )
    def test_papadimitriou(self, n, m, delta_b, expected):
        a = IntMatrix([[delta_b] + [1] * (n - 1)] * m)
        ip = StandardIP(a, (0,) * m, (0,) * n)
        assert ip.max_entry_with_rhs == delta_b
        assert papadimitriou_bound(ip) == expected

    @pytest.mark.parametrize("m,delta,expected", [(1, 1, 3), (2, 2, 64), (1, 3, 9)])
    def test_small_component(self, m, delta, expected):
        assert small_component_bound(m, delta) == expected

    def test_small_component_domain(self):
        with pytest.raises(ValueError):
            small_component_bound(0, 1)
        with pytest.raises(ValueError):
            small_component_bound(1, 0)


class TestRhsValueTable:
    def test_single_unit_column(self):
        t = build_rhs_table(IntMatrix([[1]]), (1,), 3, 3)
        assert {v[0]: val for v, val in t.items()} == {0: 0, 1: 1, 2: 2, 3: 3}

    def test_two_columns_signed(self):
        t = build_rhs_table(IntMatrix([[1, -1]]), (0, 0), 1, 2)
        assert sorted(v[0] for v, _ in t.items()) == [-1, 0, 1]

    def test_even_column(self):
        t = build_rhs_table(IntMatrix([[2]]), (1,), 2, 4)
        assert {v[0]: val for v, val in t.items()} == {0: 0, 2: 1, 4: 2}
        assert t.value((3,)) is None
        assert t.assignment((4,)) == (2,)

    def test_assignments_reverify(self):
        rng = random.Random(21)
        for _ in range(120):
            n = rng.randint(1, 4)
            m = rng.randint(1, 2)
            a = IntMatrix(
                [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
            )
            c = tuple(rng.randint(-3, 3) for _ in range(n))
            bound = rng.randint(0, 4)
            radius = max(1, a.max_abs()) * n * bound
            t = build_rhs_table(a, c, bound, radius)
            for v, val in t.items():
                x = t.assignment(v)
                assert all(0 <= xi <= bound for xi in x)
                assert a.mat_vec(x) == v
                assert sum(ci * xi for ci, xi in zip(c, x)) == val

    def test_dict_and_dense_backends_agree(self, monkeypatch):
        rng = random.Random(22)
        for _ in range(40):
            n = rng.randint(1, 4)
            m = rng.randint(1, 2)
            a = IntMatrix(
                [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
            )
            c = tuple(rng.randint(-3, 3) for _ in range(n))
            bound = rng.randint(0, 5)
            radius = max(1, a.max_abs()) * n * bound
            dense = build_rhs_table(a, c, bound, radius)
            monkeypatch.setattr(dp_module, "_DENSE_CELL_LIMIT", 0)
            sparse = build_rhs_table(a, c, bound, radius)
            monkeypatch.undo()
            assert dense._dense or radius == 0 or (2 * radius + 1) ** m > 6_000_000
            assert not sparse._dense
            assert dict(dense.items()) == dict(sparse.items())
            for v, _ in dense.items():
                assert dense.assignment(v) == sparse.assignment(v)


class TestDpSolve:
    def test_simple(self):
        s = dp_solve(StandardIP(IntMatrix([[1, 1]]), (2,), (1, 1)), 2)
        assert s.status is Status.OPTIMAL and s.objective == 2

    def test_weighted(self):
        s = dp_solve(StandardIP(IntMatrix([[1, 2]]), (4,), (2, 3)), 4)
        assert s.status is Status.OPTIMAL and s.x == (4, 0) and s.objective == 8

    def test_infeasible_negative_rhs(self):
        s = dp_solve(StandardIP(IntMatrix([[1, 1]]), (-1,), (1, 0)), 6)
        assert s.status is Status.INFEASIBLE

    def test_var_bound_zero(self):
        s = dp_solve(StandardIP(IntMatrix([[1]]), (0,), (5,)), 0)
        assert s.status is Status.OPTIMAL and s.x == (0,) and s.objective == 0

    def test_monotone_in_var_bound(self):
        rng = random.Random(31)
        for _ in range(60):
            ip = random_standard(rng, 1, rng.randint(1, 4), 2, 4)
            prev = None
            for bound in range(0, 6):
                s = dp_solve(ip, bound)
                if s.status is Status.OPTIMAL:
                    if prev is not None:
                        assert s.objective >= prev
                    prev = s.objective

    def test_matches_brute_force_at_papadimitriou_bound(self):
        rng = random.Random(32)
        done = 0
        while done < 300:
            m = rng.choice([1, 1, 2])
            n = rng.randint(1, 5 if m == 1 else 3)
            ip = random_standard(rng, m, n, rng.randint(1, 2), 2)
            u = papadimitriou_bound(ip)
            s = dp_solve(ip, u)
            br = brute_standard(ip, u)
            assert s.status == br.status, (ip, s, br)
            if s.status is Status.OPTIMAL:
                assert s.objective == br.objective, (ip, s, br)
                assert ip.a.mat_vec(s.x) == ip.b
            done += 1

    def test_table_restriction_agrees_with_dp_solve(self):
        rng = random.Random(33)
        for _ in range(80):
            m = rng.randint(1, 2)
            n = rng.randint(1, 4)
            a = IntMatrix(
                [[rng.randint(-2, 2) for _ in range(n)] for _ in range(m)]
            )
            c = tuple(rng.randint(-3, 3) for _ in range(n))
            bound = rng.randint(0, 4)
            delta = max(1, a.max_abs())
            radius = delta * n * bound
            t = build_rhs_table(a, c, bound, radius)
            b = tuple(rng.randint(-radius, radius) for _ in range(m)) if radius else (0,) * m
            s = dp_solve(StandardIP(a, b, c), bound)
            if s.status is Status.OPTIMAL:
                assert t.value(b) == s.objective
                assert t.assignment(b) == s.x
            else:
                assert t.value(b) is None

    def test_lexicographic_tie_break(self):
        # two optimal assignments (0,2) and (2,0); the smaller one wins
        s = dp_solve(StandardIP(IntMatrix([[1, 1]]), (2,), (3, 3)), 2)
        assert s.x == (0, 2)
