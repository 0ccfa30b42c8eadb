import random
from fractions import Fraction

import pytest

from exactip import (
    IntMatrix,
    MixedIP,
    NodeLimitExceeded,
    Status,
    branch_and_bound,
    brute_mixed,
    solve_mixed,
    solve_standard,
)
from util import random_standard


def random_mixed(rng, m, n, l, delta, rhs_bound, cost_bound=3):
    rows = []
    for _ in range(m):
        row = [0] * n
        while all(v == 0 for v in row):
            row = [rng.randint(-delta, delta) for _ in range(n)]
        rows.append(row)
    a = IntMatrix(rows)
    bc = (
        IntMatrix([[rng.randint(-delta, delta) for _ in range(l)] for _ in range(m)])
        if l
        else None
    )
    b = tuple(rng.randint(-rhs_bound, rhs_bound) for _ in range(m))
    c = tuple(rng.randint(-cost_bound, cost_bound) for _ in range(n))
    d = tuple(rng.randint(-cost_bound, cost_bound) for _ in range(l))
    return MixedIP(a, bc, b, c, d)


def exact_resubstitution(mip, x, y):
    for i in range(mip.m):
        lhs = Fraction(sum(mip.a[i, j] * x[j] for j in range(mip.n)))
        if mip.l:
            lhs += sum(Fraction(mip.b_cols[i, j]) * y[j] for j in range(mip.l))
        if lhs != mip.b[i]:
            return False
    return True


class TestBranchAndBound:
    def test_tie_breaks_to_smallest_integer_part(self):
        res = branch_and_bound(IntMatrix([[2]]), IntMatrix([[2]]), (3,), (1,), (1,))
        assert res.status is Status.OPTIMAL
        assert res.value == Fraction(3, 2)
        assert res.x == (0,) and res.y == (Fraction(3, 2),)

    def test_pure_integer_subproblem(self):
        res = branch_and_bound(IntMatrix([[2], [4]]), None, (6, 12), (1,), ())
        assert res.status is Status.OPTIMAL and res.x == (3,)

    def test_infeasible(self):
        res = branch_and_bound(IntMatrix([[1]]), IntMatrix([[1]]), (-1,), (1,), (0,))
        assert res.status is Status.INFEASIBLE

    def test_node_limit_hard_error(self):
        with pytest.raises(NodeLimitExceeded):
            branch_and_bound(
                IntMatrix([[2]]), IntMatrix([[2]]), (3,), (1,), (1,), node_limit=0
            )

    def test_continuous_only(self):
        res = branch_and_bound(None, IntMatrix([[2]]), (3,), (), (1,))
        assert res.status is Status.OPTIMAL and res.value == Fraction(3, 2)


class TestSolveMixed:
    def test_prefers_continuous_payoff(self):
        mip = MixedIP(IntMatrix([[1]]), IntMatrix([[1]]), (5,), (1,), (2,))
        s = solve_mixed(mip)
        assert s.status is Status.OPTIMAL
        assert s.objective == 10 and s.x == (0,) and s.y == (Fraction(5),)

    def test_pure_degeneration_matches_standard(self):
        rng = random.Random(66)
        for _ in range(60):
            ip = random_standard(rng, rng.randint(1, 2), rng.randint(1, 4), 2, 4)
            mip = MixedIP(ip.a, None, ip.b, ip.c, ())
            sm = solve_mixed(mip)
            ss = solve_standard(ip)
            assert sm.status == ss.status, (ip, sm, ss)
            if ss.status is Status.OPTIMAL:
                assert sm.objective == ss.objective

    def test_unreachable_rhs(self):
        mip = MixedIP(IntMatrix([[2, 2]]), None, (3,), (1, 1), ())
        assert solve_mixed(mip).status is Status.INFEASIBLE

    def test_unbounded_continuous_pair(self):
        mip = MixedIP(IntMatrix([[1]]), IntMatrix([[1, -1]]), (5,), (0,), (0, 1))
        s = solve_mixed(mip)
        assert s.status is Status.UNBOUNDED
        assert s.certificate is not None

    def test_matches_brute_force(self):
        rng = random.Random(67)
        counts = {"optimal": 0, "infeasible": 0, "unbounded": 0}
        for _ in range(120):
            m = rng.choice([1, 1, 2])
            n = rng.randint(1, 4)
            l = rng.randint(0, 3)
            mip = random_mixed(rng, m, n, l, rng.randint(1, 2), 3)
            s = solve_mixed(mip)
            if s.status is Status.OPTIMAL:
                box = max(2, max(s.x, default=0) + 1)
                br = brute_mixed(mip, box)
                assert br.status is Status.OPTIMAL
                assert br.objective == s.objective, (mip, s.objective, br.objective)
                assert exact_resubstitution(mip, s.x, s.y)
            elif s.status is Status.INFEASIBLE:
                assert brute_mixed(mip, 4).status is Status.INFEASIBLE
            else:
                cert = s.certificate
                cols = list(mip.a.columns()) + (
                    list(mip.b_cols.columns()) if mip.l else []
                )
                lhs = [
                    sum(col[i] * v for col, v in zip(cols, cert))
                    for i in range(mip.m)
                ]
                assert all(v == 0 for v in lhs)
                assert all(v >= 0 for v in cert) and any(v > 0 for v in cert)
                gain = sum(
                    cv * v
                    for cv, v in zip(tuple(mip.c) + tuple(mip.d), cert)
                )
                assert gain > 0
            counts[s.status.value] += 1
        assert all(counts.values()), counts

    def test_rational_objective_exact(self):
        # optimum is a genuine non-integer rational
        mip = MixedIP(IntMatrix([[2]]), IntMatrix([[4]]), (5,), (1,), (3,))
        s = solve_mixed(mip)
        assert s.status is Status.OPTIMAL
        # best: x = 2 leaves 4y = 1, giving 2 + 3/4; x = 0 gives 15/4
        assert s.objective == max(Fraction(2) + Fraction(3, 4), Fraction(15, 4))
