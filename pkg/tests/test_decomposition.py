import random

from exactip import (
    DecompositionWitness,
    IntMatrix,
    StandardIP,
    Status,
    assemble_witness,
    brute_standard,
    detect_unbounded,
    dp_solve,
    papadimitriou_bound,
    small_component_bound,
    solve_standard,
    verify_witness,
)
from util import random_standard, resubstitutes_standard


class TestDetectUnbounded:
    def test_opposite_signs(self):
        ip = StandardIP(IntMatrix([[1, -1]]), (0,), (1, 1))
        assert detect_unbounded(ip) == (1, 1)

    def test_trivial_kernel(self):
        ip = StandardIP(IntMatrix.identity(2), (0, 0), (9, 9))
        assert detect_unbounded(ip) is None

    def test_kernel_never_nonnegative(self):
        ip = StandardIP(IntMatrix([[1, 1]]), (0,), (1, 1))
        assert detect_unbounded(ip) is None

    def test_zero_column(self):
        ip = StandardIP(IntMatrix([[1, 0]]), (3,), (0, 2))
        assert detect_unbounded(ip) == (0, 1)

    def test_certificate_properties_random(self):
        rng = random.Random(41)
        for _ in range(200):
            ip = random_standard(rng, rng.randint(1, 2), rng.randint(1, 5), 2, 4)
            d = detect_unbounded(ip)
            if d is not None:
                assert all(v >= 0 for v in d) and any(v > 0 for v in d)
                assert ip.a.mat_vec(d) == (0,) * ip.m
                assert sum(ci * vi for ci, vi in zip(ip.c, d)) > 0


class TestSolveStandard:
    def test_large_rhs_is_cheap(self):
        ip = StandardIP(IntMatrix([[1, 2]]), (1000,), (1, 0))
        s = solve_standard(ip)
        assert s.status is Status.OPTIMAL
        assert s.x == (1000, 0) and s.objective == 1000

    def test_gcd_infeasible(self):
        ip = StandardIP(IntMatrix([[2, 2]]), (3,), (1, 1))
        assert solve_standard(ip).status is Status.INFEASIBLE

    def test_plain_optimum(self):
        ip = StandardIP(IntMatrix([[1, 1]]), (5,), (0, 1))
        s = solve_standard(ip)
        assert s.status is Status.OPTIMAL and s.objective == 5 and s.x == (0, 5)

    def test_unbounded_with_certificate(self):
        ip = StandardIP(IntMatrix([[1, -1]]), (0,), (1, 1))
        s = solve_standard(ip)
        assert s.status is Status.UNBOUNDED
        assert s.certificate == (1, 1)

    def test_infeasible_beats_unbounded(self):
        # an improving ray exists, but there is no feasible point at all
        ip = StandardIP(IntMatrix([[1, -1], [1, -1]]), (1, 2), (1, 1))
        assert solve_standard(ip).status is Status.INFEASIBLE

    def test_trivial_rows_dropped(self):
        ip = StandardIP(IntMatrix([[0, 0], [1, 1]]), (0, 3), (1, 0))
        s = solve_standard(ip)
        assert s.status is Status.OPTIMAL and s.objective == 3

    def test_zero_row_nonzero_rhs(self):
        ip = StandardIP(IntMatrix([[0, 0]]), (1,), (1, 0))
        assert solve_standard(ip).status is Status.INFEASIBLE

    def test_all_rows_trivial(self):
        ip = StandardIP(IntMatrix([[0, 0]]), (0,), (-1, -2))
        s = solve_standard(ip)
        assert s.status is Status.OPTIMAL and s.x == (0, 0) and s.objective == 0
        ip = StandardIP(IntMatrix([[0, 0]]), (0,), (0, 2))
        s = solve_standard(ip)
        assert s.status is Status.UNBOUNDED and s.certificate == (0, 1)

    def test_deterministic(self):
        rng = random.Random(43)
        for _ in range(40):
            ip = random_standard(rng, rng.randint(1, 2), rng.randint(1, 5), 2, 5)
            first = solve_standard(ip)
            second = solve_standard(ip)
            assert first == second

    def test_oracle_equivalence_random(self):
        rng = random.Random(44)
        counts = {"optimal": 0, "infeasible": 0, "unbounded": 0}
        for _ in range(150):
            m = rng.choice([1, 1, 2])
            n = rng.randint(1, 6 if m == 1 else 4)
            delta = rng.randint(1, 3 if m == 1 else 2)
            ip = random_standard(rng, m, n, delta, 8 if m == 1 else 3)
            s = solve_standard(ip)
            d = dp_solve(ip, papadimitriou_bound(ip))
            if s.status is Status.OPTIMAL:
                assert d.status is Status.OPTIMAL and d.objective == s.objective
                br = brute_standard(ip, max(1, max(s.x)))
                assert br.status is Status.OPTIMAL and br.objective == s.objective
                assert resubstitutes_standard(ip, s.x)
            elif s.status is Status.INFEASIBLE:
                assert d.status is Status.INFEASIBLE
            else:
                assert d.status is Status.OPTIMAL  # feasible, just unbounded
                cert = s.certificate
                assert ip.a.mat_vec(cert) == (0,) * ip.m
                assert all(v >= 0 for v in cert)
                assert sum(ci * vi for ci, vi in zip(ip.c, cert)) > 0
            counts[s.status.value] += 1
        assert all(counts.values()), counts

    def test_every_optimum_yields_valid_witness(self):
        rng = random.Random(45)
        for _ in range(80):
            ip = random_standard(rng, rng.randint(1, 2), rng.randint(1, 4), 2, 4)
            s, w = solve_standard(ip, with_witness=True)
            if s.status is Status.OPTIMAL:
                assert w is not None
                assert verify_witness(ip, w)
                assert assemble_witness(w, ip.n) == s.x


class TestVerifyWitness:
    def setup_method(self):
        self.ip = StandardIP(IntMatrix([[1, 2]]), (1000,), (1, 0))
        _, self.witness = solve_standard(self.ip, with_witness=True)

    def test_valid(self):
        assert verify_witness(self.ip, self.witness)

    def test_negative_large_part(self):
        bad = DecompositionWitness(
            self.witness.large_support,
            self.witness.b_small,
            self.witness.bounded_part,
            tuple(-v - 1 for v in self.witness.large_part),
        )
        assert not verify_witness(self.ip, bad)

    def test_dependent_support(self):
        ip = StandardIP(IntMatrix([[1, 2, 2]]), (4,), (1, 0, 0))
        bad = DecompositionWitness((1, 2), (0,), (0,), (1, 1))
        assert not verify_witness(ip, bad)

    def test_bounded_part_cap(self):
        bound = small_component_bound(self.ip.m, self.ip.max_entry)
        bad = DecompositionWitness(
            (0,), (0,), (bound + 1,), (0,)
        )
        assert not verify_witness(self.ip, bad)


class TestStructure:
    def test_some_optimum_has_few_large_components(self):
        # On box-certified instances at least one optimal point must have at
        # most m components above the bound, on independent columns.
        rng = random.Random(46)
        checked = 0
        for _ in range(60):
            ip = random_standard(rng, 1, rng.randint(2, 4), rng.randint(1, 3), 10, positive_row=True)
            box = max(v for v in ip.b) + 1
            sol, optima = brute_standard(ip, box, collect_optima=True)
            if sol.status is not Status.OPTIMAL:
                continue
            bound = small_component_bound(ip.m, max(ip.max_entry, 1))
            ok = False
            for x in optima:
                large = [j for j, v in enumerate(x) if v > bound]
                if len(large) > ip.m:
                    continue
                if not large:
                    ok = True
                    break
                from exactip import rank

                if rank(ip.a.select_cols(large)) == len(large):
                    ok = True
                    break
            assert ok, (ip, optima)
            checked += 1
        assert checked >= 30
