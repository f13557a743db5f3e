import json
from itertools import combinations

import numpy as np
import pytest

from dirlap import (
    EmptyComplementError,
    Filtration,
    KirchhoffViolatedError,
    SplitMix64,
    SubsetTooLargeError,
    TheoremReport,
    assemble,
    build_filtration,
    build_graph,
    gen_cycle,
    gen_layered_heavy,
    gen_opposing_cycles,
    gen_random_circulation,
    to_euclidean,
    verify_bounded,
    verify_cheeger_sandwich,
    verify_dirichlet_bounds,
    verify_ess_bound_consistency,
    verify_fujiwara,
    verify_graph,
    verify_green,
    verify_kyfan,
)
from dirlap.verify import _report


class TestReportSemantics:
    def test_margin_is_min_gap(self):
        r = _report("t", "i", [(0.0, 1.0), (2.0, 2.5)])
        assert r.margin == 0.5
        assert r.passed

    def test_fails_when_margin_below_tolerance(self):
        r = _report("t", "i", [(1.0, 0.5)], tolerance=0.1)
        assert r.margin == -0.5
        assert not r.passed

    def test_tiny_violation_within_tolerance_passes(self):
        r = _report("t", "i", [(1.0 + 1e-12, 1.0)], tolerance=1e-8)
        assert r.passed

    def test_default_tolerance_scales_with_values(self):
        small = _report("t", "i", [(0.0, 1.0)])
        big = _report("t", "i", [(0.0, 1e6)])
        assert big.tolerance > small.tolerance

    def test_json_obj_round_trips(self):
        r = _report("t", "inst", [(0.0, 1.0)])
        obj = json.loads(json.dumps(r.to_json_obj()))
        assert obj["theorem_id"] == "t"
        assert obj["instance"] == "inst"
        assert obj["lhs"] == [0.0] and obj["rhs"] == [1.0]
        assert obj["passed"] is True
        back = TheoremReport(
            theorem_id=obj["theorem_id"],
            instance=obj["instance"],
            lhs=tuple(obj["lhs"]),
            rhs=tuple(obj["rhs"]),
            margin=obj["margin"],
            passed=obj["passed"],
            tolerance=obj["tolerance"],
        )
        assert back == r


class TestGreen:
    def test_passes_on_balanced_graphs(self):
        for seed in (0, 1, 2):
            g = gen_random_circulation(10, 4, seed=seed)
            r = verify_green(g, f"circ{seed}")
            assert r.passed
            assert r.theorem_id == "greens_formula"
            assert r.tolerance == 0.0

    def test_residual_scale_is_tiny(self):
        r = verify_green(gen_opposing_cycles(5), n_pairs=25)
        assert r.lhs[0] <= 1e-12
        assert r.rhs[0] == 1e-9

    def test_raises_on_unbalanced(self):
        g = build_graph([1.0, 1.0], [(0, 1, 2.0), (1, 0, 1.0)])
        with pytest.raises(KirchhoffViolatedError):
            verify_green(g)

    def test_deterministic(self):
        g = gen_random_circulation(8, 3, seed=4)
        assert verify_green(g) == verify_green(g)


class TestBounded:
    def test_passes_with_kernel_check_when_connected(self):
        r = verify_bounded(gen_opposing_cycles(4), n_angles=90)
        assert r.passed
        assert len(r.lhs) == 3
        assert r.rhs == (2.0, 1.0, 0.0)

    def test_skips_kernel_check_when_disconnected(self):
        g = build_graph(
            [1.0] * 6,
            [(i, (i + 1) % 3, 1.0) for i in range(3)]
            + [(3 + i, 3 + (i + 1) % 3, 1.0) for i in range(3)],
        )
        r = verify_bounded(g, n_angles=16)
        assert r.passed
        assert len(r.lhs) == 2

    def test_norm_bound_is_tight_on_even_cycle(self):
        # the 2-periodic sign vector saturates the norm bound on even cycles
        r = verify_bounded(gen_cycle(8), n_angles=30)
        assert r.passed
        assert r.lhs[0] == pytest.approx(2.0, abs=1e-9)


class TestKyFan:
    def test_random_complex_matrices(self):
        rng = SplitMix64(2024)
        for trial in range(30):
            n = 2 + trial % 6
            a = rng.complex_vector(n * n).reshape(n, n)
            r = verify_kyfan(a, f"random{trial}")
            assert r.passed, (trial, r.margin)

    def test_trace_equality_is_included(self):
        a = np.array([[1.0, 5.0], [0.0, 2.0]])
        r = verify_kyfan(a)
        assert r.passed
        # last pair is the reversed total-sum inequality, so the margin of
        # the equality is zero up to rounding
        assert abs((r.rhs[-1] - r.lhs[-1])) <= r.tolerance

    def test_non_normal_jordan_block(self):
        a = np.array([[0.0, 1.0], [0.0, 0.0]])
        r = verify_kyfan(a)
        assert r.passed
        # eigenvalues are 0, 0 but the Hermitian part has spread 1/2
        assert r.rhs[0] == pytest.approx(0.5)

    def test_graph_operator_input(self):
        g = gen_random_circulation(7, 3, seed=6)
        r = verify_kyfan(to_euclidean(assemble(g, "normalized_delta")))
        assert r.passed


class TestDirichletBounds:
    def test_triangle_hand_instance(self):
        r = verify_dirichlet_bounds(gen_cycle(3), [0, 1])
        assert r.passed
        # lowest eigenvalue has real part exactly 1
        assert r.lhs[1] == pytest.approx(1.0, abs=1e-10)
        # Hermitian-part extremes 0.5 and 1.5 sum to 2
        assert r.lhs[2] == pytest.approx(2.0, abs=1e-10)
        assert r.lhs[3] == pytest.approx(0.5, abs=1e-10)

    def test_exhaustive_small_graph(self):
        g = gen_random_circulation(6, 3, seed=8)
        for size in range(1, 6):
            for omega in combinations(range(6), size):
                r = verify_dirichlet_bounds(g, omega)
                assert r.passed, (omega, r.margin)

    def test_rejects_full_set(self):
        with pytest.raises(ValueError):
            verify_dirichlet_bounds(gen_cycle(4), range(4))

    def test_rejects_subset_without_boundary(self):
        g = build_graph(
            [1.0] * 6,
            [(i, (i + 1) % 3, 1.0) for i in range(3)]
            + [(3 + i, 3 + (i + 1) % 3, 1.0) for i in range(3)],
        )
        with pytest.raises(ValueError):
            verify_dirichlet_bounds(g, [0, 1, 2])

    def test_instance_tag_contains_subset(self):
        r = verify_dirichlet_bounds(gen_cycle(5), [1, 3], "pent")
        assert r.instance == "pent|omega={1,3}"


class TestCheegerSandwich:
    def test_tight_instance(self):
        r = verify_cheeger_sandwich(gen_cycle(3), [0, 1])
        assert r.passed
        # nu of the normalized restriction and half the outflow-normalized
        # constant coincide at 0.5 here
        assert r.lhs[3] == pytest.approx(0.5, abs=1e-9)
        assert r.rhs[3] == pytest.approx(0.5, abs=1e-9)

    def test_passes_on_random_subsets(self):
        g = gen_random_circulation(9, 4, seed=5)
        for omega in ([0], [0, 3, 4], [1, 2, 5, 7], list(range(8))):
            r = verify_cheeger_sandwich(g, omega)
            assert r.passed, (omega, r.margin)

    def test_rejects_oversized(self):
        with pytest.raises(SubsetTooLargeError):
            verify_cheeger_sandwich(gen_cycle(25), range(23))


class TestFujiwara:
    def test_passes_on_subsets(self):
        g = gen_opposing_cycles(6)
        for omega in ([0], [0, 1, 2], [1, 3, 5]):
            r = verify_fujiwara(g, omega)
            assert r.passed, (omega, r.margin)

    def test_envelope_plus_interior_chain(self):
        r = verify_fujiwara(gen_cycle(5), [0, 1], n_vectors=40)
        assert r.passed
        # 3 envelope pairs plus the two worst interior pairs
        assert len(r.lhs) == 5

    def test_zero_vectors_drops_interior_pairs(self):
        r = verify_fujiwara(gen_cycle(5), [0, 1], n_vectors=0)
        assert r.passed
        assert len(r.lhs) == 3

    def test_deterministic(self):
        g = gen_random_circulation(8, 3, seed=9)
        assert verify_fujiwara(g, [0, 2, 4]) == verify_fujiwara(g, [0, 2, 4])


class TestEssConsistency:
    def test_layered_graph_passes(self):
        g = gen_layered_heavy(4, 3, gamma=2.0)
        r = verify_ess_bound_consistency(g, build_filtration(g, 0))
        assert r.passed
        assert r.theorem_id == "essential_spectrum_lower_bound"

    def test_needs_two_usable_levels(self):
        g = gen_cycle(3)
        filt = Filtration(root=0, levels=((0,), (0, 1, 2)))
        with pytest.raises(EmptyComplementError):
            verify_ess_bound_consistency(g, filt)


class TestVerifyGraph:
    def test_small_graph_report_inventory(self):
        reports = verify_graph(gen_cycle(3), "tri")
        assert all(r.passed for r in reports)
        ids = [r.theorem_id for r in reports]
        # 3 global checks, 6 proper subsets, 7 subsets for each of the two
        # isoperimetric checks; the radius-1 ball filtration has no usable
        # second level on a triangle
        assert ids.count("greens_formula") == 1
        assert ids.count("norm_disc_kernel") == 1
        assert ids.count("ky_fan_partial_sums") == 1
        assert ids.count("dirichlet_eigenvalue_bounds") == 6
        assert ids.count("cheeger_sandwich") == 7
        assert ids.count("fujiwara_envelope") == 7
        assert ids.count("essential_spectrum_lower_bound") == 0
        assert len(reports) == 23

    def test_larger_graph_uses_selected_subsets(self):
        g = gen_layered_heavy(4, 3, gamma=2.0)
        reports = verify_graph(g, "layered")
        assert all(r.passed for r in reports), [
            (r.theorem_id, r.instance, r.margin) for r in reports if not r.passed
        ]
        ids = [r.theorem_id for r in reports]
        assert ids.count("essential_spectrum_lower_bound") == 1
        # far fewer subset reports than the 2^12 exhaustive sweep would give
        assert len(reports) < 60

    def test_instance_names_carry_graph_name(self):
        reports = verify_graph(gen_cycle(3), "tri")
        assert all(r.instance.startswith("tri") for r in reports)
