import pytest

from lrckit.construction import Strategy, build_instance, plan_params, preset_params
from lrckit.errors import CapExceeded, InvalidParams
from lrckit.gf import make_field
from lrckit.linalg import Matrix
from lrckit.verify import (
    FAILED,
    UNVERIFIED,
    VERIFIED,
    _extreme,
    _extreme_python,
    audit_generator,
    bound_and_defect,
    distance_lower_bound,
    full_report,
    locality_audit,
    min_distance_bounds,
    min_distance_exact,
    singleton_like_bound,
    strategy_common_roots,
    subspace_common_roots_max,
)


class TestMinDistanceExact:
    def test_repetition_rows(self):
        # the enumeration core on a [3,1] repetition generator
        f2 = make_field(2)
        assert _extreme(f2, [[1, 1, 1]], "min_weight", 1, 1) == 3
        assert _extreme_python(f2, [[1, 1, 1]], "min_weight", 1) == 3

    def test_full_q4(self, full_q4):
        assert min_distance_exact(full_q4) == 2

    def test_colwise_q7(self, colwise_q7):
        assert min_distance_exact(colwise_q7) == 3

    def test_cap(self, colwise_q7):
        with pytest.raises(CapExceeded):
            min_distance_exact(colwise_q7, cap=100)

    def test_workers_agree(self, global_q5):
        d1 = min_distance_exact(global_q5, workers=1)
        d2 = min_distance_exact(global_q5, workers=2)
        d3 = min_distance_exact(global_q5, workers=5)
        assert d1 == d2 == d3

    def test_numpy_matches_reference(self, full_q4, full_mu3_q5):
        for inst in (full_q4, full_mu3_q5):
            rows = inst.G.to_encs()
            assert _extreme(inst.field, rows, "min_weight", 1, 1) == _extreme_python(
                inst.field, rows, "min_weight", 1
            )


class TestSubspaceCommonRoots:
    def test_full_is_r_minus_1(self, full_q4):
        assert subspace_common_roots_max(full_q4) == full_q4.params.r - 1

    def test_colwise_is_r_minus_w_minus_1(self, colwise_q7):
        p = colwise_q7.params
        assert subspace_common_roots_max(colwise_q7) == p.r - p.w - 1

    def test_w_zero_any_strategy(self):
        inst = build_instance(plan_params(5, 3, 2, 0, 2, 2, Strategy.GLOBAL))
        assert subspace_common_roots_max(inst) == 2

    def test_matches_strategy_prediction(self, colwise_q7, full_q4):
        for inst in (colwise_q7, full_q4):
            predicted = strategy_common_roots(inst.params, inst.layout)
            assert predicted == subspace_common_roots_max(inst)


class TestBounds:
    def test_full_tight(self, full_q4):
        lower, upper = min_distance_bounds(full_q4)
        assert (lower, upper) == (2, 2)

    def test_colwise_matches_exact(self, colwise_q7):
        lower, upper = min_distance_bounds(colwise_q7)
        d = min_distance_exact(colwise_q7)
        assert lower <= d <= upper
        assert (lower, upper) == (3, 3)

    def test_preset_upper_at_least_lower(self):
        inst = build_instance(preset_params(1, 8))
        lower, upper = min_distance_bounds(inst)
        assert upper >= lower
        assert upper <= 6  # never above the preset's target distance (row 1 -> 6)

    def test_sandwich_on_global(self, global_q5):
        lower, upper = min_distance_bounds(global_q5)
        d = min_distance_exact(global_q5)
        assert lower <= d <= upper

    def test_lower_bound_formula(self):
        p = plan_params(7, 3, 2, 1, 3, 3, Strategy.COLWISE)
        assert distance_lower_bound(p, 1) == 3
        p2 = plan_params(5, 2, 3, 0, 3, 2, Strategy.FULL)
        assert distance_lower_bound(p2, 1) == (2 + 3 - 1 - 1) * (3 - 2 + 1)


class TestBoundAndDefect:
    def test_preset_scale_values(self):
        assert bound_and_defect(48, 36, 6, 5, 2) == (6, 0, True)

    def test_small_full(self):
        assert bound_and_defect(9, 6, 2, 2, 2) == (2, 0, True)

    def test_mu3(self):
        assert bound_and_defect(12, 6, 3, 2, 3) == (3, 0, True)

    def test_mu2_matches_classic_form(self):
        for (n, k, r) in [(12, 8, 3), (9, 6, 2), (48, 36, 5)]:
            assert singleton_like_bound(n, k, r, 2) == n - k + 2 - (-(-k // r))

    def test_invalid(self):
        with pytest.raises(InvalidParams):
            bound_and_defect(9, 0, 2, 2, 2)
        with pytest.raises(InvalidParams):
            bound_and_defect(9, 6, 2, 2, 1)
        with pytest.raises(InvalidParams):
            bound_and_defect(9, 6, 0, 2, 2)


class TestLocalityAudit:
    def test_constructed_instances_pass(self, full_q4, colwise_q7, global_q5, full_mu3_q5):
        for inst in (full_q4, colwise_q7, global_q5, full_mu3_q5):
            audit = locality_audit(inst)
            assert audit.passed
            assert audit.reads_per_repair == inst.params.r
            for g in audit.groups:
                assert g.dimension <= inst.params.r

    def test_synthetic_failure(self):
        # a weight-1 local row cannot survive single-column puncturing
        f5 = make_field(5)
        G = Matrix.from_encs(f5, [[1, 0, 0]])
        audit = audit_generator(G, group_count=1, group_size=3, r=2, mu=2)
        assert not audit.passed
        assert (0,) in audit.groups[0].failed_subsets

    def test_mu3_checks_all_pairs(self, full_mu3_q5):
        audit = locality_audit(full_mu3_q5)
        assert audit.passed
        for g in audit.groups:
            assert g.subsets_checked == 6  # C(4, 2)


class TestFullReport:
    def test_full_q4_optimal(self, full_q4):
        rep = full_report(full_q4)
        assert rep.distance_exact == 2
        assert rep.defect == 0
        assert rep.optimal
        assert all(c.status == VERIFIED for c in rep.claims)
        assert rep.all_verified_hold

    def test_colwise_dimension_note(self, colwise_q7):
        rep = full_report(colwise_q7)
        assert rep.distance_exact == 3
        assert rep.k == 6
        assert rep.k_codim_target == 8  # r*t - w differs from the COLWISE dimension
        d_claim, s_claim = rep.claims
        assert d_claim.status == VERIFIED  # d = w + mu holds
        assert s_claim.status == FAILED  # bound 6 > distance 3
        assert rep.defect == 3

    def test_global_q5_records_measurement(self, global_q5):
        rep = full_report(global_q5)
        d = min_distance_exact(global_q5)
        assert rep.distance_exact == d
        assert rep.distance_exact <= 3  # Singleton-like sanity at k=8
        d_claim = rep.claims[0]
        expected_status = VERIFIED if d == global_q5.params.w + 2 else FAILED
        assert d_claim.status == expected_status
        assert d_claim.measured == str(d)

    def test_preset_unverified(self):
        inst = build_instance(preset_params(1, 8))
        rep = full_report(inst)
        assert rep.distance_exact is None
        assert rep.distance_upper >= rep.distance_lower
        assert all(c.status == UNVERIFIED for c in rep.claims)
        assert rep.defect is None and not rep.optimal
        assert rep.locality.passed
        assert rep.all_verified_hold  # UNVERIFIED is not a failure

    def test_report_dict_round(self, full_q4):
        rep = full_report(full_q4)
        d = rep.to_dict()
        assert set(d) == {
            "q", "n", "k", "k_declared", "k_strategy", "k_codim_target",
            "r", "mu", "w", "l", "t", "strategy", "seed",
            "distance_exact", "distance_lower", "distance_upper", "distance_method",
            "max_common_roots", "common_roots_method",
            "singleton_bound", "defect", "optimal", "claims", "locality", "stats",
        }
        assert len(d["claims"]) == 2

    def test_analytic_bound_inequality(self, full_q4, colwise_q7, global_q5, full_mu3_q5):
        for inst in (full_q4, colwise_q7, global_q5, full_mu3_q5):
            d = min_distance_exact(inst)
            h = subspace_common_roots_max(inst)
            assert d >= distance_lower_bound(inst.params, h)
            assert d <= singleton_like_bound(
                inst.params.n, inst.k, inst.params.r, inst.params.mu
            )
