import json

from kcb.fock import FockContext, symmetric_context
from kcb.verify import (
    conjecture_scan,
    verify_duality,
    verify_top_row_forms,
    verify_path_families,
    verify_structural,
    verify_svelte_step,
    verify_weyl_stability,
)


class TestTopRowForms:
    def test_display_instance(self):
        r = verify_top_row_forms(3, 0, 1)
        assert r.passed and r.instances[0].verdict == "match"

    def test_trivial_k0(self):
        assert verify_top_row_forms(2, 0, 0).passed

    def test_shape_instance(self):
        r = verify_top_row_forms(3, 0, 2)
        assert r.passed
        assert r.instances[0].detail["shape"] == [1, 1, 1]


class TestWeyl:
    def test_a1(self):
        r = verify_weyl_stability(1, 0, 1, 2)
        assert r.passed
        assert all(i.verdict == "match" for i in r.instances)

    def test_a2(self):
        assert verify_weyl_stability(2, 0, 1, 1).passed

    def test_n0_reduces_to_top_row(self):
        r = verify_weyl_stability(2, 1, 2, 0)
        assert r.passed and len(r.instances) == 1

    def test_degree_cap_skips(self):
        r = verify_weyl_stability(2, 0, 2, 2, degree_cap=13)
        verds = [i.verdict for i in r.instances]
        assert "info" in verds  # n = 2 instance exceeds the cap
        assert r.passed


class TestPathFamilies:
    def test_p0k1_clean(self):
        r = verify_path_families(2, "p0k1", 1, 2)
        assert r.passed
        assert all(i.verdict == "match" for i in r.instances)

    def test_p10k_n0_clean(self):
        r = verify_path_families(2, "p10k", 2, 0)
        assert r.passed

    def test_p10k_flagged_not_hard_mismatch(self):
        r = verify_path_families(2, "p10k", 1, 1)
        verds = {i.verdict for i in r.instances}
        assert "flagged" in verds
        assert r.passed  # flagged entries do not fail the suite

    def test_p010k_n0_corrected_reading(self):
        r = verify_path_families(2, "p010k", 2, 0)
        assert r.passed
        for inst in r.instances:
            assert inst.detail["rule_matches"]["corrected"]


class TestDuality:
    def test_level2(self):
        r = verify_duality(FockContext(2, (0, 1)), 5)
        assert r.passed and all(i.verdict == "match" for i in r.instances)

    def test_level4(self):
        assert verify_duality(FockContext(2, (0, 0, 1, 1)), 5).passed


class TestSvelte:
    def test_a1(self):
        r = verify_svelte_step(symmetric_context(1), 9)
        assert r.passed
        assert any(i.verdict == "match" for i in r.instances)

    def test_a2(self):
        assert verify_svelte_step(symmetric_context(2), 9).passed


class TestStructural:
    def test_a2(self):
        r = verify_structural(2, 7)
        assert r.passed

    def test_a4_classes(self):
        r = verify_structural(4, 6)
        assert r.passed
        first = r.instances[0]
        assert first.params["check"] == "defect-congruences"
        assert first.detail["classes"] == [0, 3, 4]


class TestConjectureScan:
    def test_a1_informational(self):
        r = conjecture_scan(1, 8)
        assert r.passed  # info-only suite can never fail
        assert all(i.verdict == "info" for i in r.instances)
        assert any(i.detail.get("status") == "supported" for i in r.instances)

    def test_supported_instances_record_m(self):
        r = conjecture_scan(2, 6)
        for inst in r.instances:
            if inst.detail.get("status") == "supported":
                m = inst.detail["m"]
                assert inst.params["t"] <= m <= inst.params["t_prime"]


class TestReportShape:
    def test_json_and_text(self):
        r = verify_top_row_forms(2, 0, 1)
        doc = r.to_json()
        json.dumps(doc)  # serializable
        assert doc["suite"] == "top-row"
        assert doc["passed"] is True
        text = r.to_text()
        assert "top-row" in text and "PASS" in text

    def test_deterministic(self):
        a = verify_structural(2, 6).to_json()
        b = verify_structural(2, 6).to_json()
        a.pop("wall_time"), b.pop("wall_time")
        assert a == b
