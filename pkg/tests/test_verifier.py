"""Case assembly, identity catalog, divisibility moduli, manifold evaluation."""

import json
from fractions import Fraction

import pytest

from anomaly.verifier import (
    CASE_DIMS,
    COROLLARIES,
    IDENTITIES,
    PRINTED_VARIANTS,
    CaseSpec,
    ManifoldData,
    ManifoldDataError,
    NonIntegralSolveError,
    UnknownIdentityError,
    assemble_Q,
    bundle_route_integrand,
    corollaries_for,
    corollary_modulus,
    divisibility_modulus,
    eisenstein_fit,
    evaluate_manifold,
    evaluate_report,
    identities_for,
    impose_condition,
    index_relation_forms,
    report_jsonable,
    run_case,
    theta_route_integrand,
    verify_identity,
    verify_identity_as_printed,
)

ALL_CASES = [(case, dim) for case in CASE_DIMS for dim in CASE_DIMS[case]]

HP2 = ManifoldData(8, {"pX1^2": Fraction(4), "pX2": Fraction(7)})


class TestCaseSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            CaseSpec("spin_w", 8)
        with pytest.raises(ValueError):
            CaseSpec("spin", 10)
        with pytest.raises(ValueError):
            CaseSpec("spinc_l", 8)
        with pytest.raises(ValueError):
            CaseSpec("spin", 8, -1)
        with pytest.raises(ValueError):
            CaseSpec("spin", 8, 3, "shortcut")

    def test_weights(self):
        assert CaseSpec("spin", 8).weight == 4
        assert CaseSpec("spin", 20).weight == 10
        assert CaseSpec("spin_v", 12).weight == 6
        assert CaseSpec("spinc_l", 10).weight == 4
        assert CaseSpec("spinc_l", 22).weight == 10

    def test_tables(self):
        assert "pV1" in CaseSpec("spin_v", 8).table()
        assert "cL" in CaseSpec("spinc_l", 10).table()
        assert "pV1" not in CaseSpec("spin", 8).table()


@pytest.mark.parametrize("case,dim", ALL_CASES)
class TestRoutesAndFits:
    def test_routes_agree(self, case, dim):
        spec = CaseSpec(case, dim, 2)
        assert bundle_route_integrand(spec) == theta_route_integrand(spec)

    def test_fit_is_exact(self, case, dim):
        spec = CaseSpec(case, dim, 2)
        fit = eisenstein_fit(assemble_Q(spec), spec.weight)
        assert fit.passed
        assert not fit.lam.is_zero()


class TestConditionMatters:
    @pytest.mark.parametrize("case,dim", [("spin_v", 8), ("spinc_l", 10)])
    def test_fit_fails_without_condition(self, case, dim):
        spec = CaseSpec(case, dim, 2, impose=False)
        fit = eisenstein_fit(assemble_Q(spec), spec.weight)
        assert not fit.passed

    def test_spin_needs_no_condition(self):
        spec = CaseSpec("spin", 8, 2, impose=False)
        assert eisenstein_fit(assemble_Q(spec), 4).passed

    def test_impose_condition_substitutions(self):
        spec = CaseSpec("spin_v", 8, 2)
        table = spec.table()
        from anomaly.algebra import GradedPoly

        pX1 = GradedPoly.generator(table, "pX1", 8)
        pV1 = GradedPoly.generator(table, "pV1", 8)
        assert impose_condition(pX1, "spin_v") == 3 * pV1
        assert impose_condition(pX1, "spin") == pX1
        lt = CaseSpec("spinc_l", 10).table()
        c = GradedPoly.generator(lt, "cL", 10)
        pl = GradedPoly.generator(lt, "pX1", 10)
        assert impose_condition(pl, "spinc_l") == c * c
        assert impose_condition(pl, "spin_v_line") == 3 * c * c
        with pytest.raises(ValueError):
            impose_condition(pl, "mystery")


class TestIdentityCatalog:
    def test_catalog_shape(self):
        theorem_ids = [i for i, e in IDENTITIES.items() if e.case != "spin_v_line"]
        line_ids = [i for i, e in IDENTITIES.items() if e.case == "spin_v_line"]
        assert len(theorem_ids) == 20
        assert len(line_ids) == 6
        assert len(COROLLARIES) == 20
        assert "Thm1.1-(1.1)" in IDENTITIES
        assert "Thm1.7-(1.14)" in IDENTITIES
        assert "Cor1.10-a" in IDENTITIES
        assert "Cor1.2-a" in COROLLARIES
        assert "Cor1.28-a" in COROLLARIES

    def test_identities_for_selection(self):
        spin8 = [e.ident for e in identities_for("spin", 8)]
        assert spin8 == ["Thm1.1-(1.1)", "Thm1.1-(1.2)"]
        spinv8 = [e.ident for e in identities_for("spin_v", 8)]
        assert spinv8 == ["Thm1.9-q1", "Thm1.9-q2", "Cor1.10-a", "Cor1.10-b"]
        spinc10 = [e.ident for e in identities_for("spinc_l", 10)]
        assert spinc10 == ["Thm1.21-q1", "Thm1.21-q2"]

    @pytest.mark.parametrize("ident", sorted(IDENTITIES))
    def test_every_identity_verifies(self, ident):
        result = verify_identity(ident)
        assert result.passed, f"{ident} residual: {result.residual.render()}"

    def test_unknown_identity(self):
        with pytest.raises(UnknownIdentityError):
            verify_identity("Thm9.9-(9.9)")

    def test_proportionality_constants(self):
        assert verify_identity("Thm1.1-(1.1)").constant == 240
        assert verify_identity("Thm1.1-(1.2)").constant == 2160
        assert verify_identity("Thm1.3-(1.5)").constant == -504
        assert verify_identity("Thm1.5-(1.9)").constant == 480
        assert verify_identity("Thm1.7-(1.13)").constant == -264
        assert verify_identity("Thm1.7-(1.14)").constant == -135432


class TestPrintedVariantsFail:
    def test_registered_variants(self):
        assert set(PRINTED_VARIANTS) == {"Thm1.7-(1.13)", "Thm1.7-(1.14)", "Thm1.15-q1"}

    @pytest.mark.parametrize("ident", sorted(PRINTED_VARIANTS))
    def test_uncorrected_forms_fail(self, ident):
        assert verify_identity(ident).passed
        assert not verify_identity_as_printed(ident).passed

    def test_no_variant_registered(self):
        with pytest.raises(UnknownIdentityError):
            verify_identity_as_printed("Thm1.1-(1.1)")


EXPECTED_MODULI = {
    # spin: dims 8/12/16/20
    "Cor1.2-a": 8,
    "Cor1.2-b": 16,
    "Cor1.4-a": 4,
    "Cor1.4-b": 8,
    "Cor1.6-a": 16,
    "Cor1.6-b": 32,
    "Cor1.8-a": 4,
    "Cor1.8-b": 8,
    # auxiliary bundle specialized to a line: dims 8/12/16/20
    "Cor1.11-a": 240,
    "Cor1.11-b": 2160,
    "Cor1.14-a": 504,
    "Cor1.14-b": 16632,
    "Cor1.17-a": 480,
    "Cor1.20-a": 264,
    # line-bundle case: dims 10/14/18/22
    "Cor1.22-a": 240,
    "Cor1.22-b": 2160,
    "Cor1.24-a": 504,
    "Cor1.24-b": 16632,
    "Cor1.26-a": 480,
    "Cor1.28-a": 264,
}


class TestDivisibility:
    def test_full_modulus_table(self):
        computed = {ident: corollary_modulus(ident) for ident in COROLLARIES}
        assert computed == EXPECTED_MODULI

    def test_relation_solving_errors(self):
        with pytest.raises(UnknownIdentityError):
            divisibility_modulus("Thm0.0", "ind(D)")
        with pytest.raises(UnknownIdentityError, match="terms"):
            divisibility_modulus("Thm1.1-(1.1)", "ind(nothing)")
        # the relation cannot be solved integrally for the largest coefficient
        with pytest.raises(NonIntegralSolveError):
            divisibility_modulus("Thm1.1-(1.1)", "ind(D)")
        with pytest.raises(UnknownIdentityError):
            corollary_modulus("Cor0.0-z")

    def test_relation_balance_matches_basis(self):
        # the relation coefficients must sum against HP2 values to zero
        entry = IDENTITIES["Thm1.1-(1.1)"]
        terms = index_relation_forms(entry)
        balance = sum(coeff * evaluate_manifold(HP2, form) for coeff, _, form in terms)
        assert balance == 0


class TestManifoldData:
    def test_from_json(self):
        data = ManifoldData.from_json('{"dim": 8, "numbers": {"pX1^2": "4", "pX2": "7"}}')
        assert data.dim == 8
        assert data.numbers["pX2"] == 7

    def test_malformed_inputs(self):
        with pytest.raises(ManifoldDataError):
            ManifoldData.from_mapping([1, 2])
        with pytest.raises(ManifoldDataError):
            ManifoldData.from_mapping({"numbers": {}})
        with pytest.raises(ManifoldDataError):
            ManifoldData.from_mapping({"dim": 8, "numbers": {"pX2": 7}})
        with pytest.raises(ManifoldDataError):
            ManifoldData.from_mapping({"dim": 8, "numbers": {"pX2": "7/0"}})
        with pytest.raises(ManifoldDataError):
            ManifoldData.from_mapping({"dim": "8", "numbers": {}})

    def test_evaluate_errors(self):
        from anomaly.algebra import GradedPoly, pontryagin_table, top_component
        from anomaly.genera import ahat_form

        table = pontryagin_table(8)
        form = top_component(ahat_form(table, 8), 8)
        missing = ManifoldData(8, {"pX1^2": Fraction(4)})
        with pytest.raises(ManifoldDataError, match="missing"):
            evaluate_manifold(missing, form)
        wrong_dim = ManifoldData(12, {"pX1^2": Fraction(4), "pX2": Fraction(7)})
        with pytest.raises(ManifoldDataError, match="dimension"):
            evaluate_manifold(wrong_dim, form)


class TestQuaternionicPlane:
    """HP^2: pX1^2 = 4, pX2 = 7; spin, Ahat-genus 0, signature 1."""

    def test_headline_indices(self):
        report = evaluate_report(HP2)
        values = {row["label"]: row["value"] for row in report["indices"]}
        assert values["Â-genus"] == "0"
        assert values["ind(D⊗Δ)"] == "1"

    def test_identity_balances_and_divisibility(self):
        report = evaluate_report(HP2)
        assert all(row["balanced"] for row in report["identities"])
        checks = {row["corollary"]: row for row in report["checks"]}
        assert checks["Cor1.2-a"]["value"] == "-8"
        assert checks["Cor1.2-a"]["modulus"] == 8
        assert checks["Cor1.2-a"]["ok"]
        assert checks["Cor1.2-b"]["value"] == "112"
        assert checks["Cor1.2-b"]["modulus"] == 16
        assert checks["Cor1.2-b"]["ok"]

    def test_index_values_from_relation(self):
        entry = IDENTITIES["Thm1.1-(1.1)"]
        values = {label: evaluate_manifold(HP2, form) for _, label, form in index_relation_forms(entry)}
        assert values["ind(D⊗Δ⊗T̃)"] == -8
        assert values["ind(D⊗(T̃+Λ²T̃))"] == 8
        assert values["ind(D⊗Δ)"] == 1
        assert values["ind(D)"] == 0

    def test_failing_divisibility_detected(self):
        bad = ManifoldData(8, {"pX1^2": Fraction(4), "pX2": Fraction(8)})
        report = evaluate_report(bad)
        assert all(row["balanced"] for row in report["identities"])  # polynomial identity always balances
        assert not all(row["ok"] for row in report["checks"])  # but integrality fails

    def test_dimension_out_of_catalog(self):
        with pytest.raises(ManifoldDataError):
            evaluate_report(ManifoldData(6, {}))


class TestReports:
    def test_run_case_spin8(self):
        report = run_case(CaseSpec("spin", 8, 2))
        assert report.passed
        assert report.route_ok and report.fit_ok
        assert [r.ident for r in report.identities] == ["Thm1.1-(1.1)", "Thm1.1-(1.2)"]
        assert report.moduli == [
            ("Cor1.2-a", "ind(D⊗Δ⊗T̃)", 8),
            ("Cor1.2-b", "ind(D⊗Δ⊗(2T̃+Λ²T̃+T̃⊗T̃+S²T̃))", 16),
        ]
        assert report.lam == "2/15*pX2 + 1/60*pX1^2"

    def test_spin_v_report_notes_complexification(self):
        report = run_case(CaseSpec("spin_v", 8, 2))
        assert any("complexification" in note for note in report.notes)

    def test_jsonable_structure_and_determinism(self):
        reports = [run_case(CaseSpec("spin", 8, 2))]
        payload = report_jsonable(reports)
        assert payload["passed"]
        case = payload["cases"][0]
        assert case["identities"][0] == {
            "id": "Thm1.1-(1.1)",
            "status": "pass",
            "residual": "0",
            "constant": 240,
            "notes": [],
        }
        assert case["moduli"]["Cor1.2-a"]["modulus"] == 8
        text1 = json.dumps(payload, sort_keys=True)
        text2 = json.dumps(report_jsonable([run_case(CaseSpec("spin", 8, 2))]), sort_keys=True)
        assert text1 == text2
