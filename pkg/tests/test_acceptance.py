"""Release-gating acceptance suite: one test per criterion.

Each test prints a PASS/FAIL line (visible with pytest -s or on failure)
and asserts the criterion at its stated tolerance, including the runtime
budgets where the criteria carry one.
"""


from conewalks import acceptance as acc


def _report(result):
    status = "PASS" if result.passed else "FAIL"
    print(f"[{status}] criterion {result.criterion}: {result.name} "
          f"({result.runtime_s:.2f}s)")
    for key, value in result.details.items():
        print(f"    {key} = {value}")
    for failure in result.failures:
        print(f"    failure: {failure}")
    assert result.passed, result.failures


def test_criterion_1_enumeration_exactness():
    _report(acc.check_enumeration())


def test_criterion_2_discrete_polyharmonic_identities():
    result = acc.check_discrete_identities()
    assert result.details.get("tandem_Lv1_over_v0") == "-4/3"
    _report(result)


def test_criterion_3_expansion_machinery():
    _report(acc.check_expansion_machinery())


def test_criterion_4_expansion_fitting():
    _report(acc.check_fitting())


def test_criterion_5_kernel_identities():
    _report(acc.check_kernel_identities())


def test_criterion_6_generating_function_coefficients():
    result = acc.check_gf_coefficients()
    # the fitted proportionality constants are pinned, not just logged
    assert result.details.get("simple_v1_constant") == "-2/3"
    assert result.details.get("tandem_harmonic_constant") == "1/2"
    assert result.details.get("tandem_PQ0_constant") == "-3/80"
    assert result.details.get("tandem_v1_constant") == "-1"
    _report(result)


def test_criterion_7_continuum_numerics():
    _report(acc.check_continuum())


def test_criterion_8_monte_carlo():
    _report(acc.check_montecarlo())


def test_full_report_shape():
    # the CLI report is brief to rebuild from already-computed pieces, so we
    # only check the shape contract here (report-all re-runs everything)
    from conewalks.acceptance import CheckResult

    r = CheckResult(1, "x", True, 0.0, {"a": 1}, [])
    obj = r.to_json_obj()
    assert set(obj) == {"criterion", "name", "passed", "runtime_s", "details", "failures"}
