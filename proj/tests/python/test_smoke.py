import superflag


def test_dimensions():
    assert superflag.dim("Gr(2|1; 1|1)")["dimension"] == 8
    r = superflag.dim("Gr(2|2; 1|1)", parallel=True)
    assert r["dimension"] == 17 and r["stabilized"]


def test_functions_and_kernel():
    assert superflag.functions("Gr(1|2; 0|2)")["dimension"] == 4
    assert len(superflag.kernel("Gr(2|1; 1|1)")) == 1


def test_project_and_lift():
    assert superflag.project("F(2|2; 1,1|2,1)", "y^2_{11}: 1") == {"projectable": True, "base": ""}
    r = superflag.lift("F(2|2; 1,1|1,0)", "η^1_{11}: ξ^1_{11}")
    assert not r["feasible"] and r["certificate"]
    assert superflag.lift("F(2|2; 1,1|2,1)", "x^1_{11}: ξ^1_{11}*ξ^1_{12}")["feasible"]


def test_weights():
    assert superflag.weyl_dim([1, 0, -1]) == "8"
    assert superflag.section(3, 3, 1, 1)["dimension"] == "1"


def test_verify_suite():
    r = superflag.verify("functions")
    assert r["passed"]
    assert "bwb-table" in superflag.suites()
