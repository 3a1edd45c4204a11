import pytest

import k3disc


def test_registry_lists_every_check():
    names = k3disc.check_names()
    assert "slice-factorization" in names
    assert len(names) == len(set(names)) == 10


def test_degree_ledger_witnesses():
    report = k3disc.run_checks("degree-ledger")
    check = report["checks"][0]
    assert check["status"] == "pass"
    assert set(check["witnesses"]["degrees"].values()) == {242, 504, 10, 1092, 196, 84, 14}
    assert report["meta"]["prime"] == k3disc.DEFAULT_PRIME


def test_lemma_order_single_pair():
    report = k3disc.run_checks("lemma-order", params={"n": 3, "m": 2})
    assert report["checks"][0]["witnesses"]["order"] == 3


def test_unknown_check_is_usage_error():
    with pytest.raises(k3disc.UsageError):
        k3disc.run_checks("unknown")


def test_reports_are_reproducible():
    a = k3disc.run_checks(["kodaira", "lattice"], seed=11, trials=4)
    b = k3disc.run_checks(["kodaira", "lattice"], seed=11, trials=4, jobs=2)
    assert a == b


def test_classify():
    assert k3disc.classify(4, 5, 10) == "II*"
    assert k3disc.classify(0, 0, 2) == "I2"
    with pytest.raises(k3disc.InconsistentOrdersError):
        k3disc.classify(0, 0, 0 - 1)


def test_t237_lattice():
    inv = k3disc.lattice_invariants(10, k3disc.t237_edges())
    assert inv["determinant"] == -1
    assert inv["signature"] == (1, 9)
    assert inv["even"]
    with pytest.raises(k3disc.InvalidDiagramError):
        k3disc.lattice_invariants(2, [(0, 0)])


def test_scan_euler_sum_over_splitting_prime():
    result = k3disc.scan({"t28": -3}, prime=631)
    assert result["residual"] == 0
    assert result["euler_sum"] == 24
    assert result["places"][-1]["type"] == "II*"


def test_scan_rejects_origin():
    with pytest.raises(k3disc.ParseError):
        k3disc.scan({"t4": 0})


def test_canonical_poly():
    assert k3disc.canonical_poly("x + x^2*y - 1/2", ["x", "y"]) == "x^2*y + x - 1/2"
