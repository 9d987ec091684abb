import pytest

from concat_blocking.tables import Reproducer, load_rows, range_check, reproduce

# a [9,4,5]_4 code, found by a seeded random search
NINE_FOUR_FIVE = """2 2 9 4
3 0 1 3 1 0 1 0 2
1 1 3 0 2 3 0 2 3
2 1 3 0 2 2 1 3 1
3 0 0 1 1 2 0 0 1
"""


def test_manifest():
    rows = load_rows()
    ids = [r.id for r in rows]
    assert len(ids) == len(set(ids))
    t1 = load_rows(1)
    assert [r.id for r in t1[:3]] == ["T1-1", "T1-2", "T1-3"]
    assert t1[0].cell == "Yes" and t1[0].shortest
    assert t1[2].cell == "21 <= n <= 26" and t1[2].range == (21, 26)
    assert all(r.table == 2 and not r.reproducible for r in load_rows(2))
    for r in rows:
        N, K, D, Q = r.outer
        n, k, d, q = r.inner
        assert r.concat == (N * n, K * k, r.concat[2])
        assert Q == q**k


def test_fast_rows_pass():
    res = {r.id: r for r in reproduce(1, ["T1-1", "T1-2", "T1-11", "T1-12"])}
    assert res["T1-1"].params == (9, 4, 4)
    assert res["T1-2"].params == (15, 6, 6)
    assert res["T1-2"].range_check["meets_lower_bound"]
    assert res["T1-11"].params == (16, 4, 9)
    assert res["T1-12"].params == (28, 6, 15)
    assert all(r.status == "PASS" for r in res.values())
    assert all(r.distance_source == "enumerated" for r in res.values())


def test_chained_row_builds_its_inner():
    (res,) = reproduce(1, ["T1-3"])
    assert res.status == "PASS" and res.params == (27, 8, 8)
    # the cited upper value 26 is a sharper known result, below this length
    assert res.range_check["n_at_least_lower"]
    assert not res.range_check["within_cited"]


def test_guarded_row_skipped():
    (res,) = reproduce(1, ["T1-5"])
    assert res.status == "SKIPPED" and "search guard" in res.reason


def test_table_two_needs_files(tmp_path):
    assert {r.status for r in reproduce(2)} == {"SKIPPED"}
    (tmp_path / "T2-1.gmat").write_text(NINE_FOUR_FIVE)
    (res,) = reproduce(2, ["T2-1"], outer_dir=tmp_path)
    assert res.status == "PASS" and res.params == (27, 8, 10)


def test_wrong_outer_file_fails(tmp_path):
    (tmp_path / "T2-2.gmat").write_text(NINE_FOUR_FIVE)
    (res,) = reproduce(2, ["T2-2"], outer_dir=tmp_path)
    assert res.status == "FAIL"


def test_row_reference_without_build():
    row = next(r for r in load_rows(1) if r.id == "T1-3")
    res = Reproducer().run_row(row)
    assert res.status == "SKIPPED" and "T1-1" in res.reason


@pytest.mark.parametrize("n,ok", [(24, True), (40, True), (23, False)])
def test_range_check(n, ok):
    row = next(r for r in load_rows(1) if r.id == "T1-4")
    rc = range_check(row, n)
    assert rc["n_at_least_lower"] == ok == rc["within_cited"]
    assert rc["cited_matches_formula"]


@pytest.mark.parametrize("rid", ["T1-3", "T1-5", "T1-11"])
def test_sharper_cited_upper_values(rid):
    row = next(r for r in load_rows(1) if r.id == rid)
    rc = range_check(row, row.concat[0])
    assert not rc["cited_matches_formula"]
    assert row.range[1] < rc["upper_bound"]


def test_result_serialisation():
    (res,) = reproduce(1, ["T1-1"])
    d = res.to_dict(timing=True)
    assert d["status"] == "PASS" and "seconds" in d
    assert "seconds" not in res.to_dict()
    assert res.line().startswith("T1-1   PASS [9,4,4]")
