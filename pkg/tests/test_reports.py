from fractions import Fraction

import pytest

from congruence_lab import averaged as av
from congruence_lab import congruence as cg
from congruence_lab import dp6, reports


def test_fmt():
    assert reports.fmt(True) == "true"
    assert reports.fmt(False) == "false"
    assert reports.fmt(7) == "7"
    assert reports.fmt(-3) == "-3"
    assert reports.fmt(Fraction(21, 2)) == "21/2"
    assert reports.fmt(Fraction(10)) == "10"
    assert reports.fmt(0.1) == "0.1"
    assert reports.fmt(1 / 3) == repr(1 / 3)
    assert reports.fmt("joint") == "joint"
    with pytest.raises(TypeError):
        reports.fmt([1, 2])


def test_box_row_fields_and_timings():
    rep = cg.box_report(cg.CongruenceInstance(1, 1, 5, 10, 10))
    row = reports.box_row(rep)
    assert tuple(row) == reports.BOX_FIELDS
    assert row["exact"] == "16"
    assert row["main_term"] == "16.0"
    assert row["seconds"] == "0.0"
    timed = reports.box_row(rep, timings=True)
    assert timed["seconds"] == repr(rep.seconds)


def test_averaged_row_fields():
    fam = av.AveragedFamily(
        l=1, m=1, r=1, s=1, t=3, U=1, V=1, W=Fraction(1, 2),
        J=cg.Interval(0, 10), bounds=av.constant_bounds(5),
    )
    rep = av.avg_report(fam, H=4, epsilon=0.05)
    row = reports.averaged_row(rep)
    assert tuple(row) == reports.AVERAGED_FIELDS
    assert row["W"] == "1/2"
    assert row["scheme"] == "all-ones"
    assert row["S_im"] == "0.0"


def test_growth_and_point_rows():
    rows = dp6.m_t_growth([1000], 12)
    grow = reports.growth_row(rows[0])
    assert tuple(grow) == reports.GROWTH_FIELDS
    assert grow["count"] == "31"

    _, records = dp6.enumerate_lower_bound_points(1000, 12)
    prow = reports.point_row(records[0])
    assert tuple(prow) == reports.POINT_FIELDS
    assert prow["x5"] == "343"
    assert prow["Omega"] == "3"


def test_round_trip_csv_json_csv():
    fields = ["n", "value", "flag"]
    rows = [
        {"n": "1", "value": "21/2", "flag": "true"},
        {"n": "2", "value": repr(0.30000000000000004), "flag": "false"},
    ]
    csv1 = reports.csv_text("demo table", fields, rows)
    desc, f2, r2 = reports.parse_csv_text(csv1)
    assert (desc, f2, r2) == ("demo table", fields, rows)
    js = reports.json_text(desc, f2, r2)
    desc3, f3, r3 = reports.parse_json_text(js)
    csv2 = reports.csv_text(desc3, f3, r3)
    assert csv2 == csv1


def test_parse_csv_requires_description():
    with pytest.raises(ValueError):
        reports.parse_csv_text("a,b\n1,2\n")


def test_write_report(tmp_path):
    path = tmp_path / "out.csv"
    reports.write_report(str(path), "csv", "demo", ["a"], [{"a": "1"}])
    assert path.read_text() == "# demo\na\n1\n"
    with pytest.raises(ValueError):
        reports.write_report(str(path), "xml", "demo", ["a"], [])
