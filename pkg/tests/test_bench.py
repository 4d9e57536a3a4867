import pytest

from mch.aiger import write_aiger
from mch.bench import CSV_HEADER, BenchRow, parse_flow, run_flow, \
    run_suite, write_csv
from mch.mapper import default_cell_library

from fixtures import parity8, adder3


def test_parse_flow():
    assert parse_flow("lut-base") == ("lut", "base")
    assert parse_flow("cell-delay") == ("cell", "delay")
    assert parse_flow("gm-xmg-area") == ("gm-xmg", "area")
    with pytest.raises(ValueError):
        parse_flow("nonsense")


def test_csv_row_format():
    r = BenchRow("p8", "lut-base", 3.0, 2.0, 0.1234, "equivalent")
    assert r.csv() == "p8,lut-base,3,2,0.123,equivalent"


def test_lut_flow_row():
    area, delay, status = run_flow(parity8(), "lut-base")
    assert status == "equivalent"
    assert area > 0 and delay > 0


def test_cell_flows_verified():
    cl = default_cell_library()
    for flow in ("cell-base", "cell-delay", "cell-area"):
        area, delay, status = run_flow(adder3(), flow, cell_lib=cl)
        assert status == "equivalent", flow


def test_gm_flow_reports_nodes_levels():
    nodes, levels, status = run_flow(parity8(), "gm-xmg-base")
    assert status == "equivalent"
    assert nodes >= 1 and levels >= 1


def test_suite_with_geomean(tmp_path):
    for name, mk in (("p8", parity8), ("adder3", adder3)):
        write_aiger(mk(), tmp_path / f"{name}.aag")
    paths = sorted(str(p) for p in tmp_path.iterdir())
    rows = run_suite(paths, ["lut-base", "lut-balanced"])
    benches = {r.benchmark for r in rows}
    assert "geomean" in benches
    gm = [r for r in rows if r.benchmark == "geomean"]
    assert len(gm) == 2
    csv = tmp_path / "out.csv"
    write_csv(rows, csv)
    text = csv.read_text()
    assert text.splitlines()[0] == CSV_HEADER


def test_errors_marked_not_silently_passed(tmp_path):
    # an unreadable benchmark shows up as an error row
    bad = tmp_path / "bad.aag"
    bad.write_text("not an aiger file\n")
    rows = run_suite([str(bad)], ["lut-base"])
    errs = [r for r in rows if r.verified.startswith("error")]
    assert errs
