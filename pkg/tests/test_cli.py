import csv
import io
import json
from pathlib import Path

import pytest

from multichrom.bounds import best_bounds
from multichrom.cache import CacheEntry, ResultCache, check_coherent
from multichrom.cli import run
from multichrom.colouring import MultiColouring, construct_stahl_colouring
from multichrom.combinatorics import KneserParams
from multichrom.errors import DomainError

GOLDEN = Path(__file__).parent / "golden"


def cli(*argv):
    out = io.StringIO()
    code = run(list(map(str, argv)), out)
    return code, out.getvalue()


def test_bounds_text_open_case():
    code, text = cli("bounds", "--n", 11, "--k", 4, "--kprime", 45)
    assert code == 0
    assert "lower 124" in text and "upper 126" in text and "status open" in text
    assert "11q-6" in text


def test_bounds_json_and_csv():
    code, text = cli("bounds", "--n", 11, "--k", 4, "--kprime", 45, "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["best_lower"] == 124 and data["upper"]["value"] == 126
    code, text = cli("bounds", "--n", 11, "--k", 4, "--kprime", 45, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert rows[0]["best_lb"] == "124" and rows[0]["upper"] == "126" and rows[0]["status"] == "open"


def test_partition_output():
    assert cli("partition", "--n", 76, "--k", 7, "--r", 4) == (0, "76q-40  parts=19,19,19,19\n")


@pytest.mark.parametrize("argv,golden", [
    (("table", "--k", 2, "--n-from", 4, "--n-to", 7, "--kprime-from", 1, "--kprime-to", 4), "table_k2.csv"),
    (("table", "--k", 4, "--n-from", 9, "--n-to", 12, "--kprime-from", 43, "--kprime-to", 45), "table_k4.csv"),
    (("reduce", "--k", 4), "reduce_k4.csv"),
])
def test_csv_golden(argv, golden):
    code, text = cli(*argv)
    assert code == 0
    assert text == (GOLDEN / golden).read_text()
    assert cli(*argv)[1] == text


def test_reduce_json():
    code, text = cli("reduce", "--k", 4, "--format", "json")
    data = json.loads(text)
    assert data["n0_exact"] == 39 and data["n0_analytic"] == 54
    first_open = next(e for e in data["entries"] if e["status"] == "open")
    assert (first_open["n"], first_open["q"], first_open["kprime"]) == (11, 12, 45)


def test_threshold_commands():
    code, text = cli("q0", "--n", 11, "--k", 4)
    assert code == 0 and text.startswith("q0(11,4) = 12")
    code, text = cli("n0", "--k", 4)
    assert "n0_exact(4) = 39" in text and "n0_analytic(4) = 54" in text


def test_hom_table():
    code, text = cli("hom", "--n", 5, "--k", 2, "--check")
    lines = text.splitlines()
    assert code == 0 and lines[0] == "{1,2} -> {1}" and lines[-1].startswith("ok:")
    assert len(lines) == 11


def test_construct_verify_round_trip_grid(tmp_path):
    path = tmp_path / "c.json"
    for k in range(1, 5):
        for n in range(2 * k, 11):
            for q in range(1, 4):
                for r in range(k):
                    if q * k - r < 1:
                        continue
                    assert cli("construct", "--n", n, "--k", k, "--q", q, "--r", r, "--out", path)[0] == 0
                    code, text = cli("verify", "--in", path)
                    assert code == 0, text
                    assert text.startswith(f"proper ({q * n - 2 * r},{q * k - r})")


def test_construct_to_stdout():
    code, text = cli("construct", "--n", 5, "--k", 2, "--q", 1, "--r", 1, "--out", "-")
    assert code == 0
    assert MultiColouring.from_json(json.loads(text)) == construct_stahl_colouring(5, 2, 1, 1)


def test_verify_improper_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    c = MultiColouring(KneserParams(5, 2), 5, 2, ((1, 2),) * 10)
    path.write_text(c.dumps())
    code, text = cli("verify", "--in", path)
    assert code == 2 and "{2,3}" in text and "{1,4}" in text and "colour 1" in text


@pytest.mark.parametrize("content", ["not json", '{"graph": {"n": 5, "k": 2}}',
                                     '{"graph": {"n": 5, "k": 2}, "n_colours": 5, "k_per_vertex": 2, "classes": []}'])
def test_verify_invalid_exit_3(tmp_path, content):
    path = tmp_path / "x.json"
    path.write_text(content)
    assert cli("verify", "--in", path)[0] == 3


def test_verify_missing_file_exit_3(tmp_path):
    assert cli("verify", "--in", tmp_path / "missing.json")[0] == 3


@pytest.mark.parametrize("argv", [(), ("bounds", "--n", 5), ("bounds", "--n", "x", "--k", 2, "--kprime", 1),
                                  ("frobnicate",), ("reduce", "--k", 4, "--format", "xml")])
def test_usage_errors_exit_64(argv, capsys):
    assert cli(*argv)[0] == 64
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [("bounds", "--n", 3, "--k", 2, "--kprime", 1),
                                  ("q0", "--n", 8, "--k", 4),
                                  ("construct", "--n", 5, "--k", 3, "--q", 1, "--r", 0, "--out", "-"),
                                  ("hom", "--n", 5, "--k", 2, "--r", 2)])
def test_domain_errors_exit_65(argv, capsys):
    assert cli(*argv)[0] == 65
    assert capsys.readouterr().err.startswith("error:")


def test_exact_command_and_cache(tmp_path):
    cache = tmp_path / "cache.json"
    witness = tmp_path / "w.json"
    code, text = cli("exact", "--n", 5, "--k", 2, "--kprime", 3, "--cache", cache, "--witness", witness)
    assert code == 0 and "status exact" in text and "value 8" in text and "nodes" in text
    assert cli("verify", "--in", witness)[0] == 0
    entry = ResultCache.load(cache).get(5, 2, 3)
    assert (entry.lo, entry.hi, entry.source) == (8, 8, "solver")
    code, text = cli("exact", "--n", 5, "--k", 2, "--kprime", 3, "--cache", cache)
    assert "cached" in text and "value 8" in text


def test_exact_interval_on_tiny_budget():
    code, text = cli("exact", "--n", 6, "--k", 2, "--kprime", 3, "--max-nodes", 5)
    assert code == 0 and "status interval" in text and "interval [9, 10]" in text


def test_exact_with_external_fact(tmp_path):
    cache = tmp_path / "cache.json"
    code, text = cli("exact", "--n", 10, "--k", 4, "--kprime", 45, "--cache", cache, "--use-external")
    assert code == 0 and "external-fact" in text and "value 114" in text


def test_cache_round_trip_bit_exact(tmp_path):
    path = tmp_path / "c.json"
    c = ResultCache(path)
    c.put(5, 2, 3, 8, 8, ts="2026-01-01T00:00:00+00:00")
    c.put(11, 4, 45, 124, 126, ts="2026-01-02T00:00:00+00:00")
    c.preload_external(10, 4, 49)
    c.save()
    raw = path.read_bytes()
    again = ResultCache.load(path)
    assert again.entries == c.entries
    again.save()
    assert path.read_bytes() == raw
    data = json.loads(raw)
    assert [(e["n"], e["kprime"]) for e in data["entries"]] == [(5, 3), (10, 49), (11, 45)]
    assert set(data["entries"][0]) == {"n", "k", "kprime", "lo", "hi", "source", "ts"}


def test_cache_keeps_exact_over_interval(tmp_path):
    c = ResultCache(tmp_path / "c.json")
    c.put(6, 2, 3, 10, 10)
    c.put(6, 2, 3, 9, 10)
    assert c.get(6, 2, 3).exact


def test_cache_rejects_incoherent_entries(tmp_path):
    c = ResultCache(tmp_path / "c.json")
    with pytest.raises(DomainError):
        c.put(11, 4, 45, 123, 126)
    with pytest.raises(DomainError):
        c.put(11, 4, 45, 124, 127)
    with pytest.raises(DomainError):
        c.put(5, 2, 3, 8, 8, source="guess")
    with pytest.raises(DomainError):
        c.preload_external(11, 4, 45)
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"entries": [{"n": 5, "k": 2, "kprime": 3, "lo": 7, "hi": 7,
                                             "source": "solver", "ts": "x"}]}))
    with pytest.raises(DomainError):
        ResultCache.load(path)


def test_coherence_over_solved_values():
    for n, k, kp, v in [(5, 2, 1, 3), (5, 2, 3, 8), (6, 2, 3, 10), (7, 3, 2, 5)]:
        check_coherent(CacheEntry(n, k, kp, v, v, "solver", "t"))
        rep = best_bounds(n, k, kp)
        assert rep.best_lower <= v <= rep.upper.at(rep.q)
