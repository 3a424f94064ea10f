import subprocess
import sys

import pytest

from nlroute.cli import main
from nlroute.graph import load


def test_generate_and_solve(tmp_path, capsys):
    inst = tmp_path / "g.txt"
    assert main(["generate", "grid", "--rows", "4", "--cols", "4", "--seed", "3", "--out", str(inst)]) == 0
    g = load(inst)
    assert g.vertex_count == 16 and g.edge_count == 48
    trace = tmp_path / "trace.csv"
    out = tmp_path / "solve.csv"
    rc = main(["solve", "--instance", str(inst), "--source", "0", "--target", "15", "--objective", "ratio",
               "--hops", "8", "--epsilon", "0.1", "--trace", str(trace), "--out", str(out)])
    assert rc == 0
    printed = capsys.readouterr().out
    assert "\nvalue " in printed
    assert trace.read_text().splitlines()[0] == "iter,new_records,cumulative_records"
    assert out.read_text().splitlines()[0] == "network,hops,alpha,stored_paths,runtime_s,value,oracle_value,accuracy"


def test_oracle_and_gadget(tmp_path, capsys):
    base = tmp_path / "base.txt"
    base.write_text("3 2 1 0\n0 1 1\n1 2 1\n")
    gadget = tmp_path / "gadget.txt"
    assert main(["generate", "gadget", "--instance", str(base), "--source", "0", "--lambda", "1", "--out", str(gadget)]) == 0
    assert load(gadget).edges[0].weights == (4.0, 1.0)
    capsys.readouterr()
    assert main(["oracle", "--instance", str(gadget), "--source", "0", "--target", "2",
                 "--objective", "ratio", "--hops", "3"]) == 0
    assert "value 2.5" in capsys.readouterr().out


def test_delta_needs_beta(tmp_path, capsys):
    inst = tmp_path / "g.txt"
    inst.write_text("2 1 2 0\n0 1 1 2\n")
    rc = main(["solve", "--instance", str(inst), "--source", "0", "--target", "1", "--objective", "ratio",
               "--hops", "1", "--delta", "0.1"])
    assert rc == 1
    assert "declares no beta" in capsys.readouterr().err


def test_bench_module_entry_point(tmp_path):
    out = tmp_path / "r.csv"
    cmd = [sys.executable, "-m", "nlroute", "bench", "--grid", "3x3", "--objective", "deadline:Dfrac=0.9",
           "--hops", "6", "--epsilon", "0.1", "--seeds", "0-1", "--oracle", "--out", str(out)]
    subprocess.run(cmd, check=True)
    lines = out.read_text().splitlines()
    assert len(lines) == 3 and lines[1].startswith("grid3x3,6,")
