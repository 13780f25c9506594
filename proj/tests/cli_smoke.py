"""Runs the fjopt CLI on a small graph and checks its outputs.

usage: cli_smoke.py <fjopt> <report schema>
"""
import csv
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
schema = json.loads(Path(schema_path).read_text())
failures = []


def run(*args, ok=True):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if ok and proc.returncode != 0:
        failures.append(f"{' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
    if not ok and proc.returncode == 0:
        failures.append(f"{' '.join(args)}: expected failure")
    return proc


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)
    graph = tmp / "g.txt"
    graph.write_text("# ring with chords\n" + "".join(
        f"{i} {(i + 1) % 30}\n{i} {(i * 7) % 30}\n" for i in range(30)))

    proc = run("compare", "--graph", str(graph), "--k", "1,3", "--l", "50", "--repeats", "2",
               "--csv", str(tmp / "r.csv"))
    if proc.returncode == 0:
        report = json.loads(proc.stdout)
        try:
            jsonschema.validate(report, schema)
        except jsonschema.ValidationError as e:
            failures.append(f"report schema: {e.message}")
        if len(report["cells"]) != 6 * 2 * 2:
            failures.append(f"expected 24 cells, got {len(report['cells'])}")
        rows = list(csv.DictReader((tmp / "r.csv").open()))
        if len(rows) != len(report["cells"]):
            failures.append("CSV and JSON cell counts differ")

    plan = tmp / "plan.json"
    plan.write_text(json.dumps({"epsilon": 0.5, "delta": 0.1, "base_seed": 2}))
    proc = run("compare", "--graph", str(graph), "--k", "2", "--plan", str(plan),
               "--methods", "exact,fast")
    if proc.returncode == 0 and json.loads(proc.stdout)["plan"]["l"] != 6:
        failures.append("plan file not applied")

    for mode in ("exact", "sample"):
        out = tmp / f"rho_{mode}.csv"
        if run("centrality", "--graph", str(graph), "--mode", mode, "--l", "40",
               "--out", str(out)).returncode == 0:
            rho = [float(r["rho"]) for r in csv.DictReader(out.open())]
            if len(rho) != 30 or abs(sum(rho) - 1.0) > 1e-9:
                failures.append(f"centrality {mode}: bad output")

    proc = run("bench-sampler", "--sizes", "200,400", "--l", "3")
    if proc.returncode == 0 and [r["n"] for r in json.loads(proc.stdout)] != [200, 400]:
        failures.append("bench-sampler rows")

    run("compare", "--graph", str(tmp / "missing.txt"), ok=False)
    run("compare", "--graph", str(graph), "--l", "0", ok=False)
    run("compare", "--graph", str(graph), "--k", "31", ok=False)
    run("compare", "--graph", str(graph), "--methods", "exact,magic", ok=False)
    run("compare", "--graph", str(graph), "--l", "5", "--epsilon", "0.1", "--delta", "0.1",
        ok=False)

for f in failures:
    print("FAIL", f)
print("ok" if not failures else f"{len(failures)} failures")
sys.exit(1 if failures else 0)
