"""Runs the driver, validates its JSON against docs/report.schema.json and checks
that two runs are byte-identical."""
import json
import subprocess
import sys

import jsonschema

driver, schema_path, *args = sys.argv[1:]
first = subprocess.run([driver, *args], capture_output=True, text=True)
second = subprocess.run([driver, *args], capture_output=True, text=True)
if first.stdout != second.stdout:
    sys.exit("output differs between identical runs")
report = json.loads(first.stdout)
with open(schema_path) as f:
    jsonschema.validate(report, json.load(f))
if report["exit_code"] != first.returncode:
    sys.exit(f"report says exit {report['exit_code']}, process returned {first.returncode}")
print(f"{report['command']}: schema ok, deterministic, exit {first.returncode}")
