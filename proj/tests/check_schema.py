"""Runs every JSON-producing subcommand and validates the output against the schema."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path, data_dir = sys.argv[1:4]
schema = json.load(open(schema_path))
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["classify", "--catalog", "logistic", "--params", "a=3.2"],
    ["classify", "--catalog", "logistic", "--params", "a=3.9"],
    ["classify", "--expr", "a*x*(1-x)", "--params", "a=5"],
    ["classify", "--catalog", "gamma_sine", "--params", "a=1.05", "--scan", "0:3:0.1"],
    ["cascade", "--catalog", "xpow_a_over_x", "--depth", "4"],
    ["cascade", "--catalog", "logistic", "--depth", "3", "--superstable"],
    ["diagram", "--catalog", "logistic", "--sweep", "2.5:4.2", "--grid", "5", "--samples", "4"],
    ["schwarzian", "--catalog", "logistic", "--params", "a=3", "--at", "0.2"],
    ["schwarzian", "--expr", "x^x", "--domain", "0.001:0.999", "--params", "a=1", "--interval", "0.001:0.999"],
    ["readiness", "--catalog", "octic_two_max", "--params", "a=1"],
    ["widths", "--catalog", "logistic", "--params", "a=3.5", "--level", "3"],
    ["feigenvalue", "--degree", "2", "--depth", "4"],
    ["directional", "--catalog", "pic12_h", "--params", "a=1,b=1", "--dir", "1,0", "--depth", "3"],
    ["suite", data_dir + "/quick.suite"],
    ["suite", data_dir + "/quick.suite", "--timing"],
]

failed = 0
for args in runs:
    proc = subprocess.run([cli] + args, capture_output=True, text=True)
    if proc.returncode != 0:
        print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
        failed += 1
        continue
    doc = json.loads(proc.stdout)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        print(f"FAIL {' '.join(args)}: {errors[0].message} at {list(errors[0].path)}")
        failed += 1
    else:
        print(f"ok   {' '.join(args)}")

sys.exit(1 if failed else 0)
