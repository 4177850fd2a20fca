"""Validates the corpus and CLI reports against schema/lcx.schema.json."""
import json
import pathlib
import subprocess
import sys

import jsonschema

root = pathlib.Path(sys.argv[2])
cli = sys.argv[1]
schema = json.loads((root / "schema" / "lcx.schema.json").read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

failures = 0


def check(name, doc):
    global failures
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    if errors:
        failures += 1
        print(f"FAIL {name}: {errors[0].message[:300]}")
    else:
        print(f"ok   {name}")


def run(args, expect_code):
    global failures
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode != expect_code:
        failures += 1
        print(f"FAIL {' '.join(args)}: exit {proc.returncode}, expected {expect_code}")
        return None
    return json.loads(proc.stdout)


corpus = sorted((root / "corpus").glob("*.json"))
for path in corpus:
    check(path.name, json.loads(path.read_text()))

c = root / "corpus"
cases = [
    (["degree", "--n", "5", "--m", "3"], 0),
    (["degree", "--n", "3", "--m", "5"], 3),
    (["pfaffian", "--field", "F_101", "--inline", '{"matrix": [[0,1,2,3],[-1,0,4,5],[-2,-4,0,6],[-3,-5,-6,0]]}'], 0),
    (["pfaffian", "--field", "F_5", "--inline", '{"matrix": [[0,1],[1,0]]}'], 2),
    (["pfaffian", "--inline", '{"matrix": [[0,1],[-1,0]]}'], 2),
    (["complex", "classify", "--field", "Q", "--inline", '{"complex": {"coefficients": [1,0,0,0,0,0,0,0,0,1,0,0,0,0,0]}}'], 0),
    (["pencil", "analyze", "-i", str(c / "block_pencil.json")], 0),
    (["net", "analyze", "-i", str(c / "net_F7.json"), "--trials", "3"], 0),
    (["net", "analyze", "-i", str(c / "net_F101.json")], 0),
    (["net", "analyze", "-i", str(c / "net_type2_F7.json")], 0),
    (["net", "fournets", "-i", str(c / "net_fournets_F11.json")], 0),
    (["cohomology", "table", "--n", "5", "--m", "2", "--from", "-3", "--to", "3"], 0),
    (["cohomology", "table", "--n", "5", "--m", "3"], 0),
]
reports = {}
for args, code in cases:
    doc = run(args, code)
    if doc is not None:
        check(" ".join(args[:3]), doc)
        reports[" ".join(args)] = doc

# Determinism: equal configurations give byte-identical reports.
again = subprocess.run([cli, "net", "analyze", "-i", str(c / "net_F7.json"), "--trials", "3"], capture_output=True, text=True).stdout
first = subprocess.run([cli, "net", "analyze", "-i", str(c / "net_F7.json"), "--trials", "3"], capture_output=True, text=True).stdout
if again != first:
    failures += 1
    print("FAIL determinism of net analyze")
else:
    print("ok   determinism of net analyze")

print(f"{failures} failure(s)")
sys.exit(1 if failures else 0)
