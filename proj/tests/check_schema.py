"""Validate every JSON-emitting command against the published schema."""
import json
import subprocess
import sys

import jsonschema

exe, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)

runs = [
    ["table1", "--alpha33", "0.564934"],
    ["table2", "--alpha33", "0.564934"],
    ["energies", "--xi", "0.05", "--N", "4"],
    ["energies", "--rubidium87", "--omega-hz", "1e5", "--omega0-hz", "5e4"],
    ["energies", "--omega-ratio", "2", "--xi", "0.3", "--cutoff", "200", "--scheme", "hard"],
    ["scan-fig1", "--points", "5"],
    ["scatter", "--a-grid", "-0.5,0,0.5"],
    ["prefactors"],
]
for args in runs:
    out = subprocess.run([exe, *args, "--format", "json"], check=True, capture_output=True, text=True).stdout
    jsonschema.validate(json.loads(out), schema)
    print("ok", " ".join(args))
