"""Run each subcommand with --json and validate against docs/schema; also
checks that a cached rerun prints the same bytes."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CASES = [
    ("lattice_info", ["lattice", "info", "--lattice", "D4"]),
    ("lattice_info", ["lattice", "info", "--lattice", "A1(-1)"]),
    ("theta", ["theta", "--lattice", "A2", "--max", "3"]),
    ("weilrep", ["weilrep", "--lattice", "A3", "--word", "STS"]),
    ("heegner", ["heegner", "--level", "6", "--residue", "1", "--disc", "23", "--cross-check"]),
    ("heegner", ["heegner", "--level", "5", "--residue", "1", "--disc", "4"]),
    ("eisenstein", ["eisenstein", "--series", "ek", "--weight", "6", "--max", "5"]),
    ("eisenstein", ["eisenstein", "--series", "hurwitz", "--max", "12"]),
    ("eisenstein", ["eisenstein", "--series", "cohen", "--s", "3", "--max", "8"]),
    ("density", ["density", "--lattice", "E8", "--prime", "2", "--m", "3"]),
    ("verify", ["verify", "--suite", "orbits"]),
]


def main():
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    failures = 0
    with tempfile.TemporaryDirectory() as cache:
        for name, args in CASES:
            schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
            cmd = [exe, "--json", "--cache-dir", cache, *args]
            runs = [subprocess.run(cmd, capture_output=True, text=True) for _ in range(2)]
            label = " ".join(args)
            try:
                for r in runs:
                    if r.returncode != 0:
                        raise AssertionError(f"exit {r.returncode}: {r.stderr.strip()}")
                    jsonschema.validate(json.loads(r.stdout), schema)
                if runs[0].stdout != runs[1].stdout:
                    raise AssertionError("cached rerun differs")
                print(f"ok   {label}")
            except (AssertionError, jsonschema.ValidationError, json.JSONDecodeError) as e:
                failures += 1
                print(f"FAIL {label}: {str(e).splitlines()[0]}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
