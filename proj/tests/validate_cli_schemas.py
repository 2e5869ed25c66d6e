"""Run every CLI subcommand and validate its JSON against docs/schema."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

CASES = [
    ("local", ["local", "--max-degree", "19"]),
    ("local", ["local", "--max-degree", "0", "--meta"]),
    ("global", ["global", "--max-n", "100"]),
    ("summatory", ["summatory", "--max-n", "10000"]),
    ("ideals", ["ideals", "--p", "3", "--n", "3"]),
    ("ideals", ["ideals", "--p", "2", "--n", "3", "--list"]),
    ("orbits", ["orbits", "--p", "2", "--n", "4"]),
    ("orbits", ["orbits", "--p", "3", "--n", "3", "--list", "--meta"]),
    ("canonical", ["canonical", "--p", "2", "--matrix", "2,0,0,0,2,1,0,0,2"]),
    ("canonical", ["canonical", "--p", "2", "--matrix", "2,0,0,0,2,1,0,0,2", "--fallback"]),
    ("canonical", ["canonical", "--p", "3", "--tuple", "1,0,1,0,0"]),
    ("verify", ["verify", "--p", "2,3", "--max-n", "3"]),
]


def main() -> int:
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    resources = []
    for path in schema_dir.glob("*.schema.json"):
        resources.append((path.name, Resource.from_contents(json.loads(path.read_text()))))
    registry = Registry().with_resources(resources)

    failures = 0
    for name, args in CASES:
        schema = json.loads((schema_dir / f"{name}.schema.json").read_text())
        first = subprocess.run([exe, *args], capture_output=True, text=True)
        if first.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {first.returncode}: {first.stderr.strip()}")
            failures += 1
            continue
        try:
            jsonschema.validate(json.loads(first.stdout), schema, registry=registry)
        except jsonschema.ValidationError as e:
            print(f"FAIL {' '.join(args)}: {e.message}")
            failures += 1
            continue
        if "--meta" not in args:
            second = subprocess.run([exe, *args], capture_output=True, text=True)
            if second.stdout != first.stdout:
                print(f"FAIL {' '.join(args)}: output differs between runs")
                failures += 1
                continue
        print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
