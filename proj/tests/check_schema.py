"""Validate dataset files against the dataset JSON Schema."""
import json
import sys

import jsonschema


def main(argv):
    if len(argv) < 3:
        print("usage: check_schema.py SCHEMA DATASET...", file=sys.stderr)
        return 2
    with open(argv[1]) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failed = 0
    for path in argv[2:]:
        with open(path) as f:
            errors = sorted(validator.iter_errors(json.load(f)), key=lambda e: list(e.path))
        for e in errors:
            print(f"{path}: /{'/'.join(map(str, e.path))}: {e.message}")
        failed += bool(errors)
        if not errors:
            print(f"{path}: ok")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
