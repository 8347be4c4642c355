#!/usr/bin/env python3
"""Rewrite tests/golden/ from the CLI examples in README.md."""
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from tests.readme_examples import GOLDEN, golden_path, readme_commands, run_command  # noqa: E402


def main() -> int:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    keep = set()
    for command in readme_commands():
        path = golden_path(command)
        record = run_command(command)
        path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        keep.add(path)
        print(f"{record['exit_code']:>3}  {path.name}  {command}")
    for stale in GOLDEN.glob("*.json"):
        if stale not in keep:
            stale.unlink()
            print(f"removed {stale.name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
