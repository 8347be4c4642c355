import json

import pytest

from .readme_examples import golden_path, readme_commands, run_command

COMMANDS = readme_commands()


def test_readme_has_examples():
    assert len(COMMANDS) >= 15
    assert all(golden_path(c).exists() for c in COMMANDS), "run scripts/regen_golden.py"


@pytest.mark.parametrize("command", COMMANDS)
def test_readme_example_matches_golden(command):
    golden = json.loads(golden_path(command).read_text(encoding="utf-8"))
    got = run_command(command)
    assert got["exit_code"] == golden["exit_code"]
    assert got["stdout"] == golden["stdout"]
