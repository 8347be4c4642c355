"""Shared by the README test and scripts/regen_golden.py."""
import hashlib
import re
import shlex
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
README = ROOT / "README.md"
GOLDEN = ROOT / "tests" / "golden"


def readme_commands() -> list[str]:
    """Every ``$ ltforge ...`` line inside a fenced block, in order."""
    out, fenced = [], False
    for line in README.read_text(encoding="utf-8").splitlines():
        if line.startswith("```"):
            fenced = not fenced
        elif fenced and line.startswith("$ ltforge "):
            out.append(line[2:])
    return out


def golden_path(command: str) -> Path:
    argv = shlex.split(command)[1:]
    slug = re.sub(r"[^a-z0-9]+", "-", " ".join(argv[:1]).lower()).strip("-")
    digest = hashlib.sha1(command.encode()).hexdigest()[:8]
    return GOLDEN / f"{slug}-{digest}.json"


def run_command(command: str) -> dict:
    argv = shlex.split(command)[1:]
    proc = subprocess.run([sys.executable, "-m", "ltforge", *argv], cwd=ROOT,
                          capture_output=True, text=True, encoding="utf-8")
    return {"command": command, "exit_code": proc.returncode, "stdout": proc.stdout}
