"""Shared fixtures: corpus discovery, the native g++ oracle, and the
acceptance reporter that prints one PASS/FAIL line per criterion."""

from __future__ import annotations

import shutil
import subprocess
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO_ROOT / "corpus"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

GXX = shutil.which("g++")


def corpus_programs() -> list[Path]:
    return sorted(CORPUS_DIR.glob("*.cpp"))


def stdin_for(path: Path) -> str:
    stdin_path = path.with_suffix(".stdin")
    return stdin_path.read_text(encoding="utf-8") if stdin_path.exists() else ""


@dataclass
class NativeResult:
    stdout: str
    returncode: int


def _compile_and_run_native(path: Path, build_dir: Path) -> NativeResult:
    exe = build_dir / path.stem
    compile_proc = subprocess.run(
        ["g++", "-std=c++17", "-O0", "-o", str(exe), str(path)],
        capture_output=True, text=True)
    if compile_proc.returncode != 0:
        raise RuntimeError("g++ failed on %s:\n%s" % (path.name, compile_proc.stderr))
    run_proc = subprocess.run([str(exe)], input=stdin_for(path),
                              capture_output=True, text=True, timeout=30)
    return NativeResult(run_proc.stdout, run_proc.returncode)


@pytest.fixture(scope="session")
def native_oracle(tmp_path_factory):
    """Compile and run every corpus program natively, once per session.

    Returns ({program name: NativeResult}, elapsed seconds).
    """
    if GXX is None:
        pytest.skip("g++ is not available")
    build_dir = tmp_path_factory.mktemp("native")
    programs = corpus_programs()
    start = time.monotonic()
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda p: _compile_and_run_native(p, build_dir), programs))
    elapsed = time.monotonic() - start
    return {p.name: r for p, r in zip(programs, results)}, elapsed


@pytest.fixture
def acceptance(request):
    """Report an acceptance criterion result as a visible one-liner."""
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def report(name: str, passed: bool, detail: str = "") -> None:
        line = "ACCEPTANCE %s: %s" % (name, "PASS" if passed else "FAIL")
        if detail:
            line += " (%s)" % detail
        if reporter is not None:
            reporter.ensure_newline()
            reporter.write_line(line)
        print(line)
        assert passed, line

    return report
