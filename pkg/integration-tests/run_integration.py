#!/usr/bin/env python3
# integration-tests/run_integration.py
"""
End-to-end checks of the spin7 CLI.

Every steps/*.yaml file is one group of steps. A step runs the CLI once in a
fresh temporary directory and checks:

  expect_exit   exit code (default 0)
  expect        regexes that must match stdout + stderr
  forbid        regexes that must not match stdout + stderr
  out           a file the step writes ({STEP_TMP}/...)
  contains      regexes that must match that file
  json          dotted path -> value, read from `out` if given, else stdout

Placeholders: {CLI} expands to the CLI command; {STEP_TMP}, {DATA} and
{UNITTEST_DATA} expand to directories.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import shutil
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

REPO_ROOT = Path(__file__).resolve().parent.parent
if str(REPO_ROOT / "py") not in sys.path:
    sys.path.insert(0, str(REPO_ROOT / "py"))

from spin7_tools.common import load_yaml_file  # noqa: E402
from spin7_tools.errors import Spin7Error  # noqa: E402

_PLACEHOLDER = re.compile(r"\{([A-Z_]+)\}")
_MISSING = object()


class StepError(ValueError):
    pass


def _strings(raw: Any, what: str) -> list[str]:
    if raw is None:
        return []
    if not isinstance(raw, list):
        raise StepError(f"'{what}' must be a list")
    return [str(x) for x in raw]


@dataclass
class Step:
    group: str
    name: str
    source: str
    argv: list[str]
    expect_exit: int = 0
    expect: list[str] = field(default_factory=list)
    forbid: list[str] = field(default_factory=list)
    out: str | None = None
    contains: list[str] = field(default_factory=list)
    json_checks: dict[str, Any] = field(default_factory=dict)
    timeout_s: float = 120.0

    @property
    def title(self) -> str:
        return f"{self.group} :: {self.name}"

    @classmethod
    def from_mapping(cls, raw: Any, *, group: str, source: str) -> Step:
        if not isinstance(raw, dict):
            raise StepError("a step must be a mapping")
        name = raw.get("name")
        if not isinstance(name, str) or not name.strip():
            raise StepError("missing 'name'")
        argv = raw.get("argv")
        if not isinstance(argv, list) or not argv:
            raise StepError(f"{name}: 'argv' must be a non-empty list")
        checks = raw.get("json") or {}
        if not isinstance(checks, dict):
            raise StepError(f"{name}: 'json' must map dotted paths to values")
        out = raw.get("out")
        if out is not None and not isinstance(out, str):
            raise StepError(f"{name}: 'out' must be a path")
        if raw.get("contains") and out is None:
            raise StepError(f"{name}: 'contains' needs 'out'")
        return cls(
            group=group,
            name=name,
            source=source,
            argv=[str(a) for a in argv],
            expect_exit=int(raw.get("expect_exit", 0)),
            expect=_strings(raw.get("expect"), "expect"),
            forbid=_strings(raw.get("forbid"), "forbid"),
            out=out,
            contains=_strings(raw.get("contains"), "contains"),
            json_checks={str(k): v for k, v in checks.items()},
            timeout_s=float(raw.get("timeout_s", 120.0)),
        )


def load_steps(path: Path) -> list[Step]:
    doc = load_yaml_file(path)
    group = doc.get("group")
    steps = doc.get("steps")
    if not isinstance(group, str) or not group.strip():
        raise StepError(f"{path.name}: missing 'group'")
    if not isinstance(steps, list):
        raise StepError(f"{path.name}: 'steps' must be a list")
    out: list[Step] = []
    for i, raw in enumerate(steps):
        try:
            out.append(Step.from_mapping(raw, group=group, source=path.name))
        except StepError as e:
            raise StepError(f"{path.name}: step {i}: {e}") from None
    return out


def discover(steps_dir: Path) -> list[Step]:
    files = sorted(p for p in steps_dir.glob("*.y*ml") if p.is_file())
    if not files:
        raise SystemExit(f"error: no step files under {steps_dir}")
    steps: list[Step] = []
    for f in files:
        steps.extend(load_steps(f))
    return steps


def substitute(text: str, env: Mapping[str, str]) -> str:
    return _PLACEHOLDER.sub(lambda m: env.get(m.group(1), m.group(0)), text)


def expand_argv(step: Step, cli: list[str], env: Mapping[str, str]) -> list[str]:
    out: list[str] = []
    for tok in step.argv:
        if tok == "{CLI}":
            out.extend(cli)
        else:
            out.append(substitute(tok, env))
    return out


def lookup(obj: Any, dotted: str) -> Any:
    """'counts.orbits' or 'checks.0.ok'; _MISSING when the path does not resolve."""
    cur = obj
    for part in dotted.split("."):
        if isinstance(cur, dict) and part in cur:
            cur = cur[part]
        elif isinstance(cur, list) and part.lstrip("-").isdigit() and -len(cur) <= int(part) < len(cur):
            cur = cur[int(part)]
        else:
            return _MISSING
    return cur


def check_json(text: str, checks: Mapping[str, Any]) -> str | None:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        return f"output is not JSON ({e.msg} at line {e.lineno})"
    for path, want in checks.items():
        got = lookup(data, path)
        if got is _MISSING:
            return f"json path {path!r} not found"
        if got != want:
            return f"json {path} = {got!r}, expected {want!r}"
    return None


@dataclass
class StepResult:
    step: Step
    ok: bool
    reason: str = ""
    output: str = ""
    seconds: float = 0.0
    workdir: str | None = None


def _evaluate(step: Step, cp: subprocess.CompletedProcess, tmp: str, env: Mapping[str, str]) -> str | None:
    combined = (cp.stdout or "") + (cp.stderr or "")
    if cp.returncode != step.expect_exit:
        return f"exit code {cp.returncode}, expected {step.expect_exit}"
    for pat in step.expect:
        if not re.search(pat, combined, re.MULTILINE):
            return f"missing expected pattern {pat!r}"
    for pat in step.forbid:
        if re.search(pat, combined, re.MULTILINE):
            return f"matched forbidden pattern {pat!r}"

    payload = cp.stdout or ""
    if step.out is not None:
        path = Path(substitute(step.out, {**env, "STEP_TMP": tmp}))
        if not path.is_file():
            return f"expected output file {path} was not written"
        payload = path.read_text(encoding="utf-8", errors="replace")
        for pat in step.contains:
            if not re.search(pat, payload, re.MULTILINE):
                return f"{path.name} is missing pattern {pat!r}"
    if step.json_checks:
        return check_json(payload, step.json_checks)
    return None


def run_step(step: Step, cli: list[str], env: Mapping[str, str], *, keep_temp: bool) -> StepResult:
    tmp = tempfile.mkdtemp(prefix="spin7-step-")
    argv = expand_argv(step, cli, {**env, "STEP_TMP": tmp})
    proc_env = dict(os.environ)
    proc_env["PYTHONPATH"] = os.pathsep.join(
        p for p in (str(REPO_ROOT / "py"), proc_env.get("PYTHONPATH", "")) if p
    )
    print(f"  -> {step.name}")
    print(f"     $ {' '.join(argv)}")

    start = time.monotonic()
    try:
        cp = subprocess.run(
            argv,
            capture_output=True,
            text=True,
            timeout=step.timeout_s,
            cwd=REPO_ROOT,
            env=proc_env,
        )
    except subprocess.TimeoutExpired:
        return StepResult(step, False, f"timed out after {step.timeout_s:g}s", workdir=tmp)
    elapsed = time.monotonic() - start

    reason = _evaluate(step, cp, tmp, env)
    result = StepResult(
        step,
        reason is None,
        reason or "",
        output=((cp.stdout or "") + (cp.stderr or "")).rstrip(),
        seconds=elapsed,
        workdir=tmp,
    )
    if result.ok and not keep_temp:
        shutil.rmtree(tmp, ignore_errors=True)
        result.workdir = None
    return result


def select(steps: list[Step], files: list[str], keywords: list[str]) -> list[Step]:
    if files:
        wanted = {f.strip() for f in files}
        steps = [s for s in steps if s.source in wanted]
    if keywords:
        needles = [k.lower() for k in keywords]
        steps = [s for s in steps if any(k in s.title.lower() for k in needles)]
    return steps


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description="Run end-to-end checks of the spin7 CLI from YAML steps.")
    ap.add_argument("--cli", default=None, help="CLI command (default: python -m spin7_tools.cli)")
    ap.add_argument("--jobs", type=int, default=None, help="Pass --jobs N to every CLI call")
    ap.add_argument("--debug", action="store_true", help="Pass --debug to every CLI call")
    ap.add_argument("--steps-dir", type=Path, default=Path(__file__).with_name("steps"))
    ap.add_argument("--file", action="append", default=[], help="Only steps from this YAML file (repeatable)")
    ap.add_argument("-k", "--keyword", action="append", default=[], help="Only steps whose 'group :: name' contains this")
    ap.add_argument("--list", action="store_true", help="List selected steps and exit")
    ap.add_argument("--show-output", action="store_true", help="Print CLI output for passing steps too")
    ap.add_argument("--keep-temp", action="store_true", help="Keep step directories of passing steps")
    ap.add_argument("--fail-fast", action="store_true", help="Stop at the first failing step")
    args = ap.parse_args(argv)

    cli = args.cli.split() if args.cli else [sys.executable, "-m", "spin7_tools.cli"]
    if args.jobs:
        cli += ["--jobs", str(args.jobs)]
    if args.debug:
        cli.append("--debug")
    env = {
        "DATA": str(Path(__file__).with_name("data")),
        "UNITTEST_DATA": str(REPO_ROOT / "py" / "unittest_data"),
    }

    try:
        steps = select(discover(args.steps_dir), args.file, args.keyword)
    except (Spin7Error, StepError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    if args.list:
        for s in steps:
            print(f"- [{s.source}] {s.title}")
        return 0
    if not steps:
        print("No steps selected.")
        return 2

    print(f"CLI: {' '.join(cli)}")
    results: list[StepResult] = []
    group = None
    for step in steps:
        if step.group != group:
            group = step.group
            print(f"\n=== {group} ===")
        r = run_step(step, cli, env, keep_temp=args.keep_temp)
        results.append(r)
        if r.ok:
            if args.show_output and r.output:
                print(r.output)
            print(f"     OK ({r.seconds:.1f}s)")
            continue
        print(f"     FAIL: {r.reason}")
        if r.output:
            print(r.output)
        if r.workdir:
            print(f"     step dir kept: {r.workdir}")
        if args.fail_fast:
            break

    failed = [r for r in results if not r.ok]
    print(f"\n{len(results) - len(failed)}/{len(results)} steps passed")
    for r in failed:
        print(f"  FAILED [{r.step.source}] {r.step.title}: {r.reason}")
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
