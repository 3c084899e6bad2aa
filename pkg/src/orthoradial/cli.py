"""Command-line entry point.

Exit codes: 0 success or valid, 1 a negative answer (violations, monotone
cycle, not valid), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

from . import instance
from .core import check_conditions
from .errors import ConditionsViolated, GenerationFailed, NotValid, OrthoRadialError, ParseError

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


@dataclass
class RunReport:
    command: str
    status: str
    exit_code: int = OK
    details: dict = field(default_factory=dict)
    witness: dict | None = None
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        doc = {"command": self.command, "status": self.status, "exit_code": self.exit_code}
        if self.details:
            doc["details"] = self.details
        if self.witness is not None:
            doc["witness"] = self.witness
        doc["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        doc = json.loads(text)
        return cls(
            doc["command"], doc["status"], doc["exit_code"],
            doc.get("details", {}), doc.get("witness"), doc.get("timings", {}),
        )

    def text(self) -> str:
        lines = [f"{self.command}: {self.status}"]
        for k, v in self.details.items():
            if isinstance(v, list):
                lines.extend(f"  {k}: {x}" for x in v)
            else:
                lines.append(f"  {k}: {v}")
        if self.witness is not None:
            lines.append("  cycle: " + " ".join(self.witness["darts"]))
            lines.append("  labels: " + " ".join(str(x) for x in self.witness["labels"]))
        for k, v in self.timings.items():
            lines.append(f"  time {k}: {v:.3f}s")
        return "\n".join(lines)


@contextmanager
def _timed(report: RunReport, stage: str):
    t = time.perf_counter()
    yield
    report.timings[stage] = time.perf_counter() - t


def _load(report: RunReport, path):
    with _timed(report, "parse"):
        return instance.load(path)


def _write(path, text: str) -> None:
    if str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_check(args) -> RunReport:
    report = RunReport("check", "ok")
    rep = _load(report, args.file)
    with _timed(report, "check"):
        violations = check_conditions(rep)
    if violations:
        report.status = "violations"
        report.exit_code = NEGATIVE
        report.details["violations"] = [str(v) for v in violations]
    return report


def cmd_validate(args) -> RunReport:
    from .validity import is_valid

    report = RunReport("validate", "valid")
    rep = _load(report, args.file)
    with _timed(report, "validate"):
        result = is_valid(rep, jobs=args.jobs)
    if not result.valid:
        report.status = "invalid"
        report.exit_code = NEGATIVE
        report.details["kind"] = result.verdict
        if args.witness and result.witness is not None:
            g = rep.graph
            report.witness = {
                "darts": [g.dart_key(d) for d in result.witness.cycle],
                "labels": list(result.witness.labels),
            }
    return report


def cmd_rectangulate(args) -> RunReport:
    from .rectangulate import rectangulate

    report = RunReport("rectangulate", "ok")
    rep = _load(report, args.file)
    with _timed(report, args.mode):
        out, amap = rectangulate(rep, args.mode)
    report.details["mode"] = args.mode
    report.details["vertices"] = out.graph.n_vertices
    report.details["added_vertices"] = out.graph.n_vertices - rep.graph.n_vertices
    if args.out:
        base = Path(args.out)
        instance.dump(out, base)
        map_path = base.with_name(base.stem + ".map.json")
        map_path.write_text(amap.to_json() + "\n")
        report.details["written"] = [str(base), str(map_path)]
    return report


def cmd_draw(args) -> RunReport:
    from .layout import assign_coordinates, emit_svg, project_back, realize_check
    from .rectangulate import rectangulate

    report = RunReport("draw", "ok")
    rep = _load(report, args.file)
    with _timed(report, "rectangulate"):
        star, amap = rectangulate(rep, args.mode)
    with _timed(report, "coordinates"):
        grid = assign_coordinates(star)
        drawing = project_back(grid, amap, star)
    if not realize_check(rep, drawing):
        raise OrthoRadialError("projected drawing does not realize the input")
    report.details["width"] = drawing.width
    report.details["rows"] = max(r for _, r in drawing.coords.values())
    if args.coords:
        _write(args.coords, drawing.to_json() + "\n")
    if args.svg:
        _write(args.svg, emit_svg(drawing))
    return report


def cmd_gen(args) -> RunReport:
    from .errors import CapExceeded
    from .oracle import oracle_is_valid, random_instance

    report = RunReport("gen", "ok")
    with _timed(report, "generate"):
        rep = random_instance(args.n, args.seed, args.kind)
    text = instance.dumps(rep)
    if not args.out:
        sys.stdout.write(text)
        return report
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    name = f"n{args.n}_s{args.seed}_{args.kind}.json"
    (out / name).write_text(text)
    with _timed(report, "oracle"):
        try:
            v = oracle_is_valid(rep, cap=args.cap)
            verdict = "valid" if v.valid else ("decreasing" if v.decreasing else "increasing")
        except CapExceeded:
            verdict = "unknown"
    manifest_path = out / "manifest.json"
    manifest = json.loads(manifest_path.read_text()) if manifest_path.exists() else {}
    manifest[name] = {"n": args.n, "seed": args.seed, "kind": args.kind, "oracle": verdict}
    manifest_path.write_text(json.dumps(dict(sorted(manifest.items())), indent=1) + "\n")
    report.details["file"] = str(out / name)
    report.details["oracle"] = verdict
    return report


def _at_least_3(text: str) -> int:
    n = int(text)
    if n < 3:
        raise argparse.ArgumentTypeError("n must be at least 3")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    p = argparse.ArgumentParser(prog="orthoradial", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="check the angle-sum and rotation conditions")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("validate", parents=[common], help="search for monotone cycles")
    s.add_argument("file")
    s.add_argument("--witness", action="store_true", help="print the offending cycle with labels")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_validate)

    modes = ["naive", "binary", "two_phase"]
    s = sub.add_parser("rectangulate", parents=[common], help="augment until all faces are rectangles")
    s.add_argument("file")
    s.add_argument("--mode", choices=modes, default="two_phase")
    s.add_argument("--out", help="output instance; the map goes next to it as <stem>.map.json")
    s.set_defaults(func=cmd_rectangulate)

    s = sub.add_parser("draw", parents=[common], help="compute a grid drawing")
    s.add_argument("file")
    s.add_argument("--mode", choices=modes, default="two_phase")
    s.add_argument("--svg", help="SVG output path, - for stdout")
    s.add_argument("--coords", help="coordinate JSON output path, - for stdout")
    s.set_defaults(func=cmd_draw)

    s = sub.add_parser("gen", parents=[common], help="generate an instance")
    s.add_argument("n", type=_at_least_3)
    s.add_argument("seed", type=int)
    s.add_argument("kind", choices=["valid", "mutated"])
    s.add_argument("--out", help="corpus directory; instance plus manifest entry")
    s.add_argument("--cap", type=int, default=200_000, help="cycle cap for the manifest verdict")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except (ParseError, ConditionsViolated, FileNotFoundError, IsADirectoryError) as exc:
        report = RunReport(args.command, "error", INPUT_ERROR, {"error": f"{type(exc).__name__}: {exc}"})
    except NotValid as exc:
        report = RunReport(args.command, "not valid", NEGATIVE, {"error": str(exc)})
    except GenerationFailed as exc:
        report = RunReport(args.command, "error", NEGATIVE, {"error": str(exc)})
    # Reports go to stderr whenever stdout carries data or the run failed.
    data_on_stdout = (args.command == "gen" and not args.out) or (
        args.command == "draw" and "-" in (args.coords, args.svg)
    )
    stream = sys.stderr if data_on_stdout or (report.exit_code and not args.json) else sys.stdout
    print(report.to_json() if args.json else report.text(), file=stream)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
