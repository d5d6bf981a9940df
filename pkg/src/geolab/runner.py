"""Run the checks of a scene and serialize the results."""
from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from . import __version__
from .certificate import ERROR, Certificate
from .checks import REGISTRY, SAMPLED
from .dsl import Scene
from .structures import sample_points

DEFAULT_SEED = 20240611
DEFAULT_SAMPLES = 4
# candidate points drawn per requested sample, so poles can be skipped
POLE_RETRIES = 8


@dataclass
class Record:
    name: str
    verdict: str
    witness: list[str] = field(default_factory=list)
    certificate: list[str] = field(default_factory=list)
    ms: float = 0.0


@dataclass
class Report:
    seed: int
    samples: int
    version: str = __version__
    records: list[Record] = field(default_factory=list)

    @property
    def verdicts(self) -> list[str]:
        return [r.verdict for r in self.records]


def run_check(scene: Scene, index: int, seed: int, sample_count: int) -> Certificate:
    decl = scene.checks[index]
    spec = REGISTRY[decl.name]
    args = [scene.value(a) for a in decl.args]
    kwargs = dict(decl.options)
    if decl.name in SAMPLED:
        rng = random.Random(f"{seed}:{index}")
        count = kwargs.setdefault("samples", sample_count)
        kwargs["points"] = sample_points(scene.chart, count * POLE_RETRIES, rng)
    return spec.run(*args, **kwargs)


def run_checks(scene: Scene, seed: int = DEFAULT_SEED, sample_count: int = DEFAULT_SAMPLES,
               timing: bool = False) -> Report:
    """One record per declared check, in order.  Exceptions become ``error`` records.

    Wall time is recorded only when ``timing`` is set, so reports are
    byte-identical across runs by default.
    """
    report = Report(seed, sample_count)
    for index, decl in enumerate(scene.checks):
        start = time.perf_counter()
        try:
            cert = run_check(scene, index, seed, sample_count)
            rec = Record(decl.label, cert.verdict, [str(w) for w in cert.witness],
                         [str(c) for c in cert.certificate])
        except Exception as exc:  # a failing checker never aborts the run
            rec = Record(decl.label, ERROR, [f"{type(exc).__name__}: {exc}"], [])
        if timing:
            rec.ms = round((time.perf_counter() - start) * 1000, 3)
        report.records.append(rec)
    return report


def report_dict(report: Report) -> dict:
    return {
        "meta": {"seed": report.seed, "samples": report.samples, "version": report.version},
        "checks": [{"name": r.name, "verdict": r.verdict, "witness": list(r.witness),
                    "certificate": list(r.certificate), "ms": r.ms} for r in report.records],
    }


def _text(report: Report) -> str:
    out = [f"geolab {report.version}  seed={report.seed}  samples={report.samples}", ""]
    width = max([len(r.name) for r in report.records] + [5])
    out.append(f"{'check':<{width}}  {'verdict':<12}  ms")
    out.append("-" * (width + 20))
    for r in report.records:
        out.append(f"{r.name:<{width}}  {r.verdict:<12}  {r.ms:g}")
        for w in r.witness:
            out.append(f"{'':<{width}}    witness: {w}")
        for c in r.certificate:
            out.append(f"{'':<{width}}    cert:    {c}")
    if not report.records:
        out.append("(no checks)")
    return "\n".join(out) + "\n"


def emit_report(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report_dict(report), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "text":
        return _text(report).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def exit_code(report: Report, strict: bool = False) -> int:
    """0 when everything passes, 1 on any fail, 2 on any error."""
    verdicts = report.verdicts
    if ERROR in verdicts:
        return 2
    bad = {"fail", "generic-pass"} if strict else {"fail"}
    return 1 if any(v in bad for v in verdicts) else 0
