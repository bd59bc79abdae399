from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any


@dataclass
class TestReport:
    """Outcome of one statistical or exact check, reproducible from its seeds."""

    __test__ = False  # keep pytest from collecting this class

    name: str
    statistics: dict[str, Any] = field(default_factory=dict)
    thresholds: dict[str, Any] = field(default_factory=dict)
    passed: bool = True
    sample_sizes: dict[str, int] = field(default_factory=dict)
    seeds: dict[str, Any] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)
    verdict: str = ""

    def __post_init__(self):
        if not self.verdict:
            self.verdict = "PASS" if self.passed else "FAIL"

    def __bool__(self) -> bool:
        return self.passed

    def line(self) -> str:
        stats = ", ".join(f"{k}={_fmt(v)}" for k, v in self.statistics.items())
        return f"[{self.verdict}] {self.name}: {stats}"

    def to_record(self) -> dict[str, Any]:
        return _plain(asdict(self))

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_record(), **kw)


def merge_reports(name: str, reports: list[TestReport], bonferroni: bool = False) -> TestReport:
    """Combine sub-reports; with ``bonferroni`` the verdict uses the adjusted smallest p-value."""
    passed = all(r.passed for r in reports)
    stats: dict[str, Any] = {"checks": len(reports), "failed": sum(not r.passed for r in reports)}
    thresholds: dict[str, Any] = {}
    if bonferroni:
        pvals = [v for r in reports for k, v in r.statistics.items() if k.startswith("p")]
        alphas = [r.thresholds.get("alpha") for r in reports if "alpha" in r.thresholds]
        if pvals and alphas:
            adj = min(1.0, min(pvals) * len(pvals))
            stats["min_p_bonferroni"] = adj
            thresholds["alpha"] = alphas[0]
            stats["bonferroni_pass"] = adj > alphas[0]
    return TestReport(name=name, statistics=stats, thresholds=thresholds, passed=passed,
                      details={"reports": [r.to_record() for r in reports]})


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.4g}"
    return str(v)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, Fraction):
        return {"numerator": obj.numerator, "denominator": obj.denominator}
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj
