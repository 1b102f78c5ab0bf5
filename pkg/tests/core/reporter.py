"""
测试报告生成器
==============

JSON（完整数据）与 Markdown（按套件分组的表格）两种格式，写到 tests/reports。
"""

import json
import os
from datetime import datetime
from importlib import metadata
from pathlib import Path
from typing import Dict, List, Optional

from .base import TestResult

TRACKED_PACKAGES = ("numpy", "scipy", "mpmath", "pydantic", "pyyaml")
SLOWEST_SHOWN = 5


def numeric_environment() -> Dict[str, str]:
    """数值结果依赖的库版本与线程设置，写进报告便于复现"""
    env = {}
    for name in TRACKED_PACKAGES:
        try:
            env[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            env[name] = "missing"
    env["MINNAERT_THREADS"] = os.getenv("MINNAERT_THREADS", "auto")
    return env


class TestReporter:
    """测试报告生成器"""

    def __init__(self, output_dir: str = "tests/reports"):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def generate_report(
        self,
        results: List[TestResult],
        start_time: Optional[datetime] = None,
        end_time: Optional[datetime] = None,
        formats: List[str] = None
    ) -> Dict[str, str]:
        """生成报告，返回 {格式: 文件路径}"""
        formats = formats or ["json", "markdown"]
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        stats = self._calculate_stats(results, start_time, end_time)
        generated = {}
        if "json" in formats:
            generated["json"] = str(self._generate_json(results, stats, timestamp))
        if "markdown" in formats:
            generated["markdown"] = str(self._generate_markdown(results, stats, timestamp))
        return generated

    def _calculate_stats(self, results: List[TestResult], start_time: Optional[datetime],
                         end_time: Optional[datetime]) -> dict:
        total = len(results)
        passed = sum(1 for r in results if r.success)
        duration = (end_time - start_time).total_seconds() if start_time and end_time else 0.0
        suites: Dict[str, Dict[str, float]] = {}
        for r in results:
            entry = suites.setdefault(r.suite, {"passed": 0, "failed": 0, "duration": 0.0})
            entry["passed" if r.success else "failed"] += 1
            entry["duration"] += r.duration
        return {
            "total": total,
            "passed": passed,
            "failed": total - passed,
            "pass_rate": passed / total * 100 if total > 0 else 0,
            "duration": duration,
            "total_test_duration": sum(r.duration for r in results),
            "suites": suites,
            "environment": numeric_environment(),
            "slowest": [(f"{r.suite}.{r.name}", round(r.duration, 3))
                        for r in sorted(results, key=lambda r: r.duration, reverse=True)[:SLOWEST_SHOWN]],
            "timestamp": datetime.now().isoformat(),
        }

    def _generate_json(self, results: List[TestResult], stats: dict, timestamp: str) -> Path:
        report = {
            "stats": stats,
            "results": [
                {
                    "suite": r.suite,
                    "name": r.name,
                    "success": r.success,
                    "duration": r.duration,
                    "error": r.error,
                    "timestamp": r.timestamp,
                }
                for r in results
            ],
        }
        filepath = self.output_dir / f"report_{timestamp}.json"
        with open(filepath, "w", encoding="utf-8") as f:
            json.dump(report, f, indent=2, ensure_ascii=False)
        print(f"JSON 报告: {filepath}")
        return filepath

    def _generate_markdown(self, results: List[TestResult], stats: dict, timestamp: str) -> Path:
        lines = [
            "# 测试报告",
            "",
            f"生成时间: {stats['timestamp']}",
            "",
            "## 统计",
            "",
            f"- 总测试数: {stats['total']}",
            f"- 通过: {stats['passed']} ✅",
            f"- 失败: {stats['failed']} ❌",
            f"- 通过率: {stats['pass_rate']:.1f}%",
            f"- 总耗时: {stats['duration']:.2f}秒",
            "",
            "| 套件 | 通过 | 失败 | 耗时 |",
            "|------|------|------|------|",
        ]
        for suite, entry in stats["suites"].items():
            lines.append(f"| {suite} | {entry['passed']} | {entry['failed']} | {entry['duration']:.2f}s |")

        lines.extend(["", "## 环境", ""])
        lines.extend(f"- {name}: {version}" for name, version in stats["environment"].items())
        lines.extend(["", "## 最慢的测试", ""])
        lines.extend(f"- {name}: {seconds:.3f}s" for name, seconds in stats["slowest"])

        lines.extend(["", "## 详细结果", "", "| 套件 | 测试名称 | 状态 | 耗时 | 错误 |",
                      "|------|---------|------|------|------|"])
        for r in results:
            status = "✅ 通过" if r.success else "❌ 失败"
            error = (r.error or "-").replace("|", "\\|").replace("\n", " ")
            lines.append(f"| {r.suite} | {r.name} | {status} | {r.duration:.3f}s | {error} |")

        failed_tests = [r for r in results if not r.success]
        lines.extend(["", "## 失败详情", ""])
        if failed_tests:
            for r in failed_tests:
                lines.extend([f"### {r.suite}.{r.name}", "", f"**错误**: {r.error}", ""])
        else:
            lines.append("所有测试通过！🎉")

        filepath = self.output_dir / f"report_{timestamp}.md"
        with open(filepath, "w", encoding="utf-8") as f:
            f.write("\n".join(lines))
        print(f"Markdown 报告: {filepath}")
        return filepath
