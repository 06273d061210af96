"""
Reporting utilities: named PASS/FAIL checks and their plain/tree renderings.
"""
import json
import logging
import os
import platform
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from config import settings
from straub.errors import VerificationFailure

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    """Outcome of one named verification check."""

    name: str
    passed: bool
    detail: str = ""

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        return f"{self.status} {self.name}" + (f": {self.detail}" if self.detail else "")

    def to_tree(self) -> Dict[str, str]:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class CheckReport:
    """
    Output of one CLI command.

    Attributes:
        command: command name
        lines: human-readable body, in output order
        tree: machine-readable body (strings and integers only)
        checks: verdicts in the order they were made
        show_checks: append verdict lines to the plain rendering
    """

    command: str
    lines: List[str] = field(default_factory=list)
    tree: Dict[str, Any] = field(default_factory=dict)
    checks: List[CheckResult] = field(default_factory=list)
    show_checks: bool = True

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        """Record a verdict and log it."""
        result = CheckResult(name, bool(passed), detail)
        self.checks.append(result)
        if result.passed:
            logger.info(result.line())
        else:
            logger.error(result.line())
        return result.passed

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]

    def raise_for_failures(self) -> None:
        """
        Raises:
            VerificationFailure: naming every failed check
        """
        if not self.passed:
            raise VerificationFailure(self.failed)

    def render_plain(self) -> str:
        out = list(self.lines)
        if self.show_checks and self.checks:
            out.extend(c.line() for c in self.checks)
            summary = "ALL PASS" if self.passed else "FAILED: " + ", ".join(self.failed)
            out.append(f"{summary} ({len(self.checks)} checks)")
        return "".join(f"{line}\n" for line in out)

    def render_tree(self) -> str:
        payload = {
            "command": self.command,
            "status": "PASS" if self.passed else "FAIL",
            "result": self.tree,
            "checks": [c.to_tree() for c in self.checks],
        }
        return json.dumps(payload, indent=2) + "\n"

    def render(self, output_format: settings.OutputFormat) -> str:
        if output_format == settings.OutputFormat.TREE:
            return self.render_tree()
        return self.render_plain()


def write_output(text: str, out: Optional[Path] = None) -> None:
    """Write rendered output to a file, or to stdout when no path is given."""
    if out is None:
        print(text, end="")
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info("wrote %s", out)


def create_allure_environment_properties(results_dir: Optional[Path] = None) -> Path:
    """
    Create environment.properties file for Allure reporting.

    Args:
        results_dir: Allure results directory (default <reports>/allure-results)

    Returns:
        Path to the written file
    """
    env_config = settings.get_env_config()
    properties = [f"{key}={value}" for key, value in env_config.items()]
    properties.append(f"python_version={platform.python_version()}")
    properties.append(f"operating_system={os.environ.get('OS', os.name)}")

    allure_dir = Path(results_dir) if results_dir is not None else settings.REPORTS_DIR / "allure-results"
    allure_dir.mkdir(exist_ok=True, parents=True)
    path = allure_dir / "environment.properties"
    path.write_text("\n".join(properties) + "\n", encoding="utf-8")
    return path
