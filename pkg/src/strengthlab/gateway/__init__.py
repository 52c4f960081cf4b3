"""CLI and HTTP/JSON service over the library, plus session persistence."""

from .ops import (
    comparison_verdict,
    fiducial_demo_report,
    sensitivity_report,
    trials_report,
)
from .service import create_app
from .storage import SessionStore

__all__ = [
    "SessionStore",
    "comparison_verdict",
    "create_app",
    "fiducial_demo_report",
    "sensitivity_report",
    "trials_report",
]
