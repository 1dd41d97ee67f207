"""Suite execution"""

from .suite_tasks import run_suite_jobs

__all__ = ["run_suite_jobs"]
