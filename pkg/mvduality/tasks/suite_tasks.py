"""Concurrent evaluation of suite jobs"""

import asyncio
import logging
import time
from typing import Callable, List, Mapping, Optional

from mvduality.config import settings
from mvduality.domain.schemas import LawResult, SuiteReport, Verdict

logger = logging.getLogger(__name__)

SuiteJob = Callable[[], List[LawResult]]


def run_suite_jobs(jobs: Mapping[str, SuiteJob], concurrent: Optional[bool] = None) -> SuiteReport:
    """
    Evaluate independent suite jobs and merge their law results

    Args:
        jobs: Job name -> zero-argument callable returning law results
        concurrent: Fan jobs out over worker threads (defaults to settings)

    Returns:
        SuiteReport sorted by (law, subject)
    """
    concurrent = settings.suite_concurrency if concurrent is None else concurrent
    logger.info(
        f"Starting suite with {len(jobs)} jobs ({'concurrent' if concurrent else 'sequential'})"
    )
    start_time = time.time()

    if concurrent:
        batches = asyncio.run(_run_jobs_concurrently(jobs))
    else:
        batches = [_run_single_job(name, job) for name, job in jobs.items()]

    report = SuiteReport()
    for batch in batches:
        report.extend(batch)
    report = report.ordered()

    logger.info(
        f"Suite finished in {time.time() - start_time:.2f}s: "
        f"{len(report.results)} laws, {len(report.failures)} failures"
    )
    return report


async def _run_jobs_concurrently(jobs: Mapping[str, SuiteJob]) -> List[List[LawResult]]:
    """Run jobs on worker threads, at most suite_max_workers at a time"""
    semaphore = asyncio.Semaphore(settings.suite_max_workers)

    async def guarded(name: str, job: SuiteJob) -> List[LawResult]:
        async with semaphore:
            return await asyncio.to_thread(_run_single_job, name, job)

    tasks = [guarded(name, job) for name, job in jobs.items()]
    return await asyncio.gather(*tasks, return_exceptions=False)


def _run_single_job(name: str, job: SuiteJob) -> List[LawResult]:
    """Run one job; an unexpected exception becomes a FAIL line"""
    try:
        results = job()
        logger.debug(f"Job {name}: {len(results)} laws")
        return results
    except Exception as e:
        logger.exception(f"Unexpected error in suite job '{name}'")
        return [
            LawResult(
                verdict=Verdict.FAIL,
                law=name,
                subject="job",
                counterexample=f"{type(e).__name__}: {e}",
            )
        ]
