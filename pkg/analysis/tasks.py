"""
Celery tasks for property sweeps.

One task per sweep, so a worker pool can run the sweeps side by side. With
the default memory broker the tasks run eagerly in the calling process.
"""

import logging

from celery import shared_task

from .sweeps import SWEEPS

logger = logging.getLogger(__name__)


@shared_task(bind=True, max_retries=0, soft_time_limit=3300, time_limit=3600)
def run_sweep(self, name: str, options=None):
    """Run one named sweep and return its summary dict."""
    if name not in SWEEPS:
        logger.error("Unknown sweep %r", name)
        return {'name': name, 'checked': 0, 'failures': [{'detail': 'unknown sweep'}]}
    logger.info("Sweep %s started (task %s)", name, self.request.id)
    summary = SWEEPS[name](**(options or {}))
    logger.info("Sweep %s finished: %d checked, %d failures",
                name, summary['checked'], len(summary['failures']))
    return summary


def submit_sweeps(names, options=None):
    """
    Queue one task per sweep.

    Returns the AsyncResult handles in the order of names.
    """
    options = options or {}
    handles = []
    for name in names:
        handles.append(run_sweep.apply_async(args=[name, options.get(name, {})]))
        logger.info("Submitted sweep %s: task_id=%s", name, handles[-1].id)
    return handles
