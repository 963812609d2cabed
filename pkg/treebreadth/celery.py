"""
Celery configuration for the tree-breadth toolkit.

Sweeps over many small graphs can be fanned out to workers. Without a
configured broker the memory transport is used and tasks run eagerly in the
calling process.
"""

import os
from celery import Celery

# Set the default Django settings module
os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'treebreadth.settings')


def get_broker_url():
    """Get the broker URL, falling back to the in-process memory transport."""
    return os.environ.get('CELERY_BROKER_URL', '') or 'memory://'


app = Celery('treebreadth')

app.config_from_object('django.conf:settings', namespace='CELERY')

app.conf.update(
    broker_url=get_broker_url(),

    # Sweeps are CPU bound; one task per worker process at a time
    worker_prefetch_multiplier=1,
    task_acks_late=True,
    task_time_limit=3600,
    task_soft_time_limit=3300,

    result_expires=86400,

    accept_content=['json'],
    task_serializer='json',
    result_serializer='json',

    timezone='UTC',
    enable_utc=True,
)

app.autodiscover_tasks()
