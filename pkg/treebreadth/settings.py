"""
Django settings for the tree-breadth toolkit.

The project is command-line only: no web surface, no models. Django provides
configuration, logging, management commands and the test runner.

Development mode (DEBUG=1) turns on per-step debug logging and runtime
invariant checks in the planar recognizer.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

DEBUG = os.environ.get('DEBUG', '0').lower() in ('1', 'true', 'yes')

# Nothing is served or signed; the key only has to exist for Django to start.
SECRET_KEY = os.environ.get('DJANGO_SECRET_KEY', 'treebreadth-local-only')

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    'analysis',
]

# Tests use SimpleTestCase; the database is never opened.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

USE_TZ = True
TIME_ZONE = 'UTC'


# ===== Oracle and recognizer limits =====

# Largest graph the exact parameter oracle accepts by default
TBONE_ORACLE_LIMIT = int(os.environ.get('TBONE_ORACLE_LIMIT', '7'))

# Largest graph treewidth_exact accepts
TBONE_TREEWIDTH_LIMIT = int(os.environ.get('TBONE_TREEWIDTH_LIMIT', '10'))

# Exhaustive domination elimination ordering search runs up to this size
TBONE_DEO_BACKTRACK_LIMIT = int(os.environ.get('TBONE_DEO_BACKTRACK_LIMIT', '9'))

# Ground set size limit for the brute-force Betweenness solver
TBONE_BETWEENNESS_LIMIT = int(os.environ.get('TBONE_BETWEENNESS_LIMIT', '10'))

# Vertex limit for the brute-force chordal sandwich solver
TBONE_SANDWICH_LIMIT = int(os.environ.get('TBONE_SANDWICH_LIMIT', '8'))

# Atoms with fewer vertices are decided by the oracle
TBONE_PLANAR_CUTOFF = int(os.environ.get('TBONE_PLANAR_CUTOFF', '7'))

# Re-check planarity and primeness after every planar step (slow)
TBONE_CHECK_INVARIANTS = os.environ.get(
    'TBONE_CHECK_INVARIANTS', '1' if DEBUG else '0'
).lower() in ('1', 'true', 'yes')

# Default worker count for --jobs
TBONE_JOBS = int(os.environ.get('TBONE_JOBS', '1'))


# ===== Celery Configuration =====

CELERY_BROKER_URL = os.environ.get('CELERY_BROKER_URL', 'memory://')
CELERY_RESULT_BACKEND = os.environ.get('CELERY_RESULT_BACKEND', 'cache+memory://')
CELERY_TASK_ALWAYS_EAGER = os.environ.get(
    'CELERY_TASK_ALWAYS_EAGER',
    '1' if CELERY_BROKER_URL == 'memory://' else '0',
).lower() in ('1', 'true', 'yes')
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = 'UTC'


# ===== Logging =====

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '[{asctime}] {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': os.environ.get('DJANGO_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
        'celery': {
            'handlers': ['console'],
            'level': 'INFO',
            'propagate': False,
        },
        'tbone': {
            'handlers': ['console'],
            'level': 'DEBUG' if DEBUG else os.environ.get('TBONE_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
        'analysis': {
            'handlers': ['console'],
            'level': 'DEBUG' if DEBUG else os.environ.get('TBONE_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}
