"""Access to toolkit settings with defaults when Django is not configured."""

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'TBONE_ORACLE_LIMIT': 7,
    'TBONE_TREEWIDTH_LIMIT': 10,
    'TBONE_DEO_BACKTRACK_LIMIT': 9,
    'TBONE_BETWEENNESS_LIMIT': 10,
    'TBONE_SANDWICH_LIMIT': 8,
    'TBONE_PLANAR_CUTOFF': 7,
    'TBONE_CHECK_INVARIANTS': False,
    'TBONE_JOBS': 1,
}


def setting(name):
    """Return a TBONE_* setting, or its default outside a Django project."""
    try:
        return getattr(settings, name, DEFAULTS[name])
    except ImproperlyConfigured:
        return DEFAULTS[name]
