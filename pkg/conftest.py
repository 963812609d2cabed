import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'treebreadth.settings')
django.setup()
