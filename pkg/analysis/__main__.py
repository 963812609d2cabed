"""Run one subcommand and exit with its code: python -m analysis recognize --family c4"""
import os
import sys


def main() -> int:
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'treebreadth.settings')
    import django
    django.setup()
    from analysis.cli import cli_main
    return cli_main(sys.argv[1:])


if __name__ == '__main__':
    sys.exit(main())
