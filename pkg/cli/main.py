"""
Console entry point. `teamlogic <subcommand> ...` behaves like
`manage.py teamlogic <subcommand> ...` but returns the exit code instead of
exiting, so it can be driven from tests and scripts.
"""

import os
import sys
from typing import List, Optional, TextIO

import django
from django.core.management.base import CommandError


def run(argv: List[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Run one subcommand.

    Returns:
        0 for a true verdict or a clean run, 1 for a false verdict or a failed
        claim, 2 for usage, parse and limit errors
    """
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'teamlogic.settings')
    django.setup()
    from cli.management.commands.teamlogic import USAGE_ERROR, Command

    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    command = Command(stdout=stdout, stderr=stderr)
    command._called_from_command_line = False
    parser = command.create_parser('teamlogic', 'teamlogic')
    try:
        options = vars(parser.parse_args(argv))
    except CommandError as exc:
        stderr.write(f"{exc}\n")
        return USAGE_ERROR
    except SystemExit as exc:
        # argparse has already printed usage or help
        return USAGE_ERROR if exc.code else 0

    args = options.pop('args', ())
    try:
        command.execute(*args, **options)
    except CommandError as exc:
        stderr.write(f"{exc}\n")
        return exc.returncode
    return command.exit_code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
