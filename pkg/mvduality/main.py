"""Command-line entry point"""

import logging
import sys
from typing import Optional, Sequence

import click
from pydantic import ValidationError as PydanticValidationError

from mvduality.cli.commands import cli
from mvduality.config import settings
from mvduality.domain.exceptions import ValidationException, VerificationError

# Configure logging
logging.basicConfig(level=settings.log_level.upper(), format=settings.log_format)
logger = logging.getLogger(__name__)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Execute one CLI invocation

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        0 when every law holds, 1 on a verification failure, 2 on an input error
    """
    args = list(sys.argv[1:] if argv is None else argv)
    logger.debug(f"Starting {settings.app_name} v{settings.app_version} with {args}")
    try:
        status = cli.main(args=args, prog_name=settings.app_name, standalone_mode=False)
    except ValidationException as e:
        click.echo(f"error: {e}", err=True)
        return 2
    except VerificationError as e:
        detail = f" ({e.counterexample})" if e.counterexample else ""
        click.echo(f"verification failed: {e}{detail}", err=True)
        return 1
    except PydanticValidationError as e:
        click.echo(f"error: {e.errors()[0]['msg']}", err=True)
        return 2
    except click.ClickException as e:
        e.show()
        return 2
    except click.Abort:
        click.echo("aborted", err=True)
        return 2
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        return 2
    return status if isinstance(status, int) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
