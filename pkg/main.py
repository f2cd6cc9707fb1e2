import json
import logging
import sys
from logging.config import dictConfig

import click

from corpusRunner.runner import corpus_command
from Hilbert_schemes.Enumeration.commands import enumerate_command
from Hilbert_schemes.Equations.commands import equations_command
from Hilbert_schemes.Exceptions import HilbertSchemeError
from Hilbert_schemes.Grothendieck.commands import gotzmann_command
from Hilbert_schemes.LocalGroebner.commands import local_gb_command
from Hilbert_schemes.Settings import TOOL_NAME, VERSION
from Hilbert_schemes.Supportive.commands import supportive_command, very_supportive_command
from Hilbert_schemes.Tangent.commands import tangent_command
from Hilbert_schemes.Toric.commands import toric_command

# Define logging configuration
log_config = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        }
    },
    "handlers": {
        "file": {
            "class": "logging.FileHandler",
            "filename": "app.log",
            "formatter": "simple",
            "level": "INFO"
        }
    },
    "root": {
        "level": "INFO",
        "handlers": ["file"]
    }
}

logger = logging.getLogger(__name__)


@click.group()
@click.version_option(VERSION, prog_name=TOOL_NAME)
def cli():
    """Multigraded Hilbert schemes: supportive sets, equations and tangent spaces."""


# Register commands
cli.add_command(enumerate_command)
cli.add_command(supportive_command)
cli.add_command(very_supportive_command)
cli.add_command(equations_command)
cli.add_command(gotzmann_command)
cli.add_command(toric_command)
cli.add_command(tangent_command)
cli.add_command(local_gb_command)
cli.add_command(corpus_command)


def run(argv=None) -> int:
    """Entry point returning the exit code: 0 ok, 2 validation, 3 caps, 4 internal."""
    dictConfig(log_config)
    try:
        rv = cli.main(args=argv, prog_name=TOOL_NAME, standalone_mode=False)
    except HilbertSchemeError as e:
        logger.error("%s: %s", e.code, e.detail)
        click.echo(json.dumps({"error": e.to_dict()}, sort_keys=True), err=True)
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return 2
    except click.Abort:
        return 1
    except Exception:
        logger.exception("unexpected failure")
        click.echo(json.dumps({"error": {"code": "INTERNAL", "detail": "unexpected failure, see app.log",
                                          "context": {}}}), err=True)
        return 4
    return rv if isinstance(rv, int) else 0


if __name__ == '__main__':
    sys.exit(run())
