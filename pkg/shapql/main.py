import logging
import sys

import click
import orjson

from shapql.core.config import settings
from shapql.core.exceptions import ShapqlError
from shapql.modules.hardness_lab.router import router as lab_router
from shapql.modules.pqe.router import pqe_command
from shapql.modules.reasoner.router import consistency_command, entails_command
from shapql.modules.shapley.router import shapley_command
from shapql.modules.supports.router import supports_command

log_level = logging.DEBUG if settings.DEBUG else logging.INFO
logging.basicConfig(
    level=log_level,
    stream=sys.stderr,
    format="%(levelname)s %(name)s: %(message)s",
)
logger = logging.getLogger(__name__)


class ShapqlGroup(click.Group):
    """Reports ShapqlError as one JSON line on stderr and exits with its code."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except ShapqlError as exc:
            click.echo(orjson.dumps(exc.to_dict(), option=orjson.OPT_SORT_KEYS).decode(), err=True)
            ctx.exit(exc.exit_code)


@click.group(cls=ShapqlGroup)
@click.version_option(package_name="shapql")
def cli():
    """Shapley values for ontology-mediated query answering."""
    logger.debug(f"Running with {settings!r}")


cli.add_command(shapley_command)
cli.add_command(supports_command)
cli.add_command(consistency_command)
cli.add_command(entails_command)
cli.add_command(pqe_command)
cli.add_command(lab_router)


if __name__ == "__main__":
    cli()
