import orjson
import pytest
from click.testing import CliRunner

from shapql.main import cli


@pytest.fixture()
def run():
    runner = CliRunner()

    def _run(*args: str):
        return runner.invoke(cli, list(args))

    return _run


@pytest.fixture()
def run_json(run):
    """Invoke the CLI, require exit 0 and parse the JSON record."""

    def _run_json(*args: str) -> dict:
        result = run(*args)
        assert result.exit_code == 0, result.output
        return orjson.loads(result.stdout.strip().splitlines()[-1])

    return _run_json
