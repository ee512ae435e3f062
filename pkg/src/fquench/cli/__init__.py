from fquench.cli.config import RunConfig, RunConfigFile, parse_sweep
from fquench.cli.tables import write_table, read_table
from fquench.cli.main import main, build_parser
