"""`python -m tsaboost` runs the `tsa` command line tool"""
from tsaboost._src.cli.cli_main import run_cli

if __name__ == "__main__":
    run_cli()
