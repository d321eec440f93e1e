# main.py
"""Run the dualityengine command line."""

try:
    from .cli import cli  # when running as a package: `python -m dualityengine.main`
except ImportError:
    from dualityengine.cli import cli  # when running the file directly

if __name__ == "__main__":
    cli()
