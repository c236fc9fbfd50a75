"""Terminal output helpers for the ktruss CLI.

Results go to stdout (or ``--output``); diagnostics and summaries go to
stderr so piped edge lists stay clean.
"""

from pathlib import Path

import typer


def display_error_message(error: str, suggestions: list[str] | None = None) -> None:
    """Display error message with optional suggestions.

    Args:
        error: Error message to display
        suggestions: Optional list of suggestions for fixing the error
    """
    typer.secho(f"Error: {error}", fg=typer.colors.RED, err=True)

    if suggestions:
        typer.secho("Suggestions:", bold=True, err=True)
        for suggestion in suggestions:
            typer.echo(f"  - {suggestion}", err=True)


def display_summary(line: str) -> None:
    """Print a one-line run summary on stderr."""
    typer.echo(line, err=True)


def display_check(label: str, passed: bool) -> None:
    """Print a PASS/FAIL line for one verification case."""
    if passed:
        typer.echo(f"{label} " + typer.style("PASS", fg=typer.colors.GREEN))
    else:
        typer.echo(f"{label} " + typer.style("FAIL", fg=typer.colors.RED, bold=True))


def write_output(text: str, output: Path | None) -> None:
    """Write ``text`` to ``output`` if given, otherwise to stdout."""
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8")
