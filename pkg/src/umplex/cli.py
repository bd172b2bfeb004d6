"""Command line entry points.

Exit status: 0 success, 1 usage error, 2 data error (unreadable files,
bad scenario or lexicon documents, engine failures).
"""

from __future__ import annotations

import socket
import sys
from pathlib import Path

import click

from . import persistence, scenario as scn
from .engine import Session
from .scenario import SILENCE_TOKEN, display_utterance, format_records
from .selectors import SelectorError, SelectorSpec
from .semantics import SILENCE, ActionSpace, Lexicon, normalize_utterance


class DataError(click.ClickException):
    exit_code = 2


@click.group()
def cli() -> None:
    """Train and inspect utterance-meaning lexicons."""


@cli.command("replay")
@click.argument("scenario_file", type=click.Path(path_type=Path))
@click.option("--format", "style", type=click.Choice(["table", "records"]), default="table", show_default=True)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Write the trace to a file instead of stdout.")
def cmd_replay(scenario_file: Path, style: str, out: Path | None) -> None:
    """Replay a scenario file and print its trace."""
    try:
        text = scenario_file.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"file not found or unreadable: {exc}") from exc
    try:
        trace = scn.replay(scn.parse_scenario(text))
    except ValueError as exc:
        raise DataError(f"{scenario_file}: {exc}") from exc
    rendered = scn.format_trace(trace, style)
    if out is None:
        click.echo(rendered, nl=False)
    else:
        out.write_text(rendered, encoding="utf-8", newline="\n")
        click.echo(f"wrote {out}")


def _parse_states(states: str) -> ActionSpace:
    return ActionSpace(tuple(s.strip() for s in states.split(",") if s.strip()))


def _lexicon_table(lexicon: Lexicon) -> str:
    if not lexicon:
        return "(empty lexicon)"
    lines = []
    for utterance in sorted(lexicon):
        pairs = ", ".join(f"{p.antecedent} -> {p.consequent}" for p in lexicon[utterance])
        lines.append(f"{display_utterance(utterance)}: {pairs}")
    return "\n".join(lines)


@cli.command("repl")
@click.option("--states", required=True, help="Comma-separated state labels, order defines the cyclic dynamics.")
@click.option("--initial", required=True, help="Starting state.")
@click.option("--selector", "selector_spec", default="cyclic", show_default=True,
              help="cyclic | random <seed> | scripted <state,...>")
@click.option("--seed", type=int, default=None, help="Seed for a bare 'random' selector.")
@click.option("--load", "load_path", type=click.Path(path_type=Path), default=None,
              help="Start from a saved lexicon document.")
def cmd_repl(states: str, initial: str, selector_spec: str, seed: int | None, load_path: Path | None) -> None:
    """Interactive training session.

    Every input line is an utterance; an empty line or the token
    <silence> consents to the current state.  Meta-commands: :lexicon,
    :history, :save <path>, :quit.
    """
    try:
        space = _parse_states(states)
        if selector_spec.strip() == "random":
            if seed is None:
                raise SelectorError("random selector needs a seed (--seed or 'random <seed>')")
            selector_spec = f"random {seed}"
        spec = SelectorSpec.parse(selector_spec)
        session = Session(space, space.require(initial), spec.build(space))
        if load_path is not None:
            lexicon, lex_space = persistence.import_lexicon(load_path.read_text(encoding="utf-8"))
            if lex_space.states != space.states:
                raise ValueError(
                    f"lexicon states {list(lex_space.states)} do not match --states {list(space.states)}"
                )
            session.lexicon = lexicon
    except OSError as exc:
        raise DataError(str(exc)) from exc
    except ValueError as exc:
        raise DataError(str(exc)) from exc

    interactive = sys.stdin.isatty()
    click.echo(f"state: {session.current}")
    while True:
        if interactive:
            click.echo(f"[{session.current}]> ", nl=False)
        line = sys.stdin.readline()
        if not line:
            break
        stripped = line.strip()
        if stripped == ":quit":
            break
        if stripped == ":lexicon":
            click.echo(_lexicon_table(session.lexicon))
            continue
        if stripped == ":history":
            click.echo(format_records(session.history), nl=False)
            continue
        if stripped.startswith(":save"):
            parts = stripped.split(None, 1)
            if len(parts) != 2:
                click.echo("usage: :save <path>")
                continue
            Path(parts[1]).write_text(
                persistence.export_lexicon(session.lexicon, session.space), encoding="utf-8"
            )
            click.echo(f"saved {parts[1]}")
            continue
        try:
            utterance = SILENCE if stripped in ("", SILENCE_TOKEN) else normalize_utterance(line)
        except ValueError as exc:
            click.echo(f"rejected: {exc}")
            continue
        try:
            report = session.step(utterance)
        except SelectorError as exc:
            raise DataError(str(exc)) from exc
        for i, e in enumerate(report.appended):
            k_part = f" k={report.iteration}" if i == 0 else ""
            click.echo(
                f"[t={e.t}{k_part}] {e.rule.value:<5} "
                f"{display_utterance(e.utterance)}: {e.pair.antecedent} -> {e.pair.consequent}"
            )
        click.echo(f"state: {session.current}")


@cli.command("serve")
@click.option("--port", type=int, default=8000, show_default=True, help="Port to bind; 0 picks a free one.")
@click.option("--bind", default="127.0.0.1", show_default=True, help="Address to bind.")
def cmd_serve(port: int, bind: str) -> None:
    """Run the HTTP session service until interrupted."""
    import uvicorn

    from .service import create_app

    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((bind, port))
    except OSError as exc:
        raise DataError(f"cannot bind {bind}:{port}: {exc}") from exc
    bound_port = sock.getsockname()[1]
    click.echo(f"listening on http://{bind}:{bound_port}", err=False)
    config = uvicorn.Config(create_app(), log_level="warning")
    uvicorn.Server(config).run(sockets=[sock])


@cli.group("lexicon")
def cmd_lexicon() -> None:
    """Inspect, validate and re-emit lexicon documents."""


@cmd_lexicon.command("show")
@click.argument("path", type=click.Path(path_type=Path))
def lexicon_show(path: Path) -> None:
    """Human-readable table of utterances and their pairs."""
    lexicon, space = _read_lexicon(path)
    click.echo(f"states: {', '.join(space.states)}")
    click.echo(_lexicon_table(lexicon))


@cmd_lexicon.command("import")
@click.argument("path", type=click.Path(path_type=Path))
def lexicon_import(path: Path) -> None:
    """Validate a lexicon document."""
    lexicon, space = _read_lexicon(path)
    click.echo(f"ok: {len(lexicon)} entries over {len(space)} states")


@cmd_lexicon.command("export")
@click.argument("path", type=click.Path(path_type=Path))
@click.option("--out", type=click.Path(path_type=Path), required=True, help="Destination file.")
def lexicon_export(path: Path, out: Path) -> None:
    """Re-emit a lexicon document in canonical form."""
    lexicon, space = _read_lexicon(path)
    out.write_text(persistence.export_lexicon(lexicon, space), encoding="utf-8")
    click.echo(f"wrote {out}")


def _read_lexicon(path: Path) -> tuple[Lexicon, ActionSpace]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"file not found or unreadable: {exc}") from exc
    try:
        return persistence.import_lexicon(text)
    except persistence.LexiconFormatError as exc:
        raise DataError(f"{path}: {exc}") from exc


def main(argv: list[str] | None = None) -> int:
    """Entry point with the documented exit-status contract."""
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return 130
    return 0


if __name__ == "__main__":
    sys.exit(main())
