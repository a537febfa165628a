"""Command-line entry point: mining, knowledge-base emission, the
consultation shell, record validation, and the HTTP service launcher.

Exit codes: 0 success, 1 record violations, 2 usage errors, 3 parse or
validation errors.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import apriori, consult, guard, id3
from .dataset import DatasetError, parse_dataset, to_transactions
from .knb import KnbError, emit_knb, parse_knb

EXIT_DATA_ERROR = 3

BANNER = (
    "This is the Easy Expert System shell.\n"
    "Type help. load. solve. why. quit. or 99.\n"
    "at the prompt."
)
PROMPT = "expert-shell> "


def _fail(message: str) -> None:
    click.echo(message, err=True)
    sys.exit(EXIT_DATA_ERROR)


def _load_dataset(path: str):
    try:
        return parse_dataset(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}")
    except DatasetError as exc:
        _fail(f"{path}: {exc}")


def _write_json(path: Path, document: dict) -> None:
    path.write_text(json.dumps(document, indent=2) + "\n", encoding="utf-8")


@click.group()
def main():
    """Knowledge mining and deployment over categorical clinical datasets."""


@main.command("mine-tree")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--json-out", type=click.Path(dir_okay=False), default=None,
              help="Tree JSON path (default: DATA + '.tree.json').")
@click.option("--empty-branch", type=click.Choice(["zero", "disqualify"]), default="zero",
              help="Weight of value branches with no instances.")
def mine_tree(data, json_out, empty_branch):
    """Induce a decision tree and print its node/edge listing."""
    dataset = _load_dataset(data)
    try:
        tree = id3.build_tree(dataset, empty_branch=empty_branch)
    except (DatasetError, ValueError) as exc:
        _fail(str(exc))
    click.echo(id3.render_tree_listing(tree), nl=False)
    _write_json(Path(json_out) if json_out else Path(data + ".tree.json"), id3.tree_to_json(tree))


@main.command("mine-assoc")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("--min-support", type=float, required=True, help="Minimum support in percent.")
@click.option("--min-confidence", type=float, default=None,
              help="Derive association rules at this confidence.")
@click.option("--strategy", type=click.Choice([apriori.UNION_COMBINE, apriori.JOIN_PRUNE]),
              default=apriori.UNION_COMBINE, help="Candidate generation strategy.")
@click.option("--min-length", type=int, default=2, show_default=True,
              help="Shortest pattern length to print (JSON keeps all levels).")
@click.option("--json-out", type=click.Path(dir_okay=False), default=None,
              help="Result JSON path (default: DATA + '.assoc.json').")
def mine_assoc(data, min_support, min_confidence, strategy, min_length, json_out):
    """Mine frequent patterns (and optionally rules) from a dataset."""
    dataset = _load_dataset(data)
    try:
        cfg = apriori.MiningConfig(min_support, min_confidence if min_confidence is not None else 1.0)
        fps = apriori.mine_frequent(to_transactions(dataset), cfg, strategy)
    except (DatasetError, ValueError) as exc:
        _fail(str(exc))
    rules = apriori.derive_rules(fps, cfg) if min_confidence is not None else []
    for itemset in fps.all_itemsets():
        if len(itemset.items) >= min_length:
            click.echo(f"{apriori.render_pattern(itemset)} (support {itemset.support})")
    for rule in rules:
        ant = " & ".join(map("=".join, rule.antecedent))
        cons = " & ".join(map("=".join, rule.consequent))
        click.echo(f"{ant} => {cons} (support {rule.support}, confidence {rule.confidence:g})")
    _write_json(Path(json_out) if json_out else Path(data + ".assoc.json"),
                apriori.patterns_to_json(fps, cfg, rules))


@main.command("emit-knb")
@click.argument("data", type=click.Path(exists=True, dir_okay=False))
@click.option("-o", "--out", type=click.Path(dir_okay=False), default=None,
              help="Knowledge-base path (default: DATA with a .knb suffix).")
def emit_knb_command(data, out):
    """Induce a tree and write its rules as an expert-shell knowledge base."""
    dataset = _load_dataset(data)
    try:
        rules = id3.extract_rules(id3.build_tree(dataset), dataset)
        text = emit_knb(rules, list(dataset.schemas) + [dataset.class_schema])
    except (DatasetError, KnbError, ValueError) as exc:
        _fail(str(exc))
    target = Path(out) if out else Path(data).with_suffix(".knb")
    target.write_text(text, encoding="utf-8")
    click.echo(f"wrote {target}")


def _read_line(prompt: str) -> str | None:
    sys.stdout.write(prompt)
    sys.stdout.flush()
    line = sys.stdin.readline()
    if not line:
        return None
    return line.strip()


def _strip_command(raw: str) -> str:
    return raw.strip().rstrip(".").strip()


def _solve_loop(kb) -> consult.ConsultationSession | None:
    """Run one consultation; returns None when the shell should exit."""
    session = consult.start_session(kb)
    while session.status == consult.AWAITING:
        question = session.question
        menu = ", ".join(f"{i}={v}" for i, v in enumerate(question.menu, start=1))
        click.echo(f"\nWhat is the value for {question.attribute}?")
        click.echo(f"[{menu}, 99=exitShell]")
        raw = _read_line("Enter the choice> ")
        if raw is None:
            return None
        choice = _strip_command(raw)
        if choice == consult.EXIT_CODE:
            consult.submit_answer(session, question.attribute, consult.EXIT_CODE)
            return None
        if not choice.isdigit() or not 1 <= int(choice) <= len(question.menu):
            click.echo("Please answer with one of the numbered choices.")
            continue
        consult.submit_answer(session, question.attribute, question.menu[int(choice) - 1])
    if session.status == consult.CONCLUDED:
        probability = consult.format_probability(session.result.probability)
        click.echo(f"The answer is __{session.result.class_value}__ with probability {probability}")
    elif session.status == consult.FAILED:
        click.echo("No conclusion could be reached.")
    return session


@main.command("consult")
@click.argument("kb_path", type=click.Path(exists=True, dir_okay=False), required=False)
def consult_command(kb_path):
    """Interactive expert-shell consultation over a .knb knowledge base."""
    kb = None
    last_session: consult.ConsultationSession | None = None
    if kb_path:
        try:
            kb = parse_knb(Path(kb_path).read_text(encoding="utf-8"))
        except (OSError, KnbError) as exc:
            _fail(str(exc))
    click.echo(BANNER)
    while True:
        raw = _read_line(PROMPT)
        if raw is None:
            return
        command = _strip_command(raw)
        if not command:
            continue
        if command == "help":
            click.echo(BANNER)
        elif command == "load":
            raw_name = _read_line("Enter file name in single quotes (ex. '1.knb'.): ")
            if raw_name is None:
                return
            name = _strip_command(raw_name).strip("'")
            try:
                kb = parse_knb(Path(name).read_text(encoding="utf-8"))
                last_session = None
                click.echo(f"% {name} compiled")
            except (OSError, KnbError) as exc:
                click.echo(f"cannot load {name}: {exc}")
        elif command == "solve":
            if kb is None:
                click.echo("No knowledge base loaded. Type load. first.")
                continue
            session = _solve_loop(kb)
            if session is None:
                click.echo("Shell exited.")
                return
            last_session = session
        elif command == "why":
            if last_session is None or last_session.status not in (consult.CONCLUDED, consult.FAILED):
                click.echo("Nothing to explain yet. Type solve. first.")
                continue
            click.echo("\n" + consult.explain(last_session))
        elif command in ("quit", "99"):
            return
        else:
            click.echo("Unknown command. Type help. load. solve. why. quit. or 99.")


@main.command("validate")
@click.argument("triggers_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("records_path", type=click.Path(exists=True, dir_okay=False))
def validate_command(triggers_path, records_path):
    """Check a records file against compiled triggers; exit 1 on violations."""
    try:
        docs = json.loads(Path(triggers_path).read_text(encoding="utf-8"))
        triggers = [guard.trigger_from_json(doc) for doc in docs]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        _fail(f"{triggers_path}: {exc}")
    violations = []
    for lineno, line in enumerate(Path(records_path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        record = {}
        for pair in line.split(","):
            attr, sep, value = pair.strip().partition("=")
            if not sep or not attr or not value:
                _fail(f"{records_path}:{lineno}: bad record field {pair.strip()!r}")
            record[attr] = value
        violations.extend(guard.check_record(record, triggers, record_id=lineno))
    for violation in violations:
        click.echo(json.dumps(
            {"trigger": violation.trigger, "record": violation.record, "message": violation.message}
        ))
    if violations:
        sys.exit(1)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=7777, show_default=True, type=int)
def serve_command(host, port):
    """Start the HTTP service (storage root from RULEFORGE_DATA_DIR)."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
