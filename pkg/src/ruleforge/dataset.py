"""Clausal dataset format: parsing, validation, and transaction conversion.

The on-disk format is a sequence of ``attribute(name, [v1, v2]).`` and
``instance(Id, class=Label, [attr=value, ...]).`` clauses with '%' comments.
Whitespace and newlines between tokens are insignificant.
"""
from __future__ import annotations

from dataclasses import dataclass


class DatasetError(Exception):
    """Base for dataset loading problems."""


class ParseError(DatasetError):
    """Malformed clause text; carries the offending position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}" if column is not None else f"line {line}: {message}"
        super().__init__(message)


class InvalidDatasetError(DatasetError):
    """A dataset failed validation where a valid one is required."""

    def __init__(self, issues: list["ValidationIssue"]):
        self.issues = issues
        super().__init__("; ".join(i.message for i in issues))


CLASS_ATTR = "class"
CLASS_VALUES = ("yes", "no")


@dataclass(frozen=True)
class AttributeSchema:
    """One categorical attribute and its ordered value domain."""

    name: str
    values: tuple[str, ...]


@dataclass(frozen=True)
class Instance:
    """A single classified case: id, class label, and attribute assignments."""

    id: int
    class_label: str
    assignments: dict[str, str]


@dataclass(frozen=True)
class Dataset:
    """Schemas (class excluded), the class schema, and the instance list."""

    schemas: tuple[AttributeSchema, ...]
    class_schema: AttributeSchema
    instances: tuple[Instance, ...]

    def schema_for(self, name: str) -> AttributeSchema | None:
        for s in self.schemas:
            if s.name == name:
                return s
        return None

    def positives(self) -> list[int]:
        return [i.id for i in self.instances if i.class_label == "yes"]

    def negatives(self) -> list[int]:
        return [i.id for i in self.instances if i.class_label == "no"]


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


# An item is an (attribute, value) pair; transactions are item sets per case.
Item = tuple[str, str]
Transaction = frozenset[Item]


def render_item(item: Item) -> str:
    return f"{item[0]}={item[1]}"


# ---------------------------------------------------------------------------
# Tokenizer / parser


@dataclass(frozen=True)
class _Token:
    kind: str  # name | int | punct
    text: str
    line: int
    column: int


_PUNCT = set("(),[].=")


def _tokenize(text: str):
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == "%":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in _PUNCT:
            tokens.append(_Token("punct", ch, line, col))
            col += 1
            i += 1
        elif ch.isdigit():
            start = i
            start_col = col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            tokens.append(_Token("int", text[start:i], line, start_col))
        elif ch.isalpha() or ch == "_":
            start = i
            start_col = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            word = text[start:i]
            if not word[0].islower():
                raise ParseError(f"identifier must start lower-case: {word!r}", line, start_col)
            tokens.append(_Token("name", word, line, start_col))
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str, text: str | None = None) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            raise ParseError(
                f"unexpected end of input, expected {text or kind}",
                last.line if last else 1,
                last.column if last else 1,
            )
        if tok.kind != kind or (text is not None and tok.text != text):
            raise ParseError(
                f"expected {text or kind}, found {tok.text!r}", tok.line, tok.column
            )
        self.pos += 1
        return tok

    def parse_name_list(self) -> list[str]:
        self.take("punct", "[")
        names = [self.take("name").text]
        while self.peek() and self.peek().text == ",":
            self.take("punct", ",")
            names.append(self.take("name").text)
        self.take("punct", "]")
        return names

    def parse_assign_list(self) -> list[tuple[str, str, _Token]]:
        self.take("punct", "[")
        assigns = [self.parse_assign()]
        while self.peek() and self.peek().text == ",":
            self.take("punct", ",")
            assigns.append(self.parse_assign())
        self.take("punct", "]")
        return assigns

    def parse_assign(self) -> tuple[str, str, _Token]:
        attr = self.take("name")
        self.take("punct", "=")
        value = self.take("name")
        return attr.text, value.text, attr


def parse_dataset(text: str) -> Dataset:
    """Parse clausal text into a Dataset.

    Raises ParseError (with line/column) on syntax errors, duplicate
    attribute names or instance ids, values outside a declared domain, an
    assignment to an undeclared attribute, or a missing class attribute.
    """
    parser = _Parser(_tokenize(text))
    schemas: list[AttributeSchema] = []
    class_schema: AttributeSchema | None = None
    domains: dict[str, tuple[str, ...]] = {}
    instances: list[Instance] = []
    seen_ids: set[int] = set()

    while not parser.done():
        head = parser.take("name")
        if head.text == "attribute":
            parser.take("punct", "(")
            name_tok = parser.take("name")
            parser.take("punct", ",")
            values = parser.parse_name_list()
            parser.take("punct", ")")
            parser.take("punct", ".")
            if name_tok.text in domains:
                raise ParseError(
                    f"duplicate attribute declaration: {name_tok.text}",
                    name_tok.line,
                    name_tok.column,
                )
            schema = AttributeSchema(name_tok.text, tuple(values))
            domains[schema.name] = schema.values
            if schema.name == CLASS_ATTR:
                class_schema = schema
            else:
                schemas.append(schema)
        elif head.text == "instance":
            parser.take("punct", "(")
            id_tok = parser.take("int")
            parser.take("punct", ",")
            parser.take("name", CLASS_ATTR)
            parser.take("punct", "=")
            label_tok = parser.take("name")
            parser.take("punct", ",")
            assigns = parser.parse_assign_list()
            parser.take("punct", ")")
            parser.take("punct", ".")

            inst_id = int(id_tok.text)
            if inst_id in seen_ids:
                raise ParseError(f"duplicate instance id: {inst_id}", id_tok.line, id_tok.column)
            seen_ids.add(inst_id)
            if CLASS_ATTR in domains and label_tok.text not in domains[CLASS_ATTR]:
                raise ParseError(
                    f"value {label_tok.text!r} outside domain of attribute {CLASS_ATTR}",
                    label_tok.line,
                    label_tok.column,
                )
            assignments: dict[str, str] = {}
            for attr, value, tok in assigns:
                if attr == CLASS_ATTR:
                    raise ParseError("class may not appear in the assignment list", tok.line, tok.column)
                if attr in assignments:
                    raise ParseError(f"attribute {attr} assigned twice", tok.line, tok.column)
                if attr not in domains:
                    raise ParseError(f"assignment to undeclared attribute {attr}", tok.line, tok.column)
                if value not in domains[attr]:
                    raise ParseError(
                        f"value {value!r} outside domain of attribute {attr}", tok.line, tok.column
                    )
                assignments[attr] = value
            instances.append(Instance(inst_id, label_tok.text, assignments))
        else:
            raise ParseError(
                f"expected 'attribute' or 'instance', found {head.text!r}", head.line, head.column
            )

    if class_schema is None:
        raise ParseError("missing class attribute declaration")
    return Dataset(tuple(schemas), class_schema, tuple(instances))


def render_dataset(d: Dataset) -> str:
    """Render a Dataset back to clausal text (re-parses to an equal Dataset)."""
    lines = []
    for s in list(d.schemas) + [d.class_schema]:
        lines.append(f"attribute( {s.name}, [{', '.join(s.values)}]).")
    for inst in d.instances:
        assigns = ", ".join(
            f"{s.name}={inst.assignments[s.name]}" for s in d.schemas if s.name in inst.assignments
        )
        # assignments not covered by a schema are appended so nothing is dropped
        extras = [f"{a}={v}" for a, v in inst.assignments.items() if d.schema_for(a) is None]
        if extras:
            assigns = ", ".join(filter(None, [assigns] + extras))
        lines.append(f"instance({inst.id}, class={inst.class_label}, [{assigns}]).")
    return "\n".join(lines) + "\n"


def validate_dataset(d: Dataset) -> list[ValidationIssue]:
    """Report every invariant violation; an empty report means valid."""
    issues: list[ValidationIssue] = []

    def add(code: str, message: str):
        issues.append(ValidationIssue(code, message))

    for s in list(d.schemas) + [d.class_schema]:
        if not s.name:
            add("empty-name", "attribute with empty name")
        if not s.values:
            add("empty-domain", f"attribute {s.name} has an empty domain")
        if len(set(s.values)) != len(s.values):
            add("duplicate-value", f"attribute {s.name} repeats a domain value")
    names = [s.name for s in d.schemas]
    if len(set(names)) != len(names):
        add("duplicate-attribute", "duplicate attribute name among schemas")
    if d.class_schema.name != CLASS_ATTR or tuple(d.class_schema.values) != CLASS_VALUES:
        add("class-domain", "class attribute must be named 'class' with domain [yes, no]")

    seen: set[int] = set()
    for inst in d.instances:
        if inst.id in seen:
            add("duplicate-instance-id", f"duplicate instance id {inst.id}")
        seen.add(inst.id)
        if inst.id <= 0:
            add("bad-id", f"instance id {inst.id} is not positive")
        if inst.class_label not in d.class_schema.values:
            add("domain-violation", f"instance {inst.id}: class label {inst.class_label!r} not in class domain")
        for s in d.schemas:
            if s.name not in inst.assignments:
                add("missing-assignment", f"instance {inst.id}: attribute {s.name} not assigned")
            elif inst.assignments[s.name] not in s.values:
                add(
                    "domain-violation",
                    f"instance {inst.id}: value {inst.assignments[s.name]!r} outside domain of {s.name}",
                )
        for a in inst.assignments:
            if d.schema_for(a) is None:
                add("unknown-attribute", f"instance {inst.id}: assignment to unknown attribute {a}")
    return issues


def require_valid(d: Dataset) -> None:
    issues = validate_dataset(d)
    if issues:
        raise InvalidDatasetError(issues)


def to_transactions(d: Dataset) -> list[Transaction]:
    """Convert a valid dataset to one item set per case, in instance-id order.

    Every transaction carries one item per schema attribute plus the
    (class, label) item.
    """
    require_valid(d)
    db: list[Transaction] = []
    for inst in sorted(d.instances, key=lambda i: i.id):
        items = {(a, v) for a, v in inst.assignments.items()}
        items.add((CLASS_ATTR, inst.class_label))
        db.append(frozenset(items))
    return db
