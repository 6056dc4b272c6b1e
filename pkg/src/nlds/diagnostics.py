"""Diagnostics, fix suggestions, validation reports, and the rule book.

Rule codes are stable public API (see docs/rules.md); message wording is
not. Every diagnostic carries the code's registered level and severity, so
a report can never disagree with the rule book.
"""
from __future__ import annotations

from dataclasses import dataclass

from .document import Link, ParamValue

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Rule:
    code: str
    level: int
    severity: str
    title: str


# level 1: document structure, 2: layer params, 3: static adjacency,
# 4: data flow and shapes, 5: target platform capability.
RULE_BOOK: dict[str, Rule] = {
    rule.code: rule
    for rule in (
        Rule("NLDS001", 1, ERROR, "malformed document syntax"),
        Rule("NLDS002", 1, ERROR, "missing required key"),
        Rule("NLDS003", 1, ERROR, "duplicate layer id"),
        Rule("NLDS004", 1, ERROR, "link endpoint names no layer"),
        Rule("NLDS005", 1, ERROR, "unknown layer kind"),
        Rule("NLDS006", 1, ERROR, "unknown layer parameter"),
        Rule("NLDS007", 1, ERROR, "document has no layers"),
        Rule("NLDS008", 1, ERROR, "duplicate link"),
        Rule("NLDS009", 1, ERROR, "layer linked to itself"),
        Rule("NLDS010", 1, ERROR, "invalid field value"),
        Rule("PRM001", 2, ERROR, "missing required parameter"),
        Rule("PRM002", 2, ERROR, "parameter out of range"),
        Rule("PRM003", 2, ERROR, "parameter has wrong type"),
        Rule("ADJ001", 3, ERROR, "incompatible neighboring layers"),
        Rule("ADJ002", 3, ERROR, "wrong number of inputs"),
        Rule("ADJ003", 3, ERROR, "link into Input or out of Output"),
        Rule("FLOW001", 4, ERROR, "layers form a cycle"),
        Rule("FLOW002", 4, ERROR, "tensor rank mismatch"),
        Rule("FLOW003", 4, ERROR, "infeasible tensor extent"),
        Rule("FLOW004", 4, ERROR, "merge inputs disagree in shape"),
        Rule("FLOW005", 4, ERROR, "layer unreachable from any Input"),
        Rule("FLOW006", 4, ERROR, "model needs an Input and an Output"),
        Rule("PLT001", 5, ERROR, "layer kind unsupported on target"),
        Rule("PLT002", 5, WARNING, "parameter ignored on target"),
    )
}

INSERT_LAYER = "insert_layer"
SET_PARAM = "set_param"
REMOVE_LINK = "remove_link"
ADD_LINK = "add_link"


@dataclass(frozen=True)
class FixSuggestion:
    """A mechanically applicable edit that removes the diagnostic it rides on."""

    action: str
    kind: str | None = None  # insert_layer: kind to insert
    link: Link | None = None  # insert_layer / remove_link / add_link
    layer_id: str | None = None  # set_param
    param: str | None = None
    value: ParamValue | None = None

    def describe(self) -> str:
        if self.action == INSERT_LAYER:
            assert self.link is not None
            return f"insert {self.kind} between {self.link.from_id} and {self.link.to_id}"
        if self.action == SET_PARAM:
            return f"set {self.param}={_fmt_value(self.value)} on {self.layer_id}"
        if self.action == REMOVE_LINK:
            assert self.link is not None
            return f"remove link {self.link.from_id} -> {self.link.to_id}"
        assert self.link is not None
        return f"add link {self.link.from_id} -> {self.link.to_id}"

    def to_json(self) -> dict:
        payload: dict = {"action": self.action}
        if self.kind is not None:
            payload["kind"] = str(self.kind)
        if self.link is not None:
            payload["link"] = {"from": self.link.from_id, "to": self.link.to_id}
        if self.layer_id is not None:
            payload["layer_id"] = self.layer_id
        if self.param is not None:
            payload["param"] = self.param
        if self.value is not None:
            payload["value"] = list(self.value) if isinstance(self.value, tuple) else self.value
        return payload


def _fmt_value(value: ParamValue | None) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, tuple):
        return "(" + ", ".join(str(v) for v in value) + ")"
    return str(value)


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding."""

    level: int
    severity: str
    code: str
    message: str
    layer_ids: tuple[str, ...] = ()
    link: Link | None = None
    path: str | None = None  # key path for structure-level findings
    suggestion: FixSuggestion | None = None

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    def format_line(self) -> str:
        location = ",".join(self.layer_ids)
        if not location and self.link is not None:
            location = f"{self.link.from_id}->{self.link.to_id}"
        if not location and self.path:
            location = self.path
        text = f"L{self.level} {self.code} {location or '-'}: {self.message}"
        if self.suggestion is not None:
            text += f" [suggestion: {self.suggestion.describe()}]"
        return text

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "severity": self.severity,
            "code": self.code,
            "message": self.message,
            "layer_ids": list(self.layer_ids),
            "link": {"from": self.link.from_id, "to": self.link.to_id} if self.link else None,
            "path": self.path,
            "suggestion": self.suggestion.to_json() if self.suggestion else None,
        }


def finding(
    code: str,
    message: str,
    *,
    layer_ids: tuple[str, ...] = (),
    link: Link | None = None,
    path: str | None = None,
    suggestion: FixSuggestion | None = None,
) -> Diagnostic:
    """Build a diagnostic whose level and severity come from the rule book."""
    rule = RULE_BOOK[code]
    return Diagnostic(
        level=rule.level,
        severity=rule.severity,
        code=code,
        message=message,
        layer_ids=layer_ids,
        link=link,
        path=path,
        suggestion=suggestion,
    )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of running the five-level rule book over one document."""

    diagnostics: tuple[Diagnostic, ...]
    levels_run: tuple[int, ...]

    @property
    def passed(self) -> bool:
        return not any(d.is_error for d in self.diagnostics)

    def errors(self) -> tuple[Diagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.is_error)

    def codes(self) -> set[str]:
        return {d.code for d in self.diagnostics}

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "levels_run": list(self.levels_run),
            "diagnostics": [d.to_json() for d in self.diagnostics],
        }

    def format_text(self) -> str:
        lines = [d.format_line() for d in self.diagnostics]
        lines.append("passed" if self.passed else "failed")
        return "\n".join(lines)
