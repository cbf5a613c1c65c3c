"""Line-oriented scenario files and their deterministic execution.

A scenario declares an atom universe, optional literal-level association
links, named external-information items, and an ordered event list; running
it applies the events in order and records, per event, what became visible
and which latent beliefs were triggered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .association import AssociationContext, BeliefTriplet, InterpretationMap
from .beliefs import (
    BeliefBase,
    BeliefSet,
    ExternalInfo,
    Package,
    close_models,
    visible,
    visible_neg,
)
from .logic import Formula, Not, ParseError, Universe, canonical, is_literal, negate
from .operators import (
    SELECT_ALL,
    PreferenceOrder,
    SelectionFunction,
    contract,
)

SCHEMA_VERSION = 1


class ScenarioError(ValueError):
    """Scenario validation failure, with the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Event:
    op: str
    item: str
    selection: SelectionFunction


@dataclass
class Scenario:
    universe: Universe
    interp: InterpretationMap
    items: dict[str, ExternalInfo]
    events: list[Event]
    print_basis: list[Formula]
    context: AssociationContext


@dataclass
class TraceEvent:
    step: int
    op: str
    item: str
    newly_visible: list[str]
    triggered: list[dict]
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "op": self.op,
            "item": self.item,
            "newly_visible": self.newly_visible,
            "triggered": self.triggered,
            "consistent": self.consistent,
        }


# ---------------------------------------------------------------------------
# Parsing


def _split_pair(text: str, line: int) -> tuple[str, str]:
    body = text.strip()
    if not (body.startswith("(") and body.endswith(")")):
        raise ScenarioError(f"expected a parenthesised pair, got {body!r}", line)
    body = body[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1 :]
    raise ScenarioError("expected two comma-separated formulas", line)


def _parse_selection(tokens: list[str], universe: Universe, line: int) -> SelectionFunction:
    if not tokens:
        return SELECT_ALL
    spec = " ".join(tokens)
    if spec == "select all":
        return SELECT_ALL
    if tokens[0] == "prefer":
        rest = spec[len("prefer") :].strip()
        if not rest:
            raise ScenarioError("prefer needs at least one formula", line)
        try:
            formulas = [universe.parse(part.strip()) for part in rest.split(",")]
        except ParseError as e:
            raise ScenarioError(f"bad preference formula: {e}", line) from None
        return PreferenceOrder(formulas)
    raise ScenarioError(f"bad selection spec {spec!r}", line)


def parse_scenario(text: str) -> Scenario:
    universe: Universe | None = None
    interp_entries: dict[Formula, set] = {}
    items: dict[str, ExternalInfo] = {}
    item_attrs: dict[str, list[BeliefTriplet]] = {}
    item_essence: dict[str, Formula] = {}
    item_order: list[str] = []
    events: list[tuple[int, str, str, SelectionFunction]] = []
    print_names: list[tuple[int, str]] = []

    def need_universe(line: int) -> Universe:
        if universe is None:
            raise ScenarioError("atoms must be declared first", line)
        return universe

    def parse_formula(text: str, line: int) -> Formula:
        try:
            return need_universe(line).parse(text.strip())
        except ParseError as e:
            raise ScenarioError(str(e), line) from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "atoms":
            if universe is not None:
                raise ScenarioError("atoms declared twice", lineno)
            names = rest.split()
            if not names:
                raise ScenarioError("atoms line needs at least one name", lineno)
            try:
                universe = Universe(names)
            except ValueError as e:
                raise ScenarioError(str(e), lineno) from None
        elif head == "assoc":
            key_text, sep, pair_text = rest.partition(":")
            if not sep:
                raise ScenarioError("assoc needs '<literal>: (<formula>, <formula>)'", lineno)
            lit = canonical(parse_formula(key_text, lineno))
            if not is_literal(lit):
                raise ScenarioError(f"assoc key must be a literal, got {lit}", lineno)
            left, right = _split_pair(pair_text, lineno)
            pair = (parse_formula(left, lineno), parse_formula(right, lineno))
            interp_entries.setdefault(lit, set()).add(pair)
        elif head == "item":
            parts = rest.split(None, 2)
            if len(parts) != 3 or parts[1] != "essence":
                raise ScenarioError("expected 'item <name> essence <formula>'", lineno)
            name = parts[0]
            if name in item_essence:
                raise ScenarioError(f"item {name!r} declared twice", lineno)
            item_essence[name] = canonical(parse_formula(parts[2], lineno))
            item_attrs[name] = []
            item_order.append(name)
        elif head == "attr":
            name, sep, pair_text = rest.partition(":")
            name = name.strip()
            if not sep or name not in item_essence:
                raise ScenarioError(f"attr references unknown item {name!r}", lineno)
            left, right = _split_pair(pair_text, lineno)
            trig = parse_formula(left, lineno)
            rev = parse_formula(right, lineno)
            item_attrs[name].append(BeliefTriplet(item_essence[name], trig, rev))
        elif head == "event":
            parts = rest.split()
            if len(parts) < 2 or parts[0] not in ("expand", "contract", "revise"):
                raise ScenarioError("expected 'event expand|contract|revise <item> [selection]'", lineno)
            sel = _parse_selection(parts[2:], need_universe(lineno), lineno)
            events.append((lineno, parts[0], parts[1], sel))
        elif head == "print":
            for name in rest.split():
                print_names.append((lineno, name))
        else:
            raise ScenarioError(f"unknown directive {head!r}", lineno)

    if universe is None:
        raise ScenarioError("scenario declares no atoms", 1)
    for name in item_order:
        items[name] = ExternalInfo(item_essence[name], frozenset(item_attrs[name]))
    checked_events: list[Event] = []
    for lineno, op, item, sel in events:
        if item not in items:
            raise ScenarioError(f"event references undeclared item {item!r}", lineno)
        checked_events.append(Event(op, item, sel))
    basis: list[Formula] = []
    for lineno, name in print_names:
        if name not in universe.by_name:
            raise ScenarioError(f"print references unknown atom {name!r}", lineno)
        basis.append(universe.by_name[name])
    if not basis:
        basis = list(universe.atoms)
    basis = basis + [canonical(Not(a)) for a in basis] + [items[n].essence for n in item_order]

    interp = InterpretationMap(interp_entries)
    material: set[Formula] = set()
    for info in items.values():
        material.add(info.essence)
        for t in info.attributes:
            material |= {t.trigger, t.revealed}
    for sel_event in checked_events:
        if isinstance(sel_event.selection, PreferenceOrder):
            material |= set(sel_event.selection.formulas)
    try:
        context = AssociationContext(universe, interp, material)
    except ValueError as e:
        raise ScenarioError(str(e), 1) from None
    return Scenario(universe, interp, items, checked_events, basis, context)


def load_scenario(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())


# ---------------------------------------------------------------------------
# Execution


def run(scenario: Scenario, work_limit: int | None = None) -> tuple[BeliefSet, list[TraceEvent]]:
    """Apply the event list in order; deterministic for a fixed scenario."""
    from .operators import DEFAULT_WORK_LIMIT

    limit = DEFAULT_WORK_LIMIT if work_limit is None else work_limit
    ctx = scenario.context
    u = scenario.universe
    bs = close_models(ctx, u.full, frozenset())
    trace: list[TraceEvent] = []
    for step, ev in enumerate(scenario.events):
        info = scenario.items[ev.item]
        pre = bs
        vis = visible(pre, info)
        log: list[BeliefTriplet] = []
        if ev.op == "expand":
            models = pre.models & u.conjoin_tables(info.formulas)
            bs = close_models(ctx, models, pre.pool | info.attributes, log=log)
        elif ev.op == "contract":
            bs = contract(pre, info, ev.selection, work_limit=limit)
        else:
            contracted = contract(pre, Package(visible_neg(pre, info)), ev.selection,
                                  work_limit=limit)
            models = contracted.models & u.conjoin_tables(vis)
            bs = close_models(ctx, models, contracted.pool | info.attributes, log=log)
        trace.append(TraceEvent(
            step=step,
            op=ev.op,
            item=ev.item,
            newly_visible=sorted(str(v) for v in vis if not pre.member(v)),
            triggered=[{"triplet": str(t), "trigger": str(t.trigger), "revealed": str(t.revealed)}
                       for t in log],
            consistent=bs.is_consistent(),
        ))
    return bs, trace


def snapshot(bs: BeliefSet, print_basis: Iterable[Formula]) -> dict:
    return {"schema": SCHEMA_VERSION, **bs.report(print_basis)}


def run_report(scenario: Scenario, work_limit: int | None = None) -> dict:
    final, trace = run(scenario, work_limit=work_limit)
    return {
        "schema": SCHEMA_VERSION,
        "events": [t.to_dict() for t in trace],
        "final": snapshot(final, scenario.print_basis),
    }
