"""Line-oriented text formats for automata, finite semigroups and maps.

All three start with a header line, ignore blank lines and lines whose first
non-blank character is ``#``, and split lines into tokens shell-style, so a
token containing spaces (or starting with ``#``) is written in double quotes.
"""

from __future__ import annotations

import shlex
from typing import Iterable, Mapping

from .algebra import FiniteSemigroup, validate_semigroup
from .core import InputError, MealyAutomaton
from .word_problem import ZERO

AUTOMATON_HEADER = "mealy v1"
SEMIGROUP_HEADER = "semigroup v1"
MAP_HEADER = "map v1"

_PLAIN = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-+.,:;!?^$*/|[]()<>=@%&~{}")


class ParseError(InputError):
    def __init__(self, line: int | None, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def quote(token: str) -> str:
    if token and token[0] != "#" and all(c in _PLAIN for c in token):
        return token
    return '"' + token.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _lines(text: str):
    """Yield ``(line number, tokens)`` for content lines."""
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            yield no, shlex.split(stripped, posix=True)
        except ValueError as exc:
            raise ParseError(no, f"cannot split line: {exc}") from None


def _expect_header(lines, header: str):
    try:
        no, toks = next(lines)
    except StopIteration:
        raise ParseError(None, f"empty input, expected {header!r}") from None
    if " ".join(toks) != header:
        raise ParseError(no, f"expected header {header!r}")


def _labelled(lines, label: str) -> tuple[int, list[str]]:
    try:
        no, toks = next(lines)
    except StopIteration:
        raise ParseError(None, f"missing {label!r} line") from None
    if not toks or toks[0] != label:
        raise ParseError(no, f"expected {label!r} line")
    if len(set(toks[1:])) != len(toks) - 1:
        raise ParseError(no, f"duplicate name in {label!r} line")
    return no, toks[1:]


# -- automata -----------------------------------------------------------------


def parse_automaton(text: str, strict: bool = True) -> MealyAutomaton:
    """Parse the ``mealy v1`` format.

    With ``strict=False`` missing transitions are left empty so that
    :func:`validate` can list them; everything else is still a parse error.
    """
    lines = _lines(text)
    _expect_header(lines, AUTOMATON_HEADER)
    _, states = _labelled(lines, "states:")
    _, alphabet = _labelled(lines, "alphabet:")
    q_ix = {q: i for i, q in enumerate(states)}
    b_ix = {b: i for i, b in enumerate(alphabet)}
    nxt = [[None] * len(alphabet) for _ in states]
    out = [[None] * len(alphabet) for _ in states]
    for no, toks in lines:
        if len(toks) != 5 or toks[2] != "->":
            raise ParseError(no, "expected 'state symbol -> state symbol'")
        q, a, _, r, b = toks
        for name, table, kind in ((q, q_ix, "state"), (a, b_ix, "symbol"), (r, q_ix, "state"), (b, b_ix, "symbol")):
            if name not in table:
                raise ParseError(no, f"unknown {kind} {name!r}")
        i, j = q_ix[q], b_ix[a]
        if nxt[i][j] is not None:
            raise ParseError(no, f"duplicate transition for ({q}, {a})")
        nxt[i][j], out[i][j] = q_ix[r], b_ix[b]
    if strict:
        for i, q in enumerate(states):
            for j, a in enumerate(alphabet):
                if nxt[i][j] is None:
                    raise ParseError(None, f"missing transition for ({q}, {a})")
    return MealyAutomaton(tuple(states), tuple(alphabet), tuple(map(tuple, nxt)), tuple(map(tuple, out)))


def serialize_automaton(automaton: MealyAutomaton) -> str:
    lines = [AUTOMATON_HEADER]
    lines += [f"# {note}" for note in automaton.notes]
    lines.append("states: " + " ".join(quote(q) for q in automaton.states))
    lines.append("alphabet: " + " ".join(quote(b) for b in automaton.alphabet))
    for q in range(automaton.n_states):
        for b in range(automaton.n_symbols):
            r, c = automaton.transition(q, b)
            lines.append(
                f"{quote(automaton.states[q])} {quote(automaton.alphabet[b])} -> "
                f"{quote(automaton.states[r])} {quote(automaton.alphabet[c])}"
            )
    return "\n".join(lines) + "\n"


# -- finite semigroups --------------------------------------------------------


def parse_semigroup(text: str) -> FiniteSemigroup:
    lines = _lines(text)
    _expect_header(lines, SEMIGROUP_HEADER)
    _, names = _labelled(lines, "elements:")
    ix = {x: i for i, x in enumerate(names)}
    rows: dict[str, list[str]] = {}
    for no, toks in lines:
        if len(toks) < 2 or toks[0] != "row" or not toks[1].endswith(":"):
            raise ParseError(no, "expected 'row <element>: <products>'")
        x = toks[1][:-1]
        if x not in ix:
            raise ParseError(no, f"unknown element {x!r}")
        if x in rows:
            raise ParseError(no, f"duplicate row for {x!r}")
        products = toks[2:]
        if len(products) != len(names):
            raise ParseError(no, f"row {x!r} has {len(products)} entries, expected {len(names)}")
        for y in products:
            if y not in ix:
                raise ParseError(no, f"unknown element {y!r}")
        rows[x] = products
    missing = [x for x in names if x not in rows]
    if missing:
        raise ParseError(None, f"missing row for {missing[0]!r}")
    s = FiniteSemigroup.from_rows(names, [rows[x] for x in names])
    bad = validate_semigroup(s)
    if bad:
        x, y, z = bad[0]
        raise ParseError(None, f"not associative: ({names[x]} {names[y]}) {names[z]} != {names[x]} ({names[y]} {names[z]})")
    return s


def serialize_semigroup(s: FiniteSemigroup) -> str:
    lines = [SEMIGROUP_HEADER, "elements: " + " ".join(quote(x) for x in s.names)]
    for i, x in enumerate(s.names):
        lines.append(f"row {quote(x + ':')} " + " ".join(quote(s.names[y]) for y in s.table[i]))
    return "\n".join(lines) + "\n"


# -- maps ---------------------------------------------------------------------


def parse_map(text: str) -> dict:
    """Parse ``key... -> value`` lines.

    Single-token keys become strings, longer keys tuples of strings.
    """
    lines = _lines(text)
    _expect_header(lines, MAP_HEADER)
    result: dict = {}
    for no, toks in lines:
        if len(toks) < 3 or toks[-2] != "->":
            raise ParseError(no, "expected 'key -> value'")
        key_toks = toks[:-2]
        key = key_toks[0] if len(key_toks) == 1 else tuple(key_toks)
        if key in result:
            raise ParseError(no, f"duplicate key {' '.join(key_toks)!r}")
        result[key] = toks[-1]
    return result


def serialize_map(mapping: Mapping) -> str:
    lines = [MAP_HEADER]
    for key, value in mapping.items():
        toks = [key] if isinstance(key, str) else list(key)
        lines.append(" ".join(quote(str(t)) for t in toks) + " -> " + quote(str(value)))
    return "\n".join(lines) + "\n"


def check_total(mapping: Mapping, domain: Iterable, what: str = "map") -> None:
    missing = [k for k in domain if k not in mapping]
    if missing:
        k = missing[0]
        shown = k if isinstance(k, str) else " ".join(k)
        raise InputError(f"{what} undefined on {shown!r}")


def parse_valuation(text: str) -> dict:
    """A map whose values are positive integers or the zero marker ``z!``."""
    raw = parse_map(text)
    out = {}
    for key, value in raw.items():
        if not isinstance(key, str):
            raise InputError(f"valuation keys are single states, got {' '.join(key)!r}")
        if value == ZERO:
            out[key] = ZERO
            continue
        try:
            n = int(value)
        except ValueError:
            raise InputError(f"value of {key!r} must be a positive integer or {ZERO}") from None
        if n < 1:
            raise InputError(f"value of {key!r} must be a positive integer or {ZERO}")
        out[key] = n
    return out


def read_text(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()
