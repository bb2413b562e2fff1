"""Mealy automata and the actions of their states on strings.

States and symbols are referred to by dense integer ids; names are kept only
for I/O and diagnostics.  A *word* is a tuple of state ids (left to right, the
first letter acts first) and a *string* is a tuple of symbol ids.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class MealyError(Exception):
    pass


class InputError(MealyError, ValueError):
    """Raised for malformed input: unknown names, empty words, bad tables."""


Word = tuple[int, ...]
String = tuple[int, ...]


@dataclass(frozen=True)
class MealyAutomaton:
    """A finite synchronous transducer ``(Q, B, delta)``.

    ``next[q][b]`` and ``out[q][b]`` hold the target state and output symbol
    of the transition from ``q`` on ``b``.  Cells may be ``None`` only in
    automata that have not passed :func:`validate`.
    """

    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    next: tuple[tuple[int | None, ...], ...]
    out: tuple[tuple[int | None, ...], ...]
    notes: tuple[str, ...] = field(default=(), compare=False)

    @classmethod
    def from_transitions(
        cls,
        states: Sequence[str],
        alphabet: Sequence[str],
        transitions: Mapping[tuple[str, str], tuple[str, str]],
        notes: Iterable[str] = (),
    ) -> "MealyAutomaton":
        """Build from a name-level map ``(q, a) -> (r, b)``; absent cells stay ``None``."""
        q_ix = {q: i for i, q in enumerate(states)}
        b_ix = {b: i for i, b in enumerate(alphabet)}
        if len(q_ix) != len(states):
            raise InputError("duplicate state names")
        if len(b_ix) != len(alphabet):
            raise InputError("duplicate symbol names")
        nxt = [[None] * len(alphabet) for _ in states]
        out = [[None] * len(alphabet) for _ in states]
        for (q, a), (r, b) in transitions.items():
            try:
                i, j = q_ix[q], b_ix[a]
                nxt[i][j] = q_ix[r]
                out[i][j] = b_ix[b]
            except KeyError as exc:
                raise InputError(f"unknown name {exc.args[0]!r} in transition {q} {a} -> {r} {b}") from None
        return cls(
            tuple(states),
            tuple(alphabet),
            tuple(map(tuple, nxt)),
            tuple(map(tuple, out)),
            tuple(notes),
        )

    @cached_property
    def _state_ix(self) -> dict[str, int]:
        return {q: i for i, q in enumerate(self.states)}

    @cached_property
    def _symbol_ix(self) -> dict[str, int]:
        return {b: i for i, b in enumerate(self.alphabet)}

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_symbols(self) -> int:
        return len(self.alphabet)

    def state(self, name: str) -> int:
        try:
            return self._state_ix[name]
        except KeyError:
            raise InputError(f"unknown state {name!r}") from None

    def symbol(self, name: str) -> int:
        try:
            return self._symbol_ix[name]
        except KeyError:
            raise InputError(f"unknown symbol {name!r}") from None

    def word(self, names: str | Iterable[str]) -> Word:
        """Word from state names; a string is split on whitespace."""
        if isinstance(names, str):
            names = names.split()
        return tuple(self.state(n) for n in names)

    def string(self, names: str | Iterable[str]) -> String:
        if isinstance(names, str):
            names = names.split()
        return tuple(self.symbol(n) for n in names)

    def state_names(self, word: Iterable[int]) -> list[str]:
        return [self.states[q] for q in word]

    def symbol_names(self, string: Iterable[int]) -> list[str]:
        return [self.alphabet[b] for b in string]

    def transition(self, q: int, b: int) -> tuple[int, int]:
        return self.next[q][b], self.out[q][b]

    def with_notes(self, *notes: str) -> "MealyAutomaton":
        return MealyAutomaton(self.states, self.alphabet, self.next, self.out, self.notes + notes)

    def is_identity_state(self, q: int) -> bool:
        return all(self.next[q][b] == q and self.out[q][b] == b for b in range(self.n_symbols))


def validate(automaton: MealyAutomaton) -> list[str]:
    """Return one defect message per bad transition cell (empty when valid)."""
    defects = []
    nq, nb = automaton.n_states, automaton.n_symbols
    if len(automaton.next) != nq or len(automaton.out) != nq:
        defects.append(f"transition tables have {len(automaton.next)} rows, expected {nq}")
        return defects
    for q in range(nq):
        qn = automaton.states[q]
        for b in range(nb):
            bn = automaton.alphabet[b]
            try:
                r, c = automaton.next[q][b], automaton.out[q][b]
            except IndexError:
                defects.append(f"({qn}, {bn}): missing transition")
                continue
            if r is None or c is None:
                defects.append(f"({qn}, {bn}): missing transition")
            elif not 0 <= r < nq:
                defects.append(f"({qn}, {bn}): target state id {r} out of range")
            elif not 0 <= c < nb:
                defects.append(f"({qn}, {bn}): output symbol id {c} out of range")
    return defects


def _check_string(automaton: MealyAutomaton, s: Sequence[int]) -> None:
    nb = automaton.n_symbols
    for b in s:
        if not (isinstance(b, int) and 0 <= b < nb):
            raise InputError(f"symbol {b!r} not in the alphabet")


def _check_word(automaton: MealyAutomaton, w: Sequence[int]) -> None:
    nq = automaton.n_states
    for q in w:
        if not (isinstance(q, int) and 0 <= q < nq):
            raise InputError(f"state {q!r} not in the automaton")


def step(automaton: MealyAutomaton, config: Sequence[int], b: int) -> tuple[tuple[int, ...], int]:
    """Feed one symbol through the chain of transducers ``config``.

    Returns the new chain of states and the symbol emitted by the last one.
    """
    nxt, out = automaton.next, automaton.out
    new = []
    for q in config:
        new.append(nxt[q][b])
        b = out[q][b]
    return tuple(new), b


def run(automaton: MealyAutomaton, w: Sequence[int], s: Sequence[int]) -> tuple[String, Word]:
    nxt, out = automaton.next, automaton.out
    config = list(w)
    result = []
    for b in s:
        for i, q in enumerate(config):
            config[i] = nxt[q][b]
            b = out[q][b]
        result.append(b)
    return tuple(result), tuple(config)


def act(automaton: MealyAutomaton, w: Sequence[int], s: Sequence[int]) -> String:
    _check_word(automaton, w)
    _check_string(automaton, s)
    return run(automaton, w, s)[0]


def restriction(automaton: MealyAutomaton, w: Sequence[int], prefix: Sequence[int]) -> Word:
    """The word ``w|_prefix``: the chain of states reached after reading ``prefix``."""
    _check_word(automaton, w)
    _check_string(automaton, prefix)
    return run(automaton, w, prefix)[1]


@dataclass(frozen=True)
class WreathRecursion:
    root_map: tuple[int, ...]
    sections: tuple[Word, ...]
    length: int

    def __post_init__(self):
        if len(self.root_map) != len(self.sections):
            raise InputError("root map and sections disagree on the alphabet size")
        if any(len(s) != self.length for s in self.sections):
            raise InputError("section words must all have the recursion's length")


def wreath_recursion(automaton: MealyAutomaton, w: Sequence[int]) -> WreathRecursion:
    _check_word(automaton, w)
    roots, sections = [], []
    for b in range(automaton.n_symbols):
        config, c = step(automaton, w, b)
        roots.append(c)
        sections.append(config)
    return WreathRecursion(tuple(roots), tuple(sections), len(w))


def compose_recursions(r1: WreathRecursion, r2: WreathRecursion) -> WreathRecursion:
    """Product of two wreath recursions (``r1`` acts first)."""
    if len(r1.root_map) != len(r2.root_map):
        raise InputError("recursions are over different alphabets")
    roots = tuple(r2.root_map[r1.root_map[b]] for b in range(len(r1.root_map)))
    sections = tuple(r1.sections[b] + r2.sections[r1.root_map[b]] for b in range(len(r1.root_map)))
    return WreathRecursion(roots, sections, r1.length + r2.length)


@dataclass(frozen=True)
class EventuallyPeriodicString:
    """The infinite string ``prefix + period + period + ...``.

    Use :meth:`of` to build the canonical representative: the period is a
    primitive word and the prefix is as short as possible, so two instances
    denote the same infinite string iff they compare equal.
    """

    prefix: String
    period: String

    def __post_init__(self):
        if not self.period:
            raise InputError("period must be nonempty")

    @classmethod
    def of(cls, prefix: Sequence[int], period: Sequence[int]) -> "EventuallyPeriodicString":
        prefix, period = tuple(prefix), tuple(period)
        if not period:
            raise InputError("period must be nonempty")
        n = len(period)
        for p in range(1, n + 1):
            if n % p == 0 and period[:p] * (n // p) == period:
                period = period[:p]
                break
        while prefix and prefix[-1] == period[-1]:
            period = prefix[-1:] + period[:-1]
            prefix = prefix[:-1]
        return cls(prefix, period)

    def unroll(self, n: int) -> String:
        out = list(self.prefix[:n])
        while len(out) < n:
            out.extend(self.period)
        return tuple(out[:n])


def act_eventually_periodic(
    automaton: MealyAutomaton, w: Sequence[int], s: EventuallyPeriodicString
) -> EventuallyPeriodicString:
    """Exact image of an eventually periodic infinite string under ``w``.

    After the prefix, whole periods are fed through the chain until the chain
    of states at a period boundary repeats; at most ``|Q|^|w|`` iterations.
    """
    _check_word(automaton, w)
    _check_string(automaton, s.prefix)
    _check_string(automaton, s.period)
    head, config = run(automaton, w, s.prefix)
    seen: dict[Word, int] = {}
    blocks: list[String] = []
    while config not in seen:
        seen[config] = len(blocks)
        block, config = run(automaton, config, s.period)
        blocks.append(block)
    start = seen[config]
    prefix = head + tuple(c for blk in blocks[:start] for c in blk)
    period = tuple(c for blk in blocks[start:] for c in blk)
    return EventuallyPeriodicString.of(prefix, period)


def minimize(automaton: MealyAutomaton) -> tuple[MealyAutomaton, list[int]]:
    """Quotient by behavioural equivalence (Moore partition refinement).

    Returns the quotient automaton and the map old state id -> new state id.
    Each class is named after its first member.
    """
    nq, nb = automaton.n_states, automaton.n_symbols
    nxt, out = automaton.next, automaton.out

    def renumber(keys):
        ids: dict = {}
        return [ids.setdefault(k, len(ids)) for k in keys], len(ids)

    cls, count = renumber(tuple(out[q]) for q in range(nq))
    while True:
        refined, new_count = renumber(
            (cls[q], tuple(cls[nxt[q][b]] for b in range(nb))) for q in range(nq)
        )
        cls = refined
        if new_count == count:
            break
        count = new_count
    reps = {}
    for q in range(nq):
        reps.setdefault(cls[q], q)
    order = sorted(reps, key=reps.get)
    states = tuple(automaton.states[reps[c]] for c in order)
    new_next = tuple(tuple(cls[nxt[reps[c]][b]] for b in range(nb)) for c in order)
    new_out = tuple(tuple(out[reps[c]][b] for b in range(nb)) for c in order)
    # classes were numbered by first appearance, so order == range(count)
    return MealyAutomaton(states, automaton.alphabet, new_next, new_out, automaton.notes), cls


def _joint_colors(a1: MealyAutomaton, a2: MealyAutomaton):
    """Colour refinement run on both automata with a shared palette."""
    autos = (a1, a2)
    st = [[0] * a.n_states for a in autos]
    sy = [[0] * a.n_symbols for a in autos]
    count = -1
    while True:
        st_keys, sy_keys = [], []
        for k, a in enumerate(autos):
            s_col, b_col = st[k], sy[k]
            st_keys.append([
                (s_col[q], tuple(sorted(
                    (b_col[b], s_col[a.next[q][b]], b_col[a.out[q][b]]) for b in range(a.n_symbols)
                )))
                for q in range(a.n_states)
            ])
            sy_keys.append([
                (b_col[b], tuple(sorted(
                    (s_col[q], s_col[a.next[q][b]], b_col[a.out[q][b]]) for q in range(a.n_states)
                )))
                for b in range(a.n_symbols)
            ])
        st_palette = {k: i for i, k in enumerate(sorted(set(st_keys[0]) | set(st_keys[1])))}
        sy_palette = {k: i for i, k in enumerate(sorted(set(sy_keys[0]) | set(sy_keys[1])))}
        st = [[st_palette[k] for k in keys] for keys in st_keys]
        sy = [[sy_palette[k] for k in keys] for keys in sy_keys]
        new_count = len(st_palette) + len(sy_palette)
        if new_count == count:
            return st, sy
        count = new_count


def isomorphic(a1: MealyAutomaton, a2: MealyAutomaton) -> tuple[dict[int, int], dict[int, int]] | None:
    """Find bijections of states and symbols that commute with ``next`` and ``out``.

    Returns ``(state_map, symbol_map)`` from ids of ``a1`` to ids of ``a2``, or
    ``None``.  Names shared by both sides are tried first as candidates.
    """
    if a1.n_states != a2.n_states or a1.n_symbols != a2.n_symbols:
        return None
    nq, nb = a1.n_states, a1.n_symbols
    if nq == 0 or nb == 0:
        return ({q: q for q in range(nq)}, {b: b for b in range(nb)})
    (st1, st2), (sy1, sy2) = _joint_colors(a1, a2)
    if sorted(st1) != sorted(st2) or sorted(sy1) != sorted(sy2):
        return None

    smap, sinv = [-1] * nq, [-1] * nq
    bmap, binv = [-1] * nb, [-1] * nb
    trail: list[tuple[str, int]] = []

    def undo(mark):
        while len(trail) > mark:
            kind, x = trail.pop()
            if kind == "s":
                sinv[smap[x]] = -1
                smap[x] = -1
            else:
                binv[bmap[x]] = -1
                bmap[x] = -1

    def propagate(pending):
        while pending:
            kind, x, y = pending.pop()
            if kind == "s":
                if smap[x] == y:
                    continue
                if smap[x] != -1 or sinv[y] != -1 or st1[x] != st2[y]:
                    return False
                smap[x], sinv[y] = y, x
                trail.append(("s", x))
                for b in range(nb):
                    if bmap[b] != -1:
                        c = bmap[b]
                        pending.append(("s", a1.next[x][b], a2.next[y][c]))
                        pending.append(("b", a1.out[x][b], a2.out[y][c]))
            else:
                if bmap[x] == y:
                    continue
                if bmap[x] != -1 or binv[y] != -1 or sy1[x] != sy2[y]:
                    return False
                bmap[x], binv[y] = y, x
                trail.append(("b", x))
                for q in range(nq):
                    if smap[q] != -1:
                        r = smap[q]
                        pending.append(("s", a1.next[q][x], a2.next[r][y]))
                        pending.append(("b", a1.out[q][x], a2.out[r][y]))
        return True

    def candidates(kind, x):
        if kind == "s":
            colors1, colors2, inv, names1, names2 = st1, st2, sinv, a1.states, a2.states
        else:
            colors1, colors2, inv, names1, names2 = sy1, sy2, binv, a1.alphabet, a2.alphabet
        cands = [y for y in range(len(colors2)) if inv[y] == -1 and colors2[y] == colors1[x]]
        cands.sort(key=lambda y: names2[y] != names1[x])
        return cands

    def choose():
        if all(m != -1 for m in smap) and all(m != -1 for m in bmap):
            return None
        if any(m != -1 for m in smap):
            free = [b for b in range(nb) if bmap[b] == -1]
            if free:
                return "b", min(free, key=lambda b: len(candidates("b", b)))
        return "s", next(q for q in range(nq) if smap[q] == -1)

    def search():
        pick = choose()
        if pick is None:
            return True
        kind, x = pick
        for y in candidates(kind, x):
            mark = len(trail)
            if propagate([(kind, x, y)]) and search():
                return True
            undo(mark)
        return False

    if not search():
        return None
    return dict(enumerate(smap)), dict(enumerate(bmap))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(automaton: MealyAutomaton) -> str:
    lines = ["digraph mealy {", "  rankdir=LR;"]
    for q in automaton.states:
        lines.append(f"  {_dot_quote(q)};")
    for q in range(automaton.n_states):
        for b in range(automaton.n_symbols):
            r, c = automaton.transition(q, b)
            label = f"{automaton.alphabet[b]}|{automaton.alphabet[c]}"
            lines.append(
                f"  {_dot_quote(automaton.states[q])} -> {_dot_quote(automaton.states[r])} [label={_dot_quote(label)}];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def fresh_name(name: str, taken: Iterable[str]) -> str:
    """``name`` with primes appended until it avoids ``taken``."""
    taken = set(taken)
    while name in taken:
        name += "'"
    return name
