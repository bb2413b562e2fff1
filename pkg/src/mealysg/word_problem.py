"""Equality of words in the generated semigroup, ball enumeration, zeros,
periodic elements, and refutation of claimed embeddings into N with a zero.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .core import (
    InputError,
    MealyAutomaton,
    MealyError,
    Word,
    _check_word,
    compose_recursions,
    step,
    wreath_recursion,
)

log = logging.getLogger(__name__)


class PreconditionError(MealyError):
    pass


@dataclass(frozen=True)
class EqualityResult:
    equal: bool
    witness: tuple[int, ...] | None
    explored: int

    def __bool__(self):
        return self.equal


def equal(automaton: MealyAutomaton, u: Sequence[int], v: Sequence[int]) -> EqualityResult:
    """Decide whether ``u`` and ``v`` act identically on every string.

    Breadth-first search over the pairs of state chains reachable from
    ``(u, v)``.  When the words differ, ``witness`` is the shortlex-least
    string on which their actions differ.
    """
    if not u or not v:
        raise InputError("words must be nonempty")
    _check_word(automaton, u)
    _check_word(automaton, v)
    start = (tuple(u), tuple(v))
    parent: dict = {start: None}
    queue = deque([start])
    nb = automaton.n_symbols
    while queue:
        conf = queue.popleft()
        cu, cv = conf
        for b in range(nb):
            nu, ou = step(automaton, cu, b)
            nv, ov = step(automaton, cv, b)
            if ou != ov:
                path = [b]
                node = conf
                while parent[node] is not None:
                    node, sym = parent[node]
                    path.append(sym)
                return EqualityResult(False, tuple(reversed(path)), len(parent))
            nxt = (nu, nv)
            if nxt not in parent:
                parent[nxt] = (conf, b)
                queue.append(nxt)
    return EqualityResult(True, None, len(parent))


def are_equal(automaton: MealyAutomaton, u: Sequence[int], v: Sequence[int]) -> bool:
    return equal(automaton, u, v).equal


def restrictions_respect_equality(
    automaton: MealyAutomaton, u: Sequence[int], v: Sequence[int], depth: int
) -> tuple[bool, tuple[int, ...] | None]:
    """Check ``u|_a == v|_a`` for every string ``a`` of length <= ``depth``.

    Returns ``(True, None)`` or ``(False, a)`` for the first failing ``a``.
    """
    if not are_equal(automaton, u, v):
        raise PreconditionError("restrictions_respect_equality needs equal words")
    level = [((), tuple(u), tuple(v))]
    for _ in range(depth):
        new_level = []
        for alpha, cu, cv in level:
            for b in range(automaton.n_symbols):
                nu, _ = step(automaton, cu, b)
                nv, _ = step(automaton, cv, b)
                if not are_equal(automaton, nu, nv):
                    return False, alpha + (b,)
                new_level.append((alpha + (b,), nu, nv))
        level = new_level
    return True, None


class _Fingerprints:
    """Depth-truncated behaviour signatures, hash-consed to small ints.

    Two chains with different signatures at any depth act differently; equal
    signatures are only a hint.
    """

    def __init__(self, automaton: MealyAutomaton):
        self.automaton = automaton
        self._intern: dict = {}
        self._memo: dict = {}

    def of(self, config: Word, depth: int) -> int:
        key = (config, depth)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if depth == 0:
            sig = ()
        else:
            parts = []
            for b in range(self.automaton.n_symbols):
                nc, o = step(self.automaton, config, b)
                parts.append((o, self.of(nc, depth - 1)))
            sig = tuple(parts)
        val = self._intern.setdefault(sig, len(self._intern))
        self._memo[key] = val
        return val


class ElementIndex:
    """Set of distinct elements, each stored under one representative word.

    Lookup goes through a fingerprint bucket and confirms with :func:`equal`.
    The fingerprint depth starts at 3 and doubles whenever a bucket holds more
    than ``max_bucket`` distinct elements.
    """

    def __init__(self, automaton: MealyAutomaton, depth: int = 3, max_bucket: int = 32):
        self.automaton = automaton
        self.depth = depth
        self.max_bucket = max_bucket
        self.reps: list[Word] = []
        self._fp = _Fingerprints(automaton)
        self._buckets: dict[int, list[int]] = {}

    def __len__(self):
        return len(self.reps)

    def find(self, w: Sequence[int]) -> int | None:
        w = tuple(w)
        for i in self._buckets.get(self._fp.of(w, self.depth), ()):
            if are_equal(self.automaton, w, self.reps[i]):
                return i
        return None

    def add(self, w: Sequence[int]) -> tuple[int, bool]:
        """Return ``(element id, is_new)``."""
        w = tuple(w)
        found = self.find(w)
        if found is not None:
            return found, False
        idx = len(self.reps)
        self.reps.append(w)
        bucket = self._buckets.setdefault(self._fp.of(w, self.depth), [])
        bucket.append(idx)
        if len(bucket) > self.max_bucket:
            self._rebucket()
        return idx, True

    def _rebucket(self):
        while any(len(b) > self.max_bucket for b in self._buckets.values()):
            self.depth *= 2
            log.debug("fingerprint depth raised to %d", self.depth)
            self._buckets = {}
            for i, w in enumerate(self.reps):
                self._buckets.setdefault(self._fp.of(w, self.depth), []).append(i)
            if self.depth > 4 * max(1, len(self._fp._intern)):
                # signatures have stabilised; buckets cannot split further
                break


class BallEnumerator:
    """Incremental shortlex enumeration of elements by word length."""

    def __init__(self, automaton: MealyAutomaton):
        self.automaton = automaton
        self.index = ElementIndex(automaton)
        self.radius = 0
        self.growth: list[int] = []
        self._frontier: list[Word] = [()]

    def grow_to(self, radius: int) -> None:
        nq = self.automaton.n_states
        while self.radius < radius:
            frontier = []
            for w in self._frontier:
                for q in range(nq):
                    cand = w + (q,)
                    _, new = self.index.add(cand)
                    if new:
                        frontier.append(cand)
            self._frontier = frontier
            self.growth.append(len(frontier))
            self.radius += 1

    def representative(self, w: Sequence[int]) -> Word:
        """Shortlex-least word equal to ``w``."""
        self.grow_to(len(w))
        i = self.index.find(w)
        assert i is not None, "element missing from ball of its own length"
        return self.index.reps[i]


def ball(automaton: MealyAutomaton, radius: int) -> tuple[list[Word], list[int]]:
    """Shortlex-least representatives of all elements of length <= ``radius``.

    ``growth[k-1]`` counts the elements whose shortest word has length ``k``.
    """
    if radius < 1:
        raise InputError("radius must be at least 1")
    en = BallEnumerator(automaton)
    en.grow_to(radius)
    return list(en.index.reps), list(en.growth)


def is_zero_element(automaton: MealyAutomaton, w: Sequence[int]) -> bool:
    w = tuple(w)
    if not w:
        raise InputError("words must be nonempty")
    return all(
        are_equal(automaton, w + (q,), w) and are_equal(automaton, (q,) + w, w)
        for q in range(automaton.n_states)
    )


def _power_period(automaton: MealyAutomaton, w: Word, is_self, bound: int) -> tuple[int, int] | None:
    """Iterate the (root map, self-or-zero flags) pattern of powers of ``w``.

    Assumes every section of ``w`` is either ``w`` itself (``is_self``) or a
    zero.  Returns the first ``m < n`` with identical patterns.
    """
    rec = wreath_recursion(automaton, w)
    nb = automaton.n_symbols
    base_flags = tuple(is_self(rec.sections[b]) for b in range(nb))
    tau = rec.root_map
    cur_tau, cur_flags = tau, base_flags
    seen = {}
    for n in range(1, bound + 1):
        key = (cur_tau, cur_flags)
        if key in seen:
            return seen[key], n
        seen[key] = n
        cur_flags = tuple(cur_flags[b] and base_flags[cur_tau[b]] for b in range(nb))
        cur_tau = tuple(tau[cur_tau[b]] for b in range(nb))
    return None


def periodic_bound(n_symbols: int) -> int:
    return 2 ** n_symbols * n_symbols ** n_symbols + 1


def periodic_by_recursion(automaton: MealyAutomaton, q: int, z: int) -> tuple[int, int] | None:
    """Find ``m < n`` with ``q^m == q^n`` when ``q`` recurses only to itself and ``z``.

    ``z`` must represent the zero element.  The pair is re-verified with
    :func:`equal` before being returned.
    """
    if not is_zero_element(automaton, (z,)):
        raise PreconditionError(f"state {automaton.states[z]} does not represent a zero element")
    rec = wreath_recursion(automaton, (q,))
    for b, sec in enumerate(rec.sections):
        if sec not in ((q,), (z,)):
            raise PreconditionError(
                f"section of {automaton.states[q]} at {automaton.alphabet[b]} is "
                f"{automaton.states[sec[0]]}, not {automaton.states[q]} or {automaton.states[z]}"
            )
    found = _power_period(automaton, (q,), lambda sec: sec == (q,), periodic_bound(automaton.n_symbols))
    if found is None:
        return None
    m, n = found
    if not are_equal(automaton, (q,) * m, (q,) * n):
        return None
    return m, n


# -- refuting embeddings into N^0 -------------------------------------------

ZERO = "z!"


@dataclass(frozen=True)
class RefutationWitness:
    """Outcome of :func:`refute_N0_valuation`.

    ``kind`` is one of ``NotHom``, ``Periodic``, ``NoFiniteValues``,
    ``Inconclusive``.  ``NotHom`` carries two words; ``reason`` says whether
    they are equal with different value sums (``sums-differ``) or unequal
    with the same sum (``not-injective``).  ``Periodic`` carries a word and
    exponents ``m < n`` with ``word^m == word^n``.
    """

    kind: str
    words: tuple[Word, ...] = ()
    exponents: tuple[int, int] | None = None
    reason: str = ""
    diagnostic: str = ""
    sums: tuple = field(default=())

    def describe(self, automaton: MealyAutomaton) -> str:
        parts = [self.kind]
        if self.reason:
            parts.append(f"({self.reason})")
        for w in self.words:
            parts.append("[" + " ".join(automaton.state_names(w)) + "]")
        if self.exponents:
            parts.append(f"m={self.exponents[0]} n={self.exponents[1]}")
        if self.sums:
            parts.append("sums=" + ",".join(str(s) for s in self.sums))
        if self.diagnostic:
            parts.append(f"-- {self.diagnostic}")
        return " ".join(parts)


def word_value(valuation: Sequence, w: Sequence[int]):
    """Sum of values along ``w`` in N with a zero; the zero absorbs."""
    total = 0
    for q in w:
        v = valuation[q]
        if v == ZERO:
            return ZERO
        total += v
    return total


def _valuation_vector(automaton: MealyAutomaton, valuation: Mapping) -> list:
    vec = []
    for i, name in enumerate(automaton.states):
        v = valuation.get(name, valuation.get(i))
        if v is None:
            raise InputError(f"valuation missing state {name}")
        if v != ZERO and not (isinstance(v, int) and v >= 1):
            raise InputError(f"value of {name} must be a positive integer or {ZERO}")
        vec.append(v)
    return vec


def refute_N0_valuation(automaton: MealyAutomaton, valuation: Mapping) -> RefutationWitness:
    """Run the contradiction argument against a claimed isomorphism onto a
    subsemigroup of N with a zero adjoined.

    ``valuation`` maps state names to positive integers or :data:`ZERO`.
    """
    nu = _valuation_vector(automaton, valuation)
    finite = [q for q in range(automaton.n_states) if nu[q] != ZERO]
    if not finite:
        return RefutationWitness("NoFiniteValues", diagnostic="every state is valued zero")

    def not_injective(u, v, note):
        return RefutationWitness("NotHom", (tuple(u), tuple(v)), reason="not-injective",
                                 sums=(word_value(nu, u), word_value(nu, v)), diagnostic=note)

    def sums_differ(u, v, note):
        return RefutationWitness("NotHom", (tuple(u), tuple(v)), reason="sums-differ",
                                 sums=(word_value(nu, u), word_value(nu, v)), diagnostic=note)

    def check_zero(w):
        """``None`` if ``w`` is a zero element valued zero, else a witness."""
        if is_zero_element(automaton, w):
            if word_value(nu, w) != ZERO:
                return sums_differ(w + w, w, "zero element carries a finite value")
            return None
        for g in range(automaton.n_states):
            for cand in (w + (g,), (g,) + w):
                if nu[g] != ZERO and are_equal(automaton, cand, (g,)):
                    return sums_differ(cand, (g,), "zero-valued word acts as a left/right identity")
        for g in range(automaton.n_states):
            for cand in (w + (g,), (g,) + w):
                if not are_equal(automaton, cand, w):
                    return not_injective(cand, w, "zero-valued word is not a zero element")
        return RefutationWitness("Inconclusive", (w,), diagnostic="zero check failed without a witness")

    k_state = max(finite, key=lambda q: (nu[q], -q))
    l_state = min(finite, key=lambda q: (nu[q], q))
    k, l = nu[k_state], nu[l_state]

    def path_witness(w: Word, label: str):
        rec = wreath_recursion(automaton, w)
        for sec in rec.sections:
            if word_value(nu, sec) == ZERO:
                bad = check_zero(sec)
                if bad is not None:
                    return bad
            elif word_value(nu, sec) != word_value(nu, w):
                return RefutationWitness(
                    "Inconclusive", (w, sec),
                    diagnostic=f"{label}: section has an unexpected finite value",
                )
            elif not are_equal(automaton, sec, w):
                return not_injective(sec, w, f"{label}: section valued like the word but different")
        found = _power_period(
            automaton, w, lambda sec: word_value(nu, sec) != ZERO, periodic_bound(automaton.n_symbols)
        )
        if found is None:
            return RefutationWitness("Inconclusive", (w,), diagnostic=f"{label}: no repeated power pattern")
        m, n = found
        if not are_equal(automaton, w * m, w * n):
            return RefutationWitness("Inconclusive", (w,), (m, n),
                                     diagnostic=f"{label}: repeated pattern not confirmed by equal")
        return RefutationWitness("Periodic", (w,), (m, n), sums=(word_value(nu, w * m), word_value(nu, w * n)),
                                 diagnostic=label)

    if k == l:
        for q in finite:
            if q != k_state and not are_equal(automaton, (q,), (k_state,)):
                return not_injective((q,), (k_state,), "two generators share the only finite value")
        return path_witness((k_state,), "single finite value")

    big = (k_state,) * l
    small = (l_state,) * k
    rec_big = wreath_recursion(automaton, (k_state,))
    rec_small = wreath_recursion(automaton, (l_state,))
    rb, rs = rec_big, rec_small
    for _ in range(l - 1):
        rb = compose_recursions(rb, rec_big)
    for _ in range(k - 1):
        rs = compose_recursions(rs, rec_small)
    if not are_equal(automaton, big, small):
        return not_injective(big, small, "max^min and min^max have the same value")
    for b in range(automaton.n_symbols):
        wi, xi = rb.sections[b], rs.sections[b]
        if not are_equal(automaton, wi, xi):
            return RefutationWitness(
                "Inconclusive", (wi, xi),
                diagnostic=f"sections at {automaton.alphabet[b]} of equal elements differ",
            )
        sw, sx = word_value(nu, wi), word_value(nu, xi)
        if sw != sx:
            return sums_differ(wi, xi, f"sections at {automaton.alphabet[b]}")
        if sw == ZERO:
            bad = check_zero(wi)
            if bad is not None:
                return bad
            continue
        if any(nu[q] != k for q in wi) or any(nu[q] != l for q in xi):
            return RefutationWitness(
                "Inconclusive", (wi, xi),
                diagnostic=f"sections at {automaton.alphabet[b]} have extremal sum but mixed letters",
            )
        if not are_equal(automaton, wi, big):
            return not_injective(wi, big, f"section at {automaton.alphabet[b]} valued like max^min")
    return path_witness(big, "max^min recurses to itself and zero")


# -- bounded enumeration helpers used by hom and action checks ---------------

def words_up_to(n_states: int, length: int):
    """All nonempty words of length <= ``length`` in shortlex order."""
    for k in range(1, length + 1):
        yield from itertools.product(range(n_states), repeat=k)


def first_inconsistency(automaton: MealyAutomaton, bound: int, invariant) -> tuple[Word, Word] | None:
    """Look for equal words of length <= ``bound`` on which ``invariant`` differs.

    Returns ``(u, rep)`` where ``rep`` is the shortlex-least word equal to
    ``u``, or ``None`` if none exists at this bound.
    """
    index = ElementIndex(automaton)
    values: list = []
    for w in words_up_to(automaton.n_states, bound):
        i, new = index.add(w)
        val = invariant(w)
        if new:
            values.append(val)
        elif values[i] != val:
            return w, index.reps[i]
    return None
