"""Binary regular languages as DFAs, with fixed-length enumeration.

Four built-in grammars over {0, 1} feed the influence pipeline:

g1  1*
g2  even number of 0s and even number of 1s
g3  1* + 0*(0+1)
g4  every odd-length run of 1s is followed by an even-length run of 0s;
    an odd run of 1s ending the string is accepted, since nothing
    follows it

Enumeration at a given length never materializes all 2^N candidates: a
backward-reachability table marks the states that can still reach
acceptance in the remaining steps, and a depth-first walk over symbols
in sorted order emits exactly the accepted strings, lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import EmptyLanguageError, InputError

BUILTIN_INDICES = (1, 2, 3, 4)


@dataclass(frozen=True)
class Grammar:
    """Deterministic finite automaton over a fixed symbol alphabet.

    Transitions must be total: every (state, symbol) pair maps somewhere.
    States are opaque strings; a conventional absorbing reject state is
    just a state like any other.
    """

    name: str
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    start: str
    accepting: frozenset[str]
    transitions: dict[tuple[str, str], str]

    def __post_init__(self) -> None:
        if self.start not in self.states:
            raise InputError(f"start state {self.start!r} not declared")
        if not self.accepting <= set(self.states):
            raise InputError("accepting set contains undeclared states")
        for state in self.states:
            for symbol in self.alphabet:
                target = self.transitions.get((state, symbol))
                if target is None:
                    raise InputError(
                        f"missing transition ({state!r}, {symbol!r})"
                    )
                if target not in self.states:
                    raise InputError(
                        f"transition ({state!r}, {symbol!r}) -> undeclared "
                        f"{target!r}"
                    )

    def step(self, state: str, symbol: str) -> str:
        try:
            return self.transitions[(state, symbol)]
        except KeyError:
            raise InputError(
                f"symbol {symbol!r} outside alphabet {self.alphabet}"
            ) from None


def accepts(grammar: Grammar, string: str) -> bool:
    state = grammar.start
    for symbol in string:
        state = grammar.step(state, symbol)
    return state in grammar.accepting


def _live_table(grammar: Grammar, length: int) -> list[set[str]]:
    """live[k] = states from which some length-k suffix reaches acceptance."""
    live = [set(grammar.accepting)]
    for _ in range(length):
        previous = live[-1]
        live.append(
            {
                s
                for s in grammar.states
                if any(
                    grammar.transitions[(s, a)] in previous
                    for a in grammar.alphabet
                )
            }
        )
    return live


def enumerate_strings(grammar: Grammar, length: int) -> list[str]:
    """All accepted strings of exactly ``length``, lexicographic order.

    The walk only enters subtrees that can still be completed, so the
    cost is proportional to the output plus the DFA size, not to 2^N.
    """
    if length < 0:
        raise InputError(f"length must be nonnegative, got {length}")
    live = _live_table(grammar, length)
    symbols = tuple(sorted(grammar.alphabet))
    out: list[str] = []
    if grammar.start not in live[length]:
        return out

    def walk(state: str, prefix: list[str], remaining: int) -> None:
        if remaining == 0:
            out.append("".join(prefix))
            return
        for symbol in symbols:
            target = grammar.transitions[(state, symbol)]
            if target in live[remaining - 1]:
                prefix.append(symbol)
                walk(target, prefix, remaining - 1)
                prefix.pop()

    walk(grammar.start, [], length)
    return out


def count_strings(grammar: Grammar, length: int) -> int:
    """|L ∩ Σ^length| by dynamic programming, without enumeration."""
    if length < 0:
        raise InputError(f"length must be nonnegative, got {length}")
    counts = {s: int(s in grammar.accepting) for s in grammar.states}
    for _ in range(length):
        counts = {
            s: sum(
                counts[grammar.transitions[(s, a)]] for a in grammar.alphabet
            )
            for s in grammar.states
        }
    return counts[grammar.start]


def enumerate_range(
    grammar: Grammar, lo: int, hi: int
) -> Iterator[tuple[str, int]]:
    """(string, length) for every accepted string with lo <= length <= hi."""
    if lo < 0 or hi < lo:
        raise InputError(f"bad length range {lo}:{hi}")
    for length in range(lo, hi + 1):
        for s in enumerate_strings(grammar, length):
            yield s, length


def _g1() -> Grammar:
    return Grammar(
        name="g1",
        alphabet=("0", "1"),
        states=("ones", "dead"),
        start="ones",
        accepting=frozenset({"ones"}),
        transitions={
            ("ones", "1"): "ones",
            ("ones", "0"): "dead",
            ("dead", "0"): "dead",
            ("dead", "1"): "dead",
        },
    )


def _g2() -> Grammar:
    # State tracks (parity of 0s, parity of 1s); accept on (even, even).
    states = ("ee", "eo", "oe", "oo")
    flip0 = {"ee": "oe", "eo": "oo", "oe": "ee", "oo": "eo"}
    flip1 = {"ee": "eo", "eo": "ee", "oe": "oo", "oo": "oe"}
    transitions = {}
    for s in states:
        transitions[(s, "0")] = flip0[s]
        transitions[(s, "1")] = flip1[s]
    return Grammar(
        name="g2",
        alphabet=("0", "1"),
        states=states,
        start="ee",
        accepting=frozenset({"ee"}),
        transitions=transitions,
    )


def _g3() -> Grammar:
    # 1* + 0*(0+1): all-ones strings, all-zeros strings, or zeros then a
    # single one.  "ones"/"zeros" mark which branch the prefix committed to.
    return Grammar(
        name="g3",
        alphabet=("0", "1"),
        states=("empty", "ones", "zeros", "zeros_one", "dead"),
        start="empty",
        accepting=frozenset({"empty", "ones", "zeros", "zeros_one"}),
        transitions={
            ("empty", "1"): "ones",
            ("empty", "0"): "zeros",
            ("ones", "1"): "ones",
            ("ones", "0"): "dead",
            ("zeros", "0"): "zeros",
            ("zeros", "1"): "zeros_one",
            ("zeros_one", "0"): "dead",
            ("zeros_one", "1"): "dead",
            ("dead", "0"): "dead",
            ("dead", "1"): "dead",
        },
    )


def _g4() -> Grammar:
    # Run-tracking states.  even: not inside a constrained region (any
    # 1-run seen so far was even, or its 0-payment completed).
    # odd1/even1: a 1-run of odd/even length is open.  owe_odd/owe_even:
    # an odd 1-run closed and the 0-run after it has odd/even length so
    # far; a 1 arriving while the debt is odd is fatal.
    states = ("even", "odd1", "even1", "owe_odd", "owe_even", "dead")
    return Grammar(
        name="g4",
        alphabet=("0", "1"),
        states=states,
        start="even",
        accepting=frozenset({"even", "odd1", "even1", "owe_even"}),
        transitions={
            ("even", "0"): "even",
            ("even", "1"): "odd1",
            ("odd1", "1"): "even1",
            ("odd1", "0"): "owe_odd",
            ("even1", "1"): "odd1",
            ("even1", "0"): "even",
            ("owe_odd", "0"): "owe_even",
            ("owe_odd", "1"): "dead",
            ("owe_even", "0"): "owe_odd",
            ("owe_even", "1"): "odd1",
            ("dead", "0"): "dead",
            ("dead", "1"): "dead",
        },
    )


_BUILTINS = {1: _g1, 2: _g2, 3: _g3, 4: _g4}


def builtin_grammar(index: int) -> Grammar:
    if index not in _BUILTINS:
        raise InputError(
            f"no built-in grammar {index}; choose from {BUILTIN_INDICES}"
        )
    return _BUILTINS[index]()


def require_nonempty(grammar: Grammar, length: int) -> list[str]:
    """Enumerate and refuse an empty result with a clear message.

    Some built-ins are legitimately empty at certain lengths (g2 accepts
    no odd-length string at all), and downstream influence math needs at
    least one sample, so emptiness is its own error type.
    """
    strings = enumerate_strings(grammar, length)
    if not strings:
        raise EmptyLanguageError(
            f"{grammar.name} contains no strings of length {length}"
        )
    return strings


def grammar_influence(
    index: int,
    length: int,
    radius: float,
    mode: str = "exact",
    permutations: int = 0,
    seed: int = 0,
):
    """Influence profile of a built-in grammar's length-N string set.

    The pipeline the built-ins exist for: enumerate, measure pairwise
    edit distances, threshold at ``radius``, attribute.  Raises
    EmptyLanguageError when the grammar has no strings at this length.
    """
    from .engine import compute_influence
    from .metric_complex import (
        LabeledPointSet,
        build_complex,
        build_distance_matrix,
    )

    grammar = builtin_grammar(index)
    strings = require_nonempty(grammar, length)
    points = LabeledPointSet.from_strings(strings)
    matrix = build_distance_matrix(points, "edit")
    complex_ = build_complex(matrix, radius)
    return compute_influence(
        complex_,
        labels=points.labels,
        mode=mode,
        permutations=permutations,
        seed=seed,
    )
