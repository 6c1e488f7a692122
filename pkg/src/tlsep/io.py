"""Plain-text DERA documents.

    tlsep-dera 1
    alphabet a b
    K 1
    states q0 q1 q2
    initial q0
    accepting q0 q1 q2
    edge q0 a q1 : true
    edge q1 b q2 : x_a=1

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .automata import DERA, AutomatonError, DeterminismError, Transition
from .timed import (
    Alphabet,
    ConstantTooLargeError,
    EmptyGuardError,
    GuardError,
    UnknownClockError,
    parse_guard,
)

HEADER = "tlsep-dera 1"


class ModelParseError(ValueError):
    """A malformed model document; ``kind`` names the diagnostic, ``line`` the location."""

    def __init__(self, kind: str, message: str, line: int | None = None, source: str | None = None):
        self.kind = kind
        self.line = line
        self.source = source
        where = ""
        if source or line:
            where = f"{source or '<input>'}:{line}: " if line else f"{source}: "
        super().__init__(f"{where}{kind}: {message}")


_GUARD_KINDS = [
    (UnknownClockError, "unknown-clock"),
    (ConstantTooLargeError, "constant-too-large"),
    (EmptyGuardError, "empty-guard"),
    (GuardError, "malformed-guard"),
]


def parse_dera(text: str, source: str | None = None) -> DERA:
    fields: dict[str, tuple[int, list[str]]] = {}
    edges: list[tuple[int, list[str], str]] = []
    saw_header = False
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_header:
            if line != HEADER:
                raise ModelParseError("bad-header", f"expected {HEADER!r}, got {line!r}", no, source)
            saw_header = True
            continue
        key, _, rest = line.partition(" ")
        if key == "edge":
            head, sep, guard = rest.partition(":")
            if not sep:
                raise ModelParseError("malformed-edge", "expected 'edge SRC LETTER DST : GUARD'", no, source)
            parts = head.split()
            if len(parts) != 3:
                raise ModelParseError("malformed-edge", "expected 'edge SRC LETTER DST : GUARD'", no, source)
            edges.append((no, parts, guard.strip()))
        elif key in ("alphabet", "K", "states", "initial", "accepting"):
            if key in fields:
                raise ModelParseError("duplicate-field", f"{key!r} given twice", no, source)
            fields[key] = (no, rest.split())
        else:
            raise ModelParseError("unknown-field", f"unknown directive {key!r}", no, source)
    if not saw_header:
        raise ModelParseError("bad-header", "empty document", None, source)
    for key in ("alphabet", "K", "states", "initial"):
        if key not in fields:
            raise ModelParseError("missing-field", f"missing {key!r}", None, source)

    no, vals = fields["K"]
    if len(vals) != 1 or not vals[0].isdigit() or int(vals[0]) < 1:
        raise ModelParseError("bad-K", "K must be a positive integer", no, source)
    no, letters = fields["alphabet"]
    try:
        alphabet = Alphabet(tuple(letters), int(fields["K"][1][0]))
    except ValueError as exc:
        raise ModelParseError("bad-alphabet", str(exc), no, source) from exc
    states = fields["states"][1]
    names = set(states)
    no, init = fields["initial"]
    if len(init) != 1 or init[0] not in names:
        raise ModelParseError("unknown-state", f"initial {' '.join(init)!r}", no, source)
    accepting = fields.get("accepting", (0, []))[1]
    for q in accepting:
        if q not in names:
            raise ModelParseError("unknown-state", f"accepting state {q!r}", fields["accepting"][0], source)

    transitions = []
    for no, (src, letter, dst), guard_text in edges:
        for q in (src, dst):
            if q not in names:
                raise ModelParseError("unknown-state", f"state {q!r}", no, source)
        if letter not in alphabet.letter_index:
            raise ModelParseError("unknown-letter", f"letter {letter!r}", no, source)
        try:
            guard = parse_guard(guard_text, alphabet)
        except GuardError as exc:
            kind = next(k for cls, k in _GUARD_KINDS if isinstance(exc, cls))
            raise ModelParseError(kind, str(exc), no, source) from exc
        t = Transition(src, letter, guard, dst)
        try:
            DERA(alphabet, tuple(states), init[0], frozenset(accepting), tuple(transitions) + (t,))
        except DeterminismError as exc:
            raise ModelParseError("nondeterministic", str(exc), no, source) from exc
        transitions.append(t)
    try:
        return DERA(alphabet, tuple(states), init[0], frozenset(accepting), tuple(transitions))
    except AutomatonError as exc:
        raise ModelParseError("invalid-automaton", str(exc), None, source) from exc


def emit_dera(A: DERA, comment: str | None = None) -> str:
    out = [HEADER]
    if comment:
        out += [f"# {line}" if line else "#" for line in comment.splitlines()]
    out.append("alphabet " + " ".join(A.alphabet.letters))
    out.append(f"K {A.alphabet.K}")
    out.append("states " + " ".join(A.states))
    out.append(f"initial {A.initial}")
    out.append("accepting " + " ".join(q for q in A.states if q in A.accepting))
    for t in A.transitions:
        out.append(f"edge {t.source} {t.letter} {t.target} : {t.guard}")
    return "\n".join(out) + "\n"


def load_dera(path: str | Path) -> DERA:
    path = Path(path)
    return parse_dera(path.read_text(encoding="utf-8"), str(path))


def bundled_models() -> dict[str, Path]:
    """Models shipped with the package, by name."""
    root = resources.files("tlsep") / "models"
    return {p.name[: -len(".dera")]: Path(str(p)) for p in sorted(root.iterdir(), key=lambda p: p.name)
            if p.name.endswith(".dera")}


def reported_size(A: DERA) -> int:
    """State count with the implicit sink, as reported in benchmark tables."""
    return A.n_states + (0 if A.is_total() else 1)
