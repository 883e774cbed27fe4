"""
The `.ma` text format.

PURPOSE:
- parse_ma: text → MarkovAutomaton (or ProbAutomaton for `prob_automaton` files).
- print_ma: the inverse; parse_ma(print_ma(m)) == m.
- parse_distribution / format_distribution: `q name, q name` lists used on the CLI.

CONTEXT:
- Line oriented, `#` starts a comment. The first statement is the header
  (`markov_automaton` or `prob_automaton`), then in any order:
    states <name>+
    initial <name>
    actions <name>+
    prob <src> <action|tau|chi(r)> : <q> <tgt> (, <q> <tgt>)*
    markov <src> <rate> <tgt>
- chi(r) tokens are only accepted in `prob_automaton` files; `markov` lines only in
  `markov_automaton` files.

NOTE:
- Parsing runs in two phases: statements are read with their positions (ParseError
  with line/column), then names and masses are resolved (SemanticError with line).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

import structlog

from src.constants.reserved import CHI_PREFIX, CHI_SUFFIX, MA_HEADER, PA_HEADER, TAU_TOKEN
from src.errors import MaBisimError, ParseError, SemanticError
from src.model_interface.automaton import MarkovAutomaton, MarkovianTransition, ProbAutomaton, Transition
from src.model_interface.distribution import SubDistribution
from src.model_interface.types import TAU, Action, Chi, External
from src.utils.rationals import format_rational, parse_rational

log = structlog.get_logger(__name__)

_TOKEN = re.compile(r"[:,]|[^\s:,]+")
_KEYWORDS = ("states", "initial", "actions", "prob", "markov")


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    column: int


@dataclass
class _Statement:
    keyword: Token
    args: List[Token] = field(default_factory=list)


# -------------------- phase 1: syntax -------------------- #

def _tokenize(text: str, line: int) -> List[Token]:
    code = text.split("#", 1)[0]
    return [Token(m.group(0), line, m.start() + 1) for m in _TOKEN.finditer(code)]


def _statements(text: str) -> Tuple[Token, List[_Statement]]:
    header: Optional[Token] = None
    statements: List[_Statement] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, lineno)
        if not tokens:
            continue
        head = tokens[0]
        if header is None:
            if head.text not in (MA_HEADER, PA_HEADER) or len(tokens) > 1:
                raise ParseError(f"expected '{MA_HEADER}' or '{PA_HEADER}' header", lineno, head.column)
            header = head
            continue
        if head.text not in _KEYWORDS:
            raise ParseError(f"unknown statement {head.text!r}", lineno, head.column)
        statements.append(_Statement(head, tokens[1:]))
    if header is None:
        raise ParseError("empty model file", 1, 1)
    return header, statements


def _expect_names(st: _Statement, at_least: int = 1, at_most: Optional[int] = None) -> List[Token]:
    for tok in st.args:
        if tok.text in (":", ","):
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
    if len(st.args) < at_least or (at_most is not None and len(st.args) > at_most):
        col = st.args[-1].column if st.args else st.keyword.column
        raise ParseError(f"wrong number of arguments to '{st.keyword.text}'", st.keyword.line, col)
    return st.args


def _rational(tok: Token) -> Fraction:
    try:
        return parse_rational(tok.text)
    except ValueError as e:
        raise ParseError(str(e), tok.line, tok.column) from None


def _branches(st: _Statement) -> Tuple[Token, Token, List[Tuple[Fraction, Token]]]:
    """prob <src> <action> : <q> <tgt> (, <q> <tgt>)*"""
    args = st.args
    if len(args) < 5 or args[2].text != ":":
        tok = args[min(len(args), 3) - 1] if args else st.keyword
        raise ParseError("expected 'prob <src> <action> : <q> <tgt>'", tok.line, tok.column)
    return args[0], args[1], _pairs(args[3:], args[2])


def _pairs(rest: List[Token], anchor: Token) -> List[Tuple[Fraction, Token]]:
    """<q> <tgt> (, <q> <tgt>)*"""
    branches: List[Tuple[Fraction, Token]] = []
    i = 0
    while True:
        if i + 1 >= len(rest):
            tok = rest[-1] if rest else anchor
            raise ParseError("expected '<q> <tgt>'", tok.line, tok.column)
        q_tok, tgt = rest[i], rest[i + 1]
        if tgt.text in (":", ","):
            raise ParseError("expected a target state", tgt.line, tgt.column)
        branches.append((_rational(q_tok), tgt))
        i += 2
        if i == len(rest):
            return branches
        if rest[i].text != ",":
            raise ParseError("expected ','", rest[i].line, rest[i].column)
        i += 1


# -------------------- phase 2: semantics -------------------- #

def _action(tok: Token, allow_chi: bool) -> Action:
    text = tok.text
    if text == TAU_TOKEN:
        return TAU
    if text.startswith(CHI_PREFIX):
        if not allow_chi:
            raise SemanticError(f"chi actions are only allowed in '{PA_HEADER}' files", tok.line)
        if not text.endswith(CHI_SUFFIX):
            raise ParseError(f"malformed chi action {text!r}", tok.line, tok.column)
        rate = _rational(Token(text[len(CHI_PREFIX):-len(CHI_SUFFIX)], tok.line, tok.column + len(CHI_PREFIX)))
        try:
            return Chi(rate)
        except MaBisimError as e:
            raise SemanticError(str(e), tok.line) from None
    return External(text)


def _check_name(tok: Token) -> str:
    if tok.text == TAU_TOKEN or tok.text.startswith(CHI_PREFIX):
        raise SemanticError(f"reserved name {tok.text!r}", tok.line)
    return tok.text


class _Resolver:
    def __init__(self, header: Token, statements: List[_Statement]):
        self.pa = header.text == PA_HEADER
        self.statements = statements
        self.states: List[str] = []
        self.index: Dict[str, int] = {}
        self.initial: Optional[int] = None
        self.actions: List[str] = []
        self.pt: List[Transition] = []
        self.mt: List[MarkovianTransition] = []

    def state(self, tok: Token) -> int:
        try:
            return self.index[tok.text]
        except KeyError:
            raise SemanticError(f"unknown state {tok.text!r}", tok.line) from None

    def run(self) -> MarkovAutomaton:
        declared = [st for st in self.statements if st.keyword.text == "states"]
        if not declared:
            raise SemanticError("missing 'states' statement")
        for st in declared:
            for tok in _expect_names(st):
                name = _check_name(tok)
                if name in self.index:
                    raise SemanticError(f"duplicate state {name!r}", tok.line)
                self.index[name] = len(self.states)
                self.states.append(name)

        for st in self.statements:
            handler = getattr(self, f"_on_{st.keyword.text}")
            handler(st)

        if self.initial is None:
            raise SemanticError("missing 'initial' statement")
        kind = ProbAutomaton if self.pa else MarkovAutomaton
        try:
            return kind(
                states=tuple(self.states),
                pt=tuple(self.pt),
                mt=tuple(self.mt),
                initial=self.initial,
                actions=frozenset(self.actions),
            )
        except MaBisimError as e:
            raise SemanticError(str(e)) from e

    def _on_states(self, st: _Statement) -> None:
        pass

    def _on_initial(self, st: _Statement) -> None:
        (tok,) = _expect_names(st, 1, 1)
        if self.initial is not None:
            raise SemanticError("duplicate 'initial' statement", tok.line)
        self.initial = self.state(tok)

    def _on_actions(self, st: _Statement) -> None:
        for tok in _expect_names(st):
            try:
                self.actions.append(External(tok.text).name)
            except MaBisimError:
                raise SemanticError(f"reserved action name {tok.text!r}", tok.line) from None

    def _on_prob(self, st: _Statement) -> None:
        src, action_tok, branches = _branches(st)
        source = self.state(src)
        action = _action(action_tok, allow_chi=self.pa)
        entries: List[Tuple[int, Fraction]] = []
        for q, tgt in branches:
            if q <= 0:
                raise SemanticError(f"probability {format_rational(q)} must be positive", tgt.line)
            entries.append((self.state(tgt), q))
        mass = sum((q for _, q in entries), Fraction(0))
        if mass != 1:
            raise SemanticError(f"probabilities sum to {format_rational(mass)}, expected 1", st.keyword.line)
        self.pt.append(Transition(source, action, SubDistribution(entries)))

    def _on_markov(self, st: _Statement) -> None:
        if self.pa:
            raise SemanticError(f"'markov' lines are not allowed in '{PA_HEADER}' files", st.keyword.line)
        src, rate_tok, tgt = _expect_names(st, 3, 3)
        rate = _rational(rate_tok)
        if rate <= 0:
            raise SemanticError(f"rate {format_rational(rate)} must be positive", rate_tok.line)
        self.mt.append(MarkovianTransition(self.state(src), rate, self.state(tgt)))


def parse_ma(text: str) -> MarkovAutomaton:
    """
    Parse `.ma` text.

    raises:
    - ParseError – malformed statements (line/column attached).
    - SemanticError – unknown states, masses ≠ 1, non-positive rates, reserved names.
    """
    header, statements = _statements(text)
    m = _Resolver(header, statements).run()
    log.debug("ma_parser.parsed", kind=header.text, states=m.size, pt=len(m.pt), mt=len(m.mt))
    return m


def load_ma(path: str) -> MarkovAutomaton:
    """
    Read and parse a `.ma` file.

    raises:
    - ParseError – the file is not UTF-8 (position of the first bad byte attached).
    """
    with open(path, "rb") as f:
        data = f.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        # column counts bytes, not characters
        line = data.count(b"\n", 0, e.start) + 1
        column = e.start - (data.rfind(b"\n", 0, e.start) + 1) + 1
        raise ParseError(f"invalid UTF-8 at byte offset {e.start}", line, column) from e
    return parse_ma(text)


# -------------------- printing -------------------- #

def format_distribution(rep: Mapping[str, Fraction]) -> str:
    return ", ".join(f"{format_rational(q)} {name}" for name, q in rep.items())


def parse_distribution(text: str) -> Dict[str, Fraction]:
    """`q name (, q name)*` → name-keyed masses (total mass ≤ 1)."""
    branches = _pairs(_tokenize(text, 1), Token(text, 1, 1))
    out: Dict[str, Fraction] = {}
    for q, tok in branches:
        if q < 0:
            raise SemanticError(f"negative mass {format_rational(q)} on {tok.text!r}")
        out[tok.text] = out.get(tok.text, Fraction(0)) + q
    total = sum(out.values(), Fraction(0))
    if total > 1:
        raise SemanticError(f"distribution has mass {format_rational(total)} > 1")
    return out


def _named(m: MarkovAutomaton, mu: SubDistribution) -> Dict[str, Fraction]:
    return {m.name(s): q for s, q in mu.items()}


def print_ma(m: Union[MarkovAutomaton, ProbAutomaton]) -> str:
    lines = [PA_HEADER if isinstance(m, ProbAutomaton) else MA_HEADER]
    lines.append("states " + " ".join(m.states))
    lines.append(f"initial {m.name(m.initial)}")
    if m.actions:
        lines.append("actions " + " ".join(sorted(m.actions)))
    for t in m.pt:
        lines.append(f"prob {m.name(t.source)} {t.action} : {format_distribution(_named(m, t.target))}")
    for x in m.mt:
        lines.append(f"markov {m.name(x.source)} {format_rational(x.rate)} {m.name(x.target)}")
    return "\n".join(lines) + "\n"


__all__ = [
    "Token",
    "parse_ma",
    "load_ma",
    "print_ma",
    "format_distribution",
    "parse_distribution",
]
