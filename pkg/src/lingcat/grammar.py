"""Context-free grammars, a text format for them, and a bounded enumerator.

Text format: rules separated by ``;`` or newlines, ``Head -> alt | alt``,
symbols separated by whitespace, an empty alternative (or ``eps``) for the
empty word. Heads are the non-terminals; every other symbol is a terminal
and must be a single character. The first head is the start symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .automata import shortlex
from .config import limits_or_default
from .errors import BoundsError, DomainError, ParseError


@dataclass(frozen=True)
class Cfg:
    terminals: tuple[str, ...]
    nonterminals: tuple[str, ...]
    rules: tuple[tuple[str, tuple[str, ...]], ...]
    start: str

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple((h, tuple(b)) for h, b in self.rules))
        terms, nts = set(self.terminals), set(self.nonterminals)
        if terms & nts:
            raise DomainError(f"symbols {sorted(terms & nts)} are both terminal and non-terminal")
        if self.start not in nts:
            raise DomainError(f"start symbol {self.start!r} is not a non-terminal")
        for head, body in self.rules:
            if head not in nts:
                raise DomainError(f"rule head {head!r} is not a non-terminal")
            for sym in body:
                if sym not in terms and sym not in nts:
                    raise DomainError(f"undeclared symbol {sym!r} in rule for {head!r}")
        for t in self.terminals:
            if len(t) != 1:
                raise DomainError(f"terminal {t!r} must be a single character")

    def rules_for(self, head: str):
        return [b for h, b in self.rules if h == head]


def parse_cfg(text: str) -> Cfg:
    lines = [ln.strip() for chunk in text.split(";") for ln in chunk.splitlines()]
    lines = [ln for ln in lines if ln]
    parsed = []
    for ln in lines:
        if "->" not in ln:
            raise ParseError(f"grammar rule {ln!r} lacks '->'")
        head, rhs = ln.split("->", 1)
        head = head.strip()
        if not head or " " in head:
            raise ParseError(f"bad rule head in {ln!r}")
        for alt in rhs.split("|"):
            syms = [s for s in alt.split() if s not in ("eps", "ε")]
            parsed.append((head, tuple(syms)))
    if not parsed:
        raise ParseError("empty grammar")
    heads = list(dict.fromkeys(h for h, _ in parsed))
    terminals = sorted({s for _, b in parsed for s in b if s not in heads})
    return Cfg(tuple(terminals), tuple(heads), tuple(parsed), heads[0])


def enumerate_cfg(g: Cfg, max_len: int, limits=None) -> list[str]:
    """All words of length <= max_len in the language, by set fixpoint."""
    lim = limits_or_default(limits)
    if max_len > lim.max_len:
        raise BoundsError(f"max_len {max_len} exceeds the enumeration limit {lim.max_len}")
    lang = {n: set() for n in g.nonterminals}

    def sym_words(s):
        return lang[s] if s in lang else {s}

    changed = True
    while changed:
        changed = False
        for head, body in g.rules:
            acc = {""}
            for s in body:
                acc = {u + v for u in acc for v in sym_words(s) if len(u) + len(v) <= max_len}
                if not acc:
                    break
            new = acc - lang[head]
            if new:
                lang[head] |= new
                changed = True
                if len(lang[head]) > lim.max_work:
                    raise BoundsError("enumeration exceeds the work limit")
    return shortlex(lang[g.start])


def equal_count_grammar() -> Cfg:
    """Words over {1,2} with as many 1s as 2s (first-return decomposition)."""
    return parse_cfg("S -> | 1 P 2 S | 2 Q 1 S; P -> | 1 P 2 P; Q -> | 2 Q 1 Q")


def oi2_equal_grammar(zeros: int) -> Cfg:
    """Words over {0,1,2} with exactly ``zeros`` zeros and equally many 1s and 2s.

    These encode the morphisms out of [zeros] in the subcategory of OI_2
    whose colourings have equal fibres. W_k is a walk (1 up, 2 down, 0 flat)
    returning to height 0 with k flat steps; P_k / N_k are the walks staying
    weakly above / below 0. Decomposing at the first step keeps it unambiguous.
    """
    if zeros < 0:
        raise DomainError("zero count must be nonnegative")
    rules = []
    for k in range(zeros + 1):
        for kind, up, down in (("P", "1", "2"), ("N", "2", "1")):
            if k == 0:
                rules.append((f"{kind}0", ()))
            else:
                rules.append((f"{kind}{k}", ("0", f"{kind}{k - 1}")))
            for i in range(k + 1):
                rules.append((f"{kind}{k}", (up, f"{kind}{i}", down, f"{kind}{k - i}")))
        if k == 0:
            rules.append(("W0", ()))
        else:
            rules.append((f"W{k}", ("0", f"W{k - 1}")))
        for i in range(k + 1):
            rules.append((f"W{k}", ("1", f"P{i}", "2", f"W{k - i}")))
            rules.append((f"W{k}", ("2", f"N{i}", "1", f"W{k - i}")))
    nts = tuple(dict.fromkeys([f"W{zeros}"] + [h for h, _ in rules]))
    return Cfg(("0", "1", "2"), nts, tuple(rules), f"W{zeros}")
