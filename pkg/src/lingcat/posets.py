"""Word orders and finitely generated poset ideals.

Words are plain ``str`` values whose characters are letters. Three orders are
provided: Higman's subsequence order (letters compared by equality), the
pattern order used for ordered surjections, and the subsequence order on
words with a fixed number of zeros that encodes morphisms of OI_d.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AlphabetError, DomainError, ParseError


def check_word(word: str, alphabet: Iterable[str]) -> None:
    letters = set(alphabet)
    bad = [c for c in word if c not in letters]
    if bad:
        raise AlphabetError(f"letter {bad[0]!r} of {word!r} is not in alphabet {sorted(letters)}")


class OrderKind(enum.Enum):
    HIGMAN = "higman"
    OS_PATTERN = "os"
    OI_ZERO_ALIGNED = "oi"


@dataclass(frozen=True)
class WordOrder:
    kind: OrderKind
    alphabet: tuple[str, ...]
    d: int | None = None

    def __post_init__(self):
        if len(set(self.alphabet)) != len(self.alphabet):
            raise DomainError("alphabet has repeated letters")
        if any(len(c) != 1 for c in self.alphabet):
            raise DomainError("letters must be single characters")
        if self.kind is OrderKind.OI_ZERO_ALIGNED:
            if self.d is None or self.d < 1:
                raise DomainError("OI zero-aligned order needs d >= 1")
            if tuple(self.alphabet) != tuple(str(i) for i in range(self.d + 1)):
                raise DomainError(f"OI_{self.d} order requires alphabet 0..{self.d}")

    @classmethod
    def higman(cls, alphabet: Iterable[str]) -> WordOrder:
        return cls(OrderKind.HIGMAN, tuple(alphabet))

    @classmethod
    def os_pattern(cls, alphabet: Iterable[str] | int) -> WordOrder:
        if isinstance(alphabet, int):
            alphabet = [str(i) for i in range(1, alphabet + 1)]
        return cls(OrderKind.OS_PATTERN, tuple(alphabet))

    @classmethod
    def oi(cls, d: int) -> WordOrder:
        return cls(OrderKind.OI_ZERO_ALIGNED, tuple(str(i) for i in range(d + 1)), d)

    def leq(self, u: str, w: str) -> bool:
        if self.kind is OrderKind.HIGMAN:
            return higman_leq(u, w, self.alphabet)
        if self.kind is OrderKind.OS_PATTERN:
            return os_leq(u, w, self.alphabet)
        return oi_leq(u, w, self.d)

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value, "alphabet": "".join(self.alphabet)}
        if self.d is not None:
            out["d"] = self.d
        return out

    @classmethod
    def from_dict(cls, data: dict) -> WordOrder:
        try:
            kind = OrderKind(data["kind"])
            if kind is OrderKind.OI_ZERO_ALIGNED:
                return cls.oi(int(data["d"]))
            return cls(kind, tuple(data["alphabet"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"bad order record {data!r}: {exc}") from exc


def higman_leq(u: str, w: str, alphabet: Iterable[str] | None = None) -> bool:
    """Is ``u`` a subsequence of ``w``? Greedy leftmost matching."""
    if alphabet is not None:
        check_word(u, alphabet)
        check_word(w, alphabet)
    it = iter(w)
    return all(c in it for c in u)


def os_leq(u: str, w: str, alphabet: Iterable[str] | None = None) -> bool:
    """Pattern order: is ``w`` in u1 P1* u2 P2* ... uk Pk* with Pi = {u1..ui}?

    Greedy leftmost matching is exact here because the filler sets grow
    along the word, so matching a letter early never removes options.
    """
    if alphabet is not None:
        check_word(u, alphabet)
        check_word(w, alphabet)
    if not u:
        return not w
    if not w or w[0] != u[0]:
        return False
    seen = {u[0]}
    pos = 1
    for c in u[1:]:
        while pos < len(w) and w[pos] != c:
            if w[pos] not in seen:
                return False
            pos += 1
        if pos == len(w):
            return False
        seen.add(c)
        pos += 1
    return all(x in seen for x in w[pos:])


def oi_leq(u: str, w: str, d: int) -> bool:
    """Subsequence order on words over 0..d carrying the same number of zeros."""
    alphabet = [str(i) for i in range(d + 1)]
    check_word(u, alphabet)
    check_word(w, alphabet)
    if u.count("0") != w.count("0"):
        raise DomainError(
            f"{u!r} and {w!r} have different zero counts; they live in different projectives"
        )
    return higman_leq(u, w)


# brute-force oracles ---------------------------------------------------------

def os_leq_bruteforce(u: str, w: str) -> bool:
    """Search every order-preserving injection phi satisfying the support condition."""
    n, m = len(u), len(w)
    for image in itertools.combinations(range(m), n):
        if any(u[i] != w[j] for i, j in enumerate(image)):
            continue
        ok = True
        for j in range(m):
            if not any(jp <= j and w[jp] == w[j] for jp in image):
                ok = False
                break
        if ok:
            return True
    return False


def subsequence_bruteforce(u: str, w: str) -> bool:
    return any(
        all(u[i] == w[j] for i, j in enumerate(image))
        for image in itertools.combinations(range(len(w)), len(u))
    )


def oi_leq_bruteforce(u: str, w: str) -> bool:
    """Embeddings whose complement avoids zeros; no zero-count precondition."""
    for image in itertools.combinations(range(len(w)), len(u)):
        if any(u[i] != w[j] for i, j in enumerate(image)):
            continue
        chosen = set(image)
        if all(w[j] != "0" for j in range(len(w)) if j not in chosen):
            return True
    return False


# ideals ----------------------------------------------------------------------

def minimal_generators(words: Iterable[str], order: WordOrder) -> tuple[str, ...]:
    """Drop every word lying above another one; survivors keep insertion order."""
    words = list(dict.fromkeys(words))
    for w in words:
        check_word(w, order.alphabet)
    keep = []
    for i, w in enumerate(words):
        if not any(j != i and order.leq(v, w) for j, v in enumerate(words)):
            keep.append(w)
    return tuple(keep)


@dataclass(frozen=True)
class PosetIdeal:
    order: WordOrder
    generators: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.order.kind is OrderKind.OI_ZERO_ALIGNED:
            if len({g.count("0") for g in self.generators}) > 1:
                raise DomainError("OI ideal generators must share one zero count")
        gens = minimal_generators(self.generators, self.order)
        object.__setattr__(self, "generators", gens)

    def __contains__(self, w: str) -> bool:
        return ideal_member(self, w)

    def to_dict(self) -> dict:
        return {
            "order": self.order.to_dict(),
            "alphabet": "".join(self.order.alphabet),
            "generators": list(self.generators),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> PosetIdeal:
        try:
            gens = tuple(data["generators"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"ideal record missing generators: {exc}") from exc
        return cls(WordOrder.from_dict(data["order"]), gens)

    @classmethod
    def loads(cls, text: str) -> PosetIdeal:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"ideal record is not valid JSON: {exc}") from exc
        return cls.from_dict(data)


def ideal_member(ideal: PosetIdeal, w: str) -> bool:
    check_word(w, ideal.order.alphabet)
    return any(ideal.order.leq(g, w) for g in ideal.generators)


def find_comparable_pair(seq: Sequence[str], order: WordOrder) -> tuple[int, int] | None:
    """First (i, j), i < j, with seq[i] <= seq[j]; indices are 0-based."""
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if order.leq(seq[i], seq[j]):
                return i, j
    return None
