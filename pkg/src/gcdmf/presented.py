"""Monoids given by finite homogeneous presentations.

Every relation preserves length, so the congruence class of a word is a
finite set of words of the same length, and the word problem is solved by
closing a word under single relation replacements.  Elements are handled
through their canonical word: the least member of the class in the atom
declaration order.

Group-level questions (is a signed word trivial in the enveloping group?)
are only semi-decided: a bounded search returns a derivation that anyone can
re-check with :func:`verify_group_derivation`.
"""

from __future__ import annotations

import heapq
import json
import random
import re
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import (BadParam, BudgetExceeded, LiteralSyntaxError, NonHomogeneous,
                     UnknownGenerator)
from .intlattice import in_integer_span

Word = tuple[int, ...]
SignedWord = tuple[tuple[int, int], ...]

DEFAULT_CLASS_CAP = 100_000
DEFAULT_GROUP_RADIUS = 16


@dataclass(frozen=True)
class Presentation:
    atoms: tuple[str, ...]
    relations: tuple[tuple[Word, Word], ...]
    name: str = ""

    def word(self, text: str) -> Word:
        return tokenize(self, text)

    def show(self, w: Sequence[int]) -> str:
        if not w:
            return "1"
        sep = "" if all(len(a) == 1 or (len(a) == 2 and a[1] == "'") for a in self.atoms) else "*"
        return sep.join(self.atoms[i] for i in w)

    def show_signed(self, w: SignedWord) -> str:
        if not w:
            return "1"
        return " ".join(self.atoms[x] + ("^-1" if e < 0 else "") for x, e in w)

    def to_text(self) -> str:
        rels = "; ".join(f"rel: {self.show(u)} = {self.show(v)}" for u, v in self.relations)
        return f"atoms: {' '.join(self.atoms)}; {rels}"

    def to_json(self) -> str:
        doc = {"name": self.name, "atoms": list(self.atoms),
               "relations": [[self.show(u), self.show(v)] for u, v in self.relations]}
        return json.dumps(doc, indent=2) + "\n"


def tokenize(pres: Presentation, text: str) -> Word:
    """Read a positive word: atoms juxtaposed or separated by ``*``/spaces."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    names = sorted(pres.atoms, key=len, reverse=True)
    index = {a: i for i, a in enumerate(pres.atoms)}
    out: list[int] = []
    for chunk in re.split(r"[\s*]+", text):
        pos = 0
        while pos < len(chunk):
            for nm in names:
                if chunk.startswith(nm, pos):
                    out.append(index[nm])
                    pos += len(nm)
                    break
            else:
                raise UnknownGenerator(f"cannot read an atom at {chunk[pos:]!r}")
    return tuple(out)


def parse_signed(pres: Presentation, text: str) -> SignedWord:
    """Read a signed word such as ``a c d^-1 b^-1``."""
    text = text.strip()
    if text in ("", "1"):
        return ()
    out: list[tuple[int, int]] = []
    for chunk in re.split(r"[\s*]+", text):
        if not chunk:
            continue
        inv = chunk.endswith("^-1")
        body = chunk[:-3] if inv else chunk
        letters = tokenize(pres, body)
        if inv:
            out.extend((x, -1) for x in reversed(letters))
        else:
            out.extend((x, 1) for x in letters)
    return tuple(out)


def make_presentation(atoms: Sequence[str], relations: Iterable[tuple[str | Sequence[str], str | Sequence[str]]],
                      name: str = "") -> Presentation:
    """Validate a presentation; relation sides may be strings or atom-name lists."""
    atoms = tuple(atoms)
    if len(set(atoms)) != len(atoms):
        raise BadParam("atom names must be distinct")
    shell = Presentation(atoms, (), name)
    index = {a: i for i, a in enumerate(atoms)}

    def side(s) -> Word:
        if isinstance(s, str):
            return tokenize(shell, s)
        try:
            return tuple(index[a] for a in s)
        except KeyError as exc:
            raise UnknownGenerator(f"unknown atom {exc.args[0]!r}") from None

    rels = []
    for u, v in relations:
        uw, vw = side(u), side(v)
        if not uw or not vw:
            raise BadParam("relation sides must be nonempty")
        if len(uw) != len(vw):
            raise NonHomogeneous(f"{shell.show(uw)} = {shell.show(vw)} changes length")
        rels.append((uw, vw))
    return Presentation(atoms, tuple(rels), name)


def parse_presentation(text: str) -> Presentation:
    """Read ``atoms: a b c; rel: ab = ba; ...`` or the JSON form."""
    text = text.strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
            return make_presentation(doc["atoms"], [tuple(r) for r in doc["relations"]], doc.get("name", ""))
        except (ValueError, KeyError, TypeError) as exc:
            raise LiteralSyntaxError(f"malformed presentation JSON: {exc}") from None
    atoms: list[str] = []
    rels: list[tuple[str, str]] = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        key, _, body = part.partition(":")
        key = key.strip()
        if key == "atoms":
            atoms = body.split()
        elif key == "rel":
            lhs, eq, rhs = body.partition("=")
            if not eq:
                raise LiteralSyntaxError(f"relation without '=': {part!r}")
            rels.append((lhs.strip(), rhs.strip()))
        else:
            raise LiteralSyntaxError(f"unexpected clause {part!r}")
    if not atoms:
        raise LiteralSyntaxError("no atoms declared")
    return make_presentation(atoms, rels)


# ---------------------------------------------------------------- builders

def presentation_md() -> Presentation:
    return make_presentation(["a", "b", "c", "a'", "b'", "c'"],
                             [("ab'", "ba'"), ("bc'", "cb'"), ("ac'", "ca'")], "MD")


def _mb_atom(u: str, v: str) -> str:
    return f"e_{{{u},{v}}}"


def presentation_mb() -> Presentation:
    """Square relations of the truncated 4-cube, minus the square 1,12,13,123."""
    from .poset import truncated_powerset
    p = truncated_powerset(4)
    atoms = [_mb_atom(p.label(i), p.label(j)) for i, j in p.covers]
    rels = []
    for x in range(p.n):
        for z in sorted(p.up[x]):
            mids = [y for y in p.interval(x, z) if y not in (x, z)]
            if len(mids) < 2:
                continue
            lx, lz = p.label(x), p.label(z)
            chains = [[_mb_atom(lx, p.label(y)), _mb_atom(p.label(y), lz)] for y in mids]
            for c1, c2 in zip(chains, chains[1:]):
                if (lx, lz) == ("1", "123"):
                    continue
                rels.append((c1, c2))
    return make_presentation(atoms, rels, "MB")


def presentation_q11() -> Presentation:
    rels = "ab=ba bc=cb cd=dc de=ed eb=ih fc=cg fa=dh hd=ij hg=kb dj=ic ie=kf"
    return make_presentation(list("abcdefghijk"), [tuple(r.split("=")) for r in rels.split()], "Q11")


def presentation_qc4() -> Presentation:
    rels = "ab=ba cd=dc ef=fe db=xx eb=yy ca=xy fa=yx"
    return make_presentation(list("abcdefxy"), [tuple(r.split("=")) for r in rels.split()], "QC4")


def presentation_qc6() -> Presentation:
    rels = "ab=ba cd=dc ef=fe ea=xy ae=yx db=zy bd=yz fc=xz cf=zx"
    return make_presentation(list("abcdefxyz"), [tuple(r.split("=")) for r in rels.split()], "QC6")


def free_commutative(k: int) -> Presentation:
    if not 1 <= k <= 26:
        raise BadParam("free_commutative needs 1 <= k <= 26")
    atoms = [chr(ord("a") + i) for i in range(k)]
    return make_presentation(atoms, [(x + y, y + x) for x, y in combinations(atoms, 2)], f"free_commutative({k})")


STANDARD_PRESENTATIONS = {
    "MD": presentation_md,
    "MB": presentation_mb,
    "Q11": presentation_q11,
    "QC4": presentation_qc4,
    "QC6": presentation_qc6,
}


# ---------------------------------------------------------------- results

@dataclass(frozen=True)
class Found:
    word: Word


@dataclass(frozen=True)
class NoneWithin:
    """No common multiple up to the given length; a bounded certificate only."""
    bound: int


@dataclass(frozen=True)
class Yes:
    derivation: tuple[SignedWord, ...] = ()
    evidence: str = ""


@dataclass(frozen=True)
class Unknown:
    reason: str


@dataclass(frozen=True)
class DerivationCheck:
    ok: bool
    failed_step: int | None = None

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------- the monoid

class PresentedMonoid:
    """Monoid handle over canonical words of a homogeneous presentation."""

    kind = "presented"

    def __init__(self, pres: Presentation, class_cap: int = DEFAULT_CLASS_CAP):
        self.pres = pres
        self.class_cap = class_cap
        self._classes: dict[Word, frozenset[Word]] = {}
        self._rules: dict[int, list[tuple[Word, Word]]] = {}
        for u, v in pres.relations:
            for l, r in ((u, v), (v, u)):
                self._rules.setdefault(l[0], []).append((l, r))
        self._pairs: dict[Word, list[Word]] | None = None
        if all(len(u) == 2 and len(v) == 2 for u, v in pres.relations):
            self._pairs = {}
            for u, v in pres.relations:
                self._pairs.setdefault(u, []).append(v)
                self._pairs.setdefault(v, []).append(u)
        self._rcomp, self.right_complemented = _complements(pres.relations, first=True)
        self._lcomp, self.left_complemented = _complements(pres.relations, first=False)
        self._rlcm: dict[tuple[Word, Word], Word | None] = {}
        self._llcm: dict[tuple[Word, Word], Word | None] = {}
        self._rdiv: dict[Word, tuple[Word, ...]] = {}
        self._ldiv: dict[Word, tuple[Word, ...]] = {}
        self.interval_poset = None
        if pres.name == "MB":
            from .poset import truncated_powerset
            self.interval_poset = truncated_powerset(4)

    def __repr__(self) -> str:
        return f"PresentedMonoid({self.pres.name or 'anonymous'})"

    # -- word problem -------------------------------------------------------

    def congruence_class(self, word: Sequence[int]) -> frozenset[Word]:
        w = tuple(word)
        hit = self._classes.get(w)
        if hit is not None:
            return hit
        seen = {w}
        stack = [w]
        pairs = self._pairs
        while stack:
            cur = stack.pop()
            if pairs is not None:
                # every relation swaps one letter pair for another
                for i in range(len(cur) - 1):
                    for r in pairs.get(cur[i:i + 2], ()):
                        nw = cur[:i] + r + cur[i + 2:]
                        if nw not in seen:
                            seen.add(nw)
                            stack.append(nw)
                if len(seen) > self.class_cap:
                    raise BudgetExceeded(f"congruence class exceeds {self.class_cap} words")
                continue
            for i, x in enumerate(cur):
                for l, r in self._rules.get(x, ()):
                    if cur[i:i + len(l)] == l:
                        nw = cur[:i] + r + cur[i + len(l):]
                        if nw not in seen:
                            seen.add(nw)
                            stack.append(nw)
            if len(seen) > self.class_cap:
                raise BudgetExceeded(f"congruence class exceeds {self.class_cap} words")
        cls = frozenset(seen)
        for member in cls:
            self._classes[member] = cls
        return cls

    def canon(self, word: Sequence[int]) -> Word:
        return min(self.congruence_class(word))

    def equal(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return len(u) == len(v) and tuple(v) in self.congruence_class(u)

    # -- handle protocol ----------------------------------------------------

    def identity(self) -> Word:
        return ()

    def is_identity(self, a: Word) -> bool:
        return not a

    def element(self, word: Sequence[int]) -> Word:
        return self.canon(word)

    def atoms(self) -> list[Word]:
        return [(i,) for i in range(len(self.pres.atoms))]

    def length(self, a: Word) -> int:
        return len(a)

    def sort_key(self, a: Word):
        return (len(a), a)

    def mul(self, a: Word, b: Word) -> Word:
        if not a:
            return b
        if not b:
            return a
        return self.canon(a + b)

    def left_divides(self, a: Word, b: Word) -> bool:
        return self._left_quotient(a, b) is not None

    def right_divides(self, a: Word, b: Word) -> bool:
        return self._right_quotient(b, a) is not None

    def _left_quotient(self, a: Word, b: Word) -> Word | None:
        if len(a) > len(b):
            return None
        cls_a = self.congruence_class(a)
        for w in self.congruence_class(b):
            if w[:len(a)] in cls_a:
                return self.canon(w[len(a):])
        return None

    def _right_quotient(self, b: Word, a: Word) -> Word | None:
        if len(a) > len(b):
            return None
        cls_a = self.congruence_class(a)
        cut = len(b) - len(a)
        for w in self.congruence_class(b):
            if w[cut:] in cls_a:
                return self.canon(w[:cut])
        return None

    def left_quotient(self, a: Word, b: Word) -> Word:
        q = self._left_quotient(a, b)
        if q is None:
            raise ValueError("not a left divisor")
        return q

    def right_quotient(self, b: Word, a: Word) -> Word:
        q = self._right_quotient(b, a)
        if q is None:
            raise ValueError("not a right divisor")
        return q

    def right_divisors(self, a: Word) -> list[Word]:
        if a not in self._rdiv:
            out = {self.canon(w[k:]) for w in self.congruence_class(a) for k in range(len(a) + 1)}
            self._rdiv[a] = tuple(sorted(out, key=self.sort_key))
        return list(self._rdiv[a])

    def left_divisors(self, a: Word) -> list[Word]:
        if a not in self._ldiv:
            out = {self.canon(w[:k]) for w in self.congruence_class(a) for k in range(len(a) + 1)}
            self._ldiv[a] = tuple(sorted(out, key=self.sort_key))
        return list(self._ldiv[a])

    def left_gcd(self, a: Word, b: Word) -> Word:
        common = set(self.left_divisors(a)) & set(self.left_divisors(b))
        return _unique_max(common, self.left_divides, "left gcd")

    def right_gcd(self, a: Word, b: Word) -> Word:
        common = set(self.right_divisors(a)) & set(self.right_divisors(b))
        return _unique_max(common, self.right_divides, "right gcd")

    # -- lcms ---------------------------------------------------------------
    #
    # With length-two relations and at most one relation per pair of initial
    # letters, word reversing computes right lcms in |a|*|b| steps; the same
    # holds on the left with final letters.  Otherwise fall back to a bounded
    # search over common multiples.

    def right_lcm(self, a: Word, b: Word) -> Word | None:
        key = (a, b)
        if key not in self._rlcm:
            if self.right_complemented:
                rev = _reverse_right(self._rcomp, a, b)
                res = None if rev is None else self.canon(a + rev)
            else:
                res = self.right_lcm_bounded(a, b, len(a) + len(b) + 4)
            self._rlcm[key] = res
        return self._rlcm[key]

    def left_lcm(self, a: Word, b: Word) -> Word | None:
        key = (a, b)
        if key not in self._llcm:
            if self.left_complemented:
                rev = _reverse_left(self._lcomp, a, b)
                res = None if rev is None else self.canon(rev + a)
            else:
                res = self.left_lcm_bounded(a, b, len(a) + len(b) + 4)
            self._llcm[key] = res
        return self._llcm[key]

    def right_lcm_bounded(self, a: Word, b: Word, bound: int) -> Word | None:
        for level in self._right_multiple_levels(a, bound):
            hits = sorted(m for m in level if self.left_divides(b, m))
            if hits:
                return _unique_max(set(hits), lambda x, y: self.left_divides(y, x), "right lcm")
        return None

    def left_lcm_bounded(self, a: Word, b: Word, bound: int) -> Word | None:
        for level in self._left_multiple_levels(a, bound):
            hits = sorted(m for m in level if self.right_divides(b, m))
            if hits:
                return _unique_max(set(hits), lambda x, y: self.right_divides(y, x), "left lcm")
        return None

    def _right_multiple_levels(self, a: Word, bound: int):
        level = {self.canon(a)}
        for _ in range(len(a), bound + 1):
            yield level
            level = {self.canon(m + (x,)) for m in level for x in range(len(self.pres.atoms))}

    def _left_multiple_levels(self, a: Word, bound: int):
        level = {self.canon(a)}
        for _ in range(len(a), bound + 1):
            yield level
            level = {self.canon((x,) + m) for m in level for x in range(len(self.pres.atoms))}

    def elements_up_to(self, bound: int) -> list[Word]:
        out: list[Word] = [()]
        level = {()}
        for _ in range(bound):
            level = {self.canon(m + (x,)) for m in level for x in range(len(self.pres.atoms))}
            out.extend(sorted(level))
        return out

    # -- text -----------------------------------------------------------------

    def format(self, a: Word) -> str:
        if self.interval_poset is not None and a:
            # atoms e_{u,v} print as intervals [u,v]
            return "*".join("[" + self.pres.atoms[x][3:-1] + "]" for x in a)
        return self.pres.show(a)

    def parse(self, text: str) -> Word:
        text = text.strip()
        if self.interval_poset is not None and "[" in text:
            return self._parse_intervals(text)
        return self.canon(tokenize(self.pres, text))

    def _parse_intervals(self, text: str) -> Word:
        p = self.interval_poset
        word: list[int] = []
        index = {a: i for i, a in enumerate(self.pres.atoms)}
        for m in re.finditer(r"\[\s*([^,\]\s]+)\s*,\s*([^\]\s]+)\s*\]|([^\[\]*\s]+)", text):
            if m.group(3) is not None:
                word.extend(tokenize(self.pres, m.group(3)))
                continue
            x, z = p.index(m.group(1)), p.index(m.group(2))
            chains = _maximal_chains(p, x, z)
            if not chains:
                raise LiteralSyntaxError(f"[{m.group(1)},{m.group(2)}] is not an interval")
            words = [tuple(index[_mb_atom(p.label(s), p.label(t))] for s, t in zip(c, c[1:])) for c in chains]
            if len({self.canon(w) for w in words}) != 1:
                raise LiteralSyntaxError(f"[{m.group(1)},{m.group(2)}] is ambiguous in this monoid")
            word.extend(words[0])
        return self.canon(word)

    # -- group level ----------------------------------------------------------

    def signed_letters(self, a: Word, sign: int) -> list[tuple[int, int]]:
        if sign > 0:
            return [(x, 1) for x in a]
        return [(x, -1) for x in reversed(a)]

    def is_free_commutative(self) -> bool:
        n = len(self.pres.atoms)
        pairs = {frozenset((u[0], u[1])) for u, v in self.pres.relations
                 if len(u) == 2 and v == (u[1], u[0]) and u[0] != u[1]}
        return len(self.pres.relations) == n * (n - 1) // 2 and len(pairs) == len(self.pres.relations)

    def abelian_obstruction(self, w: SignedWord) -> bool:
        """True when the exponent sums of w are not killed by the relations."""
        n = len(self.pres.atoms)
        target = [0] * n
        for x, e in w:
            target[x] += e
        rows = []
        for u, v in self.pres.relations:
            row = [0] * n
            for x in u:
                row[x] += 1
            for x in v:
                row[x] -= 1
            rows.append(row)
        return not in_integer_span(rows, target)


def _unique_max(cands: set, divides, what: str):
    maxima = [c for c in cands if all(divides(d, c) for d in cands)]
    if len(maxima) != 1:
        raise BadParam(f"{what} does not exist here (not a gcd-monoid?)")
    return maxima[0]


def _maximal_chains(p, x: int, z: int) -> list[list[int]]:
    if not p.leq(x, z):
        return []
    if x == z:
        return [[x]]
    out = []
    for a, b in p.covers:
        if a == x and p.leq(b, z):
            out.extend([x] + rest for rest in _maximal_chains(p, b, z))
    return out


def _complements(relations, first: bool):
    comp: dict[tuple[int, int], tuple[int, int]] = {}
    ok = True
    for u, v in relations:
        if len(u) != 2 or len(v) != 2:
            ok = False
            continue
        if first:
            x, y, cx, cy = u[0], v[0], u[1], v[1]
        else:
            x, y, cx, cy = u[1], v[1], u[0], v[0]
        if x == y or (x, y) in comp:
            ok = False
            continue
        comp[(x, y)] = (cx, cy)
        comp[(y, x)] = (cy, cx)
    return comp, ok


def _reverse_right(comp, a: Word, b: Word) -> Word | None:
    """Right reversing of a^-1 b; returns c with a*c = b*d, or None if blocked."""
    w = [(x, -1) for x in reversed(a)] + [(y, 1) for y in b]
    i = 0
    while True:
        i = next((k for k in range(max(i - 1, 0), len(w) - 1) if w[k][1] < 0 < w[k + 1][1]), None)
        if i is None:
            break
        x, y = w[i][0], w[i + 1][0]
        if x == y:
            del w[i:i + 2]
            continue
        pair = comp.get((x, y))
        if pair is None:
            return None
        cx, cy = pair
        # x^-1 y = cx cy^-1 because x cx = y cy
        w[i:i + 2] = [(cx, 1), (cy, -1)]
    return tuple(x for x, e in w if e > 0)


def _reverse_left(comp, a: Word, b: Word) -> Word | None:
    """Left reversing of a b^-1; returns c with c*a = d*b, or None if blocked."""
    w = [(x, 1) for x in a] + [(y, -1) for y in reversed(b)]
    i = 0
    while True:
        i = next((k for k in range(max(i - 1, 0), len(w) - 1) if w[k][1] > 0 > w[k + 1][1]), None)
        if i is None:
            break
        x, y = w[i][0], w[i + 1][0]
        if x == y:
            del w[i:i + 2]
            continue
        pair = comp.get((x, y))
        if pair is None:
            return None
        cx, cy = pair
        # x y^-1 = cx^-1 cy because cx x = cy y
        w[i:i + 2] = [(cx, -1), (cy, 1)]
    neg = [x for x, e in w if e < 0]
    return tuple(reversed(neg))


# ---------------------------------------------------------------- operations

def congruence_class(pres: Presentation | PresentedMonoid, word: Sequence[int]) -> frozenset[Word]:
    return _monoid(pres).congruence_class(word)


def equal(pres: Presentation | PresentedMonoid, u: Sequence[int], v: Sequence[int]) -> bool:
    return _monoid(pres).equal(u, v)


def _monoid(pres) -> PresentedMonoid:
    return pres if isinstance(pres, PresentedMonoid) else PresentedMonoid(pres)


def common_right_multiple_bounded(pres, words: Sequence[Sequence[int]], bound: int | None = None) -> Found | NoneWithin:
    """Shortest common right multiple of all ``words`` with length <= bound."""
    m = _monoid(pres)
    words = [m.canon(w) for w in words]
    if bound is None:
        bound = sum(len(w) for w in words[:2]) + 4
    if bound < max(len(w) for w in words):
        raise BadParam("bound is shorter than an input word")
    first = max(words, key=len)
    for level in m._right_multiple_levels(first, bound):
        hits = sorted(c for c in level if all(m.left_divides(w, c) for w in words))
        if hits:
            return Found(hits[0])
    return NoneWithin(bound)


def maximal_common_right_divisors(pres, u: Sequence[int], v: Sequence[int]) -> set[Word]:
    m = _monoid(pres)
    common = set(m.right_divisors(m.canon(u))) & set(m.right_divisors(m.canon(v)))
    return {c for c in common if not any(d != c and m.right_divides(c, d) for d in common)}


# ---------------------------------------------------------------- group words

def free_reduce(w: Sequence[tuple[int, int]]) -> SignedWord:
    out: list[tuple[int, int]] = []
    for x, e in w:
        if out and out[-1][0] == x and out[-1][1] == -e:
            out.pop()
        else:
            out.append((x, e))
    return tuple(out)


def inverse(w: Sequence[tuple[int, int]]) -> SignedWord:
    return tuple((x, -e) for x, e in reversed(w))


def _positive(w: Word) -> SignedWord:
    return tuple((x, 1) for x in w)


def _is_free_step(short: SignedWord, long: SignedWord) -> bool:
    if len(long) != len(short) + 2:
        return False
    for i in range(len(long) - 1):
        (x, e), (y, f) = long[i], long[i + 1]
        if x == y and e == -f and long[:i] + long[i + 2:] == short:
            return True
    return False


def _is_relation_step(pres: Presentation, w1: SignedWord, w2: SignedWord) -> bool:
    if len(w1) != len(w2) or w1 == w2:
        return False
    lo = next(i for i in range(len(w1)) if w1[i] != w2[i])
    hi = max(i for i in range(len(w1)) if w1[i] != w2[i])
    for u, v in pres.relations:
        for l, r in ((u, v), (v, u)):
            L = len(l)
            for start in range(max(0, hi - L + 1), min(lo, len(w1) - L) + 1):
                if (w1[start:start + L] == _positive(l) and w2[start:start + L] == _positive(r)
                        and w1[:start] == w2[:start] and w1[start + L:] == w2[start + L:]):
                    return True
    return False


def verify_group_derivation(pres: Presentation | PresentedMonoid, words: Sequence[SignedWord]) -> DerivationCheck:
    """Each consecutive pair must differ by one free insertion/deletion or one relation swap."""
    p = pres.pres if isinstance(pres, PresentedMonoid) else pres
    if not words:
        return DerivationCheck(False, 0)
    for k in range(len(words) - 1):
        a, b = tuple(words[k]), tuple(words[k + 1])
        if not (_is_free_step(a, b) or _is_free_step(b, a) or _is_relation_step(p, a, b)):
            return DerivationCheck(False, k)
    return DerivationCheck(True)


def _free_path(a: SignedWord, b: SignedWord) -> list[SignedWord]:
    """Single-pair steps from a to b; both must have the same free reduction."""
    def down(w: SignedWord) -> list[SignedWord]:
        path = [w]
        cur = list(w)
        while True:
            i = next((k for k in range(len(cur) - 1)
                      if cur[k][0] == cur[k + 1][0] and cur[k][1] == -cur[k + 1][1]), None)
            if i is None:
                return path
            del cur[i:i + 2]
            path.append(tuple(cur))

    pa, pb = down(a), down(b)
    if pa[-1] != pb[-1]:
        raise ValueError("words are not freely equal")
    return pa + pb[::-1][1:]


def _relators(pres: Presentation) -> list[tuple[Word, Word]]:
    return [(l, r) for u, v in pres.relations for l, r in ((u, v), (v, u))]


def _cyclic_split(w: SignedWord) -> tuple[SignedWord, SignedWord]:
    """Write a freely reduced word as h c h^-1 with c cyclically reduced."""
    k = 0
    while k < len(w) // 2 and w[k][0] == w[-1 - k][0] and w[k][1] == -w[-1 - k][1]:
        k += 1
    return w[:k], w[k:len(w) - k]


def relator_step(pres: Presentation, before: SignedWord, after: SignedWord) -> list[SignedWord] | None:
    """Expand ``before -> after`` into elementary steps when it is one relator move.

    The move is legal when before = A P B and after = A Q B (freely) with
    P Q^-1 conjugate to l r^-1 for a relation l = r.  The expansion inserts
    the conjugated relator freely, swaps l for r and cancels.
    """
    fb, fa = free_reduce(before), free_reduce(after)
    k = 0
    while k < min(len(fb), len(fa)) and fb[k] == fa[k]:
        k += 1
    j = 0
    while j < min(len(fb), len(fa)) - k and fb[-1 - j] == fa[-1 - j]:
        j += 1
    alpha, beta = fb[:k], fb[len(fb) - j:]
    P, Q = fb[k:len(fb) - j], fa[k:len(fa) - j]
    pq = free_reduce(P + inverse(Q))
    h, c = _cyclic_split(pq)
    for l, r in _relators(pres):
        rel = _positive(l) + inverse(_positive(r))
        for t in range(len(rel)):
            if rel[t:] + rel[:t] == c:
                g = free_reduce(h + inverse(rel[:t]))
                mid1 = alpha + g + _positive(l) + inverse(_positive(r)) + inverse(g) + Q + beta
                mid2 = alpha + g + _positive(r) + inverse(_positive(r)) + inverse(g) + Q + beta
                return _free_path(before, mid1) + [mid2] + _free_path(mid2, after)[1:]
    return None


def expand_derivation(pres: Presentation | PresentedMonoid, lines: Sequence[SignedWord]) -> list[SignedWord]:
    """Turn a displayed chain of group words into elementary legal steps."""
    p = pres.pres if isinstance(pres, PresentedMonoid) else pres
    out = [tuple(lines[0])]
    for a, b in zip(lines, lines[1:]):
        a, b = tuple(a), tuple(b)
        if free_reduce(a) == free_reduce(b):
            seg = _free_path(a, b)
        else:
            seg = relator_step(p, a, b)
            if seg is None:
                raise ValueError(f"no single relator move from {p.show_signed(a)} to {p.show_signed(b)}")
        out.extend(seg[1:])
    # drop accidental repeats, which are not steps
    dedup = [out[0]]
    for w in out[1:]:
        if w != dedup[-1]:
            dedup.append(w)
    return dedup


def group_trivial_bounded(pres: Presentation | PresentedMonoid, w: SignedWord,
                          radius: int = DEFAULT_GROUP_RADIUS, state_cap: int = 200_000,
                          slack: int = 4) -> Yes | Unknown:
    """Search for a proof that ``w`` is trivial in the enveloping group.

    Moves replace a subword P by Q^-1 whenever P Q is a cyclic rotation of a
    relator (or its inverse); free reduction is applied after every move.
    At most ``radius`` moves are used and words longer than the start plus
    ``slack`` are not explored.  The answer is YES with an elementary
    derivation, or UNKNOWN.
    """
    p = pres.pres if isinstance(pres, PresentedMonoid) else pres
    start = free_reduce(w)
    cap_len = len(start) + slack
    rotations: dict[tuple[int, int], list[tuple[SignedWord, SignedWord]]] = {}
    for l, r in _relators(p):
        rel = _positive(l) + inverse(_positive(r))
        for cyc in (rel, inverse(rel)):
            for t in range(len(cyc)):
                rot = cyc[t:] + cyc[:t]
                for cut in range(1, len(rot) + 1):
                    P, S = rot[:cut], rot[cut:]
                    rotations.setdefault(P[0], []).append((P, inverse(S)))
    for key in rotations:
        rotations[key] = sorted(set(rotations[key]))
    # best-first on (moves, length) keeps the frontier of short words small
    parent: dict[SignedWord, SignedWord | None] = {start: None}
    depth = {start: 0}
    heap = [(len(start), 0, start)]
    found = start if not start else None
    while heap and found is None:
        _, d, cur = heapq.heappop(heap)
        if d >= radius:
            continue
        for i, letter in enumerate(cur):
            for P, Q in rotations.get(letter, ()):
                if cur[i:i + len(P)] != P:
                    continue
                nxt = free_reduce(cur[:i] + Q + cur[i + len(P):])
                if len(nxt) > cap_len or nxt in parent:
                    continue
                parent[nxt] = cur
                depth[nxt] = d + 1
                if not nxt:
                    found = nxt
                    break
                heapq.heappush(heap, (len(nxt) + d + 1, d + 1, nxt))
            if found is not None:
                break
        if len(parent) > state_cap:
            return Unknown(f"state budget {state_cap} exhausted")
    if found is None:
        return Unknown(f"no derivation within radius {radius}")
    chain = []
    node: SignedWord | None = found
    while node is not None:
        chain.append(node)
        node = parent[node]
    chain.reverse()
    lines = [tuple(w)] + chain if tuple(w) != chain[0] else chain
    return Yes(tuple(expand_derivation(p, lines)), f"{len(chain) - 1} relator moves")


# ---------------------------------------------------------------- Malcev check

def check_malcev_instance(monoid, size_bound: int, element_cap: int = 5_000,
                          samples: int | None = None, seed: int = 0):
    """Search for a violation of (da=AC, db=AD, cb=BD) => ca=BC.

    a, b, c, d, A range over elements of size <= size_bound; B, C, D are the
    quotients forced by cancellativity.  Tuples where A, b, c or d is the
    identity satisfy the implication in every cancellative monoid and are
    skipped, and so is a trivial a.  With ``samples`` the (d, A, b, c)
    part is drawn at random that many times and every a is checked against
    each draw.  Returns ``(True, None)`` or ``(False, (a, b, c, d, A, B, C, D))``.
    """
    elems = [e for e in monoid.elements_up_to(size_bound)]
    if len(elems) > element_cap:
        raise BudgetExceeded(f"{len(elems)} elements exceed the cap {element_cap}")
    nontriv = [e for e in elems if not monoid.is_identity(e)]
    rows: dict[tuple, list[tuple]] = {}
    cols: dict[tuple, list[tuple]] = {}

    def row(d, A):
        # all (x, X) with d x = A X
        if (d, A) not in rows:
            out = []
            for x in nontriv:
                m = monoid.mul(d, x)
                if monoid.left_divides(A, m):
                    out.append((x, monoid.left_quotient(A, m)))
            rows[(d, A)] = out
        return rows[(d, A)]

    def col(b, D):
        # all (c, B) with c b = B D
        if (b, D) not in cols:
            out = []
            for c in nontriv:
                m = monoid.mul(c, b)
                if monoid.right_divides(D, m):
                    out.append((c, monoid.right_quotient(m, D)))
            cols[(b, D)] = out
        return cols[(b, D)]

    def split(d, b):
        m = monoid.mul(d, b)
        return [(A, monoid.left_quotient(A, m)) for A in monoid.left_divisors(m) if not monoid.is_identity(A)]

    if samples is None:
        draws = ((d, A, b, D, c, B) for d in nontriv for b in nontriv for A, D in split(d, b)
                 for c, B in col(b, D))
    else:
        rng = random.Random(seed)

        def sampler():
            done = 0
            while done < samples:
                d, b = rng.choice(nontriv), rng.choice(nontriv)
                A, D = rng.choice(split(d, b))
                c, B = rng.choice(col(b, D))
                done += 1
                yield d, A, b, D, c, B
        draws = sampler()
    for d, A, b, D, c, B in draws:
        for a, C in row(d, A):
            if monoid.mul(c, a) != monoid.mul(B, C):
                return False, (a, b, c, d, A, B, C, D)
    return True, None


# ---------------------------------------------------------------- M_B data

MB_DERIVATION_LINES = [
    "[1,12][12,123]",
    "[1,12][12,123][23,123]^-1[23,123]",
    "[1,12][2,12]^-1[2,23][23,123]",
    "[1,12][2,12]^-1[2,23][23,234][23,234]^-1[23,123]",
    "[1,12][2,12]^-1[2,24][24,234][23,234]^-1[23,123]",
    "[1,12][12,124][24,124]^-1[24,234][23,234]^-1[23,123]",
    "[1,14][14,124][24,124]^-1[24,234][23,234]^-1[23,123]",
    "[1,14][4,14]^-1[4,24][24,234][23,234]^-1[23,123]",
    "[1,14][4,14]^-1[4,34][34,234][23,234]^-1[23,123]",
]


def swap_labels(text: str, a: str = "2", b: str = "3") -> str:
    """Exchange two ground elements inside interval labels, re-sorting each label."""
    def fix(m: re.Match) -> str:
        lab = m.group(0).translate(str.maketrans({a: b, b: a}))
        return "".join(sorted(lab))
    return re.sub(r"\d+", fix, text)


def parse_interval_signed(pres: Presentation, text: str) -> SignedWord:
    """Read ``[u,v]`` or ``[u,v]^-1`` factors over the atoms ``e_{u,v}``."""
    index = {a: i for i, a in enumerate(pres.atoms)}
    out: list[tuple[int, int]] = []
    for m in re.finditer(r"\[\s*([^,\]\s]+)\s*,\s*([^\]\s]+)\s*\](\^-1)?", text):
        atom = _mb_atom(m.group(1), m.group(2))
        if atom not in index:
            raise UnknownGenerator(f"{atom} is not an atom")
        out.append((index[atom], -1 if m.group(3) else 1))
    return tuple(out)
