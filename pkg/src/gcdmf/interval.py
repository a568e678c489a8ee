"""The interval monoid of a finite poset.

An element is stored as its normal form: a tuple of proper intervals
``(src, tgt)`` (element indices) where no interval ends where the next one
starts.  The empty tuple is the identity.  Products only ever merge at the
junction, so every operation below is a direct reading of normal forms.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import LiteralSyntaxError, NotAnInterval, NotLocalLattice, UnknownGenerator, UnknownLabel
from .poset import Poset, is_local_lattice

Interval = tuple[int, int]
IMElement = tuple[Interval, ...]

IDENTITY: IMElement = ()

_TOKEN = re.compile(r"\s*\[\s*([^,\[\]\s]+)\s*,\s*([^,\[\]\s]+)\s*\]\s*")


class IntervalMonoid:
    """Int(P) for a finite poset P.

    With ``require_local_lattice`` (the default) the poset is checked once,
    which is what makes gcds and conditional lcms exist.
    """

    kind = "interval"

    def __init__(self, poset: Poset, require_local_lattice: bool = True):
        self.poset = poset
        self.local_lattice: bool | None = None
        if require_local_lattice:
            ok, witness = is_local_lattice(poset)
            self.local_lattice = ok
            if not ok:
                x, (y, z) = witness
                raise NotLocalLattice(
                    f"{poset.label(y)} and {poset.label(z)} have no meet/join relative to {poset.label(x)}"
                )
        self._cache_rdiv = lru_cache(maxsize=None)(self._right_divisors)
        self._cache_ldiv = lru_cache(maxsize=None)(self._left_divisors)
        self._cache_rlcm = lru_cache(maxsize=None)(self._right_lcm)
        self._cache_llcm = lru_cache(maxsize=None)(self._left_lcm)

    def __repr__(self) -> str:
        return f"IntervalMonoid({self.poset.name or 'P'})"

    # -- construction ---------------------------------------------------

    def identity(self) -> IMElement:
        return IDENTITY

    def is_identity(self, a: IMElement) -> bool:
        return not a

    def element(self, intervals: Iterable[Sequence[int]]) -> IMElement:
        """Normal form of a product of intervals given by element indices."""
        out: list[Interval] = []
        for s, t in intervals:
            if not self.poset.leq(s, t):
                raise NotAnInterval(f"{self.poset.label(s)} is not below {self.poset.label(t)}")
            if s == t:
                continue
            if out and out[-1][1] == s:
                out[-1] = (out[-1][0], t)
            else:
                out.append((s, t))
        return tuple(out)

    def interval(self, s: int, t: int) -> IMElement:
        return self.element([(s, t)])

    def atoms(self) -> list[IMElement]:
        return [((i, j),) for i, j in self.poset.covers]

    def proper_intervals(self) -> list[Interval]:
        return [(s, t) for s in range(self.poset.n) for t in sorted(self.poset.up[s]) if s != t]

    def elements_up_to(self, bound: int) -> list[IMElement]:
        """All elements of degree <= bound, in canonical order."""
        ivs = self.proper_intervals()
        out: list[IMElement] = [IDENTITY]
        level: list[IMElement] = [IDENTITY]
        for _ in range(bound):
            level = [a + (iv,) for a in level for iv in ivs if not a or a[-1][1] != iv[0]]
            out.extend(level)
        return sorted(out, key=self.sort_key)

    def degree(self, a: IMElement) -> int:
        return len(a)

    def length(self, a: IMElement) -> int:
        return len(a)

    def sort_key(self, a: IMElement):
        return (len(a), a)

    # -- products and quotients -----------------------------------------

    def mul(self, a: IMElement, b: IMElement) -> IMElement:
        if not a:
            return b
        if not b:
            return a
        if a[-1][1] == b[0][0]:
            return a[:-1] + ((a[-1][0], b[0][1]),) + b[1:]
        return a + b

    def left_divides(self, a: IMElement, b: IMElement) -> bool:
        p, q = len(a), len(b)
        if p == 0:
            return True
        if p > q or a[: p - 1] != b[: p - 1]:
            return False
        (s, t), (s2, t2) = a[p - 1], b[p - 1]
        return s == s2 and self.poset.leq(t, t2)

    def right_divides(self, a: IMElement, b: IMElement) -> bool:
        p, q = len(a), len(b)
        if p == 0:
            return True
        if p > q or a[1:] != b[q - p + 1:]:
            return False
        (s, t), (s2, t2) = a[0], b[q - p]
        return t == t2 and self.poset.leq(s2, s)

    def left_quotient(self, a: IMElement, b: IMElement) -> IMElement:
        """The c with a*c = b; a must left-divide b."""
        if not self.left_divides(a, b):
            raise ValueError("not a left divisor")
        p = len(a)
        if p == 0:
            return b
        t, t2 = a[-1][1], b[p - 1][1]
        head = ((t, t2),) if t != t2 else ()
        return head + b[p:]

    def right_quotient(self, b: IMElement, a: IMElement) -> IMElement:
        """The c with c*a = b; a must right-divide b."""
        if not self.right_divides(a, b):
            raise ValueError("not a right divisor")
        p, q = len(a), len(b)
        if p == 0:
            return b
        s2, s = b[q - p][0], a[0][0]
        tail = ((s2, s),) if s2 != s else ()
        return b[: q - p] + tail

    # -- gcds -------------------------------------------------------------

    def left_gcd(self, a: IMElement, b: IMElement) -> IMElement:
        k = 0
        while k < len(a) and k < len(b) and a[k] == b[k]:
            k += 1
        out = a[:k]
        if k < len(a) and k < len(b) and a[k][0] == b[k][0]:
            x = a[k][0]
            m = self.poset.meet_above(x, a[k][1], b[k][1])
            if m is not None and m != x:
                out += ((x, m),)
        return out

    def right_gcd(self, a: IMElement, b: IMElement) -> IMElement:
        k = 0
        while k < len(a) and k < len(b) and a[-1 - k] == b[-1 - k]:
            k += 1
        out = a[len(a) - k:]
        if k < len(a) and k < len(b) and a[-1 - k][1] == b[-1 - k][1]:
            t = a[-1 - k][1]
            j = self.poset.join_below(t, a[-1 - k][0], b[-1 - k][0])
            if j is not None and j != t:
                out = ((j, t),) + out
        return out

    # -- conditional lcms -------------------------------------------------
    #
    # Right lcm, by the shape of normal forms:
    #   equal first intervals      -> keep it and recurse on the tails
    #   different sources          -> none
    #   both of degree 1           -> join of the targets above the source
    #   one of degree 1, say [x,t] -> the other one if t <= its first target, else none
    #   otherwise                  -> none
    # The left lcm is the mirror image on last intervals.

    def right_lcm(self, a: IMElement, b: IMElement) -> IMElement | None:
        return self._cache_rlcm(a, b)

    def left_lcm(self, a: IMElement, b: IMElement) -> IMElement | None:
        return self._cache_llcm(a, b)

    def _right_lcm(self, a: IMElement, b: IMElement) -> IMElement | None:
        if not a:
            return b
        if not b:
            return a
        if a[0] == b[0]:
            rest = self._right_lcm(a[1:], b[1:])
            return None if rest is None else self.mul(a[:1], rest)
        (x, t), (x2, t2) = a[0], b[0]
        if x != x2:
            return None
        if len(a) == 1 and len(b) == 1:
            j = self.poset.least_upper_bound(t, t2)
            return None if j is None else ((x, j),)
        if len(a) == 1:
            return b if self.poset.leq(t, t2) else None
        if len(b) == 1:
            return a if self.poset.leq(t2, t) else None
        return None

    def _left_lcm(self, a: IMElement, b: IMElement) -> IMElement | None:
        if not a:
            return b
        if not b:
            return a
        if a[-1] == b[-1]:
            rest = self._left_lcm(a[:-1], b[:-1])
            return None if rest is None else self.mul(rest, a[-1:])
        (s, y), (s2, y2) = a[-1], b[-1]
        if y != y2:
            return None
        if len(a) == 1 and len(b) == 1:
            m = self.poset.greatest_lower_bound(s, s2)
            return None if m is None else ((m, y),)
        if len(a) == 1:
            return b if self.poset.leq(s2, s) else None
        if len(b) == 1:
            return a if self.poset.leq(s, s2) else None
        return None

    # -- divisors ---------------------------------------------------------

    def right_divisors(self, a: IMElement) -> list[IMElement]:
        return list(self._cache_rdiv(a))

    def left_divisors(self, a: IMElement) -> list[IMElement]:
        return list(self._cache_ldiv(a))

    def _right_divisors(self, a: IMElement) -> tuple[IMElement, ...]:
        out = {IDENTITY}
        for k, (s, t) in enumerate(a):
            for s2 in self.poset.interval(s, t):
                if s2 != t:
                    out.add(((s2, t),) + a[k + 1:])
        return tuple(sorted(out, key=self.sort_key))

    def _left_divisors(self, a: IMElement) -> tuple[IMElement, ...]:
        out = {IDENTITY}
        for k, (s, t) in enumerate(a):
            for t2 in self.poset.interval(s, t):
                if t2 != s:
                    out.add(a[:k] + ((s, t2),))
        return tuple(sorted(out, key=self.sort_key))

    # -- text -------------------------------------------------------------

    def format(self, a: IMElement) -> str:
        if not a:
            return "1"
        lab = self.poset.label
        return "*".join(f"[{lab(s)},{lab(t)}]" for s, t in a)

    def parse(self, text: str) -> IMElement:
        text = text.strip()
        if text == "1":
            return IDENTITY
        pieces = []
        for factor in text.split("*"):
            m = _TOKEN.fullmatch(factor)
            if m is None:
                # allow juxtaposed intervals such as [0,1][3,2]
                found = list(_TOKEN.finditer(factor))
                if not found or "".join(f.group(0) for f in found).strip() != factor.strip():
                    raise LiteralSyntaxError(f"cannot read interval factor {factor!r}")
                pieces.extend((f.group(1), f.group(2)) for f in found)
            else:
                pieces.append((m.group(1), m.group(2)))
        try:
            return self.element([(self.poset.index(s), self.poset.index(t)) for s, t in pieces])
        except UnknownLabel as exc:
            raise UnknownGenerator(str(exc)) from None

    # -- group-level data -------------------------------------------------

    def signed_letters(self, a: IMElement, sign: int) -> list[tuple[Interval, int]]:
        """The element as a signed word in interval generators."""
        if sign > 0:
            return [(iv, 1) for iv in a]
        return [(iv, -1) for iv in reversed(a)]


def im_element(p: Poset, intervals: Iterable[Sequence[int]]) -> IMElement:
    """Normal form of a product of intervals, without the local-lattice check."""
    return IntervalMonoid(p, require_local_lattice=False).element(intervals)
