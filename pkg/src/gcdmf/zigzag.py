"""Zigzags in a poset and their dictionary with simple multifractions.

A zigzag alternates strictly between going up and going down.  Positive
zigzags go up first (x0 < x1); negative ones go down first.  Step k spans
{x_{k-1}, x_k} and becomes entry k of the multifraction F(zz): the interval
between the two vertices, positive exactly when the step goes up.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import BudgetExceeded, Incomparable, NotAlternating, NotApplicable, NotLocalLattice, UnknownLabel
from .multifraction import Answer, Multifraction
from .poset import Poset, is_local_lattice

DEFAULT_ZIGZAG_CAP = 1_000_000


@dataclass(frozen=True)
class Zigzag:
    vertices: tuple[int, ...]
    positive: bool

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def closed(self) -> bool:
        return self.length >= 1 and self.vertices[0] == self.vertices[-1]

    @property
    def simple(self) -> bool:
        inner = self.vertices[1:]
        return len(set(inner)) == len(inner)

    def ascending(self, k: int) -> bool:
        """Does step k (from x_{k-1} to x_k, 1-based) go up?"""
        return self.positive == (k % 2 == 1)


def make_zigzag(p: Poset, vertices: Sequence[int], orientation: bool | None = None) -> Zigzag:
    """Validate an alternating vertex sequence; ``orientation`` True means up first."""
    vs = tuple(vertices)
    if len(vs) < 2:
        raise NotAlternating("a zigzag needs at least two vertices")
    for v in vs:
        if not 0 <= v < p.n:
            raise UnknownLabel(f"no element with index {v}")
    ups = []
    for a, b in zip(vs, vs[1:]):
        if a == b or not p.comparable(a, b):
            raise Incomparable(f"{p.label(a)} and {p.label(b)} are not strictly comparable")
        ups.append(p.lt(a, b))
    for k in range(1, len(ups)):
        if ups[k] == ups[k - 1]:
            raise NotAlternating(f"direction does not flip at {p.label(vs[k])}")
    if orientation is not None and orientation != ups[0]:
        raise NotAlternating("orientation does not match the first step")
    return Zigzag(vs, ups[0])


def parse_zigzag(p: Poset, text: str) -> Zigzag:
    """Read ``x1,z2,x3`` (positive) or ``-z2,x3,z4`` (negative)."""
    text = text.strip()
    negative = text.startswith("-")
    labels = [t.strip() for t in text.lstrip("-").split(",")]
    return make_zigzag(p, [p.index(l) for l in labels], None if not negative else False)


def format_zigzag(p: Poset, zz: Zigzag) -> str:
    body = ",".join(p.label(v) for v in zz.vertices)
    return body if zz.positive else "-" + body


# ---------------------------------------------------------------- dictionary

def F(zz: Zigzag) -> Multifraction:
    entries = []
    for k, (a, b) in enumerate(zip(zz.vertices, zz.vertices[1:]), start=1):
        lo, hi = (a, b) if zz.ascending(k) else (b, a)
        entries.append(((lo, hi),))
    return Multifraction(tuple(entries), zz.positive)


def F_inverse(p: Poset, mf: Multifraction) -> Zigzag:
    """The zigzag of a simple multifraction; raises NotApplicable otherwise."""
    if not mf.entries:
        raise NotApplicable("the empty multifraction has no zigzag")
    if any(len(e) != 1 for e in mf.entries):
        raise NotApplicable("every entry must be a single proper interval")
    first = mf.entries[0][0]
    vs = [first[0], first[1]] if mf.first_positive else [first[1], first[0]]
    for k in range(2, mf.depth + 1):
        lo, hi = mf.entries[k - 1][0]
        start, end = (lo, hi) if mf.positive(k) else (hi, lo)
        if start != vs[-1]:
            raise NotApplicable(f"entry {k} does not start where entry {k - 1} ends")
        vs.append(end)
    return make_zigzag(p, vs, mf.first_positive)


# ---------------------------------------------------------------- reducibility

def _common_upper(p: Poset, a: int, b: int) -> bool:
    return bool(p.up[a] & p.up[b])


def _common_lower(p: Poset, a: int, b: int) -> bool:
    return bool(p.down[a] & p.down[b])


def reducible_at(p: Poset, zz: Zigzag, i: int) -> int | None:
    """Least witness y for reducibility at level i, or None."""
    x = zz.vertices
    if not 1 <= i < zz.length:
        return None
    prev, cur, nxt = x[i - 1], x[i], x[i + 1]
    if i == 1:
        if p.lt(prev, cur):
            cands = (y for y in range(p.n) if p.leq(prev, y) and p.lt(y, cur) and p.leq(nxt, y))
        else:
            cands = (y for y in range(p.n) if p.lt(cur, y) and p.leq(y, prev) and p.leq(y, nxt))
    elif p.lt(cur, nxt):
        cands = (y for y in range(p.n) if p.lt(cur, y) and p.leq(y, nxt) and _common_upper(p, prev, y))
    else:
        cands = (y for y in range(p.n) if p.leq(nxt, y) and p.lt(y, cur) and _common_lower(p, prev, y))
    return next(cands, None)


def zigzag_reducible(p: Poset, zz: Zigzag) -> tuple[int, int] | None:
    """(level, witness) for the least reducible level, or None."""
    for i in range(1, zz.length):
        y = reducible_at(p, zz, i)
        if y is not None:
            return i, y
    return None


# ---------------------------------------------------------------- enumeration

def iter_simple_closed(p: Poset, max_len: int | None = None, min_len: int = 2) -> Iterator[Zigzag]:
    """Simple closed zigzags by length, then orientation (up first), then vertices."""
    top = p.n if max_len is None else min(max_len, p.n)
    above = [sorted(p.up[v] - {v}) for v in range(p.n)]
    below = [sorted(p.down[v] - {v}) for v in range(p.n)]
    for n in range(max(min_len, 2), top + 1):
        for positive in (True, False):
            for x0 in range(p.n):
                yield from _extend(p, n, positive, [x0], set(), above, below)


def _extend(p, n, positive, path, used, above, below):
    k = len(path)  # next step index
    go_up = positive == (k % 2 == 1)
    nbrs = above[path[-1]] if go_up else below[path[-1]]
    if k == n:
        if path[0] in nbrs and path[0] not in used:
            yield Zigzag(tuple(path) + (path[0],), positive)
        return
    for v in nbrs:
        if v in used or v == path[0]:
            continue
        used.add(v)
        path.append(v)
        yield from _extend(p, n, positive, path, used, above, below)
        path.pop()
        used.discard(v)


def enumerate_simple_closed(p: Poset, max_len: int | None = None, min_len: int = 2,
                            cap: int = DEFAULT_ZIGZAG_CAP) -> list[Zigzag]:
    out = []
    for zz in iter_simple_closed(p, max_len, min_len):
        out.append(zz)
        if len(out) > cap:
            raise BudgetExceeded(f"more than {cap} simple closed zigzags")
    return out


# ---------------------------------------------------------------- certificate

@dataclass
class SemiConvergent:
    depth_limit: int | None
    examined: int
    irreducible_non_unital: int = 0
    note: str = ""


@dataclass
class NotSemiConvergent:
    zigzag: Zigzag
    multifraction: Multifraction
    evidence: str = ""


@dataclass
class Inconclusive:
    details: list[str] = field(default_factory=list)


def _loop_key(zz: Zigzag) -> tuple:
    # based, oriented presentations of one loop share this key
    cyc = zz.vertices[:-1]
    rots = [cyc[k:] + cyc[:k] for k in range(len(cyc))]
    rev = cyc[::-1]
    rots += [rev[k:] + rev[:k] for k in range(len(rev))]
    return min(rots)


def semiconv_certificate(p: Poset, depth_limit: int | None = None, cap: int = DEFAULT_ZIGZAG_CAP,
                         **budgets) -> SemiConvergent | NotSemiConvergent | Inconclusive:
    """Decide (n-)semi-convergence from the simple closed zigzags.

    Reducible zigzags need nothing further.  An irreducible one refutes
    semi-convergence exactly when its multifraction is unital, so the unital
    oracle settles each of them.
    """
    ok, witness = is_local_lattice(p)
    if not ok:
        raise NotLocalLattice(f"not a local lattice at {p.label(witness[0])}")
    from .homotopy import unital_zigzag
    seen: dict[tuple, Answer] = {}
    examined = 0
    non_unital = 0
    unknown: list[str] = []
    for zz in iter_simple_closed(p, depth_limit):
        examined += 1
        if examined > cap:
            raise BudgetExceeded(f"more than {cap} simple closed zigzags")
        if zigzag_reducible(p, zz) is not None:
            continue
        key = _loop_key(zz)
        if key not in seen:
            seen[key] = unital_zigzag(p, zz, **budgets).answer
        ans = seen[key]
        if ans is Answer.YES:
            return NotSemiConvergent(zz, F(zz), "irreducible, unital and nontrivial")
        if ans is Answer.NO:
            non_unital += 1
        else:
            unknown.append(format_zigzag(p, zz))
    if unknown:
        return Inconclusive(unknown)
    note = "every simple closed zigzag is reducible" if not non_unital else \
        "irreducible simple closed zigzags exist but none is unital"
    return SemiConvergent(depth_limit, examined, non_unital, note)


def check_suffnc2(p: Poset, max_len: int | None = None, min_len: int = 2) -> bool:
    """Does every simple closed zigzag have an interpolation centre in p?"""
    for zz in iter_simple_closed(p, max_len, min_len):
        vs = set(zz.vertices)
        lows = {a for a in vs if any(p.lt(a, b) for b in vs)}
        highs = {b for b in vs if any(p.lt(a, b) for a in vs)}
        if not any(all(p.leq(a, y) for a in lows) and all(p.leq(y, b) for b in highs) for y in range(p.n)):
            return False
    return True

