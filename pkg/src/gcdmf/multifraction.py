"""Multifractions over a monoid handle, and the reduction rules R(i, x).

A monoid handle is any object with the methods used here: ``identity``,
``is_identity``, ``mul``, ``left_divides``/``right_divides``,
``left_quotient``/``right_quotient``, ``left_divisors``/``right_divisors``,
``left_lcm``/``right_lcm`` (returning None when no common multiple exists),
``sort_key``, ``parse``, ``format`` and ``signed_letters``.  Both
:class:`~gcdmf.interval.IntervalMonoid` and
:class:`~gcdmf.presented.PresentedMonoid` qualify.

Entry i (1-based) of a multifraction is positive when it counts as a
numerator.  The evaluation is a1 a2^-1 a3 ... for a positive first entry and
a1^-1 a2 a3^-1 ... for a negative one.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Iterable, Sequence

from .errors import BudgetExceeded, IdentityX, LiteralSyntaxError, NotApplicable

DEFAULT_STATE_CAP = 1_000_000
TRACE_CAP = 64


@dataclass(frozen=True)
class Multifraction:
    entries: tuple
    first_positive: bool = True

    @property
    def depth(self) -> int:
        return len(self.entries)

    def positive(self, i: int) -> bool:
        """Sign of the 1-based index i."""
        return self.first_positive == (i % 2 == 1)

    def entry(self, i: int):
        return self.entries[i - 1]

    def is_trivial(self) -> bool:
        return all(not e for e in self.entries)

    def stripped(self) -> "Multifraction":
        """Drop trailing identity entries; an all-identity multifraction becomes empty."""
        k = len(self.entries)
        while k and not self.entries[k - 1]:
            k -= 1
        if k == 0:
            return EMPTY
        return Multifraction(self.entries[:k], self.first_positive)

    def padded(self, depth: int) -> "Multifraction":
        if self.depth >= depth:
            return self
        first = self.first_positive if self.entries else True
        return Multifraction(self.entries + ((),) * (depth - self.depth), first)


EMPTY = Multifraction((), True)


@dataclass(frozen=True)
class ReductionStep:
    level: int
    x: Any
    complement: Any = None


class Answer(enum.Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    evidence: str = ""
    payload: Any = None

    @property
    def yes(self) -> bool:
        return self.answer is Answer.YES


# ---------------------------------------------------------------- text

def mf_parse(M, text: str) -> Multifraction:
    """Parse ``['/'] ENTRY ('/' ENTRY)*``; a leading slash marks a negative first entry."""
    text = text.strip()
    if text in ("", "ε", "eps"):
        return EMPTY
    negative = text.startswith("/")
    body = text[1:] if negative else text
    parts = body.split("/")
    if any(not p.strip() for p in parts):
        raise LiteralSyntaxError(f"empty entry in {text!r}")
    return Multifraction(tuple(M.parse(p) for p in parts), not negative)


def mf_format(M, a: Multifraction) -> str:
    if not a.entries:
        return "ε"
    body = "/".join(M.format(e) for e in a.entries)
    return body if a.first_positive else "/" + body


# ---------------------------------------------------------------- algebra

def mf_product(M, u: Multifraction, v: Multifraction) -> Multifraction:
    """Product in the multifraction monoid.

    Junction entries of the same sign merge: positive ones as a_n * b_1,
    negative ones as b_1 * a_n (so that the evaluation is multiplicative).
    """
    if not u.entries:
        return v
    if not v.entries:
        return u
    last_pos = u.positive(u.depth)
    if last_pos == v.first_positive:
        a, b = u.entries[-1], v.entries[0]
        merged = M.mul(a, b) if last_pos else M.mul(b, a)
        return Multifraction(u.entries[:-1] + (merged,) + v.entries[1:], u.first_positive)
    return Multifraction(u.entries + v.entries, u.first_positive)


def mf_inverse(a: Multifraction) -> Multifraction:
    if not a.entries:
        return EMPTY
    return Multifraction(tuple(reversed(a.entries)), not a.positive(a.depth))


def evaluation(M, a: Multifraction) -> list:
    """The signed generator word a1 a2^-1 a3 ... (or its negative-first variant)."""
    out = []
    for i, e in enumerate(a.entries, start=1):
        out.extend(M.signed_letters(e, 1 if a.positive(i) else -1))
    return out


# ---------------------------------------------------------------- reduction

def _step(M, a: Multifraction, i: int, x) -> tuple[Multifraction, Any]:
    d = a.depth
    if not 1 <= i <= d - 1:
        raise NotApplicable(f"level {i} outside 1..{d - 1}")
    if M.is_identity(x):
        raise IdentityX("x must not be the identity")
    e = list(a.entries)
    nxt = e[i]  # entry i+1
    cur = e[i - 1]  # entry i
    if a.positive(i):
        if not M.right_divides(x, nxt):
            raise NotApplicable(f"x does not right-divide entry {i + 1}")
        if i == 1:
            if not M.right_divides(x, cur):
                raise NotApplicable("x does not right-divide entry 1")
            e[0] = M.right_quotient(cur, x)
            e[1] = M.right_quotient(nxt, x)
            return Multifraction(tuple(e), a.first_positive), M.identity()
        m = M.left_lcm(x, cur)
        if m is None:
            raise NotApplicable(f"x and entry {i} have no common left multiple")
        xp = M.right_quotient(m, cur)
        e[i - 2] = M.mul(xp, e[i - 2])
        e[i - 1] = M.right_quotient(m, x)
        e[i] = M.right_quotient(nxt, x)
        return Multifraction(tuple(e), a.first_positive), xp
    if not M.left_divides(x, nxt):
        raise NotApplicable(f"x does not left-divide entry {i + 1}")
    if i == 1:
        if not M.left_divides(x, cur):
            raise NotApplicable("x does not left-divide entry 1")
        e[0] = M.left_quotient(x, cur)
        e[1] = M.left_quotient(x, nxt)
        return Multifraction(tuple(e), a.first_positive), M.identity()
    m = M.right_lcm(x, cur)
    if m is None:
        raise NotApplicable(f"x and entry {i} have no common right multiple")
    xp = M.left_quotient(cur, m)
    e[i - 2] = M.mul(e[i - 2], xp)
    e[i - 1] = M.left_quotient(x, m)
    e[i] = M.left_quotient(x, nxt)
    return Multifraction(tuple(e), a.first_positive), xp


def apply_reduction(M, a: Multifraction, i: int, x) -> Multifraction:
    """Apply R(i, x); raises NotApplicable or IdentityX."""
    return _step(M, a, i, x)[0]


def _candidates(M, a: Multifraction, i: int) -> list:
    nxt = a.entries[i]
    divs = M.right_divisors(nxt) if a.positive(i) else M.left_divisors(nxt)
    return [x for x in divs if not M.is_identity(x)]


def _applicable_at(M, a: Multifraction, i: int) -> list[tuple[ReductionStep, Multifraction]]:
    out = []
    pos = a.positive(i)
    cur = a.entries[i - 1]
    for x in _candidates(M, a, i):
        # cheap pre-checks before building the result
        if i == 1:
            ok = M.right_divides(x, cur) if pos else M.left_divides(x, cur)
        else:
            ok = (M.left_lcm(x, cur) if pos else M.right_lcm(x, cur)) is not None
        if not ok:
            continue
        b, xp = _step(M, a, i, x)
        out.append((ReductionStep(i, x, xp), b))
    return out


def applicable_reductions(M, a: Multifraction) -> list[ReductionStep]:
    return [s for i in range(1, a.depth) for s, _ in _applicable_at(M, a, i)]


def successors(M, a: Multifraction) -> list[tuple[ReductionStep, Multifraction]]:
    return [pair for i in range(1, a.depth) for pair in _applicable_at(M, a, i)]


def is_irreducible(M, a: Multifraction) -> bool:
    for i in range(1, a.depth):
        if _applicable_at(M, a, i):
            return False
    return True


@dataclass
class SearchResult:
    mode: str
    found: bool
    irreducibles: list[Multifraction] = field(default_factory=list)
    trace: list[tuple[ReductionStep, Multifraction]] = field(default_factory=list)
    states: int = 0
    acyclic: bool | None = None


def reduce_search(M, a: Multifraction, mode: str = "exhaustive_set", target: Multifraction | None = None,
                  state_cap: int = DEFAULT_STATE_CAP) -> SearchResult:
    """Explore everything reachable from ``a`` by reduction.

    ``exhaustive_set`` collects all irreducible descendants (padded back to the
    depth of ``a``).  ``to_target`` and ``to_trivial`` stop at the first hit
    and return a shortest step trace.  States are compared after trailing
    identities are stripped, which does not change which rules apply.
    """
    if mode not in ("exhaustive_set", "to_target", "to_trivial"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "to_target" and target is None:
        raise ValueError("to_target needs a target")
    depth = a.depth
    goal = EMPTY if mode == "to_trivial" else (target.stripped() if target is not None else None)
    start = a.stripped()
    parent: dict[Multifraction, tuple[Multifraction, ReductionStep] | None] = {start: None}
    queue = deque([start])
    irreducibles = []
    edges: dict[Multifraction, list[Multifraction]] = {}
    hit = start if goal is not None and start == goal else None
    while queue and hit is None:
        cur = queue.popleft()
        succ = successors(M, cur.padded(depth))
        if not succ:
            irreducibles.append(cur)
        edges[cur] = []
        for step, nxt_full in succ:
            nxt = nxt_full.stripped()
            edges[cur].append(nxt)
            if nxt in parent:
                continue
            parent[nxt] = (cur, step)
            if goal is not None and nxt == goal:
                hit = nxt
                break
            queue.append(nxt)
            if len(parent) > state_cap:
                raise BudgetExceeded(f"more than {state_cap} reachable states")
    if mode == "exhaustive_set":
        key = lambda m: (m.depth, [M.sort_key(e) for e in m.entries])
        return SearchResult(mode, True, sorted((m.padded(depth) for m in irreducibles), key=key),
                            states=len(parent), acyclic=_acyclic(edges))
    if hit is None:
        return SearchResult(mode, False, states=len(parent))
    trace = []
    node = hit
    while parent[node] is not None:
        prev, step = parent[node]
        trace.append((step, node.padded(depth)))
        node = prev
    trace.reverse()
    if len(trace) > TRACE_CAP:
        raise BudgetExceeded(f"trace longer than {TRACE_CAP} steps")
    return SearchResult(mode, True, trace=trace, states=len(parent))


def _acyclic(edges: dict) -> bool:
    color: dict = {}
    for root in edges:
        if root in color:
            continue
        stack = [(root, iter(edges.get(root, ())))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                continue
            c = color.get(nxt)
            if c == 1:
                return False
            if c is None:
                color[nxt] = 1
                stack.append((nxt, iter(edges.get(nxt, ()))))
    return True


def format_trace(M, trace: Sequence[tuple[ReductionStep, Multifraction]]) -> list[str]:
    return [f"i={s.level} x={M.format(s.x)} -> {mf_format(M, b)}" for s, b in trace]


def same_up_to_padding(a: Multifraction, b: Multifraction) -> bool:
    return a.stripped() == b.stripped()


def max_reduction_at(M, a: Multifraction, i: int) -> Multifraction:
    """Apply R(i, x) with x divisibility-maximal among the applicable ones.

    Ties go to the least element in the monoid's canonical order.
    """
    if not 1 <= i < a.depth:
        raise NotApplicable(f"level {i} outside 1..{a.depth - 1}")
    steps = _applicable_at(M, a, i)
    if not steps:
        raise NotApplicable(f"no reduction applies at level {i}")
    divides = M.right_divides if a.positive(i) else M.left_divides
    xs = [s.x for s, _ in steps]
    maximal = [x for x in xs if not any(y != x and divides(x, y) for y in xs)]
    best = min(maximal, key=M.sort_key)
    return next(b for s, b in steps if s.x == best)


# ---------------------------------------------------------------- pieces

def _all_trivial(m: Multifraction) -> bool:
    return m.is_trivial()


def is_proper_piece(M, a: Multifraction, b: Multifraction) -> bool:
    """Is b = c * a * d for multifractions c, d that are not both trivial?"""
    for c, d in _piece_factorizations(M, a, b):
        if not (_all_trivial(c) and _all_trivial(d)):
            return True
    return False


def _piece_factorizations(M, a: Multifraction, b: Multifraction):
    """Yield (c, d) with c*a*d = b."""
    if not a.entries:
        # b = c * d: split b anywhere
        for k in range(b.depth + 1):
            c = Multifraction(b.entries[:k], b.first_positive) if k else EMPTY
            d = Multifraction(b.entries[k:], b.positive(k + 1)) if k < b.depth else EMPTY
            yield c, d
        return
    da, db = a.depth, b.depth
    for k in range(1, db + 1):  # a_1 lands on b_k
        if b.positive(k) != a.first_positive:
            continue
        last = k + da - 1
        if last > db:
            break
        if a.entries[1:da - 1] != b.entries[k:last - 1]:
            continue
        pos_first, pos_last = b.positive(k), b.positive(last)
        for lefts, rights in _junction_options(M, a, b, k, last, pos_first, pos_last):
            c_entries = b.entries[:k - 1] + lefts
            d_entries = rights + b.entries[last:]
            c = Multifraction(c_entries, b.first_positive) if c_entries else EMPTY
            if d_entries:
                d_first = (not pos_last) if not rights else pos_last
                d = Multifraction(d_entries, d_first)
            else:
                d = EMPTY
            if mf_product(M, mf_product(M, c, a), d) == b:
                yield c, d


def _junction_options(M, a, b, k, last, pos_first, pos_last):
    """Ways to split b_k and b_last around a_1 and a_n.

    Returns pairs (tail of c, head of d) as entry tuples: an empty tuple means
    no merge on that side, a 1-tuple holds the merged-away cofactor.
    """
    bk, bl = b.entries[k - 1], b.entries[last - 1]
    a1, an = a.entries[0], a.entries[-1]
    if k == last:
        # one entry of b absorbs all of a: b_k = c' a_1 d' (positive) or d' a_1 c' (negative)
        outs = []
        if bk == a1:
            outs.append(((), ()))
        for pre in M.left_divisors(bk):
            rest = M.left_quotient(pre, bk)
            if not M.left_divides(a1, rest):
                continue
            post = M.left_quotient(a1, rest)
            if pos_first:
                outs.append(((pre,), (post,)))
            else:
                outs.append(((post,), (pre,)))
        return outs
    left_opts = []
    if bk == a1:
        left_opts.append(())
    if pos_first and M.right_divides(a1, bk):
        left_opts.append((M.right_quotient(bk, a1),))
    if not pos_first and M.left_divides(a1, bk):
        left_opts.append((M.left_quotient(a1, bk),))
    right_opts = []
    if bl == an:
        right_opts.append(())
    if pos_last and M.left_divides(an, bl):
        right_opts.append((M.left_quotient(an, bl),))
    if not pos_last and M.right_divides(an, bl):
        right_opts.append((M.right_quotient(bl, an),))
    return [(l, r) for l in left_opts for r in right_opts]


# ---------------------------------------------------------------- unitality and equivalence

def unital(M, a: Multifraction, **budgets) -> Verdict:
    """Does ``a`` evaluate to 1 in the enveloping group?"""
    if a.is_trivial():
        return Verdict(Answer.YES, "trivial multifraction")
    if getattr(M, "kind", "") == "interval":
        from .homotopy import unital as interval_unital
        return interval_unital(M, a, **budgets)
    return _presented_unital(M, a, **budgets)


def _presented_unital(M, a: Multifraction, radius: int | None = None, state_cap: int | None = None,
                      budget: int | None = None, **_ignored) -> Verdict:
    from .presented import DEFAULT_GROUP_RADIUS, Yes, free_reduce, group_trivial_bounded
    w = free_reduce(evaluation(M, a))
    if not w:
        return Verdict(Answer.YES, "freely trivial")
    if M.abelian_obstruction(w):
        return Verdict(Answer.NO, "exponent sums survive the abelianized relations")
    if M.is_free_commutative():
        return Verdict(Answer.YES, "exponent sums vanish in a free abelian group")
    kwargs = {"radius": radius if radius is not None else DEFAULT_GROUP_RADIUS}
    if state_cap is None:
        state_cap = budget
    if state_cap is not None:
        kwargs["state_cap"] = state_cap
    res = group_trivial_bounded(M, w, **kwargs)
    if isinstance(res, Yes):
        return Verdict(Answer.YES, res.evidence, res.derivation)
    return Verdict(Answer.UNKNOWN, res.reason)


def mf_equivalent(M, a: Multifraction, b: Multifraction, **budgets) -> Verdict:
    return unital(M, mf_product(M, a, mf_inverse(b)), **budgets)


# ---------------------------------------------------------------- Ore triples

def three_ore_witness(M, generators: Iterable | None = None, bound: int | None = None):
    """A triple with pairwise common right multiples but no global one.

    Interval monoids answer exactly through lcms.  Presented monoids use the
    bounded multiple search, so a returned triple is a bounded certificate.
    """
    gens = list(M.atoms() if generators is None else generators)
    if getattr(M, "kind", "") == "interval":
        for x, y, z in combinations(gens, 3):
            xy, yz, xz = M.right_lcm(x, y), M.right_lcm(y, z), M.right_lcm(x, z)
            if xy is None or yz is None or xz is None:
                continue
            if M.right_lcm(xy, z) is None:
                return (x, y, z)
        return None
    from .presented import Found, common_right_multiple_bounded
    L = 8 if bound is None else bound
    for x, y, z in combinations(gens, 3):
        if not all(isinstance(common_right_multiple_bounded(M, pair, L), Found)
                   for pair in ((x, y), (y, z), (x, z))):
            continue
        if not isinstance(common_right_multiple_bounded(M, (x, y, z), L), Found):
            return (x, y, z)
    return None
