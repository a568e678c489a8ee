"""Unitality of multifractions over interval monoids.

Every interval [x, y] maps to the free-group word x^-1 y, and a product of
intervals walks through the poset.  The signed interval word of a
multifraction therefore splits into maximal walks; a walk that returns to
its start is a loop in the order complex (vertices, comparable pairs,
3-chains), and the multifraction is unital exactly when repeatedly deleting
contractible closed walks and gluing the neighbours empties the word.
Contractibility is settled by a cone point, refuted by first homology, or
found by a bounded search over the two elementary loop moves.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import count
from typing import Sequence

from .intlattice import echelon_basis
from .multifraction import Answer, Multifraction, Verdict, evaluation
from .poset import Poset, cone_point

DEFAULT_MOVE_BUDGET = 100_000

Letter = tuple[int, int]


# ---------------------------------------------------------------- free words

def free_reduce(word: Sequence[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for x, e in word:
        if out and out[-1] == (x, -e):
            out.pop()
        else:
            out.append((x, e))
    return out


def phi_word(M, mf: Multifraction) -> list[Letter]:
    """Freely reduced vertex word: [x, y] contributes x^-1 y."""
    word: list[Letter] = []
    for (s, t), e in evaluation(M, mf):
        word += [(s, -1), (t, 1)] if e > 0 else [(t, -1), (s, 1)]
    return free_reduce(word)


def format_word(p: Poset, word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    return " ".join(p.label(x) if e > 0 else f"{p.label(x)}^-1" for x, e in word)


# ---------------------------------------------------------------- the 2-skeleton

class Complex2:
    """Vertices, comparable pairs and 3-chains of a finite poset."""

    def __init__(self, p: Poset):
        self.poset = p
        self.edges = [(i, j) for i in range(p.n) for j in range(p.n) if p.lt(i, j)]
        self.edge_index = {e: k for k, e in enumerate(self.edges)}
        self.triangles = [(i, j, k) for i, j in self.edges for k in range(p.n) if p.lt(j, k)]
        self._basis = None
        self._cones = {v: cone for comp, cone in cone_point(p) for v in comp}

    def boundary_rows(self) -> list[list[int]]:
        rows = []
        for i, j, k in self.triangles:
            row = [0] * len(self.edges)
            row[self.edge_index[(i, j)]] += 1
            row[self.edge_index[(j, k)]] += 1
            row[self.edge_index[(i, k)]] -= 1
            rows.append(row)
        return rows

    def basis(self):
        if self._basis is None:
            self._basis = echelon_basis(self.boundary_rows())
        return self._basis

    def cycle_vector(self, loop: Sequence[int]) -> list[int]:
        vec = [0] * len(self.edges)
        p = self.poset
        for a, b in zip(loop, loop[1:]):
            if p.lt(a, b):
                vec[self.edge_index[(a, b)]] += 1
            else:
                vec[self.edge_index[(b, a)]] -= 1
        return vec

    def cone_of(self, v: int) -> int | None:
        return self._cones.get(v)


def complex_of(p: Poset) -> Complex2:
    c = getattr(p, "_complex2", None)
    if c is None:
        c = Complex2(p)
        try:
            p._complex2 = c
        except AttributeError:
            pass
    return c


def h1_obstruction(c: Complex2, loop: Sequence[int]) -> bool:
    """True when the loop's edge cycle is not a boundary, so the loop is essential."""
    t = c.cycle_vector(loop)
    for col, row in c.basis():
        if t[col] % row[col]:
            return True
        q = t[col] // row[col]
        if q:
            t = [a - q * b for a, b in zip(t, row)]
    return any(t)


# ---------------------------------------------------------------- loop search

def _canon(cyc: tuple[int, ...]) -> tuple[int, ...]:
    if len(cyc) <= 1:
        return cyc[:1]
    k = min(range(len(cyc)), key=lambda r: cyc[r:] + cyc[:r])
    return cyc[k:] + cyc[:k]


def _drop_backtracks(cyc: list[int]) -> list[int]:
    """Cyclically remove every pattern (a, b, a) -> (a)."""
    changed = True
    while changed and len(cyc) > 1:
        changed = False
        n = len(cyc)
        if n == 2:
            return cyc[:1]
        for i in range(n):
            if cyc[(i - 1) % n] == cyc[(i + 1) % n]:
                # remove positions i and i+1
                j = (i + 1) % n
                cyc = [v for k, v in enumerate(cyc) if k not in (i, j)]
                changed = True
                break
    return cyc


def _moves(p: Poset, cyc: tuple[int, ...], cap: int):
    n = len(cyc)
    for i in range(n):
        a, b, c = cyc[(i - 1) % n], cyc[i], cyc[(i + 1) % n]
        if a == c:
            j = (i + 1) % n
            rest = tuple(v for k, v in enumerate(cyc) if k not in (i, j))
            yield rest or (a,), f"backtrack {p.label(a)},{p.label(b)},{p.label(a)}"
        elif p.comparable(a, c):
            yield cyc[:i] + cyc[i + 1:], f"shortcut {p.label(a)},{p.label(b)},{p.label(c)}"
    if n + 1 > cap:
        return
    for i in range(n):
        a, c = cyc[i], cyc[(i + 1) % n]
        for b in range(p.n):
            # {a, b, c} pairwise comparable means a 3-chain
            if b != a and b != c and p.comparable(a, b) and p.comparable(b, c):
                yield cyc[:i + 1] + (b,) + cyc[i + 1:], f"detour {p.label(a)},{p.label(b)},{p.label(c)}"


def null_homotopic(c: Complex2, loop: Sequence[int], budget: int = DEFAULT_MOVE_BUDGET) -> Verdict:
    """Is the closed vertex walk ``loop`` (first == last) contractible?"""
    p = c.poset
    loop = list(loop)
    if len(loop) < 2 or loop[0] != loop[-1]:
        return Verdict(Answer.NO, "walk is not closed")
    start = _drop_backtracks(loop[:-1])
    if len(start) <= 1:
        return Verdict(Answer.YES, "cancels by backtracks", [])
    cone = c.cone_of(start[0])
    if cone is not None:
        return Verdict(Answer.YES, f"component is a cone over {p.label(cone)}", [])
    if h1_obstruction(c, start + start[:1]):
        return Verdict(Answer.NO, "first homology class is nonzero")
    cap = 2 * len(loop) + 8
    s0 = _canon(tuple(start))
    parent = {s0: None}
    tick = count()
    heap = [(len(s0), next(tick), s0)]
    while heap:
        _, _, cur = heapq.heappop(heap)
        for nxt, move in _moves(p, cur, cap):
            key = _canon(nxt)
            if key in parent:
                continue
            parent[key] = (cur, move)
            if len(key) <= 1:
                trace = []
                node = key
                while parent[node] is not None:
                    prev, mv = parent[node]
                    trace.append(mv)
                    node = prev
                return Verdict(Answer.YES, f"contracted in {len(trace)} moves", trace[::-1])
            if len(parent) > budget:
                return Verdict(Answer.UNKNOWN, f"move budget of {budget} states exhausted")
            heapq.heappush(heap, (len(key), next(tick), key))
    return Verdict(Answer.UNKNOWN, f"no contraction within loop length {cap}")


def replay_moves(p: Poset, loop: Sequence[int], trace: Sequence[str]) -> bool:
    """Check that a move trace contracts the loop; moves are matched by description."""
    cyc = _canon(tuple(_drop_backtracks(list(loop[:-1]))))
    cap = 2 * len(loop) + 8
    for mv in trace:
        options = {d: nxt for nxt, d in _moves(p, cyc, cap)}
        if mv not in options:
            return False
        cyc = _canon(options[mv])
    return len(cyc) <= 1


def simply_connected_via_cone(p: Poset) -> bool:
    return all(cone is not None for _, cone in cone_point(p))


# ---------------------------------------------------------------- unitality

def _walks(M, mf: Multifraction) -> list[list[int]]:
    """Split the signed interval word into maximal vertex walks."""
    walks: list[list[int]] = []
    for (s, t), e in evaluation(M, mf):
        a, b = (s, t) if e > 0 else (t, s)
        if walks and walks[-1][-1] == a:
            walks[-1].append(b)
        else:
            walks.append([a, b])
    return walks


def unital(M, mf: Multifraction, budget: int | None = None, **_ignored) -> Verdict:
    """YES/NO/UNKNOWN for unitality of a multifraction over Int(P)."""
    budget = DEFAULT_MOVE_BUDGET if budget is None else budget
    c = complex_of(M.poset)
    walks = _walks(M, mf)
    stuck_unknown = None
    steps = 0
    removed: list[tuple[list[int], list[str]]] = []
    while walks:
        progress = False
        for k, w in enumerate(walks):
            if w[0] != w[-1]:
                continue
            v = null_homotopic(c, w, budget)
            if v.answer is Answer.YES:
                removed.append((w, v.payload or []))
                del walks[k]
                # glue the neighbours when they now meet
                if 0 < k < len(walks) and walks[k - 1][-1] == walks[k][0]:
                    walks[k - 1] = walks[k - 1] + walks[k][1:]
                    del walks[k]
                progress = True
                steps += 1
                break
            if v.answer is Answer.UNKNOWN:
                stuck_unknown = v.evidence
        if not progress:
            break
    if not walks:
        return Verdict(Answer.YES, f"word empties after removing {steps} contractible loops", removed)
    if stuck_unknown is not None:
        return Verdict(Answer.UNKNOWN, stuck_unknown)
    if any(w[0] != w[-1] for w in walks):
        return Verdict(Answer.NO, "an open walk survives in the free-product normal form")
    return Verdict(Answer.NO, "a surviving closed walk is not contractible")


def unital_zigzag(p: Poset, zz, budget: int | None = None, **_ignored) -> Verdict:
    if not zz.closed:
        return Verdict(Answer.NO, "zigzag is not closed")
    return null_homotopic(complex_of(p), zz.vertices, DEFAULT_MOVE_BUDGET if budget is None else budget)
