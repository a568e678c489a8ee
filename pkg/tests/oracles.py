"""Slow, obviously-correct reference computations used to check the library.

Nothing here imports the algorithms under test; posets are plain sets of
pairs and monoid elements are lists of intervals.
"""

from __future__ import annotations

import random
from itertools import permutations, product


# ---------------------------------------------------------------- posets as relations

def closure(n: int, pairs) -> set[tuple[int, int]]:
    rel = {(i, i) for i in range(n)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def random_order(rng: random.Random, n: int, density: float = 0.35) -> set[tuple[int, int]]:
    """A random partial order on 0..n-1 (edges only go up in index)."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return closure(n, pairs)


def covers_of(n: int, rel) -> list[tuple[int, int]]:
    lt = {(a, b) for a, b in rel if a != b}
    return sorted((a, b) for a, b in lt if not any((a, c) in lt and (c, b) in lt for c in range(n)))


def has_lub(n, rel, base, y, z) -> bool:
    """Least upper bound of y, z inside the up-set of base."""
    ups = [w for w in range(n) if (base, w) in rel and (y, w) in rel and (z, w) in rel]
    return any(all((u, w) in rel for w in ups) for u in ups) if ups else True


def has_glb(n, rel, top, y, z) -> bool:
    downs = [w for w in range(n) if (w, top) in rel and (w, y) in rel and (w, z) in rel]
    return any(all((w, u) in rel for w in downs) for u in downs) if downs else True


def local_lattice(n, rel) -> bool:
    for x in range(n):
        up = [y for y in range(n) if (x, y) in rel]
        down = [y for y in range(n) if (y, x) in rel]
        for y, z in product(up, up):
            # every pair in the up-set has a meet there
            lows = [w for w in up if (w, y) in rel and (w, z) in rel]
            if not any(all((u, w) in rel for u in lows) for w in lows):
                return False
        for y, z in product(down, down):
            highs = [w for w in down if (y, w) in rel and (z, w) in rel]
            if not any(all((w, u) in rel for u in highs) for w in highs):
                return False
    return True


def suffnc1(n, rel) -> bool:
    for y, z in product(range(n), repeat=2):
        upper = any((y, w) in rel and (z, w) in rel for w in range(n))
        lower = any((w, y) in rel and (w, z) in rel for w in range(n))
        if upper and not lower:
            return False
    return True


# ---------------------------------------------------------------- zigzags

def simple_closed_zigzags(n: int, rel, max_len: int | None = None) -> list[tuple[tuple[int, ...], bool]]:
    """Every (vertices, up_first) with x1..xn distinct and x_n = x_0, by brute force."""
    lt = {(a, b) for a, b in rel if a != b}
    out = []
    top = n if max_len is None else min(n, max_len)
    for length in range(2, top + 1):
        for seq in permutations(range(n), length):
            vs = seq + (seq[0],)
            ups = []
            ok = True
            for a, b in zip(vs, vs[1:]):
                if (a, b) in lt:
                    ups.append(True)
                elif (b, a) in lt:
                    ups.append(False)
                else:
                    ok = False
                    break
            if not ok or any(u == v for u, v in zip(ups, ups[1:])):
                continue
            out.append((vs, ups[0]))
    return out


# ---------------------------------------------------------------- interval monoid by words

def im_mul(a, b):
    """Product of interval lists, merging [x,y][y,z] into [x,z] until nothing merges."""
    word = list(a) + list(b)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i][1] == word[i + 1][0]:
                word[i:i + 2] = [(word[i][0], word[i + 1][1])]
                changed = True
                break
    return tuple(word)


def im_elements(n, rel, degree: int):
    ivs = sorted((a, b) for a, b in rel if a != b)
    out = {()}
    frontier = {()}
    for _ in range(degree):
        frontier = {im_mul(e, (iv,)) for e in frontier for iv in ivs}
        out |= frontier
    return out


def left_divides(a, b, elems) -> bool:
    return any(im_mul(a, c) == b for c in elems)


def right_divides(a, b, elems) -> bool:
    return any(im_mul(c, a) == b for c in elems)


# ---------------------------------------------------------------- free groups

def free_reduce(word):
    out = []
    for x, e in word:
        if out and out[-1][0] == x and out[-1][1] == -e:
            out.pop()
        else:
            out.append((x, e))
    return out


# ---------------------------------------------------------------- presented monoids

def congruence_class(relations, word) -> set[tuple]:
    """Words reachable by rewriting one relation side to the other anywhere."""
    word = tuple(word)
    rules = [(u, v) for u, v in relations] + [(v, u) for u, v in relations]
    seen, todo = {word}, [word]
    while todo:
        w = todo.pop()
        for l, r in rules:
            for i in range(len(w) - len(l) + 1):
                if w[i:i + len(l)] == l:
                    nxt = w[:i] + r + w[i + len(l):]
                    if nxt not in seen:
                        seen.add(nxt)
                        todo.append(nxt)
    return seen
