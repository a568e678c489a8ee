"""Finite posets stored as dense order relations.

Elements are indexed 0..n-1 in declaration order.  The order is kept both
as a boolean matrix and as per-element up-sets and down-sets, which is what
most queries in the interval monoid need.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BadParam, CycleDetected, UnknownLabel, Unsupported


class Poset:
    """A validated finite partial order with its Hasse covers."""

    def __init__(self, names: Sequence[str], leq: Sequence[Sequence[bool]], name: str = ""):
        self.name = name
        self.names: tuple[str, ...] = tuple(names)
        self.n = len(self.names)
        self.leq_matrix: tuple[tuple[bool, ...], ...] = tuple(tuple(bool(v) for v in row) for row in leq)
        self._index = {lab: i for i, lab in enumerate(self.names)}
        self.up: tuple[frozenset[int], ...] = tuple(
            frozenset(j for j in range(self.n) if self.leq_matrix[i][j]) for i in range(self.n)
        )
        self.down: tuple[frozenset[int], ...] = tuple(
            frozenset(j for j in range(self.n) if self.leq_matrix[j][i]) for i in range(self.n)
        )
        self.covers: tuple[tuple[int, int], ...] = _transitive_reduction(self.up)
        self._lub: dict[tuple[int, int], int | None] = {}
        self._glb: dict[tuple[int, int], int | None] = {}

    def __repr__(self) -> str:
        return f"Poset({self.name or 'anonymous'}, {self.n} elements, {len(self.covers)} covers)"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Poset) and self.names == other.names and self.leq_matrix == other.leq_matrix

    def __hash__(self) -> int:
        return hash((self.names, self.leq_matrix))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(f"unknown element {label!r}") from None

    def label(self, i: int) -> str:
        return self.names[i]

    def leq(self, i: int, j: int) -> bool:
        return self.leq_matrix[i][j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq_matrix[i][j]

    def comparable(self, i: int, j: int) -> bool:
        return self.leq_matrix[i][j] or self.leq_matrix[j][i]

    def interval(self, i: int, j: int) -> list[int]:
        """Elements z with i <= z <= j, in index order."""
        return sorted(self.up[i] & self.down[j])

    def least_upper_bound(self, y: int, z: int) -> int | None:
        """Least common upper bound of y and z, or None if there is none."""
        key = (y, z) if y <= z else (z, y)
        if key not in self._lub:
            common = self.up[y] & self.up[z]
            self._lub[key] = next((u for u in sorted(common) if common <= self.up[u]), None)
        return self._lub[key]

    def greatest_lower_bound(self, y: int, z: int) -> int | None:
        key = (y, z) if y <= z else (z, y)
        if key not in self._glb:
            common = self.down[y] & self.down[z]
            self._glb[key] = next((u for u in sorted(common) if common <= self.down[u]), None)
        return self._glb[key]

    def meet_above(self, x: int, y: int, z: int) -> int | None:
        """Greatest lower bound of y and z inside the up-set of x."""
        cands = self.up[x] & self.down[y] & self.down[z]
        return next((u for u in sorted(cands) if cands <= self.down[u]), None)

    def join_below(self, x: int, y: int, z: int) -> int | None:
        """Least upper bound of y and z inside the down-set of x."""
        cands = self.down[x] & self.up[y] & self.up[z]
        return next((u for u in sorted(cands) if cands <= self.up[u]), None)

    def heights(self) -> list[int]:
        """Length of the longest chain ending at each element."""
        order = sorted(range(self.n), key=lambda i: len(self.down[i]))
        h = [0] * self.n
        for j in order:
            for i, k in self.covers:
                if k == j:
                    h[j] = max(h[j], h[i] + 1)
        return h

    def components(self) -> list[list[int]]:
        """Connected components of the comparability graph, sorted by least index."""
        seen: set[int] = set()
        comps = []
        for start in range(self.n):
            if start in seen:
                continue
            stack, comp = [start], {start}
            while stack:
                v = stack.pop()
                for w in self.up[v] | self.down[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(sorted(comp))
        return comps


def _transitive_reduction(up: Sequence[frozenset[int]]) -> tuple[tuple[int, int], ...]:
    covers = []
    for i, ups in enumerate(up):
        for j in sorted(ups):
            if j == i:
                continue
            # drop i<j when some k sits strictly between
            if not any(k != i and k != j and j in up[k] for k in ups):
                covers.append((i, j))
    return tuple(sorted(covers))


def build_poset(names: Sequence[str], covers: Iterable[tuple[str, str]], name: str = "") -> Poset:
    """Close a cover list under reflexivity and transitivity and validate it."""
    names = list(names)
    if len(set(names)) != len(names):
        raise BadParam("element labels must be distinct")
    index = {lab: i for i, lab in enumerate(names)}
    n = len(names)
    succ: list[set[int]] = [set() for _ in range(n)]
    for a, b in covers:
        if a not in index:
            raise UnknownLabel(f"unknown element {a!r}")
        if b not in index:
            raise UnknownLabel(f"unknown element {b!r}")
        if a == b:
            raise CycleDetected(f"self-loop on {a!r}")
        succ[index[a]].add(index[b])
    reach = [[False] * n for _ in range(n)]
    for s in range(n):
        stack = [s]
        reach[s][s] = True
        while stack:
            v = stack.pop()
            for w in succ[v]:
                if not reach[s][w]:
                    reach[s][w] = True
                    stack.append(w)
    for i in range(n):
        for j in range(i + 1, n):
            if reach[i][j] and reach[j][i]:
                raise CycleDetected(f"{names[i]!r} and {names[j]!r} lie on a directed cycle")
    return Poset(names, reach, name)


def is_local_lattice(p: Poset) -> tuple[bool, tuple[int, tuple[int, int]] | None]:
    """Check that up-sets have meets and down-sets have joins.

    Returns ``(True, None)`` or ``(False, (x, (y, z)))`` where y and z have no
    greatest lower bound above x (or no least upper bound below x).
    """
    for x in range(p.n):
        for y, z in combinations(sorted(p.up[x]), 2):
            if p.meet_above(x, y, z) is None:
                return False, (x, (y, z))
        for y, z in combinations(sorted(p.down[x]), 2):
            if p.join_below(x, y, z) is None:
                return False, (x, (y, z))
    return True, None


def check_suffnc1(p: Poset) -> bool:
    """Any two elements with a common upper bound also have a common lower bound."""
    for y, z in combinations(range(p.n), 2):
        if p.up[y] & p.up[z] and not (p.down[y] & p.down[z]):
            return False
    return True


def cone_point(p: Poset) -> list[tuple[list[int], int | None]]:
    """For each comparability component, an element comparable to all of it."""
    out = []
    for comp in p.components():
        members = set(comp)
        cone = next((c for c in comp if members <= (p.up[c] | p.down[c])), None)
        out.append((comp, cone))
    return out


# ---------------------------------------------------------------- standard posets

_PA_COVERS = [("0", "1"), ("0", "3"), ("0", "5"), ("1", "2"), ("3", "2"),
              ("3", "4"), ("5", "4"), ("5", "6"), ("1", "6")]

_PAN_LAYERS = {
    1: (["x1", "y0", "y1", "y2", "z1", "z2", "z3"],
        [("x1", "y0"), ("x1", "y1"), ("x1", "y2"), ("y0", "z1"), ("y0", "z2"),
         ("y1", "z1"), ("y1", "z3"), ("y2", "z2"), ("y2", "z3")]),
    2: (["x2", "x3", "y3"],
        [("x2", "y1"), ("x2", "y3"), ("y3", "z3"), ("x3", "y2"), ("x3", "y3")]),
    3: (["y4", "z4", "z5"],
        [("y2", "z4"), ("y4", "z4"), ("y3", "z5"), ("y4", "z5"), ("x3", "y4")]),
}


def _subset_label(s: Iterable[int]) -> str:
    return "".join(str(v) for v in sorted(s))


def truncated_powerset(m: int) -> Poset:
    if m < 3 or m > 9:
        raise BadParam("truncated_powerset needs 3 <= m <= 9")
    ground = range(1, m + 1)
    subsets = [frozenset(c) for k in range(1, m) for c in combinations(ground, k)]
    names = [_subset_label(s) for s in subsets]
    covers = [(_subset_label(a), _subset_label(b)) for a in subsets for b in subsets
              if a < b and len(b) == len(a) + 1]
    return build_poset(names, covers, f"truncated_powerset({m})")


def _pcn(n: int) -> Poset:
    if n < 4 or n % 2:
        raise BadParam("PCn needs an even parameter >= 4")
    names = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
    names += [f"z{i}" for i in range(1, n + 1)] + ["y"]
    covers = []
    for i in range(1, n + 1):
        prev = n if i == 1 else i - 1
        covers += [(f"x{i}", f"y{i}"), (f"y{i}", f"z{i}"), (f"x{i}", f"y{prev}"), (f"y{prev}", f"z{i}")]
        # the centre sits above even-indexed minima and below odd-indexed maxima
        covers.append(("y", f"z{i}") if i % 2 else (f"x{i}", "y"))
    return build_poset(names, covers, f"PCn({n})")


def _pan(n: int) -> Poset:
    if n < 1:
        raise BadParam("PAn needs a parameter >= 1")
    if n > 3:
        raise Unsupported("PAn is only built for n <= 3")
    names: list[str] = []
    covers: list[tuple[str, str]] = []
    for k in range(1, n + 1):
        names += _PAN_LAYERS[k][0]
        covers += _PAN_LAYERS[k][1]
    return build_poset(names, covers, f"PAn({n})")


def make_standard(name: str, param: int | None = None) -> Poset:
    """Build one of the named example posets."""
    if name == "PA":
        return build_poset([str(i) for i in range(7)], _PA_COVERS, "PA")
    if name == "PB":
        p = truncated_powerset(4)
        p.name = "PB"
        return p
    if name == "truncated_powerset":
        return truncated_powerset(4 if param is None else param)
    if name == "PCn":
        if param is None:
            raise BadParam("PCn needs a parameter")
        return _pcn(param)
    if name == "PAn":
        if param is None:
            raise BadParam("PAn needs a parameter")
        return _pan(param)
    if name == "bowtie":
        return build_poset(["x1", "x2", "x3", "x4"],
                           [("x1", "x2"), ("x1", "x4"), ("x3", "x2"), ("x3", "x4")], "bowtie")
    if name == "chain":
        k = 3 if param is None else param
        if k < 1:
            raise BadParam("chain needs at least one element")
        labels = [str(i) for i in range(k)]
        return build_poset(labels, list(zip(labels, labels[1:])), f"chain({k})")
    raise BadParam(f"unknown standard poset {name!r}")


def parse_std(spec: str) -> Poset:
    """Parse ``NAME`` or ``NAME=param`` as used on the command line."""
    name, _, arg = spec.partition("=")
    if arg:
        try:
            param = int(arg)
        except ValueError:
            raise BadParam(f"bad parameter in {spec!r}") from None
        return make_standard(name, param)
    return make_standard(name)


# ---------------------------------------------------------------- serialization

def poset_to_json(p: Poset) -> str:
    covers = sorted([p.names[i], p.names[j]] for i, j in p.covers)
    doc = {"name": p.name, "elements": sorted(p.names), "covers": covers}
    return json.dumps(doc, indent=2) + "\n"


def poset_from_json(text: str) -> Poset:
    try:
        doc = json.loads(text)
        names = doc["elements"]
        covers = [tuple(c) for c in doc["covers"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise BadParam(f"malformed poset JSON: {exc}") from None
    if not all(isinstance(c, tuple) and len(c) == 2 for c in covers):
        raise BadParam("covers must be label pairs")
    return build_poset([str(x) for x in names], [(str(a), str(b)) for a, b in covers], doc.get("name", ""))


def poset_to_dot(p: Poset) -> str:
    heights = p.heights()
    lines = [f'digraph "{p.name or "poset"}" {{', "  rankdir=BT;"]
    for h in sorted(set(heights)):
        members = " ".join(f'"{p.names[i]}";' for i in range(p.n) if heights[i] == h)
        lines.append(f"  {{ rank=same; {members} }}")
    for i, j in p.covers:
        lines.append(f'  "{p.names[i]}" -> "{p.names[j]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
