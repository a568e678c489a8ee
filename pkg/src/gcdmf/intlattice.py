"""Membership in an integer lattice, by exact echelon reduction over Z."""

from __future__ import annotations

from typing import Sequence


def echelon_basis(rows: Sequence[Sequence[int]]) -> list[tuple[int, list[int]]]:
    """Integer row echelon form of the lattice spanned by ``rows``.

    Returns ``(pivot_column, row)`` pairs with strictly increasing pivots;
    every row is zero left of its pivot and has a positive pivot entry.
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return []
    width = len(work[0])
    basis: list[tuple[int, list[int]]] = []
    for col in range(width):
        live = [r for r in work if r[col] != 0]
        if not live:
            continue
        rest = [r for r in work if r[col] == 0]
        # Euclid on the column until a single row keeps a nonzero entry
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            pivot = live[0]
            nxt = [pivot]
            for r in live[1:]:
                q = r[col] // pivot[col]
                red = [a - q * b for a, b in zip(r, pivot)]
                if red[col] != 0:
                    nxt.append(red)
                elif any(red):
                    rest.append(red)
            live = nxt
        pivot = live[0]
        if pivot[col] < 0:
            pivot = [-a for a in pivot]
        basis.append((col, pivot))
        work = rest
    return basis


def in_integer_span(rows: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """True iff ``target`` is an integer combination of ``rows``."""
    t = list(target)
    for col, row in echelon_basis(rows):
        if t[col] % row[col]:
            return False
        q = t[col] // row[col]
        if q:
            t = [a - q * b for a, b in zip(t, row)]
    return not any(t)


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(echelon_basis(rows))
