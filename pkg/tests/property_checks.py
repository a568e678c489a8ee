"""Randomized property suites shared by the unit tests and the acceptance run.

Each suite returns a ``SuiteResult`` counting the random cases it checked and
listing any counterexamples.  Expected values come from the brute-force
helpers in ``oracles``; the library only supplies the thing under test.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from gcdmf import IntervalMonoid, build_poset, make_standard
from gcdmf.multifraction import Multifraction, is_irreducible, is_proper_piece, mf_parse, reduce_search, successors
from gcdmf.presented import PresentedMonoid, check_malcev_instance, free_commutative
from gcdmf.zigzag import F, make_zigzag, zigzag_reducible

import oracles

MIN_CASES = 200


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cases >= MIN_CASES and not self.failures

    def fail(self, msg: str) -> None:
        if len(self.failures) < 10:
            self.failures.append(msg)


# ---------------------------------------------------------------- random inputs

def random_local_lattice(rng: random.Random, lo: int = 3, hi: int = 8):
    """(n, relation, library poset) for a random local lattice on at most ``hi`` points."""
    while True:
        n = rng.randint(lo, hi)
        shape = rng.choice(("dag", "bipartite", "layered"))
        if shape == "dag":
            rel = oracles.random_order(rng, n, rng.choice([0.25, 0.35, 0.5]))
        else:
            # crowns and other height-one or height-two shapes carry irreducible zigzags
            levels = 2 if shape == "bipartite" else 3
            level = sorted(rng.randrange(levels) for _ in range(n))
            dens = rng.choice((0.55, 0.8))
            pairs = [(i, j) for i in range(n) for j in range(n)
                     if level[j] == level[i] + 1 and rng.random() < dens]
            rel = oracles.closure(n, pairs)
        if len(rel) > n and oracles.local_lattice(n, rel):
            names = [str(i) for i in range(n)]
            covers = [(str(a), str(b)) for a, b in oracles.covers_of(n, rel)]
            return n, rel, build_poset(names, covers)


def random_element(rng: random.Random, rel, max_degree: int = 2):
    ivs = sorted((a, b) for a, b in rel if a != b)
    word = ()
    for _ in range(rng.randint(0, max_degree)):
        word = oracles.im_mul(word, (rng.choice(ivs),))
    return word


def random_interval_word(rng: random.Random, rel, length: int):
    """Interval sequence that chains end-to-start more often than chance."""
    ivs = sorted((a, b) for a, b in rel if a != b)
    out = [rng.choice(ivs)]
    while len(out) < length:
        follow = [iv for iv in ivs if iv[0] == out[-1][1]]
        out.append(rng.choice(follow) if follow and rng.random() < 0.6 else rng.choice(ivs))
    return out


def _vertex_word(mf: Multifraction):
    """Free-group word over poset points: [x,y] gives x^-1 y."""
    word = []
    for i, entry in enumerate(mf.entries, start=1):
        if mf.positive(i):
            for s, t in entry:
                word += [(s, -1), (t, 1)]
        else:
            for s, t in reversed(entry):
                word += [(t, -1), (s, 1)]
    return oracles.free_reduce(word)


# ---------------------------------------------------------------- (a)

def suite_zigzag_dictionary(seed: int = 1, target: int = 250) -> SuiteResult:
    """A simple closed zigzag is reducible iff its multifraction is."""
    rng = random.Random(seed)
    res = SuiteResult("zigzag/multifraction reducibility")
    irreducible = 0
    while res.cases < target:
        n, rel, p = random_local_lattice(rng)
        zs = oracles.simple_closed_zigzags(n, rel, max_len=6)
        if not zs:
            continue
        M = IntervalMonoid(p)
        for vs, up in rng.sample(zs, min(len(zs), 15)):
            zz = make_zigzag(p, vs, up)
            lhs = zigzag_reducible(p, zz) is not None
            rhs = not is_irreducible(M, F(zz))
            res.cases += 1
            irreducible += not lhs
            if lhs != rhs:
                res.fail(f"poset {sorted(rel)} zigzag {vs}: zigzag {lhs}, multifraction {rhs}")
    if not irreducible:
        res.fail("no irreducible zigzag was drawn")
    return res


# ---------------------------------------------------------------- (b)

def suite_vertex_word_invariance(seed: int = 2, target: int = 220) -> SuiteResult:
    """Every reduction step preserves the free-group image over poset points."""
    rng = random.Random(seed)
    res = SuiteResult("vertex-word invariance under reduction")
    while res.cases < target:
        n, rel, p = random_local_lattice(rng)
        M = IntervalMonoid(p)
        for _ in range(8):
            depth = rng.randint(2, 4)
            mf = Multifraction(tuple(random_element(rng, rel) for _ in range(depth)), rng.random() < 0.5)
            steps = successors(M, mf)
            if not steps:
                continue
            res.cases += 1
            before = _vertex_word(mf)
            for step, after in steps:
                if _vertex_word(after) != before:
                    res.fail(f"poset {sorted(rel)} {mf} level {step.level} x={step.x}")
    return res


# ---------------------------------------------------------------- (c)

def _all_merges(word: tuple) -> set[tuple]:
    done, todo, seen = set(), [word], {word}
    while todo:
        w = todo.pop()
        moved = False
        for i in range(len(w) - 1):
            if w[i][1] == w[i + 1][0]:
                moved = True
                nxt = w[:i] + ((w[i][0], w[i + 1][1]),) + w[i + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        if not moved:
            done.add(w)
    return done


def suite_normal_form(seed: int = 3, target: int = 250) -> SuiteResult:
    """All merge orders of an interval word end at the library's normal form."""
    rng = random.Random(seed)
    res = SuiteResult("normal-form uniqueness")
    while res.cases < target:
        n, rel, p = random_local_lattice(rng)
        M = IntervalMonoid(p)
        for _ in range(10):
            word = random_interval_word(rng, rel, rng.randint(1, 6))
            outcomes = _all_merges(tuple(word))
            nf = M.element(word)
            # association order of the library product must not matter either
            left = M.identity()
            for iv in word:
                left = M.mul(left, M.element([iv]))
            right = M.identity()
            for iv in reversed(word):
                right = M.mul(M.element([iv]), right)
            res.cases += 1
            if outcomes != {nf} or left != nf or right != nf:
                res.fail(f"{word}: merges {outcomes}, normal form {nf}, folds {left} {right}")
    return res


# ---------------------------------------------------------------- (d)

def _division_tables(elems):
    eset = set(elems)
    ldiv = {e: set() for e in elems}
    rdiv = {e: set() for e in elems}
    for c in elems:
        for d in elems:
            m = oracles.im_mul(c, d)
            if m in eset:
                ldiv[m].add(c)
                rdiv[m].add(d)
    return ldiv, rdiv


def suite_gcd_lcm(seed: int = 4, target: int = 300) -> SuiteResult:
    """gcds and lcms against exhaustive divisor and multiple scans (degree <= 2)."""
    rng = random.Random(seed)
    res = SuiteResult("gcd/lcm universal properties")
    proper = 0
    while res.cases < target:
        n, rel, p = random_local_lattice(rng, 3, 8)
        elems = sorted(oracles.im_elements(n, rel, 2))
        if len(elems) > 450:
            continue
        M = IntervalMonoid(p)
        ldiv, rdiv = _division_tables(elems)
        # divisibility-incomparable pairs below (or above) a common element
        pairs = sorted({(x, y) for m in elems for divs in (ldiv[m], rdiv[m]) for x in divs for y in divs
                        if x not in ldiv[y] and y not in ldiv[x] and x not in rdiv[y] and y not in rdiv[x]})
        if not pairs and rng.random() < 0.8:
            continue
        for _ in range(12):
            if rng.random() < 0.25 or not pairs:
                a, b = rng.choice(elems), rng.choice(elems)
            else:
                a, b = rng.choice(pairs)
            res.cases += 1
            tag = f"poset {sorted(rel)} a={a} b={b}"
            for gcd, divs in ((M.left_gcd(a, b), ldiv), (M.right_gcd(a, b), rdiv)):
                common = divs[a] & divs[b]
                if gcd not in common or any(c not in divs[gcd] for c in common):
                    res.fail(f"{tag}: gcd {gcd} vs common divisors {sorted(common)}")
            for lcm, divs, divides in ((M.right_lcm(a, b), ldiv, oracles.left_divides),
                                       (M.left_lcm(a, b), rdiv, oracles.right_divides)):
                multiples = [m for m in elems if a in divs[m] and b in divs[m]]
                if lcm is None:
                    if multiples:
                        res.fail(f"{tag}: no lcm reported but {multiples[0]} is a common multiple")
                    continue
                proper += lcm not in (a, b) and lcm != M.identity()
                cof = oracles.im_elements(n, rel, len(lcm))
                if not (divides(a, lcm, cof) and divides(b, lcm, cof)):
                    res.fail(f"{tag}: lcm {lcm} is not a common multiple")
                if any(not divides(lcm, m, elems) for m in multiples):
                    res.fail(f"{tag}: lcm {lcm} does not divide every common multiple")
    if proper < 20:
        res.fail(f"only {proper} lcms differed from both arguments")
    return res


# ---------------------------------------------------------------- (e)

def suite_short_zigzags(seed: int = 5, target: int = 250) -> SuiteResult:
    """Simple closed zigzags of length at most 3 are always reducible."""
    rng = random.Random(seed)
    res = SuiteResult("short zigzags reducible")
    while res.cases < target:
        n, rel, p = random_local_lattice(rng)
        for vs, up in oracles.simple_closed_zigzags(n, rel, max_len=3):
            res.cases += 1
            if zigzag_reducible(p, make_zigzag(p, vs, up)) is None:
                res.fail(f"poset {sorted(rel)} zigzag {vs} is irreducible")
    return res


# ---------------------------------------------------------------- (f)

def suite_malcev(seed: int = 6, samples: int = 250) -> SuiteResult:
    """Quasi-identity search on two interval monoids, degree <= 2."""
    res = SuiteResult("Malcev quasi-identity")
    for name in ("PA", "PB"):
        M = IntervalMonoid(make_standard(name))
        ok, bad = check_malcev_instance(M, 2, samples=samples, seed=seed)
        res.cases += samples
        if not ok:
            res.fail(f"{name}: violation {bad}")
    # exhaustive at degree 1 on the smaller one
    ok, bad = check_malcev_instance(IntervalMonoid(make_standard("PA")), 1)
    if not ok:
        res.fail(f"PA degree 1: violation {bad}")
    res.cases //= 2  # report per-monoid cases
    return res


# ---------------------------------------------------------------- (g)

def _exponents(M, word) -> Counter:
    return Counter(M.pres.atoms[x] for x in word)


def suite_free_commutative(seed: int = 7, target: int = 220) -> SuiteResult:
    """Reduction in a free commutative monoid ends at b1/b2/1.../1 with disjoint supports."""
    rng = random.Random(seed)
    res = SuiteResult("free commutative reduction")
    monoids = {k: PresentedMonoid(free_commutative(k)) for k in (2, 3)}
    while res.cases < target:
        k = rng.choice((2, 3))
        M = monoids[k]
        letters = M.pres.atoms
        depth = rng.randint(2, 4)
        entries = ["".join(rng.choice(letters) for _ in range(rng.randint(0, 2))) or "1" for _ in range(depth)]
        text = "/".join(entries)
        mf = mf_parse(M, text)
        value = Counter()
        for i, e in enumerate(mf.entries, start=1):
            for x, c in _exponents(M, e).items():
                value[x] += c if i % 2 else -c
        out = reduce_search(M, mf, "exhaustive_set")
        res.cases += 1
        if not out.acyclic:
            res.fail(f"{text}: reduction graph has a cycle")
        for irr in out.irreducibles:
            b1, b2 = irr.entries[0], irr.entries[1]
            e1, e2 = _exponents(M, b1), _exponents(M, b2)
            rest_trivial = all(not e for e in irr.entries[2:])
            diff = Counter(e1)
            diff.subtract(e2)
            same_value = {x: v for x, v in diff.items() if v} == {x: v for x, v in value.items() if v}
            if not rest_trivial or set(e1) & set(e2) or not same_value:
                res.fail(f"{text} -> {irr.entries}")
    return res


# ---------------------------------------------------------------- (h)

def _alternating_sum(M, mf: Multifraction) -> Counter:
    total = Counter()
    for i, e in enumerate(mf.entries, start=1):
        for x, c in _exponents(M, e).items():
            total[x] += c if mf.positive(i) else -c
    return +total + (-total)


def suite_pieces(seed: int = 8, target: int = 220) -> SuiteResult:
    """No multifraction is a proper piece of itself; a/b/c/a/b/c is unital and minimal."""
    rng = random.Random(seed)
    res = SuiteResult("pieces")
    M3 = PresentedMonoid(free_commutative(3))
    while res.cases < target:
        if rng.random() < 0.5:
            n, rel, p = random_local_lattice(rng)
            M = IntervalMonoid(p)
            entries = tuple(random_element(rng, rel) for _ in range(rng.randint(1, 4)))
            mf = Multifraction(entries, rng.random() < 0.5)
        else:
            M = M3
            text = "/".join("".join(rng.choice("abc") for _ in range(rng.randint(1, 2))) for _ in range(rng.randint(1, 4)))
            mf = mf_parse(M, ("/" if rng.random() < 0.5 else "") + text)
        if mf.is_trivial():
            continue
        res.cases += 1
        if is_proper_piece(M, mf, mf):
            res.fail(f"{mf} is a proper piece of itself")
    # the word a/b/c/a/b/c: unital, and no nontrivial unital proper piece
    w = mf_parse(M3, "a/b/c/a/b/c")
    if _alternating_sum(M3, w):
        res.fail("a/b/c/a/b/c is not unital")
    options = [(), (0,), (1,), (2,)]
    found = []
    for depth in range(1, 7):
        for first in (True, False):
            for combo in _product(options, depth):
                cand = Multifraction(tuple(combo), first)
                if cand.is_trivial() or _alternating_sum(M3, cand):
                    continue
                if is_proper_piece(M3, cand, w):
                    found.append(cand)
    if found:
        res.fail(f"unital proper pieces of a/b/c/a/b/c: {found[:3]}")
    return res


def _product(options, depth):
    from itertools import product
    return product(options, repeat=depth)


ALL_SUITES = {
    "a": suite_zigzag_dictionary,
    "b": suite_vertex_word_invariance,
    "c": suite_normal_form,
    "d": suite_gcd_lcm,
    "e": suite_short_zigzags,
    "f": suite_malcev,
    "g": suite_free_commutative,
    "h": suite_pieces,
}
