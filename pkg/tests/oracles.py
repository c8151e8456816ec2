"""Independent reference implementations used to derive expected test values.

Everything here is deliberately naive (cofactor expansions, brute-force subset
filters, transitive-closure reachability) and shares no code with the package,
so agreement is meaningful evidence.
"""

from __future__ import annotations

import itertools


def cofactor_determinant(rows):
    """Determinant by recursive cofactor expansion along the first row."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [
            [rows[i][k] for k in range(n) if k != j] for i in range(1, n)
        ]
        total += (-1) ** j * rows[0][j] * cofactor_determinant(minor)
    return total


def closure_reachability(vertices, arrows):
    """All pairs (v, w) joined by a nonempty path, by iterated composition.

    `arrows` is an iterable of (src, tgt) pairs (edges and bundles alike).
    """
    reach = set(arrows)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(reach), repeat=2):
            if b == c and (a, d) not in reach:
                reach.add((a, d))
                changed = True
    return reach


def brute_force_cohereditary_irreducible(vertices, arrows):
    """All nonempty subsets X that are irreducible (every ordered pair of
    distinct members joined by a path in the whole graph) and cohereditary
    (target in X implies source in X, for every edge and bundle)."""
    vertices = sorted(vertices)
    reach = closure_reachability(vertices, arrows)
    found = []
    for r in range(1, len(vertices) + 1):
        for combo in itertools.combinations(vertices, r):
            x = set(combo)
            irreducible = all(
                (a, b) in reach for a in x for b in x if a != b
            )
            cohereditary = all(src in x for src, tgt in arrows if tgt in x)
            if irreducible and cohereditary:
                found.append(frozenset(x))
    return sorted(found, key=sorted)


def brute_force_supremum(elements, le, family):
    """Least upper bound in a finite poset, or None.  `le(a, b)` decides a <= b."""
    uppers = [u for u in elements if all(le(x, u) for x in family)]
    for u in uppers:
        if all(le(u, v) for v in uppers):
            return u
    return None


def snf_divisors_by_gcds(rows):
    """Smith divisors via determinantal divisors: d_k = gcd of all k x k minors
    divided by gcd of all (k-1) x (k-1) minors.  Independent of any
    elimination; exponential but fine at test sizes."""
    import math

    nrows, ncols = len(rows), len(rows[0]) if rows else 0
    limit = min(nrows, ncols)

    def minor_gcd(k):
        g = 0
        for rr in itertools.combinations(range(nrows), k):
            for cc in itertools.combinations(range(ncols), k):
                sub = [[rows[i][j] for j in cc] for i in rr]
                g = math.gcd(g, cofactor_determinant(sub))
        return g

    divisors = []
    prev = 1
    for k in range(1, limit + 1):
        g = minor_gcd(k)
        if g == 0 or prev == 0:
            divisors.append(0)
            prev = 0
            continue
        divisors.append(g // prev)
        prev = g
    return tuple(divisors)
