"""Slow reference implementations used only by the tests.

Chamber weights of an interval [lo, hi] are represented here by their
members inside the window [lo, hi+1] (a nonempty proper subset); the Weyl
group is every permutation of that window. Nothing from the package's
precomputed tables is used.
"""

from __future__ import annotations

from itertools import permutations, product


def window(lo, hi):
    return tuple(range(lo, hi + 2))


def fund(lo, hi, i):
    return frozenset(range(i + 1, hi + 2))


def act(perm, T):
    return frozenset(perm[x] for x in T)


def weyl(lo, hi):
    pts = window(lo, hi)
    for image in permutations(pts):
        yield dict(zip(pts, image))


def compose_simple(perm, i):
    """``w s_i``."""
    out = dict(perm)
    out[i], out[i + 1] = perm[i + 1], perm[i]
    return out


def gammas(lo, hi):
    out = set()
    for perm in weyl(lo, hi):
        for i in range(lo, hi + 1):
            out.add(act(perm, fund(lo, hi, i)))
    return out


def pairing(p, T, lo):
    def has(x):
        return x < lo or x in T

    return int(has(p + 1)) - int(has(p))


def swap(q, T):
    return frozenset(q + 1 if x == q else q if x == q + 1 else x for x in T)


def edge_ok(M, lo, hi):
    for w in weyl(lo, hi):
        for i in range(lo, hi + 1):
            s = M[act(w, fund(lo, hi, i))] + M[act(compose_simple(w, i), fund(lo, hi, i))]
            for j in (i - 1, i + 1):
                if lo <= j <= hi:
                    s -= M[act(w, fund(lo, hi, j))]
            if s > 0:
                return False
    return True


def tpr_ok(M, lo, hi):
    for w in weyl(lo, hi):
        for i in range(lo, hi):
            j = i + 1
            if not (w[i] < w[i + 1] and w[j] < w[j + 1]):
                continue
            wi, wj = compose_simple(w, i), compose_simple(w, j)
            wij, wji = compose_simple(wi, j), compose_simple(wj, i)
            F = lambda v, k: M[act(v, fund(lo, hi, k))]  # noqa: E731
            lhs = F(wi, i) + F(wj, j)
            rhs = min(F(w, i) + F(wij, j), F(w, j) + F(wji, i))
            if lhs != rhs:
                return False
    return True


def is_valid(M, lo, hi):
    return edge_ok(M, lo, hi) and tpr_ok(M, lo, hi)


def zero(lo, hi):
    return {g: 0 for g in gammas(lo, hi)}


def lower(M, lo, hi, p):
    c = M[fund(lo, hi, p)] - M[swap(p, fund(lo, hi, p))] - 1
    out = {}
    for g, v in M.items():
        if pairing(p, g, lo) > 0:
            out[g] = min(v, M[swap(p, g)] + c)
        else:
            out[g] = v
    return out


def eps(M, lo, hi, p):
    s = M[fund(lo, hi, p)] + M[swap(p, fund(lo, hi, p))]
    for q in (p - 1, p + 1):
        if lo <= q <= hi:
            s -= M[fund(lo, hi, q)]
    return -s


def wt(M, lo, hi):
    return tuple(M[fund(lo, hi, i)] for i in range(lo, hi + 1))


def freeze(M):
    return tuple(sorted((tuple(sorted(g)), v) for g, v in M.items()))


def binf_by_weight(lo, hi, depth):
    """Node counts of B(infinity) per weight, by breadth-first search on dicts."""
    seen = {freeze(zero(lo, hi)): zero(lo, hi)}
    layer = [zero(lo, hi)]
    for _ in range(depth):
        nxt = []
        for M in layer:
            for p in range(lo, hi + 1):
                N = lower(M, lo, hi, p)
                k = freeze(N)
                if k not in seen:
                    seen[k] = N
                    nxt.append(N)
        layer = nxt
    counts = {}
    for M in seen.values():
        w = wt(M, lo, hi)
        counts[w] = counts.get(w, 0) + 1
    return counts


def kostant_brute(rank, beta):
    """Count multisets of positive A_rank roots summing to beta, by enumeration."""
    roots = [tuple(1 if a <= k <= b else 0 for k in range(rank)) for a in range(rank) for b in range(a, rank)]
    bounds = [min(beta[k] for k in range(rank) if r[k]) for r in roots]
    n = 0
    for mult in product(*(range(b + 1) for b in bounds)):
        s = [0] * rank
        for m, r in zip(mult, roots):
            for k in range(rank):
                s[k] += m * r[k]
        if tuple(s) == tuple(beta):
            n += 1
    return n


def sl_weights_character(lam):
    """Weight multiplicities of V(lam) for A_m from semistandard tableaux.

    Returned as deficits (coefficients on simple roots) so they can be
    compared with Freudenthal output.
    """
    m = len(lam)
    shape = [sum(lam[k:]) for k in range(m)]
    shape = [s for s in shape if s]
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    counts = {}

    def fill(idx, T):
        if idx == len(cells):
            content = [0] * (m + 1)
            for v in T.values():
                content[v] += 1
            # deficit: beta_k = (# entries > k) - (# entries > k in highest filling)
            top = [0] * (m + 1)
            for r, length in enumerate(shape):
                top[r] += length
            beta = []
            for k in range(m):
                beta.append(sum(content[k + 1:]) - sum(top[k + 1:]))
            beta = tuple(beta)
            counts[beta] = counts.get(beta, 0) + 1
            return
        r, c = cells[idx]
        low = 0
        if c > 0:
            low = max(low, T[(r, c - 1)])
        if r > 0:
            low = max(low, T[(r - 1, c)] + 1)
        for v in range(low, m + 1):
            T[(r, c)] = v
            fill(idx + 1, T)
        T.pop((r, c), None)

    fill(0, {})
    return counts


def affine_cartan(ell):
    n = ell + 1
    return [[2 if i == j else -1 if (i - j) % n in (1, n - 1) else 0 for j in range(n)] for i in range(n)]


def affine_positive_roots(ell, height):
    """Real roots by closing the simple roots under simple reflections, plus
    k*delta with multiplicity ell; all of height <= height."""
    n = ell + 1
    C = affine_cartan(ell)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    real = set(simple)
    todo = list(simple)
    while todo:
        a = todo.pop()
        for i in range(n):
            # s_i(a) = a - <a, h_i> alpha_i
            c = sum(a[j] * C[j][i] for j in range(n))
            b = tuple(x - c * (k == i) for k, x in enumerate(a))
            if min(b) >= 0 and 0 < sum(b) <= height and b not in real:
                real.add(b)
                todo.append(b)
    out = {r: 1 for r in real}
    for k in range(1, height // n + 1):
        out[tuple([k] * n)] = ell
    return out


def partitions_count(roots, beta):
    """Number of multisets of roots (a root of multiplicity m comes in m
    distinguishable colors) summing to beta, by plain recursion."""
    items = sorted((r, c) for r, m in roots.items() for c in range(m))

    def go(k, rest):
        if not any(rest):
            return 1
        if k == len(items):
            return 0
        r, _ = items[k]
        total, cur = 0, rest
        while min(cur) >= 0:
            total += go(k + 1, cur)
            cur = tuple(x - y for x, y in zip(cur, r))
        return total

    return go(0, tuple(beta))
