"""Exact LLL reduction and integer-relation proposals.

The reduction runs entirely over Fractions (exact Gram-Schmidt), so the
output basis is deterministic.  Relation candidates produced here are only
ever *proposals*: every caller verifies them exactly in the number field
before acting on them, so reduction quality affects performance, never
correctness.
"""

from __future__ import annotations

from fractions import Fraction


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _round_nearest(x: Fraction) -> int:
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def lll_reduce(basis, delta=Fraction(3, 4)):
    """LLL-reduced basis of the lattice spanned by integer row vectors."""
    b = [[Fraction(x) for x in row] for row in basis]
    n = len(b)
    if n <= 1:
        return [tuple(int(x) for x in row) for row in b]

    ortho = [None] * n
    norms = [None] * n

    def recompute(i):
        v = list(b[i])
        for j in range(i):
            if norms[j] == 0:
                continue
            mu = _dot(b[i], ortho[j]) / norms[j]
            v = [a - mu * c for a, c in zip(v, ortho[j])]
        ortho[i] = v
        norms[i] = _dot(v, v)

    for i in range(n):
        recompute(i)

    def mu(i, j):
        return _dot(b[i], ortho[j]) / norms[j]

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            r = _round_nearest(mu(k, j))
            if r:
                b[k] = [a - r * c for a, c in zip(b[k], b[j])]
        if norms[k] >= (delta - mu(k, k - 1) ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            recompute(k - 1)
            recompute(k)
            k = max(k - 1, 1)
    return [tuple(int(x) for x in row) for row in b]


def relation_candidates(tails, scale_bits, limit=None):
    """Propose integer relations among values given by exact rational tails.

    ``tails[i]`` is a tuple of one (real) or two (real, imaginary) Fractions
    approximating the i-th value.  Returns coefficient vectors c with
    sum_i c_i * value_i likely zero, shortest first.  Callers must verify.
    """
    m = len(tails)
    width = len(tails[0])
    scale = 1 << scale_bits
    rows = []
    for i, tail in enumerate(tails):
        row = [0] * m + [_round_nearest(Fraction(x) * scale) for x in tail]
        row[i] = 1
        rows.append(row)
    reduced = lll_reduce(rows)
    scored = []
    for row in reduced:
        coeffs = row[:m]
        if all(c == 0 for c in coeffs):
            continue
        tail_norm = sum(x * x for x in row[m:m + width])
        coeff_norm = sum(c * c for c in coeffs)
        scored.append((tail_norm + coeff_norm, coeffs))
    scored.sort(key=lambda p: p[0])
    out = [tuple(c) for _, c in scored]
    return out if limit is None else out[:limit]
