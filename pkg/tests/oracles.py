"""Independent brute-force oracles used by the tests.

Nothing here imports the package's arithmetic; each oracle works on plain
dicts ``exponent -> coefficient`` truncated below a bound.
"""

from __future__ import annotations


def poly_mul(a: dict[int, int], b: dict[int, int], below: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j < below:
                out[i + j] = out.get(i + j, 0) + x * y
    return {e: c for e, c in out.items() if c}


def product_oracle(factors: list[tuple[int, int]], below: int) -> dict[int, int]:
    """prod over (a, b) of (q^a; q^b)_inf, factor by factor, truncated below ``below``."""
    acc = {0: 1}
    for a, b in factors:
        m = a
        while m < below:
            acc = poly_mul(acc, {0: 1, m: -1}, below)
            m += b
    return acc


def geometric_inverse(a: dict[int, int], below: int) -> dict[int, int]:
    """1/a for a series with constant term 1, by the defining recurrence."""
    assert a.get(0) == 1
    out = {0: 1}
    for n in range(1, below):
        s = -sum(a.get(k, 0) * out.get(n - k, 0) for k in range(1, n + 1))
        if s:
            out[n] = s
    return out


def partitions(n_max: int) -> list[int]:
    """p(0..n_max) by the standard coin-change DP."""
    p = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for n in range(part, n_max + 1):
            p[n] += p[n - part]
    return p


def lambert_oracle(A, B, C, d, e, alternating, below, n_span=60) -> dict[int, int]:
    """Double loop: every index in a generous window, every geometric term below ``below``."""
    out: dict[int, int] = {}
    for n in range(-n_span, n_span + 1):
        sign = -1 if alternating and n % 2 else 1
        start, step = A * n * n + B * n + C, d * n + e
        if step < 0:
            start, step, sign = start - step, -step, -sign
        x = start
        while x < below:
            out[x] = out.get(x, 0) + sign
            x += step
    return {k: v for k, v in out.items() if v}


def odd_durfee_brute(n: int) -> dict[int, int]:
    """Rank histogram by listing every symbol (rows of odd parts <= 2D+1)."""

    def rows(total, largest):
        if total == 0:
            yield 0
            return
        for p in range(min(largest, total), 0, -1):
            if p % 2:
                for rest in rows(total - p, p):
                    yield rest + 1

    hist: dict[int, int] = {}
    D = 0
    while 2 * D * D + 2 * D + 1 <= n:
        room = n - (2 * D * D + 2 * D + 1)
        for s in range(room + 1):
            tops = list(rows(s, 2 * D + 1))
            bottoms = list(rows(room - s, 2 * D + 1))
            for a in tops:
                for b in bottoms:
                    hist[a - b] = hist.get(a - b, 0) + 1
        D += 1
    return hist
