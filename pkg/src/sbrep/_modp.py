"""Span closure modulo a prime, used as a fast certificate of full algebra
dimension.

Reduction modulo a prime above p maps the algebra generated over Q(i) onto
the algebra generated by the reduced matrices, so the dimension can only
drop.  A full dimension modulo p therefore proves full dimension over Q(i).
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover - exercised only without numba
    njit = None

P = 2147483629          # prime, P = 1 (mod 4)
SQRT_MINUS_ONE = 629208553

_cache: dict = {}


def _rat_mod(q):
    den = int(q.denominator) % P
    if den == 0:
        return None
    return int(q.numerator) * pow(den, -1, P) % P


def to_mod_p(x):
    """Image of a Gaussian rational in F_P, or None if a denominator vanishes."""
    try:
        return _cache[x]
    except KeyError:
        pass
    re, im = _rat_mod(x.re), _rat_mod(x.im)
    val = None if re is None or im is None else (re + SQRT_MINUS_ONE * im) % P
    if len(_cache) < 100_000:
        _cache[x] = val
    return val


def _closure_py(gens, p):  # pragma: no cover - fallback without numba
    g, m, _ = gens.shape
    n = m * m
    rows = np.zeros((n, n), dtype=object)
    has = [False] * n
    dim = 0
    queue = []

    def insert(vec):
        nonlocal dim
        vec = [int(v) for v in vec]
        for c in range(n):
            if vec[c] and has[c]:
                f = vec[c]
                for j in range(c, n):
                    vec[j] = (vec[j] - f * rows[c][j]) % p
        for c in range(n):
            if vec[c]:
                inv = pow(vec[c], p - 2, p)
                rows[c] = [(v * inv) % p for v in vec]
                has[c] = True
                dim += 1
                return True
        return False

    ident = np.eye(m, dtype=np.int64)
    for X in [ident] + [gens[k] for k in range(g)]:
        if insert(X.reshape(-1)):
            queue.append(X)
    head = 0
    while head < len(queue) and dim < n:
        X = queue[head]
        head += 1
        for k in range(g):
            Y = (gens[k].astype(object) @ X.astype(object)) % p
            if insert(Y.reshape(-1)):
                queue.append(Y)
                if dim == n:
                    break
    return dim


if njit is not None:

    @njit(cache=True)
    def _insert(rows, has, vec, p):
        n = vec.shape[0]
        for c in range(n):
            f = vec[c]
            if f != 0 and has[c]:
                for j in range(c, n):
                    vec[j] = (vec[j] - f * rows[c, j]) % p
        for c in range(n):
            if vec[c] != 0:
                # modular inverse by square-and-multiply
                base, e, inv = vec[c], p - 2, 1
                while e:
                    if e & 1:
                        inv = inv * base % p
                    base = base * base % p
                    e >>= 1
                for j in range(c, n):
                    rows[c, j] = vec[j] * inv % p
                has[c] = True
                return True
        return False

    @njit(cache=True)
    def _closure_nb(gens, p):
        g, m, _ = gens.shape
        n = m * m
        rows = np.zeros((n, n), dtype=np.int64)
        has = np.zeros(n, dtype=np.bool_)
        queue = np.zeros((n, m, m), dtype=np.int64)
        qlen = 0
        dim = 0
        seed = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            seed[i, i] = 1
        if _insert(rows, has, seed.copy().reshape(n), p):
            queue[qlen] = seed
            qlen += 1
            dim += 1
        for k in range(g):
            if _insert(rows, has, gens[k].copy().reshape(n), p):
                queue[qlen] = gens[k]
                qlen += 1
                dim += 1
        head = 0
        Y = np.zeros((m, m), dtype=np.int64)
        while head < qlen and dim < n:
            X = queue[head]
            head += 1
            for k in range(g):
                G = gens[k]
                for i in range(m):
                    for j in range(m):
                        acc = 0
                        for t in range(m):
                            acc = (acc + G[i, t] * X[t, j]) % p
                        Y[i, j] = acc
                if _insert(rows, has, Y.copy().reshape(n), p):
                    queue[qlen] = Y
                    qlen += 1
                    dim += 1
                    if dim == n:
                        return dim
        return dim


def modular_span_dim(mats) -> int | None:
    """Dimension modulo P of the algebra generated by Gaussian ``mats``,
    or None when some entry cannot be reduced."""
    m = mats[0].size
    arr = np.zeros((len(mats), m, m), dtype=np.int64)
    for k, M in enumerate(mats):
        for i, row in enumerate(M.rows):
            for j, x in enumerate(row):
                if x:
                    v = to_mod_p(x)
                    if v is None:
                        return None
                    arr[k, i, j] = v
    if njit is not None:
        return int(_closure_nb(arr, P))
    return _closure_py(arr, P)
