"""Pure-Python hot kernels.

Fallback for the compiled ``_ckernels`` extension; both expose the same
functions and must return identical results. All inputs are integer
matrices given as lists of lists of ``int``; nothing is mutated.
"""

from math import gcd


def _primitive(row):
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def rref(rows, ncols):
    """Fraction-free reduced row echelon form.

    Returns ``(basis, pivots)``. Each basis row is a primitive integer
    vector with a positive entry at its pivot column and zeros in every
    other pivot column, so the result is the rational RREF up to a
    positive scaling of each row (and therefore canonical).
    """
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_abs = 0
        for i in range(r, nrows):
            v = m[i][c]
            if v:
                av = v if v > 0 else -v
                if best < 0 or av < best_abs:
                    best = i
                    best_abs = av
                    if av == 1:
                        break
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        prow = m[r]
        if prow[c] < 0:
            prow = [-x for x in prow]
            m[r] = prow
        a = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            b = row[c]
            if not b:
                continue
            g = gcd(a, b)
            ag = a // g
            bg = b // g
            if ag == 1:
                new = [x - bg * y for x, y in zip(row, prow)]
            else:
                new = [ag * x - bg * y for x, y in zip(row, prow)]
            m[i] = _primitive(new)
        pivots.append(c)
        r += 1
    basis = [_primitive(m[i]) for i in range(r)]
    return basis, pivots


def inertia(gram):
    """Inertia ``(n_plus, n_minus, n_zero)`` of an integer symmetric matrix.

    Congruence diagonalisation without division: after choosing a pivot p
    the trailing block is replaced by ``p * S - s s^T`` (p times the Schur
    complement) and divided by its content; ``flip`` tracks the sign
    picked up when p < 0.
    """
    n = len(gram)
    s = [list(r) for r in gram]
    idx = list(range(n))
    n_plus = n_minus = 0
    flip = 1
    while idx:
        # smallest nonzero diagonal entry keeps the products small
        k = -1
        best = 0
        for i in idx:
            v = s[i][i]
            if v:
                av = v if v > 0 else -v
                if k < 0 or av < best:
                    k = i
                    best = av
        if k < 0:
            off = None
            for a_pos, i in enumerate(idx):
                si = s[i]
                for j in idx[a_pos + 1:]:
                    if si[j]:
                        off = (i, j)
                        break
                if off is not None:
                    break
            if off is None:
                break
            i, j = off
            # e_i <- e_i + e_j makes the (i, i) entry 2 s_ij != 0
            for t in idx:
                s[i][t] += s[j][t]
            for t in idx:
                s[t][i] += s[t][j]
            k = i
        p = s[k][k]
        sk = s[k]
        rest = [i for i in idx if i != k]
        for i in rest:
            si = s[i]
            ski = sk[i]
            if ski:
                for j in rest:
                    si[j] = p * si[j] - ski * sk[j]
            else:
                for j in rest:
                    si[j] = p * si[j]
        if (p > 0) == (flip > 0):
            n_plus += 1
        else:
            n_minus += 1
        if p < 0:
            flip = -flip
        idx = rest
        if idx:
            g = 0
            for i in idx:
                si = s[i]
                for j in idx:
                    if si[j]:
                        g = gcd(g, si[j])
                        if g == 1:
                            break
                if g == 1:
                    break
            if g > 1:
                for i in idx:
                    si = s[i]
                    for j in idx:
                        si[j] //= g
    return n_plus, n_minus, len(idx)


def dot_rows(a, b):
    """Matrix of dot products ``[[u . v for v in b] for u in a]``."""
    return [[sum(x * y for x, y in zip(u, v) if x) for v in b] for u in a]
