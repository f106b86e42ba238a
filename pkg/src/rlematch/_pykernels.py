"""Pure-Python search kernels.

Bit vectors are plain ints masked to their width. Every kernel returns the
occurrence start positions it found and the number of automaton transitions
it executed. The compiled module ``_ckernels`` mirrors these signatures.
"""

import re

NAME = "python"
ROWS = "int_rows"

_RUN_RE = re.compile(rb"(.)\1*", re.DOTALL)


def shift_and(b, m, text):
    high = 1 << (m - 1)
    d = 0
    out = []
    for j, c in enumerate(text):
        d = ((d << 1) | 1) & b[c]
        if d & high:
            out.append(j - m + 1)
    return out, len(text)


def bndm(b, m, text):
    # b is built from the reversed pattern
    n = len(text)
    high = 1 << (m - 1)
    ones = (1 << m) - 1
    out = []
    steps = 0
    pos = 0
    while pos <= n - m:
        d = ones
        j = m
        last = m
        while True:
            j -= 1
            d &= b[text[pos + j]]
            steps += 1
            if d & high:
                if j > 0:
                    last = j
                else:
                    out.append(pos)
                    break
            if j == 0:
                break
            d = (d << 1) & ones
            if not d:
                break
        pos += last
    return out, steps


def rl_shift_and_text(b1, b2, rho, m, ell, text):
    high = 1 << (rho - 1)
    top = m + 1
    d = 0
    out = []
    steps = 0
    for mo in _RUN_RE.finditer(text):
        start, end = mo.span()
        l = end - start
        d = ((d << 1) | 1) & b1[text[start]] & b2[l if l <= m else top]
        if d & high:
            out.append(start + ell - m)
        steps += 1
    return out, steps


def rl_shift_and_runs(b1, b2, rho, m, ell, syms, lens, d, j):
    """Advance a run-wise scan over one batch; ``d``/``j`` carry between batches."""
    high = 1 << (rho - 1)
    top = m + 1
    out = []
    for c, l in zip(syms, lens):
        d = ((d << 1) | 1) & b1[c] & b2[l if l <= m else top]
        if d & high:
            out.append(j + ell - m)
        j += l
    return out, len(syms), d, j


def rl_bndm(b1, b2, rho, m, ell, text):
    # b1/b2 are built from the reversed pattern
    n = len(text)
    high = 1 << (rho - 1)
    ones = (1 << rho) - 1
    top = m + 1
    out = []
    steps = 0
    s = m - 1
    while s < n:
        d = ones
        b = s - m + 1
        while s + 1 < n and text[s] == text[s + 1]:
            s += 1
        j = 0
        k = 1
        p = s
        while p >= b:
            c = text[p]
            q = p - 1
            while q >= b and text[q] == c:
                q -= 1
            l = p - q
            d &= b1[c] & b2[l if l <= m else top]
            steps += 1
            if d & high:
                if j + ell >= m:
                    out.append(s - j - ell + 1)
                else:
                    k = j + ell
            d = (d << 1) & ones
            if not d:
                break
            j += l
            p = q
        s += m - k
    return out, steps
