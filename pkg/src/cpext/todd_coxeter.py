"""Coset enumeration over the trivial subgroup (regular representation).

HLT strategy: every live coset in turn has each relator scanned and filled,
then its row completed.  Deductions produced along the way are pushed on a
fixed-size stack and scanned against the relator conjugates that start with
the deduced letter; this only speeds collapse, correctness comes from the HLT
scans.  Coincidences are merged with a union-find queue.  The table is
checked against every relator at the end.

Letters: generator ``g`` is ``2*g``, its inverse ``2*g + 1``.
"""

from __future__ import annotations

import numpy as np

from ._accel import njit

OK = 0
OVERFLOW = 1

_DEDUCTION_STACK = 1 << 16


class EnumerationOverflow(RuntimeError):
    pass


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == (x ^ 1):
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_reduce(word):
    w = free_reduce(word)
    while len(w) >= 2 and w[0] == (w[-1] ^ 1):
        w = w[1:-1]
    return w


def invert_word(word):
    return [x ^ 1 for x in reversed(word)]


@njit
def _rep(p, c):
    r = c
    while p[r] != r:
        r = p[r]
    while p[c] != r:
        nxt = p[c]
        p[c] = r
        c = nxt
    return r


@njit
def _merge(p, queue, qlen, a, b):
    a = _rep(p, a)
    b = _rep(p, b)
    if a == b:
        return qlen
    if b < a:
        a, b = b, a
    p[b] = a
    queue[qlen] = b
    return qlen + 1


@njit
def _coincidence(table, p, queue, dstack, dtop, a, b):
    nl = table.shape[1]
    qlen = _merge(p, queue, 0, a, b)
    qi = 0
    while qi < qlen:
        g = queue[qi]
        qi += 1
        for x in range(nl):
            d = table[g, x]
            if d < 0:
                continue
            xi = x ^ 1
            if table[d, xi] == g:
                table[d, xi] = -1
            mu = _rep(p, g)
            nu = _rep(p, d)
            if table[mu, x] >= 0:
                qlen = _merge(p, queue, qlen, nu, table[mu, x])
            elif table[nu, xi] >= 0:
                qlen = _merge(p, queue, qlen, mu, table[nu, xi])
            else:
                table[mu, x] = nu
                table[nu, xi] = mu
                if dtop[0] < dstack.shape[0]:
                    dstack[dtop[0], 0] = mu
                    dstack[dtop[0], 1] = x
                    dtop[0] += 1
                else:
                    dtop[1] = 1
    return 0


@njit
def _scan(table, p, queue, dstack, dtop, word, start, length, c, define, counter, cap):
    """Scan ``word[start:start+length]`` at coset ``c``.

    Returns 0 normally, 1 on overflow of the coset cap.  With ``define`` the
    relator cycle is completed by defining new cosets.
    """
    f = c
    b = c
    i = start
    j = start + length - 1
    while True:
        while i <= j and table[f, word[i]] >= 0:
            f = table[f, word[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, p, queue, dstack, dtop, f, b)
            return 0
        while j >= i and table[b, word[j] ^ 1] >= 0:
            b = table[b, word[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, p, queue, dstack, dtop, f, b)
            return 0
        if i == j:
            x = word[i]
            table[f, x] = b
            table[b, x ^ 1] = f
            if dtop[0] < dstack.shape[0]:
                dstack[dtop[0], 0] = f
                dstack[dtop[0], 1] = x
                dtop[0] += 1
            else:
                dtop[1] = 1
            return 0
        if not define:
            return 0
        if counter[0] >= cap:
            return 1
        d = counter[0]
        counter[0] += 1
        p[d] = d
        x = word[i]
        table[f, x] = d
        table[d, x ^ 1] = f
        if dtop[0] < dstack.shape[0]:
            dstack[dtop[0], 0] = f
            dstack[dtop[0], 1] = x
            dtop[0] += 1
        else:
            dtop[1] = 1


@njit
def _process_deductions(table, p, queue, dstack, dtop, cflat, coff, clen, first_ptr, first_ids, counter, cap):
    while dtop[0] > 0:
        dtop[0] -= 1
        c = dstack[dtop[0], 0]
        x = dstack[dtop[0], 1]
        if p[c] != c:
            continue
        for t in range(first_ptr[x], first_ptr[x + 1]):
            k = first_ids[t]
            _scan(table, p, queue, dstack, dtop, cflat, coff[k], clen[k], c, False, counter, cap)
            if p[c] != c:
                break
        d = table[c, x] if p[c] == c else -1
        if d >= 0 and p[d] == d:
            xi = x ^ 1
            for t in range(first_ptr[xi], first_ptr[xi + 1]):
                k = first_ids[t]
                _scan(table, p, queue, dstack, dtop, cflat, coff[k], clen[k], d, False, counter, cap)
                if p[d] != d:
                    break


@njit
def _enumerate(nletters, rflat, roff, rlen, cflat, coff, clen, first_ptr, first_ids, cap):
    table = np.full((cap, nletters), -1, dtype=np.int32)
    p = np.arange(cap).astype(np.int32)
    queue = np.zeros(cap, dtype=np.int32)
    dstack = np.zeros((_DEDUCTION_STACK, 2), dtype=np.int32)
    dtop = np.zeros(2, dtype=np.int64)
    counter = np.zeros(1, dtype=np.int64)
    counter[0] = 1
    c = 0
    while c < counter[0]:
        if p[c] == c:
            for k in range(roff.shape[0]):
                if _scan(table, p, queue, dstack, dtop, rflat, roff[k], rlen[k], c, True, counter, cap):
                    return table, p, counter[0], OVERFLOW
                _process_deductions(table, p, queue, dstack, dtop, cflat, coff, clen, first_ptr, first_ids, counter, cap)
                if p[c] != c:
                    break
            if p[c] == c:
                for x in range(nletters):
                    if table[c, x] < 0:
                        if counter[0] >= cap:
                            return table, p, counter[0], OVERFLOW
                        d = counter[0]
                        counter[0] += 1
                        p[d] = d
                        table[c, x] = d
                        table[d, x ^ 1] = c
                        if dtop[0] < dstack.shape[0]:
                            dstack[dtop[0], 0] = c
                            dstack[dtop[0], 1] = x
                            dtop[0] += 1
                        _process_deductions(table, p, queue, dstack, dtop, cflat, coff, clen, first_ptr, first_ids, counter, cap)
                        if p[c] != c:
                            break
        c += 1
    return table, p, counter[0], OK


def _pack(words):
    flat = []
    off = []
    ln = []
    for w in words:
        off.append(len(flat))
        ln.append(len(w))
        flat.extend(w)
    return (np.asarray(flat, dtype=np.int32), np.asarray(off, dtype=np.int64),
            np.asarray(ln, dtype=np.int64))


def prepare_relators(ngens, relators):
    """Reduce relators and build the conjugate index keyed by first letter."""
    rels = []
    seen = set()
    for r in relators:
        for x in r:
            if not 0 <= x < 2 * ngens:
                raise ValueError(f"letter {x} outside the alphabet")
        w = cyclic_reduce(list(r))
        if w and tuple(w) not in seen:
            seen.add(tuple(w))
            rels.append(w)
    conj = []
    cseen = set()
    for w in rels:
        for base in (w, invert_word(w)):
            for s in range(len(base)):
                cw = tuple(base[s:] + base[:s])
                if cw not in cseen:
                    cseen.add(cw)
                    conj.append(list(cw))
    conj.sort(key=lambda cw: cw[0])
    nl = 2 * ngens
    first_ptr = np.zeros(nl + 1, dtype=np.int64)
    for cw in conj:
        first_ptr[cw[0] + 1] += 1
    first_ptr = np.cumsum(first_ptr)
    first_ids = np.arange(len(conj), dtype=np.int64)
    return rels, conj, first_ptr, first_ids


def enumerate_cosets(ngens, relators, cap=20000):
    """Regular representation of ``<gens | relators>``.

    Returns an ``(order, 2*ngens)`` int32 table, cosets numbered in order of
    first definition after compaction; coset 0 is the identity.
    Raises :class:`EnumerationOverflow` when the coset cap is hit.
    """
    if ngens == 0:
        return np.zeros((1, 0), dtype=np.int32)
    rels, conj, first_ptr, first_ids = prepare_relators(ngens, relators)
    rflat, roff, rlen = _pack(rels) if rels else (np.zeros(0, np.int32), np.zeros(0, np.int64), np.zeros(0, np.int64))
    cflat, coff, clen = _pack(conj) if conj else (np.zeros(0, np.int32), np.zeros(0, np.int64), np.zeros(0, np.int64))
    table, p, used, status = _enumerate(2 * ngens, rflat, roff, rlen, cflat, coff, clen,
                                        first_ptr, first_ids, int(cap))
    if status == OVERFLOW:
        raise EnumerationOverflow(f"coset enumeration exceeded {cap} cosets")
    used = int(used)
    live = [c for c in range(used) if p[c] == c]
    index = np.full(used, -1, dtype=np.int64)
    index[live] = np.arange(len(live))
    out = table[live].astype(np.int64)
    if (out < 0).any():
        raise RuntimeError("coset table incomplete after enumeration")
    out = index[out].astype(np.int32)
    if (out < 0).any():
        raise RuntimeError("coset table references a dead coset")
    _verify(out, rels)
    return out


def _verify(table, rels):
    n = table.shape[0]
    cosets = np.arange(n)
    for w in rels:
        cur = cosets
        for x in w:
            cur = table[cur, x]
        if not np.array_equal(cur, cosets):
            raise RuntimeError("enumerated table violates a relator")
