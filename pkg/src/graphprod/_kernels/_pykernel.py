"""Pure-Python reference kernels.

Symbols are small nonnegative ints; ``masks[s]`` has bit ``t`` set iff symbols
``s`` and ``t`` commute. No symbol commutes with itself.
"""


def lex_order(seq, masks):
    """Positions of ``seq`` in the lexicographically least shuffle-equivalent order.

    An item is front-accessible iff every item still before it commutes with
    it; the least accessible symbol is emitted first (leftmost on ties).
    """
    remaining = list(range(len(seq)))
    out = []
    while remaining:
        earlier = 0
        best = -1
        best_sym = -1
        for idx, p in enumerate(remaining):
            s = seq[p]
            if earlier & ~masks[s] == 0 and (best < 0 or s < best_sym):
                best, best_sym = idx, s
            earlier |= 1 << s
        out.append(remaining.pop(best))
    return out


def merge_target(seq, masks, v):
    """Index of the syllable that a trailing ``v`` merges into, or -1.

    Scans right to left while symbols commute with ``v``.
    """
    mv = masks[v]
    for j in range(len(seq) - 1, -1, -1):
        s = seq[j]
        if s == v:
            return j
        if not (mv >> s) & 1:
            return -1
    return -1


def normal_word(word, masks):
    """Lex-least representative of a trace over single letters."""
    return tuple(word[p] for p in lex_order(word, masks))
