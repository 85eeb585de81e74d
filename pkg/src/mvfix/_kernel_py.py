"""Pure-Python twin of the compiled kernel; generic over float, Fraction and TauNumber."""


def directed_max_min(A, B, sup_norm):
    """max_a min_b d(a, b) over coordinate tuples; squared distances for the Euclidean case."""
    cmax = None
    for a in A:
        cmin = None
        broke = False
        for b in B:
            if sup_norm:
                d = max(abs(x - y) for x, y in zip(a, b))
            else:
                d = sum((x - y) * (x - y) for x, y in zip(a, b))
            if cmax is not None and d < cmax:
                broke = True
                break
            if cmin is None or d < cmin:
                cmin = d
        if not broke and (cmax is None or cmin > cmax):
            cmax = cmin
    return cmax
