"""Shared test helpers."""


def padic_agree(x, y, k=None):
    """True when two p-adic values agree on their common digit prefix."""
    if x.is_zero or y.is_zero:
        return x.is_zero and y.is_zero
    if x.prime != y.prime or x.valuation != y.valuation:
        return False
    n = min(x.precision, y.precision)
    if k is not None:
        n = min(n, k)
    return x.digits[:n] == y.digits[:n]
