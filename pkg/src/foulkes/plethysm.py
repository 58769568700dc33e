"""Multiplicities of irreducibles in Sym^a(Sym^b V), computed internally.

The multiplicity of the type lambda is recovered from the dimensions of the
weight spaces of Sym^a Sym^b V by the usual alternating sum over the Weyl
group: mult(lambda) = sum over w in S_n of sgn(w) * K(lambda + delta - w
delta), with delta = (n-1, ..., 1, 0).  The weight-space dimension K is a
count of multisets of monomials and is computed by dynamic programming.
"""

from __future__ import annotations

from math import comb

from .tableaux import Partition, enumerate_partitions

# (n, b) -> monomial list; (n, b) -> DP memo shared by every query at that size
_MONOS: dict[tuple[int, int], list[tuple[int, ...]]] = {}
_COUNTS: dict[tuple[int, int], dict] = {}


def _monomials(n: int, b: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree b in n variables, lexicographically descending."""
    key = (n, b)
    if key not in _MONOS:
        out: list[tuple[int, ...]] = []

        def rec(prefix: list[int], remaining: int) -> None:
            if len(prefix) == n - 1:
                out.append(tuple(prefix + [remaining]))
                return
            for e in range(remaining, -1, -1):
                rec(prefix + [e], remaining - e)

        rec([], b)
        _MONOS[key] = out
    return _MONOS[key]


def weight_multiplicity(a: int, b: int, mu) -> int:
    """Dimension of the mu-weight space of Sym^a Sym^b V.

    Counts multisets of cardinality ``a`` of degree-b exponent vectors in
    ``len(mu)`` variables whose sum is ``mu``.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    mu = tuple(int(v) for v in mu)
    if any(v < 0 for v in mu):
        raise ValueError(f"negative coordinate in weight {mu}")
    if sum(mu) != a * b:
        raise ValueError(f"weight {mu} does not sum to {a}*{b}")
    n = len(mu)
    # weight multiplicities are symmetric in the coordinates
    return _count_multisets(n, b, 0, a, tuple(sorted(mu, reverse=True)))


def _count_multisets(n, b, idx, count, residual) -> int:
    if count == 0:
        return 1 if not any(residual) else 0
    monos = _monomials(n, b)
    if idx == len(monos):
        return 0
    # everything from idx on has first coordinate <= monos[idx][0]
    if residual[0] > count * monos[idx][0]:
        return 0
    memo = _COUNTS.setdefault((n, b), {})
    key = (idx, count, residual)
    cached = memo.get(key)
    if cached is not None:
        return cached
    mono = monos[idx]
    total = 0
    rem = list(residual)
    for used in range(count + 1):
        if used:
            for i in range(n):
                rem[i] -= mono[i]
            if any(v < 0 for v in rem):
                break
        total += _count_multisets(n, b, idx + 1, count - used, tuple(rem))
    memo[key] = total
    return total


def plethysm_coefficient(a: int, b: int, lam: Partition) -> int:
    """Multiplicity of the irreducible of type ``lam`` in Sym^a Sym^b V."""
    if lam.weight != a * b:
        raise ValueError(f"|{lam}| = {lam.weight} != {a}*{b}")
    if lam.rows > a:
        return 0  # constituents of Sym^a Sym^b have at most a rows
    if a == 1:
        return 1 if lam.parts == (b,) else 0
    if b == 1:
        return 1 if lam.parts == (a,) else 0
    n = lam.rows
    delta = tuple(n - 1 - i for i in range(n))
    target = tuple(lam.parts[i] + delta[i] for i in range(n))

    # Alternating sum over permutations of delta, assigned position by
    # position with early pruning of negative coordinates.  Picking the
    # element at index r of the remaining list flips the sign r times.
    total = 0

    def rec(pos: int, remaining: tuple[int, ...], mu_prefix: tuple[int, ...],
            sign: int) -> None:
        nonlocal total
        if pos == n:
            total += sign * weight_multiplicity(a, b, mu_prefix)
            return
        for r, d in enumerate(remaining):
            coord = target[pos] - d
            if coord < 0:
                continue
            rec(
                pos + 1,
                remaining[:r] + remaining[r + 1:],
                mu_prefix + (coord,),
                sign * (-1) ** r,
            )

    rec(0, delta, (), 1)
    return total


def schur_dimension(lam: Partition, n: int) -> int:
    """Dimension of the irreducible GL_n representation of type ``lam``.

    Hook-content formula; zero when the shape has more than n rows.
    """
    if lam.rows > n:
        return 0
    conj = lam.column_lengths()
    num = 1
    den = 1
    for i, p in enumerate(lam.parts):
        for j in range(p):
            num *= n + j - i
            den *= (p - j) + (conj[j] - i) - 1
    return num // den


def sym_sym_dimension(a: int, b: int, n: int) -> int:
    """dim Sym^a Sym^b C^n."""
    return comb(comb(n + b - 1, b) + a - 1, a)


def dims_table(a: int, b: int) -> list[tuple[Partition, int, int]]:
    """(lambda, p, p') for every lambda of weight a*b with at most a rows.

    p is the multiplicity in Sym^a Sym^b V, p' the one in Sym^b Sym^a V.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    return [
        (lam, plethysm_coefficient(a, b, lam), plethysm_coefficient(b, a, lam))
        for lam in enumerate_partitions(a * b, a)
    ]
