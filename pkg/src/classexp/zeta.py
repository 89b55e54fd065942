"""L-polynomials, class numbers and the Weil interval, in exact integers."""

from __future__ import annotations

from dataclasses import dataclass

from .curve import DEFAULT_CAP, count_points
from .errors import ConsistencyFailure
from .exact import QuadSurd

CHECK_CAP = 1 << 16


@dataclass(frozen=True)
class ZetaData:
    curve: object
    q: int
    genus: int
    counts: tuple  # N_1 .. N_2g (derived from the polynomial beyond N_g)
    l_coeffs: tuple  # a_0 .. a_2g
    class_number: int
    brute_counts: tuple  # N_k counted by enumeration, k = 1 .. len

    def L(self, T):
        return sum(a * T**i for i, a in enumerate(self.l_coeffs))

    def predicted_count(self, k):
        return predicted_counts(self.l_coeffs, self.q, k)[k - 1]

    def as_dict(self):
        lo, hi = weil_interval(self.genus, self.q)
        return {
            "counts": list(self.counts),
            "L": list(self.l_coeffs),
            "h": self.class_number,
            "weil": [lo.ceil(), hi.floor()],
            "checked_counts": len(self.brute_counts),
        }


def l_coeffs_from_counts(counts, q, g):
    """a_0..a_2g from N_1..N_g.

    Uses k a_k = sum_{i=1..k} S_i a_{k-i} with S_i = N_i - (q^i + 1), then the
    functional equation a_{2g-i} = q^(g-i) a_i.
    """
    if len(counts) < g:
        raise ValueError(f"need N_1..N_{g}")
    S = [None] + [counts[i - 1] - (q**i + 1) for i in range(1, g + 1)]
    a = [1]
    for k in range(1, g + 1):
        num = sum(S[i] * a[k - i] for i in range(1, k + 1))
        if num % k:
            raise ConsistencyFailure(f"non-integral L coefficient at k = {k}", k=k)
        a.append(num // k)
    for i in range(g - 1, -1, -1):
        a.append(q ** (g - i) * a[i])
    return tuple(a)


def predicted_counts(l_coeffs, q, upto):
    """N_1..N_upto implied by an L-polynomial (Newton's identities)."""
    a = list(l_coeffs)
    S = [None]
    for k in range(1, upto + 1):
        ak = a[k] if k < len(a) else 0
        s = k * ak - sum(S[i] * (a[k - i] if k - i < len(a) else 0) for i in range(1, k))
        S.append(s)
    return tuple(q**k + 1 + S[k] for k in range(1, upto + 1))


def l_polynomial(curve, cap=DEFAULT_CAP, check_cap=CHECK_CAP):
    """ZetaData from brute-force N_1..N_g; N_{g+1}..N_2g re-derived and checked.

    Counts beyond N_g are compared with enumeration whenever q^k <= check_cap;
    any disagreement raises ConsistencyFailure.
    """
    g, q = curve.genus, curve.q
    brute = [count_points(curve, k, cap) for k in range(1, g + 1)]
    a = l_coeffs_from_counts(brute, q, g)
    predicted = predicted_counts(a, q, 2 * g)
    for k in range(g + 1, 2 * g + 1):
        if q**k > min(cap, check_cap):
            break
        n = count_points(curve, k, cap)
        brute.append(n)
        if n != predicted[k - 1]:
            raise ConsistencyFailure(
                f"N_{k} counted {n} but L-polynomial predicts {predicted[k - 1]}",
                k=k, counted=n, predicted=predicted[k - 1])
    h = sum(a)
    if h <= 0:
        raise ConsistencyFailure(f"class number L(1) = {h} is not positive")
    return ZetaData(curve, q, g, predicted, a, h, tuple(brute))


def weil_interval(g, q):
    """((sqrt q - 1)^2g, (sqrt q + 1)^2g) as exact surds A + B sqrt(q).

    ``lo.ceil()`` and ``hi.floor()`` give the integer interval for h.
    """
    root = QuadSurd(0, 1, q)
    return (root - 1) ** (2 * g), (root + 1) ** (2 * g)
