"""Dessin correlators from the Virasoro constraints, with memoization.

The primitive value is the bare derivative

    D_g(a_1, ..., a_n) = d^n F_g / dp_{a_1} ... dp_{a_n}  at p = 0,

a Laurent polynomial in (s, u, v).  The constraints determine every value
from the single seed D_0(1) = s u v by eliminating one part c = m + 1 of
the index multiset:

    (m+1)/s * D_g({m+1} + A)
        = sum_j (a_j + m) D_g({a_j + m} + A - {a_j})
        + (u+v) m D_g({m} + A)
        + sum_{k=1}^{m-1} k (m-k) D_{g-1}({k, m-k} + A)
        + sum_{k=1}^{m-1} sum_{g1+g2=g, I1+I2=A} k (m-k) D_{g1}({k} + I1) D_{g2}({m-k} + I2),

with the conventions: an index 0 kills a term, negative genus kills a
term, and D_g(1) with no spectators is s u v for g = 0 and 0 otherwise.
The total index sum drops by one at each step, so the recursion
terminates no matter which part is eliminated; the default strategy
eliminates the largest part (deterministic memo keys) and a "smallest"
strategy exists purely so tests can confirm strategy independence.

The weighted correlator (prod a_i) * D_g(A) is the coefficient of
prod x_i^{-a_i - 1} in the n-point function G_{g,n}, which is what every
cross-check (closed forms, operator assembly, topological recursion)
compares against.

Grading facts used as assertions and genus bounds: every nonzero D_g(A)
is s^{sum A} times u v times a symmetric polynomial in u, v of total
degree sum(A) - n + 2 - 2g.  The degree law forces D_g({n}) = 0 once
2g > n - 1, which truncates all-genus one-point sums.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Optional, Tuple

from . import closedforms
from .laurent import LaurentPolynomial
from .npoint import NPointSeries, index_tuples
from .report import VerificationReport, run_comparisons

S = LaurentPolynomial.variable("s")
U = LaurentPolynomial.variable("u")
V = LaurentPolynomial.variable("v")

CACHE_VERSION = 1
CACHE_ALPHABET = ("s", "u", "v")


class CacheFormatError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionKey:
    genus: int
    parts: Tuple[int, ...]

    @classmethod
    def make(cls, genus: int, parts: Iterable[int]) -> "PartitionKey":
        parts = tuple(sorted(parts))
        if genus < 0:
            raise ValueError("genus must be nonnegative")
        if not parts or any(a < 1 for a in parts):
            raise ValueError(f"parts must be a nonempty multiset of positive integers, got {parts}")
        return cls(genus, parts)


@dataclass
class CorrelatorTable:
    entries: Dict[PartitionKey, LaurentPolynomial] = field(default_factory=dict)
    hits: int = 0
    misses: int = 0

    def get(self, key: PartitionKey) -> Optional[LaurentPolynomial]:
        value = self.entries.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key: PartitionKey, value: LaurentPolynomial) -> None:
        self.entries[key] = value

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, CorrelatorTable):
            return NotImplemented
        return self.entries == other.entries

    def save(self, path) -> None:
        payload = {
            "version": CACHE_VERSION,
            "alphabet": list(CACHE_ALPHABET),
            "entries": [
                {
                    "g": key.genus,
                    "parts": list(key.parts),
                    "poly": self.entries[key].to_json(CACHE_ALPHABET)["terms"],
                }
                for key in sorted(self.entries, key=lambda k: (k.genus, k.parts))
            ],
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
            fh.write("\n")

    @classmethod
    def load(cls, path) -> "CorrelatorTable":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CacheFormatError(f"unreadable correlator cache {path}: {exc}") from exc
        if not isinstance(payload, dict) or payload.get("version") != CACHE_VERSION:
            raise CacheFormatError(
                f"correlator cache {path} has version {payload.get('version')!r}, expected {CACHE_VERSION}"
            )
        if tuple(payload.get("alphabet", ())) != CACHE_ALPHABET:
            raise CacheFormatError(f"correlator cache {path} uses alphabet {payload.get('alphabet')!r}")
        table = cls()
        try:
            for entry in payload["entries"]:
                key = PartitionKey.make(entry["g"], entry["parts"])
                poly = LaurentPolynomial.from_json({"alphabet": list(CACHE_ALPHABET), "terms": entry["poly"]})
                table.put(key, poly)
        except (KeyError, TypeError, ValueError) as exc:
            raise CacheFormatError(f"corrupt correlator cache {path}: {exc}") from exc
        return table


def _multiset_splits(parts: Tuple[int, ...]):
    """Distinct (I1, I2) splits of a multiset with the number of position
    subsets realizing each, so repeated values are not re-enumerated."""
    groups = sorted(Counter(parts).items())
    splits = [((), (), 1)]
    for value, count in groups:
        extended = []
        for left, right, mult in splits:
            for take in range(count + 1):
                extended.append(
                    (left + (value,) * take, right + (value,) * (count - take), mult * comb(count, take))
                )
        splits = extended
    return splits


class VirasoroEngine:
    """Correlator computations driven by one memo table (single writer)."""

    def __init__(self, table: Optional[CorrelatorTable] = None, strategy: str = "largest"):
        if strategy not in ("largest", "smallest"):
            raise ValueError("strategy must be 'largest' or 'smallest'")
        self.table = table if table is not None else CorrelatorTable()
        self.strategy = strategy
        self._op_forms: Dict[Tuple[int, int, int], NPointSeries] = {}

    # -- the recursion -----------------------------------------------------

    def raw_correlator(self, g: int, parts: Iterable[int]) -> LaurentPolynomial:
        key = PartitionKey.make(g, parts)
        return self._raw(key)

    def _raw(self, key: PartitionKey) -> LaurentPolynomial:
        cached = self.table.get(key)
        if cached is not None:
            return cached

        g, parts = key.genus, key.parts
        if parts == (1,):
            value = S * U * V if g == 0 else LaurentPolynomial.zero()
            self.table.put(key, value)
            return value

        pivot = len(parts) - 1 if self.strategy == "largest" else 0
        c = parts[pivot]
        rest = parts[:pivot] + parts[pivot + 1 :]
        m = c - 1

        acc = LaurentPolynomial.zero()
        # join terms: merge the eliminated part into one spectator
        for a, count in sorted(Counter(rest).items()):
            reduced = list(rest)
            reduced.remove(a)
            merged = tuple(reduced) + (a + m,)
            acc = acc + (count * (a + m)) * self._raw(PartitionKey.make(g, merged))
        # dilaton-type term
        if m >= 1:
            acc = acc + m * (U + V) * self._raw(PartitionKey.make(g, rest + (m,)))
        # genus-lowering term
        if g >= 1:
            for k in range(1, m):
                acc = acc + (k * (m - k)) * self._raw(PartitionKey.make(g - 1, rest + (k, m - k)))
        # factorization term over genus and spectator splits
        if m >= 2:
            splits = _multiset_splits(rest)
            for k in range(1, m):
                for g1 in range(g + 1):
                    g2 = g - g1
                    for left, right, mult in splits:
                        acc = acc + (mult * k * (m - k)) * (
                            self._raw(PartitionKey.make(g1, left + (k,)))
                            * self._raw(PartitionKey.make(g2, right + (m - k,)))
                        )

        value = acc * LaurentPolynomial.monomial(Fraction(1, c), {"s": 1})
        self.table.put(key, value)
        return value

    def weighted_correlator(self, g: int, parts: Iterable[int]) -> LaurentPolynomial:
        parts = tuple(parts)
        weight = 1
        for a in parts:
            weight *= a
        return weight * self.raw_correlator(g, parts)

    # -- assembled series ----------------------------------------------------

    def npoint_series(self, g: int, n: int, order: int) -> NPointSeries:
        if order < 2 * n:
            raise ValueError(f"order {order} cannot hold any {n}-point tuple (need >= {2 * n})")
        out = NPointSeries(g, n, order)
        for key in index_tuples(n, order):
            out.set_coefficient(key, self.weighted_correlator(g, key))
        return out

    def one_point_all_genus(self, n: int) -> LaurentPolynomial:
        """sum over genus of n * D_g(n); the degree law caps g at (n-1)//2."""
        if n < 1:
            raise ValueError("one-point index must be positive")
        acc = LaurentPolynomial.zero()
        for g in range((n - 1) // 2 + 1):
            acc = acc + self.raw_correlator(g, (n,))
        return n * acc

    @staticmethod
    def kp_one_point(n: int) -> LaurentPolynomial:
        """All-genus one-point value by the explicit finite sum

            (s^n u v / n) sum_{i+j=n-1} (-1)^j / (i! j!)
                * prod_{a=1}^{i} (u+a)(v+a) * prod_{b=1}^{j} (u-b)(v-b),

        an oracle completely independent of the recursion.
        """
        if n < 1:
            raise ValueError("one-point index must be positive")
        total = LaurentPolynomial.zero()
        for i in range(n):
            j = n - 1 - i
            term = LaurentPolynomial.constant(Fraction((-1) ** j, _factorial(i) * _factorial(j)))
            for a in range(1, i + 1):
                term = term * (U + a) * (V + a)
            for b in range(1, j + 1):
                term = term * (U - b) * (V - b)
            total = total + term
        return S ** n * U * V * total * Fraction(1, n)

    # -- operator-form assembly ----------------------------------------------

    def assemble_operator_form(self, g: int, n: int, order: int) -> NPointSeries:
        """Build G_{g,n+1} by the renormalized one-variable-at-a-time operators.

        The new slot x0 is produced from G_{g,n}, G_{g-1,n+2} and stable
        factor pairs, all divided by sqrt(Delta(x0)) = 1 - s(u+v)/x0
        - 2 s G_{0,1}(x0); the unstable inputs G_{0,1}, G_{0,2} enter only
        through that denominator and the closed two-point form.
        """
        if 2 * g - 2 + (n + 1) <= 0:
            raise ValueError(f"target ({g},{n + 1}) is unstable")
        if order < 2 * (n + 1):
            raise ValueError(
                f"order {order} is too small to invert the denominator for {n + 1} slots (need >= {2 * (n + 1)})"
            )
        return self._op_form(g, n + 1, order)

    def _series_input(self, g: int, n: int, order: int) -> NPointSeries:
        """An ingredient G_{g,n} for the assembly: the closed two-point form
        for (0,2), recursively assembled otherwise."""
        if (g, n) == (0, 2):
            return closedforms.dessin_closed_series("G02", max(order, 4))
        return self._op_form(g, n, order)

    def _op_form(self, g: int, np1: int, order: int) -> NPointSeries:
        memo_key = (g, np1, order)
        if memo_key in self._op_forms:
            return self._op_forms[memo_key]
        n = np1 - 1

        d_src = self._series_input(g, n, order - 2) if n >= 1 else None
        e_src = self._series_input(g - 1, n + 2, order) if g >= 1 else None
        factor_pairs = []
        for g1 in range(g + 1):
            g2 = g - g1
            for left, right, _mult in _multiset_splits(tuple(range(n))):
                n1, n2 = len(left) + 1, len(right) + 1
                if (g1, n1) == (0, 1) or (g2, n2) == (0, 1):
                    continue
                factor_pairs.append(
                    (left, right, self._series_input(g1, n1, order - 2), self._series_input(g2, n2, order - 2))
                )

        pre_memo: Dict[Tuple[int, Tuple[int, ...]], LaurentPolynomial] = {}

        def pre(m: int, rest: Tuple[int, ...]) -> LaurentPolynomial:
            """The bracket coefficient at x0^{-m-1} prod x_i^{-r_i-1} before the
            s / sqrt(Delta(x0)) renormalization."""
            key = (m, rest)
            if key in pre_memo:
                return pre_memo[key]
            acc = LaurentPolynomial.zero()
            # one-variable operator acting on each existing slot
            if d_src is not None:
                for j, r in enumerate(rest):
                    shifted = rest[:j] + (r + m - 1,) + rest[j + 1 :]
                    acc = acc + r * d_src.coefficient(shifted)
            # diagonal of the genus-lowered series at the new slot
            if e_src is not None and m >= 3:
                for alpha in range(1, m - 1):
                    acc = acc + e_src.coefficient(tuple(sorted((alpha, m - 1 - alpha) + rest)))
            # stable factor pairs
            if m >= 3:
                for left, right, fac1, fac2 in factor_pairs:
                    vals_left = tuple(rest[i] for i in left)
                    vals_right = tuple(rest[i] for i in right)
                    cost_left = sum(a + 1 for a in vals_left)
                    cost_right = sum(a + 1 for a in vals_right)
                    for alpha in range(1, m - 1):
                        beta = m - 1 - alpha
                        if alpha + 1 + cost_left > fac1.order or beta + 1 + cost_right > fac2.order:
                            continue
                        c1 = fac1.coefficient((alpha,) + vals_left)
                        if c1.is_zero():
                            continue
                        acc = acc + c1 * fac2.coefficient((beta,) + vals_right)
            pre_memo[key] = acc
            return acc

        # multiply by s / sqrt(Delta(x0)), reading the new slot off key[0]
        inv = closedforms.inv_sqrt_delta_series("t0", order)
        out = NPointSeries(g, np1, order)
        for key in index_tuples(np1, order):
            m0, rest = key[0], key[1:]
            acc = LaurentPolynomial.zero()
            for k in range(0, m0):
                acc = acc + pre(m0 - k, rest) * inv.coefficient(k)
            out.set_coefficient(key, S * acc)
        self._op_forms[memo_key] = out
        return out

    # -- reports ---------------------------------------------------------------

    def kp_oracle_report(self, n_max: int) -> VerificationReport:
        return run_comparisons(
            "kp-oracle",
            {"n_max": n_max},
            ((n, self.kp_one_point(n), self.one_point_all_genus(n)) for n in range(1, n_max + 1)),
        )

    def operator_form_report(self, g: int, n: int, order: int) -> VerificationReport:
        assembled = self.assemble_operator_form(g, n, order)
        direct = self.npoint_series(g, n + 1, order)
        return run_comparisons(
            "operator-form",
            {"g": g, "n": n + 1, "order": order},
            ((key, direct.coefficient(key), assembled.coefficient(key)) for key in index_tuples(n + 1, order)),
        )


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out
