"""Truncated n-point expansions in inverse powers of x-variables.

An ``NPointSeries`` holds the coefficients of

    G_{g,n}(x_1, ..., x_n) = sum  c(a_1, ..., a_n) / (x_1^{a_1+1} ... x_n^{a_n+1})

for all index tuples with sum(a_i + 1) <= order, each coefficient an exact
Laurent polynomial (in s, u, v for the dessin engines).  The expansion is
symmetric under permuting the slots, so coefficients are stored once per
sorted tuple and looked up order-insensitively.  This is the common
currency in which the Virasoro recursion, the operator-form assembly, the
closed forms and the topological recursion are compared coefficient by
coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .laurent import LaurentPolynomial
from .series import SeriesWindowError

IndexTuple = Tuple[int, ...]


def index_tuples(n: int, order: int) -> Iterator[IndexTuple]:
    """Sorted nondecreasing tuples (a_1 <= ... <= a_n), a_i >= 1, sum(a_i + 1) <= order."""
    def rec(remaining: int, lo: int, budget: int):
        if remaining == 0:
            yield ()
            return
        # each of the remaining entries costs at least lo + 1
        for a in range(lo, budget - remaining + 1):
            if (a + 1) * remaining > budget:
                break
            for rest in rec(remaining - 1, a, budget - (a + 1)):
                yield (a,) + rest

    yield from rec(n, 1, order)


@dataclass
class NPointSeries:
    genus: int
    n: int
    order: int
    coefficients: Dict[IndexTuple, LaurentPolynomial] = field(default_factory=dict)

    def _cost(self, indices: IndexTuple) -> int:
        return sum(a + 1 for a in indices)

    def set_coefficient(self, indices, value: LaurentPolynomial) -> None:
        key = tuple(sorted(indices))
        if len(key) != self.n:
            raise ValueError(f"expected {self.n} indices, got {indices!r}")
        if not value.is_zero():
            self.coefficients[key] = value
        else:
            self.coefficients.pop(key, None)

    def coefficient(self, indices) -> LaurentPolynomial:
        key = tuple(sorted(indices))
        if len(key) != self.n or any(a < 1 for a in key):
            raise ValueError(f"bad index tuple {indices!r}")
        if self._cost(key) > self.order:
            raise SeriesWindowError(
                f"tuple {key} costs {self._cost(key)} but series order is {self.order}"
            )
        return self.coefficients.get(key, LaurentPolynomial.zero())

    def keys(self) -> List[IndexTuple]:
        return sorted(self.coefficients)

    def first_difference(self, other: "NPointSeries") -> Optional[Tuple[IndexTuple, LaurentPolynomial, LaurentPolynomial]]:
        """First index tuple (in sorted order) where the two expansions differ,
        compared through the smaller of the two orders; None if they agree."""
        if self.n != other.n:
            raise ValueError("cannot compare expansions with different slot counts")
        order = min(self.order, other.order)
        for key in index_tuples(self.n, order):
            a, b = self.coefficient(key), other.coefficient(key)
            if a != b:
                return key, a, b
        return None

    def to_json(self, alphabet=("s", "u", "v")) -> dict:
        return {
            "genus": self.genus,
            "n": self.n,
            "order": self.order,
            "alphabet": list(alphabet),
            "coefficients": [
                {"indices": list(k), "poly": self.coefficients[k].to_json(alphabet)}
                for k in self.keys()
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "NPointSeries":
        out = cls(obj["genus"], obj["n"], obj["order"])
        for entry in obj["coefficients"]:
            out.set_coefficient(tuple(entry["indices"]), LaurentPolynomial.from_json(entry["poly"]))
        return out
