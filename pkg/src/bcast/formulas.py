"""Closed-form values of alpha and beta_b for C(n;1,a), with provenance.

Every covered class is a ``Rule``: a hypothesis predicate and value
functions. ``predict_beta`` / ``predict_alpha`` return the first rule in
``RULES`` whose hypothesis holds, so overlapping classes resolve in a fixed,
most-specific-first order. ``applicable_rules`` exposes every match so the
overlaps can be checked against each other.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable

from bcast.graph_core import GraphError, build_circulant

EXACT = "exact"
LOWER = "lower_bound"
UPPER = "upper_bound"
UNKNOWN = "unknown"

OPEN = "open"


@dataclass(frozen=True)
class Prediction:
    value: int | None
    kind: str
    theorem_id: str
    note: str = ""

    @property
    def is_exact(self) -> bool:
        return self.kind == EXACT


def _check_range(n: int, a: int) -> None:
    if a < 2 or a > n // 2:
        raise GraphError(f"need 2 <= a <= n/2, got n={n}, a={a}")


def _is_power_of_two(x: int) -> bool:
    return x >= 2 and x & (x - 1) == 0


def _ceil_div(x: int, y: int) -> int:
    return -(-x // y)


# --- per-class hypotheses and values --------------------------------------------


def _beta_a2(n: int) -> tuple[int, str]:
    if n % 12 == 9:
        return (n - 3) // 2, "n = 9 (mod 12)"
    return 2 * (_ceil_div(n - 1, 4) - 1), "two antipodal vertices at diam - 1"


def _beta_2a(a: int) -> tuple[int, str]:
    if a % 2:
        return a, "a odd"
    if _is_power_of_two(a):
        return a - 1, "a a power of two"
    return a, "a even, not a power of two"


def _beta_2a_plus_1(a: int) -> tuple[int, str]:
    if a == 2 or a % 6 == 4:
        return a - 1, "a = 2 or a = 4 (mod 6)"
    return 2 * (_ceil_div(a, 2) - 1), "a != 4 (mod 6)"


def qa_value(q: int, a: int) -> tuple[int, str]:
    """beta_b = alpha of C(qa;1,a) for a >= 5, q >= 4."""
    if a % 2 and q % 2 == 0:
        return q * a // 2, "a odd, q even"
    if a % 2 and q % 2:
        return (q - 1) * a // 2, "a and q odd"
    if q % 2 == 0:
        return q * a * a // (2 * (a + 1)), "a and q even"
    return min(q * a * a // (2 * (a + 1)), (q - 1) * a // 2), "a even, q odd"


def qa_plus_r_split(n: int, a: int) -> tuple[int, int]:
    return divmod(n, a)


def qa_plus_r_hypothesis(n: int, a: int) -> bool:
    """a even >= 6, n = qa + r, 1 <= r, q >= max(2, r) and the parity side condition."""
    if a % 2 or a < 6:
        return False
    q, r = divmod(n, a)
    # r = 0 would clash with the n = 2a and n = 3a values
    if r == 0 or q < max(2, r):
        return False
    if (q - r) % 2 == 0:
        return True
    return q + r >= a - 1


def qa_plus_r_value(n: int, a: int) -> int:
    return a * n // (2 * (a + 1))


def is_open_class(n: int, a: int) -> bool:
    """Parameters whose beta_b is unresolved.

    n = 2a+1 is excluded: the isomorphism with C(n;1,2) settles it even
    though it falls inside the odd-a range.
    """
    if n == 2 * a + 1:
        return False
    if a >= 5 and a % 2 and n % 2 and n % a:
        return True
    if a >= 6 and a % 2 == 0 and n % a and n % (a + 1):
        q, r = divmod(n, a)
        if q < r:
            return True
        if q > r and (q - r) % 2 and q + r < a - 1:
            return True
    return False


@dataclass(frozen=True)
class Rule:
    theorem_id: str
    description: str
    n_class: str
    a_class: str
    applies: Callable[[int, int], bool]
    beta: Callable[[int, int], tuple[int, str]]
    alpha: Callable[[int, int], int | None]


def _alpha_2a(n: int, a: int) -> int:
    return a if a % 2 else a - 1


RULES: tuple[Rule, ...] = (
    Rule(
        "complete_graph", "C(4;1,2) and C(5;1,2) are complete", "n in {4,5}", "a = 2",
        lambda n, a: a == 2 and n in (4, 5),
        lambda n, a: (1, "complete graph"),
        lambda n, a: 1,
    ),
    Rule(
        "a_equals_2", "C(n;1,2), n >= 6", "n >= 6", "a = 2",
        lambda n, a: a == 2 and n >= 6,
        lambda n, a: _beta_a2(n),
        lambda n, a: n // 3,
    ),
    Rule(
        "n_equals_2a", "C(2a;1,a)", "n = 2a", "a >= 2",
        lambda n, a: n == 2 * a,
        lambda n, a: _beta_2a(a),
        _alpha_2a,
    ),
    Rule(
        "n_equals_2a_plus_1", "C(2a+1;1,a) through the isomorphism with C(2a+1;1,2)",
        "n = 2a+1", "a >= 2",
        lambda n, a: n == 2 * a + 1,
        lambda n, a: _beta_2a_plus_1(a),
        lambda n, a: n // 3,
    ),
    Rule(
        "n_equals_3a", "C(3a;1,a)", "n = 3a", "a >= 3",
        lambda n, a: n == 3 * a and a >= 3,
        lambda n, a: (a, "beta_b = alpha = a"),
        lambda n, a: a,
    ),
    Rule(
        "a_equals_3", "C(n;1,3)", "n >= 6", "a = 3",
        lambda n, a: a == 3 and n >= 6,
        lambda n, a: (n // 2, "n even") if n % 2 == 0 else ((n - 3) // 2, "n odd"),
        lambda n, a: n // 2 if n % 2 == 0 else (n - 3) // 2,
    ),
    Rule(
        "a_equals_4", "C(n;1,4)", "n >= 8", "a = 4",
        lambda n, a: a == 4 and n >= 8,
        lambda n, a: (2 * n // 5, f"n = 5k + {n % 5}"),
        lambda n, a: 2 * n // 5,
    ),
    Rule(
        "n_even_a_odd", "n even, a odd", "n even, n >= 6", "a odd >= 3",
        lambda n, a: n % 2 == 0 and a % 2 == 1 and a >= 3 and n >= 6,
        lambda n, a: (n // 2, "beta_b = alpha = n/2"),
        lambda n, a: n // 2,
    ),
    Rule(
        "n_multiple_of_a_plus_1", "C((a+1)k;1,a), k >= 2", "n = (a+1)k, k >= 2", "a >= 5",
        lambda n, a: a >= 5 and n % (a + 1) == 0 and n // (a + 1) >= 2,
        lambda n, a: ((a * (n // (a + 1)) // 2, "a even") if a % 2 == 0
                      else (n // 2, "a odd")),
        lambda n, a: a * (n // (a + 1)) // 2 if a % 2 == 0 else n // 2,
    ),
    Rule(
        "n_multiple_of_a", "C(qa;1,a), q >= 4", "n = qa, q >= 4", "a >= 5",
        lambda n, a: a >= 5 and n % a == 0 and n // a >= 4,
        lambda n, a: qa_value(n // a, a),
        lambda n, a: qa_value(n // a, a)[0],
    ),
    Rule(
        "n_equals_qa_plus_r", "C(qa+r;1,a), parity side conditions",
        "n = qa+r, r >= 1, q >= max(2,r)", "a even >= 6",
        qa_plus_r_hypothesis,
        lambda n, a: (qa_plus_r_value(n, a), "q=%d, r=%d" % divmod(n, a)),
        lambda n, a: qa_plus_r_value(n, a),
    ),
)

RULES_BY_ID = {r.theorem_id: r for r in RULES}


def applicable_rules(n: int, a: int) -> list[Rule]:
    _check_range(n, a)
    return [r for r in RULES if r.applies(n, a)]


def predict_beta(n: int, a: int) -> Prediction:
    for rule in applicable_rules(n, a):
        value, note = rule.beta(n, a)
        return Prediction(value, EXACT, rule.theorem_id, note)
    note = "unresolved class" if is_open_class(n, a) else "outside every covered class"
    return Prediction(None, UNKNOWN, OPEN, note)


def predict_alpha(n: int, a: int) -> Prediction:
    """alpha(C(n;1,a)) where a cited result applies.

    Odd n with a = 5 is left unknown unless 5 | n: the closed form on record
    for that class depends on an unspecified parameter.
    """
    for rule in applicable_rules(n, a):
        value = rule.alpha(n, a)
        if value is not None:
            return Prediction(value, EXACT, rule.theorem_id)
    return Prediction(None, UNKNOWN, OPEN, "no closed form")


# --- bounds ----------------------------------------------------------------------


def bound1_applies(n: int, a: int) -> bool:
    return 3 <= a <= n // 2 and 3 * a <= n


def bound2_applies(n: int, a: int) -> bool:
    return 2 <= a <= n // 2 and a % 2 == 0


def bound1(n: int, v2: int) -> int:
    """Counting bound for 2-bounded broadcasts with v2 vertices at value 2."""
    return (n - v2) // 2


def bound2(n: int, a: int, v2: int) -> int:
    # floor(a/(2(a+1)) * (n - (a-4)/a * v2)) in integers
    return (a * n - (a - 4) * v2) // (2 * (a + 1))


def two_bounded_upper(n: int, a: int, v2: int) -> int:
    """Upper bound on the cost of a 2-bounded independent broadcast.

    Applied under the stated hypotheses. The a-even bound does not hold at
    n = 2a for a >= 6: C(12;1,6) has a 2-bounded independent broadcast of
    cost 6 with three 2-vertices, against a bound of 4.
    """
    if v2 < 0:
        raise ValueError(f"v2 must be >= 0, got {v2}")
    bounds = []
    if bound1_applies(n, a):
        bounds.append(bound1(n, v2))
    if bound2_applies(n, a):
        bounds.append(bound2(n, a, v2))
    if not bounds:
        raise ValueError(f"no counting bound applies to n={n}, a={a}")
    return min(bounds)


def decompose_segments(n: int, a: int) -> tuple[int, int] | None:
    """(k1, k2) >= 0 with k1(a+1) + k2(a-1) = n and k1 maximal, or None."""
    if a % 2 or a < 6:
        raise ValueError(f"segment decomposition needs even a >= 6, got {a}")
    for k1 in range(n // (a + 1), -1, -1):
        rest = n - k1 * (a + 1)
        if rest % (a - 1) == 0:
            return k1, rest // (a - 1)
    return None


def segment_cost(a: int, k1: int, k2: int) -> int:
    return k1 * (a // 2) + k2 * (a // 2 - 1)


def lower_bound_mu(n: int, a: int, use_mu: bool = False) -> int:
    """2(diam - 1), or mu(G)(diam - 1) when ``use_mu`` is set."""
    g = build_circulant(n, [1, a] if a != 1 else [1])
    diam = g.oracle.diameter
    if use_mu:
        from bcast.graph_core import antipodal_number

        return antipodal_number(g) * (diam - 1)
    return 2 * (diam - 1)


# --- proof-internal case values for C(qa+r;1,a) -----------------------------------


@dataclass(frozen=True)
class QaPlusRCases:
    n: int
    a: int
    q: int
    r: int
    statement: int
    case: str
    case_value: int
    closing_value: int | None


def qa_plus_r_case_values(n: int, a: int) -> QaPlusRCases:
    """Compare the stated value with the per-case closed forms of its proof.

    Cases are split on the parity of q - r and on its size relative to a+1.
    ``closing_value`` is floor(qa^2 / (2(a+1))), the form two of the cases
    end on (it ignores r); None for the cases that end elsewhere.
    """
    if not qa_plus_r_hypothesis(n, a):
        raise ValueError(f"n={n}, a={a} outside the qa+r hypothesis")
    q, r = divmod(n, a)
    diff = q - r
    statement = qa_plus_r_value(n, a)
    closing = q * a * a // (2 * (a + 1))
    if diff % (a + 1) == 0:
        k = q - diff // (a + 1)
        return QaPlusRCases(n, a, q, r, statement, "a+1 divides q-r", a * k // 2, None)
    if diff % 2 == 0:
        k = 2 * (diff // (2 * (a + 1)))
        ell = (diff - k * (a + 1)) // 2
        return QaPlusRCases(n, a, q, r, statement, "same parity", (q - k) * a // 2 - ell, closing)
    if diff < a + 1:
        value = a * q // 2 - (diff + 1) // 2
        return QaPlusRCases(n, a, q, r, statement, "different parity, q-r < a+1", value, None)
    k = diff // (a + 1)
    if k % 2 == 0:
        k -= 1
    ell = (diff - k * (a + 1)) // 2
    return QaPlusRCases(
        n, a, q, r, statement, "different parity, q-r > a+1", (q - k) * a // 2 - ell, closing
    )


# --- coverage matrix --------------------------------------------------------------


def coverage_rows() -> list[dict[str, str]]:
    rows = [
        {
            "order": str(k + 1),
            "n_class": r.n_class,
            "a_class": r.a_class,
            "theorem_id": r.theorem_id,
            "kind": EXACT,
        }
        for k, r in enumerate(RULES)
    ]
    rows.append({
        "order": str(len(RULES) + 1),
        "n_class": "anything else",
        "a_class": "a odd >= 5 with n odd and a not dividing n; even a >= 6 gaps",
        "theorem_id": OPEN,
        "kind": UNKNOWN,
    })
    return rows


def coverage_matrix_csv() -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["order", "n_class", "a_class", "theorem_id", "kind"],
                            lineterminator="\n")
    writer.writeheader()
    writer.writerows(coverage_rows())
    return buf.getvalue()
