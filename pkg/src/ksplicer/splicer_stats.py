"""Statistics of unions of k uniform random spanning trees of K_n.

Three routes to the same numbers:

* closed forms in exact rational arithmetic (``exact_*``),
* full enumeration over k-tuples of labeled trees for tiny n
  (:func:`brute_force_oracle`),
* Monte Carlo simulation (:func:`mc_estimate`, :func:`concentration_check`).

Notation: ``s_k`` is the number of distinct edges in the union, ``m`` the
number of surplus occurrences (``s_k + m == k * (n - 1)``), ``R_e`` the
surplus count of one edge, ``C_L`` the number of edges common to the trees
indexed by ``L``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .graph_core import Edge, GraphError, SpanningTree
from .prufer import all_trees, decode_pairs
from .samplers import RngStream, SamplerKind, sample_pairs

SE_TOLERANCE = 5


# ---------------------------------------------------------------------------
# data model


@dataclass
class MultiSplicer:
    """k spanning trees on [n] with edge multiplicities kept."""

    n: int
    trees: list[SpanningTree]
    multiplicity: Counter = field(default_factory=Counter)

    def __post_init__(self):
        if not self.trees:
            raise GraphError("a multi-splicer needs at least one tree")
        if any(t.n != self.n for t in self.trees):
            raise GraphError("trees are defined on different vertex counts")
        if not self.multiplicity:
            self.multiplicity = Counter(e for t in self.trees for e in t.edges)

    @classmethod
    def from_trees(cls, trees: Sequence[SpanningTree]) -> "MultiSplicer":
        return cls(trees[0].n, list(trees))

    @property
    def k(self) -> int:
        return len(self.trees)

    @property
    def s_k(self) -> int:
        return len(self.multiplicity)

    @property
    def m(self) -> int:
        return sum(c - 1 for c in self.multiplicity.values())

    def repetitions(self, e: Edge) -> int:
        return max(self.multiplicity.get(e, 0) - 1, 0)

    def common(self, indices: Iterable[int]) -> int:
        """|intersection of E(T_i)| over the 0-based tree indices given."""
        idx = sorted(set(indices))
        if not idx:
            raise ValueError("index set must be non-empty")
        if idx[0] < 0 or idx[-1] >= self.k:
            raise IndexError(f"tree indices must lie in [0, {self.k})")
        inter = set(self.trees[idx[0]].edges)
        for i in idx[1:]:
            inter &= self.trees[i].edges
        return len(inter)


def repetitions(ms: MultiSplicer, e: Edge) -> int:
    return ms.repetitions(e)


# ---------------------------------------------------------------------------
# closed forms


def _p(n: int) -> Fraction:
    return 1 - Fraction(2, n)


def exact_edge_probability(n: int) -> Fraction:
    return Fraction(2, n)


def exact_pair_probability(n: int, adjacent: bool) -> Fraction:
    return Fraction(3 if adjacent else 4, n * n)


def exact_expected_common(n: int, ell: int) -> Fraction:
    if n < 2 or ell < 1:
        raise ValueError("need n >= 2 and ell >= 1")
    return math.comb(n, 2) * Fraction(2, n) ** ell


def exact_expected_sk(n: int, k: int) -> Fraction:
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    return math.comb(n, 2) * (1 - _p(n) ** k)


def expected_sk_inclusion_exclusion(n: int, k: int) -> Fraction:
    """E[s_k] assembled from E[C_L] by inclusion-exclusion over subset sizes."""
    return sum((-1) ** (a + 1) * math.comb(k, a) * exact_expected_common(n, a)
               for a in range(1, k + 1))


def exact_expected_re(n: int, k: int) -> Fraction:
    return Fraction(2 * k, n) - 1 + _p(n) ** k


def exact_expected_m(n: int, k: int) -> Fraction:
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    return math.comb(n, 2) * exact_expected_re(n, k)


def exact_var_re(n: int, k: int) -> Fraction:
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    p = _p(n)
    return Fraction(2 * k, n) * p + p ** k * (1 - Fraction(4 * k, n)) - p ** (2 * k)


def exact_cov_re(n: int, k: int, adjacent: bool) -> Fraction:
    """Cov(R_e, R_e') for distinct edges; zero unless they share a vertex."""
    if k < 1:
        raise ValueError("need k >= 1")
    if adjacent and n < 3:
        raise ValueError("adjacent edge pairs need n >= 3")
    if not adjacent:
        if n < 4:
            raise ValueError("non-adjacent edge pairs need n >= 4")
        return Fraction(0)
    p = _p(n)
    both_absent = 1 - Fraction(4, n) + Fraction(3, n * n)
    return (-Fraction(k, n * n) + Fraction(2 * k, n * n) * p ** (k - 1)
            + both_absent ** k - p ** (2 * k))


def exact_var_m(n: int, k: int) -> Fraction:
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    if n == 2:
        return Fraction(0)
    # n(n-1)(n-2) ordered pairs of edges sharing a vertex
    return (math.comb(n, 2) * exact_var_re(n, k)
            + n * (n - 1) * (n - 2) * exact_cov_re(n, k, adjacent=True))


def expected_m_series(n: int, k: int) -> float:
    """Two-term expansion of E[m] in 1/n (the 1/n term is negative)."""
    return k * (k - 1) - k * (k - 1) * (2 * k - 1) / (3 * n)


def var_m_series(n: int, k: int) -> float:
    return k * (k - 1) - (20 * k ** 3 - 33 * k ** 2 + 13 * k) / (6 * n)


# ---------------------------------------------------------------------------
# enumeration oracle

ORACLE_MAX_N = 5
ORACLE_MAX_K = 3

STATISTICS = (
    "edge_prob", "pair_adjacent", "pair_nonadjacent", "common",
    "s_k", "m", "var_m", "mean_re", "var_re", "cov_adjacent", "cov_nonadjacent",
)


class OracleSizeError(ValueError):
    pass


@lru_cache(maxsize=None)
def _enumerate(n: int, k: int) -> dict:
    """Integer sums over all k-tuples of trees of K_n, plus the tuple count."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    col = {Edge(u, v): i for i, (u, v) in enumerate(pairs)}
    trees = list(all_trees(n))
    ind = np.zeros((len(trees), len(pairs)), dtype=np.int8)
    for r, t in enumerate(trees):
        for e in t.edges:
            ind[r, col[e]] = 1

    t = len(trees)
    total = t ** k
    pos = np.indices((t,) * k).reshape(k, -1)
    per_tree = [ind[pos[i]] for i in range(k)]  # each (total, E)
    mult = np.sum(per_tree, axis=0, dtype=np.int64)
    rep = np.maximum(mult - 1, 0)
    m = rep.sum(axis=1)
    s = (mult > 0).sum(axis=1)

    e0 = col[Edge(0, 1)]
    out = {
        "total": total,
        "m": int(m.sum()), "m2": int((m * m).sum()),
        "s_k": int(s.sum()),
        "re": int(rep[:, e0].sum()), "re2": int((rep[:, e0] ** 2).sum()),
        "edge_prob": int(ind[:, e0].sum()), "trees": t,
        "common": [],
    }
    inter = np.ones_like(per_tree[0])
    for i in range(k):
        inter = inter & per_tree[i]
        out["common"].append(int(inter.sum()))
    if n >= 3:
        e1 = col[Edge(0, 2)]
        out["pair_adjacent"] = int((ind[:, e0] & ind[:, e1]).sum())
        out["re_re_adjacent"] = int((rep[:, e0] * rep[:, e1]).sum())
    if n >= 4:
        e2 = col[Edge(2, 3)]
        out["pair_nonadjacent"] = int((ind[:, e0] & ind[:, e2]).sum())
        out["re_re_nonadjacent"] = int((rep[:, e0] * rep[:, e2]).sum())
    return out


def brute_force_oracle(n: int, k: int, statistic: str, ell: int | None = None) -> Fraction:
    """Exact value of ``statistic`` by enumerating every k-tuple of trees.

    Probabilities (``edge_prob``, ``pair_*``) refer to a single tree; the
    fixed edges are {0,1}, {0,2} (adjacent) and {2,3} (non-adjacent).
    ``common`` needs ``ell`` (the size of the tree index set).
    """
    if not 2 <= n <= ORACLE_MAX_N or not 1 <= k <= ORACLE_MAX_K:
        raise OracleSizeError(f"enumeration limited to n <= {ORACLE_MAX_N}, k <= {ORACLE_MAX_K}")
    if statistic not in STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}")
    data = _enumerate(n, k)
    total = data["total"]

    def mean(key):
        return Fraction(data[key], total)

    if statistic == "edge_prob":
        return Fraction(data["edge_prob"], data["trees"])
    if statistic in ("pair_adjacent", "pair_nonadjacent"):
        if statistic not in data:
            raise ValueError(f"{statistic} undefined for n={n}")
        return Fraction(data[statistic], data["trees"])
    if statistic == "common":
        if ell is None or not 1 <= ell <= k:
            raise ValueError("common needs 1 <= ell <= k")
        return Fraction(data["common"][ell - 1], total)
    if statistic in ("s_k", "m"):
        return mean(statistic)
    if statistic == "var_m":
        return mean("m2") - mean("m") ** 2
    if statistic == "mean_re":
        return mean("re")
    if statistic == "var_re":
        return mean("re2") - mean("re") ** 2
    key = "re_re_adjacent" if statistic == "cov_adjacent" else "re_re_nonadjacent"
    if key not in data:
        raise ValueError(f"{statistic} undefined for n={n}")
    return mean(key) - mean("re") ** 2


def exact_value(n: int, k: int, statistic: str, ell: int | None = None) -> Fraction:
    """Closed-form counterpart of :func:`brute_force_oracle`."""
    table = {
        "edge_prob": lambda: exact_edge_probability(n),
        "pair_adjacent": lambda: exact_pair_probability(n, True),
        "pair_nonadjacent": lambda: exact_pair_probability(n, False),
        "common": lambda: exact_expected_common(n, ell),
        "s_k": lambda: exact_expected_sk(n, k),
        "m": lambda: exact_expected_m(n, k),
        "var_m": lambda: exact_var_m(n, k),
        "mean_re": lambda: exact_expected_re(n, k),
        "var_re": lambda: exact_var_re(n, k),
        "cov_adjacent": lambda: exact_cov_re(n, k, True),
        "cov_nonadjacent": lambda: exact_cov_re(n, k, False),
    }
    if statistic not in table:
        raise ValueError(f"unknown statistic {statistic!r}")
    if statistic == "common" and ell is None:
        raise ValueError("common needs ell")
    return table[statistic]()


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass
class StatReport:
    quantity: str
    n: int
    k: int
    exact: Fraction | float
    estimate: float
    std_error: float
    trials: int
    # one-sided check: estimate may not exceed ``exact`` (used for tail bounds)
    upper_bound: bool = False

    @property
    def deviation(self) -> float:
        return self.estimate - float(self.exact)

    @property
    def passed(self) -> bool:
        if self.upper_bound:
            return self.deviation <= SE_TOLERANCE * self.std_error
        if self.std_error == 0:
            return math.isclose(self.estimate, float(self.exact), rel_tol=0, abs_tol=1e-12)
        return abs(self.deviation) <= SE_TOLERANCE * self.std_error

    def to_dict(self) -> dict:
        d = {
            "quantity": self.quantity, "n": self.n, "k": self.k,
            "exact": float(self.exact), "estimate": self.estimate,
            "std_error": self.std_error, "trials": self.trials, "pass": self.passed,
            "check": "upper_bound" if self.upper_bound else "two_sided",
        }
        if isinstance(self.exact, Fraction):
            d["exact_fraction"] = str(self.exact)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "StatReport":
        exact = Fraction(d["exact_fraction"]) if "exact_fraction" in d else d["exact"]
        return cls(d["quantity"], d["n"], d["k"], exact, d["estimate"], d["std_error"], d["trials"],
                   d.get("check") == "upper_bound")


def render_table(reports: Sequence[StatReport]) -> str:
    header = ("quantity", "n", "k", "exact", "estimate", "std_error", "z", "trials", "pass")
    rows = []
    for r in reports:
        z = r.deviation / r.std_error if r.std_error else 0.0
        rows.append((r.quantity, str(r.n), str(r.k), f"{float(r.exact):.6f}", f"{r.estimate:.6f}",
                     f"{r.std_error:.6f}", f"{z:+.2f}", str(r.trials), "PASS" if r.passed else "FAIL"))
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w)
                               for i, (c, w) in enumerate(zip(row, widths))))
    return "\n".join(lines)


def simulate(n: int, k: int, trials: int, rng: RngStream,
             kind: SamplerKind | str = SamplerKind.PRUFER, extras: bool = True) -> dict[str, np.ndarray]:
    """Per-trial values of every Monte Carlo statistic.

    Trial ``t`` draws its k trees from ``rng.child(t)`` so results do not
    depend on how trials are batched. With ``extras=False`` only ``s_k`` and
    ``m`` are recorded.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    kind = SamplerKind.parse(kind)
    total = k * (n - 1)
    s = np.empty(trials, dtype=np.int64)
    out = {"s_k": s}
    if extras:
        e0, e_adj, e_non = (0, 1), (0, 2), (2, 3)
        edge = np.empty(trials)
        adj = np.empty(trials)
        non = np.empty(trials)
        re0 = np.empty(trials, dtype=np.int64)
        common = np.empty((k, trials), dtype=np.int64)
    for t in range(trials):
        gen = rng.child(t).generator()
        if kind is SamplerKind.PRUFER and n > 2:
            seqs = gen.integers(0, n, size=(k, n - 2)).tolist()
            trees = [decode_pairs(q, n) for q in seqs]
        else:
            trees = [sample_pairs(n, kind, gen) for _ in range(k)]
        if not extras:
            s[t] = len({p for tr in trees for p in tr})
            continue
        sets = [set(tr) for tr in trees]
        union = set().union(*sets)
        s[t] = len(union)
        edge[t] = sum(e0 in x for x in sets) / k
        adj[t] = sum(e0 in x and e_adj in x for x in sets) / k
        non[t] = sum(e0 in x and e_non in x for x in sets) / k
        re0[t] = max(sum(e0 in x for x in sets) - 1, 0)
        inter = sets[0]
        common[0, t] = len(inter)
        for i in range(1, k):
            inter = inter & sets[i]
            common[i, t] = len(inter)
    out["m"] = total - s
    if extras:
        out.update(edge_prob=edge, mean_re=re0)
        if n >= 3:
            out["pair_adjacent"] = adj
        if n >= 4:
            out["pair_nonadjacent"] = non
        for i in range(k):
            out[f"common_{i + 1}"] = common[i]
    return out


def _mean_report(name, n, k, exact, values) -> StatReport:
    values = np.asarray(values, dtype=float)
    trials = len(values)
    sd = float(values.std(ddof=1)) if trials > 1 else 0.0
    return StatReport(name, n, k, exact, float(values.mean()), sd / math.sqrt(trials), trials)


def variance_report(n: int, k: int, m_values: np.ndarray) -> StatReport:
    """Sample variance of ``m`` against the exact variance.

    Standard error of a sample variance under approximate normality:
    ``s^2 * sqrt(2 / (N - 1))``.
    """
    values = np.asarray(m_values, dtype=float)
    trials = len(values)
    var = float(values.var(ddof=1))
    return StatReport("var_m", n, k, exact_var_m(n, k), var, var * math.sqrt(2 / (trials - 1)), trials)


def _exact_for(n: int, k: int, key: str) -> Fraction:
    if key.startswith("common_"):
        return exact_expected_common(n, int(key.split("_")[1]))
    return exact_value(n, k, key)


def reports_from_samples(n: int, k: int, samples: dict[str, np.ndarray]) -> list[StatReport]:
    """One mean report per sampled statistic, then the variance of ``m``."""
    out = [_mean_report(key, n, k, _exact_for(n, k, key), values) for key, values in samples.items()]
    if len(samples["m"]) > 1:
        out.append(variance_report(n, k, samples["m"]))
    return out


def mc_estimate(n: int, k: int, trials: int, statistic: str, rng: RngStream,
                kind: SamplerKind | str = SamplerKind.PRUFER) -> StatReport:
    """Monte Carlo estimate of one statistic with its exact value attached.

    ``statistic`` is one of ``s_k``, ``m``, ``var_m``, ``edge_prob``,
    ``pair_adjacent``, ``pair_nonadjacent``, ``mean_re`` or ``common_<ell>``.
    """
    extras = statistic not in ("s_k", "m", "var_m")
    samples = simulate(n, k, trials, rng, kind, extras=extras)
    if statistic == "var_m":
        if trials < 2:
            raise ValueError("variance needs at least 2 trials")
        return variance_report(n, k, samples["m"])
    if statistic not in samples:
        raise ValueError(f"statistic {statistic!r} unavailable for n={n}, k={k}")
    return _mean_report(statistic, n, k, _exact_for(n, k, statistic), samples[statistic])


@dataclass(frozen=True)
class ConcentrationResult:
    n: int
    k: int
    s: float
    empirical_prob: float
    bound: float
    std_error: float
    trials: int

    @property
    def passed(self) -> bool:
        return self.empirical_prob <= self.bound + SE_TOLERANCE * self.std_error

    def report(self) -> StatReport:
        return StatReport(f"tail_m(s={self.s:g})", self.n, self.k, self.bound,
                          self.empirical_prob, self.std_error, self.trials, upper_bound=True)


def chebyshev_bound(k: int, s: float) -> float:
    if k < 2:
        raise ValueError("the tail bound needs k >= 2")
    if s <= 0:
        raise ValueError("s must be positive")
    return 1.0 / (s * s * k * (k - 1))


def tail_frequency(n: int, k: int, s: float, m_values: np.ndarray) -> tuple[float, float]:
    mean = float(exact_expected_m(n, k))
    hits = np.abs(np.asarray(m_values, dtype=float) - mean) >= s * mean
    p = float(hits.mean())
    return p, math.sqrt(p * (1 - p) / len(hits))


def concentration_check(n: int, k: int, s: float, trials: int, rng: RngStream,
                        kind: SamplerKind | str = SamplerKind.PRUFER,
                        m_values: np.ndarray | None = None) -> ConcentrationResult:
    """Empirical Pr(|m - E[m]| >= s E[m]) against 1 / (s^2 k (k - 1)).

    The bound is a large-n limit, so the comparison allows 5 standard errors.
    Pass precomputed ``m_values`` to reuse an existing simulation.
    """
    bound = chebyshev_bound(k, s)
    if m_values is None:
        m_values = simulate(n, k, trials, rng, kind, extras=False)["m"]
    p, se = tail_frequency(n, k, s, m_values)
    return ConcentrationResult(n, k, s, p, bound, se, len(m_values))
