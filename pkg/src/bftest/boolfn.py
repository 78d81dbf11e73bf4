"""Concrete Boolean-function representations, distributions over the cube, and
brute-force ground-truth computations (distance, relevant variables, distance
to a class) at desk scale.

Points are packed into Python ints: coordinate i (0-indexed) is bit i.
Variable indices in the JSON interchange format are 1-indexed and signed
(+i for x_i, -i for its negation).
"""

from dataclasses import dataclass, field
import json
import math

import numpy as np

MAX_N = 64
BRUTE_FORCE_N = 24
CLASS_ENUM_BUDGET = 10_000_000


class DimensionError(ValueError):
    pass


class EnumerationRefused(RuntimeError):
    """Raised when an exact brute-force computation would exceed its budget."""


def wt(x: int) -> int:
    """Hamming weight of a packed point."""
    return x.bit_count()


def bit(x: int, i: int) -> int:
    return (x >> i) & 1


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def point_to_str(x: int, n: int) -> str:
    return "".join(str(bit(x, i)) for i in range(n))


def str_to_point(s: str) -> int:
    x = 0
    for i, ch in enumerate(s):
        if ch == "1":
            x |= 1 << i
    return x


# ---------------------------------------------------------------------------
# Function specs
# ---------------------------------------------------------------------------

def _check_literals(lits, n):
    seen = set()
    for lit in lits:
        if lit == 0:
            raise ValueError("literal 0 is not valid")
        v = abs(lit)
        if not 1 <= v <= n:
            raise ValueError(f"variable index {v} out of range [1, {n}]")
        if v in seen:
            raise ValueError(f"variable {v} repeated within a term")
        seen.add(v)


def _term_masks(lits):
    """(pos, neg) coordinate masks of a term given signed 1-indexed literals."""
    pos = neg = 0
    for lit in lits:
        if lit > 0:
            pos |= 1 << (lit - 1)
        else:
            neg |= 1 << (-lit - 1)
    return pos, neg


class FunctionSpec:
    """Base class; subclasses carry a concrete representation."""

    n: int

    def evaluate(self, x: int) -> int:
        raise NotImplementedError

    def truth_table(self) -> np.ndarray:
        if self.n > BRUTE_FORCE_N:
            raise EnumerationRefused(f"n={self.n} exceeds brute-force cap {BRUTE_FORCE_N}")
        idx = np.arange(1 << self.n, dtype=np.int64)
        return self._table(idx)

    def _table(self, idx: np.ndarray) -> np.ndarray:
        # generic fallback: evaluate pointwise
        return np.fromiter((self.evaluate(int(x)) for x in idx), dtype=np.uint8, count=len(idx))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class TruthTable(FunctionSpec):
    n: int
    table: bytes  # one byte per point, little-endian in point index

    def __post_init__(self):
        if len(self.table) != 1 << self.n:
            raise DimensionError("truth table length mismatch")

    def evaluate(self, x: int) -> int:
        return self.table[x]

    def _table(self, idx):
        return np.frombuffer(self.table, dtype=np.uint8)[idx]

    def to_dict(self):
        bits = np.frombuffer(self.table, dtype=np.uint8)
        packed = np.packbits(bits, bitorder="little").tobytes()
        return {"n": self.n, "class": "truth_table", "body": packed.hex()}

    @staticmethod
    def from_bits(n, bits):
        return TruthTable(n, bytes(int(b) for b in bits))


@dataclass(frozen=True)
class Dnf(FunctionSpec):
    n: int
    terms: tuple  # tuple of terms; each term a tuple of signed 1-indexed literals

    def __post_init__(self):
        canon = []
        for t in self.terms:
            _check_literals(t, self.n)
            canon.append(tuple(sorted(t, key=abs)))
        object.__setattr__(self, "terms", tuple(canon))
        object.__setattr__(self, "_masks", tuple(_term_masks(t) for t in self.terms))

    def evaluate(self, x: int) -> int:
        for pos, neg in self._masks:
            if (x & pos) == pos and (x & neg) == 0:
                return 1
        return 0

    def _table(self, idx):
        out = np.zeros(len(idx), dtype=np.uint8)
        for pos, neg in self._masks:
            out |= (((idx & pos) == pos) & ((idx & neg) == 0)).astype(np.uint8)
        return out

    def term_count(self) -> int:
        return len(self.terms)

    def max_term_size(self) -> int:
        return max((len(t) for t in self.terms), default=0)

    def to_dict(self):
        return {"n": self.n, "class": "dnf", "body": [list(t) for t in self.terms]}


@dataclass(frozen=True)
class MonotoneDnf(FunctionSpec):
    n: int
    terms: tuple  # tuple of terms; each term a tuple of positive 1-indexed vars

    def __post_init__(self):
        canon = []
        for t in self.terms:
            if any(v <= 0 for v in t):
                raise ValueError("monotone DNF terms must use positive literals")
            _check_literals(t, self.n)
            canon.append(tuple(sorted(t)))
        object.__setattr__(self, "terms", tuple(canon))
        object.__setattr__(self, "_masks", tuple(_term_masks(t)[0] for t in self.terms))

    def evaluate(self, x: int) -> int:
        for pos in self._masks:
            if (x & pos) == pos:
                return 1
        return 0

    def _table(self, idx):
        out = np.zeros(len(idx), dtype=np.uint8)
        for pos in self._masks:
            out |= ((idx & pos) == pos).astype(np.uint8)
        return out

    def term_count(self) -> int:
        return len(self.terms)

    def max_term_size(self) -> int:
        return max((len(t) for t in self.terms), default=0)

    def to_dict(self):
        return {"n": self.n, "class": "monotone_dnf", "body": [list(t) for t in self.terms]}


@dataclass(frozen=True)
class SparsePolyF2(FunctionSpec):
    n: int
    monomials: tuple  # tuple of monomials; each a tuple of positive 1-indexed vars

    def __post_init__(self):
        # cancel duplicate monomials mod 2
        counts = {}
        for mono in self.monomials:
            if any(v <= 0 for v in mono):
                raise ValueError("monomials must use positive variable indices")
            _check_literals(mono, self.n)
            key = tuple(sorted(mono))
            counts[key] = counts.get(key, 0) ^ 1
        canon = tuple(sorted(k for k, c in counts.items() if c))
        object.__setattr__(self, "monomials", canon)
        object.__setattr__(self, "_masks", tuple(_term_masks(m)[0] for m in canon))

    def evaluate(self, x: int) -> int:
        out = 0
        for m in self._masks:
            out ^= (x & m) == m
        return int(out)

    def _table(self, idx):
        out = np.zeros(len(idx), dtype=np.uint8)
        for m in self._masks:
            out ^= ((idx & m) == m).astype(np.uint8)
        return out

    def sparsity(self) -> int:
        return len(self.monomials)

    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)

    def to_dict(self):
        return {"n": self.n, "class": "poly_f2", "body": [list(m) for m in self.monomials]}


@dataclass(frozen=True)
class LinearF2(FunctionSpec):
    n: int
    support: frozenset  # 1-indexed variable set, XOR of the variables

    def __post_init__(self):
        sup = frozenset(self.support)
        if any(not 1 <= v <= self.n for v in sup):
            raise ValueError("linear support out of range")
        object.__setattr__(self, "support", sup)
        object.__setattr__(self, "_mask", mask_of(v - 1 for v in sup))

    def evaluate(self, x: int) -> int:
        return (x & self._mask).bit_count() & 1

    def _table(self, idx):
        out = np.zeros(len(idx), dtype=np.uint8)
        for i in indices_of(self._mask):
            out ^= ((idx >> i) & 1).astype(np.uint8)
        return out

    def to_dict(self):
        return {"n": self.n, "class": "linear", "body": sorted(self.support)}


@dataclass(frozen=True)
class DecisionList(FunctionSpec):
    n: int
    rules: tuple  # tuple of (var 1-indexed, xi, out)
    default: int

    def __post_init__(self):
        for v, xi, a in self.rules:
            if not 1 <= v <= self.n:
                raise ValueError("rule variable out of range")
            if xi not in (0, 1) or a not in (0, 1):
                raise ValueError("rule bits must be 0/1")

    def evaluate(self, x: int) -> int:
        for v, xi, a in self.rules:
            if bit(x, v - 1) == xi:
                return a
        return self.default

    def _table(self, idx):
        out = np.full(len(idx), self.default, dtype=np.uint8)
        assigned = np.zeros(len(idx), dtype=bool)
        for v, xi, a in self.rules:
            fire = (~assigned) & (((idx >> (v - 1)) & 1) == xi)
            out[fire] = a
            assigned |= fire
        return out

    def length(self) -> int:
        return len(self.rules)

    def to_dict(self):
        return {"n": self.n, "class": "decision_list",
                "body": {"rules": [list(r) for r in self.rules], "default": self.default}}


@dataclass(frozen=True)
class RDecisionList(FunctionSpec):
    n: int
    rules: tuple  # tuple of (term: tuple of signed literals, xi, out)
    default: int

    def __post_init__(self):
        canon = []
        for term, xi, a in self.rules:
            _check_literals(term, self.n)
            if xi not in (0, 1) or a not in (0, 1):
                raise ValueError("rule bits must be 0/1")
            canon.append((tuple(sorted(term, key=abs)), xi, a))
        object.__setattr__(self, "rules", tuple(canon))
        object.__setattr__(
            self, "_masks", tuple(_term_masks(t) for t, _, _ in canon))

    def evaluate(self, x: int) -> int:
        for (pos, neg), (_, xi, a) in zip(self._masks, self.rules):
            tv = 1 if ((x & pos) == pos and (x & neg) == 0) else 0
            if tv == xi:
                return a
        return self.default

    def max_term_size(self) -> int:
        return max((len(t) for t, _, _ in self.rules), default=0)

    def to_dict(self):
        return {"n": self.n, "class": "r_decision_list",
                "body": {"rules": [[list(t), xi, a] for t, xi, a in self.rules],
                         "default": self.default}}


@dataclass(frozen=True)
class DecisionTree(FunctionSpec):
    """Node array representation, root at index 0.

    Leaf: ("leaf", b).  Internal: ("node", var 1-indexed, child0, child1) where
    child0 is taken when the variable reads 0.
    """
    n: int
    nodes: tuple

    def __post_init__(self):
        nodes = tuple(tuple(nd) for nd in self.nodes)
        for nd in nodes:
            if nd[0] == "leaf":
                if nd[1] not in (0, 1):
                    raise ValueError("leaf output must be 0/1")
            elif nd[0] == "node":
                _, v, lo, hi = nd
                if not 1 <= v <= self.n:
                    raise ValueError("node variable out of range")
                if not (0 <= lo < len(nodes) and 0 <= hi < len(nodes)):
                    raise ValueError("child index out of range")
            else:
                raise ValueError(f"bad node kind {nd[0]!r}")
        object.__setattr__(self, "nodes", nodes)

    def evaluate(self, x: int) -> int:
        nd = self.nodes[0]
        while nd[0] == "node":
            nd = self.nodes[nd[3] if bit(x, nd[1] - 1) else nd[2]]
        return nd[1]

    def size(self) -> int:
        """Number of leaves."""
        return sum(1 for nd in self.nodes if nd[0] == "leaf")

    def to_dict(self):
        return {"n": self.n, "class": "decision_tree",
                "body": [list(nd) for nd in self.nodes]}


def spec_from_dict(d: dict) -> FunctionSpec:
    n = d["n"]
    cls = d["class"]
    body = d["body"]
    if cls == "truth_table":
        packed = np.frombuffer(bytes.fromhex(body), dtype=np.uint8)
        bits = np.unpackbits(packed, bitorder="little")[: 1 << n]
        return TruthTable(n, bytes(bits.tolist()))
    if cls == "dnf":
        return Dnf(n, tuple(tuple(t) for t in body))
    if cls == "monotone_dnf":
        return MonotoneDnf(n, tuple(tuple(t) for t in body))
    if cls == "poly_f2":
        return SparsePolyF2(n, tuple(tuple(m) for m in body))
    if cls == "linear":
        return LinearF2(n, frozenset(body))
    if cls == "decision_list":
        return DecisionList(n, tuple(tuple(r) for r in body["rules"]), body["default"])
    if cls == "r_decision_list":
        return RDecisionList(
            n, tuple((tuple(t), xi, a) for t, xi, a in body["rules"]), body["default"])
    if cls == "decision_tree":
        return DecisionTree(n, tuple(tuple(nd) for nd in body))
    raise ValueError(f"unknown class {cls!r}")


def spec_from_json(s: str) -> FunctionSpec:
    return spec_from_dict(json.loads(s))


def evaluate(spec: FunctionSpec, x: int) -> int:
    if x < 0 or x >> spec.n:
        raise DimensionError(f"point {x} does not fit in {spec.n} bits")
    return spec.evaluate(x)


# ---------------------------------------------------------------------------
# Distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Uniform:
    n: int

    def sample(self, rng) -> int:
        return rng.getrandbits(self.n) if self.n else 0

    def weights(self) -> np.ndarray:
        if self.n > BRUTE_FORCE_N:
            raise EnumerationRefused("n too large for exhaustive weights")
        return np.full(1 << self.n, 1.0 / (1 << self.n))

    is_product = True


@dataclass(frozen=True)
class ProductBias:
    probs: tuple  # per-coordinate probability of bit 1

    def __post_init__(self):
        if any(not 0.0 <= p <= 1.0 for p in self.probs):
            raise ValueError("bias probabilities must lie in [0,1]")
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))

    @property
    def n(self):
        return len(self.probs)

    def sample(self, rng) -> int:
        x = 0
        for i, p in enumerate(self.probs):
            if rng.random() < p:
                x |= 1 << i
        return x

    def weights(self) -> np.ndarray:
        if self.n > 20:
            raise EnumerationRefused("n too large for exhaustive product weights")
        w = np.ones(1)
        for p in self.probs:
            w = np.concatenate([w * (1.0 - p), w * p])
        return w

    is_product = True


@dataclass(frozen=True)
class Explicit:
    n: int
    points: tuple
    probs: tuple

    def __post_init__(self):
        if len(self.points) != len(self.probs) or not self.points:
            raise ValueError("points/probs length mismatch")
        if any(p < 0 for p in self.probs):
            raise ValueError("weights must be nonnegative")
        if abs(sum(self.probs) - 1.0) > 1e-9:
            raise ValueError("weights must sum to 1")
        object.__setattr__(self, "_cum", tuple(np.cumsum(self.probs).tolist()))

    def sample(self, rng) -> int:
        u = rng.random()
        lo, hi = 0, len(self._cum) - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self._cum[mid] < u:
                lo = mid + 1
            else:
                hi = mid
        return self.points[lo]

    def weights(self) -> np.ndarray:
        if self.n > 20:
            raise EnumerationRefused("n too large for exhaustive explicit weights")
        w = np.zeros(1 << self.n)
        for x, p in zip(self.points, self.probs):
            w[x] += p
        return w

    is_product = False


def sample(d, rng) -> int:
    return d.sample(rng)


FREE = 2  # RestrictionSample cell values: 0, 1, FREE


@dataclass(frozen=True)
class RestrictionSample:
    cells: tuple  # length-n sequence over {0, 1, FREE}

    @property
    def n(self):
        return len(self.cells)

    def free_mask(self) -> int:
        return mask_of(i for i, c in enumerate(self.cells) if c == FREE)

    def fixed_point(self) -> int:
        return mask_of(i for i, c in enumerate(self.cells) if c == 1)

    def instantiate(self, u: int) -> int:
        fm = self.free_mask()
        return (u & fm) | self.fixed_point()


def sample_restriction(p: float, n: int, rng) -> RestrictionSample:
    """Draw from the mixed cube: each cell Free w.p. p, else 0/1 equiprobably."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0,1]")
    cells = []
    for _ in range(n):
        if rng.random() < p:
            cells.append(FREE)
        else:
            cells.append(rng.getrandbits(1))
    return RestrictionSample(tuple(cells))


# ---------------------------------------------------------------------------
# Ground-truth computations
# ---------------------------------------------------------------------------

def distance(a: FunctionSpec, b: FunctionSpec, d=None) -> float:
    """Exact Pr_{x in d}[a(x) != b(x)]; d defaults to uniform."""
    if a.n != b.n:
        raise DimensionError("dimension mismatch")
    if d is None:
        d = Uniform(a.n)
    if isinstance(d, Explicit):
        return float(sum(p for x, p in zip(d.points, d.probs)
                         if a.evaluate(x) != b.evaluate(x)))
    if a.n > BRUTE_FORCE_N:
        raise EnumerationRefused(f"n={a.n} exceeds brute-force cap")
    diff = a.truth_table() != b.truth_table()
    if isinstance(d, Uniform):
        return float(np.count_nonzero(diff)) / (1 << a.n)
    return float(d.weights()[diff].sum())


def relevant_variables(spec: FunctionSpec) -> frozenset:
    """Exact 1-indexed relevant-variable set by exhaustive flip search."""
    if spec.n > BRUTE_FORCE_N:
        raise EnumerationRefused(f"n={spec.n} exceeds brute-force cap")
    tt = spec.truth_table()
    idx = np.arange(1 << spec.n)
    out = set()
    for i in range(spec.n):
        if np.any(tt != tt[idx ^ (1 << i)]):
            out.add(i + 1)
    return frozenset(out)


@dataclass(frozen=True)
class ClassDesc:
    """Descriptor of a function class at fixed size parameters."""
    name: str  # junta | linear | term | dnf | monotone_dnf | poly_f2 | decision_list | decision_tree
    k: int = 0  # junta arity / linear support / term size
    s: int = 0  # term count / sparsity / list length / tree size (0 = unbounded where meaningful)
    r: int = 0  # term-size bound for DNFs (0 = unbounded)
    d: int = 0  # degree bound for polynomials (0 = unbounded)


def _subcube_points(m, zeros, ones):
    free = [i for i in range(m) if not (zeros >> i) & 1 and not (ones >> i) & 1]
    pts = []
    for u in range(1 << len(free)):
        x = ones
        for j, i in enumerate(free):
            if (u >> j) & 1:
                x |= 1 << i
        pts.append(x)
    return pts


def _project_table_and_weights(spec, dist):
    """Restrict to the relevant variables R: truth table of f on R, the marginal
    weight vector on R-points, and the min-satisfaction-probabilities of the
    coordinates outside R (sorted ascending, for term-mixing candidates)."""
    R = sorted(relevant_variables(spec))
    m = len(R)
    if m > 16:
        raise EnumerationRefused(f"{m} relevant variables exceed the enumeration cap")
    fR = np.zeros(1 << m, dtype=np.uint8)
    for y in range(1 << m):
        x = 0
        for j, v in enumerate(R):
            if (y >> j) & 1:
                x |= 1 << (v - 1)
        fR[y] = spec.evaluate(x)
    if isinstance(dist, Uniform):
        wts = np.full(1 << m, 1.0 / (1 << m))
        outside = [0.5] * (spec.n - m)
    else:  # ProductBias
        probs = [dist.probs[v - 1] for v in R]
        w = np.ones(1)
        for p in probs:
            w = np.concatenate([w * (1.0 - p), w * p])
        wts = w
        outside = sorted(min(p, 1.0 - p) for i, p in enumerate(dist.probs)
                         if (i + 1) not in R)
    return fR, wts, outside, m


def _dist_to_junta(fR, wts, m, k):
    """Exact distance to k-juntas, given that f depends only on the m vars."""
    if k >= m:
        return 0.0
    total = np.copy(wts)
    ones = wts * fR
    best = math.inf
    from itertools import combinations
    for S in combinations(range(m), k):
        smask = mask_of(S)
        # group points by their S-assignment
        keys = np.zeros(1 << m, dtype=np.int64)
        shift = 0
        idx = np.arange(1 << m)
        for i in S:
            keys |= ((idx >> i) & 1) << shift
            shift += 1
        t = np.bincount(keys, weights=total, minlength=1 << k)
        o = np.bincount(keys, weights=ones, minlength=1 << k)
        best = min(best, float(np.minimum(o, t - o).sum()))
    return best


def _term_sat_masks(m, max_size, monotone=False):
    """All terms over m vars with at most max_size literals, as satisfying-set
    bitmask ints over the 2^m points (the empty term = constant 1 included)."""
    full = (1 << (1 << m)) - 1
    pos_sat = []
    neg_sat = []
    for i in range(m):
        s = 0
        for x in range(1 << m):
            if (x >> i) & 1:
                s |= 1 << x
        pos_sat.append(s)
        neg_sat.append(full & ~s)
    out = {(): full}
    frontier = {(): full}
    for _ in range(min(max_size, m)):
        nxt = {}
        for lits, satmask in frontier.items():
            start = abs(lits[-1]) if lits else 0
            for v in range(start, m):
                choices = ((v + 1, pos_sat[v]),) if monotone else (
                    (v + 1, pos_sat[v]), (-(v + 1), neg_sat[v]))
                for lit, lsat in choices:
                    nt = lits + (lit,)
                    nxt[nt] = satmask & lsat
        out.update(nxt)
        frontier = nxt
    return out  # dict term -> satisfying mask


def _weighted_mask_dist(fmask, gmask, wts_list, total_pts):
    x = fmask ^ gmask
    acc = 0.0
    i = 0
    while x:
        if x & 1:
            acc += wts_list[i]
        x >>= 1
        i += 1
    return acc


def _f_sat_mask(fR):
    mask = 0
    for x in range(len(fR)):
        if fR[x]:
            mask |= 1 << x
    return mask


def _dist_to_term(fR, wts, outside, m, k):
    """Exact distance to single terms with at most k literals."""
    wl = wts.tolist()
    fmask = _f_sat_mask(fR)
    d0 = float(np.sum(wts * fR))  # distance to constant 0 (not itself a term)
    terms = _term_sat_masks(m, min(k, m))
    # cumulative products of the smallest outside-literal satisfaction probs
    pis = [1.0]
    for p in outside:
        pis.append(pis[-1] * p)
    best = math.inf
    for lits, satmask in terms.items():
        dt = _weighted_mask_dist(fmask, satmask, wl, len(fR))
        best = min(best, dt)
        room = min(k - len(lits), len(outside))
        for j in range(1, room + 1):
            best = min(best, pis[j] * dt + (1 - pis[j]) * d0)
    return best


def _dist_to_linear(fR, wts, m, k, has_outside):
    wl = wts.tolist()
    fmask = _f_sat_mask(fR)
    full_bits = len(fR)
    # parity satisfying masks
    best = math.inf
    from itertools import combinations
    for size in range(min(k, m) + 1):
        for S in combinations(range(m), size):
            smask = mask_of(S)
            g = 0
            for x in range(full_bits):
                if (x & smask).bit_count() & 1:
                    g |= 1 << x
            best = min(best, _weighted_mask_dist(fmask, g, wl, full_bits))
    if has_outside and k >= 1:
        best = min(best, 0.5)  # a parity using a variable f ignores sits at 1/2
    return best


def _dist_to_dnf(fR, wts, m, s, r, monotone):
    from itertools import combinations_with_replacement
    size_cap = min(r, m) if r else m
    terms = _term_sat_masks(m, size_cap, monotone=monotone)
    masks = sorted(set(terms.values()))
    masks.append(0)  # the empty DNF (constant 0)
    n_cand = math.comb(len(masks) + s - 1, s)
    if n_cand * len(fR) > CLASS_ENUM_BUDGET:
        raise EnumerationRefused(f"{n_cand} DNF candidates exceed the work budget")
    wl = wts.tolist()
    fmask = _f_sat_mask(fR)
    best = math.inf
    for combo in combinations_with_replacement(masks, s):
        g = 0
        for t in combo:
            g |= t
        dist_g = _weighted_mask_dist(fmask, g, wl, len(fR))
        if dist_g < best:
            best = dist_g
        if best == 0.0:
            return 0.0
    return best


def _dist_to_poly(fR, wts, m, s, d):
    from itertools import combinations, combinations_with_replacement
    size_cap = min(d, m) if d else m
    monos = sorted(set(_term_sat_masks(m, size_cap, monotone=True).values()))
    n_cand = sum(math.comb(len(monos), j) for j in range(s + 1))
    if n_cand * len(fR) > CLASS_ENUM_BUDGET:
        raise EnumerationRefused(f"{n_cand} polynomial candidates exceed the work budget")
    wl = wts.tolist()
    fmask = _f_sat_mask(fR)
    best = math.inf
    for j in range(s + 1):
        for combo in combinations(monos, j):
            g = 0
            for t in combo:
                g ^= t
            dist_g = _weighted_mask_dist(fmask, g, wl, len(fR))
            if dist_g < best:
                best = dist_g
            if best == 0.0:
                return 0.0
    return best


def _dist_to_decision_list(fR, wts, m, length):
    """Exact min distance to decision lists over the m vars via DP on subcube
    states.  A decision list partitions the cube into literal-cells; each cell
    is a subcube, so the optimum decomposes over subcube states."""
    if length <= 0:
        length = 2 * m  # unbounded: each (var, xi) pair is needed at most once
    # weight of f=1 / total weight per subcube, memoized
    cell_cache = {}

    def cell_stats(zeros, ones):
        key = (zeros, ones)
        if key not in cell_cache:
            pts = _subcube_points(m, zeros, ones)
            t = sum(wts[x] for x in pts)
            o = sum(wts[x] for x in pts if fR[x])
            cell_cache[key] = (o, t)
        return cell_cache[key]

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def go(zeros, ones, budget):
        o, t = cell_stats(zeros, ones)
        best = min(o, t - o)  # stop here with the better constant default
        if best == 0.0 or budget == 0:
            return best
        for v in range(m):
            b = 1 << v
            if (zeros | ones) & b:
                continue
            for xi in (0, 1):
                fired_ones = ones | (b if xi else 0)
                fired_zeros = zeros | (0 if xi else b)
                fo, ft = cell_stats(fired_zeros, fired_ones)
                head = min(fo, ft - fo)
                rest_ones = ones | (0 if xi else b)
                rest_zeros = zeros | (b if xi else 0)
                cand = head + go(rest_zeros, rest_ones, budget - 1)
                if cand < best:
                    best = cand
        return best

    if (3 ** m) * length * 4 * m > CLASS_ENUM_BUDGET:
        raise EnumerationRefused("decision-list DP exceeds the work budget")
    return go(0, 0, length)


def _dist_to_decision_tree(fR, wts, m, size):
    """Exact min distance to decision trees with at most `size` leaves."""
    if size > 4 or m > 8:
        raise EnumerationRefused("decision-tree enumeration capped at tiny sizes")
    cache = {}

    def go(zeros, ones, leaves):
        key = (zeros, ones, leaves)
        if key in cache:
            return cache[key]
        pts = _subcube_points(m, zeros, ones)
        t = sum(wts[x] for x in pts)
        o = sum(wts[x] for x in pts if fR[x])
        best = min(o, t - o)
        if leaves >= 2 and best > 0.0:
            for v in range(m):
                b = 1 << v
                if (zeros | ones) & b:
                    continue
                for l0 in range(1, leaves):
                    cand = (go(zeros | b, ones, l0)
                            + go(zeros, ones | b, leaves - l0))
                    if cand < best:
                        best = cand
        cache[key] = best
        return best

    return go(0, 0, max(size, 1))


def distance_to_class(spec: FunctionSpec, cls: ClassDesc, dist=None) -> float:
    """Exact min over g in cls of distance(spec, g, dist).

    Supported for uniform and product distributions via restriction to the
    relevant variables of spec; for Explicit distributions only at small n via
    full enumeration (handled by treating every variable as relevant).
    """
    if dist is None:
        dist = Uniform(spec.n)
    if isinstance(dist, Explicit):
        if spec.n > 12:
            raise EnumerationRefused("explicit-distribution enumeration capped at n<=12")
        fR = spec.truth_table()
        wts = dist.weights()
        outside, m = [], spec.n
    else:
        fR, wts, outside, m = _project_table_and_weights(spec, dist)

    name = cls.name
    if name == "junta":
        return _dist_to_junta(fR, wts, m, cls.k)
    if name == "linear":
        if isinstance(dist, Explicit):
            return _dist_to_linear(fR, wts, m, cls.k, has_outside=False)
        if isinstance(dist, ProductBias):
            # outside-variable parities never help under a nondegenerate product law
            if any(p in (0.0, 1.0) for p in dist.probs):
                raise EnumerationRefused("degenerate product bias unsupported for linear")
        return _dist_to_linear(fR, wts, m, cls.k, has_outside=bool(outside))
    if name == "term":
        return _dist_to_term(fR, wts, outside, m, cls.k)
    if name == "dnf":
        return _dist_to_dnf(fR, wts, m, cls.s, cls.r, monotone=False)
    if name == "monotone_dnf":
        return _dist_to_dnf(fR, wts, m, cls.s, cls.r, monotone=True)
    if name == "poly_f2":
        return _dist_to_poly(fR, wts, m, cls.s, cls.d)
    if name == "decision_list":
        return _dist_to_decision_list(fR, wts, m, cls.s)
    if name == "r_decision_list":
        if cls.r <= 1:
            return _dist_to_decision_list(fR, wts, m, cls.s)
        raise EnumerationRefused("exact distance to r-decision lists (r>1) not implemented")
    if name == "decision_tree":
        return _dist_to_decision_tree(fR, wts, m, cls.s)
    raise ValueError(f"unknown class {name!r}")


def is_member(spec: FunctionSpec, cls: ClassDesc) -> bool:
    """Syntactic class membership of a spec (sufficient condition)."""
    name = cls.name
    if name == "junta":
        return len(relevant_variables(spec)) <= cls.k
    if name == "linear":
        return isinstance(spec, LinearF2) and len(spec.support) <= cls.k
    if name == "term":
        return (isinstance(spec, Dnf) and spec.term_count() == 1
                and len(spec.terms[0]) <= cls.k)
    if name == "dnf":
        return (isinstance(spec, (Dnf, MonotoneDnf))
                and spec.term_count() <= cls.s
                and (cls.r == 0 or spec.max_term_size() <= cls.r))
    if name == "monotone_dnf":
        return (isinstance(spec, MonotoneDnf)
                and spec.term_count() <= cls.s
                and (cls.r == 0 or spec.max_term_size() <= cls.r))
    if name == "poly_f2":
        return (isinstance(spec, SparsePolyF2) and spec.sparsity() <= cls.s
                and (cls.d == 0 or spec.degree() <= cls.d))
    if name == "decision_list":
        return isinstance(spec, DecisionList) and (cls.s == 0 or spec.length() <= cls.s)
    if name == "r_decision_list":
        return (isinstance(spec, (DecisionList, RDecisionList))
                and (isinstance(spec, DecisionList)
                     or spec.max_term_size() <= max(cls.r, 1))
                and (cls.s == 0 or len(spec.rules) <= cls.s))
    if name == "decision_tree":
        return isinstance(spec, DecisionTree) and spec.size() <= cls.s
    raise ValueError(f"unknown class {name!r}")
