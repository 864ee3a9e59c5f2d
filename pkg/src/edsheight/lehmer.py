"""Small-height search over abstract elliptic divisibility sequences.

Any choice of initial terms u_2, u_3, u_4 in a number field K (with
u_0 = 0, u_1 = 1) extends to a full sequence through the doubling
recurrences, and the growth rate

    (1 / (d n^2)) * log( |N(u_n)| / gcd(|N(u_n)|, |N(u_{n+1})|) )

plays the role of a canonical height: for sequences coming from a
curve point it converges to the height of that point.  Enumerating
arithmetically simple initial terms and ranking by d * hhat (the
normalization in which small-height records are stated) gives a
search harness that needs no curve reconstruction and no factoring.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

from gmpy2 import gcd, lcm, mpz

from .eds import EDSBlock, EDSequence
from .errors import DivisionByZero, TorsionPoint2, ValidationError, ZeroTerm
from .height import METHOD_GCD, HeightEstimate
from .util import is_power_of_two, log_abs

# ---- growth rate of a single sequence ----


def _cleared(s):
    """The sequence rescaled by u_n -> lam^(n^2-1) u_n, lam the least
    common denominator of the seed terms; the rescale preserves the
    recurrences and makes the seeds integral."""
    den = mpz(1)
    for t in s.seed_terms[2:]:
        for c in t.cs:
            den = lcm(den, mpz(c.denominator))
    if den == 1:
        return s
    lam = int(den)
    u2, u3, u4 = s.seed_terms[2:]
    return EDSequence.from_initial_terms(
        s.field, u2 * lam**3, u3 * lam**8, u4 * lam**15
    )


def _pair_terms(s, n):
    """(u_n, u_{n+1}), through block doubling when n = 2^N >= 8."""
    if is_power_of_two(n) and n >= 8:
        blk = EDSBlock.from_sequence(s)
        for _ in range(n.bit_length() - 3):
            blk = blk.step()
        return blk.value(n), blk.value(n + 1)
    return s.term(n), s.term(n + 1)


def _norm_parts(v):
    """(|numerator|, denominator) of N(v) as big integers."""
    nrm = v.norm()
    return abs(mpz(nrm.numerator)), mpz(nrm.denominator)


def growth_estimate(s, n):
    """Height growth rate of the sequence at index n.

    Terms may pick up denominators through the division by u_2 in the
    even-index recurrence; the norm of a rational-coefficient term is
    taken as |numerator norm| / |denominator norm| and the consecutive
    gcd trim acts on the numerator parts only.  A vanishing u_n or
    u_{n+1} (torsion-like seed) raises ZeroTerm.
    """
    if not isinstance(n, int) or n < 2:
        raise ValidationError("growth estimates need an index n >= 2")
    s = _cleared(s)
    try:
        un, un1 = _pair_terms(s, n)
    except TorsionPoint2:
        raise ZeroTerm(2) from None
    if not un:
        raise ZeroTerm(n)
    if not un1:
        raise ZeroTerm(n + 1)
    pn, qn = _norm_parts(un)
    pn1, _ = _norm_parts(un1)
    if pn == 0:
        raise ZeroTerm(n)
    if pn1 == 0:
        raise ZeroTerm(n + 1)
    d = s.field.degree
    scale = 1.0 / (d * n * n)
    arch = (log_abs(pn) - log_abs(qn)) * scale
    trimmed = pn // gcd(pn, pn1)
    total = (log_abs(trimmed) - log_abs(qn)) * scale
    return HeightEstimate(
        total=total, arch=arch, nonarch=total - arch, n_used=n, degree=d,
        method=METHOD_GCD,
    )


def torsion_filter(s, horizon):
    """True (reject) iff some term u_n vanishes for 1 < n <= horizon.

    Zeros recur periodically, so a modest horizon screens out the
    torsion-like seeds whose growth rate is meaningless.  A u_2 that
    cannot be inverted counts as a rejection too.
    """
    try:
        for i in range(2, horizon + 1):
            if not s.term(i):
                return True
    except (TorsionPoint2, DivisionByZero):
        return True
    return False


# ---- enumeration harness ----


@dataclass(frozen=True)
class SearchConfig:
    """Box search over integer coefficient vectors for (u_2, u_3, u_4).

    coeff_bound B gives the box [-B, B]^degree per term; extend_to is
    the index of the final growth estimate (a power of two lets the
    block path do the work).  Candidates whose growth at prepass_n
    exceeds prune_threshold (in nats) are dropped early.
    """

    field: object
    coeff_bound: int
    extend_to: int
    prune_threshold: float = 0.05
    max_candidates: int = 25
    prepass_n: int = 32

    def __post_init__(self):
        if self.coeff_bound < 1:
            raise ValidationError("coeff_bound must be at least 1")
        if self.extend_to < 8:
            raise ValidationError("extend_to must be at least 8")
        if self.prepass_n < 2:
            raise ValidationError("prepass_n must be at least 2")
        if self.max_candidates < 1:
            raise ValidationError("max_candidates must be at least 1")


@dataclass(frozen=True)
class Candidate:
    """A surviving seed with its growth estimate.

    normalized is degree * estimate.total, the quantity small-height
    records are measured in.
    """

    initial_terms: tuple
    estimate: HeightEstimate
    normalized: float


@dataclass(frozen=True)
class SearchResult:
    """Ranked candidates plus bookkeeping on the enumeration."""

    candidates: tuple
    enumerated: int
    degenerate: int
    pruned: int

    def __iter__(self):
        return iter(self.candidates)

    def __len__(self):
        return len(self.candidates)

    def __getitem__(self, i):
        return self.candidates[i]


_DEGENERATE = "degenerate"
_PRUNED = "pruned"
_OK = "ok"


def _evaluate_seed(field, vecs, prepass, extend_to, prune_threshold):
    u2 = field.element(list(vecs[0]))
    u3 = field.element(list(vecs[1]))
    u4 = field.element(list(vecs[2]))
    seq = EDSequence.from_initial_terms(field, u2, u3, u4)
    if torsion_filter(seq, prepass):
        return _DEGENERATE, None
    try:
        if prepass < extend_to:
            pre = growth_estimate(seq, prepass)
            if pre.total > prune_threshold:
                return _PRUNED, None
        est = growth_estimate(seq, extend_to)
    except (ZeroTerm, DivisionByZero):
        return _DEGENERATE, None
    cand = Candidate(
        initial_terms=(u2, u3, u4),
        estimate=est,
        normalized=field.degree * est.total,
    )
    return _OK, cand


def search(cfg, threads=None):
    """Enumerate the seed box, prune, and rank by normalized height.

    Degenerate seeds (zero terms within the horizon, torsion-like
    collapse) are counted and skipped.  Evaluations are independent;
    the final sort (normalized, then lexicographic seed vectors) makes
    the output deterministic regardless of evaluation order.
    """
    field = cfg.field
    d = field.degree
    rng = range(-cfg.coeff_bound, cfg.coeff_bound + 1)
    vectors = list(product(rng, repeat=d))
    zero = (0,) * d
    seeds = [v for v in product(vectors, repeat=3) if v[0] != zero]
    prepass = min(cfg.prepass_n, cfg.extend_to)

    def job(vecs):
        return _evaluate_seed(field, vecs, prepass, cfg.extend_to,
                              cfg.prune_threshold)

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            outcomes = list(ex.map(job, seeds))
    else:
        outcomes = [job(v) for v in seeds]

    degenerate = sum(1 for tag, _ in outcomes if tag == _DEGENERATE)
    pruned = sum(1 for tag, _ in outcomes if tag == _PRUNED)
    survivors = [
        (vecs, cand)
        for vecs, (tag, cand) in zip(seeds, outcomes)
        if tag == _OK
    ]
    survivors.sort(key=lambda t: (t[1].normalized, t[0]))
    ranked = tuple(c for _, c in survivors[: cfg.max_candidates])
    return SearchResult(
        candidates=ranked, enumerated=len(seeds), degenerate=degenerate,
        pruned=pruned,
    )
