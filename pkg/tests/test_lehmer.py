"""Abstract sequence growth rates and the small-height search harness."""

from __future__ import annotations

import pytest

from edsheight.algebra import NumberField
from edsheight.curve import Curve
from edsheight.eds import EDSequence, curve_sequence
from edsheight.errors import ValidationError, ZeroTerm
from edsheight.height import METHOD_GCD, canonical_height
from edsheight.lehmer import (
    SearchConfig,
    growth_estimate,
    search,
    torsion_filter,
)

Q = NumberField.rationals()
QI = NumberField([1, 0, 1])

E37 = Curve(Q, 0, 0, 1, -1, 0)
P37 = E37.point(0, 0)


# ---- growth of a single sequence ----


def test_growth_matches_curve_height_bitwise():
    s = curve_sequence(E37, P37)
    for n in (16, 64):
        g = growth_estimate(s, n)
        c = canonical_height(E37, P37, n=n)
        assert g.total == c.total
        assert g.arch == c.arch
        assert g.nonarch == c.nonarch
        assert g.method == METHOD_GCD


def test_growth_unit_rescale_invariance():
    # u_n -> lam^(n^2-1) u_n with |N(lam)| = 1 leaves every norm alone;
    # over Q with lam = -1 the seed (1, -1, 1) becomes (-1, -1, -1)
    base = growth_estimate(EDSequence.from_initial_terms(Q, 1, -1, 1), 64)
    flipped = growth_estimate(EDSequence.from_initial_terms(Q, -1, -1, -1), 64)
    assert flipped.total == base.total
    assert flipped.arch == base.arch


def test_growth_unit_rescale_invariance_gaussian():
    i = QI.gen
    u2, u3, u4 = 1 + i, 2 * i, 3 - i
    base = growth_estimate(EDSequence.from_initial_terms(QI, u2, u3, u4), 32)
    # lam = i: weights 3, 8, 15 give factors -i, 1, -i
    twisted = growth_estimate(
        EDSequence.from_initial_terms(QI, -i * u2, u3, -i * u4), 32
    )
    assert twisted.total == base.total
    assert twisted.arch == base.arch


def test_growth_clears_fractional_seeds():
    frac = EDSequence.from_initial_terms(Q, "1/2", 1, 1)
    cleared = EDSequence.from_initial_terms(Q, 4, 256, 32768)
    a = growth_estimate(frac, 16)
    b = growth_estimate(cleared, 16)
    assert (a.total, a.arch) == (b.total, b.arch)


def test_growth_zero_terms():
    torsionish = EDSequence.from_initial_terms(Q, 1, 1, 1)  # u_5 = 0
    with pytest.raises(ZeroTerm) as exc:
        growth_estimate(torsionish, 5)
    assert exc.value.index == 5
    with pytest.raises(ZeroTerm):
        growth_estimate(torsionish, 4)  # u_{n+1} vanishes
    no_even = EDSequence.from_initial_terms(Q, 0, 1, 1)
    with pytest.raises(ZeroTerm) as exc:
        growth_estimate(no_even, 8)
    assert exc.value.index == 2
    with pytest.raises(ValidationError):
        growth_estimate(torsionish, 1)


def test_torsion_filter():
    assert torsion_filter(EDSequence.from_initial_terms(Q, 1, 1, 1), 12)
    assert torsion_filter(EDSequence.from_initial_terms(Q, 0, 1, 1), 12)
    assert not torsion_filter(curve_sequence(E37, P37), 32)


# ---- the enumeration harness ----


def test_search_config_validation():
    with pytest.raises(ValidationError):
        SearchConfig(Q, coeff_bound=0, extend_to=32)
    with pytest.raises(ValidationError):
        SearchConfig(Q, coeff_bound=1, extend_to=4)
    with pytest.raises(ValidationError):
        SearchConfig(Q, coeff_bound=1, extend_to=32, prepass_n=1)
    with pytest.raises(ValidationError):
        SearchConfig(Q, coeff_bound=1, extend_to=32, max_candidates=0)


def test_search_box_frozen():
    cfg = SearchConfig(Q, coeff_bound=2, extend_to=32, prepass_n=16)
    r = search(cfg)
    assert (r.enumerated, r.degenerate, r.pruned, len(r)) == (100, 44, 40, 16)
    top = r[0]
    seed = tuple(int(t.cs[0]) for t in top.initial_terms)
    assert seed == (-1, -1, -1)
    assert top.normalized == 0.02391615146550299
    # the rank-one curve seed survives as the lam = -1 twin pair
    second = tuple(int(t.cs[0]) for t in r[1].initial_terms)
    assert second == (1, -1, 1)
    assert r[1].normalized == top.normalized


def test_search_deterministic_and_thread_invariant():
    cfg = SearchConfig(Q, coeff_bound=1, extend_to=32, prepass_n=16)
    a = search(cfg)
    b = search(cfg)
    c = search(cfg, threads=2)
    assert a == b == c


def test_search_respects_max_candidates():
    cfg = SearchConfig(Q, coeff_bound=2, extend_to=32, prepass_n=16,
                       max_candidates=3)
    r = search(cfg)
    assert len(r) == 3
    assert [c.normalized for c in r] == sorted(c.normalized for c in r)


def test_search_prune_threshold_bites():
    loose = search(SearchConfig(Q, coeff_bound=1, extend_to=32, prepass_n=16,
                                prune_threshold=10.0))
    tight = search(SearchConfig(Q, coeff_bound=1, extend_to=32, prepass_n=16,
                                prune_threshold=0.03))
    assert loose.pruned == 0
    assert tight.pruned > 0
    assert len(tight) <= len(loose)
