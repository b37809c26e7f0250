import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsdyn.errors import DomainError, ResourceLimitError
from gsdyn.jets import (
    Composed,
    Gaussian,
    Jet,
    PrescribedJet,
    Scaled,
    Translated,
    compose_jet,
    compose_jet_partitions,
    faa_di_bruno_identity_sum,
    jet_of_polynomial,
    multiplicity_partitions,
    parse_model,
)
from gsdyn.polynomials import Polynomial


def euler_partition_counts(n: int):
    p = [1] + [0] * n
    for m in range(1, n + 1):
        k, sign, total = 1, 1, 0
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > m:
                break
            total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
            sign = -sign
        p[m] = total
    return p


def test_partition_counts_match_euler_recurrence():
    counts = euler_partition_counts(40)
    for j in (1, 2, 3, 7, 15, 28, 40):
        parts = multiplicity_partitions(j)
        assert len(parts) == counts[j]
        assert all(sum((i + 1) * k for i, k in enumerate(p.k)) == j for p in parts)


def test_partition_cap():
    with pytest.raises(ResourceLimitError):
        multiplicity_partitions(61)


def test_faa_di_bruno_identity_small():
    for j in range(1, 16):
        assert faa_di_bruno_identity_sum(j) == 2 ** (j - 1)


def test_jet_of_polynomial_exact():
    p = Polynomial.parse("1,2,3")  # 3x^2 + 2x + 1
    jet = jet_of_polynomial(p, Fraction(1), 3)
    assert tuple(jet.exact) == (6, 8, 6, 0)


def test_compose_dual_paths_agree_exact():
    f = jet_of_polynomial(Polynomial.parse("0,1,1"), Fraction(2), 6)  # x^2+x at 2
    g = jet_of_polynomial(Polynomial.parse("1,0,1"), Fraction(1), 6)  # x^2+1 at 1
    a = compose_jet(f, g, 6)
    b = compose_jet_partitions(f, g, 6)
    assert a.exact == b.exact


coeffs = st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=5)


@given(coeffs, coeffs, st.integers(min_value=1, max_value=10))
@settings(max_examples=30, deadline=None)
def test_compose_matches_composed_polynomial(outer, inner, order):
    f = Polynomial.of(outer)
    g = Polynomial.of(inner)
    x0 = Fraction(1, 2)
    comp = compose_jet(
        jet_of_polynomial(f, g(x0), order), jet_of_polynomial(g, x0, order), order
    )
    direct = jet_of_polynomial(f.compose(g), x0, order)
    assert comp.exact == direct.exact


@given(coeffs, coeffs, coeffs, st.integers(min_value=1, max_value=8))
@settings(max_examples=25, deadline=None)
def test_compose_associativity(cf, cg, ch, order):
    f, g, h = Polynomial.of(cf), Polynomial.of(cg), Polynomial.of(ch)
    x0 = Fraction(1)
    hj = jet_of_polynomial(h, x0, order)
    gj = jet_of_polynomial(g, h(x0), order)
    fj = jet_of_polynomial(f, g(h(x0)), order)
    left = compose_jet(compose_jet(fj, gj, order), hj, order)
    right = compose_jet(fj, compose_jet(gj, hj, order), order)
    assert left.exact == right.exact


def test_gaussian_jet_closed_forms():
    g = Gaussian(1.0)
    for u in (0.0, 0.7, -1.3):
        jet = g.jet(u, 2)
        e = math.exp(-u * u)
        assert jet.value(0) == pytest.approx(e, rel=1e-12)
        assert jet.value(1) == pytest.approx(-2 * u * e, rel=1e-12, abs=1e-12)
        assert jet.value(2) == pytest.approx((4 * u * u - 2) * e, rel=1e-12)


def test_gaussian_grid_matches_pointwise():
    g = Gaussian(2.0)
    xs = np.linspace(-3.0, 3.0, 11)
    signs, logs = g.grid_jets(xs, 8)
    for i, x in enumerate(xs):
        jet = g.jet(float(x), 8)
        for n in range(9):
            s, l = jet.entry(n)
            assert signs[n, i] == s
            if s != 0:
                assert logs[n, i] == pytest.approx(l, abs=1e-9)


def test_composed_grid_matches_compose_jet():
    poly = Polynomial.parse("0,1,0,2")  # 2x^3 + x
    model = Composed(Gaussian(1.0), poly)
    xs = np.array([-1.2, 0.3, 0.9])
    signs, logs = model.grid_jets(xs, 12)
    for i, x in enumerate(xs):
        inner = jet_of_polynomial(poly, Fraction(x).limit_denominator(10 ** 12), 12)
        outer = Gaussian(1.0).jet(float(poly(float(x))), 12)
        ref = compose_jet(outer, Jet.from_floats(float(x), [v for v in (inner.value(n) for n in range(13))]), 12)
        for n in range(13):
            s, l = ref.entry(n)
            if s != 0 and math.isfinite(l):
                assert signs[n, i] == s
                assert logs[n, i] == pytest.approx(l, rel=1e-10, abs=1e-10)


def test_scaled_translated_jets():
    base = Gaussian(1.0)
    s = Scaled(base, 3.0)
    t = Translated(base, 1.5)
    assert s.jet(0.5, 1).value(1) == pytest.approx(3.0 * base.jet(1.5, 1).value(1))
    assert t.jet(0.5, 0).value(0) == pytest.approx(base.jet(2.0, 0).value(0))


def test_prescribed_jet():
    f = PrescribedJet.of(1.0, {1: 1})
    jet = f.jet(1.0, 3)
    assert jet.value(1) == 1.0 and jet.value(0) == 0.0 and jet.value(3) == 0.0
    with pytest.raises(DomainError):
        f.jet(2.0, 3)  # only defined at its center


def test_parse_model():
    assert isinstance(parse_model("gauss:1"), Gaussian)
    m = parse_model("scaled:2:gauss:1")
    assert isinstance(m, Scaled)
    assert parse_model("shift:1:gauss:1").jet(0.0, 0).value(0) == pytest.approx(
        math.exp(-1.0)
    )
