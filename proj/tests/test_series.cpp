#include <doctest.h>

#include <tvx/series.hpp>

using namespace tvx;

namespace {

RingPtr basic_ring(int n = 1, int N = 2, RingMode mode = RingMode::RN, int rank = 0) {
    RingSpec rs;
    rs.n = n;
    rs.N = N;
    rs.mode = mode;
    rs.rank = rank;
    return make_ring(rs);
}

Series unit_plus(RingPtr ring, LatticeVector z, MultiDegree deg, Rat c = Rat(1)) {
    Series s(ring);
    s.add(TermKey{}, Poly(1));
    s.add(TermKey{z, std::move(deg)}, Poly(c));
    return s;
}

}  // namespace

TEST_CASE("multidegree arithmetic respects truncation") {
    RingSpec rs;
    rs.n = 2;
    rs.N = 2;
    CHECK(rs.admits(MultiDegree::t_power(1, 2)));
    CHECK(!rs.admits(MultiDegree::t_power(1, 3)));
    CHECK(!rs.admits(MultiDegree::u_flags({{1, 1}})));  // wrong mode

    auto t1 = MultiDegree::t_power(1, 1);
    auto prod = rs.mul(t1, t1);
    REQUIRE(prod);
    CHECK(*prod == MultiDegree::t_power(1, 2));
    CHECK(!rs.mul(*prod, t1));  // t1^3 = 0

    RingSpec ru = rs.with_mode(RingMode::RtildeN);
    auto u11 = MultiDegree::u_flags({{1, 1}});
    auto u12 = MultiDegree::u_flags({{1, 2}});
    CHECK(!ru.mul(u11, u11));  // u^2 = 0
    auto mixed = ru.mul(u11, u12);
    REQUIRE(mixed);
    CHECK(*mixed == MultiDegree::u_flags({{1, 1}, {1, 2}}));
    CHECK(rs.nilpotency_bound() == 4);

    RingSpec capped = rs;
    capped.total_cutoff = 3;
    CHECK(capped.nilpotency_bound() == 3);
    CHECK(!capped.admits(MultiDegree{{{1, 2}, {2, 2}}, {}}));
}

TEST_CASE("series product is commutative and drops truncated terms") {
    RingPtr ring = basic_ring(1, 2);
    Series a = unit_plus(ring, {1, 0}, MultiDegree::t_power(1, 1));
    Series b = unit_plus(ring, {0, 1}, MultiDegree::t_power(1, 1), Rat(3));

    Series ab = a * b;
    Series ba = b * a;
    CHECK(ab == ba);
    CHECK(ab.coeff(TermKey{{1, 1}, MultiDegree::t_power(1, 2)}) == Poly(3));

    // (1 + t x)^3 loses its t^3 term in R_2
    Series cube = a * a * a;
    CHECK(cube.coeff(TermKey{{2, 0}, MultiDegree::t_power(1, 2)}) == Poly(3));
    CHECK(cube.coeff(TermKey{{3, 0}, MultiDegree::t_power(1, 3)}) == Poly());

    Series assoc_l = (a * b) * cube;
    Series assoc_r = a * (b * cube);
    CHECK(assoc_l == assoc_r);
}

TEST_CASE("series exp and log are mutually inverse") {
    RingPtr ring = basic_ring(1, 3);
    Series f = unit_plus(ring, {1, 0}, MultiDegree::t_power(1, 1), Rat(2));
    f.add(TermKey{{0, 1}, MultiDegree::t_power(1, 2)}, Poly(Rat(-1, 3)));

    Series l = series_log(f);
    CHECK(series_exp(l) == f);

    Series g(ring);
    g.add(TermKey{{1, 1}, MultiDegree::t_power(1, 1)}, Poly(5));
    CHECK(series_log(series_exp(g)) == g);

    // log(1 + c t z) = c t z - c^2 t^2 z^2 / 2 + c^3 t^3 z^3 / 3
    Series h = unit_plus(ring, {1, 0}, MultiDegree::t_power(1, 1), Rat(2));
    Series lh = series_log(h);
    CHECK(lh.coeff(TermKey{{1, 0}, MultiDegree::t_power(1, 1)}) == Poly(2));
    CHECK(lh.coeff(TermKey{{2, 0}, MultiDegree::t_power(1, 2)}) == Poly(Rat(-2)));
    CHECK(lh.coeff(TermKey{{3, 0}, MultiDegree::t_power(1, 3)}) == Poly(Rat(8, 3)));

    // exp turns sums into products for commuting exponents
    Series s1(ring), s2(ring);
    s1.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)}, Poly(1));
    s2.add(TermKey{{2, 0}, MultiDegree::t_power(1, 2)}, Poly(Rat(1, 2)));
    CHECK(series_exp(s1 + s2) == series_exp(s1) * series_exp(s2));
}

TEST_CASE("series log and exp reject malformed input") {
    RingPtr ring = basic_ring();
    Series no_unit(ring);
    no_unit.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)}, Poly(1));
    CHECK_THROWS_AS(series_log(no_unit), std::domain_error);

    Series degree_zero = Series::one(ring);
    degree_zero.add(TermKey{{1, 0}, {}}, Poly(1));
    CHECK_THROWS_AS(series_log(degree_zero), std::domain_error);
    CHECK_THROWS_AS(series_exp(degree_zero), std::domain_error);

    RingPtr other = basic_ring(2, 2);
    Series here(ring), there(other);
    CHECK_THROWS_AS(here += there, std::invalid_argument);
    CHECK_THROWS_AS(series_mul(here, there), std::invalid_argument);
}

TEST_CASE("matrix series multiply with gl coefficients") {
    SymbolTable tab;
    int a = tab.intern("a");
    RingSpec rs;
    rs.n = 1;
    rs.N = 2;
    rs.rank = 2;
    rs.symbols = tab;
    RingPtr ring = make_ring(rs);

    MatSeries m1 = MatSeries::one(ring);
    m1.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)},
           Mat::elementary(2, 0, 1, Poly::symbol(a)));
    MatSeries m2 = MatSeries::one(ring);
    m2.add(TermKey{{0, 1}, MultiDegree::t_power(1, 1)}, Mat::elementary(2, 1, 0, Poly(1)));

    MatSeries p = m1 * m2;
    Mat cross = p.coeff(TermKey{{1, 1}, MultiDegree::t_power(1, 2)});
    CHECK(cross == Mat::elementary(2, 0, 0, Poly::symbol(a)));
    CHECK(!(m1 * m2 == m2 * m1));  // E01 and E10 do not commute

    MatSeries lm = series_log(m1);
    CHECK(series_exp(lm) == m1);
}

TEST_CASE("expand to u-variables and collapse back") {
    RingPtr rn = basic_ring(2, 2);
    RingPtr ru = make_ring(rn->with_mode(RingMode::RtildeN));

    Series s(rn);
    s.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)}, Poly(3));
    s.add(TermKey{{0, 2}, MultiDegree{{{1, 1}, {2, 1}}, {}}}, Poly(1));

    Series up = expand_t_to_u(s, ru);
    // t1 -> u11 + u12, each with coefficient 3
    CHECK(up.coeff(TermKey{{1, 0}, MultiDegree::u_flags({{1, 1}})}) == Poly(3));
    CHECK(up.coeff(TermKey{{1, 0}, MultiDegree::u_flags({{1, 2}})}) == Poly(3));
    // t1 t2 -> (u11+u12)(u21+u22): four cross terms
    CHECK(up.coeff(TermKey{{0, 2}, MultiDegree::u_flags({{1, 2}, {2, 1}})}) == Poly(1));

    CHECK(collapse_u_to_t(up, rn) == s);

    // t1^2 -> 2 u11 u12; collapse divides by 2! * binom(2,2)
    Series sq(rn);
    sq.add(TermKey{{2, 0}, MultiDegree::t_power(1, 2)}, Poly(1));
    Series usq = expand_t_to_u(sq, ru);
    CHECK(usq.coeff(TermKey{{2, 0}, MultiDegree::u_flags({{1, 1}, {1, 2}})}) == Poly(2));
    CHECK(collapse_u_to_t(usq, rn) == sq);

    CHECK_THROWS_AS(expand_t_to_u(usq, ru), std::invalid_argument);
    CHECK_THROWS_AS(collapse_u_to_t(s, rn), std::invalid_argument);
}

TEST_CASE("series text form round-trips") {
    SymbolTable tab;
    tab.intern("a");
    RingSpec rs;
    rs.n = 2;
    rs.N = 2;
    rs.symbols = tab;
    RingPtr ring = make_ring(rs);

    Series s(ring);
    s.add(TermKey{}, Poly(1));
    s.add(TermKey{{1, -2}, MultiDegree{{{1, 1}, {2, 2}}, {}}},
          Poly(Rat(-7, 3)) * Poly::symbol(0));
    std::string text = series_str(s);
    CHECK(parse_series(text, ring) == s);

    Poly p = parse_poly("2*a^2 - 1/3", tab);
    CHECK(p == Rat(2) * Poly::symbol(0, 2) + Poly(Rat(-1, 3)));
}
