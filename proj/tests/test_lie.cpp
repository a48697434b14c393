#include <doctest.h>

#include <random>
#include <tvx/lie.hpp>

using namespace tvx;

namespace {

RingPtr lie_ring(int N = 3, int rank = 2) {
    RingSpec rs;
    rs.n = 1;
    rs.N = N;
    rs.rank = rank;
    return make_ring(rs);
}

/* Random element supported on z^{(a,b)} with a,b >= 0, positive t-degree, so
 * that iterated brackets stay inside the algebra (z^0 is never reached). */
LieElement random_element(RingPtr ring, std::mt19937& rng) {
    std::uniform_int_distribution<int> small(-3, 3), expo(0, 2), nterms(1, 3);
    std::uniform_int_distribution<int> tdeg(1, ring->N);
    LieElement e(ring);
    int terms = nterms(rng);
    for (int k = 0; k < terms; ++k) {
        LatticeVector z{expo(rng), expo(rng)};
        if (z == LatticeVector{0, 0}) z = {1, 0};
        Mat A(ring->rank);
        for (int i = 0; i < ring->rank; ++i)
            for (int j = 0; j < ring->rank; ++j) A.at(i, j) = Poly(small(rng));
        LieCoef c{A, Poly(small(rng)), Poly(small(rng))};
        e.add(TermKey{z, MultiDegree::t_power(1, tdeg(rng))}, c);
    }
    return e;
}

/* Random wall-type element: derivation normal to its own monomial. */
LieElement random_wall_element(RingPtr ring, std::mt19937& rng) {
    std::uniform_int_distribution<int> small(-3, 3), expo(0, 2);
    std::uniform_int_distribution<int> tdeg(1, ring->N);
    LieElement e(ring);
    LatticeVector z{expo(rng), expo(rng)};
    if (z == LatticeVector{0, 0}) z = {1, 1};
    Mat A(ring->rank);
    for (int i = 0; i < ring->rank; ++i)
        for (int j = 0; j < ring->rank; ++j) A.at(i, j) = Poly(small(rng));
    Rat c(small(rng));
    LieCoef coef{A, Poly(c * Rat(-z.b)), Poly(c * Rat(z.a))};
    e.add(TermKey{z, MultiDegree::t_power(1, tdeg(rng))}, coef);
    return e;
}

}  // namespace

TEST_CASE("bracket matches the closed formula on a single pair of terms") {
    SymbolTable tab;
    int a = tab.intern("a");
    RingSpec rs;
    rs.n = 1;
    rs.N = 3;
    rs.rank = 2;
    rs.symbols = tab;
    RingPtr ring = make_ring(rs);

    // x = (E01 a, (1, 2)) z^(1,0) t,  y = (E10, (0, 3)) z^(0,1) t
    LieElement x(ring), y(ring);
    x.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)},
          LieCoef{Mat::elementary(2, 0, 1, Poly::symbol(a)), Poly(1), Poly(2)});
    y.add(TermKey{{0, 1}, MultiDegree::t_power(1, 1)},
          LieCoef{Mat::elementary(2, 1, 0, Poly(1)), Poly(), Poly(3)});

    LieElement br = bracket(x, y);
    // <m2, dx> = (0,1).(1,2) = 2,  <m1, dy> = (1,0).(0,3) = 0
    // A = [A1,A2] + 2 A2 - 0 = (E00 - E11) a + 2 E10
    // d = 2*(0,3) - 0*(1,2) = (0,6)
    Mat A = Mat::elementary(2, 0, 0, Poly::symbol(a)) -
            Mat::elementary(2, 1, 1, Poly::symbol(a)) +
            Rat(2) * Mat::elementary(2, 1, 0, Poly(1));
    LieElement want(ring);
    want.add(TermKey{{1, 1}, MultiDegree::t_power(1, 2)}, LieCoef{A, Poly(), Poly(6)});
    CHECK(br == want);

    CHECK(bracket(x, x).is_zero());
    CHECK(bracket(x, y) + bracket(y, x) == LieElement(ring));
}

TEST_CASE("bracket leaving the algebra at z^0 is rejected") {
    RingPtr ring = lie_ring(3, 0);
    LieElement x(ring), y(ring);
    x.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)}, LieCoef{Mat(0), Poly(1), Poly()});
    y.add(TermKey{{-1, 0}, MultiDegree::t_power(1, 1)}, LieCoef{Mat(0), Poly(1), Poly()});
    CHECK_THROWS_AS(bracket(x, y), std::domain_error);

    // the same monomials with derivations normal to them commute instead
    LieElement u(ring), v(ring);
    u.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)}, LieCoef{Mat(0), Poly(), Poly(1)});
    v.add(TermKey{{-1, 0}, MultiDegree::t_power(1, 1)}, LieCoef{Mat(0), Poly(), Poly(2)});
    CHECK(bracket(u, v).is_zero());
}

TEST_CASE("Jacobi identity holds on random triples") {
    RingPtr ring = lie_ring();
    std::mt19937 rng(20260815);
    for (int trial = 0; trial < 24; ++trial) {
        LieElement a = random_element(ring, rng);
        LieElement b = random_element(ring, rng);
        LieElement c = random_element(ring, rng);
        LieElement jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) +
                         bracket(c, bracket(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("wall-type elements are closed under bracket") {
    RingPtr ring = lie_ring();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 24; ++trial) {
        LieElement a = random_wall_element(ring, rng);
        LieElement b = random_wall_element(ring, rng);
        REQUIRE(a.is_wall_type());
        REQUIRE(b.is_wall_type());
        CHECK(bracket(a, b).is_wall_type());
    }
}

TEST_CASE("bch reproduces the group law") {
    RingPtr ring = lie_ring();
    std::mt19937 rng(99);

    LieElement zero(ring);
    LieElement a = random_element(ring, rng);
    CHECK(bch(a, zero) == a);
    CHECK(bch(zero, a) == a);

    // commuting arguments add up
    LieElement par1(ring), par2(ring);
    par1.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)}, LieCoef{Mat(2), Poly(), Poly(1)});
    par2.add(TermKey{{2, 0}, MultiDegree::t_power(1, 2)}, LieCoef{Mat(2), Poly(), Poly(5)});
    CHECK(bch(par1, par2) == par1 + par2);

    for (int trial = 0; trial < 8; ++trial) {
        GroupElement g{random_element(ring, rng)};
        GroupElement h{random_element(ring, rng)};
        GroupElement k{random_element(ring, rng)};
        GroupElement gh_k = group_mul(group_mul(g, h), k);
        GroupElement g_hk = group_mul(g, group_mul(h, k));
        CHECK(gh_k.log == g_hk.log);
        CHECK(group_mul(g, group_inv(g)).is_identity());
    }
}

TEST_CASE("group elements act on series as exponentiated derivations") {
    RingPtr ring = lie_ring(3, 0);
    std::mt19937 rng(3);

    // anchor: exp(z^(1,1) t^2 d with d=(-1,1)) sends x -> x/(1+t^2 xy)
    LieElement l(ring);
    l.add(TermKey{{1, 1}, MultiDegree::t_power(1, 2)}, LieCoef{Mat(0), Poly(-1), Poly(1)});
    Series x(ring);
    x.add(TermKey{{1, 0}, {}}, Poly(1));
    Series got = act_on_series(GroupElement{l}, x);
    Series want(ring);
    want.add(TermKey{{1, 0}, {}}, Poly(1));
    want.add(TermKey{{2, 1}, MultiDegree::t_power(1, 2)}, Poly(-1));
    CHECK(got == want);

    // homomorphism property of the action, derivation parts only
    for (int trial = 0; trial < 6; ++trial) {
        LieElement la = random_element(ring, rng);
        LieElement lb = random_element(ring, rng);
        GroupElement ga{la}, gb{lb};
        Series s(ring);
        s.add(TermKey{{1, 0}, {}}, Poly(2));
        s.add(TermKey{{0, 1}, MultiDegree::t_power(1, 1)}, Poly(-1));
        Series lhs = act_on_series(group_mul(ga, gb), s);
        Series rhs = act_on_series(ga, act_on_series(gb, s));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("full action applies matrix and derivation parts") {
    RingPtr ring = lie_ring(2, 2);
    LieElement e(ring);
    e.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)},
          LieCoef{Mat::elementary(2, 0, 1, Poly(1)), Poly(), Poly(1)});

    std::vector<Series> v(2, Series(ring));
    v[1].add(TermKey{{0, 1}, {}}, Poly(1));  // v = (0, y)

    std::vector<Series> av = apply_lie(e, v);
    // matrix part: E01 v = (y, 0) z^(1,0) t; derivation part: <(0,1),(0,1)> = 1
    Series expect0(ring), expect1(ring);
    expect0.add(TermKey{{1, 1}, MultiDegree::t_power(1, 1)}, Poly(1));
    expect1.add(TermKey{{1, 1}, MultiDegree::t_power(1, 1)}, Poly(1));
    CHECK(av[0] == expect0);
    CHECK(av[1] == expect1);

    std::vector<Series> gv = act_on_series(GroupElement{e}, v);
    // exp = 1 + e + e^2/2; e^2 v has matrix-derivation cross terms
    std::vector<Series> ev2 = apply_lie(e, av);
    std::vector<Series> want = v;
    for (int i = 0; i < 2; ++i) {
        want[i] += av[i];
        want[i] += Rat(1, 2) * ev2[i];
    }
    CHECK(gv[0] == want[0]);
    CHECK(gv[1] == want[1]);
}

TEST_CASE("grading helpers expose homogeneous layers") {
    RingPtr ring = lie_ring();
    LieElement e(ring);
    e.add(TermKey{{1, 0}, MultiDegree::t_power(1, 1)}, LieCoef{Mat(2), Poly(), Poly(2)});
    e.add(TermKey{{0, 1}, MultiDegree::t_power(1, 2)}, LieCoef{Mat(2), Poly(3), Poly()});

    CHECK(e.lowest_degree() == 1);
    CHECK(e.homogeneous_part(1).terms().size() == 1);
    CHECK(e.homogeneous_part(2).terms().size() == 1);
    CHECK(e.homogeneous_part(3).is_zero());
    CHECK(e.homogeneous_part(1) + e.homogeneous_part(2) == e);
    CHECK(LieElement(ring).lowest_degree() == -1);

    LieElement uexp = expand_t_to_u(e, make_ring(ring->with_mode(RingMode::RtildeN)));
    CHECK(collapse_u_to_t(uexp, ring) == e);
}
