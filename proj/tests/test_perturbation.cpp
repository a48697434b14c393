#include <doctest.h>

#include <algorithm>
#include <map>
#include <tvx/perturbation.hpp>

using namespace tvx;

namespace {

RingPtr two_line_ring(int N = 2) {
    RingSpec rs;
    rs.n = 2;
    rs.N = N;
    rs.rank = 2;
    rs.t_names = {"t1", "t2"};
    return make_ring(rs);
}

/* The running example: line 1 in direction (0,1) with a nilpotent matrix
 * part, line 2 in direction (1,0) purely scalar. */
StandardDiagram example_seed(RingPtr ring) {
    StandardDiagram sd;
    sd.ring = ring;
    sd.lines.push_back(seed_line(ring, 1, {0, 1}, Mat::elementary(2, 0, 1, Poly(1)), Rat(1)));
    sd.lines.push_back(seed_line(ring, 2, {1, 0}, Rat(1)));
    return sd;
}

std::multiset<std::string> round_signature(const PerturbedDiagram& pd, int round) {
    std::multiset<std::string> out;
    for (const Wall* w : pd.rays_of_round(round))
        out.insert(to_string(w->dir) + "|" + lie_str(w->log));
    return out;
}

std::map<std::pair<int, LatticeVector>, LieElement> wall_map(const ScatteringDiagram& d) {
    std::map<std::pair<int, LatticeVector>, LieElement> m;
    for (const Wall& w : d.walls) {
        auto key = std::make_pair((int)w.kind, w.dir);
        auto [it, fresh] = m.try_emplace(key, LieElement(d.ring));
        it->second += w.log;
    }
    return m;
}

}  // namespace

TEST_CASE("seed lines carry matrix and scalar factors") {
    RingPtr ring = two_line_ring();
    StandardDiagram sd = example_seed(ring);
    REQUIRE(sd.lines.size() == 2);
    CHECK(sd.lines[0].dir == LatticeVector{0, 1});
    CHECK(sd.lines[1].dir == LatticeVector{1, 0});
    for (const Wall& w : sd.lines) CHECK_NOTHROW(validate_wall(w));

    WallFunctions f1 = wall_functions(sd.lines[0]);
    MatSeries p1 = MatSeries::one(ring);
    p1.add(TermKey{{0, 1}, MultiDegree::t_power(1, 1)}, Mat::elementary(2, 0, 1, Poly(1)));
    CHECK(f1.P == p1);
    Series s1 = Series::one(ring);
    s1.add(TermKey{{0, 1}, MultiDegree::t_power(1, 1)}, Poly(1));
    CHECK(f1.f == s1);

    WallFunctions f2 = wall_functions(sd.lines[1]);
    CHECK(f2.P == MatSeries::one(ring));
    Series s2 = Series::one(ring);
    s2.add(TermKey{{1, 0}, MultiDegree::t_power(2, 1)}, Poly(1));
    CHECK(f2.f == s2);
}

TEST_CASE("deformation splits each line into u-indexed factor lines") {
    RingPtr ring = two_line_ring();
    PerturbedDiagram pd = deform(example_seed(ring), 1);
    CHECK(pd.ring->mode == RingMode::RtildeN);
    CHECK(pd.rn_ring == ring);

    // per line: two (l=1, j=1) factors and one (l=2, j=2) factor
    REQUIRE(pd.walls.size() == 6);
    std::multiset<std::string> degs;
    for (const Wall& w : pd.walls) {
        CHECK(w.kind == WallKind::Line);
        CHECK(w.round == 0);
        REQUIRE(w.log.terms().size() == 1);
        degs.insert(term_key_str(w.log.terms().begin()->first, *pd.ring));
        // every factor line is translated off the origin
        CHECK(!(w.base == QPoint{}));
    }
    std::multiset<std::string> want = {
        "z^(0,1) u_{1,1}", "z^(0,1) u_{1,2}", "z^(0,2) u_{1,1} u_{1,2}",
        "z^(1,0) u_{2,1}", "z^(1,0) u_{2,2}", "z^(2,0) u_{2,1} u_{2,2}"};
    CHECK(degs == want);
}

TEST_CASE("local scattering of two walls agrees with the closed product formula") {
    RingPtr ring = two_line_ring();
    PerturbedDiagram pd = deform(example_seed(ring), 1);

    int checked = 0;
    for (std::size_t i = 0; i < pd.walls.size(); ++i)
        for (std::size_t j = i + 1; j < pd.walls.size(); ++j) {
            const Wall& a = pd.walls[i];
            const Wall& b = pd.walls[j];
            if (wedge(a.dir, b.dir) == 0) continue;
            auto got = local_scatter(a, b);
            auto closed = local_scatter_closed_form(a, b);
            REQUIRE(got.has_value() == closed.has_value());
            if (got) {
                CHECK(got->dir == closed->dir);
                CHECK(got->log == closed->log);
                CHECK_NOTHROW(validate_wall(*got));
                ++checked;
            }
        }
    CHECK(checked > 0);

    // two purely nilpotent matrix walls with equal matrix parts commute
    Wall ma, mb;
    ma.kind = mb.kind = WallKind::Line;
    ma.dir = {1, 0};
    mb.dir = {0, 1};
    LieElement la(pd.ring), lb(pd.ring);
    la.add(TermKey{{1, 0}, MultiDegree::u_flags({{2, 1}})},
           LieCoef{Mat::elementary(2, 0, 1, Poly(1)), Poly(), Poly()});
    lb.add(TermKey{{0, 1}, MultiDegree::u_flags({{1, 1}})},
           LieCoef{Mat::elementary(2, 0, 1, Poly(1)), Poly(), Poly()});
    ma.log = la;
    mb.log = lb;
    CHECK(!local_scatter(ma, mb).has_value());
}

TEST_CASE("perturbed completion reproduces the documented generic run") {
    RingPtr ring = two_line_ring();
    PerturbedDiagram pd = complete_perturbed(example_seed(ring), 1);
    CHECK(pd.rounds == 3);
    CHECK(pd.walls.size() == 22);

    CHECK(round_signature(pd, 1) ==
          std::multiset<std::string>{
              "(1,1)|z^(1,1) u_{1,1} u_{2,1} : M=[[0,1],[0,0]] d=(-1,1)\n",
              "(1,1)|z^(1,1) u_{1,1} u_{2,2} : M=[[0,1],[0,0]] d=(-1,1)\n",
              "(1,1)|z^(1,1) u_{1,2} u_{2,1} : M=[[0,1],[0,0]] d=(-1,1)\n",
              "(1,1)|z^(1,1) u_{1,2} u_{2,2} : M=[[0,1],[0,0]] d=(-1,1)\n",
              "(2,1)|z^(2,1) u_{1,1} u_{2,1} u_{2,2} : M=[[0,-1],[0,0]] d=(1,-2)\n",
              "(2,1)|z^(2,1) u_{1,2} u_{2,1} u_{2,2} : M=[[0,-1],[0,0]] d=(1,-2)\n",
              "(1,2)|z^(1,2) u_{1,1} u_{1,2} u_{2,1} : M=[[0,0],[0,0]] d=(2,-1)\n",
              "(1,2)|z^(1,2) u_{1,1} u_{1,2} u_{2,2} : M=[[0,0],[0,0]] d=(2,-1)\n",
              "(1,1)|z^(2,2) u_{1,1} u_{1,2} u_{2,1} u_{2,2} : M=[[0,0],[0,0]] d=(-2,2)\n"});

    CHECK(round_signature(pd, 2) ==
          std::multiset<std::string>{
              "(1,2)|z^(1,2) u_{1,1} u_{1,2} u_{2,1} : M=[[0,2],[0,0]] d=(-2,1)\n",
              "(1,2)|z^(1,2) u_{1,1} u_{1,2} u_{2,2} : M=[[0,2],[0,0]] d=(-2,1)\n",
              "(2,1)|z^(2,1) u_{1,1} u_{2,1} u_{2,2} : M=[[0,1],[0,0]] d=(-1,2)\n",
              "(2,1)|z^(2,1) u_{1,2} u_{2,1} u_{2,2} : M=[[0,1],[0,0]] d=(-1,2)\n",
              "(1,1)|z^(2,2) u_{1,1} u_{1,2} u_{2,1} u_{2,2} : M=[[0,-4],[0,0]] d=(4,-4)\n",
              "(1,1)|z^(2,2) u_{1,1} u_{1,2} u_{2,1} u_{2,2} : M=[[0,0],[0,0]] d=(4,-4)\n"});

    CHECK(round_signature(pd, 3) ==
          std::multiset<std::string>{
              "(1,1)|z^(2,2) u_{1,1} u_{1,2} u_{2,1} u_{2,2} : M=[[0,4],[0,0]] d=(-4,4)\n"});
}

TEST_CASE("the asymptotic diagram collapses to the closed-form answer") {
    RingPtr ring = two_line_ring();
    ScatteringDiagram asym = asymptotic(complete_perturbed(example_seed(ring), 1));
    REQUIRE(asym.walls.size() == 4);
    for (const Wall& w : asym.walls) CHECK(w.base == QPoint{});
    CHECK(check_consistency(asym).consistent);

    Mat E01 = Mat::elementary(2, 0, 1, Poly(1));
    Mat Z = Mat(2);

    LieElement line1(ring);
    line1.add(TermKey{{0, 1}, MultiDegree::t_power(1, 1)}, LieCoef{E01, Poly(-1), Poly()});
    line1.add(TermKey{{0, 2}, MultiDegree::t_power(1, 2)}, LieCoef{Z, Poly(Rat(1, 2)), Poly()});

    LieElement line2(ring);
    line2.add(TermKey{{1, 0}, MultiDegree::t_power(2, 1)}, LieCoef{Z, Poly(), Poly(1)});
    line2.add(TermKey{{2, 0}, MultiDegree::t_power(2, 2)}, LieCoef{Z, Poly(), Poly(Rat(-1, 2))});

    LieElement ray11(ring);
    ray11.add(TermKey{{1, 1}, MultiDegree{{{1, 1}, {2, 1}}, {}}},
              LieCoef{E01, Poly(-1), Poly(1)});
    ray11.add(TermKey{{2, 2}, MultiDegree{{{1, 2}, {2, 2}}, {}}},
              LieCoef{Z, Poly(Rat(1, 2)), Poly(Rat(-1, 2))});

    LieElement ray12(ring);
    ray12.add(TermKey{{1, 2}, MultiDegree{{{1, 2}, {2, 1}}, {}}}, LieCoef{E01, Poly(), Poly()});

    auto walls = wall_map(asym);
    CHECK(walls.at({(int)WallKind::Line, {0, 1}}) == line1);
    CHECK(walls.at({(int)WallKind::Line, {1, 0}}) == line2);
    CHECK(walls.at({(int)WallKind::Ray, {1, 1}}) == ray11);
    CHECK(walls.at({(int)WallKind::Ray, {1, 2}}) == ray12);

    // no surviving ray in direction (2,1): the two rounds cancel exactly
    CHECK(!walls.count({(int)WallKind::Ray, {2, 1}}));
}

TEST_CASE("the asymptotic diagram does not depend on the perturbation seed") {
    RingPtr ring = two_line_ring();
    auto base = wall_map(asymptotic(complete_perturbed(example_seed(ring), 1)));
    for (unsigned seed : {2u, 3u}) {
        auto other = wall_map(asymptotic(complete_perturbed(example_seed(ring), seed)));
        CHECK(base == other);
    }
}

TEST_CASE("perturbed completion agrees with the direct algebraic completion") {
    struct Case {
        int N;
        LatticeVector m1, m2;
        Rat a1, a2;
    };
    for (const Case& c : {Case{1, {1, 0}, {0, 1}, Rat(1), Rat(1)},
                          Case{2, {1, 0}, {0, 1}, Rat(2), Rat(-1)},
                          Case{3, {1, 0}, {0, 1}, Rat(1), Rat(1)},
                          Case{2, {1, 1}, {1, -1}, Rat(1), Rat(3)}}) {
        CAPTURE(c.N);
        CAPTURE(c.m1.a);
        CAPTURE(c.m2.a);
        RingSpec rs;
        rs.n = 2;
        rs.N = c.N;
        rs.rank = 0;
        RingPtr ring = make_ring(rs);

        StandardDiagram sd;
        sd.ring = ring;
        sd.lines.push_back(seed_line(ring, 1, c.m1, c.a1));
        sd.lines.push_back(seed_line(ring, 2, c.m2, c.a2));

        ScatteringDiagram plain(ring);
        for (const Wall& w : sd.lines) plain.add(w);
        auto direct = wall_map(complete_ks(plain));
        auto via_perturbation = wall_map(asymptotic(complete_perturbed(sd, 1)));
        CHECK(direct == via_perturbation);
    }
}
