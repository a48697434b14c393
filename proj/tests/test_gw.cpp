#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "tvx/gw.hpp"
#include "tvx/perturbation.hpp"

using namespace tvx;

namespace {

WeightVector wv(std::vector<LatticeVector> v) {
    std::sort(v.begin(), v.end());
    return v;
}

int class_index(const MonomialVectorSystem& sys, const WeightVector& w) {
    auto it = std::find(sys.classes.begin(), sys.classes.end(), w);
    REQUIRE(it != sys.classes.end());
    return (int)(it - sys.classes.begin());
}

Mono make_mono(const MonomialVectorSystem& sys,
               std::vector<std::pair<const char*, int>> factors) {
    Mono m;
    for (const auto& [name, exp] : factors) {
        int id = sys.symbols.lookup(name);
        REQUIRE(id >= 0);
        m.push_back({id, exp});
    }
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

TEST_CASE("partition enumeration and degeneration weights") {
    CHECK(R_l(1) == Rat(1));
    CHECK(R_l(2) == -Rat(1, 4));
    CHECK(R_l(3) == Rat(1, 9));
    CHECK(R_l(4) == -Rat(1, 16));

    CHECK(enumerate_partitions(TangencyProfile{{2, 1}}).size() == 2);
    CHECK(enumerate_partitions(TangencyProfile{{2, 2}}).size() == 4);
    CHECK(enumerate_partitions(TangencyProfile{{2, 4}}).size() == 10);
    CHECK(enumerate_partitions(TangencyProfile{{4}}).size() == 5);

    const LatticeVector m1{0, 1}, m2{1, 0};
    const std::vector<LatticeVector> dirs{m1, m2};

    Partition ka;  // 2 = 1 + 1 on the first line, 1 on the second
    ka.k = {{2}, {1}};
    Partition kb;  // 2 = 2 on the first line, 1 on the second
    kb.k = {{0, 1}, {1}};

    CHECK(ka.s() == 3);
    CHECK(kb.s() == 2);
    CHECK(ka.w(dirs) == wv({m1, m1, m2}));
    CHECK(kb.w(dirs) == wv({2 * m1, m2}));

    auto all = enumerate_partitions(TangencyProfile{{2, 1}});
    CHECK(std::find(all.begin(), all.end(), ka) != all.end());
    CHECK(std::find(all.begin(), all.end(), kb) != all.end());

    CHECK(degeneration_coefficient(ka) == Rat(1, 2));
    CHECK(degeneration_coefficient(kb) == -Rat(1, 2));

    // relative invariants from the tropical counts of the two classes
    Rat trop_a = count_tropical(CurveType{{m1, m1, m2}}, 1).total;
    Rat trop_b = count_tropical(CurveType{{2 * m1, m2}}, 1).total;
    CHECK(trop_a == Rat(1));
    CHECK(trop_b == Rat(2));
    CHECK(trop_to_relative(trop_a, ka) == Rat(1));
    CHECK(trop_to_relative(trop_b, kb) == Rat(1));
}

TEST_CASE("invariant extraction from the completed wall") {
    const LatticeVector m1{0, 1}, m2{1, 0};
    GwSeed seed = make_gw_seed(1, 1, m1, m2, 2);
    PerturbedDiagram pd = complete_perturbed(seed.diagram(), 1);
    ScatteringDiagram asym = asymptotic(pd);
    REQUIRE(asym.walls.size() == 5);

    InvariantTable table = extract_from_wall(asym, seed, LatticeVector{1, 2});

    const WeightVector wa = wv({m1, m1, m2});
    const WeightVector wb = wv({2 * m1, m2});

    REQUIRE(table.by_profile.size() == 1);
    CHECK(table.by_profile.at({2, 1}) == Rat(0));
    REQUIRE(table.by_weight.size() == 2);
    CHECK(table.by_weight.at(wa) == Rat(1));
    CHECK(table.by_weight.at(wb) == Rat(1));
    CHECK(table.undetermined.empty());

    // the degeneration formula ties the three numbers together
    Partition ka;
    ka.k = {{2}, {1}};
    Partition kb;
    kb.k = {{0, 1}, {1}};
    Rat ca = degeneration_coefficient(ka);
    Rat cb = degeneration_coefficient(kb);
    CHECK((table.by_profile.at({2, 1}) - ca * table.by_weight.at(wa)) / cb == Rat(1));
    CHECK(degenerate(table.by_weight, TangencyProfile{{2, 1}}, {m1, m2}) == Rat(0));
}

TEST_CASE("tropical generating series assembles the wall log") {
    const LatticeVector m1{0, 1}, m2{1, 0};
    GwSeed seed = make_gw_seed(1, 1, m1, m2, 2);
    PerturbedDiagram pd = complete_perturbed(seed.diagram(), 1);
    ScatteringDiagram asym = asymptotic(pd);
    REQUIRE(asym.walls.size() == 5);

    int compared = 0;
    for (const Wall& w : asym.walls) {
        if (wedge(w.dir, m1) == 0 || wedge(w.dir, m2) == 0) continue;
        CHECK(assemble_trop_log(seed, w.dir) == w.log);
        ++compared;
    }
    CHECK(compared == 3);  // rays (1,1), (1,2), (2,1)

    CHECK_THROWS_AS(assemble_trop_log(seed, m1), std::invalid_argument);
    CHECK_THROWS_AS(assemble_trop_log(seed, LatticeVector{2, 0}), std::invalid_argument);
}

TEST_CASE("monomial vector system: one line per side, target (2,2)") {
    const LatticeVector m1{1, 0}, m2{0, 1};
    MonomialVectorSystem sys = analyze_basis(1, 1, {2, 2}, m1, m2);

    REQUIRE(sys.classes.size() == 4);
    CHECK(sys.rank == 3);
    REQUIRE(sys.relations.size() == 1);
    CHECK(sys.pivots.size() == 3);
    CHECK(sys.designated.empty());
    for (int n : sys.class_sizes) CHECK(n == 1);

    int ia = class_index(sys, wv({m1, m1, m2, m2}));
    int ib = class_index(sys, wv({2 * m1, m2, m2}));
    int ic = class_index(sys, wv({m1, m1, 2 * m2}));
    int id = class_index(sys, wv({2 * m1, 2 * m2}));

    // exact vector values
    auto S = [&](const char* n) {
        int sid = sys.symbols.lookup(n);
        REQUIRE(sid >= 0);
        return Poly::symbol(sid);
    };
    Poly A1 = S("A1"), Q1 = S("Q1");
    Poly ts = S("t1").pow(2) * S("s1").pow(2);
    CHECK(sys.E[ia] == (Rat(2) * A1 + Rat(2) * Q1) * ts);
    CHECK(sys.E[ib] == (Rat(2) * A1.pow(2) + Rat(2) * Q1) * ts);
    CHECK(sys.E[ic] == (Rat(2) * A1 + Rat(2) * Q1.pow(2)) * ts);
    CHECK(sys.E[id] == (Rat(2) * A1.pow(2) + Rat(2) * Q1.pow(2)) * ts);

    // the one true dependency: E_a - E_b - E_c + E_d = 0
    std::map<int, Rat> good{{ia, Rat(1)}, {ib, Rat(-1)}, {ic, Rat(-1)}, {id, Rat(1)}};
    CHECK(relation_holds(sys, good));
    CHECK(relation_holds(sys, sys.relations[0]));
    CHECK(sys.relations[0] == good);

    // the dependency as printed in the source text ("E_a = -E_b - E_c - E_d"
    // with E_b miscopied as a second E_d) is false on both readings
    std::map<int, Rat> printed{{ia, Rat(1)}, {ic, Rat(1)}, {id, Rat(2)}};
    CHECK_FALSE(relation_holds(sys, printed));
    std::map<int, Rat> printed2{{ia, Rat(1)}, {ib, Rat(1)}, {ic, Rat(1)}, {id, Rat(1)}};
    CHECK_FALSE(relation_holds(sys, printed2));
}

TEST_CASE("monomial vector system: one line per side, target (2,4)") {
    const LatticeVector m1{1, 0}, m2{0, 1};
    MonomialVectorSystem sys = analyze_basis(1, 1, {2, 4}, m1, m2);

    REQUIRE(sys.classes.size() == 10);
    CHECK(sys.rank == 5);  // the ten vectors live on six monomials; five survive
    CHECK(sys.rank <= 6);
    CHECK(sys.relations.size() == 5);
    for (const auto& rel : sys.relations) CHECK(relation_holds(sys, rel));

    int ic = class_index(sys, wv({m1, m1, m2, m2, 2 * m2}));
    int id = class_index(sys, wv({m1, m1, 2 * m2, 2 * m2}));
    int ie = class_index(sys, wv({m1, m1, 4 * m2}));
    int ih = class_index(sys, wv({2 * m1, m2, m2, 2 * m2}));
    int ii = class_index(sys, wv({2 * m1, 2 * m2, 2 * m2}));
    int il = class_index(sys, wv({2 * m1, 4 * m2}));

    // true dependency: E_l = E_i + E_e - E_d
    std::map<int, Rat> good{{il, Rat(1)}, {ii, Rat(-1)}, {ie, Rat(-1)}, {id, Rat(1)}};
    CHECK(relation_holds(sys, good));

    // as printed ("E_l = E_e - E_i - E_d") it is false
    std::map<int, Rat> printed{{il, Rat(1)}, {ie, Rat(-1)}, {ii, Rat(1)}, {id, Rat(1)}};
    CHECK_FALSE(relation_holds(sys, printed));

    // another machine-checkable dependency among the listed vectors
    std::map<int, Rat> extra{{ih, Rat(1)}, {ic, Rat(-1)}, {ii, Rat(-1)}, {id, Rat(1)}};
    CHECK(relation_holds(sys, extra));
}

TEST_CASE("monomial vector system: two lines per side are independent") {
    const LatticeVector m1{1, 0}, m2{0, 1};

    MonomialVectorSystem sys = analyze_basis(2, 2, {2, 2}, m1, m2);
    REQUIRE(sys.classes.size() == 4);
    CHECK(sys.rank == 4);
    CHECK(sys.relations.empty());
    CHECK(sys.pivots.size() == 4);

    int ia = class_index(sys, wv({m1, m1, m2, m2}));
    int ib = class_index(sys, wv({2 * m1, m2, m2}));
    int ic = class_index(sys, wv({m1, m1, 2 * m2}));
    int id = class_index(sys, wv({2 * m1, 2 * m2}));
    CHECK(sys.class_sizes[ia] == 9);
    CHECK(sys.class_sizes[ib] == 6);
    CHECK(sys.class_sizes[ic] == 6);
    CHECK(sys.class_sizes[id] == 4);

    // certifying monomials: each lives in exactly one vector
    struct Claim {
        int cls;
        Mono mono;
    };
    std::vector<Claim> claims{
        {ia, make_mono(sys, {{"A1", 1}, {"t1", 1}, {"t2", 1}, {"s1", 1}, {"s2", 1}})},
        {ib, make_mono(sys, {{"Q1", 1}, {"t1", 2}, {"s1", 1}, {"s2", 1}})},
        {ic, make_mono(sys, {{"A1", 1}, {"t1", 1}, {"t2", 1}, {"s1", 2}})},
    };
    for (const Claim& cl : claims) {
        CHECK(sys.E[cl.cls].coeff(cl.mono) == Rat(1));
        for (int j = 0; j < (int)sys.E.size(); ++j)
            if (j != cl.cls) CHECK(sys.E[j].coeff(cl.mono) == Rat(0));
    }

    // built-in extraction certificates cover the three distinguished classes
    REQUIRE(sys.designated.size() == 3);
    std::vector<int> designated_classes;
    for (const auto& [cls, mono] : sys.designated) {
        designated_classes.push_back(cls);
        CHECK(sys.E[cls].coeff(mono) != Rat(0));
        for (int j = 0; j < (int)sys.E.size(); ++j)
            if (j != cls) CHECK(sys.E[j].coeff(mono) == Rat(0));
    }
    std::sort(designated_classes.begin(), designated_classes.end());
    std::vector<int> expected{ia, ib, class_index(sys, wv({2 * m2, m1, m1}))};
    std::sort(expected.begin(), expected.end());
    CHECK(designated_classes == expected);

    MonomialVectorSystem sys24 = analyze_basis(2, 2, {2, 4}, m1, m2);
    REQUIRE(sys24.classes.size() == 10);
    CHECK(sys24.rank == 10);
    CHECK(sys24.relations.empty());
    CHECK(sys24.pivots.size() == 10);
}
