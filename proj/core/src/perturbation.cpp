#include "tvx/perturbation.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <random>

namespace tvx {

Wall seed_line(const RingPtr& ring, int i, LatticeVector m, const Mat& A, const Rat& a) {
    if (index_of(m) != 1) throw std::invalid_argument("seed direction must be primitive");
    MatSeries P = MatSeries::one(ring);
    P.add(TermKey{m, MultiDegree::t_power(i, 1)}, A);
    Series f = Series::one(ring);
    f.add(TermKey{m, MultiDegree::t_power(i, 1)}, Poly{a});
    Wall w;
    w.kind = WallKind::Line;
    w.dir = m;
    w.log = wall_log(m, P, f);
    return w;
}

Wall seed_line(const RingPtr& ring, int i, LatticeVector m, const Rat& a) {
    if (index_of(m) != 1) throw std::invalid_argument("seed direction must be primitive");
    Series f = Series::one(ring);
    f.add(TermKey{m, MultiDegree::t_power(i, 1)}, Poly{a});
    Wall w;
    w.kind = WallKind::Line;
    w.dir = m;
    w.log = wall_log(m, f);
    return w;
}

namespace {

/* All j-element subsets of {1..N}. */
std::vector<std::vector<int>> subsets_of_size(int N, int j) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick(j);
    for (int k = 0; k < j; ++k) pick[k] = k + 1;
    if (j == 0) return {{}};
    if (j > N) return {};
    while (true) {
        out.push_back(pick);
        int k = j - 1;
        while (k >= 0 && pick[k] == N - (j - 1 - k)) --k;
        if (k < 0) break;
        ++pick[k];
        for (int l = k + 1; l < j; ++l) pick[l] = pick[l - 1] + 1;
    }
    return out;
}

void check_line_genericity(const std::vector<Wall>& walls) {
    // distinct supports for parallel lines, no three concurrent otherwise
    std::map<QPoint, int> seen;
    for (std::size_t i = 0; i < walls.size(); ++i)
        for (std::size_t j = i + 1; j < walls.size(); ++j) {
            const Wall& a = walls[i];
            const Wall& b = walls[j];
            std::int64_t det = wedge(a.dir, b.dir);
            QPoint rel = b.base - a.base;
            if (det == 0) {
                if (rel.x * a.dir.b == rel.y * a.dir.a)
                    throw GenericityViolation("parallel factor lines share a support");
                continue;
            }
            Rat s = (rel.x * b.dir.b - rel.y * b.dir.a) / Rat(det);
            QPoint p{a.base.x + s * a.dir.a, a.base.y + s * a.dir.b};
            if (++seen[p] > 1) throw GenericityViolation("three factor lines are concurrent");
        }
}

}  // namespace

PerturbedDiagram deform(const StandardDiagram& d, unsigned seed) {
    const RingSpec& rn = *d.ring;
    if (rn.mode != RingMode::RN) throw std::invalid_argument("deform wants an R_N diagram");
    if ((int)d.lines.size() != rn.n)
        throw std::invalid_argument("deform: ring.n must match the number of lines");
    RingPtr ru = make_ring(rn.with_mode(RingMode::RtildeN));

    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        long long k = (long long)(rng() % 2000003ull) - 1000001;
        return Rat(k, 1000003);
    };

    PerturbedDiagram pd;
    pd.ring = ru;
    pd.rn_ring = d.ring;
    pd.seed = seed;

    for (int i = 1; i <= rn.n; ++i) {
        const Wall& line = d.lines[i - 1];
        validate_wall(line);
        if (line.kind != WallKind::Line || !(line.base == QPoint{}))
            throw std::invalid_argument("seed walls must be lines through the origin");
        LatticeVector n0 = rot90(line.dir);
        Rat nn(dot(n0, n0));
        for (const auto& [key, coef] : line.log.terms()) {
            if (key.deg.t.size() != 1 || key.deg.t[0].first != i)
                throw std::invalid_argument("log theta_i must involve t_i only");
            int j = key.deg.t[0].second;
            Rat fact = factorial(j);
            for (const auto& J : subsets_of_size(rn.N, j)) {
                Wall w;
                w.kind = WallKind::Line;
                w.dir = line.dir;
                MultiDegree deg;
                for (int copy : J) {
                    deg.u.push_back({i, copy});
                    w.index_set.insert({i, copy});
                }
                LieElement lg(ru);
                lg.add(TermKey{key.z, deg},
                       LieCoef{fact * coef.A, fact * coef.d1, fact * coef.d2});
                w.log = std::move(lg);
                w.base = scale(draw() / nn, n0);
                pd.walls.push_back(std::move(w));
            }
        }
    }
    check_line_genericity(pd.walls);
    return pd;
}

std::optional<Wall> local_scatter(const Wall& a, const Wall& b, std::size_t ia, std::size_t ib) {
    if (a.log.terms().size() != 1 || b.log.terms().size() != 1)
        throw std::invalid_argument("local_scatter wants single-term walls");
    std::int64_t det = wedge(a.dir, b.dir);
    if (det == 0) throw std::invalid_argument("local_scatter wants transversal walls");
    QPoint rel = b.base - a.base;
    Rat s = (rel.x * b.dir.b - rel.y * b.dir.a) / Rat(det);
    QPoint xi{a.base.x + s * a.dir.a, a.base.y + s * a.dir.b};

    ScatteringDiagram mini(a.log.ring());
    Wall la;
    la.kind = WallKind::Line;
    la.dir = a.dir;
    la.log = a.log;
    Wall lb;
    lb.kind = WallKind::Line;
    lb.dir = b.dir;
    lb.log = b.log;
    mini.add(la);
    mini.add(lb);
    LieElement defect = path_ordered_product(mini, QPoint{}).log;
    if (defect.is_zero()) return std::nullopt;

    Wall ray;
    ray.kind = WallKind::Ray;
    ray.base = xi;
    ray.dir = primitive_part(defect.terms().begin()->first.z);
    ray.log = -defect;
    std::set_union(a.index_set.begin(), a.index_set.end(), b.index_set.begin(),
                   b.index_set.end(), std::inserter(ray.index_set, ray.index_set.end()));
    if (ia != (std::size_t)-1) ray.parents = {ia, ib};
    validate_wall(ray);
    return ray;
}

std::optional<Wall> local_scatter_closed_form(const Wall& wa, const Wall& wb) {
    if (wa.log.terms().size() != 1 || wb.log.terms().size() != 1)
        throw std::invalid_argument("closed form wants single-term walls");
    const Wall* w1 = &wa;
    const Wall* w2 = &wb;
    if (wedge(w2->dir, w1->dir) < 0) std::swap(w1, w2);
    std::int64_t W = wedge(w2->dir, w1->dir);  // = |m1 wedge m2| > 0
    if (W == 0) throw std::invalid_argument("closed form wants transversal walls");

    auto scalar_of = [](const Wall& w, const LieCoef& c) {
        LatticeVector n = rot90(w.dir);
        return n.a != 0 ? (Rat(1) / Rat(n.a)) * c.d1 : (Rat(1) / Rat(n.b)) * c.d2;
    };
    const auto& [k1, c1] = *w1->log.terms().begin();
    const auto& [k2, c2] = *w2->log.terms().begin();
    std::int64_t l1 = index_of(k1.z);
    std::int64_t l2 = index_of(k2.z);
    Poly a1 = scalar_of(*w1, c1);
    Poly a2 = scalar_of(*w2, c2);

    LatticeVector w_out = k1.z + k2.z;
    std::int64_t l_out = index_of(w_out);
    LatticeVector m_out = primitive_part(w_out);
    LatticeVector n_out = rot90(m_out);

    LieCoef out;
    out.A = commutator(c1.A, c2.A) + (Rat(l2 * W) * a1) * c2.A + (Rat(l1 * W) * a2) * c1.A;
    Poly c_out = Rat(l_out * W) * (a1 * a2);
    out.d1 = Rat(n_out.a) * c_out;
    out.d2 = Rat(n_out.b) * c_out;
    if (out.is_zero()) return std::nullopt;

    const RingSpec& ring = *wa.log.ring();
    auto deg = ring.mul(k1.deg, k2.deg);
    if (!deg) return std::nullopt;

    std::int64_t det = wedge(wa.dir, wb.dir);
    QPoint rel = wb.base - wa.base;
    Rat s = (rel.x * wb.dir.b - rel.y * wb.dir.a) / Rat(det);

    Wall ray;
    ray.kind = WallKind::Ray;
    ray.base = QPoint{wa.base.x + s * wa.dir.a, wa.base.y + s * wa.dir.b};
    ray.dir = m_out;
    LieElement lg(wa.log.ring());
    lg.add(TermKey{w_out, *deg}, out);
    ray.log = std::move(lg);
    std::set_union(wa.index_set.begin(), wa.index_set.end(), wb.index_set.begin(),
                   wb.index_set.end(), std::inserter(ray.index_set, ray.index_set.end()));
    validate_wall(ray);
    return ray;
}

namespace {

/* Strict interior intersection point of two walls, if any. */
std::optional<QPoint> transversal_point(const Wall& a, const Wall& b) {
    std::int64_t det = wedge(a.dir, b.dir);
    if (det == 0) return std::nullopt;
    QPoint rel = b.base - a.base;
    Rat s = (rel.x * b.dir.b - rel.y * b.dir.a) / Rat(det);
    QPoint p{a.base.x + s * a.dir.a, a.base.y + s * a.dir.b};
    auto strictly_inside = [&p](const Wall& w) {
        if (w.kind == WallKind::Line) return true;
        return qdot(p - w.base, w.dir) > 0;  // the base point itself does not count
    };
    if (!strictly_inside(a) || !strictly_inside(b)) return std::nullopt;
    return p;
}

bool disjoint_index_sets(const Wall& a, const Wall& b) {
    for (const auto& f : a.index_set)
        if (b.index_set.count(f)) return false;
    return true;
}

void run_rounds(PerturbedDiagram& pd) {
    std::vector<std::size_t> last_new(pd.walls.size());
    for (std::size_t i = 0; i < pd.walls.size(); ++i) last_new[i] = i;
    bool first_round = true;
    for (int round = 1; round <= pd.ring->nilpotency_bound() + 1; ++round) {
        // fresh pairs: at least one member from the previous round
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        if (first_round) {
            for (std::size_t i = 0; i < pd.walls.size(); ++i)
                for (std::size_t j = i + 1; j < pd.walls.size(); ++j) pairs.push_back({i, j});
            first_round = false;
        } else {
            std::size_t first_new = last_new.front();
            for (std::size_t i : last_new)
                for (std::size_t j = 0; j < first_new; ++j) pairs.push_back({j, i});
            for (std::size_t a = 0; a < last_new.size(); ++a)
                for (std::size_t b = a + 1; b < last_new.size(); ++b)
                    pairs.push_back({last_new[a], last_new[b]});
        }
        std::vector<Wall> fresh;
        for (auto [ia, ib] : pairs) {
            const Wall& a = pd.walls[ia];
            const Wall& b = pd.walls[ib];
            if (!disjoint_index_sets(a, b)) continue;
            if (!transversal_point(a, b)) continue;
            auto ray = local_scatter(a, b, ia, ib);
            if (!ray) continue;
            ray->round = round;
            fresh.push_back(std::move(*ray));
        }
        if (fresh.empty()) break;
        // Genericity: a new base point may not lie on a wall it could still
        // interact with.  Walls with overlapping index sets never scatter (all
        // mixed brackets die by u^2 = 0), so coincidences between them are
        // harmless -- and some are even forced, e.g. same-type rays from
        // different vertices are exactly collinear.
        for (const Wall& c : fresh) {
            for (std::size_t k = 0; k < pd.walls.size(); ++k) {
                if (c.parents && (k == c.parents->first || k == c.parents->second)) continue;
                if (disjoint_index_sets(pd.walls[k], c) && pd.walls[k].contains(c.base))
                    throw GenericityViolation("new ray is based on a third wall");
            }
            for (const Wall& other : fresh) {
                if (&other == &c) continue;
                if (disjoint_index_sets(other, c) && other.contains(c.base))
                    throw GenericityViolation("two fresh rays meet at a base point");
            }
        }
        last_new.clear();
        for (Wall& c : fresh) {
            last_new.push_back(pd.walls.size());
            pd.walls.push_back(std::move(c));
        }
        pd.rounds = round;
    }
}

}  // namespace

PerturbedDiagram complete_perturbed(const StandardDiagram& d, unsigned seed, int max_attempts) {
    std::string last;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        try {
            PerturbedDiagram pd = deform(d, seed + 1000003u * (unsigned)attempt);
            run_rounds(pd);
            return pd;
        } catch (const GenericityViolation& e) {
            last = e.what();
        }
    }
    throw std::runtime_error("no generic perturbation found within the attempt budget (last: " +
                             last + ")");
}

ScatteringDiagram asymptotic(const PerturbedDiagram& pd) {
    // regroup: factor lines by seed line, rays by direction
    std::map<int, std::vector<const Wall*>> lines;
    std::map<LatticeVector, std::vector<const Wall*>> rays;
    for (const Wall& w : pd.walls) {
        if (w.kind == WallKind::Line) {
            if (w.index_set.empty()) throw std::invalid_argument("factor line without index set");
            lines[w.index_set.begin()->first].push_back(&w);
        } else {
            rays[w.dir].push_back(&w);
        }
    }
    auto merge = [&pd](const std::vector<const Wall*>& group) {
        LieElement sum(pd.ring);
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t j = i + 1; j < group.size(); ++j)
                if (!bracket(group[i]->log, group[j]->log).is_zero())
                    throw std::runtime_error("asymptotic merge of non-commuting walls");
            sum += group[i]->log;
        }
        return collapse_u_to_t(sum, pd.rn_ring);
    };
    ScatteringDiagram out(pd.rn_ring);
    for (auto& [i, group] : lines) {
        Wall w;
        w.kind = WallKind::Line;
        w.dir = group.front()->dir;
        w.log = merge(group);
        if (!w.log.is_zero()) out.add(std::move(w));
    }
    std::vector<std::pair<LatticeVector, LieElement>> ray_walls;
    for (auto& [dir, group] : rays) {
        LieElement lg = merge(group);
        if (!lg.is_zero()) ray_walls.push_back({dir, std::move(lg)});
    }
    std::sort(ray_walls.begin(), ray_walls.end(),
              [](const auto& a, const auto& b) { return angle_less(a.first, b.first); });
    for (auto& [dir, lg] : ray_walls) {
        Wall w;
        w.kind = WallKind::Ray;
        w.dir = dir;
        w.log = std::move(lg);
        out.add(std::move(w));
    }
    return out;
}

}  // namespace tvx
