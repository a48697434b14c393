#include "tvx/scattering.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tvx {

bool Wall::contains(const QPoint& p) const {
    QPoint d = p - base;
    if (d.x * dir.b != d.y * dir.a) return false;
    if (kind == WallKind::Line) return true;
    return qdot(d, dir) >= 0;
}

void validate_wall(const Wall& w) {
    if (w.dir.is_zero()) throw std::invalid_argument("wall with zero direction");
    if (index_of(w.dir) != 1) throw std::invalid_argument("wall direction must be primitive");
    LatticeVector n = rot90(w.dir);
    for (const auto& [k, c] : w.log.terms()) {
        // z = l * dir, l >= 1
        std::int64_t l;
        if (w.dir.a != 0) {
            if (k.z.a % w.dir.a != 0) throw std::invalid_argument("wall log off its monomial ray");
            l = k.z.a / w.dir.a;
        } else {
            l = k.z.b / w.dir.b;
        }
        if (l < 1 || k.z != l * w.dir)
            throw std::invalid_argument("wall log off its monomial ray");
        // derivation along n0
        if (!(Rat(n.a) * c.d2 - Rat(n.b) * c.d1).is_zero())
            throw std::invalid_argument("wall derivation not normal to the wall");
        if (k.deg.empty())
            throw std::invalid_argument("wall log of formal degree 0");
    }
}

LieElement wall_log(LatticeVector dir, const MatSeries& P, const Series& f) {
    RingPtr ring = P.ring() ? P.ring() : f.ring();
    LieElement e(ring);
    LatticeVector n = rot90(primitive_part(dir));
    if (ring->rank > 0 && P.ring()) {
        MatSeries lp = series_log(P);
        for (const auto& [k, A] : lp.terms()) e.add(k, LieCoef{A, Poly{}, Poly{}});
    }
    Series lf = series_log(f);
    for (const auto& [k, c] : lf.terms())
        e.add(k, LieCoef{Mat::zero(ring->rank), Rat(n.a) * c, Rat(n.b) * c});
    return e;
}

LieElement wall_log(LatticeVector dir, const Series& f) {
    return wall_log(dir, MatSeries(), f);
}

WallFunctions wall_functions(const Wall& w) {
    const RingPtr& ring = w.log.ring();
    LatticeVector n = rot90(w.dir);
    MatSeries la(ring);
    Series lf(ring);
    for (const auto& [k, c] : w.log.terms()) {
        if (!c.A.is_zero()) la.add(k, c.A);
        Poly scalar;
        if (n.a != 0) scalar = (Rat(1) / Rat(n.a)) * c.d1;
        else scalar = (Rat(1) / Rat(n.b)) * c.d2;
        if (!(Rat(n.a) * scalar - c.d1).is_zero() || !(Rat(n.b) * scalar - c.d2).is_zero())
            throw std::invalid_argument("wall derivation not along the normal");
        if (!scalar.is_zero()) lf.add(k, scalar);
    }
    WallFunctions out{MatSeries(ring), Series(ring)};
    out.P = series_exp(la);
    out.f = series_exp(lf);
    return out;
}

bool angle_less(LatticeVector v, LatticeVector w) {
    auto bucket = [](LatticeVector u) {
        if (u.b == 0) return u.a > 0 ? 0 : 4;
        return u.b > 0 ? 2 : 6;
    };
    int bv = bucket(v), bw = bucket(w);
    if (bv != bw) return bv < bw;
    if (bv == 0 || bv == 4) return false;  // same axis direction
    return wedge(v, w) > 0;
}

namespace {

struct Crossing {
    LatticeVector v;
    std::size_t wall;
    bool inverse;
};

std::vector<Crossing> crossings_at(const ScatteringDiagram& d, const QPoint& p) {
    std::vector<Crossing> cs;
    for (std::size_t i = 0; i < d.walls.size(); ++i) {
        const Wall& w = d.walls[i];
        if (w.log.is_zero()) continue;
        QPoint rel = p - w.base;
        if (rel.x * w.dir.b != rel.y * w.dir.a) continue;  // p off the support line
        std::vector<LatticeVector> dirs;
        if (w.kind == WallKind::Line) {
            dirs = {w.dir, -w.dir};
        } else {
            Rat along = qdot(rel, w.dir);
            if (along < 0) continue;
            dirs.push_back(w.dir);
            if (along > 0) dirs.push_back(-w.dir);
        }
        for (LatticeVector v : dirs) cs.push_back({v, i, dot(v, w.dir) < 0});
    }
    std::stable_sort(cs.begin(), cs.end(),
                     [](const Crossing& a, const Crossing& b) { return angle_less(a.v, b.v); });
    return cs;
}

}  // namespace

GroupElement path_ordered_product(const ScatteringDiagram& d, const QPoint& p, LoopOrder order) {
    if (!d.ring) throw std::invalid_argument("diagram without ring");
    GroupElement acc = GroupElement::identity(d.ring);
    for (const Crossing& c : crossings_at(d, p)) {
        GroupElement g{d.walls[c.wall].log};
        if (c.inverse) g = group_inv(g);
        acc = order == LoopOrder::LaterOnLeft ? group_mul(g, acc) : group_mul(acc, g);
    }
    return acc;
}

ConsistencyReport check_consistency(const ScatteringDiagram& d, LoopOrder order) {
    std::vector<QPoint> joints;
    auto push = [&joints](const QPoint& p) {
        if (std::find(joints.begin(), joints.end(), p) == joints.end()) joints.push_back(p);
    };
    for (std::size_t i = 0; i < d.walls.size(); ++i) {
        const Wall& a = d.walls[i];
        if (a.kind == WallKind::Ray) push(a.base);
        for (std::size_t j = i + 1; j < d.walls.size(); ++j) {
            const Wall& b = d.walls[j];
            std::int64_t det = wedge(a.dir, b.dir);
            if (det == 0) continue;
            // solve a.base + s*a.dir = b.base + t*b.dir
            QPoint rel = b.base - a.base;
            Rat s = (rel.x * b.dir.b - rel.y * b.dir.a) / Rat(det);
            QPoint p{a.base.x + s * a.dir.a, a.base.y + s * a.dir.b};
            if (a.contains(p) && b.contains(p)) push(p);
        }
    }
    ConsistencyReport rep;
    for (const QPoint& p : joints) {
        GroupElement g = path_ordered_product(d, p, order);
        if (!g.log.is_zero()) {
            rep.consistent = false;
            rep.defects.push_back({p, g.log});
        }
    }
    return rep;
}

ScatteringDiagram complete_ks(const ScatteringDiagram& d, LoopOrder order) {
    const QPoint origin{};
    for (const Wall& w : d.walls)
        if (!w.contains(origin) || (w.kind == WallKind::Ray && !(w.base == origin)))
            throw std::invalid_argument("complete_ks wants a diagram of walls through the origin");
    ScatteringDiagram out = d;
    int prev_lowest = 0;
    for (int iter = 0; iter <= out.ring->nilpotency_bound() + 1; ++iter) {
        LieElement defect = path_ordered_product(out, origin, order).log;
        if (defect.is_zero()) return out;
        int k = defect.lowest_degree();
        if (k <= prev_lowest)
            throw std::runtime_error("completion failed to raise the defect order");
        prev_lowest = k;
        LieElement part = defect.homogeneous_part(k);
        std::map<LatticeVector, LieElement> by_dir;
        for (const auto& [key, c] : part.terms()) {
            LatticeVector m0 = primitive_part(key.z);
            auto it = by_dir.try_emplace(m0, LieElement(out.ring)).first;
            it->second.add(key, c);
        }
        for (auto& [m0, sub] : by_dir) {
            bool merged = false;
            for (Wall& w : out.walls)
                if (w.kind == WallKind::Ray && w.base == origin && w.dir == m0) {
                    w.log -= sub;
                    merged = true;
                    break;
                }
            if (!merged) {
                Wall w;
                w.kind = WallKind::Ray;
                w.base = origin;
                w.dir = m0;
                w.log = -sub;
                out.add(std::move(w));
            }
        }
    }
    throw std::runtime_error("completion did not terminate within the nilpotency bound");
}

}  // namespace tvx
