// tvx command line: parse structured documents, run the pipelines, emit
// reports / golden documents / SVG.  Exit codes: 0 ok, 1 verification or
// consistency failure, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tvx/diagram_io.hpp"
#include "tvx/gw.hpp"
#include "tvx/perturbation.hpp"
#include "tvx/scattering.hpp"
#include "tvx/series.hpp"
#include "tvx/tropical.hpp"
#include "tvx/wcf2d4d.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << text;
}

std::string vec_str(tvx::LatticeVector v) { return tvx::to_string(v); }

/* Renders one weight entry against the seed directions: m1, 2m1, ..., else raw. */
std::string weight_name(tvx::LatticeVector v, tvx::LatticeVector m1, tvx::LatticeVector m2) {
    for (int which = 0; which < 2; ++which) {
        tvx::LatticeVector m = which == 0 ? m1 : m2;
        std::string nm = which == 0 ? "m1" : "m2";
        for (int l = 1; l <= 16; ++l)
            if (v == (std::int64_t)l * m) return l == 1 ? nm : std::to_string(l) + nm;
    }
    return vec_str(v);
}

std::string invariant_report(const tvx::InvariantTable& table, tvx::LatticeVector m1,
                             tvx::LatticeVector m2) {
    std::string line;
    for (const auto& [P, v] : table.by_profile) {
        if (!line.empty()) line += "; ";
        std::string p;
        for (std::size_t i = 0; i < P.size(); ++i) p += (i ? "," : "") + std::to_string(P[i]);
        line += "N_{0,(" + p + ")} = " + v.str();
    }
    for (const auto& [w, v] : table.by_weight) {
        if (!line.empty()) line += "; ";
        std::string p;
        for (std::size_t i = 0; i < w.size(); ++i) p += (i ? "," : "") + weight_name(w[i], m1, m2);
        line += "N_{0,(" + p + ")} = " + v.str();
    }
    if (line.empty()) line = "no invariants extracted";
    line += "\n";
    for (const auto& w : table.undetermined) {
        std::string p;
        for (std::size_t i = 0; i < w.size(); ++i) p += (i ? "," : "") + weight_name(w[i], m1, m2);
        line += "undetermined: N_{0,(" + p + ")}\n";
    }
    return line;
}

std::string mono_str(const tvx::Mono& m, const tvx::SymbolTable& tab) {
    if (m.empty()) return "1";
    std::string out;
    for (const auto& [id, e] : m) {
        if (!out.empty()) out += "*";
        out += tab.name(id);
        if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string basis_report(const tvx::MonomialVectorSystem& sys, tvx::LatticeVector target,
                         tvx::LatticeVector m1, tvx::LatticeVector m2) {
    std::string out = "basis analysis at " + vec_str(target) + ":\n";
    out += "rank = " + std::to_string(sys.rank) + " of " + std::to_string(sys.classes.size()) +
           "\n";
    for (std::size_t i = 0; i < sys.classes.size(); ++i) {
        std::string w;
        for (std::size_t k = 0; k < sys.classes[i].size(); ++k)
            w += (k ? "," : "") + weight_name(sys.classes[i][k], m1, m2);
        out += "class " + std::to_string(i) + ": w = (" + w + "), partitions = " +
               std::to_string(sys.class_sizes[i]) + ", e = " + sys.E[i].str(sys.symbols) + "\n";
    }
    for (const auto& [cls, mono] : sys.pivots)
        out += "pivot: class " + std::to_string(cls) + " certified by " +
               mono_str(mono, sys.symbols) + "\n";
    for (const auto& rel : sys.relations) {
        std::string r;
        for (const auto& [i, cc] : rel) {
            if (!r.empty()) r += " + ";
            r += "(" + cc.str() + ")*e_" + std::to_string(i);
        }
        out += "relation: " + r + " = 0\n";
    }
    for (const auto& [cls, mono] : sys.designated)
        out += "designated: class " + std::to_string(cls) + " -> " + mono_str(mono, sys.symbols) +
               "\n";
    return out;
}

tvx::ScatteringDiagram as_plain(const tvx::PerturbedDiagram& pd) {
    tvx::ScatteringDiagram sd(pd.ring);
    sd.walls = pd.walls;
    return sd;
}

int run_complete(const std::string& input, const std::string& mode, const std::string& format,
                 const std::string& out_path, unsigned seed) {
    tvx::ScatteringDiagram d = tvx::parse_diagram(read_file(input));
    tvx::ScatteringDiagram done;
    if (mode == "perturb") {
        tvx::StandardDiagram sd{d.ring, {}};
        for (const tvx::Wall& w : d.walls) {
            if (w.kind != tvx::WallKind::Line) {
                std::cerr << "error: perturb mode needs a diagram of seed lines\n";
                return 2;
            }
            sd.lines.push_back(w);
        }
        done = tvx::asymptotic(tvx::complete_perturbed(sd, seed));
    } else {
        done = tvx::complete_ks(d);
    }
    std::size_t lines = 0, rays = 0;
    for (const tvx::Wall& w : done.walls) (w.kind == tvx::WallKind::Line ? lines : rays)++;
    if (format == "svg") {
        write_output(out_path, tvx::render_svg(done));
    } else {
        std::string doc = tvx::emit_diagram(done);
        if (format == "text")
            doc = "# completed: " + std::to_string(done.walls.size()) + " walls (" +
                  std::to_string(lines) + " lines, " + std::to_string(rays) + " rays)\n" + doc;
        write_output(out_path, doc);
    }
    return 0;
}

int run_check(const std::string& input, const std::string& out_path) {
    tvx::ScatteringDiagram d = tvx::parse_diagram(read_file(input));
    tvx::ConsistencyReport rep = tvx::check_consistency(d);
    std::string out;
    if (rep.consistent) {
        out = "consistent\n";
    } else {
        out = "inconsistent: " + std::to_string(rep.defects.size()) + " joints\n";
        for (const auto& [p, defect] : rep.defects)
            out += "defect at (" + p.x.str() + "," + p.y.str() + "):\n" + tvx::lie_str(defect);
    }
    write_output(out_path, out);
    return rep.consistent ? 0 : 1;
}

int run_tropical(const std::string& input, const std::string& format, const std::string& out_path,
                 unsigned seed) {
    tvx::CurveType type = tvx::parse_tropical_document(read_file(input));
    tvx::TropicalCount count = tvx::count_tropical(type, seed);
    auto oracle = tvx::oracle_enumerate(type, seed);
    std::string ends;
    for (std::size_t i = 0; i < type.ends.size(); ++i) ends += (i ? "," : "") + vec_str(type.ends[i]);
    if (format == "svg") {
        write_output(out_path, tvx::render_svg(as_plain(count.diagram)));
        return 0;
    }
    std::string out = "N^trop(" + ends + ") = " + count.total.str() + "\n";
    out += "curves: " + std::to_string(count.curves.size()) +
           " (oracle: " + std::to_string(oracle.size()) + ")\n";
    tvx::Rat oracle_total{0};
    for (const auto& h : oracle) oracle_total += tvx::multiplicity(h);
    out += "oracle total: " + oracle_total.str() + "\n";
    if (format == "structured") {
        for (std::size_t i = 0; i < count.curves.size(); ++i) {
            out += "curve " + std::to_string(i) +
                   " mult=" + tvx::multiplicity(count.curves[i]).str() + "\n";
            out += tvx::curve_text(count.curves[i]);
        }
    } else {
        for (std::size_t i = 0; i < count.curves.size(); ++i)
            out += "curve " + std::to_string(i) +
                   ": mult = " + tvx::multiplicity(count.curves[i]).str() + "\n";
    }
    write_output(out_path, out);
    return 0;
}

int run_gw(const std::string& input, int order, unsigned seed, const std::string& out_path) {
    tvx::GwJob job = tvx::parse_gw_document(read_file(input));
    tvx::GwSeed gw_seed = tvx::make_gw_seed(job.l1, job.l2, job.m1, job.m2, order);
    tvx::PerturbedDiagram pd = tvx::complete_perturbed(gw_seed.diagram(), seed);
    tvx::ScatteringDiagram asym = tvx::asymptotic(pd);
    tvx::InvariantTable table = tvx::extract_from_wall(asym, gw_seed, job.ray);
    if (table.by_profile.empty() && table.by_weight.empty())
        std::cerr << "warning: order " << order << " too low: no wall found on ray " +
                         vec_str(job.ray) + "\n";
    std::string out = invariant_report(table, job.m1, job.m2);
    out += basis_report(tvx::analyze_basis(job.l1, job.l2, job.ray, job.m1, job.m2), job.ray,
                        job.m1, job.m2);
    write_output(out_path, out);
    return 0;
}

int run_wcf(const std::string& input, int order, const std::string& out_path) {
    tvx::WcfProblem problem = tvx::parse_groupoid_document(read_file(input));
    std::string out;
    for (int k = 1; k <= order; ++k) {
        tvx::WcfReport rk = tvx::verify_wcf(problem.gd, problem.lhs, problem.rhs, k);
        out += "order " + std::to_string(k) + ": " + (rk.equal ? "ok" : "DEFECT") + "\n";
    }
    tvx::WcfReport rep = tvx::verify_wcf(problem.gd, problem.lhs, problem.rhs, order);
    if (rep.equal) {
        out += "identity holds to order " + std::to_string(order) + "\n";
    } else {
        out += "identity FAILS, first defect at t-order " +
               std::to_string(rep.first_diff_order) + "\n" + rep.detail;
    }
    if (rep.scattering_checked)
        out += std::string("scattering round-trip: ") +
               (rep.scattering_consistent ? "consistent" : "INCONSISTENT") + "\n";
    write_output(out_path, out);
    return rep.equal && (!rep.scattering_checked || rep.scattering_consistent) ? 0 : 1;
}

int run_render(const std::string& input, const std::string& out_path) {
    tvx::ScatteringDiagram d = tvx::parse_diagram(read_file(input));
    write_output(out_path, tvx::render_svg(d));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scattering diagrams valued in the extended tropical vertex group"};
    std::string command, input, mode = "ks", format = "text", out_path;
    int order = 2;
    unsigned seed = 1;
    app.add_option("command", command, "complete|check|tropical|gw|wcf|render")->required();
    app.add_option("input", input, "input document")->required();
    app.add_option("--order", order, "truncation order N")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "seed for generic perturbations");
    app.add_option("--mode", mode, "completion mode")->check(CLI::IsMember({"ks", "perturb"}));
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "structured", "svg"}));
    app.add_option("--out", out_path, "output path (default stdout)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (command == "complete") return run_complete(input, mode, format, out_path, seed);
        if (command == "check") return run_check(input, out_path);
        if (command == "tropical") return run_tropical(input, format, out_path, seed);
        if (command == "gw") return run_gw(input, order, seed, out_path);
        if (command == "wcf") return run_wcf(input, order, out_path);
        if (command == "render") return run_render(input, out_path);
        std::cerr << "error: unknown command '" << command << "'\n";
        return 2;
    } catch (const tvx::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
