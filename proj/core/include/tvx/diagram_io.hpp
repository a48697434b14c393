#pragma once

// Structured text documents for diagrams, groupoid identities, tropical jobs
// and GW jobs, plus SVG rendering.  One human-readable format everywhere so
// that golden files diff cleanly; parse(emit(d)) is the identity and emitting
// a parsed canonical document reproduces it byte for byte.

#include <stdexcept>
#include <string>

#include "tvx/scattering.hpp"
#include "tvx/tropical.hpp"
#include "tvx/wcf2d4d.hpp"

namespace tvx {

struct ParseError : std::runtime_error {
    int line = 0;
    int col = 0;
    ParseError(int line, int col, const std::string& msg);
};

// Diagram document: one `ring { ... }` block followed by `wall { ... }`
// blocks (kind, base, dir, and a `log { ... }` list of Lie-element term
// lines in the canonical formal-series format).
ScatteringDiagram parse_diagram(const std::string& document);
std::string emit_diagram(const ScatteringDiagram& d);

// Lie element from canonical term lines (the exact output of lie_str).
LieElement parse_lie(const std::string& text, RingPtr ring);

// Groupoid identity document: a `groupoid { ... }` block (objects, dirac,
// omega, optional e/mu/angle entries) and an `identity { ... }` block with
// `lhs = ...` / `rhs = ...` factor words.
struct WcfProblem {
    GroupoidData gd;
    std::vector<WcfFactor> lhs, rhs;
};
WcfProblem parse_groupoid_document(const std::string& document);

// `tropical { ends = (a,b) (c,d) ... }`
CurveType parse_tropical_document(const std::string& document);

// `gw { l1 = ..  l2 = ..  m1 = (a,b)  m2 = (c,d)  ray = (p,q) }`
struct GwJob {
    int l1 = 1;
    int l2 = 0;
    LatticeVector m1{0, 1};
    LatticeVector m2{1, 0};
    LatticeVector ray{0, 0};
};
GwJob parse_gw_document(const std::string& document);

// Walls as segments/rays coloured by slope class.
std::string render_svg(const ScatteringDiagram& d);

// Tropical curve exports: SVG with weight labels, and a line-oriented
// adjacency listing (vertex/edge/end records).
std::string curve_svg(const TropicalCurve& h);
std::string curve_text(const TropicalCurve& h);

}  // namespace tvx
