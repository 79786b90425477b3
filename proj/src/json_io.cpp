#include "apmub/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace apmub {

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw DomainError("json: " + what);
}

Int get_int(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) bad(std::string("missing integer '") + key + "'");
    return j[key].get<Int>();
}

}  // namespace

Json rational_to_json(const Rational& r) { return Json{{"num", r.num()}, {"den", r.den()}}; }

Rational rational_from_json(const Json& j) {
    return Rational(get_int(j, "num"), get_int(j, "den"));
}

Json mols_to_json(const MolsSet& set) {
    Json squares = Json::array();
    for (const auto& sq : set.squares) squares.push_back(sq.cells);
    return Json{{"order", set.order}, {"squares", squares}};
}

MolsSet mols_from_json(const Json& j) {
    MolsSet set;
    set.order = get_int(j, "order");
    if (!j.contains("squares") || !j["squares"].is_array()) bad("missing 'squares' array");
    for (const auto& cells : j["squares"]) {
        LatinSquare sq;
        sq.order = set.order;
        sq.cells = cells.get<std::vector<std::vector<Int>>>();
        if (!is_latin(sq)) bad("a square is not Latin");
        set.squares.push_back(std::move(sq));
    }
    return set;
}

Json design_to_json(const ResolvableDesign& design) {
    Json classes = Json::array();
    for (const auto& cls : design.classes) {
        Json blocks = Json::array();
        for (const auto& b : cls.blocks) blocks.push_back(b.elements);
        classes.push_back(blocks);
    }
    return Json{{"d", design.d}, {"classes", classes}};
}

ResolvableDesign design_from_json(const Json& j) {
    ResolvableDesign design;
    design.d = get_int(j, "d");
    if (!j.contains("classes") || !j["classes"].is_array()) bad("missing 'classes' array");
    for (const auto& cls : j["classes"]) {
        ParallelClass pc;
        for (const auto& b : cls) pc.blocks.push_back(Block{b.get<std::vector<Int>>()});
        design.classes.push_back(std::move(pc));
    }
    return design;
}

namespace {

Json phase_to_json(const PhaseEntry& e) {
    return Json{{"zero", e.zero}, {"num", e.num}, {"den", e.den}};
}

PhaseEntry phase_from_json(const Json& j, bool allow_zero) {
    PhaseEntry e;
    e.zero = j.contains("zero") && j["zero"].is_boolean() && j["zero"].get<bool>();
    if (e.zero && !allow_zero) bad("zero phase where a unit phase is required");
    if (e.zero) return phase_zero();
    return phase_of(get_int(j, "num"), get_int(j, "den"));
}

}  // namespace

Json scaffold_to_json(const UnitaryScaffold& h) {
    Json entries = Json::array();
    for (const auto& row : h.entries) {
        Json jrow = Json::array();
        for (const auto& e : row) jrow.push_back(phase_to_json(e));
        entries.push_back(jrow);
    }
    return Json{{"k", h.k},
                {"kind", h.kind == ScaffoldKind::real ? "real" : "complex"},
                {"entries", entries}};
}

UnitaryScaffold scaffold_from_json(const Json& j) {
    UnitaryScaffold h;
    h.k = get_int(j, "k");
    if (!j.contains("kind") || !j["kind"].is_string()) bad("missing 'kind'");
    std::string kind = j["kind"].get<std::string>();
    if (kind != "real" && kind != "complex") bad("kind must be 'real' or 'complex'");
    h.kind = kind == "real" ? ScaffoldKind::real : ScaffoldKind::complex_kind;
    if (!j.contains("entries") || !j["entries"].is_array()) bad("missing 'entries'");
    for (const auto& jrow : j["entries"]) {
        std::vector<PhaseEntry> row;
        for (const auto& je : jrow) row.push_back(phase_from_json(je, false));
        h.entries.push_back(std::move(row));
    }
    if (static_cast<Int>(h.entries.size()) != h.k) bad("entry rows do not match k");
    for (const auto& row : h.entries)
        if (static_cast<Int>(row.size()) != h.k) bad("entry columns do not match k");
    return h;
}

Json collection_to_json(const MubCollection& m) {
    Json bases = Json::array();
    for (const auto& basis : m.bases) {
        Json jbasis = Json::array();
        for (const auto& v : basis) {
            Json phases = Json::array();
            for (const auto& p : v.phases) phases.push_back(Json{{"num", p.num}, {"den", p.den}});
            jbasis.push_back(Json{{"support", v.support}, {"phases", phases}});
        }
        bases.push_back(jbasis);
    }
    return Json{{"d", m.d}, {"k", m.k}, {"bases", bases}};
}

MubCollection collection_from_json(const Json& j) {
    MubCollection m;
    m.d = get_int(j, "d");
    m.k = get_int(j, "k");
    if (!j.contains("bases") || !j["bases"].is_array()) bad("missing 'bases'");
    for (const auto& jbasis : j["bases"]) {
        Basis basis;
        for (const auto& jv : jbasis) {
            BasisVector v;
            v.d = m.d;
            if (!jv.contains("support") || !jv["support"].is_array()) bad("vector without support");
            v.support = jv["support"].get<std::vector<Int>>();
            if (!jv.contains("phases") || !jv["phases"].is_array()) bad("vector without phases");
            for (const auto& jp : jv["phases"]) v.phases.push_back(phase_from_json(jp, false));
            if (v.phases.size() != v.support.size()) bad("phase count does not match support");
            basis.push_back(std::move(v));
        }
        m.bases.push_back(std::move(basis));
    }
    return m;
}

Json report_to_json(const SpectrumReport& report) {
    Json delta = Json::array();
    for (const auto& v : report.delta_sq) delta.push_back(rational_to_json(v));
    Json j{{"d", report.d},
           {"k", report.k},
           {"r", report.r},
           {"classification", classification_name(report.classification)},
           {"structural_ok", report.structural_ok},
           {"orthonormal", report.orthonormal},
           {"exact", report.exact},
           {"delta_sq", delta},
           {"beta", report.beta_double},
           {"epsilon", rational_to_json(report.epsilon)},
           {"uniform_counts", report.uniform_counts},
           {"issues", report.issues}};
    if (report.beta2) j["beta2"] = rational_to_json(*report.beta2);
    if (!report.delta_float.empty()) j["delta_float"] = report.delta_float;
    if (report.uniform_counts) {
        j["t1"] = report.t1;
        j["t2"] = report.t2;
        j["n1"] = report.n1;
        j["n2"] = report.n2;
    }
    if (report.lambda_estimate) j["lambda_estimate"] = *report.lambda_estimate;
    return j;
}

Json plan_to_json(const ConstructionPlan& plan) {
    Json j{{"method",
            plan.method == ConstructionPlan::Method::mols_lower_bound ? "mols_lower_bound"
                                                                      : "qef_reshape"},
           {"d", plan.d},
           {"k", plan.k},
           {"s", plan.s},
           {"e", plan.e},
           {"f", plan.f},
           {"r", plan.r},
           {"beta2", rational_to_json(plan.beta2)},
           {"beta", std::sqrt(plan.beta2.to_double())},
           {"delta_hi_sq", rational_to_json(plan.delta_hi_sq)},
           {"epsilon", rational_to_json(plan.epsilon)},
           {"via_macneish", plan.via_macneish},
           {"note", plan.note}};
    if (plan.q > 0) j["q"] = plan.q;
    return j;
}

Json weighing_to_json(const WeighingMatrix& w) {
    Json entries = Json::array();
    for (const auto& row : w.entries) {
        Json jrow = Json::array();
        for (const auto& e : row) jrow.push_back(phase_to_json(e));
        entries.push_back(jrow);
    }
    return Json{{"order", w.order}, {"weight", w.weight}, {"entries", entries}};
}

std::string fnv1a64_hex(const std::string& bytes) {
    uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write file: " + path);
    out << bytes;
}

}  // namespace apmub
