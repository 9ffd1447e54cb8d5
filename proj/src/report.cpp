#include "k3moduli/report.hpp"

namespace k3moduli {

const char* const kReportCsvHeader = "n,d,t,D,count,n_classes,determines_type";

Json to_json(const LatticeVector& v) {
    return Json::array({v.x, v.y});
}

Json to_json(const GramForm& g) {
    return Json::array({g.a, g.b, g.c});
}

Json to_json(const MarkedPairClass& c) {
    Json j;
    j["gram"] = to_json(c.gram);
    j["h"] = to_json(c.h);
    j["delta"] = to_json(c.delta);
    j["beta"] = c.beta;
    return j;
}

Json to_json(const DerivedInvariants& iv) {
    Json j;
    j["D"] = iv.D;
    j["g"] = iv.g;
    j["n_tilde"] = iv.n_tilde;
    j["d_tilde"] = iv.d_tilde;
    j["w"] = iv.w;
    j["g1"] = iv.g1;
    j["l1"] = iv.l1;
    j["w_plus"] = iv.w_plus;
    j["w_minus"] = iv.w_minus;
    return j;
}

Json to_json(const GlueDatum& g) {
    Json j;
    j["x"] = g.x;
    j["y"] = g.y;
    j["l"] = g.order;
    j["epsilon"] = g.epsilon;
    return j;
}

Json to_json(const Diagnostics& d, bool agree) {
    Json j;
    j["branch"] = d.branch.empty() ? "skipped" : d.branch;
    j["condition_sets"] = d.condition_sets;
    j["formula_value"] = d.formula_value.empty() ? "skipped" : d.formula_value;
    Json sc;
    sc["solutions"] = d.simplified.solutions;
    sc["classes"] = d.simplified.classes_den == 1
                        ? std::to_string(d.simplified.classes_num)
                        : std::to_string(d.simplified.classes_num) + "/" +
                              std::to_string(d.simplified.classes_den);
    j["simplified_congruence"] = sc;
    j["determines_type"] = d.determines_type;
    j["agree"] = agree;
    if (!d.note.empty())
        j["note"] = d.note;
    return j;
}

Json report_to_json(const CountReport& r) {
    Json j;
    j["n"] = r.query.n;
    j["d"] = r.query.d;
    j["t"] = r.query.t;
    j["D"] = r.inv.D;
    Json counts;
    counts["A"] = r.count_A ? Json(*r.count_A) : Json(nullptr);
    counts["B"] = r.count_B ? Json(*r.count_B) : Json(nullptr);
    counts["C"] = r.count_C ? Json(*r.count_C) : Json(nullptr);
    counts["D"] = r.count_D ? Json(*r.count_D) : Json(nullptr);
    j["counts"] = counts;
    Json classes = Json::array();
    for (const auto& c : r.classes)
        classes.push_back(to_json(c));
    j["classes"] = classes;
    j["invariants"] = to_json(r.inv);
    j["diagnostics"] = to_json(r.diag, r.agree);
    return j;
}

std::string report_csv_row(const CountReport& r) {
    const bool have_classes = r.count_C.has_value() || r.count_D.has_value();
    const long long n_classes =
        have_classes ? static_cast<long long>(r.classes.size()) : r.count();
    std::string row;
    row += std::to_string(r.query.n);
    row += ',';
    row += std::to_string(r.query.d);
    row += ',';
    row += std::to_string(r.query.t);
    row += ',';
    row += std::to_string(r.inv.D);
    row += ',';
    row += std::to_string(r.count());
    row += ',';
    row += std::to_string(n_classes);
    row += ',';
    row += r.diag.determines_type ? '1' : '0';
    return row;
}

namespace {

std::string level_str(const std::optional<long long>& c) {
    return c ? std::to_string(*c) : std::string("-");
}

std::string vec_str(const LatticeVector& v) {
    return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
}

std::string gram_str(const GramForm& g) {
    return "[" + std::to_string(g.a) + ", " + std::to_string(g.b) + ", " +
           std::to_string(g.c) + "]";
}

}  // namespace

void print_report_text(std::ostream& os, const CountReport& r) {
    os << "query: n=" << r.query.n << " d=" << r.query.d << " t=" << r.query.t
       << "  (degree " << r.query.degree() << ", discriminant " << r.inv.D << ")\n";
    os << "counts: A=" << level_str(r.count_A) << " B=" << level_str(r.count_B)
       << " C=" << level_str(r.count_C) << " D=" << level_str(r.count_D)
       << (r.agree ? "" : "  [MISMATCH]") << "\n";
    os << "components: " << r.count() << "\n";
    if (!r.classes.empty()) {
        os << "classes:\n";
        for (const auto& c : r.classes)
            os << "  gram " << gram_str(c.gram) << "  h " << vec_str(c.h) << "  delta "
               << vec_str(c.delta) << "  beta " << c.beta << "\n";
    }
    os << "determines polarization type: " << (r.diag.determines_type ? "yes" : "no")
       << "\n";
    if (!r.diag.branch.empty() && r.diag.branch != "skipped") {
        os << "closed form: branch " << r.diag.branch << ", value "
           << r.diag.formula_value;
        if (!r.diag.condition_sets.empty()) {
            os << ", sets";
            for (const auto& s : r.diag.condition_sets)
                os << " " << s;
        }
        os << "\n";
    }
    if (!r.diag.note.empty())
        os << "note: " << r.diag.note << "\n";
}

void print_invariants_text(std::ostream& os, const ModuliQuery& q,
                           const DerivedInvariants& iv) {
    os << "n=" << q.n << " d=" << q.d << " t=" << q.t << "\n"
       << "D=" << iv.D << " g=" << iv.g << " n_tilde=" << iv.n_tilde
       << " d_tilde=" << iv.d_tilde << " w=" << iv.w << " g1=" << iv.g1
       << " l1=" << iv.l1 << " w_plus=" << iv.w_plus << " w_minus=" << iv.w_minus
       << "\n";
}

void print_classes_text(std::ostream& os, const std::vector<MarkedPairClass>& classes) {
    os << classes.size() << " class" << (classes.size() == 1 ? "" : "es") << "\n";
    for (const auto& c : classes)
        os << "  gram " << gram_str(c.gram) << "  h " << vec_str(c.h) << "  delta "
           << vec_str(c.delta) << "  beta " << c.beta << "\n";
}

std::string dump_json(const Json& j) {
    return j.dump(2) + "\n";
}

}  // namespace k3moduli
