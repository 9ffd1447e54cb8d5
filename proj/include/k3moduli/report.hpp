#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "k3moduli/counting.hpp"

namespace k3moduli {

// All emitters produce byte-stable output: key order is fixed, values are
// integers, exact rational strings or booleans. Top-level documents carry
// "schema": 1.

using Json = nlohmann::ordered_json;

Json to_json(const LatticeVector& v);
Json to_json(const GramForm& g);
Json to_json(const MarkedPairClass& c);
Json to_json(const DerivedInvariants& iv);
Json to_json(const GlueDatum& g);
Json to_json(const Diagnostics& d, bool agree);

/// {n, d, t, D, counts: {A, B, C, D}, classes: [...], diagnostics: {...}};
/// skipped levels serialize as null.
Json report_to_json(const CountReport& r);

/// One CSV row: n,d,t,D,count,n_classes,determines_type (no quoting).
std::string report_csv_row(const CountReport& r);
extern const char* const kReportCsvHeader;

void print_report_text(std::ostream& os, const CountReport& r);
void print_invariants_text(std::ostream& os, const ModuliQuery& q,
                           const DerivedInvariants& iv);
void print_classes_text(std::ostream& os, const std::vector<MarkedPairClass>& classes);

std::string dump_json(const Json& j);  ///< 2-space indent, trailing newline

}  // namespace k3moduli
