// Command-line front end: single queries, grid tables, disconnectedness
// search and verification suites, with CSV/JSON/text emission.

#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "k3moduli/counting.hpp"
#include "k3moduli/report.hpp"

namespace {

using namespace k3moduli;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

struct OutputTarget {
    std::ostream* os = &std::cout;
    std::ofstream file;

    bool open(const std::string& path) {
        if (path.empty())
            return true;
        file.open(path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot open output path '" << path << "'\n";
            return false;
        }
        os = &file;
        return true;
    }
};

LevelSet parse_levels(const std::string& spec) {
    LevelSet s;
    for (char ch : spec) {
        switch (ch) {
            case 'A': case 'a': s.A = true; break;
            case 'B': case 'b': s.B = true; break;
            case 'C': case 'c': s.C = true; break;
            case 'D': case 'd': s.D = true; break;
            case ',': case ' ': break;
            default:
                throw CLI::ValidationError("--levels", "unknown level '" +
                                                           std::string(1, ch) + "'");
        }
    }
    if (!s.any())
        throw CLI::ValidationError("--levels", "at least one level required");
    return s;
}

// The CLI owns all parallelism: whole queries are handed to workers and the
// results merged in input order, so output bytes do not depend on the worker
// count.
template <typename Fn>
void parallel_for(size_t count, unsigned workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned nthreads = std::min<size_t>(workers, count);
    pool.reserve(nthreads);
    for (unsigned k = 0; k < nthreads; ++k) {
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                fn(i);
            }
        });
    }
    for (auto& th : pool)
        th.join();
}

unsigned default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

bool check_query(const ModuliQuery& q) {
    if (q.is_valid())
        return true;
    std::cerr << "error: invalid query n=" << q.n << " d=" << q.d << " t=" << q.t
              << ": need n >= 2, d >= 1 and t | gcd(2d, 2n-2) = "
              << std::gcd(2 * q.d, 2 * q.n - 2) << "\n";
    return false;
}

int cmd_count(const ModuliQuery& q, const LevelSet& levels, const std::string& format,
              OutputTarget& out) {
    if (!check_query(q))
        return kExitUsage;
    const CountReport r = cross_check(q, levels);
    if (format == "json") {
        Json j = report_to_json(r);
        Json doc;
        doc["schema"] = 1;
        for (auto& [k, v] : j.items())
            doc[k] = v;
        *out.os << dump_json(doc);
    } else if (format == "csv") {
        *out.os << kReportCsvHeader << "\n" << report_csv_row(r) << "\n";
    } else {
        print_report_text(*out.os, r);
    }
    out.os->flush();
    return r.agree ? kExitOk : kExitMismatch;
}

int cmd_invariants(const ModuliQuery& q, const std::string& format, OutputTarget& out) {
    if (!check_query(q))
        return kExitUsage;
    const DerivedInvariants iv = derive_invariants(q);
    if (format == "json") {
        Json doc;
        doc["schema"] = 1;
        doc["n"] = q.n;
        doc["d"] = q.d;
        doc["t"] = q.t;
        const Json jiv = to_json(iv);
        for (const auto& [k, v] : jiv.items())
            doc[k] = v;
        *out.os << dump_json(doc);
    } else if (format == "csv") {
        *out.os << "n,d,t,D,g,n_tilde,d_tilde,w,g1,l1,w_plus,w_minus\n"
                << q.n << ',' << q.d << ',' << q.t << ',' << iv.D << ',' << iv.g << ','
                << iv.n_tilde << ',' << iv.d_tilde << ',' << iv.w << ',' << iv.g1 << ','
                << iv.l1 << ',' << iv.w_plus << ',' << iv.w_minus << "\n";
    } else {
        print_invariants_text(*out.os, q, iv);
    }
    out.os->flush();
    return kExitOk;
}

int cmd_classes(const ModuliQuery& q, bool explain, const std::string& format,
                OutputTarget& out) {
    if (!check_query(q))
        return kExitUsage;
    const ClassCount cc = lattice_count_via_glue(q);
    const auto graphs = enumerate_isotropic_graphs(q);
    if (format == "json") {
        Json doc;
        doc["schema"] = 1;
        doc["n"] = q.n;
        doc["d"] = q.d;
        doc["t"] = q.t;
        doc["count"] = cc.count;
        Json classes = Json::array();
        for (const auto& c : cc.classes)
            classes.push_back(to_json(c));
        doc["classes"] = classes;
        if (explain) {
            Json glues = Json::array();
            for (const auto& g : graphs)
                glues.push_back(to_json(g));
            doc["glues"] = glues;
            Json gclasses = Json::array();
            for (const auto& cls : graph_equivalence_classes(q, graphs)) {
                Json eps = Json::array();
                for (const auto& g : cls)
                    eps.push_back(g.epsilon);
                gclasses.push_back(eps);
            }
            doc["glue_classes"] = gclasses;
        }
        *out.os << dump_json(doc);
    } else {
        print_classes_text(*out.os, cc.classes);
        if (explain) {
            *out.os << graphs.size() << " isotropic glue"
                    << (graphs.size() == 1 ? "" : "s") << "\n";
            for (const auto& g : graphs)
                *out.os << "  x=" << g.x << " y=" << g.y << " l=" << g.order
                        << " epsilon=" << g.epsilon << "\n";
            *out.os << "glue classes (by epsilon):";
            for (const auto& cls : graph_equivalence_classes(q, graphs)) {
                *out.os << " {";
                for (size_t i = 0; i < cls.size(); ++i)
                    *out.os << (i ? " " : "") << cls[i].epsilon;
                *out.os << "}";
            }
            *out.os << "\n";
        }
    }
    out.os->flush();
    return kExitOk;
}

int cmd_table(const GridBounds& bounds, const LevelSet& levels, bool paranoid,
              unsigned workers, const std::string& format, OutputTarget& out) {
    const auto queries = grid_queries(bounds);
    std::vector<CountReport> reports(queries.size());
    parallel_for(queries.size(), workers, [&](size_t i) {
        LevelSet ls = paranoid ? LevelSet::all() : levels;
        // spot confirmation of the closed form on a deterministic 5% sample
        if (!paranoid && i % 20 == 0)
            ls.B = true;
        reports[i] = cross_check(queries[i], ls);
    });
    bool all_agree = true;
    for (const auto& r : reports) {
        if (!r.agree) {
            all_agree = false;
            std::cerr << "warning: level mismatch at n=" << r.query.n
                      << " d=" << r.query.d << " t=" << r.query.t << "\n";
        }
    }
    if (format == "json") {
        Json doc;
        doc["schema"] = 1;
        Json rows = Json::array();
        for (const auto& r : reports)
            rows.push_back(report_to_json(r));
        doc["rows"] = rows;
        *out.os << dump_json(doc);
    } else if (format == "csv") {
        *out.os << kReportCsvHeader << "\n";
        for (const auto& r : reports)
            *out.os << report_csv_row(r) << "\n";
    } else {
        for (const auto& r : reports)
            *out.os << r.query.n << " " << r.query.d << " " << r.query.t << "  D="
                    << r.inv.D << "  count=" << r.count() << "\n";
    }
    out.os->flush();
    return all_agree ? kExitOk : kExitMismatch;
}

int cmd_search(const GridBounds& bounds, long long min_count, unsigned workers,
               const std::string& format, OutputTarget& out) {
    // fan out whole (n, d) cells; each worker runs the cheap closed form and
    // confirms its own candidates, results are merged and re-sorted
    std::vector<std::pair<long long, long long>> cells;
    for (long long n = 2; n <= bounds.max_n; ++n)
        for (long long d = 1; d <= bounds.max_d; ++d)
            cells.push_back({n, d});
    std::vector<std::vector<SearchHit>> partial(cells.size());
    parallel_for(cells.size(), workers, [&](size_t i) {
        const auto [n, d] = cells[i];
        for (long long t : valid_divisibilities(n, d)) {
            const ModuliQuery q{n, d, t};
            if (closed_form_count(q) < min_count)
                continue;
            const long long confirmed = glue_count(q).count;
            if (confirmed >= min_count)
                partial[i].push_back({q, confirmed});
        }
    });
    std::vector<SearchHit> hits;
    for (auto& p : partial)
        hits.insert(hits.end(), p.begin(), p.end());
    std::sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
        if (a.count != b.count)
            return a.count > b.count;
        return a.query < b.query;
    });
    if (format == "json") {
        Json doc;
        doc["schema"] = 1;
        Json arr = Json::array();
        for (const auto& h : hits) {
            Json j;
            j["n"] = h.query.n;
            j["d"] = h.query.d;
            j["t"] = h.query.t;
            j["count"] = h.count;
            arr.push_back(j);
        }
        doc["hits"] = arr;
        *out.os << dump_json(doc);
    } else if (format == "csv") {
        *out.os << "n,d,t,count\n";
        for (const auto& h : hits)
            *out.os << h.query.n << ',' << h.query.d << ',' << h.query.t << ','
                    << h.count << "\n";
    } else {
        *out.os << hits.size() << " queries with count >= " << min_count << "\n";
        for (const auto& h : hits)
            *out.os << "  n=" << h.query.n << " d=" << h.query.d << " t=" << h.query.t
                    << "  count=" << h.count << "\n";
    }
    out.os->flush();
    return kExitOk;
}

const char* case_name(ConnectedCase c) {
    switch (c) {
        case ConnectedCase::SplitT1: return "t=1";
        case ConnectedCase::NonSplitT2: return "t=2";
        case ConnectedCase::OddPrimePower: return "t=p^a";
    }
    return "?";
}

struct SuiteResult {
    std::string name;
    long long checked = 0;
    std::vector<std::string> failures;
};

SuiteResult run_suite_cor25(const GridBounds& bounds, const LevelSet& levels,
                            unsigned workers) {
    SuiteResult res{"cor25", 0, {}};
    const auto cases = connected_case_queries(bounds);
    std::vector<std::string> fail(cases.size());
    parallel_for(cases.size(), workers, [&](size_t i) {
        const auto& [q, which] = cases[i];
        const CountReport r = cross_check(q, levels);
        const long long worst = std::max({r.count_A.value_or(0), r.count_B.value_or(0),
                                          r.count_C.value_or(0), r.count_D.value_or(0)});
        if (worst >= 2) {
            fail[i] = "case " + std::string(case_name(which)) + " n=" +
                      std::to_string(q.n) + " d=" + std::to_string(q.d) + " t=" +
                      std::to_string(q.t) + " count=" + std::to_string(worst);
        }
    });
    res.checked = static_cast<long long>(cases.size());
    for (const auto& f : fail)
        if (!f.empty())
            res.failures.push_back(f);
    return res;
}

SuiteResult run_suite_prop22(const GridBounds& bounds, unsigned workers) {
    SuiteResult res{"prop22", 0, {}};
    const auto queries = grid_queries(bounds);
    std::vector<std::string> fail(queries.size());
    std::atomic<long long> checked{0};
    parallel_for(queries.size(), workers, [&](size_t i) {
        const ModuliQuery& q = queries[i];
        const ClassCount cc = lattice_count_via_glue(q);
        checked.fetch_add(1);
        for (const auto& cls : cc.classes) {
            if (cls.beta != q.t || cls.gram.norm(cls.delta) != q.codegree()) {
                fail[i] = "n=" + std::to_string(q.n) + " d=" + std::to_string(q.d) +
                          " t=" + std::to_string(q.t) + " beta=" +
                          std::to_string(cls.beta) + " Q(delta)=" +
                          std::to_string(cls.gram.norm(cls.delta));
                return;
            }
        }
    });
    res.checked = checked.load();
    for (const auto& f : fail)
        if (!f.empty())
            res.failures.push_back(f);
    return res;
}

SuiteResult run_suite_cross(const GridBounds& bounds, unsigned workers) {
    SuiteResult res{"cross", 0, {}};
    const auto queries = grid_queries(bounds);
    std::vector<std::string> fail(queries.size());
    parallel_for(queries.size(), workers, [&](size_t i) {
        const CountReport r = cross_check(queries[i], LevelSet::all());
        if (!r.agree) {
            fail[i] = "n=" + std::to_string(r.query.n) + " d=" +
                      std::to_string(r.query.d) + " t=" + std::to_string(r.query.t) +
                      " counts A=" + std::to_string(r.count_A.value_or(-1)) + " B=" +
                      std::to_string(r.count_B.value_or(-1)) + " C=" +
                      std::to_string(r.count_C.value_or(-1)) + " D=" +
                      std::to_string(r.count_D.value_or(-1));
        }
    });
    res.checked = static_cast<long long>(queries.size());
    for (const auto& f : fail)
        if (!f.empty())
            res.failures.push_back(f);
    return res;
}

int cmd_verify(const std::string& suite, const GridBounds& bounds,
               const LevelSet& levels, unsigned workers, const std::string& format,
               OutputTarget& out) {
    std::vector<SuiteResult> results;
    if (suite == "cor25" || suite == "all")
        results.push_back(run_suite_cor25(bounds, levels, workers));
    if (suite == "prop22" || suite == "all")
        results.push_back(run_suite_prop22(bounds, workers));
    if (suite == "cross" || suite == "all")
        results.push_back(run_suite_cross(bounds, workers));
    if (results.empty()) {
        std::cerr << "error: unknown suite '" << suite
                  << "' (expected cor25, prop22, cross or all)\n";
        return kExitUsage;
    }
    bool ok = true;
    for (const auto& r : results)
        ok = ok && r.failures.empty();
    if (format == "json") {
        Json doc;
        doc["schema"] = 1;
        Json arr = Json::array();
        for (const auto& r : results) {
            Json j;
            j["suite"] = r.name;
            j["checked"] = r.checked;
            j["counterexamples"] = r.failures;
            arr.push_back(j);
        }
        doc["suites"] = arr;
        doc["ok"] = ok;
        *out.os << dump_json(doc);
    } else {
        for (const auto& r : results) {
            *out.os << "suite " << r.name << ": checked " << r.checked << ", "
                    << r.failures.size() << " counterexample"
                    << (r.failures.size() == 1 ? "" : "s") << "\n";
            for (const auto& f : r.failures)
                *out.os << "  " << f << "\n";
        }
        *out.os << (ok ? "OK" : "FAILED") << "\n";
    }
    out.os->flush();
    return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Connected components of moduli spaces of polarized"
                 " K3^[n]-type manifolds, counted through rank-2 lattice"
                 " monodromy invariants"};
    app.require_subcommand(1);

    long long n = 0, d = 0, t = 0;
    long long max_n = 2, max_d = 1, min_count = 2;
    std::string levels_spec = "A,B,C,D";
    std::string table_levels_spec = "A";
    std::string format = "text";
    std::string out_path;
    std::string suite = "all";
    bool paranoid = false;
    bool explain = false;
    unsigned workers = default_workers();

    auto add_query_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "dimension parameter n (dim = 2n)")->required();
        cmd->add_option("--d", d, "half-degree d (degree 2d)")->required();
        cmd->add_option("--t", t, "divisibility")->required();
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: json|csv|text")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        cmd->add_option("--out", out_path, "write output to PATH instead of stdout");
    };
    auto add_grid_flags = [&](CLI::App* cmd) {
        cmd->add_option("--max-n", max_n, "scan n in [2, max-n]")->required();
        cmd->add_option("--max-d", max_d, "scan d in [1, max-d]")->required();
        cmd->add_option("--workers", workers, "worker thread count");
    };

    CLI::App* count = app.add_subcommand("count", "count components for one query");
    add_query_flags(count);
    add_common(count);
    count->add_option("--levels", levels_spec, "levels to run, e.g. A,B,C,D");

    CLI::App* invariants =
        app.add_subcommand("invariants", "print derived invariants for one query");
    add_query_flags(invariants);
    add_common(invariants);

    CLI::App* classes =
        app.add_subcommand("classes", "list marked-pair class representatives");
    add_query_flags(classes);
    add_common(classes);
    classes->add_flag("--explain", explain, "include glue data and glue classes");

    CLI::App* table = app.add_subcommand("table", "count over a full (n, d, t) grid");
    add_grid_flags(table);
    add_common(table);
    table->add_option("--levels", table_levels_spec, "levels to run per row (default A)");
    table->add_flag("--paranoid", paranoid, "run all four levels on every row");

    CLI::App* search =
        app.add_subcommand("search", "find queries with at least min-count components");
    add_grid_flags(search);
    add_common(search);
    search->add_option("--min-count", min_count, "report counts >= this (default 2)");

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "cor25|prop22|cross|all")->required();
    add_grid_flags(verify);
    add_common(verify);
    verify->add_option("--levels", levels_spec, "levels for the cor25 suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    OutputTarget out;
    if (!out.open(out_path))
        return kExitUsage;

    try {
        if (count->parsed())
            return cmd_count({n, d, t}, parse_levels(levels_spec), format, out);
        if (invariants->parsed())
            return cmd_invariants({n, d, t}, format, out);
        if (classes->parsed())
            return cmd_classes({n, d, t}, explain, format, out);
        if (table->parsed())
            return cmd_table({max_n, max_d}, parse_levels(table_levels_spec), paranoid,
                             workers, format, out);
        if (search->parsed())
            return cmd_search({max_n, max_d}, min_count, workers, format, out);
        if (verify->parsed())
            return cmd_verify(suite, {max_n, max_d}, parse_levels(levels_spec), workers,
                              format, out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    }
    return kExitUsage;
}
