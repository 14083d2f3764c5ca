// contagion: command-line front end for the edge-deletion solvers and experiment sweeps.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "contagion/contagion.hpp"
#include "contagion/decomposition.hpp"
#include "contagion/experiments.hpp"
#include "contagion/oracle.hpp"

namespace {

using namespace contagion;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0, kExitUsage = 1, kExitGuard = 2, kExitVerification = 3;

struct Globals {
    RngSeed seed = 1;
    std::string format; // default: json for single results, csv for sweeps
    std::string out;
    unsigned threads = 1;
};

void emit(const Globals& g, const std::string& content) {
    if (g.out.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot open '" + g.out + "' for writing");
    f << content;
    if (!f) throw Error(ErrorKind::IoError, "write to '" + g.out + "' failed");
}

std::ifstream open_input(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
    return f;
}

Graph load_graph(const std::string& path) {
    auto f = open_input(path);
    return read_edge_list(f);
}

VertexSet load_set(const std::string& path, std::size_t n) {
    auto f = open_input(path);
    return VertexSet::of(n, read_vertex_list(f, n));
}

Json edges_json(const std::vector<Edge>& edges) {
    Json arr = Json::array();
    for (const Edge& e : edges) arr.push_back({e.u, e.v});
    return arr;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string problem, graph, seeds, protected_file, thresholds_file;
    std::uint32_t r = 2;
    std::size_t slack = 0;
    std::string method = "tw";
    std::optional<std::size_t> budget_hint;
    std::size_t batches = 50;
};

int run_solve(const Globals& g, const SolveArgs& a) {
    Graph graph = load_graph(a.graph);
    const std::size_t n = graph.num_vertices();
    VertexSet seeds = load_set(a.seeds, n);
    ThresholdMap t(n, a.r);
    if (!a.thresholds_file.empty()) {
        auto f = open_input(a.thresholds_file);
        t = read_threshold_file(f, n, a.r);
    }
    DeletionSolution sol;
    std::size_t protected_count = 0;
    if (a.problem == "min") {
        MinContagionInstance inst{graph, seeds, t, a.slack};
        inst.validate();
        if (a.method == "brute") {
            sol = bruteforce_edge_deletion(inst);
        } else if (a.method == "tw") {
            sol = solve_min_contagion_tw(inst);
        } else {
            const RngSeed s = derive_seed(g.seed, "cli-random");
            if (a.budget_hint) {
                sol = solve_randomized_fpt(inst, a.slack, *a.budget_hint, a.batches, s);
            } else {
                // No hint: raise the deletion parameter until some batch succeeds.
                for (std::size_t t_param = 0;; ++t_param) {
                    try {
                        sol = solve_randomized_fpt(inst, a.slack, t_param, a.batches, derive_seed(s, "t", {t_param}));
                        break;
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::NoSolutionFound) throw;
                    }
                }
            }
        }
    } else {
        if (a.method == "random") throw Error(ErrorKind::InvalidInput, "--method random only applies to the min problem");
        VertexSet prot(n);
        if (!a.protected_file.empty()) prot = load_set(a.protected_file, n);
        protected_count = prot.size();
        StopContagionInstance inst{graph, seeds, prot, t};
        inst.validate();
        sol = a.method == "brute" ? bruteforce_edge_deletion(inst) : solve_stop_contagion_tw(inst);
    }

    if (g.format == "json") {
        Json j;
        j["problem"] = a.problem;
        j["method"] = a.method;
        j["n"] = n;
        j["m"] = graph.num_edges();
        j["deleted_edges"] = edges_json(sol.deleted_edges);
        j["additional_infected"] = sol.additional_infected;
        if (a.problem == "stop") {
            j["protected"] = protected_count;
            j["protected_infected"] = sol.protected_infected;
        } else {
            j["slack"] = a.slack;
        }
        j["budget"] = sol.deleted_edges.size();
        j["optimal"] = sol.optimal;
        j["verified"] = true;
        emit(g, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "problem,method,n,m,budget,additional_infected,protected_infected,optimal,verified,deleted_edges\n";
        out << a.problem << ',' << a.method << ',' << n << ',' << graph.num_edges() << ',' << sol.deleted_edges.size()
            << ',' << sol.additional_infected << ',' << sol.protected_infected << ',' << (sol.optimal ? 1 : 0) << ",1,";
        for (std::size_t i = 0; i < sol.deleted_edges.size(); ++i)
            out << (i ? ";" : "") << sol.deleted_edges[i].u << '-' << sol.deleted_edges[i].v;
        out << '\n';
        emit(g, out.str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

int run_generate(const Globals& g, const std::string& spec) {
    Graph graph = ModelSpec::parse(spec).generate(g.seed);
    std::ostringstream out;
    write_edge_list(out, graph);
    emit(g, out.str());
    return kExitOk;
}

int run_treewidth(const Globals& g, const std::string& path, const std::string& strategy, const std::string& td_out) {
    Graph graph = load_graph(path);
    TreeDecomposition td;
    bool exact = false;
    if (strategy == "minfill") {
        td = heuristic_decomposition(graph, EliminationStrategy::MinFill);
    } else if (strategy == "mindegree") {
        td = heuristic_decomposition(graph, EliminationStrategy::MinDegree);
    } else {
        td = exact_treewidth_small(graph, 20).decomposition;
        exact = true;
    }
    auto report = validate(graph, td);
    if (!report.ok()) throw Error(ErrorKind::VerificationFailed, "decomposition invalid: " + report.message);
    auto nice = make_nice(graph, td);
    if (!validate_nice(graph, nice).ok()) throw Error(ErrorKind::VerificationFailed, "nice conversion invalid");
    auto est = treewidth_estimate(graph);
    if (!td_out.empty()) {
        std::ofstream f(td_out, std::ios::binary);
        if (!f) throw Error(ErrorKind::IoError, "cannot open '" + td_out + "' for writing");
        write_decomposition(f, td);
    }
    if (g.format == "json") {
        Json j;
        j["n"] = graph.num_vertices();
        j["m"] = graph.num_edges();
        j["strategy"] = strategy;
        j["width"] = td.width();
        j["exact"] = exact || (est.exact && est.value == td.width());
        j["lower_bound"] = est.lower;
        j["bags"] = td.bags.size();
        j["nice_nodes"] = nice.nodes.size();
        j["valid"] = true;
        emit(g, j.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "n,m,strategy,width,exact,lower_bound,bags,nice_nodes,valid\n"
            << graph.num_vertices() << ',' << graph.num_edges() << ',' << strategy << ',' << td.width() << ','
            << ((exact || (est.exact && est.value == td.width())) ? 1 : 0) << ',' << est.lower << ',' << td.bags.size()
            << ',' << nice.nodes.size() << ",1\n";
        emit(g, out.str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
    std::vector<std::string> models;
    std::vector<std::size_t> ks;
    std::size_t trials = 0;
    std::uint32_t r = 2;
    double ceiling = 10.0;
};

template <class Rows>
std::string rows_csv(const Rows& rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
}

int run_localtw(const Globals& g, const SweepArgs& a) {
    LocalTwConfig cfg{a.models, a.ks, a.trials ? a.trials : 200, g.seed, g.threads};
    auto res = experiment_local_tw(cfg);
    Json cells = Json::array();
    for (const auto& c : res.cells)
        cells.push_back({{"model", c.model}, {"n", c.n}, {"d", c.d}, {"k", c.k}, {"mean_width", c.mean_width},
                         {"max_width", c.max_width}, {"exact_fraction", c.exact_fraction}, {"x", c.x}, {"c_fit", c.c_fit}});
    if (g.format == "json") {
        Json rows = Json::array();
        for (const auto& r : res.rows)
            rows.push_back({{"model", r.model}, {"n", r.n}, {"k", r.k}, {"trial", r.trial}, {"seed", r.seed},
                            {"width", r.width}, {"exact", r.exact}, {"excess", r.excess}});
        emit(g, Json{{"experiment", "localtw"}, {"fitted_c", res.fitted_c}, {"cells", cells}, {"rows", rows}}.dump(2) + "\n");
    } else {
        emit(g, rows_csv(res.rows));
    }
    std::cerr << "localtw: fitted C = " << detail::fmt(res.fitted_c) << " (lower <= 3 + C k log d / log n)\n";
    for (const auto& c : res.cells)
        std::cerr << "  " << c.model << " k=" << c.k << " mean=" << detail::fmt(c.mean_width) << " max=" << c.max_width << '\n';
    return kExitOk;
}

int run_spread(const Globals& g, const SweepArgs& a) {
    SpreadConfig cfg{a.models, a.ks, a.trials ? a.trials : 1000, a.r, a.ceiling, g.seed, g.threads};
    auto res = experiment_spread(cfg);
    if (g.format == "json") {
        Json cells = Json::array(), rows = Json::array();
        for (const auto& c : res.cells)
            cells.push_back({{"model", c.model}, {"n", c.n}, {"k", c.k}, {"mean_spread", c.mean_spread},
                             {"max_spread", c.max_spread}, {"max_ratio", c.max_ratio}, {"c_quadratic", c.c_quadratic},
                             {"flagged", c.flagged}});
        for (const auto& r : res.rows)
            rows.push_back({{"model", r.model}, {"n", r.n}, {"k", r.k}, {"trial", r.trial}, {"seed", r.seed},
                            {"spread", r.spread}, {"ratio", r.ratio}, {"flagged", r.flagged}});
        emit(g, Json{{"experiment", "spread"}, {"flagged", res.flagged}, {"cells", cells}, {"rows", rows}}.dump(2) + "\n");
    } else {
        emit(g, rows_csv(res.rows));
    }
    std::cerr << "spread: " << res.flagged << " trials above ceiling " << detail::fmt(a.ceiling) << '\n';
    for (const auto& c : res.cells)
        std::cerr << "  " << c.model << " k=" << c.k << " max_ratio=" << detail::fmt(c.max_ratio)
                  << " max/k^2=" << detail::fmt(c.c_quadratic) << '\n';
    return kExitOk;
}

int run_edgespan(const Globals& g, const SweepArgs& a) {
    EdgeSpanConfig cfg{a.models, a.ks, a.trials ? a.trials : 1000, g.seed, g.threads};
    auto res = experiment_edgespan(cfg);
    if (g.format == "json") {
        Json cells = Json::array(), rows = Json::array();
        for (const auto& c : res.cells)
            cells.push_back({{"model", c.model}, {"n", c.n}, {"delta", c.delta}, {"k", c.k}, {"mean_excess", c.mean_excess},
                             {"max_excess", c.max_excess}, {"x", c.x}, {"c_fit", c.c_fit}});
        for (const auto& r : res.rows)
            rows.push_back({{"model", r.model}, {"n", r.n}, {"k", r.k}, {"trial", r.trial}, {"seed", r.seed},
                            {"edges", r.edges}, {"excess", r.excess}});
        emit(g, Json{{"experiment", "edgespan"}, {"fitted_c", res.fitted_c}, {"cells", cells}, {"rows", rows}}.dump(2) + "\n");
    } else {
        emit(g, rows_csv(res.rows));
    }
    std::cerr << "edgespan: fitted C = " << detail::fmt(res.fitted_c) << " (max excess <= 1 + C k (log k + log delta) / log n)\n";
    for (const auto& c : res.cells)
        std::cerr << "  " << c.model << " k=" << c.k << " max_excess=" << c.max_excess << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

int run_oracle(const Globals& g, const std::string& suite_name, std::size_t count, const std::string& dump_dir) {
    auto suite = parse_suite(suite_name);
    auto report = oracle_compare(suite, count, g.seed, g.threads);
    std::ostringstream out;
    if (g.format == "json") {
        Json fails = Json::array();
        for (const auto& f : report.failures)
            fails.push_back({{"index", f.index}, {"seed", f.seed}, {"solver", f.solver}, {"oracle", f.oracle}, {"error", f.error}});
        out << Json{{"suite", suite_name}, {"checked", report.checked}, {"failures", fails}, {"passed", report.passed()}}.dump(2)
            << '\n';
    } else {
        out << "suite,checked,failures,passed\n"
            << suite_name << ',' << report.checked << ',' << report.failures.size() << ',' << (report.passed() ? 1 : 0) << '\n';
    }
    emit(g, out.str());
    if (!report.failures.empty()) {
        std::filesystem::create_directories(dump_dir);
        for (const auto& f : report.failures) {
            auto path = std::filesystem::path(dump_dir) / (suite_name + "-" + std::to_string(f.index) + ".txt");
            std::ofstream file(path, std::ios::binary);
            if (!file) throw Error(ErrorKind::IoError, "cannot write " + path.string());
            file << "# suite " << suite_name << " index " << f.index << " seed " << f.seed << '\n'
                 << "# solver " << f.solver << " oracle " << f.oracle << (f.error.empty() ? "" : " error: " + f.error) << '\n'
                 << f.instance;
            std::cerr << "mismatch: " << path.string() << '\n';
        }
        return kExitVerification;
    }
    return kExitOk;
}

int exit_code(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::TooLarge: return kExitGuard;
    case ErrorKind::VerificationFailed:
    case ErrorKind::NoSolutionFound:
    case ErrorKind::IllegalState: return kExitVerification;
    default: return kExitUsage;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge-deletion contagion solvers and sweeps"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "root seed");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)");

    std::string spec;
    auto* gen = app.add_subcommand("generate", "write a random graph in edge-list format");
    gen->add_option("spec", spec, "model spec, e.g. gnp:n=100,d=3")->required();

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "solve a min or stop instance");
    solve->add_option("problem", sa.problem, "min or stop")->required()->check(CLI::IsMember({"min", "stop"}));
    solve->add_option("graph", sa.graph, "edge-list file")->required();
    solve->add_option("seeds", sa.seeds, "seed vertex file")->required();
    solve->add_option("--r", sa.r, "uniform threshold");
    solve->add_option("--slack", sa.slack, "allowed additional infections (min)");
    solve->add_option("--protected", sa.protected_file, "protected vertex file (stop)");
    solve->add_option("--thresholds", sa.thresholds_file, "threshold file");
    solve->add_option("--method", sa.method, "tw, random or brute")->check(CLI::IsMember({"tw", "random", "brute"}));
    solve->add_option("--budget-hint", sa.budget_hint, "deletion parameter for --method random");
    solve->add_option("--batches", sa.batches, "batches for --method random");

    std::string tw_graph, tw_strategy = "minfill", tw_out;
    auto* tw = app.add_subcommand("treewidth", "decompose and validate a graph");
    tw->add_option("graph", tw_graph, "edge-list file")->required();
    tw->add_option("--strategy", tw_strategy, "minfill, mindegree or exact")
        ->check(CLI::IsMember({"minfill", "mindegree", "exact"}));
    tw->add_option("--decomposition", tw_out, "write the decomposition here");

    SweepArgs sw;
    auto add_sweep = [&](CLI::App* sub) {
        sub->add_option("--model", sw.models, "model spec (repeatable)")->required();
        sub->add_option("--k", sw.ks, "subset sizes")->required()->delimiter(',');
        sub->add_option("--trials", sw.trials, "trials per cell");
    };
    auto* ltw = app.add_subcommand("experiment-localtw", "sampled local treewidth sweep");
    add_sweep(ltw);
    auto* spr = app.add_subcommand("experiment-spread", "spread of random seed sets");
    add_sweep(spr);
    spr->add_option("--r", sw.r, "uniform threshold");
    spr->add_option("--ceiling", sw.ceiling, "flag trials with spread/k above this");
    auto* esp = app.add_subcommand("experiment-edgespan", "edge excess of connected subgraphs");
    add_sweep(esp);

    std::string suite;
    std::size_t count = 100;
    std::string dump_dir = "oracle-failures";
    auto* orc = app.add_subcommand("oracle-compare", "compare solvers with brute-force oracles");
    orc->add_option("suite", suite, "gidm, min or stop")->required()->check(CLI::IsMember({"gidm", "min", "stop"}));
    orc->add_option("--count", count, "number of random instances");
    orc->add_option("--dump-dir", dump_dir, "directory for failing instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const bool sweep = *ltw || *spr || *esp;
        if (g.format.empty()) g.format = sweep ? "csv" : "json";
        if (*gen) return run_generate(g, spec);
        if (*solve) return run_solve(g, sa);
        if (*tw) return run_treewidth(g, tw_graph, tw_strategy, tw_out);
        if (*ltw) return run_localtw(g, sw);
        if (*spr) return run_spread(g, sw);
        if (*esp) return run_edgespan(g, sw);
        if (*orc) return run_oracle(g, suite, count, dump_dir);
    } catch (const Error& e) {
        std::cerr << "error [" << to_string(e.kind()) << "]: " << e.what() << '\n';
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
