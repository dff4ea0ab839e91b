#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <hypertorsion/hypertorsion.hpp>

using namespace hypertorsion;
using nlohmann::json;

namespace {

// exit codes: 0 ok, 1 a check failed, 2 bad input or runtime error
constexpr int kCheckFailed = 1;
constexpr int kError = 2;

std::string join(const std::vector<std::int64_t>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
    return out;
}

std::string fmt_double(double v) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

WeightVector<double> double_weights(const std::string& text, int n) {
    auto q = parse_weight_list(text);
    if (q.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("expected " + std::to_string(n) + " weights, got " + std::to_string(q.size()));
    std::vector<double> x;
    for (const auto& v : q) x.push_back(v.get_d());
    return WeightVector<double>(x);
}

json report_to_json(const BoundReport& r) {
    json j{{"name", r.name}, {"log_bound", r.log_bound}};
    j["value"] = r.value ? json(*r.value) : json(nullptr);
    auto cap = r.torsion_cap();
    j["torsion_cap"] = cap ? json(*cap) : json(nullptr);
    if (r.alpha) j["alpha"] = *r.alpha;
    if (r.witness) j["witness"] = *r.witness;
    if (r.name == "main") {
        j["converged"] = r.converged;
        j["iterations"] = r.iterations;
    }
    return j;
}

std::vector<BoundReport> selected_bounds(const Hypertree& t, const std::string& which, const OptimizerOptions& opt) {
    const int n = t.n(), k = t.k();
    const auto d = t.degrees();
    std::vector<BoundReport> out;
    const bool all = which == "all";
    if (all || which == "baseline") {
        auto b = kalai_baseline(n, k);
        out.push_back(make_report("baseline", b.log_baseline, d));
        out.push_back(make_report("baseline_improved", b.log_improved, d));
    }
    if (all || which == "main") out.push_back(main_bound_optimize(t, opt));
    if (all || which == "oned") {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t v = 0; v < d.degrees.size(); ++v) {
            const double b = oned_bound(n, k, d.degrees[v]);
            best = std::min(best, b);
            out.push_back(make_report("oned_v" + std::to_string(v + 1), b, d));
        }
        out.push_back(make_report("oned", best, d));
    }
    if (all || which == "amgm") {
        auto r = make_report("amgm", amgm_bound_at(k, d, WeightVector<double>::ones(n)), d);
        r.witness = std::vector<double>(static_cast<std::size_t>(n), 1.0);
        out.push_back(std::move(r));
    }
    if (all || which == "simple") out.push_back(make_report("simple", simple_bound(n, k, d), d));
    if (all || which == "tighter") {
        auto tb = tighter_bound(n, k, d);
        for (auto [name, v] : {std::pair{"tighter", tb.log_tight}, {"tighter_middle", tb.log_middle},
                               {"tighter_loose", tb.log_loose}}) {
            auto r = make_report(name, v, d);
            r.alpha = tb.alpha.alpha;
            out.push_back(std::move(r));
        }
    }
    return out;
}

int cmd_enumerate(int n, int k, std::uint64_t max_candidates, const std::string& emit) {
    EnumerationOptions opts;
    opts.max_candidates = max_candidates;
    std::uint64_t count = 0;
    BigInt weighted = 0;
    const bool jsonl = emit == "jsonl";
    auto examined = enumerate_hypertrees(
        n, k,
        [&](const Hypertree& t) {
            ++count;
            weighted += t.torsion_order * t.torsion_order;
            if (jsonl) std::cout << hypertree_to_json(t).dump() << '\n';
        },
        opts);
    auto& summary = jsonl ? std::cerr : std::cout;
    summary << "candidates: " << examined << "\nhypertrees: " << count << "\nsum of squared torsion: " << weighted
            << '\n';
    return 0;
}

int cmd_torsion(const std::string& path) {
    auto c = read_complex_file(path);
    if (!is_hypertree(c)) {
        std::cout << json{{"hypertree", false}}.dump(2) << '\n';
        return kCheckFailed;
    }
    auto j = hypertree_to_json(make_hypertree(c));
    j["hypertree"] = true;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_sample(int n, int k, const std::string& weights, std::uint64_t count, std::uint64_t seed,
               const std::string& emit) {
    auto w = double_weights(weights, n);
    HypertreeSampler sampler(kernel_closed_form(n, k, w));
    Rng rng(seed);
    for (std::uint64_t s = 0; s < count; ++s) {
        auto c = Complex::from_ranks(n, k, sampler.sample_ranks(rng));
        if (emit == "jsonl") {
            std::cout << hypertree_to_json(make_hypertree(std::move(c))).dump() << '\n';
        } else {
            for (std::size_t i = 0; i < c.facets().size(); ++i) std::cout << (i ? " " : "") << c.facets()[i].to_string();
            std::cout << '\n';
        }
    }
    return 0;
}

int cmd_bound(const std::string& path, const std::string& which, int starts, std::uint64_t seed,
              std::size_t iterations, const std::string& format) {
    auto t = make_hypertree(read_complex_file(path));
    OptimizerOptions opt;
    opt.random_starts = starts;
    opt.seed = seed;
    opt.max_iterations = iterations;
    auto reports = selected_bounds(t, which, opt);
    if (format == "json") {
        json j = hypertree_to_json(t);
        j["bounds"] = json::array();
        for (const auto& r : reports) j["bounds"].push_back(report_to_json(r));
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    std::cout << "bound,log_bound,value,torsion_cap,alpha,witness\n";
    for (const auto& r : reports) {
        std::cout << r.name << ',' << fmt_double(r.log_bound) << ',' << (r.value ? fmt_double(*r.value) : "") << ',';
        if (auto cap = r.torsion_cap()) std::cout << fmt_double(*cap);
        std::cout << ',' << (r.alpha ? fmt_double(*r.alpha) : "") << ',';
        if (r.witness)
            for (std::size_t i = 0; i < r.witness->size(); ++i) std::cout << (i ? " " : "") << fmt_double((*r.witness)[i]);
        std::cout << '\n';
    }
    return 0;
}

int cmd_verify_genfunc(int n, int k, std::uint64_t max_candidates, const std::string& csv) {
    auto rep = verify_genfunc(n, k, max_candidates);
    std::size_t bad = 0;
    for (const auto& r : rep.rows) bad += !r.ok();
    std::cout << "n: " << n << "\nk: " << k << "\ncandidates: " << rep.candidates << "\nhypertrees: " << rep.hypertrees
              << "\ndegree sequences: " << rep.rows.size() << "\nmismatched sequences: " << bad
              << "\nsum of squared torsion: " << rep.total << "\nexpected: " << rep.expected_total
              << "\nresult: " << (rep.all_pass() ? "PASS" : "FAIL") << '\n';
    if (!csv.empty()) {
        auto out = open_out(csv);
        out << "degrees,hypertrees,torsion_squared_sum,expected,ok\n";
        for (const auto& r : rep.rows)
            out << join(r.degrees, " ") << ',' << r.count << ',' << r.torsion_squared_sum << ',' << r.expected << ','
                << (r.ok() ? 1 : 0) << '\n';
    }
    return rep.all_pass() ? 0 : kCheckFailed;
}

int cmd_verify_bounds(int n, int k, int starts, std::size_t iterations, std::uint64_t max_candidates,
                      const std::string& csv) {
    BoundSweepOptions opts;
    opts.optimizer.random_starts = starts;
    opts.optimizer.max_iterations = iterations;
    opts.max_candidates = max_candidates;
    auto rep = verify_bounds(n, k, opts);
    std::cout << "n: " << n << "\nk: " << k << "\nhypertrees: " << rep.hypertrees << '\n';
    for (const auto& c : rep.checks)
        std::cout << c.name << ": checked " << c.checked << ", violations " << c.violations << ", worst slack "
                  << fmt_double(c.worst_slack) << " at (" << join(c.worst_degrees, ",") << ")\n";
    std::cout << "result: " << (rep.all_pass() ? "PASS" : "FAIL") << '\n';
    if (!csv.empty()) {
        auto out = open_out(csv);
        out << "bound,checked,violations,worst_slack,worst_degrees,ok\n";
        for (const auto& c : rep.checks)
            out << c.name << ',' << c.checked << ',' << c.violations << ',' << fmt_double(c.worst_slack) << ','
                << join(c.worst_degrees, " ") << ',' << (c.violations == 0 ? 1 : 0) << '\n';
    }
    return rep.all_pass() ? 0 : kCheckFailed;
}

int cmd_verify_sampler(int n, int k, const std::string& weights, std::uint64_t count, std::uint64_t seed,
                       double threshold, std::uint64_t max_candidates) {
    auto rep = verify_sampler(n, k, double_weights(weights, n), count, seed, threshold, max_candidates);
    std::cout << "samples: " << rep.samples << "\nsupport: " << rep.support << "\noff-support draws: " << rep.off_support
              << "\nexact mass: " << fmt_double(rep.exact_mass) << "\ntotal variation: " << fmt_double(rep.total_variation)
              << "\nmax deviation: " << fmt_double(rep.max_deviation) << "\nthreshold: " << fmt_double(rep.threshold)
              << "\nresult: " << (rep.pass() ? "PASS" : "FAIL") << '\n';
    return rep.pass() ? 0 : kCheckFailed;
}

int cmd_search(int n, int k, std::uint64_t budget, std::uint64_t seed) {
    auto best = max_torsion_search(n, k, budget, seed);
    if (!best) {
        std::cout << json{{"found", false}}.dump(2) << '\n';
        return 0;
    }
    auto j = hypertree_to_json(*best);
    j["found"] = true;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_dump_boundary(int n, int k, bool reduced) {
    require_dimensions(n, k);
    write_boundary_csv(std::cout, reduced ? build_reduced_boundary(n, k) : build_boundary(n, k));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Torsion of simplicial spanning trees: exact computation, sampling and bounds"};
    app.require_subcommand(1);

    int n = 0, k = 0;
    std::uint64_t max_candidates = 10'000'000, count = 1, seed = 0, budget = 10'000;
    std::string emit = "text", weights, complex_path, which = "all", format = "csv", csv;
    int starts = 2, sweep_starts = 1;
    std::size_t iterations = 10'000, sweep_iterations = 500;
    double threshold = 0.01;
    bool reduced = false;

    auto add_nk = [&](CLI::App* sub) {
        sub->add_option("--n", n, "number of vertices")->required();
        sub->add_option("--k", k, "dimension")->required();
    };

    auto* enumerate = app.add_subcommand("enumerate", "enumerate all hypertrees of dimension k on n vertices");
    add_nk(enumerate);
    enumerate->add_option("--max-candidates", max_candidates, "refuse to examine more candidate facet sets");
    enumerate->add_option("--emit", emit, "text (summary only) or jsonl (one hypertree per line)")
        ->check(CLI::IsMember({"text", "jsonl"}));

    auto* torsion_cmd = app.add_subcommand("torsion", "torsion group of a complex read from JSON");
    torsion_cmd->add_option("--complex", complex_path, "complex JSON file")->required();

    auto* sample_cmd = app.add_subcommand("sample", "draw hypertrees from the weighted determinantal measure");
    add_nk(sample_cmd);
    sample_cmd->add_option("--weights", weights, "comma-separated positive weights x_1,...,x_n")->required();
    sample_cmd->add_option("--count", count, "number of samples");
    sample_cmd->add_option("--seed", seed, "random seed");
    sample_cmd->add_option("--emit", emit, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));

    auto* bound_cmd = app.add_subcommand("bound", "upper bounds on the squared torsion of a hypertree");
    bound_cmd->add_option("--complex", complex_path, "complex JSON file")->required();
    bound_cmd->add_option("--which", which, "which bounds")
        ->check(CLI::IsMember({"all", "main", "oned", "amgm", "simple", "tighter", "baseline"}));
    bound_cmd->add_option("--starts", starts, "random optimizer starts in addition to the fixed ones");
    bound_cmd->add_option("--seed", seed, "optimizer seed");
    bound_cmd->add_option("--iterations", iterations, "optimizer iteration cap per start");
    bound_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    auto* vg = app.add_subcommand("verify-genfunc", "check the weighted counting identity by enumeration");
    add_nk(vg);
    vg->add_option("--csv", csv, "write per-degree-sequence rows to this file");
    vg->add_option("--max-candidates", max_candidates, "enumeration budget");

    auto* vb = app.add_subcommand("verify-bounds", "check every bound on every enumerated hypertree");
    add_nk(vb);
    vb->add_option("--csv", csv, "write per-bound rows to this file");
    vb->add_option("--starts", sweep_starts, "random optimizer starts per hypertree");
    vb->add_option("--iterations", sweep_iterations, "optimizer iteration cap per start");
    vb->add_option("--max-candidates", max_candidates, "enumeration budget");

    auto* vs = app.add_subcommand("verify-sampler", "total variation between sampled and exact distributions");
    add_nk(vs);
    vs->add_option("--weights", weights, "comma-separated positive weights")->required();
    vs->add_option("--count", count, "number of samples")->required();
    vs->add_option("--seed", seed, "random seed");
    vs->add_option("--threshold", threshold, "pass if total variation is below this");
    vs->add_option("--max-candidates", max_candidates, "enumeration budget");

    auto* search = app.add_subcommand("search", "look for a hypertree of maximal torsion");
    add_nk(search);
    search->add_option("--budget", budget, "candidate facet sets to examine");
    search->add_option("--seed", seed, "random seed when the budget is below the candidate count");

    auto* dump = app.add_subcommand("dump-boundary", "dense CSV of the boundary matrix");
    add_nk(dump);
    dump->add_flag("--reduced", reduced, "drop rows of faces containing vertex n");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enumerate) return cmd_enumerate(n, k, max_candidates, emit);
        if (*torsion_cmd) return cmd_torsion(complex_path);
        if (*sample_cmd) return cmd_sample(n, k, weights, count, seed, emit);
        if (*bound_cmd) return cmd_bound(complex_path, which, starts, seed, iterations, format);
        if (*vg) return cmd_verify_genfunc(n, k, max_candidates, csv);
        if (*vb) return cmd_verify_bounds(n, k, sweep_starts, sweep_iterations, max_candidates, csv);
        if (*vs) return cmd_verify_sampler(n, k, weights, count, seed, threshold, max_candidates);
        if (*search) return cmd_search(n, k, budget, seed);
        if (*dump) return cmd_dump_boundary(n, k, reduced);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
    return kError;
}
