// Command-line front end: sampling, graph construction, metrics, parameter
// sweeps, oracle cross-validation, and the threshold constants.

#include "polyskel/analytics.hpp"
#include "polyskel/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace polyskel;

RateSpec parse_rate(const std::string& s) {
    auto bad = [&]() -> RateSpec {
        throw CLI::ValidationError("rate", "cannot parse rate spec: " + s);
    };
    auto colon = s.find(':');
    if (colon == std::string::npos) return bad();
    std::string kind = s.substr(0, colon);
    std::string rest = s.substr(colon + 1);
    auto eq = rest.find('=');
    if (eq == std::string::npos) return bad();
    std::string val = rest.substr(eq + 1);
    if (kind == "explicit") return RateSpec::explicit_p(std::stod(val));
    if (kind == "pow2") return RateSpec::pow2(std::stod(val));
    int sign = +1;
    if (!val.empty() && (val[0] == '+' || val[0] == '-')) {
        sign = val[0] == '-' ? -1 : +1;
        val = val.substr(1);
    }
    if (kind == "half") return RateSpec::half_scaled(std::stod(val), sign);
    if (kind == "delta") return RateSpec::delta_scaled(std::stod(val), sign);
    return bad();
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

VertexSet load_vertex_set(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return read_vertex_set(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random 0/1 polytope 1-skeletons: sampling, exact adjacency, "
                 "threshold experiments"};
    app.require_subcommand(1);

    std::string out_path;
    std::string method_str = "auto";
    std::uint64_t seed = 0;

    // sample
    auto* sample = app.add_subcommand("sample", "sample a vertex set Q ~ Q_p^n");
    int sample_n = 8;
    std::string sample_rate = "explicit:p=0.5";
    sample->add_option("-n,--dim", sample_n, "dimension (1..64)")->required();
    sample->add_option("-r,--rate", sample_rate,
                       "rate spec: explicit:p=V | pow2:c=V | half:eps=+-V | delta:eps=+-V");
    sample->add_option("--seed", seed, "PRNG seed");
    sample->add_option("-o,--out", out_path, "output file (default stdout)");

    // graph
    auto* graph = app.add_subcommand("graph", "build the full 1-skeleton as JSON");
    std::string input_path;
    bool with_certs = false;
    graph->add_option("-i,--input", input_path, "vertex set file")->required();
    graph->add_option("-m,--method", method_str, "auto|lp|oracle_full|oracle_hyperplane");
    graph->add_flag("--certificates", with_certs, "retain non-edge certificates");
    graph->add_option("-o,--out", out_path, "output file (default stdout)");

    // pair
    auto* pair = app.add_subcommand("pair", "classify a single pair");
    std::string x_hex, y_hex;
    pair->add_option("-i,--input", input_path, "vertex set file")->required();
    pair->add_option("-x", x_hex, "first point, hex")->required();
    pair->add_option("-y", y_hex, "second point, hex")->required();
    pair->add_option("-m,--method", method_str, "auto|lp|oracle_full|oracle_hyperplane");

    // metrics
    auto* metrics = app.add_subcommand("metrics", "graph statistics for a vertex set");
    metrics->add_option("-i,--input", input_path, "vertex set file")->required();
    metrics->add_option("-m,--method", method_str, "adjacency method");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo parameter sweep to CSV");
    std::vector<int> sweep_n;
    std::vector<std::string> sweep_rates;
    std::vector<std::string> sweep_metrics = {"density"};
    int trials = 1, threads = 1;
    std::uint64_t pair_budget = kDefaultPairBudget;
    sweep->add_option("-n,--dim", sweep_n, "dimensions")->required();
    sweep->add_option("-r,--rate", sweep_rates, "rate specs")->required();
    sweep->add_option("-t,--trials", trials, "trials per cell");
    sweep->add_option("--seed", seed, "base seed");
    sweep->add_option("--metrics", sweep_metrics,
                      "density|density_sampled|min_degree|clique|expansion|quadruples");
    sweep->add_option("--pair-budget", pair_budget, "pairs per sampled-density trial");
    sweep->add_option("-m,--method", method_str, "adjacency method");
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_option("-o,--out", out_path, "CSV output (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "cross-validate all adjacency methods");
    int n_max = 5, verify_trials = 50;
    verify->add_option("--n-max", n_max, "largest dimension (<= 6)");
    verify->add_option("-t,--trials", verify_trials, "random instances");
    verify->add_option("--seed", seed, "base seed");

    // delta
    auto* delta = app.add_subcommand("delta", "print the threshold constants");

    // count-tuples
    auto* count = app.add_subcommand("count-tuples", "averaging-tuple and quadruple counts");
    int cf_d = -1, cf_k = -1;
    std::string band_str;
    count->add_option("-i,--input", input_path, "vertex set file (witness quadruples)");
    count->add_option("-d", cf_d, "differing coordinates (closed-form C(2k,k)^d)");
    count->add_option("-k", cf_k, "half tuple size (closed-form C(2k,k)^d)");
    count->add_option("--band", band_str, "hamming/n band lo,hi for quadruples");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) {
            double p = resolve_rate(parse_rate(sample_rate), sample_n);
            VertexSet q = sample_vertex_set(sample_n, p, seed);
            std::ofstream file;
            write_vertex_set(q, open_out(file, out_path));
        } else if (*graph) {
            VertexSet q = load_vertex_set(input_path);
            PolytopeGraph g = build_graph(q, method_from_name(method_str), with_certs);
            std::ofstream file;
            emit_graph_json(g, open_out(file, out_path));
        } else if (*pair) {
            VertexSet q = load_vertex_set(input_path);
            Point x = point_from_hex(x_hex, q.dim());
            Point y = point_from_hex(y_hex, q.dim());
            EdgeStatus st = edge_status(q, x, y, method_from_name(method_str));
            std::cout << (st.is_edge ? "edge" : "non-edge") << "\n"
                      << detail::certificate_json(st.certificate).dump(2) << "\n";
        } else if (*metrics) {
            VertexSet q = load_vertex_set(input_path);
            PolytopeGraph g = build_graph(q, method_from_name(method_str));
            MetricsReport r = metrics_report(g);
            std::cout << "num_vertices=" << r.num_vertices << "\n"
                      << "num_edges=" << r.num_edges << "\n"
                      << "density=" << rat_to_decimal(r.density_value) << "\n"
                      << "min_degree=" << r.min_degree_value << "\n"
                      << "max_degree=" << r.max_degree_value << "\n"
                      << "is_clique=" << (r.clique ? 1 : 0) << "\n"
                      << "num_components=" << r.components << "\n";
            if (r.expansion)
                std::cout << "expansion=" << rat_to_decimal(*r.expansion) << "\n";
        } else if (*sweep) {
            SweepConfig cfg;
            cfg.n_list = sweep_n;
            for (const auto& r : sweep_rates) cfg.rates.push_back(parse_rate(r));
            cfg.trials = trials;
            cfg.base_seed = seed;
            cfg.pair_budget = pair_budget;
            cfg.method = method_from_name(method_str);
            cfg.threads = threads;
            cfg.metrics.clear();
            for (const auto& m : sweep_metrics) {
                if (m == "density") cfg.metrics.insert(MetricKind::Density);
                else if (m == "density_sampled") cfg.metrics.insert(MetricKind::DensitySampled);
                else if (m == "min_degree") cfg.metrics.insert(MetricKind::MinDegree);
                else if (m == "clique") cfg.metrics.insert(MetricKind::Clique);
                else if (m == "expansion") cfg.metrics.insert(MetricKind::Expansion);
                else if (m == "quadruples") cfg.metrics.insert(MetricKind::Quadruples);
                else throw std::invalid_argument("unknown metric: " + m);
            }
            auto records = run_sweep(cfg);
            std::ofstream file;
            emit_csv(records, open_out(file, out_path));
        } else if (*verify) {
            VerifyReport rep = run_verify(n_max, verify_trials, seed);
            std::cout << "trials=" << rep.trials << " pairs=" << rep.pairs_checked
                      << " failures=" << rep.failures.size() << "\n";
            for (const auto& f : rep.failures) {
                std::cout << "FAIL n=" << f.n << " p=" << f.p << " seed=" << f.seed
                          << " pair=(" << f.x_hex << "," << f.y_hex << ") " << f.detail
                          << "\n  Q = {";
                for (std::size_t i = 0; i < f.vertices.size(); ++i)
                    std::cout << (i ? "," : "") << f.vertices[i];
                std::cout << "}\n";
            }
            return rep.ok() ? 0 : 2;
        } else if (*delta) {
            ThresholdConstants t = threshold_constants();
            std::printf("delta_star=%.12f\n", t.delta_star);
            std::printf("f_max_arg=%.12f\n", t.f_max_arg);
            std::printf("f_max=%.12f\n", t.f_max);
            std::printf("weak_exponent=%.12f\n", t.weak_exponent);
        } else if (*count) {
            if (cf_d >= 0 && cf_k >= 0) {
                std::cout << closed_form_tuple_count(cf_d, cf_k).str() << "\n";
            } else if (!input_path.empty()) {
                VertexSet q = load_vertex_set(input_path);
                std::optional<std::pair<double, double>> band;
                if (!band_str.empty()) {
                    auto comma = band_str.find(',');
                    if (comma == std::string::npos)
                        throw std::invalid_argument("--band expects lo,hi");
                    band = {{std::stod(band_str.substr(0, comma)),
                             std::stod(band_str.substr(comma + 1))}};
                }
                std::cout << count_witness_quadruples(q, band).str() << "\n";
            } else {
                throw std::invalid_argument("count-tuples needs -d/-k or --input");
            }
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
