#include "entigraph/cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "entigraph/analytics.hpp"
#include "entigraph/cli/json_config.hpp"
#include "entigraph/corpus/backend.hpp"
#include "entigraph/corpus/metrics.hpp"
#include "entigraph/corpus/plan.hpp"
#include "entigraph/corpus/synthesis.hpp"
#include "entigraph/curve_fit.hpp"
#include "entigraph/curve_io.hpp"
#include "entigraph/graph.hpp"
#include "entigraph/process.hpp"

namespace entigraph::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Always shows a decimal point or exponent, so 1 prints as 1.0.
std::string real_text(double v) {
    std::string s = format_double(v);
    if (s.find_first_of(".en") == std::string::npos) s += ".0";
    return s;
}

std::uint64_t as_step(double t, const std::string& flag) {
    if (!(t >= 1.0) || t != std::floor(t) || t >= 1.8e19)
        throw std::invalid_argument(flag + " must be a positive integer, got " + format_double(t));
    return static_cast<std::uint64_t>(t);
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

// Where a command's artifacts go: files under --out-dir, or stdout without it.
class Sink {
  public:
    Sink(std::string dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {
        if (!dir_.empty()) fs::create_directories(dir_);
    }

    void emit(const std::string& filename, const std::string& content) {
        if (dir_.empty()) {
            out_ << content;
        } else {
            write_text(fs::path(dir_) / filename, content);
            artifacts_.push_back(filename);
        }
    }

    void manifest(const CLI::App& root, const std::string& command, json resolved, std::ostream& err) const {
        json m;
        m["tool"] = "entigraph";
        m["version"] = ENTIGRAPH_VERSION;
        m["command"] = command;
        m["config"] = resolved_options(root);
        m["resolved"] = std::move(resolved);
        m["artifacts"] = artifacts_;
        if (dir_.empty()) {
            err << "manifest " << m.dump() << "\n";
        } else {
            write_text(fs::path(dir_) / "manifest.json", m.dump(2) + "\n");
        }
    }

  private:
    std::string dir_;
    std::ostream& out_;
    std::vector<std::string> artifacts_;
};

struct GridArgs {
    double t_max = 1e6;
    std::string kind = "log";
    std::size_t points = 40;

    void add(CLI::App* cmd) {
        cmd->add_option("--t-max", t_max, "Last step of the grid");
        cmd->add_option("--grid", kind, "Grid spacing")->check(CLI::IsMember({"log", "linear"}));
        cmd->add_option("--points", points, "Target number of grid points")->check(CLI::PositiveNumber);
    }

    std::vector<std::uint64_t> make() const {
        const std::uint64_t t = as_step(t_max, "--t-max");
        return kind == "log" ? log_grid(t, points) : linear_grid(t, points);
    }
};

struct ModelArgs {
    std::uint32_t v = 0;
    double lambda = 0.0;
    double p = 0.0;
    double epsilon = 0.1;
    CLI::Option* v_opt = nullptr;
    CLI::Option* lambda_opt = nullptr;
    CLI::Option* p_opt = nullptr;

    void add(CLI::App* cmd, bool with_epsilon) {
        v_opt = cmd->add_option("--v", v, "Number of vertices");
        lambda_opt = cmd->add_option("--lambda", lambda, "Mean out-degree; p = lambda / V");
        p_opt = cmd->add_option("--p", p, "Edge probability, alternative to --lambda")->excludes(lambda_opt);
        if (with_epsilon) cmd->add_option("--eps", epsilon, "Band slack epsilon");
    }

    ModelParams resolve() const {
        if (v_opt->count() == 0 || v < 1) throw std::invalid_argument("--v is required and must be at least 1");
        double lam = lambda;
        if (lambda_opt->count() == 0) {
            if (p_opt->count() == 0) throw std::invalid_argument("one of --lambda or --p is required");
            lam = p * static_cast<double>(v);
        }
        auto params = ModelParams::from_lambda(v, lam, epsilon);
        params.validate();
        return params;
    }
};

json model_json(const ModelParams& m) {
    return json{{"v", m.vertex_count}, {"lambda", m.lambda}, {"p", m.edge_probability}, {"epsilon", m.epsilon}};
}

std::string curve_csv(const AccuracyCurve& curve) {
    std::ostringstream ss;
    write_curve_csv(ss, curve);
    return ss.str();
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    ModelArgs model;
    GridArgs grid;
    std::uint64_t replicates = 100;
    std::uint64_t seed = 0;
    std::uint64_t graph_seed = 0;
    CLI::Option* graph_seed_opt = nullptr;
    bool exact = false;
    std::uint32_t vertex_cap = kDefaultExactVertexCap;
    std::string graph_path;
    std::string out_dir = ".";
    bool trajectories = false;
    unsigned threads = 0;
};

void add_simulate(CLI::App& app, SimulateArgs& a) {
    auto* cmd = app.add_subcommand("simulate", "Link-density curve of the augmentation process");
    a.model.add(cmd, false);
    a.grid.add(cmd);
    cmd->add_option("--replicates", a.replicates, "Monte Carlo replicates")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a.seed, "Seed for the replicates");
    a.graph_seed_opt = cmd->add_option("--graph-seed", a.graph_seed, "Seed for the source graph (default: --seed)");
    cmd->add_flag("--exact", a.exact, "Evaluate the exact curve instead of simulating");
    cmd->add_option("--vertex-cap", a.vertex_cap, "Largest V accepted by --exact");
    cmd->add_option("--graph", a.graph_path, "Source graph JSON instead of a random graph")
        ->check(CLI::ExistingFile);
    cmd->add_option("--out-dir", a.out_dir, "Output directory");
    cmd->add_flag("--trajectories", a.trajectories, "Also write per-replicate counts");
    cmd->add_option("--threads", a.threads, "Worker threads, 0 = all cores");
}

void run_simulate(const CLI::App& root, const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    DirectedGraph m0;
    json resolved;
    if (!a.graph_path.empty()) {
        m0 = graph_from_json(read_text(a.graph_path));
        if (a.model.v_opt->count() > 0 && a.model.v != m0.vertex_count())
            throw std::invalid_argument("--v disagrees with the vertex count of --graph");
        resolved["graph"] = a.graph_path;
    } else {
        const ModelParams params = a.model.resolve();
        const std::uint64_t gseed = a.graph_seed_opt->count() > 0 ? a.graph_seed : a.seed;
        m0 = generate_er(params, gseed);
        resolved["model"] = model_json(params);
        resolved["graph_seed"] = gseed;
    }
    if (m0.vertex_count() < 2) throw std::invalid_argument("the source graph needs at least two vertices");
    const auto grid = a.grid.make();

    Sink sink(a.out_dir, out);
    AccuracyCurve curve;
    std::optional<ReplicateTrajectories> traj;
    if (a.exact) {
        curve = exact_acc_curve(m0, grid, a.vertex_cap);
    } else if (a.trajectories) {
        traj = simulate_trajectories(m0, grid, a.replicates, a.seed, {a.threads});
        curve = summarize(*traj, m0.ordered_pair_count());
    } else {
        curve = estimate_acc_curve(m0, grid, a.replicates, a.seed, {a.threads});
    }
    sink.emit("curve.csv", curve_csv(curve));
    sink.emit("graph.json", graph_to_json(m0) + "\n");
    if (traj) {
        std::ostringstream ss;
        write_trajectories_csv(ss, *traj);
        sink.emit("trajectories.csv", ss.str());
    }
    resolved["edges"] = m0.edge_count();
    resolved["grid_points"] = grid.size();
    resolved["method"] = a.exact ? "exact" : "monte_carlo";
    sink.manifest(root, "simulate", std::move(resolved), err);
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
    double rho_lambda = 0.0;
    double tol = kDefaultFixedPointTol;

    ModelArgs band_model;
    GridArgs band_grid;
    std::string band_out;

    ModelArgs approx_model;
    GridArgs approx_grid;
    std::uint32_t depth = 0;
    std::uint64_t trees = 1000;
    std::uint64_t seed = 0;
    std::string count = "subtree";
    std::string approx_out;

    CLI::App* rho = nullptr;
    CLI::App* band = nullptr;
    CLI::App* approx = nullptr;
};

void add_analyze(CLI::App& app, AnalyzeArgs& a) {
    auto* cmd = app.add_subcommand("analyze", "Closed-form quantities");
    cmd->require_subcommand(1);

    a.rho = cmd->add_subcommand("rho", "Extinction probability of a Poisson branching process");
    a.rho->add_option("--lambda", a.rho_lambda, "Poisson mean")->required();
    a.rho->add_option("--tol", a.tol, "Fixed-point residual tolerance")->check(CLI::PositiveNumber);

    a.band = cmd->add_subcommand("band", "Lower and upper link-density bounds");
    a.band_model.add(a.band, true);
    a.band_grid.add(a.band);
    a.band->add_option("--out-dir", a.band_out, "Output directory (default: stdout)");

    a.approx = cmd->add_subcommand("approx", "Branching-process mixture approximation");
    a.approx_model.add(a.approx, false);
    a.approx_grid.add(a.approx);
    a.approx->add_option("--depth", a.depth, "Tree depth, 0 = natural depth for V");
    a.approx->add_option("--trees", a.trees, "Simulated trees")->check(CLI::PositiveNumber);
    a.approx->add_option("--seed", a.seed, "Seed for the trees");
    a.approx->add_option("--count", a.count, "What a tree node contributes")
        ->check(CLI::IsMember({"subtree", "children"}));
    a.approx->add_option("--out-dir", a.approx_out, "Output directory (default: stdout)");
}

void run_analyze(const CLI::App& root, const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
    if (*a.rho) {
        const double rho = extinction_probability(a.rho_lambda, a.tol);
        out << real_text(rho) << "\n";
        Sink("", out).manifest(root, "analyze rho", json{{"rho", rho}}, err);
        return;
    }
    if (*a.band) {
        const ModelParams params = a.band_model.resolve();
        const auto bounds = TheoremBounds::make(params);
        std::vector<BandRow> rows;
        for (std::uint64_t t : a.band_grid.make()) {
            const auto [lo, hi] = bounds.band(static_cast<double>(t));
            rows.push_back({t, lo, hi});
        }
        std::ostringstream ss;
        write_band_csv(ss, rows);
        Sink sink(a.band_out, out);
        sink.emit("band.csv", ss.str());
        json resolved{{"model", model_json(params)}, {"c_lambda", bounds.c_lambda}, {"c_lb", bounds.c_lb},
                      {"c_ub", bounds.c_ub}};
        sink.manifest(root, "analyze band", std::move(resolved), err);
        return;
    }
    const ModelParams params = a.approx_model.resolve();
    const std::uint32_t depth = a.depth > 0 ? a.depth : natural_tree_depth(params);
    const auto count = a.count == "children" ? OffspringCount::DirectChildren : OffspringCount::SubtreeSize;
    const auto curve = branching_approx_curve(params, depth, a.trees, a.approx_grid.make(), a.seed, count);
    Sink sink(a.approx_out, out);
    sink.emit("approx.csv", curve_csv(curve));
    sink.manifest(root, "analyze approx", json{{"model", model_json(params)}, {"depth", depth}}, err);
}

// ---- fit -------------------------------------------------------------------

struct FitArgs {
    std::string input;
    FitOptions options;
    bool phases = false;
    std::string out_dir;
};

void add_fit(CLI::App& app, FitArgs& a) {
    auto* cmd = app.add_subcommand("fit", "Fit y = a - sum b r^t to a curve CSV");
    cmd->add_option("--input", a.input, "Curve CSV (t,mean_acc,...)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--k", a.options.k_terms, "Number of exponential terms")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", a.options.seed, "Seed for random restarts");
    cmd->add_option("--max-iter", a.options.max_iter, "Iterations per start")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", a.options.tol, "Relative step tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--random-starts", a.options.random_starts, "Random starts on top of the fixed ones");
    cmd->add_flag("--phases", a.phases, "Also report the phase boundaries t1, t2");
    cmd->add_option("--out-dir", a.out_dir, "Output directory (default: stdout)");
}

void run_fit(const CLI::App& root, const FitArgs& a, std::ostream& out, std::ostream& err) {
    std::ifstream in(a.input);
    if (!in) throw std::runtime_error("cannot open " + a.input);
    const AccuracyCurve curve = read_curve_csv(in);
    const auto points = curve_points(curve);
    const MoEFit fit = fit_moe(points, a.options);

    json j;
    j["a"] = fit.a;
    auto terms = json::array();
    for (const auto& t : fit.terms) terms.push_back({{"b", t.b}, {"r", t.r}});
    j["terms"] = std::move(terms);
    j["sse"] = fit.residual_sse;
    j["iters"] = fit.iterations;
    j["starts"] = fit.starts;
    if (a.phases) {
        try {
            const auto ph = classify_phases(curve);
            j["phases"] = {{"t1", ph.t1}, {"t2", ph.t2}};
        } catch (const IndeterminateShape& e) {
            err << "warning: " << e.what() << "\n";
            j["phases"] = nullptr;
        }
    }
    Sink sink(a.out_dir, out);
    sink.emit("fit.json", j.dump(2) + "\n");
    sink.manifest(root, "fit", json{{"points", points.size()}}, err);
}

// ---- corpus ----------------------------------------------------------------

struct BackendArgs {
    bool mock = false;
    std::string endpoint;
    std::string model;
    double temperature = 1.0;
    int max_tokens = 2048;
    std::string api_key_env = "ENTIGRAPH_API_KEY";
    int timeout = 120;
    std::string prompt_dir;

    void add(CLI::App* cmd) {
        auto* m = cmd->add_flag("--mock", mock, "Deterministic offline backend");
        auto* e = cmd->add_option("--endpoint", endpoint, "Chat-completions URL")->excludes(m);
        cmd->add_option("--model", model, "Model name sent to the endpoint")->needs(e);
        cmd->add_option("--temperature", temperature, "Sampling temperature");
        cmd->add_option("--max-tokens", max_tokens, "Completion token limit")->check(CLI::PositiveNumber);
        cmd->add_option("--api-key-env", api_key_env, "Environment variable holding the bearer token");
        cmd->add_option("--timeout", timeout, "Request timeout in seconds")->check(CLI::PositiveNumber);
        cmd->add_option("--prompt-dir", prompt_dir, "Directory with prompt templates")->check(CLI::ExistingDirectory);
    }
};

struct BackendHandle {
    std::unique_ptr<corpus::PromptTemplates> templates;
    std::unique_ptr<corpus::SynthesisBackend> backend;
};

BackendHandle make_backend(const BackendArgs& a) {
    BackendHandle h;
    if (a.mock) {
        h.backend = std::make_unique<corpus::MockBackend>();
        return h;
    }
    if (a.endpoint.empty()) throw std::invalid_argument("choose a backend: --mock or --endpoint URL --model NAME");
    h.templates = std::make_unique<corpus::PromptTemplates>(
        a.prompt_dir.empty() ? corpus::PromptTemplates::bundled() : corpus::PromptTemplates::load(a.prompt_dir));
    corpus::HttpBackendConfig cfg;
    cfg.url = a.endpoint;
    cfg.model = a.model;
    cfg.temperature = a.temperature;
    cfg.max_tokens = a.max_tokens;
    cfg.api_key_env = a.api_key_env;
    cfg.timeout = std::chrono::seconds(a.timeout);
    h.backend = std::make_unique<corpus::HttpBackend>(cfg, *h.templates);
    return h;
}

struct CorpusArgs {
    std::string plan_input;
    BackendArgs plan_backend;
    corpus::PlanOptions plan_options;
    std::string plan_out;

    std::string syn_input;
    BackendArgs syn_backend;
    corpus::PlanOptions syn_plan_options;
    std::size_t budget = 100;
    std::size_t max_in_flight = 1;
    std::string syn_out = ".";

    std::string ov_source;
    std::string ov_synthetic;
    std::size_t n = 2;

    std::string dd_input;
    double threshold = 0.6;
    std::size_t dd_window = corpus::kDefaultShingleWindow;
    std::string method = "exact";

    std::string cp_source;
    std::string cp_synthetic;
    std::size_t cp_window = corpus::kDefaultShingleWindow;

    CLI::App* plan = nullptr;
    CLI::App* synthesize = nullptr;
    CLI::App* overlap = nullptr;
    CLI::App* dedup = nullptr;
    CLI::App* copy = nullptr;
};

void add_corpus(CLI::App& app, CorpusArgs& a) {
    auto* cmd = app.add_subcommand("corpus", "Entity plans, synthetic corpora and corpus metrics");
    cmd->require_subcommand(1);

    a.plan = cmd->add_subcommand("plan", "Extract entities and list relations per document");
    a.plan->add_option("--input", a.plan_input, "Source JSONL")->required()->check(CLI::ExistingFile);
    a.plan_backend.add(a.plan);
    a.plan->add_option("--triplet-cap", a.plan_options.triplet_cap, "Most triplets kept per document");
    a.plan->add_option("--seed", a.plan_options.seed, "Seed for triplet sampling");
    a.plan->add_option("--out-dir", a.plan_out, "Output directory (default: stdout)");

    a.synthesize = cmd->add_subcommand("synthesize", "Generate one document per planned relation");
    a.synthesize->add_option("--input", a.syn_input, "Source JSONL")->required()->check(CLI::ExistingFile);
    a.syn_backend.add(a.synthesize);
    a.synthesize->add_option("--triplet-cap", a.syn_plan_options.triplet_cap, "Most triplets kept per document");
    a.synthesize->add_option("--seed", a.syn_plan_options.seed, "Seed for triplet sampling");
    a.synthesize->add_option("--budget", a.budget, "Generations per source document")->check(CLI::PositiveNumber);
    a.synthesize->add_option("--max-in-flight", a.max_in_flight, "Concurrent generations")
        ->check(CLI::PositiveNumber);
    a.synthesize->add_option("--out-dir", a.syn_out, "Output directory");

    auto* metrics = cmd->add_subcommand("metrics", "Synthetic-corpus quality metrics");
    metrics->require_subcommand(1);

    a.overlap = metrics->add_subcommand("overlap", "Percentage of synthetic n-grams found in the source");
    a.overlap->add_option("--source", a.ov_source, "Source JSONL")->required()->check(CLI::ExistingFile);
    a.overlap->add_option("--synthetic", a.ov_synthetic, "Synthetic JSONL")->required()->check(CLI::ExistingFile);
    a.overlap->add_option("--n", a.n, "n-gram order")->check(CLI::PositiveNumber);

    a.dedup = metrics->add_subcommand("dedup", "Fraction of near-duplicate documents");
    a.dedup->add_option("--input", a.dd_input, "Corpus JSONL")->required()->check(CLI::ExistingFile);
    a.dedup->add_option("--threshold", a.threshold, "Jaccard threshold")->check(CLI::Range(0.0, 1.0));
    a.dedup->add_option("--window", a.dd_window, "Shingle window in tokens")->check(CLI::PositiveNumber);
    a.dedup->add_option("--method", a.method, "Pairwise scan or inverted index")
        ->check(CLI::IsMember({"exact", "indexed"}));

    a.copy = metrics->add_subcommand("copy", "Flag synthetic documents sharing a shingle with their source");
    a.copy->add_option("--source", a.cp_source, "Source JSONL")->required()->check(CLI::ExistingFile);
    a.copy->add_option("--synthetic", a.cp_synthetic, "Synthetic JSONL")->required()->check(CLI::ExistingFile);
    a.copy->add_option("--window", a.cp_window, "Shingle window in tokens")->check(CLI::PositiveNumber);
}

// Synthetic ids look like "<source id>:<relation>"; with a single source every
// synthetic document belongs to it.
std::size_t source_of(const std::vector<corpus::Document>& sources, const std::string& synthetic_id) {
    if (sources.size() == 1) return 0;
    const auto colon = synthetic_id.rfind(':');
    const std::string prefix = colon == std::string::npos ? synthetic_id : synthetic_id.substr(0, colon);
    for (std::size_t i = 0; i < sources.size(); ++i)
        if (sources[i].id == prefix) return i;
    throw std::invalid_argument("no source document for synthetic id " + synthetic_id);
}

void run_corpus(const CLI::App& root, CorpusArgs& a, std::ostream& out, std::ostream& err) {
    using namespace corpus;
    if (*a.plan) {
        auto h = make_backend(a.plan_backend);
        std::string lines;
        for (const auto& doc : read_jsonl_file(a.plan_input))
            lines += plan_to_json(extract_entities(doc, *h.backend, a.plan_options)) + "\n";
        Sink sink(a.plan_out, out);
        sink.emit("plans.jsonl", lines);
        sink.manifest(root, "corpus plan", json{{"backend", h.backend->name()}}, err);
        return;
    }
    if (*a.synthesize) {
        auto h = make_backend(a.syn_backend);
        SynthesisOptions options;
        options.budget = a.budget;
        options.max_in_flight = a.max_in_flight;
        std::string plans;
        std::vector<Document> synthetic;
        json per_doc = json::array();
        std::size_t failures = 0;
        for (const auto& doc : read_jsonl_file(a.syn_input)) {
            const auto plan = extract_entities(doc, *h.backend, a.syn_plan_options);
            plans += plan_to_json(plan) + "\n";
            auto result = synthesize_corpus(plan, doc, *h.backend, options);
            failures += result.failures.size();
            json entry = json::parse(synthesis_manifest_json(result));
            per_doc.push_back({{"doc_id", doc.id}, {"synthesis", std::move(entry)}});
            for (auto& d : result.documents) synthetic.push_back(std::move(d));
        }
        std::ostringstream jsonl;
        write_jsonl(jsonl, synthetic);
        std::size_t tokens = 0;
        for (const auto& d : synthetic) tokens += d.token_count;

        Sink sink(a.syn_out, out);
        sink.emit("plans.jsonl", plans);
        sink.emit("synthetic.jsonl", jsonl.str());
        sink.emit("synthesis.json", per_doc.dump(2) + "\n");
        if (failures > 0) err << "warning: " << failures << " relation(s) failed; see synthesis.json\n";
        json resolved{{"backend", h.backend->name()},
                      {"documents", synthetic.size()},
                      {"total_tokens", tokens},
                      {"failures", failures}};
        sink.manifest(root, "corpus synthesize", std::move(resolved), err);
        return;
    }
    if (*a.overlap) {
        const auto sources = read_jsonl_file(a.ov_source);
        const auto synthetic = read_jsonl_file(a.ov_synthetic);
        if (sources.empty()) throw std::invalid_argument("source corpus is empty");
        std::vector<std::vector<Document>> groups(sources.size());
        for (const auto& d : synthetic) groups[source_of(sources, d.id)].push_back(d);
        json resolved = json::object();
        if (sources.size() == 1) {
            const double pct = ngram_overlap(sources[0], groups[0], a.n);
            out << real_text(pct) << "\n";
            resolved[sources[0].id] = pct;
        } else {
            out << "source_id,synthetic_docs,overlap\n";
            for (std::size_t i = 0; i < sources.size(); ++i) {
                const double pct = ngram_overlap(sources[i], groups[i], a.n);
                out << sources[i].id << ',' << groups[i].size() << ',' << real_text(pct) << "\n";
                resolved[sources[i].id] = pct;
            }
        }
        Sink("", out).manifest(root, "corpus metrics overlap", json{{"overlap", std::move(resolved)}}, err);
        return;
    }
    if (*a.dedup) {
        const auto docs = read_jsonl_file(a.dd_input);
        const auto method = a.method == "indexed" ? DedupMethod::Indexed : DedupMethod::Exact;
        const double rate = duplicate_rate(docs, a.threshold, a.dd_window, method);
        out << real_text(rate) << "\n";
        Sink("", out).manifest(root, "corpus metrics dedup",
                               json{{"documents", docs.size()}, {"duplicate_rate", rate}}, err);
        return;
    }
    const auto sources = read_jsonl_file(a.cp_source);
    const auto synthetic = read_jsonl_file(a.cp_synthetic);
    if (sources.empty()) throw std::invalid_argument("source corpus is empty");
    std::vector<ShingleProfile> profiles;
    for (const auto& s : sources) profiles.push_back(shingle_profile(s, a.cp_window));
    std::size_t copied = 0;
    out << "synthetic_id,source_id,copied\n";
    for (const auto& d : synthetic) {
        const std::size_t s = source_of(sources, d.id);
        const bool hit = pair_copy_check(profiles[s], shingle_profile(d, a.cp_window));
        copied += hit;
        out << d.id << ',' << sources[s].id << ',' << (hit ? 1 : 0) << "\n";
    }
    Sink("", out).manifest(root, "corpus metrics copy",
                           json{{"synthetic_docs", synthetic.size()}, {"copied", copied}}, err);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Entity-graph augmentation: simulation, theory, fitting and corpus tools", "entigraph"};
    app.option_defaults()->always_capture_default();
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", ENTIGRAPH_VERSION);
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with option values");

    SimulateArgs sim;
    AnalyzeArgs ana;
    FitArgs fit;
    CorpusArgs cor;
    add_simulate(app, sim);
    add_analyze(app, ana);
    add_fit(app, fit);
    add_corpus(app, cor);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (app.got_subcommand("simulate")) {
            run_simulate(app, sim, out, err);
        } else if (app.got_subcommand("analyze")) {
            run_analyze(app, ana, out, err);
        } else if (app.got_subcommand("fit")) {
            run_fit(app, fit, out, err);
        } else {
            run_corpus(app, cor, out, err);
        }
    } catch (const std::logic_error& e) {
        // invalid_argument, domain_error, out_of_range, length_error
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace entigraph::cli
