#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "gwt/complementary.hpp"
#include "gwt/io.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kValidation = 2, kInfeasible = 3, kIo = 4 };

struct CliError : std::runtime_error {
    int code;
    CliError(int c, const std::string& m) : std::runtime_error(m), code(c) {}
};

struct ManifestWriter {
    nlohmann::json inputs = nlohmann::json::array();
    nlohmann::json outputs = nlohmann::json::array();
    nlohmann::json params = nlohmann::json::object();
    std::string command;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write(const std::string& primary_output) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        nlohmann::json m = {{"command", command}, {"inputs", inputs},   {"params", params},
                            {"outputs", outputs}, {"version", kVersion}, {"wall_ms", ms}};
        gwt::write_json(primary_output + ".manifest.json", m);
    }
};

std::vector<gwt::Generator> parse_gens(const std::string& spec) {
    std::vector<gwt::Generator> gens;
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        try {
            int s = std::stoi(item.substr(0, colon));
            double w = colon == std::string::npos ? 1.0 : std::stod(item.substr(colon + 1));
            gens.push_back({s, w});
        } catch (const std::exception&) {
            throw CliError(kValidation, "bad generator spec '" + item + "' (want s:w)");
        }
    }
    if (gens.empty()) throw CliError(kValidation, "empty generator list");
    return gens;
}

std::vector<gwt::ExponentParam> parse_alphas(const std::string& spec) {
    std::vector<gwt::ExponentParam> out;
    if (spec.empty()) return out;
    std::istringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        gwt::ExponentParam p;
        if (!item.empty() && item[0] == 'h') {
            p.mode = gwt::ExponentParam::Mode::Hyperbolic;
            item = item.substr(item.find(':') + 1);
        }
        try {
            p.alpha = std::stod(item);
        } catch (const std::exception&) {
            throw CliError(kValidation, "bad alpha '" + item + "' (want x or h:x)");
        }
        out.push_back(p);
    }
    return out;
}

gwt::SamplingPattern parse_pattern(const std::string& spec, int n) {
    if (spec.empty() || spec == "default") return gwt::default_pattern(n);
    gwt::SamplingPattern sp;
    for (char c : spec) {
        if (c == '1')
            sp.keep_lp.push_back(true);
        else if (c == '0')
            sp.keep_lp.push_back(false);
        else if (c != ',')
            throw CliError(kValidation, "pattern must be 'default' or a 0/1 string");
    }
    if (sp.size() != n)
        throw CliError(kValidation, "pattern length " + std::to_string(sp.size()) +
                                        " does not match graph size " + std::to_string(n));
    return sp;
}

gwt::CoarseningStrategy parse_strategy(const std::string& s) {
    if (s == "keep-existing") return gwt::CoarseningStrategy::KeepExisting;
    if (s == "preserve-set") return gwt::CoarseningStrategy::PreserveSet;
    throw CliError(kValidation, "unknown strategy '" + s + "'");
}

gwt::BankBuilder make_builder(const std::string& bank, int k,
                              const std::vector<gwt::ExponentParam>& alphas) {
    if (bank == "hgswt") return gwt::spline_builder(k);
    if (bank == "hgeswt") {
        if (alphas.empty()) throw CliError(kValidation, "hgeswt needs --alphas");
        return gwt::espline_builder(alphas, k);
    }
    if (bank == "hcgswt") return gwt::complementary_spline_builder(k);
    if (bank == "hcgeswt") {
        if (alphas.empty()) throw CliError(kValidation, "hcgeswt needs --alphas");
        return gwt::complementary_espline_builder(alphas, k);
    }
    throw CliError(kValidation, "unknown bank '" + bank + "'");
}

gwt::Pyramid read_pyramid(const std::string& dir, const gwt::BankBuilder& builder) {
    auto manifest = gwt::read_json(dir + "/manifest.json");
    gwt::Pyramid p;
    int li = 0;
    for (const auto& lvl : manifest.at("levels")) {
        gwt::PyramidLevel level;
        level.graph = gwt::graph_from_json(lvl.at("graph"));
        level.pattern = gwt::default_pattern(level.graph.n);
        level.bank = builder(level.graph, li);
        gwt::GraphSignal coeffs = gwt::read_signal_csv(
            dir + "/" + lvl.at("coefficients").get<std::string>());
        level.hp_nodes = level.pattern.highpass_indices();
        if (static_cast<int>(level.hp_nodes.size()) != coeffs.size())
            throw CliError(kIo, "coefficient count mismatch in " + dir);
        level.hp_coeffs = coeffs.values;
        p.levels.push_back(std::move(level));
        ++li;
    }
    p.root_lp = gwt::read_signal_csv(dir + "/root.csv");
    return p;
}

int cmd_graph_make(int n, const std::string& gens, const std::string& out, ManifestWriter& mw) {
    auto g = gwt::make_circulant(n, parse_gens(gens));
    gwt::write_json(out, gwt::graph_to_json(g));
    mw.outputs.push_back(out);
    mw.write(out);
    return kOk;
}

int cmd_graph_approx(const std::string& in, const std::string& relabel,
                     const std::string& signal, const std::string& out,
                     const std::string& perm_out, ManifestWriter& mw) {
    gwt::DenseGraph d = gwt::make_dense_graph(gwt::read_matrix_csv(in));
    mw.inputs.push_back(in);
    gwt::Relabelling r;
    if (relabel == "identity")
        r = gwt::identity_relabel(d.n());
    else if (relabel == "rcm")
        r = gwt::rcm_relabel(d);
    else if (relabel == "sort") {
        if (signal.empty()) throw CliError(kValidation, "--relabel sort needs --signal");
        r = gwt::sort_relabel(gwt::read_signal_csv(signal));
        mw.inputs.push_back(signal);
    } else {
        throw CliError(kValidation, "unknown relabelling '" + relabel + "'");
    }
    auto g = gwt::nearest_circulant(d, r);
    gwt::write_json(out, gwt::graph_to_json(g));
    mw.outputs.push_back(out);
    if (!perm_out.empty()) {
        gwt::write_json(perm_out, nlohmann::json{{"perm", r.perm}});
        mw.outputs.push_back(perm_out);
    }
    mw.write(out);
    return kOk;
}

int cmd_graph_product(const std::string& kind, const std::string& g1_path,
                      const std::string& g2_path, const std::string& out,
                      const std::string& iso_out, ManifestWriter& mw) {
    nlohmann::json pj = {{"kind", kind},
                         {"g1", gwt::read_json(g1_path)},
                         {"g2", gwt::read_json(g2_path)}};
    gwt::ProductGraph pg = gwt::product_from_json(pj);  // validates kind + factors
    mw.inputs.push_back(g1_path);
    mw.inputs.push_back(g2_path);
    gwt::write_json(out, gwt::product_to_json(pg));
    mw.outputs.push_back(out);
    if (pg.kind == gwt::ProductKind::Lexicographic && !iso_out.empty()) {
        auto iso = gwt::lexicographic_circulant(pg.g1, pg.g2);
        gwt::write_json(iso_out, nlohmann::json{{"graph", gwt::graph_to_json(iso.graph)},
                                                {"perm", iso.perm}});
        mw.outputs.push_back(iso_out);
    }
    mw.write(out);
    return kOk;
}

int cmd_graph_coarsen(const std::string& in, const std::string& strategy, const std::string& out,
                      ManifestWriter& mw) {
    auto g = gwt::graph_from_json(gwt::read_json(in));
    mw.inputs.push_back(in);
    auto c = gwt::coarsen(g, parse_strategy(strategy));
    gwt::write_json(out, gwt::graph_to_json(c));
    mw.outputs.push_back(out);
    mw.write(out);
    return kOk;
}

int cmd_transform(const std::string& graph_path, const std::string& bank, int k,
                  const std::string& alphas_spec, int levels, const std::string& strategy,
                  const std::string& pattern_spec, const std::string& signal_path,
                  const std::string& out, bool inverse, bool force, ManifestWriter& mw) {
    auto g = gwt::graph_from_json(gwt::read_json(graph_path));
    mw.inputs.push_back(graph_path);
    auto alphas = parse_alphas(alphas_spec);
    auto builder = make_builder(bank, k, alphas);

    if (inverse) {
        gwt::Pyramid p = read_pyramid(signal_path, builder);
        mw.inputs.push_back(signal_path);
        gwt::GraphSignal x = gwt::pyramid_synthesize(p);
        gwt::write_signal_csv(out, x);
        mw.outputs.push_back(out);
        mw.write(out);
        return kOk;
    }

    gwt::GraphSignal x = gwt::read_signal_csv(signal_path);
    mw.inputs.push_back(signal_path);
    if (x.size() != g.n) throw CliError(kValidation, "signal length does not match graph size");

    gwt::FilterBank fb0 = builder(g, 0);
    gwt::SamplingPattern sp0 = parse_pattern(pattern_spec, g.n);
    auto rep = gwt::check_invertibility(fb0, sp0);
    if (!rep.invertible && !force)
        throw CliError(kInfeasible,
                       "analysis system is not invertible (" + rep.detail + "); use --force");

    if (levels == 1 && !pattern_spec.empty() && pattern_spec != "default") {
        gwt::GraphSignal w = gwt::analyze(fb0, sp0, x);
        gwt::write_signal_csv(out, w);
        mw.outputs.push_back(out);
        mw.write(out);
        return kOk;
    }

    gwt::Pyramid p = gwt::pyramid_analyze(g, builder, parse_strategy(strategy), x, levels);
    gwt::write_pyramid(out, p);
    mw.outputs.push_back(out);
    mw.write(out + "/run");
    return kOk;
}

int cmd_nla(const std::string& graph_path, const std::string& bank, int k,
            const std::string& alphas_spec, int levels, const std::string& strategy,
            const std::string& signal_path, int kmax, int step, const std::string& out,
            ManifestWriter& mw) {
    auto g = gwt::graph_from_json(gwt::read_json(graph_path));
    gwt::GraphSignal x = gwt::read_signal_csv(signal_path);
    mw.inputs.push_back(graph_path);
    mw.inputs.push_back(signal_path);
    if (x.size() != g.n) throw CliError(kValidation, "signal length does not match graph size");
    if (kmax < 0) kmax = g.n;
    if (step <= 0) throw CliError(kValidation, "--step must be positive");

    auto builder = make_builder(bank, k, parse_alphas(alphas_spec));
    gwt::Decomposition d =
        gwt::decompose(g, builder, parse_strategy(strategy), x, levels);
    std::vector<int> ks;
    for (int kk = 0; kk <= kmax; kk += step) ks.push_back(kk);
    if (ks.back() != kmax) ks.push_back(kmax);
    gwt::NlaResult r = gwt::nla(d, ks);
    gwt::write_nla_csv(out, r);
    mw.outputs.push_back(out);
    mw.write(out);
    return kOk;
}

int cmd_check(const std::string& graph_path, const std::string& bank, int k,
              const std::string& alphas_spec, const std::string& pattern_spec,
              const std::string& out, ManifestWriter& mw) {
    auto g = gwt::graph_from_json(gwt::read_json(graph_path));
    mw.inputs.push_back(graph_path);
    auto builder = make_builder(bank, k, parse_alphas(alphas_spec));
    gwt::FilterBank fb = builder(g, 0);
    gwt::SamplingPattern sp = parse_pattern(pattern_spec, g.n);

    nlohmann::json sf = nlohmann::json::array();
    for (const auto& [root, mult] : gwt::strang_fix_multiplicity(fb))
        sf.push_back({{"re", root.real()}, {"im", root.imag()}, {"multiplicity", mult}});
    nlohmann::json j = {
        {"bank", gwt::bank_to_json(fb)},
        {"invertibility", gwt::invertibility_to_json(gwt::check_invertibility(fb, sp))},
        {"strang_fix", sf},
        {"vanishing_moments", fb.alphas.empty() ? 2 * fb.k : fb.k}};
    gwt::write_json(out, j);
    mw.outputs.push_back(out);
    mw.write(out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("GWT_THREADS")) {
        int t = std::atoi(threads);
        if (t > 0) Eigen::setNbThreads(t);
    }

    CLI::App app{"circulant graph wavelet toolkit"};
    app.require_subcommand(1);
    unsigned seed = 0;
    app.add_option("--seed", seed, "rng seed recorded in the manifest");

    // graph
    auto* graph = app.add_subcommand("graph", "create, approximate, combine, coarsen graphs");
    graph->require_subcommand(1);

    int n = 0;
    std::string gens, out, in, relabel = "identity", signal, perm_out;
    auto* gmake = graph->add_subcommand("make", "circulant graph from a generator list");
    gmake->add_option("--n", n, "node count")->required();
    gmake->add_option("--gens", gens, "comma list s:w")->required();
    gmake->add_option("--out", out, "output graph JSON")->required();

    auto* gapprox = graph->add_subcommand("approx", "nearest circulant to a dense adjacency");
    gapprox->add_option("--in", in, "adjacency CSV")->required();
    gapprox->add_option("--relabel", relabel, "identity|rcm|sort");
    gapprox->add_option("--signal", signal, "signal CSV (for sort)");
    gapprox->add_option("--out", out, "output graph JSON")->required();
    gapprox->add_option("--perm", perm_out, "output permutation JSON");

    std::string kind, g1_path, g2_path, iso_out;
    auto* gprod = graph->add_subcommand("product", "product of two circulant graphs");
    gprod->add_option("--kind", kind, "kronecker|cartesian|strong|lexicographic")->required();
    gprod->add_option("--g1", g1_path, "first factor JSON")->required();
    gprod->add_option("--g2", g2_path, "second factor JSON")->required();
    gprod->add_option("--out", out, "output product JSON")->required();
    gprod->add_option("--iso", iso_out, "circulant isomorphism JSON (lexicographic)");

    std::string strategy = "preserve-set";
    auto* gcoarsen = graph->add_subcommand("coarsen", "halve a circulant graph");
    gcoarsen->add_option("--in", in, "input graph JSON")->required();
    gcoarsen->add_option("--strategy", strategy, "keep-existing|preserve-set");
    gcoarsen->add_option("--out", out, "output graph JSON")->required();

    // transform
    std::string graph_path, bank = "hgswt", alphas_spec, pattern_spec = "default";
    int k = 1, levels = 1, kmax = -1, step = 1;
    bool inverse = false, force = false;
    auto* transform = app.add_subcommand("transform", "wavelet analysis / synthesis");
    transform->add_option("--graph", graph_path, "graph JSON")->required();
    transform->add_option("--bank", bank, "hgswt|hgeswt|hcgswt|hcgeswt");
    transform->add_option("--k", k, "filter power");
    transform->add_option("--alphas", alphas_spec, "comma list of exponents (x or h:x)");
    transform->add_option("--levels", levels, "pyramid depth");
    transform->add_option("--strategy", strategy, "keep-existing|preserve-set");
    transform->add_option("--pattern", pattern_spec, "'default' or 0/1 string");
    transform->add_option("--signal", signal, "signal CSV (or pyramid dir with --inverse)")
        ->required();
    transform->add_option("--out", out, "output dir (forward) or CSV (inverse)")->required();
    transform->add_flag("--inverse", inverse, "reconstruct from a pyramid directory");
    transform->add_flag("--force", force, "proceed past a failed invertibility check");

    // nla
    auto* nla_cmd = app.add_subcommand("nla", "nonlinear approximation sweep");
    nla_cmd->add_option("--graph", graph_path, "graph JSON")->required();
    nla_cmd->add_option("--bank", bank, "hgswt|hgeswt|hcgswt|hcgeswt");
    nla_cmd->add_option("--k", k, "filter power");
    nla_cmd->add_option("--alphas", alphas_spec, "comma list of exponents");
    nla_cmd->add_option("--levels", levels, "pyramid depth");
    nla_cmd->add_option("--strategy", strategy, "keep-existing|preserve-set");
    nla_cmd->add_option("--signal", signal, "signal CSV")->required();
    nla_cmd->add_option("--kmax", kmax, "largest kept-coefficient count (default N)");
    nla_cmd->add_option("--step", step, "sweep step");
    nla_cmd->add_option("--out", out, "output CSV")->required();

    // check
    auto* check = app.add_subcommand("check", "invertibility and moment report");
    check->add_option("--graph", graph_path, "graph JSON")->required();
    check->add_option("--bank", bank, "hgswt|hgeswt|hcgswt|hcgeswt");
    check->add_option("--k", k, "filter power");
    check->add_option("--alphas", alphas_spec, "comma list of exponents");
    check->add_option("--pattern", pattern_spec, "'default' or 0/1 string");
    check->add_option("--out", out, "output JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    ManifestWriter mw;
    {
        std::ostringstream cmd;
        for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
        mw.command = cmd.str();
        mw.params["seed"] = seed;
    }

    try {
        if (gmake->parsed()) return cmd_graph_make(n, gens, out, mw);
        if (gapprox->parsed()) return cmd_graph_approx(in, relabel, signal, out, perm_out, mw);
        if (gprod->parsed()) return cmd_graph_product(kind, g1_path, g2_path, out, iso_out, mw);
        if (gcoarsen->parsed()) return cmd_graph_coarsen(in, strategy, out, mw);
        if (transform->parsed())
            return cmd_transform(graph_path, bank, k, alphas_spec, levels, strategy,
                                 pattern_spec, signal, out, inverse, force, mw);
        if (nla_cmd->parsed())
            return cmd_nla(graph_path, bank, k, alphas_spec, levels, strategy, signal, kmax,
                           step, out, mw);
        if (check->parsed())
            return cmd_check(graph_path, bank, k, alphas_spec, pattern_spec, out, mw);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const gwt::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const gwt::InfeasibleFactorizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const gwt::SingularSystemError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInfeasible;
    }
    return kValidation;
}
