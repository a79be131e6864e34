#include "gapamp/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gapamp/clique_reduce.hpp"
#include "gapamp/dmc_reduce.hpp"
#include "gapamp/error.hpp"
#include "gapamp/generators.hpp"
#include "gapamp/instances.hpp"
#include "gapamp/oracles.hpp"
#include "gapamp/rational.hpp"
#include "gapamp/sampler.hpp"
#include "gapamp/so_amplify.hpp"

namespace gapamp {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

// exact value when it fits, otherwise ~2^log2
std::string fmt_symbolic(const std::optional<std::uint64_t>& value, double log2) {
    if (value)
        return std::to_string(*value);
    return "~2^" + fmt_double(log2);
}

/// key=value lines or a single JSON object, built side by side.
class Report {
public:
    explicit Report(bool json) : json_(json) {}

    void add(const std::string& key, const std::string& value) {
        lines_.push_back(key + "=" + value);
        obj_[key] = value;
    }
    void add(const std::string& key, const char* value) { add(key, std::string(value)); }
    void add(const std::string& key, std::uint64_t value) {
        lines_.push_back(key + "=" + std::to_string(value));
        obj_[key] = value;
    }
    void add(const std::string& key, double value) {
        lines_.push_back(key + "=" + fmt_double(value));
        obj_[key] = value;
    }
    void add(const std::string& key, bool value) {
        lines_.push_back(key + "=" + (value ? "1" : "0"));
        obj_[key] = value;
    }
    void add(const std::string& key, const Rational& value) {
        lines_.push_back(key + "=" + value.to_string());
        obj_[key] = value.to_string();
    }

    void print(std::ostream& out) const {
        if (json_) {
            out << obj_.dump() << '\n';
            return;
        }
        for (const auto& line : lines_)
            out << line << '\n';
    }

private:
    bool json_;
    std::vector<std::string> lines_;
    nlohmann::json obj_ = nlohmann::json::object();
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file)
        throw Error(ErrorCode::NotFound, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void write_output(const std::string& out_path, const std::string& payload, std::ostream& out) {
    if (out_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file)
        throw Error(ErrorCode::NotFound, "cannot open '" + out_path + "' for writing");
    file << payload;
}

MixedInstance load_so(const std::string& path) {
    auto parsed = parse_instance(read_input(path));
    if (auto* inst = std::get_if<MixedInstance>(&parsed))
        return *inst;
    throw Error(ErrorCode::SyntaxError, "'" + path + "' holds a dmc instance, expected so");
}

MulticutInstance load_dmc(const std::string& path) {
    auto parsed = parse_instance(read_input(path));
    if (auto* inst = std::get_if<MulticutInstance>(&parsed))
        return *inst;
    throw Error(ErrorCode::SyntaxError, "'" + path + "' holds an so instance, expected dmc");
}

Rational parse_rational(const std::string& text) {
    try {
        auto slash = text.find('/');
        if (slash != std::string::npos) {
            return Rational(std::stoll(text.substr(0, slash)),
                            std::stoll(text.substr(slash + 1)));
        }
        auto dot = text.find('.');
        if (dot == std::string::npos)
            return Rational(std::stoll(text));
        if (text.size() - dot > 19)
            throw Error(ErrorCode::NumericOverflow, "too many decimal places");
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::int64_t den = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i)
            den *= 10;
        return Rational(std::stoll(digits), den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw Error(ErrorCode::SyntaxError, "cannot parse '" + text + "' as a rational");
    }
}

struct CommonOptions {
    std::uint64_t seed = 1;
    std::string out_path;
    bool json = false;
    std::uint64_t cap = 0;  // 0 = command default
    bool full_space = false;
    unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool emits_instance) {
    cmd->add_option("--seed", opts.seed, "RNG seed");
    if (emits_instance)
        cmd->add_option("--out", opts.out_path, "write the instance here instead of stdout");
    cmd->add_flag("--json", opts.json, "report as JSON");
    cmd->add_option("--cap", opts.cap, "size/search cap override");
    cmd->add_option("--threads", opts.threads, "worker threads for the oracles");
}

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ms(Clock::time_point start) {
    return std::uint64_t(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gap amplification toolkit for Steiner orientation and directed multicut"};
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a named instance");
    std::string gen_name;
    gen->add_option("name", gen_name, "yes-chain | no-edge | dmc-no | dmc-yes | random")
        ->required();
    RandomMixedOptions rnd;
    std::uint32_t gen_links = 2, gen_undirected = 1;
    gen->add_option("--k", rnd.k, "terminal pairs");
    gen->add_option("--links", gen_links, "links per chain (yes-chain)");
    gen->add_option("--undirected", gen_undirected, "undirected links per chain (yes-chain)");
    gen->add_option("--n", rnd.n, "vertices (random)");
    gen->add_option("--edges", rnd.edges, "undirected edge attempts (random)");
    gen->add_option("--arcs", rnd.arcs, "arc attempts (random)");
    gen->add_flag("--planted", rnd.planted, "plant pairs along relaxation walks (random)");
    CommonOptions gen_opts;
    add_common(gen, gen_opts, true);

    // ---- solve-so ------------------------------------------------------
    auto* solve_so = app.add_subcommand("solve-so", "exhaustive Steiner orientation optimum");
    std::string solve_so_file;
    solve_so->add_option("file", solve_so_file, "instance file or -")->required();
    CommonOptions solve_so_opts;
    add_common(solve_so, solve_so_opts, false);

    // ---- solve-dmc -----------------------------------------------------
    auto* solve_dmc = app.add_subcommand("solve-dmc", "exhaustive directed multicut optimum");
    std::string solve_dmc_file;
    solve_dmc->add_option("file", solve_dmc_file, "instance file or -")->required();
    CommonOptions solve_dmc_opts;
    add_common(solve_dmc, solve_dmc_opts, false);

    // ---- solve-clique --------------------------------------------------
    auto* solve_clique = app.add_subcommand("solve-clique", "clique search on an exported instance");
    std::string solve_clique_file;
    solve_clique->add_option("file", solve_clique_file, "clique file or -")->required();
    CommonOptions solve_clique_opts;
    add_common(solve_clique, solve_clique_opts, false);

    // ---- amplify-so ----------------------------------------------------
    auto* amplify_cmd = app.add_subcommand("amplify-so", "layered gap amplification");
    std::string amplify_file;
    std::uint32_t amplify_q = 2;
    std::optional<std::uint64_t> amplify_layers, amplify_copies;
    amplify_cmd->add_option("file", amplify_file, "base instance file or -")->required();
    amplify_cmd->add_option("--q", amplify_q, "gap target")->required();
    amplify_cmd->add_option("--layers", amplify_layers, "layer count override");
    amplify_cmd->add_option("--copies", amplify_copies, "per-layer copy multiplier override");
    CommonOptions amplify_opts;
    add_common(amplify_cmd, amplify_opts, true);
    amplify_cmd->add_flag("--full-space", amplify_opts.full_space,
                          "wire the whole tuple space instead of sampling");

    // ---- reduce-dmc ----------------------------------------------------
    auto* reduce_cmd = app.add_subcommand("reduce-dmc", "parallel multicut composition");
    std::string reduce_file;
    std::uint32_t reduce_q = 2;
    std::optional<std::uint64_t> reduce_m, reduce_k0;
    bool reduce_verify = false;
    reduce_cmd->add_option("file", reduce_file, "4-pair base instance file or -")->required();
    reduce_cmd->add_option("--q", reduce_q, "gap target")->required();
    reduce_cmd->add_option("--m", reduce_m, "copy count override");
    reduce_cmd->add_option("--k0", reduce_k0, "terminal pair count override");
    reduce_cmd->add_flag("--verify", reduce_verify,
                         "materialize the configuration family and verify the sample");
    CommonOptions reduce_opts;
    add_common(reduce_cmd, reduce_opts, true);
    reduce_cmd->add_flag("--full-space", reduce_opts.full_space, "wire all 4^M tuples");

    // ---- to-clique -----------------------------------------------------
    auto* to_clique = app.add_subcommand("to-clique", "compile to a clique instance");
    std::string to_clique_file;
    std::uint32_t to_clique_beta = 1;
    to_clique->add_option("file", to_clique_file, "instance file or -")->required();
    to_clique->add_option("--beta", to_clique_beta, "columns per terminal pair")->required();
    CommonOptions to_clique_opts;
    add_common(to_clique, to_clique_opts, true);

    // ---- min-beta ------------------------------------------------------
    auto* min_beta_cmd = app.add_subcommand("min-beta", "smallest beta admitting a clique");
    std::string min_beta_file;
    std::uint32_t min_beta_max = 0;
    min_beta_cmd->add_option("file", min_beta_file, "instance file or -")->required();
    min_beta_cmd->add_option("--beta", min_beta_max, "largest beta to try (default: n)");
    CommonOptions min_beta_opts;
    add_common(min_beta_cmd, min_beta_opts, false);

    // ---- plan ----------------------------------------------------------
    auto* plan_cmd = app.add_subcommand("plan", "amplification parameter arithmetic");
    std::uint32_t plan_k = 2, plan_q = 2;
    std::optional<std::uint64_t> plan_layers, plan_copies;
    plan_cmd->add_option("--k", plan_k, "terminal pairs")->required();
    plan_cmd->add_option("--q", plan_q, "gap target")->required();
    plan_cmd->add_option("--layers", plan_layers, "layer count override");
    plan_cmd->add_option("--copies", plan_copies, "per-layer copy multiplier override");
    CommonOptions plan_opts;
    add_common(plan_cmd, plan_opts, false);

    // ---- plan-dmc ------------------------------------------------------
    auto* plan_dmc_cmd = app.add_subcommand("plan-dmc", "composition parameter arithmetic");
    std::uint32_t plan_dmc_p = 1, plan_dmc_q = 2;
    std::optional<std::uint64_t> plan_dmc_m, plan_dmc_k0;
    plan_dmc_cmd->add_option("--p", plan_dmc_p, "base budget")->required();
    plan_dmc_cmd->add_option("--q", plan_dmc_q, "gap target")->required();
    plan_dmc_cmd->add_option("--m", plan_dmc_m, "copy count override");
    plan_dmc_cmd->add_option("--k0", plan_dmc_k0, "terminal pair count override");
    CommonOptions plan_dmc_opts;
    add_common(plan_dmc_cmd, plan_dmc_opts, false);

    // ---- verify-sampler -------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify-sampler", "sample and verify a tuple family");
    std::uint32_t verify_radix = 4, verify_len = 3;
    std::string verify_delta = "0.1";
    std::uint64_t verify_count = 256, verify_fn_seed = 42;
    std::optional<std::uint64_t> verify_m;
    verify_cmd->add_option("--radix", verify_radix, "per-coordinate domain size");
    verify_cmd->add_option("--len", verify_len, "tuple length");
    verify_cmd->add_option("--delta", verify_delta, "allowed deviation (decimal or a/b)");
    verify_cmd->add_option("--count", verify_count, "indicator functions to test against");
    verify_cmd->add_option("--fn-seed", verify_fn_seed, "seed of the function family");
    verify_cmd->add_option("--m", verify_m, "family size override");
    CommonOptions verify_opts;
    add_common(verify_cmd, verify_opts, false);

    std::vector<const char*> argv;
    argv.push_back("gapamp");
    for (const auto& arg : args)
        argv.push_back(arg.c_str());

    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    const auto start = Clock::now();
    try {
        if (gen->parsed()) {
            std::string text;
            std::string kind;
            if (gen_name == "no-edge") {
                text = serialize_instance(gen_no_edge());
                kind = "so";
            } else if (gen_name == "yes-chain") {
                text = serialize_instance(gen_yes_chain(rnd.k, gen_links, gen_undirected));
                kind = "so";
            } else if (gen_name == "dmc-no") {
                text = serialize_instance(gen_dmc_no());
                kind = "dmc";
            } else if (gen_name == "dmc-yes") {
                text = serialize_instance(gen_dmc_yes());
                kind = "dmc";
            } else if (gen_name == "random") {
                rnd.seed = gen_opts.seed;
                text = serialize_instance(gen_random_mixed(rnd));
                kind = "so";
            } else {
                throw Error(ErrorCode::NotFound, "unknown generator '" + gen_name + "'");
            }
            write_output(gen_opts.out_path, text, out);
            Report report(gen_opts.json);
            report.add("cmd", "gen " + gen_name);
            report.add("kind", kind);
            report.add("seed", gen_opts.seed);
            report.add("millis", elapsed_ms(start));
            report.print(err);
            return 0;
        }

        if (solve_so->parsed()) {
            MixedInstance inst = load_so(solve_so_file);
            std::uint64_t cap = solve_so_opts.cap ? solve_so_opts.cap : kOrientationCap;
            SoOracleResult result = opt_so(inst, cap, solve_so_opts.threads);
            Report report(solve_so_opts.json);
            report.add("cmd", "solve-so");
            report.add("n", std::uint64_t(inst.n));
            report.add("arcs", std::uint64_t(inst.arcs.size()));
            report.add("edges", std::uint64_t(inst.edges.size()));
            report.add("k", std::uint64_t(inst.pairs.size()));
            report.add("opt", std::uint64_t(result.value));
            report.add("ratio", double(result.value) / double(inst.pairs.size()));
            if (result.witness.bits.size() <= 64) {
                std::string bits;
                for (auto b : result.witness.bits)
                    bits += b ? '1' : '0';
                report.add("witness", bits);
            }
            report.add("millis", elapsed_ms(start));
            report.print(out);
            return 0;
        }

        if (solve_dmc->parsed()) {
            MulticutInstance inst = load_dmc(solve_dmc_file);
            std::uint64_t cap = solve_dmc_opts.cap ? solve_dmc_opts.cap : kCutsetCap;
            DmcOracleResult result = opt_dmc(inst, cap);
            Report report(solve_dmc_opts.json);
            report.add("cmd", "solve-dmc");
            report.add("n", std::uint64_t(inst.n));
            report.add("arcs", std::uint64_t(inst.arcs.size()));
            report.add("k", std::uint64_t(inst.pairs.size()));
            report.add("p", std::uint64_t(inst.budget));
            report.add("opt", std::uint64_t(result.value));
            report.add("ratio", double(result.value) / double(inst.pairs.size()));
            std::string cut;
            for (std::uint32_t idx : result.witness.indices)
                cut += (cut.empty() ? "" : ",") + std::to_string(idx);
            report.add("witness", cut);
            report.add("millis", elapsed_ms(start));
            report.print(out);
            return 0;
        }

        if (solve_clique->parsed()) {
            CliqueInstance inst = parse_clique(read_input(solve_clique_file));
            PartGraph graph;
            if (inst.k * inst.beta == inst.target) {
                graph = to_part_graph(inst);
            } else {
                graph.init(std::uint32_t(inst.verts.size()), 0);
                for (const auto& [a, b] : inst.edges)
                    graph.add_edge(a, b);
            }
            auto witness = max_clique_at_least(graph, inst.target);
            Report report(solve_clique_opts.json);
            report.add("cmd", "solve-clique");
            report.add("verts", std::uint64_t(inst.verts.size()));
            report.add("target", std::uint64_t(inst.target));
            report.add("found", witness.has_value());
            if (witness) {
                std::string picks;
                for (std::uint32_t v : *witness)
                    picks += (picks.empty() ? "" : ",") + std::to_string(v);
                report.add("witness", picks);
            }
            report.add("millis", elapsed_ms(start));
            report.print(out);
            return 0;
        }

        if (amplify_cmd->parsed()) {
            MixedInstance base = load_so(amplify_file);
            LayerPlan lp = plan(std::uint32_t(base.pairs.size()), amplify_q, amplify_layers,
                                amplify_copies);
            std::uint64_t cap = amplify_opts.cap ? amplify_opts.cap : (std::uint64_t(1) << 22);
            WiringMode mode = amplify_opts.full_space ? WiringMode::full()
                                                      : WiringMode::sampled(amplify_opts.seed);
            LayeredInstance result = amplify(base, lp, mode, cap);
            write_output(amplify_opts.out_path, serialize_instance(result.instance), out);
            if (!amplify_opts.out_path.empty())
                write_output(amplify_opts.out_path + ".prov", provenance_to_text(result), out);
            Report report(amplify_opts.json);
            report.add("cmd", "amplify-so");
            report.add("q", std::uint64_t(amplify_q));
            report.add("layers", std::uint64_t(result.layers));
            report.add("copies", std::uint64_t(result.copy_base.size()));
            report.add("k0", std::uint64_t(result.instance.pairs.size()));
            report.add("n", std::uint64_t(result.instance.n));
            report.add("arcs", std::uint64_t(result.instance.arcs.size()));
            report.add("edges", std::uint64_t(result.instance.edges.size()));
            if (lp.delta)
                report.add("delta", *lp.delta);
            report.add("full_space", amplify_opts.full_space);
            report.add("seed", amplify_opts.seed);
            report.add("millis", elapsed_ms(start));
            report.print(err);
            return 0;
        }

        if (reduce_cmd->parsed()) {
            MulticutInstance base = load_dmc(reduce_file);
            DmcPlan dp = plan_dmc(base.budget, reduce_q, reduce_m, reduce_k0);
            std::uint64_t cap = reduce_opts.cap ? reduce_opts.cap : (std::uint64_t(1) << 22);
            WiringMode mode = reduce_opts.full_space ? WiringMode::full()
                                                     : WiringMode::sampled(reduce_opts.seed);
            DmcReduction result = reduce_dmc(base, dp, mode, cap);
            write_output(reduce_opts.out_path, serialize_instance(result.instance), out);
            if (!reduce_opts.out_path.empty())
                write_output(reduce_opts.out_path + ".prov", dmc_provenance_to_text(result), out);
            Report report(reduce_opts.json);
            report.add("cmd", "reduce-dmc");
            report.add("q", std::uint64_t(reduce_q));
            report.add("M", result.copies);
            report.add("k0", std::uint64_t(result.instance.pairs.size()));
            report.add("p0", std::uint64_t(result.instance.budget));
            report.add("n", std::uint64_t(result.instance.n));
            report.add("arcs", std::uint64_t(result.instance.arcs.size()));
            report.add("full_space", reduce_opts.full_space);
            report.add("seed", reduce_opts.seed);
            if (reduce_verify) {
                // the configuration family: one indicator per C in 2^[4*M],
                // f_C(R) = 1 iff r_i avoids C_i in every copy
                if (result.copies > 5)
                    throw Error(ErrorCode::DomainTooLarge,
                                "--verify materializes 16^M configurations; M too large");
                const std::uint64_t m_copies = result.copies;
                FunctionFamily configs;
                configs.size = std::uint64_t(1) << (4 * m_copies);
                configs.eval = [m_copies](std::uint64_t c,
                                          std::span<const std::uint32_t> tuple) -> double {
                    for (std::uint64_t i = 0; i < m_copies; ++i)
                        if ((c >> (4 * i + tuple[i])) & 1)
                            return 0.0;
                    return 1.0;
                };
                SamplerFamily family;
                family.domain = {std::uint32_t(m_copies), 4};
                family.tuples = result.tuples;
                family.seed = reduce_opts.seed;
                VerifyResult vr = verify_sampler(family, configs, *dp.delta);
                report.add("verified", vr.ok);
                report.add("maxdev", vr.max_deviation);
                report.add("delta", *dp.delta);
            }
            report.add("millis", elapsed_ms(start));
            report.print(err);
            return 0;
        }

        if (to_clique->parsed()) {
            MixedInstance inst = contract_cycles(load_so(to_clique_file));
            std::uint64_t cap = to_clique_opts.cap ? to_clique_opts.cap : (std::uint64_t(1) << 20);
            std::uint64_t worst = std::uint64_t(inst.pairs.size()) * to_clique_beta *
                                  inst.n * inst.n;
            if (worst > cap)
                throw Error(ErrorCode::OracleTooLarge,
                            "clique instance may need " + std::to_string(worst) + " vertices");
            CliqueInstance ci = build_clique_instance(inst, to_clique_beta);
            write_output(to_clique_opts.out_path, serialize_clique(ci), out);
            Report report(to_clique_opts.json);
            report.add("cmd", "to-clique");
            report.add("k", std::uint64_t(ci.k));
            report.add("beta", std::uint64_t(ci.beta));
            report.add("parts", std::uint64_t(ci.k * ci.beta));
            report.add("verts", std::uint64_t(ci.verts.size()));
            report.add("cedges", std::uint64_t(ci.edges.size()));
            report.add("target", std::uint64_t(ci.target));
            report.add("millis", elapsed_ms(start));
            report.print(err);
            return 0;
        }

        if (min_beta_cmd->parsed()) {
            MixedInstance inst = contract_cycles(load_so(min_beta_file));
            std::uint32_t beta_max = min_beta_max ? min_beta_max : inst.n;
            std::uint64_t cap = min_beta_opts.cap ? min_beta_opts.cap : (std::uint64_t(1) << 20);
            auto result = min_beta(inst, beta_max, cap);
            Report report(min_beta_opts.json);
            report.add("cmd", "min-beta");
            report.add("k", std::uint64_t(inst.pairs.size()));
            report.add("beta_max", std::uint64_t(beta_max));
            if (auto bound = canonical_beta_bound(std::uint32_t(inst.pairs.size())))
                report.add("beta_bound", *bound);
            if (result) {
                report.add("beta", std::uint64_t(result->beta));
                CliqueInstance ci = build_clique_instance(inst, result->beta);
                Orientation o = clique_to_orientation(inst, ci, result->clique);
                EvalResult eval = satisfied_pairs_so(inst, o);
                report.add("satisfied", std::uint64_t(eval.count));
            } else {
                report.add("beta", "none");
            }
            report.add("millis", elapsed_ms(start));
            report.print(out);
            return 0;
        }

        if (plan_cmd->parsed()) {
            LayerPlan lp = plan(plan_k, plan_q, plan_layers, plan_copies);
            Report report(plan_opts.json);
            report.add("cmd", "plan");
            report.add("k", std::uint64_t(plan_k));
            report.add("q", std::uint64_t(plan_q));
            report.add("B", fmt_symbolic(lp.layers, lp.layers_log2));
            if (lp.delta)
                report.add("delta", *lp.delta);
            else
                report.add("delta", "~2^" + fmt_double(lp.delta_log2));
            report.add("multiplier", fmt_symbolic(lp.multiplier, lp.multiplier_log2));
            for (std::size_t i = 0; i < lp.copies.size() && i < 4; ++i)
                report.add("p" + std::to_string(i + 1),
                           fmt_symbolic(lp.copies[i], lp.copies_log2[i]));
            if (lp.layers && *lp.layers <= lp.copies.size() && *lp.layers > 4)
                report.add("p" + std::to_string(*lp.layers),
                           fmt_symbolic(lp.copies[*lp.layers - 1],
                                        lp.copies_log2[*lp.layers - 1]));
            report.add("k0", fmt_symbolic(lp.pair_count, lp.pair_count_log2));
            // |V(H)| <= |V(G)| * k0^2
            report.add("vertex_bound", "n*k0^2");
            report.add("vertex_bound_factor_log2", 2.0 * lp.pair_count_log2);
            report.print(out);
            return 0;
        }

        if (plan_dmc_cmd->parsed()) {
            DmcPlan dp = plan_dmc(plan_dmc_p, plan_dmc_q, plan_dmc_m, plan_dmc_k0);
            Report report(plan_dmc_opts.json);
            report.add("cmd", "plan-dmc");
            report.add("p", std::uint64_t(plan_dmc_p));
            report.add("q", std::uint64_t(plan_dmc_q));
            report.add("M", fmt_symbolic(dp.copies, dp.copies_log2));
            report.add("k0", fmt_symbolic(dp.pair_count, dp.pair_count_log2));
            report.add("p0", fmt_symbolic(dp.budget, dp.budget_log2));
            if (dp.delta)
                report.add("delta", *dp.delta);
            report.print(out);
            return 0;
        }

        if (verify_cmd->parsed()) {
            TupleDomain domain{verify_len, verify_radix};
            Rational delta = parse_rational(verify_delta);
            FunctionFamily functions =
                indicator_mixture_family(domain, verify_count, verify_fn_seed);
            Rational log2f(std::int64_t(std::ceil(std::log2(double(verify_count)))));
            std::uint64_t m = verify_m ? *verify_m : required_sample_count(delta, log2f);
            SamplerFamily family = sample_tuples(domain, m, verify_opts.seed);
            VerifyResult vr = verify_sampler(family, functions, delta);
            Report report(verify_opts.json);
            report.add("cmd", "verify-sampler");
            report.add("radix", std::uint64_t(verify_radix));
            report.add("len", std::uint64_t(verify_len));
            report.add("delta", delta);
            report.add("functions", verify_count);
            report.add("required", required_sample_count(delta, log2f));
            report.add("m", m);
            report.add("seed", verify_opts.seed);
            report.add("verified", vr.ok);
            report.add("maxdev", vr.max_deviation);
            report.add("millis", elapsed_ms(start));
            report.print(out);
            return 0;
        }
    } catch (const Error& e) {
        err << "error=" << e.what() << '\n';  // what() leads with the error name
        return 1;
    }
    err << "error=UsageError: no command\n";
    return 2;
}

} // namespace gapamp
