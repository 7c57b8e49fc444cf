#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stablelike/constants.hpp"
#include "stablelike/drift.hpp"
#include "stablelike/errors.hpp"
#include "stablelike/expr.hpp"
#include "stablelike/manifest.hpp"
#include "stablelike/model.hpp"
#include "stablelike/montecarlo.hpp"
#include "stablelike/rng.hpp"
#include "stablelike/stable.hpp"

namespace {

using namespace stablelike;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitMixedRegime = 3;
constexpr int kExitCheckFailed = 4;

// "logspace:1e2:1e6:9" or a comma-separated list
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.rfind("logspace:", 0) == 0) {
        double lo = 0.0, hi = 0.0;
        int count = 0;
        if (std::sscanf(spec.c_str(), "logspace:%lf:%lf:%d", &lo, &hi, &count) != 3 ||
            !(lo > 0.0) || !(hi > lo) || count < 2)
            throw DomainError("bad grid spec '" + spec +
                              "' (expected logspace:start:stop:count)");
        for (int i = 0; i < count; ++i)
            out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw DomainError("empty grid spec");
    return out;
}

std::string join_args(int argc, char** argv) {
    std::string cmd;
    for (int i = 0; i < argc; ++i) {
        if (i) cmd += ' ';
        cmd += argv[i];
    }
    return cmd;
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file " + path.string());
    f << bytes;
}

struct CommonModelArgs {
    std::string config_path;
    std::string preset_name;
    std::map<std::string, double> preset_params;
    double k_cutoff = 0.0;  // optional overrides, 0 = keep
    double l_cutoff = 0.0;
};

void add_model_options(CLI::App* cmd, CommonModelArgs& args) {
    cmd->add_option("--config", args.config_path, "model config JSON file");
    cmd->add_option("--preset", args.preset_name,
                    "named preset: sas_const, two_valued, periodic, pareto_sym");
    static const std::vector<std::string> keys = {"alpha",       "alpha_plus",
                                                  "alpha_minus", "base",
                                                  "amplitude",   "c"};
    for (const auto& key : keys) {
        std::string flag = "--preset-" + key;
        for (auto& ch : flag)
            if (ch == '_') ch = '-';
        cmd->add_option_function<double>(
            flag, [&args, key](double v) { args.preset_params[key] = v; },
            "preset parameter " + key);
    }
}

model::StableLikeModel load_model(const CommonModelArgs& args, std::string* config_text) {
    if (!args.config_path.empty() && !args.preset_name.empty())
        throw DomainError("--config and --preset are mutually exclusive");
    model::StableLikeModel m;
    if (!args.config_path.empty()) {
        std::ifstream f(args.config_path, std::ios::binary);
        if (!f) throw DomainError("cannot read config file " + args.config_path);
        std::stringstream buf;
        buf << f.rdbuf();
        m = model::load_config_text(buf.str());
    } else if (!args.preset_name.empty()) {
        m = model::preset(args.preset_name, args.preset_params);
    } else {
        throw DomainError("one of --config or --preset is required");
    }
    if (args.k_cutoff > 0.0) m.k_cutoff = args.k_cutoff;
    if (args.l_cutoff > 0.0) m.l_cutoff = args.l_cutoff;
    if (config_text) *config_text = model::config_to_text(m);
    return m;
}

void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const std::string& config_text,
                    std::optional<std::uint64_t> seed) {
    const auto man = manifest::make_manifest(command, config_text, seed);
    write_file(dir / "manifest.json",
               manifest::canonical_dump(manifest::to_json(man), 2));
}

double fmt_or_zero(double v) { return v == 0.0 ? 0.0 : v; }  // -0 normalization

int run_constants(double alpha, std::optional<double> beta, const std::string& format,
                  const std::string& out_dir, const std::string& command) {
    nlohmann::json j;
    std::string text;
    char buf[128];
    if (beta) {
        const auto t = constants::transience_constant(alpha, *beta);
        const double ratio = t.value / *beta;
        j = {{"alpha", alpha}, {"beta", *beta}, {"T", t.value},
             {"T_over_beta", ratio}, {"abs_error_estimate", t.abs_error_estimate}};
        std::snprintf(buf, sizeof buf, "T(%.9g, %.9g) = %.17g\nT/beta = %.17g\n", alpha,
                      *beta, t.value, ratio);
        text = buf;
    } else {
        const auto r = constants::recurrence_constant(alpha);
        j = {{"alpha", alpha}, {"R", r.value},
             {"abs_error_estimate", r.abs_error_estimate}};
        std::snprintf(buf, sizeof buf, "R(%.9g) = %.17g\n", alpha, r.value);
        text = buf;
    }
    if (format == "json")
        std::cout << manifest::canonical_dump(j, 2);
    else
        std::cout << text;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(std::filesystem::path(out_dir) / "constants.json",
                   manifest::canonical_dump(j, 2));
        write_manifest(out_dir, command, "", std::nullopt);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stable-like Markov chain laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    const std::string command_line = join_args(argc, argv);

    std::string format = "text";
    std::string out_dir;
    int threads = 0;
    app.add_option("--format", format, "output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", out_dir, "directory for output files");
    app.add_option("--threads", threads, "worker threads (speed only, never results)");

    // ---- constants ----
    auto* c_cmd = app.add_subcommand("constants", "threshold constants R and T");
    double c_alpha = 0.0;
    std::optional<double> c_beta;
    c_cmd->add_option("--alpha", c_alpha, "index")->required();
    c_cmd->add_option("--beta", c_beta, "transience beta (selects T)");

    // ---- pdf ----
    auto* p_cmd = app.add_subcommand("pdf", "stable density / jump density values");
    stable::StableParams p_params;
    CommonModelArgs p_model;
    double p_x = 0.0;
    std::string p_ygrid;
    std::optional<double> p_y;
    p_cmd->add_option("--alpha", p_params.alpha, "stability index");
    p_cmd->add_option("--skew", p_params.skew, "skewness");
    p_cmd->add_option("--scale", p_params.scale, "scale");
    p_cmd->add_option("--shift", p_params.shift, "shift");
    add_model_options(p_cmd, p_model);
    p_cmd->add_option("--x", p_x, "chain state (with --config/--preset)");
    p_cmd->add_option("--y", p_y, "single evaluation point");
    p_cmd->add_option("--y-grid", p_ygrid, "evaluation grid spec");

    // ---- sample ----
    auto* s_cmd = app.add_subcommand("sample", "draw stable / jump variates");
    stable::StableParams s_params;
    CommonModelArgs s_model;
    double s_x = 0.0;
    long s_n = 1;
    std::uint64_t s_seed = 0;
    s_cmd->add_option("--alpha", s_params.alpha, "stability index");
    s_cmd->add_option("--skew", s_params.skew, "skewness");
    s_cmd->add_option("--scale", s_params.scale, "scale");
    s_cmd->add_option("--shift", s_params.shift, "shift");
    add_model_options(s_cmd, s_model);
    s_cmd->add_option("--x", s_x, "chain state (with --config/--preset)");
    s_cmd->add_option("--n", s_n, "number of draws");
    s_cmd->add_option("--seed", s_seed, "stream seed")->required();

    // ---- classify ----
    auto* k_cmd = app.add_subcommand("classify", "drift-based recurrence/transience");
    CommonModelArgs k_model;
    add_model_options(k_cmd, k_model);
    std::string k_grid = "logspace:1e3:1e6:7";
    double k_radius = 1e3;
    double k_margin = 0.0;
    std::string k_betas;
    k_cmd->add_option("--grid", k_grid, "x grid spec");
    k_cmd->add_option("--radius", k_radius, "evidence radius r0");
    k_cmd->add_option("--margin", k_margin, "required margin (default 0.05 R or T)");
    k_cmd->add_option("--betas", k_betas, "comma-separated transience betas");

    // ---- simulate ----
    auto* m_cmd = app.add_subcommand("simulate", "seeded trajectory ensembles");
    CommonModelArgs m_model;
    add_model_options(m_cmd, m_model);
    mc::SimConfig sim;
    bool per_path = false;
    m_cmd->add_option("--steps", sim.n_steps, "steps per path");
    m_cmd->add_option("--paths", sim.n_paths, "number of paths");
    m_cmd->add_option("--seed", sim.seed, "ensemble seed");
    m_cmd->add_option("--x0", sim.x0, "start state");
    m_cmd->add_option("--radius", sim.return_radius, "return ball radius");
    m_cmd->add_option("--burn-in", sim.burn_in, "steps ignored by the visit count");
    m_cmd->add_flag("--per-path", per_path, "also write per-path CSV");

    // ---- check ----
    auto* h_cmd = app.add_subcommand("check", "tail uniformity diagnostic (C3)");
    CommonModelArgs h_model;
    add_model_options(h_cmd, h_model);
    std::string h_xgrid = "10,100,1000";
    std::string h_ygrid = "100,1000,10000";
    h_cmd->add_option("--x-grid", h_xgrid, "states grid spec (|x| > k_cutoff)");
    h_cmd->add_option("--y-grid", h_ygrid, "increasing positive y grid spec");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (*c_cmd) return run_constants(c_alpha, c_beta, format, out_dir, command_line);

        if (*p_cmd) {
            std::vector<double> ys;
            if (p_y) ys.push_back(*p_y);
            if (!p_ygrid.empty())
                for (double y : parse_grid(p_ygrid)) ys.push_back(y);
            if (ys.empty()) throw DomainError("pdf: provide --y or --y-grid");
            std::vector<double> values;
            std::string config_text;
            if (!p_model.config_path.empty() || !p_model.preset_name.empty()) {
                const auto m = load_model(p_model, &config_text);
                for (double y : ys) values.push_back(model::jump_density(m, p_x, y));
            } else {
                stable::StableDensity dens(p_params);
                for (double y : ys) values.push_back(dens(y));
            }
            std::string out = "y,pdf\n";
            char line[80];
            for (std::size_t i = 0; i < ys.size(); ++i) {
                if (format == "text" && ys.size() == 1) {
                    std::snprintf(line, sizeof line, "%.17g\n", values[i]);
                    out = line;
                    break;
                }
                std::snprintf(line, sizeof line, "%.17g,%.17g\n", ys[i], values[i]);
                out += line;
            }
            std::cout << out;
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                write_file(std::filesystem::path(out_dir) / "pdf.csv", out);
                write_manifest(out_dir, command_line, config_text, std::nullopt);
            }
            return kExitOk;
        }

        if (*s_cmd) {
            if (s_n <= 0) throw DomainError("sample: --n must be positive");
            RandomStream rng(mix64(s_seed, 0));
            std::string config_text;
            std::string out = "index,value\n";
            char line[64];
            if (!s_model.config_path.empty() || !s_model.preset_name.empty()) {
                const auto m = load_model(s_model, &config_text);
                for (long i = 0; i < s_n; ++i) {
                    std::snprintf(line, sizeof line, "%ld,%.17g\n", i,
                                  model::jump_sample(m, s_x, rng));
                    out += line;
                }
            } else {
                stable::validate(s_params);
                for (long i = 0; i < s_n; ++i) {
                    std::snprintf(line, sizeof line, "%ld,%.17g\n", i,
                                  stable::stable_sample(s_params, rng));
                    out += line;
                }
            }
            std::cout << out;
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                write_file(std::filesystem::path(out_dir) / "samples.csv", out);
                write_manifest(out_dir, command_line, config_text, s_seed);
            }
            return kExitOk;
        }

        if (*k_cmd) {
            std::string config_text;
            const auto m = load_model(k_model, &config_text);
            std::vector<double> betas;
            if (!k_betas.empty()) betas = parse_grid(k_betas);
            const auto report =
                drift::classify(m, betas, parse_grid(k_grid), k_radius, k_margin, threads);
            std::cout << "verdict: " << drift::verdict_name(report.verdict) << "\n";
            const std::string dir = out_dir.empty() ? "." : out_dir;
            std::filesystem::create_directories(dir);
            write_file(std::filesystem::path(dir) / "report.json",
                       drift::report_to_json(report));
            write_file(std::filesystem::path(dir) / "report.csv",
                       drift::report_to_csv(report));
            write_manifest(dir, command_line, config_text, std::nullopt);
            return kExitOk;
        }

        if (*m_cmd) {
            std::string config_text;
            const auto m = load_model(m_model, &config_text);
            const auto result = mc::run_ensemble(m, sim, threads);
            const std::string summary = mc::summary_to_json(result.summary);
            std::cout << summary;
            const std::string dir = out_dir.empty() ? "." : out_dir;
            std::filesystem::create_directories(dir);
            write_file(std::filesystem::path(dir) / "summary.json", summary);
            if (per_path)
                write_file(std::filesystem::path(dir) / "paths.csv",
                           mc::paths_to_csv(result.paths));
            write_manifest(dir, command_line, config_text, sim.seed);
            return kExitOk;
        }

        if (*h_cmd) {
            std::string config_text;
            const auto m = load_model(h_model, &config_text);
            const auto xs = parse_grid(h_xgrid);
            const auto ys = parse_grid(h_ygrid);
            model::validate_profiles(m, xs);
            const auto table = model::check_tail_uniformity(m, xs, ys);
            std::printf("%14s  %22s\n", "y", "sup_deviation");
            for (const auto& row : table.rows)
                std::printf("%14.6g  %22.15g\n", row.y, fmt_or_zero(row.sup_deviation));
            const bool ok =
                table.non_increasing && table.rows.back().sup_deviation < 0.1;
            std::printf("non_increasing: %s\nfinal_below_0.1: %s\n",
                        table.non_increasing ? "yes" : "no",
                        table.rows.back().sup_deviation < 0.1 ? "yes" : "no");
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                nlohmann::json j;
                for (const auto& row : table.rows)
                    j["rows"].push_back({{"y", row.y}, {"sup_deviation", row.sup_deviation}});
                j["non_increasing"] = table.non_increasing;
                write_file(std::filesystem::path(out_dir) / "check.json",
                           manifest::canonical_dump(j, 2));
                write_manifest(out_dir, command_line, config_text, std::nullopt);
            }
            return ok ? kExitOk : kExitCheckFailed;
        }
    } catch (const MixedRegimeError& e) {
        std::cerr << "mixed-regime: " << e.what() << "\n";
        return kExitMixedRegime;
    } catch (const expr::ParseError& e) {
        std::cerr << "profile syntax error at offset " << e.offset() << ": " << e.what()
                  << "\n";
        return kExitInput;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
