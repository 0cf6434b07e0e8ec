// stpc: pair-correlation statistics of Hecke angles, trace-formula averages,
// and calibration experiments.  See README.md for the file formats.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "stpc/arith.hpp"
#include "stpc/averaged.hpp"
#include "stpc/errors.hpp"
#include "stpc/io.hpp"
#include "stpc/paircorr.hpp"
#include "stpc/tracefm.hpp"

namespace {

using stpc::io::ExperimentConfig;

void add_kernel_flags(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--kernel", cfg.kernel, "fejer | bump");
    cmd->add_option("--B-rho", cfg.B_rho, "support of rho^");
    cmd->add_option("--B-g", cfg.B_g, "support of g^");
    cmd->add_flag("--normalized,!--no-normalized", cfg.normalized,
                  "rescale rho so (rho*rho)(0) = 1");
}

void add_window_flags(CLI::App* cmd, ExperimentConfig& cfg) {
    cmd->add_option("--psi", cfg.psi, "window center in (0,1)");
    cmd->add_option("--L", cfg.L, "window inverse half-width (0 = auto schedule)");
}

int dispatch(const ExperimentConfig& cfg) {
    auto files = stpc::io::run_experiment(cfg);
    for (const auto& f : files) std::cout << f << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pair correlation statistics for Hecke-angle sequences"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override)");

    // --- sieve ---------------------------------------------------------
    std::uint64_t sieve_x = 0, sieve_level = 1;
    auto* c_sieve = app.add_subcommand("sieve", "prime counts");
    c_sieve->add_option("--x", sieve_x, "bound")->required();
    c_sieve->add_option("--level", sieve_level, "omit primes dividing this level");

    // --- trace / dims ---------------------------------------------------
    std::uint64_t tr_level = 1, tr_n = 1;
    int tr_weight = 12;
    bool tr_full = false;
    auto* c_trace = app.add_subcommand("trace", "Hecke trace on the newspace");
    c_trace->add_option("--level", tr_level)->required();
    c_trace->add_option("--weight", tr_weight)->required();
    c_trace->add_option("--n", tr_n)->required();
    c_trace->add_flag("--full", tr_full, "trace on the full cusp space");

    std::uint64_t dm_level = 1;
    std::string dm_weights = "2:26";
    auto* c_dims = app.add_subcommand("dims", "newspace dimensions");
    c_dims->add_option("--level", dm_level)->required();
    c_dims->add_option("--weights", dm_weights, "k1:k2 (even weights)");

    // --- angles ----------------------------------------------------------
    std::uint64_t an_level = 1, an_x = 1000;
    int an_weight = 12;
    std::string an_out = "angles.jsonl";
    auto* c_angles = app.add_subcommand(
        "angles", "eigenvalue angles of a one-dimensional newspace, via traces");
    c_angles->add_option("--level", an_level)->required();
    c_angles->add_option("--weight", an_weight)->required();
    c_angles->add_option("--x", an_x, "prime bound");
    c_angles->add_option("--out", an_out);

    // --- synth -----------------------------------------------------------
    auto* c_synth = app.add_subcommand("synth", "synthetic Sato-Tate angles");
    c_synth->add_option("--count", cfg.synth_count, "number of angles")->required();
    c_synth->add_option("--seed", cfg.seed);
    c_synth->add_option("--out", cfg.out);

    // --- paircorr ----------------------------------------------------------
    auto* c_pc = app.add_subcommand("paircorr", "sharp pair-correlation estimators");
    c_pc->add_option("--estimator", cfg.estimator, "global | local | rescaled")->required();
    c_pc->add_option("--input", cfg.input, "angle file (JSONL)");
    c_pc->add_option("--synth", cfg.synth_count, "synthesize this many angles instead");
    c_pc->add_option("--x", cfg.x);
    c_pc->add_option("--seed", cfg.seed);
    c_pc->add_option("--s-grid", cfg.s_grid, "a:b:step or comma list");
    c_pc->add_flag("--straightened", cfg.straightened,
                   "threshold by the empirical in-window mean spacing");
    c_pc->add_option("--out", cfg.out);
    add_window_flags(c_pc, cfg);

    // --- smooth ------------------------------------------------------------
    auto* c_smooth = app.add_subcommand("smooth", "smoothed pair correlation of one form");
    c_smooth->add_option("--input", cfg.input);
    c_smooth->add_option("--synth", cfg.synth_count);
    c_smooth->add_option("--x", cfg.x);
    c_smooth->add_option("--seed", cfg.seed);
    c_smooth->add_option("--out", cfg.out);
    add_window_flags(c_smooth, cfg);
    add_kernel_flags(c_smooth, cfg);

    // --- average -------------------------------------------------------------
    auto* c_avg = app.add_subcommand("average", "family-averaged R2 via trace identities");
    c_avg->add_option("--level", cfg.level)->required();
    c_avg->add_option("--weight", cfg.weight)->required();
    c_avg->add_option("--x", cfg.x)->required();
    c_avg->add_option("--out", cfg.out);
    add_window_flags(c_avg, cfg);
    add_kernel_flags(c_avg, cfg);

    // --- calibrate --------------------------------------------------------
    auto* c_cal = app.add_subcommand("calibrate", "synthetic Poisson/Sato-Tate battery");
    c_cal->add_option("--count", cfg.synth_count);
    c_cal->add_option("--seed", cfg.seed);
    c_cal->add_option("--psi", cfg.psi);
    c_cal->add_option("--L", cfg.L);
    c_cal->add_option("--out", cfg.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) {
            ExperimentConfig file_cfg = stpc::io::load_config(config_path);
            // flags already parsed into cfg override file values only when set;
            // simplest precedence: file provides the base for unset options
            // (estimator-specific subcommands below fill the rest).
            if (cfg.input.empty()) cfg.input = file_cfg.input;
            if (cfg.synth_count == 0) cfg.synth_count = file_cfg.synth_count;
            if (cfg.x == 0) cfg.x = file_cfg.x;
        }

        if (c_sieve->parsed()) {
            auto pt = stpc::arith::sieve(sieve_x);
            std::cout << "pi(" << sieve_x << ") = " << pt.pi(sieve_x) << "\n";
            if (sieve_level > 1)
                std::cout << "pi_N(" << sieve_x << "), N=" << sieve_level << " = "
                          << pt.pi_coprime(sieve_x, sieve_level) << "\n";
            return 0;
        }
        if (c_trace->parsed()) {
            stpc::tracefm::TraceEngine engine(tr_level, tr_weight);
            auto tr = tr_full ? engine.fullspace_trace(tr_n) : engine.newspace_trace(tr_n);
            std::cout << (tr_full ? "full" : "new") << " trace T_" << tr_n << " on level "
                      << tr_level << ", weight " << tr_weight << ": " << tr << "\n";
            // exact rational normalization when n is a perfect square
            std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(double(tr_n)));
            while (r * r > tr_n) --r;
            while ((r + 1) * (r + 1) <= tr_n) ++r;
            if (r * r == tr_n && tr_n > 1) {
                stpc::arith::bigint den = 1;
                for (int i = 0; i < tr_weight - 1; ++i) den *= r;
                stpc::arith::bigint num = tr, g = gcd(abs(num), den);
                if (g != 0) { num /= g; den /= g; }
                std::cout << "normalized: " << num << "/" << den << " = "
                          << stpc::io::fmt_double(engine.normalized_newspace_trace(tr_n)) << "\n";
            } else {
                std::cout << "normalized: "
                          << stpc::io::fmt_double(
                                 tr_full ? static_cast<double>(engine.newspace_dimension())
                                         : engine.normalized_newspace_trace(tr_n))
                          << "\n";
            }
            return 0;
        }
        if (c_dims->parsed()) {
            auto sep = dm_weights.find(':');
            int k1 = std::stoi(dm_weights.substr(0, sep));
            int k2 = sep == std::string::npos ? k1 : std::stoi(dm_weights.substr(sep + 1));
            for (int k = k1 + (k1 % 2); k <= k2; k += 2) {
                stpc::tracefm::TraceEngine engine(dm_level, k);
                std::cout << "dim S^new(" << dm_level << ", " << k
                          << ") = " << engine.newspace_dimension() << "\n";
            }
            return 0;
        }
        if (c_angles->parsed()) {
            stpc::tracefm::TraceEngine engine(an_level, an_weight);
            if (engine.newspace_dimension() != 1)
                throw stpc::ConfigError("angles: newspace is not one-dimensional");
            stpc::angles::HeckeAngleSequence seq;
            seq.level = an_level;
            seq.weight = an_weight;
            seq.label = std::to_string(an_level) + "." + std::to_string(an_weight) + ".a";
            auto pt = stpc::arith::sieve(an_x);
            for (auto p : pt.coprime_to(an_level))
                seq.push(p, stpc::angles::angle_from_eigenvalue(engine.eigenvalue_dim1(p)).theta);
            stpc::io::emit({seq}, an_out);
            std::cout << an_out << "\n";
            return 0;
        }

        if (c_synth->parsed()) cfg.estimator = "synth";
        if (c_pc->parsed()) { /* estimator set by flag */ }
        if (c_smooth->parsed()) cfg.estimator = "smooth";
        if (c_avg->parsed()) cfg.estimator = "average";
        if (c_cal->parsed()) cfg.estimator = "calibrate";
        return dispatch(cfg);
    } catch (const stpc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const stpc::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const stpc::MathDomainError& e) {
        std::cerr << "math domain error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
