#include "stpc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "stpc/arith.hpp"
#include "stpc/averaged.hpp"
#include "stpc/errors.hpp"
#include "stpc/paircorr.hpp"
#include "stpc/smoothing.hpp"
#include "stpc/tracefm.hpp"

namespace stpc::io {

namespace {

using json = nlohmann::json;
using bigint = boost::multiprecision::cpp_int;
using bfloat = boost::multiprecision::cpp_bin_float_50;
constexpr double kPi = 3.14159265358979323846264338327950288;

double normalized_from_integer(const bigint& c, std::uint64_t p, int weight,
                               const std::string& label) {
    // Deligne bound, exact: c^2 <= 4 p^{k-1}
    bigint bound = 4;
    for (int i = 0; i < weight - 1; ++i) bound *= p;
    if (c * c > bound)
        throw DeligneViolation("record " + label + ": |c_" + std::to_string(p) +
                               "| exceeds 2 p^{(k-1)/2}");
    // single rounding through 50-digit floats
    bfloat a = bfloat(c) / pow(bfloat(p), bfloat(weight - 1) / 2);
    return static_cast<double>(a);
}

} // namespace

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<HeckeAngleSequence> ingest_stream(std::istream& in) {
    std::vector<HeckeAngleSequence> out;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const std::exception& e) {
            throw ParseError(e.what(), lineno);
        }
        if (!j.is_object() || !j.contains("level") || !j.contains("weight") ||
            !j.contains("coefficients"))
            throw ParseError("record must have level, weight, coefficients", lineno);

        HeckeAngleSequence seq;
        seq.level = j["level"].get<std::uint64_t>();
        seq.weight = j["weight"].get<int>();
        seq.label = j.value("label", std::string("line") + std::to_string(lineno));
        bool normalized = j.value("normalized", false);

        std::vector<std::pair<std::uint64_t, double>> entries;
        for (auto it = j["coefficients"].begin(); it != j["coefficients"].end(); ++it) {
            std::uint64_t p = 0;
            try {
                p = std::stoull(it.key());
            } catch (const std::exception&) {
                throw ParseError("bad prime key '" + it.key() + "'", lineno);
            }
            if (!arith::is_prime_u64(p))
                throw ParseError("key " + it.key() + " is not prime", lineno);
            if (seq.level > 1 && seq.level % p == 0)
                throw LevelDividesPrime("record " + seq.label + ": prime " + it.key() +
                                        " divides level " + std::to_string(seq.level));
            double a;
            if (normalized) {
                if (!it.value().is_number())
                    throw ParseError("normalized coefficient must be a number", lineno);
                a = it.value().get<double>();
                if (std::abs(a) > 2.0 + 1e-9)
                    throw DeligneViolation("record " + seq.label + ": |a_" + it.key() +
                                           "| > 2");
            } else {
                bigint c;
                try {
                    if (it.value().is_string())
                        c = bigint(it.value().get<std::string>());
                    else if (it.value().is_number_integer())
                        c = bigint(it.value().get<long long>());
                    else
                        throw std::invalid_argument("integer or string expected");
                } catch (const std::exception& e) {
                    throw ParseError(std::string("bad coefficient: ") + e.what(), lineno);
                }
                a = normalized_from_integer(c, p, seq.weight, seq.label);
            }
            entries.emplace_back(p, angles::angle_from_eigenvalue(a).theta);
        }
        std::sort(entries.begin(), entries.end());
        for (auto& [p, theta] : entries) seq.push(p, theta);
        out.push_back(std::move(seq));
    }
    return out;
}

std::vector<HeckeAngleSequence> ingest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    return ingest_stream(in);
}

void emit_stream(const std::vector<HeckeAngleSequence>& seqs, std::ostream& out) {
    for (const auto& seq : seqs) {
        json coeffs = json::object();
        for (std::size_t i = 0; i < seq.size(); ++i) {
            double a = 2.0 * std::cos(kPi * seq.thetas[i]);
            coeffs[std::to_string(seq.primes[i])] = a;
        }
        json j{{"level", seq.level},
               {"weight", seq.weight},
               {"label", seq.label},
               {"normalized", true},
               {"coefficients", coeffs}};
        out << j.dump() << "\n";
    }
}

void emit(const std::vector<HeckeAngleSequence>& seqs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path + " for writing");
    emit_stream(seqs, out);
}

HeckeAngleSequence synth_sato_tate(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("synth_sato_tate: count must be >= 1");
    HeckeAngleSequence seq;
    seq.level = 1;
    seq.weight = 0;
    seq.label = "synth-" + std::to_string(seed);

    // bound comfortably above the n-th prime
    double nd = std::max<double>(6.0, static_cast<double>(n));
    auto bound = static_cast<std::uint64_t>(nd * (std::log(nd) + std::log(std::log(nd)))) + 16;
    arith::PrimeTable pt = arith::sieve(bound);
    while (pt.primes.size() < n) {
        bound *= 2;
        pt = arith::sieve(bound);
    }

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        // 53-bit uniform in [0,1); implementation-independent
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        seq.push(pt.primes[i], angles::st_cdf_inverse(u));
    }
    return seq;
}

// ---------------------------------------------------------------------------
// Experiment configuration
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    static const std::vector<std::string> kinds{"global", "local",   "rescaled", "smooth",
                                                "average", "calibrate", "synth"};
    bool ok = false;
    for (const auto& k : kinds) ok = ok || k == estimator;
    if (!ok) throw ConfigError("unknown estimator '" + estimator + "'");
    if (estimator != "synth" && estimator != "calibrate") {
        if (synth_count == 0 && input.empty() && estimator != "average")
            throw ConfigError("need --input or --synth");
    }
    if (estimator == "local" || estimator == "rescaled" || estimator == "smooth" ||
        estimator == "average") {
        if (!(psi > 0.0 && psi < 1.0)) throw ConfigError("psi must lie in (0,1)");
        if (L != 0.0 && L < 2.0) throw ConfigError("L must be >= 2 (or 0 for auto)");
    }
    if (kernel != "fejer" && kernel != "bump") throw ConfigError("kernel must be fejer or bump");
    if (B_rho <= 0.0 || B_g <= 0.0) throw ConfigError("kernel supports must be positive");
    if (estimator == "synth" && synth_count == 0) throw ConfigError("synth needs --count");
    if (out.empty()) throw ConfigError("output path must not be empty");
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.estimator = j.value("estimator", cfg.estimator);
    cfg.x = j.value("x", cfg.x);
    cfg.level = j.value("level", cfg.level);
    cfg.weight = j.value("weight", cfg.weight);
    cfg.psi = j.value("psi", cfg.psi);
    if (j.contains("L")) {
        if (j["L"].is_string())
            cfg.L = 0.0; // "auto"
        else
            cfg.L = j["L"].get<double>();
    }
    cfg.s_grid = j.value("s_grid", cfg.s_grid);
    cfg.kernel = j.value("kernel", cfg.kernel);
    cfg.B_rho = j.value("B_rho", cfg.B_rho);
    cfg.B_g = j.value("B_g", cfg.B_g);
    cfg.normalized = j.value("normalized", cfg.normalized);
    cfg.straightened = j.value("straightened", cfg.straightened);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.synth_count = j.value("synth", cfg.synth_count);
    cfg.input = j.value("input", cfg.input);
    cfg.out = j.value("out", cfg.out);
    return cfg;
}

std::string config_json(const ExperimentConfig& cfg) {
    json j{{"estimator", cfg.estimator}, {"x", cfg.x},
           {"level", cfg.level},         {"weight", cfg.weight},
           {"psi", cfg.psi},             {"L", cfg.L},
           {"s_grid", cfg.s_grid},       {"kernel", cfg.kernel},
           {"B_rho", cfg.B_rho},         {"B_g", cfg.B_g},
           {"normalized", cfg.normalized}, {"straightened", cfg.straightened},
           {"seed", cfg.seed},           {"synth", cfg.synth_count},
           {"input", cfg.input},         {"out", cfg.out}};
    return j.dump();
}

std::vector<double> parse_s_grid(const std::string& spec) {
    // "a:b:step" or comma-separated values
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b, step;
        char c1, c2;
        std::istringstream ss(spec);
        if (!(ss >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0.0)
            throw ConfigError("bad s-grid '" + spec + "'");
        for (double s = a; s <= b + 1e-12; s += step) out.push_back(s);
    } else {
        std::istringstream ss(spec);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            out.push_back(std::stod(tok));
        }
    }
    if (out.empty()) throw ConfigError("empty s-grid");
    return out;
}

// ---------------------------------------------------------------------------
// Experiment driver
// ---------------------------------------------------------------------------

namespace {

struct ReportWriter {
    std::string csv_path, tsv_path;
    std::ofstream csv, tsv;

    explicit ReportWriter(const std::string& out) {
        csv_path = out;
        if (csv_path.size() > 4 && csv_path.substr(csv_path.size() - 4) == ".csv")
            tsv_path = csv_path.substr(0, csv_path.size() - 4) + ".tsv";
        else
            tsv_path = csv_path + ".tsv";
        csv.open(csv_path);
        tsv.open(tsv_path);
        if (!csv || !tsv) throw DataError("cannot open report files at " + out);
    }

    void header(const ExperimentConfig& cfg) {
        for (auto* s : {&csv, &tsv}) {
            *s << "# " << kVersion << "\n";
            *s << "# config: " << config_json(cfg) << "\n";
            *s << "# seed: " << cfg.seed << "\n";
        }
    }

    void columns(const std::vector<std::string>& names) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            csv << (i ? "," : "") << names[i];
            tsv << (i ? "\t" : "") << names[i];
        }
        csv << "\n";
        tsv << "\n";
    }

    void row(const std::vector<std::string>& vals) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            csv << (i ? "," : "") << vals[i];
            tsv << (i ? "\t" : "") << vals[i];
        }
        csv << "\n";
        tsv << "\n";
    }
};

smoothing::TestFunction make_kernel(const ExperimentConfig& cfg, double B) {
    return cfg.kernel == "fejer" ? smoothing::make_fejer(B, cfg.normalized)
                                 : smoothing::make_bump(B, cfg.normalized);
}

HeckeAngleSequence load_sequence(const ExperimentConfig& cfg) {
    if (cfg.synth_count > 0) return synth_sato_tate(cfg.synth_count, cfg.seed);
    auto seqs = ingest(cfg.input);
    if (seqs.empty()) throw DataError("no records in " + cfg.input);
    return seqs.front();
}

void write_paircorr_report(ReportWriter& w, const paircorr::PairCorrReport& rep) {
    w.columns({"s", "value", "count", "norm_pi", "norm_L", "norm_A"});
    for (std::size_t i = 0; i < rep.s.size(); ++i)
        w.row({fmt_double(rep.s[i]), fmt_double(rep.value[i]), std::to_string(rep.pairs[i]),
               fmt_double(rep.norm_pi), fmt_double(rep.norm_L), fmt_double(rep.norm_A)});
}

} // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();

    if (cfg.estimator == "synth") {
        auto seq = synth_sato_tate(cfg.synth_count, cfg.seed);
        emit({seq}, cfg.out);
        return {cfg.out};
    }

    ReportWriter w(cfg.out);
    w.header(cfg);

    auto norm = cfg.straightened ? paircorr::Normalization::Straightened
                                 : paircorr::Normalization::Paper;

    if (cfg.estimator == "global") {
        auto seq = load_sequence(cfg);
        std::uint64_t x = cfg.x ? cfg.x : (seq.primes.empty() ? 2 : seq.primes.back());
        auto rep = paircorr::global_pair_correlation(seq, x, parse_s_grid(cfg.s_grid));
        write_paircorr_report(w, rep);
    } else if (cfg.estimator == "local" || cfg.estimator == "rescaled") {
        auto seq = load_sequence(cfg);
        std::uint64_t x = cfg.x ? cfg.x : (seq.primes.empty() ? 2 : seq.primes.back());
        double L = cfg.L > 0.0 ? cfg.L : paircorr::schedule_L(x, cfg.psi);
        paircorr::LocalWindow win(cfg.psi, L);
        auto rep = cfg.estimator == "local"
                       ? paircorr::local_pair_correlation(seq, x, win, parse_s_grid(cfg.s_grid),
                                                          norm)
                       : paircorr::rescaled_local_pair_correlation(
                             seq, x, win, parse_s_grid(cfg.s_grid), norm);
        write_paircorr_report(w, rep);
    } else if (cfg.estimator == "smooth") {
        auto seq = load_sequence(cfg);
        std::uint64_t x = cfg.x ? cfg.x : (seq.primes.empty() ? 2 : seq.primes.back());
        double L = cfg.L > 0.0 ? cfg.L : paircorr::schedule_L(x, cfg.psi);
        paircorr::LocalWindow win(cfg.psi, L);
        auto rho = make_kernel(cfg, cfg.B_rho);
        auto g = make_kernel(cfg, cfg.B_g);
        auto sv = paircorr::smoothed_pair_correlation_full(seq, x, win, rho, g);
        w.columns({"name", "value"});
        w.row({"R2_fourier", fmt_double(sv.value)});
        if (sv.direct_checked) w.row({"R2_direct", fmt_double(sv.direct)});
        w.row({"predicted_limit", fmt_double(averaged::predicted_limit(win, g, rho))});
    } else if (cfg.estimator == "average") {
        if (cfg.x < 3) throw ConfigError("average needs --x");
        double L = cfg.L > 0.0 ? cfg.L : paircorr::schedule_L(cfg.x, cfg.psi);
        paircorr::LocalWindow win(cfg.psi, L);
        auto rho = make_kernel(cfg, cfg.B_rho);
        auto g = make_kernel(cfg, cfg.B_g);
        tracefm::TraceEngine engine(cfg.level, cfg.weight);
        auto bd = averaged::averaged_R2_via_traces(engine, cfg.x, win, g, rho);
        double limit = averaged::predicted_limit(win, g, rho);
        w.columns({"name", "value"});
        w.row({"total", fmt_double(bd.total)});
        w.row({"prefactor", fmt_double(bd.prefactor)});
        w.row({"leading_S", fmt_double(bd.leading_S)});
        w.row({"leading_T", fmt_double(bd.leading_T)});
        w.row({"trivial_term", fmt_double(bd.trivial_term)});
        w.row({"remainder", fmt_double(bd.remainder)});
        w.row({"predicted_limit", fmt_double(limit)});
        w.row({"scaled_T_over_limit",
               fmt_double(limit != 0.0 ? bd.prefactor * bd.leading_T / limit : 0.0)});
        w.row({"dimension", std::to_string(engine.newspace_dimension())});
    } else if (cfg.estimator == "calibrate") {
        // synthetic batteries: Poisson global, spacings, local around psi
        std::size_t n = cfg.synth_count ? cfg.synth_count : 100000;
        auto seq = synth_sato_tate(n, cfg.seed);
        std::uint64_t x = seq.primes.back();
        w.columns({"name", "value", "target"});
        auto grid = std::vector<double>{0.5, 1.0, 2.0, 3.0};
        auto rep = paircorr::global_pair_correlation(seq, x, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            w.row({"global_R(" + fmt_double(grid[i]) + ")", fmt_double(rep.value[i]),
                   fmt_double(2.0 * grid[i])});
        auto sp = paircorr::level_spacings(seq, x);
        w.row({"spacing_ks_exp", fmt_double(sp.ks_exponential()), "0"});
        double L = cfg.L > 0.0 ? cfg.L : paircorr::schedule_L(x, cfg.psi);
        paircorr::LocalWindow win(cfg.psi, L);
        auto lrep = paircorr::local_pair_correlation(seq, x, win, grid,
                                                     paircorr::Normalization::Straightened);
        for (std::size_t i = 0; i < grid.size(); ++i)
            w.row({"local_R(" + fmt_double(grid[i]) + ")", fmt_double(lrep.value[i]),
                   fmt_double(2.0 * grid[i])});
    }

    return {w.csv_path, w.tsv_path};
}

} // namespace stpc::io
