#ifndef STPC_IO_HPP
#define STPC_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stpc/angles.hpp"

namespace stpc::io {

inline constexpr const char* kVersion = "stpc 0.1.0";

using angles::HeckeAngleSequence;

// Newline-delimited JSON records:
//   {"level":1,"weight":12,"label":"1.12.a","normalized":false,
//    "coefficients":{"2":"-24","3":252,...}}
// Unnormalized integer coefficients may be JSON integers or decimal strings
// (they overflow doubles for large weight); normalized entries are reals in
// [-2,2].
std::vector<HeckeAngleSequence> ingest(const std::string& path);
std::vector<HeckeAngleSequence> ingest_stream(std::istream& in);

// Emit as normalized records (a_p = 2 cos pi theta, 17 significant digits).
void emit(const std::vector<HeckeAngleSequence>& seqs, const std::string& path);
void emit_stream(const std::vector<HeckeAngleSequence>& seqs, std::ostream& out);

// Angles pulled back from uniform draws through the Sato-Tate CDF, attached
// to the first n primes.  Bit-reproducible for a fixed seed.
HeckeAngleSequence synth_sato_tate(std::size_t n, std::uint64_t seed);

// Locale-independent "%.17g"
std::string fmt_double(double v);

struct ExperimentConfig {
    std::string estimator;        // global | local | rescaled | smooth | average | calibrate | synth
    std::uint64_t x = 0;
    std::uint64_t level = 1;
    int weight = 12;
    double psi = 0.25;
    double L = 0.0;               // 0 = auto schedule
    std::string s_grid = "0.25:3:0.25";
    std::string kernel = "fejer"; // fejer | bump
    double B_rho = 1.0;
    double B_g = 1.0;
    bool normalized = true;
    bool straightened = false;
    std::uint64_t seed = 1;
    std::uint64_t synth_count = 0; // > 0: use synthetic angles
    std::string input;             // angle file (when synth_count == 0)
    std::string out = "report.csv";

    void validate() const;
};

ExperimentConfig load_config(const std::string& path);
std::string config_json(const ExperimentConfig& cfg);

std::vector<double> parse_s_grid(const std::string& spec);

// Runs one experiment, writes CSV + TSV reports; returns the written paths.
std::vector<std::string> run_experiment(const ExperimentConfig& cfg);

} // namespace stpc::io

#endif
