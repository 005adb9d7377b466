#pragma once

// Experiment harness: seeded parallel Monte Carlo drivers for BER sweeps,
// PAPR CCDF sweeps, the overall-PAPR table, and diversity scans, with CSV and
// JSON result emission.
//
// Reproducibility contract: every trial derives its own RNG seed from
// (base seed, experiment id, scheme index, trial index), and reductions are
// integer counts or order-independent minima/maxima, so a rerun with the
// same config and seed produces byte-identical output for any worker count.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vocdm/channel.hpp"
#include "vocdm/modem.hpp"
#include "vocdm/types.hpp"

namespace vocdm {

enum class ExperimentKind { Verify, Ber, PaprCcdf, PaprTable, DiversityScan };

std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

struct SchemeSpec {
    std::string label;  // e.g. "VOCDM(2,4)", "OCDM(8)", "SC(8)", "OTFS(2,6)"
    ModulationParams params;
};

// Parses "VOCDM(M,N)" / "OTFS(M,N)" / "OCDM(K)" / "SC(K)" and the explicit
// "fresnel(M,N)" / "fourier(M,N)" / "identity(K)" forms.
SchemeSpec parse_scheme(const std::string& text);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Verify;
    std::vector<SchemeSpec> schemes;
    std::string constellation = "qpsk";

    // Channel: either (L, Q) directly, or physical spreads that map onto
    // them via the sampling grid.
    int L = 1;
    int Q = 1;
    std::string covariance = "iid";  // iid -> I/rho, identity -> I
    std::optional<double> tau_max, f_max, t_s;

    std::vector<double> snr_db;  // "inf" entries become sigma2 = 0
    long long trials = 20000;
    std::string detector = "ml";  // ml | mmse
    std::uint64_t base_seed = 1;
    std::string out_path;
    std::string format = "csv";  // csv | json
    int workers = 1;
    std::uint64_t budget = 1ull << 26;

    std::vector<double> gamma_db;        // PAPR CCDF thresholds, dB
    std::vector<int> table_n = {3, 5, 9, 12};
    std::vector<std::string> table_constellations = {"bpsk", "qpsk", "4pam"};
    long long n_samples = 10000;  // diversity scan sample count

    // Channel spec for the configured (L, Q, covariance) at block size K.
    ChannelSpec channel_spec(int K) const;
    void validate() const;
};

// Key-value config file: one "key = value" per line, '#' comments, repeated
// "scheme" keys accumulate. Lists are comma separated; numeric grids accept
// "start:step:stop" ranges.
ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin);

struct ResultRecord {
    std::string experiment;
    std::string scheme;
    int M = 0;
    int N = 0;
    std::string kind;
    std::string constellation;
    std::string x_name;
    double x_value = 0.0;
    std::string y_name;
    double y_value = 0.0;
    long long trials = 0;
    long long errors = 0;
    double ci_halfwidth = 0.0;
    std::uint64_t seed = 0;
    bool skipped = false;
};

// 95% Wilson score interval for a binomial proportion.
struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
    double halfwidth = 0.0;
};
WilsonInterval wilson_interval(long long successes, long long n, double z = 1.959963984540054);

std::vector<ResultRecord> run_ber_sweep(const ExperimentConfig& cfg);
std::vector<ResultRecord> run_papr_ccdf(const ExperimentConfig& cfg);
std::vector<ResultRecord> run_papr_table(const ExperimentConfig& cfg);
std::vector<ResultRecord> run_diversity_scan(const ExperimentConfig& cfg);

std::string records_to_csv(const std::vector<ResultRecord>& records);
std::string records_to_json(const std::vector<ResultRecord>& records);
void write_records(const std::vector<ResultRecord>& records, const std::string& path,
                   const std::string& format);

}  // namespace vocdm
