// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. The default profile keeps the BER criterion to a reduced smoke
// run (2e3 blocks, ordering only); pass --full for the complete profile
// (2e4 blocks per point, interval separation and slope-ratio checks).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <tuple>
#include <random>
#include <string>
#include <vector>

#include "vocdm/detect.hpp"
#include "vocdm/diversity.hpp"
#include "vocdm/harness.hpp"
#include "vocdm/linalg.hpp"
#include "vocdm/papr.hpp"
#include "vocdm/rng.hpp"
#include "vocdm/verify.hpp"

using namespace vocdm;

namespace {

int g_failures = 0;

void report(const std::string& name, bool pass, const std::string& detail, double seconds) {
    if (!pass) ++g_failures;
    std::printf("[%s] %-28s %s (%.1fs)\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str(),
                seconds);
    std::fflush(stdout);
}

template <typename Fn>
void criterion(const std::string& name, Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        std::tie(pass, detail) = fn();
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(name, pass, detail, secs);
}

std::pair<bool, std::string> overall_papr_table() {
    struct Row {
        const char* constellation;
        double vocdm[4];
        double otfs[4];
    };
    const int ns[4] = {3, 5, 9, 12};
    const Row rows[3] = {
        {"bpsk", {2.33, 3.59, 5.28, 7.97}, {3.0, 5.0, 9.0, 12.0}},
        {"qpsk", {2.82, 4.44, 7.90, 10.09}, {3.0, 5.0, 9.0, 12.0}},
        {"4pam", {4.2, 6.46, 9.51, 14.34}, {5.4, 9.0, 16.2, 21.6}},
    };
    double worst = 0.0;
    for (const Row& row : rows) {
        const Constellation c = Constellation::by_name(row.constellation);
        for (int i = 0; i < 4; ++i) {
            const double v = overall_papr_exhaustive({1, ns[i], TransformKind::Fresnel}, c).value;
            const double o = overall_papr_exhaustive({1, ns[i], TransformKind::Fourier}, c).value;
            worst = std::max(worst, std::abs(v - row.vocdm[i]));
            worst = std::max(worst, std::abs(o - row.otfs[i]));
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "24 entries, max |error| = %.4f (tol 0.01)", worst);
    return {worst <= 0.01, buf};
}

std::pair<bool, std::string> effective_channel_equivalence() {
    const double r = effective_channel_residual(200, 0xacce97ull);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "200 tuples, max rel residual = %.2e (tol 1e-9)", r);
    return {r <= 1e-9, buf};
}

std::pair<bool, std::string> order_set_condition() {
    const int v = order_set_grid_violations();
    return {v == 0, "violations = " + std::to_string(v) + " over L<=3 Q<=2 M<=8 N<=8 + SC/OCDM"};
}

std::pair<bool, std::string> commutation_identity() {
    const double r = commutation_identity_residual(2, 12);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "N in 2..12, |q|<=N, max residual = %.2e (tol 1e-10)", r);
    return {r <= 1e-10, buf};
}

std::pair<bool, std::string> diversity_bound_and_witnesses() {
    struct Cfg {
        int M, N, L, Q;
    };
    const Cfg cfgs[3] = {{2, 2, 1, 0}, {2, 4, 1, 1}, {2, 6, 1, 1}};  // K = 4, 8, 12
    const Constellation qpsk = Constellation::qpsk();
    int violations = 0;

    for (const Cfg& cfg : cfgs) {
        const ModulationParams p{cfg.M, cfg.N, TransformKind::Fresnel};
        const int K = p.K();
        const ChannelSpec spec = ChannelSpec::iid(cfg.L, cfg.Q, K);
        const int bound = order_set(cfg.L, cfg.Q, cfg.M, cfg.N).size();

        std::mt19937_64 rng(derive_seed(0x5eedull, {static_cast<std::uint64_t>(K)}));
        std::uniform_int_distribution<int> pick(0, qpsk.size() - 1);
        CVec s(K);
        for (int k = 0; k < K; ++k) s(k) = qpsk.points[pick(rng)];

        // 1000 sampled realizable errors per configuration
        int sampled = 0;
        while (sampled < 1000) {
            CVec e(K);
            bool nonzero = false;
            for (int k = 0; k < K; ++k) {
                e(k) = s(k) - qpsk.points[pick(rng)];
                if (std::abs(e(k)) > 0) nonzero = true;
            }
            if (!nonzero) continue;
            ++sampled;
            if (numerical_rank(error_matrix(s, e, spec, p)) > bound) ++violations;
        }

        // the single-position witness attains the bound
        const CVec e1 = witness_error_constant(qpsk, K, WitnessKind::SingleE1);
        if (numerical_rank(error_matrix(s, e1, spec, p)) != bound) ++violations;

        // constant data, constant error: rank <= 2Q+1 < rho (when L,Q >= 1)
        if (cfg.L >= 1 && cfg.Q >= 1) {
            const CVec s0 = CVec::Constant(K, qpsk.points[0]);
            const CVec e0 = witness_error_constant(qpsk, K, WitnessKind::ConstantE0);
            const int r = numerical_rank(error_matrix(s0, e0, spec, p));
            if (r > 2 * cfg.Q + 1 || !(2 * cfg.Q + 1 < spec.rho())) ++violations;
        }
    }

    // exhaustive G_d on BPSK K=4 vs an independent brute-force oracle
    {
        const Constellation bpsk = Constellation::bpsk();
        const ModulationParams p{2, 2, TransformKind::Fresnel};
        const ChannelSpec spec = ChannelSpec::iid(1, 0, 4);
        std::mt19937_64 rng(0xdeb5ull);
        std::uniform_int_distribution<int> pick(0, 1);
        CVec s(4);
        for (int k = 0; k < 4; ++k) s(k) = bpsk.points[pick(rng)];

        const Complex diffs[3] = {{0, 0}, {2, 0}, {-2, 0}};
        int oracle_min = 1 << 20;
        int tried = 0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c)
                    for (int d = 0; d < 3; ++d) {
                        if (a == 0 && b == 0 && c == 0 && d == 0) continue;
                        CVec e(4);
                        e << diffs[a], diffs[b], diffs[c], diffs[d];
                        ++tried;
                        oracle_min = std::min(oracle_min,
                                              numerical_rank(error_matrix(s, e, spec, p)));
                    }
        const auto est =
            data_dependent_diversity(s, spec, p, bpsk, DiversityMode::exhaustive_search());
        if (tried != 80 || est.errors_tried != 80 || est.diversity != oracle_min) ++violations;
    }

    return {violations == 0, "violations = " + std::to_string(violations) +
                                 " (3000 sampled errors, witnesses, exhaustive oracle)"};
}

std::pair<bool, std::string> error_factorization() {
    const double r = factorization_residual(100, 0xacce10ull);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "100 draws, max rel residual = %.2e (tol 1e-9)", r);
    return {r <= 1e-9, buf};
}

std::pair<bool, std::string> ber_behavior(bool full, int workers) {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::Ber;
    cfg.schemes = {parse_scheme("VOCDM(2,4)"), parse_scheme("OCDM(8)"), parse_scheme("SC(8)")};
    cfg.constellation = "qpsk";
    cfg.L = 1;
    cfg.Q = 1;
    cfg.covariance = "iid";
    cfg.detector = "ml";
    cfg.base_seed = 20240001;
    cfg.workers = workers;
    cfg.trials = full ? 20000 : 2000;
    cfg.snr_db = full ? std::vector<double>{10, 12, 14, 16} : std::vector<double>{14};

    const auto recs = run_ber_sweep(cfg);
    auto find = [&](const std::string& scheme, double snr) -> const ResultRecord& {
        for (const auto& r : recs) {
            if (r.scheme == scheme && r.x_value == snr) return r;
        }
        throw std::runtime_error("missing record " + scheme);
    };

    const int bits_per_block = 8 * 2;
    auto interval = [&](const ResultRecord& r) {
        return wilson_interval(r.errors, r.trials * bits_per_block);
    };

    const auto& v14 = find("VOCDM(2,4)", 14);
    const auto& o14 = find("OCDM(8)", 14);
    const auto& s14 = find("SC(8)", 14);
    char buf[160];

    if (!full) {
        const bool ordered = v14.y_value < o14.y_value && o14.y_value < s14.y_value;
        std::snprintf(buf, sizeof(buf),
                      "smoke @14dB: VOCDM %.2e < OCDM %.2e < SC %.2e (%lld blocks)",
                      v14.y_value, o14.y_value, s14.y_value, static_cast<long long>(cfg.trials));
        return {ordered, buf};
    }

    const bool separated = interval(v14).hi < interval(o14).lo &&
                           interval(o14).hi < interval(s14).lo;

    // least-squares slope of log10(BER) against SNR(dB), nonzero points only
    auto slope = [&](const std::string& scheme) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (double snr : cfg.snr_db) {
            const auto& r = find(scheme, snr);
            if (r.errors == 0) continue;
            const double y = std::log10(r.y_value);
            sx += snr;
            sy += y;
            sxx += snr * snr;
            sxy += snr * y;
            ++n;
        }
        if (n < 2) return 0.0;
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    const double sv = slope("VOCDM(2,4)");
    const double ss = slope("SC(8)");
    const double ratio = (ss < 0.0) ? sv / ss : 0.0;

    std::snprintf(buf, sizeof(buf),
                  "full: sep=%d, slopes VOCDM %.3f SC %.3f per dB, ratio %.2f (need >= 2)",
                  separated ? 1 : 0, sv, ss, ratio);
    return {separated && ratio >= 2.0, buf};
}

std::pair<bool, std::string> papr_ccdf_criterion(int workers) {
    const Constellation bpsk = Constellation::bpsk();
    const long long trials = 100000;

    // OCDM K = 400: empirical crossing of CCDF = 1e-2 within 0.5 dB of the
    // closed form.
    std::vector<double> gamma_db, gamma;
    for (double g = 9.0; g <= 12.0 + 1e-9; g += 0.05) {
        gamma_db.push_back(g);
        gamma.push_back(std::pow(10.0, g / 10.0));
    }
    const auto ocdm = papr_ccdf_monte_carlo({1, 400, TransformKind::Fresnel}, bpsk, trials,
                                            gamma, 0xccdfull, workers);
    auto crossing = [&](const std::vector<double>& ys) {
        for (size_t i = 1; i < ys.size(); ++i) {
            if (ys[i] <= 1e-2 && ys[i - 1] > 1e-2) {
                const double t = (std::log(1e-2) - std::log(ys[i - 1])) /
                                 (std::log(ys[i]) - std::log(ys[i - 1]));
                return gamma_db[i - 1] + t * (gamma_db[i] - gamma_db[i - 1]);
            }
        }
        return -1.0;
    };
    const double emp = crossing(ocdm.empirical);
    const double theo = crossing(ocdm.theoretical);
    const double gap = std::abs(emp - theo);

    // VOCDM (100, 4): the aN bound is hard; zero violations allowed.
    const auto vocdm = papr_ccdf_monte_carlo({100, 4, TransformKind::Fresnel}, bpsk, trials,
                                             {4.0}, 0xccd2ull, workers);
    const bool bounded = vocdm.max_observed <= 4.0 + 1e-9;

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "OCDM gap at 1e-2: %.3f dB (tol 0.5); VOCDM(100,4) max %.6f <= 4: %s",
                  gap, vocdm.max_observed, bounded ? "yes" : "NO");
    return {emp > 0 && theo > 0 && gap <= 0.5 && bounded, buf};
}

std::pair<bool, std::string> determinism() {
    auto csv_for_workers = [](ExperimentConfig cfg, int workers) {
        cfg.workers = workers;
        switch (cfg.kind) {
            case ExperimentKind::Ber: return records_to_csv(run_ber_sweep(cfg));
            case ExperimentKind::PaprCcdf: return records_to_csv(run_papr_ccdf(cfg));
            case ExperimentKind::DiversityScan:
                return records_to_csv(run_diversity_scan(cfg));
            default: return std::string();
        }
    };

    ExperimentConfig ber;
    ber.kind = ExperimentKind::Ber;
    ber.schemes = {parse_scheme("VOCDM(2,2)"), parse_scheme("SC(4)")};
    ber.constellation = "qpsk";
    ber.L = 1;
    ber.Q = 1;
    ber.snr_db = {8, 12};
    ber.trials = 600;
    ber.base_seed = 3141;

    ExperimentConfig ccdf;
    ccdf.kind = ExperimentKind::PaprCcdf;
    ccdf.schemes = {parse_scheme("OCDM(64)")};
    ccdf.constellation = "bpsk";
    ccdf.trials = 4000;
    ccdf.gamma_db = {4, 6, 8};
    ccdf.base_seed = 2718;

    ExperimentConfig scan;
    scan.kind = ExperimentKind::DiversityScan;
    scan.schemes = {parse_scheme("VOCDM(2,6)")};
    scan.constellation = "qpsk";
    scan.L = 1;
    scan.Q = 1;
    scan.n_samples = 300;
    scan.base_seed = 1618;

    int mismatches = 0;
    for (const auto& cfg : {ber, ccdf, scan}) {
        const std::string ref = csv_for_workers(cfg, 1);
        if (ref != csv_for_workers(cfg, 4)) ++mismatches;
        if (ref != csv_for_workers(cfg, 8)) ++mismatches;
    }
    return {mismatches == 0,
            "ber/papr-ccdf/diversity-scan CSV across workers {1,4,8}, mismatches = " +
                std::to_string(mismatches)};
}

}  // namespace

int main(int argc, char** argv) {
    bool full = false;
    int workers = 2;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--full") == 0) full = true;
        if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) workers = std::atoi(argv[++i]);
    }
    std::printf("acceptance suite (%s profile, %d workers)\n", full ? "full" : "smoke", workers);

    criterion("C1_overall_papr_table", overall_papr_table);
    criterion("C2_effective_channel", effective_channel_equivalence);
    criterion("C3_order_set_condition", order_set_condition);
    criterion("C4_commutation_identity", commutation_identity);
    criterion("C5_diversity_witnesses", diversity_bound_and_witnesses);
    criterion("C6_error_factorization", error_factorization);
    criterion("C7_ber_behavior", [&] { return ber_behavior(full, workers); });
    criterion("C8_papr_ccdf", [&] { return papr_ccdf_criterion(workers); });
    criterion("C9_determinism", determinism);

    std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
