#include "vocdm/harness.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "vocdm/detect.hpp"
#include "vocdm/diversity.hpp"
#include "vocdm/papr.hpp"
#include "vocdm/rng.hpp"

namespace vocdm {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double parse_double(const std::string& s) {
    const std::string v = lower(s);
    if (v == "inf" || v == "+inf" || v == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("bad number: '" + s + "'");
    return d;
}

// Comma lists plus "start:step:stop" ranges.
std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> out;
    for (const std::string& tok : split(s, ',')) {
        if (tok.empty()) continue;
        const auto parts = split(tok, ':');
        if (parts.size() == 3) {
            const double start = parse_double(parts[0]);
            const double step = parse_double(parts[1]);
            const double stop = parse_double(parts[2]);
            if (step <= 0) throw std::invalid_argument("range step must be positive: " + tok);
            for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
        } else if (parts.size() == 1) {
            out.push_back(parse_double(tok));
        } else {
            throw std::invalid_argument("bad grid token: '" + tok + "'");
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Verify: return "verify";
        case ExperimentKind::Ber: return "ber";
        case ExperimentKind::PaprCcdf: return "papr-ccdf";
        case ExperimentKind::PaprTable: return "papr-table";
        case ExperimentKind::DiversityScan: return "diversity-scan";
    }
    return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& s) {
    const std::string v = lower(trim(s));
    if (v == "verify") return ExperimentKind::Verify;
    if (v == "ber") return ExperimentKind::Ber;
    if (v == "papr-ccdf" || v == "papr_ccdf") return ExperimentKind::PaprCcdf;
    if (v == "papr-table" || v == "papr_table") return ExperimentKind::PaprTable;
    if (v == "diversity-scan" || v == "diversity_scan") return ExperimentKind::DiversityScan;
    throw std::invalid_argument("unknown experiment kind: " + s);
}

SchemeSpec parse_scheme(const std::string& text) {
    const std::string t = trim(text);
    const auto open = t.find('(');
    const auto close = t.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw std::invalid_argument("bad scheme '" + text + "', expected NAME(args)");
    }
    const std::string name = lower(trim(t.substr(0, open)));
    const auto args = split(t.substr(open + 1, close - open - 1), ',');

    auto one_arg = [&]() {
        if (args.size() != 1) {
            throw std::invalid_argument("scheme '" + text + "' takes one argument");
        }
        return std::stoi(args[0]);
    };
    auto two_args = [&]() {
        if (args.size() != 2) {
            throw std::invalid_argument("scheme '" + text + "' takes two arguments (M,N)");
        }
        return std::pair<int, int>{std::stoi(args[0]), std::stoi(args[1])};
    };

    SchemeSpec spec;
    if (name == "sc") {
        const int k = one_arg();
        spec.params = {k, 1, TransformKind::Fresnel};
        spec.label = "SC(" + std::to_string(k) + ")";
    } else if (name == "ocdm") {
        const int k = one_arg();
        spec.params = {1, k, TransformKind::Fresnel};
        spec.label = "OCDM(" + std::to_string(k) + ")";
    } else if (name == "vocdm" || name == "fresnel") {
        const auto [m, n] = two_args();
        spec.params = {m, n, TransformKind::Fresnel};
        spec.label = "VOCDM(" + std::to_string(m) + "," + std::to_string(n) + ")";
    } else if (name == "otfs" || name == "fourier") {
        const auto [m, n] = two_args();
        spec.params = {m, n, TransformKind::Fourier};
        spec.label = "OTFS(" + std::to_string(m) + "," + std::to_string(n) + ")";
    } else if (name == "identity") {
        const int k = one_arg();
        spec.params = {k, 1, TransformKind::Identity};
        spec.label = "IDENTITY(" + std::to_string(k) + ")";
    } else {
        throw std::invalid_argument("unknown scheme name in '" + text + "'");
    }
    if (spec.params.M < 1 || spec.params.N < 1) {
        throw std::invalid_argument("scheme '" + text + "' needs positive dimensions");
    }
    return spec;
}

ChannelSpec ExperimentConfig::channel_spec(int K) const {
    int l = L, q = Q;
    if (tau_max && f_max && t_s) {
        std::tie(l, q) = grid_from_physical({*tau_max, *f_max, *t_s, K});
    }
    const int rho = (l + 1) * (2 * q + 1);
    if (covariance == "iid") return ChannelSpec::iid(l, q, K);
    if (covariance == "identity") {
        return ChannelSpec::with_covariance(l, q, K, CMat::Identity(rho, rho));
    }
    throw std::invalid_argument("unknown covariance choice: " + covariance);
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (kind == ExperimentKind::Ber || kind == ExperimentKind::PaprCcdf ||
        kind == ExperimentKind::DiversityScan) {
        if (schemes.empty()) throw std::invalid_argument("experiment needs at least one scheme");
        const int K = schemes.front().params.K();
        for (const auto& s : schemes) {
            if (s.params.K() != K) {
                throw std::invalid_argument("schemes must share one block size K; " +
                                            s.label + " has K = " + std::to_string(s.params.K()) +
                                            ", expected " + std::to_string(K));
            }
        }
    }
    if (kind == ExperimentKind::Ber && snr_db.empty()) {
        throw std::invalid_argument("BER sweep needs a nonempty snr_db grid");
    }
    if (kind == ExperimentKind::Ber && detector != "ml" && detector != "mmse") {
        throw std::invalid_argument("detector must be 'ml' or 'mmse'");
    }
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) +
                                        ": expected 'key = value'");
        }
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string val = trim(line.substr(eq + 1));
        try {
            if (key == "experiment") cfg.kind = experiment_kind_from_string(val);
            else if (key == "scheme") cfg.schemes.push_back(parse_scheme(val));
            else if (key == "schemes") {
                // Comma-separated lists must respect the parentheses in
                // scheme names, so split on commas outside parens.
                std::string tok;
                int depth = 0;
                for (char c : val + ",") {
                    if (c == '(') ++depth;
                    if (c == ')') --depth;
                    if (c == ',' && depth == 0) {
                        if (!trim(tok).empty()) cfg.schemes.push_back(parse_scheme(trim(tok)));
                        tok.clear();
                    } else {
                        tok += c;
                    }
                }
            }
            else if (key == "constellation") cfg.constellation = lower(val);
            else if (key == "l") cfg.L = std::stoi(val);
            else if (key == "q") cfg.Q = std::stoi(val);
            else if (key == "covariance") cfg.covariance = lower(val);
            else if (key == "tau_max") cfg.tau_max = parse_double(val);
            else if (key == "f_max") cfg.f_max = parse_double(val);
            else if (key == "t_s") cfg.t_s = parse_double(val);
            else if (key == "snr_db") cfg.snr_db = parse_grid(val);
            else if (key == "trials") cfg.trials = std::stoll(val);
            else if (key == "detector") cfg.detector = lower(val);
            else if (key == "seed") cfg.base_seed = std::stoull(val);
            else if (key == "out") cfg.out_path = val;
            else if (key == "format") cfg.format = lower(val);
            else if (key == "workers") cfg.workers = std::stoi(val);
            else if (key == "budget") cfg.budget = std::stoull(val);
            else if (key == "gamma_db") cfg.gamma_db = parse_grid(val);
            else if (key == "table_n") {
                cfg.table_n.clear();
                for (double v : parse_grid(val)) cfg.table_n.push_back(static_cast<int>(v));
            }
            else if (key == "table_constellations") {
                cfg.table_constellations.clear();
                for (const auto& c : split(val, ',')) cfg.table_constellations.push_back(lower(c));
            }
            else if (key == "n_samples") cfg.n_samples = std::stoll(val);
            else throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& e) {
            throw std::invalid_argument(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

WilsonInterval wilson_interval(long long successes, long long n, double z) {
    WilsonInterval w;
    if (n <= 0) return w;
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    w.lo = std::max(0.0, center - half);
    w.hi = std::min(1.0, center + half);
    w.halfwidth = half;
    return w;
}

std::vector<ResultRecord> run_ber_sweep(const ExperimentConfig& cfg) {
    cfg.validate();
    const Constellation c = Constellation::by_name(cfg.constellation);
    const std::uint64_t exp_id = fnv1a(to_string(ExperimentKind::Ber));
    const int K = cfg.schemes.front().params.K();
    const ChannelSpec spec = cfg.channel_spec(K);
    const int bps = c.bits_per_symbol();
    const bool use_ml = cfg.detector == "ml";

    if (use_ml) {
        for (const auto& s : cfg.schemes) {
            const auto total = checked_pow(static_cast<std::uint64_t>(c.size()), K);
            if (!total || *total > cfg.budget) {
                throw std::runtime_error("ML enumeration budget exceeded for scheme " + s.label +
                                         " (|S|^K = " + std::to_string(c.size()) + "^" +
                                         std::to_string(K) + "); use the mmse detector");
            }
        }
    }

    std::vector<ResultRecord> records;
    for (size_t si = 0; si < cfg.schemes.size(); ++si) {
        const SchemeSpec& scheme = cfg.schemes[si];
        const ModulationParams& p = scheme.params;

        // H_eff construction: the closed form covers the Fresnel kind; other
        // kinds take the dense triple product (fine at ML-tractable sizes).
        const CMat mod_matrix = modulation_matrix(p);
        auto make_heff = [&](const ChannelRealization& h) -> CMat {
            if (p.kind == TransformKind::Fresnel) return effective_channel(h, spec, p);
            return mod_matrix.adjoint() * channel_matrix(h, spec) * mod_matrix;
        };

        for (double snr : cfg.snr_db) {
            const double sigma2 = 1.0 / std::pow(10.0, snr / 10.0);
            if (!use_ml && sigma2 <= 0.0) {
                throw std::invalid_argument("mmse detector requires a finite SNR");
            }

            struct Partial {
                long long bit_errors = 0;
                long long block_errors = 0;
            };
            std::vector<Partial> parts(cfg.workers);

            auto run_range = [&](long long begin, long long end, Partial& part) {
                std::uniform_int_distribution<int> pick(0, c.size() - 1);
                for (long long t = begin; t < end; ++t) {
                    const std::uint64_t trial_seed =
                        derive_seed(cfg.base_seed, {exp_id, si, static_cast<std::uint64_t>(t)});
                    std::mt19937_64 data_rng(derive_seed(trial_seed, {1}));

                    std::vector<int> tx(K);
                    for (int k = 0; k < K; ++k) tx[k] = pick(data_rng);
                    const CVec s = symbols_from_indices(tx, c);
                    const CVec u = modulate(s, p);

                    const ChannelRealization h = sample_channel(spec, derive_seed(trial_seed, {0}));
                    const CVec r = apply_channel(u, h, spec, sigma2, derive_seed(trial_seed, {2}));
                    const CVec y = demodulate(r, p);
                    const CMat heff = make_heff(h);

                    const DetectionResult det = use_ml
                                                    ? ml_detect(y, heff, c, cfg.budget)
                                                    : mmse_detect(y, heff, c, sigma2);
                    long long bits_wrong = 0;
                    for (int k = 0; k < K; ++k) {
                        const int rx = c.nearest(det.s_hat(k));
                        bits_wrong += std::popcount(static_cast<unsigned>(tx[k] ^ rx));
                    }
                    part.bit_errors += bits_wrong;
                    if (bits_wrong > 0) ++part.block_errors;
                }
            };

            if (cfg.workers == 1) {
                run_range(0, cfg.trials, parts[0]);
            } else {
                std::vector<std::thread> pool;
                const long long chunk = (cfg.trials + cfg.workers - 1) / cfg.workers;
                for (int w = 0; w < cfg.workers; ++w) {
                    const long long begin = std::min<long long>(w * chunk, cfg.trials);
                    const long long end = std::min<long long>(begin + chunk, cfg.trials);
                    pool.emplace_back(run_range, begin, end, std::ref(parts[w]));
                }
                for (auto& th : pool) th.join();
            }

            long long bit_errors = 0;
            for (const auto& part : parts) bit_errors += part.bit_errors;
            const long long total_bits = cfg.trials * K * bps;

            ResultRecord rec;
            rec.experiment = to_string(ExperimentKind::Ber);
            rec.scheme = scheme.label;
            rec.M = p.M;
            rec.N = p.N;
            rec.kind = to_string(p.kind);
            rec.constellation = c.label;
            rec.x_name = "snr_db";
            rec.x_value = snr;
            rec.y_name = "ber";
            rec.y_value = static_cast<double>(bit_errors) / total_bits;
            rec.trials = cfg.trials;
            rec.errors = bit_errors;
            rec.ci_halfwidth = wilson_interval(bit_errors, total_bits).halfwidth;
            rec.seed = cfg.base_seed;
            records.push_back(std::move(rec));
        }
    }
    return records;
}

std::vector<ResultRecord> run_papr_ccdf(const ExperimentConfig& cfg) {
    cfg.validate();
    const Constellation c = Constellation::by_name(cfg.constellation);
    const std::uint64_t exp_id = fnv1a(to_string(ExperimentKind::PaprCcdf));
    const int K = cfg.schemes.front().params.K();

    std::vector<double> gamma_db = cfg.gamma_db;
    if (gamma_db.empty()) {
        for (double g = 4.0; g <= 13.0 + 1e-9; g += 0.25) gamma_db.push_back(g);
    }
    std::vector<double> gamma(gamma_db.size());
    for (size_t i = 0; i < gamma_db.size(); ++i) gamma[i] = std::pow(10.0, gamma_db[i] / 10.0);

    std::vector<ResultRecord> records;
    for (size_t si = 0; si < cfg.schemes.size(); ++si) {
        const SchemeSpec& scheme = cfg.schemes[si];
        const std::uint64_t seed = derive_seed(cfg.base_seed, {exp_id, si});
        const CcdfCurve curve =
            papr_ccdf_monte_carlo(scheme.params, c, cfg.trials, gamma, seed, cfg.workers);
        for (size_t g = 0; g < curve.gamma_grid.size(); ++g) {
            ResultRecord rec;
            rec.experiment = to_string(ExperimentKind::PaprCcdf);
            rec.scheme = scheme.label;
            rec.M = scheme.params.M;
            rec.N = scheme.params.N;
            rec.kind = to_string(scheme.params.kind);
            rec.constellation = c.label;
            rec.x_name = "gamma_db";
            rec.x_value = gamma_db[g];
            rec.y_name = "ccdf";
            rec.y_value = curve.empirical[g];
            rec.trials = curve.trials;
            rec.errors = curve.exceed_counts[g];
            rec.ci_halfwidth = wilson_interval(curve.exceed_counts[g], curve.trials).halfwidth;
            rec.seed = cfg.base_seed;
            records.push_back(std::move(rec));
        }
    }
    // Reference curve for the common block size.
    for (size_t g = 0; g < gamma.size(); ++g) {
        ResultRecord rec;
        rec.experiment = to_string(ExperimentKind::PaprCcdf);
        rec.scheme = "theory(K=" + std::to_string(K) + ")";
        rec.kind = "-";
        rec.constellation = c.label;
        rec.x_name = "gamma_db";
        rec.x_value = gamma_db[g];
        rec.y_name = "ccdf";
        rec.y_value = theoretical_ccdf(gamma[g], K);
        rec.seed = cfg.base_seed;
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<ResultRecord> run_papr_table(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<ResultRecord> records;
    for (const std::string& cname : cfg.table_constellations) {
        const Constellation c = Constellation::by_name(cname);
        for (int n : cfg.table_n) {
            for (const TransformKind kind : {TransformKind::Fresnel, TransformKind::Fourier}) {
                ResultRecord rec;
                rec.experiment = to_string(ExperimentKind::PaprTable);
                rec.scheme = (kind == TransformKind::Fresnel ? "VOCDM" : "OTFS");
                rec.M = 1;
                rec.N = n;
                rec.kind = to_string(kind);
                rec.constellation = c.label;
                rec.x_name = "N";
                rec.x_value = n;
                rec.y_name = "papr_all";
                rec.seed = cfg.base_seed;
                try {
                    const OverallPapr res =
                        overall_papr_exhaustive({1, n, kind}, c, cfg.budget);
                    rec.y_value = res.value;
                    rec.trials = static_cast<long long>(res.candidates_evaluated);
                } catch (const std::runtime_error&) {
                    rec.y_value = std::numeric_limits<double>::quiet_NaN();
                    rec.skipped = true;
                }
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

std::vector<ResultRecord> run_diversity_scan(const ExperimentConfig& cfg) {
    cfg.validate();
    const Constellation c = Constellation::by_name(cfg.constellation);
    const std::uint64_t exp_id = fnv1a(to_string(ExperimentKind::DiversityScan));
    std::vector<ResultRecord> records;
    for (size_t si = 0; si < cfg.schemes.size(); ++si) {
        const SchemeSpec& scheme = cfg.schemes[si];
        const ModulationParams& p = scheme.params;
        const int K = p.K();
        const ChannelSpec spec = cfg.channel_spec(K);
        const auto cond = check_max_order_condition(spec.L, spec.Q, p.M, p.N);

        const std::uint64_t seed = derive_seed(cfg.base_seed, {exp_id, si});
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, c.size() - 1);
        CVec s(K);
        for (int k = 0; k < K; ++k) s(k) = c.points[pick(rng)];
        const auto est = data_dependent_diversity(
            s, spec, p, c, DiversityMode::sampled(cfg.n_samples, derive_seed(seed, {1})));

        auto push = [&](const std::string& y_name, double y, long long trials) {
            ResultRecord rec;
            rec.experiment = to_string(ExperimentKind::DiversityScan);
            rec.scheme = scheme.label;
            rec.M = p.M;
            rec.N = p.N;
            rec.kind = to_string(p.kind);
            rec.constellation = c.label;
            rec.x_name = "K";
            rec.x_value = K;
            rec.y_name = y_name;
            rec.y_value = y;
            rec.trials = trials;
            rec.seed = cfg.base_seed;
            records.push_back(std::move(rec));
        };
        push("order_set_size", cond.order_set_size, 0);
        push("rho", cond.rho, 0);
        push("param_condition_holds", cond.holds ? 1.0 : 0.0, 0);
        push("g_d_upper_estimate", est.diversity, est.errors_tried);
    }
    return records;
}

std::string records_to_csv(const std::vector<ResultRecord>& records) {
    std::string out =
        "experiment,scheme,M,N,kind,constellation,x_name,x_value,y_name,y_value,"
        "trials,errors,ci_halfwidth,seed\n";
    for (const auto& r : records) {
        out += csv_field(r.experiment) + ',' + csv_field(r.scheme) + ',' +
               std::to_string(r.M) + ',' + std::to_string(r.N) + ',' + csv_field(r.kind) + ',' +
               csv_field(r.constellation) + ',' + csv_field(r.x_name) + ',' + fmt(r.x_value) +
               ',' + csv_field(r.y_name) + ',' + fmt(r.y_value) + ',' + std::to_string(r.trials) +
               ',' + std::to_string(r.errors) + ',' + fmt(r.ci_halfwidth) + ',' +
               std::to_string(r.seed) + '\n';
    }
    return out;
}

std::string records_to_json(const std::vector<ResultRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) {
        nlohmann::json o;
        o["experiment"] = r.experiment;
        o["scheme"] = r.scheme;
        o["M"] = r.M;
        o["N"] = r.N;
        o["kind"] = r.kind;
        o["constellation"] = r.constellation;
        o["x_name"] = r.x_name;
        o["x_value"] = r.x_value;
        o["y_name"] = r.y_name;
        o["y_value"] = std::isnan(r.y_value) ? nlohmann::json() : nlohmann::json(r.y_value);
        o["trials"] = r.trials;
        o["errors"] = r.errors;
        o["ci_halfwidth"] = r.ci_halfwidth;
        o["seed"] = r.seed;
        o["skipped"] = r.skipped;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

void write_records(const std::vector<ResultRecord>& records, const std::string& path,
                   const std::string& format) {
    const std::string body = format == "json" ? records_to_json(records) : records_to_csv(records);
    if (path.empty() || path == "-") {
        std::fwrite(body.data(), 1, body.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << body;
}

}  // namespace vocdm
