#include "vocdm/modem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "vocdm/fresnel.hpp"
#include "vocdm/linalg.hpp"

namespace vocdm {

std::string to_string(TransformKind k) {
    switch (k) {
        case TransformKind::Fresnel: return "fresnel";
        case TransformKind::Fourier: return "fourier";
        case TransformKind::Identity: return "identity";
    }
    return "?";
}

TransformKind transform_kind_from_string(const std::string& s) {
    if (s == "fresnel") return TransformKind::Fresnel;
    if (s == "fourier") return TransformKind::Fourier;
    if (s == "identity") return TransformKind::Identity;
    throw std::invalid_argument("unknown transform kind: " + s);
}

Constellation::Constellation(std::vector<Complex> pts, std::string name)
    : points(std::move(pts)), label(std::move(name)) {
    if (points.empty()) throw std::invalid_argument("constellation must be nonempty");
    double avg = 0.0;
    peak_energy = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        const double e = std::norm(points[i]);
        avg += e;
        peak_energy = std::max(peak_energy, e);
        for (size_t j = i + 1; j < points.size(); ++j) {
            if (std::abs(points[i] - points[j]) < 1e-12) {
                throw std::invalid_argument("constellation points must be distinct");
            }
        }
    }
    avg /= static_cast<double>(points.size());
    if (std::abs(avg - 1.0) > 1e-9) {
        throw std::invalid_argument("constellation '" + label +
                                    "' is not normalized to unit average energy (got " +
                                    std::to_string(avg) + ")");
    }
}

int Constellation::bits_per_symbol() const {
    int b = 0;
    while ((1 << b) < size()) ++b;
    if ((1 << b) != size()) {
        throw std::logic_error("constellation size is not a power of two");
    }
    return b;
}

int Constellation::nearest(Complex x) const {
    int best = 0;
    double best_d = std::norm(x - points[0]);
    for (int i = 1; i < size(); ++i) {
        const double d = std::norm(x - points[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

Constellation Constellation::bpsk() { return Constellation({{1.0, 0.0}, {-1.0, 0.0}}, "bpsk"); }

Constellation Constellation::qpsk() {
    const double s = 1.0 / std::sqrt(2.0);
    // Index bits (b1 b0): b0 flips the real sign, b1 the imaginary sign, so
    // phase neighbors differ in one bit.
    return Constellation({{s, s}, {-s, s}, {s, -s}, {-s, -s}}, "qpsk");
}

Constellation Constellation::pam4() {
    const double s = 1.0 / std::sqrt(5.0);
    // Gray order over amplitude: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3.
    return Constellation({{-3 * s, 0.0}, {-1 * s, 0.0}, {3 * s, 0.0}, {1 * s, 0.0}}, "4pam");
}

Constellation Constellation::by_name(const std::string& name) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
    if (n == "bpsk") return bpsk();
    if (n == "qpsk") return qpsk();
    if (n == "4pam" || n == "4-pam" || n == "pam4") return pam4();
    throw std::invalid_argument("unknown constellation: " + name);
}

namespace {

// Size-N modulation kernels (T_N^H), cached because Monte Carlo loops call
// modulate() millions of times. Insertions are serialized; readers get
// shared ownership of immutable matrices.
std::shared_ptr<const CMat> cached_kernel_adjoint(TransformKind kind, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const CMat>> cache;
    const std::pair<int, int> key{static_cast<int>(kind), n};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    CMat kernel;
    switch (kind) {
        case TransformKind::Fresnel:
            kernel = idfnt_matrix(n);
            break;
        case TransformKind::Fourier: {
            kernel.resize(n, n);
            const double scale = 1.0 / std::sqrt(static_cast<double>(n));
            for (int m = 0; m < n; ++m) {
                for (int k = 0; k < n; ++k) {
                    const double phase = 2.0 * kPi * (static_cast<long long>(m) * k % n) / n;
                    kernel(m, k) = scale * Complex(std::cos(phase), std::sin(phase));
                }
            }
            break;
        }
        case TransformKind::Identity:
            kernel = CMat::Identity(n, n);
            break;
    }
    auto ptr = std::make_shared<const CMat>(std::move(kernel));
    cache.emplace(key, ptr);
    return ptr;
}

void require_params(const ModulationParams& p) {
    if (p.M < 1 || p.N < 1) {
        throw std::invalid_argument("modulation params must have M >= 1 and N >= 1");
    }
}

void require_length(const CVec& v, const ModulationParams& p, const char* who) {
    if (v.size() != p.K()) {
        throw std::invalid_argument(std::string(who) + ": vector length " +
                                    std::to_string(v.size()) + " does not match K = " +
                                    std::to_string(p.K()));
    }
}

}  // namespace

CMat modulation_matrix(const ModulationParams& p) {
    require_params(p);
    if (p.kind == TransformKind::Identity) return CMat::Identity(p.K(), p.K());
    const auto kernel = cached_kernel_adjoint(p.kind, p.N);
    return kron(*kernel, CMat::Identity(p.M, p.M));
}

CVec modulate(const CVec& s, const ModulationParams& p) {
    require_params(p);
    require_length(s, p, "modulate");
    if (p.kind == TransformKind::Identity) return s;
    const auto kernel = cached_kernel_adjoint(p.kind, p.N);
    CVec u(p.K());
    CVec sub(p.N);
    for (int m = 0; m < p.M; ++m) {
        for (int n = 0; n < p.N; ++n) sub(n) = s(n * p.M + m);
        const CVec out = (*kernel) * sub;
        for (int n = 0; n < p.N; ++n) u(n * p.M + m) = out(n);
    }
    return u;
}

CVec demodulate(const CVec& r, const ModulationParams& p) {
    require_params(p);
    require_length(r, p, "demodulate");
    if (p.kind == TransformKind::Identity) return r;
    const auto kernel = cached_kernel_adjoint(p.kind, p.N);
    CVec y(p.K());
    CVec sub(p.N);
    for (int m = 0; m < p.M; ++m) {
        for (int n = 0; n < p.N; ++n) sub(n) = r(n * p.M + m);
        const CVec out = kernel->adjoint() * sub;
        for (int n = 0; n < p.N; ++n) y(n * p.M + m) = out(n);
    }
    return y;
}

CVec subvector(const CVec& u, const ModulationParams& p, int m) {
    require_params(p);
    require_length(u, p, "subvector");
    if (m < 0 || m >= p.M) {
        throw std::out_of_range("subvector: index " + std::to_string(m) + " outside [0, " +
                                std::to_string(p.M) + ")");
    }
    CVec out(p.N);
    for (int n = 0; n < p.N; ++n) out(n) = u(n * p.M + m);
    return out;
}

std::vector<int> bits_to_symbol_indices(const std::vector<std::uint8_t>& bits,
                                        const Constellation& c) {
    const int b = c.bits_per_symbol();
    if (bits.size() % b != 0) {
        throw std::invalid_argument("bit count " + std::to_string(bits.size()) +
                                    " is not a multiple of bits per symbol " + std::to_string(b));
    }
    std::vector<int> idx(bits.size() / b);
    for (size_t s = 0; s < idx.size(); ++s) {
        int v = 0;
        for (int j = 0; j < b; ++j) v = (v << 1) | (bits[s * b + j] & 1);
        idx[s] = v;
    }
    return idx;
}

std::vector<std::uint8_t> symbol_indices_to_bits(const std::vector<int>& indices,
                                                 const Constellation& c) {
    const int b = c.bits_per_symbol();
    std::vector<std::uint8_t> bits(indices.size() * b);
    for (size_t s = 0; s < indices.size(); ++s) {
        for (int j = 0; j < b; ++j) {
            bits[s * b + j] = static_cast<std::uint8_t>((indices[s] >> (b - 1 - j)) & 1);
        }
    }
    return bits;
}

CVec symbols_from_indices(const std::vector<int>& indices, const Constellation& c) {
    CVec s(static_cast<Eigen::Index>(indices.size()));
    for (size_t i = 0; i < indices.size(); ++i) s(static_cast<Eigen::Index>(i)) = c.points[indices[i]];
    return s;
}

}  // namespace vocdm
