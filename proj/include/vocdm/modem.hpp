#pragma once

// Block modem. A data vector s of length K = M*N is modulated as
//
//   u = (T_N^H (x) I_M) s,
//
// where T_N is the size-N DFnT (Fresnel kind), the unitary DFT (Fourier
// kind, the OTFS-style baseline), or the identity. M = K gives single
// carrier, M = 1 gives plain OCDM; everything in between trades diversity
// against peak power.

#include <cstdint>
#include <string>
#include <vector>

#include "vocdm/types.hpp"

namespace vocdm {

enum class TransformKind { Fresnel, Fourier, Identity };

std::string to_string(TransformKind k);
TransformKind transform_kind_from_string(const std::string& s);

// Finite symbol alphabet with unit average energy. Points are stored in
// bit-label order (Gray layouts for QPSK/4-PAM, natural for BPSK), so the
// point index doubles as the bit pattern for BER counting.
struct Constellation {
    std::vector<Complex> points;
    double peak_energy = 1.0;  // max |s|^2 over the alphabet
    std::string label;

    Constellation(std::vector<Complex> pts, std::string name);

    int size() const { return static_cast<int>(points.size()); }
    int bits_per_symbol() const;
    int nearest(Complex x) const;

    static Constellation bpsk();   // {+1, -1}
    static Constellation qpsk();   // {(+-1 +-j)/sqrt(2)}, Gray
    static Constellation pam4();   // {-3,-1,+3,+1}/sqrt(5), Gray
    static Constellation by_name(const std::string& name);
};

struct ModulationParams {
    int M = 1;
    int N = 1;
    TransformKind kind = TransformKind::Fresnel;

    int K() const { return M * N; }
};

// The full K x K modulation matrix T_N^H (x) I_M (identity kind ignores M,N
// beyond K). Always unitary.
CMat modulation_matrix(const ModulationParams& p);

// u = modulation_matrix(p) * s, applied per interleaved sub-block so the
// cost is K*N instead of K^2. Throws on length mismatch.
CVec modulate(const CVec& s, const ModulationParams& p);

// y = (T_N (x) I_M) * r, the forward transform; inverse of modulate.
CVec demodulate(const CVec& r, const ModulationParams& p);

// Sub-block m of the interleaved layout: [out]_n = u[n*M + m], length N.
CVec subvector(const CVec& u, const ModulationParams& p, int m);

// Bit plumbing for BER counting. bits.size() must be a multiple of
// bits_per_symbol.
std::vector<int> bits_to_symbol_indices(const std::vector<std::uint8_t>& bits,
                                        const Constellation& c);
std::vector<std::uint8_t> symbol_indices_to_bits(const std::vector<int>& indices,
                                                 const Constellation& c);

CVec symbols_from_indices(const std::vector<int>& indices, const Constellation& c);

}  // namespace vocdm
