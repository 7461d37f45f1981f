// Receiver: Nyquist or block-aggregated compressive sampling of the
// matched-filter output, signal-candidate construction, and least-squares
// classification in the (possibly compressed) sample domain. No signal
// reconstruction takes place; decisions are made directly on the samples.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsss/channel.hpp"
#include "dsss/chipmap.hpp"
#include "dsss/rng.hpp"
#include "dsss/tx.hpp"

namespace dsss {

enum class MeasurementKind {
    kNyquist,         // one sample per chip, identity operator
    kBlockAggregate,  // each sample sums 1/kappa consecutive chips
};

/// Binary L x C_h measurement operator. Nyquist keeps every chip
/// (kappa = 1); block aggregation sums disjoint runs of 1/kappa
/// consecutive chips, so row supports partition the chip positions in
/// order and every column sum is exactly 1. Only integer 1/kappa with
/// integer L = C_h * kappa is representable.
class MeasurementMatrix {
public:
    MeasurementKind kind() const { return kind_; }
    double kappa() const { return kappa_; }
    int rows() const { return rows_; }                          // L
    int cols() const { return cols_; }                          // C_h
    int block_size() const { return block_; }                   // 1/kappa

    /// out[j] = sum of in[j*B .. (j+1)*B - 1], B = block_size().
    void apply(std::span<const double> in, std::span<double> out) const;

    /// Dense {0,1} form, row-major, for inspection and tests.
    std::vector<std::vector<std::uint8_t>> dense() const;

    friend MeasurementMatrix make_measurement(MeasurementKind kind, double kappa,
                                              int chips_per_channel);

private:
    MeasurementMatrix() = default;
    MeasurementKind kind_ = MeasurementKind::kNyquist;
    double kappa_ = 1.0;
    int rows_ = 0;
    int cols_ = 0;
    int block_ = 1;
};

/// Complex receiver output y = re + j*im for one symbol, length L per part.
struct ComplexSampleVector {
    std::vector<double> re;
    std::vector<double> im;
};

/// The M noiseless measured symbol vectors s_m = Theta * (psi_i[m] + j*psi_q[m]),
/// precomputed once per (dictionary, measurement) pair and shared read-only.
struct CandidateSet {
    std::vector<ComplexSampleVector> candidates;
    int sample_count = 0;  // L

    int symbol_count() const { return static_cast<int>(candidates.size()); }
};

/// Validates (kind, kappa, C_h) and builds the operator. Non-integer
/// 1/kappa or non-integer L throw std::invalid_argument; nyquist requires
/// kappa = 1.
MeasurementMatrix make_measurement(MeasurementKind kind, double kappa,
                                   int chips_per_channel);

/// Applies theta to both channels of chip-rate samples.
ComplexSampleVector sample_chips(std::span<const double> noisy_i,
                                 std::span<const double> noisy_q,
                                 const MeasurementMatrix& theta);

/// Integrate-and-dump of the waveforms against the repeated pulse
/// template over each row's support, normalized by the pulse energy so
/// the result is numerically on the chip scale of sample_chips.
ComplexSampleVector sample_waveform(const Waveform& wi, const Waveform& wq,
                                    const MeasurementMatrix& theta,
                                    std::span<const double> pulse);

CandidateSet build_candidates(const Dictionary& dict, const MeasurementMatrix& theta);

/// Least-squares symbol decision: argmin_m |y - s_m|^2 over the complex
/// samples. Ties break deterministically to the lowest index.
int classify(const ComplexSampleVector& y, const CandidateSet& cands);

/// Receiver-side PRN variant: mixes the received chips entrywise with
/// prn before theta and classifies against candidates built from the
/// prn-mixed dictionary. Exists to test that the extra PRN stage is
/// redundant: the mixing cancels between signal and candidates.
int classify_with_prn(std::span<const double> noisy_i,
                      std::span<const double> noisy_q,
                      std::span<const std::int8_t> prn,
                      const MeasurementMatrix& theta, const Dictionary& dict);

enum class PathModel {
    kChip,      // discrete matched-filter-output model (exact, fast)
    kWaveform,  // oversampled half-sine waveform model
};

/// Full per-packet pipeline: encode -> spread -> AWGN -> sample ->
/// classify -> decode, for every bit block of `bits`. Returns the decoded
/// bit sequence (same length). `cands` must match (dict, theta).
std::vector<std::uint8_t> demodulate_packet(std::span<const std::uint8_t> bits,
                                            const Dictionary& dict,
                                            const MeasurementMatrix& theta,
                                            const CandidateSet& cands,
                                            const NoiseSpec& spec, PathModel path,
                                            int oversample, Rng& rng);

}  // namespace dsss
