#include "dsss/rx.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dsss {
namespace {

constexpr double kKappaTol = 1e-9;

void check_length(std::size_t got, int want, const char* who) {
    if (got != static_cast<std::size_t>(want))
        throw std::invalid_argument(std::string(who) + ": length " + std::to_string(got) +
                                    ", expected " + std::to_string(want));
}

}  // namespace

MeasurementMatrix make_measurement(MeasurementKind kind, double kappa,
                                   int chips_per_channel) {
    if (chips_per_channel <= 0)
        throw std::invalid_argument("make_measurement: chips_per_channel must be positive");
    if (!(kappa > 0.0) || kappa > 1.0)
        throw std::invalid_argument("make_measurement: kappa must lie in (0, 1]");

    MeasurementMatrix theta;
    theta.kind_ = kind;
    theta.cols_ = chips_per_channel;

    if (kind == MeasurementKind::kNyquist) {
        if (std::abs(kappa - 1.0) > kKappaTol)
            throw std::invalid_argument("make_measurement: nyquist requires kappa = 1");
        theta.kappa_ = 1.0;
        theta.block_ = 1;
        theta.rows_ = chips_per_channel;
        return theta;
    }

    const double inv = 1.0 / kappa;
    const int block = static_cast<int>(std::lround(inv));
    if (block < 1 || std::abs(inv - block) > kKappaTol)
        throw std::invalid_argument("make_measurement: 1/kappa = " + std::to_string(inv) +
                                    " is not an integer");
    if (chips_per_channel % block != 0)
        throw std::invalid_argument("make_measurement: L = " +
                                    std::to_string(chips_per_channel * kappa) +
                                    " samples per symbol is not an integer");
    theta.kappa_ = 1.0 / block;
    theta.block_ = block;
    theta.rows_ = chips_per_channel / block;
    return theta;
}

void MeasurementMatrix::apply(std::span<const double> in, std::span<double> out) const {
    check_length(in.size(), cols_, "MeasurementMatrix::apply input");
    check_length(out.size(), rows_, "MeasurementMatrix::apply output");
    for (int r = 0; r < rows_; ++r) {
        double acc = 0.0;
        const int base = r * block_;
        for (int c = 0; c < block_; ++c) acc += in[base + c];
        out[r] = acc;
    }
}

std::vector<std::vector<std::uint8_t>> MeasurementMatrix::dense() const {
    std::vector<std::vector<std::uint8_t>> m(rows_, std::vector<std::uint8_t>(cols_, 0));
    for (int r = 0; r < rows_; ++r)
        for (int c = r * block_; c < (r + 1) * block_; ++c) m[r][c] = 1;
    return m;
}

ComplexSampleVector sample_chips(std::span<const double> noisy_i,
                                 std::span<const double> noisy_q,
                                 const MeasurementMatrix& theta) {
    check_length(noisy_i.size(), theta.cols(), "sample_chips I");
    check_length(noisy_q.size(), theta.cols(), "sample_chips Q");
    ComplexSampleVector y;
    y.re.resize(theta.rows());
    y.im.resize(theta.rows());
    theta.apply(noisy_i, y.re);
    theta.apply(noisy_q, y.im);
    return y;
}

ComplexSampleVector sample_waveform(const Waveform& wi, const Waveform& wq,
                                    const MeasurementMatrix& theta,
                                    std::span<const double> pulse) {
    if (wi.oversample != wq.oversample || wi.samples.size() != wq.samples.size())
        throw std::invalid_argument("sample_waveform: channel waveforms disagree");
    const int r = wi.oversample;
    check_length(pulse.size(), r, "sample_waveform pulse");
    check_length(wi.samples.size(), theta.cols() * r, "sample_waveform samples");

    double energy = 0.0;
    for (double g : pulse) energy += g * g;

    // Correlate each chip slot against the pulse, then aggregate. Summing
    // the per-chip correlations over a row's support is the same number as
    // one long correlation against the repeated template.
    auto correlate = [&](const std::vector<double>& samples) {
        std::vector<double> chips(theta.cols());
        for (int c = 0; c < theta.cols(); ++c) {
            double acc = 0.0;
            const std::size_t base = static_cast<std::size_t>(c) * r;
            for (int j = 0; j < r; ++j) acc += samples[base + j] * pulse[j];
            chips[c] = acc / energy;
        }
        return chips;
    };
    const auto chips_i = correlate(wi.samples);
    const auto chips_q = correlate(wq.samples);
    return sample_chips(chips_i, chips_q, theta);
}

CandidateSet build_candidates(const Dictionary& dict, const MeasurementMatrix& theta) {
    if (dict.chips_per_channel != theta.cols())
        throw std::invalid_argument("build_candidates: dictionary C_h " +
                                    std::to_string(dict.chips_per_channel) +
                                    " != measurement cols " + std::to_string(theta.cols()));
    CandidateSet set;
    set.sample_count = theta.rows();
    set.candidates.resize(dict.symbol_count());
    std::vector<double> col(theta.cols());
    for (int m = 0; m < dict.symbol_count(); ++m) {
        auto& cand = set.candidates[m];
        cand.re.resize(theta.rows());
        cand.im.resize(theta.rows());
        for (int c = 0; c < theta.cols(); ++c) col[c] = dict.psi_i[m][c];
        theta.apply(col, cand.re);
        for (int c = 0; c < theta.cols(); ++c) col[c] = dict.psi_q[m][c];
        theta.apply(col, cand.im);
    }
    return set;
}

int classify(const ComplexSampleVector& y, const CandidateSet& cands) {
    if (cands.candidates.empty())
        throw std::invalid_argument("classify: empty candidate set");
    check_length(y.re.size(), cands.sample_count, "classify samples");
    check_length(y.im.size(), cands.sample_count, "classify samples");

    int best = 0;
    double best_dist = 0.0;
    for (int m = 0; m < cands.symbol_count(); ++m) {
        const auto& s = cands.candidates[m];
        double dist = 0.0;
        for (int l = 0; l < cands.sample_count; ++l) {
            const double dr = y.re[l] - s.re[l];
            const double di = y.im[l] - s.im[l];
            dist += dr * dr + di * di;
        }
        if (m == 0 || dist < best_dist) {  // ties keep the lowest index
            best = m;
            best_dist = dist;
        }
    }
    return best;
}

int classify_with_prn(std::span<const double> noisy_i,
                      std::span<const double> noisy_q,
                      std::span<const std::int8_t> prn,
                      const MeasurementMatrix& theta, const Dictionary& dict) {
    check_length(prn.size(), theta.cols(), "classify_with_prn prn");
    for (std::int8_t p : prn)
        if (p != -1 && p != 1)
            throw std::invalid_argument("classify_with_prn: prn entries must be -1 or +1");

    std::vector<double> mixed_i(noisy_i.size()), mixed_q(noisy_q.size());
    check_length(noisy_i.size(), theta.cols(), "classify_with_prn I");
    check_length(noisy_q.size(), theta.cols(), "classify_with_prn Q");
    for (std::size_t c = 0; c < mixed_i.size(); ++c) {
        mixed_i[c] = noisy_i[c] * prn[c];
        mixed_q[c] = noisy_q[c] * prn[c];
    }

    Dictionary mixed = dict;
    for (int m = 0; m < dict.symbol_count(); ++m) {
        for (int c = 0; c < dict.chips_per_channel; ++c) {
            mixed.psi_i[m][c] = static_cast<std::int8_t>(dict.psi_i[m][c] * prn[c]);
            mixed.psi_q[m][c] = static_cast<std::int8_t>(dict.psi_q[m][c] * prn[c]);
        }
    }
    const CandidateSet cands = build_candidates(mixed, theta);
    return classify(sample_chips(mixed_i, mixed_q, theta), cands);
}

std::vector<std::uint8_t> demodulate_packet(std::span<const std::uint8_t> bits,
                                            const Dictionary& dict,
                                            const MeasurementMatrix& theta,
                                            const CandidateSet& cands,
                                            const NoiseSpec& spec, PathModel path,
                                            int oversample, Rng& rng) {
    const int n = [&] {
        int v = 0;
        while ((1 << v) < dict.symbol_count()) ++v;
        return v;
    }();
    if (bits.empty() || bits.size() % static_cast<std::size_t>(n) != 0)
        throw std::invalid_argument("demodulate_packet: bit count not a multiple of " +
                                    std::to_string(n));

    const auto pulse =
        path == PathModel::kWaveform ? halfsine_pulse(oversample) : std::vector<double>{};

    std::vector<std::uint8_t> decoded;
    decoded.reserve(bits.size());
    for (std::size_t off = 0; off < bits.size(); off += n) {
        const SymbolAlpha alpha = encode_bits(bits.subspan(off, n), n);
        const ChipVector chips = spread(alpha, dict);
        int decision = 0;
        if (path == PathModel::kChip) {
            const IqSamples noisy = add_awgn(chips, spec, rng);
            decision = classify(sample_chips(noisy.i, noisy.q, theta), cands);
        } else {
            const Waveform wi = add_awgn_waveform(shape_halfsine(chips.i, oversample), spec, rng);
            const Waveform wq = add_awgn_waveform(shape_halfsine(chips.q, oversample), spec, rng);
            decision = classify(sample_waveform(wi, wq, theta, pulse), cands);
        }
        const auto block = decode_bits(SymbolAlpha{decision}, n);
        decoded.insert(decoded.end(), block.begin(), block.end());
    }
    return decoded;
}

}  // namespace dsss
