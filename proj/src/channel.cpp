#include "dsss/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace dsss {

double EbN0Point::linear() const { return std::pow(10.0, db / 10.0); }

EbN0Point EbN0Point::from_linear(double rho) {
    if (rho < 0.0) throw std::invalid_argument("EbN0Point: negative linear ratio");
    return EbN0Point{10.0 * std::log10(rho)};
}

NoiseSpec sigma_from_ebn0(EbN0Point e, const ChipTable& table) {
    if (std::isnan(e.db)) throw std::invalid_argument("sigma_from_ebn0: NaN Eb/N0");
    const double rho = e.linear();
    const double chips_per_bit =
        static_cast<double>(table.chips_per_symbol()) / table.bits_per_symbol();
    const double eb = chips_per_bit;  // unit chip energy
    return NoiseSpec{std::sqrt(eb / (2.0 * rho))};  // 0 when rho = inf
}

IqSamples add_awgn(const ChipVector& chips, const NoiseSpec& spec, Rng& rng) {
    IqSamples out;
    out.i.resize(chips.i.size());
    out.q.resize(chips.q.size());
    if (spec.sigma_chip == 0.0) {
        out.i = chips.i;
        out.q = chips.q;
        return out;
    }
    for (std::size_t c = 0; c < chips.i.size(); ++c)
        out.i[c] = chips.i[c] + spec.sigma_chip * rng.gaussian();
    for (std::size_t c = 0; c < chips.q.size(); ++c)
        out.q[c] = chips.q[c] + spec.sigma_chip * rng.gaussian();
    return out;
}

Waveform add_awgn_waveform(const Waveform& w, const NoiseSpec& spec, Rng& rng) {
    Waveform out = w;
    if (spec.sigma_chip == 0.0) return out;
    // Per-sample std such that correlation against the unit-normalized
    // pulse template leaves variance sigma_chip^2 per chip.
    const double sigma = spec.sigma_chip * std::sqrt(pulse_energy(w.oversample));
    for (auto& s : out.samples) s += sigma * rng.gaussian();
    return out;
}

IqSamples add_constant(const ChipVector& chips, double offset) {
    if (!std::isfinite(offset)) throw std::invalid_argument("add_constant: non-finite offset");
    IqSamples out;
    out.i = chips.i;
    out.q = chips.q;
    for (auto& v : out.i) v += offset;
    for (auto& v : out.q) v += offset;
    return out;
}

IqSamples add_constant(const IqSamples& samples, double offset) {
    if (!std::isfinite(offset)) throw std::invalid_argument("add_constant: non-finite offset");
    IqSamples out = samples;
    for (auto& v : out.i) v += offset;
    for (auto& v : out.q) v += offset;
    return out;
}

Waveform add_constant(const Waveform& w, double offset) {
    if (!std::isfinite(offset)) throw std::invalid_argument("add_constant: non-finite offset");
    Waveform out = w;
    for (auto& s : out.samples) s += offset;
    return out;
}

}  // namespace dsss
