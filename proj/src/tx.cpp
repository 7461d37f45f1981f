#include "dsss/tx.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dsss {

ChipVector spread(SymbolAlpha alpha, const Dictionary& dict) {
    if (alpha.index < 0 || alpha.index >= dict.symbol_count())
        throw std::invalid_argument("spread: symbol index " + std::to_string(alpha.index) +
                                    " outside [0, " + std::to_string(dict.symbol_count()) + ")");
    ChipVector out;
    out.i.assign(dict.psi_i[alpha.index].begin(), dict.psi_i[alpha.index].end());
    out.q.assign(dict.psi_q[alpha.index].begin(), dict.psi_q[alpha.index].end());
    return out;
}

std::vector<double> halfsine_pulse(int oversample) {
    if (oversample < 2) throw std::invalid_argument("halfsine_pulse: oversample must be >= 2");
    std::vector<double> g(oversample);
    for (int j = 0; j < oversample; ++j)
        g[j] = std::sin(std::numbers::pi * (j + 0.5) / oversample);  // midpoint grid
    return g;
}

double pulse_energy(int oversample) {
    double e = 0.0;
    for (double v : halfsine_pulse(oversample)) e += v * v;
    return e;
}

Waveform shape_halfsine(std::span<const double> chips, int oversample) {
    if (oversample < 2) throw std::invalid_argument("shape_halfsine: oversample must be >= 2");
    const auto pulse = halfsine_pulse(oversample);
    Waveform w;
    w.oversample = oversample;
    w.samples.resize(chips.size() * static_cast<std::size_t>(oversample));
    std::size_t k = 0;
    for (double chip : chips)
        for (int j = 0; j < oversample; ++j) w.samples[k++] = chip * pulse[j];
    return w;
}

std::vector<std::uint8_t> make_packet(int bit_count, int bits_per_symbol, Rng& rng) {
    if (bit_count <= 0 || bits_per_symbol <= 0 || bit_count % bits_per_symbol != 0)
        throw std::invalid_argument("make_packet: bit count " + std::to_string(bit_count) +
                                    " not a positive multiple of " +
                                    std::to_string(bits_per_symbol));
    std::vector<std::uint8_t> bits(bit_count);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    return bits;
}

}  // namespace dsss
