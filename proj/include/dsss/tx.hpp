// Transmitter: bit blocks -> spread chip sequences -> half-sine shaped
// baseband waveforms. Everything runs in normalized time (chip units);
// absolute rates never enter any computation.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsss/chipmap.hpp"
#include "dsss/rng.hpp"

namespace dsss {

/// One symbol's spread chips, split into channels. Entries are -1/+1,
/// both vectors have length C_h.
struct ChipVector {
    std::vector<double> i;
    std::vector<double> q;
};

/// Oversampled baseband signal for one channel of one symbol:
/// C_h * oversample samples, one half-sine lobe per chip.
struct Waveform {
    std::vector<double> samples;
    int oversample = 0;        // samples per per-channel chip period
    double chip_period = 1.0;  // per-channel chip duration (normalized)
};

/// Selects dictionary column alpha.index for both channels.
ChipVector spread(SymbolAlpha alpha, const Dictionary& dict);

/// Half-sine chip pulse sampled at the midpoint grid:
/// g[j] = sin(pi * (j + 1/2) / oversample), j = 0..oversample-1.
std::vector<double> halfsine_pulse(int oversample);

/// Discrete energy of the shipped pulse, sum of g[j]^2. Used by the
/// channel module to calibrate waveform-level noise, never hard-coded.
double pulse_energy(int oversample);

/// Modulates +-1 chips onto consecutive disjoint half-sine supports.
/// Requires oversample >= 2. Sample j of chip c is
/// chips[c] * sin(pi * (j + 1/2) / oversample).
Waveform shape_halfsine(std::span<const double> chips, int oversample);

/// bit_count independent equiprobable bits; bit_count must be a multiple
/// of bits_per_symbol. Deterministic given the rng state.
std::vector<std::uint8_t> make_packet(int bit_count, int bits_per_symbol, Rng& rng);

}  // namespace dsss
