// AWGN channel calibrated by Eb/N0, plus the deterministic constant-offset
// channel used for implementation validation.
//
// Calibration. Chips carry unit energy at the matched-filter output
// (E_c = 1), so E_b = (C/N) * E_c = 8 for the 802.15.4 profile. Noise is
// injected at the matched-filter-output equivalent level: each chip-rate
// sample of each channel receives independent N(0, sigma^2) noise with
// sigma^2 = N0/2 = E_b / (2 * rho), rho the linear Eb/N0. The waveform
// path scales the per-sample std by sqrt(pulse_energy(R)) so that after
// pulse correlation both paths present identical noise statistics; the
// factor is computed from the shipped pulse samples.

#pragma once

#include <vector>

#include "dsss/chipmap.hpp"
#include "dsss/rng.hpp"
#include "dsss/tx.hpp"

namespace dsss {

/// Energy-per-bit over noise-spectral-density, in dB. +inf is the
/// noise-free sentinel, -inf the zero-SNR limit used by theory anchors.
struct EbN0Point {
    double db = 0.0;

    double linear() const;
    static EbN0Point from_linear(double rho);
};

/// Per-chip-sample noise standard deviation at the matched-filter output.
/// Positive for finite Eb/N0; exactly 0 for the noise-free sentinel.
struct NoiseSpec {
    double sigma_chip = 0.0;
};

/// Real I/Q sample pair at chip rate (post matched filter, pre decimation).
struct IqSamples {
    std::vector<double> i;
    std::vector<double> q;
};

/// sigma_chip = sqrt(E_b / (2 * rho)) with E_b = C/N chips of unit energy
/// per bit. For the 802.15.4 profile this is sqrt(4 / rho).
NoiseSpec sigma_from_ebn0(EbN0Point e, const ChipTable& table);

/// Adds independent N(0, sigma_chip^2) noise to every entry of both
/// channels. Draw order is fixed: all I chips, then all Q chips.
IqSamples add_awgn(const ChipVector& chips, const NoiseSpec& spec, Rng& rng);

/// Waveform-rate AWGN with per-sample std sigma_chip * sqrt(pulse_energy(R)),
/// so the matched-filter output noise variance equals sigma_chip^2.
Waveform add_awgn_waveform(const Waveform& w, const NoiseSpec& spec, Rng& rng);

/// Constant-offset channel: every entry increased by `offset`.
IqSamples add_constant(const ChipVector& chips, double offset);
IqSamples add_constant(const IqSamples& samples, double offset);
Waveform add_constant(const Waveform& w, double offset);

}  // namespace dsss
