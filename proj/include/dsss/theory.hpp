// Theoretical 16-ary orthogonal-signalling BER reference curves. The
// simulated 802.15.4 code set is short and non-orthogonal, so simulated
// curves track these references without matching them exactly.

#pragma once

#include <span>
#include <vector>

#include "dsss/channel.hpp"

namespace dsss {

struct TheoryPoint {
    double ebn0_db = 0.0;
    double pb = 0.0;
};

/// Reference curve sampled on an Eb/N0 grid. pb lies in [0, 1] and is
/// non-increasing in ebn0_db.
struct TheoryCurve {
    std::vector<TheoryPoint> points;
};

/// Coherent 16-FSK bit error probability,
///   P_b = (8/15) * (1/sqrt(2*pi)) *
///         Int [1 - (1 - Q(x))^15] * exp(-(x - sqrt(8*rho))^2 / 2) dx,
/// evaluated by adaptive quadrature to absolute tolerance 1e-12 over
/// +-12 standard deviations around the Gaussian center (the truncated
/// tails contribute < 1e-30). Throws NumericError if the quadrature
/// cannot certify the tolerance.
double ber_coherent_mfsk(EbN0Point e);

/// Non-coherent 16-FSK bit error probability, closed form:
///   P_b = (8/15) * (1/16) * sum_{m=2}^{16} (-1)^m C(16,m) *
///         exp(4 * rho * (1/m - 1)),
/// with exact integer binomial coefficients.
double ber_noncoherent_mfsk(EbN0Point e);

/// Standard normal tail probability Q(x) = P(Z > x).
double gaussian_q(double x);

TheoryCurve coherent_curve(std::span<const double> grid_db);
TheoryCurve noncoherent_curve(std::span<const double> grid_db);

}  // namespace dsss
