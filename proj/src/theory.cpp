#include "dsss/theory.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "dsss/errors.hpp"

namespace dsss {
namespace {

constexpr double kAbsTol = 1e-12;
constexpr double kTailSigmas = 12.0;  // truncation; Q(12) < 2e-33
constexpr int kAlternatives = 15;     // M - 1

// Standard normal CDF, accurate in both tails.
double gaussian_cdf(double x) { return 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0); }

// 1 - (1 - Q(x))^15 without cancellation: goes through log(Phi) with the
// more accurate of Phi or Q feeding the logarithm.
double miss_probability(double x) {
    const double phi = gaussian_cdf(x);
    if (phi <= 0.0) return 1.0;
    const double q = gaussian_q(x);
    const double log_phi = q < 0.5 ? std::log1p(-q) : std::log(phi);
    return -std::expm1(kAlternatives * log_phi);
}

}  // namespace

double gaussian_q(double x) { return 0.5 * std::erfc(x * std::numbers::sqrt2 / 2.0); }

double ber_coherent_mfsk(EbN0Point e) {
    if (std::isnan(e.db)) throw std::invalid_argument("ber_coherent_mfsk: NaN Eb/N0");
    const double rho = e.linear();
    if (std::isinf(rho)) return 0.0;
    const double mu = std::sqrt(8.0 * rho);

    // Centered form: integrate [1 - (1-Q(mu+t))^15] * phi(t) over t.
    const auto integrand = [mu](double t) {
        return miss_probability(mu + t) *
               std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
    };
    double err = 0.0;
    const double integral = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, -kTailSigmas, kTailSigmas, 15, 1e-14, &err);
    if (!(err <= kAbsTol) || !std::isfinite(integral))
        throw NumericError("ber_coherent_mfsk: quadrature error estimate " +
                           std::to_string(err) + " exceeds " + std::to_string(kAbsTol) +
                           " at Eb/N0 = " + std::to_string(e.db) + " dB");
    return (8.0 / 15.0) * integral;
}

double ber_noncoherent_mfsk(EbN0Point e) {
    if (std::isnan(e.db)) throw std::invalid_argument("ber_noncoherent_mfsk: NaN Eb/N0");
    const double rho = e.linear();
    if (std::isinf(rho)) return 0.0;

    double sum = 0.0;
    double binom = 16.0;  // C(16, 1); the recurrence keeps it integer-exact
    for (int m = 2; m <= 16; ++m) {
        binom = binom * (17 - m) / m;  // C(16, m)
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        sum += sign * binom * std::exp(4.0 * rho * (1.0 / m - 1.0));
    }
    return 8.0 * sum / (15.0 * 16.0);  // ordering keeps the rho = 0 anchor exact
}

TheoryCurve coherent_curve(std::span<const double> grid_db) {
    TheoryCurve curve;
    curve.points.reserve(grid_db.size());
    for (double db : grid_db)
        curve.points.push_back({db, ber_coherent_mfsk(EbN0Point{db})});
    return curve;
}

TheoryCurve noncoherent_curve(std::span<const double> grid_db) {
    TheoryCurve curve;
    curve.points.reserve(grid_db.size());
    for (double db : grid_db)
        curve.points.push_back({db, ber_noncoherent_mfsk(EbN0Point{db})});
    return curve;
}

}  // namespace dsss
