// Shared helpers for the test suites.

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

inline std::string data_file(const char* name) {
    return std::string(DSSS_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Wilson score interval for a binomial proportion.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

inline Interval wilson(long long errors, long long trials, double z) {
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {center - half, center + half};
}

/// Standard error of a BER estimate.
inline double ber_se(double ber, long long bits) {
    return std::sqrt(ber * (1.0 - ber) / static_cast<double>(bits));
}

}  // namespace testsupport
