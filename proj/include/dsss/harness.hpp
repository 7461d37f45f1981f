// Monte Carlo BER sweep harness: seeded, packet-parallel, with the
// fixed-error-count stopping rule and machine-readable CSV output.
//
// Reproducibility contract: packet i of grid point g under method m draws
// from substream_seed(seed, method_id(m), g, i). Packets are the unit of
// parallel work and the stopping decision is always evaluated on the
// sequential packet prefix, so every record is fully determined by
// (seed, config) regardless of worker count or scheduling. Wall-clock
// elapsed_s is the one reported field outside that contract.

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dsss/chipmap.hpp"
#include "dsss/rx.hpp"

namespace dsss {

enum class Method {
    kClassic,  // Nyquist matched-filter receiver
    kCs,       // compressive block-aggregation receiver
};

int method_id(Method m);
const char* method_name(Method m);

struct SimConfig {
    std::vector<Method> methods = {Method::kClassic, Method::kCs};
    double kappa = 0.5;  // cs undersampling ratio; classic always runs at 1
    std::vector<double> ebn0_grid_db = default_grid();
    int min_errors = 200;
    long long max_bits = 100'000'000;
    int packet_bits = 1016;  // 127-byte maximum payload
    std::uint64_t seed = 1;
    int oversample = 16;
    PathModel path_model = PathModel::kChip;

    static std::vector<double> default_grid();  // -2..12 dB, 1 dB steps
};

/// One (method, kappa, Eb/N0) sweep point. `capped` marks records that
/// hit max_bits before reaching min_errors.
struct BerRecord {
    Method method = Method::kClassic;
    double kappa = 1.0;
    double ebn0_db = 0.0;
    long long bits_sent = 0;
    long long bit_errors = 0;
    double ber = 0.0;
    long long packets = 0;
    bool capped = false;
    std::uint64_t seed = 0;
    double elapsed_s = 0.0;

    /// Equality of the reproducible fields (everything except elapsed_s).
    bool same_results(const BerRecord& other) const;
    bool operator==(const BerRecord& other) const = default;
};

/// Validates field ranges and cross-field constraints (packet_bits
/// divisible by N, kappa representable, min_errors >= 1, ...).
/// Throws std::invalid_argument on violation.
void validate_config(const SimConfig& cfg, const ChipTable& table);

/// Runs one sweep point: whole packets of packet_bits random bits through
/// tx -> channel -> rx until the first packet that pushes the cumulative
/// error count to min_errors, or until max_bits (capped). point_index
/// selects the RNG substream family and must be the grid index of
/// ebn0_db. A noise-free point (+inf dB) runs exactly one packet and is
/// reported capped, since min_errors is unreachable.
BerRecord run_point(const SimConfig& cfg, const ChipTable& table, Method method,
                    int point_index, double ebn0_db, int workers);

struct SweepResult {
    std::vector<BerRecord> records;  // grouped by method, grid order
};

/// One record per grid point per configured method. on_record, when set,
/// is invoked from the calling thread as each record completes (used to
/// flush partial results incrementally).
SweepResult run_sweep(const SimConfig& cfg, const ChipTable& table, int workers,
                      const std::function<void(const BerRecord&)>& on_record = {});

/// CSV header matching emit_csv_row. Columns:
/// method,kappa,ebn0_db,bits_sent,bit_errors,ber,packets,capped,seed,
/// elapsed_s[,pb_coherent,pb_noncoherent]
std::string csv_header(bool with_theory);

/// One CSV row; floats in shortest round-trip form. with_theory appends
/// the two reference-curve values at the record's Eb/N0.
std::string emit_csv_row(const BerRecord& rec, bool with_theory);

/// Full CSV document (header + one row per record).
std::string emit_csv(std::span<const BerRecord> records, bool with_theory);

/// Parses emit_csv output back into records (theory columns, when
/// present, are validated for shape and dropped). parse_csv(emit_csv(r))
/// reproduces r exactly.
std::vector<BerRecord> parse_csv(const std::string& text);

/// Flat key/value config file, one `key = value` per line, '#' comments.
/// Keys mirror SimConfig field names: method, kappa, ebn0GridDb,
/// minErrors, maxBits, packetBits, seed, oversample, pathModel.
SimConfig parse_config(std::istream& in);
SimConfig parse_config_file(const std::string& path);

/// Grid helper: accepts "a,b,c" lists or "start:step:stop" ranges; "inf"
/// is the noise-free sentinel.
std::vector<double> parse_ebn0_spec(const std::string& spec);

/// Method-list helper: "classic", "cs", "both", or a comma list.
std::vector<Method> parse_methods(const std::string& value);

/// Interpolates the Eb/N0 at which a measured curve crosses target_ber,
/// linearly in (dB, log10 BER). Points must be sorted by ebn0_db; the
/// first bracketing interval wins. Throws std::invalid_argument if the
/// curve never crosses the target.
double interpolate_crossing_db(std::span<const BerRecord> curve, double target_ber);

}  // namespace dsss
