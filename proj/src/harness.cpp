#include "dsss/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dsss/theory.hpp"

namespace dsss {
namespace {

struct PacketOutcome {
    long long bits = 0;
    long long errors = 0;
};

// One whole packet through the configured pipeline, on its own substream.
PacketOutcome run_packet(const SimConfig& cfg, const Dictionary& dict,
                         const MeasurementMatrix& theta, const CandidateSet& cands,
                         const NoiseSpec& spec, int bits_per_symbol,
                         std::uint64_t packet_seed) {
    Rng rng(packet_seed);
    const auto bits = make_packet(cfg.packet_bits, bits_per_symbol, rng);
    const auto decoded = demodulate_packet(bits, dict, theta, cands, spec,
                                           cfg.path_model, cfg.oversample, rng);
    PacketOutcome out;
    out.bits = cfg.packet_bits;
    for (std::size_t i = 0; i < bits.size(); ++i)
        out.errors += bits[i] != decoded[i];
    return out;
}

// Fills outcomes[first .. first+count) in parallel. Each packet depends
// only on its own substream seed, so scheduling cannot change results.
void run_batch(const SimConfig& cfg, const Dictionary& dict,
               const MeasurementMatrix& theta, const CandidateSet& cands,
               const NoiseSpec& spec, int bits_per_symbol, Method method,
               int point_index, long long first, int count, int workers,
               std::vector<PacketOutcome>& outcomes) {
    auto work = [&](long long packet) {
        const std::uint64_t s = substream_seed(cfg.seed, method_id(method),
                                               static_cast<std::uint64_t>(point_index),
                                               static_cast<std::uint64_t>(packet));
        outcomes[packet] = run_packet(cfg, dict, theta, cands, spec, bits_per_symbol, s);
    };
    if (workers <= 1 || count == 1) {
        for (int k = 0; k < count; ++k) work(first + k);
        return;
    }
    std::atomic<int> next{0};
    auto drain = [&] {
        for (;;) {
            const int k = next.fetch_add(1);
            if (k >= count) return;
            work(first + k);
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min(workers, count) - 1;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double_field(std::string_view s, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("bad ") + what + " value '" + std::string(s) + "'");
    return v;
}

template <typename Int>
Int parse_int_field(std::string_view s, const char* what) {
    Int v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("bad ") + what + " value '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(start));
            return parts;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace

std::vector<Method> parse_methods(const std::string& value) {
    if (value == "both") return {Method::kClassic, Method::kCs};
    std::vector<Method> methods;
    for (auto part : split(value, ',')) {
        part = trim(part);
        if (part == "classic")
            methods.push_back(Method::kClassic);
        else if (part == "cs")
            methods.push_back(Method::kCs);
        else
            throw std::invalid_argument("unknown method '" + std::string(part) + "'");
    }
    if (methods.empty()) throw std::invalid_argument("empty method list");
    return methods;
}

int method_id(Method m) { return m == Method::kClassic ? 0 : 1; }

const char* method_name(Method m) { return m == Method::kClassic ? "classic" : "cs"; }

std::vector<double> SimConfig::default_grid() {
    std::vector<double> grid;
    for (int db = -2; db <= 12; ++db) grid.push_back(db);
    return grid;
}

bool BerRecord::same_results(const BerRecord& other) const {
    return method == other.method && kappa == other.kappa && ebn0_db == other.ebn0_db &&
           bits_sent == other.bits_sent && bit_errors == other.bit_errors &&
           ber == other.ber && packets == other.packets && capped == other.capped &&
           seed == other.seed;
}

void validate_config(const SimConfig& cfg, const ChipTable& table) {
    if (cfg.methods.empty()) throw std::invalid_argument("config: no methods selected");
    for (std::size_t a = 0; a < cfg.methods.size(); ++a)
        for (std::size_t b = a + 1; b < cfg.methods.size(); ++b)
            if (cfg.methods[a] == cfg.methods[b])
                throw std::invalid_argument("config: duplicate method");
    if (cfg.min_errors < 1) throw std::invalid_argument("config: minErrors must be >= 1");
    if (cfg.packet_bits <= 0 || cfg.packet_bits % table.bits_per_symbol() != 0)
        throw std::invalid_argument("config: packetBits must be a positive multiple of " +
                                    std::to_string(table.bits_per_symbol()));
    if (cfg.max_bits < cfg.packet_bits)
        throw std::invalid_argument("config: maxBits smaller than one packet");
    if (cfg.oversample < 2) throw std::invalid_argument("config: oversample must be >= 2");
    if (cfg.ebn0_grid_db.empty()) throw std::invalid_argument("config: empty Eb/N0 grid");
    for (double db : cfg.ebn0_grid_db)
        if (std::isnan(db)) throw std::invalid_argument("config: NaN in Eb/N0 grid");
    // Surfaces bad kappa (non-integer 1/kappa or L) as std::invalid_argument.
    if (std::find(cfg.methods.begin(), cfg.methods.end(), Method::kCs) != cfg.methods.end())
        make_measurement(MeasurementKind::kBlockAggregate, cfg.kappa,
                         build_dictionaries(table).chips_per_channel);
}

BerRecord run_point(const SimConfig& cfg, const ChipTable& table, Method method,
                    int point_index, double ebn0_db, int workers) {
    const auto t0 = std::chrono::steady_clock::now();

    const Dictionary dict = build_dictionaries(table);
    const double kappa = method == Method::kClassic ? 1.0 : cfg.kappa;
    const MeasurementMatrix theta = make_measurement(
        method == Method::kClassic ? MeasurementKind::kNyquist
                                   : MeasurementKind::kBlockAggregate,
        kappa, dict.chips_per_channel);
    const CandidateSet cands = build_candidates(dict, theta);
    const NoiseSpec spec = sigma_from_ebn0(EbN0Point{ebn0_db}, table);
    const int n = table.bits_per_symbol();

    BerRecord rec;
    rec.method = method;
    rec.kappa = kappa;
    rec.ebn0_db = ebn0_db;
    rec.seed = cfg.seed;

    if (spec.sigma_chip == 0.0) {
        // Noise-free sentinel: errors can never accumulate, so the stopping
        // rule would spin until max_bits. One packet settles it; the record
        // is capped because min_errors was not reached.
        const auto out = run_packet(cfg, dict, theta, cands, spec, n,
                                    substream_seed(cfg.seed, method_id(method),
                                                   static_cast<std::uint64_t>(point_index), 0));
        rec.bits_sent = out.bits;
        rec.bit_errors = out.errors;
        rec.packets = 1;
        rec.capped = true;
    } else {
        std::vector<PacketOutcome> outcomes;
        long long produced = 0;
        long long scanned = 0;
        long long cum_bits = 0;
        long long cum_errors = 0;
        bool stopped = false;
        int batch = std::max(workers, 1) * 4;
        const int max_batch = std::max(std::max(workers, 1) * 4, 512);
        while (!stopped) {
            outcomes.resize(produced + batch);
            run_batch(cfg, dict, theta, cands, spec, n, method, point_index, produced,
                      batch, workers, outcomes);
            produced += batch;
            // The stopping decision only ever looks at the sequential packet
            // prefix; packets computed past the stop index are discarded.
            for (; scanned < produced && !stopped; ++scanned) {
                cum_bits += outcomes[scanned].bits;
                cum_errors += outcomes[scanned].errors;
                if (cum_errors >= cfg.min_errors) {
                    stopped = true;
                } else if (cum_bits >= cfg.max_bits) {
                    stopped = true;
                    rec.capped = true;
                }
            }
            batch = std::min(batch * 2, max_batch);
        }
        rec.bits_sent = cum_bits;
        rec.bit_errors = cum_errors;
        rec.packets = scanned;
    }

    rec.ber = static_cast<double>(rec.bit_errors) / static_cast<double>(rec.bits_sent);
    rec.elapsed_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

SweepResult run_sweep(const SimConfig& cfg, const ChipTable& table, int workers,
                      const std::function<void(const BerRecord&)>& on_record) {
    validate_config(cfg, table);
    SweepResult result;
    result.records.reserve(cfg.methods.size() * cfg.ebn0_grid_db.size());
    for (Method method : cfg.methods) {
        for (std::size_t g = 0; g < cfg.ebn0_grid_db.size(); ++g) {
            BerRecord rec = run_point(cfg, table, method, static_cast<int>(g),
                                      cfg.ebn0_grid_db[g], workers);
            if (on_record) on_record(rec);
            result.records.push_back(std::move(rec));
        }
    }
    return result;
}

std::string csv_header(bool with_theory) {
    std::string h = "method,kappa,ebn0_db,bits_sent,bit_errors,ber,packets,capped,seed,elapsed_s";
    if (with_theory) h += ",pb_coherent,pb_noncoherent";
    return h;
}

std::string emit_csv_row(const BerRecord& rec, bool with_theory) {
    std::string row;
    row += method_name(rec.method);
    row += ',';
    row += format_double(rec.kappa);
    row += ',';
    row += format_double(rec.ebn0_db);
    row += ',';
    row += std::to_string(rec.bits_sent);
    row += ',';
    row += std::to_string(rec.bit_errors);
    row += ',';
    row += format_double(rec.ber);
    row += ',';
    row += std::to_string(rec.packets);
    row += ',';
    row += rec.capped ? '1' : '0';
    row += ',';
    row += std::to_string(rec.seed);
    row += ',';
    row += format_double(rec.elapsed_s);
    if (with_theory) {
        row += ',';
        row += format_double(ber_coherent_mfsk(EbN0Point{rec.ebn0_db}));
        row += ',';
        row += format_double(ber_noncoherent_mfsk(EbN0Point{rec.ebn0_db}));
    }
    return row;
}

std::string emit_csv(std::span<const BerRecord> records, bool with_theory) {
    if (records.empty()) throw std::invalid_argument("emit_csv: no records");
    std::string out = csv_header(with_theory);
    out += '\n';
    for (const auto& rec : records) {
        out += emit_csv_row(rec, with_theory);
        out += '\n';
    }
    return out;
}

std::vector<BerRecord> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("parse_csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool with_theory = false;
    if (line == csv_header(true))
        with_theory = true;
    else if (line != csv_header(false))
        throw std::invalid_argument("parse_csv: unrecognized header '" + line + "'");
    const std::size_t ncols = with_theory ? 12 : 10;

    std::vector<BerRecord> records;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != ncols)
            throw std::invalid_argument("parse_csv: row with " + std::to_string(f.size()) +
                                        " columns, expected " + std::to_string(ncols));
        BerRecord rec;
        if (f[0] == "classic")
            rec.method = Method::kClassic;
        else if (f[0] == "cs")
            rec.method = Method::kCs;
        else
            throw std::invalid_argument("parse_csv: unknown method '" + std::string(f[0]) + "'");
        rec.kappa = parse_double_field(f[1], "kappa");
        rec.ebn0_db = parse_double_field(f[2], "ebn0_db");
        rec.bits_sent = parse_int_field<long long>(f[3], "bits_sent");
        rec.bit_errors = parse_int_field<long long>(f[4], "bit_errors");
        rec.ber = parse_double_field(f[5], "ber");
        rec.packets = parse_int_field<long long>(f[6], "packets");
        if (f[7] == "0")
            rec.capped = false;
        else if (f[7] == "1")
            rec.capped = true;
        else
            throw std::invalid_argument("parse_csv: bad capped flag");
        rec.seed = parse_int_field<std::uint64_t>(f[8], "seed");
        rec.elapsed_s = parse_double_field(f[9], "elapsed_s");
        if (with_theory) {
            parse_double_field(f[10], "pb_coherent");
            parse_double_field(f[11], "pb_noncoherent");
        }
        records.push_back(rec);
    }
    return records;
}

std::vector<double> parse_ebn0_spec(const std::string& spec) {
    const auto parse_one = [](std::string_view tok) {
        tok = trim(tok);
        if (tok.empty()) throw std::invalid_argument("ebn0: empty value");
        return parse_double_field(tok, "ebn0");
    };
    if (spec.find(':') != std::string::npos) {
        const auto parts = split(spec, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("ebn0 range must be start:step:stop");
        const double start = parse_one(parts[0]);
        const double step = parse_one(parts[1]);
        const double stop = parse_one(parts[2]);
        if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(start) ||
            !std::isfinite(stop) || stop < start)
            throw std::invalid_argument("ebn0 range must have step > 0 and stop >= start");
        std::vector<double> grid;
        const long long count = static_cast<long long>((stop - start) / step + 1e-9) + 1;
        for (long long i = 0; i < count; ++i) grid.push_back(start + step * i);
        return grid;
    }
    std::vector<double> grid;
    for (auto tok : split(spec, ',')) grid.push_back(parse_one(tok));
    return grid;
}

SimConfig parse_config(std::istream& in) {
    SimConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        const std::size_t eq = sv.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key = value");
        const std::string key{trim(sv.substr(0, eq))};
        const std::string value{trim(sv.substr(eq + 1))};
        if (key == "method")
            cfg.methods = parse_methods(value);
        else if (key == "kappa")
            cfg.kappa = parse_double_field(value, "kappa");
        else if (key == "ebn0GridDb")
            cfg.ebn0_grid_db = parse_ebn0_spec(value);
        else if (key == "minErrors")
            cfg.min_errors = parse_int_field<int>(value, "minErrors");
        else if (key == "maxBits")
            cfg.max_bits = parse_int_field<long long>(value, "maxBits");
        else if (key == "packetBits")
            cfg.packet_bits = parse_int_field<int>(value, "packetBits");
        else if (key == "seed")
            cfg.seed = parse_int_field<std::uint64_t>(value, "seed");
        else if (key == "oversample")
            cfg.oversample = parse_int_field<int>(value, "oversample");
        else if (key == "pathModel") {
            if (value == "chip")
                cfg.path_model = PathModel::kChip;
            else if (value == "waveform")
                cfg.path_model = PathModel::kWaveform;
            else
                throw std::invalid_argument("config: unknown pathModel '" + value + "'");
        } else {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": unknown key '" + key + "'");
        }
    }
    return cfg;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    return parse_config(in);
}

double interpolate_crossing_db(std::span<const BerRecord> curve, double target_ber) {
    if (!(target_ber > 0.0))
        throw std::invalid_argument("interpolate_crossing_db: target must be positive");
    // Zero-error records carry no log-BER information; interpolate on the
    // positive-BER subsequence only.
    std::vector<const BerRecord*> pts;
    for (const auto& rec : curve)
        if (rec.ber > 0.0) pts.push_back(&rec);
    const double lt = std::log10(target_ber);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double b0 = pts[i]->ber, b1 = pts[i + 1]->ber;
        if (b0 == target_ber) return pts[i]->ebn0_db;
        if (!(b0 > target_ber && b1 <= target_ber)) continue;
        const double l0 = std::log10(b0), l1 = std::log10(b1);
        if (l0 == l1) return pts[i]->ebn0_db;
        return pts[i]->ebn0_db +
               (lt - l0) * (pts[i + 1]->ebn0_db - pts[i]->ebn0_db) / (l1 - l0);
    }
    if (!pts.empty() && pts.back()->ber == target_ber) return pts.back()->ebn0_db;
    throw std::invalid_argument("interpolate_crossing_db: curve never crosses target");
}

}  // namespace dsss
