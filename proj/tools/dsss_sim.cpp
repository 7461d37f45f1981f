// BER sweep CLI. Exit codes: 0 success, 1 config error, 2 runtime error,
// 3 success with at least one point capped at max_bits.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "dsss/harness.hpp"

namespace {

int run_command(const dsss::SimConfig& cfg, const dsss::ChipTable& table,
                const std::string& out_path, bool with_theory, int workers) {
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            std::cerr << "error: cannot open output file '" << out_path << "'\n";
            return 2;
        }
    }
    std::ostream& out = out_path.empty() ? std::cout : file;

    out << dsss::csv_header(with_theory) << '\n' << std::flush;
    bool any_capped = false;
    const auto on_record = [&](const dsss::BerRecord& rec) {
        out << dsss::emit_csv_row(rec, with_theory) << '\n' << std::flush;
        if (!out) throw std::runtime_error("write failure on output stream");
        any_capped = any_capped || rec.capped;
        std::cerr << dsss::method_name(rec.method) << "  ebn0=" << rec.ebn0_db
                  << " dB  ber=" << rec.ber << "  errors=" << rec.bit_errors << "/"
                  << rec.bits_sent << (rec.capped ? "  [capped]" : "") << '\n';
    };
    dsss::run_sweep(cfg, table, workers, on_record);
    return any_capped ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DSSS baseband BER simulator: classic matched-filter receiver "
                 "versus a compressive block-aggregation receiver"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run a seeded BER sweep and emit CSV");
    std::string config_path, method_str, ebn0_str, path_str, out_path, chipmap_path;
    double kappa = 0.5;
    int min_errors = 0, oversample = 0, workers = 0;
    long long max_bits = 0;
    std::uint64_t seed = 0;
    bool with_theory = false;

    run->add_option("--config", config_path, "Config file (key = value lines)");
    run->add_option("--method", method_str, "classic, cs, or both");
    run->add_option("--kappa", kappa, "Undersampling ratio for the cs method (1/kappa integer)");
    run->add_option("--ebn0", ebn0_str,
                    "Eb/N0 grid in dB: comma list or start:step:stop; 'inf' = noise-free");
    run->add_option("--min-errors", min_errors, "Bit errors to collect per point");
    run->add_option("--max-bits", max_bits, "Bit budget cap per point");
    run->add_option("--seed", seed, "Master seed (64-bit)");
    run->add_option("--path", path_str, "Signal model: chip or waveform");
    run->add_option("--oversample", oversample, "Waveform samples per chip (>= 2)");
    run->add_option("--out", out_path, "Output CSV file (default: stdout)");
    run->add_flag("--theory", with_theory, "Append theory reference columns");
    run->add_option("--chipmap", chipmap_path, "Chip table file (default: built-in 802.15.4 table)");
    run->add_option("--workers", workers, "Worker threads (default: hardware concurrency)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // config error unless --help/--version
    }

    dsss::SimConfig cfg;
    std::unique_ptr<dsss::ChipTable> table;
    try {
        if (!config_path.empty()) cfg = dsss::parse_config_file(config_path);
        if (run->count("--method")) cfg.methods = dsss::parse_methods(method_str);
        if (run->count("--kappa")) cfg.kappa = kappa;
        if (run->count("--ebn0")) cfg.ebn0_grid_db = dsss::parse_ebn0_spec(ebn0_str);
        if (run->count("--min-errors")) cfg.min_errors = min_errors;
        if (run->count("--max-bits")) cfg.max_bits = max_bits;
        if (run->count("--seed")) cfg.seed = seed;
        if (run->count("--oversample")) cfg.oversample = oversample;
        if (run->count("--path")) {
            if (path_str == "chip")
                cfg.path_model = dsss::PathModel::kChip;
            else if (path_str == "waveform")
                cfg.path_model = dsss::PathModel::kWaveform;
            else
                throw std::invalid_argument("unknown path model '" + path_str + "'");
        }
        table = std::make_unique<dsss::ChipTable>(
            chipmap_path.empty() ? dsss::builtin_chip_table()
                                 : dsss::load_chip_table_file(chipmap_path));
        dsss::validate_config(cfg, *table);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    }

    if (workers <= 0)
        workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    try {
        return run_command(cfg, *table, out_path, with_theory, workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
