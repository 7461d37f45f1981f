#include "dsss/chipmap.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "chipmap_data.hpp"

namespace dsss {
namespace {

// 802.15.4 2450 MHz profile shape; the only mapping shipped.
constexpr int kProfileSymbols = 16;
constexpr int kProfileChips = 32;

int log2_exact(int m) {
    int n = 0;
    while ((1 << n) < m) ++n;
    return ((1 << n) == m) ? n : -1;
}

}  // namespace

ChipTable::ChipTable(std::vector<std::vector<std::int8_t>> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw ValidationError("chip table: no rows");
    chips_per_symbol_ = static_cast<int>(rows_[0].size());
    if (chips_per_symbol_ == 0) throw ValidationError("chip table: empty rows");
    bits_per_symbol_ = log2_exact(static_cast<int>(rows_.size()));
    if (bits_per_symbol_ < 0)
        throw ValidationError("chip table: row count must be a power of two");
    for (const auto& r : rows_) {
        if (static_cast<int>(r.size()) != chips_per_symbol_)
            throw ValidationError("chip table: ragged rows");
        for (std::int8_t v : r)
            if (v != -1 && v != 1) throw ValidationError("chip table: entries must be -1 or +1");
    }
    for (std::size_t u = 0; u < rows_.size(); ++u)
        for (std::size_t v = u + 1; v < rows_.size(); ++v)
            if (rows_[u] == rows_[v])
                throw ValidationError("chip table: duplicate rows " + std::to_string(u) +
                                      " and " + std::to_string(v));
}

bool ChipTable::has_nonorthogonal_pair() const {
    for (std::size_t u = 0; u < rows_.size(); ++u) {
        for (std::size_t v = u + 1; v < rows_.size(); ++v) {
            long inner = 0;
            for (int c = 0; c < chips_per_symbol_; ++c)
                inner += static_cast<long>(rows_[u][c]) * rows_[v][c];
            if (inner != 0) return true;
        }
    }
    return false;
}

ChipTable load_chip_table(std::istream& in) {
    std::vector<std::vector<std::int8_t>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (static_cast<int>(rows.size()) == kProfileSymbols)
            throw FormatError("chip table: more than " + std::to_string(kProfileSymbols) +
                              " data lines (line " + std::to_string(line_no) + ")");
        if (static_cast<int>(line.size()) != kProfileChips)
            throw FormatError("chip table: line " + std::to_string(line_no) + " has " +
                              std::to_string(line.size()) + " characters, expected " +
                              std::to_string(kProfileChips));
        std::vector<std::int8_t> row(kProfileChips);
        for (int c = 0; c < kProfileChips; ++c) {
            if (line[c] == '0')
                row[c] = -1;
            else if (line[c] == '1')
                row[c] = 1;
            else
                throw FormatError("chip table: line " + std::to_string(line_no) +
                                  ": character '" + std::string(1, line[c]) +
                                  "' outside {0,1}");
        }
        rows.push_back(std::move(row));
    }
    if (static_cast<int>(rows.size()) != kProfileSymbols)
        throw FormatError("chip table: " + std::to_string(rows.size()) +
                          " data lines, expected " + std::to_string(kProfileSymbols));
    ChipTable table(std::move(rows));  // throws ValidationError on duplicates
    if (!table.has_nonorthogonal_pair())
        throw ValidationError("chip table: all row pairs orthogonal");
    return table;
}

ChipTable load_chip_table_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("chip table: cannot open '" + path + "'");
    return load_chip_table(in);
}

const ChipTable& builtin_chip_table() {
    static const ChipTable table = [] {
        std::istringstream in{std::string(detail::kBuiltinChipTableText)};
        return load_chip_table(in);
    }();
    return table;
}

Dictionary build_dictionaries(const ChipTable& table) {
    if (table.chips_per_symbol() % 2 != 0)
        throw ValidationError("dictionary: chips per symbol must be even for the I/Q split");
    Dictionary dict;
    dict.chips_per_channel = table.chips_per_symbol() / 2;
    dict.psi_i.resize(table.symbol_count());
    dict.psi_q.resize(table.symbol_count());
    for (int m = 0; m < table.symbol_count(); ++m) {
        auto row = table.row(m);
        dict.psi_i[m].resize(dict.chips_per_channel);
        dict.psi_q[m].resize(dict.chips_per_channel);
        for (int c = 0; c < dict.chips_per_channel; ++c) {
            dict.psi_i[m][c] = row[2 * c];
            dict.psi_q[m][c] = row[2 * c + 1];
        }
    }
    return dict;
}

SymbolAlpha encode_bits(std::span<const std::uint8_t> block, int bits_per_symbol) {
    if (static_cast<int>(block.size()) != bits_per_symbol)
        throw std::invalid_argument("encode_bits: block length " +
                                    std::to_string(block.size()) + ", expected " +
                                    std::to_string(bits_per_symbol));
    int index = 0;
    for (int i = 0; i < bits_per_symbol; ++i) {
        if (block[i] > 1) throw std::invalid_argument("encode_bits: bits must be 0 or 1");
        index |= static_cast<int>(block[i]) << i;  // first bit least significant
    }
    return SymbolAlpha{index};
}

std::vector<std::uint8_t> decode_bits(SymbolAlpha alpha, int bits_per_symbol) {
    if (alpha.index < 0 || alpha.index >= (1 << bits_per_symbol))
        throw std::invalid_argument("decode_bits: index out of range");
    std::vector<std::uint8_t> block(bits_per_symbol);
    for (int i = 0; i < bits_per_symbol; ++i)
        block[i] = static_cast<std::uint8_t>((alpha.index >> i) & 1);
    return block;
}

}  // namespace dsss
