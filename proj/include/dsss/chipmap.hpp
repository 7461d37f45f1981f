// Symbol-to-chip mapping: chip table loading/validation and the derived
// per-channel I/Q dictionaries.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dsss/errors.hpp"

namespace dsss {

/// The M x C symbol-to-chip table. Entries are chip polarities (-1/+1).
/// Immutable after construction; safe for shared concurrent reads.
class ChipTable {
public:
    /// Builds a table from raw polarity rows. Requires: every entry is
    /// -1 or +1, all rows have equal length, rows are pairwise distinct,
    /// and the row count is a power of two (M = 2^N).
    explicit ChipTable(std::vector<std::vector<std::int8_t>> rows);

    int symbol_count() const { return static_cast<int>(rows_.size()); }  // M
    int chips_per_symbol() const { return chips_per_symbol_; }           // C
    int bits_per_symbol() const { return bits_per_symbol_; }             // N

    std::span<const std::int8_t> row(int symbol) const { return rows_[symbol]; }
    std::int8_t chip(int symbol, int idx) const { return rows_[symbol][idx]; }

    /// True if some row pair has a nonzero inner product. Short
    /// non-orthogonal code sets are what make the simulated curve deviate
    /// from the orthogonal-signalling reference.
    bool has_nonorthogonal_pair() const;

private:
    std::vector<std::vector<std::int8_t>> rows_;
    int chips_per_symbol_ = 0;
    int bits_per_symbol_ = 0;
};

/// Per-channel binary dictionaries. Column m of psi_i holds the
/// even-indexed chips of table row m, column m of psi_q the odd-indexed
/// ones. Stored column-major: psi_i[m] is column m, length C_h = C/2.
struct Dictionary {
    std::vector<std::vector<std::int8_t>> psi_i;
    std::vector<std::vector<std::int8_t>> psi_q;
    int chips_per_channel = 0;  // C_h

    int symbol_count() const { return static_cast<int>(psi_i.size()); }
};

/// Symbol selector; conceptually a length-M one-hot vector with the
/// single 1 at `index`.
struct SymbolAlpha {
    int index = 0;
};

/// Parses the chip-table text format: optional '#' comment lines, then
/// exactly 16 lines of exactly 32 characters from {0,1}; bit b maps to
/// polarity 2b-1. Shape errors throw FormatError, duplicate rows and
/// orthogonal code sets throw ValidationError.
ChipTable load_chip_table(std::istream& in);

/// load_chip_table() on a filesystem path.
ChipTable load_chip_table_file(const std::string& path);

/// The IEEE 802.15.4 2450 MHz band table compiled into the library
/// (same content as data/ieee802154_chipmap.txt).
const ChipTable& builtin_chip_table();

/// Splits each table row into even-indexed (I) and odd-indexed (Q)
/// halves. Throws ValidationError when C is odd.
Dictionary build_dictionaries(const ChipTable& table);

/// Maps a bit block to its symbol index, first bit least significant.
/// The block length must equal bits_per_symbol.
SymbolAlpha encode_bits(std::span<const std::uint8_t> block, int bits_per_symbol);

/// Inverse of encode_bits.
std::vector<std::uint8_t> decode_bits(SymbolAlpha alpha, int bits_per_symbol);

}  // namespace dsss
