#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fermat {

// Published reference values for N = 2.
struct HTableEntry {
    std::uint64_t ell;
    int ord_c;
    std::uint64_t expected;  // H mod ell^2
};

// Published reference values for ell = 3, N = 2.
struct CurveTableEntry {
    int table;
    std::uint64_t r, s, delta;
    long ord_c;
    int W;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> conductor;
};

const std::vector<HTableEntry>& h_table_reference();
const std::vector<CurveTableEntry>& curve_table_reference();

struct TableComparison {
    int table;
    std::string key;
    std::string expected;
    std::string computed;
    bool match;
};

// One comparison per published entry (H tables: one per ell; curve tables: one per delta row).
std::vector<TableComparison> compare_reference_tables(int precision);

}  // namespace fermat
