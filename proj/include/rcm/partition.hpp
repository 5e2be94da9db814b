#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcm {

// Set partitions of the n x r grid [n] x [r] (n "rows" indexing factors of a
// product, r "columns" indexing pattern vertices). A partition is stored as a
// restricted growth string over row-major cells: label[c] is the block of cell
// c, block labels appear in first-occurrence order starting at 0. That makes
// the representation canonical, hashable and directly serializable.
//
// The row partition pi groups each row's r cells into one block. Everything
// downstream only needs two relations to pi: a partition is non-flat when no
// block contains two cells of the same row (meet with pi is the singleton
// partition) and connected when join with pi is the one-block partition.

class SizeLimitError : public std::runtime_error {
public:
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct GridPartition {
    int rows = 0;
    int cols = 0;
    std::vector<uint8_t> label;  // size rows*cols, row-major RGS
    int block_count = 0;

    int cells() const { return rows * cols; }
    int cell_index(int row, int col) const { return row * cols + col; }
    uint8_t block_of(int row, int col) const { return label[cell_index(row, col)]; }

    bool operator==(const GridPartition& o) const {
        return rows == o.rows && cols == o.cols && label == o.label;
    }

    std::vector<std::vector<int>> blocks() const;  // cell indices per block
    std::vector<int> block_sizes() const;

    std::string rgs_string() const;  // "0,1,0,2"

    // Singletons (the finest partition) and the one-block partition.
    static GridPartition singletons(int rows, int cols);
    static GridPartition one_block(int rows, int cols);

    // Builds from an arbitrary label vector (not necessarily an RGS);
    // relabels to first-occurrence order.
    static GridPartition from_labels(int rows, int cols, const std::vector<int>& raw);

    // Parses "0,1,0,2" and validates the RGS property against (rows, cols).
    static GridPartition parse_rgs(int rows, int cols, const std::string& s);
};

bool is_nonflat(const GridPartition& p);
bool is_connected(const GridPartition& p);  // join with the row partition is one block

GridPartition join(const GridPartition& a, const GridPartition& b);
GridPartition meet(const GridPartition& a, const GridPartition& b);

// refines: every block of a is contained in a block of b.
bool refines(const GridPartition& a, const GridPartition& b);

enum class PartitionFilter {
    All,
    NonFlat,
    Connected,
    ConnectedNonFlat,
};

// Bell number as long double (estimates for error messages and pruning
// sanity; exact u64 values are exposed separately for tests).
long double bell_estimate(int n);
uint64_t bell_number(int n);  // exact, n <= 25

// Enumeration caps. Unfiltered enumeration walks the full Bell(n*r) tree;
// row-distinctness pruning makes the filtered walks far smaller, so they get
// a higher ceiling.
inline constexpr int kMaxCellsUnfiltered = 13;
inline constexpr int kMaxCellsFiltered = 16;

// Visits every partition passing the filter, in lexicographic RGS order.
// The visitor returns false to stop early (used for wall-clock budgets);
// enumerate_partitions then returns false as well.
bool enumerate_partitions(int rows, int cols, PartitionFilter filter,
                          const std::function<bool(const GridPartition&)>& visit);

uint64_t count_partitions(int rows, int cols, PartitionFilter filter);

// Work-splitting support for the OpenMP sum kernels: all partitions whose
// RGS extends prefix number i of enumerate_prefixes(...) form subtree i, and
// the subtrees tile the full enumeration in prefix order.
struct EnumPrefix {
    std::vector<uint8_t> label;  // assignment of the first depth cells
};

std::vector<EnumPrefix> enumerate_prefixes(int rows, int cols, PartitionFilter filter, int depth);

bool enumerate_from_prefix(int rows, int cols, PartitionFilter filter, const EnumPrefix& prefix,
                           const std::function<bool(const GridPartition&)>& visit);

void check_enumeration_size(int rows, int cols, PartitionFilter filter);

}  // namespace rcm
