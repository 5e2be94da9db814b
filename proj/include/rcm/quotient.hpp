#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rcm/partition.hpp"
#include "rcm/pattern.hpp"

namespace rcm {

// Quotient of n disjoint pattern copies by a grid partition: block(k,l1) and
// block(k,l2) are joined for every row k and pattern edge {l1,l2}. Parallel
// row-edges landing on the same block pair are recorded as multiplicity but
// deduplicated in edge_list; under the random connection model a repeated
// indicator contributes once, so integrands run over simple edges only.
// A row-edge collapsing into a single block is a self-loop; those arise
// exactly on flat partitions and flag the diagram as vanishing.
struct QuotientGraph {
    int vcount = 0;
    std::vector<std::pair<int, int>> edge_list;  // simple edges, i < j, sorted
    std::vector<int> multiplicity;               // parallel to edge_list
    int self_loops = 0;                          // collapsed row-edges
    std::vector<int> block_sizes;

    int ecount() const { return static_cast<int>(edge_list.size()); }
    bool vanishing() const { return self_loops > 0; }
    bool is_forest() const;
    int component_count() const;
};

QuotientGraph quotient_graph(const GridPartition& p, const PatternGraph& g);

// Connected components of the join with the row partition, i.e. the maximal
// row sets whose blocks interlock. Each component's rows are relabelled
// order-preservingly to 0..m-1 and the restricted partition re-canonicalized,
// so the component partition is a valid standalone grid partition.
struct PartitionComponent {
    std::vector<int> rows;   // original row indices, ascending
    GridPartition part;      // over rows.size() x cols
};

std::vector<PartitionComponent> split_components(const GridPartition& p);

// For a connected partition with n >= 2 rows: some row can be deleted with
// the rest staying connected (a leaf of any spanning tree of the row
// adjacency structure witnesses this). Returns the smallest such row index.
int removable_row(const GridPartition& p);

// Partition left after deleting one row (rows relabelled, canonical).
GridPartition delete_row(const GridPartition& p, int row);

// Maximal connected non-flat partitions have 1 + (cols-1)*rows blocks.
int maximal_block_count(int rows, int cols);
uint64_t count_maximal(int rows, int cols);  // by filtered enumeration

// Classical closed form cols^(rows-1) * prod(1+(cols-1)i). Exact only for
// rows <= 2: the recursion it comes from misses partitions whose last row
// bridges otherwise-disconnected rows, so it undercounts from rows = 3 on.
uint64_t formula_maximal(int rows, int cols);

// Exact count, cols^rows * (1+(cols-1)rows)^(rows-2), agrees with
// count_maximal everywhere it can be checked.
uint64_t maximal_closed_form(int rows, int cols);

}  // namespace rcm
