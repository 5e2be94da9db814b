#include "rcm/quotient.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace rcm {

bool QuotientGraph::is_forest() const {
    return ecount() == vcount - component_count();
}

int QuotientGraph::component_count() const {
    std::vector<int> parent(vcount);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (auto [a, b] : edge_list) {
        int ra = find(a), rb = find(b);
        if (ra != rb) parent[rb] = ra;
    }
    int comps = 0;
    for (int v = 0; v < vcount; ++v)
        if (find(v) == v) ++comps;
    return comps;
}

QuotientGraph quotient_graph(const GridPartition& p, const PatternGraph& g) {
    if (p.cols != g.vcount)
        throw std::invalid_argument("partition column count must match pattern vertex count");
    QuotientGraph q;
    q.vcount = p.block_count;
    q.block_sizes = p.block_sizes();
    std::map<std::pair<int, int>, int> mult;
    for (int row = 0; row < p.rows; ++row) {
        for (auto [l1, l2] : g.edge_list) {
            int b1 = p.block_of(row, l1);
            int b2 = p.block_of(row, l2);
            if (b1 == b2) {
                q.self_loops++;
                continue;
            }
            if (b1 > b2) std::swap(b1, b2);
            mult[{b1, b2}]++;
        }
    }
    for (auto& [e, m] : mult) {
        q.edge_list.push_back(e);
        q.multiplicity.push_back(m);
    }
    return q;
}

std::vector<PartitionComponent> split_components(const GridPartition& p) {
    // Union rows through shared blocks.
    std::vector<int> parent(p.rows);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<int> block_row(p.block_count, -1);
    for (int row = 0; row < p.rows; ++row) {
        for (int col = 0; col < p.cols; ++col) {
            int b = p.block_of(row, col);
            if (block_row[b] < 0) block_row[b] = row;
            else {
                int ra = find(block_row[b]), rb = find(row);
                if (ra != rb) parent[rb] = ra;
            }
        }
    }
    std::map<int, std::vector<int>> groups;  // root -> rows, rows ascend
    for (int row = 0; row < p.rows; ++row) groups[find(row)].push_back(row);

    std::vector<PartitionComponent> out;
    for (auto& [root, rows] : groups) {
        (void)root;
        PartitionComponent comp;
        comp.rows = rows;
        std::vector<int> raw;
        raw.reserve(rows.size() * p.cols);
        for (int row : rows)
            for (int col = 0; col < p.cols; ++col) raw.push_back(p.block_of(row, col));
        comp.part = GridPartition::from_labels(static_cast<int>(rows.size()), p.cols, raw);
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end(), [](const PartitionComponent& a, const PartitionComponent& b) {
        return a.rows.front() < b.rows.front();
    });
    return out;
}

GridPartition delete_row(const GridPartition& p, int row) {
    if (p.rows < 2) throw std::invalid_argument("delete_row needs at least two rows");
    if (row < 0 || row >= p.rows) throw std::invalid_argument("delete_row: row out of range");
    std::vector<int> raw;
    raw.reserve((p.rows - 1) * p.cols);
    for (int r = 0; r < p.rows; ++r) {
        if (r == row) continue;
        for (int col = 0; col < p.cols; ++col) raw.push_back(p.block_of(r, col));
    }
    return GridPartition::from_labels(p.rows - 1, p.cols, raw);
}

int removable_row(const GridPartition& p) {
    if (p.rows < 2) throw std::invalid_argument("removable_row needs at least two rows");
    if (!is_connected(p)) throw std::invalid_argument("removable_row requires a connected partition");
    for (int row = 0; row < p.rows; ++row)
        if (is_connected(delete_row(p, row))) return row;
    // Unreachable for connected inputs: a spanning tree of the row adjacency
    // graph always has a leaf.
    throw std::logic_error("connected partition with no removable row");
}

int maximal_block_count(int rows, int cols) { return 1 + (cols - 1) * rows; }

uint64_t count_maximal(int rows, int cols) {
    int want = maximal_block_count(rows, cols);
    uint64_t n = 0;
    enumerate_partitions(rows, cols, PartitionFilter::ConnectedNonFlat,
                         [&](const GridPartition& p) {
                             if (p.block_count == want) ++n;
                             return true;
                         });
    return n;
}

uint64_t formula_maximal(int rows, int cols) {
    // cols^(rows-1) * prod_{i=1}^{rows-1} (1 + (cols-1)*i)
    //
    // This is the classical closed form derived from the recursion that
    // attaches each new row to an existing maximal partition through a single
    // cell. That recursion misses maximal partitions whose new row bridges
    // otherwise-disconnected rows (e.g. {(1,1),(3,1)},{(2,1),(3,2)},{(1,2)},
    // {(2,2)} on the 3x2 grid), so for rows >= 3 it undercounts the true
    // enumeration; see maximal_closed_form for the exact count. Kept under its
    // contracted definition for comparison.
    uint64_t out = 1;
    for (int i = 1; i < rows; ++i) {
        if (__builtin_mul_overflow(out, static_cast<uint64_t>(cols), &out))
            throw std::overflow_error("formula_maximal overflow");
        uint64_t f = 1 + static_cast<uint64_t>(cols - 1) * i;
        if (__builtin_mul_overflow(out, f, &out))
            throw std::overflow_error("formula_maximal overflow");
    }
    return out;
}

uint64_t maximal_closed_form(int rows, int cols) {
    // cols^rows * (1 + (cols-1)*rows)^(rows-2), exact for all rows >= 1.
    //
    // Derivation: a maximal connected non-flat partition is the same thing as
    // a tree on the bipartite incidence structure (rows vs blocks) in which
    // every row has degree exactly cols. Counting those trees with a
    // two-sided Prufer code and dividing out block labelings gives the
    // expression; it matches count_maximal at every grid small enough to
    // enumerate.
    if (rows == 1) return 1;
    uint64_t b = 1 + static_cast<uint64_t>(cols - 1) * rows;
    uint64_t out = 1;
    for (int i = 0; i < rows; ++i)
        if (__builtin_mul_overflow(out, static_cast<uint64_t>(cols), &out))
            throw std::overflow_error("maximal_closed_form overflow");
    for (int i = 0; i < rows - 2; ++i)
        if (__builtin_mul_overflow(out, b, &out))
            throw std::overflow_error("maximal_closed_form overflow");
    return out;
}

}  // namespace rcm
