#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "rcm/partition.hpp"
#include "rcm/rng.hpp"

// Test-side oracles, deliberately written with different algorithms than the
// library: partitions are enumerated by choosing the block of the smallest
// unassigned element as a bitmask subset, and the predicates are evaluated
// from their raw definitions.

namespace testutil {

// Visits every set partition of the cells {0..n-1} as block bitmasks.
inline void oracle_partitions(uint32_t remaining, std::vector<uint32_t>& blocks,
                              const std::function<void(const std::vector<uint32_t>&)>& visit) {
    if (remaining == 0) {
        visit(blocks);
        return;
    }
    uint32_t low = remaining & (~remaining + 1);
    uint32_t rest = remaining ^ low;
    // every subset of rest, joined with the lowest element, forms the block
    uint32_t sub = rest;
    for (;;) {
        blocks.push_back(low | sub);
        oracle_partitions(rest ^ sub, blocks, visit);
        blocks.pop_back();
        if (sub == 0) break;
        sub = (sub - 1) & rest;
    }
}

inline std::string oracle_canonical_rgs(const std::vector<uint32_t>& blocks, int cells) {
    std::vector<int> label(cells, -1);
    for (size_t b = 0; b < blocks.size(); ++b)
        for (int c = 0; c < cells; ++c)
            if (blocks[b] >> c & 1) label[c] = static_cast<int>(b);
    std::vector<int> remap(blocks.size(), -1);
    int next = 0;
    std::string out;
    for (int c = 0; c < cells; ++c) {
        if (remap[label[c]] < 0) remap[label[c]] = next++;
        if (c) out.push_back(',');
        out += std::to_string(remap[label[c]]);
    }
    return out;
}

inline bool oracle_flat(const std::vector<uint32_t>& blocks, int cols) {
    for (uint32_t b : blocks) {
        // two cells of one row in the same block?
        std::set<int> rows;
        for (int c = 0; c < 32; ++c)
            if (b >> c & 1) {
                if (!rows.insert(c / cols).second) return true;
            }
    }
    return false;
}

inline bool oracle_connected(const std::vector<uint32_t>& blocks, int rows, int cols) {
    // BFS over cells; cells are linked when they share a row or a block.
    int cells = rows * cols;
    if (cells == 0) return true;
    std::vector<int> seen(cells, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    auto block_of = [&](int c) {
        for (size_t b = 0; b < blocks.size(); ++b)
            if (blocks[b] >> c & 1) return static_cast<int>(b);
        return -1;
    };
    while (!stack.empty()) {
        int c = stack.back();
        stack.pop_back();
        for (int d = 0; d < cells; ++d) {
            if (seen[d]) continue;
            if (d / cols == c / cols || block_of(d) == block_of(c)) {
                seen[d] = 1;
                stack.push_back(d);
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; });
}

// The set of canonical RGS strings the oracle produces under a filter.
inline std::set<std::string> oracle_rgs_set(int rows, int cols, rcm::PartitionFilter filter) {
    std::set<std::string> out;
    std::vector<uint32_t> blocks;
    int cells = rows * cols;
    uint32_t all = cells == 32 ? ~0u : (1u << cells) - 1;
    oracle_partitions(all, blocks, [&](const std::vector<uint32_t>& bs) {
        bool nonflat = !oracle_flat(bs, cols);
        bool connected = oracle_connected(bs, rows, cols);
        switch (filter) {
            case rcm::PartitionFilter::All: break;
            case rcm::PartitionFilter::NonFlat:
                if (!nonflat) return;
                break;
            case rcm::PartitionFilter::Connected:
                if (!connected) return;
                break;
            case rcm::PartitionFilter::ConnectedNonFlat:
                if (!nonflat || !connected) return;
                break;
        }
        out.insert(oracle_canonical_rgs(bs, cells));
    });
    return out;
}

// Uniform-ish random partition for property tests: random RGS.
inline rcm::GridPartition random_partition(int rows, int cols, rcm::SplitMix64& rng) {
    std::vector<int> raw(static_cast<size_t>(rows) * cols);
    int maxl = 0;
    for (auto& v : raw) {
        v = static_cast<int>(rng.next() % static_cast<uint64_t>(maxl + 1));
        if (v == maxl) ++maxl;
    }
    return rcm::GridPartition::from_labels(rows, cols, raw);
}

}  // namespace testutil
