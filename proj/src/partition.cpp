#include "rcm/partition.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace rcm {

namespace {

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

std::vector<std::vector<int>> GridPartition::blocks() const {
    std::vector<std::vector<int>> out(block_count);
    for (int c = 0; c < cells(); ++c) out[label[c]].push_back(c);
    return out;
}

std::vector<int> GridPartition::block_sizes() const {
    std::vector<int> out(block_count, 0);
    for (int c = 0; c < cells(); ++c) out[label[c]]++;
    return out;
}

std::string GridPartition::rgs_string() const {
    std::string s;
    for (int c = 0; c < cells(); ++c) {
        if (c) s.push_back(',');
        s += std::to_string(static_cast<int>(label[c]));
    }
    return s;
}

GridPartition GridPartition::singletons(int rows, int cols) {
    GridPartition p;
    p.rows = rows;
    p.cols = cols;
    p.label.resize(static_cast<size_t>(rows) * cols);
    for (int c = 0; c < rows * cols; ++c) p.label[c] = static_cast<uint8_t>(c);
    p.block_count = rows * cols;
    return p;
}

GridPartition GridPartition::one_block(int rows, int cols) {
    GridPartition p;
    p.rows = rows;
    p.cols = cols;
    p.label.assign(static_cast<size_t>(rows) * cols, 0);
    p.block_count = rows * cols > 0 ? 1 : 0;
    return p;
}

GridPartition GridPartition::from_labels(int rows, int cols, const std::vector<int>& raw) {
    if (static_cast<int>(raw.size()) != rows * cols)
        throw std::invalid_argument("label vector does not match grid size");
    GridPartition p;
    p.rows = rows;
    p.cols = cols;
    p.label.resize(raw.size());
    std::vector<int> remap;
    for (size_t c = 0; c < raw.size(); ++c) {
        int v = raw[c];
        auto it = std::find(remap.begin(), remap.end(), v);
        int lbl;
        if (it == remap.end()) {
            lbl = static_cast<int>(remap.size());
            remap.push_back(v);
        } else {
            lbl = static_cast<int>(it - remap.begin());
        }
        p.label[c] = static_cast<uint8_t>(lbl);
    }
    p.block_count = static_cast<int>(remap.size());
    return p;
}

GridPartition GridPartition::parse_rgs(int rows, int cols, const std::string& s) {
    std::vector<int> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument("bad RGS token: " + tok);
        vals.push_back(v);
    }
    if (static_cast<int>(vals.size()) != rows * cols)
        throw std::invalid_argument("RGS length does not match grid size");
    int maxseen = -1;
    for (int v : vals) {
        if (v > maxseen + 1)
            throw std::invalid_argument("not a restricted growth string: " + s);
        maxseen = std::max(maxseen, v);
    }
    GridPartition p;
    p.rows = rows;
    p.cols = cols;
    p.label.assign(vals.begin(), vals.end());
    p.block_count = maxseen + 1;
    return p;
}

bool is_nonflat(const GridPartition& p) {
    // A block is forbidden from holding two cells of one row. Blocks grow in
    // row-major order, so it suffices to track each block's latest row.
    std::array<int, 256> last_row;
    last_row.fill(-1);
    for (int row = 0; row < p.rows; ++row) {
        for (int col = 0; col < p.cols; ++col) {
            uint8_t b = p.block_of(row, col);
            if (last_row[b] == row) return false;
            last_row[b] = row;
        }
    }
    return true;
}

bool is_connected(const GridPartition& p) {
    // Elements: blocks [0, block_count) then rows [block_count, +rows).
    if (p.rows == 0) return true;
    UnionFind uf(p.block_count + p.rows);
    for (int row = 0; row < p.rows; ++row)
        for (int col = 0; col < p.cols; ++col)
            uf.unite(p.block_count + row, p.block_of(row, col));
    int root = uf.find(p.block_count);
    for (int row = 1; row < p.rows; ++row)
        if (uf.find(p.block_count + row) != root) return false;
    return true;
}

GridPartition join(const GridPartition& a, const GridPartition& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("join: mismatched grids");
    UnionFind uf(a.cells());
    std::array<int, 256> first;
    first.fill(-1);
    for (int c = 0; c < a.cells(); ++c) {
        if (first[a.label[c]] >= 0) uf.unite(first[a.label[c]], c);
        else first[a.label[c]] = c;
    }
    first.fill(-1);
    for (int c = 0; c < b.cells(); ++c) {
        if (first[b.label[c]] >= 0) uf.unite(first[b.label[c]], c);
        else first[b.label[c]] = c;
    }
    std::vector<int> raw(a.cells());
    for (int c = 0; c < a.cells(); ++c) raw[c] = uf.find(c);
    return GridPartition::from_labels(a.rows, a.cols, raw);
}

GridPartition meet(const GridPartition& a, const GridPartition& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("meet: mismatched grids");
    std::vector<int> raw(a.cells());
    for (int c = 0; c < a.cells(); ++c)
        raw[c] = static_cast<int>(a.label[c]) * 256 + static_cast<int>(b.label[c]);
    return GridPartition::from_labels(a.rows, a.cols, raw);
}

bool refines(const GridPartition& a, const GridPartition& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    // a refines b iff cells sharing an a-block share a b-block.
    std::array<int, 256> rep;
    rep.fill(-1);
    for (int c = 0; c < a.cells(); ++c) {
        uint8_t ab = a.label[c];
        if (rep[ab] < 0) rep[ab] = b.label[c];
        else if (rep[ab] != b.label[c]) return false;
    }
    return true;
}

uint64_t bell_number(int n) {
    if (n < 0 || n > 25) throw std::invalid_argument("bell_number supports 0 <= n <= 25");
    // Bell triangle: row i starts with the previous row's last entry.
    std::vector<std::vector<uint64_t>> tri(n + 1);
    tri[0] = {1};
    for (int i = 1; i <= n; ++i) {
        tri[i].resize(i + 1);
        tri[i][0] = tri[i - 1][i - 1];
        for (int j = 0; j < i; ++j) tri[i][j + 1] = tri[i][j] + tri[i - 1][j];
    }
    return tri[n][0];
}

long double bell_estimate(int n) {
    if (n <= 25) return static_cast<long double>(bell_number(n));
    std::vector<std::vector<long double>> tri(n + 1);
    tri[0] = {1.0L};
    for (int i = 1; i <= n; ++i) {
        tri[i].resize(i + 1);
        tri[i][0] = tri[i - 1][i - 1];
        for (int j = 0; j < i; ++j) tri[i][j + 1] = tri[i][j] + tri[i - 1][j];
    }
    return tri[n][0];
}

void check_enumeration_size(int rows, int cols, PartitionFilter filter) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("grid must have positive dimensions");
    int cells = rows * cols;
    int cap = filter == PartitionFilter::All ? kMaxCellsUnfiltered : kMaxCellsFiltered;
    if (cells > cap) {
        std::ostringstream msg;
        msg << "enumeration over " << rows << "x" << cols << " = " << cells
            << " cells exceeds the cap of " << cap << " for this filter (roughly "
            << static_cast<double>(bell_estimate(cells)) << " partitions)";
        throw SizeLimitError(msg.str());
    }
}

namespace {

struct Enumerator {
    int rows, cols, cells;
    PartitionFilter filter;
    const std::function<bool(const GridPartition&)>* visit;
    GridPartition work;
    std::array<uint16_t, 256> block_rowmask{};  // only used when pruning flats

    bool prune_flat() const {
        return filter == PartitionFilter::NonFlat || filter == PartitionFilter::ConnectedNonFlat;
    }
    bool need_connected() const {
        return filter == PartitionFilter::Connected || filter == PartitionFilter::ConnectedNonFlat;
    }

    bool emit() {
        if (need_connected() && !is_connected(work)) return true;
        return (*visit)(work);
    }

    // Returns false if the visitor requested a stop.
    bool recurse(int cell, int used_blocks) {
        if (cell == cells) {
            work.block_count = used_blocks;
            return emit();
        }
        int row = cell / cols;
        uint16_t rowbit = static_cast<uint16_t>(1u << row);
        int limit = std::min(used_blocks, 255);
        for (int b = 0; b <= limit; ++b) {
            bool fresh = (b == used_blocks);
            if (!fresh && prune_flat() && (block_rowmask[b] & rowbit)) continue;
            work.label[cell] = static_cast<uint8_t>(b);
            uint16_t saved = block_rowmask[b];
            block_rowmask[b] = static_cast<uint16_t>(saved | rowbit);
            bool keep_going = recurse(cell + 1, used_blocks + (fresh ? 1 : 0));
            block_rowmask[b] = fresh ? 0 : saved;
            if (!keep_going) return false;
        }
        return true;
    }
};

}  // namespace

bool enumerate_partitions(int rows, int cols, PartitionFilter filter,
                          const std::function<bool(const GridPartition&)>& visit) {
    check_enumeration_size(rows, cols, filter);
    Enumerator e;
    e.rows = rows;
    e.cols = cols;
    e.cells = rows * cols;
    e.filter = filter;
    e.visit = &visit;
    e.work.rows = rows;
    e.work.cols = cols;
    e.work.label.assign(static_cast<size_t>(e.cells), 0);
    return e.recurse(0, 0);
}

uint64_t count_partitions(int rows, int cols, PartitionFilter filter) {
    uint64_t n = 0;
    enumerate_partitions(rows, cols, filter, [&](const GridPartition&) {
        ++n;
        return true;
    });
    return n;
}

std::vector<EnumPrefix> enumerate_prefixes(int rows, int cols, PartitionFilter filter, int depth) {
    check_enumeration_size(rows, cols, filter);
    depth = std::min(depth, rows * cols);
    std::vector<EnumPrefix> out;
    // Reuse the enumerator on a truncated grid: prefixes are assignments of
    // the first `depth` cells satisfying the flatness pruning. Connectivity
    // cannot be judged on a prefix, so it is not applied here.
    struct PrefixEnum {
        int cols, depth;
        PartitionFilter filter;
        std::vector<EnumPrefix>* out;
        std::vector<uint8_t> label;
        std::array<uint16_t, 256> block_rowmask{};

        bool prune_flat() const {
            return filter == PartitionFilter::NonFlat ||
                   filter == PartitionFilter::ConnectedNonFlat;
        }

        void recurse(int cell, int used_blocks) {
            if (cell == depth) {
                out->push_back(EnumPrefix{label});
                return;
            }
            int row = cell / cols;
            uint16_t rowbit = static_cast<uint16_t>(1u << row);
            for (int b = 0; b <= std::min(used_blocks, 255); ++b) {
                bool fresh = (b == used_blocks);
                if (!fresh && prune_flat() && (block_rowmask[b] & rowbit)) continue;
                label[cell] = static_cast<uint8_t>(b);
                uint16_t saved = block_rowmask[b];
                block_rowmask[b] = static_cast<uint16_t>(saved | rowbit);
                recurse(cell + 1, used_blocks + (fresh ? 1 : 0));
                block_rowmask[b] = fresh ? 0 : saved;
            }
        }
    } pe;
    pe.cols = cols;
    pe.depth = depth;
    pe.filter = filter;
    pe.out = &out;
    pe.label.assign(static_cast<size_t>(depth), 0);
    pe.recurse(0, 0);
    return out;
}

bool enumerate_from_prefix(int rows, int cols, PartitionFilter filter, const EnumPrefix& prefix,
                           const std::function<bool(const GridPartition&)>& visit) {
    Enumerator e;
    e.rows = rows;
    e.cols = cols;
    e.cells = rows * cols;
    e.filter = filter;
    e.visit = &visit;
    e.work.rows = rows;
    e.work.cols = cols;
    e.work.label.assign(static_cast<size_t>(e.cells), 0);
    int used = 0;
    for (size_t c = 0; c < prefix.label.size(); ++c) {
        uint8_t b = prefix.label[c];
        e.work.label[c] = b;
        int row = static_cast<int>(c) / cols;
        e.block_rowmask[b] = static_cast<uint16_t>(e.block_rowmask[b] | (1u << row));
        used = std::max(used, static_cast<int>(b) + 1);
    }
    return e.recurse(static_cast<int>(prefix.label.size()), used);
}

}  // namespace rcm
