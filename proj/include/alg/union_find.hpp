#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace alg {

// Union-find with union by size and path halving. Used to store finite
// setoid partitions; building the partition through unions guarantees the
// relation is an equivalence by construction.
class UnionFind {
  public:
    UnionFind() = default;

    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t size() const { return parent_.size(); }

    std::size_t find(std::size_t x) const {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool same(std::size_t a, std::size_t b) const { return find(a) == find(b); }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

    // Canonical class labels: dense ids assigned in order of first occurrence.
    std::vector<std::size_t> class_ids() const {
        std::vector<std::size_t> ids(parent_.size(), npos);
        std::size_t next = 0;
        std::vector<std::size_t> root_id(parent_.size(), npos);
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            std::size_t r = find(i);
            if (root_id[r] == npos) root_id[r] = next++;
            ids[i] = root_id[r];
        }
        return ids;
    }

    std::size_t class_count() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i)
            if (find(i) == i) ++n;
        return n;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    mutable std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

}  // namespace alg
