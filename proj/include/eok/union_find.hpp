#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace eok {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    std::size_t component_size(std::size_t x) { return size_[find(x)]; }

    // Groups in order of their smallest member; members ascending.
    std::vector<std::vector<std::size_t>> groups() {
        std::vector<std::vector<std::size_t>> out;
        std::vector<std::size_t> slot(parent_.size(), SIZE_MAX);
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            const std::size_t r = find(i);
            if (slot[r] == SIZE_MAX) {
                slot[r] = out.size();
                out.emplace_back();
            }
            out[slot[r]].push_back(i);
        }
        return out;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

// Union-find that also tracks the parity (0 = same colour, 1 = different)
// between each element and its root.
class ParityUnionFind {
public:
    explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::pair<std::size_t, std::uint8_t> find(std::size_t x) {
        std::uint8_t p = 0;
        std::size_t r = x;
        while (parent_[r] != r) {
            p ^= parity_[r];
            r = parent_[r];
        }
        // Path compression with parity fix-up.
        std::uint8_t acc = p;
        while (parent_[x] != x) {
            const std::size_t next = parent_[x];
            const std::uint8_t old = parity_[x];
            parent_[x] = r;
            parity_[x] = acc;
            acc ^= old;
            x = next;
        }
        return {r, p};
    }

    // Records x ^ y == parity. Returns false if it contradicts earlier constraints.
    bool relate(std::size_t x, std::size_t y, std::uint8_t parity) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) return (px ^ py) == parity;
        parent_[ry] = rx;
        parity_[ry] = static_cast<std::uint8_t>(px ^ py ^ parity);
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::uint8_t> parity_;
};

}  // namespace eok
