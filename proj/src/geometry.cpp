#include "eok/geometry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_map>

#include "eok/combinatorics.hpp"
#include "eok/errors.hpp"
#include "eok/union_find.hpp"

namespace eok {

namespace {

void require_complete(const SolutionSet& s, const char* op) {
    if (!s.complete) throw DomainError(std::string(op) + ": solution set is truncated");
}

bool single_word(const SolutionSet& s) { return s.n <= 64; }

std::vector<std::uint64_t> packed(const SolutionSet& s) {
    std::vector<std::uint64_t> w(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) w[i] = s[i].word();
    return w;
}

struct AssignmentHash {
    std::size_t operator()(const Assignment& a) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ a.size();
        for (std::uint64_t w : a.words()) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

ClusterReport finish(UnionFind& uf, std::size_t l) {
    ClusterReport r;
    r.l = l;
    r.components = uf.groups();
    for (const auto& c : r.components) r.largest_component_size = std::max(r.largest_component_size, c.size());
    r.is_single_cluster = r.components.size() == 1;
    return r;
}

ClusterReport cluster_pairwise(const SolutionSet& s, std::size_t l) {
    UnionFind uf(s.size());
    if (single_word(s)) {
        const auto w = packed(s);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                if (static_cast<std::size_t>(std::popcount(w[i] ^ w[j])) <= l) uf.unite(i, j);
    } else {
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (hamming(s[i], s[j]) <= l) uf.unite(i, j);
    }
    return finish(uf, l);
}

// Probes every point of the radius-l Hamming ball around each solution.
ClusterReport cluster_neighborhood(const SolutionSet& s, std::size_t l) {
    UnionFind uf(s.size());
    std::unordered_map<Assignment, std::size_t, AssignmentHash> index;
    index.reserve(s.size() * 2);
    for (std::size_t i = 0; i < s.size(); ++i) index.emplace(s[i], i);

    const std::size_t radius = std::min(l, s.n);
    std::vector<std::size_t> flips;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Assignment probe = s[i];
        // Depth-first over increasing flip positions.
        auto visit = [&](auto&& self, std::size_t start) -> void {
            if (!flips.empty()) {
                auto it = index.find(probe);
                if (it != index.end()) uf.unite(i, it->second);
            }
            if (flips.size() == radius) return;
            for (std::size_t pos = start; pos < s.n; ++pos) {
                probe.flip(pos);
                flips.push_back(pos);
                self(self, pos + 1);
                flips.pop_back();
                probe.flip(pos);
            }
        };
        visit(visit, 0);
    }
    return finish(uf, l);
}

double ball_volume(std::size_t n, std::size_t l) {
    double v = 0.0;
    for (std::size_t j = 1; j <= std::min(l, n); ++j) v += choose(static_cast<double>(n), static_cast<double>(j));
    return v;
}

}  // namespace

Overlap overlap(const Assignment& a, const Assignment& b) {
    if (a.size() != b.size()) throw DomainError("overlap: assignment lengths differ");
    return {a.size() - hamming(a, b), a.size()};
}

OverlapStats overlap_stats(const SolutionSet& s) {
    require_complete(s, "overlap_stats");
    OverlapStats st;
    st.n = s.n;
    st.histogram.assign(s.n + 1, 0);
    if (single_word(s)) {
        const auto w = packed(s);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t j = i + 1; j < w.size(); ++j)
                ++st.histogram[s.n - static_cast<std::size_t>(std::popcount(w[i] ^ w[j]))];
    } else {
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) ++st.histogram[s.n - hamming(s[i], s[j])];
    }
    for (std::size_t i = 0; i <= s.n; ++i) {
        st.pair_count += st.histogram[i];
        if (!st.min_overlap && st.histogram[i] > 0) st.min_overlap = Overlap{i, s.n};
    }
    return st;
}

ClusterReport cluster_components(const SolutionSet& s, std::size_t l, ClusterMethod method) {
    require_complete(s, "cluster_components");
    if (l == 0) throw DomainError("cluster_components: l must be at least 1");
    if (method == ClusterMethod::automatic) {
        const double pairs = 0.5 * static_cast<double>(s.size()) * static_cast<double>(s.size());
        const double probes = static_cast<double>(s.size()) * ball_volume(s.n, l);
        method = probes < pairs ? ClusterMethod::neighborhood : ClusterMethod::pairwise;
    }
    return method == ClusterMethod::pairwise ? cluster_pairwise(s, l) : cluster_neighborhood(s, l);
}

std::optional<std::size_t> min_connect_l(const SolutionSet& s) {
    require_complete(s, "min_connect_l");
    if (s.size() < 2) return std::nullopt;
    std::size_t lo = 1, hi = s.n;  // single cluster at l = n always
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (cluster_components(s, mid).is_single_cluster) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

bool is_hole(const Formula& f, const Assignment& a, const Assignment& b, const SolutionSet& s) {
    require_complete(s, "is_hole");
    if (!check_assignment(f, a) || !check_assignment(f, b)) throw DomainError("is_hole: endpoints must satisfy the formula");
    if (hamming(a, b) < 2) return false;
    const auto wa = a.words();
    const auto wb = b.words();
    for (const Assignment& c : s.solutions) {
        if (c == a || c == b) continue;
        const auto wc = c.words();
        bool between = true;
        for (std::size_t w = 0; w < wa.size() && between; ++w)
            if (((wc[w] ^ wa[w]) & ~(wa[w] ^ wb[w])) != 0) between = false;
        if (between) return false;
    }
    return true;
}

namespace {

// Calls visit(i, j, size) for each hole pair i < j with size >= min_size.
template <class Visit>
void scan_holes(const Formula& f, const SolutionSet& s, std::size_t min_size, Visit&& visit) {
    require_complete(s, "find_holes");
    if (s.n != f.num_vars()) throw DomainError("find_holes: solution set does not match formula");
    if (min_size > s.n || s.size() < 2) return;
    const std::size_t lower = std::max<std::size_t>(min_size, 2);

    if (!single_word(s)) {
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                const std::size_t d = hamming(s[i], s[j]);
                if (d >= lower && is_hole(f, s[i], s[j], s)) visit(i, j, d);
            }
        return;
    }

    // For a fixed endpoint a, b forms a hole iff no other difference mask
    // a^C is a nonempty proper subset of a^b. Candidates are scanned by
    // increasing popcount so that close solutions are tried first.
    const auto w = packed(s);
    std::vector<std::pair<int, std::uint64_t>> diffs;
    diffs.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        diffs.clear();
        for (std::size_t c = 0; c < w.size(); ++c)
            if (c != i) diffs.emplace_back(std::popcount(w[i] ^ w[c]), w[i] ^ w[c]);
        std::sort(diffs.begin(), diffs.end());
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            const std::uint64_t dab = w[i] ^ w[j];
            const int d = std::popcount(dab);
            if (static_cast<std::size_t>(d) < lower) continue;
            bool hole = true;
            for (const auto& [pc, mask] : diffs) {
                if (pc >= d) break;
                if ((mask & ~dab) == 0) {
                    hole = false;
                    break;
                }
            }
            if (hole) visit(i, j, static_cast<std::size_t>(d));
        }
    }
}

}  // namespace

std::vector<HoleRecord> find_holes(const Formula& f, const SolutionSet& s, std::size_t min_size) {
    std::vector<HoleRecord> out;
    scan_holes(f, s, min_size, [&](std::size_t i, std::size_t j, std::size_t d) {
        out.push_back({s[i], s[j], d});
    });
    std::sort(out.begin(), out.end(), [](const HoleRecord& x, const HoleRecord& y) {
        if (x.size != y.size) return x.size > y.size;
        if (x.a != y.a) return x.a < y.a;
        return x.b < y.b;
    });
    return out;
}

std::vector<std::uint64_t> hole_size_counts(const Formula& f, const SolutionSet& s, std::size_t min_size) {
    std::vector<std::uint64_t> counts(s.n + 1, 0);
    scan_holes(f, s, min_size, [&](std::size_t, std::size_t, std::size_t d) { ++counts[d]; });
    return counts;
}

bool is_cover(const Formula& f, const std::vector<Var>& vars) {
    std::vector<bool> in(f.num_vars(), false);
    for (Var v : vars) {
        if (v >= f.num_vars()) throw DomainError("is_cover: variable out of range");
        in[v] = true;
    }
    return std::all_of(f.clauses().begin(), f.clauses().end(), [&](const Clause& cl) {
        return std::any_of(cl.literals().begin(), cl.literals().end(), [&](const Literal& l) { return in[l.var]; });
    });
}

CoverCheck agreement_is_cover(const Formula& f, const Assignment& a, const Assignment& b) {
    if (a.size() != f.num_vars() || b.size() != f.num_vars())
        throw DomainError("agreement_is_cover: assignment length mismatch");
    CoverCheck out;
    for (Var v = 0; v < f.num_vars(); ++v)
        if (a.get(v) == b.get(v)) out.agreement.push_back(v);
    out.is_cover = is_cover(f, out.agreement);
    return out;
}

namespace {

class HittingSet {
public:
    explicit HittingSet(const Formula& f) {
        for (const Clause& cl : f.clauses()) {
            std::uint64_t m = 0;
            for (const Literal& l : cl.literals()) m |= std::uint64_t{1} << l.var;
            masks_.push_back(m);
        }
        std::sort(masks_.begin(), masks_.end());
        masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
        best_ = greedy();
    }

    std::size_t solve() {
        branch(0, 0, 0);
        return best_;
    }

private:
    std::size_t greedy() const {
        std::uint64_t chosen = 0;
        for (std::uint64_t m : masks_)
            if ((m & chosen) == 0) chosen |= m & (~m + 1);
        return static_cast<std::size_t>(std::popcount(chosen));
    }

    // Disjoint uncovered clauses each need their own variable.
    std::size_t packing_bound(std::uint64_t chosen, std::uint64_t banned) const {
        std::uint64_t used = 0;
        std::size_t count = 0;
        for (std::uint64_t m : masks_) {
            if (m & chosen) continue;
            const std::uint64_t avail = m & ~banned;
            if ((avail & used) == 0) {
                used |= avail;
                ++count;
            }
        }
        return count;
    }

    void branch(std::uint64_t chosen, std::uint64_t banned, std::size_t size) {
        if (size >= best_) return;
        const std::uint64_t* pick = nullptr;
        std::size_t pick_avail = 65;
        for (const std::uint64_t& m : masks_) {
            if (m & chosen) continue;
            const auto avail = static_cast<std::size_t>(std::popcount(m & ~banned));
            if (avail == 0) return;
            if (avail < pick_avail) {
                pick_avail = avail;
                pick = &m;
            }
        }
        if (pick == nullptr) {
            best_ = size;
            return;
        }
        if (size + packing_bound(chosen, banned) >= best_) return;
        std::uint64_t avail = *pick & ~banned;
        std::uint64_t newly_banned = banned;
        while (avail) {
            const std::uint64_t bit = avail & (~avail + 1);
            avail ^= bit;
            branch(chosen | bit, newly_banned, size + 1);
            newly_banned |= bit;  // later branches exclude earlier choices
        }
    }

    std::vector<std::uint64_t> masks_;
    std::size_t best_ = 0;
};

}  // namespace

std::size_t min_cover_size(const Formula& f) {
    if (f.num_vars() > 64) throw DomainError("min_cover_size supports at most 64 variables");
    if (f.num_clauses() == 0) return 0;
    return HittingSet(f).solve();
}

}  // namespace eok
