#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sunfree/family.hpp"
#include "sunfree/mask.hpp"

// Multicolor sunflower detection. A sunflower is a collection of sets whose
// pairwise intersections all equal one core C, each set strictly containing C.
// A multicolor sunflower draws one set from each of several families.

namespace sunfree {

struct SunflowerWitness {
    SubsetMask core;
    // One set per used family, parallel to family_indices (ascending).
    std::vector<SubsetMask> sets;
    std::vector<int> family_indices;
};

// Common pairwise intersection of the given sets, if one exists.
inline std::optional<SubsetMask> pairwise_core(std::span<const SubsetMask> sets) {
    if (sets.size() < 2)
        throw std::invalid_argument("pairwise_core needs at least two sets");
    SubsetMask core = sets[0] & sets[1];
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if ((sets[i] & sets[j]) != core) return std::nullopt;
    return core;
}

inline bool is_multicolor_sunflower(std::span<const SubsetMask> sets) {
    std::optional<SubsetMask> core = pairwise_core(sets);
    if (!core) return false;
    // The core is contained in every set; strictness is all that remains.
    for (SubsetMask s : sets)
        if (s == *core) return false;
    return true;
}

// Independent recheck of a witness against its tuple: membership, pairwise
// core equality, nonempty petals.
inline bool witness_valid(const FamilyTuple& ft, const SunflowerWitness& w) {
    if (w.sets.size() != w.family_indices.size() || w.sets.size() < 2) return false;
    for (std::size_t i = 0; i < w.sets.size(); ++i) {
        int fi = w.family_indices[i];
        if (fi < 0 || fi >= ft.k()) return false;
        if (i > 0 && w.family_indices[i - 1] >= fi) return false;
        if (!ft.family(fi).contains(w.sets[i])) return false;
        if (w.sets[i] == w.core) return false;
    }
    for (std::size_t i = 0; i < w.sets.size(); ++i)
        for (std::size_t j = i + 1; j < w.sets.size(); ++j)
            if ((w.sets[i] & w.sets[j]) != w.core) return false;
    return true;
}

namespace detail {

// Depth-first product search carrying the running union. Once two sets are
// chosen the core is pinned to their intersection; any later set A keeps the
// pairwise condition iff A .. (union so far) == core. The empty set never
// lies in a sunflower, so it is skipped wholesale.
struct SunflowerSearch {
    const FamilyTuple& ft;
    // Families to draw from, in ascending index order.
    std::vector<int> order;
    // Required number of chosen sets and (optionally) required core size.
    std::size_t want = 0;
    int required_core = -1;

    std::vector<SubsetMask> chosen;
    std::vector<int> chosen_family;

    explicit SunflowerSearch(const FamilyTuple& t) : ft(t) {}

    std::optional<SunflowerWitness> run() {
        chosen.clear();
        chosen_family.clear();
        return descend(0, SubsetMask{0}, SubsetMask{0}, false);
    }

   private:
    std::optional<SunflowerWitness> descend(std::size_t oi, SubsetMask uni,
                                            SubsetMask core, bool core_set) {
        if (chosen.size() == want) {
            SunflowerWitness w{core, chosen, chosen_family};
            return w;
        }
        // Not enough families left to reach the target.
        if (order.size() - oi < want - chosen.size()) return std::nullopt;

        // Option 1: skip this family (only meaningful when drawing a strict
        // subset of the families).
        if (order.size() - oi > want - chosen.size()) {
            if (auto w = descend(oi + 1, uni, core, core_set)) return w;
        }

        const Family& fam = ft.family(order[oi]);
        for (SubsetMask a : fam.members()) {
            if (a.empty()) continue;
            SubsetMask new_core = core;
            if (chosen.empty()) {
                // Core undetermined until a second set arrives.
            } else if (!core_set) {
                new_core = chosen[0] & a;
                if (chosen[0] == new_core || a == new_core) continue;
                if (required_core >= 0 && new_core.count() != required_core) continue;
            } else {
                if ((a & uni) != core || a == core) continue;
            }
            bool new_core_set = core_set || !chosen.empty();
            chosen.push_back(a);
            chosen_family.push_back(order[oi]);
            if (auto w = descend(oi + 1, uni | a, new_core, new_core_set))
                return w;
            chosen.pop_back();
            chosen_family.pop_back();
        }
        return std::nullopt;
    }
};

}  // namespace detail

// Searches for a multicolor sunflower with one set from every family of ft.
// Returns a witness, or nullopt if the tuple is sunflower-free. Exhaustive
// over the product of the families, pruned by the running intersection.
inline std::optional<SunflowerWitness> find_multicolor_sunflower(
    const FamilyTuple& ft) {
    detail::SunflowerSearch s(ft);
    s.want = static_cast<std::size_t>(ft.k());
    // Small families first: the core gets pinned after two picks, so leading
    // with the thin families shrinks the branching where it matters.
    s.order.resize(ft.k());
    for (int i = 0; i < ft.k(); ++i) s.order[i] = i;
    std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) {
        return ft.family(a).size() < ft.family(b).size();
    });
    std::optional<SunflowerWitness> w = s.run();
    if (!w) return std::nullopt;
    // Report sets in family order regardless of search order.
    std::vector<std::pair<int, SubsetMask>> pairs;
    for (std::size_t i = 0; i < w->sets.size(); ++i)
        pairs.emplace_back(w->family_indices[i], w->sets[i]);
    std::sort(pairs.begin(), pairs.end());
    SunflowerWitness out{w->core, {}, {}};
    for (auto& [fi, m] : pairs) {
        out.family_indices.push_back(fi);
        out.sets.push_back(m);
    }
    if (!witness_valid(ft, out))
        throw CertificationError("detector produced an invalid witness");
    return out;
}

// Searches for a sunflower with t petals and core size exactly c, the t sets
// drawn from t distinct families of ft (one per family, ascending order).
// t = 1 returns nullopt: one-petal sunflowers are defined not to exist.
inline std::optional<SunflowerWitness> find_uniform_sunflower(
    const FamilyTuple& ft, int t, int c) {
    if (t < 1 || t > ft.k())
        throw std::invalid_argument("petal count t must be in [1,k]");
    if (c < 0) throw std::invalid_argument("core size c must be nonnegative");
    if (t == 1) return std::nullopt;
    detail::SunflowerSearch s(ft);
    s.want = static_cast<std::size_t>(t);
    s.required_core = c;
    s.order.resize(ft.k());
    for (int i = 0; i < ft.k(); ++i) s.order[i] = i;
    std::optional<SunflowerWitness> w = s.run();
    if (w) {
        if (w->core.count() != c || !witness_valid(ft, *w))
            throw CertificationError("uniform detector produced an invalid witness");
    }
    return w;
}

}  // namespace sunfree
