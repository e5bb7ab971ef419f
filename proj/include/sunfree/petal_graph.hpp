#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sunfree/mask.hpp"

// Bipartite incidence graphs between families (rows, V1) and candidate petal
// sets (columns, V2), with the matching/cover machinery and the 3x3
// structure-lemma classification.

namespace sunfree {

struct PetalGraph {
    int k = 0;
    // rows[i] = bitmask of columns adjacent to row i.
    std::array<std::uint16_t, 16> rows{};

    PetalGraph() = default;
    explicit PetalGraph(int k_) : k(k_) {
        if (k < 1 || k > 16) throw std::domain_error("petal graph needs 1 <= k <= 16");
    }
    PetalGraph(int k_, std::initializer_list<std::uint16_t> r) : PetalGraph(k_) {
        int i = 0;
        for (std::uint16_t m : r) rows.at(i++) = m;
    }

    bool edge(int i, int j) const { return (rows[i] >> j) & 1u; }
    void add_edge(int i, int j) { rows[i] |= std::uint16_t(1u << j); }

    int column_degree(int j) const {
        int d = 0;
        for (int i = 0; i < k; ++i) d += edge(i, j);
        return d;
    }
    int edge_count() const {
        int e = 0;
        for (int i = 0; i < k; ++i) e += std::popcount(rows[i]);
        return e;
    }
    bool operator==(const PetalGraph&) const = default;
};

// One line of '0'/'1' characters per row.
inline std::string to_string(const PetalGraph& g) {
    std::string out;
    for (int i = 0; i < g.k; ++i) {
        for (int j = 0; j < g.k; ++j) out += g.edge(i, j) ? '1' : '0';
        if (i + 1 < g.k) out += '\n';
    }
    return out;
}

struct Matching {
    int size = 0;
    // match_row[j] = row matched to column j, or -1.
    std::array<int, 16> match_row;
};

namespace detail {

inline bool kuhn_augment(const PetalGraph& g, int row, std::uint16_t& visited,
                         std::array<int, 16>& match_row) {
    for (std::uint16_t cols = g.rows[row]; cols;) {
        int j = std::countr_zero(cols);
        cols &= cols - 1;
        if ((visited >> j) & 1u) continue;
        visited |= std::uint16_t(1u << j);
        if (match_row[j] < 0 || kuhn_augment(g, match_row[j], visited, match_row)) {
            match_row[j] = row;
            return true;
        }
    }
    return false;
}

}  // namespace detail

// Maximum matching via augmenting paths.
inline Matching max_matching(const PetalGraph& g) {
    Matching m;
    m.match_row.fill(-1);
    for (int i = 0; i < g.k; ++i) {
        std::uint16_t visited = 0;
        if (detail::kuhn_augment(g, i, visited, m.match_row)) ++m.size;
    }
    return m;
}

struct VertexCover {
    std::uint16_t rows = 0;
    std::uint16_t cols = 0;
    int size() const { return std::popcount(rows) + std::popcount(cols); }
    bool covers(const PetalGraph& g) const {
        for (int i = 0; i < g.k; ++i) {
            if ((rows >> i) & 1u) continue;
            if (g.rows[i] & ~cols) return false;
        }
        return true;
    }
};

// Minimum vertex cover from a maximum matching (alternating reachability):
// with Z the vertices reachable from unmatched rows, the cover is
// (V1 \ Z) together with (V2 .. Z). Its size equals the matching number.
inline VertexCover min_vertex_cover(const PetalGraph& g) {
    Matching m = max_matching(g);
    std::uint16_t matched_rows = 0;
    for (int j = 0; j < g.k; ++j)
        if (m.match_row[j] >= 0) matched_rows |= std::uint16_t(1u << m.match_row[j]);

    std::uint16_t zrows = std::uint16_t(~matched_rows & ((1u << g.k) - 1));
    std::uint16_t zcols = 0;
    for (bool grew = true; grew;) {
        grew = false;
        for (int i = 0; i < g.k; ++i) {
            if (!((zrows >> i) & 1u)) continue;
            for (std::uint16_t cols = g.rows[i]; cols;) {
                int j = std::countr_zero(cols);
                cols &= cols - 1;
                if ((zcols >> j) & 1u) continue;
                if (m.match_row[j] == i) continue;  // only non-matching edges leave V1
                zcols |= std::uint16_t(1u << j);
                grew = true;
                if (m.match_row[j] >= 0 && !((zrows >> m.match_row[j]) & 1u))
                    zrows |= std::uint16_t(1u << m.match_row[j]);
            }
        }
    }
    VertexCover c;
    c.rows = std::uint16_t(~zrows & ((1u << g.k) - 1));
    c.cols = zcols;
    if (c.size() != m.size || !c.covers(g))
        throw CertificationError("vertex cover construction failed");
    return c;
}

struct GraphStats {
    int m2 = 0;              // size-2 matchings
    int t = 0;               // degree-2 column + its two edges + disjoint edge
    int matching_number = 0;
    int cover_size = 0;
};

// Statistics of the 3x3 case. t counts pairs (column v of degree exactly two,
// extra edge) where the extra edge avoids v and both of its neighbors.
inline GraphStats graph_stats(const PetalGraph& g) {
    if (g.k != 3) throw std::domain_error("graph_stats is defined for k = 3");
    GraphStats st;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (g.edge(i, j)) edges.emplace_back(i, j);
    for (std::size_t x = 0; x < edges.size(); ++x)
        for (std::size_t y = x + 1; y < edges.size(); ++y)
            if (edges[x].first != edges[y].first && edges[x].second != edges[y].second)
                ++st.m2;
    for (int v = 0; v < 3; ++v) {
        if (g.column_degree(v) != 2) continue;
        std::uint16_t nbrs = 0;
        for (int i = 0; i < 3; ++i)
            if (g.edge(i, v)) nbrs |= std::uint16_t(1u << i);
        for (auto [i, j] : edges)
            if (j != v && !((nbrs >> i) & 1u)) ++st.t;
    }
    st.matching_number = max_matching(g).size;
    st.cover_size = min_vertex_cover(g).size();
    return st;
}

enum class Template { G1, G2, G3 };

inline const char* to_string(Template t) {
    switch (t) {
        case Template::G1: return "G1";
        case Template::G2: return "G2";
        case Template::G3: return "G3";
    }
    return "?";
}

// G1: K_{2,3} with the doubleton side in V1. G2: two disjoint two-edge paths.
// G3: a four-edge path with endpoints in V1.
inline PetalGraph template_graph(Template t) {
    switch (t) {
        case Template::G1: return PetalGraph(3, {0b111, 0b111, 0b000});
        case Template::G2: return PetalGraph(3, {0b011, 0b100, 0b100});
        case Template::G3: return PetalGraph(3, {0b001, 0b011, 0b010});
    }
    throw std::logic_error("unreachable");
}

namespace detail {

// Does g embed into h by independent permutations of rows and of columns?
inline bool embeds_into(const PetalGraph& g, const PetalGraph& h) {
    std::array<int, 3> rperm{0, 1, 2};
    do {
        std::array<int, 3> cperm{0, 1, 2};
        do {
            bool ok = true;
            for (int i = 0; i < 3 && ok; ++i)
                for (int j = 0; j < 3 && ok; ++j)
                    if (g.edge(i, j) && !h.edge(rperm[i], cperm[j])) ok = false;
            if (ok) return true;
        } while (std::next_permutation(cperm.begin(), cperm.end()));
    } while (std::next_permutation(rperm.begin(), rperm.end()));
    return false;
}

}  // namespace detail

// Every template G_i such that g is a subgraph of G_i up to side-preserving
// vertex permutations. Preconditions (k = 3, column degrees <= 2, matching
// number <= 2) are enforced; the failed condition is named in the error.
inline std::vector<Template> classify(const PetalGraph& g) {
    if (g.k != 3) throw std::domain_error("classify requires k = 3");
    for (int j = 0; j < 3; ++j)
        if (g.column_degree(j) > 2)
            throw std::domain_error("classify precondition failed: column " +
                                    std::to_string(j + 1) + " has degree 3");
    if (max_matching(g).size > 2)
        throw std::domain_error(
            "classify precondition failed: matching number exceeds 2");
    std::vector<Template> out;
    for (Template t : {Template::G1, Template::G2, Template::G3})
        if (detail::embeds_into(g, template_graph(t))) out.push_back(t);
    return out;
}

struct StructureLemmaReport {
    bool ok = false;
    int scanned = 0;     // graphs with all column degrees <= 2
    int admissible = 0;  // of those, matching number <= 2
    int max_m2_plus_t = 0;
    std::optional<PetalGraph> counterexample;
};

// Desk-scale proof of the structure lemma: every 3x3 bipartite graph with
// column degrees <= 2 and matching number <= 2 embeds into one of the three
// templates, and m2 + t <= 6 throughout.
inline StructureLemmaReport verify_structure_lemma() {
    StructureLemmaReport rep;
    // Column neighborhoods of size <= 2: 1 + 3 + 3 = 7 choices per column.
    std::vector<std::uint16_t> col_choices;
    for (std::uint16_t m = 0; m < 8; ++m)
        if (std::popcount(m) <= 2) col_choices.push_back(m);

    for (std::uint16_t c0 : col_choices)
        for (std::uint16_t c1 : col_choices)
            for (std::uint16_t c2 : col_choices) {
                ++rep.scanned;
                PetalGraph g(3);
                for (int i = 0; i < 3; ++i) {
                    if ((c0 >> i) & 1u) g.add_edge(i, 0);
                    if ((c1 >> i) & 1u) g.add_edge(i, 1);
                    if ((c2 >> i) & 1u) g.add_edge(i, 2);
                }
                if (max_matching(g).size > 2) continue;
                ++rep.admissible;
                GraphStats st = graph_stats(g);
                if (classify(g).empty() || st.m2 + st.t > 6) {
                    rep.counterexample = g;
                    rep.ok = false;
                    return rep;
                }
                rep.max_m2_plus_t = std::max(rep.max_m2_plus_t, st.m2 + st.t);
            }
    rep.ok = true;
    return rep;
}

}  // namespace sunfree
