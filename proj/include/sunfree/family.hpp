#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "sunfree/mask.hpp"

namespace sunfree {

// A duplicate-free set family over a fixed ground set. Members are kept in a
// sorted vector (deterministic iteration) plus a hash index for O(1) lookups.
class Family {
   public:
    explicit Family(GroundSet ground) : ground_(ground) {}

    Family(GroundSet ground, std::vector<SubsetMask> members) : ground_(ground) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (SubsetMask m : members) {
            if (!m.fits(ground_))
                throw std::domain_error("family member " + to_string(m) +
                                        " exceeds ground set [" +
                                        std::to_string(ground_.n) + "]");
        }
        members_ = std::move(members);
        index_.reserve(members_.size() * 2);
        for (SubsetMask m : members_) index_.insert(m.bits);
    }

    static Family power_set(GroundSet ground) {
        if (ground.n > kMaxEnumGroundSize)
            throw std::domain_error("power_set requires n <= 24");
        std::vector<SubsetMask> all;
        all.reserve(std::size_t{1} << ground.n);
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << ground.n); ++b)
            all.push_back(SubsetMask{b});
        return Family(ground, std::move(all));
    }

    static Family uniform_layer(GroundSet ground, int s) {
        return Family(ground, subsets_of_size(ground, s));
    }

    const GroundSet& ground() const { return ground_; }
    const std::vector<SubsetMask>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool contains(SubsetMask m) const { return index_.count(m.bits) != 0; }

    bool is_uniform(int s) const {
        return std::all_of(members_.begin(), members_.end(),
                           [s](SubsetMask m) { return m.count() == s; });
    }

    Family without(SubsetMask m) const {
        std::vector<SubsetMask> rest;
        rest.reserve(members_.size());
        for (SubsetMask x : members_)
            if (x != m) rest.push_back(x);
        return Family(ground_, std::move(rest));
    }

    friend Family intersect(const Family& a, const Family& b) {
        std::vector<SubsetMask> common;
        for (SubsetMask m : a.members())
            if (b.contains(m)) common.push_back(m);
        return Family(a.ground(), std::move(common));
    }

    bool operator==(const Family& o) const {
        return ground_ == o.ground_ && members_ == o.members_;
    }

   private:
    GroundSet ground_;
    std::vector<SubsetMask> members_;
    std::unordered_set<std::uint64_t> index_;
};

inline constexpr int kMaxFamilies = 16;

// k >= 2 families sharing one ground set; the object the extremal
// quantities S(n,k) and P(n,k) range over.
class FamilyTuple {
   public:
    FamilyTuple(GroundSet ground, std::vector<Family> families)
        : ground_(ground), families_(std::move(families)) {
        if (families_.size() < 2)
            throw std::invalid_argument("family tuple needs k >= 2 families");
        if (families_.size() > kMaxFamilies)
            throw std::invalid_argument("family tuple supports k <= 16");
        for (const Family& f : families_)
            if (!(f.ground() == ground_))
                throw std::invalid_argument("families must share one ground set");
    }

    const GroundSet& ground() const { return ground_; }
    int k() const { return static_cast<int>(families_.size()); }
    const Family& family(int i) const { return families_.at(i); }
    const std::vector<Family>& families() const { return families_; }

    BigInt total_size() const {
        BigInt t = 0;
        for (const Family& f : families_) t += f.size();
        return t;
    }
    BigInt product_size() const {
        BigInt p = 1;
        for (const Family& f : families_) p *= f.size();
        return p;
    }

    FamilyTuple permuted(const std::vector<int>& perm) const {
        std::vector<Family> fs;
        fs.reserve(families_.size());
        for (int i : perm) fs.push_back(families_.at(i));
        return FamilyTuple(ground_, std::move(fs));
    }

   private:
    GroundSet ground_;
    std::vector<Family> families_;
};

struct FamilyParseError : std::runtime_error {
    int line;
    FamilyParseError(int line_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what_),
          line(line_) {}
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline SubsetMask parse_set_line(const std::string& raw, int n, int lineno) {
    std::string line = strip(raw);
    if (line.empty()) return SubsetMask{0};
    if (line.rfind("0x", 0) == 0 || line.rfind("0X", 0) == 0) {
        std::uint64_t bits = 0;
        try {
            std::size_t used = 0;
            bits = std::stoull(line.substr(2), &used, 16);
            if (used != line.size() - 2) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw FamilyParseError(lineno, "bad hexadecimal mask '" + line + "'");
        }
        SubsetMask m{bits};
        if (!m.fits(GroundSet(n)))
            throw FamilyParseError(lineno, "mask '" + line + "' out of range for n=" +
                                               std::to_string(n));
        return m;
    }
    std::uint64_t bits = 0;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = strip(tok);
        int e = 0;
        try {
            std::size_t used = 0;
            e = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw FamilyParseError(lineno, "bad element '" + tok + "'");
        }
        if (e < 1 || e > n)
            throw FamilyParseError(lineno, "element " + std::to_string(e) +
                                               " out of range for n=" + std::to_string(n));
        bits |= std::uint64_t{1} << (e - 1);
    }
    return SubsetMask{bits};
}

}  // namespace detail

// Family file format: a header line "n=<int>" starts each family; the lines
// until the next header are its members, one set per line as comma-separated
// 1-based elements (an empty line is the empty set) or as a hex mask "0x..".
// Lines starting with '#' are comments. One file may hold several families
// (repeated headers with the same n), which is how tuples are written.
inline std::vector<Family> read_families(std::istream& in) {
    std::vector<Family> out;
    std::optional<int> n;
    std::vector<SubsetMask> current;
    bool in_family = false;
    std::string raw;
    int lineno = 0;
    auto flush = [&] {
        if (in_family) out.emplace_back(GroundSet(*n), std::move(current));
        current.clear();
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = detail::strip(raw);
        if (!line.empty() && line[0] == '#') continue;
        if (line.rfind("n=", 0) == 0) {
            int next_n = 0;
            try {
                std::size_t used = 0;
                next_n = std::stoi(line.substr(2), &used);
                if (used != line.size() - 2) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw FamilyParseError(lineno, "bad header '" + line + "'");
            }
            if (next_n < 1 || next_n > kMaxGroundSize)
                throw FamilyParseError(lineno, "n must be in [1,64]");
            if (n && *n != next_n)
                throw FamilyParseError(lineno, "all families must share one n");
            flush();
            n = next_n;
            in_family = true;
            continue;
        }
        if (!in_family)
            throw FamilyParseError(lineno, "expected header 'n=<int>' before sets");
        // Raw emptiness decides the empty set; indented blank lines also count.
        current.push_back(detail::parse_set_line(raw, *n, lineno));
    }
    flush();
    if (out.empty()) throw FamilyParseError(lineno, "no families in input");
    return out;
}

inline FamilyTuple read_family_tuple(std::istream& in) {
    std::vector<Family> fams = read_families(in);
    if (fams.size() < 2)
        throw FamilyParseError(0, "tuple requires at least two families");
    GroundSet g = fams.front().ground();
    return FamilyTuple(g, std::move(fams));
}

inline void write_family(std::ostream& os, const Family& f) {
    os << "n=" << f.ground().n << '\n';
    for (SubsetMask m : f.members()) {
        const std::vector<int> es = elements_of(m);
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (i) os << ',';
            os << es[i];
        }
        os << '\n';
    }
}

inline void write_family_tuple(std::ostream& os, const FamilyTuple& ft) {
    for (const Family& f : ft.families()) write_family(os, f);
}

}  // namespace sunfree
