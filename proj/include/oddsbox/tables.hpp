#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oddsbox/funcrep.hpp"

namespace oddsbox {

// Full tables take O(q^2) memory; builds above this cap are refused.
inline constexpr std::uint64_t kDefaultMaxQ = 2048;

struct TableOptions {
    std::uint64_t max_q = kDefaultMaxQ;
    // Row-level fan-out; the result is identical for any worker count.
    unsigned workers = 1;
};

// Dense (a, b)-indexed count matrix for a c-DDT or a BCT.
struct CountTable {
    enum class Kind { cddt, bct };
    Kind kind = Kind::cddt;
    Elem c = 1; // cddt only
    std::uint64_t q = 0;
    std::vector<std::int64_t> counts; // row-major by a

    std::int64_t at(Elem a, Elem b) const { return counts[std::size_t(a) * q + b]; }
};

struct UniformityResult {
    std::int64_t value = 0;
    // Entries attaining the value in lexicographic (a, b) order, capped;
    // witness_count is the uncapped total.
    std::vector<std::pair<Elem, Elem>> witnesses;
    std::int64_t witness_count = 0;
    static constexpr std::size_t witness_cap = 64;

    bool is_pcn() const { return value == 1; }
    bool is_apcn() const { return value == 2; }
    std::string classification() const;
};

// Multiplicity histogram of a table row: i -> |{b : row[b] = i}|.
// Only nonzero multiplicities are stored.
struct Spectrum {
    enum class Kind { cdiff, boomerang };
    Kind kind = Kind::cdiff;
    std::map<std::int64_t, std::int64_t> multiplicities;

    std::int64_t total() const;         // sum of multiplicities
    std::int64_t weighted_total() const; // sum of i * multiplicity
    bool operator==(const Spectrum& other) const { return multiplicities == other.multiplicities; }
};

// |{X : f(X+a) - c f(X) = b}|
std::int64_t cddt_entry(const FnTable& t, Elem c, Elem a, Elem b);
std::vector<std::int64_t> cddt_row(const FnTable& t, Elem c, Elem a);
CountTable cddt(const FnTable& t, Elem c, const TableOptions& opts = {});
CountTable ddt(const FnTable& t, const TableOptions& opts = {});

// |{(X, Y) : f(X) - f(Y) = b and f(X+a) - f(Y+a) = b}|
std::int64_t bct_entry(const FnTable& t, Elem a, Elem b);
std::vector<std::int64_t> bct_row(const FnTable& t, Elem a);
CountTable bct(const FnTable& t, const TableOptions& opts = {});

// Maximum entry. cddt excludes the a = 0 row only when c = 1; bct excludes
// a = 0 and b = 0.
UniformityResult uniformity(const CountTable& table);
UniformityResult c_differential_uniformity(const FnTable& t, Elem c, const TableOptions& opts = {});
UniformityResult boomerang_uniformity(const FnTable& t, const TableOptions& opts = {});

// a = 1 row histograms; power maps only. The c-differential spectrum runs
// over all b, the boomerang spectrum over b != 0.
Spectrum cdiff_spectrum_power(const FnTable& t, Elem c);
Spectrum boomerang_spectrum_power(const FnTable& t);

// "a,b,count" rows in lexicographic (a, b) order.
void write_csv(std::ostream& out, const CountTable& table);
// {"kind","c","q","max",...} summary; spectrum included when given.
std::string table_summary_json(const CountTable& table, const UniformityResult& u,
                               const Spectrum* spectrum);

std::string spectrum_brace_text(const Spectrum& s);

} // namespace oddsbox
