#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oddsbox/field.hpp"

namespace oddsbox {

class FnSpec;

// X^d; 0 -> 0 for d > 0, the d = 0 map is constant 1. On nonzero inputs the
// exponent acts mod q-1, so d = q-2 is the inverse map.
struct PowerMap {
    std::uint64_t exponent = 0;
};

struct PolyTerm {
    Elem coeff = 0;
    std::uint64_t exponent = 0;
};

struct PolySpec {
    std::vector<PolyTerm> terms;
};

struct LutSpec {
    std::vector<Elem> values;
};

// f(X) = inner(sigma(X)); the cycle reads left to right, (e0 e1 e2) maps
// e0 -> e1, e1 -> e2, last -> first, everything else fixed.
struct CycleComposed {
    std::shared_ptr<const FnSpec> inner;
    std::vector<Elem> cycle;
};

// f(X) = inner(X) + alpha * Tr(h(X))
struct TraceSwitched {
    std::shared_ptr<const FnSpec> inner;
    Elem alpha = 0;
    std::shared_ptr<const FnSpec> h;
};

class FnSpec {
public:
    using Node = std::variant<PowerMap, PolySpec, LutSpec, CycleComposed, TraceSwitched>;

    static FnSpec power(std::uint64_t d) { return FnSpec(PowerMap{d}); }
    static FnSpec poly(std::vector<PolyTerm> terms) { return FnSpec(PolySpec{std::move(terms)}); }
    static FnSpec lut(std::vector<Elem> values) { return FnSpec(LutSpec{std::move(values)}); }
    static FnSpec cycle_composed(FnSpec inner, std::vector<Elem> cycle);
    static FnSpec trace_switched(FnSpec inner, Elem alpha, FnSpec h);

    const Node& node() const { return node_; }
    std::string describe() const;

private:
    explicit FnSpec(Node node) : node_(std::move(node)) {}
    Node node_;
};

// A function materialized over a concrete field.
struct FnTable {
    Field field;
    std::vector<Elem> lut;
    // Set when the table came from a PowerMap; gates the a = 1 row shortcuts.
    std::optional<std::uint64_t> power_exponent;

    Elem operator()(Elem x) const { return lut[x]; }
};

FnTable materialize(const Field& F, const FnSpec& spec);

bool is_permutation(const FnTable& t);
// f(-X) = -f(X) for all X
bool is_odd(const FnTable& t);
std::vector<Elem> fixed_points(const FnTable& t);
// Requires a permutation; preserves power-map provenance when the exponent is
// invertible mod q-1.
FnTable compositional_inverse(const FnTable& t);

// Named families studied by the toolkit. f1..f6 are the known odd APN power
// maps; each has an applicability condition checked by catalog().
enum class Family {
    identity,
    inverse,          // X^{q-2}
    modified_inverse, // X^{q-2} o (0 1 -1)
    f1,               // X^3, p != 3
    f2,               // X^{(2q-1)/3}, q = 2 mod 3
    f3,               // X^{q-2}, q = 2 mod 3
    f4,               // X^{p^{n/2}+2}, n even, p^{n/2} = 1 mod 3
    f5,               // X^{(5^k+1)/2}, p = 5, gcd(2n, k) = 1
    f6,               // X^{(5^n-1)/4 + (5^{(n+1)/2}-1)/2}, p = 5, n odd
    binomial,         // X^{q-2} + u X^2, u != 0
    switch_monomial,  // X^{q-2} + Tr(g^s X^d), g the canonical generator
};

struct CatalogParams {
    std::uint64_t k = 1; // f5
    Elem u = 0;          // binomial
    std::uint64_t d = 0; // switch_monomial
    std::uint32_t s = 0; // switch_monomial
};

// Reason string when the family is not defined over F, nullopt otherwise.
std::optional<std::string> catalog_condition(const Field& F, Family which,
                                             const CatalogParams& params = {});
// Throws condition_violated when the family does not apply.
FnSpec catalog(const Field& F, Family which, const CatalogParams& params = {});

std::optional<Family> family_from_name(std::string_view name);
std::string_view family_name(Family which);

// LUT text format: line 1 "p n", line 2 modulus coefficients c_0..c_n,
// then q values, one per line, in encoding order.
FnTable read_lut_text(std::istream& in);
void write_lut_text(std::ostream& out, const FnTable& t);

} // namespace oddsbox
