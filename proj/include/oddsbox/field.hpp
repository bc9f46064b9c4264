#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oddsbox/error.hpp"

namespace oddsbox {

// Element of F_{p^n}: an integer in [0, q) whose base-p digits are the
// coefficients c_0..c_{n-1} of the residue polynomial (c_0 = constant term).
// Elements of the prime subfield are exactly the values in [0, p).
using Elem = std::uint32_t;

// F_{p^n} for an odd prime p, with exact polynomial-basis arithmetic.
// Immutable after construction; all operations are pure and thread-safe.
class Field {
public:
    // Largest supported q = p^n; elements and table indices stay in int range.
    static constexpr std::uint64_t max_q = 0x7fffffff;

    // Canonical modulus: the monic irreducible of degree n whose coefficient
    // vector (c_0..c_{n-1}), read as a base-p integer, is minimal.
    Field(std::uint32_t p, std::uint32_t n);
    // Explicit modulus: monic of degree n, coefficients in [0, p),
    // irreducibility checked by trial division (degree 1 is accepted as is).
    Field(std::uint32_t p, std::uint32_t n, std::vector<Elem> modulus);

    std::uint32_t p() const { return p_; }
    std::uint32_t n() const { return n_; }
    std::uint64_t q() const { return q_; }
    const std::vector<Elem>& modulus() const { return modulus_; }

    Elem add(Elem x, Elem y) const;
    Elem sub(Elem x, Elem y) const;
    Elem neg(Elem x) const;
    Elem mul(Elem x, Elem y) const;

    // Multiplicative inverse; throws division_by_zero at 0. (The inverse *map*
    // with 0 -> 0 lives in funcrep.)
    Elem inv(Elem x) const;
    // Square-and-multiply; exponent reduced mod (q-1) on nonzero bases.
    // pow(x, 0) = 1 for every x, including x = 0.
    Elem pow(Elem x, std::uint64_t e) const;

    // Absolute trace, sum of x^{p^i} for i in [0, n); lands in [0, p).
    Elem trace(Elem x) const;

    // Quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise.
    int chi(Elem x) const;

    // For chi(x) >= 0 returns the root with the smaller encoding of the pair
    // {r, -r}; nullopt when x is a non-square. Exhaustive scan.
    std::optional<Elem> sqrt(Elem x) const;

    // Smallest-encoding element of multiplicative order q-1.
    Elem primitive_element() const;

    // Embed a (possibly negative) machine integer via the prime subfield.
    Elem from_int(std::int64_t v) const;

    bool operator==(const Field& other) const = default;

private:
    void validate_and_finish();

    std::uint32_t p_ = 0;
    std::uint32_t n_ = 0;
    std::uint64_t q_ = 0;
    std::vector<Elem> modulus_; // length n+1, monic
};

} // namespace oddsbox
