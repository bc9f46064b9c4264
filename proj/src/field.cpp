#include "oddsbox/field.hpp"

#include <algorithm>
#include <array>

namespace oddsbox {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::not_prime: return "NotPrime";
    case Errc::even_characteristic: return "EvenCharacteristic";
    case Errc::reducible_modulus: return "ReducibleModulus";
    case Errc::overflow: return "Overflow";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::bad_lut_length: return "BadLutLength";
    case Errc::cycle_entry_out_of_range: return "CycleEntryOutOfRange";
    case Errc::not_a_permutation: return "NotAPermutation";
    case Errc::not_a_power_map: return "NotAPowerMap";
    case Errc::condition_violated: return "ConditionViolated";
    case Errc::zero_c: return "ZeroC";
    case Errc::zero_u: return "ZeroU";
    case Errc::zero_alpha: return "ZeroAlpha";
    case Errc::size_cap_exceeded: return "SizeCapExceeded";
    case Errc::parse_error: return "ParseError";
    case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

constexpr std::uint32_t kMaxDegree = 32;

bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

// Remainder of a by the monic polynomial m, coefficients over F_p (c_0 first).
std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                    const std::vector<std::uint32_t>& m,
                                    std::uint32_t p) {
    while (a.size() >= m.size()) {
        std::uint32_t c = a.back();
        if (c != 0) {
            std::size_t off = a.size() - m.size();
            for (std::size_t i = 0; i + 1 < m.size(); ++i)
                a[off + i] = static_cast<std::uint32_t>(
                    (a[off + i] + std::uint64_t(c) * (p - m[i])) % p);
        }
        a.pop_back();
    }
    return a;
}

bool is_irreducible(const std::vector<std::uint32_t>& m, std::uint32_t p) {
    std::uint32_t deg = static_cast<std::uint32_t>(m.size()) - 1;
    for (std::uint32_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t enc = 0; enc < count; ++enc) {
            std::vector<std::uint32_t> divisor(d + 1);
            std::uint64_t v = enc;
            for (std::uint32_t i = 0; i < d; ++i) { divisor[i] = v % p; v /= p; }
            divisor[d] = 1;
            auto r = poly_mod(m, divisor, p);
            if (std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; }))
                return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

} // namespace

void Field::validate_and_finish() {
    if (p_ == 2) fail(Errc::even_characteristic, "p = 2 is not supported; use an odd prime");
    if (!is_prime(p_)) fail(Errc::not_prime, "p = " + std::to_string(p_) + " is not prime");
    if (n_ < 1) fail(Errc::invalid_argument, "degree n must be >= 1");

    q_ = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        q_ *= p_;
        if (q_ > max_q) fail(Errc::overflow, "p^n exceeds the supported element range");
    }
    if (n_ > kMaxDegree) fail(Errc::overflow, "degree n too large");
}

Field::Field(std::uint32_t p, std::uint32_t n) : p_(p), n_(n) {
    validate_and_finish();
    if (n_ == 1) {
        modulus_ = {0, 1};
        return;
    }
    // Minimal-encoding monic irreducible of degree n.
    std::vector<Elem> m(n_ + 1, 0);
    m[n_] = 1;
    for (std::uint64_t enc = 0; enc < q_; ++enc) {
        std::uint64_t v = enc;
        for (std::uint32_t i = 0; i < n_; ++i) { m[i] = static_cast<Elem>(v % p_); v /= p_; }
        if (is_irreducible(std::vector<std::uint32_t>(m.begin(), m.end()), p_)) {
            modulus_ = m;
            return;
        }
    }
    fail(Errc::reducible_modulus, "no irreducible modulus found"); // unreachable
}

Field::Field(std::uint32_t p, std::uint32_t n, std::vector<Elem> modulus) : p_(p), n_(n) {
    validate_and_finish();
    if (modulus.size() != std::size_t(n_) + 1)
        fail(Errc::invalid_argument, "modulus must have exactly n+1 coefficients");
    if (modulus[n_] != 1)
        fail(Errc::invalid_argument, "modulus must be monic");
    for (Elem c : modulus)
        if (c >= p_) fail(Errc::invalid_argument, "modulus coefficient out of range");
    if (!is_irreducible(std::vector<std::uint32_t>(modulus.begin(), modulus.end()), p_))
        fail(Errc::reducible_modulus, "modulus is reducible over F_p");
    modulus_ = std::move(modulus);
}

Elem Field::add(Elem x, Elem y) const {
    std::uint64_t out = 0, place = 1;
    while (x != 0 || y != 0) {
        std::uint64_t digit = (x % p_ + y % p_) % p_;
        out += digit * place;
        x /= p_;
        y /= p_;
        place *= p_;
    }
    return static_cast<Elem>(out);
}

Elem Field::sub(Elem x, Elem y) const {
    std::uint64_t out = 0, place = 1;
    while (x != 0 || y != 0) {
        std::uint64_t digit = (p_ + x % p_ - y % p_) % p_;
        out += digit * place;
        x /= p_;
        y /= p_;
        place *= p_;
    }
    return static_cast<Elem>(out);
}

Elem Field::neg(Elem x) const { return sub(0, x); }

Elem Field::mul(Elem x, Elem y) const {
    if (x == 0 || y == 0) return 0;
    if (n_ == 1) return static_cast<Elem>((std::uint64_t(x) * y) % p_);

    std::array<std::uint32_t, kMaxDegree> dx{}, dy{};
    for (std::uint32_t i = 0; x != 0; ++i) { dx[i] = x % p_; x /= p_; }
    for (std::uint32_t i = 0; y != 0; ++i) { dy[i] = y % p_; y /= p_; }

    std::array<std::uint64_t, 2 * kMaxDegree> prod{};
    for (std::uint32_t i = 0; i < n_; ++i) {
        if (dx[i] == 0) continue;
        for (std::uint32_t j = 0; j < n_; ++j)
            prod[i + j] += std::uint64_t(dx[i]) * dy[j];
    }
    for (std::uint32_t i = 0; i < 2 * n_ - 1; ++i) prod[i] %= p_;

    // reduce by the monic modulus, top coefficient down
    for (std::uint32_t i = 2 * n_ - 2; i >= n_; --i) {
        std::uint64_t c = prod[i];
        if (c == 0) continue;
        for (std::uint32_t j = 0; j <= n_; ++j)
            prod[i - n_ + j] = (prod[i - n_ + j] + c * (p_ - modulus_[j])) % p_;
    }

    std::uint64_t out = 0, place = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        out += prod[i] * place;
        place *= p_;
    }
    return static_cast<Elem>(out);
}

Elem Field::pow(Elem x, std::uint64_t e) const {
    if (x == 0) return e == 0 ? 1 : 0;
    e %= (q_ - 1);
    Elem result = 1, base = x;
    while (e != 0) {
        if (e & 1) result = mul(result, base);
        base = mul(base, base);
        e >>= 1;
    }
    return result;
}

Elem Field::inv(Elem x) const {
    if (x == 0) fail(Errc::division_by_zero, "inverse of 0");
    return pow(x, q_ - 2);
}

Elem Field::trace(Elem x) const {
    Elem acc = 0, y = x;
    for (std::uint32_t i = 0; i < n_; ++i) {
        acc = add(acc, y);
        y = pow(y, p_);
    }
    return acc;
}

int Field::chi(Elem x) const {
    if (x == 0) return 0;
    return pow(x, (q_ - 1) / 2) == 1 ? 1 : -1;
}

std::optional<Elem> Field::sqrt(Elem x) const {
    if (x == 0) return Elem{0};
    if (chi(x) == -1) return std::nullopt;
    for (Elem r = 1; r < q_; ++r)
        if (mul(r, r) == x) return r; // ascending scan returns min(r, -r)
    return std::nullopt; // unreachable for squares
}

Elem Field::primitive_element() const {
    auto factors = prime_factors(q_ - 1);
    for (Elem g = 1; g < q_; ++g) {
        bool full_order = true;
        for (std::uint64_t f : factors) {
            if (pow(g, (q_ - 1) / f) == 1) { full_order = false; break; }
        }
        if (full_order) return g;
    }
    fail(Errc::invalid_argument, "no generator found"); // unreachable
}

Elem Field::from_int(std::int64_t v) const {
    std::int64_t m = v % std::int64_t(p_);
    if (m < 0) m += p_;
    return static_cast<Elem>(m);
}

} // namespace oddsbox
