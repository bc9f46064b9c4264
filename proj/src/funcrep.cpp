#include "oddsbox/funcrep.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <utility>

namespace oddsbox {

FnSpec FnSpec::cycle_composed(FnSpec inner, std::vector<Elem> cycle) {
    return FnSpec(CycleComposed{std::make_shared<const FnSpec>(std::move(inner)), std::move(cycle)});
}

FnSpec FnSpec::trace_switched(FnSpec inner, Elem alpha, FnSpec h) {
    return FnSpec(TraceSwitched{std::make_shared<const FnSpec>(std::move(inner)), alpha,
                                std::make_shared<const FnSpec>(std::move(h))});
}

std::string FnSpec::describe() const {
    struct Visitor {
        std::string operator()(const PowerMap& m) const {
            return "X^" + std::to_string(m.exponent);
        }
        std::string operator()(const PolySpec& s) const {
            if (s.terms.empty()) return "0";
            std::string out;
            for (const auto& t : s.terms) {
                if (!out.empty()) out += " + ";
                if (t.coeff != 1 || t.exponent == 0) out += std::to_string(t.coeff);
                if (t.exponent > 0) {
                    if (t.coeff != 1) out += "*";
                    out += "X^" + std::to_string(t.exponent);
                }
            }
            return out;
        }
        std::string operator()(const LutSpec& s) const {
            return "lut[" + std::to_string(s.values.size()) + "]";
        }
        std::string operator()(const CycleComposed& s) const {
            std::string cyc;
            for (Elem e : s.cycle) {
                if (!cyc.empty()) cyc += " ";
                cyc += std::to_string(e);
            }
            return s.inner->describe() + " o (" + cyc + ")";
        }
        std::string operator()(const TraceSwitched& s) const {
            std::string a = s.alpha == 1 ? "" : std::to_string(s.alpha) + "*";
            return s.inner->describe() + " + " + a + "Tr(" + s.h->describe() + ")";
        }
    };
    return std::visit(Visitor{}, node_);
}

namespace {

std::vector<Elem> eval_spec(const Field& F, const FnSpec& spec) {
    const std::size_t q = static_cast<std::size_t>(F.q());
    struct Visitor {
        const Field& F;
        std::size_t q;

        std::vector<Elem> operator()(const PowerMap& m) const {
            std::vector<Elem> lut(q);
            for (std::size_t x = 0; x < q; ++x)
                lut[x] = F.pow(static_cast<Elem>(x), m.exponent);
            return lut;
        }
        std::vector<Elem> operator()(const PolySpec& s) const {
            std::vector<Elem> lut(q, 0);
            for (std::size_t x = 0; x < q; ++x) {
                Elem acc = 0;
                for (const auto& t : s.terms)
                    acc = F.add(acc, F.mul(t.coeff, F.pow(static_cast<Elem>(x), t.exponent)));
                lut[x] = acc;
            }
            return lut;
        }
        std::vector<Elem> operator()(const LutSpec& s) const {
            if (s.values.size() != q)
                fail(Errc::bad_lut_length, "lut has " + std::to_string(s.values.size()) +
                                               " entries, expected " + std::to_string(q));
            for (Elem v : s.values)
                if (v >= q) fail(Errc::bad_lut_length, "lut entry " + std::to_string(v) + " out of range");
            return s.values;
        }
        std::vector<Elem> operator()(const CycleComposed& s) const {
            if (s.cycle.empty()) fail(Errc::cycle_entry_out_of_range, "empty cycle");
            for (Elem e : s.cycle)
                if (e >= q) fail(Errc::cycle_entry_out_of_range, "cycle entry " + std::to_string(e) + " out of range");
            for (std::size_t i = 0; i < s.cycle.size(); ++i)
                for (std::size_t j = i + 1; j < s.cycle.size(); ++j)
                    if (s.cycle[i] == s.cycle[j])
                        fail(Errc::cycle_entry_out_of_range, "cycle entries must be pairwise distinct");
            std::vector<Elem> sigma(q);
            std::iota(sigma.begin(), sigma.end(), 0);
            for (std::size_t i = 0; i < s.cycle.size(); ++i)
                sigma[s.cycle[i]] = s.cycle[(i + 1) % s.cycle.size()];
            std::vector<Elem> inner = eval_spec(F, *s.inner);
            std::vector<Elem> lut(q);
            for (std::size_t x = 0; x < q; ++x) lut[x] = inner[sigma[x]];
            return lut;
        }
        std::vector<Elem> operator()(const TraceSwitched& s) const {
            std::vector<Elem> inner = eval_spec(F, *s.inner);
            std::vector<Elem> h = eval_spec(F, *s.h);
            std::vector<Elem> lut(q);
            for (std::size_t x = 0; x < q; ++x)
                lut[x] = F.add(inner[x], F.mul(s.alpha, F.trace(h[x])));
            return lut;
        }
    };
    return std::visit(Visitor{F, q}, spec.node());
}

} // namespace

FnTable materialize(const Field& F, const FnSpec& spec) {
    FnTable t{F, eval_spec(F, spec), std::nullopt};
    if (const auto* pm = std::get_if<PowerMap>(&spec.node()))
        t.power_exponent = pm->exponent;
    return t;
}

bool is_permutation(const FnTable& t) {
    std::vector<bool> seen(t.lut.size(), false);
    for (Elem v : t.lut) {
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

bool is_odd(const FnTable& t) {
    const Field& F = t.field;
    for (Elem x = 0; x < F.q(); ++x)
        if (t.lut[F.neg(x)] != F.neg(t.lut[x])) return false;
    return true;
}

std::vector<Elem> fixed_points(const FnTable& t) {
    std::vector<Elem> out;
    for (Elem x = 0; x < t.lut.size(); ++x)
        if (t.lut[x] == x) out.push_back(x);
    return out;
}

namespace {

// Inverse of d mod m when gcd(d, m) = 1.
std::optional<std::uint64_t> mod_inverse(std::uint64_t d, std::uint64_t m) {
    std::int64_t t0 = 0, t1 = 1;
    std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(d % m);
    while (r1 != 0) {
        std::int64_t quot = r0 / r1;
        t0 = std::exchange(t1, t0 - quot * t1);
        r0 = std::exchange(r1, r0 - quot * r1);
    }
    if (r0 != 1) return std::nullopt;
    if (t0 < 0) t0 += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(t0);
}

} // namespace

FnTable compositional_inverse(const FnTable& t) {
    if (!is_permutation(t)) fail(Errc::not_a_permutation, "compositional inverse needs a bijective lut");
    FnTable out{t.field, std::vector<Elem>(t.lut.size()), std::nullopt};
    for (Elem x = 0; x < t.lut.size(); ++x) out.lut[t.lut[x]] = x;
    if (t.power_exponent) {
        if (auto e = mod_inverse(*t.power_exponent, t.field.q() - 1))
            out.power_exponent = *e;
    }
    return out;
}

std::optional<std::string> catalog_condition(const Field& F, Family which, const CatalogParams& params) {
    const std::uint64_t q = F.q();
    switch (which) {
    case Family::identity:
    case Family::inverse:
    case Family::modified_inverse:
        return std::nullopt;
    case Family::f1:
        if (F.p() == 3) return "f1 requires p != 3";
        return std::nullopt;
    case Family::f2:
    case Family::f3:
        if (q % 3 != 2) return std::string(family_name(which)) + " requires p^n = 2 mod 3";
        return std::nullopt;
    case Family::f4:
        if (F.n() % 2 != 0) return "f4 requires even degree";
        {
            std::uint64_t root = 1;
            for (std::uint32_t i = 0; i < F.n() / 2; ++i) root *= F.p();
            if (root % 3 != 1) return "f4 requires p^{n/2} = 1 mod 3";
        }
        return std::nullopt;
    case Family::f5:
        if (F.p() != 5) return "f5 requires p = 5";
        if (params.k < 1 || params.k > 26) return "f5 requires 1 <= k <= 26";
        if (std::gcd(std::uint64_t(2) * F.n(), params.k) != 1) return "f5 requires gcd(2n, k) = 1";
        return std::nullopt;
    case Family::f6:
        if (F.p() != 5) return "f6 requires p = 5";
        if (F.n() % 2 != 1) return "f6 requires odd degree";
        return std::nullopt;
    case Family::binomial:
        if (params.u == 0) return "binomial requires u != 0";
        if (params.u >= q) return "binomial coefficient u out of range";
        return std::nullopt;
    case Family::switch_monomial:
        if (params.d > q - 1) return "switch exponent d out of range";
        if (params.s > F.p() - 1) return "switch power s out of range";
        return std::nullopt;
    }
    return "unknown family";
}

FnSpec catalog(const Field& F, Family which, const CatalogParams& params) {
    if (auto reason = catalog_condition(F, which, params)) {
        if (which == Family::binomial && params.u == 0) fail(Errc::zero_u, *reason);
        fail(Errc::condition_violated, *reason);
    }
    const std::uint64_t q = F.q();
    switch (which) {
    case Family::identity:
        return FnSpec::power(1);
    case Family::inverse:
    case Family::f3:
        return FnSpec::power(q - 2);
    case Family::modified_inverse:
        return FnSpec::cycle_composed(FnSpec::power(q - 2), {0, 1, F.neg(1)});
    case Family::f1:
        return FnSpec::power(3);
    case Family::f2:
        return FnSpec::power((2 * q - 1) / 3);
    case Family::f4: {
        std::uint64_t root = 1;
        for (std::uint32_t i = 0; i < F.n() / 2; ++i) root *= F.p();
        return FnSpec::power(root + 2);
    }
    case Family::f5: {
        std::uint64_t pk = 1;
        for (std::uint64_t i = 0; i < params.k; ++i) pk *= 5;
        return FnSpec::power((pk + 1) / 2);
    }
    case Family::f6: {
        std::uint64_t pn = 1, pm = 1;
        for (std::uint32_t i = 0; i < F.n(); ++i) pn *= 5;
        for (std::uint32_t i = 0; i < (F.n() + 1) / 2; ++i) pm *= 5;
        return FnSpec::power((pn - 1) / 4 + (pm - 1) / 2);
    }
    case Family::binomial:
        return FnSpec::poly({{1, q - 2}, {params.u, 2}});
    case Family::switch_monomial: {
        Elem gs = F.pow(F.primitive_element(), params.s);
        return FnSpec::trace_switched(FnSpec::power(q - 2), 1, FnSpec::poly({{gs, params.d}}));
    }
    }
    fail(Errc::invalid_argument, "unknown family");
}

std::optional<Family> family_from_name(std::string_view name) {
    if (name == "identity") return Family::identity;
    if (name == "inverse") return Family::inverse;
    if (name == "modified-inverse" || name == "modified_inverse") return Family::modified_inverse;
    if (name == "f1") return Family::f1;
    if (name == "f2") return Family::f2;
    if (name == "f3") return Family::f3;
    if (name == "f4") return Family::f4;
    if (name == "f5") return Family::f5;
    if (name == "f6") return Family::f6;
    if (name == "binomial") return Family::binomial;
    if (name == "switch" || name == "switch-monomial" || name == "switch_monomial")
        return Family::switch_monomial;
    return std::nullopt;
}

std::string_view family_name(Family which) {
    switch (which) {
    case Family::identity: return "identity";
    case Family::inverse: return "inverse";
    case Family::modified_inverse: return "modified-inverse";
    case Family::f1: return "f1";
    case Family::f2: return "f2";
    case Family::f3: return "f3";
    case Family::f4: return "f4";
    case Family::f5: return "f5";
    case Family::f6: return "f6";
    case Family::binomial: return "binomial";
    case Family::switch_monomial: return "switch";
    }
    return "?";
}

FnTable read_lut_text(std::istream& in) {
    std::uint32_t p = 0, n = 0;
    if (!(in >> p >> n)) fail(Errc::parse_error, "lut file: cannot read 'p n' header");
    std::vector<Elem> modulus(std::size_t(n) + 1);
    for (auto& c : modulus)
        if (!(in >> c)) fail(Errc::parse_error, "lut file: cannot read modulus coefficients");
    try {
        Field F(p, n, std::move(modulus));
        std::vector<Elem> lut(static_cast<std::size_t>(F.q()));
        for (auto& v : lut) {
            std::int64_t raw = 0;
            if (!(in >> raw)) fail(Errc::parse_error, "lut file: too few values");
            if (raw < 0 || std::uint64_t(raw) >= F.q())
                fail(Errc::parse_error, "lut file: value " + std::to_string(raw) + " out of range");
            v = static_cast<Elem>(raw);
        }
        return materialize(F, FnSpec::lut(std::move(lut)));
    } catch (const Error& e) {
        if (e.code() == Errc::parse_error) throw;
        fail(Errc::parse_error, std::string("lut file: ") + e.what());
    }
}

void write_lut_text(std::ostream& out, const FnTable& t) {
    out << t.field.p() << " " << t.field.n() << "\n";
    const auto& m = t.field.modulus();
    for (std::size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << m[i];
    out << "\n";
    for (Elem v : t.lut) out << v << "\n";
}

} // namespace oddsbox
