// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Field matrix: F_5, F_7, F_11, F_13, F_17, F_19, F_29, F_9, F_27, F_81,
// F_25, F_125, F_49, F_121, F_169.

#include <cstdio>
#include <string>
#include <vector>

#include "oddsbox/theorems.hpp"

using namespace oddsbox;

namespace {

int failures = 0;

void report(int num, const char* name, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", num, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kMatrix = {
    {5, 1}, {7, 1}, {11, 1}, {13, 1}, {17, 1}, {19, 1}, {29, 1},
    {3, 2}, {3, 3}, {3, 4},  {5, 2}, {5, 3},  {7, 2},  {11, 2}, {13, 2}};

FnTable inverse_table(const Field& F) { return materialize(F, catalog(F, Family::inverse)); }

std::vector<std::pair<std::string, FnTable>> power_maps(const Field& F) {
    std::vector<std::pair<std::string, FnTable>> out;
    out.emplace_back("inverse", inverse_table(F));
    for (Family fam : {Family::f1, Family::f2, Family::f4, Family::f5, Family::f6})
        if (!catalog_condition(F, fam))
            out.emplace_back(std::string(family_name(fam)), materialize(F, catalog(F, fam)));
    return out;
}

// 1. BCT(a,b) = (-1)DDT(a,-b) for X^3 over F_25, F_49, F_121 and f5/f6 over F_125.
void criterion_1() {
    bool ok = true;
    std::string detail;
    auto run = [&](const Field& F, const FnSpec& spec, const char* label) {
        const auto r = verify_bridge(materialize(F, spec));
        const bool pass = r.status == Status::pass && r.observed["mismatches"] == 0;
        ok = ok && pass;
        if (!pass) detail += std::string(label) + " mismatched; ";
    };
    for (auto [p, n] : {std::pair{5u, 2u}, {7u, 2u}, {11u, 2u}})
        run(Field(p, n), FnSpec::power(3), "X^3");
    Field F125(5, 3);
    run(F125, catalog(F125, Family::f5), "f5");
    run(F125, catalog(F125, Family::f6), "f6");
    report(1, "bridge: BCT equals the (-1)-DDT for odd APN maps", ok, detail);
}

// 2. c-DU of the inverse for every c over F_17, F_19, F_13, F_7, F_27, F_25,
//    including the corrected c = 4 / c = 4^{-1} cases.
void criterion_2() {
    bool ok = true;
    for (auto [p, n] : {std::pair{17u, 1u}, {19u, 1u}, {13u, 1u}, {7u, 1u}, {3u, 3u}, {5u, 2u}})
        ok = ok && verify_inverse_cdu(Field(p, n)).status == Status::pass;

    Field F17(17, 1);
    ok = ok && predict_inverse_cdu(F17, 4).value == 3 &&
         c_differential_uniformity(inverse_table(F17), 4).value == 3;
    Field F19(19, 1);
    const Elem c19 = F19.inv(4);
    ok = ok && predict_inverse_cdu(F19, c19).value == 3 &&
         c_differential_uniformity(inverse_table(F19), c19).value == 3;
    report(2, "inverse c-DU formula for every c in F*", ok);
}

// 3. All seven (-1)-differential spectrum cases, exact match.
void criterion_3() {
    const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::string>> rows = {
        {3, 2, "(1)"}, {3, 3, "(2)"}, {11, 1, "(3)"}, {7, 1, "(4)"},
        {29, 1, "(5)"}, {13, 1, "(6)"}, {5, 1, "(7)"}, {5, 3, "(7)"}};
    bool ok = true;
    std::string detail;
    for (const auto& [p, n, prefix] : rows) {
        const auto r = verify_inverse_m1_spectrum(Field(p, n));
        const bool pass = r.status == Status::pass && r.case_trace.substr(0, 3) == prefix;
        ok = ok && pass;
        if (!pass) detail += "F_" + std::to_string(p) + "^" + std::to_string(n) + "; ";
    }
    report(3, "(-1)-differential spectrum: all seven cases hit", ok, detail);
}

// 4. Boomerang spectrum of the inverse over six fields, exact match.
void criterion_4() {
    bool ok = true;
    for (auto [p, n] : {std::pair{3u, 3u}, {3u, 2u}, {13u, 1u}, {13u, 2u}, {7u, 1u}, {5u, 2u}})
        ok = ok && verify_inverse_boom_spectrum(Field(p, n)).status == Status::pass;
    Field F27(3, 3);
    const auto r = verify_inverse_boom_spectrum(F27);
    Spectrum expected{Spectrum::Kind::boomerang, {{0, 12}, {2, 12}, {3, 2}}};
    ok = ok && r.observed == spectrum_to_json(expected);
    report(4, "boomerang spectrum of the inverse", ok);
}

// 5. APN catalog boomerang values at the tabulated fields.
void criterion_5() {
    bool ok = true;
    std::string detail;
    for (auto [p, n] : {std::pair{5u, 2u}, {7u, 2u}}) {
        Field F(p, n);
        ok = ok && boomerang_uniformity(materialize(F, catalog(F, Family::f1))).value == 3;
    }
    Field F125(5, 3);
    const auto f1t = materialize(F125, catalog(F125, Family::f1));
    const auto f2t = materialize(F125, catalog(F125, Family::f2));
    ok = ok && compositional_inverse(f1t).lut == f2t.lut;
    ok = ok && boomerang_uniformity(f2t).value == 3;
    ok = ok && boomerang_uniformity(materialize(F125, catalog(F125, Family::f5))).value == 3;
    ok = ok && boomerang_uniformity(materialize(F125, catalog(F125, Family::f6))).value == 3;
    Field F49(7, 2);
    const auto b4 = boomerang_uniformity(materialize(F49, catalog(F49, Family::f4))).value;
    ok = ok && b4 <= 5;
    detail = "f4 over F_49: B = " + std::to_string(b4) + " (bound 5)";
    report(5, "APN catalog: f1/f2/f5/f6 boomerang 3, f4 at most 5", ok, detail);
}

// 6. Modified inverse differential uniformity, with the p = 13 entries.
void criterion_6() {
    bool ok = true;
    std::string detail;
    auto want = [&](std::uint32_t p, std::uint32_t n, std::int64_t du) {
        const auto r = verify_modified_inverse(Field(p, n));
        const bool pass = r.status == Status::pass && r.observed["du"] == du;
        ok = ok && pass;
        if (!pass)
            detail += "F_" + std::to_string(p) + "^" + std::to_string(n) + " du=" +
                      r.observed["du"].dump() + "; ";
    };
    want(3, 3, 3);
    want(3, 2, 4);
    want(7, 1, 4);
    want(11, 1, 4);
    want(5, 2, 4);
    want(13, 1, 4);
    want(13, 2, 5);
    const auto r13 = verify_modified_inverse(Field(13, 1));
    ok = ok && r13.observed["entry_4_9"] == 3 && r13.observed["entry_9_4"] == 3;
    const auto r169 = verify_modified_inverse(Field(13, 2));
    ok = ok && r169.observed["entry_4_9"] == 5 && r169.observed["entry_9_4"] == 5;
    report(6, "modified inverse differential uniformity", ok, detail);
}

// 7. Binomial X^{q-2} + u X^2 is at most 4-uniform, exhaustively in u.
void criterion_7() {
    bool ok = true;
    for (auto [p, n] : {std::pair{5u, 1u}, {7u, 1u}, {3u, 3u}, {13u, 1u}})
        ok = ok && verify_binomial_sweep(Field(p, n)).status == Status::pass;
    report(7, "binomial uniformity bound over every u in F*", ok);
}

// 8. Randomized switch bounds: p*Delta_f, 2(p+1) for the inverse, and the
//    2p+1 row bound under the derivative-trace condition.
void criterion_8() {
    bool ok = true;
    std::string detail;
    for (auto [p, n] : {std::pair{7u, 1u}, {3u, 3u}, {5u, 2u}}) {
        const auto r = verify_switch_bounds_random(Field(p, n));
        ok = ok && r.status == Status::pass;
        detail += "F_" + std::to_string(p) + (n > 1 ? "^" + std::to_string(n) : "") +
                  " worst=" + r.observed["worst_delta_g"].dump() + "; ";
    }
    report(8, "switch bounds over 50 random (alpha, h) per field", ok, detail);
}

// 9. Switch search: s = 0 sub-tables exact; full-table row counts recorded.
void criterion_9() {
    bool ok = true;
    std::string detail;
    for (auto [p, n] : {std::pair{3u, 3u}, {5u, 2u}, {5u, 3u}, {7u, 2u}}) {
        const auto r = verify_switch_search(Field(p, n));
        ok = ok && r.status == Status::pass;
        detail += "(" + std::to_string(p) + "," + std::to_string(n) + ") rows " +
                  r.observed["rows"].dump() + " vs tabulated " + r.details["reported_rows"].dump() +
                  "; ";
    }
    report(9, "switch search: s = 0 tuple-exact match", ok, detail);
}

// 10. Property suites, exhaustive at desk scale.
void criterion_10() {
    bool ok = true;
    std::string detail;
    auto flag = [&](bool cond, const std::string& what) {
        if (!cond && detail.size() < 200) detail += what + "; ";
        ok = ok && cond;
    };

    auto bct_properties = [&](const FnTable& t, const std::string& label) {
        const Field& F = t.field;
        const Elem q = static_cast<Elem>(F.q());
        const CountTable b = bct(t);
        const CountTable d = ddt(t);
        for (Elem a = 0; a < q; ++a) {
            std::int64_t lhs = 0, rhs = 0;
            for (Elem v = 0; v < q; ++v) {
                lhs += b.at(a, v);
                rhs += d.at(a, v) * d.at(a, v);
                if (b.at(a, v) != b.at(a, F.neg(v))) flag(false, label + " sign symmetry");
            }
            if (lhs != rhs) flag(false, label + " second moment");
        }
        if (t.power_exponent) {
            const std::uint64_t e = *t.power_exponent;
            for (Elem a = 1; a < q; ++a) {
                const Elem scale = F.inv(F.pow(a, e));
                for (Elem v = 1; v < q; ++v)
                    if (b.at(a, v) != b.at(1, F.mul(v, scale)))
                        flag(false, label + " bct row reduction");
            }
        }
    };

    for (auto [p, n] : kMatrix) {
        Field F(p, n);
        const Elem q = static_cast<Elem>(F.q());
        const std::string fname = "F_" + std::to_string(p) + "^" + std::to_string(n);
        const FnTable inv = inverse_table(F);

        // chi multiplicativity and square count
        std::vector<int> chi(q);
        std::int64_t squares = 0;
        for (Elem x = 0; x < q; ++x) {
            chi[x] = F.chi(x);
            if (x && chi[x] == 1) ++squares;
        }
        flag(squares == std::int64_t(q - 1) / 2, fname + " square count");
        for (Elem x = 1; x < q; ++x)
            for (Elem y = 1; y < q; ++y)
                if (chi[F.mul(x, y)] != chi[x] * chi[y]) flag(false, fname + " chi mult");

        // Q1*Q2 = chi(13) whenever sqrt(-3) exists and the factors are nonzero
        if (F.chi(F.from_int(-3)) >= 0 && p != 13) {
            const Elem root = *F.sqrt(F.from_int(-3));
            const Elem half = F.inv(2);
            const Elem l = F.mul(F.sub(F.from_int(7), root), half);
            const Elem r = F.mul(F.add(F.from_int(7), root), half);
            if (l != 0 && r != 0)
                flag(F.chi(l) * F.chi(r) == F.chi(F.from_int(13)), fname + " Q product");
        }

        // c-DDT row sums for every c, and the power-map row reduction
        for (Elem c = 0; c < q; ++c) {
            const CountTable table = cddt(inv, c);
            for (Elem a = 0; a < q; ++a) {
                std::int64_t sum = 0;
                for (Elem v = 0; v < q; ++v) sum += table.at(a, v);
                if (sum != std::int64_t(q)) flag(false, fname + " row sum");
            }
            if (c == 1 || c == F.neg(1)) {
                const std::uint64_t e = *inv.power_exponent;
                for (Elem a = 1; a < q; ++a) {
                    const Elem scale = F.inv(F.pow(a, e));
                    for (Elem v = 0; v < q; ++v)
                        if (table.at(a, v) != table.at(1, F.mul(v, scale)))
                            flag(false, fname + " cddt row reduction");
                }
            }
        }

        // spectrum identities and BCT properties over the power-map battery
        for (const auto& [name, t] : power_maps(F)) {
            for (Elem c = 1; c < q; ++c) {
                const Spectrum s = cdiff_spectrum_power(t, c);
                if (s.total() != std::int64_t(q) || s.weighted_total() != std::int64_t(q))
                    flag(false, fname + " " + name + " I1");
            }
            const auto i2 = verify_identity_i2(t);
            if (i2.status == Status::fail) flag(false, fname + " " + name + " I2");
        }

        bct_properties(inv, fname + " inverse");
        if (p != 3) bct_properties(materialize(F, FnSpec::power(3)), fname + " X^3");
    }

    // non-permutation BCT path
    for (auto [p, n] : {std::pair{7u, 1u}, {3u, 3u}}) {
        Field F(p, n);
        bct_properties(materialize(F, catalog(F, Family::binomial, {.u = 1})),
                       "binomial F_" + std::to_string(p));
    }
    report(10, "property suites (row sums, BCT identities, I1/I2, chi, Q)", ok, detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0)
        std::printf("all criteria passed\n");
    else
        std::printf("%d criteria failed\n", failures);
    return failures;
}
