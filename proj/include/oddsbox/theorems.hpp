#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oddsbox/tables.hpp"

namespace oddsbox {

using json = nlohmann::ordered_json;

// Closed-form results checked against the brute-force engines. The names are
// the verification ids accepted by the CLI and emitted in reports.
enum class TheoremId {
    bridge,            // BCT(a,b) = (-1)DDT(a,-b) for odd APN functions
    ident_i1,          // c-differential spectrum sums for power maps
    ident_i2,          // boomerang spectrum sums for odd APN power maps
    inv_cdu,           // c-differential uniformity of the inverse map
    inv_m1_spectrum,   // (-1)-differential spectrum of the inverse map
    inv_boom_spectrum, // boomerang spectrum of the inverse map
    apn_catalog,       // f1..f6 checks
    mod_inv_du_pgt3,   // differential uniformity of X^{q-2} o (0 1 -1), p > 3
    mod_inv_du_p3,     // same map, p = 3
    binomial_du,       // X^{q-2} + u X^2 is at most 4-uniform
    switch_bound,      // uniformity bounds for f + alpha Tr(h)
    switch_search,     // DU-preserving switch table reproduction
};

constexpr TheoremId kAllTheorems[] = {
    TheoremId::bridge,          TheoremId::ident_i1,        TheoremId::ident_i2,
    TheoremId::inv_cdu,         TheoremId::inv_m1_spectrum, TheoremId::inv_boom_spectrum,
    TheoremId::apn_catalog,     TheoremId::mod_inv_du_pgt3, TheoremId::mod_inv_du_p3,
    TheoremId::binomial_du,     TheoremId::switch_bound,    TheoremId::switch_search,
};

const char* theorem_name(TheoremId id);
std::optional<TheoremId> theorem_from_name(std::string_view name);

enum class Status { pass, fail, not_applicable };
const char* status_name(Status s);

struct Counterexample {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t predicted = 0;
    std::int64_t observed = 0;
};

// A closed-form prediction for one (theorem, field, params) instance.
// Exactly one case fires; case_trace names it.
struct Prediction {
    TheoremId theorem = TheoremId::bridge;
    std::string case_trace;
    std::optional<std::int64_t> value;    // exact predicted value
    std::optional<std::int64_t> bound;    // predicted upper bound
    std::optional<Spectrum> spectrum;     // predicted spectrum (zero entries stripped)
    bool applicable = true;
    std::string reason;                   // set when not applicable
};

struct VerificationReport {
    TheoremId theorem = TheoremId::bridge;
    std::uint32_t p = 0;
    std::uint32_t n = 0;
    std::vector<Elem> modulus;
    json params;
    std::string case_trace;
    json predicted;
    json observed;
    Status status = Status::not_applicable;
    std::vector<Counterexample> counterexamples;
    json details;
};

struct VerifyOptions {
    std::uint64_t max_q = kDefaultMaxQ;
    unsigned workers = 1;
    int counterexample_cap = 32;
    unsigned switch_trials = 50;   // randomized switch-bound batch size
    std::uint64_t switch_seed = 0x0ddb0f5eedULL;
};

json report_to_json(const VerificationReport& report);
std::string report_text_line(const VerificationReport& report);
json spectrum_to_json(const Spectrum& s);

// -- bridge and spectrum-sum identities ------------------------------------

// Compares every BCT entry over F* x F* with the (-1)-DDT entry at (a, -b);
// not applicable unless t is odd with differential uniformity 2. For
// permutations additionally requires boomerang uniformity = (-1)-DU.
VerificationReport verify_bridge(const FnTable& t, const VerifyOptions& opts = {});

// Power-map spectrum identities: sum w_i = q and sum i*w_i = q.
VerificationReport verify_identity_i1(const FnTable& t, Elem c, const VerifyOptions& opts = {});
// Boomerang spectrum of an odd APN power map: sum v_i = q-1 and
// sum i*v_i = q - (-1)DDT(1,0). Not applicable otherwise.
VerificationReport verify_identity_i2(const FnTable& t, const VerifyOptions& opts = {});
std::vector<VerificationReport> verify_identities(const FnTable& t, Elem c,
                                                  const VerifyOptions& opts = {});

// -- inverse map -------------------------------------------------------------

// c-DU of X^{q-2}: 3 when c != 1 and chi(c^2-4c) = 1 or chi(1-4c) = 1;
// 3 when c = 1, chi(-3) = 0; 4 when c = 1, chi(-3) = 1; 2 otherwise.
Prediction predict_inverse_cdu(const Field& F, Elem c);
// Sweeps every c in F*.
VerificationReport verify_inverse_cdu(const Field& F, const VerifyOptions& opts = {});

// Seven-case (-1)-differential spectrum, keyed on p = 3 / p = 5 /
// (q mod 4, chi(5)).
Prediction predict_inverse_m1_spectrum(const Field& F);
VerificationReport verify_inverse_m1_spectrum(const Field& F, const VerifyOptions& opts = {});

// Boomerang spectrum when chi(-3) is 0 or +1; keyed on p = 3 / p = 13 /
// p = 5 / (chi(5), q mod 4, Q1, Q2) with Q1,2 = chi((7 -+ sqrt(-3))/2).
Prediction predict_inverse_boom_spectrum(const Field& F);
VerificationReport verify_inverse_boom_spectrum(const Field& F, const VerifyOptions& opts = {});

// -- modified maps ------------------------------------------------------------

// One report per family f1..f6: differential uniformity 2, oddness, and the
// boomerang value (3 for f1/f2/f5/f6, at most 5 for f4 with the exact value
// recorded, recorded only for f3). f2 must equal the compositional inverse
// of f1 as a table.
std::vector<VerificationReport> verify_apn_catalog(const Field& F, const VerifyOptions& opts = {});

// DU of X^{q-2} o (0 1 -1): p = 3 gives 3 (n odd) / 4 (n even); p = 13 gives
// 5 with DDT entries (4,9) = (9,4) = 5 (n even) / 4 with entries 3 (n odd);
// asserted exactly 4 for all other p > 3.
VerificationReport verify_modified_inverse(const Field& F, const VerifyOptions& opts = {});

// X^{q-2} + u X^2 has differential uniformity at most 4.
VerificationReport verify_binomial(const Field& F, Elem u, const VerifyOptions& opts = {});
VerificationReport verify_binomial_sweep(const Field& F, const VerifyOptions& opts = {});

// g = f + alpha Tr(h): Delta_g <= p * Delta_f; when f is the inverse map also
// Delta_g <= 2(p+1), and rows a with Tr(D_h(-a/2,a)) != Tr(D_h(a/2,a)) stay
// at or below 2p+1.
VerificationReport verify_switch_bound(const Field& F, const FnSpec& f, Elem alpha,
                                       const FnSpec& h, const VerifyOptions& opts = {});
// Seeded random (alpha, h) batch with deg h <= 3, applied to the inverse map
// and to X^3.
VerificationReport verify_switch_bounds_random(const Field& F, const VerifyOptions& opts = {});

// -- switch search ------------------------------------------------------------

struct SwitchRow {
    std::uint64_t d = 0;
    std::uint32_t s = 0;
    std::int64_t du = 0;
    bool is_permutation = true;
};

// Enumerates f(X,d,s) = X^{q-2} + Tr(g^s X^d) and keeps the permutations whose
// differential uniformity equals that of the inverse map. Defaults:
// d in [0, q-2] (exponents act mod q-1), s in [0, p-1]; the redundant rows
// (d = 0, s > 0) are skipped. Output sorted by (s, d).
std::vector<SwitchRow> search_du_preserving_switches(
    const Field& F,
    std::optional<std::pair<std::uint64_t, std::uint64_t>> d_range = std::nullopt,
    std::optional<std::pair<std::uint32_t, std::uint32_t>> s_range = std::nullopt,
    const VerifyOptions& opts = {});

// Checks the convention-independent s = 0 sub-table against the tabulated
// results for (3,2), (3,3), (5,2), (5,3), (7,2); full-table row counts are
// recorded for comparison but convention-dependent mismatches do not fail.
VerificationReport verify_switch_search(const Field& F, const VerifyOptions& opts = {});

// -- batteries ----------------------------------------------------------------

// The standard reports for one theorem over one field (multi-report theorems
// fan out over the applicable function set).
std::vector<VerificationReport> run_theorem(TheoremId id, const Field& F,
                                            const VerifyOptions& opts = {});
std::vector<VerificationReport> verify_all(const Field& F, const VerifyOptions& opts = {});

} // namespace oddsbox
