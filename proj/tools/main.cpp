#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oddsbox/theorems.hpp"

using namespace oddsbox;

namespace {

int errc_exit_code(Errc code) {
    switch (code) {
    case Errc::size_cap_exceeded: return 3;
    case Errc::parse_error: return 4;
    default: return 2;
    }
}

std::uint64_t default_max_q() {
    if (const char* env = std::getenv("UNIFORMITY_MAX_Q")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultMaxQ;
}

std::vector<Elem> parse_modulus(const std::string& text) {
    std::vector<Elem> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(static_cast<Elem>(std::stoul(tok)));
        } catch (const std::exception&) {
            fail(Errc::invalid_argument, "bad modulus coefficient '" + tok + "'");
        }
    }
    return out;
}

Field make_field(std::uint32_t p, std::uint32_t n, const std::string& modulus) {
    if (modulus.empty()) return Field(p, n);
    return Field(p, n, parse_modulus(modulus));
}

Elem parse_elem(const Field& F, std::int64_t raw, const char* what) {
    if (raw < 0) return F.from_int(raw);
    if (std::uint64_t(raw) >= F.q())
        fail(Errc::invalid_argument, std::string(what) + " = " + std::to_string(raw) + " out of range");
    return static_cast<Elem>(raw);
}

struct FnArgs {
    std::string fn;
    std::string poly;
    std::string lut_path;
    std::uint64_t k = 1;
    std::int64_t u = 0;
    std::uint64_t d = 0;
    std::uint32_t s = 0;
};

void add_fn_options(CLI::App* cmd, FnArgs& args) {
    cmd->add_option("--fn", args.fn,
                    "named family: identity|inverse|modified-inverse|f1..f6|binomial|switch");
    cmd->add_option("--poly", args.poly, "polynomial terms 'coeff:exp[,coeff:exp...]'");
    cmd->add_option("--lut", args.lut_path, "LUT file (text format; implies the field)");
    cmd->add_option("--u", args.u, "binomial coefficient u");
    cmd->add_option("--d", args.d, "switch monomial exponent d");
    cmd->add_option("--s", args.s, "switch generator power s");
    cmd->add_option("--k", args.k, "f5 parameter k")->default_val(1);
}

FnSpec resolve_spec(const Field& F, const FnArgs& args) {
    if (!args.fn.empty()) {
        const auto fam = family_from_name(args.fn);
        if (!fam) fail(Errc::invalid_argument, "unknown function family '" + args.fn + "'");
        CatalogParams params;
        params.k = args.k;
        params.u = args.u == 0 ? 0 : parse_elem(F, args.u, "u");
        params.d = args.d;
        params.s = args.s;
        return catalog(F, *fam, params);
    }
    if (!args.poly.empty()) {
        std::vector<PolyTerm> terms;
        std::stringstream ss(args.poly);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos)
                fail(Errc::invalid_argument, "bad poly term '" + tok + "', expected coeff:exp");
            try {
                const std::int64_t coeff = std::stoll(tok.substr(0, colon));
                const std::uint64_t exp = std::stoull(tok.substr(colon + 1));
                terms.push_back({parse_elem(F, coeff, "coefficient"), exp});
            } catch (const Error&) {
                throw;
            } catch (const std::exception&) {
                fail(Errc::invalid_argument, "bad poly term '" + tok + "'");
            }
        }
        return FnSpec::poly(std::move(terms));
    }
    fail(Errc::invalid_argument, "pick a function with --fn, --poly or --lut");
}

// Field + function from either (--p, --n, selector) or a LUT file.
FnTable resolve_table(std::uint32_t p, std::uint32_t n, const std::string& modulus,
                      const FnArgs& args) {
    const int selectors = int(!args.fn.empty()) + int(!args.poly.empty()) + int(!args.lut_path.empty());
    if (selectors != 1)
        fail(Errc::invalid_argument, "exactly one of --fn, --poly, --lut is required");
    if (!args.lut_path.empty()) {
        if (p != 0 || n != 0)
            fail(Errc::invalid_argument, "--lut carries its own field; drop --p/--n");
        std::ifstream in(args.lut_path);
        if (!in) fail(Errc::parse_error, "cannot open '" + args.lut_path + "'");
        return read_lut_text(in);
    }
    if (p == 0 || n == 0) fail(Errc::invalid_argument, "--p and --n are required");
    const Field F = make_field(p, n, modulus);
    return materialize(F, resolve_spec(F, args));
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) fail(Errc::invalid_argument, "cannot open output file '" + path + "'");
    return file;
}

void cmd_field_info(std::uint32_t p, std::uint32_t n, const std::string& modulus,
                    const std::string& format, const std::string& out_path) {
    const Field F = make_field(p, n, modulus);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    const int chi_m3 = F.chi(F.from_int(-3));
    const int chi_5 = F.chi(F.from_int(5));
    if (format == "json") {
        json j;
        j["p"] = F.p();
        j["n"] = F.n();
        j["q"] = F.q();
        j["modulus"] = F.modulus();
        j["primitive_element"] = F.primitive_element();
        j["chi(-3)"] = chi_m3;
        j["chi(5)"] = chi_5;
        j["q_mod_3"] = F.q() % 3;
        j["q_mod_4"] = F.q() % 4;
        out << j.dump() << "\n";
        return;
    }
    out << "F_" << F.p();
    if (F.n() > 1) out << "^" << F.n();
    out << "  (q = " << F.q() << ")\n";
    out << "modulus coefficients (c0..cn): ";
    for (std::size_t i = 0; i < F.modulus().size(); ++i) out << (i ? " " : "") << F.modulus()[i];
    out << "\n";
    out << "primitive element: " << F.primitive_element() << "\n";
    out << "chi(-3) = " << (chi_m3 > 0 ? "+1" : chi_m3 < 0 ? "-1" : "0") << "\n";
    out << "chi(5)  = " << (chi_5 > 0 ? "+1" : chi_5 < 0 ? "-1" : "0") << "\n";
    out << "q mod 3 = " << F.q() % 3 << "\n";
    out << "q mod 4 = " << F.q() % 4 << "\n";
}

void cmd_fn_eval(std::uint32_t p, std::uint32_t n, const std::string& modulus, const FnArgs& args,
                 std::optional<std::int64_t> x, const std::string& out_path) {
    const FnTable t = resolve_table(p, n, modulus, args);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (x) {
        const Elem xe = parse_elem(t.field, *x, "x");
        out << t.lut[xe] << "\n";
        return;
    }
    write_lut_text(out, t);
}

void cmd_table(const std::string& kind, std::uint32_t p, std::uint32_t n,
               const std::string& modulus, const FnArgs& args, std::optional<std::int64_t> c_raw,
               const std::string& format, const std::string& out_path, const TableOptions& topts) {
    const FnTable t = resolve_table(p, n, modulus, args);
    const Field& F = t.field;
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);

    CountTable table;
    if (kind == "bct") {
        if (c_raw) fail(Errc::invalid_argument, "--c applies to cddt only");
        table = bct(t, topts);
    } else if (kind == "ddt") {
        if (c_raw) fail(Errc::invalid_argument, "ddt is the c = 1 table; use cddt for other c");
        table = cddt(t, 1, topts);
    } else {
        if (!c_raw) fail(Errc::invalid_argument, "cddt needs --c");
        table = cddt(t, parse_elem(F, *c_raw, "c"), topts);
    }
    const UniformityResult u = uniformity(table);

    std::optional<Spectrum> spec;
    if (t.power_exponent)
        spec = table.kind == CountTable::Kind::bct ? boomerang_spectrum_power(t)
                                                   : cdiff_spectrum_power(t, table.c);
    if (format == "json") {
        out << table_summary_json(table, u, spec ? &*spec : nullptr) << "\n";
        return;
    }
    if (format == "csv") {
        write_csv(out, table);
        out << "# max=" << u.value << " classification=" << u.classification() << "\n";
        return;
    }
    out << "kind=" << kind << " q=" << F.q();
    if (table.kind == CountTable::Kind::cddt) out << " c=" << table.c;
    out << "\n";
    out << "max=" << u.value << " (" << u.classification() << "), witnesses attaining it: "
        << u.witness_count << "\n";
    if (spec) out << "a=1 row spectrum: " << spectrum_brace_text(*spec) << "\n";
}

void cmd_spectrum(const std::string& kind, std::uint32_t p, std::uint32_t n,
                  const std::string& modulus, const FnArgs& args, std::optional<std::int64_t> c_raw,
                  const std::string& format, const std::string& out_path) {
    const FnTable t = resolve_table(p, n, modulus, args);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    Spectrum spec;
    Elem c = 1;
    if (kind == "bct") {
        if (c_raw) fail(Errc::invalid_argument, "--c applies to cddt only");
        spec = boomerang_spectrum_power(t);
    } else {
        if (kind == "cddt" && !c_raw) fail(Errc::invalid_argument, "cddt needs --c");
        c = c_raw ? parse_elem(t.field, *c_raw, "c") : 1;
        spec = cdiff_spectrum_power(t, c);
    }
    if (format == "json") {
        json j;
        j["kind"] = kind;
        if (kind != "bct") j["c"] = c;
        j["q"] = t.field.q();
        j["spectrum"] = spectrum_to_json(spec);
        out << j.dump() << "\n";
        return;
    }
    out << spectrum_brace_text(spec) << "\n";
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> parse_fields(const std::string& text) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            fail(Errc::invalid_argument, "bad field '" + tok + "', expected p:n");
        try {
            out.emplace_back(std::stoul(tok.substr(0, colon)), std::stoul(tok.substr(colon + 1)));
        } catch (const std::exception&) {
            fail(Errc::invalid_argument, "bad field '" + tok + "'");
        }
    }
    if (out.empty()) fail(Errc::invalid_argument, "--fields must name at least one p:n");
    return out;
}

int cmd_verify(const std::string& theorem, const std::string& fields_text,
               const std::string& modulus, const std::string& format, const std::string& out_path,
               const VerifyOptions& opts) {
    std::vector<TheoremId> ids;
    if (theorem == "all") {
        ids.assign(std::begin(kAllTheorems), std::end(kAllTheorems));
    } else if (auto id = theorem_from_name(theorem)) {
        ids.push_back(*id);
    } else {
        fail(Errc::invalid_argument, "unknown theorem id '" + theorem + "'");
    }
    const auto field_params = parse_fields(fields_text);
    if (!modulus.empty() && field_params.size() != 1)
        fail(Errc::invalid_argument, "--modulus needs exactly one field");

    std::vector<Field> fields;
    for (const auto& [p, n] : field_params) fields.push_back(make_field(p, n, modulus));

    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    bool any_fail = false;
    for (TheoremId id : ids) {
        for (const Field& F : fields) {
            for (const auto& report : run_theorem(id, F, opts)) {
                any_fail = any_fail || report.status == Status::fail;
                if (format == "text")
                    out << report_text_line(report) << "\n";
                else
                    out << report_to_json(report).dump() << "\n";
            }
        }
    }
    return any_fail ? 1 : 0;
}

void cmd_search_switches(std::uint32_t p, std::uint32_t n, const std::string& modulus,
                         const std::string& d_text, const std::string& s_text,
                         const std::string& format, const std::string& out_path,
                         const VerifyOptions& opts) {
    const Field F = make_field(p, n, modulus);
    auto parse_range = [](const std::string& text) -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
        if (text.empty()) return std::nullopt;
        try {
            const auto colon = text.find(':');
            if (colon == std::string::npos) {
                const std::uint64_t v = std::stoull(text);
                return std::make_pair(v, v);
            }
            return std::make_pair(std::stoull(text.substr(0, colon)),
                                  std::stoull(text.substr(colon + 1)));
        } catch (const std::exception&) {
            fail(Errc::invalid_argument, "bad range '" + text + "', expected lo[:hi]");
        }
    };
    const auto d_range = parse_range(d_text);
    std::optional<std::pair<std::uint32_t, std::uint32_t>> s_range;
    if (auto s64 = parse_range(s_text))
        s_range = std::make_pair(static_cast<std::uint32_t>(s64->first),
                                 static_cast<std::uint32_t>(s64->second));

    const auto rows = search_du_preserving_switches(F, d_range, s_range, opts);
    std::ofstream file;
    std::ostream& out = open_output(file, out_path);
    if (format == "json") {
        json j = json::array();
        for (const auto& row : rows)
            j.push_back({{"d", row.d},
                         {"s", row.s},
                         {"du", row.du},
                         {"is_permutation", row.is_permutation},
                         {"convention_independent", row.s == 0}});
        out << j.dump() << "\n";
        return;
    }
    out << "d,s,du,is_permutation,convention_independent\n";
    for (const auto& row : rows)
        out << row.d << "," << row.s << "," << row.du << "," << (row.is_permutation ? 1 : 0) << ","
            << (row.s == 0 ? 1 : 0) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"differential / boomerang uniformity tables over F_{p^n}, p odd"};
    app.require_subcommand(1);
    int rc = 0;

    TableOptions topts;
    VerifyOptions vopts;
    topts.max_q = vopts.max_q = default_max_q();

    // field-info
    auto* fi = app.add_subcommand("field-info", "field parameters and theorem-selection characters");
    std::uint32_t fi_p = 0, fi_n = 0;
    std::string fi_modulus, fi_format = "text", fi_out;
    fi->add_option("p", fi_p, "characteristic")->required();
    fi->add_option("n", fi_n, "degree")->required();
    fi->add_option("--modulus", fi_modulus, "modulus c0,c1,...,cn");
    fi->add_option("--format", fi_format)->check(CLI::IsMember({"text", "json"}));
    fi->add_option("-o,--output", fi_out);
    fi->callback([&] { cmd_field_info(fi_p, fi_n, fi_modulus, fi_format, fi_out); });

    // fn-eval
    auto* fe = app.add_subcommand("fn-eval", "evaluate a function or dump its LUT");
    std::uint32_t fe_p = 0, fe_n = 0;
    std::string fe_modulus, fe_out;
    FnArgs fe_args;
    std::int64_t fe_x = 0;
    fe->add_option("--p", fe_p);
    fe->add_option("--n", fe_n);
    fe->add_option("--modulus", fe_modulus);
    add_fn_options(fe, fe_args);
    auto* fe_x_opt = fe->add_option("--x", fe_x, "evaluate at a single point");
    fe->add_option("-o,--output", fe_out);
    fe->callback([&] {
        cmd_fn_eval(fe_p, fe_n, fe_modulus, fe_args,
                    fe_x_opt->count() ? std::optional<std::int64_t>(fe_x) : std::nullopt, fe_out);
    });

    // table
    auto* tb = app.add_subcommand("table", "full c-DDT / DDT / BCT with uniformity summary");
    std::string tb_kind, tb_modulus, tb_format = "csv", tb_out;
    std::uint32_t tb_p = 0, tb_n = 0;
    FnArgs tb_args;
    std::int64_t tb_c = 0;
    tb->add_option("kind", tb_kind)->required()->check(CLI::IsMember({"ddt", "cddt", "bct"}));
    tb->add_option("--p", tb_p);
    tb->add_option("--n", tb_n);
    tb->add_option("--modulus", tb_modulus);
    add_fn_options(tb, tb_args);
    auto* tb_c_opt = tb->add_option("--c", tb_c, "c value (negative means -c mod p)");
    tb->add_option("--format", tb_format)->check(CLI::IsMember({"csv", "json", "text"}));
    tb->add_option("-o,--output", tb_out);
    tb->add_option("--workers", topts.workers);
    tb->add_option("--cap", topts.max_q, "largest allowed q");
    tb->callback([&] {
        cmd_table(tb_kind, tb_p, tb_n, tb_modulus, tb_args,
                  tb_c_opt->count() ? std::optional<std::int64_t>(tb_c) : std::nullopt, tb_format,
                  tb_out, topts);
    });

    // spectrum
    auto* sp = app.add_subcommand("spectrum", "a = 1 row spectrum of a power map");
    std::string sp_kind, sp_modulus, sp_format = "text", sp_out;
    std::uint32_t sp_p = 0, sp_n = 0;
    FnArgs sp_args;
    std::int64_t sp_c = 0;
    sp->add_option("kind", sp_kind)->required()->check(CLI::IsMember({"ddt", "cddt", "bct"}));
    sp->add_option("--p", sp_p);
    sp->add_option("--n", sp_n);
    sp->add_option("--modulus", sp_modulus);
    add_fn_options(sp, sp_args);
    auto* sp_c_opt = sp->add_option("--c", sp_c);
    sp->add_option("--format", sp_format)->check(CLI::IsMember({"text", "json"}));
    sp->add_option("-o,--output", sp_out);
    sp->callback([&] {
        cmd_spectrum(sp_kind, sp_p, sp_n, sp_modulus, sp_args,
                     sp_c_opt->count() ? std::optional<std::int64_t>(sp_c) : std::nullopt, sp_format,
                     sp_out);
    });

    // verify
    auto* vf = app.add_subcommand("verify", "check closed forms against brute force");
    std::string vf_theorem, vf_fields, vf_modulus, vf_format = "json", vf_out;
    vf->add_option("theorem", vf_theorem, "theorem id or 'all'")->required();
    vf->add_option("--fields", vf_fields, "field list p:n[,p:n...]")->required();
    vf->add_option("--modulus", vf_modulus, "modulus override (single field only)");
    vf->add_option("--format", vf_format)->check(CLI::IsMember({"json", "text"}));
    vf->add_option("-o,--output", vf_out);
    vf->add_option("--workers", vopts.workers);
    vf->add_option("--cap", vopts.max_q, "largest allowed q");
    vf->add_option("--counterexample-cap", vopts.counterexample_cap);
    vf->add_option("--trials", vopts.switch_trials, "randomized switch-bound trials");
    vf->add_option("--seed", vopts.switch_seed);
    vf->callback([&] { rc = cmd_verify(vf_theorem, vf_fields, vf_modulus, vf_format, vf_out, vopts); });

    // search-switches
    auto* ss = app.add_subcommand("search-switches",
                                  "DU-preserving permutations X^{q-2} + Tr(g^s X^d)");
    std::uint32_t ss_p = 0, ss_n = 0;
    std::string ss_modulus, ss_d, ss_s, ss_format = "csv", ss_out;
    ss->add_option("p", ss_p)->required();
    ss->add_option("n", ss_n)->required();
    ss->add_option("--modulus", ss_modulus);
    ss->add_option("--d", ss_d, "d range lo[:hi], default 0:q-2");
    ss->add_option("--s", ss_s, "s range lo[:hi], default 0:p-1");
    ss->add_option("--format", ss_format)->check(CLI::IsMember({"csv", "json"}));
    ss->add_option("-o,--output", ss_out);
    ss->add_option("--cap", vopts.max_q, "largest allowed q");
    ss->callback([&] {
        cmd_search_switches(ss_p, ss_n, ss_modulus, ss_d, ss_s, ss_format, ss_out, vopts);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return errc_exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
