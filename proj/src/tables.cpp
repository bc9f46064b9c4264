#include "oddsbox/tables.hpp"

#include <functional>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace oddsbox {

namespace {

void check_cap(const FnTable& t, const TableOptions& opts) {
    if (t.field.q() > opts.max_q)
        fail(Errc::size_cap_exceeded, "q = " + std::to_string(t.field.q()) +
                                          " exceeds the table cap " + std::to_string(opts.max_q));
}

void for_each_row(std::uint64_t q, unsigned workers, const std::function<void(Elem)>& body) {
    if (workers <= 1 || q < 2 * workers) {
        for (Elem a = 0; a < q; ++a) body(a);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (Elem a = w; a < q; a += workers) body(a);
        });
    }
    for (auto& th : pool) th.join();
}

// cf must hold c * f(x) for all x.
void cddt_row_into(const FnTable& t, const std::vector<Elem>& cf, Elem a, std::int64_t* row) {
    const Field& F = t.field;
    const Elem q = static_cast<Elem>(F.q());
    for (Elem x = 0; x < q; ++x)
        ++row[F.sub(t.lut[F.add(x, a)], cf[x])];
}

void bct_row_into(const FnTable& t, Elem a, std::int64_t* row) {
    const Field& F = t.field;
    const Elem q = static_cast<Elem>(F.q());
    std::vector<Elem> shifted(q);
    for (Elem x = 0; x < q; ++x) shifted[x] = t.lut[F.add(x, a)];
    for (Elem x = 0; x < q; ++x) {
        const Elem fx = t.lut[x], sx = shifted[x];
        for (Elem y = 0; y < q; ++y) {
            const Elem b = F.sub(fx, t.lut[y]);
            if (b == F.sub(sx, shifted[y])) ++row[b];
        }
    }
}

std::vector<Elem> scaled_lut(const FnTable& t, Elem c) {
    std::vector<Elem> cf(t.lut.size());
    for (std::size_t x = 0; x < t.lut.size(); ++x) cf[x] = t.field.mul(c, t.lut[x]);
    return cf;
}

Spectrum histogram(const std::vector<std::int64_t>& row, Spectrum::Kind kind, bool skip_b0) {
    Spectrum s{kind, {}};
    for (std::size_t b = skip_b0 ? 1 : 0; b < row.size(); ++b) ++s.multiplicities[row[b]];
    return s;
}

void require_power_map(const FnTable& t) {
    if (!t.power_exponent)
        fail(Errc::not_a_power_map, "the a = 1 row shortcut needs a power-map table");
}

} // namespace

std::string UniformityResult::classification() const {
    if (value == 1) return "PcN";
    if (value == 2) return "APcN";
    return std::to_string(value);
}

std::int64_t Spectrum::total() const {
    std::int64_t sum = 0;
    for (const auto& [i, m] : multiplicities) sum += m;
    return sum;
}

std::int64_t Spectrum::weighted_total() const {
    std::int64_t sum = 0;
    for (const auto& [i, m] : multiplicities) sum += i * m;
    return sum;
}

std::int64_t cddt_entry(const FnTable& t, Elem c, Elem a, Elem b) {
    const Field& F = t.field;
    std::int64_t count = 0;
    const Elem q = static_cast<Elem>(F.q());
    for (Elem x = 0; x < q; ++x)
        if (F.sub(t.lut[F.add(x, a)], F.mul(c, t.lut[x])) == b) ++count;
    return count;
}

std::vector<std::int64_t> cddt_row(const FnTable& t, Elem c, Elem a) {
    std::vector<std::int64_t> row(t.field.q(), 0);
    cddt_row_into(t, scaled_lut(t, c), a, row.data());
    return row;
}

CountTable cddt(const FnTable& t, Elem c, const TableOptions& opts) {
    check_cap(t, opts);
    const std::uint64_t q = t.field.q();
    CountTable table{CountTable::Kind::cddt, c, q, std::vector<std::int64_t>(q * q, 0)};
    const std::vector<Elem> cf = scaled_lut(t, c);
    for_each_row(q, opts.workers,
                 [&](Elem a) { cddt_row_into(t, cf, a, table.counts.data() + std::size_t(a) * q); });
    return table;
}

CountTable ddt(const FnTable& t, const TableOptions& opts) { return cddt(t, 1, opts); }

std::int64_t bct_entry(const FnTable& t, Elem a, Elem b) {
    const Field& F = t.field;
    const Elem q = static_cast<Elem>(F.q());
    std::int64_t count = 0;
    for (Elem x = 0; x < q; ++x) {
        const Elem fx = t.lut[x], sx = t.lut[F.add(x, a)];
        for (Elem y = 0; y < q; ++y)
            if (F.sub(fx, t.lut[y]) == b && F.sub(sx, t.lut[F.add(y, a)]) == b) ++count;
    }
    return count;
}

std::vector<std::int64_t> bct_row(const FnTable& t, Elem a) {
    std::vector<std::int64_t> row(t.field.q(), 0);
    bct_row_into(t, a, row.data());
    return row;
}

CountTable bct(const FnTable& t, const TableOptions& opts) {
    check_cap(t, opts);
    const std::uint64_t q = t.field.q();
    CountTable table{CountTable::Kind::bct, 1, q, std::vector<std::int64_t>(q * q, 0)};
    for_each_row(q, opts.workers,
                 [&](Elem a) { bct_row_into(t, a, table.counts.data() + std::size_t(a) * q); });
    return table;
}

UniformityResult uniformity(const CountTable& table) {
    const Elem q = static_cast<Elem>(table.q);
    const bool skip_a0 = table.kind == CountTable::Kind::bct ||
                         (table.kind == CountTable::Kind::cddt && table.c == 1);
    const bool skip_b0 = table.kind == CountTable::Kind::bct;

    UniformityResult result;
    for (Elem a = skip_a0 ? 1 : 0; a < q; ++a) {
        for (Elem b = skip_b0 ? 1 : 0; b < q; ++b) {
            const std::int64_t v = table.at(a, b);
            if (v > result.value) {
                result.value = v;
                result.witnesses.clear();
                result.witness_count = 0;
            }
            if (v == result.value) {
                ++result.witness_count;
                if (result.witnesses.size() < UniformityResult::witness_cap)
                    result.witnesses.emplace_back(a, b);
            }
        }
    }
    return result;
}

UniformityResult c_differential_uniformity(const FnTable& t, Elem c, const TableOptions& opts) {
    return uniformity(cddt(t, c, opts));
}

UniformityResult boomerang_uniformity(const FnTable& t, const TableOptions& opts) {
    return uniformity(bct(t, opts));
}

Spectrum cdiff_spectrum_power(const FnTable& t, Elem c) {
    require_power_map(t);
    return histogram(cddt_row(t, c, 1), Spectrum::Kind::cdiff, false);
}

Spectrum boomerang_spectrum_power(const FnTable& t) {
    require_power_map(t);
    return histogram(bct_row(t, 1), Spectrum::Kind::boomerang, true);
}

void write_csv(std::ostream& out, const CountTable& table) {
    out << "a,b,count\n";
    for (Elem a = 0; a < table.q; ++a)
        for (Elem b = 0; b < table.q; ++b)
            out << a << "," << b << "," << table.at(a, b) << "\n";
}

std::string table_summary_json(const CountTable& table, const UniformityResult& u,
                               const Spectrum* spectrum) {
    nlohmann::ordered_json j;
    j["kind"] = table.kind == CountTable::Kind::bct ? "bct" : (table.c == 1 ? "ddt" : "cddt");
    if (table.kind == CountTable::Kind::cddt) j["c"] = table.c;
    j["q"] = table.q;
    j["max"] = u.value;
    j["classification"] = u.classification();
    j["witness_count"] = u.witness_count;
    auto witnesses = nlohmann::ordered_json::array();
    for (const auto& [a, b] : u.witnesses) witnesses.push_back({a, b});
    j["witnesses"] = witnesses;
    if (spectrum) {
        auto spec = nlohmann::ordered_json::array();
        for (const auto& [i, m] : spectrum->multiplicities) spec.push_back({i, m});
        j["spectrum"] = spec;
    } else {
        j["spectrum"] = nullptr;
    }
    return j.dump();
}

std::string spectrum_brace_text(const Spectrum& s) {
    const char* symbol = s.kind == Spectrum::Kind::boomerang ? "v" : "w";
    std::string out = "{";
    bool first = true;
    for (const auto& [i, m] : s.multiplicities) {
        if (!first) out += ", ";
        first = false;
        out += symbol;
        out += std::to_string(i);
        out += "=";
        out += std::to_string(m);
    }
    out += "}";
    return out;
}

} // namespace oddsbox
