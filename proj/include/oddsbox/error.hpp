#pragma once

#include <stdexcept>
#include <string>

namespace oddsbox {

enum class Errc {
    not_prime,
    even_characteristic,
    reducible_modulus,
    overflow,
    division_by_zero,
    bad_lut_length,
    cycle_entry_out_of_range,
    not_a_permutation,
    not_a_power_map,
    condition_violated,
    zero_c,
    zero_u,
    zero_alpha,
    size_cap_exceeded,
    parse_error,
    invalid_argument,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
    throw Error(code, what);
}

} // namespace oddsbox
