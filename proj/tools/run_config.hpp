#pragma once

#include "hypzero/numerics.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hypzero::cli {

/// Malformed command line or config file; maps to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    std::vector<int> n_list;
    Bits precision_bits = 128;
    std::filesystem::path out = "out";
    int theta_grid = 2048;
    int steps = 512;
    double path_tol = 1e-20;
    /// Not part of the result: excluded from the content hash.
    unsigned workers = 1;
    std::string z = "4/3";
    std::string kind = "zeros";
    int res = 201;

    PrecisionConfig precision() const;

    /// Plain `key = value` lines in a fixed key order.
    std::string serialize() const;
    /// Applies every `key = value` line of `text` on top of this config; '#' starts a comment.
    void apply(std::string_view text);
    /// FNV-1a over serialize() without `out` and `workers`, as 16 hex digits.
    std::string content_hash() const;
    /// out / "<command>-<hash>"
    std::filesystem::path run_directory() const;

    bool operator==(const RunConfig&) const = default;
};

/// "a..b" (inclusive) into a list; throws UsageError unless 1 <= a <= b.
std::vector<int> parse_n_range(std::string_view text);
/// "5,10,16" into a list; throws UsageError on empty or non-integer items.
std::vector<int> parse_n_list(std::string_view text);

/// Exact rational from "3", "-4/3", "0.25", "1.5e-3" or "3/0.5".
mpq_class parse_rational(std::string_view text);

struct RationalComplex {
    mpq_class re;
    mpq_class im;
};

/// Complex literal with exact rational parts: "4/3", "1/3+2/3i", "-1+0.5i", "2i", "-i".
RationalComplex parse_complex(std::string_view text);

} // namespace hypzero::cli
