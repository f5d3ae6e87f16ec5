#include "run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace hypzero::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
    text = trim(text);
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
        throw UsageError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
    return value;
}

// Unsigned decimal "12.5e-3" without sign, exactly.
mpq_class parse_decimal(std::string_view s) {
    std::size_t i = 0;
    std::string digits;
    long scale = 0;
    bool any = false;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, any = true) digits += s[i];
    if (i < s.size() && s[i] == '.') {
        for (++i; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i, any = true) {
            digits += s[i];
            ++scale;
        }
    }
    if (!any) throw UsageError("invalid number: '" + std::string(s) + "'");
    long exponent = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        std::string_view exp = s.substr(i + 1);
        if (!exp.empty() && exp.front() == '+') exp.remove_prefix(1);
        exponent = parse_number<long>(exp, "exponent");
        i = s.size();
    }
    if (i != s.size()) throw UsageError("invalid number: '" + std::string(s) + "'");
    if (exponent > 10000 || exponent < -10000) throw UsageError("exponent out of range: '" + std::string(s) + "'");
    mpz_class num(digits, 10);
    mpz_class ten_pow;
    const long e = exponent - scale;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    mpq_class q = e < 0 ? mpq_class(num, ten_pow) : mpq_class(num * ten_pow);
    q.canonicalize();
    return q;
}

mpq_class parse_signed_decimal(std::string_view s) {
    s = trim(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const mpq_class q = parse_decimal(s);
    return negative ? mpq_class(-q) : q;
}

// Shortest representation that round-trips.
std::string format_double(double x) {
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string join(const std::vector<int>& ns) {
    std::string s;
    for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? "," : "") + std::to_string(ns[i]);
    return s;
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string serialize_fields(const RunConfig& c, bool with_environment) {
    std::ostringstream os;
    os << "command = " << c.command << '\n';
    os << "n_list = " << join(c.n_list) << '\n';
    os << "precision_bits = " << c.precision_bits << '\n';
    if (with_environment) os << "out = " << c.out.generic_string() << '\n';
    os << "theta_grid = " << c.theta_grid << '\n';
    os << "steps = " << c.steps << '\n';
    os << "path_tol = " << format_double(c.path_tol) << '\n';
    if (with_environment) os << "workers = " << c.workers << '\n';
    os << "z = " << c.z << '\n';
    os << "kind = " << c.kind << '\n';
    os << "res = " << c.res << '\n';
    return os.str();
}

} // namespace

PrecisionConfig RunConfig::precision() const {
    PrecisionConfig cfg;
    cfg.bits = precision_bits;
    cfg.max_bits = std::max<Bits>(cfg.max_bits, precision_bits);
    return cfg;
}

std::string RunConfig::serialize() const { return serialize_fields(*this, true); }

std::string RunConfig::content_hash() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(serialize_fields(*this, false))));
    return buf;
}

std::filesystem::path RunConfig::run_directory() const { return out / (command + "-" + content_hash()); }

void RunConfig::apply(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw UsageError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key == "command") command = value;
        else if (key == "n") n_list = {parse_number<int>(value, "n")};
        else if (key == "n_list") n_list = value.empty() ? std::vector<int>{} : parse_n_list(value);
        else if (key == "n_range") n_list = parse_n_range(value);
        else if (key == "precision_bits") precision_bits = parse_number<long>(value, "precision_bits");
        else if (key == "out") out = std::string(value);
        else if (key == "theta_grid") theta_grid = parse_number<int>(value, "theta_grid");
        else if (key == "steps") steps = parse_number<int>(value, "steps");
        else if (key == "path_tol") path_tol = parse_number<double>(value, "path_tol");
        else if (key == "workers") workers = parse_number<unsigned>(value, "workers");
        else if (key == "z") z = value;
        else if (key == "kind") kind = value;
        else if (key == "res") res = parse_number<int>(value, "res");
        else throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
}

std::vector<int> parse_n_range(std::string_view text) {
    text = trim(text);
    const std::size_t dots = text.find("..");
    if (dots == std::string_view::npos) throw UsageError("n-range must look like a..b");
    const int a = parse_number<int>(text.substr(0, dots), "n-range start");
    const int b = parse_number<int>(text.substr(dots + 2), "n-range end");
    if (a < 1 || b < a) throw UsageError("n-range needs 1 <= a <= b");
    std::vector<int> ns;
    for (int n = a; n <= b; ++n) ns.push_back(n);
    return ns;
}

std::vector<int> parse_n_list(std::string_view text) {
    std::vector<int> ns;
    text = trim(text);
    if (text.empty()) throw UsageError("empty n-list");
    while (true) {
        const std::size_t comma = text.find(',');
        ns.push_back(parse_number<int>(text.substr(0, comma), "n-list item"));
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return ns;
}

mpq_class parse_rational(std::string_view text) {
    text = trim(text);
    const std::size_t slash = text.find('/');
    if (slash == std::string_view::npos) return parse_signed_decimal(text);
    const mpq_class den = parse_signed_decimal(text.substr(slash + 1));
    if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    mpq_class q = parse_signed_decimal(text.substr(0, slash)) / den;
    q.canonicalize();
    return q;
}

RationalComplex parse_complex(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw UsageError("empty complex literal");

    // The split is the last sign that is neither leading nor part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i)
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E' && s[i - 1] != '/') split = i;

    auto imaginary = [](std::string_view part) {
        part.remove_suffix(1);
        if (part.empty() || part == "+") return mpq_class(1);
        if (part == "-") return mpq_class(-1);
        return parse_rational(part);
    };

    const std::string_view sv(s);
    if (s.back() != 'i') {
        if (split != std::string::npos) throw UsageError("invalid complex literal '" + s + "'");
        return {parse_rational(sv), mpq_class(0)};
    }
    if (split == std::string::npos) return {mpq_class(0), imaginary(sv)};
    return {parse_rational(sv.substr(0, split)), imaginary(sv.substr(split))};
}

} // namespace hypzero::cli
