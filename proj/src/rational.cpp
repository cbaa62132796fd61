#include "lupoly/rational.hpp"

#include "lupoly/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

namespace lupoly {

namespace {

constexpr std::int64_t kMaxDenominator = 1'000'000'000'000;

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::int64_t parse_integer(std::string_view s, std::string_view whole) {
    std::int64_t value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw InvalidInput("malformed number '" + std::string(whole) + "'");
    }
    return value;
}

std::int64_t pow10(int exponent, std::string_view whole) {
    std::int64_t out = 1;
    for (int i = 0; i < exponent; ++i) {
        out *= 10;
        if (out > kMaxDenominator) throw InvalidInput("too many digits in '" + std::string(whole) + "'");
    }
    return out;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    int exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        exponent = static_cast<int>(parse_integer(s.substr(e + 1), whole));
        s = s.substr(0, e);
    }
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string digits;
    int fraction_digits = 0;
    bool seen_point = false;
    for (char c : s) {
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) ++fraction_digits;
        } else {
            throw InvalidInput("malformed number '" + std::string(whole) + "'");
        }
    }
    if (digits.empty()) throw InvalidInput("malformed number '" + std::string(whole) + "'");
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    if (digits.size() > 15) throw InvalidInput("too many digits in '" + std::string(whole) + "'");
    Rational value(parse_integer(digits, whole), 1);
    const int scale = exponent - fraction_digits;
    if (scale >= 0) {
        value *= pow10(scale, whole);
    } else {
        value /= pow10(-scale, whole);
    }
    return negative ? -value : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw InvalidInput("empty number");
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = parse_integer(trim(s.substr(0, slash)), text);
        const auto den = parse_integer(trim(s.substr(slash + 1)), text);
        if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
        if (den > kMaxDenominator || den < -kMaxDenominator) {
            throw InvalidInput("denominator too large in '" + std::string(text) + "'");
        }
        return Rational(num, den);
    }
    return parse_decimal(s, text);
}

std::vector<Rational> parse_rational_list(std::string_view text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto end = comma == std::string_view::npos ? text.size() : comma;
        out.push_back(parse_rational(text.substr(start, end - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

double to_double(const Rational& value) {
    return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

std::string to_string(const Rational& value) {
    if (value.denominator() == 1) return std::to_string(value.numerator());
    return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::size_t exact_rank(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            const Rational factor = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= factor * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

bool solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b, std::vector<Rational>& x) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a[pivot][c] == 0) ++pivot;
        if (pivot == n) return false;
        std::swap(a[c], a[pivot]);
        std::swap(b[c], b[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const Rational factor = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
            b[r] -= factor * b[c];
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return true;
}

} // namespace lupoly
