#include "xshap/rational.hpp"

#include "xshap/errors.hpp"

#include <cctype>

namespace xshap {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

bool is_rational_literal(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) return false;
    if (s.front() == '+' || s.front() == '-') s.remove_prefix(1);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        return all_digits(s.substr(0, slash)) && all_digits(s.substr(slash + 1));
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        return all_digits(s.substr(0, dot)) && all_digits(s.substr(dot + 1));
    }
    return all_digits(s);
}

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (!is_rational_literal(s)) {
        throw argument_error("not a rational literal: \"" + std::string(text) + "\"");
    }
    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num(std::string(s.substr(0, slash)));
        BigInt den(std::string(s.substr(slash + 1)));
        if (den == 0) throw argument_error("zero denominator in \"" + std::string(text) + "\"");
        value = Rational(num, den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string digits(s.substr(0, dot));
        std::string frac(s.substr(dot + 1));
        BigInt scale = 1;
        for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
        value = Rational(BigInt(digits) * scale + BigInt(frac), scale);
    } else {
        value = Rational(BigInt(std::string(s)));
    }
    return negative ? Rational(-value) : value;
}

std::string to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_decimal_string(const Rational& r, int places) {
    if (places < 0) throw argument_error("negative decimal places");
    BigInt scale = 1;
    for (int i = 0; i < places; ++i) scale *= 10;
    BigInt num = numerator(r) * scale;
    BigInt den = denominator(r);
    bool negative = num < 0;
    if (negative) num = -num;
    // round half away from zero
    BigInt q = (2 * num + den) / (2 * den);
    std::string digits = q.str();
    if (static_cast<int>(digits.size()) <= places) {
        digits.insert(0, places + 1 - digits.size(), '0');
    }
    std::string out;
    if (negative && q != 0) out += '-';
    out += digits.substr(0, digits.size() - places);
    if (places > 0) {
        out += '.';
        out += digits.substr(digits.size() - places);
    }
    return out;
}

BigInt factorial(int n) {
    if (n < 0) throw argument_error("factorial of negative number");
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace xshap
