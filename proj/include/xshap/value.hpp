#pragma once

#include "xshap/rational.hpp"

#include <string>
#include <variant>

namespace xshap {

// A domain value or model output: either an exact number or a categorical
// token. Tokens never compare equal to numbers.
class Value {
public:
    Value() : data_(Rational(0)) {}

    static Value number(Rational r) { return Value(std::move(r)); }
    static Value token(std::string t) { return Value(std::move(t)); }

    bool is_number() const { return std::holds_alternative<Rational>(data_); }
    bool is_token() const { return !is_number(); }
    bool is_integer() const {
        return is_number() && denominator(std::get<Rational>(data_)) == 1;
    }

    const Rational& num() const { return std::get<Rational>(data_); }
    const std::string& tok() const { return std::get<std::string>(data_); }

    friend bool operator==(const Value& a, const Value& b) { return a.data_ == b.data_; }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

    // Display form: numbers as "p/q" when non-integral, plain integers
    // otherwise; tokens verbatim.
    std::string str() const {
        if (is_token()) return tok();
        if (is_integer()) return numerator(num()).str();
        return to_fraction_string(num());
    }

private:
    explicit Value(Rational r) : data_(std::move(r)) {}
    explicit Value(std::string t) : data_(std::move(t)) {}

    std::variant<Rational, std::string> data_;
};

} // namespace xshap
