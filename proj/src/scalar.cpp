#include "flexcert/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace flexcert {

Scalar make_scalar(long numerator, long denominator) {
    if (denominator == 0) throw std::invalid_argument("zero denominator");
    Scalar value(numerator, denominator);
    value.canonicalize();
    return value;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw std::invalid_argument("not a rational literal: \"" + std::string(text) + "\"");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    if (negative) n = -n;
    Scalar value(n, d);
    value.canonicalize();
    return value;
}

std::string format_scalar(const Scalar& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace flexcert
