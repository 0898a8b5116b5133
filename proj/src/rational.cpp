#include "orbi/rational.hpp"

#include <cctype>
#include <cstdlib>

namespace orbi {

namespace {

std::int64_t parse_int(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational: empty integer field");
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("Rational: bad integer '" + s + "'");
    return v;
}

}  // namespace

Rational Rational::parse(const std::string& in) {
    std::string s;
    for (char c : in)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("Rational: empty string");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        std::int64_t p = parse_int(s.substr(0, slash));
        std::int64_t q = parse_int(s.substr(slash + 1));
        return Rational(p, q);
    }

    // Finite decimal with optional exponent: m.f e k  ->  mf / 10^(|f| - k)
    std::string mant = s;
    int expo = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
        mant = s.substr(0, e);
        expo = static_cast<int>(parse_int(s.substr(e + 1)));
    }
    std::string digits = mant;
    int frac_digits = 0;
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        digits = mant.substr(0, dot) + mant.substr(dot + 1);
        frac_digits = static_cast<int>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("Rational: bad number '" + in + "'");
    std::int64_t m = parse_int(digits);
    int shift = expo - frac_digits;
    Rational r(m);
    Rational ten(10);
    for (int i = 0; i < shift; ++i) r *= ten;
    for (int i = 0; i < -shift; ++i) r /= ten;
    return r;
}

}  // namespace orbi
