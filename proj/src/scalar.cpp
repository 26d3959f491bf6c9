#include "algeval/scalar.hpp"

#include <charconv>
#include <cstdlib>

#include "algeval/errors.hpp"

namespace algeval {

std::string scalar_text(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string scalar_text(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    if (body.empty()) throw ParseError("empty rational literal");

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        std::string_view num = body.substr(0, slash);
        std::string_view den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw ParseError("malformed rational literal '" + std::string(text) + "'");
        BigInt n(std::string(num), 10);
        BigInt d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        value = make_rational(std::move(n), std::move(d));
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        std::string_view whole = body.substr(0, dot);
        std::string_view frac = body.substr(dot + 1);
        if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac))
            throw ParseError("malformed decimal literal '" + std::string(text) + "'");
        BigInt n(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        BigInt d(1);
        for (size_t i = 0; i < frac.size(); ++i) d *= 10;
        value = make_rational(std::move(n), std::move(d));
    } else {
        if (!all_digits(body))
            throw ParseError("malformed rational literal '" + std::string(text) + "'");
        value = make_rational(BigInt(std::string(body), 10), BigInt(1));
    }
    if (negative) value = -value;
    return value;
}

}  // namespace algeval
