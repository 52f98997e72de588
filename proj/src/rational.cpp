#include "weylflow/rational.hpp"

#include <cctype>
#include <sstream>

namespace weylflow {

std::optional<BigRational> parse_rational(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') ++i;
    if (i == text.size()) return std::nullopt;
    bool seen_slash = false;
    std::size_t digits_before = 0, digits_after = 0;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '/') {
            if (seen_slash) return std::nullopt;
            seen_slash = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            (seen_slash ? digits_after : digits_before)++;
        } else {
            return std::nullopt;
        }
    }
    if (digits_before == 0 || (seen_slash && digits_after == 0)) return std::nullopt;
    if (seen_slash) {
        const std::string den = text.substr(text.find('/') + 1);
        if (den.find_first_not_of('0') == std::string::npos) return std::nullopt;
    }
    try {
        BigRational q(text);
        return q;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string to_string(const BigRational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

} // namespace weylflow
