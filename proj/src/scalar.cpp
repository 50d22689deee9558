#include "gkcalc/scalar.hpp"
#include <cctype>

namespace gk {

namespace {

// one signed rational term, optionally "*i"; advances pos
struct Term { mpq_class q; bool imag; };

Term parse_term(const std::string& s, size_t& pos) {
    size_t n = s.size();
    std::string num;
    bool neg = false;
    while (pos < n && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') neg = !neg;
        pos++;
    }
    if (neg) num += '-';
    // bare "i" or "-i"
    if (pos < n && s[pos] == 'i') {
        pos++;
        return {mpq_class(num == "-" ? -1 : 1), true};
    }
    bool digits = false;
    while (pos < n && (std::isdigit((unsigned char)s[pos]) || s[pos] == '/')) {
        num += s[pos++];
        digits = true;
    }
    if (!digits) throw Error("Scalar::parse: malformed number in '" + s + "'");
    bool imag = false;
    if (pos < n && s[pos] == '*') {
        pos++;
        if (pos >= n || s[pos] != 'i') throw Error("Scalar::parse: expected i after * in '" + s + "'");
        pos++;
        imag = true;
    } else if (pos < n && s[pos] == 'i') {
        pos++;
        imag = true;
    }
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    mpq_class q;
    if (q.set_str(num, 10) != 0) throw Error("Scalar::parse: bad rational '" + num + "'");
    q.canonicalize();
    return {q, imag};
}

} // namespace

Scalar Scalar::parse(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace((unsigned char)c)) s += c;
    if (s.empty()) throw Error("Scalar::parse: empty string");
    Scalar out;
    size_t pos = 0;
    bool any = false;
    while (pos < s.size()) {
        Term t = parse_term(s, pos);
        if (t.imag) out.im += t.q; else out.re += t.q;
        any = true;
    }
    if (!any) throw Error("Scalar::parse: empty string");
    return out;
}

} // namespace gk
