#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypertree.hpp"
#include "matrix.hpp"
#include "simplicial.hpp"

namespace hypertorsion {

/// Complex file: {"n": 6, "k": 2, "facets": [[1,2,3], ...]}, 1-based vertices.
inline Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("facets"))
        throw std::invalid_argument("complex JSON needs \"n\", \"k\" and \"facets\"");
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    std::vector<Simplex> facets;
    for (const auto& f : j.at("facets")) facets.emplace_back(f.get<std::vector<Vertex>>());
    return Complex(n, k, std::move(facets));
}

inline Complex read_complex(std::istream& in) { return complex_from_json(nlohmann::json::parse(in)); }

inline Complex read_complex_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_complex(in);
}

inline nlohmann::json complex_to_json(const Complex& c) {
    nlohmann::json facets = nlohmann::json::array();
    for (const auto& f : c.facets()) facets.push_back(std::vector<Vertex>(f.vertices().begin(), f.vertices().end()));
    return {{"n", c.n()}, {"k", c.k()}, {"facets", facets}};
}

/// Integers that fit in 64 bits are emitted as JSON numbers, larger ones as
/// decimal strings.
inline nlohmann::json bigint_to_json(const BigInt& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

inline nlohmann::json hypertree_to_json(const Hypertree& t) {
    auto j = complex_to_json(t.complex);
    j["degrees"] = t.degrees().degrees;
    j["torsion_order"] = bigint_to_json(t.torsion_order);
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& f : t.invariant_factors) factors.push_back(bigint_to_json(f));
    j["invariant_factors"] = factors;
    return j;
}

/// Parses "0.5", "3", "-2/7", "1e-3" exactly as a rational.
inline BigRational parse_rational(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::invalid_argument("empty number");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        BigInt num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw std::invalid_argument("malformed rational '" + text + "'");
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        BigRational q(num, den);
        q.canonicalize();
        return q;
    }
    // decimal with optional exponent
    std::size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_dot = false, any = false;
    for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
        if (s[pos] == '.') {
            if (seen_dot) throw std::invalid_argument("malformed number '" + text + "'");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
            digits.push_back(s[pos]);
            any = true;
            if (seen_dot) ++scale;
        } else {
            throw std::invalid_argument("malformed number '" + text + "'");
        }
    }
    if (!any) throw std::invalid_argument("malformed number '" + text + "'");
    if (pos < s.size()) {
        std::size_t used = 0;
        long e = std::stol(s.substr(pos + 1), &used);
        if (used != s.size() - pos - 1) throw std::invalid_argument("malformed exponent in '" + text + "'");
        scale -= e;
    }
    BigInt num(digits, 10);
    BigInt p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    BigRational q = scale >= 0 ? BigRational(num, p10) : BigRational(num * p10, 1);
    q.canonicalize();
    return neg ? BigRational(-q) : q;
}

/// Comma-separated weight list, e.g. "1,1,2" or "1/2,3,0.25".
inline std::vector<BigRational> parse_weight_list(const std::string& text) {
    std::vector<BigRational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

}  // namespace hypertorsion
