#pragma once

#include <sstream>
#include <string>

#include "matrix.hpp"

namespace fqlat {

// ASCII grammar shared by the CLI and test fixtures:
//   poly          := "[" int ("," int)* "]"        little-endian coefficients
//   matrix        := "[" row ("," row)* "]"        row := "[" poly ("," poly)* "]"
//   qualified     := "q=" int ";" (poly | matrix)
// e.g.  "q=2; [1,1,1]"  is  Y^2 + Y + 1  over F_2.

namespace textio {

inline void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n')) ++i;
}

inline long parse_int(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    size_t k = j;
    while (k < s.size() && isdigit(static_cast<unsigned char>(s[k]))) ++k;
    if (k == j) throw std::invalid_argument("expected integer at position " + std::to_string(i));
    long v = std::stol(s.substr(i, k - i));
    i = k;
    return v;
}

inline void expect(const std::string& s, size_t& i, char c) {
    skip_ws(s, i);
    if (i >= s.size() || s[i] != c)
        throw std::invalid_argument(std::string("expected '") + c + "'");
    ++i;
}

inline std::vector<long> parse_int_list(const std::string& s, size_t& i) {
    expect(s, i, '[');
    std::vector<long> out;
    skip_ws(s, i);
    if (i < s.size() && s[i] == ']') { ++i; return out; }
    while (true) {
        out.push_back(parse_int(s, i));
        skip_ws(s, i);
        if (i < s.size() && s[i] == ',') { ++i; continue; }
        expect(s, i, ']');
        break;
    }
    return out;
}

inline Poly poly_from_ints(const Fq& F, const std::vector<long>& cs) {
    std::vector<FqElem> v;
    for (long x : cs) {
        if (x >= 0 && x < F.q()) v.push_back(F.from_index(x));
        else v.push_back(F.of(x));
    }
    return Poly(F, std::move(v));
}

} // namespace textio

inline Poly parse_poly(const Fq& F, const std::string& s) {
    size_t i = 0;
    auto cs = textio::parse_int_list(s, i);
    textio::skip_ws(s, i);
    if (i != s.size()) throw std::invalid_argument("trailing characters in polynomial literal");
    return textio::poly_from_ints(F, cs);
}

// "q=2; [1,1,1]"
inline Poly parse_qualified_poly(const std::string& s) {
    size_t i = 0;
    textio::skip_ws(s, i);
    if (s.compare(i, 2, "q=") != 0) throw std::invalid_argument("expected q=");
    i += 2;
    long q = textio::parse_int(s, i);
    textio::expect(s, i, ';');
    Fq F = Fq::make(q);
    auto cs = textio::parse_int_list(s, i);
    return textio::poly_from_ints(F, cs);
}

inline MatR parse_matR(const Fq& F, const std::string& s) {
    size_t i = 0;
    textio::expect(s, i, '[');
    std::vector<std::vector<Poly>> rows;
    while (true) {
        textio::expect(s, i, '[');
        std::vector<Poly> row;
        textio::skip_ws(s, i);
        while (true) {
            row.push_back(textio::poly_from_ints(F, textio::parse_int_list(s, i)));
            textio::skip_ws(s, i);
            if (i < s.size() && s[i] == ',') { ++i; continue; }
            break;
        }
        textio::expect(s, i, ']');
        rows.push_back(std::move(row));
        textio::skip_ws(s, i);
        if (i < s.size() && s[i] == ',') { ++i; continue; }
        break;
    }
    textio::expect(s, i, ']');
    if (rows.empty() || rows[0].empty()) throw std::invalid_argument("empty matrix literal");
    MatR m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), Poly::zero(F));
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw std::invalid_argument("ragged matrix literal");
        for (size_t c = 0; c < rows[r].size(); ++c) m.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    }
    return m;
}

// "q=2; [[0,1],[1]]" style: a matrix whose entries are coefficient lists
inline std::pair<Fq, MatR> parse_qualified_matR(const std::string& s) {
    size_t i = 0;
    textio::skip_ws(s, i);
    if (s.compare(i, 2, "q=") != 0) throw std::invalid_argument("expected q=");
    i += 2;
    long q = textio::parse_int(s, i);
    textio::expect(s, i, ';');
    Fq F = Fq::make(q);
    return {F, parse_matR(F, s.substr(i))};
}

inline std::string poly_str(const Poly& p) {
    std::ostringstream o;
    o << '[';
    for (int i = 0; i <= p.deg(); ++i) {
        if (i) o << ',';
        o << p.coeff(i).v;
    }
    if (p.is_zero()) o << 0;
    o << ']';
    return o.str();
}

inline std::string matR_str(const MatR& m) {
    std::ostringstream o;
    o << '[';
    for (int i = 0; i < m.rows(); ++i) {
        if (i) o << ',';
        o << '[';
        for (int j = 0; j < m.cols(); ++j) {
            if (j) o << ',';
            o << poly_str(m.at(i, j));
        }
        o << ']';
    }
    o << ']';
    return o.str();
}

} // namespace fqlat
