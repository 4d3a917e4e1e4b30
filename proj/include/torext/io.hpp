#pragma once

#include <string>

#include "torext/resolution.hpp"

namespace torext {

// `ring p=101 vars=x1,x2,x3;` — the ring declaration grammar
Ring parse_ring_decl(const std::string& text);
// flag form `p=101,x1..x3` or `p=101,x1,x2,x3`
Ring parse_ring_flag(const std::string& text);

// standard infix with + - * ^ and parentheses
Polynomial parse_polynomial(const std::string& text, const Ring* R);

std::vector<Polynomial> parse_poly_list(const std::string& text, const Ring* R);

// rows separated by ';', entries by ',', e.g. "[[a,b,c],[b,c,a]]" or "a,b,c;b,c,a"
GradedMap parse_matrix(const std::string& text, const Ring* R);

// Betti table in the displayed layout, plus machine form
std::string betti_json(const BettiTable& t, int cols = -1);
std::string dims_json(const GradedDims& d);

}  // namespace torext
