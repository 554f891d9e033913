#pragma once

#include "etalg/pattern.hpp"

namespace etalg::detail {

int find_piece(const PatternHom& phi, int block, const Rational& t);
int find_piece_containing(const PatternHom& phi, int block, const Rational& lo, const Rational& hi);
const Cell& find_cell(const PiecePattern& piece, const Rational& t);
const Cell& find_cell_over(const PiecePattern& piece, const Rational& u, const Rational& v);

}  // namespace etalg::detail
