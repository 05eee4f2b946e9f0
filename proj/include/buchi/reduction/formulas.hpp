#pragma once

// Text renderings of the positive-existential definitions of squaring and
// multiplication: F (second-difference gadget), G (F twisted by z), H
// (multiplication from two squarings) and Psi (squaring on an n-Büchi
// surface). Printing only; no semantics is attached.

#include "buchi/exact.hpp"

#include <optional>
#include <string>
#include <vector>

namespace buchi::reduction {

enum class FormulaMode { F, G, H, Psi };

/// "F", "G", "H", "Psi" (case-insensitive).
std::optional<FormulaMode> parse_formula_mode(const std::string& name);

/// Every definition the mode depends on comes first, one per line, followed
/// by '#' note lines. F, G and H use M bound gadget variables; Psi uses the
/// surface with the given deltas δ_2..δ_n. Throws DomainError for M < 3 or
/// invalid deltas.
std::string print_formulas(FormulaMode mode, int M, const std::vector<Rat>& deltas = {});

}  // namespace buchi::reduction
