#pragma once

#include <cstdint>
#include <string>

namespace hsp {

// Variable kinds, in serialization order: coordinates z[i,j], symbols xi[i,j],
// the auxiliary indeterminate u, the character parameter s, and derivative
// placeholders d[i,j] used by the Weyl module's normal form.
enum class VarKind : std::uint32_t { Z = 0, XI = 1, U = 2, S = 3, D = 4 };

// Packed id: kind in the top bits, then i, then j. Numeric order therefore
// coincides with (kind, i, j) lexicographic order, which is the total order
// used everywhere (term ordering, serialization).
using VariableId = std::uint32_t;

constexpr VariableId make_var(VarKind k, std::uint32_t i, std::uint32_t j) {
  return (static_cast<std::uint32_t>(k) << 28) | (i << 14) | j;
}

constexpr VariableId var_z(std::uint32_t i, std::uint32_t j) { return make_var(VarKind::Z, i, j); }
constexpr VariableId var_xi(std::uint32_t i, std::uint32_t j) { return make_var(VarKind::XI, i, j); }
constexpr VariableId var_u() { return make_var(VarKind::U, 0, 0); }
constexpr VariableId var_s() { return make_var(VarKind::S, 0, 0); }
constexpr VariableId var_d(std::uint32_t i, std::uint32_t j) { return make_var(VarKind::D, i, j); }

constexpr VarKind var_kind(VariableId v) { return static_cast<VarKind>(v >> 28); }
constexpr std::uint32_t var_i(VariableId v) { return (v >> 14) & 0x3fffu; }
constexpr std::uint32_t var_j(VariableId v) { return v & 0x3fffu; }

std::string format_variable(VariableId v);
VariableId parse_variable(const std::string& text);

}  // namespace hsp
