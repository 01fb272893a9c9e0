#pragma once

#include <optional>

#include "heintze/heintze.hpp"
#include "heintze/selfcheck.hpp"

namespace support {

/// Code of the heintze::Error thrown by f, or nothing if f returns normally.
template <class F>
std::optional<heintze::ErrorCode> error_code(F&& f) {
  try {
    f();
  } catch (const heintze::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline heintze::Vector vec(std::initializer_list<long> xs) {
  heintze::Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline heintze::Subspace span(std::size_t n, std::initializer_list<std::size_t> basis_indices) {
  std::vector<heintze::Vector> gens;
  for (auto i : basis_indices) gens.push_back(heintze::unit_vector(n, i));
  return heintze::Subspace::span(n, gens);
}

/// Heisenberg algebra with the derivation X -> X, Y -> X + Y, Z -> 2Z
/// (columns are images).
inline heintze::HeintzeData heisenberg_jordan() { return heintze::corpus::heisenberg_block(); }

}  // namespace support
