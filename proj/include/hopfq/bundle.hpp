#pragma once

#include <optional>
#include <string>
#include <variant>

#include "hopfq/constructions.hpp"

namespace hopfq {

/// Malformed bundle input: JSON syntax (with line and column), schema, or
/// index errors.
class BundleError : public HopfError {
 public:
  using HopfError::HopfError;
};

/// A bundle read from a file. Loading does not run any checker; an R or K
/// that fails to invert is kept as an error message so that `check` can
/// report it as a failed axiom.
template <class S>
struct LoadedBundle {
  Bundle<S> bundle;
  std::optional<std::string> rmatrix_error;
  std::optional<std::string> kmatrix_error;
  bool has_rmatrix = false;
  bool has_kmatrix = false;
};

using AnyBundle = std::variant<LoadedBundle<Rational>, LoadedBundle<Zp>>;

AnyBundle parse_bundle(const std::string& text, const std::string& name = "bundle");
AnyBundle load_bundle(const std::string& path);

/// Pretty-printed JSON with sorted keys and sparse sorted entries.
template <class S>
std::string write_bundle(const Bundle<S>& b);

extern template std::string write_bundle<Rational>(const Bundle<Rational>&);
extern template std::string write_bundle<Zp>(const Bundle<Zp>&);

}  // namespace hopfq
