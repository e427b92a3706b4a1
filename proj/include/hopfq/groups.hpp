#pragma once

#include <string>
#include <vector>

#include "hopfq/scalar.hpp"

namespace hopfq {

/// A finite group given by its Cayley table; element 0 need not be the identity.
class FiniteGroup {
 public:
  FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<std::vector<int>> cayley);

  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric(int n);
  /// "C<n>" or "S<n>".
  static FiniteGroup parse(const std::string& name);

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(labels_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return cayley_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::string& label(int a) const { return labels_[static_cast<std::size_t>(a)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int element_order(int a) const;
  bool is_abelian() const;

  /// Elements of a subgroup named "C<k>" (generated by the first element of
  /// order k) or the group's own name, sorted.
  std::vector<int> subgroup(const std::string& name) const;
  /// The subgroup as a group in its own right, with the inclusion.
  FiniteGroup restrict_to(const std::vector<int>& elements, std::string name) const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> cayley_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

}  // namespace hopfq
