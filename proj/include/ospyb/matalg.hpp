#pragma once

#include <map>
#include <string>
#include <vector>

#include "ospyb/scalar.hpp"

namespace ospyb {

/// Sparse square matrix over Scalar, used as the entry algebra when osp
/// generators act on a finite module. A default-constructed matrix has size 0
/// and acts as the zero of every size.
class MatAlg {
 public:
  MatAlg() = default;
  explicit MatAlg(int n) : n_(n), rows_(static_cast<std::size_t>(n)) {}
  static MatAlg identity(int n, const Scalar& s = Scalar(1));

  int size() const { return n_; }
  bool is_zero() const;
  const Scalar* find(int i, int j) const;
  Scalar at(int i, int j) const;
  void add(int i, int j, const Scalar& x);
  const std::vector<std::map<int, Scalar>>& rows() const { return rows_; }

  MatAlg operator-() const;
  MatAlg& operator+=(const MatAlg& o);
  MatAlg& operator-=(const MatAlg& o);
  friend MatAlg operator+(MatAlg a, const MatAlg& b) { return a += b; }
  friend MatAlg operator-(MatAlg a, const MatAlg& b) { return a -= b; }
  friend MatAlg operator*(const MatAlg& a, const MatAlg& b);
  friend MatAlg operator*(const Scalar& s, const MatAlg& a);
  friend bool operator==(const MatAlg& a, const MatAlg& b);

  /// Rows "i: (j, value) ..." for nonzero entries; "0" when zero.
  std::string str() const;

 private:
  void adopt(int n);
  int n_ = 0;
  std::vector<std::map<int, Scalar>> rows_;
};

}  // namespace ospyb
