#include "ospyb/matalg.hpp"

#include <stdexcept>

namespace ospyb {

MatAlg MatAlg::identity(int n, const Scalar& s) {
  MatAlg m(n);
  for (int i = 0; i < n; ++i) m.add(i, i, s);
  return m;
}

bool MatAlg::is_zero() const {
  for (const auto& r : rows_)
    if (!r.empty()) return false;
  return true;
}

const Scalar* MatAlg::find(int i, int j) const {
  if (i < 0 || i >= n_) return nullptr;
  const auto& r = rows_[static_cast<std::size_t>(i)];
  auto it = r.find(j);
  return it == r.end() ? nullptr : &it->second;
}

Scalar MatAlg::at(int i, int j) const {
  const Scalar* x = find(i, j);
  return x ? *x : Scalar();
}

void MatAlg::adopt(int n) {
  if (n_ == n || n == 0) return;
  if (n_ != 0) throw std::invalid_argument("module matrix size mismatch");
  n_ = n;
  rows_.assign(static_cast<std::size_t>(n), {});
}

void MatAlg::add(int i, int j, const Scalar& x) {
  if (x.is_zero()) return;
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("module matrix index");
  auto& r = rows_[static_cast<std::size_t>(i)];
  auto [it, fresh] = r.emplace(j, x);
  if (!fresh) {
    it->second += x;
    if (it->second.is_zero()) r.erase(it);
  }
}

MatAlg MatAlg::operator-() const {
  MatAlg m = *this;
  for (auto& r : m.rows_)
    for (auto& [j, x] : r) x = -x;
  return m;
}

MatAlg& MatAlg::operator+=(const MatAlg& o) {
  adopt(o.n_);
  for (int i = 0; i < o.n_; ++i)
    for (const auto& [j, x] : o.rows_[static_cast<std::size_t>(i)]) add(i, j, x);
  return *this;
}

MatAlg& MatAlg::operator-=(const MatAlg& o) {
  adopt(o.n_);
  for (int i = 0; i < o.n_; ++i)
    for (const auto& [j, x] : o.rows_[static_cast<std::size_t>(i)]) add(i, j, -x);
  return *this;
}

MatAlg operator*(const MatAlg& a, const MatAlg& b) {
  if (a.n_ == 0 || b.n_ == 0) return MatAlg();
  if (a.n_ != b.n_) throw std::invalid_argument("module matrix size mismatch");
  MatAlg m(a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (const auto& [k, x] : a.rows_[static_cast<std::size_t>(i)])
      for (const auto& [j, y] : b.rows_[static_cast<std::size_t>(k)]) m.add(i, j, x * y);
  return m;
}

MatAlg operator*(const Scalar& s, const MatAlg& a) {
  if (s.is_zero()) return MatAlg();
  MatAlg m = a;
  for (auto& r : m.rows_)
    for (auto& [j, x] : r) x = s * x;
  return m;
}

bool operator==(const MatAlg& a, const MatAlg& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.n_ == b.n_ && a.rows_ == b.rows_;
}

std::string MatAlg::str() const {
  std::string s;
  for (int i = 0; i < n_; ++i) {
    const auto& r = rows_[static_cast<std::size_t>(i)];
    if (r.empty()) continue;
    if (!s.empty()) s += "; ";
    s += std::to_string(i + 1) + ":";
    for (const auto& [j, x] : r) s += " (" + std::to_string(j + 1) + ", " + x.str() + ")";
  }
  return s.empty() ? "0" : s;
}

}  // namespace ospyb
