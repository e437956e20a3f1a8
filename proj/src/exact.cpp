#include "lieth/exact.hpp"

#include <sstream>

namespace lieth {

std::string rat_to_string(const Rat& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

RatMat RatMat::identity(int n) {
  RatMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
  if (cols_ != o.rows_) throw UsageError("RatMat: dimension mismatch in product");
  RatMat r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Rat& a = at(i, k);
      if (a == Rat(0)) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Rat& b = o.at(k, j);
        if (b != Rat(0)) r.at(i, j) += a * b;
      }
    }
  return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("RatMat: dimension mismatch in sum");
  RatMat r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

RatMat RatMat::operator-(const RatMat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw UsageError("RatMat: dimension mismatch in difference");
  RatMat r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
  return r;
}

RatMat RatMat::scaled(const Rat& s) const {
  RatMat r(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = s * data_[i];
  return r;
}

RatVec RatMat::apply(const RatVec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw UsageError("RatMat: vector length mismatch");
  RatVec r(rows_, Rat(0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Rat& a = at(i, j);
      if (a != Rat(0) && v[j] != Rat(0)) r[i] += a * v[j];
    }
  return r;
}

QCVec RatMat::apply(const QCVec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw UsageError("RatMat: vector length mismatch");
  QCVec r(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Rat& a = at(i, j);
      if (a != Rat(0) && !v[j].is_zero()) r[i] += a * v[j];
    }
  return r;
}

QCVec RatMat::apply_conj(const QCVec& v) const {
  QCVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) w[i] = v[i].conj();
  return apply(w);
}

RatMat RatMat::transpose() const {
  RatMat r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

bool RatMat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? Rat(1) : Rat(0))) return false;
  return true;
}

bool RatMat::is_zero() const {
  for (const auto& x : data_)
    if (x != Rat(0)) return false;
  return true;
}

namespace {

// Row-reduce a copy; returns pivot columns, leaves reduced matrix in m.
std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    for (int i = row; i < m.rows(); ++i)
      if (m.at(i, col) != Rat(0)) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(row, j));
    Rat inv = Rat(1) / m.at(row, col);
    for (int j = 0; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      Rat f = m.at(i, col);
      if (f == Rat(0)) continue;
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int RatMat::rank() const {
  RatMat m = *this;
  return static_cast<int>(rref(m).size());
}

std::vector<RatVec> RatMat::kernel() const {
  RatMat m = *this;
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols_, Rat(0));
    v[free] = Rat(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(static_cast<int>(r), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

RatVec solve_linear(const RatMat& A, const RatVec& b) {
  if (static_cast<int>(b.size()) != A.rows()) throw UsageError("solve_linear: size mismatch");
  RatMat aug(A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols()) = b[i];
  }
  std::vector<int> pivots = rref(aug);
  for (int c : pivots)
    if (c == A.cols()) throw NumericalError("solve_linear: inconsistent system");
  RatVec x(A.cols(), Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(static_cast<int>(r), A.cols());
  return x;
}

}  // namespace lieth
