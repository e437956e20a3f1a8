#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lieth/errors.hpp"

namespace lieth {

using Rat = boost::rational<long long>;

inline long long rat_num(const Rat& r) { return r.numerator(); }
inline long long rat_den(const Rat& r) { return r.denominator(); }

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string rat_to_string(const Rat& r);

/// Complex number with exact rational real and imaginary parts.
struct QC {
  Rat re{0};
  Rat im{0};

  QC() = default;
  QC(Rat r) : re(r) {}
  QC(Rat r, Rat i) : re(r), im(i) {}
  QC(long long r) : re(r) {}

  bool is_zero() const { return re == Rat(0) && im == Rat(0); }
  QC conj() const { return QC(re, -im); }

  QC operator+(const QC& o) const { return QC(re + o.re, im + o.im); }
  QC operator-(const QC& o) const { return QC(re - o.re, im - o.im); }
  QC operator-() const { return QC(-re, -im); }
  QC operator*(const QC& o) const {
    return QC(re * o.re - im * o.im, re * o.im + im * o.re);
  }
  QC& operator+=(const QC& o) { re += o.re; im += o.im; return *this; }
  QC& operator-=(const QC& o) { re -= o.re; im -= o.im; return *this; }
  bool operator==(const QC& o) const { return re == o.re && im == o.im; }
  bool operator!=(const QC& o) const { return !(*this == o); }
};

inline QC operator*(const Rat& s, const QC& z) { return QC(s * z.re, s * z.im); }

using RatVec = std::vector<Rat>;
using QCVec = std::vector<QC>;

/// Dense matrix over the rationals.  Sized for Lie algebra dimensions
/// (a few dozen rows), all arithmetic exact.
class RatMat {
 public:
  RatMat() = default;
  RatMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  static RatMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return data_[i * cols_ + j]; }
  const Rat& at(int i, int j) const { return data_[i * cols_ + j]; }

  RatMat operator*(const RatMat& o) const;
  RatMat operator+(const RatMat& o) const;
  RatMat operator-(const RatMat& o) const;
  RatMat scaled(const Rat& s) const;
  RatVec apply(const RatVec& v) const;
  QCVec apply(const QCVec& v) const;            // entrywise rational times complex
  QCVec apply_conj(const QCVec& v) const;       // conjugate-linear action
  RatMat transpose() const;

  bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const RatMat& o) const { return !(*this == o); }
  bool is_identity() const;
  bool is_zero() const;

  /// Rank over Q by Gaussian elimination.
  int rank() const;

  /// Basis of the null space (column vectors), exact.
  std::vector<RatVec> kernel() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rat> data_;
};

/// Solve A x = b exactly; throws NumericalError if inconsistent,
/// returns one solution (free variables set to zero).
RatVec solve_linear(const RatMat& A, const RatVec& b);

}  // namespace lieth
