#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace toric {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int content(const IntVec& v);
Int floor_div(const Int& a, const Int& b);
Rat floor(const Rat& r);
Rat frac(const Rat& r);

// "p/q" with q > 0; integers are written as "p/1".
std::string to_string(const Rat& r);
std::string to_string(const Int& x);
// Accepts "p/q", "p", and surrounding whitespace. Throws ParseError.
Rat parse_rat(const std::string& s);

RatVec to_rat(const IntVec& v);
Rat dot(const RatVec& a, const RatVec& b);
Rat dot(const RatVec& a, const IntVec& b);

// Dense row-major integer matrix.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static IntMat identity(std::size_t n);
  // Matrix whose columns are the given vectors (all of length rows).
  static IntMat from_columns(const std::vector<IntVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  IntVec col(std::size_t j) const;
  IntMat transpose() const;
  IntVec apply(const IntVec& v) const;

  bool operator==(const IntMat& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

IntMat operator*(const IntMat& a, const IntMat& b);
Int determinant(const IntMat& m);

}  // namespace toric
