#pragma once

// Dense matrices over Q and over a polynomial ring.

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace quadrikit {

// All k-subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n)
    return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i)
    idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j)
      idx[j] = idx[j - 1] + 1;
  }
}

class RatMatrix {
public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend RatMatrix operator*(const RatMatrix &a, const RatMatrix &b) {
    if (a.cols_ != b.rows_)
      throw PreconditionError("matrix product shape mismatch");
    RatMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  friend bool operator==(const RatMatrix &a, const RatMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  // Rows stacked below this matrix.
  RatMatrix stacked(const RatMatrix &below) const {
    if (rows_ && below.rows_ && cols_ != below.cols_)
      throw PreconditionError("stacking matrices of different widths");
    RatMatrix r(rows_ + below.rows_, rows_ ? cols_ : below.cols_);
    std::copy(data_.begin(), data_.end(), r.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), r.data_.begin() + data_.size());
    return r;
  }

  // Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && (*this)(p, c) == 0)
        ++p;
      if (p == rows_)
        continue;
      if (p != r)
        for (std::size_t j = 0; j < cols_; ++j)
          std::swap((*this)(p, j), (*this)(r, j));
      Rational inv = 1 / (*this)(r, c);
      for (std::size_t j = c; j < cols_; ++j)
        (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || (*this)(i, c) == 0)
          continue;
        Rational f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j)
          (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    RatMatrix c = *this;
    return c.rref().size();
  }

  // Basis of {x : A x = 0}; each vector has a 1 at its free column.
  std::vector<std::vector<Rational>> nullspace() const {
    RatMatrix c = *this;
    auto pivots = c.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots)
      is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f])
        continue;
      std::vector<Rational> v(cols_, 0);
      v[f] = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i)
        v[pivots[i]] = -c(i, f);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  // Some x with A x = b, or nullopt.
  std::optional<std::vector<Rational>> solve(std::span<const Rational> b) const {
    if (b.size() != rows_)
      throw PreconditionError("right-hand side length mismatch");
    RatMatrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j)
        aug(i, j) = (*this)(i, j);
      aug(i, cols_) = b[i];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_)
      return std::nullopt;
    std::vector<Rational> x(cols_, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      x[pivots[i]] = aug(i, cols_);
    return x;
  }

  Rational det() const {
    if (rows_ != cols_)
      throw PreconditionError("determinant of a non-square matrix");
    RatMatrix c = *this;
    Rational d = 1;
    for (std::size_t k = 0; k < rows_; ++k) {
      std::size_t p = k;
      while (p < rows_ && c(p, k) == 0)
        ++p;
      if (p == rows_)
        return 0;
      if (p != k) {
        for (std::size_t j = 0; j < cols_; ++j)
          std::swap(c(p, j), c(k, j));
        d = -d;
      }
      d *= c(k, k);
      for (std::size_t i = k + 1; i < rows_; ++i) {
        if (c(i, k) == 0)
          continue;
        Rational f = c(i, k) / c(k, k);
        for (std::size_t j = k; j < cols_; ++j)
          c(i, j) -= f * c(k, j);
      }
    }
    return d;
  }

  // Greedy scan: indices of rows that extend the span of the rows kept so far.
  std::vector<std::size_t> independent_rows() const {
    std::vector<std::size_t> kept;
    std::vector<std::vector<Rational>> basis; // echelon rows
    std::vector<std::size_t> lead;
    for (std::size_t i = 0; i < rows_; ++i) {
      std::vector<Rational> v(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        if (v[lead[b]] == 0)
          continue;
        Rational f = v[lead[b]] / basis[b][lead[b]];
        for (std::size_t j = 0; j < cols_; ++j)
          v[j] -= f * basis[b][j];
      }
      auto nz = std::find_if(v.begin(), v.end(), [](const Rational &x) { return x != 0; });
      if (nz == v.end())
        continue;
      lead.push_back(static_cast<std::size_t>(nz - v.begin()));
      basis.push_back(std::move(v));
      kept.push_back(i);
    }
    return kept;
  }

  std::string str() const {
    std::vector<std::string> cells(data_.size());
    std::size_t width = 1;
    for (std::size_t k = 0; k < data_.size(); ++k) {
      cells[k] = data_[k].get_str();
      width = std::max(width, cells[k].size());
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << "[";
      for (std::size_t j = 0; j < cols_; ++j)
        os << (j ? "  " : "") << std::string(width - cells[i * cols_ + j].size(), ' ')
           << cells[i * cols_ + j];
      os << "]\n";
    }
    return os.str();
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

class PolyMatrix {
public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring_)) {}

  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<Poly> entries)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
      throw PreconditionError("matrix entry count does not match its shape");
    for (const auto &p : data_)
      if (!same_ring(p.ring(), ring_))
        throw PreconditionError("matrix entries must share one ring");
  }

  static PolyMatrix identity(const RingPtr &ring, std::size_t n) {
    PolyMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = Poly::constant(ring, 1);
    return m;
  }

  static PolyMatrix from_rational(const RingPtr &ring, const RatMatrix &r) {
    PolyMatrix m(ring, r.rows(), r.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
      for (std::size_t j = 0; j < r.cols(); ++j)
        m(i, j) = Poly::constant(ring, r(i, j));
    return m;
  }

  const RingPtr &ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Poly &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Poly &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b) {
    if (a.cols_ != b.rows_)
      throw PreconditionError("matrix product shape mismatch");
    PolyMatrix r(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero())
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero())
            r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }

  friend PolyMatrix operator-(const PolyMatrix &a, const PolyMatrix &b) {
    a.check_shape(b);
    PolyMatrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k)
      r.data_[k] -= b.data_[k];
    return r;
  }

  friend PolyMatrix operator+(const PolyMatrix &a, const PolyMatrix &b) {
    a.check_shape(b);
    PolyMatrix r = a;
    for (std::size_t k = 0; k < r.data_.size(); ++k)
      r.data_[k] += b.data_[k];
    return r;
  }

  friend PolyMatrix operator*(const Poly &s, const PolyMatrix &a) {
    PolyMatrix r = a;
    for (auto &e : r.data_)
      e = s * e;
    return r;
  }

  friend bool operator==(const PolyMatrix &a, const PolyMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Poly &p) { return p.is_zero(); });
  }

  bool is_symmetric() const {
    if (rows_ != cols_)
      return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i))
          return false;
    return true;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  PolyMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    PolyMatrix s(ring_, rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

  PolyMatrix map(const std::function<Poly(const Poly &)> &f, const RingPtr &target) const {
    PolyMatrix r(target, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      r.data_[k] = f(data_[k]);
    return r;
  }

  PolyMatrix embed(const RingPtr &target) const {
    return map([&](const Poly &p) { return p.embed(target); }, target);
  }

  RatMatrix evaluate(std::span<const Rational> point) const {
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        r(i, j) = (*this)(i, j).evaluate(point);
    return r;
  }

  // Constant matrix -> RatMatrix; throws if an entry is not constant.
  RatMatrix to_rational() const {
    RatMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      if (!data_[k].is_constant())
        throw PreconditionError("matrix has non-constant entries");
      r(k / cols_, k % cols_) = data_[k].constant_term();
    }
    return r;
  }

  // Aligned grid, one row per line.
  std::string str() const {
    std::vector<std::string> cells(data_.size());
    std::vector<std::size_t> width(cols_, 1);
    for (std::size_t k = 0; k < data_.size(); ++k) {
      cells[k] = data_[k].str();
      width[k % cols_] = std::max(width[k % cols_], cells[k].size());
    }
    std::ostringstream os;
    for (std::size_t i = 0; i < rows_; ++i) {
      os << "[ ";
      for (std::size_t j = 0; j < cols_; ++j) {
        const auto &c = cells[i * cols_ + j];
        os << (j ? " | " : "") << c << std::string(width[j] - c.size(), ' ');
      }
      os << " ]\n";
    }
    return os.str();
  }

private:
  void check_shape(const PolyMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw PreconditionError("matrix shape mismatch");
  }

  RingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<Poly> data_;
};

namespace detail {

inline Poly det_cofactor(const PolyMatrix &m) {
  const auto n = m.rows();
  if (n == 0)
    return Poly::constant(m.ring(), 1);
  if (n == 1)
    return m(0, 0);
  if (n == 2)
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  Poly d(m.ring());
  std::vector<std::size_t> rows(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    rows[i] = i + 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero())
      continue;
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j)
        cols.push_back(c);
    Poly minor = det_cofactor(m.submatrix(rows, cols)) * m(0, j);
    d = (j % 2) ? d - minor : d + minor;
  }
  return d;
}

// Fraction-free elimination; every division is exact.
inline Poly det_bareiss(PolyMatrix m) {
  const auto n = m.rows();
  Poly prev = Poly::constant(m.ring(), 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m(p, k).is_zero())
        ++p;
      if (p == n)
        return Poly(m.ring());
      for (std::size_t j = 0; j < n; ++j)
        std::swap(m(p, j), m(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        auto q = divide_exact(num, prev);
        if (!q)
          throw VerificationError("Bareiss division was not exact");
        m(i, j) = std::move(*q);
      }
    prev = m(k, k);
  }
  Poly d = m(n - 1, n - 1);
  return negate ? -d : d;
}

} // namespace detail

// Exact determinant: cofactor expansion up to 3x3, Bareiss above.
inline Poly det(const PolyMatrix &m) {
  if (m.rows() != m.cols())
    throw PreconditionError("determinant of a non-square matrix (" + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ")");
  if (m.rows() <= 3)
    return detail::det_cofactor(m);
  return detail::det_bareiss(m);
}

// All k x k minors in (row-subset, column-subset) lexicographic order.
inline std::vector<Poly> minors(const PolyMatrix &m, std::size_t k) {
  if (k < 1 || k > std::min(m.rows(), m.cols()))
    throw PreconditionError("minor size " + std::to_string(k) + " out of range 1.." +
                            std::to_string(std::min(m.rows(), m.cols())));
  std::vector<Poly> out;
  auto row_sets = combinations(m.rows(), k);
  auto col_sets = combinations(m.cols(), k);
  for (const auto &r : row_sets)
    for (const auto &c : col_sets)
      out.push_back(det(m.submatrix(r, c)));
  return out;
}

} // namespace quadrikit
