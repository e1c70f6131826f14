#pragma once

#include <cassert>
#include <optional>
#include <vector>

#include "chevalley/error.hpp"
#include "chevalley/ring.hpp"

namespace chevalley {

// Minimal scalar abstraction so Matrix<T> works for ring elements (which need
// a descriptor to produce 0/1) and for plain machine integers (oracle models).
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<RElem> {
  static RElem zero(const RElem& like) { return RElem::zero(like.ring()); }
  static RElem one(const RElem& like) { return RElem::one(like.ring()); }
  static bool is_zero(const RElem& v) { return v.is_zero(); }
};

template <>
struct ScalarOps<long> {
  static long zero(long) { return 0; }
  static long one(long) { return 1; }
  static bool is_zero(long v) { return v == 0; }
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T& fill)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

  static Matrix identity(int n, const T& like) {
    Matrix m(n, n, ScalarOps<T>::zero(like));
    for (int i = 0; i < n; ++i) m.at(i, i) = ScalarOps<T>::one(like);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& at(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const T& at(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const T& sample() const {
    assert(!a_.empty());
    return a_[0];
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
    for (std::size_t i = 0; i < x.a_.size(); ++i)
      if (!(x.a_[i] == y.a_[i])) return false;
    return true;
  }
  friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> a_;
};

template <class T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y) {
  assert(x.rows() == y.rows() && x.cols() == y.cols());
  Matrix<T> out = x;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out.at(i, j) = x.at(i, j) + y.at(i, j);
  return out;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& x, const Matrix<T>& y) {
  assert(x.rows() == y.rows() && x.cols() == y.cols());
  Matrix<T> out = x;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out.at(i, j) = x.at(i, j) - y.at(i, j);
  return out;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
  assert(x.cols() == y.rows());
  Matrix<T> out(x.rows(), y.cols(), ScalarOps<T>::zero(x.sample()));
  for (int i = 0; i < x.rows(); ++i)
    for (int k = 0; k < x.cols(); ++k) {
      const T& v = x.at(i, k);
      if (ScalarOps<T>::is_zero(v)) continue;
      for (int j = 0; j < y.cols(); ++j) {
        if (ScalarOps<T>::is_zero(y.at(k, j))) continue;
        out.at(i, j) = out.at(i, j) + v * y.at(k, j);
      }
    }
  return out;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& m, const std::vector<T>& v) {
  assert(m.cols() == static_cast<int>(v.size()));
  std::vector<T> out(m.rows(), ScalarOps<T>::zero(m.sample()));
  for (int j = 0; j < m.cols(); ++j) {
    if (ScalarOps<T>::is_zero(v[j])) continue;
    for (int i = 0; i < m.rows(); ++i) {
      if (ScalarOps<T>::is_zero(m.at(i, j))) continue;
      out[i] = out[i] + m.at(i, j) * v[j];
    }
  }
  return out;
}

template <class T>
T trace(const Matrix<T>& m) {
  assert(m.rows() == m.cols());
  T t = ScalarOps<T>::zero(m.sample());
  for (int i = 0; i < m.rows(); ++i) t = t + m.at(i, i);
  return t;
}

template <class T>
bool is_identity(const Matrix<T>& m) {
  if (m.rows() != m.cols()) return false;
  return m == Matrix<T>::identity(m.rows(), m.sample());
}

template <class T>
Matrix<T> pow_matrix(const Matrix<T>& m, const Int& e) {
  assert(m.rows() == m.cols());
  assert(e >= 0);
  Matrix<T> acc = Matrix<T>::identity(m.rows(), m.sample());
  if (e == 0) return acc;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t b = bits; b-- > 0;) {
    acc = acc * acc;
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(b))) acc = acc * m;
  }
  return acc;
}

// Faddeev-LeVerrier. Returns [c1..cn] with det(xI - A) = x^n + c1 x^(n-1) + ... + cn.
// Only divisions by integers occur, which are exact in every ring of the tower.
inline std::vector<RElem> charpoly(const Matrix<RElem>& m) {
  assert(m.rows() == m.cols());
  const int n = m.rows();
  std::vector<RElem> c;
  c.reserve(n);
  Matrix<RElem> mk = Matrix<RElem>::identity(n, m.sample());  // M_1
  for (int k = 1; k <= n; ++k) {
    Matrix<RElem> am = m * mk;
    RElem ck = scale_rat(trace(am), Rat(-1, k));
    c.push_back(ck);
    if (k < n) {
      mk = am;
      for (int i = 0; i < n; ++i) mk.at(i, i) = mk.at(i, i) + ck;  // M_{k+1}
    }
  }
  return c;
}

inline RElem determinant(const Matrix<RElem>& m) {
  std::vector<RElem> c = charpoly(m);
  RElem cn = c.back();
  return (m.rows() % 2 == 0) ? cn : -cn;
}

// Gauss-Jordan with unit pivots. Works whenever a unit pivot can always be
// found (fields, and many product-ring matrices); returns nullopt otherwise.
inline std::optional<Matrix<RElem>> try_gj_inverse(const Matrix<RElem>& m) {
  assert(m.rows() == m.cols());
  const int n = m.rows();
  Matrix<RElem> a = m;
  Matrix<RElem> inv = Matrix<RElem>::identity(n, m.sample());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    std::optional<RElem> pinv;
    for (int r = col; r < n; ++r) {
      pinv = try_invert(a.at(r, col));
      if (pinv) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a.at(pivot, j), a.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    }
    for (int j = 0; j < n; ++j) {
      a.at(col, j) = a.at(col, j) * *pinv;
      inv.at(col, j) = inv.at(col, j) * *pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a.at(r, col).is_zero()) continue;
      RElem f = a.at(r, col);
      for (int j = 0; j < n; ++j) {
        a.at(r, j) = a.at(r, j) - f * a.at(col, j);
        inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// A^-1 = -M_n / c_n from the Faddeev-LeVerrier sequence; valid over any
// commutative Q-algebra as long as det(A) is a unit.
inline Matrix<RElem> fl_inverse(const Matrix<RElem>& m) {
  assert(m.rows() == m.cols());
  const int n = m.rows();
  Matrix<RElem> mk = Matrix<RElem>::identity(n, m.sample());  // M_1
  RElem cn;
  for (int k = 1; k <= n; ++k) {
    Matrix<RElem> am = m * mk;
    RElem ck = scale_rat(trace(am), Rat(-1, k));
    if (k == n) {
      cn = ck;  // mk currently holds M_n
      break;
    }
    mk = am;
    for (int i = 0; i < n; ++i) mk.at(i, i) = mk.at(i, i) + ck;
  }
  auto cn_inv = try_invert(cn);
  if (!cn_inv) throw not_a_unit("matrix determinant is not a unit");
  Matrix<RElem> out = mk;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.at(i, j) = -(out.at(i, j) * *cn_inv);
  return out;
}

inline Matrix<RElem> inverse(const Matrix<RElem>& m) {
  if (auto gj = try_gj_inverse(m)) return *gj;
  return fl_inverse(m);
}

inline Matrix<RElem> scale_matrix(const Matrix<RElem>& m, const RElem& s) {
  Matrix<RElem> out = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j) * s;
  return out;
}

// Entrywise embed into another coefficient ring.
inline Matrix<RElem> embed_matrix(const Matrix<RElem>& m, const RingPtr& target) {
  Matrix<RElem> out(m.rows(), m.cols(), RElem::zero(target));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = embed(m.at(i, j), target);
  return out;
}

}  // namespace chevalley
