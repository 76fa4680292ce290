#include "lpa/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace lpa {

std::vector<Integer> SmithDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) d.push_back(s(i, i));
  return d;
}

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (const auto& x : diagonal())
    if (x != 0) ++r;
  return r;
}

namespace {

// Row ops go to U, column ops to V, so U * A * V = S holds throughout.
struct Reducer {
  IntMatrix s, u, v;

  void swap_rows(std::size_t a, std::size_t b) {
    s.swap_rows(a, b);
    u.swap_rows(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    s.swap_cols(a, b);
    v.swap_cols(a, b);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    s.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    s.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
  }
  void negate_row(std::size_t r) {
    s.negate_row(r);
    u.negate_row(r);
  }

  bool move_smallest_to(std::size_t t) {
    bool found = false;
    std::size_t bi = t, bj = t;
    Integer best;
    for (std::size_t i = t; i < s.rows(); ++i)
      for (std::size_t j = t; j < s.cols(); ++j) {
        if (s(i, j) == 0) continue;
        Integer a = abs(s(i, j));
        if (!found || a < best) {
          found = true;
          best = a;
          bi = i;
          bj = j;
        }
      }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Reducer r{a, IntMatrix::identity(m), IntMatrix::identity(n)};

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    if (!r.move_smallest_to(t)) break;
    for (;;) {
      const Integer pivot = r.s(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (r.s(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), r.s(i, t).get_mpz_t(), pivot.get_mpz_t());
        r.add_row(i, t, -q);
        if (r.s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (r.s(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), r.s(t, j).get_mpz_t(), pivot.get_mpz_t());
        r.add_col(j, t, -q);
        if (r.s(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A smaller remainder exists in row or column t; it becomes the pivot.
        r.move_smallest_to(t);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(r.s(i, j).get_mpz_t(), pivot.get_mpz_t())) {
            r.add_row(t, i, 1);
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (r.s(t, t) < 0) r.negate_row(t);
  }
  return {std::move(r.u), std::move(r.s), std::move(r.v)};
}

Integer determinant(const IntMatrix& a) {
  if (!a.square()) {
    throw DimensionError("determinant of non-square " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " matrix");
  }
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix inverse_unimodular(const IntMatrix& a) {
  if (!a.square()) throw DimensionError("inverse of non-square matrix");
  auto snf = smith_normal_form(a);
  for (const auto& d : snf.diagonal()) {
    if (d != 1) throw std::invalid_argument("matrix is not unimodular");
  }
  // U A V = I, so A^{-1} = V U.
  return snf.v * snf.u;
}

std::size_t rank(const IntMatrix& a) {
  // Fraction-free row echelon form; every intermediate entry is a minor of a.
  IntMatrix m = a;
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        Integer num = m(i, j) * m(r, c) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

bool in_column_lattice(const IntMatrix& a, const std::vector<Integer>& x) {
  if (x.size() != a.rows()) throw DimensionError("vector length does not match the row count");
  auto snf = smith_normal_form(a);
  auto y = snf.u.apply(x);
  auto d = snf.diagonal();
  for (std::size_t i = 0; i < y.size(); ++i) {
    Integer di = i < d.size() ? d[i] : Integer(0);
    if (di == 0 ? y[i] != 0 : y[i] % di != 0) return false;
  }
  return true;
}

bool columns_generate(const IntMatrix& a) {
  auto snf = smith_normal_form(a);
  if (snf.rank() != a.rows()) return false;
  for (const auto& d : snf.diagonal())
    if (d != 0 && d != 1) return false;
  return true;
}

IntMatrix identity_minus_transpose(const IntMatrix& adjacency) {
  return IntMatrix::identity(adjacency.rows()) - adjacency.transpose();
}

}  // namespace lpa
