#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "gysin/matrix.hpp"
#include "gysin/ring.hpp"

// Exact linear algebra over Z and over prime fields, on one matrix type.
// Entries are plain integers; a Ring argument decides the arithmetic.
// Over Z the routines compute with lattices (Hermite/Smith forms, integer
// kernels and solves); over Z/p the same entry points perform modular
// elimination, with Hermite form degenerating to a reduced column echelon
// form and Smith diagonals to 0/1. Ring Q is handled by callers through
// the Z lattice (flat base change) plus solve_rat for rational coordinates.

namespace gysin::lin {

inline Int inv_mod(const Int& a, const Int& p) {
  Int u, v;
  Int g = gcdext(mod_floor(a, p), p, u, v);
  if (g != 1) throw Error("inv_mod: not invertible mod " + to_string(p));
  return mod_floor(u, p);
}

namespace detail {

// Column operations applied to H and mirrored on V, so H = M * V stays true.
struct ColOps {
  IntMat& H;
  IntMat& V;
  const Ring& R;

  void norm_col(int j) {
    if (!R.is_modular()) return;
    for (int i = 0; i < H.rows(); ++i) H(i, j) = R.reduce(H(i, j));
    for (int i = 0; i < V.rows(); ++i) V(i, j) = R.reduce(V(i, j));
  }
  void swap(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < H.rows(); ++i) std::swap(H(i, a), H(i, b));
    for (int i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
  }
  void negate(int j) {
    for (int i = 0; i < H.rows(); ++i) H(i, j) = -H(i, j);
    for (int i = 0; i < V.rows(); ++i) V(i, j) = -V(i, j);
    norm_col(j);
  }
  void scale(int j, const Int& s) {  // fields only (unit s)
    for (int i = 0; i < H.rows(); ++i) H(i, j) *= s;
    for (int i = 0; i < V.rows(); ++i) V(i, j) *= s;
    norm_col(j);
  }
  // col_a += q * col_b
  void addmul(int a, const Int& q, int b) {
    if (q == 0) return;
    for (int i = 0; i < H.rows(); ++i) H(i, a) += q * H(i, b);
    for (int i = 0; i < V.rows(); ++i) V(i, a) += q * V(i, b);
    norm_col(a);
  }
};

}  // namespace detail

struct HnfResult {
  IntMat H;                     // canonical column staircase form, H = M * V
  IntMat V;                     // invertible (unimodular over Z)
  std::vector<int> pivot_rows;  // row of the pivot of column i, strictly increasing
  int rank() const { return int(pivot_rows.size()); }
};

/// Column Hermite normal form. Pivots are positive (1 over a field); the
/// entries left of a pivot in its row are reduced into [0, pivot) (0 over a
/// field); columns past the rank are zero. Canonical for the column span,
/// which makes lattice/subspace comparison a matrix equality.
inline HnfResult hnf_cols(const Ring& R, IntMat M) {
  if (R.is_modular()) M = reduce(R, M);
  const int n = M.rows(), m = M.cols();
  IntMat V = IntMat::identity(m);
  detail::ColOps ops{M, V, R};
  std::vector<int> pivot_rows;
  int t = 0;
  for (int r = 0; r < n && t < m; ++r) {
    if (R.is_modular()) {
      int jp = -1;
      for (int j = t; j < m; ++j)
        if (M(r, j) != 0) {
          jp = j;
          break;
        }
      if (jp < 0) continue;
      ops.swap(t, jp);
      ops.scale(t, inv_mod(M(r, t), R.p));
      for (int j = t + 1; j < m; ++j)
        if (M(r, j) != 0) ops.addmul(j, R.p - M(r, j), t);
      for (int j = 0; j < t; ++j)
        if (M(r, j) != 0) ops.addmul(j, R.p - M(r, j), t);
      pivot_rows.push_back(r);
      ++t;
      continue;
    }
    // gcd elimination across the active columns of row r
    while (true) {
      int jp = -1;
      for (int j = t; j < m; ++j)
        if (M(r, j) != 0 && (jp < 0 || abs(M(r, j)) < abs(M(r, jp)))) jp = j;
      if (jp < 0) break;
      bool leftover = false;
      for (int j = t; j < m; ++j) {
        if (j == jp || M(r, j) == 0) continue;
        ops.addmul(j, -tdiv(M(r, j), M(r, jp)), jp);
        leftover |= (M(r, j) != 0);
      }
      if (leftover) continue;  // remainders are smaller; repeat
      ops.swap(t, jp);
      if (M(r, t) < 0) ops.negate(t);
      for (int j = 0; j < t; ++j) {
        Int q = fdiv(M(r, j), M(r, t));
        if (q != 0) ops.addmul(j, -q, t);
      }
      pivot_rows.push_back(r);
      ++t;
      break;
    }
  }
  return HnfResult{std::move(M), std::move(V), std::move(pivot_rows)};
}

/// Canonical basis of the column span (lattice over Z, subspace over Z/p):
/// the nonzero columns of the Hermite form.
inline IntMat image(const Ring& R, const IntMat& M) {
  HnfResult h = hnf_cols(R, M);
  std::vector<int> idx(h.pivot_rows.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  return h.H.cols_subset(idx);
}

inline int rank(const Ring& R, const IntMat& M) {
  return hnf_cols(R, M).rank();
}

/// Canonical basis of {x : Mx = 0}. Over Z this is a basis of the full
/// kernel lattice (which is saturated), in Hermite-reduced form.
inline IntMat kernel(const Ring& R, const IntMat& M) {
  HnfResult h = hnf_cols(R, M);
  std::vector<int> idx;
  for (int j = h.rank(); j < h.H.cols(); ++j) idx.push_back(j);
  IntMat K = h.V.cols_subset(idx);
  return image(R, K);
}

inline bool lattice_equal(const Ring& R, const IntMat& A, const IntMat& B) {
  return image(R, A) == image(R, B);
}

inline IntMat lattice_sum(const Ring& R, const IntMat& A, const IntMat& B) {
  return image(R, IntMat::hstack(A, B));
}

/// Solve A X = B over the ring (integral solution over Z). Returns the
/// particular solution derived from the Hermite form, or nullopt.
inline std::optional<IntMat> solve(const Ring& R, const IntMat& A,
                                   const IntMat& B) {
  if (A.rows() != B.rows()) return std::nullopt;
  HnfResult h = hnf_cols(R, A);
  IntMat X(A.cols(), B.cols());
  for (int c = 0; c < B.cols(); ++c) {
    IntVec resid = B.col(c);
    if (R.is_modular())
      for (Int& v : resid) v = R.reduce(v);
    IntVec y(h.H.cols(), Int(0));
    for (int i = 0; i < h.rank(); ++i) {
      int r = h.pivot_rows[i];
      const Int& piv = h.H(r, i);
      if (R.is_modular()) {
        y[i] = mod_floor(resid[r] * inv_mod(piv, R.p), R.p);
      } else {
        if (!divides(piv, resid[r])) return std::nullopt;
        y[i] = divexact(resid[r], piv);
      }
      if (y[i] != 0)
        for (int rr = 0; rr < A.rows(); ++rr) resid[rr] -= y[i] * h.H(rr, i);
      if (R.is_modular())
        for (Int& v : resid) v = R.reduce(v);
    }
    for (const Int& v : resid)
      if (!R.is_zero(v)) return std::nullopt;
    IntVec x = h.V.apply(y);
    for (int r = 0; r < A.cols(); ++r) X(r, c) = R.reduce(x[r]);
  }
  return X;
}

inline bool in_span(const Ring& R, const IntMat& A, const IntMat& B) {
  return solve(R, A, B).has_value();
}

struct SnfResult {
  IntMat S;     // diagonal, d_i >= 0, d_i | d_{i+1}
  IntMat U;     // S = U * M * V
  IntMat Uinv;  // U * Uinv = identity
  IntMat V;
  std::vector<Int> diag() const {
    std::vector<Int> d;
    int k = std::min(S.rows(), S.cols());
    for (int i = 0; i < k; ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

struct SnfOps {
  IntMat& S;
  IntMat& U;
  IntMat& Uinv;
  IntMat& V;
  const Ring& R;

  void norm() {
    if (!R.is_modular()) return;
    S = reduce(R, S);
    U = reduce(R, U);
    Uinv = reduce(R, Uinv);
    V = reduce(R, V);
  }
  void swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < S.cols(); ++j) std::swap(S(a, j), S(b, j));
    for (int j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
    for (int i = 0; i < Uinv.rows(); ++i) std::swap(Uinv(i, a), Uinv(i, b));
  }
  void swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < S.rows(); ++i) std::swap(S(i, a), S(i, b));
    for (int i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
  }
  // row_a += q * row_b
  void row_addmul(int a, const Int& q, int b) {
    if (q == 0) return;
    for (int j = 0; j < S.cols(); ++j) S(a, j) += q * S(b, j);
    for (int j = 0; j < U.cols(); ++j) U(a, j) += q * U(b, j);
    for (int i = 0; i < Uinv.rows(); ++i) Uinv(i, b) -= q * Uinv(i, a);
    norm();
  }
  void col_addmul(int a, const Int& q, int b) {
    if (q == 0) return;
    for (int i = 0; i < S.rows(); ++i) S(i, a) += q * S(i, b);
    for (int i = 0; i < V.rows(); ++i) V(i, a) += q * V(i, b);
    norm();
  }
  void row_negate(int a) {
    for (int j = 0; j < S.cols(); ++j) S(a, j) = -S(a, j);
    for (int j = 0; j < U.cols(); ++j) U(a, j) = -U(a, j);
    for (int i = 0; i < Uinv.rows(); ++i) Uinv(i, a) = -Uinv(i, a);
    norm();
  }
  void row_scale(int a, const Int& s, const Int& sinv) {  // fields only
    for (int j = 0; j < S.cols(); ++j) S(a, j) *= s;
    for (int j = 0; j < U.cols(); ++j) U(a, j) *= s;
    for (int i = 0; i < Uinv.rows(); ++i) Uinv(i, a) *= sinv;
    norm();
  }
  // rows (a,b) <- [[u,v],[x,y]] * rows (a,b), with uy - vx = 1
  void row_pair(int a, int b, const Int& u, const Int& v, const Int& x,
                const Int& y) {
    for (int j = 0; j < S.cols(); ++j) {
      Int s = S(a, j), t = S(b, j);
      S(a, j) = u * s + v * t;
      S(b, j) = x * s + y * t;
    }
    for (int j = 0; j < U.cols(); ++j) {
      Int s = U(a, j), t = U(b, j);
      U(a, j) = u * s + v * t;
      U(b, j) = x * s + y * t;
    }
    for (int i = 0; i < Uinv.rows(); ++i) {
      Int s = Uinv(i, a), t = Uinv(i, b);
      Uinv(i, a) = y * s - x * t;
      Uinv(i, b) = -v * s + u * t;
    }
    norm();
  }
};

}  // namespace detail

/// Smith normal form with transforms: S = U * M * V, U and V invertible
/// (unimodular over Z), S diagonal with nonnegative entries in a
/// divisibility chain. Pivots are chosen by minimal absolute value, which
/// keeps intermediate entries small on desk-scale inputs.
inline SnfResult snf(const Ring& R, IntMat M) {
  if (R.is_modular()) M = reduce(R, M);
  const int n = M.rows(), m = M.cols();
  IntMat U = IntMat::identity(n), Uinv = IntMat::identity(n),
         V = IntMat::identity(m);
  detail::SnfOps ops{M, U, Uinv, V, R};
  int t = 0;
  const int k = std::min(n, m);
  while (t < k) {
    // Re-pick the globally smallest pivot each pass: quotients stay small,
    // which contains the entry growth of the elimination.
    bool have_pivot = false;
    for (bool clean = false; !clean;) {
      int pi = -1, pj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < m; ++j)
          if (M(i, j) != 0 && (pi < 0 || abs(M(i, j)) < abs(M(pi, pj))))
            pi = i, pj = j;
      if (pi < 0) break;
      have_pivot = true;
      ops.swap_rows(t, pi);
      ops.swap_cols(t, pj);
      clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (M(i, t) == 0) continue;
        Int q = R.is_modular() ? mod_floor(M(i, t) * inv_mod(M(t, t), R.p), R.p)
                               : tdiv(M(i, t), M(t, t));
        ops.row_addmul(i, -q, t);
        if (M(i, t) != 0) clean = false;  // remainder smaller than pivot
      }
      for (int j = t + 1; j < m; ++j) {
        if (M(t, j) == 0) continue;
        Int q = R.is_modular() ? mod_floor(M(t, j) * inv_mod(M(t, t), R.p), R.p)
                               : tdiv(M(t, j), M(t, t));
        ops.col_addmul(j, -q, t);
        if (M(t, j) != 0) clean = false;
      }
    }
    if (!have_pivot) break;
    if (R.is_modular()) {
      Int inv = inv_mod(M(t, t), R.p);
      ops.row_scale(t, inv, M(t, t));
    } else if (M(t, t) < 0) {
      ops.row_negate(t);
    }
    ++t;
  }
  if (!R.is_modular()) {
    for (int i = 0; i < t; ++i)
      for (int j = i + 1; j < t; ++j) {
        if (divides(M(i, i), M(j, j))) continue;
        Int di = M(i, i), dj = M(j, j), u, v;
        Int g = gcdext(di, dj, u, v);
        ops.col_addmul(i, Int(1), j);
        ops.row_pair(i, j, u, v, -divexact(dj, g), divexact(di, g));
        ops.col_addmul(j, -divexact(v * dj, g), i);
      }
  }
  return SnfResult{std::move(M), std::move(U), std::move(Uinv), std::move(V)};
}

/// Exact determinant over Z (Bareiss fraction-free elimination).
inline Int det(IntMat a) {
  if (a.rows() != a.cols()) throw BadParams("det: matrix not square");
  const int n = a.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int kk = 0; kk + 1 < n; ++kk) {
    if (a(kk, kk) == 0) {
      int piv = -1;
      for (int i = kk + 1; i < n; ++i)
        if (a(i, kk) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(kk, j), a(piv, j));
      sign = -sign;
    }
    for (int i = kk + 1; i < n; ++i) {
      for (int j = kk + 1; j < n; ++j)
        a(i, j) = divexact(a(kk, kk) * a(i, j) - a(i, kk) * a(kk, j), prev);
      a(i, kk) = 0;
    }
    prev = a(kk, kk);
  }
  return sign * a(n - 1, n - 1);
}

/// Solve A X = B over Q (A integral, B rational). Free variables are set
/// to zero. Returns nullopt when the system is inconsistent.
inline std::optional<RatMat> solve_rat(const IntMat& A, const RatMat& B) {
  if (A.rows() != B.rows()) return std::nullopt;
  const int n = A.rows(), m = A.cols(), k = B.cols();
  RatMat W(n, m + k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) W(i, j) = Rat(A(i, j));
    for (int j = 0; j < k; ++j) W(i, m + j) = B(i, j);
  }
  std::vector<int> pivot_col;
  int row = 0;
  for (int j = 0; j < m && row < n; ++j) {
    int piv = -1;
    for (int i = row; i < n; ++i)
      if (W(i, j) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    for (int c = 0; c < m + k; ++c) std::swap(W(row, c), W(piv, c));
    Rat d = W(row, j);
    for (int c = 0; c < m + k; ++c) W(row, c) /= d;
    for (int i = 0; i < n; ++i) {
      if (i == row || W(i, j) == 0) continue;
      Rat f = W(i, j);
      for (int c = 0; c < m + k; ++c) W(i, c) -= f * W(row, c);
    }
    pivot_col.push_back(j);
    ++row;
  }
  for (int i = row; i < n; ++i)
    for (int j = 0; j < k; ++j)
      if (W(i, m + j) != 0) return std::nullopt;
  RatMat X(m, k);
  for (int i = 0; i < int(pivot_col.size()); ++i)
    for (int j = 0; j < k; ++j) X(pivot_col[i], j) = W(i, m + j);
  return X;
}

}  // namespace gysin::lin
