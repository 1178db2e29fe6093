#pragma once

// Affine determinantal pencils: an n x n matrix A~(y) = Lambda + A(y) whose
// entries are affine-linear forms, together with the block layout and the
// bookkeeping needed to state "det of the pencil equals sign * factor *
// target polynomial of the argument".

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <vector>

#include "detrep/linform.hpp"
#include "detrep/matrix.hpp"
#include "detrep/polynomial.hpp"

namespace detrep {

// What the pencil determinant computes in terms of the argument matrix.
enum class Target { Perm, Det, QuadricHalf, QuadricFull };

inline std::string target_name(Target t) {
  switch (t) {
    case Target::Perm: return "permanent";
    case Target::Det: return "determinant";
    case Target::QuadricHalf: return "sum_j y^1_j*y^2_j";
    case Target::QuadricFull: return "sum_j (y^1_j)^2";
  }
  return "?";
}

struct Block {
  std::string label;
  int dim = 0;
  // Position in the cyclic chain block_k -> block_{k+1 mod B}; -1 when the
  // pencil has no cyclic structure.
  int level = -1;
};

struct BlockLayout {
  std::vector<Block> blocks;

  int total() const {
    int n = 0;
    for (auto& b : blocks) n += b.dim;
    return n;
  }
  int offset(int k) const {
    int o = 0;
    for (int i = 0; i < k; ++i) o += blocks[i].dim;
    return o;
  }
  int block_of(int index) const {
    int o = 0;
    for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
      o += blocks[k].dim;
      if (index < o) return k;
    }
    throw std::invalid_argument("block_of: index out of range");
  }
  bool cyclic() const {
    for (int k = 0; k < static_cast<int>(blocks.size()); ++k)
      if (blocks[k].level != k) return false;
    return !blocks.empty();
  }
};

class PencilMatrix {
 public:
  std::string construction;  // "grenet", "regular-det", ...
  int m = 0;                 // size parameter of the construction
  int n = 0;                 // pencil dimension
  int arg_rows = 0, arg_cols = 0;  // shape of admissible argument matrices
  int sign = 1;
  Int expected_factor = 1;
  int scaling_exponent = 0;  // n minus the length of the variable cycle
  Target target = Target::Perm;
  BlockLayout layout;

  PencilMatrix() = default;

  IntForm& at(int i, int j) { return entries_.at(i, j); }
  const IntForm& at(int i, int j) const { return entries_.at(i, j); }
  const Matrix<IntForm>& entries() const { return entries_; }

  void init_entries() { entries_ = Matrix<IntForm>(n, n); }

  IntMatrix constant_part() const {
    IntMatrix c(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) c(i, j) = entries_(i, j).constant();
    return c;
  }

  bool argument_shape_ok(int r, int c) const { return r == arg_rows && c == arg_cols; }

  // Structural sanity: layout adds up, variable indices stay inside the
  // declared argument shape, sign is a sign.
  void check_invariants() const {
    require(n >= 1, "pencil: n must be positive");
    require(layout.total() == n, "pencil: block dimensions do not sum to n");
    require(sign == 1 || sign == -1, "pencil: sign must be +1 or -1");
    require(expected_factor != 0, "pencil: zero expected factor");
    require(entries_.rows() == n && entries_.cols() == n, "pencil: entry matrix shape");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (auto& t : entries_(i, j).terms()) {
          bool ok = t.var.up >= 1 && t.var.up <= arg_rows && t.var.lo >= 1 &&
                    t.var.lo <= arg_cols;
          require(ok, "pencil: variable outside argument shape at entry (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
        }
  }

 private:
  Matrix<IntForm> entries_;
};

// ---------------------------------------------------------------------------
// Evaluation

inline IntMatrix pencil_eval(const PencilMatrix& p, const IntMatrix& arg) {
  require(p.argument_shape_ok(arg.rows(), arg.cols()),
          "pencil_eval: argument matrix has shape " + std::to_string(arg.rows()) + "x" +
              std::to_string(arg.cols()) + ", pencil expects " +
              std::to_string(p.arg_rows) + "x" + std::to_string(p.arg_cols));
  IntMatrix out(p.n, p.n);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      out(i, j) = p.at(i, j).eval([&](Variable v) -> Int {
        return arg(v.up - 1, v.lo - 1);
      });
  return out;
}

inline ModMatrix pencil_eval_mod(const PencilMatrix& p, const ModMatrix& arg,
                                 std::uint64_t prime) {
  require(p.argument_shape_ok(arg.rows(), arg.cols()),
          "pencil_eval_mod: argument matrix shape mismatch");
  ModMatrix out(p.n, p.n, 0);
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      out(i, j) = p.at(i, j).eval_mod(
          [&](Variable v) { return arg(v.up - 1, v.lo - 1); }, prime);
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic determinant
//
// Laplace expansion along rows with memoization on the set of used columns.
// Exponential in the worst case but fast on the block-sparse pencils built
// here; refuses n beyond a bound (default 24, override with the
// DETREP_SYMBOLIC_BOUND environment variable).

inline int symbolic_det_bound() {
  if (const char* env = std::getenv("DETREP_SYMBOLIC_BOUND")) {
    int b = std::atoi(env);
    if (b > 0) return b;
  }
  return 24;
}

inline Polynomial pencil_symbolic_det(const PencilMatrix& p) {
  const int n = p.n;
  require(n <= symbolic_det_bound(),
          "pencil_symbolic_det: n = " + std::to_string(n) +
              " exceeds the bound (" + std::to_string(symbolic_det_bound()) +
              "); raise DETREP_SYMBOLIC_BOUND to override");
  // Pre-extract sparse rows as polynomials.
  std::vector<std::vector<std::pair<int, Polynomial>>> rows(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const IntForm& f = p.at(i, j);
      if (!f.is_zero()) rows[i].push_back({j, to_polynomial(f)});
    }

  std::unordered_map<std::uint32_t, Polynomial> memo;
  const std::uint32_t full = n == 32 ? ~std::uint32_t(0) : (std::uint32_t(1) << n) - 1;

  // det of the minor on rows popcount(used)..n-1 and the columns not in
  // `used`, with the usual alternating signs.
  auto rec = [&](auto&& self, std::uint32_t used) -> const Polynomial& {
    auto it = memo.find(used);
    if (it != memo.end()) return it->second;
    int i = std::popcount(used);
    Polynomial det;
    if (i == n) {
      det = Polynomial(Int(1));
    } else {
      for (auto& [j, entry] : rows[i]) {
        std::uint32_t bit = std::uint32_t(1) << j;
        if (used & bit) continue;
        // parity of the column's position among the remaining columns
        int pos = std::popcount(~used & (bit - 1));
        const Polynomial& sub = self(self, used | bit);
        if (sub.is_zero()) continue;
        Polynomial term = entry * sub;
        if (pos & 1) det -= term;
        else det += term;
      }
    }
    return memo.emplace(used, std::move(det)).first->second;
  };
  Polynomial result = rec(rec, 0);
  (void)full;
  return result;
}

// ---------------------------------------------------------------------------
// Fast determinant for cyclic block-bidiagonal pencils
//
// When the nonzero blocks are exactly: identity-like diagonal blocks c_k*I on
// blocks 1..B-1, and linear blocks B_k at position (k+1 mod B, k), the
// determinant collapses to a chain product:
//
//   det A~ = (-1)^((B-1)*d_0) * prod_{k>=1} c_k^(d_k - d_0)
//            * det(B_{B-1} * ... * B_1 * B_0)
//
// (column elimination; d_k are the block dimensions).  Evaluating the chain
// is sum_k d_{k+1 mod B}*d_k multiplications instead of an n^3 elimination.

struct PathPlan {
  struct LinearEntry {
    int row, col;  // local to the block
    Variable var;
    Int coeff;
  };
  std::vector<int> dims;                             // block dimensions
  std::vector<std::vector<LinearEntry>> block_terms; // terms of B_k
  int eps = 1;                                       // the closed-form sign
};

// Validates the cyclic structure and extracts the evaluation plan.
inline PathPlan make_path_plan(const PencilMatrix& p) {
  require(p.layout.cyclic(), "path determinant: pencil has no cyclic block layout");
  const int B = static_cast<int>(p.layout.blocks.size());
  PathPlan plan;
  plan.dims.resize(B);
  std::vector<int> offs(B);
  for (int k = 0; k < B; ++k) {
    plan.dims[k] = p.layout.blocks[k].dim;
    offs[k] = p.layout.offset(k);
  }
  std::vector<int> diag_sign(B, 1);

  plan.block_terms.resize(B);
  for (int i = 0; i < p.n; ++i) {
    int bi = p.layout.block_of(i);
    for (int j = 0; j < p.n; ++j) {
      const IntForm& f = p.at(i, j);
      if (f.is_zero()) continue;
      int bj = p.layout.block_of(j);
      if (bi == bj && i == j && bi >= 1) {
        require(f.is_constant() && (f.constant() == 1 || f.constant() == -1),
                "path determinant: diagonal block is not +-identity");
        int c = f.constant() == 1 ? 1 : -1;
        if (i == offs[bi]) diag_sign[bi] = c;
        else require(diag_sign[bi] == c, "path determinant: mixed signs on a diagonal block");
      } else if (bi == (bj + 1) % B) {
        require(f.constant() == 0, "path determinant: affine entry in a chain block");
        for (auto& t : f.terms())
          plan.block_terms[bj].push_back({i - offs[bi], j - offs[bj], t.var, t.coeff});
      } else {
        throw std::invalid_argument(
            "path determinant: nonzero entry outside the cyclic chain at (" +
            std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  // Diagonal blocks must be full +-identities, not just have constant entries.
  for (int k = 1; k < B; ++k) {
    for (int d = 0; d < plan.dims[k]; ++d) {
      const IntForm& f = p.at(offs[k] + d, offs[k] + d);
      require(!f.is_zero(), "path determinant: zero on a diagonal block");
    }
  }

  int d0 = plan.dims[0];
  int eps = ((B - 1) * d0) % 2 ? -1 : 1;
  for (int k = 1; k < B; ++k) {
    int e = plan.dims[k] - d0;
    if (diag_sign[k] == -1 && (((e % 2) + 2) % 2) == 1) eps = -eps;
  }
  plan.eps = eps;
  return plan;
}

struct PathDetResult {
  Int value;
  std::uint64_t mults = 0;  // multiplications spent in the chain product
};

inline PathDetResult path_det(const PathPlan& plan, const IntMatrix& arg) {
  const int B = static_cast<int>(plan.dims.size());
  auto block_eval = [&](int k) {
    IntMatrix bk(plan.dims[(k + 1) % B], plan.dims[k]);
    for (auto& t : plan.block_terms[k])
      bk(t.row, t.col) += t.coeff * arg(t.var.up - 1, t.var.lo - 1);
    return bk;
  };
  PathDetResult res;
  IntMatrix acc = block_eval(0);
  res.mults += static_cast<std::uint64_t>(acc.rows()) * acc.cols();
  for (int k = 1; k < B; ++k) {
    IntMatrix bk = block_eval(k);
    // dense chain step: dims[k+1] x dims[k] times dims[k] x d0
    IntMatrix next(bk.rows(), acc.cols());
    for (int i = 0; i < bk.rows(); ++i)
      for (int l = 0; l < bk.cols(); ++l)
        for (int j = 0; j < acc.cols(); ++j) next(i, j) += bk(i, l) * acc(l, j);
    res.mults += static_cast<std::uint64_t>(bk.rows()) * bk.cols() * acc.cols();
    acc = std::move(next);
  }
  Int d = acc.rows() == 1 ? acc(0, 0) : det_exact(acc);
  res.value = plan.eps == 1 ? d : Int(-d);
  return res;
}

inline PathDetResult path_det(const PencilMatrix& p, const IntMatrix& arg) {
  require(p.argument_shape_ok(arg.rows(), arg.cols()),
          "path_det: argument matrix shape mismatch");
  return path_det(make_path_plan(p), arg);
}

// Same chain product carried out symbolically; exact determinant of the
// pencil as a polynomial, without the Laplace expansion's size bound.
inline Polynomial path_det_symbolic(const PencilMatrix& p) {
  PathPlan plan = make_path_plan(p);
  const int B = static_cast<int>(plan.dims.size());
  auto block_sym = [&](int k) {
    Matrix<Polynomial> bk(plan.dims[(k + 1) % B], plan.dims[k]);
    for (auto& t : plan.block_terms[k])
      bk(t.row, t.col) += Polynomial::monomial(Monomial::var(t.var), t.coeff);
    return bk;
  };
  Matrix<Polynomial> acc = block_sym(0);
  for (int k = 1; k < B; ++k) acc = block_sym(k) * acc;
  require(acc.rows() == 1 && acc.cols() == 1,
          "path_det_symbolic: corner block is not 1x1");
  Polynomial d = acc(0, 0);
  if (plan.eps == -1) d = -d;
  return d;
}

// ---------------------------------------------------------------------------
// Regularity normalization
//
// For a pencil whose constant part Lambda has rank exactly n-1, produce
// rational L and R with (L * A~ * R)(0) = diag(0, 1, ..., 1).  The
// transformed pencil has rational coefficients and its determinant is
// det(L)*det(R) times the original one.

struct NormalizeResult {
  RatMatrix left, right;
  Matrix<RatForm> entries;
  Rat det_scale;  // det(left) * det(right)
};

inline NormalizeResult normalize_regular(const PencilMatrix& p) {
  const int n = p.n;
  RatMatrix lambda = to_rational(p.constant_part());
  RatMatrix L = RatMatrix::identity(n);
  RatMatrix R = RatMatrix::identity(n);

  // Phase 1: reduced row echelon form, recording the row operations in L.
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int pivot = -1;
    for (int i = r; i < n; ++i)
      if (lambda(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < n; ++j) {
        swap(lambda(r, j), lambda(pivot, j));
        swap(L(r, j), L(pivot, j));
      }
    Rat d = lambda(r, c);
    for (int j = 0; j < n; ++j) {
      lambda(r, j) /= d;
      L(r, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == r || lambda(i, c) == 0) continue;
      Rat f = lambda(i, c);
      for (int j = 0; j < n; ++j) {
        lambda(i, j) -= f * lambda(r, j);
        L(i, j) -= f * L(r, j);
      }
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r != n - 1)
    throw std::domain_error("normalize_regular: pencil is not regular (rank of the "
                            "constant part is " + std::to_string(r) + ", need " +
                            std::to_string(n - 1) + ")");

  // Phase 2: each pivot column is a standard basis vector now, so clearing
  // the rest of a pivot row with column operations touches only that row.
  for (int i = 0; i < r; ++i) {
    int c = pivot_col[i];
    for (int j = 0; j < n; ++j) {
      if (j == c || lambda(i, j) == 0) continue;
      Rat f = lambda(i, j);
      for (int k = 0; k < n; ++k) {
        lambda(k, j) -= f * lambda(k, c);
        R(k, j) -= f * R(k, c);
      }
    }
  }

  // Phase 3: permute columns so pivot i lands at position i.
  std::vector<int> perm(n, -1);  // new position -> old column
  std::vector<bool> taken(n, false);
  for (int i = 0; i < r; ++i) {
    perm[i] = pivot_col[i];
    taken[pivot_col[i]] = true;
  }
  int fill = r;
  for (int j = 0; j < n; ++j)
    if (!taken[j]) perm[fill++] = j;
  RatMatrix lam2(n, n), R2(n, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      lam2(i, k) = lambda(i, perm[k]);
      R2(i, k) = R(i, perm[k]);
    }
  lambda = lam2;
  R = R2;
  DETREP_CHECK(lambda == [&] {
    RatMatrix d(n, n);
    for (int i = 0; i < r; ++i) d(i, i) = rat(1);
    return d;
  }(), "normalize_regular: reduction did not reach diag(1..1,0)");
  // L*Lambda*R = diag(1,...,1,0); rotate so the zero sits first.
  // Conjugate with the cycle 0 -> 1 -> ... -> n-1 -> 0 on basis positions.
  RatMatrix P(n, n), Pt(n, n);
  for (int i = 0; i < n; ++i) {
    P((i + 1) % n, i) = rat(1);   // new row (i+1 mod n) takes old row i
    Pt(i, (i + 1) % n) = rat(1);
  }
  L = P * L;
  R = R * Pt;

  NormalizeResult out;
  out.left = L;
  out.right = R;
  out.det_scale = det_exact(L) * det_exact(R);
  // entries = L * A~ * R, expanded over rational forms
  Matrix<RatForm> tmp(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (L(i, k) == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (p.at(k, j).is_zero()) continue;
        tmp(i, j) += to_rational(p.at(k, j)) * L(i, k);
      }
    }
  out.entries = Matrix<RatForm>(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (tmp(i, k).is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (R(k, j) == 0) continue;
        out.entries(i, j) += tmp(i, k) * R(k, j);
      }
    }
  return out;
}

}  // namespace detrep
