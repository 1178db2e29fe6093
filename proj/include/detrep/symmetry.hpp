#pragma once

// Symmetries of the pencil constructions.
//
// A group element g acts on the argument matrix y; the pencil respects the
// action when there are invertible block-diagonal B1, B2 with
//
//     A~(g . y) * B2 = B1 * A~(y),
//
// and then det A~(g.y) = chi(g) det A~(y) with chi = det(B1)/det(B2).
//
// Which actions are available depends on the construction:
//   * grenet:           monomial matrices acting on the column index of y
//                       (blocks carry the induced symmetric-power action)
//   * regular-det:      all of GL_m on the column index (blocks carry the
//                       induced wedge action, i.e. compound matrices)
//   * equivariant-*:    pairs acting as y -> g y h^(-1) (monomial pairs for
//                       the permanent, GL pairs for the determinant), plus
//                       the transpose y -> y^T
// The deliberately unsupported single-sided action (on the row index) is
// also implemented so tests can demonstrate that it breaks equivariance.

#include <cstdint>
#include <string>
#include <vector>

#include "detrep/core.hpp"
#include "detrep/linform.hpp"
#include "detrep/matrix.hpp"
#include "detrep/pencil.hpp"
#include "detrep/subsets.hpp"
#include "detrep/verify.hpp"

namespace detrep {

// Which index of y^i_j a single-sided element acts on.  Column is the
// symmetry the level-graded constructions are built for; Row is the
// "wrong side" used to witness that the symmetry really is one-sided.
enum class ActionSide { Column, Row };

struct MonomialData {
  std::vector<int> perm;   // 1-based images: element i maps to perm[i-1]
  std::vector<Rat> scale;  // nonzero scalars t_i

  // Matrix with entries M(perm(i), i) = t_{perm(i)} (i.e. diag(t) * P_sigma).
  RatMatrix matrix() const {
    int m = static_cast<int>(perm.size());
    RatMatrix g(m, m);
    for (int i = 1; i <= m; ++i) g(perm[i - 1] - 1, i - 1) = scale[perm[i - 1] - 1];
    return g;
  }

  Rat scale_product() const {
    Rat p = rat(1);
    for (auto& t : scale) p *= t;
    return p;
  }
};

class GroupElement {
 public:
  enum class Kind { MonomialSingle, GlSingle, MonomialPair, GlPair, TransposePair };

  static GroupElement monomial(MonomialData e, ActionSide side = ActionSide::Column) {
    GroupElement g;
    g.kind_ = Kind::MonomialSingle;
    g.side_ = side;
    g.e_ = std::move(e);
    g.validate_monomial(g.e_);
    return g;
  }

  static GroupElement gl(RatMatrix ge, ActionSide side = ActionSide::Column) {
    GroupElement g;
    g.kind_ = Kind::GlSingle;
    g.side_ = side;
    require(ge.rows() == ge.cols(), "group element: matrix must be square");
    require(det_exact(ge) != 0, "group element: matrix must be invertible");
    g.ge_ = std::move(ge);
    return g;
  }

  static GroupElement monomial_pair(MonomialData e, MonomialData f) {
    GroupElement g;
    g.kind_ = Kind::MonomialPair;
    g.e_ = std::move(e);
    g.f_ = std::move(f);
    g.validate_monomial(g.e_);
    g.validate_monomial(g.f_);
    require(g.e_.perm.size() == g.f_.perm.size(),
            "group element: pair components of different sizes");
    return g;
  }

  static GroupElement gl_pair(RatMatrix ge, RatMatrix he) {
    GroupElement g;
    g.kind_ = Kind::GlPair;
    require(ge.rows() == ge.cols() && he.rows() == he.cols() && ge.rows() == he.rows(),
            "group element: pair matrices must be square of equal size");
    require(det_exact(ge) != 0 && det_exact(he) != 0,
            "group element: pair matrices must be invertible");
    g.ge_ = std::move(ge);
    g.he_ = std::move(he);
    return g;
  }

  static GroupElement transpose() {
    GroupElement g;
    g.kind_ = Kind::TransposePair;
    return g;
  }

  Kind kind() const { return kind_; }
  ActionSide side() const { return side_; }
  const MonomialData& e_monomial() const { return e_; }
  const MonomialData& f_monomial() const { return f_; }

  int size() const {
    switch (kind_) {
      case Kind::MonomialSingle: return static_cast<int>(e_.perm.size());
      case Kind::GlSingle: return ge_.rows();
      case Kind::MonomialPair: return static_cast<int>(e_.perm.size());
      case Kind::GlPair: return ge_.rows();
      case Kind::TransposePair: return 0;  // size-agnostic
    }
    return 0;
  }

  RatMatrix e_matrix() const {
    switch (kind_) {
      case Kind::MonomialSingle:
      case Kind::MonomialPair: return e_.matrix();
      case Kind::GlSingle:
      case Kind::GlPair: return ge_;
      default: throw std::invalid_argument("group element has no E-side matrix");
    }
  }

  RatMatrix f_matrix() const {
    switch (kind_) {
      case Kind::MonomialPair: return f_.matrix();
      case Kind::GlPair: return he_;
      default: throw std::invalid_argument("group element has no F-side matrix");
    }
  }

  // Composition g * o (apply o first).  Only defined between elements of the
  // same kind and side.
  GroupElement compose(const GroupElement& o) const {
    require(kind_ == o.kind_ && side_ == o.side_,
            "compose: mixed group element kinds");
    switch (kind_) {
      case Kind::MonomialSingle:
        return monomial(compose_monomial(e_, o.e_), side_);
      case Kind::GlSingle: return gl(ge_ * o.ge_, side_);
      case Kind::MonomialPair:
        return monomial_pair(compose_monomial(e_, o.e_), compose_monomial(f_, o.f_));
      case Kind::GlPair: return gl_pair(ge_ * o.ge_, he_ * o.he_);
      case Kind::TransposePair:
        throw std::invalid_argument("compose: transpose composition not supported");
    }
    throw std::logic_error("compose: unreachable");
  }

 private:
  static MonomialData compose_monomial(const MonomialData& a, const MonomialData& b) {
    // matrix(a) * matrix(b): permutation sigma_a o sigma_b, scales
    // t_i = a.scale_i * b.scale_{sigma_a^{-1}(i)} ... assembled directly from
    // the matrix product to avoid index gymnastics.
    int m = static_cast<int>(a.perm.size());
    RatMatrix prod = a.matrix() * b.matrix();
    MonomialData c;
    c.perm.resize(m);
    c.scale.resize(m);
    for (int j = 1; j <= m; ++j) {
      for (int i = 1; i <= m; ++i) {
        if (prod(i - 1, j - 1) != 0) {
          c.perm[j - 1] = i;
          c.scale[i - 1] = prod(i - 1, j - 1);
        }
      }
    }
    return c;
  }

  void validate_monomial(const MonomialData& d) const {
    int m = static_cast<int>(d.perm.size());
    require(d.scale.size() == d.perm.size(), "monomial data: size mismatch");
    std::vector<bool> seen(m, false);
    for (int v : d.perm) {
      require(v >= 1 && v <= m, "monomial data: permutation image out of range");
      require(!seen[v - 1], "monomial data: not a permutation");
      seen[v - 1] = true;
    }
    for (auto& t : d.scale) require(t != 0, "monomial data: zero scale");
  }

  Kind kind_ = Kind::TransposePair;
  ActionSide side_ = ActionSide::Column;
  MonomialData e_, f_;
  RatMatrix ge_, he_;
};

// ---------------------------------------------------------------------------
// Action on the argument

namespace detail {
inline bool is_level_graded(const PencilMatrix& p) {
  return p.construction == "grenet" || p.construction == "regular-det";
}
inline bool is_pair_graded(const PencilMatrix& p) {
  return p.construction == "equivariant-perm" || p.construction == "equivariant-det";
}

inline void require_compatible(const GroupElement& g, const PencilMatrix& p) {
  using K = GroupElement::Kind;
  switch (g.kind()) {
    case K::MonomialSingle:
      require(is_level_graded(p),
              "group element: single-sided monomial only acts on the level-graded "
              "constructions");
      break;
    case K::GlSingle:
      require(p.construction == "regular-det",
              "group element: general linear action requires regular-det");
      break;
    case K::MonomialPair:
      require(is_pair_graded(p), "group element: pairs act on the equivariant "
                                 "constructions");
      break;
    case K::GlPair:
      require(p.construction == "equivariant-det",
              "group element: general linear pairs require equivariant-det");
      break;
    case K::TransposePair:
      require(is_pair_graded(p),
              "group element: transpose acts on the equivariant constructions");
      break;
  }
  if (g.kind() != K::TransposePair)
    require(g.size() == p.m, "group element size does not match the construction");
}
}  // namespace detail

// The transformed argument g.y as an arg_rows x arg_cols matrix of linear
// forms, entry (i, j) being what y^{i+1}_{j+1} becomes.
inline Matrix<RatForm> act_on_argument(const GroupElement& g, const PencilMatrix& p) {
  detail::require_compatible(g, p);
  using K = GroupElement::Kind;
  Matrix<RatForm> out(p.arg_rows, p.arg_cols);

  if (g.kind() == K::MonomialSingle || g.kind() == K::GlSingle) {
    RatMatrix G = g.e_matrix();
    if (g.side() == ActionSide::Column) {
      // (g.y)^i_j = sum_l G(j, l) y^i_l : each level transforms as a vector
      // of coordinates on E.
      for (int i = 1; i <= p.arg_rows; ++i)
        for (int j = 1; j <= p.arg_cols; ++j)
          for (int l = 1; l <= p.arg_cols; ++l)
            out(i - 1, j - 1).add_term({i, l}, G(j - 1, l - 1));
    } else {
      // wrong side: act on the level index instead
      for (int i = 1; i <= p.arg_rows; ++i)
        for (int j = 1; j <= p.arg_cols; ++j)
          for (int l = 1; l <= p.arg_rows; ++l)
            out(i - 1, j - 1).add_term({l, j}, G(i - 1, l - 1));
    }
    return out;
  }
  if (g.kind() == K::MonomialPair || g.kind() == K::GlPair) {
    // g.y = G y H^(-1)
    RatMatrix G = g.e_matrix();
    RatMatrix Hinv = inverse(g.f_matrix());
    for (int i = 1; i <= p.arg_rows; ++i)
      for (int j = 1; j <= p.arg_cols; ++j)
        for (int a = 1; a <= p.arg_rows; ++a)
          for (int b = 1; b <= p.arg_cols; ++b) {
            Rat c = G(i - 1, a - 1) * Hinv(b - 1, j - 1);
            if (c != 0) out(i - 1, j - 1).add_term({a, b}, c);
          }
    return out;
  }
  // transpose
  for (int i = 1; i <= p.arg_rows; ++i)
    for (int j = 1; j <= p.arg_cols; ++j)
      out(i - 1, j - 1).add_term({j, i}, rat(1));
  return out;
}

// Expected determinant character chi(g) for a compatible pair.
inline Rat expected_character(const GroupElement& g, const PencilMatrix& p) {
  using K = GroupElement::Kind;
  switch (g.kind()) {
    case K::MonomialSingle: return g.e_monomial().scale_product();
    case K::GlSingle: return det_exact(g.e_matrix());
    case K::MonomialPair:
      return g.e_monomial().scale_product() / g.f_monomial().scale_product();
    case K::GlPair: return det_exact(g.e_matrix()) / det_exact(g.f_matrix());
    case K::TransposePair: return rat(1);
  }
  throw std::logic_error("expected_character: unreachable");
}

// ---------------------------------------------------------------------------
// Induced block actions

namespace detail {

// Induced action on the degree-k block of the symmetric-power chain for a
// monomial element: basis vector e_I maps to (prod_{i in I} t_{sigma(i)}) times
// e_{sigma(I)}.
inline RatMatrix sym_block(const MonomialData& d, int m, int k) {
  auto subsets = subsets_of_size(m, k);
  int dim = static_cast<int>(subsets.size());
  RatMatrix u(dim, dim);
  for (int c = 0; c < dim; ++c) {
    Subset I = subsets[c];
    Subset image = 0;
    Rat coeff = rat(1);
    for (int i = 1; i <= m; ++i)
      if (subset_contains(I, i)) {
        image |= Subset(1) << (d.perm[i - 1] - 1);
        coeff *= d.scale[d.perm[i - 1] - 1];
      }
    u(static_cast<int>(subset_rank(image)), c) = coeff;
  }
  return u;
}

// Induced action on the degree-k wedge block: the k-th compound matrix,
// entry (J, I) = det of the submatrix of g on rows J and columns I.
inline RatMatrix wedge_block(const RatMatrix& g, int k) {
  int m = g.rows();
  auto subsets = subsets_of_size(m, k);
  int dim = static_cast<int>(subsets.size());
  RatMatrix u(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) {
      RatMatrix sub(k, k);
      int a = 0;
      for (int i = 1; i <= m; ++i) {
        if (!subset_contains(subsets[r], i)) continue;
        int b = 0;
        for (int j = 1; j <= m; ++j) {
          if (!subset_contains(subsets[c], j)) continue;
          sub(a, b) = g(i - 1, j - 1);
          ++b;
        }
        ++a;
      }
      u(r, c) = det_exact(sub);
    }
  return u;
}

// Kronecker product in the pair-block basis (I, J) -> rank(I)*b + rank(J).
inline RatMatrix kron(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (int r = 0; r < b.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c)
          if (b(r, c) != 0) k(i * b.rows() + r, j * b.cols() + c) = a(i, j) * b(r, c);
    }
  return k;
}

// Permutation of the pair block swapping (I, J) -> (J, I).
inline RatMatrix pair_swap_block(int m, int k) {
  int b = static_cast<int>(binom(m, k));
  RatMatrix u(b * b, b * b);
  for (int i = 0; i < b; ++i)
    for (int j = 0; j < b; ++j) u(j * b + i, i * b + j) = rat(1);
  return u;
}

}  // namespace detail

// The lifted pair (B1, B2), stored blockwise along the pencil layout.
struct LiftedPair {
  std::vector<RatMatrix> b1, b2;  // one block per layout block
  Rat det_b1, det_b2;

  Rat character() const { return det_b1 / det_b2; }
};

// Builds the block-diagonal lift realizing A~(g.y) B2 = B1 A~(y).  The chain
// blocks carry the induced action of g (symmetric, wedge, or pair-tensor);
// B1 and B2 agree there and differ only on the corner block, where B1 carries
// the character scalar.
inline LiftedPair induced_action(const GroupElement& g, const PencilMatrix& p) {
  detail::require_compatible(g, p);
  require(p.layout.cyclic() && p.layout.blocks[0].dim == 1,
          "induced_action: pencil must have the cyclic block layout");
  using K = GroupElement::Kind;
  const int m = static_cast<int>(p.layout.blocks.size());

  LiftedPair lift;
  lift.b1.resize(m);
  lift.b2.resize(m);
  for (int k = 1; k < m; ++k) {
    RatMatrix u;
    switch (g.kind()) {
      case K::MonomialSingle:
        if (p.construction == "grenet") {
          u = detail::sym_block(g.e_monomial(), p.m, k);
        } else {
          u = detail::wedge_block(g.e_matrix(), k);
        }
        break;
      case K::GlSingle: u = detail::wedge_block(g.e_matrix(), k); break;
      case K::MonomialPair: {
        RatMatrix ue = detail::sym_block(g.e_monomial(), p.m, k);
        // F-side: inverse-transpose of the induced action
        RatMatrix uf = detail::sym_block(g.f_monomial(), p.m, k);
        u = detail::kron(ue, inverse(uf).transpose());
        break;
      }
      case K::GlPair: {
        RatMatrix ue = detail::wedge_block(g.e_matrix(), k);
        RatMatrix uf = detail::wedge_block(inverse(g.f_matrix()), k).transpose();
        u = detail::kron(ue, uf);
        break;
      }
      case K::TransposePair: u = detail::pair_swap_block(p.m, k); break;
    }
    require(u.rows() == p.layout.blocks[k].dim,
            "induced_action: block dimension mismatch");
    lift.b1[k] = u;
    lift.b2[k] = u;
  }
  Rat chi = expected_character(g, p);
  lift.b1[0] = RatMatrix(1, 1);
  lift.b1[0](0, 0) = chi;
  lift.b2[0] = RatMatrix::identity(1);

  lift.det_b1 = rat(1);
  lift.det_b2 = rat(1);
  for (int k = 0; k < m; ++k) {
    Rat d1 = det_exact(lift.b1[k]);
    Rat d2 = k == 0 ? rat(1) : d1;  // shared blocks, computed once
    if (k == 0) d2 = det_exact(lift.b2[k]);
    require(d1 != 0 && d2 != 0, "induced_action: lift block is singular");
    lift.det_b1 *= d1;
    lift.det_b2 *= d2;
  }
  return lift;
}

// ---------------------------------------------------------------------------
// Equivariance check

struct EquivarianceResult {
  bool pass = false;
  Rat character;      // det(B1)/det(B2) of the lift that was tried
  std::string witness;  // first failing entry when !pass
};

// Exact check of A~(g.y) * B2 = B1 * A~(y) over Q, plus the character
// consistency chi = det(B1)/det(B2) = expected_character(g).
inline EquivarianceResult check_equivariance(const PencilMatrix& p,
                                             const GroupElement& g) {
  EquivarianceResult res;
  LiftedPair lift = induced_action(g, p);
  Matrix<RatForm> acted = act_on_argument(g, p);

  const int nb = static_cast<int>(p.layout.blocks.size());
  std::vector<int> offs(nb);
  for (int k = 0; k < nb; ++k) offs[k] = p.layout.offset(k);

  // Accumulate LHS = A~(g.y) B2 and RHS = B1 A~(y) by scattering the sparse
  // pencil entries through the block-diagonal lift factors.
  Matrix<RatForm> lhs(p.n, p.n), rhs(p.n, p.n);
  for (int i = 0; i < p.n; ++i) {
    int bi = p.layout.block_of(i);
    for (int c = 0; c < p.n; ++c) {
      const IntForm& entry = p.at(i, c);
      if (entry.is_zero()) continue;
      RatForm sub = to_rational(entry).substitute<Rat>(
          [&](Variable v) { return acted(v.up - 1, v.lo - 1); });
      RatForm orig = to_rational(entry);
      int bc = p.layout.block_of(c);
      // (A~(g.y) B2)(i, j) picks up sub * B2(c, j) for j in c's block
      const RatMatrix& u2 = lift.b2[bc];
      for (int j = 0; j < p.layout.blocks[bc].dim; ++j) {
        const Rat& w = u2(c - offs[bc], j);
        if (w != 0) lhs(i, offs[bc] + j) += sub * w;
      }
      // (B1 A~(y))(r, c) picks up orig * B1(r, i) for r in i's block
      const RatMatrix& u1 = lift.b1[bi];
      for (int r = 0; r < p.layout.blocks[bi].dim; ++r) {
        const Rat& w = u1(r, i - offs[bi]);
        if (w != 0) rhs(offs[bi] + r, c) += orig * w;
      }
    }
  }
  for (int i = 0; i < p.n; ++i)
    for (int j = 0; j < p.n; ++j)
      if (!(lhs(i, j) == rhs(i, j))) {
        res.pass = false;
        res.character = lift.character();
        res.witness = "entry (" + std::to_string(i) + "," + std::to_string(j) +
                      "): transformed " + lhs(i, j).str() + " vs lifted " +
                      rhs(i, j).str();
        return res;
      }
  res.character = lift.character();
  if (res.character != expected_character(g, p)) {
    res.pass = false;
    res.witness = "character mismatch: det(B1)/det(B2) = " + res.character.get_str() +
                  ", expected " + expected_character(g, p).get_str();
    return res;
  }
  res.pass = true;
  return res;
}

// ---------------------------------------------------------------------------
// Seeded random elements for test suites

inline MonomialData random_monomial_data(SplitMix64& rng, int m) {
  MonomialData d;
  d.perm.resize(m);
  for (int i = 0; i < m; ++i) d.perm[i] = i + 1;
  for (int i = m - 1; i > 0; --i)
    std::swap(d.perm[i], d.perm[rng.next() % (i + 1)]);
  d.scale.resize(m);
  for (int i = 0; i < m; ++i) {
    long num = 0;
    while (num == 0) num = rng.next_in(-5, 5);
    long den = rng.next_in(1, 3);
    d.scale[i] = rat(num, den);
  }
  return d;
}

inline RatMatrix random_gl(SplitMix64& rng, int m) {
  while (true) {
    RatMatrix g(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(i, j) = rat(rng.next_in(-3, 3));
    if (det_exact(g) != 0) return g;
  }
}

inline MonomialData identity_monomial(int m) {
  MonomialData d;
  d.perm.resize(m);
  d.scale.assign(m, rat(1));
  for (int i = 0; i < m; ++i) d.perm[i] = i + 1;
  return d;
}

// A seeded batch of equivariance cases appropriate for the construction.
// Respected actions carry expect_pass = true; with include_wrong_side the
// level-graded suites also draw the row-index action, which no block lift
// supports (expect_pass = false).  For the pair-graded constructions the
// "other side" is genuinely respected, so the extended suite adds
// F-component-only elements and the transpose, all expected to pass.
struct EquivarianceCase {
  std::string description;
  bool expect_pass = true;
  GroupElement element;
};

inline std::vector<EquivarianceCase> equivariance_suite(const PencilMatrix& p,
                                                        bool include_wrong_side,
                                                        int samples,
                                                        std::uint64_t seed) {
  std::vector<EquivarianceCase> cases;
  SplitMix64 rng(seed);
  auto tag = [](const std::string& s, int t) { return s + " #" + std::to_string(t); };

  if (p.construction == "grenet") {
    for (int t = 0; t < samples; ++t)
      cases.push_back({tag("monomial on columns", t), true,
                       GroupElement::monomial(random_monomial_data(rng, p.m))});
    if (include_wrong_side)
      for (int t = 0; t < std::max(1, samples / 4); ++t)
        cases.push_back({tag("monomial on rows (unsupported side)", t), false,
                         GroupElement::monomial(random_monomial_data(rng, p.m),
                                                ActionSide::Row)});
  } else if (p.construction == "regular-det") {
    for (int t = 0; t < samples; ++t)
      cases.push_back(
          {tag("general linear on columns", t), true, GroupElement::gl(random_gl(rng, p.m))});
    if (include_wrong_side)
      for (int t = 0; t < std::max(1, samples / 4); ++t)
        cases.push_back({tag("general linear on rows (unsupported side)", t), false,
                         GroupElement::gl(random_gl(rng, p.m), ActionSide::Row)});
  } else if (p.construction == "equivariant-perm") {
    for (int t = 0; t < samples; ++t)
      cases.push_back({tag("monomial pair", t), true,
                       GroupElement::monomial_pair(random_monomial_data(rng, p.m),
                                                   random_monomial_data(rng, p.m))});
    if (include_wrong_side) {
      for (int t = 0; t < std::max(1, samples / 2); ++t)
        cases.push_back({tag("row-side-only monomial pair", t), true,
                         GroupElement::monomial_pair(random_monomial_data(rng, p.m),
                                                     identity_monomial(p.m))});
      for (int t = 0; t < std::max(1, samples / 2); ++t)
        cases.push_back({tag("column-side-only monomial pair", t), true,
                         GroupElement::monomial_pair(identity_monomial(p.m),
                                                     random_monomial_data(rng, p.m))});
      cases.push_back({"transpose", true, GroupElement::transpose()});
    }
  } else if (p.construction == "equivariant-det") {
    for (int t = 0; t < samples; ++t)
      cases.push_back({tag("general linear pair", t), true,
                       GroupElement::gl_pair(random_gl(rng, p.m), random_gl(rng, p.m))});
    if (include_wrong_side) {
      for (int t = 0; t < std::max(1, samples / 2); ++t)
        cases.push_back({tag("row-side-only pair", t), true,
                         GroupElement::gl_pair(random_gl(rng, p.m),
                                               to_rational(IntMatrix::identity(p.m)))});
      for (int t = 0; t < std::max(1, samples / 2); ++t)
        cases.push_back({tag("column-side-only pair", t), true,
                         GroupElement::gl_pair(to_rational(IntMatrix::identity(p.m)),
                                               random_gl(rng, p.m))});
      cases.push_back({"transpose", true, GroupElement::transpose()});
    }
  } else {
    require(false, "equivariance_suite: construction '" + p.construction +
                       "' has no symmetry suite");
  }
  return cases;
}

}  // namespace detrep
