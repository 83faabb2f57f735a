#include "clag/scheme.hpp"

#include <algorithm>
#include <numeric>

#include "clag/error.hpp"

namespace clag {

std::string scheme_kind_name(SchemeKind kind) { return kind == SchemeKind::Lines ? "lines" : "hyperplanes"; }

namespace {

Rational frac(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
  RatMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

// First common point of two sorted point lists, if any.
std::optional<std::uint32_t> common_point(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return *i;
    if (*i < *j)
      ++i;
    else
      ++j;
  }
  return std::nullopt;
}

int relation_by_index(SchemeKind kind, const ProjectiveSpace& pg, int k, std::size_t a, std::size_t b) {
  if (a == b) return 0;
  const auto& pts = pg.subspaces(k).points;
  const auto affine = pg.points().affine_count;
  const auto c = common_point(pts[a], pts[b]);
  if (kind == SchemeKind::Lines) {
    if (!c) return 3;
    return *c < affine ? 1 : 2;
  }
  // Hyperplanes always meet projectively; the first common point is affine
  // whenever any is, since affine indices come first.
  return c && *c < affine ? 2 : 1;
}

BigInt lcm_of_denominators(const RatMatrix& m) {
  BigInt l = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  return l;
}

std::int64_t to_i64(const BigInt& v) {
  if (!v.fits_slong_p()) throw Error(ErrorCode::SizeGuard, "scaled idempotent entry exceeds 64 bits");
  return v.get_si();
}

// Characteristic polynomial coefficients c_0..c_n (monic) by Faddeev-LeVerrier.
std::vector<Rational> char_poly(const RatMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RatMatrix m = RatMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      m = a * m;
      for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    }
    RatMatrix am = a * m;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

// Kernel vector of a rank-deficient square matrix with one-dimensional kernel.
std::optional<std::vector<Rational>> null_vector(RatMatrix m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t p = r;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(m(r, j), m(p, j));
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < n; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  if (pivots.size() != n - 1) return std::nullopt;
  std::size_t free = 0;
  while (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) ++free;
  std::vector<Rational> v(n, 0);
  v[free] = 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
  return v;
}

void check_order(std::uint32_t q) { prime_power(q); }

}  // namespace

int classify_line_pair(const ProjectiveSpace& pg, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != pg.n() || b.ambient_dim() != pg.n())
    throw Error(ErrorCode::AmbientMismatch, "lines from a different space");
  if (a.dim() != 1 || b.dim() != 1 || !a.is_affine() || !b.is_affine())
    throw Error(ErrorCode::AmbientMismatch, "line relations need two affine lines");
  if (a == b) return 0;
  const Subspace m = pg.meet(a, b);
  if (m.is_empty()) return 3;
  return m.is_affine() ? 1 : 2;
}

int classify_hyperplane_pair(const ProjectiveSpace& pg, const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != pg.n() || b.ambient_dim() != pg.n())
    throw Error(ErrorCode::AmbientMismatch, "hyperplanes from a different space");
  if (a.dim() != pg.n() - 1 || b.dim() != pg.n() - 1 || !a.is_affine() || !b.is_affine())
    throw Error(ErrorCode::AmbientMismatch, "hyperplane relations need two affine hyperplanes");
  if (a == b) return 0;
  return pg.meet(a, b).is_affine() ? 2 : 1;
}

BigInt scheme_set_size(SchemeKind kind, int n, std::uint32_t q) {
  check_order(q);
  const BigInt theta = (ipow(q, n) - 1) / (q - 1);
  if (kind == SchemeKind::Lines) return ipow(q, n - 1) * theta;
  return BigInt(q) * theta;
}

IntersectionMatrices line_intersection_closed(int n, std::uint32_t q) {
  check_order(q);
  if (n < 3) throw Error(ErrorCode::DimensionOutOfRange, "the line scheme needs n >= 3");
  const BigInt Q = q;
  const BigInt qn = ipow(q, n), qn1 = ipow(q, n - 1), qnp1 = ipow(q, n + 1), q2n1 = ipow(q, 2 * n - 1);
  const BigInt q2 = Q * Q, q3 = q2 * Q;
  const BigInt theta = (qn - 1) / (Q - 1);
  auto r = [](const BigInt& v) { return Rational(v); };

  IntersectionMatrices out;
  out.push_back(RatMatrix::identity(4));
  out.push_back(from_rows({
      {0, r(Q * (theta - 1)), 0, 0},
      {1, r((Q - 1) * (Q - 1) + theta - 2), r(Q - 1), r((Q - 1) * (theta - 1 - Q))},
      {0, r(q2), 0, r(Q * (theta - 1 - Q))},
      {0, r(q2), r(Q), r(Q * (theta - 1 - (Q + 1)))},
  }));
  out.push_back(from_rows({
      {0, 0, r(qn1 - 1), 0},
      {0, r(Q - 1), 0, r(qn1 - Q)},
      {1, 0, r(qn1 - 2), 0},
      {0, r(Q), 0, r(qn1 - 1 - Q)},
  }));
  out.push_back(from_rows({
      {0, 0, 0, frac(q2 - (Q + 1) * qn + q2n1, Q - 1)},
      {0, r(qn - q2), r(qn1 - Q), frac(q3 + q2 - (2 * q2 + Q - 1) * qn1 - Q + q2n1, Q - 1)},
      {0, -frac(q3 - qnp1, Q - 1), 0, frac(q3 + q2 - (2 * Q + 1) * qn + q2n1, Q - 1)},
      {1, -frac(q3 + q2 - Q - qnp1, Q - 1), r(qn1 - Q - 1),
       frac(q3 + 3 * q2 - (2 * q2 + 2 * Q - 1) * qn1 - 2 * Q + q2n1, Q - 1)},
  }));
  return out;
}

RatMatrix line_P_closed(int n, std::uint32_t q) {
  check_order(q);
  if (n < 3) throw Error(ErrorCode::DimensionOutOfRange, "the line scheme needs n >= 3");
  const BigInt Q = q;
  const BigInt qn = ipow(q, n), qn1 = ipow(q, n - 1), qnp1 = ipow(q, n + 1), q2n1 = ipow(q, 2 * n - 1);
  const BigInt q2 = Q * Q;
  return from_rows({
      {1, -frac(q2 - qnp1, Q - 1), Rational(qn1 - 1), frac(q2 - (Q + 1) * qn + q2n1, Q - 1)},
      {1, -frac(q2 - qn, Q - 1), -1, frac(q2 - qn, Q - 1)},
      {1, Rational(-Q), -1, Rational(Q)},
      {1, Rational(-Q), Rational(qn1 - 1), Rational(Q - qn1)},
  });
}

RatMatrix line_Q_closed(int n, std::uint32_t q) {
  check_order(q);
  if (n < 3) throw Error(ErrorCode::DimensionOutOfRange, "the line scheme needs n >= 3");
  const BigInt Q = q;
  const BigInt qn = ipow(q, n), qnp1 = ipow(q, n + 1), q2n = ipow(q, 2 * n);
  const BigInt q2 = Q * Q;
  const BigInt w = (q2 + 1) * qn - q2 - q2n;
  return from_rows({
      {1, Rational(qn - 1), -frac(w, q2 - Q), frac(qn - Q, Q - 1)},
      {1, frac(w, q2 - qnp1), -frac(w, q2 - qnp1), -1},
      {1, frac(Q - qnp1, qn - Q), frac(w, (Q - 1) * qn - q2 + Q), frac(qn - Q, Q - 1)},
      {1, frac(Q - qnp1, qn - Q), frac(qnp1 - Q, qn - Q), -1},
  });
}

SchemeTables line_scheme_closed(int n, std::uint32_t q) {
  return {SchemeKind::Lines, n, q, 3, scheme_set_size(SchemeKind::Lines, n, q), line_intersection_closed(n, q),
          line_P_closed(n, q), line_Q_closed(n, q)};
}

RatMatrix hyperplane_P_printed(int n, std::uint32_t q) {
  check_order(q);
  const BigInt Q = q;
  return from_rows({
      {1, Rational(Q - 1), frac(ipow(q, n + 1) - 1, Q - 1)},
      {1, Rational(Q - 1), -1},
      {1, -1, 0},
  });
}

RatMatrix hyperplane_Q_printed(int n, std::uint32_t q) {
  check_order(q);
  const BigInt Q = q, qn = ipow(q, n);
  return from_rows({
      {1, frac(qn - Q, Q - 1), Rational(qn - 1)},
      {1, frac(qn - Q, Q - 1), -frac(qn - 1, Q - 1)},
      {1, -1, 0},
  });
}

RatMatrix hyperplane_P_adjudicated(int n, std::uint32_t q) {
  check_order(q);
  const BigInt Q = q;
  return from_rows({
      {1, Rational(Q - 1), frac(ipow(q, n + 1) - Q * Q, Q - 1)},
      {1, Rational(Q - 1), Rational(-Q)},
      {1, -1, 0},
  });
}

RelationTable::RelationTable(SchemeKind kind, const AmbientSpace& affine, SizeGuards guards)
    : kind_(kind), space_(affine) {
  if (!affine.is_affine()) throw Error(ErrorCode::GeometryMismatch, "schemes are defined on affine spaces");
  const int n = affine.n();
  if (kind == SchemeKind::Lines && n < 2) throw Error(ErrorCode::DimensionOutOfRange, "line scheme needs n >= 2");
  k_ = kind == SchemeKind::Lines ? 1 : n - 1;
  classes_ = kind == SchemeKind::Lines ? 3 : 2;
  size_ = affine.k_space_count(k_);
  if (static_cast<std::uint64_t>(size_) * size_ > guards.matrix_entries)
    throw Error(ErrorCode::SizeGuard, affine.describe() + " relation table " + std::to_string(size_) + "^2 exceeds the size guard");
  rel_.resize(size_ * size_);
  for (std::size_t a = 0; a < size_; ++a)
    for (std::size_t b = 0; b < size_; ++b)
      rel_[a * size_ + b] = static_cast<std::uint8_t>(relation_by_index(kind, *affine.pg, k_, a, b));
}

BruteScheme brute_force_scheme(const RelationTable& rel, bool exhaustive, const RatMatrix* reference_P) {
  const std::size_t d1 = static_cast<std::size_t>(rel.classes()) + 1;
  const std::size_t n = rel.size();
  BruteScheme out;
  out.axioms.exhaustive = exhaustive;

  out.valencies.assign(d1, 0);
  for (std::size_t b = 0; b < n; ++b) out.valencies[rel(0, b)] += 1;

  for (std::size_t a = 0; a < n && out.axioms.identity && out.axioms.symmetric; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if ((rel(a, b) == 0) != (a == b)) {
        out.axioms.identity = false;
        out.axioms.failure = "R_0 is not the diagonal";
        break;
      }
      if (rel(a, b) != rel(b, a)) {
        out.axioms.symmetric = false;
        out.axioms.failure = "relations are not symmetric";
        break;
      }
    }

  // counts[i*d1+j] for a pair (x, y)
  auto count_pair = [&](std::size_t x, std::size_t y) {
    std::vector<std::uint64_t> c(d1 * d1, 0);
    for (std::size_t z = 0; z < n; ++z) ++c[rel(x, z) * d1 + rel(z, y)];
    return c;
  };
  std::vector<std::optional<std::vector<std::uint64_t>>> ref(d1);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const int k = rel(x, y);
      if (ref[k] && !exhaustive) continue;
      auto c = count_pair(x, y);
      ++out.axioms.pairs_checked;
      if (!ref[k]) {
        ref[k] = std::move(c);
      } else if (*ref[k] != c && out.axioms.constant) {
        out.axioms.constant = false;
        out.axioms.failure = "p_ij^" + std::to_string(k) + " depends on the pair";
      }
    }
    if (!exhaustive && std::all_of(ref.begin(), ref.end(), [](const auto& r) { return r.has_value(); })) break;
  }
  for (std::size_t k = 0; k < d1; ++k)
    if (!ref[k]) throw Error(ErrorCode::InvalidInput, "relation " + std::to_string(k) + " is empty");

  out.intersection.assign(d1, RatMatrix(d1, d1));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t k = 0; k < d1; ++k)
      for (std::size_t j = 0; j < d1; ++j)
        out.intersection[i](k, j) = static_cast<unsigned long>((*ref[k])[i * d1 + j]);

  out.P = eigenmatrix_from_intersection(out.intersection);
  if (reference_P) out.P = align_rows(out.P, *reference_P);
  out.Q = dual_from_eigenmatrix(out.P, BigInt(static_cast<unsigned long>(n)));
  return out;
}

RatMatrix eigenmatrix_from_intersection(const IntersectionMatrices& mats) {
  const std::size_t d1 = mats.size();
  std::vector<Rational> valency(d1);
  for (std::size_t i = 0; i < d1; ++i) valency[i] = mats[i](0, i);  // p_{i i}^0 = k_i

  static const int coefficients[][3] = {{1, 2, 5}, {1, 3, 7}, {2, 5, 11}, {3, 7, 13}, {1, -2, 4}, {5, 1, 17}};
  for (const auto& co : coefficients) {
    // M^T with M = sum c_i P_i: left eigenvectors of every P_i are right
    // eigenvectors of M^T.
    RatMatrix m(d1, d1);
    Rational b = 0;
    for (std::size_t i = 1; i < d1; ++i) {
      const int c = i - 1 < 3 ? co[i - 1] : static_cast<int>(i);
      for (std::size_t r = 0; r < d1; ++r)
        for (std::size_t s = 0; s < d1; ++s) m(s, r) += c * mats[i](r, s);
      b += std::abs(c) * valency[i];
    }
    const auto poly = char_poly(m);
    std::vector<long> roots;
    const long limit = BigInt(b.get_num() / b.get_den()).get_si() + 1;
    for (long x = -limit; x <= limit && roots.size() < d1; ++x) {
      Rational val = 0;
      for (std::size_t t = poly.size(); t-- > 0;) val = val * x + poly[t];
      if (val == 0) roots.push_back(x);
    }
    if (roots.size() != d1) continue;
    RatMatrix p(d1, d1);
    bool ok = true;
    for (std::size_t r = 0; r < d1 && ok; ++r) {
      RatMatrix shifted = m;
      for (std::size_t i = 0; i < d1; ++i) shifted(i, i) -= roots[r];
      auto v = null_vector(shifted);
      if (!v || (*v)[0] == 0) {
        ok = false;
        break;
      }
      const Rational lead = (*v)[0];
      for (std::size_t j = 0; j < d1; ++j) p(r, j) = (*v)[j] / lead;
    }
    if (!ok) continue;
    // Put the trivial eigenvector (the valencies) first, the rest by
    // decreasing second entry for a stable order.
    std::vector<std::size_t> order(d1);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
      bool triv_a = true, triv_c = true;
      for (std::size_t j = 0; j < d1; ++j) {
        triv_a = triv_a && p(a, j) == valency[j];
        triv_c = triv_c && p(c, j) == valency[j];
      }
      if (triv_a != triv_c) return triv_a;
      for (std::size_t j = 1; j < d1; ++j)
        if (p(a, j) != p(c, j)) return p(a, j) > p(c, j);
      return false;
    });
    RatMatrix sorted(d1, d1);
    for (std::size_t r = 0; r < d1; ++r)
      for (std::size_t j = 0; j < d1; ++j) sorted(r, j) = p(order[r], j);
    return sorted;
  }
  throw Error(ErrorCode::InvalidInput, "could not separate integral eigenvalues of the intersection matrices");
}

RatMatrix align_rows(const RatMatrix& found, const RatMatrix& reference) {
  const std::size_t d1 = found.rows();
  if (reference.rows() != d1 || reference.cols() != found.cols())
    throw Error(ErrorCode::LengthMismatch, "reference matrix shape mismatch");
  std::vector<std::size_t> perm(d1), best;
  std::iota(perm.begin(), perm.end(), 0);
  long best_score = -1;
  do {
    long score = 0;
    for (std::size_t r = 0; r < d1; ++r)
      for (std::size_t j = 0; j < found.cols(); ++j) score += found(perm[r], j) == reference(r, j);
    if (score > best_score) {
      best_score = score;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  RatMatrix out(d1, found.cols());
  for (std::size_t r = 0; r < d1; ++r)
    for (std::size_t j = 0; j < found.cols(); ++j) out(r, j) = found(best[r], j);
  return out;
}

RatMatrix dual_from_eigenmatrix(const RatMatrix& P, const BigInt& set_size) {
  auto inv = inverse(P);
  if (!inv) throw Error(ErrorCode::InvalidInput, "eigenvalue matrix is singular");
  return scaled(*inv, Rational(set_size));
}

Idempotents::Idempotents(const RelationTable& rel, const RatMatrix& Q, SizeGuards guards)
    : rel_(&rel), n_(rel.size()) {
  const std::size_t d1 = static_cast<std::size_t>(rel.classes()) + 1;
  if (Q.rows() != d1 || Q.cols() != d1) throw Error(ErrorCode::LengthMismatch, "Q has the wrong shape");
  if (static_cast<std::uint64_t>(n_) * n_ * d1 > guards.matrix_entries)
    throw Error(ErrorCode::SizeGuard, "idempotent matrices exceed the size guard");
  denom_ = lcm_of_denominators(Q);
  scale_ = denom_ * static_cast<unsigned long>(n_);
  f_.assign(d1, std::vector<std::int64_t>(n_ * n_));
  for (std::size_t j = 0; j < d1; ++j) {
    std::vector<std::int64_t> col(d1);
    for (std::size_t i = 0; i < d1; ++i) {
      const Rational v = Q(i, j) * denom_;
      col[i] = to_i64(v.get_num());
    }
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) f_[j][a * n_ + b] = col[rel(a, b)];
  }
}

Rational Idempotents::trace(std::size_t j) const {
  BigInt t = 0;
  for (std::size_t a = 0; a < n_; ++a) t += static_cast<long>(f_[j][a * n_ + a]);
  return frac(t, scale_);
}

std::vector<BigInt> Idempotents::apply_scaled(std::size_t j, const std::vector<std::uint8_t>& chi) const {
  if (chi.size() != n_) throw Error(ErrorCode::LengthMismatch, "vector length does not match the scheme");
  std::vector<BigInt> out(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    __int128 acc = 0;
    for (std::size_t b = 0; b < n_; ++b)
      if (chi[b]) acc += f_[j][a * n_ + b];
    out[a] = BigInt(std::to_string(static_cast<long long>(acc)));
  }
  return out;
}

bool Idempotents::annihilates(std::size_t j, const std::vector<std::uint8_t>& chi) const {
  for (const auto& v : apply_scaled(j, chi))
    if (v != 0) return false;
  return true;
}

Idempotents::Check Idempotents::verify(const RatMatrix& P) const {
  Check c;
  const std::size_t d1 = f_.size();
  const std::int64_t s = to_i64(scale_);
  std::vector<__int128> prod(n_ * n_);
  for (std::size_t i = 0; i < d1 && c.orthogonal; ++i)
    for (std::size_t j = i; j < d1 && c.orthogonal; ++j) {
      std::fill(prod.begin(), prod.end(), 0);
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t t = 0; t < n_; ++t) {
          const __int128 fa = f_[i][a * n_ + t];
          if (fa == 0) continue;
          const std::int64_t* row = f_[j].data() + t * n_;
          __int128* out = prod.data() + a * n_;
          for (std::size_t b = 0; b < n_; ++b) out[b] += fa * row[b];
        }
      for (std::size_t e = 0; e < n_ * n_; ++e) {
        const __int128 want = i == j ? static_cast<__int128>(s) * f_[i][e] : 0;
        if (prod[e] != want) {
          c.orthogonal = false;
          c.failure = "E_" + std::to_string(i) + " E_" + std::to_string(j) + " is not " +
                      (i == j ? "E_" + std::to_string(i) : std::string("zero"));
          break;
        }
      }
    }
  for (std::size_t a = 0; a < n_ && c.sum_identity; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      __int128 sum = 0;
      for (std::size_t j = 0; j < d1; ++j) sum += f_[j][a * n_ + b];
      if (sum != (a == b ? s : 0)) {
        c.sum_identity = false;
        c.failure = "the idempotents do not sum to the identity";
        break;
      }
    }
  // l * scale * B_j = sum_i (l P_ij) F_i, l the common denominator of P.
  const BigInt l = lcm_of_denominators(P);
  std::vector<std::vector<std::int64_t>> lp(d1, std::vector<std::int64_t>(d1));
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j) lp[i][j] = to_i64(Rational(P(i, j) * l).get_num());
  const __int128 ls = static_cast<__int128>(to_i64(l)) * s;
  for (std::size_t a = 0; a < n_ && c.expansion; ++a)
    for (std::size_t b = 0; b < n_ && c.expansion; ++b) {
      const int r = (*rel_)(a, b);
      for (std::size_t j = 0; j < d1; ++j) {
        __int128 sum = 0;
        for (std::size_t i = 0; i < d1; ++i) sum += static_cast<__int128>(lp[i][j]) * f_[i][a * n_ + b];
        if (sum != (static_cast<std::size_t>(r) == j ? ls : 0)) {
          c.expansion = false;
          c.failure = "B_" + std::to_string(j) + " != sum_i P_ij E_i";
          break;
        }
      }
    }
  return c;
}

std::vector<Rational> inner_distribution(SchemeKind kind, const KSet& l) {
  if (l.size() == 0) throw Error(ErrorCode::EmptySet, "inner distribution of the empty set");
  const auto& space = l.space();
  if (!space.is_affine()) throw Error(ErrorCode::GeometryMismatch, "inner distributions live on affine schemes");
  const int k = kind == SchemeKind::Lines ? 1 : space.n() - 1;
  if (l.k() != k) throw Error(ErrorCode::WrongDimension, "k-set does not match the scheme");
  const std::size_t d1 = kind == SchemeKind::Lines ? 4 : 3;
  std::vector<std::uint64_t> counts(d1, 0);
  const auto idx = l.indices();
  for (auto a : idx)
    for (auto b : idx) ++counts[relation_by_index(kind, *space.pg, k, a, b)];
  std::vector<Rational> u(d1);
  for (std::size_t i = 0; i < d1; ++i)
    u[i] = frac(BigInt(static_cast<unsigned long>(counts[i])), BigInt(static_cast<unsigned long>(l.size())));
  return u;
}

std::vector<Rational> times_Q(const std::vector<Rational>& u, const RatMatrix& Q) {
  if (u.size() != Q.rows()) throw Error(ErrorCode::LengthMismatch, "u and Q shapes differ");
  std::vector<Rational> out(Q.cols(), 0);
  for (std::size_t j = 0; j < Q.cols(); ++j)
    for (std::size_t i = 0; i < u.size(); ++i) out[j] += u[i] * Q(i, j);
  return out;
}

std::vector<int> eigenspace_profile(const std::vector<Rational>& uq) {
  std::vector<int> out;
  for (std::size_t j = 0; j < uq.size(); ++j)
    if (uq[j] != 0) out.push_back(static_cast<int>(j));
  return out;
}

std::vector<EntryDiff> diff_matrices(const RatMatrix& expected, const RatMatrix& got) {
  if (expected.rows() != got.rows() || expected.cols() != got.cols())
    throw Error(ErrorCode::LengthMismatch, "matrix shapes differ");
  std::vector<EntryDiff> out;
  for (std::size_t i = 0; i < got.rows(); ++i)
    for (std::size_t j = 0; j < got.cols(); ++j)
      if (expected(i, j) != got(i, j)) out.push_back({i, j, expected(i, j), got(i, j)});
  return out;
}

bool is_scaled_identity(const RatMatrix& m, const Rational& s) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != (i == j ? s : Rational(0))) return false;
  return true;
}

bool valency_row_sum_ok(const RatMatrix& P, const BigInt& set_size) {
  Rational s = 0;
  for (std::size_t j = 0; j < P.cols(); ++j) s += P(0, j);
  return s == Rational(set_size);
}

HyperplaneAdjudication adjudicate_hyperplane_scheme(int n, std::uint32_t q) {
  HyperplaneAdjudication a;
  a.n = n;
  a.q = q;
  a.set_size = scheme_set_size(SchemeKind::Hyperplanes, n, q);
  a.printed_P = hyperplane_P_printed(n, q);
  a.printed_Q = hyperplane_Q_printed(n, q);
  RelationTable rel(SchemeKind::Hyperplanes, AmbientSpace::affine(q, n));
  auto brute = brute_force_scheme(rel, true, &a.printed_P);
  a.axioms = brute.axioms;
  a.brute_P = brute.P;
  a.brute_Q = brute.Q;
  a.diffs = diff_matrices(a.printed_P, a.brute_P);
  const Rational sz(a.set_size);
  a.printed_row_sum_ok = valency_row_sum_ok(a.printed_P, a.set_size);
  a.printed_PQ_ok = is_scaled_identity(a.printed_P * a.printed_Q, sz);
  a.adopted_row_sum_ok = valency_row_sum_ok(a.brute_P, a.set_size);
  a.adopted_PQ_ok = is_scaled_identity(a.brute_P * a.brute_Q, sz);
  a.printed_Q_matches = diff_matrices(a.printed_Q, a.brute_Q).empty();
  a.adjudicated_formula_matches = diff_matrices(hyperplane_P_adjudicated(n, q), a.brute_P).empty();
  return a;
}

}  // namespace clag
