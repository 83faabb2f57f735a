#include "clag/geometry.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "clag/error.hpp"

namespace clag {

BigInt ipow(std::uint64_t base, unsigned exp) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

BigInt gaussian_binomial(int a, int b, std::uint64_t q) {
  if (a < 0 || b < 0) throw Error(ErrorCode::DimensionOutOfRange, "gaussian binomial needs a, b >= 0");
  if (b > a) return 0;
  BigInt num = 1, den = 1;
  for (int i = 0; i < b; ++i) {
    num *= ipow(q, static_cast<unsigned>(a - i)) - 1;
    den *= ipow(q, static_cast<unsigned>(i + 1)) - 1;
  }
  return num / den;
}

std::size_t rref(const FiniteField& field, std::vector<Elem>& m, std::size_t rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[p * cols + j], m[r * cols + j]);
    const Elem inv = field.inv(m[r * cols + c]);
    for (std::size_t j = c; j < cols; ++j) m[r * cols + j] = field.mul(m[r * cols + j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const Elem f = m[i * cols + c];
      if (f == 0) continue;
      const Elem nf = field.neg(f);
      for (std::size_t j = c; j < cols; ++j)
        m[i * cols + j] = field.add(m[i * cols + j], field.mul(nf, m[r * cols + j]));
    }
    ++r;
  }
  return r;
}

Subspace Subspace::from_rows(const FiniteField& field, int n, std::vector<Elem> rows) {
  const std::size_t cols = static_cast<std::size_t>(n) + 1;
  if (rows.size() % cols != 0) throw Error(ErrorCode::LengthMismatch, "row length must be n+1");
  for (Elem e : rows)
    if (e >= field.q()) throw Error(ErrorCode::InvalidInput, "element out of range for " + field.describe());
  const std::size_t r = rref(field, rows, rows.size() / cols, cols);
  rows.resize(r * cols);
  Subspace s;
  s.n_ = n;
  s.rows_ = std::move(rows);
  return s;
}

Subspace Subspace::from_canonical(const FiniteField& field, int n, std::vector<Elem> rows) {
  Subspace s = from_rows(field, n, rows);
  if (s.rows_ != rows) throw Error(ErrorCode::NotCanonical, "basis is not in reduced row echelon form");
  return s;
}

std::vector<std::vector<Elem>> Subspace::row_list() const {
  std::vector<std::vector<Elem>> out;
  for (int i = 0; i <= dim(); ++i) {
    auto r = row(i);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

std::string Subspace::key() const {
  std::string k;
  k.reserve(rows_.size() * 2);
  for (Elem e : rows_) {
    k.push_back(static_cast<char>(e & 0xff));
    k.push_back(static_cast<char>(e >> 8));
  }
  return k;
}

bool canonical_less(const Subspace& a, const Subspace& b) {
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.is_affine() != b.is_affine()) return a.is_affine();
  return a.data() < b.data();
}

std::optional<std::size_t> SubspaceList::find(const Subspace& s) const {
  auto it = lookup.find(s.key());
  if (it == lookup.end()) return std::nullopt;
  return it->second;
}

std::size_t SubspaceList::index_of(const Subspace& s) const {
  auto idx = find(s);
  if (!idx) throw Error(ErrorCode::AmbientMismatch, "subspace not found in enumeration");
  return *idx;
}

std::string mode_name(Mode mode) { return mode == Mode::Affine ? "affine" : "projective"; }

Mode parse_mode(const std::string& text) {
  if (text == "affine" || text == "AG") return Mode::Affine;
  if (text == "projective" || text == "PG") return Mode::Projective;
  throw Error(ErrorCode::InvalidInput, "unknown mode '" + text + "'");
}

ProjectiveSpace::ProjectiveSpace(std::shared_ptr<const FiniteField> field, int n)
    : field_(std::move(field)), n_(n) {
  if (n < 1) throw Error(ErrorCode::DimensionOutOfRange, "projective dimension must be >= 1");
}

std::uint64_t ProjectiveSpace::enumeration_cap() {
  if (const char* env = std::getenv("CLAG_SIZE_GUARD")) {
    const auto v = std::strtoull(env, nullptr, 10);
    if (v > 0) return v;
  }
  return 2'000'000;
}

namespace {

// All canonical (k+1) x (n+1) RREF matrices over the field.
std::vector<Subspace> raw_enumeration(const FiniteField& field, int n, int k) {
  const int cols = n + 1;
  const int rows = k + 1;
  std::vector<Subspace> out;
  std::vector<int> piv(rows);
  for (int i = 0; i < rows; ++i) piv[i] = i;
  const Elem q = field.q();
  while (true) {
    std::vector<std::pair<int, int>> free;
    std::vector<bool> is_piv(cols, false);
    for (int p : piv) is_piv[p] = true;
    for (int i = 0; i < rows; ++i)
      for (int j = piv[i] + 1; j < cols; ++j)
        if (!is_piv[j]) free.emplace_back(i, j);
    std::vector<Elem> m(static_cast<std::size_t>(rows) * cols, 0);
    for (int i = 0; i < rows; ++i) m[i * cols + piv[i]] = 1;
    std::vector<Elem> counter(free.size(), 0);
    while (true) {
      for (std::size_t f = 0; f < free.size(); ++f) m[free[f].first * cols + free[f].second] = counter[f];
      out.push_back(Subspace::from_rows(field, n, m));
      std::size_t f = 0;
      while (f < counter.size() && ++counter[f] == q) counter[f++] = 0;
      if (f == counter.size()) break;
    }
    int i = rows - 1;
    while (i >= 0 && piv[i] == cols - rows + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < rows; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

}  // namespace

const SubspaceList& ProjectiveSpace::subspaces(int k) const {
  if (k < 0 || k > n_)
    throw Error(ErrorCode::DimensionOutOfRange,
                "k=" + std::to_string(k) + " outside 0.." + std::to_string(n_));
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(k);
    if (it != cache_.end()) return *it->second;
  }
  const BigInt count = gaussian_binomial(n_ + 1, k + 1, q());
  if (count > BigInt(std::to_string(enumeration_cap())))
    throw Error(ErrorCode::SizeGuard, "PG(" + std::to_string(n_) + "," + std::to_string(q()) + ") has " +
                                          count.get_str() + " " + std::to_string(k) +
                                          "-spaces, above the enumeration cap");
  const SubspaceList* point_list = k == 0 ? nullptr : &subspaces(0);

  auto list = std::make_unique<SubspaceList>();
  list->items = raw_enumeration(*field_, n_, k);
  std::sort(list->items.begin(), list->items.end(), canonical_less);
  list->affine_count = static_cast<std::size_t>(
      std::count_if(list->items.begin(), list->items.end(), [](const Subspace& s) { return s.is_affine(); }));
  for (std::size_t i = 0; i < list->items.size(); ++i) list->lookup.emplace(list->items[i].key(), i);
  list->points.resize(list->items.size());
  for (std::size_t i = 0; i < list->items.size(); ++i) {
    if (k == 0) {
      list->points[i] = {static_cast<std::uint32_t>(i)};
      continue;
    }
    auto& pts = list->points[i];
    for (const auto& v : point_vectors(list->items[i])) {
      const Subspace p = Subspace::from_rows(*field_, n_, v);
      pts.push_back(static_cast<std::uint32_t>(point_list->index_of(p)));
    }
    std::sort(pts.begin(), pts.end());
  }

  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.emplace(k, std::move(list));
  return *it->second;
}

std::size_t ProjectiveSpace::point_index(std::span<const Elem> normalized) const {
  const Subspace p = Subspace::from_rows(*field_, n_, std::vector<Elem>(normalized.begin(), normalized.end()));
  if (p.dim() != 0) throw Error(ErrorCode::InvalidInput, "zero vector is not a point");
  return points().index_of(p);
}

void ProjectiveSpace::check(const Subspace& s) const {
  if (s.ambient_dim() != n_)
    throw Error(ErrorCode::AmbientMismatch, "subspace of PG(" + std::to_string(s.ambient_dim()) +
                                                ") used in PG(" + std::to_string(n_) + ")");
}

Subspace ProjectiveSpace::span(const Subspace& a, const Subspace& b) const {
  check(a);
  check(b);
  std::vector<Elem> rows = a.data();
  rows.insert(rows.end(), b.data().begin(), b.data().end());
  return make(std::move(rows));
}

namespace {

// Basis of {y : M y = 0} for canonical M with `rank` rows.
std::vector<Elem> null_space(const FiniteField& field, const std::vector<Elem>& m, std::size_t cols) {
  const std::size_t r = m.size() / cols;
  std::vector<int> pivot_of_row(r);
  std::vector<bool> is_piv(cols, false);
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t c = 0;
    while (m[i * cols + c] == 0) ++c;
    pivot_of_row[i] = static_cast<int>(c);
    is_piv[c] = true;
  }
  std::vector<Elem> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Elem> y(cols, 0);
    y[f] = 1;
    for (std::size_t i = 0; i < r; ++i) y[pivot_of_row[i]] = field.neg(m[i * cols + f]);
    out.insert(out.end(), y.begin(), y.end());
  }
  return out;
}

}  // namespace

Subspace ProjectiveSpace::meet(const Subspace& a, const Subspace& b) const {
  check(a);
  check(b);
  const std::size_t cols = static_cast<std::size_t>(n_) + 1;
  std::vector<Elem> ann = null_space(*field_, a.data(), cols);
  const std::vector<Elem> ann_b = null_space(*field_, b.data(), cols);
  ann.insert(ann.end(), ann_b.begin(), ann_b.end());
  rref(*field_, ann, ann.size() / cols, cols);
  // Drop zero rows left by rref.
  std::vector<Elem> trimmed;
  for (std::size_t i = 0; i < ann.size() / cols; ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < cols; ++j) zero = zero && ann[i * cols + j] == 0;
    if (!zero) trimmed.insert(trimmed.end(), ann.begin() + i * cols, ann.begin() + (i + 1) * cols);
  }
  return make(null_space(*field_, trimmed, cols));
}

bool ProjectiveSpace::contains(const Subspace& big, const Subspace& small) const {
  return span(big, small) == big;
}

bool ProjectiveSpace::contains_point(const Subspace& s, std::span<const Elem> point) const {
  return contains(s, make(std::vector<Elem>(point.begin(), point.end())));
}

std::vector<std::vector<Elem>> ProjectiveSpace::point_vectors(const Subspace& s) const {
  check(s);
  std::vector<std::vector<Elem>> out;
  const int rows = s.dim() + 1;
  if (rows == 0) return out;
  const std::size_t cols = static_cast<std::size_t>(n_) + 1;
  const Elem q = field_->q();
  // Coefficient vectors whose first nonzero entry is 1.
  for (int lead = 0; lead < rows; ++lead) {
    const int tail = rows - lead - 1;
    std::vector<Elem> c(static_cast<std::size_t>(tail), 0);
    while (true) {
      std::vector<Elem> v(s.row(lead).begin(), s.row(lead).end());
      for (int t = 0; t < tail; ++t) {
        const Elem coef = c[t];
        if (coef == 0) continue;
        auto r = s.row(lead + 1 + t);
        for (std::size_t j = 0; j < cols; ++j) v[j] = field_->add(v[j], field_->mul(coef, r[j]));
      }
      out.push_back(std::move(v));
      int f = 0;
      while (f < tail && ++c[f] == q) c[f++] = 0;
      if (f == tail) break;
    }
  }
  return out;
}

std::vector<std::uint32_t> ProjectiveSpace::point_indices(const Subspace& s) const {
  std::vector<std::uint32_t> out;
  for (const auto& v : point_vectors(s)) out.push_back(static_cast<std::uint32_t>(point_index(v)));
  std::sort(out.begin(), out.end());
  return out;
}

Subspace ProjectiveSpace::hyperplane_at_infinity() const {
  const std::size_t cols = static_cast<std::size_t>(n_) + 1;
  std::vector<Elem> rows(static_cast<std::size_t>(n_) * cols, 0);
  for (int i = 0; i < n_; ++i) rows[i * cols + i + 1] = 1;
  return make(std::move(rows));
}

Subspace ProjectiveSpace::infinite_part(const Subspace& k) const {
  check(k);
  if (!k.is_affine()) return k;
  // Canonical affine bases keep the infinite part in rows 1..k.
  std::vector<Elem> rows(k.data().begin() + (n_ + 1), k.data().end());
  return make(std::move(rows));
}

Subspace ProjectiveSpace::lift(const Subspace& local, const Subspace& frame) const {
  check(frame);
  const int m = frame.dim();
  if (local.ambient_dim() != m)
    throw Error(ErrorCode::GeometryMismatch, "local subspace does not live in the frame's dimension");
  const std::size_t cols = static_cast<std::size_t>(n_) + 1;
  std::vector<Elem> rows;
  for (int i = 0; i <= local.dim(); ++i) {
    std::vector<Elem> v(cols, 0);
    auto coeffs = local.row(i);
    for (int t = 0; t <= m; ++t) {
      if (coeffs[t] == 0) continue;
      auto fr = frame.row(t);
      for (std::size_t j = 0; j < cols; ++j) v[j] = field_->add(v[j], field_->mul(coeffs[t], fr[j]));
    }
    rows.insert(rows.end(), v.begin(), v.end());
  }
  return make(std::move(rows));
}

Subspace ProjectiveSpace::localize(const Subspace& s, const Subspace& frame) const {
  check(s);
  if (!contains(frame, s)) throw Error(ErrorCode::GeometryMismatch, "subspace is not contained in the frame");
  const int m = frame.dim();
  std::vector<std::size_t> pivots;
  for (int i = 0; i <= m; ++i) {
    auto r = frame.row(i);
    std::size_t c = 0;
    while (r[c] == 0) ++c;
    pivots.push_back(c);
  }
  std::vector<Elem> rows;
  for (int i = 0; i <= s.dim(); ++i) {
    auto r = s.row(i);
    for (auto p : pivots) rows.push_back(r[p]);
  }
  return Subspace::from_rows(*field_, m, std::move(rows));
}

std::shared_ptr<const ProjectiveSpace> projective_space(std::uint32_t q, int n) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const ProjectiveSpace>> cache;
  auto field = field_of_order(q);
  std::lock_guard lock(mutex);
  auto it = cache.find({q, n});
  if (it != cache.end()) return it->second;
  auto pg = std::make_shared<const ProjectiveSpace>(field, n);
  cache.emplace(std::make_pair(q, n), pg);
  return pg;
}

std::size_t AmbientSpace::point_count() const {
  const auto& pts = pg->points();
  return mode == Mode::Affine ? pts.affine_count : pts.items.size();
}

std::span<const Subspace> AmbientSpace::k_spaces(int k) const {
  const auto& list = pg->subspaces(k);
  const std::size_t count = mode == Mode::Affine ? list.affine_count : list.items.size();
  return {list.items.data(), count};
}

std::span<const std::uint32_t> AmbientSpace::points_of(int k, std::size_t idx) const {
  const auto& pts = pg->subspaces(k).points[idx];
  if (mode == Mode::Projective) return pts;
  const std::size_t affine = pg->points().affine_count;
  const auto end = std::lower_bound(pts.begin(), pts.end(), static_cast<std::uint32_t>(affine));
  return {pts.data(), static_cast<std::size_t>(end - pts.begin())};
}

std::string AmbientSpace::describe() const {
  return std::string(mode == Mode::Affine ? "AG(" : "PG(") + std::to_string(n()) + "," + std::to_string(q()) + ")";
}

std::span<const Subspace> enumerate_subspaces(const AmbientSpace& space, int k) {
  if (k < 0 || k > space.n())
    throw Error(ErrorCode::DimensionOutOfRange, "k=" + std::to_string(k) + " outside 0.." + std::to_string(space.n()));
  return space.k_spaces(k);
}

}  // namespace clag
