#include "clag/incidence.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <tuple>

#include "clag/error.hpp"

namespace clag {

SizeGuards SizeGuards::from_env() {
  SizeGuards g;
  if (const char* env = std::getenv("CLAG_SIZE_GUARD")) {
    const auto v = std::strtoull(env, nullptr, 10);
    if (v > 0) g.matrix_entries = v;
  }
  return g;
}

IncidenceMatrix::IncidenceMatrix(AmbientSpace space, int k, SizeGuards guards)
    : space_(std::move(space)), k_(k) {
  if (k < 1 || k > space_.n() - 1)
    throw Error(ErrorCode::DimensionOutOfRange,
                "incidence needs 1 <= k <= n-1, got k=" + std::to_string(k) + " in " + space_.describe());
  rows_ = space_.point_count();
  cols_ = space_.k_space_count(k);
  if (static_cast<std::uint64_t>(rows_) * cols_ > guards.matrix_entries)
    throw Error(ErrorCode::SizeGuard, space_.describe() + " incidence matrix " + std::to_string(rows_) + "x" +
                                          std::to_string(cols_) + " exceeds the size guard");
}

bool IncidenceMatrix::entry(std::size_t point, std::size_t kspace) const {
  auto col = column(kspace);
  return std::binary_search(col.begin(), col.end(), static_cast<std::uint32_t>(point));
}

IntMatrix IncidenceMatrix::to_int_matrix() const {
  IntMatrix m(rows_, cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (auto p : column(j)) m(p, j) = 1;
  return m;
}

const RowSpace& IncidenceMatrix::row_space() const {
  std::call_once(row_space_once_, [this] { row_space_ = std::make_unique<RowSpace>(to_int_matrix()); });
  return *row_space_;
}

std::size_t IncidenceMatrix::rank() const { return row_space().rank(); }

std::vector<std::vector<BigInt>> IncidenceMatrix::kernel_basis() const {
  small_kernel();
  return kernel_;
}

const std::vector<std::vector<std::int64_t>>& IncidenceMatrix::small_kernel() const {
  std::call_once(kernel_once_, [this] {
    kernel_ = row_space().kernel_basis();
    // Dot products of 0/1 vectors stay below cols * max|entry|.
    BigInt bound = BigInt(std::to_string(INT64_MAX)) / static_cast<unsigned long>(std::max<std::size_t>(cols_, 1));
    kernel_fits_int64_ = true;
    for (const auto& w : kernel_)
      for (const auto& e : w)
        if (abs(e) > bound) kernel_fits_int64_ = false;
    if (kernel_fits_int64_) {
      small_kernel_.reserve(kernel_.size());
      for (const auto& w : kernel_) {
        std::vector<std::int64_t> s(w.size());
        for (std::size_t j = 0; j < w.size(); ++j) s[j] = w[j].get_si();
        small_kernel_.push_back(std::move(s));
      }
    }
  });
  return small_kernel_;
}

Membership IncidenceMatrix::row_space_membership(const std::vector<Rational>& v) const {
  if (v.size() != cols_)
    throw Error(ErrorCode::LengthMismatch,
                "vector of length " + std::to_string(v.size()) + " for " + std::to_string(cols_) + " columns");
  auto cert = row_space().solve(v);
  if (!cert) return {};
  return {true, std::move(*cert)};
}

Membership IncidenceMatrix::row_space_membership(const std::vector<std::uint8_t>& chi) const {
  std::vector<Rational> v(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) v[i] = chi[i];
  return row_space_membership(v);
}

bool IncidenceMatrix::in_row_space_by_kernel(const std::vector<std::uint8_t>& chi) const {
  if (chi.size() != cols_) throw Error(ErrorCode::LengthMismatch, "characteristic vector length mismatch");
  const auto& small = small_kernel();
  if (kernel_fits_int64_) {
    for (const auto& w : small) {
      std::int64_t dot = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (chi[j]) dot += w[j];
      if (dot != 0) return false;
    }
    return true;
  }
  for (const auto& w : kernel_) {
    BigInt dot = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (chi[j]) dot += w[j];
    if (dot != 0) return false;
  }
  return true;
}

bool IncidenceMatrix::verify_certificate(const std::vector<Rational>& certificate,
                                         const std::vector<Rational>& v) const {
  if (certificate.size() != rows_ || v.size() != cols_) return false;
  for (std::size_t j = 0; j < cols_; ++j) {
    Rational s = 0;
    for (auto p : column(j)) s += certificate[p];
    if (s != v[j]) return false;
  }
  return true;
}

std::shared_ptr<const IncidenceMatrix> incidence_for(const AmbientSpace& space, int k) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, int, Mode, int>, std::shared_ptr<const IncidenceMatrix>> cache;
  const auto key = std::make_tuple(space.q(), space.n(), space.mode, k);
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto m = std::make_shared<const IncidenceMatrix>(space, k);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(m)).first->second;
}

}  // namespace clag
