#include "clag/classify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "clag/error.hpp"
#include "clag/incidence.hpp"
#include "clag/linalg.hpp"
#include "clag/spreads.hpp"

namespace clag {

std::vector<std::size_t> infinity_groups(const AmbientSpace& affine, int k) {
  const auto& pg = *affine.pg;
  const auto& lower = pg.subspaces(k - 1);
  const auto all = affine.k_spaces(k);
  std::vector<std::size_t> g(all.size());
  for (std::size_t j = 0; j < all.size(); ++j) g[j] = lower.index_of(pg.infinite_part(all[j])) - lower.affine_count;
  return g;
}

namespace {

constexpr std::size_t kSplitPivots = 10;

// Search data in column-permuted order.
struct Problem {
  std::size_t cols = 0;
  std::vector<std::size_t> original;   // permuted position -> column index
  std::vector<std::size_t> group;      // per position
  std::vector<std::size_t> group_end;  // per group, one past its last position
  std::vector<int> pivot_row;          // per position, -1 when forced
  std::vector<std::vector<std::int64_t>> rows;
  std::int64_t denom = 1;
  std::uint64_t x = 0;
  std::size_t rank = 0;
};

struct State {
  std::size_t pos = 0;
  std::size_t pivots_set = 0;
  std::vector<std::uint8_t> val;
  std::vector<std::int64_t> acc;
  std::vector<std::uint64_t> counts;
};

struct TaskResult {
  std::uint64_t count = 0;
  std::vector<std::vector<std::uint8_t>> solutions;  // permuted order
  SearchStats stats;
};

class Walker {
 public:
  Walker(const Problem& p, bool store, std::size_t store_limit, std::size_t split)
      : p_(p), store_(store), store_limit_(store_limit), split_(split) {}

  void run(State s, TaskResult& out, std::vector<State>* tasks) {
    out_ = &out;
    tasks_ = tasks;
    s_ = std::move(s);
    dfs();
  }

 private:
  void dfs() {
    ++out_->stats.nodes;
    if (tasks_ && s_.pivots_set == split_) {
      tasks_->push_back(s_);
      return;
    }
    const std::size_t c = s_.pos;
    if (c == p_.cols) {
      ++out_->count;
      if (store_ && out_->solutions.size() < store_limit_) out_->solutions.push_back(s_.val);
      return;
    }
    const std::size_t g = p_.group[c];
    const std::size_t remaining = p_.group_end[g] - c - 1;
    const int r = p_.pivot_row[c];
    std::uint8_t lo = 0, hi = 1;
    if (r < 0) {
      const std::int64_t v = s_.acc[c];
      if (v != 0 && v != p_.denom) {
        ++out_->stats.forced_prunes;
        return;
      }
      lo = hi = v == 0 ? 0 : 1;
    }
    for (std::uint8_t b = lo; b <= hi; ++b) {
      const std::uint64_t cnt = s_.counts[g] + b;
      if (cnt > p_.x || cnt + remaining < p_.x) {
        ++out_->stats.group_prunes;
        continue;
      }
      s_.val[c] = b;
      s_.counts[g] = cnt;
      const bool add = r >= 0 && b == 1;
      if (add) apply(r, 1);
      s_.pos = c + 1;
      if (r >= 0) ++s_.pivots_set;
      dfs();
      if (r >= 0) --s_.pivots_set;
      s_.pos = c;
      if (add) apply(r, -1);
      s_.counts[g] = cnt - b;
      s_.val[c] = 0;
    }
  }

  void apply(int r, std::int64_t sign) {
    const auto& row = p_.rows[r];
    for (std::size_t j = s_.pos + 1; j < p_.cols; ++j) s_.acc[j] += sign * row[j];
  }

  const Problem& p_;
  bool store_;
  std::size_t store_limit_;
  std::size_t split_;
  TaskResult* out_ = nullptr;
  std::vector<State>* tasks_ = nullptr;
  State s_;
};

Problem build_problem(const AmbientSpace& affine, int k, std::uint64_t x) {
  Problem p;
  p.x = x;
  const auto groups = infinity_groups(affine, k);
  p.cols = groups.size();
  p.original.resize(p.cols);
  std::iota(p.original.begin(), p.original.end(), 0);
  std::stable_sort(p.original.begin(), p.original.end(),
                   [&](std::size_t a, std::size_t b) { return groups[a] < groups[b]; });
  p.group.resize(p.cols);
  for (std::size_t c = 0; c < p.cols; ++c) p.group[c] = groups[p.original[c]];
  const std::size_t ngroups = p.cols ? p.group.back() + 1 : 0;
  p.group_end.assign(ngroups, 0);
  for (std::size_t c = 0; c < p.cols; ++c) p.group_end[p.group[c]] = c + 1;

  IncidenceMatrix inc(affine, k);
  IntMatrix m(inc.rows(), p.cols);
  for (std::size_t c = 0; c < p.cols; ++c)
    for (auto pt : inc.column(p.original[c])) m(pt, c) = 1;
  RowSpace rs(m);
  const auto& red = rs.reduced();
  p.rank = rs.rank();
  BigInt d = 1;
  for (std::size_t i = 0; i < red.rows(); ++i)
    for (std::size_t j = 0; j < red.cols(); ++j) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), red(i, j).get_den_mpz_t());
  if (!d.fits_slong_p()) throw Error(ErrorCode::ScaleExceeded, "row space denominators exceed 64 bits");
  p.denom = d.get_si();
  p.rows.assign(p.rank, std::vector<std::int64_t>(p.cols));
  for (std::size_t i = 0; i < p.rank; ++i)
    for (std::size_t j = 0; j < p.cols; ++j) {
      const Rational v = red(i, j) * d;
      p.rows[i][j] = v.get_num().get_si();
    }
  p.pivot_row.assign(p.cols, -1);
  for (std::size_t i = 0; i < rs.pivots().size(); ++i) p.pivot_row[rs.pivots()[i]] = static_cast<int>(i);
  return p;
}

std::vector<std::uint8_t> unpermute(const Problem& p, const std::vector<std::uint8_t>& val) {
  std::vector<std::uint8_t> chi(p.cols);
  for (std::size_t c = 0; c < p.cols; ++c) chi[p.original[c]] = val[c];
  return chi;
}

void add_stats(SearchStats& a, const SearchStats& b) {
  a.nodes += b.nodes;
  a.group_prunes += b.group_prunes;
  a.forced_prunes += b.forced_prunes;
}

}  // namespace

SearchCertificate search_cl_sets(const AmbientSpace& affine, int k, std::uint64_t x, const SearchOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  if (!affine.is_affine()) throw Error(ErrorCode::GeometryMismatch, "the search runs in AG(n,q)");
  const int n = affine.n();
  const std::uint32_t q = affine.q();
  if (k < 1 || k > n - 1) throw Error(ErrorCode::DimensionOutOfRange, "need 1 <= k <= n-1");
  const std::size_t cap = opt.max_columns ? opt.max_columns : (k == 1 ? 130 : 256);
  const std::size_t cols = affine.k_space_count(k);
  if (cols > cap)
    throw Error(ErrorCode::ScaleExceeded, affine.describe() + " has " + std::to_string(cols) + " " +
                                              std::to_string(k) + "-spaces, search cap is " + std::to_string(cap));
  const BigInt per_group = ipow(q, n - k);
  if (BigInt(static_cast<unsigned long>(x)) > per_group)
    throw Error(ErrorCode::InvalidInput, "x must lie in 0..q^(n-k)");
  const std::uint64_t m = per_group.get_ui();

  SearchCertificate cert;
  cert.n = n;
  cert.q = q;
  cert.k = k;
  cert.x = x;
  cert.count_only = opt.count_only;
  cert.seed = opt.seed;
  cert.complemented = 2 * x > m;
  const std::uint64_t target = cert.complemented ? m - x : x;
  cert.rules = {"row space: 0/1 vectors c^T A over the reduced echelon basis, branching on pivot columns only",
                "exactly x members through every (k-1)-space at infinity"};
  if (cert.complemented) cert.rules.push_back("complement: searched x' = q^(n-k) - x and complemented");

  const Problem p = build_problem(affine, k, target);
  cert.rank = p.rank;

  State root;
  root.val.assign(p.cols, 0);
  root.acc.assign(p.cols, 0);
  root.counts.assign(p.group_end.size(), 0);

  // Phase one fixes the first pivots; the leftover subtrees are the tasks.
  std::vector<State> tasks;
  TaskResult head;
  Walker(p, !opt.count_only, SIZE_MAX, kSplitPivots).run(root, head, &tasks);
  cert.stats = head.stats;
  cert.stats.tasks = tasks.size();

  const std::size_t store_limit = opt.count_only ? (opt.verify ? 1 : 0) : SIZE_MAX;
  std::vector<TaskResult> results(tasks.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, tasks.size() ? tasks.size() : 1));
  auto work = [&](unsigned t) {
    for (std::size_t i = t; i < tasks.size(); i += threads)
      Walker(p, store_limit > 0, store_limit, SIZE_MAX).run(std::move(tasks[i]), results[i], nullptr);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  std::vector<std::vector<std::uint8_t>> found = std::move(head.solutions);
  cert.count = head.count;
  for (auto& r : results) {
    cert.count += r.count;
    add_stats(cert.stats, r.stats);
    // the root node of each task was already counted in phase one
    --cert.stats.nodes;
  }

  std::vector<std::vector<std::uint8_t>> chis;
  if (!opt.count_only) {
    for (auto& r : results)
      for (auto& v : r.solutions) found.push_back(std::move(v));
    for (const auto& v : found) chis.push_back(unpermute(p, v));
  } else if (opt.verify) {
    // a seeded sample of tasks, first solution of each
    std::vector<std::size_t> with;
    for (std::size_t i = 0; i < results.size(); ++i)
      if (!results[i].solutions.empty()) with.push_back(i);
    for (const auto& v : head.solutions) chis.push_back(unpermute(p, v));
    std::mt19937_64 rng(opt.seed);
    std::shuffle(with.begin(), with.end(), rng);
    if (with.size() > opt.verify_sample) with.resize(opt.verify_sample);
    std::sort(with.begin(), with.end());
    for (auto i : with) chis.push_back(unpermute(p, results[i].solutions.front()));
  }
  if (cert.complemented)
    for (auto& c : chis)
      for (auto& b : c) b ^= 1;
  std::sort(chis.begin(), chis.end(), std::greater<>());

  for (auto& c : chis) {
    KSet set(affine, k, std::move(c));
    if (opt.verify) {
      const auto v = is_cameron_liebler(set);
      ++cert.verified;
      if (!v.cameron_liebler || set.x() != Rational(static_cast<unsigned long>(x))) cert.verification_ok = false;
    }
    if (!opt.count_only) cert.solutions.push_back(std::move(set));
  }
  cert.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

bool verify_search_certificate(const SearchCertificate& cert, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (cert.count_only) return fail("count-only certificates list no solutions to re-check");
  if (cert.count != cert.solutions.size()) return fail("count does not match the solution list");
  std::set<std::vector<std::uint8_t>> seen;
  for (std::size_t i = 0; i < cert.solutions.size(); ++i) {
    const auto& s = cert.solutions[i];
    if (s.space().n() != cert.n || s.space().q() != cert.q || s.k() != cert.k || !s.space().is_affine())
      return fail("solution " + std::to_string(i) + " lives in another space");
    if (!seen.insert(s.chi()).second) return fail("solution " + std::to_string(i) + " is listed twice");
    if (s.x() != Rational(static_cast<unsigned long>(cert.x)))
      return fail("solution " + std::to_string(i) + " has parameter " + to_string(s.x()));
    if (!is_cameron_liebler(s).cameron_liebler)
      return fail("solution " + std::to_string(i) + " is not in the row space");
  }
  return true;
}

bool rediscovers(const SearchCertificate& cert, const std::vector<KSet>& known) {
  std::set<std::vector<std::uint8_t>> have;
  for (const auto& s : cert.solutions) have.insert(s.chi());
  for (const auto& s : known)
    if (s.x() == Rational(static_cast<unsigned long>(cert.x)) && !have.count(s.chi())) return false;
  return true;
}

bool HyperplaneClassification::ok() const {
  return std::all_of(per_x.begin(), per_x.end(), [](const HyperplaneCount& c) { return c.structure_ok; });
}

HyperplaneClassification classify_hyperplane_cl(int n, std::uint32_t q, const SearchOptions& opt,
                                                std::uint64_t materialize_limit) {
  if (n < 2) throw Error(ErrorCode::DimensionOutOfRange, "need n >= 2");
  HyperplaneClassification out;
  out.n = n;
  out.q = q;
  const auto affine = AmbientSpace::affine(q, n);
  const auto groups = infinity_groups(affine, n - 1);
  const unsigned long theta = BigInt((ipow(q, n) - 1) / (q - 1)).get_ui();
  for (std::uint64_t x = 0; x <= q; ++x) {
    HyperplaneCount c;
    c.x = x;
    BigInt binom;
    mpz_bin_uiui(binom.get_mpz_t(), q, x);
    mpz_pow_ui(c.expected.get_mpz_t(), binom.get_mpz_t(), theta);
    SearchOptions o = opt;
    o.count_only = c.expected > materialize_limit;
    c.count_only = o.count_only;
    const auto cert = search_cl_sets(affine, n - 1, x, o);
    c.count = cert.count;
    bool ok = BigInt(static_cast<unsigned long>(cert.count)) == c.expected && cert.verification_ok;
    if (!o.count_only) {
      std::set<std::vector<std::uint8_t>> seen;
      for (const auto& s : cert.solutions) {
        std::vector<std::uint64_t> per(theta, 0);
        for (auto i : s.indices()) ++per[groups[i]];
        ok = ok && std::all_of(per.begin(), per.end(), [&](std::uint64_t v) { return v == x; });
        ok = ok && seen.insert(s.chi()).second;
      }
    }
    c.structure_ok = ok;
    out.per_x.push_back(c);
  }
  return out;
}

SpreadClassification verify_hyperplane_spread_classification(int n, std::uint32_t q) {
  const auto affine = AmbientSpace::affine(q, n);
  const auto& pg = *affine.pg;
  SpreadClassification out;
  for (const auto& s : enumerate_spreads(affine, n - 1)) {
    ++out.spreads;
    const auto inf = pg.infinite_part(s.elements.front());
    if (std::all_of(s.elements.begin(), s.elements.end(), [&](const Subspace& e) { return pg.infinite_part(e) == inf; }))
      ++out.type_ii;
  }
  return out;
}

ProjectionCheck cross_check_projection(int n, std::uint32_t q, int k, const SearchOptions& opt) {
  if (k < 2 || n < k + 2) throw Error(ErrorCode::DimensionViolation, "projection needs k >= 2 and n >= k+2");
  const auto affine = AmbientSpace::affine(q, n);
  const auto& pg = *affine.pg;
  const auto& centres = pg.subspaces(k - 2);
  ProjectionCheck out;
  const std::uint64_t m = ipow(q, n - k).get_ui();
  for (std::uint64_t x = 0; x <= m; ++x) {
    const auto cert = search_cl_sets(affine, k, x, opt);
    if (!cert.solutions.empty()) out.x_values.push_back(x);
    for (const auto& l : cert.solutions) {
      ++out.sets;
      for (std::size_t c = centres.affine_count; c < centres.items.size(); ++c) {
        const auto& centre = centres.items[c];
        const auto img = project_through_infinite_subspace(l, centre, default_complement(pg, centre));
        ++out.projections;
        if (img.x() != l.x() || !is_cameron_liebler(img).cameron_liebler) {
          if (out.failures++ == 0)
            out.first_failure = "x = " + std::to_string(x) + ", centre " + centre.key() + ": image has parameter " +
                                to_string(img.x());
        }
      }
    }
  }
  return out;
}

}  // namespace clag
