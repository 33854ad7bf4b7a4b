#include "geomkit/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "geomkit/error.hpp"

namespace geomkit {

namespace {

std::vector<PointId> constraint_points(const Constraint& c) {
  std::vector<PointId> pts = c.points;
  if (c.kind == ConstraintKind::Closure) pts.push_back(c.target);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Direction code of the pair (y1, y2) in an affine space: 0 for a point,
// otherwise 1 + the code of the normalized difference vector.
std::vector<std::uint32_t> pair_directions(const Geometry& A) {
  const std::size_t n = A.size();
  std::vector<std::uint32_t> dir(n * n, 0);
  const FiniteField& K = *A.field();
  for (PointId a = 0; a < n; ++a)
    for (PointId b = 0; b < n; ++b) {
      if (a == b) continue;
      Vec d = normalize_projective(K, vec_sub(K, A.coords(b), A.coords(a)));
      dir[a * n + b] = static_cast<std::uint32_t>(1 + vec_code(d, K.order()));
    }
  return dir;
}

class Engine {
 public:
  Engine(const SearchProblem& p, const SearchOptions& o) : p_(p), o_(o), cod_(*p.codomain) {
    n_ = p.domain_size;
    m_ = cod_.size();
    bool need_dirs = false;
    for (const auto& c : p.constraints)
      if (c.kind == ConstraintKind::ParallelPairs) need_dirs = true;
    if (need_dirs) {
      if (cod_.backend() != Backend::Affine) fail(ErrorKind::InvalidInput, "parallel constraints need an affine codomain");
      dirs_ = pair_directions(cod_);
    }
    if (m_ > 0) (void)cod_.empty_closure_index();
    build_order();
  }

  std::vector<std::vector<PointId>> run(SearchStats* stats) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::vector<PointId>> out;
    if (n_ == 0) {
      std::vector<PointId> empty;
      if (!p_.accept || p_.accept(empty)) out.push_back(empty);
    } else if (m_ > 0) {
      const auto first = candidates_of(order_[0]);
      std::vector<std::vector<std::vector<PointId>>> per_task(first.size());
      std::atomic<std::size_t> next{0};
      std::exception_ptr error;
      std::mutex error_mu;
      auto worker = [&] {
        try {
          State st(n_, m_);
          while (!abort_.load(std::memory_order_relaxed)) {
            const std::size_t t = next.fetch_add(1);
            if (t >= first.size()) break;
            st.results = &per_task[t];
            place(st, 0, first[t]);
          }
          flush(st);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          abort_ = true;
        }
      };
      const unsigned w = std::max(1u, std::min<unsigned>(o_.workers, static_cast<unsigned>(first.size())));
      if (w == 1) {
        worker();
      } else {
        std::vector<std::thread> threads;
        for (unsigned i = 0; i < w; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
      }
      if (error) std::rethrow_exception(error);
      if (exceeded_)
        fail(ErrorKind::SearchBudgetExceeded, "node budget of " + std::to_string(o_.budget) + " exhausted");
      for (auto& v : per_task)
        for (auto& r : v) out.push_back(std::move(r));
      std::sort(out.begin(), out.end());
    }
    if (stats) {
      stats->nodes = nodes_.load();
      stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return out;
  }

 private:
  struct State {
    State(std::size_t n, std::size_t m) : assign(n, kNoPoint), used(m, 0) {}
    std::vector<PointId> assign;
    std::vector<std::uint32_t> used;
    std::uint64_t local_nodes = 0;
    std::vector<std::vector<PointId>>* results = nullptr;
  };

  std::vector<PointId> candidates_of(PointId x) const {
    if (!p_.candidates.empty() && !p_.candidates[x].empty()) return p_.candidates[x];
    std::vector<PointId> all(m_);
    for (PointId y = 0; y < m_; ++y) all[y] = y;
    return all;
  }

  void build_order() {
    const std::size_t C = p_.constraints.size();
    std::vector<std::vector<PointId>> pts(C);
    std::vector<std::vector<std::uint32_t>> incident(n_);
    std::vector<std::size_t> remaining(C);
    for (std::size_t c = 0; c < C; ++c) {
      pts[c] = constraint_points(p_.constraints[c]);
      for (PointId x : pts[c]) {
        if (x >= n_) fail(ErrorKind::UnknownPoint, "constraint mentions an unknown point");
        incident[x].push_back(static_cast<std::uint32_t>(c));
      }
      remaining[c] = pts[c].size();
    }
    std::vector<char> placed(n_, 0);
    std::vector<std::size_t> touch(n_, 0);  // constraints with an assigned point
    std::vector<std::size_t> pos(n_, 0);
    buckets_.assign(n_, {});
    for (std::size_t step = 0; step < n_; ++step) {
      std::vector<std::size_t> completes(n_, 0);
      for (std::size_t c = 0; c < C; ++c)
        if (remaining[c] == 1)
          for (PointId x : pts[c])
            if (!placed[x]) completes[x]++;
      PointId best = kNoPoint;
      for (PointId x = 0; x < n_; ++x) {
        if (placed[x]) continue;
        if (best == kNoPoint) {
          best = x;
          continue;
        }
        auto key = [&](PointId y) {
          const std::size_t cand = (!p_.candidates.empty() && !p_.candidates[y].empty()) ? p_.candidates[y].size() : m_;
          return std::make_tuple(completes[y], touch[y], incident[y].size(), static_cast<std::size_t>(SIZE_MAX - cand));
        };
        if (key(x) > key(best)) best = x;
      }
      placed[best] = 1;
      pos[best] = step;
      order_.push_back(best);
      for (auto c : incident[best]) {
        if (remaining[c] == pts[c].size())
          for (PointId y : pts[c]) touch[y]++;
        remaining[c]--;
        if (remaining[c] == 0) buckets_[step].push_back(static_cast<std::uint32_t>(c));
      }
    }
    // Constraints with no points are checked before anything else is placed.
    for (std::size_t c = 0; c < C; ++c)
      if (pts[c].empty()) buckets_[0].push_back(static_cast<std::uint32_t>(c));
  }

  bool check(const Constraint& c, const std::vector<PointId>& a) const {
    switch (c.kind) {
      case ConstraintKind::Closure: {
        FlatId f;
        if (c.points.size() == 2) {
          f = cod_.line_through(a[c.points[0]], a[c.points[1]]);
        } else {
          f = cod_.empty_closure_index();
          for (PointId x : c.points) f = cod_.join_index(f, a[x]);
        }
        return cod_.flat(f).test(a[c.target]);
      }
      case ConstraintKind::Equal:
        return a[c.points[0]] == a[c.points[1]];
      case ConstraintKind::ParallelPairs:
        return dirs_[a[c.points[0]] * m_ + a[c.points[1]]] == dirs_[a[c.points[2]] * m_ + a[c.points[3]]];
    }
    return false;
  }

  void flush(State& st) {
    if (st.local_nodes) {
      const auto total = nodes_.fetch_add(st.local_nodes) + st.local_nodes;
      st.local_nodes = 0;
      if (total > o_.budget) {
        exceeded_ = true;
        abort_ = true;
      }
    }
  }

  void place(State& st, std::size_t depth, PointId y) {
    if (abort_.load(std::memory_order_relaxed)) return;
    if (p_.injective && st.used[y]) return;
    const PointId x = order_[depth];
    if (++st.local_nodes >= 4096) flush(st);
    st.assign[x] = y;
    st.used[y]++;
    bool ok = true;
    for (auto c : buckets_[depth])
      if (!check(p_.constraints[c], st.assign)) {
        ok = false;
        break;
      }
    if (ok) {
      if (depth + 1 == n_) {
        if (!p_.accept || p_.accept(st.assign)) st.results->push_back(st.assign);
      } else {
        const PointId nx = order_[depth + 1];
        if (!p_.candidates.empty() && !p_.candidates[nx].empty()) {
          for (PointId z : p_.candidates[nx]) place(st, depth + 1, z);
        } else {
          for (PointId z = 0; z < m_; ++z) place(st, depth + 1, z);
        }
      }
    }
    st.used[y]--;
    st.assign[x] = kNoPoint;
  }

  const SearchProblem& p_;
  const SearchOptions& o_;
  const Geometry& cod_;
  std::size_t n_ = 0, m_ = 0;
  std::vector<PointId> order_;
  std::vector<std::vector<std::uint32_t>> buckets_;
  std::vector<std::uint32_t> dirs_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> abort_{false};
  std::atomic<bool> exceeded_{false};
};

}  // namespace

std::vector<std::vector<PointId>> run_search(const SearchProblem& problem, const SearchOptions& options,
                                             SearchStats* stats) {
  if (options.budget == 0) fail(ErrorKind::InvalidInput, "budget must be positive");
  if (!problem.candidates.empty() && problem.candidates.size() != problem.domain_size)
    fail(ErrorKind::InvalidInput, "candidate lists do not match the domain size");
  Engine e(problem, options);
  return e.run(stats);
}

std::vector<Constraint> morphism_constraints(const Geometry& X) {
  std::vector<Constraint> out;
  auto add_line_triples = [&] {
    for (FlatId f : X.flats_of_dim(1)) {
      const auto& pts = X.flat_points(f);
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
          for (std::size_t k = 0; k < pts.size(); ++k)
            if (k != i && k != j) out.push_back({ConstraintKind::Closure, pts[k], {pts[i], pts[j]}});
    }
  };
  if (X.lines_generate()) {
    add_line_triples();
    return out;
  }
  if (X.lines_and_planes_generate()) {
    add_line_triples();
    for (FlatId f : X.flats_of_dim(2)) {
      const auto& pts = X.flat_points(f);
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          const FlatId ij = X.line_through(pts[i], pts[j]);
          for (std::size_t k = j + 1; k < pts.size(); ++k) {
            if (X.flat(ij).test(pts[k])) continue;
            const PointSet& L1 = X.flat(ij);
            const PointSet& L2 = X.flat(X.line_through(pts[i], pts[k]));
            const PointSet& L3 = X.flat(X.line_through(pts[j], pts[k]));
            for (PointId x0 : pts)
              if (!L1.test(x0) && !L2.test(x0) && !L3.test(x0))
                out.push_back({ConstraintKind::Closure, x0, {pts[i], pts[j], pts[k]}});
          }
        }
    }
    return out;
  }
  // Generic: every chain B built by adding points outside the current closure.
  constexpr std::size_t kMaxConstraints = 5'000'000;
  std::vector<PointId> B;
  std::function<void(FlatId, PointId)> rec = [&](FlatId cur, PointId from) {
    for (PointId x0 : X.flat_points(cur)) {
      if (std::find(B.begin(), B.end(), x0) != B.end()) continue;
      out.push_back({ConstraintKind::Closure, x0, B});
      if (out.size() > kMaxConstraints) fail(ErrorKind::BoundExceeded, "too many closure constraints");
    }
    for (PointId p = from; p < X.size(); ++p) {
      if (X.flat(cur).test(p)) continue;
      B.push_back(p);
      rec(X.join_index(cur, p), p + 1);
      B.pop_back();
    }
  };
  rec(X.empty_closure_index(), 0);
  return out;
}

}  // namespace geomkit
